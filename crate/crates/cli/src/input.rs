use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use tiling_core::graph::{complete_multipartite, BottleShape, Graph};
use tiling_core::io::{parse_graph, read_graph};
use tiling_core::{is_valid_tiling, Embedding, Pattern, Tiling};

/// Built-in names: `Kt`, `Ka,b,...`, `Ct`, `Pt`.
pub fn named_graph(name: &str) -> Option<Graph> {
    let (head, rest) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let sizes: Option<Vec<usize>> = rest.split(',').map(|s| s.trim().parse().ok()).collect();
    let sizes = sizes.filter(|s| !s.is_empty() && s.iter().all(|&k| k > 0))?;
    match (head, sizes.as_slice()) {
        ("K", [t]) => Some(Graph::complete(*t)),
        ("K", parts) => complete_multipartite(parts).ok().map(|p| p.graph),
        ("C", [t]) if *t >= 3 => Some(Graph::cycle(*t)),
        ("P", [t]) => Some(Graph::path(*t)),
        _ => None,
    }
}

/// A file path, a built-in name, or inline graph6 / edge-list text.
pub fn load_graph(source: &str) -> Result<Graph> {
    if Path::new(source).is_file() {
        return read_graph(source).with_context(|| format!("reading {source}"));
    }
    if let Some(g) = named_graph(source) {
        return Ok(g);
    }
    parse_graph(source).with_context(|| format!("{source:?} is neither a file, a known name nor a graph"))
}

#[derive(Deserialize)]
struct TilingFile {
    bottle: BottleShape,
    copies: Vec<Vec<usize>>,
}

/// `{"bottle": {"r", "neck", "width"}, "copies": [[...], ...]}` where each
/// copy lists host images of the bottle's vertices, neck first.
pub fn load_tiling(path: &str, host: &Graph) -> Result<(BottleShape, Tiling)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let file: TilingFile = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    let shape = BottleShape::new(file.bottle.r, file.bottle.neck, file.bottle.width)?;
    let pattern = Pattern::bottle(shape);
    let mut copies = Vec::with_capacity(file.copies.len());
    for (i, image) in file.copies.into_iter().enumerate() {
        if image.len() != shape.order() {
            bail!("copy {i} has {} vertices, the bottle has {}", image.len(), shape.order());
        }
        copies.push(Embedding::new(Arc::clone(&pattern), image));
    }
    let tiling = Tiling::new(copies);
    if let Err(v) = is_valid_tiling(host, &tiling) {
        bail!("tiling is not valid in the host: {v:?}");
    }
    Ok((shape, tiling))
}

/// `r,neck,width`
pub fn parse_shape(text: &str) -> Result<BottleShape> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("{text:?} is not r,neck,width"))?;
    match parts.as_slice() {
        [r, neck, width] => Ok(BottleShape::new(*r, *neck, *width)?),
        _ => bail!("{text:?} is not r,neck,width"),
    }
}
