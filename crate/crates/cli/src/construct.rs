use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};
use tiling_core::constructions::{
    build_h1, build_hstar, extremal_one, extremal_three, extremal_two, extremal_two_unchecked, lemma62_perfect_tiling,
    BlowUpTarget, ExtremalOneSpec,
};
use tiling_core::graph::BottleShape;
use tiling_core::rational::{self, Rational};
use tiling_core::{is_valid_tiling, Graph, Tiling};

use crate::input::load_graph;

pub struct Built {
    pub host: Graph,
    pub sidecar: Value,
}

#[derive(Deserialize)]
struct PatternGrid {
    pattern: String,
    n: usize,
    #[serde(with = "rational::serde_str")]
    eta: Rational,
    #[serde(default)]
    unchecked: bool,
}

#[derive(Deserialize)]
struct SkewGrid {
    pattern: String,
    n: usize,
    #[serde(with = "rational::serde_str")]
    x: Rational,
    #[serde(with = "rational::serde_str")]
    eta: Rational,
}

#[derive(Deserialize)]
struct RatioParams {
    pattern: String,
    #[serde(alias = "sigma_prime", alias = "x", with = "rational::serde_str")]
    ratio: Rational,
}

#[derive(Deserialize)]
struct BlowUpParams {
    target: BlowUpTarget,
    bottle: BottleShape,
    m: usize,
}

fn tiling_json(host: &Graph, tiling: &Tiling) -> Value {
    json!({
        "copies": tiling.embeddings.iter().map(|e| &e.image).collect::<Vec<_>>(),
        "covered": tiling.covered_count(),
        "valid": is_valid_tiling(host, tiling).is_ok(),
    })
}

fn parse<T: for<'de> Deserialize<'de>>(params: &str, family: &str) -> Result<T> {
    serde_json::from_str(params).with_context(|| format!("bad --params for {family}"))
}

pub fn build(family: &str, params: &str) -> Result<Built> {
    match family {
        "ex1" => {
            let spec: ExtremalOneSpec = parse(params, family)?;
            let ex = extremal_one(&spec)?;
            Ok(Built {
                sidecar: json!({
                    "family": family,
                    "params": spec,
                    "classes": ex.host.classes,
                    "A": ex.a_set,
                    "C": ex.c_set,
                    "a_labels": ex.a_labels,
                    "c_labels": ex.c_labels,
                    "window": ex.window,
                    "window_degree": ex.window_degree,
                }),
                host: ex.host.graph,
            })
        }
        "ex2" => {
            let p: PatternGrid = parse(params, family)?;
            let pattern = load_graph(&p.pattern)?;
            let ex = if p.unchecked {
                extremal_two_unchecked(&pattern, p.n, p.eta)?
            } else {
                extremal_two(&pattern, p.n, p.eta)?
            };
            Ok(Built {
                sidecar: json!({
                    "family": family,
                    "classes": ex.host.classes,
                    "V_prime": ex.low_set,
                    "low_degree": rational::format(&ex.low_degree),
                    "high_degree": rational::format(&ex.high_degree),
                }),
                host: ex.host.graph,
            })
        }
        "ex3" => {
            let p: SkewGrid = parse(params, family)?;
            let host = extremal_three(&load_graph(&p.pattern)?, p.n, p.x, p.eta)?;
            Ok(Built { sidecar: json!({ "family": family, "classes": host.classes }), host: host.graph })
        }
        "hstar" => {
            let p: RatioParams = parse(params, family)?;
            let hs = build_hstar(&load_graph(&p.pattern)?, p.ratio)?;
            Ok(Built {
                sidecar: json!({
                    "family": family,
                    "classes": hs.host.classes,
                    "bottle": hs.shape,
                    "scale": hs.scale,
                    "direct_copies": hs.direct_copies,
                    "gadget_copies": hs.gadget_copies,
                    "tiling": tiling_json(&hs.host.graph, &hs.tiling),
                }),
                host: hs.host.graph,
            })
        }
        "h1" => {
            let p: RatioParams = parse(params, family)?;
            let h1 = build_h1(&load_graph(&p.pattern)?, p.ratio)?;
            Ok(Built {
                sidecar: json!({
                    "family": family,
                    "classes": h1.host.classes,
                    "bottle": h1.shape,
                    "tiling": tiling_json(&h1.host.graph, &h1.tiling),
                }),
                host: h1.host.graph,
            })
        }
        "lemma62" => {
            let p: BlowUpParams = parse(params, family)?;
            let shape = BottleShape::new(p.bottle.r, p.bottle.neck, p.bottle.width)?;
            let bt = lemma62_perfect_tiling(p.target, shape, p.m)?;
            Ok(Built {
                sidecar: json!({
                    "family": family,
                    "target": p.target,
                    "classes": bt.host.classes,
                    "tile": bt.tile,
                    "residual": bt.residual,
                    "tiling": tiling_json(&bt.host.graph, &bt.tiling),
                }),
                host: bt.host.graph,
            })
        }
        _ => bail!("unknown family {family:?}; expected ex1, ex2, ex3, hstar, h1 or lemma62"),
    }
}
