//! Extremal host graphs and explicit perfect or proportional tilings of
//! complete multipartite graphs.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{bottle_graph, complete_multipartite, BottleShape, Graph, PartitionedGraph};
use crate::rational::{self, as_integer, ceil_int, floor_int, int, Rational};
use crate::solver::next_permutation;
use crate::thresholds::{chromatic_data, coloring, TilingParams};
use crate::tiling::{Embedding, Pattern, Tiling};

fn exact_usize(value: Rational, what: &str) -> Result<usize> {
    match as_integer(&value) {
        Some(v) if v >= 0 => Ok(v as usize),
        _ => Err(invalid(format!("{what} = {} is not a non-negative integer", rational::format(&value)))),
    }
}

fn positive_usize(value: Rational, what: &str) -> Result<usize> {
    match exact_usize(value, what)? {
        0 => Err(invalid(format!("{what} must be positive"))),
        v => Ok(v),
    }
}

/// Parameters of the staircase example for a bottle graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalOneSpec {
    pub r: usize,
    pub sigma: usize,
    pub omega: usize,
    pub n: usize,
    #[serde(with = "rational::serde_str")]
    pub eta: Rational,
    pub k: usize,
}

#[derive(Clone, Debug)]
pub struct ExtremalOne {
    pub host: PartitionedGraph,
    /// `a_1, …, a_{σn/b}` in label order (the first class).
    pub a_labels: Vec<usize>,
    /// `c_1, …, c_{ωn/b}` in label order (the second class).
    pub c_labels: Vec<usize>,
    pub a_set: Vec<usize>,
    pub c_set: Vec<usize>,
    /// Width of the flattened window, `2ηn`.
    pub window: usize,
    /// Degree shared by `c_k, …, c_{k+2ηn}`.
    pub window_degree: usize,
}

impl ExtremalOneSpec {
    pub fn bottle(&self) -> Result<BottleShape> {
        BottleShape::new(self.r, self.sigma, self.omega)
    }
}

/// Complete `r`-partite skeleton with a staircase between the first two
/// classes (`c_i ~ a_j` iff `j ≤ ⌈σi/ω⌉`), flattened on the window
/// `k < i ≤ k + 2ηn`.
pub fn extremal_one(spec: &ExtremalOneSpec) -> Result<ExtremalOne> {
    let shape = spec.bottle()?;
    let b = shape.order();
    let n = spec.n;
    if n == 0 || !n.is_multiple_of(b) {
        return Err(invalid(format!("b = {b} must divide n = {n}")));
    }
    if spec.eta <= Rational::zero() {
        return Err(invalid("η must be positive"));
    }
    let window = exact_usize(int(2) * spec.eta * int(n as i128), "2ηn")?;
    let s1 = spec.sigma * n / b;
    let w = spec.omega * n / b;
    if spec.k < 1 || spec.k + window >= w {
        return Err(invalid(format!("need 1 ≤ k < ωn/b − 2ηn = {}, got k = {}", w as i64 - window as i64, spec.k)));
    }
    let mut sizes = vec![s1];
    sizes.extend(std::iter::repeat_n(w, spec.r - 1));
    let skeleton = complete_multipartite(&sizes)?;
    let classes = skeleton.classes.clone();
    let mut g = skeleton.graph;
    let a = &classes[0];
    let c = &classes[1];
    for (x, &u) in a.iter().enumerate() {
        for &v in &a[x + 1..] {
            g.add_edge(u, v)?;
        }
        for &v in c {
            g.remove_edge(u, v);
        }
    }
    let stair = |i: usize| ceil_int(&(int((spec.sigma * i) as i128) / int(spec.omega as i128))) as usize;
    for i in 1..=w {
        for j in 1..=stair(i).min(s1) {
            g.add_edge(c[i - 1], a[j - 1])?;
        }
    }
    let (lo, hi) = (stair(spec.k) + 1, stair(spec.k + window));
    for i in spec.k + 1..=spec.k + window {
        for j in lo..=hi {
            g.remove_edge(c[i - 1], a[j - 1]);
        }
    }
    let outside = n - s1 - w;
    let window_degree = stair(spec.k) + outside;
    let a_set = a[..stair(spec.k)].to_vec();
    let c_set = c[..spec.k + window].to_vec();
    Ok(ExtremalOne {
        a_labels: a.clone(),
        c_labels: c.clone(),
        a_set,
        c_set,
        window,
        window_degree,
        host: PartitionedGraph::new(g, classes)?,
    })
}

/// Vertex `x` of the pattern whose neighbourhood has chromatic number other
/// than `r − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighbourhoodWitness {
    pub vertex: usize,
    pub chromatic_number: usize,
    pub required: usize,
}

/// Checks that every neighbourhood of the pattern induces a graph of
/// chromatic number exactly `r − 1`. Returns the first vertex that fails.
pub fn neighbourhood_hypothesis(pattern: &Graph) -> Result<std::result::Result<(), NeighbourhoodWitness>> {
    let r = chromatic_data(pattern)?.r;
    for x in 0..pattern.order() {
        let nbhd = pattern.neighbors(x).to_vec();
        let (chi, _) = coloring::chromatic_number(&pattern.induced(&nbhd));
        if chi != r - 1 {
            return Ok(Err(NeighbourhoodWitness { vertex: x, chromatic_number: chi, required: r - 1 }));
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Debug)]
pub struct ExtremalTwo {
    pub host: PartitionedGraph,
    /// The low-degree set inside the first class.
    pub low_set: Vec<usize>,
    /// `(1 − (ω+σ)/h)n`
    pub low_degree: Rational,
    /// `(1 − ω/h)n`
    pub high_degree: Rational,
}

/// Complete `r`-partite graph with classes `σn/h + ⌊ηn⌋ + 1`,
/// `ωn/h − ⌊ηn⌋ − 1`, `ωn/h`, … and all edges between the first
/// `⌊ηn⌋ + 1` vertices of class one and class two removed.
pub fn extremal_two(pattern: &Graph, n: usize, eta: Rational) -> Result<ExtremalTwo> {
    if let Err(w) = neighbourhood_hypothesis(pattern)? {
        return Err(invalid(format!(
            "neighbourhood of vertex {} has chromatic number {}, expected {}",
            w.vertex, w.chromatic_number, w.required
        )));
    }
    extremal_two_unchecked(pattern, n, eta)
}

/// The same construction without the neighbourhood check on the pattern.
pub fn extremal_two_unchecked(pattern: &Graph, n: usize, eta: Rational) -> Result<ExtremalTwo> {
    let p = chromatic_data(pattern)?;
    if p.sigma_rational() >= p.omega {
        return Err(invalid("requires σ < ω"));
    }
    if n == 0 || !n.is_multiple_of(p.h) {
        return Err(invalid(format!("h = {} must divide n = {n}", p.h)));
    }
    if eta <= Rational::zero() {
        return Err(invalid("η must be positive"));
    }
    let nn = int(n as i128);
    let h = p.h_rational();
    let low = floor_int(&(eta * nn)) as usize + 1;
    let neck = exact_usize(p.sigma_rational() * nn / h, "σn/h")?;
    let width = positive_usize(p.omega * nn / h, "ωn/h")?;
    if width <= low {
        return Err(invalid(format!("ωn/h − ⌊ηn⌋ − 1 = {} must be positive", width as i64 - low as i64)));
    }
    let mut sizes = vec![neck + low, width - low];
    sizes.extend(std::iter::repeat_n(width, p.r - 2));
    let mut host = complete_multipartite(&sizes)?;
    let low_set = host.classes[0][..low].to_vec();
    for &u in &low_set {
        for &v in &host.classes[1] {
            host.graph.remove_edge(u, v);
        }
    }
    Ok(ExtremalTwo {
        host,
        low_set,
        low_degree: (Rational::one() - (p.omega + p.sigma_rational()) / h) * nn,
        high_degree: (Rational::one() - p.omega / h) * nn,
    })
}

/// Complete `r`-partite graph with classes `xσn/h − ηn`,
/// `(h − xσ)n/((r−1)h) + ηn` and `(h − xσ)n/((r−1)h)` for the rest.
pub fn extremal_three(pattern: &Graph, n: usize, x: Rational, eta: Rational) -> Result<PartitionedGraph> {
    let p = chromatic_data(pattern)?;
    if x <= Rational::zero() || x > Rational::one() {
        return Err(invalid("x must lie in (0, 1]"));
    }
    let nn = int(n as i128);
    let h = p.h_rational();
    let s = p.sigma_rational();
    let r1 = int(p.r as i128 - 1);
    let base = (h - x * s) * nn / (r1 * h);
    let mut sizes = vec![
        positive_usize(x * s * nn / h - eta * nn, "xσn/h − ηn")?,
        positive_usize(base + eta * nn, "(h − xσ)n/((r−1)h) + ηn")?,
    ];
    let rest = positive_usize(base, "(h − xσ)n/((r−1)h)")?;
    sizes.extend(std::iter::repeat_n(rest, p.r - 2));
    complete_multipartite(&sizes)
}

/// Adds `count` new vertices adjacent to every other vertex, old and new.
pub fn apex_augment(g: &Graph, count: usize) -> Result<Graph> {
    let n = g.order();
    let mut out = Graph::from_edges(n + count, g.edges())?;
    for a in n..n + count {
        for v in 0..a {
            out.add_edge(v, a)?;
        }
    }
    Ok(out)
}

/// Hands out unused vertices class by class.
struct Slots {
    classes: Vec<Vec<usize>>,
    next: Vec<usize>,
}

impl Slots {
    fn new(classes: Vec<Vec<usize>>) -> Self {
        let next = vec![0; classes.len()];
        Slots { classes, next }
    }

    fn take(&mut self, class: usize, count: usize) -> Result<Vec<usize>> {
        let start = self.next[class];
        let end = start + count;
        if end > self.classes[class].len() {
            return Err(invalid(format!("class {class} has no room for {count} more vertices")));
        }
        self.next[class] = end;
        Ok(self.classes[class][start..end].to_vec())
    }

    fn remaining(&self) -> Vec<usize> {
        self.classes.iter().zip(&self.next).map(|(c, &u)| c.len() - u).collect()
    }

    /// Embeds a pattern whose class `k` goes to host class `target[k]`.
    fn embed(&mut self, pattern: &Arc<Pattern>, target: &[usize]) -> Result<Embedding> {
        let classes = pattern.classes.as_ref().ok_or_else(|| invalid("pattern has no class structure"))?;
        let mut image = vec![usize::MAX; pattern.order()];
        for (k, class) in classes.iter().enumerate() {
            for (p, v) in class.iter().zip(self.take(target[k], class.len())?) {
                image[*p] = v;
            }
        }
        Ok(Embedding::new(pattern.clone(), image))
    }
}

/// Target class `(k + shift) mod r` for every pattern class `k`; class 0
/// stays at `neck` when given.
fn rotation(r: usize, shift: usize, neck: Option<usize>) -> Vec<usize> {
    match neck {
        None => (0..r).map(|k| (k + shift) % r).collect(),
        Some(c) => {
            let others: Vec<usize> = (0..r).filter(|&x| x != c).collect();
            std::iter::once(c).chain((0..r - 1).map(|k| others[(k + shift) % (r - 1)])).collect()
        }
    }
}

/// Which blow-up to tile with copies of `B(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlowUpTarget {
    /// `B(mt)`
    Bottle,
    /// `B(m)(mt)`
    Tile,
    /// `B′(mt)` with `B′` of width `ω − 1`
    Narrow,
    /// `K_r(mt)`
    Clique,
}

impl std::str::FromStr for BlowUpTarget {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bottle" | "b" => Ok(BlowUpTarget::Bottle),
            "tile" | "bstar" => Ok(BlowUpTarget::Tile),
            "narrow" | "bprime" => Ok(BlowUpTarget::Narrow),
            "clique" | "kr" => Ok(BlowUpTarget::Clique),
            _ => Err(invalid(format!("unknown blow-up target {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BlowUpTiling {
    pub host: PartitionedGraph,
    /// The tile `B(m)`.
    pub tile: BottleShape,
    pub tiling: Tiling,
    /// For the narrow target: uncovered vertices per class after the
    /// neck-aligned phase.
    pub residual: Option<Vec<usize>>,
}

/// Places `groups` rounds of `r` tiles, round copy `j` with its neck in
/// class `j`.
fn rotating_groups(
    slots: &mut Slots,
    tile: &Arc<Pattern>,
    r: usize,
    groups: usize,
    out: &mut Vec<Embedding>,
) -> Result<()> {
    for _ in 0..groups {
        for j in 0..r {
            out.push(slots.embed(tile, &rotation(r, 0, Some(j)))?);
        }
    }
    Ok(())
}

/// Perfect `B(m)`-tiling of the requested blow-up, with `t = (ω − σ)b`.
pub fn lemma62_perfect_tiling(target: BlowUpTarget, bottle: BottleShape, m: usize) -> Result<BlowUpTiling> {
    let BottleShape { r, neck: sigma, width: omega } = bottle;
    if sigma >= omega {
        return Err(invalid("requires neck < width"));
    }
    if m == 0 {
        return Err(invalid("m must be positive"));
    }
    let b = bottle.order();
    let t = (omega - sigma) * b;
    let mt = m * t;
    let tile = bottle.scaled(m);
    let pattern = Pattern::bottle(tile);
    let host = match target {
        BlowUpTarget::Bottle => bottle.scaled(mt).build(),
        BlowUpTarget::Tile => tile.scaled(mt).build(),
        BlowUpTarget::Narrow => bottle_graph(r, sigma * mt, (omega - 1) * mt)?,
        BlowUpTarget::Clique => complete_multipartite(&vec![mt; r])?,
    };
    let mut slots = Slots::new(host.classes.clone());
    let mut copies = Vec::new();
    let mut residual = None;
    let aligned: Vec<usize> = (0..r).collect();
    match target {
        BlowUpTarget::Bottle => {
            for _ in 0..t {
                copies.push(slots.embed(&pattern, &aligned)?);
            }
        }
        BlowUpTarget::Tile => {
            for _ in 0..mt {
                copies.push(slots.embed(&pattern, &aligned)?);
            }
        }
        BlowUpTarget::Clique => rotating_groups(&mut slots, &pattern, r, omega - sigma, &mut copies)?,
        BlowUpTarget::Narrow => {
            for _ in 0..(omega - 1 - sigma) * b {
                copies.push(slots.embed(&pattern, &aligned)?);
            }
            residual = Some(slots.remaining());
            rotating_groups(&mut slots, &pattern, r, sigma, &mut copies)?;
        }
    }
    Ok(BlowUpTiling { host, tile, tiling: Tiling::new(copies), residual })
}

/// Finds, for each request, an injective map from pattern classes to host
/// classes such that no host class is overfilled. Each request may pin its
/// class 0. Maps are tried starting from the cyclic shift by request index.
fn place_classes(capacity: &[usize], requests: &[(Vec<usize>, Option<usize>)]) -> Option<Vec<Vec<usize>>> {
    fn maps(r: usize, pin: Option<usize>, shift: usize) -> Vec<Vec<usize>> {
        let mut all = Vec::new();
        let mut perm: Vec<usize> = (0..r).collect();
        loop {
            if pin.is_none_or(|c| perm[0] == c) {
                all.push(perm.clone());
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let first = rotation(r, shift, pin);
        if let Some(pos) = all.iter().position(|p| *p == first) {
            all.rotate_left(pos);
        }
        all
    }
    fn go(
        caps: &mut Vec<usize>,
        requests: &[(Vec<usize>, Option<usize>)],
        i: usize,
        out: &mut Vec<Vec<usize>>,
        dead: &mut HashSet<(usize, Vec<usize>)>,
    ) -> bool {
        if i == requests.len() {
            return true;
        }
        if dead.contains(&(i, caps.clone())) {
            return false;
        }
        let (sizes, pin) = &requests[i];
        for m in maps(caps.len(), *pin, i) {
            if sizes.iter().enumerate().all(|(k, &s)| caps[m[k]] >= s) {
                for (k, &s) in sizes.iter().enumerate() {
                    caps[m[k]] -= s;
                }
                out.push(m.clone());
                if go(caps, requests, i + 1, out, dead) {
                    return true;
                }
                out.pop();
                for (k, &s) in sizes.iter().enumerate() {
                    caps[m[k]] += s;
                }
            }
        }
        dead.insert((i, caps.clone()));
        false
    }
    let mut caps = capacity.to_vec();
    let mut out = Vec::new();
    go(&mut caps, requests, 0, &mut out, &mut HashSet::new()).then_some(out)
}

fn colour_pattern(pattern: &Graph) -> Result<(TilingParams, Arc<Pattern>)> {
    let params = chromatic_data(pattern)?;
    let arc = Arc::new(Pattern { graph: pattern.clone(), classes: Some(params.classes.clone()) });
    Ok((params, arc))
}

fn place_copies(
    slots: &mut Slots,
    pattern: &Arc<Pattern>,
    count: usize,
    neck: Option<usize>,
) -> Result<Vec<Embedding>> {
    let sizes: Vec<usize> = pattern.classes.as_ref().expect("coloured pattern").iter().map(Vec::len).collect();
    let requests = vec![(sizes, neck); count];
    let maps = place_classes(&slots.remaining(), &requests)
        .ok_or_else(|| invalid("the colour classes cannot be packed into the host classes"))?;
    maps.iter().map(|m| slots.embed(pattern, m)).collect()
}

#[derive(Clone, Debug)]
pub struct HStar {
    pub host: PartitionedGraph,
    pub shape: BottleShape,
    pub scale: usize,
    pub direct_copies: usize,
    pub gadget_copies: usize,
    pub tiling: Tiling,
}

/// The bottle graph with neck `σ′t` and width `ω′t`, `t = b(r−1)(ω − σ)`
/// where `σ′ = a/b` in lowest terms, with a perfect tiling by the pattern:
/// `b(r−1)(ω − σ′)` copies with their smallest class in the neck, then
/// `b(σ′ − σ)` complete `r`-partite gadgets with classes `(r−1)ω` (in the
/// neck) and `(r−2)ω + σ`, each tiled by `r − 1` copies.
pub fn build_hstar(pattern: &Graph, neck_ratio: Rational) -> Result<HStar> {
    let (p, coloured) = colour_pattern(pattern)?;
    let h = p.h_rational();
    let r = p.r;
    let rr = int(r as i128);
    let r1 = rr - Rational::one();
    let sigma = p.sigma_rational();
    if neck_ratio < sigma || neck_ratio > h / rr {
        return Err(invalid(format!(
            "σ′ = {} outside [{}, {}]",
            rational::format(&neck_ratio),
            p.sigma,
            rational::format(&(h / rr))
        )));
    }
    if p.omega == sigma {
        return Err(invalid("balanced pattern: ω = σ gives t = 0"));
    }
    let b = int(*neck_ratio.denom());
    let t = positive_usize(b * r1 * (p.omega - sigma), "t")?;
    let tt = int(t as i128);
    let wide = (h - neck_ratio) / r1;
    let shape = BottleShape::new(r, exact_usize(neck_ratio * tt, "σ′t")?, exact_usize(wide * tt, "ω′t")?)?;
    let direct = exact_usize(b * r1 * (p.omega - neck_ratio), "direct copy count")?;
    let gadgets = exact_usize(b * (neck_ratio - sigma), "gadget count")?;
    let host = shape.build();
    let mut slots = Slots::new(host.classes.clone());
    let mut copies = Vec::new();
    if gadgets > 0 {
        let big = exact_usize(r1 * p.omega, "(r−1)ω")?;
        let small = exact_usize((rr - int(2)) * p.omega + sigma, "(r−2)ω + σ")?;
        let mut gadget_sizes = vec![big];
        gadget_sizes.extend(std::iter::repeat_n(small, r - 1));
        let pattern_sizes: Vec<usize> = p.classes.iter().map(Vec::len).collect();
        let inner_requests: Vec<_> = (0..r - 1).map(|_| (pattern_sizes.clone(), None)).collect();
        let inner = place_classes(&gadget_sizes, &inner_requests)
            .ok_or_else(|| invalid("the gadget has no perfect tiling for this colouring"))?;
        // gadgets first so their blocks are carved out before the direct copies
        for _ in 0..gadgets {
            let block: Vec<Vec<usize>> =
                gadget_sizes.iter().enumerate().map(|(k, &s)| slots.take(k, s)).collect::<Result<_>>()?;
            let mut inner_slots = Slots::new(block);
            for m in &inner {
                copies.push(inner_slots.embed(&coloured, m)?);
            }
        }
    }
    let gadget_total = copies.len();
    copies.extend(place_copies(&mut slots, &coloured, direct, Some(0))?);
    // report direct copies first
    copies.rotate_left(gadget_total);
    Ok(HStar { host, shape, scale: t, direct_copies: direct, gadget_copies: gadgets, tiling: Tiling::new(copies) })
}

#[derive(Clone, Debug)]
pub struct HOne {
    pub host: PartitionedGraph,
    pub shape: BottleShape,
    pub tiling: Tiling,
}

/// The bottle graph with neck `a(r−1)σ` and width `bh − aσ` for `x = a/b`,
/// with `a(r−1)` copies of the pattern whose smallest classes fill the neck.
pub fn build_h1(pattern: &Graph, x: Rational) -> Result<HOne> {
    if x <= Rational::zero() || x >= Rational::one() {
        return Err(invalid("x must lie in (0, 1)"));
    }
    let (p, coloured) = colour_pattern(pattern)?;
    let (a, b) = (*x.numer() as usize, *x.denom() as usize);
    let shape = BottleShape::new(p.r, a * (p.r - 1) * p.sigma, b * p.h - a * p.sigma)?;
    let host = shape.build();
    let mut slots = Slots::new(host.classes.clone());
    let copies = place_copies(&mut slots, &coloured, a * (p.r - 1), Some(0))?;
    Ok(HOne { host, shape, tiling: Tiling::new(copies) })
}
