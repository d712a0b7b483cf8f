//! Local structures used to grow a bottle tiling, plus a few brute-force
//! checks on small graphs.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{invalid, Error, Result};
use crate::graph::{BottleShape, Graph, VertexOrdering};
use crate::rational::{self, ceil_int, int, Rational};
use crate::solver::enumerate_copies_within;
use crate::thresholds::{check_degree_sequence, BoundLine, DegreeCheck};
use crate::tiling::{Embedding, Pattern, Tiling};

fn copy_classes(e: &Embedding) -> Result<Vec<Vec<usize>>> {
    let n = e.class_count().ok_or_else(|| invalid("tiling pattern has no class structure"))?;
    Ok((0..n).map(|k| e.class_image(k).expect("class exists")).collect())
}

/// Maximum bipartite matching by augmenting paths; left vertices are
/// processed in order and each tries its options in order.
fn max_matching(options: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(u: usize, options: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &c in &options[u] {
            if !seen[c] {
                seen[c] = true;
                if owner[c].is_none_or(|w| augment(w, options, seen, owner)) {
                    owner[c] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for u in 0..options.len() {
        let mut seen = vec![false; right];
        augment(u, options, &mut seen, &mut owner);
    }
    let mut matched = vec![None; options.len()];
    for (c, o) in owner.iter().enumerate() {
        if let Some(u) = o {
            matched[*u] = Some(c);
        }
    }
    matched
}

fn uncovered(g: &Graph, t: &Tiling) -> Vec<usize> {
    let covered = t.covered(g.order());
    (0..g.order()).filter(|&v| !covered.contains(v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpandingSet {
    /// `(z, copy index)` pairs, sorted by `z`.
    pub assignment: Vec<(usize, usize)>,
}

impl ExpandingSet {
    pub fn vertices(&self) -> Vec<usize> {
        self.assignment.iter().map(|p| p.0).collect()
    }
}

/// True iff `z` has a neighbour in every width class of `copy`.
pub fn reaches_every_width_class(g: &Graph, z: usize, copy: &Embedding) -> Result<bool> {
    let classes = copy_classes(copy)?;
    Ok(classes[1..].iter().all(|c| c.iter().any(|&v| g.has_edge(z, v))))
}

/// An expanding set of the given size, decided exactly by a maximum
/// matching between uncovered vertices and the copies they can join.
pub fn find_expanding_set(g: &Graph, t: &Tiling, size: usize) -> Result<Option<ExpandingSet>> {
    let outside = uncovered(g, t);
    let mut options = Vec::with_capacity(outside.len());
    for &z in &outside {
        let mut row = Vec::new();
        for (ci, e) in t.embeddings.iter().enumerate() {
            if reaches_every_width_class(g, z, e)? {
                row.push(ci);
            }
        }
        options.push(row);
    }
    let matched = max_matching(&options, t.len());
    let assignment: Vec<(usize, usize)> =
        outside.iter().zip(&matched).filter_map(|(&z, m)| m.map(|c| (z, c))).take(size).collect();
    Ok((assignment.len() == size).then_some(ExpandingSet { assignment }))
}

pub fn validate_expanding_set(g: &Graph, t: &Tiling, set: &ExpandingSet) -> std::result::Result<(), String> {
    let covered = t.covered(g.order());
    let mut used = vec![false; t.len()];
    let mut seen = VertexSet::new(g.order());
    for &(z, c) in &set.assignment {
        if z >= g.order() || covered.contains(z) || !seen.insert(z) {
            return Err(format!("vertex {z} is covered, repeated or out of range"));
        }
        if c >= t.len() || std::mem::replace(&mut used[c], true) {
            return Err(format!("copy {c} is missing or assigned twice"));
        }
        match reaches_every_width_class(g, z, &t.embeddings[c]) {
            Ok(true) => {}
            Ok(false) => return Err(format!("vertex {z} misses a width class of copy {c}")),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(())
}

/// Thresholds of a swapping pair: at least `neck_min` neighbours in the neck
/// class, `width_min` in every other width class, and a position gap of
/// at least `offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SwapRule {
    pub neck_min: usize,
    pub width_min: usize,
    pub offset: usize,
}

impl SwapRule {
    pub fn for_bottle(base: BottleShape, offset: usize) -> Self {
        SwapRule { neck_min: base.neck, width_min: base.width, offset }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapPair {
    pub z: usize,
    pub y: usize,
    pub copy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwappingSet {
    pub offset: usize,
    pub pairs: Vec<SwapPair>,
}

/// Checks the three pair conditions for `z` against `y` in `copy`.
pub fn is_swapping_pair(
    g: &Graph,
    copy: &Embedding,
    z: usize,
    y: usize,
    ordering: &VertexOrdering,
    rule: &SwapRule,
) -> Result<bool> {
    let classes = copy_classes(copy)?;
    let Some(y_class) = classes.iter().skip(1).position(|c| c.contains(&y)).map(|k| k + 1) else {
        return Ok(false);
    };
    if ordering.position(y) < ordering.position(z) + rule.offset {
        return Ok(false);
    }
    let hits = |c: &[usize]| c.iter().filter(|&&v| g.has_edge(z, v)).count();
    if hits(&classes[0]) < rule.neck_min {
        return Ok(false);
    }
    Ok(classes.iter().enumerate().skip(1).all(|(k, c)| k == y_class || hits(c) >= rule.width_min))
}

/// A swapping set of the given size, decided exactly by matching uncovered
/// vertices to copies that hold a partner for them; the partner recorded is
/// the lowest admissible label.
pub fn find_swapping_set(
    g: &Graph,
    t: &Tiling,
    ordering: &VertexOrdering,
    rule: &SwapRule,
    size: usize,
) -> Result<Option<SwappingSet>> {
    if ordering.len() != g.order() {
        return Err(invalid("ordering does not match the host"));
    }
    let outside = uncovered(g, t);
    let mut options = Vec::with_capacity(outside.len());
    let mut partner = Vec::with_capacity(outside.len());
    for &z in &outside {
        let mut row = Vec::new();
        let mut ys = Vec::new();
        for (ci, e) in t.embeddings.iter().enumerate() {
            let classes = copy_classes(e)?;
            let mut width: Vec<usize> = classes[1..].iter().flatten().copied().collect();
            width.sort_unstable();
            for y in width {
                if is_swapping_pair(g, e, z, y, ordering, rule)? {
                    row.push(ci);
                    ys.push(y);
                    break;
                }
            }
        }
        options.push(row);
        partner.push(ys);
    }
    let matched = max_matching(&options, t.len());
    let mut pairs = Vec::new();
    for (u, m) in matched.iter().enumerate() {
        if let Some(c) = m {
            let idx = options[u].iter().position(|x| x == c).expect("matched option exists");
            pairs.push(SwapPair { z: outside[u], y: partner[u][idx], copy: *c });
        }
    }
    pairs.truncate(size);
    Ok((pairs.len() == size).then_some(SwappingSet { offset: rule.offset, pairs }))
}

pub fn validate_swapping_set(
    g: &Graph,
    t: &Tiling,
    ordering: &VertexOrdering,
    rule: &SwapRule,
    set: &SwappingSet,
) -> std::result::Result<(), String> {
    let covered = t.covered(g.order());
    let mut used = vec![false; t.len()];
    let mut seen = VertexSet::new(g.order());
    for p in &set.pairs {
        if p.z >= g.order() || covered.contains(p.z) || !seen.insert(p.z) {
            return Err(format!("vertex {} is covered, repeated or out of range", p.z));
        }
        if p.copy >= t.len() || std::mem::replace(&mut used[p.copy], true) {
            return Err(format!("copy {} is missing or used twice", p.copy));
        }
        match is_swapping_pair(g, &t.embeddings[p.copy], p.z, p.y, ordering, rule) {
            Ok(true) => {}
            Ok(false) => return Err(format!("({}, {}) is not a swapping pair", p.z, p.y)),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(())
}

/// `η`, `γ` and the blow-up factor `m`, with `0 < γ ≤ η/(10m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SlackParams {
    #[serde(with = "rational::serde_str")]
    pub eta: Rational,
    #[serde(with = "rational::serde_str")]
    pub gamma: Rational,
    pub m: usize,
}

impl SlackParams {
    pub fn new(eta: Rational, gamma: Rational, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m must be positive"));
        }
        if gamma <= Rational::zero() || gamma > eta {
            return Err(invalid("need 0 < γ ≤ η"));
        }
        if gamma * int(10 * m as i128) > eta {
            return Err(invalid("need γ ≤ η/(10m)"));
        }
        Ok(SlackParams { eta, gamma, m })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallBigSplit {
    pub small: Vec<usize>,
    pub big: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub threshold: Rational,
}

/// Splits the uncovered vertices, in ordering position, by
/// `d ≤ ((b − ω)/b)n + (η − 2γ)n`.
pub fn small_big_split(
    g: &Graph,
    t: &Tiling,
    base: BottleShape,
    params: &SlackParams,
    ordering: &VertexOrdering,
) -> SmallBigSplit {
    let n = int(g.order() as i128);
    let b = int(base.order() as i128);
    let w = int(base.width as i128);
    let threshold = (b - w) / b * n + (params.eta - int(2) * params.gamma) * n;
    let covered = t.covered(g.order());
    let (mut small, mut big) = (Vec::new(), Vec::new());
    for &v in ordering.order() {
        if covered.contains(v) {
            continue;
        }
        if int(g.degree(v) as i128) <= threshold {
            small.push(v);
        } else {
            big.push(v);
        }
    }
    SmallBigSplit { small, big, threshold }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum StepOutcome {
    Expanding { set: ExpandingSet },
    Swapping { set: SwappingSet },
    NewCopy { copy: Embedding },
    Exhausted { split: SmallBigSplit },
}

/// Tries an expanding set of size `⌈γn⌉`, then a `⌈ωγn/σ⌉`-swapping set of
/// that size, then a fresh tile among uncovered vertices.
pub fn expand_or_swap_step(
    g: &Graph,
    t: &Tiling,
    base: BottleShape,
    params: &SlackParams,
    ordering: &VertexOrdering,
) -> Result<StepOutcome> {
    let n = int(g.order() as i128);
    let size = ceil_int(&(params.gamma * n)).max(0) as usize;
    let offset = ceil_int(&(int(base.width as i128) * params.gamma * n / int(base.neck as i128))).max(0) as usize;
    if let Some(set) = find_expanding_set(g, t, size)? {
        return Ok(StepOutcome::Expanding { set });
    }
    let rule = SwapRule::for_bottle(base, offset);
    if let Some(set) = find_swapping_set(g, t, ordering, &rule, size)? {
        return Ok(StepOutcome::Swapping { set });
    }
    let free = VertexSet::from_vertices(g.order(), uncovered(g, t));
    let tile = Pattern::bottle(base.scaled(params.m));
    let found = enumerate_copies_within(g, &tile, &free, Some(1))?;
    if let Some(copy) = found.copies.into_iter().next() {
        return Ok(StepOutcome::NewCopy { copy });
    }
    Ok(StepOutcome::Exhausted { split: small_big_split(g, t, base, params, ordering) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum KrOutcome {
    Found {
        clique: Vec<usize>,
        /// `|N(x_1, …, x_i)|` after each of the first `r − 1` picks.
        neighbourhood_sizes: Vec<usize>,
    },
    Failed {
        step: usize,
        chosen: Vec<usize>,
        candidates: usize,
    },
}

/// Degree floor `k − (ω/b)k + ηk/3` for a `k`-vertex graph.
pub fn kr_degree_floor(k: usize, base: BottleShape, eta: Rational) -> Rational {
    let k = int(k as i128);
    k - int(base.width as i128) / int(base.order() as i128) * k + eta * k / int(3)
}

/// Builds `K_r` one vertex at a time inside the running common
/// neighbourhood: steps `1..r−1` take the highest-degree candidate meeting
/// the floor (lowest label on ties), step `r` takes the lowest label.
pub fn greedy_kr(g: &Graph, base: BottleShape, eta: Rational) -> KrOutcome {
    let r = base.r;
    let floor = kr_degree_floor(g.order(), base, eta);
    let mut common = VertexSet::full(g.order());
    let mut chosen = Vec::with_capacity(r);
    let mut sizes = Vec::with_capacity(r - 1);
    for step in 1..=r {
        let pick = if step < r {
            common
                .iter()
                .filter(|&v| int(g.degree(v) as i128) >= floor)
                .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        } else {
            common.first()
        };
        let Some(v) = pick else {
            return KrOutcome::Failed { step, chosen, candidates: common.len() };
        };
        chosen.push(v);
        common.intersect_with(g.neighbors(v));
        if step < r {
            sizes.push(common.len());
        }
    }
    KrOutcome::Found { clique: chosen, neighbourhood_sizes: sizes }
}

pub const REGULARITY_SIDE_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Regularity {
    Regular,
    Irregular {
        x: Vec<usize>,
        y: Vec<usize>,
        #[serde(with = "rational::serde_str")]
        gap: Rational,
    },
}

fn pair_edges(g: &Graph, xs: &[usize], ys: &[usize]) -> i128 {
    xs.iter().map(|&x| ys.iter().filter(|&&y| g.has_edge(x, y)).count() as i128).sum()
}

fn subset(side: &[usize], mask: u32) -> Vec<usize> {
    side.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

/// Exhaustive test over all `X ⊆ A`, `Y ⊆ B` with `|X| > ε|A|` and
/// `|Y| > ε|B|`. Subsets are visited by increasing bitmask (bit `i` is the
/// `i`-th listed vertex), `X` outermost; the first violation is returned.
pub fn epsilon_regular_check(g: &Graph, a: &[usize], b: &[usize], eps: Rational) -> Result<Regularity> {
    if a.len() > REGULARITY_SIDE_LIMIT || b.len() > REGULARITY_SIDE_LIMIT {
        return Err(Error::Refused(format!("sides are limited to {REGULARITY_SIDE_LIMIT} vertices")));
    }
    if a.is_empty() || b.is_empty() {
        return Err(invalid("both sides must be non-empty"));
    }
    if eps <= Rational::zero() {
        return Err(invalid("ε must be positive"));
    }
    let whole = Rational::new(pair_edges(g, a, b), (a.len() * b.len()) as i128);
    let (la, lb) = (int(a.len() as i128), int(b.len() as i128));
    for xm in 1u32..1 << a.len() {
        if int(xm.count_ones() as i128) <= eps * la {
            continue;
        }
        let xs = subset(a, xm);
        for ym in 1u32..1 << b.len() {
            if int(ym.count_ones() as i128) <= eps * lb {
                continue;
            }
            let ys = subset(b, ym);
            let d = Rational::new(pair_edges(g, &xs, &ys), (xs.len() * ys.len()) as i128);
            let gap = (d - whole).abs();
            if gap >= eps {
                return Ok(Regularity::Irregular { x: xs, y: ys, gap });
            }
        }
    }
    Ok(Regularity::Regular)
}

/// `d̄_j = s·d_{⌈j/s⌉}` for the sorted degrees of the `s`-fold blow-up.
pub fn blown_degree_sequence(sorted: &[usize], s: usize) -> Vec<usize> {
    sorted.iter().flat_map(|&d| std::iter::repeat_n(d * s, s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InheritanceReport {
    pub input: DegreeCheck,
    pub checked: usize,
    /// First index where `d̄_i` falls below the scaled bound, if any.
    pub failure: Option<usize>,
}

impl InheritanceReport {
    pub fn holds(&self) -> bool {
        self.input.passed() && self.failure.is_none()
    }
}

/// Checks `d̄_i ≥ intercept·ns + slope·i + (slack·n − slope)·s` for
/// `i ≤ cutoff·ns` on the symbolic blow-up degree sequence.
pub fn verify_blowup_inheritance(g: &Graph, s: usize, line: &BoundLine) -> Result<InheritanceReport> {
    if s == 0 {
        return Err(invalid("blow-up factor must be positive"));
    }
    let input = check_degree_sequence(g, line);
    if !input.passed() {
        return Ok(InheritanceReport { input, checked: 0, failure: None });
    }
    let n = g.order();
    let blown = blown_degree_sequence(&g.sorted_degrees(), s);
    let (nn, ss) = (int(n as i128), int(s as i128));
    let last = crate::rational::floor_int(&(line.cutoff * nn * ss)).max(0) as usize;
    let last = last.min(blown.len());
    let failure = (1..=last).find(|&i| {
        let bound = line.intercept * nn * ss + line.slope * int(i as i128) + (line.slack * nn - line.slope) * ss;
        int(blown[i - 1] as i128) < bound
    });
    Ok(InheritanceReport { input, checked: last, failure })
}

/// Pattern of a tile `B(m)` shared by all copies a caller builds by hand.
pub fn tile_pattern(base: BottleShape, m: usize) -> Arc<Pattern> {
    Pattern::bottle(base.scaled(m))
}

/// The lowest-label embedding of `pattern` onto the listed host vertices,
/// class by class.
pub fn embed_classes(pattern: &Arc<Pattern>, class_images: &[Vec<usize>]) -> Result<Embedding> {
    let classes = pattern.classes.as_ref().ok_or_else(|| invalid("pattern has no class structure"))?;
    if classes.len() != class_images.len() {
        return Err(invalid("class count mismatch"));
    }
    let mut image = vec![usize::MAX; pattern.order()];
    for (c, img) in classes.iter().zip(class_images) {
        if c.len() != img.len() {
            return Err(invalid("class size mismatch"));
        }
        for (&p, &v) in c.iter().zip(img) {
            image[p] = v;
        }
    }
    Ok(Embedding::new(pattern.clone(), image))
}
