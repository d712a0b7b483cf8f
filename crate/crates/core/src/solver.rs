//! Copy enumeration and exact maximum tilings.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::tiling::{Embedding, Pattern, Tiling};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const ORACLE_LIMIT: usize = 16;

/// Distinct vertex sets spanning a copy of `pattern`, each with the first
/// witness embedding found, sorted by their sorted image set.
#[derive(Clone, Debug)]
pub struct CopyCatalog {
    pub pattern: Arc<Pattern>,
    pub host_order: usize,
    pub copies: Vec<Embedding>,
    pub truncated: bool,
}

impl CopyCatalog {
    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        self.copies.iter().map(Embedding::vertex_set).collect()
    }
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
}

impl Matcher<'_> {
    /// Pattern vertices in breadth-first order from `start`, so that every
    /// vertex after the first in its component has an earlier neighbour.
    fn order_from(&self, start: usize) -> Vec<usize> {
        let h = self.pattern.order();
        let mut seen = vec![false; h];
        let mut order = Vec::with_capacity(h);
        for root in std::iter::once(start).chain(0..h) {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut head = order.len();
            order.push(root);
            while head < order.len() {
                let p = order[head];
                head += 1;
                for q in self.pattern.neighbors(p).iter() {
                    if !seen[q] {
                        seen[q] = true;
                        order.push(q);
                    }
                }
            }
        }
        order
    }

    /// Calls `found` with every embedding mapping `start.0 ↦ start.1` whose
    /// other images lie in `allowed`.
    fn for_each(&self, start: (usize, usize), allowed: &VertexSet, found: &mut dyn FnMut(&[usize])) {
        let h = self.pattern.order();
        let (p0, v0) = start;
        if self.host.degree(v0) < self.pattern.degree(p0) {
            return;
        }
        let order = self.order_from(p0);
        let mut image = vec![usize::MAX; h];
        image[p0] = v0;
        let mut used = VertexSet::new(self.host.order());
        used.insert(v0);
        self.extend(&order, 1, &mut image, &mut used, allowed, found);
    }

    fn extend(
        &self,
        order: &[usize],
        depth: usize,
        image: &mut [usize],
        used: &mut VertexSet,
        allowed: &VertexSet,
        found: &mut dyn FnMut(&[usize]),
    ) {
        if depth == order.len() {
            found(image);
            return;
        }
        let p = order[depth];
        let mut cand = allowed.clone();
        cand.difference_with(used);
        for q in self.pattern.neighbors(p).iter() {
            if image[q] != usize::MAX {
                cand.intersect_with(self.host.neighbors(image[q]));
            }
        }
        let need = self.pattern.degree(p);
        for v in cand.iter() {
            if self.host.degree(v) < need {
                continue;
            }
            image[p] = v;
            used.insert(v);
            self.extend(order, depth + 1, image, used, allowed, found);
            used.remove(v);
        }
        image[p] = usize::MAX;
    }
}

fn collect_anchor(
    matcher: &Matcher<'_>,
    anchor: usize,
    allowed: &VertexSet,
    sets: &mut BTreeMap<Vec<usize>, Vec<usize>>,
) {
    for p in 0..matcher.pattern.order() {
        matcher.for_each((p, anchor), allowed, &mut |image| {
            let mut key = image.to_vec();
            key.sort_unstable();
            sets.entry(key).or_insert_with(|| image.to_vec());
        });
    }
}

fn check_pattern(pattern: &Pattern) -> Result<()> {
    if pattern.order() == 0 {
        return Err(invalid("pattern has no vertices"));
    }
    Ok(())
}

/// All copies of `pattern` (not necessarily induced) inside `within`, or the
/// first `cap` of them in order of their sorted vertex sets.
pub fn enumerate_copies_within(
    host: &Graph,
    pattern: &Arc<Pattern>,
    within: &VertexSet,
    cap: Option<usize>,
) -> Result<CopyCatalog> {
    check_pattern(pattern)?;
    let n = host.order();
    let mut catalog = CopyCatalog { pattern: pattern.clone(), host_order: n, copies: Vec::new(), truncated: false };
    if pattern.order() > within.len() {
        return Ok(catalog);
    }
    let matcher = Matcher { host, pattern: &pattern.graph };
    let mut allowed = within.clone();
    for anchor in within.iter() {
        // copies whose smallest vertex is `anchor`
        let mut sets = BTreeMap::new();
        collect_anchor(&matcher, anchor, &allowed, &mut sets);
        allowed.remove(anchor);
        catalog.copies.extend(sets.into_values().map(|img| Embedding::new(pattern.clone(), img)));
        if let Some(c) = cap {
            if catalog.copies.len() > c {
                catalog.copies.truncate(c);
                catalog.truncated = true;
                break;
            }
        }
    }
    Ok(catalog)
}

pub fn enumerate_copies(host: &Graph, pattern: &Graph, cap: Option<usize>) -> Result<CopyCatalog> {
    enumerate_pattern_copies(host, &Pattern::plain(pattern.clone()), cap)
}

pub fn enumerate_pattern_copies(host: &Graph, pattern: &Arc<Pattern>, cap: Option<usize>) -> Result<CopyCatalog> {
    enumerate_copies_within(host, pattern, &VertexSet::full(host.order()), cap)
}

/// Copies with at least one vertex in `required`, sorted by vertex set.
pub fn enumerate_copies_touching(host: &Graph, pattern: &Graph, required: &VertexSet) -> Result<CopyCatalog> {
    let pattern = Pattern::plain(pattern.clone());
    check_pattern(&pattern)?;
    let matcher = Matcher { host, pattern: &pattern.graph };
    let all = VertexSet::full(host.order());
    let mut sets = BTreeMap::new();
    if pattern.order() <= host.order() {
        for v in required.iter() {
            collect_anchor(&matcher, v, &all, &mut sets);
        }
    }
    Ok(CopyCatalog {
        copies: sets.into_values().map(|img| Embedding::new(pattern.clone(), img)).collect(),
        pattern,
        host_order: host.order(),
        truncated: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimality {
    ProvenOptimal,
    BestFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct TilingResult {
    pub tiling: Tiling,
    pub covered_count: usize,
    pub optimality: Optimality,
    pub nodes: u64,
}

impl TilingResult {
    pub fn is_proven(&self) -> bool {
        self.optimality == Optimality::ProvenOptimal
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub node_budget: u64,
    /// Per-pattern cap on enumerated copies; hitting it forfeits proven optimality.
    pub copy_cap: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_budget: DEFAULT_NODE_BUDGET, copy_cap: None }
    }
}

struct Candidate {
    set: VertexSet,
    embedding: Embedding,
}

struct Search<'a> {
    candidates: &'a [Candidate],
    by_vertex: Vec<Vec<usize>>,
    /// `best_sum[e]`: largest sum of pattern orders not exceeding `e`.
    best_sum: Vec<usize>,
    target: Option<&'a VertexSet>,
    budget: u64,
    nodes: u64,
    aborted: bool,
    best_value: usize,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    fn value_of(&self, set: &VertexSet) -> usize {
        match self.target {
            Some(t) => set.intersection_len(t),
            None => set.len(),
        }
    }

    fn run(&mut self, avail: &VertexSet, value: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if value > self.best_value {
            self.best_value = value;
            self.best = self.current.clone();
        }
        let mut eligible = VertexSet::new(avail.universe());
        for c in self.candidates {
            if c.set.is_subset(avail) {
                eligible.union_with(&c.set);
            }
        }
        let (bound, branch) = match self.target {
            Some(t) => {
                eligible.intersect_with(t);
                (value + eligible.len(), eligible.first())
            }
            None => (value + self.best_sum[eligible.len()], eligible.first()),
        };
        if bound <= self.best_value {
            return;
        }
        let Some(v) = branch else { return };
        for k in 0..self.by_vertex[v].len() {
            let ci = self.by_vertex[v][k];
            let set = &self.candidates[ci].set;
            if !set.is_subset(avail) {
                continue;
            }
            let mut next = avail.clone();
            next.difference_with(set);
            let gain = self.value_of(set);
            self.current.push(ci);
            self.run(&next, value + gain);
            self.current.pop();
            if self.aborted {
                return;
            }
        }
        let mut next = avail.clone();
        next.remove(v);
        self.run(&next, value);
    }
}

fn build_candidates(host: &Graph, patterns: &[Arc<Pattern>], config: &SolverConfig) -> Result<(Vec<Candidate>, bool)> {
    if patterns.is_empty() {
        return Err(invalid("pattern list is empty"));
    }
    let mut idx: Vec<usize> = (0..patterns.len()).collect();
    idx.sort_by_key(|&i| std::cmp::Reverse(patterns[i].order()));
    let n = host.order();
    let mut out = Vec::new();
    let mut truncated = false;
    for i in idx {
        let cat = enumerate_pattern_copies(host, &patterns[i], config.copy_cap)?;
        truncated |= cat.truncated;
        out.extend(
            cat.copies
                .into_iter()
                .map(|e| Candidate { set: VertexSet::from_vertices(n, e.image.iter().copied()), embedding: e }),
        );
    }
    Ok((out, truncated))
}

fn subset_sums(orders: &[usize], n: usize) -> Vec<usize> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for s in 0..=n {
        if reach[s] {
            for &h in orders {
                if s + h <= n {
                    reach[s + h] = true;
                }
            }
        }
    }
    let mut best = vec![0; n + 1];
    for s in 1..=n {
        best[s] = if reach[s] { s } else { best[s - 1] };
    }
    best
}

fn search(
    host: &Graph,
    patterns: &[Arc<Pattern>],
    target: Option<&VertexSet>,
    config: &SolverConfig,
) -> Result<(TilingResult, usize)> {
    let n = host.order();
    let (candidates, truncated) = build_candidates(host, patterns, config)?;
    let mut by_vertex = vec![Vec::new(); n];
    for (ci, c) in candidates.iter().enumerate() {
        for v in c.set.iter() {
            by_vertex[v].push(ci);
        }
    }
    let orders: Vec<usize> = patterns.iter().map(|p| p.order()).collect();
    let mut s = Search {
        candidates: &candidates,
        by_vertex,
        best_sum: subset_sums(&orders, n),
        target,
        budget: config.node_budget,
        nodes: 0,
        aborted: false,
        best_value: 0,
        best: Vec::new(),
        current: Vec::new(),
    };
    s.run(&VertexSet::full(n), 0);
    let tiling = Tiling::new(s.best.iter().map(|&ci| candidates[ci].embedding.clone()).collect());
    let optimality = if s.aborted || truncated { Optimality::BestFound } else { Optimality::ProvenOptimal };
    let value = s.best_value;
    Ok((TilingResult { covered_count: tiling.covered_count(), tiling, optimality, nodes: s.nodes }, value))
}

/// Maximum tiling by copies of the given patterns (mixed tilings allowed).
pub fn max_tiling(host: &Graph, patterns: &[Graph]) -> Result<TilingResult> {
    let patterns: Vec<_> = patterns.iter().cloned().map(Pattern::plain).collect();
    max_tiling_with(host, &patterns, &SolverConfig::default())
}

/// Branch and bound on the lowest available vertex that still lies in an
/// available copy: either a copy through it is taken or it is skipped for
/// good. The bound adds to the current cover the largest sum of pattern
/// orders that fits into the vertices still coverable.
pub fn max_tiling_with(host: &Graph, patterns: &[Arc<Pattern>], config: &SolverConfig) -> Result<TilingResult> {
    search(host, patterns, None, config).map(|(r, _)| r)
}

/// A tiling maximising the number of covered vertices of `target`, with that
/// number.
pub fn max_target_cover(
    host: &Graph,
    patterns: &[Arc<Pattern>],
    target: &VertexSet,
    config: &SolverConfig,
) -> Result<(TilingResult, usize)> {
    search(host, patterns, Some(target), config)
}

pub fn coverage_deficit(result: &TilingResult, host_n: usize) -> usize {
    host_n.saturating_sub(result.covered_count)
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Exhaustive reference: every vertex subset of each pattern's size is tried
/// under every bijection, then a memoised recursion over bitmasks picks the
/// best disjoint family. Refuses hosts with more than 16 vertices.
pub fn max_tiling_oracle(host: &Graph, patterns: &[Graph]) -> Result<TilingResult> {
    let n = host.order();
    if n > ORACLE_LIMIT {
        return Err(Error::Refused(format!("oracle handles at most {ORACLE_LIMIT} host vertices, got {n}")));
    }
    if patterns.is_empty() {
        return Err(invalid("pattern list is empty"));
    }
    let mut copies: BTreeMap<u32, (usize, Vec<usize>)> = BTreeMap::new();
    for (pi, pat) in patterns.iter().enumerate() {
        let h = pat.order();
        if h == 0 {
            return Err(invalid("pattern has no vertices"));
        }
        if h > n {
            continue;
        }
        let pedges = pat.edges();
        let mut comb: Vec<usize> = (0..h).collect();
        loop {
            let mask = comb.iter().fold(0u32, |m, &v| m | 1 << v);
            if !copies.contains_key(&mask) {
                let mut perm: Vec<usize> = (0..h).collect();
                loop {
                    if pedges.iter().all(|&(a, b)| host.has_edge(comb[perm[a]], comb[perm[b]])) {
                        copies.insert(mask, (pi, perm.iter().map(|&x| comb[x]).collect()));
                        break;
                    }
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    let masks: Vec<u32> = copies.keys().copied().collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<u32, (usize, Option<u32>)> = HashMap::new();
    fn best(mask: u32, full: u32, masks: &[u32], memo: &mut HashMap<u32, (usize, Option<u32>)>) -> usize {
        if mask == full {
            return 0;
        }
        if let Some(&(v, _)) = memo.get(&mask) {
            return v;
        }
        let v = (!mask & full).trailing_zeros();
        let mut value = best(mask | 1 << v, full, masks, memo);
        let mut choice = None;
        for &c in masks {
            if c >> v & 1 == 1 && c & mask == 0 {
                let got = c.count_ones() as usize + best(mask | c, full, masks, memo);
                if got > value {
                    value = got;
                    choice = Some(c);
                }
            }
        }
        memo.insert(mask, (value, choice));
        value
    }
    let total = best(0, full, &masks, &mut memo);
    let arcs: Vec<_> = patterns.iter().cloned().map(Pattern::plain).collect();
    let mut embeddings = Vec::new();
    let mut mask = 0u32;
    while mask != full {
        let v = (!mask & full).trailing_zeros();
        match memo.get(&mask).and_then(|e| e.1) {
            Some(c) => {
                let (pi, image) = &copies[&c];
                embeddings.push(Embedding::new(arcs[*pi].clone(), image.clone()));
                mask |= c;
            }
            None => mask |= 1 << v,
        }
    }
    let tiling = Tiling::new(embeddings);
    debug_assert_eq!(tiling.covered_count(), total);
    Ok(TilingResult { covered_count: total, tiling, optimality: Optimality::ProvenOptimal, nodes: memo.len() as u64 })
}
