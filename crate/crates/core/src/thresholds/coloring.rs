//! Exact chromatic number and the minimum smallest colour class.

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// A proper colouring: `colors[v]` in `0..k`.
pub type Colouring = Vec<usize>;

/// Tries to colour `g` with at most `k` colours. Vertices are picked in
/// DSATUR order (largest saturation, then degree, then label); colours are
/// introduced in order so symmetric branches are skipped.
pub fn k_colouring(g: &Graph, k: usize) -> Option<Colouring> {
    let n = g.order();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut colors = vec![usize::MAX; n];
    // adj_count[v][c] = number of neighbours of v with colour c
    let mut adj_count = vec![vec![0u32; k]; n];
    if dsatur_extend(g, k, &mut colors, &mut adj_count, 0, 0) {
        Some(colors)
    } else {
        None
    }
}

fn dsatur_extend(
    g: &Graph,
    k: usize,
    colors: &mut [usize],
    adj_count: &mut [Vec<u32>],
    coloured: usize,
    used: usize,
) -> bool {
    let n = g.order();
    if coloured == n {
        return true;
    }
    let mut pick = usize::MAX;
    let mut best = (0usize, 0usize);
    for v in 0..n {
        if colors[v] != usize::MAX {
            continue;
        }
        let sat = adj_count[v].iter().filter(|&&c| c > 0).count();
        let key = (sat, g.degree(v));
        if pick == usize::MAX || key > best {
            pick = v;
            best = key;
        }
    }
    let v = pick;
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if adj_count[v][c] > 0 {
            continue;
        }
        colors[v] = c;
        for u in g.neighbors(v).iter() {
            adj_count[u][c] += 1;
        }
        if dsatur_extend(g, k, colors, adj_count, coloured + 1, used.max(c + 1)) {
            return true;
        }
        for u in g.neighbors(v).iter() {
            adj_count[u][c] -= 1;
        }
        colors[v] = usize::MAX;
    }
    false
}

fn greedy_clique_size(g: &Graph) -> usize {
    let mut best = 0;
    for start in 0..g.order() {
        let mut cand = g.neighbors(start).clone();
        let mut size = 1;
        while let Some(v) = cand.iter().max_by_key(|&v| (g.neighbors(v).intersection_len(&cand), std::cmp::Reverse(v)))
        {
            size += 1;
            cand.intersect_with(g.neighbors(v));
        }
        best = best.max(size);
    }
    best
}

/// Exact chromatic number with a witness colouring.
pub fn chromatic_number(g: &Graph) -> (usize, Colouring) {
    if g.order() == 0 {
        return (0, Vec::new());
    }
    let mut k = greedy_clique_size(g).max(1);
    loop {
        if let Some(c) = k_colouring(g, k) {
            return (k, c);
        }
        k += 1;
    }
}

/// For a graph with chromatic number `r ≥ 1`, finds the smallest possible
/// size of the smallest class over all proper `r`-colourings, returned with
/// witness classes; class 0 is a smallest class.
///
/// Independent sets are tried in increasing size; a set `S` is a colour class
/// of some `r`-colouring iff `g − S` is `(r − 1)`-colourable, and the first
/// size that works is the minimum.
pub fn min_smallest_class(g: &Graph, r: usize) -> Option<(usize, Vec<Vec<usize>>)> {
    let n = g.order();
    if r == 0 || n == 0 {
        return None;
    }
    if r == 1 {
        return Some((n, vec![(0..n).collect()]));
    }
    let mut chosen = Vec::new();
    for s in 1..=n / r {
        if let Some(classes) = search_independent(g, r, s, 0, &mut chosen, &VertexSet::full(n)) {
            return Some((s, classes));
        }
    }
    None
}

fn search_independent(
    g: &Graph,
    r: usize,
    size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    allowed: &VertexSet,
) -> Option<Vec<Vec<usize>>> {
    if chosen.len() == size {
        let rest: Vec<usize> = (0..g.order()).filter(|v| !chosen.contains(v)).collect();
        let sub = g.induced(&rest);
        let col = k_colouring(&sub, r - 1)?;
        let mut classes = vec![chosen.clone()];
        for c in 0..r - 1 {
            classes.push(rest.iter().zip(&col).filter(|(_, &x)| x == c).map(|(&v, _)| v).collect());
        }
        return Some(classes);
    }
    let need = size - chosen.len();
    let candidates: Vec<usize> = allowed.iter().filter(|&v| v >= from).collect();
    if candidates.len() < need {
        return None;
    }
    for (idx, &v) in candidates.iter().enumerate() {
        if candidates.len() - idx < need {
            break;
        }
        let mut next = allowed.clone();
        next.difference_with(g.neighbors(v));
        next.remove(v);
        chosen.push(v);
        let found = search_independent(g, r, size, v + 1, chosen, &next);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
