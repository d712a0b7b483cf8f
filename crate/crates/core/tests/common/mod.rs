#![allow(dead_code)]

use tiling_core::io::parse_graph6;
use tiling_core::{Embedding, Graph, Rational};

/// Connected graphs on 2 to 7 vertices, one graph6 line each.
pub fn corpus() -> Vec<Graph> {
    include_str!("../data/connected_le7.g6")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_graph6(l).expect("corpus line parses"))
        .collect()
}

/// `(χ, σ)` by trying every assignment of `c` colours for increasing `c`.
pub fn brute_chi_sigma(g: &Graph) -> (usize, usize) {
    let h = g.order();
    let edges = g.edges();
    for c in 1..=h {
        let mut best: Option<usize> = None;
        let mut colour = vec![0usize; h];
        loop {
            if edges.iter().all(|&(u, v)| colour[u] != colour[v]) {
                let mut counts = vec![0usize; c];
                for &k in &colour {
                    counts[k] += 1;
                }
                if counts.iter().all(|&k| k > 0) {
                    let small = *counts.iter().min().unwrap();
                    best = Some(best.map_or(small, |b| b.min(small)));
                }
            }
            // odometer step
            let mut i = 0;
            while i < h {
                colour[i] += 1;
                if colour[i] < c {
                    break;
                }
                colour[i] = 0;
                i += 1;
            }
            if i == h {
                break;
            }
        }
        if let Some(s) = best {
            return (c, s);
        }
    }
    unreachable!("h colours always suffice")
}

pub fn brute_chi_cr(g: &Graph) -> Rational {
    let (r, s) = brute_chi_sigma(g);
    let h = g.order() as i128;
    Rational::new((r as i128 - 1) * h, h - s as i128)
}

/// The embedding is injective and maps every pattern edge onto a host edge.
pub fn is_copy(host: &Graph, e: &Embedding) -> bool {
    let mut seen = e.image.clone();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == e.image.len()
        && e.image.iter().all(|&v| v < host.order())
        && e.pattern.graph.edges().iter().all(|&(u, v)| host.has_edge(e.image[u], e.image[v]))
}

/// Host images of each pattern class.
pub fn classes_of(e: &Embedding) -> Vec<Vec<usize>> {
    e.pattern
        .classes
        .as_ref()
        .expect("partitioned pattern")
        .iter()
        .map(|c| c.iter().map(|&p| e.image[p]).collect())
        .collect()
}

/// Largest number of target vertices covered by disjoint copies drawn from
/// `copies` (vertex sets), by a memoised search over the lowest free vertex.
pub fn max_disjoint_cover(n: usize, copies: &[Vec<usize>], weight: impl Fn(usize) -> usize) -> usize {
    assert!(n <= 24);
    let masks: Vec<u32> = copies.iter().map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    let mut by_low: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &m in &masks {
        by_low[m.trailing_zeros() as usize].push(m);
    }
    let mut memo = std::collections::HashMap::new();
    fn go(
        used: u32,
        n: usize,
        by_low: &[Vec<u32>],
        weight: &dyn Fn(usize) -> usize,
        memo: &mut std::collections::HashMap<u32, usize>,
    ) -> usize {
        let free = !used & ((1u32 << n) - 1);
        if free == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&used) {
            return v;
        }
        let low = free.trailing_zeros() as usize;
        // leave `low` uncovered
        let mut best = go(used | 1 << low, n, by_low, weight, memo);
        for &m in &by_low[low] {
            if m & used == 0 {
                let gain: usize = (0..n).filter(|&v| m >> v & 1 == 1).map(weight).sum();
                best = best.max(gain + go(used | m, n, by_low, weight, memo));
            }
        }
        memo.insert(used, best);
        best
    }
    go(0, n, &by_low, &weight, &mut memo)
}
