//! Undirected simple graphs on dense vertex labels `0..n`, stored as bit rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{invalid, Result};

/// Largest vertex count any [`Graph`] may have.
pub const MAX_VERTICES: usize = 4096;

/// Isomorphism testing is exhaustive, so it is only offered up to this order.
pub const ISOMORPHISM_LIMIT: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
        }
        Ok(Graph { rows: (0..n).map(|_| VertexSet::new(n)).collect() })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n).expect("complete graph too large");
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle too large")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path too large")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    fn link(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    /// Adds `uv`; returns whether the edge is new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(invalid(format!("edge ({u}, {v}) outside vertex range 0..{n}")));
        }
        if u == v {
            return Err(invalid(format!("self-loop at vertex {u}")));
        }
        let fresh = !self.has_edge(u, v);
        self.link(u, v);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.has_edge(u, v);
        self.rows[u].remove(v);
        self.rows[v].remove(u);
        had
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    /// Degrees in non-decreasing order, i.e. `d_1 ≤ … ≤ d_n` at positions `0..n`.
    pub fn sorted_degrees(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            out.extend(self.rows[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.rows.iter().map(VertexSet::len).min().unwrap_or(0)
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len()).expect("subgraph of a valid graph");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.link(i, j);
                }
            }
        }
        g
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(invalid("relabelling is not a permutation of the vertex set"));
        }
        Graph::from_edges(n, self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Exhaustive isomorphism test with degree refinement. `None` when either
    /// graph is larger than [`ISOMORPHISM_LIMIT`].
    pub fn is_isomorphic(&self, other: &Graph) -> Option<bool> {
        let n = self.order();
        if n > ISOMORPHISM_LIMIT || other.order() > ISOMORPHISM_LIMIT {
            return None;
        }
        if n != other.order() || self.edge_count() != other.edge_count() {
            return Some(false);
        }
        let sig_a = self.refined_signatures();
        let sig_b = other.refined_signatures();
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return Some(false);
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        Some(iso_extend(self, other, &sig_a, &sig_b, 0, &mut map, &mut used))
    }

    fn refined_signatures(&self) -> Vec<(usize, Vec<usize>)> {
        (0..self.order())
            .map(|v| {
                let mut nd: Vec<usize> = self.rows[v].iter().map(|u| self.degree(u)).collect();
                nd.sort_unstable();
                (self.degree(v), nd)
            })
            .collect()
    }

    pub fn degree_ordering(&self) -> VertexOrdering {
        VertexOrdering::by_degree(self)
    }
}

fn iso_extend(
    a: &Graph,
    b: &Graph,
    sig_a: &[(usize, Vec<usize>)],
    sig_b: &[(usize, Vec<usize>)],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == a.order() {
        return true;
    }
    for w in 0..b.order() {
        if used[w] || sig_a[v] != sig_b[w] {
            continue;
        }
        if (0..v).any(|u| a.has_edge(u, v) != b.has_edge(map[u], w)) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if iso_extend(a, b, sig_a, sig_b, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    false
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

/// A graph together with an ordered partition of its vertices into classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedGraph {
    pub graph: Graph,
    pub classes: Vec<Vec<usize>>,
}

impl PartitionedGraph {
    pub fn new(graph: Graph, classes: Vec<Vec<usize>>) -> Result<Self> {
        let n = graph.order();
        let mut seen = vec![false; n];
        for class in &classes {
            for &v in class {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(invalid(format!("vertex {v} is repeated or out of range in the class list")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(invalid(format!("vertex {v} belongs to no class")));
        }
        Ok(PartitionedGraph { graph, classes })
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }

    /// True iff the edge set is exactly the pairs lying in distinct classes.
    pub fn is_complete_multipartite(&self) -> bool {
        let mut label = vec![0usize; self.order()];
        for (i, c) in self.classes.iter().enumerate() {
            for &v in c {
                label[v] = i;
            }
        }
        (0..self.order()).all(|u| (u + 1..self.order()).all(|v| self.graph.has_edge(u, v) == (label[u] != label[v])))
    }
}

/// Complete multipartite graph; class `i` occupies a contiguous label range,
/// classes in the given order.
pub fn complete_multipartite(class_sizes: &[usize]) -> Result<PartitionedGraph> {
    if class_sizes.is_empty() {
        return Err(invalid("complete_multipartite needs at least one class"));
    }
    if class_sizes.contains(&0) {
        return Err(invalid("class sizes must be positive"));
    }
    let n: usize = class_sizes.iter().sum();
    let mut g = Graph::empty(n)?;
    let mut classes = Vec::with_capacity(class_sizes.len());
    let mut start = 0;
    for &s in class_sizes {
        classes.push((start..start + s).collect::<Vec<_>>());
        start += s;
    }
    for (i, ci) in classes.iter().enumerate() {
        for cj in &classes[i + 1..] {
            for &u in ci {
                for &v in cj {
                    g.link(u, v);
                }
            }
        }
    }
    Ok(PartitionedGraph { graph: g, classes })
}

/// Shape of an `r`-partite bottle graph: one neck class and `r − 1` width classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BottleShape {
    pub r: usize,
    pub neck: usize,
    pub width: usize,
}

impl BottleShape {
    pub fn new(r: usize, neck: usize, width: usize) -> Result<Self> {
        if r < 2 {
            return Err(invalid(format!("bottle graphs need r ≥ 2, got {r}")));
        }
        if neck == 0 || width == 0 {
            return Err(invalid("neck and width must be positive"));
        }
        if neck > width {
            return Err(invalid(format!("neck {neck} exceeds width {width}")));
        }
        Ok(BottleShape { r, neck, width })
    }

    /// `|B| = σ + (r − 1)ω`.
    pub fn order(&self) -> usize {
        self.neck + (self.r - 1) * self.width
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut v = vec![self.neck];
        v.extend(std::iter::repeat_n(self.width, self.r - 1));
        v
    }

    /// The bottle graph `B(m)`.
    pub fn scaled(&self, m: usize) -> Self {
        BottleShape { r: self.r, neck: self.neck * m, width: self.width * m }
    }

    pub fn build(&self) -> PartitionedGraph {
        complete_multipartite(&self.class_sizes()).expect("bottle shape was validated")
    }
}

/// Complete `r`-partite graph with neck class (index 0) of size `neck` and
/// `r − 1` classes of size `width`.
pub fn bottle_graph(r: usize, neck: usize, width: usize) -> Result<PartitionedGraph> {
    Ok(BottleShape::new(r, neck, width)?.build())
}

/// A blow-up `G(t)` with the map from each new vertex back to its origin.
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: Graph,
    /// `origin[v']` is the vertex of the base graph that `v'` replaces.
    pub origin: Vec<usize>,
    pub factor: usize,
}

impl BlowUp {
    /// The `t` copies of base vertex `x`.
    pub fn class(&self, x: usize) -> std::ops::Range<usize> {
        x * self.factor..(x + 1) * self.factor
    }
}

/// Replaces each vertex by `t` independent clones and each edge by `K_{t,t}`.
/// Clones of base vertex `x` are labelled `x·t .. x·t + t`.
pub fn blow_up(g: &Graph, t: usize) -> Result<BlowUp> {
    if t == 0 {
        return Err(invalid("blow-up factor must be positive"));
    }
    let n = g.order().checked_mul(t).ok_or_else(|| invalid("blow-up size overflows"))?;
    let mut out = Graph::empty(n)?;
    for (x, y) in g.edges() {
        for i in 0..t {
            for j in 0..t {
                out.link(x * t + i, y * t + j);
            }
        }
    }
    let origin = (0..n).map(|v| v / t).collect();
    Ok(BlowUp { graph: out, origin, factor: t })
}

/// A permutation of the vertices along which degrees never decrease.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl VertexOrdering {
    /// Sorted by degree, ties broken by vertex label.
    pub fn by_degree(g: &Graph) -> Self {
        let mut order: Vec<usize> = (0..g.order()).collect();
        order.sort_by_key(|&v| (g.degree(v), v));
        Self::from_order_unchecked(order)
    }

    pub fn from_order(g: &Graph, order: Vec<usize>) -> Result<Self> {
        let n = g.order();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(invalid("ordering is not a permutation of the vertex set"));
        }
        if order.windows(2).any(|w| g.degree(w[0]) > g.degree(w[1])) {
            return Err(invalid("degrees decrease along the ordering"));
        }
        Ok(Self::from_order_unchecked(order))
    }

    fn from_order_unchecked(order: Vec<usize>) -> Self {
        let mut rank = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i + 1;
        }
        VertexOrdering { order, rank }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 1-based position of `v`, the index `i` with `v = v_i`.
    pub fn position(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}
