//! Copies of patterns inside a host, and collections of vertex-disjoint copies.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::graph::{BottleShape, Graph, PartitionedGraph};

/// A pattern graph, optionally with the class structure that identifies its
/// neck (class 0) and width classes when it is a bottle graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub graph: Graph,
    pub classes: Option<Vec<Vec<usize>>>,
}

impl Pattern {
    pub fn plain(graph: Graph) -> Arc<Self> {
        Arc::new(Pattern { graph, classes: None })
    }

    pub fn partitioned(p: PartitionedGraph) -> Arc<Self> {
        Arc::new(Pattern { graph: p.graph, classes: Some(p.classes) })
    }

    pub fn bottle(shape: BottleShape) -> Arc<Self> {
        Self::partitioned(shape.build())
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

impl From<Graph> for Pattern {
    fn from(graph: Graph) -> Self {
        Pattern { graph, classes: None }
    }
}

/// An injective map from pattern vertices to host vertices (`image[p]`).
#[derive(Clone, PartialEq, Eq)]
pub struct Embedding {
    pub pattern: Arc<Pattern>,
    pub image: Vec<usize>,
}

impl Embedding {
    pub fn new(pattern: Arc<Pattern>, image: Vec<usize>) -> Self {
        Embedding { pattern, image }
    }

    /// Image vertices in increasing order.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut v = self.image.clone();
        v.sort_unstable();
        v
    }

    /// Host vertices of pattern class `k`, if the pattern carries classes.
    pub fn class_image(&self, k: usize) -> Option<Vec<usize>> {
        let classes = self.pattern.classes.as_ref()?;
        Some(classes.get(k)?.iter().map(|&p| self.image[p]).collect())
    }

    pub fn class_count(&self) -> Option<usize> {
        self.pattern.classes.as_ref().map(Vec::len)
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding(h={}, image={:?})", self.pattern.order(), self.image)
    }
}

impl Serialize for Embedding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Embedding", 2)?;
        st.serialize_field("pattern_order", &self.pattern.order())?;
        st.serialize_field("image", &self.image)?;
        st.end()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tiling {
    pub embeddings: Vec<Embedding>,
}

impl Tiling {
    pub fn new(embeddings: Vec<Embedding>) -> Self {
        Tiling { embeddings }
    }

    pub fn len(&self) -> usize {
        self.embeddings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.embeddings.is_empty()
    }

    /// `Σ |pattern_i|`; equals the covered count whenever the tiling is valid.
    pub fn covered_count(&self) -> usize {
        self.embeddings.iter().map(|e| e.image.len()).sum()
    }

    pub fn covered(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(n, self.embeddings.iter().flat_map(|e| e.image.iter().copied()))
    }

    /// Vertices lying in width classes (every class but the neck) of the
    /// copies. `None` unless every pattern carries class structure.
    pub fn omega_class_vertices(&self, n: usize) -> Option<VertexSet> {
        let mut out = VertexSet::new(n);
        for e in &self.embeddings {
            let classes = e.pattern.classes.as_ref()?;
            for class in classes.iter().skip(1) {
                for &p in class {
                    out.insert(e.image[p]);
                }
            }
        }
        Some(out)
    }

    /// `owner[v]` is the index of the copy covering `v`.
    pub fn owners(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, e) in self.embeddings.iter().enumerate() {
            for &v in &e.image {
                if v < n {
                    owner[v] = Some(i);
                }
            }
        }
        owner
    }
}

/// First reason a tiling fails to be a set of vertex-disjoint pattern copies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TilingViolation {
    WrongImageLength { copy: usize, expected: usize, found: usize },
    VertexOutOfRange { copy: usize, vertex: usize },
    NotInjective { copy: usize, vertex: usize },
    MissingEdge { copy: usize, pattern_edge: (usize, usize), host_pair: (usize, usize) },
    Overlap { first: usize, second: usize, vertex: usize },
}

impl fmt::Display for TilingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingViolation::WrongImageLength { copy, expected, found } => {
                write!(f, "copy {copy}: image has {found} vertices, pattern has {expected}")
            }
            TilingViolation::VertexOutOfRange { copy, vertex } => {
                write!(f, "copy {copy}: vertex {vertex} is not in the host")
            }
            TilingViolation::NotInjective { copy, vertex } => {
                write!(f, "copy {copy}: vertex {vertex} used twice")
            }
            TilingViolation::MissingEdge { copy, pattern_edge, host_pair } => {
                write!(f, "copy {copy}: pattern edge {pattern_edge:?} maps to non-edge {host_pair:?}")
            }
            TilingViolation::Overlap { first, second, vertex } => {
                write!(f, "copies {first} and {second} share vertex {vertex}")
            }
        }
    }
}

/// Accepts iff every embedding is a copy of its pattern in `host` and the
/// copies are pairwise vertex-disjoint; otherwise reports the first violation.
pub fn is_valid_tiling(host: &Graph, tiling: &Tiling) -> Result<(), TilingViolation> {
    let n = host.order();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (copy, e) in tiling.embeddings.iter().enumerate() {
        let h = e.pattern.order();
        if e.image.len() != h {
            return Err(TilingViolation::WrongImageLength { copy, expected: h, found: e.image.len() });
        }
        for &v in &e.image {
            if v >= n {
                return Err(TilingViolation::VertexOutOfRange { copy, vertex: v });
            }
        }
        let mut local = VertexSet::new(n);
        for &v in &e.image {
            if !local.insert(v) {
                return Err(TilingViolation::NotInjective { copy, vertex: v });
            }
        }
        for (p, q) in e.pattern.graph.edges() {
            let (u, v) = (e.image[p], e.image[q]);
            if !host.has_edge(u, v) {
                return Err(TilingViolation::MissingEdge { copy, pattern_edge: (p, q), host_pair: (u, v) });
            }
        }
        for &v in &e.image {
            if let Some(first) = owner[v] {
                return Err(TilingViolation::Overlap { first, second: copy, vertex: v });
            }
            owner[v] = Some(copy);
        }
    }
    Ok(())
}
