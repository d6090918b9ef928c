use std::collections::BTreeMap;

use crate::graph::{TemporalEdge, TimeInterval, VertexId};

/// Immutable copy of one temporal k-core: its vertices, its edge multiset and
/// its tightest time interval.
///
/// Two snapshots describe the same core iff their edge multisets are equal;
/// vertices and TTI are derived from the edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreSnapshot {
    k: usize,
    vertices: Vec<VertexId>,
    /// Distinct in-core neighbors, parallel to `vertices`.
    core_degree: Vec<u32>,
    /// Sorted by `(t, src, dst)`.
    edges: Vec<TemporalEdge>,
    tti: Option<TimeInterval>,
    /// 0 when there are no edges.
    min_pair_mult: u32,
}

fn min_run_length(edges: &[TemporalEdge]) -> u32 {
    let mut keys: Vec<u64> = edges
        .iter()
        .map(|e| (u64::from(e.src.0) << 32) | u64::from(e.dst.0))
        .collect();
    keys.sort_unstable();
    keys.chunk_by(|a, b| a == b)
        .map(|run| run.len() as u32)
        .min()
        .unwrap_or(0)
}

impl CoreSnapshot {
    pub fn empty(k: usize) -> Self {
        CoreSnapshot {
            k,
            vertices: Vec::new(),
            core_degree: Vec::new(),
            edges: Vec::new(),
            tti: None,
            min_pair_mult: 0,
        }
    }

    /// Trusted constructor: `edges` sorted, `vertices` ascending with their
    /// distinct in-core neighbor counts alongside.
    pub(crate) fn from_sorted_parts(
        k: usize,
        edges: Vec<TemporalEdge>,
        vertices: Vec<VertexId>,
        core_degree: Vec<u32>,
        min_pair_mult: u32,
    ) -> Self {
        let tti = match (edges.first(), edges.last()) {
            (Some(a), Some(b)) => Some(TimeInterval::raw(a.t, b.t)),
            _ => None,
        };
        CoreSnapshot {
            k,
            vertices,
            core_degree,
            edges,
            tti,
            min_pair_mult,
        }
    }

    /// Builds a snapshot from an edge multiset in any order.
    pub fn from_edges(k: usize, mut edges: Vec<TemporalEdge>) -> Self {
        edges.sort_unstable();
        let tti = match (edges.first(), edges.last()) {
            (Some(a), Some(b)) => Some(TimeInterval::raw(a.t, b.t)),
            _ => None,
        };
        let mut pairs: Vec<(VertexId, VertexId)> = edges
            .iter()
            .flat_map(|e| [(e.src, e.dst), (e.dst, e.src)])
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut vertices = Vec::new();
        let mut core_degree: Vec<u32> = Vec::new();
        for (v, _) in pairs {
            if vertices.last() == Some(&v) {
                *core_degree.last_mut().unwrap() += 1;
            } else {
                vertices.push(v);
                core_degree.push(1);
            }
        }
        CoreSnapshot {
            k,
            vertices,
            core_degree,
            min_pair_mult: min_run_length(&edges),
            edges,
            tti,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sorted ascending.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Sorted by `(t, src, dst)`.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `[min, max]` edge timestamp; `None` when empty.
    pub fn tti(&self) -> Option<TimeInterval> {
        self.tti
    }

    /// `(vertex, distinct neighbors inside the core)`.
    pub fn core_degrees(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.vertices
            .iter()
            .copied()
            .zip(self.core_degree.iter().copied())
    }

    /// Parallel-edge count for every adjacent vertex pair.
    pub fn pair_multiplicities(&self) -> BTreeMap<(VertexId, VertexId), usize> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            *out.entry((e.src, e.dst)).or_insert(0) += 1;
        }
        out
    }

    /// Smallest parallel-edge count over adjacent vertex pairs; `None` when
    /// there are no edges.
    pub fn min_pair_multiplicity(&self) -> Option<usize> {
        (self.min_pair_mult > 0).then_some(self.min_pair_mult as usize)
    }

    /// Debug dump: one `t src dst` line per edge.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            s.push_str(&format!("{} {} {}\n", e.t, e.src, e.dst));
        }
        s
    }
}
