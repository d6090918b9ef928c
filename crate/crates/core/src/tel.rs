//! Temporal Edge List.
//!
//! Every surviving edge is stored once in an arena and linked into three
//! doubly-linked lists at the same time:
//!
//! * the Time List of its timestamp; Time Lists hang off a timeline (itself a
//!   doubly-linked list of buckets in ascending time order);
//! * the Source List of its first endpoint;
//! * the Destination List of its second endpoint.
//!
//! Truncation walks the timeline from either end and unlinks whole buckets,
//! peeling walks a vertex's Source and Destination Lists, and the tightest
//! time interval is read off the two ends of the timeline.
//!
//! Degrees count distinct neighbors. Each edge carries the id of its vertex
//! pair, and a per-pair multiplicity counter decides when removing one of
//! several parallel edges actually loses a neighbor.

use std::collections::{HashMap, VecDeque};

use crate::error::TelError;
use crate::graph::{TemporalEdge, TemporalGraph, TimeInterval, Timestamp, VertexId};
use crate::snapshot::CoreSnapshot;

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Link {
    prev: u32,
    next: u32,
}

const UNLINKED: Link = Link {
    prev: NIL,
    next: NIL,
};

#[derive(Clone, Copy, Debug)]
struct ListEnds {
    head: u32,
    tail: u32,
    len: u32,
}

const EMPTY_LIST: ListEnds = ListEnds {
    head: NIL,
    tail: NIL,
    len: 0,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dim {
    Time,
    Source,
    Dest,
}

#[derive(Clone, Debug)]
struct EdgeNode {
    edge: TemporalEdge,
    pair: u32,
    bucket: u32,
    time: Link,
    src: Link,
    dst: Link,
    alive: bool,
}

impl EdgeNode {
    #[inline]
    fn link(&mut self, dim: Dim) -> &mut Link {
        match dim {
            Dim::Time => &mut self.time,
            Dim::Source => &mut self.src,
            Dim::Dest => &mut self.dst,
        }
    }
}

/// One node of the timeline: the Time List of timestamp `t`.
#[derive(Clone, Debug)]
struct TimeBucket {
    t: Timestamp,
    list: ListEnds,
    prev: u32,
    next: u32,
}

fn list_push(nodes: &mut [EdgeNode], ends: &mut ListEnds, idx: u32, dim: Dim) {
    *nodes[idx as usize].link(dim) = Link {
        prev: ends.tail,
        next: NIL,
    };
    if ends.tail == NIL {
        ends.head = idx;
    } else {
        nodes[ends.tail as usize].link(dim).next = idx;
    }
    ends.tail = idx;
    ends.len += 1;
}

fn list_unlink(nodes: &mut [EdgeNode], ends: &mut ListEnds, idx: u32, dim: Dim) {
    let Link { prev, next } = *nodes[idx as usize].link(dim);
    if prev == NIL {
        ends.head = next;
    } else {
        nodes[prev as usize].link(dim).next = next;
    }
    if next == NIL {
        ends.tail = prev;
    } else {
        nodes[next as usize].link(dim).prev = prev;
    }
    *nodes[idx as usize].link(dim) = UNLINKED;
    ends.len -= 1;
}

/// Mutable working representation of a temporal graph or temporal k-core.
#[derive(Debug)]
pub struct Tel {
    vertex_count: usize,
    nodes: Vec<EdgeNode>,
    buckets: Vec<TimeBucket>,
    timeline: ListEnds,
    source_lists: Vec<ListEnds>,
    dest_lists: Vec<ListEnds>,
    /// Surviving parallel edges per vertex pair.
    pair_mult: Vec<u32>,
    /// Distinct surviving neighbors per vertex.
    degree: Vec<u32>,
    edge_count: usize,
    /// Interval the content was last truncated to.
    interval: Option<TimeInterval>,
    /// Largest k for which the content is known to be a k-core.
    core_k: Option<usize>,
    queued: Vec<bool>,
}

impl Tel {
    fn shell(vertex_count: usize, pair_mult: Vec<u32>, degree: Vec<u32>) -> Self {
        Tel {
            vertex_count,
            nodes: Vec::new(),
            buckets: Vec::new(),
            timeline: EMPTY_LIST,
            source_lists: vec![EMPTY_LIST; vertex_count],
            dest_lists: vec![EMPTY_LIST; vertex_count],
            pair_mult,
            degree,
            edge_count: 0,
            interval: None,
            core_k: None,
            queued: vec![false; vertex_count],
        }
    }

    /// Appends an edge; edges must arrive in non-decreasing time order.
    fn push_edge(&mut self, edge: TemporalEdge, pair: u32) {
        let idx = self.nodes.len() as u32;
        let tail = self.timeline.tail;
        let bucket = if tail != NIL && self.buckets[tail as usize].t == edge.t {
            tail
        } else {
            debug_assert!(tail == NIL || self.buckets[tail as usize].t < edge.t);
            let b = self.buckets.len() as u32;
            self.buckets.push(TimeBucket {
                t: edge.t,
                list: EMPTY_LIST,
                prev: tail,
                next: NIL,
            });
            if tail == NIL {
                self.timeline.head = b;
            } else {
                self.buckets[tail as usize].next = b;
            }
            self.timeline.tail = b;
            self.timeline.len += 1;
            b
        };
        self.nodes.push(EdgeNode {
            edge,
            pair,
            bucket,
            time: UNLINKED,
            src: UNLINKED,
            dst: UNLINKED,
            alive: true,
        });
        list_push(
            &mut self.nodes,
            &mut self.buckets[bucket as usize].list,
            idx,
            Dim::Time,
        );
        list_push(
            &mut self.nodes,
            &mut self.source_lists[edge.src.index()],
            idx,
            Dim::Source,
        );
        list_push(
            &mut self.nodes,
            &mut self.dest_lists[edge.dst.index()],
            idx,
            Dim::Dest,
        );
        self.edge_count += 1;
    }

    /// Loads every edge of `g`.
    pub fn build(g: &TemporalGraph) -> Tel {
        let n = g.vertex_count();
        let mut pair_ids: HashMap<(VertexId, VertexId), u32> = HashMap::new();
        let mut pair_mult: Vec<u32> = Vec::new();
        let mut degree = vec![0u32; n];
        let mut pairs = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            let next = pair_ids.len() as u32;
            let p = *pair_ids.entry((e.src, e.dst)).or_insert(next);
            if p == next {
                pair_mult.push(0);
                degree[e.src.index()] += 1;
                degree[e.dst.index()] += 1;
            }
            pair_mult[p as usize] += 1;
            pairs.push(p);
        }
        let mut tel = Tel::shell(n, pair_mult, degree);
        tel.nodes.reserve(g.edge_count());
        for (e, p) in g.edges().iter().zip(pairs) {
            tel.push_edge(*e, p);
        }
        tel.interval = g.time_range();
        tel
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count == 0
    }

    /// Distinct surviving neighbors of `v`.
    pub fn degree(&self, v: VertexId) -> u32 {
        self.degree[v.index()]
    }

    /// Interval the TEL was last truncated to.
    pub fn interval(&self) -> Option<TimeInterval> {
        self.interval
    }

    /// `[first, last]` timestamp on the timeline; `None` when empty.
    pub fn tti(&self) -> Option<TimeInterval> {
        if self.timeline.head == NIL {
            return None;
        }
        Some(TimeInterval::raw(
            self.buckets[self.timeline.head as usize].t,
            self.buckets[self.timeline.tail as usize].t,
        ))
    }

    /// Timestamps with a nonempty Time List, ascending.
    pub fn timeline(&self) -> Vec<Timestamp> {
        let mut out = Vec::with_capacity(self.timeline.len as usize);
        let mut b = self.timeline.head;
        while b != NIL {
            out.push(self.buckets[b as usize].t);
            b = self.buckets[b as usize].next;
        }
        out
    }

    /// Surviving edges in timeline order.
    pub fn edges(&self) -> impl Iterator<Item = TemporalEdge> + '_ {
        self.edge_indices().map(|i| self.nodes[i as usize].edge)
    }

    fn edge_indices(&self) -> impl Iterator<Item = u32> + '_ {
        let mut bucket = self.timeline.head;
        let mut cur = NIL;
        std::iter::from_fn(move || loop {
            if cur != NIL {
                let out = cur;
                cur = self.nodes[cur as usize].time.next;
                return Some(out);
            }
            if bucket == NIL {
                return None;
            }
            cur = self.buckets[bucket as usize].list.head;
            bucket = self.buckets[bucket as usize].next;
        })
    }

    fn remove_edge(&mut self, idx: u32, dropped: &mut Vec<VertexId>) {
        let node = &self.nodes[idx as usize];
        debug_assert!(node.alive);
        let (edge, pair, b) = (node.edge, node.pair, node.bucket);

        let bucket = &mut self.buckets[b as usize];
        list_unlink(&mut self.nodes, &mut bucket.list, idx, Dim::Time);
        if bucket.list.len == 0 {
            let (prev, next) = (bucket.prev, bucket.next);
            if prev == NIL {
                self.timeline.head = next;
            } else {
                self.buckets[prev as usize].next = next;
            }
            if next == NIL {
                self.timeline.tail = prev;
            } else {
                self.buckets[next as usize].prev = prev;
            }
            self.timeline.len -= 1;
        }
        list_unlink(
            &mut self.nodes,
            &mut self.source_lists[edge.src.index()],
            idx,
            Dim::Source,
        );
        list_unlink(
            &mut self.nodes,
            &mut self.dest_lists[edge.dst.index()],
            idx,
            Dim::Dest,
        );
        self.nodes[idx as usize].alive = false;
        self.edge_count -= 1;

        let mult = &mut self.pair_mult[pair as usize];
        *mult -= 1;
        if *mult == 0 {
            self.degree[edge.src.index()] -= 1;
            self.degree[edge.dst.index()] -= 1;
            dropped.push(edge.src);
            dropped.push(edge.dst);
        }
    }

    /// Removes edges outside `w`; returns the vertices that lost a neighbor.
    fn truncate_collect(&mut self, w: TimeInterval) -> Vec<VertexId> {
        let mut dropped = Vec::new();
        loop {
            let head = self.timeline.head;
            if head == NIL || self.buckets[head as usize].t >= w.ts() {
                break;
            }
            let e = self.buckets[head as usize].list.head;
            self.remove_edge(e, &mut dropped);
        }
        loop {
            let tail = self.timeline.tail;
            if tail == NIL || self.buckets[tail as usize].t <= w.te() {
                break;
            }
            let e = self.buckets[tail as usize].list.head;
            self.remove_edge(e, &mut dropped);
        }
        dropped
    }

    /// Drops every edge with a timestamp outside `w`. The result is a
    /// projected graph, not a core, until [`Tel::decompose`] runs.
    pub fn truncate(&mut self, w: TimeInterval) {
        if self.truncate_collect(w).is_empty() && self.core_k.is_some() {
            // Nothing lost a neighbor: still a core.
        } else {
            self.core_k = None;
        }
        self.interval = match self.interval {
            Some(cur) => cur.intersect(&w).or(Some(w)),
            None => Some(w),
        };
    }

    /// Peels vertices with fewer than `k` distinct neighbors, starting from
    /// `candidates`, until every surviving vertex has at least `k`.
    fn peel(&mut self, k: usize, candidates: impl IntoIterator<Item = VertexId>) {
        let k = k as u32;
        let mut queue = VecDeque::new();
        for v in candidates {
            let d = self.degree[v.index()];
            if d > 0 && d < k && !self.queued[v.index()] {
                self.queued[v.index()] = true;
                queue.push_back(v);
            }
        }
        let mut dropped = Vec::new();
        while let Some(v) = queue.pop_front() {
            self.queued[v.index()] = false;
            while self.source_lists[v.index()].head != NIL {
                let e = self.source_lists[v.index()].head;
                self.remove_edge(e, &mut dropped);
            }
            while self.dest_lists[v.index()].head != NIL {
                let e = self.dest_lists[v.index()].head;
                self.remove_edge(e, &mut dropped);
            }
            for u in dropped.drain(..) {
                let d = self.degree[u.index()];
                if u != v && d > 0 && d < k && !self.queued[u.index()] {
                    self.queued[u.index()] = true;
                    queue.push_back(u);
                }
            }
        }
    }

    /// Reduces the content to its k-core.
    pub fn decompose(&mut self, k: usize) -> Result<(), TelError> {
        if k == 0 {
            return Err(TelError::InvalidK);
        }
        if self.core_k.map_or(true, |c| c < k) {
            self.peel(k, (0..self.vertex_count as u32).map(VertexId));
            self.core_k = Some(k);
        }
        Ok(())
    }

    /// Temporal core decomposition: truncation to `w` followed by peeling to
    /// the k-core.
    ///
    /// `w` must lie inside the interval the TEL currently holds and the TEL
    /// must not already be a tighter core; under those conditions the result
    /// is the temporal k-core of `w` of the original graph.
    pub fn tcd(&mut self, k: usize, w: TimeInterval) -> Result<(), TelError> {
        if k == 0 {
            return Err(TelError::InvalidK);
        }
        if let Some(cur) = self.interval {
            if !cur.encloses(&w) {
                return Err(TelError::NotEnclosed {
                    requested: w,
                    current: cur,
                });
            }
        }
        if let Some(c) = self.core_k {
            if c > k {
                return Err(TelError::CoreTooTight {
                    requested: k,
                    current: c,
                });
            }
        }
        let dropped = self.truncate_collect(w);
        if self.core_k == Some(k) {
            self.peel(k, dropped);
        } else {
            self.peel(k, (0..self.vertex_count as u32).map(VertexId));
        }
        self.interval = Some(w);
        self.core_k = Some(k);
        Ok(())
    }

    /// Immutable copy of the surviving content.
    pub fn snapshot(&self) -> CoreSnapshot {
        // Time Lists are filled in sorted order and unlinking keeps it, so the
        // timeline walk yields sorted edges.
        let mut edges: Vec<TemporalEdge> = Vec::with_capacity(self.edge_count);
        let mut min_mult = u32::MAX;
        let mut b = self.timeline.head;
        while b != NIL {
            let bucket = &self.buckets[b as usize];
            let mut cur = bucket.list.head;
            while cur != NIL {
                let node = &self.nodes[cur as usize];
                edges.push(node.edge);
                min_mult = min_mult.min(self.pair_mult[node.pair as usize]);
                cur = node.time.next;
            }
            b = bucket.next;
        }
        let (vertices, core_degree) = self
            .degree
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(v, &d)| (VertexId(v as u32), d))
            .unzip();
        let min_mult = if edges.is_empty() { 0 } else { min_mult };
        CoreSnapshot::from_sorted_parts(
            self.core_k.unwrap_or(0),
            edges,
            vertices,
            core_degree,
            min_mult,
        )
    }

    /// One `t src dst` line per surviving edge, sorted by `(t, src, dst)`.
    pub fn dump(&self) -> String {
        let mut edges: Vec<_> = self.edges().collect();
        edges.sort_unstable();
        let mut s = String::new();
        for e in edges {
            s.push_str(&format!("{} {} {}\n", e.t, e.src, e.dst));
        }
        s
    }

    /// Recomputes all bookkeeping from scratch and compares it with the
    /// incremental state.
    pub fn validate(&self) -> Result<(), String> {
        let mut prev_t = None;
        let mut time_total = 0usize;
        let mut b = self.timeline.head;
        let mut bucket_count = 0;
        while b != NIL {
            let bucket = &self.buckets[b as usize];
            if bucket.list.len == 0 {
                return Err(format!("empty Time List for t={} on the timeline", bucket.t));
            }
            if prev_t.is_some_and(|p| p >= bucket.t) {
                return Err("timeline is not ascending".into());
            }
            prev_t = Some(bucket.t);
            let mut e = bucket.list.head;
            let mut walked = 0;
            while e != NIL {
                let node = &self.nodes[e as usize];
                if !node.alive || node.edge.t != bucket.t || node.bucket != b {
                    return Err(format!("bad node in Time List of t={}", bucket.t));
                }
                walked += 1;
                e = node.time.next;
            }
            if walked != bucket.list.len as usize {
                return Err("Time List length mismatch".into());
            }
            time_total += walked;
            bucket_count += 1;
            b = bucket.next;
        }
        if bucket_count != self.timeline.len as usize {
            return Err("timeline length mismatch".into());
        }
        if time_total != self.edge_count {
            return Err(format!(
                "Time Lists hold {time_total} edges, counter says {}",
                self.edge_count
            ));
        }

        let mut src_total = 0usize;
        let mut dst_total = 0usize;
        for v in 0..self.vertex_count {
            for (ends, dim) in [
                (&self.source_lists[v], Dim::Source),
                (&self.dest_lists[v], Dim::Dest),
            ] {
                let mut e = ends.head;
                let mut walked = 0;
                while e != NIL {
                    let node = &self.nodes[e as usize];
                    let (owner, next) = match dim {
                        Dim::Source => (node.edge.src, node.src.next),
                        _ => (node.edge.dst, node.dst.next),
                    };
                    if !node.alive || owner.index() != v {
                        return Err(format!("bad node in list of vertex {v}"));
                    }
                    walked += 1;
                    e = next;
                }
                if walked != ends.len as usize {
                    return Err(format!("list length mismatch at vertex {v}"));
                }
                match dim {
                    Dim::Source => src_total += walked,
                    _ => dst_total += walked,
                }
            }
        }
        if src_total != self.edge_count || dst_total != self.edge_count {
            return Err("Source/Destination List totals disagree with edge count".into());
        }

        let mut neighbors: Vec<Vec<VertexId>> = vec![Vec::new(); self.vertex_count];
        let mut pair_mult: HashMap<u32, u32> = HashMap::new();
        for i in self.edge_indices() {
            let node = &self.nodes[i as usize];
            neighbors[node.edge.src.index()].push(node.edge.dst);
            neighbors[node.edge.dst.index()].push(node.edge.src);
            *pair_mult.entry(node.pair).or_insert(0) += 1;
        }
        for (v, mut ns) in neighbors.into_iter().enumerate() {
            ns.sort_unstable();
            ns.dedup();
            if ns.len() as u32 != self.degree[v] {
                return Err(format!(
                    "degree of vertex {v} is {} but it has {} distinct neighbors",
                    self.degree[v],
                    ns.len()
                ));
            }
        }
        for (p, &m) in self.pair_mult.iter().enumerate() {
            if pair_mult.get(&(p as u32)).copied().unwrap_or(0) != m {
                return Err(format!("pair multiplicity mismatch for pair {p}"));
            }
        }
        Ok(())
    }
}

impl Clone for Tel {
    /// Deep copy holding only the surviving edges.
    fn clone(&self) -> Self {
        let mut out = Tel::shell(self.vertex_count, self.pair_mult.clone(), self.degree.clone());
        out.nodes.reserve(self.edge_count);
        for i in self.edge_indices() {
            let node = &self.nodes[i as usize];
            out.push_edge(node.edge, node.pair);
        }
        out.interval = self.interval;
        out.core_k = self.core_k;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(ts: i64, te: i64) -> TimeInterval {
        TimeInterval::new(ts, te).unwrap()
    }

    fn g0() -> TemporalGraph {
        TemporalGraph::from_labeled([
            ("a", "b", 1),
            ("b", "c", 2),
            ("a", "c", 3),
            ("c", "d", 4),
            ("a", "b", 5),
        ])
        .unwrap()
    }

    fn labeled(g: &TemporalGraph, tel: &Tel) -> Vec<(String, String, i64)> {
        let mut out: Vec<_> = tel
            .edges()
            .map(|e| (g.label(e.src).to_owned(), g.label(e.dst).to_owned(), e.t))
            .collect();
        out.sort_by_key(|x| x.2);
        out
    }

    fn triple(a: &str, b: &str, t: i64) -> (String, String, i64) {
        (a.to_owned(), b.to_owned(), t)
    }

    #[test]
    fn build_links_every_edge() {
        let g = g0();
        let tel = Tel::build(&g);
        assert_eq!(tel.edge_count(), 5);
        assert_eq!(tel.timeline(), vec![1, 2, 3, 4, 5]);
        assert_eq!(tel.degree(g.vertex_id("a").unwrap()), 2);
        assert_eq!(tel.tti(), Some(iv(1, 5)));
        tel.validate().unwrap();
    }

    #[test]
    fn build_empty() {
        let g = TemporalGraph::from_triples(3, []).unwrap();
        let tel = Tel::build(&g);
        assert_eq!(tel.edge_count(), 0);
        assert!(tel.timeline().is_empty());
        assert_eq!(tel.tti(), None);
        assert_eq!(tel.clone().edge_count(), 0);
        assert!(tel.snapshot().is_empty());
    }

    #[test]
    fn clone_is_independent() {
        let g = g0();
        let mut tel = Tel::build(&g);
        let copy = tel.clone();
        assert_eq!(copy.edge_count(), 5);
        tel.truncate(iv(2, 4));
        assert_eq!(copy.edge_count(), 5);
        assert_eq!(copy.timeline(), vec![1, 2, 3, 4, 5]);
        copy.validate().unwrap();
        tel.validate().unwrap();
    }

    #[test]
    fn truncate_filters_by_time() {
        let g = g0();
        let mut tel = Tel::build(&g);
        tel.truncate(iv(2, 4));
        assert_eq!(
            labeled(&g, &tel),
            vec![triple("b", "c", 2), triple("a", "c", 3), triple("c", "d", 4)]
        );
        tel.validate().unwrap();

        let mut tel = Tel::build(&g);
        tel.truncate(iv(1, 5));
        assert_eq!(tel.edge_count(), 5);

        let mut tel = Tel::build(&g);
        tel.truncate(iv(6, 9));
        assert_eq!(tel.edge_count(), 0);
        tel.validate().unwrap();
    }

    #[test]
    fn parallel_edge_removal_keeps_degree() {
        let g = g0();
        let mut tel = Tel::build(&g);
        let a = g.vertex_id("a").unwrap();
        tel.truncate(iv(1, 4));
        assert_eq!(tel.degree(a), 2);
        tel.truncate(iv(2, 4));
        assert_eq!(tel.degree(a), 1);
    }

    #[test]
    fn decompose_peels_pendant() {
        let g = g0();
        let mut tel = Tel::build(&g);
        tel.decompose(2).unwrap();
        assert_eq!(
            labeled(&g, &tel),
            vec![
                triple("a", "b", 1),
                triple("b", "c", 2),
                triple("a", "c", 3),
                triple("a", "b", 5)
            ]
        );
        assert_eq!(tel.degree(g.vertex_id("d").unwrap()), 0);
        tel.validate().unwrap();
    }

    #[test]
    fn path_has_no_two_core_triangle_is_one() {
        let path = TemporalGraph::from_labeled([("a", "b", 1), ("b", "c", 2)]).unwrap();
        let mut tel = Tel::build(&path);
        tel.decompose(2).unwrap();
        assert!(tel.is_empty());

        let tri = TemporalGraph::from_labeled([("a", "b", 1), ("b", "c", 2), ("a", "c", 3)]).unwrap();
        let mut tel = Tel::build(&tri);
        tel.decompose(2).unwrap();
        assert_eq!(tel.edge_count(), 3);
        assert_eq!(Tel::build(&path).decompose(0), Err(TelError::InvalidK));
    }

    #[test]
    fn tcd_induces_triangle() {
        let g = g0();
        let mut tel = Tel::build(&g);
        tel.tcd(2, iv(1, 3)).unwrap();
        assert_eq!(
            labeled(&g, &tel),
            vec![triple("a", "b", 1), triple("b", "c", 2), triple("a", "c", 3)]
        );
        let before = tel.snapshot();
        tel.tcd(2, iv(1, 3)).unwrap();
        assert_eq!(tel.snapshot(), before);
    }

    #[test]
    fn tcd_contract_violations() {
        let g = g0();
        let mut tel = Tel::build(&g);
        tel.tcd(2, iv(2, 4)).unwrap();
        assert!(matches!(tel.tcd(2, iv(1, 4)), Err(TelError::NotEnclosed { .. })));
        let mut tel = Tel::build(&g);
        tel.tcd(3, iv(1, 5)).unwrap();
        assert!(matches!(tel.tcd(2, iv(1, 5)), Err(TelError::CoreTooTight { .. })));
        assert_eq!(tel.tcd(0, iv(1, 5)), Err(TelError::InvalidK));
    }

    /// Reconstruction of the two-step induction from the core of [2,6] down
    /// to [5,6]: truncation lowers the degree of v5, v7 and v8, then v7 and
    /// v8 are peeled.
    #[test]
    fn decremental_tcd_peels_after_truncation() {
        let g = TemporalGraph::from_labeled([
            ("v1", "v2", 1),
            ("v7", "v8", 3),
            ("v5", "v7", 4),
            ("v5", "v6", 5),
            ("v5", "v9", 5),
            ("v6", "v9", 6),
            ("v5", "v8", 6),
        ])
        .unwrap();
        let v = |s: &str| g.vertex_id(s).unwrap();
        let mut tel = Tel::build(&g);
        tel.tcd(2, iv(2, 6)).unwrap();
        assert!(tel.degree(v("v7")) >= 2 && tel.degree(v("v8")) >= 2);
        let before: Vec<u32> = ["v5", "v7", "v8"].iter().map(|s| tel.degree(v(s))).collect();

        let mut truncated = tel.clone();
        truncated.truncate(iv(5, 6));
        let after: Vec<u32> = ["v5", "v7", "v8"].iter().map(|s| truncated.degree(v(s))).collect();
        assert!(before.iter().zip(&after).all(|(b, a)| a < b));

        tel.tcd(2, iv(5, 6)).unwrap();
        assert_eq!(tel.degree(v("v7")), 0);
        assert_eq!(tel.degree(v("v8")), 0);
        let mut direct = Tel::build(&g);
        direct.tcd(2, iv(5, 6)).unwrap();
        assert_eq!(direct.snapshot(), tel.snapshot());
        assert_eq!(tel.snapshot().vertex_count(), 3);
    }

    #[test]
    fn tti_reads_timeline_ends() {
        let g = TemporalGraph::from_triples(3, [(0, 1, 2), (1, 2, 3), (0, 2, 6)]).unwrap();
        let tel = Tel::build(&g);
        assert_eq!(tel.tti(), Some(iv(2, 6)));
    }

    #[test]
    fn snapshot_of_triangle() {
        let g = g0();
        let mut tel = Tel::build(&g);
        tel.tcd(2, iv(1, 3)).unwrap();
        let s = tel.snapshot();
        assert_eq!(s.vertex_count(), 3);
        assert_eq!(s.edge_count(), 3);
        assert_eq!(s.tti(), Some(iv(1, 3)));
        assert_eq!(s.k(), 2);
        assert_eq!(tel.snapshot(), s);
    }

    #[test]
    fn dump_is_sorted() {
        let g = TemporalGraph::from_triples(3, [(1, 2, 2), (0, 2, 2), (0, 1, 1)]).unwrap();
        let tel = Tel::build(&g);
        assert_eq!(tel.dump(), "1 0 1\n2 0 2\n2 1 2\n");
    }
}
