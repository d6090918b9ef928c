//! Temporal multigraphs: the immutable query input.
//!
//! A [`TemporalGraph`] is an undirected multigraph whose edges carry integer
//! timestamps. Vertices get dense ids at ingestion and keep their original
//! label in a side table. Parallel edges (even exact duplicates) are kept;
//! self-loops are rejected because they never contribute a distinct neighbor.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Arc;

use flate2::read::GzDecoder;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GraphError;

/// Abstract time unit. Engines assume normalized values (see [`Normalization`]).
pub type Timestamp = i64;

/// Dense vertex id in `0..vertex_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An undirected timestamped edge. Endpoints are stored with the smaller id
/// first; the order carries no meaning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TemporalEdge {
    pub src: VertexId,
    pub dst: VertexId,
    pub t: Timestamp,
}

impl TemporalEdge {
    pub fn new(u: VertexId, v: VertexId, t: Timestamp) -> Self {
        debug_assert_ne!(u, v, "self-loop");
        let (src, dst) = if u <= v { (u, v) } else { (v, u) };
        TemporalEdge { src, dst, t }
    }

    /// The endpoint opposite to `v`.
    #[inline]
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.src == v {
            self.dst
        } else {
            self.src
        }
    }
}

impl Ord for TemporalEdge {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.t, self.src, self.dst).cmp(&(other.t, other.src, other.dst))
    }
}

impl PartialOrd for TemporalEdge {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A closed interval `[ts, te]` of timestamps with `ts <= te`.
///
/// Ordered by `(ts, te)`, which is also the order results are reported in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimeInterval {
    ts: Timestamp,
    te: Timestamp,
}

impl TimeInterval {
    pub fn new(ts: Timestamp, te: Timestamp) -> Result<Self, GraphError> {
        if ts > te {
            return Err(GraphError::InvalidInterval { ts, te });
        }
        Ok(TimeInterval { ts, te })
    }

    /// Internal constructor for bounds already known to be ordered.
    #[inline]
    pub(crate) fn raw(ts: Timestamp, te: Timestamp) -> Self {
        debug_assert!(ts <= te, "[{ts},{te}] is not an interval");
        TimeInterval { ts, te }
    }

    pub fn point(t: Timestamp) -> Self {
        TimeInterval { ts: t, te: t }
    }

    #[inline]
    pub fn ts(&self) -> Timestamp {
        self.ts
    }

    #[inline]
    pub fn te(&self) -> Timestamp {
        self.te
    }

    #[inline]
    pub fn contains(&self, t: Timestamp) -> bool {
        self.ts <= t && t <= self.te
    }

    /// `self ⊇ other`.
    #[inline]
    pub fn encloses(&self, other: &TimeInterval) -> bool {
        self.ts <= other.ts && other.te <= self.te
    }

    /// `self ⊋ other`.
    #[inline]
    pub fn strictly_encloses(&self, other: &TimeInterval) -> bool {
        self.encloses(other) && self != other
    }

    /// `te - ts`.
    #[inline]
    pub fn span(&self) -> i64 {
        self.te - self.ts
    }

    /// Number of timestamps covered, `te - ts + 1`.
    #[inline]
    pub fn duration(&self) -> i64 {
        self.te - self.ts + 1
    }

    pub fn intersect(&self, other: &TimeInterval) -> Option<TimeInterval> {
        let ts = self.ts.max(other.ts);
        let te = self.te.min(other.te);
        (ts <= te).then_some(TimeInterval { ts, te })
    }

    /// Number of subintervals, i.e. cells of the schedule table.
    pub fn subinterval_count(&self) -> u64 {
        let n = self.duration() as u64;
        n * (n + 1) / 2
    }

    /// Every subinterval, row by row (`ts` ascending, `te` descending).
    pub fn subintervals(&self) -> impl Iterator<Item = TimeInterval> + '_ {
        (self.ts..=self.te)
            .flat_map(move |ts| (ts..=self.te).rev().map(move |te| TimeInterval { ts, te }))
    }
}

impl fmt::Debug for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.ts, self.te)
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.ts, self.te)
    }
}

impl Serialize for TimeInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.ts, self.te].serialize(s)
    }
}

impl<'de> Deserialize<'de> for TimeInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [ts, te] = <[Timestamp; 2]>::deserialize(d)?;
        TimeInterval::new(ts, te).map_err(serde::de::Error::custom)
    }
}

/// Bijection between dense ids and the labels found in the input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexLabels {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl VertexLabels {
    pub fn new() -> Self {
        Self::default()
    }

    /// Labels `"0"`, `"1"`, … for anonymous vertices.
    pub fn numbered(n: usize) -> Self {
        let mut labels = Self::new();
        for i in 0..n {
            labels.intern(&i.to_string());
        }
        labels
    }

    /// Returns the id of `label`, assigning the next free id on first sight.
    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = VertexId(self.names.len() as u32);
        self.names.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: VertexId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Immutable temporal multigraph.
#[derive(Clone, Debug)]
pub struct TemporalGraph {
    labels: Arc<VertexLabels>,
    /// Sorted by `(t, src, dst)`.
    edges: Vec<TemporalEdge>,
    /// Per vertex: `(t, neighbor)` sorted by time.
    adjacency: Vec<Vec<(Timestamp, VertexId)>>,
}

impl PartialEq for TemporalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl TemporalGraph {
    pub fn new(labels: VertexLabels, edges: Vec<TemporalEdge>) -> Result<Self, GraphError> {
        Self::with_shared_labels(Arc::new(labels), edges)
    }

    fn with_shared_labels(
        labels: Arc<VertexLabels>,
        mut edges: Vec<TemporalEdge>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        for e in &mut edges {
            if e.src == e.dst {
                return Err(GraphError::SelfLoop(e.src.0));
            }
            if e.src.index() >= n || e.dst.index() >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: e.src.0.max(e.dst.0),
                    count: n,
                });
            }
            *e = TemporalEdge::new(e.src, e.dst, e.t);
        }
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.src.index()].push((e.t, e.dst));
            adjacency[e.dst.index()].push((e.t, e.src));
        }
        Ok(TemporalGraph {
            labels,
            edges,
            adjacency,
        })
    }

    /// Graph over vertices `0..n` labelled by their number.
    pub fn from_triples(
        n: usize,
        triples: impl IntoIterator<Item = (u32, u32, Timestamp)>,
    ) -> Result<Self, GraphError> {
        let edges = triples
            .into_iter()
            .map(|(u, v, t)| TemporalEdge {
                src: VertexId(u),
                dst: VertexId(v),
                t,
            })
            .collect();
        Self::new(VertexLabels::numbered(n), edges)
    }

    /// Graph from labelled triples; ids follow first appearance.
    pub fn from_labeled<'a>(
        triples: impl IntoIterator<Item = (&'a str, &'a str, Timestamp)>,
    ) -> Result<Self, GraphError> {
        let mut labels = VertexLabels::new();
        let edges = triples
            .into_iter()
            .map(|(u, v, t)| TemporalEdge {
                src: labels.intern(u),
                dst: labels.intern(v),
                t,
            })
            .collect();
        Self::new(labels, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges sorted by `(t, src, dst)`.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn labels(&self) -> &VertexLabels {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        self.labels.label(v)
    }

    pub fn vertex_id(&self, label: &str) -> Option<VertexId> {
        self.labels.id(label)
    }

    pub fn min_t(&self) -> Option<Timestamp> {
        self.edges.first().map(|e| e.t)
    }

    pub fn max_t(&self) -> Option<Timestamp> {
        self.edges.last().map(|e| e.t)
    }

    /// `[min_t, max_t]`, or `None` for an edgeless graph.
    pub fn time_range(&self) -> Option<TimeInterval> {
        Some(TimeInterval::raw(self.min_t()?, self.max_t()?))
    }

    /// Distinct timestamps in ascending order.
    pub fn timestamps(&self) -> Vec<Timestamp> {
        let mut ts: Vec<_> = self.edges.iter().map(|e| e.t).collect();
        ts.dedup();
        ts
    }

    /// `(t, neighbor)` pairs incident to `v`, sorted by time.
    pub fn incident(&self, v: VertexId) -> &[(Timestamp, VertexId)] {
        &self.adjacency[v.index()]
    }

    /// Distinct neighbors of `v` in the projected graph over `w`.
    pub fn projected_neighbors(&self, v: VertexId, w: TimeInterval) -> Vec<VertexId> {
        let adj = self.incident(v);
        let lo = adj.partition_point(|&(t, _)| t < w.ts);
        let hi = adj.partition_point(|&(t, _)| t <= w.te);
        let mut out: Vec<_> = adj[lo..hi].iter().map(|&(_, u)| u).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Projected degree (distinct neighbors over `w`) of each vertex in `vs`.
    pub fn projected_degrees(&self, vs: &[VertexId], w: TimeInterval) -> Vec<usize> {
        let mut mark = vec![u32::MAX; self.vertex_count()];
        vs.iter()
            .enumerate()
            .map(|(i, &v)| {
                let adj = self.incident(v);
                let lo = adj.partition_point(|&(t, _)| t < w.ts);
                let hi = adj.partition_point(|&(t, _)| t <= w.te);
                let mut n = 0;
                for &(_, u) in &adj[lo..hi] {
                    let m = &mut mark[u.index()];
                    if *m != i as u32 {
                        *m = i as u32;
                        n += 1;
                    }
                }
                n
            })
            .collect()
    }

    /// The projected graph over `w`: same vertex set, edges with `t ∈ w`.
    pub fn project(&self, w: TimeInterval) -> TemporalGraph {
        let lo = self.edges.partition_point(|e| e.t < w.ts);
        let hi = self.edges.partition_point(|e| e.t <= w.te);
        let edges = self.edges[lo..hi].to_vec();
        Self::with_shared_labels(Arc::clone(&self.labels), edges)
            .expect("projection keeps edges valid")
    }

    /// Re-maps timestamps onto `1, 2, …` (see [`Normalization`]).
    pub fn normalize(&self, mode: Normalization) -> Result<TemporalGraph, GraphError> {
        let min_t = self.min_t().ok_or(GraphError::EmptyGraph)?;
        let edges = match mode {
            Normalization::Bucket(width) => {
                if width <= 0 {
                    return Err(GraphError::InvalidBucketWidth(width));
                }
                self.edges
                    .iter()
                    .map(|e| TemporalEdge {
                        t: (e.t - min_t).div_euclid(width) + 1,
                        ..*e
                    })
                    .collect()
            }
            Normalization::Rank => {
                let distinct = self.timestamps();
                self.edges
                    .iter()
                    .map(|e| TemporalEdge {
                        t: distinct.binary_search(&e.t).expect("own timestamp") as Timestamp + 1,
                        ..*e
                    })
                    .collect()
            }
        };
        Self::with_shared_labels(Arc::clone(&self.labels), edges)
    }

    /// `(src label, dst label, t)` for every edge, sorted; convenient for
    /// comparing graphs whose id assignment differs.
    pub fn labeled_edges(&self) -> Vec<(String, String, Timestamp)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (self.label(e.src), self.label(e.dst));
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                (a.to_owned(), b.to_owned(), e.t)
            })
            .collect();
        out.sort();
        out
    }
}

/// Timestamp coarsening applied after ingestion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `t' = floor((t - min_t) / width) + 1`.
    Bucket(i64),
    /// Distinct raw timestamps ranked `1..=m`, order preserved.
    Rank,
}

impl std::str::FromStr for Normalization {
    type Err = GraphError;

    /// `rank` or `bucket:<width>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "rank" {
            return Ok(Normalization::Rank);
        }
        let bad = || GraphError::InvalidGranularity(s.to_owned());
        let width = s.strip_prefix("bucket:").ok_or_else(bad)?;
        let width: i64 = width.parse().map_err(|_| bad())?;
        if width <= 0 {
            return Err(GraphError::InvalidBucketWidth(width));
        }
        Ok(Normalization::Bucket(width))
    }
}

#[derive(Clone, Debug)]
pub struct ParseOptions {
    /// Zero-based field holding the timestamp (2 for SNAP, 3 for KONECT).
    pub time_field: usize,
    pub comment_prefixes: Vec<char>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            time_field: 2,
            comment_prefixes: vec!['#', '%'],
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: TemporalGraph,
    /// Self-loop lines dropped during ingestion.
    pub self_loops: usize,
}

/// Reads a whitespace-separated `src dst t` edge list.
pub fn parse_edge_list<R: BufRead>(
    reader: R,
    opts: &ParseOptions,
) -> Result<ParsedGraph, GraphError> {
    let mut labels = VertexLabels::new();
    let mut edges = Vec::new();
    let mut self_loops = 0;
    let mut data_lines = 0usize;
    let needed = opts.time_field.max(1) + 1;

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with(opts.comment_prefixes.as_slice()) {
            continue;
        }
        data_lines += 1;
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() < needed.max(3) {
            return Err(GraphError::Parse {
                line: i + 1,
                message: format!("expected at least {} fields, found {}", needed.max(3), fields.len()),
            });
        }
        let raw_t = fields[opts.time_field];
        let t: Timestamp = raw_t.parse().map_err(|_| GraphError::Parse {
            line: i + 1,
            message: format!("timestamp `{raw_t}` is not an integer"),
        })?;
        if fields[0] == fields[1] {
            self_loops += 1;
            continue;
        }
        let u = labels.intern(fields[0]);
        let v = labels.intern(fields[1]);
        edges.push(TemporalEdge::new(u, v, t));
    }

    if data_lines == 0 {
        return Err(GraphError::EmptyInput);
    }
    Ok(ParsedGraph {
        graph: TemporalGraph::new(labels, edges)?,
        self_loops,
    })
}

/// Like [`parse_edge_list`] for a file; `.gz` files are decompressed.
pub fn read_edge_list_file(
    path: impl AsRef<Path>,
    opts: &ParseOptions,
) -> Result<ParsedGraph, GraphError> {
    let path = path.as_ref();
    let file = File::open(path)?;
    if path.extension().is_some_and(|e| e == "gz") {
        parse_edge_list(BufReader::new(GzDecoder::new(file)), opts)
    } else {
        parse_edge_list(BufReader::new(file), opts)
    }
}

/// Writes `src dst t` lines using vertex labels.
pub fn write_edge_list<W: Write>(graph: &TemporalGraph, mut out: W) -> io::Result<()> {
    for e in graph.edges() {
        writeln!(out, "{} {} {}", graph.label(e.src), graph.label(e.dst), e.t)?;
    }
    out.flush()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyntheticModel {
    Uniform,
    Preferential,
    /// Dense vertex groups, each active in a short random sub-window, over a
    /// sparse uniform background.
    PlantedCommunity,
}

impl std::str::FromStr for SyntheticModel {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(SyntheticModel::Uniform),
            "preferential" => Ok(SyntheticModel::Preferential),
            "planted-community" | "planted" => Ok(SyntheticModel::PlantedCommunity),
            _ => Err(GraphError::InvalidSynthetic(format!("unknown model `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SyntheticSpec {
    pub vertices: usize,
    pub edges: usize,
    pub timestamps: i64,
    pub model: SyntheticModel,
    pub seed: u64,
}

/// Share of planted-community edges drawn from the uniform background.
const BACKGROUND_SHARE: f64 = 0.05;

/// Deterministic random temporal graph with timestamps in `1..=timestamps`.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<TemporalGraph, GraphError> {
    if spec.vertices < 2 {
        return Err(GraphError::InvalidSynthetic(
            "need at least 2 vertices".to_owned(),
        ));
    }
    if spec.edges == 0 || spec.timestamps <= 0 {
        return Err(GraphError::InvalidSynthetic(
            "edge and timestamp counts must be positive".to_owned(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.vertices as u32;
    let horizon = spec.timestamps;

    let uniform_edge = |rng: &mut ChaCha8Rng| {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        TemporalEdge::new(VertexId(u), VertexId(v), rng.gen_range(1..=horizon))
    };

    let mut edges = Vec::with_capacity(spec.edges);
    match spec.model {
        SyntheticModel::Uniform => {
            for _ in 0..spec.edges {
                edges.push(uniform_edge(&mut rng));
            }
        }
        SyntheticModel::Preferential => {
            let mut pool: Vec<u32> = (0..n).collect();
            for _ in 0..spec.edges {
                let u = pool[rng.gen_range(0..pool.len())];
                let mut v = u;
                for _ in 0..16 {
                    v = pool[rng.gen_range(0..pool.len())];
                    if v != u {
                        break;
                    }
                }
                if v == u {
                    v = (u + rng.gen_range(1..n)) % n;
                }
                pool.push(u);
                pool.push(v);
                edges.push(TemporalEdge::new(
                    VertexId(u),
                    VertexId(v),
                    rng.gen_range(1..=horizon),
                ));
            }
        }
        SyntheticModel::PlantedCommunity => {
            let communities = plant_communities(&mut rng, spec.vertices, horizon);
            let background = ((spec.edges as f64) * BACKGROUND_SHARE).round() as usize;
            for i in 0..spec.edges {
                if i < background {
                    edges.push(uniform_edge(&mut rng));
                    continue;
                }
                let c = &communities[rng.gen_range(0..communities.len())];
                let a = rng.gen_range(0..c.members.len());
                let mut b = rng.gen_range(0..c.members.len() - 1);
                if b >= a {
                    b += 1;
                }
                edges.push(TemporalEdge::new(
                    c.members[a],
                    c.members[b],
                    rng.gen_range(c.active.ts..=c.active.te),
                ));
            }
        }
    }
    TemporalGraph::new(VertexLabels::numbered(spec.vertices), edges)
}

struct Community {
    members: Vec<VertexId>,
    active: TimeInterval,
}

/// Disjoint groups of 6 to 14 vertices (fewer on tiny graphs), one group per 50
/// vertices, each active for 1 to 3 consecutive timestamps.
fn plant_communities(rng: &mut ChaCha8Rng, n: usize, horizon: i64) -> Vec<Community> {
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);
    let count = (n / 50).max(1);
    let max_len = horizon.min(3);
    let mut out = Vec::with_capacity(count);
    let mut next = 0;
    for _ in 0..count {
        let want = rng.gen_range(6..=14).min(n);
        if n - next < 2 {
            break;
        }
        let size = want.min(n - next);
        let members = order[next..next + size].iter().map(|&v| VertexId(v)).collect();
        next += size;
        let len = rng.gen_range(1..=max_len);
        let start = rng.gen_range(1..=horizon - len + 1);
        out.push(Community {
            members,
            active: TimeInterval::raw(start, start + len - 1),
        });
    }
    out
}
