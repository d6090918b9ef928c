//! Brute-force reference answers.
//!
//! Everything here is computed straight from the definitions: project the
//! graph onto each subinterval, peel with plain adjacency maps, group
//! identical cores. Nothing is shared with the TEL or the pruning engines.
//! Cost is quadratic in the window span times a full peel, so inputs are
//! capped.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use crate::error::QueryError;
use crate::graph::{TemporalEdge, TemporalGraph, TimeInterval, VertexId};
use crate::measures::EvalContext;
use crate::snapshot::CoreSnapshot;
use crate::txcq::{QueryMode, QueryResult, QuerySpec, QueryStats, Qualifying, ResultEntry};
use crate::zone::ZoneRecord;

/// Largest `te - ts` the oracle accepts.
pub const MAX_SPAN: i64 = 40;
/// Largest edge count the oracle accepts.
pub const MAX_EDGES: usize = 2000;

/// Refuses instances the oracle would take too long on.
pub fn check_caps(g: &TemporalGraph, window: TimeInterval) -> Result<(), QueryError> {
    let span = match g.time_range().and_then(|r| r.intersect(&window)) {
        Some(w) => w.span(),
        None => 0,
    };
    if span > MAX_SPAN {
        return Err(QueryError::Unsupported(format!(
            "oracle refuses window span {span} (limit {MAX_SPAN})"
        )));
    }
    if g.edge_count() > MAX_EDGES {
        return Err(QueryError::Unsupported(format!(
            "oracle refuses {} edges (limit {MAX_EDGES})",
            g.edge_count()
        )));
    }
    Ok(())
}

/// k-core of the projected graph over `w`, by repeated peeling.
pub fn reference_core(g: &TemporalGraph, k: usize, w: TimeInterval) -> CoreSnapshot {
    let edges: Vec<TemporalEdge> = g
        .edges()
        .iter()
        .filter(|e| w.contains(e.t))
        .copied()
        .collect();
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for e in &edges {
        adj.entry(e.src).or_default().insert(e.dst);
        adj.entry(e.dst).or_default().insert(e.src);
    }
    loop {
        let weak: Vec<VertexId> = adj
            .iter()
            .filter(|(_, ns)| ns.len() < k)
            .map(|(v, _)| *v)
            .collect();
        if weak.is_empty() {
            break;
        }
        for v in weak {
            if let Some(ns) = adj.remove(&v) {
                for u in ns {
                    if let Some(s) = adj.get_mut(&u) {
                        s.remove(&v);
                    }
                }
            }
        }
    }
    let kept = edges
        .into_iter()
        .filter(|e| adj.contains_key(&e.src) && adj.contains_key(&e.dst))
        .collect();
    CoreSnapshot::from_edges(k, kept)
}

/// All subintervals inducing one distinct core.
#[derive(Clone, Debug)]
pub struct OracleClass {
    pub core: Arc<CoreSnapshot>,
    /// Members not strictly enclosing another member.
    pub minimal: Vec<TimeInterval>,
    /// Members not strictly enclosed by another member.
    pub maximal: Vec<TimeInterval>,
    pub members: BTreeSet<TimeInterval>,
}

impl OracleClass {
    /// The unique minimal member.
    pub fn tti(&self) -> TimeInterval {
        assert_eq!(self.minimal.len(), 1, "class without a unique minimal member");
        self.minimal[0]
    }

    pub fn to_zone(&self) -> ZoneRecord {
        ZoneRecord::new(Arc::clone(&self.core), self.maximal.clone())
    }
}

#[derive(Clone, Debug)]
pub struct OracleCatalog {
    pub k: usize,
    pub window: Option<TimeInterval>,
    /// Sorted by TTI.
    pub classes: Vec<OracleClass>,
    /// Class index of every nonempty subinterval.
    pub class_of: BTreeMap<TimeInterval, usize>,
    /// Every subinterval of the window, empty cores included.
    pub cores: BTreeMap<TimeInterval, Arc<CoreSnapshot>>,
}

impl OracleCatalog {
    pub fn zones(&self) -> Vec<ZoneRecord> {
        self.classes.iter().map(OracleClass::to_zone).collect()
    }

    pub fn class(&self, w: TimeInterval) -> Option<&OracleClass> {
        self.class_of.get(&w).map(|&i| &self.classes[i])
    }
}

fn strictly_inside(inner: &TimeInterval, outer: &TimeInterval) -> bool {
    outer.ts() <= inner.ts() && inner.te() <= outer.te() && inner != outer
}

/// Every distinct core of every subinterval of `window`.
pub fn brute_force_tcq(g: &TemporalGraph, k: usize, window: TimeInterval) -> OracleCatalog {
    let window = g.time_range().and_then(|r| r.intersect(&window));
    let mut cores = BTreeMap::new();
    let mut groups: HashMap<Vec<TemporalEdge>, Vec<TimeInterval>> = HashMap::new();
    let mut snaps: HashMap<Vec<TemporalEdge>, Arc<CoreSnapshot>> = HashMap::new();
    if let Some(w) = window {
        for ts in w.ts()..=w.te() {
            for te in ts..=w.te() {
                let iv = TimeInterval::new(ts, te).expect("ts <= te");
                let core = Arc::new(reference_core(g, k, iv));
                if !core.is_empty() {
                    let key = core.edges().to_vec();
                    groups.entry(key.clone()).or_default().push(iv);
                    snaps.entry(key).or_insert_with(|| Arc::clone(&core));
                }
                cores.insert(iv, core);
            }
        }
    }
    let mut classes: Vec<OracleClass> = groups
        .into_iter()
        .map(|(key, members)| {
            let minimal = members
                .iter()
                .filter(|m| !members.iter().any(|o| strictly_inside(o, m)))
                .copied()
                .collect();
            let maximal = members
                .iter()
                .filter(|m| !members.iter().any(|o| strictly_inside(m, o)))
                .copied()
                .collect();
            OracleClass {
                core: snaps.remove(&key).expect("snapshot per group"),
                minimal,
                maximal,
                members: members.into_iter().collect(),
            }
        })
        .collect();
    classes.sort_by_key(|c| c.minimal.iter().min().copied());
    let mut class_of = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        for m in &c.members {
            class_of.insert(*m, i);
        }
    }
    OracleCatalog {
        k,
        window,
        classes,
        class_of,
        cores,
    }
}

/// Evaluates `X` on every nonempty subinterval and applies the query mode.
pub fn brute_force_txcq(g: &TemporalGraph, spec: &QuerySpec) -> Result<QueryResult, QueryError> {
    if spec.k == 0 {
        return Err(QueryError::InvalidK);
    }
    let started = Instant::now();
    let cat = brute_force_tcq(g, spec.k, spec.window);
    let zones = cat.zones();
    let mut entries = Vec::new();
    let mut evaluations = 0u64;

    match (&spec.measure, spec.mode) {
        (_, QueryMode::Enumerate) => {
            for z in &zones {
                entries.push(ResultEntry {
                    zone: z.clone(),
                    x_value: None,
                    qualifying: Qualifying::NotApplicable,
                });
            }
        }
        (None, mode) => return Err(QueryError::MissingMeasure(mode.name())),
        (Some(m), mode) => {
            let ctx = EvalContext::new(g).with_zones(&zones);
            let mut values = Vec::new();
            for (w, &ci) in &cat.class_of {
                let z = &zones[ci];
                let v = m.eval(&cat.classes[ci].core, *w, &ctx.in_zone(z))?;
                evaluations += 1;
                values.push((ci, *w, v));
            }
            let top = values.iter().map(|x| x.2).max_by(|a, b| m.compare(*a, *b));
            let mut hits: BTreeMap<usize, Vec<TimeInterval>> = BTreeMap::new();
            for (ci, w, v) in &values {
                let keep = match mode {
                    QueryMode::Constrain(sigma) => m.satisfies(*v, sigma),
                    _ => Some(*v) == top,
                };
                if keep {
                    hits.entry(*ci).or_default().push(*w);
                }
            }
            for (ci, list) in hits {
                entries.push(ResultEntry {
                    zone: zones[ci].clone(),
                    x_value: if mode == QueryMode::Optimize { top } else { None },
                    qualifying: Qualifying::Intervals(list),
                });
            }
        }
    }
    let lti_count = zones.iter().map(|z| z.ltis.len()).sum();
    Ok(QueryResult {
        k: spec.k,
        window: cat.window,
        mode: spec.mode,
        measure: spec.measure.as_ref().map(|m| m.id().to_owned()),
        entries,
        stats: QueryStats {
            algorithm: "oracle".to_owned(),
            phase1_ms: started.elapsed().as_secs_f64() * 1e3,
            cells_visited: cat.cores.len() as u64,
            x_evaluations: evaluations,
            exhaustive: true,
            zone_count: zones.len(),
            lti_count,
            ..QueryStats::default()
        },
    })
}
