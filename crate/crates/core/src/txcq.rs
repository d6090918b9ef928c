//! Temporal (k,X)-core queries.
//!
//! Phase 1 locates every time zone of the window with [`run_otcd_star`].
//! Phase 2 searches inside zones, picking the cheapest search the measure's
//! sensitivity allows:
//!
//! | sensitivity  | optimize               | constrain        |
//! |--------------|------------------------|------------------|
//! | insensitive  | [`ti_ls`]              | [`ti_ls`]        |
//! | monotonic    | [`tmo_ls`]             | [`tmc_ls`]       |
//! | nonmonotonic | [`run_tcd_star`]       | [`run_tcd_star`] |

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{MeasureError, QueryError};
use crate::graph::{TemporalGraph, TimeInterval};
use crate::measures::{Direction, EvalContext, MeasureDescriptor, MeasureValue, Sensitivity};
use crate::snapshot::CoreSnapshot;
use crate::tcq::{clamp_window, run_otcd_star, TcqOptions, TcqStats};
use crate::tel::Tel;
use crate::zone::ZoneRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryMode {
    Enumerate,
    Optimize,
    Constrain(MeasureValue),
}

impl QueryMode {
    pub fn name(&self) -> &'static str {
        match self {
            QueryMode::Enumerate => "enumerate",
            QueryMode::Optimize => "optimize",
            QueryMode::Constrain(_) => "constrain",
        }
    }

    pub fn sigma(&self) -> Option<MeasureValue> {
        match self {
            QueryMode::Constrain(s) => Some(*s),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuerySpec {
    pub k: usize,
    pub window: TimeInterval,
    pub measure: Option<MeasureDescriptor>,
    pub mode: QueryMode,
    /// Upper bound on Phase-2 worker threads; 1 keeps everything on the
    /// calling thread.
    pub threads: usize,
}

impl QuerySpec {
    pub fn enumerate(k: usize, window: TimeInterval) -> Self {
        QuerySpec {
            k,
            window,
            measure: None,
            mode: QueryMode::Enumerate,
            threads: 1,
        }
    }

    pub fn optimize(k: usize, window: TimeInterval, m: MeasureDescriptor) -> Self {
        QuerySpec {
            measure: Some(m),
            mode: QueryMode::Optimize,
            ..Self::enumerate(k, window)
        }
    }

    pub fn constrain(k: usize, window: TimeInterval, m: MeasureDescriptor, sigma: MeasureValue) -> Self {
        QuerySpec {
            measure: Some(m),
            mode: QueryMode::Constrain(sigma),
            ..Self::enumerate(k, window)
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    fn measure(&self) -> Result<&MeasureDescriptor, QueryError> {
        self.measure
            .as_ref()
            .ok_or(QueryError::MissingMeasure(self.mode.name()))
    }
}

/// Which member intervals of a zone answer the query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Qualifying {
    /// Enumeration: no measure involved.
    NotApplicable,
    /// Every member of the zone.
    WholeZone,
    /// Sorted by `(ts, te)`.
    Intervals(Vec<TimeInterval>),
}

#[derive(Clone, Debug)]
pub struct ResultEntry {
    pub zone: ZoneRecord,
    /// Optimize: the optimum. Otherwise the value at the TTI when it was
    /// evaluated.
    pub x_value: Option<MeasureValue>,
    pub qualifying: Qualifying,
}

/// Evaluation count of one TMC-LS walk next to its two reference bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStats {
    pub tti: TimeInterval,
    pub evaluations: u64,
    /// Sum of `width + height` over the zone's LTI rectangles.
    pub rectangle_bound: u64,
    /// Rows plus columns spanned by the zone.
    pub rows_plus_cols: u64,
}

#[derive(Clone, Debug, Default)]
pub struct QueryStats {
    pub algorithm: String,
    pub phase1_ms: f64,
    pub phase2_ms: f64,
    pub cells_visited: u64,
    pub x_evaluations: u64,
    pub prune: TcqStats,
    /// Answered by evaluating every nonempty subinterval.
    pub exhaustive: bool,
    pub zone_count: usize,
    pub lti_count: usize,
    pub walks: Vec<WalkStats>,
}

#[derive(Clone, Debug)]
pub struct QueryResult {
    pub k: usize,
    /// Window after clamping to the graph's time range.
    pub window: Option<TimeInterval>,
    pub mode: QueryMode,
    pub measure: Option<String>,
    /// Sorted by TTI.
    pub entries: Vec<ResultEntry>,
    pub stats: QueryStats,
}

/// Algorithm-independent form of a result, for comparing engines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    /// TTIs of every zone.
    Zones(BTreeSet<TimeInterval>),
    /// The optimum and the TTIs of the zones that reach it.
    Optimum {
        value: Option<MeasureValue>,
        zones: BTreeSet<TimeInterval>,
    },
    /// Every qualifying interval.
    Qualifying(BTreeSet<TimeInterval>),
}

impl QueryResult {
    pub fn answer(&self) -> Answer {
        match self.mode {
            QueryMode::Enumerate => Answer::Zones(self.entries.iter().map(|e| e.zone.tti).collect()),
            QueryMode::Optimize => Answer::Optimum {
                value: self.entries.first().and_then(|e| e.x_value),
                zones: self.entries.iter().map(|e| e.zone.tti).collect(),
            },
            QueryMode::Constrain(_) => Answer::Qualifying(
                self.entries
                    .iter()
                    .flat_map(|e| match &e.qualifying {
                        Qualifying::WholeZone => e.zone.members(),
                        Qualifying::Intervals(v) => v.clone(),
                        Qualifying::NotApplicable => Vec::new(),
                    })
                    .collect(),
            ),
        }
    }

    pub fn zones(&self) -> impl Iterator<Item = &ZoneRecord> {
        self.entries.iter().map(|e| &e.zone)
    }
}

/// Entries and evaluation count produced by a Phase-2 search.
#[derive(Clone, Debug, Default)]
pub struct SearchOutput {
    pub entries: Vec<ResultEntry>,
    pub x_evaluations: u64,
    pub walks: Vec<WalkStats>,
}

fn map_zones<T, F>(zones: &[ZoneRecord], threads: usize, f: F) -> Result<Vec<T>, QueryError>
where
    T: Send,
    F: Fn(&ZoneRecord) -> Result<T, QueryError> + Sync + Send,
{
    if threads <= 1 || zones.len() < 2 {
        return zones.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| QueryError::Unsupported(format!("thread pool: {e}")))?;
    pool.install(|| zones.par_iter().map(f).collect())
}

fn best(m: &MeasureDescriptor, values: impl IntoIterator<Item = MeasureValue>) -> Option<MeasureValue> {
    values.into_iter().max_by(|a, b| m.compare(*a, *b))
}

fn require(m: &MeasureDescriptor, ok: bool, expected: &'static str) -> Result<(), QueryError> {
    if ok {
        Ok(())
    } else {
        Err(QueryError::WrongSensitivity {
            measure: m.id().to_owned(),
            expected,
        })
    }
}

/// Time-insensitive search: one evaluation per zone, at its TTI.
pub fn ti_ls(
    zones: &[ZoneRecord],
    spec: &QuerySpec,
    ctx: &EvalContext<'_>,
) -> Result<SearchOutput, QueryError> {
    let m = spec.measure()?;
    require(m, m.sensitivity() == Sensitivity::Insensitive, "time-insensitive")?;
    let values = map_zones(zones, spec.threads, |z| {
        Ok(m.eval(&z.core, z.tti, &ctx.in_zone(z))?)
    })?;
    let x_evaluations = values.len() as u64;
    let keep: Vec<bool> = match spec.mode {
        QueryMode::Optimize => {
            let top = best(m, values.iter().copied());
            values.iter().map(|v| Some(*v) == top).collect()
        }
        QueryMode::Constrain(sigma) => values.iter().map(|v| m.satisfies(*v, sigma)).collect(),
        QueryMode::Enumerate => vec![true; values.len()],
    };
    let entries = zones
        .iter()
        .zip(values)
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((z, v), _)| ResultEntry {
            zone: z.clone(),
            x_value: Some(v),
            qualifying: Qualifying::WholeZone,
        })
        .collect();
    Ok(SearchOutput {
        entries,
        x_evaluations,
        walks: Vec::new(),
    })
}

/// Time-monotonic optimization: the optimum of a zone sits at its TTI when
/// the measure improves on shrinking, and at one of its LTIs otherwise.
pub fn tmo_ls(
    zones: &[ZoneRecord],
    spec: &QuerySpec,
    ctx: &EvalContext<'_>,
) -> Result<SearchOutput, QueryError> {
    let m = spec.measure()?;
    let Sensitivity::Monotonic(dir) = m.sensitivity() else {
        return Err(QueryError::WrongSensitivity {
            measure: m.id().to_owned(),
            expected: "time-monotonic",
        });
    };
    if spec.mode != QueryMode::Optimize {
        return Err(QueryError::Unsupported("tmo-ls only answers optimize queries".into()));
    }
    let per_zone = map_zones(zones, spec.threads, |z| {
        let zctx = ctx.in_zone(z);
        let candidates: &[TimeInterval] = match dir {
            Direction::ImprovesOnShrink => std::slice::from_ref(&z.tti),
            Direction::ImprovesOnExpand => &z.ltis,
        };
        let mut scored = Vec::with_capacity(candidates.len());
        for &w in candidates {
            scored.push((w, m.eval(&z.core, w, &zctx)?));
        }
        Ok(scored)
    })?;
    let x_evaluations = per_zone.iter().map(|s| s.len() as u64).sum();
    let top = best(m, per_zone.iter().flatten().map(|(_, v)| *v));
    let mut entries = Vec::new();
    for (z, scored) in zones.iter().zip(per_zone) {
        let mut hits: Vec<TimeInterval> = scored
            .iter()
            .filter(|(_, v)| Some(*v) == top)
            .map(|(w, _)| *w)
            .collect();
        if !hits.is_empty() {
            hits.sort();
            entries.push(ResultEntry {
                zone: z.clone(),
                x_value: top,
                qualifying: Qualifying::Intervals(hits),
            });
        }
    }
    Ok(SearchOutput {
        entries,
        x_evaluations,
        walks: Vec::new(),
    })
}

/// Time-monotonic constraint search inside one zone.
///
/// Qualification is closed under expansion (or shrinking) inside the zone,
/// so the qualifying members form a staircase. The walk follows its boundary,
/// evaluating one cell per step and collecting a whole column whenever a cell
/// qualifies. Returns the qualifying members sorted by `(ts, te)`.
pub fn tmc_ls(
    z: &ZoneRecord,
    m: &MeasureDescriptor,
    sigma: MeasureValue,
    ctx: &EvalContext<'_>,
) -> Result<(Vec<TimeInterval>, WalkStats), QueryError> {
    let Sensitivity::Monotonic(dir) = m.sensitivity() else {
        return Err(QueryError::WrongSensitivity {
            measure: m.id().to_owned(),
            expected: "time-monotonic",
        });
    };
    let ctx = ctx.in_zone(z);
    let (tti_ts, tti_te) = (z.tti.ts(), z.tti.te());
    let (min_a, max_b) = (z.min_start(), z.max_end());
    let mut evaluations = 0u64;
    let mut out = Vec::new();
    let mut qualifies = |ts, te| -> Result<bool, MeasureError> {
        evaluations += 1;
        let v = m.eval(&z.core, TimeInterval::raw(ts, te), &ctx)?;
        Ok(m.satisfies(v, sigma))
    };

    match dir {
        Direction::ImprovesOnExpand => {
            // Bottom row, rightmost column; move left on success, up on
            // failure.
            let (mut ts, mut te) = (tti_ts, max_b);
            while ts >= min_a && te >= tti_te {
                match z.max_end_for_row(ts) {
                    None => break,
                    Some(b) if te > b => {
                        te = b;
                        continue;
                    }
                    Some(_) => {}
                }
                if qualifies(ts, te)? {
                    let top = z.min_start_for_col(te).expect("column inside zone");
                    out.extend((top..=ts).map(|r| TimeInterval::raw(r, te)));
                    te -= 1;
                } else {
                    ts -= 1;
                }
            }
        }
        Direction::ImprovesOnShrink => {
            // Top row, leftmost column; move right on success, down on
            // failure.
            let (mut ts, mut te) = (min_a, tti_te);
            while ts <= tti_ts && te <= max_b {
                match z.min_start_for_col(te) {
                    None => break,
                    Some(a) if ts < a => {
                        ts = a;
                        continue;
                    }
                    Some(_) => {}
                }
                if qualifies(ts, te)? {
                    out.extend((ts..=tti_ts).map(|r| TimeInterval::raw(r, te)));
                    te += 1;
                } else {
                    ts += 1;
                }
            }
        }
    }
    out.sort();
    let stats = WalkStats {
        tti: z.tti,
        evaluations,
        rectangle_bound: z.rectangle_perimeter_sum(),
        rows_plus_cols: z.rows_plus_cols(),
    };
    Ok((out, stats))
}

fn tmc_all(
    zones: &[ZoneRecord],
    spec: &QuerySpec,
    ctx: &EvalContext<'_>,
) -> Result<SearchOutput, QueryError> {
    let m = spec.measure()?;
    let QueryMode::Constrain(sigma) = spec.mode else {
        return Err(QueryError::MissingThreshold);
    };
    let walks = map_zones(zones, spec.threads, |z| tmc_ls(z, m, sigma, ctx))?;
    let mut out = SearchOutput::default();
    for (z, (hits, stats)) in zones.iter().zip(walks) {
        out.x_evaluations += stats.evaluations;
        out.walks.push(stats);
        if !hits.is_empty() {
            out.entries.push(ResultEntry {
                zone: z.clone(),
                x_value: None,
                qualifying: Qualifying::Intervals(hits),
            });
        }
    }
    Ok(out)
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Answers `spec` with zone location followed by the local search that fits
/// the measure; nonmonotonic measures fall back to [`run_tcd_star`].
pub fn run_txcq(g: &TemporalGraph, spec: &QuerySpec) -> Result<QueryResult, QueryError> {
    if spec.k == 0 {
        return Err(QueryError::InvalidK);
    }
    let sensitivity = match spec.mode {
        QueryMode::Enumerate => None,
        _ => Some(spec.measure()?.sensitivity()),
    };
    if sensitivity == Some(Sensitivity::Nonmonotonic) {
        return run_tcd_star(g, spec);
    }

    let t1 = Instant::now();
    let scan = run_otcd_star(g, spec.k, spec.window, &TcqOptions::default())?;
    let phase1_ms = ms(t1);

    let t2 = Instant::now();
    let ctx = EvalContext::new(g).with_zones(&scan.zones);
    let (algorithm, search) = match (sensitivity, spec.mode) {
        (None, _) => (
            "otcd-star",
            SearchOutput {
                entries: scan
                    .zones
                    .iter()
                    .map(|z| ResultEntry {
                        zone: z.clone(),
                        x_value: None,
                        qualifying: Qualifying::NotApplicable,
                    })
                    .collect(),
                ..SearchOutput::default()
            },
        ),
        (Some(Sensitivity::Insensitive), _) => ("otcd-star+ti-ls", ti_ls(&scan.zones, spec, &ctx)?),
        (Some(Sensitivity::Monotonic(_)), QueryMode::Optimize) => {
            ("otcd-star+tmo-ls", tmo_ls(&scan.zones, spec, &ctx)?)
        }
        (Some(Sensitivity::Monotonic(_)), _) => ("otcd-star+tmc-ls", tmc_all(&scan.zones, spec, &ctx)?),
        (Some(Sensitivity::Nonmonotonic), _) => unreachable!("handled above"),
    };
    let phase2_ms = ms(t2);

    Ok(QueryResult {
        k: spec.k,
        window: scan.window,
        mode: spec.mode,
        measure: spec.measure.as_ref().map(|m| m.id().to_owned()),
        entries: search.entries,
        stats: QueryStats {
            algorithm: algorithm.to_owned(),
            phase1_ms,
            phase2_ms,
            cells_visited: scan.stats.cells_visited,
            x_evaluations: search.x_evaluations,
            zone_count: scan.zones.len(),
            lti_count: scan.lti_count(),
            prune: scan.stats,
            exhaustive: false,
            walks: search.walks,
        },
    })
}

/// Exhaustive baseline: the core of every subinterval (reusing an earlier
/// core whenever PoR or PoU predicts it), then `X` on every nonempty one.
/// Exact for any measure.
pub fn run_tcd_star(g: &TemporalGraph, spec: &QuerySpec) -> Result<QueryResult, QueryError> {
    if spec.k == 0 {
        return Err(QueryError::InvalidK);
    }
    if spec.mode != QueryMode::Enumerate {
        spec.measure()?;
    }
    let k = spec.k;
    let t1 = Instant::now();
    let clamped = clamp_window(g, spec.window);
    let mut prune = TcqStats {
        cells_total: clamped.map_or(0, |w| w.subinterval_count()),
        ..TcqStats::default()
    };
    let mut zones: Vec<ZoneRecord> = Vec::new();

    if let Some(w) = clamped {
        let (lo, hi) = (w.ts(), w.te());
        // grid[ts - lo][te - ts]: index into `cores`, or None when empty.
        let mut grid: Vec<Vec<Option<usize>>> = (lo..=hi)
            .map(|ts| vec![None; (hi - ts + 1) as usize])
            .collect();
        let mut cores: Vec<Arc<CoreSnapshot>> = Vec::new();
        let mut by_tti: HashMap<TimeInterval, usize> = HashMap::new();
        let mut head = Tel::build(g);

        for ts in lo..=hi {
            let row = (ts - lo) as usize;
            let mut cur: Option<Tel> = None;
            for te in (ts..=hi).rev() {
                prune.cells_visited += 1;
                let up = (ts > lo).then(|| grid[row - 1][(te - ts + 1) as usize]);
                let left = (te < hi).then(|| grid[row][(te + 1 - ts) as usize]);
                let via_up = match up {
                    Some(None) => Some(None),
                    Some(Some(id)) if cores[id].tti().is_some_and(|t| t.ts() >= ts) => Some(Some(id)),
                    _ => None,
                };
                let via_left = match left {
                    Some(None) => Some(None),
                    Some(Some(id)) if cores[id].tti().is_some_and(|t| t.te() <= te) => Some(Some(id)),
                    _ => None,
                };
                if via_up.is_some() {
                    prune.triggers.pou += 1;
                } else if via_left.is_some() {
                    prune.triggers.por += 1;
                }
                let result = match via_up.or(via_left) {
                    Some(known) => known,
                    None => {
                        let iv = TimeInterval::raw(ts, te);
                        let tel = if te == hi {
                            head.tcd(k, iv)?;
                            &head
                        } else {
                            let t = cur.get_or_insert_with(|| head.clone());
                            t.tcd(k, iv)?;
                            t
                        };
                        prune.decompositions += 1;
                        tel.tti().map(|tti| {
                            prune.nonempty_decompositions += 1;
                            *by_tti.entry(tti).or_insert_with(|| {
                                cores.push(Arc::new(tel.snapshot()));
                                cores.len() - 1
                            })
                        })
                    }
                };
                grid[row][(te - ts) as usize] = result;
            }
        }

        let id_at = |ts: i64, te: i64| -> Option<usize> {
            if ts < lo || te > hi || ts > te {
                None
            } else {
                grid[(ts - lo) as usize][(te - ts) as usize]
            }
        };
        let mut ltis: Vec<Vec<TimeInterval>> = vec![Vec::new(); cores.len()];
        for ts in lo..=hi {
            for te in ts..=hi {
                if let Some(id) = id_at(ts, te) {
                    if id_at(ts - 1, te) != Some(id) && id_at(ts, te + 1) != Some(id) {
                        ltis[id].push(TimeInterval::raw(ts, te));
                    }
                }
            }
        }
        zones = cores
            .into_iter()
            .zip(ltis)
            .map(|(core, l)| ZoneRecord::new(core, l))
            .collect();
        zones.sort_by_key(|z| z.tti);
        prune.distinct_cores = zones.len() as u64;
    }
    let phase1_ms = ms(t1);

    let t2 = Instant::now();
    let ctx = EvalContext::new(g).with_zones(&zones);
    let mut entries = Vec::new();
    let mut x_evaluations = 0;
    match (spec.mode, spec.measure.as_ref()) {
        (QueryMode::Enumerate, _) | (_, None) => {
            entries = zones
                .iter()
                .map(|z| ResultEntry {
                    zone: z.clone(),
                    x_value: None,
                    qualifying: Qualifying::NotApplicable,
                })
                .collect();
        }
        (mode, Some(m)) => {
            let scored = map_zones(&zones, spec.threads, |z| {
                let zctx = ctx.in_zone(z);
                z.members()
                    .into_iter()
                    .map(|w| Ok((w, m.eval(&z.core, w, &zctx)?)))
                    .collect::<Result<Vec<_>, QueryError>>()
            })?;
            x_evaluations = scored.iter().map(|s| s.len() as u64).sum();
            let top = best(m, scored.iter().flatten().map(|(_, v)| *v));
            for (z, s) in zones.iter().zip(&scored) {
                let mut hits: Vec<TimeInterval> = s
                    .iter()
                    .filter(|(_, v)| match mode {
                        QueryMode::Constrain(sigma) => m.satisfies(*v, sigma),
                        _ => Some(*v) == top,
                    })
                    .map(|(w, _)| *w)
                    .collect();
                if hits.is_empty() {
                    continue;
                }
                hits.sort();
                let x_value = match mode {
                    QueryMode::Optimize => top,
                    _ => s.iter().find(|(w, _)| *w == z.tti).map(|(_, v)| *v),
                };
                entries.push(ResultEntry {
                    zone: z.clone(),
                    x_value,
                    qualifying: Qualifying::Intervals(hits),
                });
            }
        }
    }
    let phase2_ms = ms(t2);
    let lti_count = zones.iter().map(|z| z.ltis.len()).sum();

    Ok(QueryResult {
        k,
        window: clamped,
        mode: spec.mode,
        measure: spec.measure.as_ref().map(|m| m.id().to_owned()),
        entries,
        stats: QueryStats {
            algorithm: "tcd-star".to_owned(),
            phase1_ms,
            phase2_ms,
            cells_visited: prune.cells_visited,
            x_evaluations,
            zone_count: zones.len(),
            lti_count,
            prune,
            exhaustive: true,
            walks: Vec::new(),
        },
    })
}
