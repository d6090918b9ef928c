//! Temporal k-core queries: every distinct k-core induced by some subinterval
//! of a query window.
//!
//! Subintervals are laid out as a triangular schedule table (row `ts`,
//! column `te`). Both engines walk rows top to bottom and columns right to
//! left, inducing each core from an enclosing one. [`run_tcd`] visits every
//! cell; [`run_otcd`] skips cells whose core is already known from the TTI of
//! an earlier cell.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::QueryError;
use crate::graph::{TemporalGraph, TimeInterval};
use crate::prune::{Cell, PruneTable};
use crate::snapshot::CoreSnapshot;
use crate::tel::Tel;
use crate::zone::ZoneRecord;

/// Per-rule counters; used both for trigger counts and pruned-cell counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub por: u64,
    pub pou: u64,
    pub pol: u64,
    pub rule4: u64,
    pub empty: u64,
}

impl RuleCounts {
    pub fn total(&self) -> u64 {
        self.por + self.pou + self.pol + self.rule4 + self.empty
    }

    fn add(&mut self, o: &RuleCounts) {
        self.por += o.por;
        self.pou += o.pou;
        self.pol += o.pol;
        self.rule4 += o.rule4;
        self.empty += o.empty;
    }
}

/// Effect of one pruning step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PruneOutcome {
    pub triggered: RuleCounts,
    pub pruned: RuleCounts,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TcqStats {
    pub cells_total: u64,
    pub cells_visited: u64,
    pub cells_pruned: u64,
    pub triggers: RuleCounts,
    pub pruned_by: RuleCounts,
    pub decompositions: u64,
    pub nonempty_decompositions: u64,
    pub distinct_cores: u64,
    /// Nonempty inductions of a core that was already cataloged.
    pub redundant_inductions: u64,
    /// Cataloged TTIs that were induced again with a different edge multiset.
    /// Only checked when [`TcqOptions::verify_keys`] is set.
    pub key_collisions: u64,
}

impl TcqStats {
    fn absorb(&mut self, o: PruneOutcome) {
        self.triggers.add(&o.triggered);
        self.pruned_by.add(&o.pruned);
    }

    /// `count / cells_total`, as a percentage.
    pub fn pct(&self, count: u64) -> f64 {
        if self.cells_total == 0 {
            0.0
        } else {
            100.0 * count as f64 / self.cells_total as f64
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TcqOptions {
    /// Compare edge multisets whenever a cataloged TTI is induced again.
    pub verify_keys: bool,
}

/// Distinct temporal k-cores keyed by their TTI.
#[derive(Clone, Debug)]
pub struct CoreCatalog {
    k: usize,
    window: Option<TimeInterval>,
    cores: BTreeMap<TimeInterval, Arc<CoreSnapshot>>,
    pub stats: TcqStats,
}

impl CoreCatalog {
    fn new(k: usize, window: Option<TimeInterval>) -> Self {
        CoreCatalog {
            k,
            window,
            cores: BTreeMap::new(),
            stats: TcqStats {
                cells_total: window.map_or(0, |w| w.subinterval_count()),
                ..TcqStats::default()
            },
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The query window after clamping; `None` if nothing was left.
    pub fn window(&self) -> Option<TimeInterval> {
        self.window
    }

    pub fn len(&self) -> usize {
        self.cores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cores.is_empty()
    }

    pub fn get(&self, tti: &TimeInterval) -> Option<&Arc<CoreSnapshot>> {
        self.cores.get(tti)
    }

    pub fn keys(&self) -> impl Iterator<Item = TimeInterval> + '_ {
        self.cores.keys().copied()
    }

    /// Sorted by TTI.
    pub fn iter(&self) -> impl Iterator<Item = (&TimeInterval, &Arc<CoreSnapshot>)> {
        self.cores.iter()
    }

    fn record(&mut self, tel: &Tel, tti: TimeInterval, opts: &TcqOptions) -> Arc<CoreSnapshot> {
        self.stats.nonempty_decompositions += 1;
        if let Some(known) = self.cores.get(&tti) {
            self.stats.redundant_inductions += 1;
            if opts.verify_keys && **known != tel.snapshot() {
                self.stats.key_collisions += 1;
            }
            return Arc::clone(known);
        }
        let snap = Arc::new(tel.snapshot());
        self.cores.insert(tti, Arc::clone(&snap));
        self.stats.distinct_cores += 1;
        snap
    }
}

/// Intersection of `window` with the graph's time range.
pub fn clamp_window(g: &TemporalGraph, window: TimeInterval) -> Option<TimeInterval> {
    g.time_range()?.intersect(&window)
}

/// Rules 1-3 for a visited `cell` whose core has TTI `tti`.
pub fn apply_pruning(p: &mut PruneTable, cell: Cell, tti: TimeInterval) -> PruneOutcome {
    debug_assert!(cell.interval().encloses(&tti));
    let (a, b) = (tti.ts(), tti.te());
    let mut out = PruneOutcome::default();
    if b < cell.te {
        out.triggered.por = 1;
        out.pruned.por = p.prune(cell.ts, b, cell.te - 1);
    }
    if a > cell.ts {
        out.triggered.pou = 1;
        for r in cell.ts + 1..=a {
            out.pruned.pou += p.prune(r, r, cell.te);
        }
    }
    if a > cell.ts && b < cell.te {
        out.triggered.pol = 1;
        for r in a + 1..=b {
            out.pruned.pol += p.prune(r, b + 1, cell.te);
        }
    }
    out
}

/// Rule 4: every cell between `cell` (top-left) and `tti` (bottom-right)
/// induces the same core. Fires only when `cell` strictly encloses `tti`.
pub fn rectangle_prune(p: &mut PruneTable, cell: Cell, tti: TimeInterval) -> PruneOutcome {
    debug_assert!(cell.interval().encloses(&tti));
    let mut out = PruneOutcome::default();
    if cell.interval() != tti {
        out.triggered.rule4 = 1;
        for r in cell.ts..=tti.ts() {
            out.pruned.rule4 += p.prune(r, tti.te(), cell.te);
        }
    }
    out
}

/// A cell with an empty core: every subinterval of it is empty too.
pub fn empty_prune(p: &mut PruneTable, cell: Cell) -> PruneOutcome {
    let mut out = PruneOutcome::default();
    out.triggered.empty = 1;
    for r in cell.ts..=cell.te {
        out.pruned.empty += p.prune(r, r, cell.te);
    }
    out
}

/// Baseline: induce the core of every cell.
pub fn run_tcd(
    g: &TemporalGraph,
    k: usize,
    window: TimeInterval,
    opts: &TcqOptions,
) -> Result<CoreCatalog, QueryError> {
    if k == 0 {
        return Err(QueryError::InvalidK);
    }
    let clamped = clamp_window(g, window);
    let mut catalog = CoreCatalog::new(k, clamped);
    let Some(w) = clamped else { return Ok(catalog) };

    let mut head = Tel::build(g);
    for ts in w.ts()..=w.te() {
        head.tcd(k, TimeInterval::raw(ts, w.te()))?;
        let mut cur: Option<Tel> = None;
        for te in (ts..=w.te()).rev() {
            let tel = if te == w.te() {
                &head
            } else {
                let t = cur.get_or_insert_with(|| head.clone());
                t.tcd(k, TimeInterval::raw(ts, te))?;
                t
            };
            catalog.stats.cells_visited += 1;
            catalog.stats.decompositions += 1;
            if let Some(tti) = tel.tti() {
                catalog.record(tel, tti, opts);
            }
        }
    }
    Ok(catalog)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Strategy {
    /// PoR, PoU, PoL.
    Rules,
    /// Rule 4, collecting LTIs.
    Rectangle,
}

struct Scan {
    catalog: CoreCatalog,
    ltis: BTreeMap<TimeInterval, Vec<TimeInterval>>,
    visited: Vec<Cell>,
}

fn pruned_scan(
    g: &TemporalGraph,
    k: usize,
    window: TimeInterval,
    strategy: Strategy,
    opts: &TcqOptions,
) -> Result<Scan, QueryError> {
    if k == 0 {
        return Err(QueryError::InvalidK);
    }
    let clamped = clamp_window(g, window);
    let mut scan = Scan {
        catalog: CoreCatalog::new(k, clamped),
        ltis: BTreeMap::new(),
        visited: Vec::new(),
    };
    let Some(w) = clamped else { return Ok(scan) };

    let mut table = PruneTable::new(w);
    // The most recent row-head core. It encloses every cell
    // of every later row.
    let mut base = Tel::build(g);
    'rows: for ts in w.ts()..=w.te() {
        let Some(mut te) = table.next_open(ts, w.te()) else { continue };
        let mut cur: Option<Tel> = None;
        loop {
            let cell = Cell::new(ts, te);
            let iv = cell.interval();
            table.visit(cell);
            scan.visited.push(cell);
            let tel = if te == w.te() {
                base.tcd(k, iv)?;
                &base
            } else {
                let t = cur.get_or_insert_with(|| base.clone());
                t.tcd(k, iv)?;
                t
            };
            scan.catalog.stats.decompositions += 1;

            let Some(tti) = tel.tti() else {
                let o = empty_prune(&mut table, cell);
                scan.catalog.stats.absorb(o);
                if te == w.te() {
                    break 'rows;
                }
                break;
            };
            scan.catalog.record(tel, tti, opts);
            let o = match strategy {
                Strategy::Rules => apply_pruning(&mut table, cell, tti),
                Strategy::Rectangle => {
                    scan.ltis.entry(tti).or_default().push(iv);
                    rectangle_prune(&mut table, cell, tti)
                }
            };
            scan.catalog.stats.absorb(o);

            match table.next_open(ts, te - 1) {
                Some(c) => te = c,
                None => break,
            }
        }
    }
    scan.catalog.stats.cells_visited = table.visited();
    scan.catalog.stats.cells_pruned = table.pruned();
    Ok(scan)
}

/// TTI-pruned enumeration (Rules 1-3 plus empty-core pruning).
pub fn run_otcd(
    g: &TemporalGraph,
    k: usize,
    window: TimeInterval,
    opts: &TcqOptions,
) -> Result<CoreCatalog, QueryError> {
    Ok(pruned_scan(g, k, window, Strategy::Rules, opts)?.catalog)
}

/// Like [`run_otcd`], also returning the visited cells in visiting order.
pub fn run_otcd_traced(
    g: &TemporalGraph,
    k: usize,
    window: TimeInterval,
    opts: &TcqOptions,
) -> Result<(CoreCatalog, Vec<Cell>), QueryError> {
    let scan = pruned_scan(g, k, window, Strategy::Rules, opts)?;
    Ok((scan.catalog, scan.visited))
}

/// Output of zone location.
#[derive(Clone, Debug)]
pub struct ZoneScan {
    pub window: Option<TimeInterval>,
    /// Sorted by TTI.
    pub zones: Vec<ZoneRecord>,
    pub stats: TcqStats,
    pub visited: Vec<Cell>,
}

impl ZoneScan {
    pub fn lti_count(&self) -> usize {
        self.zones.iter().map(|z| z.ltis.len()).sum()
    }
}

/// Zone location with rectangle pruning: one [`ZoneRecord`] per distinct
/// core, with its TTI and every LTI.
pub fn run_otcd_star(
    g: &TemporalGraph,
    k: usize,
    window: TimeInterval,
    opts: &TcqOptions,
) -> Result<ZoneScan, QueryError> {
    let mut scan = pruned_scan(g, k, window, Strategy::Rectangle, opts)?;
    let zones = scan
        .catalog
        .cores
        .iter()
        .map(|(tti, core)| {
            let ltis = scan.ltis.remove(tti).unwrap_or_default();
            ZoneRecord::new(Arc::clone(core), ltis)
        })
        .collect();
    Ok(ZoneScan {
        window: scan.catalog.window,
        zones,
        stats: scan.catalog.stats,
        visited: scan.visited,
    })
}
