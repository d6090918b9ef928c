//! JSON and CSV rendering of query results. Field order is fixed and zones
//! are sorted by TTI, so identical inputs give identical bytes (timings
//! aside).

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use txc_core::{
    CoreSnapshot, MeasureValue, Qualifying, QuerySpec, RuleCounts, TemporalGraph, TimeInterval,
};

use crate::query::{Algorithm, Outcome};
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
pub struct QueryEcho {
    pub k: usize,
    pub ts: i64,
    pub te: i64,
    pub measure: Option<String>,
    pub mode: &'static str,
    pub sigma: Option<String>,
}

#[derive(Serialize)]
pub struct Value {
    /// Integer or reduced fraction `a/b`.
    pub exact: String,
    pub decimal: f64,
}

impl From<MeasureValue> for Value {
    fn from(v: MeasureValue) -> Self {
        Value {
            exact: v.to_string(),
            decimal: v.to_f64(),
        }
    }
}

#[derive(Serialize)]
pub struct ZoneOut {
    pub tti: [i64; 2],
    /// `null` when the engine does not locate zones (tcd, otcd).
    pub ltis: Option<Vec<[i64; 2]>>,
    pub vertices: Vec<String>,
    pub edge_count: usize,
    pub x_value: Option<Value>,
    /// Qualifying member intervals; `null` with `whole_zone` set when every
    /// member qualifies.
    pub qualifying: Option<Vec<[i64; 2]>>,
    pub whole_zone: bool,
}

#[derive(Serialize)]
pub struct PruneCounters {
    pub cells_total: u64,
    pub cells_pruned: u64,
    pub triggered: RuleCounts,
    pub pruned: RuleCounts,
}

#[derive(Serialize)]
pub struct StatsOut {
    pub algorithm: String,
    pub phase1_ms: f64,
    pub phase2_ms: f64,
    pub cells_visited: u64,
    pub x_evaluations: u64,
    pub distinct_cores: usize,
    pub lti_count: Option<usize>,
    pub prune_counters: PruneCounters,
}

#[derive(Serialize)]
pub struct Report {
    pub query: QueryEcho,
    pub zones: Vec<ZoneOut>,
    pub stats: StatsOut,
    pub duration_convention: &'static str,
}

fn pair(w: TimeInterval) -> [i64; 2] {
    [w.ts(), w.te()]
}

fn labels(g: &TemporalGraph, core: &CoreSnapshot) -> Vec<String> {
    core.vertices().iter().map(|&v| g.label(v).to_owned()).collect()
}

impl Report {
    pub fn new(g: &TemporalGraph, spec: &QuerySpec, algo: Algorithm, outcome: &Outcome) -> Self {
        let query = QueryEcho {
            k: spec.k,
            ts: spec.window.ts(),
            te: spec.window.te(),
            measure: spec.measure.as_ref().map(|m| m.id().to_owned()),
            mode: spec.mode.name(),
            sigma: spec.mode.sigma().map(|s| s.to_string()),
        };
        let (zones, stats) = match outcome {
            Outcome::Catalog { catalog, wall_ms } => {
                let zones = catalog
                    .iter()
                    .map(|(tti, core)| ZoneOut {
                        tti: pair(*tti),
                        ltis: None,
                        vertices: labels(g, core),
                        edge_count: core.edge_count(),
                        x_value: None,
                        qualifying: None,
                        whole_zone: false,
                    })
                    .collect();
                let s = &catalog.stats;
                let stats = StatsOut {
                    algorithm: algo.name().to_owned(),
                    phase1_ms: *wall_ms,
                    phase2_ms: 0.0,
                    cells_visited: s.cells_visited,
                    x_evaluations: 0,
                    distinct_cores: catalog.len(),
                    lti_count: None,
                    prune_counters: PruneCounters {
                        cells_total: s.cells_total,
                        cells_pruned: s.cells_pruned,
                        triggered: s.triggers,
                        pruned: s.pruned_by,
                    },
                };
                (zones, stats)
            }
            Outcome::Query(r) => {
                let zones = r
                    .entries
                    .iter()
                    .map(|e| {
                        let (qualifying, whole_zone) = match &e.qualifying {
                            Qualifying::NotApplicable => (None, false),
                            Qualifying::WholeZone => (None, true),
                            Qualifying::Intervals(v) => {
                                (Some(v.iter().map(|w| pair(*w)).collect()), false)
                            }
                        };
                        ZoneOut {
                            tti: pair(e.zone.tti),
                            ltis: Some(e.zone.ltis.iter().map(|w| pair(*w)).collect()),
                            vertices: labels(g, &e.zone.core),
                            edge_count: e.zone.core.edge_count(),
                            x_value: e.x_value.map(Value::from),
                            qualifying,
                            whole_zone,
                        }
                    })
                    .collect();
                let s = &r.stats;
                let stats = StatsOut {
                    algorithm: s.algorithm.clone(),
                    phase1_ms: s.phase1_ms,
                    phase2_ms: s.phase2_ms,
                    cells_visited: s.cells_visited,
                    x_evaluations: s.x_evaluations,
                    distinct_cores: s.zone_count,
                    lti_count: Some(s.lti_count),
                    prune_counters: PruneCounters {
                        cells_total: s.prune.cells_total,
                        cells_pruned: s.prune.cells_pruned,
                        triggered: s.prune.triggers,
                        pruned: s.prune.pruned_by,
                    },
                };
                (zones, stats)
            }
        };
        Report {
            query,
            zones,
            stats,
            duration_convention: "duration([ts,te]) = te - ts + 1",
        }
    }

    pub fn clear_timing(&mut self) {
        self.stats.phase1_ms = 0.0;
        self.stats.phase2_ms = 0.0;
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self).map_err(Failure::io)?;
                writeln!(out).map_err(Failure::io)
            }
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<(), Failure> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "tti_ts",
            "tti_te",
            "ltis",
            "vertex_count",
            "vertices",
            "edge_count",
            "x_value",
            "qualifying",
        ])
        .map_err(Failure::io)?;
        let join = |ws: &[[i64; 2]]| {
            ws.iter()
                .map(|[a, b]| format!("[{a},{b}]"))
                .collect::<Vec<_>>()
                .join(";")
        };
        for z in &self.zones {
            let qualifying = if z.whole_zone {
                "whole_zone".to_owned()
            } else {
                z.qualifying.as_deref().map(join).unwrap_or_default()
            };
            w.write_record([
                z.tti[0].to_string(),
                z.tti[1].to_string(),
                z.ltis.as_deref().map(join).unwrap_or_default(),
                z.vertices.len().to_string(),
                z.vertices.join(" "),
                z.edge_count.to_string(),
                z.x_value.as_ref().map(|v| v.exact.clone()).unwrap_or_default(),
                qualifying,
            ])
            .map_err(Failure::io)?;
        }
        w.flush().map_err(Failure::io)
    }
}
