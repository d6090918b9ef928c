use std::path::PathBuf;
use std::time::Instant;

use anyhow::anyhow;
use clap::Args;
use serde::Serialize;
use txc_core::TimeInterval;

use crate::query::{build_spec, run_algorithm, Algorithm, MeasureArgs, Outcome};
use crate::source::GraphArgs;
use crate::{finish, open_output, CmdResult, Failure};

/// One CSV row: one algorithm on one query.
#[derive(Debug, Serialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub query_id: String,
    pub k: usize,
    pub span: i64,
    /// Fastest repetition, engine call only.
    pub wall_ms: f64,
    pub cells_total: u64,
    pub cells_visited: u64,
    pub cells_pruned: u64,
    pub pruned_pct: f64,
    pub por: u64,
    pub pou: u64,
    pub pol: u64,
    pub rule4: u64,
    pub x_evaluations: u64,
    pub distinct_cores: usize,
    pub zone_count: Option<usize>,
    pub lti_count: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BenchCmd {
    #[command(flatten)]
    graph: GraphArgs,
    /// Comma-separated k values.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3])]
    k: Vec<usize>,
    /// Comma-separated window spans (te - ts), each anchored at the first
    /// timestamp; defaults to the whole range.
    #[arg(long, value_delimiter = ',')]
    span: Vec<i64>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Comma-separated: tcd, otcd, otcd-star, tcd-star, oracle.
    #[arg(long, value_delimiter = ',', value_enum, default_values = ["tcd", "otcd", "otcd-star"])]
    algorithms: Vec<Algorithm>,
    #[command(flatten)]
    measure: MeasureArgs,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn record(algo: Algorithm, query_id: &str, k: usize, span: i64, wall_ms: f64, o: &Outcome) -> BenchRecord {
    let (stats, x_evaluations, distinct, zones, ltis) = match o {
        Outcome::Catalog { catalog, .. } => (catalog.stats.clone(), 0, catalog.len(), None, None),
        Outcome::Query(r) => (
            r.stats.prune.clone(),
            r.stats.x_evaluations,
            r.stats.zone_count,
            Some(r.stats.zone_count),
            Some(r.stats.lti_count),
        ),
    };
    BenchRecord {
        algorithm: algo.name().to_owned(),
        query_id: query_id.to_owned(),
        k,
        span,
        wall_ms,
        cells_total: stats.cells_total,
        cells_visited: stats.cells_visited,
        cells_pruned: stats.cells_pruned,
        pruned_pct: stats.pct(stats.cells_pruned),
        por: stats.triggers.por,
        pou: stats.triggers.pou,
        pol: stats.triggers.pol,
        rule4: stats.triggers.rule4,
        x_evaluations,
        distinct_cores: distinct,
        zone_count: zones,
        lti_count: ltis,
    }
}

impl BenchCmd {
    pub fn run(self) -> CmdResult {
        if self.reps == 0 {
            return Err(Failure::usage(anyhow!("--reps must be at least 1")));
        }
        let g = self.graph.load()?;
        let Some(range) = g.time_range() else {
            return Err(Failure::usage(anyhow!("graph has no edges")));
        };
        let spans = if self.span.is_empty() {
            vec![range.span()]
        } else {
            self.span.clone()
        };
        let mut out = open_output(self.output.as_deref())?;
        {
            let mut w = csv::Writer::from_writer(&mut out);
            for &k in &self.k {
                for &span in &spans {
                    if span < 0 {
                        return Err(Failure::usage(anyhow!("span must be non-negative")));
                    }
                    let window = TimeInterval::new(range.ts(), range.ts() + span)
                        .map_err(Failure::usage)?;
                    let spec = build_spec(k, window, &self.measure)?;
                    let query_id = format!("k{k}-span{span}");
                    for &algo in &self.algorithms {
                        let mut best = f64::INFINITY;
                        let mut last = None;
                        for _ in 0..self.reps {
                            let started = Instant::now();
                            let o = run_algorithm(&g, &spec, algo)?;
                            best = best.min(started.elapsed().as_secs_f64() * 1e3);
                            last = Some(o);
                        }
                        let o = last.expect("at least one repetition");
                        w.serialize(record(algo, &query_id, k, span, best, &o))
                            .map_err(Failure::io)?;
                    }
                }
            }
            w.flush().map_err(Failure::io)?;
        }
        finish(out, self.output.as_ref())
    }
}
