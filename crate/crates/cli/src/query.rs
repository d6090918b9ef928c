use std::path::PathBuf;
use std::time::Instant;

use anyhow::anyhow;
use clap::{Args, ValueEnum};
use txc_core::measures::periodicity_with_gap;
use txc_core::oracle::{brute_force_txcq, check_caps};
use txc_core::{
    run_otcd, run_tcd, run_tcd_star, run_txcq, Better, CoreCatalog, MeasureDescriptor,
    MeasureRegistry, MeasureValue, QueryMode, QueryResult, QuerySpec, TcqOptions, TemporalGraph,
    TimeInterval,
};

use crate::report::{Format, Report};
use crate::source::GraphArgs;
use crate::{finish, open_output, threads_from_env, CmdResult, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Baseline: decompose every subinterval.
    Tcd,
    /// TTI-pruned enumeration.
    Otcd,
    /// Zone location followed by local search.
    OtcdStar,
    /// Enumeration with X evaluated on every subinterval.
    TcdStar,
    /// Brute force; small inputs only.
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Tcd => "tcd",
            Algorithm::Otcd => "otcd",
            Algorithm::OtcdStar => "otcd-star",
            Algorithm::TcdStar => "tcd-star",
            Algorithm::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Enumerate,
    Optimize,
    Constrain,
}

#[derive(Args, Clone, Debug)]
pub struct MeasureArgs {
    /// size, frequency, time_span, persistence, periodicity, growth_rate,
    /// burstiness or engagement.
    #[arg(long)]
    pub measure: Option<String>,
    /// Defaults to optimize with a measure, enumerate without.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Threshold for constrain: integer, `a/b` or decimal.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<MeasureValue>,
    /// Override the measure's preferred direction (higher or lower).
    #[arg(long)]
    pub better: Option<Better>,
    /// Gap parameter of periodicity.
    #[arg(long)]
    pub gap: Option<i64>,
}

impl MeasureArgs {
    pub fn descriptor(&self) -> Result<Option<MeasureDescriptor>, Failure> {
        let Some(id) = &self.measure else {
            if self.better.is_some() || self.gap.is_some() {
                return Err(Failure::usage(anyhow!("--better and --gap need --measure")));
            }
            return Ok(None);
        };
        let mut m = MeasureRegistry::builtin()
            .get(id)
            .map_err(Failure::usage)?;
        if let Some(p) = self.gap {
            if m.id() != "periodicity" {
                return Err(Failure::usage(anyhow!("--gap only applies to periodicity")));
            }
            m = periodicity_with_gap(MeasureValue::int(p));
        }
        if let Some(b) = self.better {
            m = m.with_better(b);
        }
        Ok(Some(m))
    }

    pub fn mode(&self) -> Result<QueryMode, Failure> {
        let mode = self.mode.unwrap_or(if self.measure.is_some() {
            ModeArg::Optimize
        } else {
            ModeArg::Enumerate
        });
        match (mode, self.sigma) {
            (ModeArg::Constrain, Some(s)) => Ok(QueryMode::Constrain(s)),
            (ModeArg::Constrain, None) => Err(Failure::usage(anyhow!("constrain needs --sigma"))),
            (_, Some(_)) => Err(Failure::usage(anyhow!("--sigma only applies to constrain"))),
            (ModeArg::Enumerate, None) if self.measure.is_some() => Err(Failure::usage(anyhow!(
                "enumerate takes no measure; use optimize or constrain"
            ))),
            (ModeArg::Enumerate, None) => Ok(QueryMode::Enumerate),
            (ModeArg::Optimize, None) => Ok(QueryMode::Optimize),
        }
    }
}

/// The query window; missing bounds default to the graph's time range.
pub fn window(g: &TemporalGraph, ts: Option<i64>, te: Option<i64>) -> Result<TimeInterval, Failure> {
    let range = g.time_range();
    let ts = ts.or(range.map(|r| r.ts())).unwrap_or(0);
    let te = te.or(range.map(|r| r.te())).unwrap_or(0);
    TimeInterval::new(ts, te).map_err(Failure::usage)
}

pub fn build_spec(
    k: usize,
    window: TimeInterval,
    m: &MeasureArgs,
) -> Result<QuerySpec, Failure> {
    if k == 0 {
        return Err(Failure::usage(anyhow!("--k must be at least 1")));
    }
    let measure = m.descriptor()?;
    let mode = m.mode()?;
    if measure.is_none() && mode != QueryMode::Enumerate {
        return Err(Failure::usage(anyhow!("{} needs --measure", mode.name())));
    }
    Ok(QuerySpec {
        k,
        window,
        measure,
        mode,
        threads: threads_from_env()?,
    })
}

/// What an engine produced.
pub enum Outcome {
    /// Distinct cores only (TCD, OTCD).
    Catalog { catalog: CoreCatalog, wall_ms: f64 },
    Query(QueryResult),
}

impl Outcome {
    pub fn zone_count(&self) -> usize {
        match self {
            Outcome::Catalog { catalog, .. } => catalog.len(),
            Outcome::Query(r) => r.stats.zone_count,
        }
    }
}

pub fn default_algorithm(spec: &QuerySpec) -> Algorithm {
    match spec.mode {
        QueryMode::Enumerate => Algorithm::Otcd,
        _ => Algorithm::OtcdStar,
    }
}

pub fn run_algorithm(g: &TemporalGraph, spec: &QuerySpec, algo: Algorithm) -> Result<Outcome, Failure> {
    let opts = TcqOptions::default();
    match algo {
        Algorithm::Tcd | Algorithm::Otcd => {
            if spec.mode != QueryMode::Enumerate {
                return Err(Failure::usage(anyhow!(
                    "{} only enumerates cores; use otcd-star or tcd-star for {}",
                    algo.name(),
                    spec.mode.name()
                )));
            }
            let started = Instant::now();
            let catalog = if algo == Algorithm::Tcd {
                run_tcd(g, spec.k, spec.window, &opts)?
            } else {
                run_otcd(g, spec.k, spec.window, &opts)?
            };
            let wall_ms = started.elapsed().as_secs_f64() * 1e3;
            Ok(Outcome::Catalog { catalog, wall_ms })
        }
        Algorithm::OtcdStar => Ok(Outcome::Query(run_txcq(g, spec)?)),
        Algorithm::TcdStar => Ok(Outcome::Query(run_tcd_star(g, spec)?)),
        Algorithm::Oracle => {
            check_caps(g, spec.window)?;
            Ok(Outcome::Query(brute_force_txcq(g, spec)?))
        }
    }
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub k: usize,
    /// Window start; defaults to the first timestamp.
    #[arg(long, allow_hyphen_values = true)]
    pub ts: Option<i64>,
    /// Window end; defaults to the last timestamp.
    #[arg(long, allow_hyphen_values = true)]
    pub te: Option<i64>,
    #[command(flatten)]
    pub measure: MeasureArgs,
    /// Defaults to otcd for enumerate and otcd-star otherwise.
    #[arg(long, value_enum)]
    pub algorithm: Option<Algorithm>,
}

impl QueryArgs {
    pub fn prepare(&self) -> Result<(TemporalGraph, QuerySpec, Algorithm), Failure> {
        let g = self.graph.load()?;
        let w = window(&g, self.ts, self.te)?;
        let spec = build_spec(self.k, w, &self.measure)?;
        let algo = self.algorithm.unwrap_or_else(|| default_algorithm(&spec));
        Ok((g, spec, algo))
    }
}

#[derive(Args, Debug)]
pub struct QueryCmd {
    #[command(flatten)]
    args: QueryArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Defaults to stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Report zero timings so repeated runs are byte-identical.
    #[arg(long)]
    omit_timing: bool,
}

impl QueryCmd {
    pub fn run(self) -> CmdResult {
        let (g, spec, algo) = self.args.prepare()?;
        let outcome = run_algorithm(&g, &spec, algo)?;
        let mut report = Report::new(&g, &spec, algo, &outcome);
        if self.omit_timing {
            report.clear_timing();
        }
        let mut out = open_output(self.output.as_deref())?;
        report.write(self.format, &mut out)?;
        finish(out, self.output.as_ref())
    }
}
