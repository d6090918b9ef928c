use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use txc_core::{
    generate_synthetic, read_edge_list_file, write_edge_list, Normalization, ParseOptions,
    SyntheticModel, SyntheticSpec, TemporalGraph,
};

use crate::{finish, open_output, CmdResult, Failure};

#[derive(Args, Clone, Debug)]
pub struct SyntheticArgs {
    #[arg(long, default_value_t = 1000)]
    pub vertices: usize,
    #[arg(long, default_value_t = 20_000)]
    pub edges: usize,
    #[arg(long, default_value_t = 100)]
    pub timestamps: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SyntheticArgs {
    fn spec(&self, model: SyntheticModel) -> SyntheticSpec {
        SyntheticSpec {
            vertices: self.vertices,
            edges: self.edges,
            timestamps: self.timestamps,
            model,
            seed: self.seed,
        }
    }
}

/// Where the graph comes from: an edge-list file or the synthetic generator.
#[derive(Args, Clone, Debug)]
pub struct GraphArgs {
    /// SNAP-style `src dst t` edge list; `.gz` is decompressed.
    #[arg(long, conflicts_with = "synthetic")]
    pub input: Option<PathBuf>,
    /// Generate instead: uniform, preferential or planted-community.
    #[arg(long, value_name = "MODEL")]
    pub synthetic: Option<SyntheticModel>,
    #[command(flatten)]
    pub params: SyntheticArgs,
    /// Zero-based column holding the timestamp.
    #[arg(long, default_value_t = 2)]
    pub time_field: usize,
    /// Timestamp normalization applied after loading: `rank` or `bucket:W`.
    #[arg(long)]
    pub granularity: Option<Normalization>,
}

impl GraphArgs {
    pub fn load(&self) -> Result<TemporalGraph, Failure> {
        let g = match (&self.input, self.synthetic) {
            (Some(path), _) => {
                let opts = ParseOptions {
                    time_field: self.time_field,
                    ..ParseOptions::default()
                };
                let parsed = read_edge_list_file(path, &opts).map_err(|e| {
                    Failure::io(anyhow!("reading {}: {e}", path.display()))
                })?;
                if parsed.self_loops > 0 {
                    eprintln!("txc: dropped {} self-loop lines", parsed.self_loops);
                }
                parsed.graph
            }
            (None, Some(model)) => generate_synthetic(&self.params.spec(model))?,
            (None, None) => {
                return Err(Failure::usage(anyhow!(
                    "one of --input or --synthetic is required"
                )))
            }
        };
        match self.granularity {
            Some(mode) => Ok(g.normalize(mode)?),
            None => Ok(g),
        }
    }
}

#[derive(Args, Debug)]
pub struct GenCmd {
    #[arg(long, default_value = "planted-community")]
    model: SyntheticModel,
    #[command(flatten)]
    params: SyntheticArgs,
    /// Defaults to stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl GenCmd {
    pub fn run(self) -> CmdResult {
        let g = generate_synthetic(&self.params.spec(self.model))?;
        let mut out = open_output(self.output.as_deref())?;
        write_edge_list(&g, &mut out).map_err(Failure::io)?;
        finish(out, self.output.as_ref())
    }
}

#[derive(Args, Debug)]
pub struct NormalizeCmd {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    time_field: usize,
    /// `rank` or `bucket:W`.
    #[arg(long)]
    granularity: Normalization,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl NormalizeCmd {
    pub fn run(self) -> CmdResult {
        let args = GraphArgs {
            input: Some(self.input),
            synthetic: None,
            params: SyntheticArgs {
                vertices: 0,
                edges: 0,
                timestamps: 0,
                seed: 0,
            },
            time_field: self.time_field,
            granularity: Some(self.granularity),
        };
        let g = args.load()?;
        let mut out = open_output(self.output.as_deref())?;
        write_edge_list(&g, &mut out).map_err(Failure::io)?;
        finish(out, self.output.as_ref())
    }
}
