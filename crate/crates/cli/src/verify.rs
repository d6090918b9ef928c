use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use anyhow::anyhow;
use clap::Args;
use txc_core::oracle::{brute_force_txcq, check_caps};
use txc_core::{Answer, QueryResult, TemporalEdge, TimeInterval};

use crate::query::{run_algorithm, Algorithm, Outcome, QueryArgs};
use crate::{CmdResult, Failure, EXIT_MISMATCH};

#[derive(Args, Debug)]
pub struct VerifyCmd {
    #[command(flatten)]
    args: QueryArgs,
    /// Corrupts the engine result before comparing.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

struct ZoneView {
    ltis: Option<BTreeSet<TimeInterval>>,
    edges: Vec<TemporalEdge>,
}

/// Engine-independent form of a result.
struct View {
    answer: Answer,
    zones: BTreeMap<TimeInterval, ZoneView>,
}

impl View {
    fn of_result(r: &QueryResult) -> Self {
        let zones = r
            .entries
            .iter()
            .map(|e| {
                let z = &e.zone;
                let view = ZoneView {
                    ltis: Some(z.ltis.iter().copied().collect()),
                    edges: z.core.edges().to_vec(),
                };
                (z.tti, view)
            })
            .collect();
        View {
            answer: r.answer(),
            zones,
        }
    }

    fn of_outcome(o: &Outcome) -> Self {
        match o {
            Outcome::Query(r) => View::of_result(r),
            Outcome::Catalog { catalog, .. } => View {
                answer: Answer::Zones(catalog.keys().collect()),
                zones: catalog
                    .iter()
                    .map(|(tti, core)| {
                        let view = ZoneView {
                            ltis: None,
                            edges: core.edges().to_vec(),
                        };
                        (*tti, view)
                    })
                    .collect(),
            },
        }
    }

    fn corrupt(&mut self) {
        let Some((&tti, _)) = self.zones.iter().next_back() else { return };
        self.zones.remove(&tti);
        match &mut self.answer {
            Answer::Zones(set) | Answer::Optimum { zones: set, .. } => {
                set.remove(&tti);
            }
            Answer::Qualifying(set) => {
                set.pop_last();
            }
        }
    }
}

fn set_diff<T: Ord + Copy + Debug>(engine: &BTreeSet<T>, oracle: &BTreeSet<T>) -> String {
    let extra: Vec<_> = engine.difference(oracle).copied().collect();
    let missing: Vec<_> = oracle.difference(engine).copied().collect();
    format!("engine-only {extra:?}, oracle-only {missing:?}")
}

/// First divergence between the two views, if any.
fn first_divergence(engine: &View, oracle: &View) -> Option<String> {
    if engine.answer != oracle.answer {
        let detail = match (&engine.answer, &oracle.answer) {
            (Answer::Zones(a), Answer::Zones(b)) | (Answer::Qualifying(a), Answer::Qualifying(b)) => {
                set_diff(a, b)
            }
            (
                Answer::Optimum { value: va, zones: a },
                Answer::Optimum { value: vb, zones: b },
            ) => format!("optimum {va:?} vs {vb:?}; {}", set_diff(a, b)),
            (a, b) => format!("{a:?} vs {b:?}"),
        };
        return Some(format!("answers differ: {detail}"));
    }
    for (tti, e) in &engine.zones {
        let Some(o) = oracle.zones.get(tti) else {
            return Some(format!("zone {tti:?} is not an oracle zone"));
        };
        if let (Some(a), Some(b)) = (&e.ltis, &o.ltis) {
            if a != b {
                return Some(format!("zone {tti:?}: LTIs differ: {}", set_diff(a, b)));
            }
        }
        if e.edges != o.edges {
            return Some(format!(
                "zone {tti:?}: core differs ({} edges vs {})",
                e.edges.len(),
                o.edges.len()
            ));
        }
    }
    None
}

impl VerifyCmd {
    pub fn run(self) -> CmdResult {
        let (g, spec, algo) = self.args.prepare()?;
        if algo == Algorithm::Oracle {
            return Err(Failure::usage(anyhow!("pick an engine other than the oracle")));
        }
        check_caps(&g, spec.window)?;
        let engine = run_algorithm(&g, &spec, algo)?;
        let oracle = brute_force_txcq(&g, &spec)?;
        let mut ev = View::of_outcome(&engine);
        if self.inject_fault {
            ev.corrupt();
        }
        let ov = View::of_result(&oracle);
        match first_divergence(&ev, &ov) {
            None => {
                println!(
                    "ok: {} matches the oracle on {} ({} zones)",
                    algo.name(),
                    spec.mode.name(),
                    engine.zone_count()
                );
                Ok(())
            }
            Some(d) => Err(Failure {
                code: EXIT_MISMATCH,
                error: anyhow!("mismatch: {} vs oracle: {d}", algo.name()),
            }),
        }
    }
}
