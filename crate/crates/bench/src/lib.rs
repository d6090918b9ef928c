//! Shared fixtures for the criterion benches.

use txc_core::{
    generate_synthetic, MeasureRegistry, QueryMode, QuerySpec, SyntheticModel, SyntheticSpec,
    TemporalGraph, TimeInterval,
};

/// Planted-community graph with a fixed seed.
pub fn planted(vertices: usize, edges: usize, timestamps: i64, seed: u64) -> TemporalGraph {
    generate_synthetic(&SyntheticSpec {
        vertices,
        edges,
        timestamps,
        model: SyntheticModel::PlantedCommunity,
        seed,
    })
    .expect("valid synthetic spec")
}

/// The default benchmark instance: 1000 vertices, 20000 edges, 100 timestamps.
pub fn default_graph() -> TemporalGraph {
    planted(1000, 20_000, 100, 42)
}

pub fn full_window(g: &TemporalGraph) -> TimeInterval {
    g.time_range().expect("non-empty graph")
}

/// Window of `span` (te - ts) starting at the first timestamp.
pub fn window(g: &TemporalGraph, span: i64) -> TimeInterval {
    let r = full_window(g);
    TimeInterval::new(r.ts(), (r.ts() + span).min(r.te())).expect("ordered bounds")
}

pub fn optimize_spec(k: usize, window: TimeInterval, measure: &str) -> QuerySpec {
    QuerySpec {
        k,
        window,
        measure: Some(MeasureRegistry::builtin().get(measure).expect("builtin measure")),
        mode: QueryMode::Optimize,
        threads: 1,
    }
}
