#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use txc_core::measures;
use txc_core::{MeasureDescriptor, TemporalGraph, TimeInterval, VertexId};

pub fn iv(ts: i64, te: i64) -> TimeInterval {
    TimeInterval::new(ts, te).unwrap()
}

pub fn g0() -> TemporalGraph {
    TemporalGraph::from_labeled([
        ("a", "b", 1),
        ("b", "c", 2),
        ("a", "c", 3),
        ("c", "d", 4),
        ("a", "b", 5),
    ])
    .unwrap()
}

pub fn v(g: &TemporalGraph, label: &str) -> VertexId {
    g.vertex_id(label).unwrap()
}

/// Small random multigraph: up to 40 vertices, 300 edges, 25 timestamps.
/// About half the edges fall inside a few dense groups that are active in
/// short time windows, so k-cores for k up to 4 show up regularly.
pub fn random_graph(seed: u64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(4..=40u32);
    let horizon = rng.gen_range(3..=25i64);
    let m = rng.gen_range(n as usize..=300);
    let mut ids: Vec<u32> = (0..n).collect();
    ids.shuffle(&mut rng);
    let groups: Vec<(Vec<u32>, i64, i64)> = ids
        .chunks(rng.gen_range(3..=7usize))
        .map(|c| {
            let a = rng.gen_range(1..=horizon);
            let b = (a + rng.gen_range(0..=4)).min(horizon);
            (c.to_vec(), a, b)
        })
        .filter(|(c, _, _)| c.len() >= 2)
        .collect();
    let mut triples = Vec::with_capacity(m);
    while triples.len() < m {
        let (u, w, t) = if !groups.is_empty() && rng.gen_bool(0.5) {
            let (c, a, b) = &groups[rng.gen_range(0..groups.len())];
            let u = c[rng.gen_range(0..c.len())];
            let w = c[rng.gen_range(0..c.len())];
            (u, w, rng.gen_range(*a..=*b))
        } else {
            (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(1..=horizon))
        };
        if u != w {
            triples.push((u, w, t));
        }
    }
    TemporalGraph::from_triples(n as usize, triples).unwrap()
}

/// Either the full range or a random subwindow of it.
pub fn random_window(g: &TemporalGraph, seed: u64) -> TimeInterval {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let r = g.time_range().unwrap();
    if rng.gen_bool(0.5) {
        return r;
    }
    let a = rng.gen_range(r.ts()..=r.te());
    let b = rng.gen_range(a..=r.te());
    iv(a, b)
}

pub fn insensitive_builtins() -> Vec<MeasureDescriptor> {
    vec![
        measures::size(),
        measures::frequency(),
        measures::time_span(),
        measures::persistence(),
        measures::periodicity(),
    ]
}

pub fn monotonic_builtins() -> Vec<MeasureDescriptor> {
    vec![
        measures::growth_rate(),
        measures::burstiness(),
        measures::engagement(),
    ]
}
