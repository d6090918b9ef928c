mod common;

use std::sync::Arc;

use common::{g0, iv, v};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use txc_core::measures::{self, audit_sensitivity};
use txc_core::oracle::{brute_force_txcq, reference_core};
use txc_core::txcq::{ti_ls, tmc_ls, tmo_ls};
use txc_core::{
    run_otcd_star, run_tcd_star, run_txcq, Answer, Better, CoreSnapshot, Direction, EvalContext,
    MeasureDescriptor, MeasureRegistry, MeasureValue, QuerySpec, Qualifying, Sensitivity,
    TcqOptions, TemporalEdge, TemporalGraph, VertexId, ZoneRecord,
};

fn zones_g0() -> Vec<ZoneRecord> {
    run_otcd_star(&g0(), 2, iv(1, 5), &TcqOptions::default())
        .unwrap()
        .zones
}

fn zone(zs: &[ZoneRecord], a: i64, b: i64) -> &ZoneRecord {
    zs.iter().find(|z| z.tti == iv(a, b)).unwrap()
}

fn ttis(a: &Answer) -> Vec<(i64, i64)> {
    let set = match a {
        Answer::Zones(s) | Answer::Qualifying(s) => s,
        Answer::Optimum { zones, .. } => zones,
    };
    set.iter().map(|w| (w.ts(), w.te())).collect()
}

fn ratio(n: i64, d: i64) -> MeasureValue {
    MeasureValue::ratio(n, d)
}

#[test]
fn measure_values_on_g0() {
    let g = g0();
    let zs = zones_g0();
    let ctx = EvalContext::new(&g).with_zones(&zs);
    let tri = zone(&zs, 1, 3);
    let full = zone(&zs, 1, 5);
    let eval = |m: MeasureDescriptor, z: &ZoneRecord, w| m.eval(&z.core, w, &ctx.in_zone(z)).unwrap();

    assert_eq!(eval(measures::size(), full, iv(1, 5)), MeasureValue::int(3));
    assert_eq!(eval(measures::frequency(), full, iv(1, 5)), MeasureValue::int(1));
    assert_eq!(eval(measures::time_span(), tri, iv(1, 3)), MeasureValue::int(2));
    assert_eq!(eval(measures::persistence(), tri, iv(1, 3)), MeasureValue::int(1));
    assert_eq!(eval(measures::periodicity(), tri, iv(1, 3)), MeasureValue::int(1));
    assert_eq!(eval(measures::growth_rate(), tri, iv(1, 3)), MeasureValue::int(1));
    assert_eq!(eval(measures::growth_rate(), tri, iv(1, 4)), ratio(3, 4));
    assert_eq!(eval(measures::burstiness(), tri, iv(1, 3)), MeasureValue::int(2));
    assert_eq!(eval(measures::burstiness(), tri, iv(1, 4)), ratio(3, 2));
    assert_eq!(eval(measures::engagement(), tri, iv(1, 3)), MeasureValue::int(1));
    assert_eq!(eval(measures::engagement(), tri, iv(1, 4)), ratio(2, 3));
    assert_eq!(eval(measures::engagement(), full, iv(1, 5)), ratio(2, 3));
    assert_eq!(eval(measures::engagement(), zone(&zs, 2, 5), iv(2, 5)), ratio(2, 3));
}

#[test]
fn single_timestamp_triangle_burstiness() {
    let g = TemporalGraph::from_triples(3, [(0, 1, 7), (1, 2, 7), (0, 2, 7)]).unwrap();
    let core = reference_core(&g, 2, iv(7, 7));
    let ctx = EvalContext::new(&g);
    assert_eq!(
        measures::burstiness().eval(&core, iv(7, 7), &ctx).unwrap(),
        MeasureValue::int(6)
    );
    assert_eq!(measures::time_span().eval(&core, iv(7, 7), &ctx).unwrap(), MeasureValue::int(0));
}

#[test]
fn enumerate_g0() {
    let r = run_txcq(&g0(), &QuerySpec::enumerate(2, iv(1, 5))).unwrap();
    assert_eq!(ttis(&r.answer()), vec![(1, 3), (1, 5), (2, 5)]);
    assert_eq!(r.stats.algorithm, "otcd-star");
    let r = run_txcq(&g0(), &QuerySpec::enumerate(3, iv(1, 5))).unwrap();
    assert!(r.entries.is_empty());
}

#[test]
fn ti_ls_minimize_time_span() {
    let g = g0();
    let zs = zones_g0();
    let ctx = EvalContext::new(&g).with_zones(&zs);
    let m = measures::time_span().with_better(Better::Lower);
    let out = ti_ls(&zs, &QuerySpec::optimize(2, iv(1, 5), m), &ctx).unwrap();
    assert_eq!(out.entries.len(), 1);
    assert_eq!(out.entries[0].zone.tti, iv(1, 3));
    assert_eq!(out.entries[0].x_value, Some(MeasureValue::int(2)));
    assert_eq!(out.x_evaluations, 3);

    let m = measures::size().with_better(Better::Lower);
    let out = ti_ls(&zs, &QuerySpec::optimize(2, iv(1, 5), m), &ctx).unwrap();
    assert_eq!(out.entries.len(), 3);

    let out = ti_ls(&[], &QuerySpec::optimize(2, iv(1, 5), measures::size()), &ctx).unwrap();
    assert!(out.entries.is_empty());

    let err = ti_ls(&zs, &QuerySpec::optimize(2, iv(1, 5), measures::engagement()), &ctx);
    assert!(err.is_err());
}

#[test]
fn tmo_ls_engagement_and_burstiness() {
    let g = g0();
    let zs = zones_g0();
    let ctx = EvalContext::new(&g).with_zones(&zs);
    let out = tmo_ls(&zs, &QuerySpec::optimize(2, iv(1, 5), measures::engagement()), &ctx).unwrap();
    assert_eq!(out.entries.len(), 1);
    assert_eq!(out.entries[0].qualifying, Qualifying::Intervals(vec![iv(1, 3)]));
    assert_eq!(out.entries[0].x_value, Some(MeasureValue::int(1)));
    assert_eq!(out.x_evaluations, 3);

    let out = tmo_ls(&zs, &QuerySpec::optimize(2, iv(1, 5), measures::burstiness()), &ctx).unwrap();
    assert_eq!(out.entries[0].qualifying, Qualifying::Intervals(vec![iv(1, 3)]));
    assert_eq!(out.entries[0].x_value, Some(MeasureValue::int(2)));

    let err = tmo_ls(&zs, &QuerySpec::optimize(2, iv(1, 5), measures::size()), &ctx);
    assert!(err.is_err());
}

#[test]
fn tmo_ls_expand_improving_evaluates_ltis_only() {
    let g = g0();
    let zs = zones_g0();
    let ctx = EvalContext::new(&g).with_zones(&zs);
    let m = measures::growth_rate().with_better(Better::Lower);
    assert_eq!(m.sensitivity(), Sensitivity::Monotonic(Direction::ImprovesOnExpand));
    let single = &zs[..1];
    let out = tmo_ls(single, &QuerySpec::optimize(2, iv(1, 5), m.clone()), &ctx).unwrap();
    assert!(out.x_evaluations <= single[0].ltis.len() as u64);
    assert_eq!(out.entries[0].qualifying, Qualifying::Intervals(vec![iv(1, 4)]));
    assert_eq!(out.entries[0].x_value, Some(ratio(3, 4)));
}

#[test]
fn tmc_ls_engagement_threshold() {
    let g = g0();
    let zs = zones_g0();
    let ctx = EvalContext::new(&g).with_zones(&zs);
    let tri = zone(&zs, 1, 3);
    let (hits, stats) = tmc_ls(tri, &measures::engagement(), ratio(7, 10), &ctx).unwrap();
    assert_eq!(hits, vec![iv(1, 3)]);
    assert!(stats.evaluations <= stats.rows_plus_cols);

    // A threshold every member clears: one evaluation per column.
    let (hits, stats) = tmc_ls(tri, &measures::engagement(), MeasureValue::int(0), &ctx).unwrap();
    assert_eq!(hits, vec![iv(1, 3), iv(1, 4)]);
    assert_eq!(stats.evaluations, 2);
}

#[test]
fn constrain_engagement_end_to_end() {
    let g = g0();
    let spec = QuerySpec::constrain(2, iv(1, 5), measures::engagement(), ratio(7, 10));
    let fast = run_txcq(&g, &spec).unwrap();
    assert_eq!(fast.stats.algorithm, "otcd-star+tmc-ls");
    assert_eq!(ttis(&fast.answer()), vec![(1, 3)]);

    let star = run_tcd_star(&g, &spec).unwrap();
    assert_eq!(star.answer(), fast.answer());
    assert_eq!(star.stats.x_evaluations, 4);

    let oracle = brute_force_txcq(&g, &spec).unwrap();
    assert_eq!(oracle.answer(), fast.answer());
}

#[test]
fn nonmonotonic_udf_falls_back() {
    let g = g0();
    // Distance of the window midpoint from 3: no monotonic structure.
    let wobble = MeasureDescriptor::new("wobble", Sensitivity::Nonmonotonic, Better::Lower, |_, w, _| {
        Ok(MeasureValue::int((w.ts() + w.te() - 6).abs()))
    });
    for spec in [
        QuerySpec::optimize(2, iv(1, 5), wobble.clone()),
        QuerySpec::constrain(2, iv(1, 5), wobble.clone(), MeasureValue::int(1)),
    ] {
        let r = run_txcq(&g, &spec).unwrap();
        assert_eq!(r.stats.algorithm, "tcd-star");
        assert!(r.stats.exhaustive);
        assert_eq!(r.answer(), brute_force_txcq(&g, &spec).unwrap().answer());
    }
}

#[test]
fn constant_udf_ties_every_zone() {
    let mut reg = MeasureRegistry::builtin();
    let zero = MeasureDescriptor::new("zero", Sensitivity::Insensitive, Better::Higher, |_, _, _| {
        Ok(MeasureValue::int(0))
    });
    reg.register_udf(zero).unwrap();
    let spec = QuerySpec::optimize(2, iv(1, 5), reg.get("zero").unwrap());
    let r = run_txcq(&g0(), &spec).unwrap();
    assert_eq!(r.stats.algorithm, "otcd-star+ti-ls");
    assert_eq!(r.entries.len(), 3);
    let oracle = brute_force_txcq(&g0(), &spec).unwrap();
    assert_eq!(oracle.answer(), r.answer());
}

#[test]
fn mislabeled_udf_is_flagged() {
    // Duration grows with the interval, yet is declared to improve on shrink.
    let liar = MeasureDescriptor::new(
        "liar",
        Sensitivity::Monotonic(Direction::ImprovesOnShrink),
        Better::Higher,
        |_, w, _| Ok(MeasureValue::int(w.duration())),
    );
    let spaced: Vec<_> = common::random_graph(11)
        .edges()
        .iter()
        .map(|e| (e.src.0, e.dst.0, e.t * 3))
        .collect();
    let g = TemporalGraph::from_triples(common::random_graph(11).vertex_count(), spaced).unwrap();
    let zs = run_otcd_star(&g, 2, g.time_range().unwrap(), &TcqOptions::default())
        .unwrap()
        .zones;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let report = audit_sensitivity(&liar, &g, &zs, 200, &mut rng).unwrap();
    assert!(report.checked > 0);
    assert!(!report.violations.is_empty());
    let honest = audit_sensitivity(&measures::growth_rate(), &g, &zs, 200, &mut rng).unwrap();
    assert!(honest.violations.is_empty());
}

/// Zone with TTI [4,5] and LTIs [1,6], [2,7], [3,8]: a staircase of three
/// rectangles.
fn staircase() -> ZoneRecord {
    let e = |t| TemporalEdge::new(VertexId(0), VertexId(1), t);
    let core = Arc::new(CoreSnapshot::from_edges(1, vec![e(4), e(5)]));
    ZoneRecord::new(core, vec![iv(1, 6), iv(2, 7), iv(3, 8)])
}

#[test]
fn staircase_zone_membership() {
    let z = staircase();
    assert!(z.contains(iv(2, 6)));
    assert!(!z.contains(iv(1, 8)));
    assert!(z.contains(z.tti));
}

#[test]
fn tmc_walk_follows_the_boundary() {
    let z = staircase();
    let g = TemporalGraph::from_triples(2, [(0, 1, 4), (0, 1, 5)]).unwrap();
    let ctx = EvalContext::new(&g);
    // Qualifies iff the duration is at most 4.
    let short = MeasureDescriptor::new(
        "short",
        Sensitivity::Monotonic(Direction::ImprovesOnShrink),
        Better::Higher,
        |_, w, _| Ok(MeasureValue::int(-w.duration())),
    );
    let sigma = MeasureValue::int(-4);
    let (hits, stats) = tmc_ls(&z, &short, sigma, &ctx).unwrap();
    let expected: Vec<_> = z.members().into_iter().filter(|w| w.duration() <= 4).collect();
    let mut expected = expected;
    expected.sort();
    assert_eq!(hits, expected);
    assert!(stats.evaluations <= stats.rows_plus_cols);
    assert!(stats.evaluations < z.member_count());

    // Same boundary seen from the other side.
    let long = MeasureDescriptor::new(
        "long",
        Sensitivity::Monotonic(Direction::ImprovesOnExpand),
        Better::Higher,
        |_, w, _| Ok(MeasureValue::int(w.duration())),
    );
    let (hits, stats) = tmc_ls(&z, &long, MeasureValue::int(5), &ctx).unwrap();
    let mut expected: Vec<_> = z.members().into_iter().filter(|w| w.duration() >= 5).collect();
    expected.sort();
    assert_eq!(hits, expected);
    assert!(stats.evaluations <= stats.rows_plus_cols);
}

#[test]
fn persistence_on_staircase() {
    let z = staircase();
    let g = TemporalGraph::from_triples(2, [(0, 1, 4), (0, 1, 5)]).unwrap();
    let ctx = EvalContext::new(&g).in_zone(&z);
    assert_eq!(
        measures::persistence().eval(&z.core, z.tti, &ctx).unwrap(),
        MeasureValue::int(4)
    );
}

#[test]
fn vertex_helpers() {
    let g = g0();
    assert_eq!(g.label(v(&g, "c")), "c");
}
