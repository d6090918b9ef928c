mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use txc_core::oracle::{brute_force_tcq, brute_force_txcq, reference_core};
use txc_core::{
    run_otcd, run_otcd_star, run_tcd, run_tcd_star, run_txcq, Normalization, QuerySpec, Tel,
    TcqOptions, TemporalGraph, TimeInterval,
};

fn graph_strategy() -> impl Strategy<Value = TemporalGraph> {
    (3u32..9, 1i64..9).prop_flat_map(|(n, horizon)| {
        prop::collection::vec((0..n, 0..n, 1..=horizon), 1..30).prop_map(move |raw| {
            let triples: Vec<_> = raw.into_iter().filter(|(u, v, _)| u != v).collect();
            TemporalGraph::from_triples(n as usize, triples).unwrap()
        })
    })
}

fn window_in(g: &TemporalGraph, a: i64, b: i64) -> TimeInterval {
    let r = g.time_range().unwrap_or(TimeInterval::point(1));
    let lo = r.ts() + a.rem_euclid(r.duration());
    let hi = lo + b.rem_euclid(r.te() - lo + 1);
    TimeInterval::new(lo, hi).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tcd_matches_reference(g in graph_strategy(), k in 1usize..4, a in 0i64..20, b in 0i64..20) {
        prop_assume!(!g.is_empty());
        let w = window_in(&g, a, b);
        let mut tel = Tel::build(&g);
        tel.tcd(k, w).unwrap();
        tel.validate().unwrap();
        prop_assert_eq!(tel.snapshot(), reference_core(&g, k, w));
        if let Some(v) = (0..g.vertex_count() as u32).map(txc_core::VertexId).find(|v| tel.degree(*v) > 0) {
            prop_assert!(tel.degree(v) as usize >= k);
        }
    }

    #[test]
    fn decremental_equals_direct(g in graph_strategy(), k in 1usize..4, a in 0i64..20, b in 0i64..20, c in 0i64..20, d in 0i64..20) {
        prop_assume!(!g.is_empty());
        let outer = window_in(&g, a, b);
        let lo = outer.ts() + c.rem_euclid(outer.duration());
        let hi = lo + d.rem_euclid(outer.te() - lo + 1);
        let inner = TimeInterval::new(lo, hi).unwrap();
        let mut chained = Tel::build(&g);
        chained.tcd(k, outer).unwrap();
        let copy = chained.clone();
        chained.tcd(k, inner).unwrap();
        chained.validate().unwrap();
        let mut direct = Tel::build(&g);
        direct.tcd(k, inner).unwrap();
        prop_assert_eq!(chained.snapshot(), direct.snapshot());
        // The clone was not disturbed.
        let mut again = Tel::build(&g);
        again.tcd(k, outer).unwrap();
        prop_assert_eq!(copy.snapshot(), again.snapshot());
    }

    #[test]
    fn tti_is_edge_time_range(g in graph_strategy(), a in 0i64..20, b in 0i64..20) {
        prop_assume!(!g.is_empty());
        let w = window_in(&g, a, b);
        let mut tel = Tel::build(&g);
        tel.truncate(w);
        let ts: Vec<i64> = tel.edges().map(|e| e.t).collect();
        let expect = match (ts.iter().min(), ts.iter().max()) {
            (Some(&x), Some(&y)) => Some(TimeInterval::new(x, y).unwrap()),
            _ => None,
        };
        prop_assert_eq!(tel.tti(), expect);
    }

    #[test]
    fn tcq_engines_agree_with_oracle(g in graph_strategy(), k in 1usize..4, a in 0i64..20, b in 0i64..20) {
        prop_assume!(!g.is_empty());
        let w = window_in(&g, a, b);
        let opts = TcqOptions { verify_keys: true };
        let base = run_tcd(&g, k, w, &opts).unwrap();
        let fast = run_otcd(&g, k, w, &opts).unwrap();
        let oracle = brute_force_tcq(&g, k, w);
        let oracle_keys: Vec<_> = oracle.classes.iter().map(|c| c.tti()).collect();
        prop_assert_eq!(base.keys().collect::<Vec<_>>(), oracle_keys.clone());
        prop_assert_eq!(fast.keys().collect::<Vec<_>>(), oracle_keys);
        for c in &oracle.classes {
            prop_assert_eq!(&**fast.get(&c.tti()).unwrap(), &*c.core);
            prop_assert_eq!(&**base.get(&c.tti()).unwrap(), &*c.core);
            prop_assert_eq!(c.core.tti(), Some(c.tti()));
        }
        prop_assert_eq!(fast.stats.key_collisions, 0);
        prop_assert_eq!(base.stats.key_collisions, 0);
        prop_assert!(fast.stats.nonempty_decompositions >= fast.len() as u64);
        prop_assert!(fast.stats.cells_visited + fast.stats.cells_pruned <= fast.stats.cells_total);
        prop_assert!(fast.stats.cells_visited <= base.stats.cells_visited);
    }

    #[test]
    fn zones_match_oracle_classes(g in graph_strategy(), k in 1usize..4, a in 0i64..20, b in 0i64..20) {
        prop_assume!(!g.is_empty());
        let w = window_in(&g, a, b);
        let scan = run_otcd_star(&g, k, w, &TcqOptions::default()).unwrap();
        let oracle = brute_force_tcq(&g, k, w);
        prop_assert_eq!(scan.zones.len(), oracle.classes.len());
        for (z, c) in scan.zones.iter().zip(&oracle.classes) {
            prop_assert_eq!(z.tti, c.tti());
            let got: BTreeSet<_> = z.ltis.iter().copied().collect();
            let want: BTreeSet<_> = c.maximal.iter().copied().collect();
            prop_assert_eq!(got, want);
            prop_assert_eq!(&*z.core, &*c.core);
        }
        // Rectangle union equals the class on every subinterval.
        if let Some(win) = oracle.window {
            for s in win.subintervals() {
                let owners: Vec<_> = scan.zones.iter().filter(|z| z.contains(s)).map(|z| z.tti).collect();
                let want: Vec<_> = oracle.class(s).map(|c| c.tti()).into_iter().collect();
                prop_assert_eq!(owners, want);
            }
        }
        // Nonempty visited cells are exactly the LTIs.
        let lti_cells: BTreeSet<_> = scan.zones.iter().flat_map(|z| z.ltis.iter().copied()).collect();
        let visited: BTreeSet<_> = scan
            .visited
            .iter()
            .map(|c| c.interval())
            .filter(|w| oracle.class(*w).is_some())
            .collect();
        prop_assert_eq!(visited, lti_cells);
    }

    #[test]
    fn tcd_star_matches_oracle_on_enumerate(g in graph_strategy(), k in 1usize..4) {
        prop_assume!(!g.is_empty());
        let w = g.time_range().unwrap();
        let spec = QuerySpec::enumerate(k, w);
        let star = run_tcd_star(&g, &spec).unwrap();
        let oracle = brute_force_txcq(&g, &spec).unwrap();
        let star_z: Vec<_> = star.zones().map(|z| (z.tti, z.ltis.clone())).collect();
        let oracle_z: Vec<_> = oracle.zones().map(|z| (z.tti, z.ltis.clone())).collect();
        prop_assert_eq!(star_z, oracle_z);
        prop_assert_eq!(run_txcq(&g, &spec).unwrap().answer(), oracle.answer());
    }

    #[test]
    fn projection_laws(g in graph_strategy(), a in 0i64..20, b in 0i64..20, c in 0i64..20, d in 0i64..20) {
        prop_assume!(!g.is_empty());
        prop_assert_eq!(g.project(g.time_range().unwrap()), g.clone());
        let x = window_in(&g, a, b);
        let y = window_in(&g, c, d);
        if let Some(both) = x.intersect(&y) {
            prop_assert_eq!(g.project(x).project(y), g.project(both));
        }
        let once = g.normalize(Normalization::Rank).unwrap();
        prop_assert_eq!(once.normalize(Normalization::Rank).unwrap(), once);
    }
}
