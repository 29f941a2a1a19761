//! Property tests for the structural invariants that should hold on every
//! model, not just on the curated battery.

use std::collections::BTreeSet;

use proptest::prelude::*;

use cluster_towers::models::{affine_model, symmetric_model, GaloisModel};
use cluster_towers::permgroup::Perm;
use cluster_towers::towers::build_tower;
use cluster_towers::verify::TheoremReport;

/// A small model picked from the two families, cheap enough to throw at
/// hundreds of proptest cases.
fn small_model() -> impl Strategy<Value = GaloisModel> {
    prop_oneof![
        (1usize..=10).prop_map(|k| affine_model(2 * k + 1).unwrap()),
        (2usize..=5).prop_map(|m| symmetric_model(m).unwrap()),
    ]
}

fn subset_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(0..n, 0..=n.min(4)).prop_map(|s| s.into_iter().collect())
}

fn random_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::new(v).unwrap())
}

proptest! {
    #[test]
    fn stabilizer_of_union_is_intersection(model in small_model(), seed1: u64, seed2: u64) {
        let n = model.root_count();
        let g = model.group();
        let s1: Vec<usize> = (0..3).map(|i| (seed1 as usize + i * 7) % n).collect();
        let s2: Vec<usize> = (0..3).map(|i| (seed2 as usize + i * 5) % n).collect();
        let mut union = s1.clone();
        union.extend_from_slice(&s2);
        let lhs = g.pointwise_stabilizer(&union).unwrap();
        let rhs = g
            .pointwise_stabilizer(&s1)
            .unwrap()
            .intersect(&g.pointwise_stabilizer(&s2).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Adding roots can only grow the fixed-point set of the stabilizer
    /// (the generated field) and the index (the field degree).
    #[test]
    fn growing_the_set_grows_field_and_degree(model in small_model(), seed: u64) {
        let n = model.root_count();
        let g = model.group();
        let pts: Vec<usize> = (0..4).map(|i| (seed as usize + i * 3) % n).collect();
        let mut prev_fixed: BTreeSet<usize> = BTreeSet::new();
        let mut prev_index = 0u64;
        for len in 0..=pts.len() {
            let stab = g.pointwise_stabilizer(&pts[..len]).unwrap();
            let fixed: BTreeSet<usize> = stab.fixed_points().into_iter().collect();
            let index = g.index_of(&stab).unwrap();
            prop_assert!(prev_fixed.is_subset(&fixed));
            prop_assert!(index >= prev_index);
            prop_assert_eq!(g.order() as u64 % index, 0);
            prev_fixed = fixed;
            prev_index = index;
        }
    }

    #[test]
    fn orbit_stabilizer(model in small_model()) {
        let g = model.group();
        for i in 0..model.root_count() {
            let orbit = g.orbit(i).unwrap();
            let stab = g.stabilizer(i).unwrap();
            prop_assert_eq!(orbit.len() * stab.order(), g.order());
        }
    }

    #[test]
    fn perm_group_laws(
        (p, q, r) in (1usize..=12)
            .prop_flat_map(|n| (random_perm(n), random_perm(n), random_perm(n))),
    ) {
        let n = p.degree();
        let id = Perm::identity(n);
        prop_assert_eq!(p.compose(&id).unwrap(), p.clone());
        prop_assert_eq!(id.compose(&p).unwrap(), p.clone());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        let ab_c = p.compose(&q).unwrap().compose(&r).unwrap();
        let a_bc = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        // composition applies the right factor first
        for i in 0..n {
            prop_assert_eq!(p.compose(&q).unwrap().apply(i), p.apply(q.apply(i)));
        }
    }

    /// Towers built from distinct-cluster representatives always have a
    /// strictly descending subgroup chain and matching degree sequence.
    #[test]
    fn tower_chain_descends(model in small_model(), roots in subset_of(21)) {
        let n = model.root_count();
        let roots: Vec<usize> = roots.into_iter().filter(|&r| r < n).collect();
        if roots.is_empty() {
            return Ok(());
        }
        let Ok(t) = build_tower(&model, &roots) else {
            // two roots sharing a cluster is a domain error, not a bug
            return Ok(());
        };
        let g = model.group();
        prop_assert_eq!(t.chain[0].clone(), g.clone());
        for w in t.chain.windows(2) {
            prop_assert!(w[1].is_subgroup_of(&w[0]));
        }
        prop_assert_eq!(t.length, t.distinct_fields.len());
        let degs: Vec<u64> = t
            .distinct_fields[1..]
            .iter()
            .map(|h| g.index_of(h).unwrap())
            .collect();
        prop_assert_eq!(t.degree_sequence.clone(), degs);
    }

    #[test]
    fn theorem_report_round_trips(n in 1u64..10_000, pass: bool, elapsed in 0u64..100_000) {
        let report = TheoremReport {
            id: "thm-2.9i".to_string(),
            parameters: serde_json::json!({ "n": n }),
            claimed: serde_json::json!({ "count": n * (n - 1) / 2 }),
            observed: serde_json::json!({ "count": n * (n - 1) / 2 }),
            pass,
            skipped: None,
            elapsed_ms: elapsed,
        };
        let text = serde_json::to_string(&report).unwrap();
        let back: TheoremReport = cluster_towers::report::parse_json(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
