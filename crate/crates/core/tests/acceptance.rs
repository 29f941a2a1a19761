//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Every comparison is an exact integer equality; there are no tolerances.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::time::Instant;

use cluster_towers::clusters::{cluster_of, cluster_partition, representatives};
use cluster_towers::gensets::{
    enumerate_minimal, extreme_generating_sets, is_generating, is_minimal, minimum_minimal,
};
use cluster_towers::models::{
    affine_model, affine_point_stabilizer, cyclic_model, symmetric_model, GaloisModel,
};
use cluster_towers::numtheory::{euler_phi, gcd};
use cluster_towers::towers::{
    build_tower, enumerate_distinct_towers, min_length_towers, root_capacity,
    stepwise_congruence_identity, towers_of_set,
};
use cluster_towers::{Budgets, Error};

const SUBSET_BUDGET: u64 = 10_000_000;
const DFS_BUDGET: u64 = 10_000_000;

fn budgets() -> Budgets {
    Budgets::default()
}

fn report(criterion: &str, pass: bool) {
    println!("{} criterion {criterion}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {criterion} failed");
}

/// The models the structural batteries run over.
fn battery_models() -> Vec<GaloisModel> {
    let mut models = Vec::new();
    for n in [9, 15, 21] {
        models.push(affine_model(n).unwrap());
    }
    for m in [4, 5] {
        models.push(symmetric_model(m).unwrap());
    }
    for n in [3, 5, 7] {
        models.push(cyclic_model(n).unwrap());
    }
    models
}

#[test]
fn criterion_01_affine_model_soundness() {
    let start = Instant::now();
    let mut pass = true;
    for n in (3..=105usize).step_by(2) {
        let model = affine_model(n).unwrap();
        let g = model.group();
        let expected = n as u64 * euler_phi(n as u64).unwrap();
        pass &= g.order() as u64 == expected;
        pass &= g.is_transitive();
        pass &= g.is_faithful();
        if n <= 45 {
            for j in 0..n {
                pass &= affine_point_stabilizer(n, j).unwrap() == g.stabilizer(j).unwrap();
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed.as_secs() < 30;
    println!("  affine soundness ran in {elapsed:?} (target < 30 s)");
    report("1: affine model soundness (odd 3 ≤ n ≤ 105)", pass);
}

#[test]
fn criterion_02_pair_generation_iff_gcd() {
    let mut mismatches = 0u64;
    for n in (3..=45usize).step_by(2) {
        let model = affine_model(n).unwrap();
        for k in 0..n {
            for l in (k + 1)..n {
                let brute = is_generating(&model, &[k, l]).unwrap().0;
                let formula = gcd((l - k) as i64, n as i64) == 1;
                if brute != formula {
                    mismatches += 1;
                }
            }
        }
    }
    report(
        "2: pair generation ⇔ gcd(l−k,n)=1, exhaustive odd n ≤ 45",
        mismatches == 0,
    );
}

#[test]
fn criterion_03_minimum_minimal_counts() {
    let mut pass = true;
    for n in [3usize, 5, 7, 9, 15, 21, 25, 27, 33, 45] {
        let model = affine_model(n).unwrap();
        let formula = n as u64 * euler_phi(n as u64).unwrap() / 2;
        let (card, _, count) = minimum_minimal(&model, SUBSET_BUDGET).unwrap();
        pass &= card == 2 && count == formula;
        if n == 9 {
            pass &= count == 27;
        }
        if n == 15 {
            pass &= count == 60;
        }
    }
    report("3: minimum minimal count = n·φ(n)/2 on the n battery", pass);
}

#[test]
fn criterion_04_prime_full_enumeration() {
    let mut pass = true;
    for p in [3usize, 5, 7, 11, 13] {
        let model = affine_model(p).unwrap();
        let sets = enumerate_minimal(&model, None, SUBSET_BUDGET).unwrap();
        let mut expected: Vec<Vec<usize>> = Vec::new();
        for k in 0..p {
            for l in (k + 1)..p {
                expected.push(vec![k, l]);
            }
        }
        expected.sort();
        pass &= sets == expected;
    }
    report("4: for prime p, the C(p,2) pairs are ALL the minimal sets", pass);
}

#[test]
fn criterion_05_two_extreme_minimal_sets() {
    let mut pass = true;
    for primes in [vec![3u64, 5, 7], vec![3, 5, 11], vec![3, 7, 11], vec![3, 5, 7, 11]] {
        let n: u64 = primes.iter().product();
        let k = primes.len();
        let model = match affine_model(n as usize) {
            Ok(m) => m,
            Err(Error::Resource(msg)) => {
                println!("  primes {primes:?} skipped, over budget: {msg}");
                continue;
            }
            Err(e) => panic!("unexpected error: {e}"),
        };
        let (b1, b2) = extreme_generating_sets(&primes).unwrap();
        let r1 = is_minimal(&model, &b1).unwrap();
        let r2 = is_minimal(&model, &b2).unwrap();
        pass &= r1.minimal && r1.roots.len() == 2;
        pass &= r2.minimal && r2.roots.len() == k;
        // dropping the l-th element leaves a residual subgroup containing an
        // element of the form (0, (n/p_l)·z + 1)
        for &p_l in &primes {
            let drop = (n / p_l) as usize;
            let rest: Vec<usize> = b2.iter().copied().filter(|&x| x != drop).collect();
            let stab = model.group().pointwise_stabilizer(&rest).unwrap();
            pass &= stab.elements().iter().any(|perm| {
                model
                    .label_of(perm)
                    .map(|e| e.alpha == 0 && e.u != 1 && (e.u - 1) % (n / p_l) == 0)
                    .unwrap_or(false)
            });
        }
    }
    report("5: extreme minimal sets of cardinality 2 and k, with residual witnesses", pass);
}

#[test]
fn criterion_06_all_orderings_of_minimal_sets() {
    let mut pass = true;
    let models: Vec<GaloisModel> = [9, 15, 21]
        .into_iter()
        .map(|n| affine_model(n).unwrap())
        .chain([4, 5].into_iter().map(|m| symmetric_model(m).unwrap()))
        .collect();
    for model in &models {
        let partition = cluster_partition(&model).unwrap();
        for set in enumerate_minimal(model, None, SUBSET_BUDGET).unwrap() {
            let towers = towers_of_set(model, &set, budgets().orderings).unwrap();
            // all |B|! orderings give length |B| + 1
            pass &= towers.len() == (1..=set.len()).product::<usize>();
            pass &= towers.iter().all(|t| t.length == set.len() + 1);
            // the field chains are pairwise distinct
            let chains: BTreeSet<_> = towers.iter().map(|t| t.distinct_fields.clone()).collect();
            pass &= chains.len() == towers.len();
            // every one-larger generating superset has a shorter tower
            let used: BTreeSet<usize> = set
                .iter()
                .map(|&i| partition.cluster_index(i).unwrap())
                .collect();
            for (ci, cluster) in partition.clusters.iter().enumerate() {
                if used.contains(&ci) {
                    continue;
                }
                let mut superset = set.clone();
                superset.push(*cluster.iter().min().unwrap());
                superset.sort_unstable();
                let towers = towers_of_set(model, &superset, budgets().orderings).unwrap();
                pass &= towers.iter().any(|t| t.length < superset.len() + 1);
            }
        }
    }
    report("6: m! towers of length m+1, pairwise distinct; supersets collapse", pass);
}

#[test]
fn criterion_07_degree_sequences_and_root_capacities() {
    let model = affine_model(105).unwrap();

    let t = build_tower(&model, &[35, 21, 15]).unwrap();
    let mut pass = t.degree_sequence == vec![105, 840, 5040];

    let t_swapped = build_tower(&model, &[35, 15, 21]).unwrap();
    pass &= t_swapped.degree_sequence == vec![105, 1260, 5040];

    let capacities: Vec<usize> = t.chain[1..]
        .iter()
        .map(|h| root_capacity(&model, h).unwrap())
        .collect();
    pass &= capacities == vec![1, 15, 105];

    pass &= stepwise_congruence_identity(&[3, 5, 7]).unwrap();

    report("7: degree sequence, reordering, root capacities, subgroup identity", pass);
}

#[test]
fn criterion_08_tower_censuses() {
    let mut pass = true;

    let m5 = affine_model(5).unwrap();
    pass &= enumerate_distinct_towers(&m5, DFS_BUDGET).unwrap().len() == 5;

    for n in [9usize, 15] {
        let model = affine_model(n).unwrap();
        let (least, achievers) = min_length_towers(&model, DFS_BUDGET).unwrap();
        pass &= least == 3;
        pass &= achievers.len() == n;
        let expect = vec![n as u64, n as u64 * euler_phi(n as u64).unwrap()];
        pass &= achievers.iter().all(|t| t.degree_sequence == expect);
    }

    let s4 = symmetric_model(4).unwrap();
    pass &= enumerate_distinct_towers(&s4, DFS_BUDGET).unwrap().len() == 12;
    let s5 = symmetric_model(5).unwrap();
    pass &= enumerate_distinct_towers(&s5, DFS_BUDGET).unwrap().len() == 60;

    report("8: tower censuses (5; n least-length; 4!/2 and 5!/2)", pass);
}

#[test]
fn criterion_09_unique_tower_iff_single_cluster() {
    let mut pass = true;
    for n in [3usize, 5, 7] {
        let model = cyclic_model(n).unwrap();
        let towers = enumerate_distinct_towers(&model, DFS_BUDGET).unwrap();
        pass &= towers.len() == 1;
        pass &= towers[0].length == 2;
        pass &= towers[0].degree_sequence == vec![n as u64];
    }
    // every model with s > 1 has at least two towers
    for model in battery_models() {
        let partition = cluster_partition(&model).unwrap();
        if partition.s > 1 {
            pass &= enumerate_distinct_towers(&model, DFS_BUDGET).unwrap().len() >= 2;
        }
    }
    report("9: unique tower exactly in the single-cluster (Galois) case", pass);
}

#[test]
fn criterion_10_structural_invariants() {
    let mut pass = true;
    for model in battery_models() {
        let n = model.root_count();
        let g = model.group();
        let partition = cluster_partition(&model).unwrap();
        pass &= partition.r * partition.s == n;
        pass &= representatives(&partition).len() == partition.s;

        // the cluster relation is an equivalence
        let clusters: Vec<Vec<usize>> = (0..n).map(|i| cluster_of(&model, i).unwrap()).collect();
        for i in 0..n {
            pass &= clusters[i].contains(&i);
            for &j in &clusters[i] {
                pass &= clusters[j] == clusters[i];
            }
        }

        // minimal sets never contain two roots of one cluster
        let minimal_sets = enumerate_minimal(&model, None, SUBSET_BUDGET).unwrap();
        for set in &minimal_sets {
            let idxs: BTreeSet<usize> = set
                .iter()
                .map(|&i| partition.cluster_index(i).unwrap())
                .collect();
            pass &= idxs.len() == set.len();
        }

        // degree sequences strictly increase, divide |G|, and end at |G|
        // exactly when the tower terminates
        let towers = enumerate_distinct_towers(&model, DFS_BUDGET).unwrap();
        for t in &towers {
            for w in t.degree_sequence.windows(2) {
                pass &= w[0] < w[1];
            }
            for &d in &t.degree_sequence {
                pass &= g.order() as u64 % d == 0;
            }
            pass &= (t.degree_sequence.last() == Some(&(g.order() as u64)))
                == t.terminates_at_splitting_field;
        }

        // least tower length = minimum minimal cardinality + 1
        let (least, _) = min_length_towers(&model, DFS_BUDGET).unwrap();
        let (card, _, _) = minimum_minimal(&model, SUBSET_BUDGET).unwrap();
        pass &= least == card + 1;
    }
    report("10: structural invariants battery (zero violations)", pass);
}
