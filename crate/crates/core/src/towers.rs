//! Cluster towers: the field chains K ⊆ K(β1) ⊆ K(β1,β2) ⊆ … obtained by
//! adjoining cluster representatives one at a time, computed as descending
//! chains of pointwise stabilizers.
//!
//! Two orderings that induce the same sequence of distinct subgroups are the
//! same tower; that identification is what makes the census counts (p towers
//! for an odd prime p, m!/2 for the full symmetric group on m points) come
//! out right.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;

use crate::clusters::{cluster_partition, representatives};
use crate::models::{affine_model, GaloisModel};
use crate::numtheory::{euler_phi, factorize};
use crate::permgroup::{Perm, Subgroup};
use crate::{Error, Result};

/// A cluster tower: an ordering of distinct-cluster roots plus the chain of
/// fields it generates, represented by subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    /// The root ordering the tower was built from.
    pub ordering: Vec<usize>,
    /// chain[i] = pointwise stabilizer of the first i roots; chain[0] = G.
    pub chain: Vec<Subgroup>,
    /// The chain with consecutive repeats removed; the distinct fields.
    pub distinct_fields: Vec<Subgroup>,
    /// Number of distinct fields, counting the base field K (= G itself).
    pub length: usize,
    /// [G : H] for each distinct field strictly above K, in chain order.
    pub degree_sequence: Vec<u64>,
    /// True iff the last subgroup is trivial, i.e. the chain reaches K_f.
    pub terminates_at_splitting_field: bool,
    /// For a non-terminating chain, one nontrivial residual element.
    pub witness: Option<Perm>,
}

/// Build the tower of an ordering of pairwise-distinct-cluster roots.
pub fn build_tower(model: &GaloisModel, ordering: &[usize]) -> Result<Tower> {
    let partition = cluster_partition(model)?;
    build_tower_in(model, &partition, ordering)
}

fn build_tower_in(
    model: &GaloisModel,
    partition: &crate::clusters::ClusterPartition,
    ordering: &[usize],
) -> Result<Tower> {
    if ordering.is_empty() {
        return Err(Error::domain("tower ordering must be nonempty"));
    }
    let mut seen_clusters = HashSet::new();
    for &i in ordering {
        let ci = partition
            .cluster_index(i)
            .ok_or_else(|| Error::domain(format!("root label {i} out of range")))?;
        if !seen_clusters.insert(ci) {
            return Err(Error::domain(format!(
                "roots of one cluster generate the same field, so an ordering may \
                 use at most one root per cluster; label {i} repeats a cluster"
            )));
        }
    }
    let g = model.group();
    let mut chain = vec![g.clone()];
    for &i in ordering {
        let next = chain.last().unwrap().pointwise_stabilizer(&[i])?;
        chain.push(next);
    }
    let mut distinct_fields: Vec<Subgroup> = Vec::new();
    for h in &chain {
        if distinct_fields.last() != Some(h) {
            distinct_fields.push(h.clone());
        }
    }
    let degree_sequence: Vec<u64> = distinct_fields[1..]
        .iter()
        .map(|h| g.index_of(h))
        .collect::<Result<_>>()?;
    let last = distinct_fields.last().unwrap();
    let terminates = last.is_trivial();
    Ok(Tower {
        ordering: ordering.to_vec(),
        length: distinct_fields.len(),
        degree_sequence,
        terminates_at_splitting_field: terminates,
        witness: if terminates {
            None
        } else {
            last.least_nontrivial().cloned()
        },
        chain,
        distinct_fields,
    })
}

/// One tower per permutation of B: all |B|! of them.
pub fn towers_of_set(model: &GaloisModel, roots: &[usize], budget: u64) -> Result<Vec<Tower>> {
    let m = roots.len();
    let mut orderings: u64 = 1;
    for i in 2..=m as u64 {
        orderings = orderings.saturating_mul(i);
    }
    if orderings > budget {
        return Err(Error::resource(format!(
            "{m}! = {orderings} orderings exceed the budget of {budget}"
        )));
    }
    let mut sorted = roots.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != m {
        return Err(Error::domain("root set contains duplicates"));
    }
    let partition = cluster_partition(model)?;
    sorted
        .iter()
        .copied()
        .permutations(m)
        .map(|ordering| build_tower_in(model, &partition, &ordering))
        .collect()
}

/// All distinct cluster towers of the model: the distinct-subgroup chains
/// induced by orderings of a complete set of canonical cluster
/// representatives.
///
/// Depth-first search over clusters; a state is the chain built so far plus
/// the set of representatives consumed, and states already expanded are
/// skipped, so the cost tracks the number of distinct chains rather than s!
/// orderings. Once the chain reaches the trivial subgroup the remaining
/// representatives add no fields and the tower is complete.
pub fn enumerate_distinct_towers(model: &GaloisModel, node_budget: u64) -> Result<Vec<Tower>> {
    let partition = cluster_partition(model)?;
    let reps = representatives(&partition);
    let s = reps.len();
    if s > 64 {
        return Err(Error::resource(format!("{s} clusters exceed the 64-cluster search limit")));
    }

    // Interned subgroups so states hash cheaply.
    let mut intern: HashMap<Subgroup, u32> = HashMap::new();
    let mut groups: Vec<Subgroup> = Vec::new();
    let mut id_of = |h: Subgroup, groups: &mut Vec<Subgroup>| -> u32 {
        if let Some(&id) = intern.get(&h) {
            return id;
        }
        let id = groups.len() as u32;
        intern.insert(h.clone(), id);
        groups.push(h);
        id
    };

    let g_id = id_of(model.group().clone(), &mut groups);
    // chain ids (deduplicated), used-representative bitmask, ordering prefix
    let mut stack: Vec<(Vec<u32>, u64, Vec<usize>)> = vec![(vec![g_id], 0, Vec::new())];
    let mut seen_states: HashSet<(Vec<u32>, u64)> = HashSet::new();
    let mut complete: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut first_ordering: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    let mut nodes: u64 = 0;

    while let Some((chain, used, prefix)) = stack.pop() {
        nodes += 1;
        if nodes > node_budget {
            return Err(Error::resource(format!(
                "tower search exceeded {node_budget} nodes"
            )));
        }
        let current = &groups[*chain.last().unwrap() as usize];
        if current.is_trivial() {
            first_ordering.entry(chain.clone()).or_insert(prefix);
            complete.insert(chain);
            continue;
        }
        if !seen_states.insert((chain.clone(), used)) {
            continue;
        }
        for (ci, &rep) in reps.iter().enumerate() {
            if used & (1 << ci) != 0 {
                continue;
            }
            let current = groups[*chain.last().unwrap() as usize].clone();
            let next = current.pointwise_stabilizer(&[rep])?;
            let next_id = id_of(next, &mut groups);
            let mut next_chain = chain.clone();
            if *next_chain.last().unwrap() != next_id {
                next_chain.push(next_id);
            }
            let mut next_prefix = prefix.clone();
            next_prefix.push(rep);
            stack.push((next_chain, used | (1 << ci), next_prefix));
        }
    }

    complete
        .into_iter()
        .map(|chain| build_tower_in(model, &partition, &first_ordering[&chain]))
        .collect()
}

/// Least length over all distinct towers, with every achiever.
pub fn min_length_towers(model: &GaloisModel, node_budget: u64) -> Result<(usize, Vec<Tower>)> {
    let towers = enumerate_distinct_towers(model, node_budget)?;
    let least = towers
        .iter()
        .map(|t| t.length)
        .min()
        .ok_or_else(|| Error::invariant("no towers found"))?;
    let achievers = towers.into_iter().filter(|t| t.length == least).collect();
    Ok((least, achievers))
}

/// Number of roots of f lying in the fixed field of H.
pub fn root_capacity(model: &GaloisModel, h: &Subgroup) -> Result<usize> {
    if !h.is_subgroup_of(model.group()) {
        return Err(Error::domain("root_capacity: H is not a subgroup of the model group"));
    }
    Ok(h.fixed_points().len())
}

/// Check, for the affine model on n = p_1⋯p_k, that the pointwise stabilizer
/// of the first i labels n/p_1, …, n/p_i equals the congruence subgroup
/// {(0, u) : u ≡ 1 mod p_1⋯p_i}, for every i ≥ 2. This is the subgroup
/// fixing both the real root (label 0) and ζ^(n/(p_1⋯p_i)).
pub fn stepwise_congruence_identity(primes: &[u64]) -> Result<bool> {
    if primes.len() < 2 {
        return Err(Error::domain("at least two primes required"));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != primes.len() {
        return Err(Error::domain("primes must be distinct"));
    }
    for &p in primes {
        if p == 2 || factorize(p)?.factors != vec![(p, 1)] {
            return Err(Error::domain(format!("{p} is not an odd prime")));
        }
    }
    let n: u64 = primes.iter().product();
    let model = affine_model(n as usize)?;
    let mut labels: Vec<usize> = Vec::new();
    let mut modulus: u64 = 1;
    for (i, &p) in primes.iter().enumerate() {
        labels.push((n / p) as usize);
        modulus *= p;
        if i == 0 {
            continue;
        }
        let stab = model.group().pointwise_stabilizer(&labels)?;
        // expected order: units of Z/n congruent to 1 mod p_1⋯p_i
        let expected = euler_phi(n)? / euler_phi(modulus)?;
        if stab.order() as u64 != expected {
            return Ok(false);
        }
        for perm in stab.elements() {
            let e = model
                .label_of(perm)
                .ok_or_else(|| Error::invariant("affine model without labels"))?;
            if e.alpha != 0 || e.u % modulus != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
