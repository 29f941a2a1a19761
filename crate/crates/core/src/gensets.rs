//! Generating sets of the splitting field, expressed through the Galois
//! correspondence: a set of roots B generates K_f iff the pointwise
//! stabilizer of B is trivial, and B is minimal iff additionally every
//! one-smaller subset has a nontrivial pointwise stabilizer.

use crate::clusters::{cluster_partition, ClusterPartition};
use crate::models::GaloisModel;
use crate::numtheory::gcd;
use crate::permgroup::{Perm, Subgroup};
use crate::{Error, Result};

/// Outcome of a generation/minimality query on one root set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSetReport {
    pub roots: Vec<usize>,
    pub generates: bool,
    pub minimal: bool,
    pub witness: Option<Witness>,
}

/// Evidence attached to a failed claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A nontrivial element of the pointwise stabilizer of a set that fails
    /// to generate.
    Residual(Perm),
    /// A root whose removal still leaves a generating set.
    Removable(usize),
}

fn check_labels(model: &GaloisModel, roots: &[usize]) -> Result<()> {
    let n = model.root_count();
    for &i in roots {
        if i >= n {
            return Err(Error::domain(format!("root label {i} out of range for n = {n}")));
        }
    }
    Ok(())
}

/// Does K(B) = K_f? True iff the pointwise stabilizer of B is trivial. On
/// false, the witness is the canonically least nontrivial residual element.
pub fn is_generating(model: &GaloisModel, roots: &[usize]) -> Result<(bool, Option<Perm>)> {
    check_labels(model, roots)?;
    let stab = model.group().pointwise_stabilizer(roots)?;
    match stab.least_nontrivial() {
        Some(w) => Ok((false, Some(w.clone()))),
        None => Ok((true, None)),
    }
}

/// Minimality test: B generates and no root of B lies in the field generated
/// by the others.
pub fn is_minimal(model: &GaloisModel, roots: &[usize]) -> Result<GenSetReport> {
    if roots.is_empty() {
        return Err(Error::domain("minimality is not defined for the empty set"));
    }
    check_labels(model, roots)?;
    let mut sorted: Vec<usize> = roots.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let (generates, residual) = is_generating(model, &sorted)?;
    if !generates {
        return Ok(GenSetReport {
            roots: sorted,
            generates: false,
            minimal: false,
            witness: residual.map(Witness::Residual),
        });
    }
    for &beta in &sorted {
        let rest: Vec<usize> = sorted.iter().copied().filter(|&x| x != beta).collect();
        let stab = model.group().pointwise_stabilizer(&rest)?;
        // β removable ⇔ β lies in the fixed field of the rest ⇔ β is fixed
        // by the residual stabilizer.
        let beta_in_rest_field = stab.elements().iter().all(|p| p.fixes(beta));
        if beta_in_rest_field {
            return Ok(GenSetReport {
                roots: sorted,
                generates: true,
                minimal: false,
                witness: Some(Witness::Removable(beta)),
            });
        }
    }
    Ok(GenSetReport {
        roots: sorted,
        generates: true,
        minimal: true,
        witness: None,
    })
}

/// Shrink a generating set to a minimal one by repeatedly deleting the
/// largest removable label. Deterministic by construction.
pub fn reduce_to_minimal(model: &GaloisModel, roots: &[usize]) -> Result<Vec<usize>> {
    check_labels(model, roots)?;
    let mut current: Vec<usize> = roots.to_vec();
    current.sort_unstable();
    current.dedup();
    let (generates, _) = is_generating(model, &current)?;
    if !generates {
        return Err(Error::domain("reduce_to_minimal requires a generating set"));
    }
    'outer: loop {
        if current.len() == 1 {
            return Ok(current);
        }
        // largest-first deletion policy
        for idx in (0..current.len()).rev() {
            let beta = current[idx];
            let rest: Vec<usize> = current.iter().copied().filter(|&x| x != beta).collect();
            let stab = model.group().pointwise_stabilizer(&rest)?;
            if stab.elements().iter().all(|p| p.fixes(beta)) {
                current = rest;
                continue 'outer;
            }
        }
        return Ok(current);
    }
}

/// All minimal generating sets, sizes ascending then lexicographic.
///
/// Candidates are scanned one size level at a time with two prunings, both
/// consequences of minimality: no candidate may contain two roots of one
/// cluster, and no candidate may properly contain a generating set (so any
/// prefix whose stabilizer is already trivial stops the scan). `budget`
/// bounds the number of candidate prefixes examined.
pub fn enumerate_minimal(
    model: &GaloisModel,
    max_cardinality: Option<usize>,
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    let partition = cluster_partition(model)?;
    let limit = max_cardinality.unwrap_or(partition.s).min(partition.s);
    let mut tests: u64 = 0;
    let mut found = Vec::new();
    for size in 1..=limit {
        let level = minimal_sets_of_size(model, &partition, size, budget, &mut tests)
            .map_err(|e| match e {
                Error::Resource(msg) => Error::Resource(format!(
                    "{msg}; completed size levels 1..={}",
                    size.saturating_sub(1)
                )),
                other => other,
            })?;
        found.extend(level);
    }
    Ok(found)
}

/// All minimal generating sets of least cardinality: (cardinality, sets,
/// count). Scans sizes ascending and stops at the first populated level.
pub fn minimum_minimal(
    model: &GaloisModel,
    budget: u64,
) -> Result<(usize, Vec<Vec<usize>>, u64)> {
    let partition = cluster_partition(model)?;
    let mut tests: u64 = 0;
    for size in 1..=partition.s {
        let level = minimal_sets_of_size(model, &partition, size, budget, &mut tests)
            .map_err(|e| match e {
                Error::Resource(msg) => Error::Resource(format!(
                    "{msg}; completed size levels 1..={}",
                    size.saturating_sub(1)
                )),
                other => other,
            })?;
        if !level.is_empty() {
            let count = level.len() as u64;
            return Ok((size, level, count));
        }
    }
    Err(Error::invariant(
        "no minimal generating set found; every faithful model has one",
    ))
}

fn minimal_sets_of_size(
    model: &GaloisModel,
    partition: &ClusterPartition,
    size: usize,
    budget: u64,
    tests: &mut u64,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    descend(
        model,
        partition,
        size,
        0,
        &mut chosen,
        model.group().clone(),
        budget,
        tests,
        &mut out,
    )?;
    out.sort_unstable();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    model: &GaloisModel,
    partition: &ClusterPartition,
    size: usize,
    next_cluster: usize,
    chosen: &mut Vec<usize>,
    stab: Subgroup,
    budget: u64,
    tests: &mut u64,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if chosen.len() == size {
        if stab.is_trivial() {
            // The stabilizer turned trivial exactly at the last root; the
            // other one-smaller subsets still need checking.
            let report = is_minimal(model, chosen)?;
            if report.minimal {
                out.push(chosen.clone());
            }
        }
        return Ok(());
    }
    if stab.is_trivial() {
        // a proper subset already generates; no extension can be minimal
        return Ok(());
    }
    let remaining = size - chosen.len();
    if partition.s - next_cluster < remaining {
        return Ok(());
    }
    for ci in next_cluster..partition.s {
        for &root in &partition.clusters[ci] {
            *tests += 1;
            if *tests > budget {
                return Err(Error::resource(format!(
                    "minimal-set enumeration exceeded {budget} subset tests"
                )));
            }
            let next_stab = stab.pointwise_stabilizer(&[root])?;
            chosen.push(root);
            descend(
                model,
                partition,
                size,
                ci + 1,
                chosen,
                next_stab,
                budget,
                tests,
                out,
            )?;
            chosen.pop();
        }
    }
    Ok(())
}

/// Closed-form generation criterion for the affine model: the pair of roots
/// (k, l) generates iff gcd(l − k, n) = 1.
pub fn gcd_pair_criterion(n: usize, k: usize, l: usize) -> Result<bool> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::domain(format!("criterion applies to odd n ≥ 3 (got {n})")));
    }
    if !(k < l && l <= n - 1) {
        return Err(Error::domain(format!(
            "labels must satisfy 0 ≤ k < l ≤ n−1 (got k = {k}, l = {l})"
        )));
    }
    Ok(gcd((l - k) as i64, n as i64) == 1)
}

/// The two extreme generating sets for n = p_1⋯p_k with k > 2 distinct odd
/// primes: the pair {0, 1} and the size-k set {n/p_i}.
pub fn extreme_generating_sets(primes: &[u64]) -> Result<(Vec<usize>, Vec<usize>)> {
    let k = primes.len();
    if k <= 2 {
        return Err(Error::domain(format!(
            "the construction needs more than two primes (got {k})"
        )));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return Err(Error::domain("primes must be distinct"));
    }
    for &p in primes {
        if p == 2 || crate::numtheory::factorize(p)?.factors != vec![(p, 1)] {
            return Err(Error::domain(format!("{p} is not an odd prime")));
        }
    }
    let n: u64 = primes.iter().product();
    let b1 = vec![0usize, 1usize];
    let b2: Vec<usize> = primes.iter().map(|&p| (n / p) as usize).collect();
    Ok((b1, b2))
}
