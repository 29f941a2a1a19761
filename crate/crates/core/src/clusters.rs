//! Root clusters: the roots lying in the field generated by a single root.
//!
//! The cluster of root i is the fixed-point set of the stabilizer of i. All
//! clusters share one cardinality r, and r·s = n where s is the cluster
//! count; a violation of that would mean the model is not a genuine Galois
//! action and is reported as an invariant failure.

use crate::models::GaloisModel;
use crate::{Error, Result};

/// The partition of root labels into clusters, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterPartition {
    pub clusters: Vec<Vec<usize>>,
    /// Common cluster size.
    pub r: usize,
    /// Number of clusters.
    pub s: usize,
}

impl ClusterPartition {
    /// Index of the cluster containing root i.
    pub fn cluster_index(&self, i: usize) -> Option<usize> {
        self.clusters.iter().position(|c| c.contains(&i))
    }
}

/// The roots lying in the field generated by root i: the fixed points of
/// stabilizer(G, i). Always contains i.
pub fn cluster_of(model: &GaloisModel, i: usize) -> Result<Vec<usize>> {
    let stab = model.group().stabilizer(i)?;
    Ok(stab.fixed_points())
}

/// Partition all roots into clusters, verifying equal sizes and r·s = n.
pub fn cluster_partition(model: &GaloisModel) -> Result<ClusterPartition> {
    let n = model.root_count();
    let mut assigned = vec![false; n];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let cluster = cluster_of(model, i)?;
        if !cluster.contains(&i) {
            return Err(Error::invariant(format!("root {i} missing from its own cluster")));
        }
        for &j in &cluster {
            if assigned[j] {
                return Err(Error::invariant(format!(
                    "root {j} appears in two clusters; relation is not an equivalence"
                )));
            }
            assigned[j] = true;
        }
        clusters.push(cluster);
    }
    let r = clusters[0].len();
    if clusters.iter().any(|c| c.len() != r) {
        return Err(Error::invariant("clusters have unequal sizes"));
    }
    let s = clusters.len();
    if r * s != n {
        return Err(Error::invariant(format!("r·s = {} but n = {n}", r * s)));
    }
    Ok(ClusterPartition { clusters, r, s })
}

/// Canonical complete set of representatives: the least label of each
/// cluster, ascending.
pub fn representatives(partition: &ClusterPartition) -> Vec<usize> {
    let mut reps: Vec<usize> = partition
        .clusters
        .iter()
        .map(|c| *c.iter().min().expect("clusters are nonempty"))
        .collect();
    reps.sort_unstable();
    reps
}
