//! Serializable report types and the table/JSON/CSV emitters used by the
//! CLI. Every payload is an integer, a string, or a boolean; JSON output is
//! stable (fixed key order, versioned schema) and round-trips byte-exactly.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::clusters::ClusterPartition;
use crate::gensets::{GenSetReport, Witness};
use crate::models::GaloisModel;
use crate::towers::Tower;
use crate::verify::TheoremReport;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModelInfoReport {
    pub schema_version: u32,
    pub family: String,
    pub root_count: usize,
    pub group_order: u64,
    pub transitive: bool,
    pub faithful: bool,
    pub cluster_size: usize,
    pub cluster_count: usize,
    pub root_meaning: String,
}

impl ModelInfoReport {
    pub fn new(model: &GaloisModel, partition: &ClusterPartition) -> Self {
        ModelInfoReport {
            schema_version: SCHEMA_VERSION,
            family: model.family().to_string(),
            root_count: model.root_count(),
            group_order: model.group().order() as u64,
            transitive: model.group().is_transitive(),
            faithful: model.group().is_faithful(),
            cluster_size: partition.r,
            cluster_count: partition.s,
            root_meaning: model.root_meaning().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClustersReport {
    pub schema_version: u32,
    pub family: String,
    pub root_count: usize,
    pub cluster_size: usize,
    pub cluster_count: usize,
    pub clusters: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GenSetCheckReport {
    pub schema_version: u32,
    pub family: String,
    pub roots: Vec<usize>,
    pub generates: bool,
    pub minimal: bool,
    /// "residual-element" or "removable-root" when a claim fails.
    pub witness_kind: Option<String>,
    /// Image sequence of the residual element, if that is the witness.
    pub witness_element: Option<Vec<usize>>,
    /// The removable root, if that is the witness.
    pub witness_root: Option<usize>,
}

impl GenSetCheckReport {
    pub fn new(family: String, r: &GenSetReport) -> Self {
        let (kind, element, root) = match &r.witness {
            Some(Witness::Residual(p)) => (
                Some("residual-element".to_string()),
                Some(p.images().collect()),
                None,
            ),
            Some(Witness::Removable(i)) => (Some("removable-root".to_string()), None, Some(*i)),
            None => (None, None, None),
        };
        GenSetCheckReport {
            schema_version: SCHEMA_VERSION,
            family,
            roots: r.roots.clone(),
            generates: r.generates,
            minimal: r.minimal,
            witness_kind: kind,
            witness_element: element,
            witness_root: root,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MgsEnumerateReport {
    pub schema_version: u32,
    pub family: String,
    /// Present when only the least-cardinality sets were requested.
    pub minimum_cardinality: Option<usize>,
    pub count: u64,
    pub sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MgsReduceReport {
    pub schema_version: u32,
    pub family: String,
    pub input: Vec<usize>,
    pub reduced: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TowerReport {
    pub ordering: Vec<usize>,
    pub length: usize,
    pub degree_sequence: Vec<u64>,
    /// Orders of the distinct subgroups in the chain, starting with |G|.
    pub field_subgroup_orders: Vec<u64>,
    pub terminates_at_splitting_field: bool,
    /// Image sequence of a nontrivial residual element for a chain that
    /// stops short of the splitting field.
    pub witness_element: Option<Vec<usize>>,
}

impl TowerReport {
    pub fn new(t: &Tower) -> Self {
        TowerReport {
            ordering: t.ordering.clone(),
            length: t.length,
            degree_sequence: t.degree_sequence.clone(),
            field_subgroup_orders: t.distinct_fields.iter().map(|h| h.order() as u64).collect(),
            terminates_at_splitting_field: t.terminates_at_splitting_field,
            witness_element: t.witness.as_ref().map(|p| p.images().collect()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TowersReport {
    pub schema_version: u32,
    pub family: String,
    /// Least length over the listed towers, when the query asked for it.
    pub least_length: Option<usize>,
    pub count: u64,
    pub towers: Vec<TowerReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerifyRunReport {
    pub schema_version: u32,
    pub reports: Vec<TheoremReport>,
    pub all_pass: bool,
}

/// Emit a report in the requested format.
pub trait Emit: Serialize {
    fn table(&self) -> String;
    fn csv(&self) -> String;

    fn json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::invariant(format!("serialization failed: {e}")))
    }

    fn emit(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Json => self.json()?,
            OutputFormat::Table => self.table(),
            OutputFormat::Csv => self.csv(),
        })
    }
}

/// Parse a JSON report back; used to guarantee round-tripping.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::domain(format!("bad report JSON: {e}")))
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    fields.iter().map(|f| csv_escape(f)).collect::<Vec<_>>().join(",")
}

fn join_usize(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn join_u64(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl Emit for ModelInfoReport {
    fn table(&self) -> String {
        format!(
            "model            {}\n\
             roots            {}\n\
             group order      {}\n\
             transitive       {}\n\
             faithful         {}\n\
             cluster size r   {}\n\
             cluster count s  {}\n\
             labels           {}\n",
            self.family,
            self.root_count,
            self.group_order,
            self.transitive,
            self.faithful,
            self.cluster_size,
            self.cluster_count,
            self.root_meaning
        )
    }

    fn csv(&self) -> String {
        let header = "family,root_count,group_order,transitive,faithful,cluster_size,cluster_count";
        format!(
            "{header}\n{}\n",
            csv_row(&[
                self.family.clone(),
                self.root_count.to_string(),
                self.group_order.to_string(),
                self.transitive.to_string(),
                self.faithful.to_string(),
                self.cluster_size.to_string(),
                self.cluster_count.to_string(),
            ])
        )
    }
}

impl Emit for ClustersReport {
    fn table(&self) -> String {
        let mut out = format!(
            "model {}: n = {}, r = {}, s = {}\n",
            self.family, self.root_count, self.cluster_size, self.cluster_count
        );
        for (i, c) in self.clusters.iter().enumerate() {
            out.push_str(&format!("cluster {i}: {{{}}}\n", join_usize(c)));
        }
        out.push_str(&format!("representatives: {}\n", join_usize(&self.representatives)));
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("cluster_index,roots\n");
        for (i, c) in self.clusters.iter().enumerate() {
            out.push_str(&csv_row(&[i.to_string(), join_usize(c)]));
            out.push('\n');
        }
        out
    }
}

impl Emit for GenSetCheckReport {
    fn table(&self) -> String {
        let mut out = format!(
            "roots {{{}}} on {}: generates = {}, minimal = {}\n",
            join_usize(&self.roots),
            self.family,
            self.generates,
            self.minimal
        );
        if let Some(kind) = &self.witness_kind {
            match kind.as_str() {
                "residual-element" => out.push_str(&format!(
                    "witness: nontrivial residual element [{}]\n",
                    join_usize(self.witness_element.as_deref().unwrap_or(&[]))
                )),
                _ => out.push_str(&format!(
                    "witness: root {} is removable\n",
                    self.witness_root.unwrap_or(0)
                )),
            }
        }
        out
    }

    fn csv(&self) -> String {
        format!(
            "roots,generates,minimal,witness_kind,witness\n{}\n",
            csv_row(&[
                join_usize(&self.roots),
                self.generates.to_string(),
                self.minimal.to_string(),
                self.witness_kind.clone().unwrap_or_default(),
                self.witness_element
                    .as_deref()
                    .map(join_usize)
                    .or(self.witness_root.map(|r| r.to_string()))
                    .unwrap_or_default(),
            ])
        )
    }
}

impl Emit for MgsEnumerateReport {
    fn table(&self) -> String {
        let mut out = match self.minimum_cardinality {
            Some(card) => format!(
                "{} minimum minimal generating sets of cardinality {card} on {}\n",
                self.count, self.family
            ),
            None => format!("{} minimal generating sets on {}\n", self.count, self.family),
        };
        for s in &self.sets {
            out.push_str(&format!("{{{}}}\n", join_usize(s)));
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("cardinality,roots\n");
        for s in &self.sets {
            out.push_str(&csv_row(&[s.len().to_string(), join_usize(s)]));
            out.push('\n');
        }
        out
    }
}

impl Emit for MgsReduceReport {
    fn table(&self) -> String {
        format!(
            "input   {{{}}}\nreduced {{{}}}\n",
            join_usize(&self.input),
            join_usize(&self.reduced)
        )
    }

    fn csv(&self) -> String {
        format!(
            "input,reduced\n{}\n",
            csv_row(&[join_usize(&self.input), join_usize(&self.reduced)])
        )
    }
}

impl Emit for TowersReport {
    fn table(&self) -> String {
        let mut out = match self.least_length {
            Some(l) => format!(
                "{} distinct towers of least length {l} on {}\n",
                self.count, self.family
            ),
            None => format!("{} towers on {}\n", self.count, self.family),
        };
        for t in &self.towers {
            out.push_str(&format!(
                "order [{}]: length {}, degrees ({}){}\n",
                join_usize(&t.ordering),
                t.length,
                join_u64(&t.degree_sequence),
                if t.terminates_at_splitting_field {
                    ""
                } else {
                    " — does not reach the splitting field"
                }
            ));
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("ordering,length,degree_sequence,terminates\n");
        for t in &self.towers {
            out.push_str(&csv_row(&[
                join_usize(&t.ordering),
                t.length.to_string(),
                join_u64(&t.degree_sequence),
                t.terminates_at_splitting_field.to_string(),
            ]));
            out.push('\n');
        }
        out
    }
}

impl Emit for VerifyRunReport {
    fn table(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let status = match &r.skipped {
                Some(reason) => format!("SKIP ({reason})"),
                None if r.pass => "PASS".to_string(),
                None => "FAIL".to_string(),
            };
            out.push_str(&format!("{status:<4} {} {}\n", r.id, r.parameters));
            if !r.pass && r.skipped.is_none() {
                out.push_str(&format!("     claimed:  {}\n     observed: {}\n", r.claimed, r.observed));
            }
        }
        out.push_str(&format!(
            "{} checks, {} passed, {} failed, {} skipped\n",
            self.reports.len(),
            self.reports.iter().filter(|r| r.pass).count(),
            self.reports.iter().filter(|r| !r.pass && r.skipped.is_none()).count(),
            self.reports.iter().filter(|r| r.skipped.is_some()).count(),
        ));
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("id,parameters,claimed,observed,pass,skipped,elapsed_ms\n");
        for r in &self.reports {
            out.push_str(&csv_row(&[
                r.id.clone(),
                r.parameters.to_string(),
                r.claimed.to_string(),
                r.observed.to_string(),
                r.pass.to_string(),
                r.skipped.clone().unwrap_or_default(),
                r.elapsed_ms.to_string(),
            ]));
            out.push('\n');
        }
        out
    }
}
