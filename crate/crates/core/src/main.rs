//! Command-line front end.
//!
//! Exit codes: 0 success / all checks pass, 1 any verification failure,
//! 2 budget exceeded, 64 usage error, 65 domain error, 70 internal
//! invariant failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cluster_towers::clusters::{cluster_partition, representatives};
use cluster_towers::gensets::{enumerate_minimal, is_minimal, minimum_minimal, reduce_to_minimal};
use cluster_towers::models::{
    affine_model, custom_model, symmetric_model, GaloisModel,
};
use cluster_towers::permgroup::parse_generator_file;
use cluster_towers::report::{
    ClustersReport, Emit, GenSetCheckReport, MgsEnumerateReport, MgsReduceReport, ModelInfoReport,
    OutputFormat, TowerReport, TowersReport, VerifyRunReport, SCHEMA_VERSION,
};
use cluster_towers::towers::{build_tower, enumerate_distinct_towers, min_length_towers};
use cluster_towers::verify::{
    battery_exit_code, default_battery, verify_all, verify_theorem, VerifyParams,
};
use cluster_towers::{Budgets, Error};

#[derive(Parser)]
#[command(
    name = "cluster-towers",
    about = "Root clusters, minimal generating sets, and cluster towers of splitting fields, \
             computed through the Galois correspondence on explicit permutation groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Maximum elements a generator closure may produce.
    #[arg(long, global = true, env = "CLUSTER_TOWERS_CLOSURE_BUDGET", default_value_t = 1_000_000)]
    closure_budget: u64,
    /// Maximum candidate subsets tested while enumerating minimal sets.
    #[arg(long, global = true, env = "CLUSTER_TOWERS_SUBSET_BUDGET", default_value_t = 10_000_000)]
    subset_budget: u64,
    /// Maximum nodes visited by the distinct-tower search.
    #[arg(long, global = true, env = "CLUSTER_TOWERS_DFS_BUDGET", default_value_t = 10_000_000)]
    dfs_budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

/// Exactly one of --affine, --symmetric, --generators selects the model.
#[derive(Args)]
struct ModelSpec {
    /// Affine model on n roots (odd n ≥ 3), the Galois group of x^n − c.
    #[arg(long, group = "model")]
    affine: Option<usize>,
    /// Full symmetric group on m roots.
    #[arg(long, group = "model")]
    symmetric: Option<usize>,
    /// Generator file for a custom model (one permutation per line as
    /// comma-separated images; optional leading `n=<degree>`).
    #[arg(long, group = "model", required_unless_present_any = ["affine", "symmetric"])]
    generators: Option<PathBuf>,
    /// Name tag for a custom model.
    #[arg(long, default_value = "custom")]
    name: String,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a model.
    Model {
        #[command(subcommand)]
        cmd: ModelCmd,
    },
    /// Compute the cluster partition of a model.
    Clusters {
        #[command(flatten)]
        spec: ModelSpec,
    },
    /// Minimal generating sets of the splitting field.
    Mgs {
        #[command(subcommand)]
        cmd: MgsCmd,
    },
    /// Cluster towers.
    Towers {
        #[command(subcommand)]
        cmd: TowersCmd,
    },
    /// Run formula-vs-brute-force verification checks.
    Verify {
        /// Check id (e.g. thm-2.9ii) or `all` for the default battery.
        id: String,
        /// Affine-model parameter n for checks that take one.
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated distinct odd primes for the product checks.
        #[arg(long)]
        primes: Option<String>,
        /// Cardinality parameter k for the symmetric-group checks.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Order, transitivity, faithfulness, and cluster shape of a model.
    Info {
        #[command(flatten)]
        spec: ModelSpec,
    },
}

#[derive(Subcommand)]
enum MgsCmd {
    /// List every minimal generating set (sizes ascending).
    Enumerate {
        #[command(flatten)]
        spec: ModelSpec,
        /// Only report sets up to this cardinality.
        #[arg(long)]
        max_cardinality: Option<usize>,
        /// Only report the sets of least cardinality.
        #[arg(long)]
        minimum: bool,
    },
    /// Test one root set for generation and minimality.
    Check {
        #[command(flatten)]
        spec: ModelSpec,
        /// Comma-separated root labels, e.g. 0,1.
        #[arg(long)]
        roots: String,
    },
    /// Shrink a generating set to a minimal subset (largest-first deletion).
    Reduce {
        #[command(flatten)]
        spec: ModelSpec,
        #[arg(long)]
        roots: String,
    },
}

#[derive(Subcommand)]
enum TowersCmd {
    /// Build the tower of one ordering of distinct-cluster roots.
    Build {
        #[command(flatten)]
        spec: ModelSpec,
        /// Comma-separated root labels in adjunction order, e.g. 35,21,15.
        #[arg(long)]
        order: String,
    },
    /// Enumerate all distinct cluster towers.
    Enumerate {
        #[command(flatten)]
        spec: ModelSpec,
    },
    /// Enumerate the towers of least length.
    Minlen {
        #[command(flatten)]
        spec: ModelSpec,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn build_model(spec: &ModelSpec, budgets: &Budgets) -> cluster_towers::Result<GaloisModel> {
    let chosen = [
        spec.affine.is_some(),
        spec.symmetric.is_some(),
        spec.generators.is_some(),
    ]
    .iter()
    .filter(|&&x| x)
    .count();
    if chosen != 1 {
        return Err(Error::domain(
            "exactly one of --affine, --symmetric, --generators must be given",
        ));
    }
    if let Some(n) = spec.affine {
        return affine_model(n);
    }
    if let Some(m) = spec.symmetric {
        return symmetric_model(m);
    }
    let path = spec.generators.as_ref().unwrap();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    let (declared, perms) = parse_generator_file(&text)?;
    let degree = declared
        .or_else(|| perms.first().map(|p| p.degree()))
        .ok_or_else(|| Error::domain("generator file contains no permutations"))?;
    custom_model(degree, &perms, &spec.name, budgets.closure_elements)
}

fn parse_labels(text: &str) -> cluster_towers::Result<Vec<usize>> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|e| Error::domain(format!("bad root label {tok:?}: {e}")))
        })
        .collect()
}

fn parse_primes(text: &str) -> cluster_towers::Result<Vec<u64>> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|e| Error::domain(format!("bad prime {tok:?}: {e}")))
        })
        .collect()
}

fn write_out(output: &Option<PathBuf>, text: &str) -> cluster_towers::Result<()> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> cluster_towers::Result<i32> {
    let budgets = Budgets {
        closure_elements: cli.closure_budget,
        subset_tests: cli.subset_budget,
        dfs_nodes: cli.dfs_budget,
        ..Budgets::default()
    };
    let format: OutputFormat = cli.format.into();
    let mut exit = 0;

    let text = match &cli.command {
        Command::Model { cmd: ModelCmd::Info { spec } } => {
            let model = build_model(spec, &budgets)?;
            let partition = cluster_partition(&model)?;
            ModelInfoReport::new(&model, &partition).emit(format)?
        }
        Command::Clusters { spec } => {
            let model = build_model(spec, &budgets)?;
            let partition = cluster_partition(&model)?;
            ClustersReport {
                schema_version: SCHEMA_VERSION,
                family: model.family().to_string(),
                root_count: model.root_count(),
                cluster_size: partition.r,
                cluster_count: partition.s,
                representatives: representatives(&partition),
                clusters: partition.clusters,
            }
            .emit(format)?
        }
        Command::Mgs { cmd } => match cmd {
            MgsCmd::Enumerate { spec, max_cardinality, minimum } => {
                let model = build_model(spec, &budgets)?;
                let (min_card, sets) = if *minimum {
                    let (card, sets, _) = minimum_minimal(&model, budgets.subset_tests)?;
                    (Some(card), sets)
                } else {
                    (None, enumerate_minimal(&model, *max_cardinality, budgets.subset_tests)?)
                };
                MgsEnumerateReport {
                    schema_version: SCHEMA_VERSION,
                    family: model.family().to_string(),
                    minimum_cardinality: min_card,
                    count: sets.len() as u64,
                    sets,
                }
                .emit(format)?
            }
            MgsCmd::Check { spec, roots } => {
                let model = build_model(spec, &budgets)?;
                let report = is_minimal(&model, &parse_labels(roots)?)?;
                GenSetCheckReport::new(model.family().to_string(), &report).emit(format)?
            }
            MgsCmd::Reduce { spec, roots } => {
                let model = build_model(spec, &budgets)?;
                let input = parse_labels(roots)?;
                let reduced = reduce_to_minimal(&model, &input)?;
                MgsReduceReport {
                    schema_version: SCHEMA_VERSION,
                    family: model.family().to_string(),
                    input,
                    reduced,
                }
                .emit(format)?
            }
        },
        Command::Towers { cmd } => match cmd {
            TowersCmd::Build { spec, order } => {
                let model = build_model(spec, &budgets)?;
                let tower = build_tower(&model, &parse_labels(order)?)?;
                TowersReport {
                    schema_version: SCHEMA_VERSION,
                    family: model.family().to_string(),
                    least_length: None,
                    count: 1,
                    towers: vec![TowerReport::new(&tower)],
                }
                .emit(format)?
            }
            TowersCmd::Enumerate { spec } => {
                let model = build_model(spec, &budgets)?;
                let towers = enumerate_distinct_towers(&model, budgets.dfs_nodes)?;
                TowersReport {
                    schema_version: SCHEMA_VERSION,
                    family: model.family().to_string(),
                    least_length: None,
                    count: towers.len() as u64,
                    towers: towers.iter().map(TowerReport::new).collect(),
                }
                .emit(format)?
            }
            TowersCmd::Minlen { spec } => {
                let model = build_model(spec, &budgets)?;
                let (least, towers) = min_length_towers(&model, budgets.dfs_nodes)?;
                TowersReport {
                    schema_version: SCHEMA_VERSION,
                    family: model.family().to_string(),
                    least_length: Some(least),
                    count: towers.len() as u64,
                    towers: towers.iter().map(TowerReport::new).collect(),
                }
                .emit(format)?
            }
        },
        Command::Verify { id, n, primes, k } => {
            let reports = if id == "all" {
                verify_all(&default_battery(), &budgets)?
            } else {
                let params = VerifyParams {
                    n: *n,
                    primes: primes.as_deref().map(parse_primes).transpose()?,
                    k: *k,
                };
                vec![verify_theorem(id, &params, &budgets)?]
            };
            exit = battery_exit_code(&reports);
            VerifyRunReport {
                schema_version: SCHEMA_VERSION,
                all_pass: reports.iter().all(|r| r.pass),
                reports,
            }
            .emit(format)?
        }
    };
    write_out(&cli.output, &text)?;
    Ok(exit)
}
