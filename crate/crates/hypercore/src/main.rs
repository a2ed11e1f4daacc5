use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hypercore::census;
use hypercore::configs;
use hypercore::constructions;
use hypercore::core_search::{self, MinCoreOutcome};
use hypercore::harness;
use hypercore::hypergraph::{ConfigWitness, CoreCertificate, Hypergraph3};
use hypercore::io;

#[derive(Parser)]
#[command(name = "hypercore", version, about = "Cores and dense configurations in 3-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the intersecting-pair census and the first witness of each
    /// small-core finder.
    Census { file: PathBuf },
    /// Search for a small core.
    Core {
        file: PathBuf,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        retries: usize,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Search for k vertices spanning at least l edges.
    Config {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Enumerate 3-edge/6-vertex configurations of a linear host.
    C63 {
        file: PathBuf,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Split classes, build the auxiliary clique hypergraph, and try to
    /// assemble a (14, 10) witness.
    Bes14 {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a core on at most 15 vertices via paired
    /// configurations.
    Core15 {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Emit the per-k bounds table.
    Table {
        #[arg(long, default_value_t = 4)]
        kmin: usize,
        #[arg(long, default_value_t = 15)]
        kmax: usize,
        /// Vertices per class of the scanned random tripartite
        /// instances.
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Strip,
    Sample,
    Cycle,
}

#[derive(Subcommand)]
enum GenCommand {
    /// The modular sum construction on 3p vertices with p^2 edges.
    Modular {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random tripartite instance with n vertices per class and m
    /// distinct edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add-and-delete generator for a (k, l)-configuration-free
    /// instance.
    Avoid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triple system of a group given as a .grp multiplication table,
    /// over all pairs.
    Group {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn witness_json(w: &ConfigWitness) -> serde_json::Value {
    json!({
        "vertices": w.vertices,
        "edges": w.edges,
        "k": w.k,
        "l": w.l,
    })
}

fn certificate_json(c: &CoreCertificate) -> serde_json::Value {
    json!({
        "vertices": c.vertices,
        "edges": c.edges,
    })
}

fn emit_instance(h: &Hypergraph3, out: Option<PathBuf>) -> hypercore::Result<()> {
    let text = io::to_h3(h);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run() -> hypercore::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Census { file } => {
            let h = io::read_hypergraph(&file)?;
            let out = json!({
                "n": h.n(),
                "m": h.m(),
                "pair_census": census::pair_census(&h),
                "k221": census::find_k221(&h).as_ref().map(witness_json),
                "six_core": census::find_6core(&h).as_ref().map(witness_json),
                "c4": census::intersection_graph_c4(&h).as_ref().map(witness_json),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Core {
            file,
            kmax,
            budget,
            method,
            seed,
            retries,
        } => {
            let h = io::read_hypergraph(&file)?;
            let out = match method {
                Method::Exact => {
                    let res = core_search::min_core(&h, kmax, budget);
                    let (status, cert) = match res.outcome {
                        MinCoreOutcome::Smallest(c) => ("found", Some(c)),
                        MinCoreOutcome::CertifiedNone => ("none", None),
                        MinCoreOutcome::BudgetExhausted(best) => ("budget-exhausted", best),
                    };
                    json!({
                        "method": "exact",
                        "status": status,
                        "certificate": cert.as_ref().map(certificate_json),
                        "nodes_expanded": res.nodes_expanded,
                    })
                }
                Method::Strip => {
                    let cert = core_search::two_core(&h);
                    json!({
                        "method": "strip",
                        "status": if cert.is_some() { "found" } else { "none" },
                        "certificate": cert.as_ref().map(certificate_json),
                        "nodes_expanded": 0,
                    })
                }
                Method::Sample => {
                    let cert = core_search::subsample_strip(&h, seed, retries);
                    json!({
                        "method": "sample",
                        "status": if cert.is_some() { "found" } else { "none" },
                        "certificate": cert.as_ref().map(certificate_json),
                        "sample_size": core_search::subsample_size(h.n(), h.m().max(1)),
                        "seed": seed,
                        "nodes_expanded": 0,
                    })
                }
                Method::Cycle => {
                    let res = core_search::cycle_core(&h);
                    json!({
                        "method": "cycle",
                        "status": if res.is_some() { "found" } else { "none" },
                        "certificate": res.as_ref().map(|r| certificate_json(&r.certificate)),
                        "cycle_len": res.as_ref().map(|r| r.cycle_len),
                        "nodes_expanded": 0,
                    })
                }
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Gen(gen) => match gen {
            GenCommand::Modular { p, out } => {
                emit_instance(&constructions::modular_construction(p)?, out)?;
            }
            GenCommand::Random { n, m, seed, out } => {
                emit_instance(&constructions::random_tripartite(n, m, seed)?, out)?;
            }
            GenCommand::Avoid {
                n,
                k,
                l,
                m,
                seed,
                out,
            } => {
                emit_instance(&constructions::avoid_config_generator(n, k, l, m, seed)?, out)?;
            }
            GenCommand::Group { table, out } => {
                let rows = io::parse_grp(&std::fs::read_to_string(table)?)?;
                let t = constructions::CayleyTable::from_rows(rows)?;
                let order = t.order();
                let all: Vec<(usize, usize)> = (0..order)
                    .flat_map(|a| (0..order).map(move |b| (a, b)))
                    .collect();
                emit_instance(&constructions::group_system(t, &all)?.host, out)?;
            }
        },
        Command::Config { file, k, l, budget } => {
            let h = io::read_hypergraph(&file)?;
            let res = configs::find_config(&h, k, l, budget);
            let (status, witness) = match res.outcome {
                configs::FindOutcome::Witness(w) => ("found", Some(w)),
                configs::FindOutcome::CertifiedNone => ("none", None),
                configs::FindOutcome::BudgetExhausted => ("budget-exhausted", None),
            };
            let out = json!({
                "k": k,
                "l": l,
                "status": status,
                "witness": witness.as_ref().map(witness_json),
                "nodes_expanded": res.nodes_expanded,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::C63 {
            file,
            count_only,
            limit,
        } => {
            let h = io::read_hypergraph(&file)?;
            let cfgs = configs::enumerate_63(&h, limit)?;
            let out = if count_only {
                json!({ "count": cfgs.len() })
            } else {
                json!({
                    "count": cfgs.len(),
                    "configs": cfgs
                        .iter()
                        .map(|c| json!({
                            "edges": c.edges,
                            "deg2": c.deg2,
                            "deg1": c.deg1,
                        }))
                        .collect::<Vec<_>>(),
                })
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Bes14 { file, seed } => {
            let h = io::read_hypergraph(&file)?;
            let out = match configs::build_aux(&h, seed)? {
                configs::AuxOutcome::Witness1410(w) => json!({
                    "status": "witness",
                    "witness": witness_json(&w),
                }),
                configs::AuxOutcome::Aux(aux) => {
                    let (total, packed) = configs::count_k43(&aux);
                    let witness = configs::assemble_1410(&h, &aux);
                    json!({
                        "status": if witness.is_some() { "witness" } else { "no-witness" },
                        "kept_configs": aux.kept.len(),
                        "cliques": total,
                        "edge_disjoint_packing": packed,
                        "witness": witness.as_ref().map(witness_json),
                    })
                }
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Core15 { file, budget } => {
            let h = io::read_hypergraph(&file)?;
            let cert = configs::find_core15(&h, budget)?;
            let out = json!({
                "status": if cert.is_some() { "found" } else { "none" },
                "certificate": cert.as_ref().map(certificate_json),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Table {
            kmin,
            kmax,
            n,
            seeds,
            budget,
            out,
        } => {
            let report = harness::table1(kmin, kmax, n, &seeds, budget)?;
            harness::emit_report(&report, &out)?;
            eprintln!(
                "wrote {} rows to {} and {}",
                report.rows.len(),
                out.display(),
                out.with_extension("json").display()
            );
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
