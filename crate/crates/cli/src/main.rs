use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kneser_lab::bounds::{
    alt_number_with, bound_report, cd_with, max_alt_fixed_perm_with, AltCaps, AltSearchMode, ReportOptions,
};
use kneser_lab::budget::Budget;
use kneser_lab::coloring::{
    chromatic_number_with, default_local_cap, local_chromatic_number_with, ChromaticOptions, ChromaticValue,
};
use kneser_lab::fan::{exhaustive_fan_check, Sampling};
use kneser_lab::hardness::{join_construction, join_construction_shuffled, verify_join};
use kneser_lab::hypercore::parse_hypergraph;
use kneser_lab::kneser::{build_kneser_capped, complete_ksubsets};
use kneser_lab::rainbow::{sweep_verify, SweepOptions, WitnessSize};
use kneser_lab::{report, Error, Hypergraph};

const OK: u8 = 0;
const COUNTEREXAMPLE: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

/// Exact computations on Kneser hypergraphs.
///
/// Hypergraph files: a header line `n m`, then one edge per line as 1-based vertex ids;
/// `#` starts a comment. Every report is sorted-key JSON. Exit status: 0 success,
/// 1 counterexample found, 2 usage or input error, 3 resource cap or time limit hit.
#[derive(Parser, Debug)]
#[command(name = "kneser-lab", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Wall-clock budget for searches, in milliseconds.
    #[arg(long, global = true, env = "KNESER_LAB_TIME_LIMIT_MS", value_parser = clap::value_parser!(u64).range(1..))]
    time_limit_ms: Option<u64>,
    /// Deterministic budget: maximum number of search nodes.
    #[arg(long, global = true, env = "KNESER_LAB_NODE_LIMIT", value_parser = clap::value_parser!(u64).range(1..))]
    node_limit: Option<u64>,
    /// Maximum number of Kneser hypergraph edges to materialize.
    #[arg(long, global = true, env = "KNESER_LAB_EDGE_CAP", default_value_t = kneser_lab::kneser::DEFAULT_EDGE_CAP,
          value_parser = positive_usize)]
    kg_edge_cap: usize,
    /// Largest n for the exact fixed-permutation alternation search.
    #[arg(long, global = true, env = "KNESER_LAB_ALT_INNER_CAP", default_value_t = AltCaps::default().inner,
          value_parser = positive_usize)]
    alt_inner_cap: usize,
    /// Largest n for enumerating all permutations in exact alternation mode.
    #[arg(long, global = true, env = "KNESER_LAB_ALT_OUTER_CAP", default_value_t = AltCaps::default().outer,
          value_parser = positive_usize)]
    alt_outer_cap: usize,
    /// Omit elapsed_ms so identical runs give byte-identical reports.
    #[arg(long, global = true, env = "KNESER_LAB_NO_TIMING")]
    no_timing: bool,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

impl Global {
    fn budget(&self) -> Budget {
        Budget::unlimited()
            .and_nodes(self.node_limit)
            .and_time(self.time_limit_ms.map(Duration::from_millis))
    }

    fn caps(&self) -> AltCaps {
        AltCaps {
            inner: self.alt_inner_cap,
            outer: self.alt_outer_cap,
        }
    }

    fn echo(&self) -> Value {
        json!({
            "time_limit_ms": self.time_limit_ms,
            "node_limit": self.node_limit,
            "kg_edge_cap": self.kg_edge_cap,
            "alt_inner_cap": self.alt_inner_cap,
            "alt_outer_cap": self.alt_outer_cap,
        })
    }
}

/// Where the hypergraph comes from.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Hypergraph file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// All K-subsets of {1..N}.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    complete: Option<Vec<usize>>,
}

impl Input {
    fn load(&self) -> Result<Hypergraph, Failure> {
        match (&self.input, &self.complete) {
            (Some(path), _) => {
                let text = read(path)?;
                parse_hypergraph(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
            }
            (None, Some(nk)) => Ok(complete_ksubsets(nk[0], nk[1])?),
            (None, None) => unreachable!("clap requires one input"),
        }
    }

    fn echo(&self) -> Value {
        json!({
            "input": self.input.as_ref().map(|p| p.display().to_string()),
            "complete": self.complete,
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kneser hypergraph construction.
    Kneser {
        #[command(subcommand)]
        action: KneserAction,
    },
    /// Exact chromatic number of a hypergraph, or of KG^q of it with --kneser.
    Chromatic {
        #[command(flatten)]
        input: Input,
        /// Work on KG^q(H) instead of H.
        #[arg(long, value_name = "Q")]
        kneser: Option<usize>,
    },
    /// Exact local chromatic number, searched over colorings with at most --max-t colors.
    LocalChromatic {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "Q")]
        kneser: Option<usize>,
        /// Color cap; defaults to min(n, χ + 2).
        #[arg(long, value_parser = positive_usize)]
        max_t: Option<usize>,
    },
    /// q-colorability defect cd^q(H).
    Defect {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        q: usize,
    },
    /// Alternation number alt^q(H), or its value for one permutation with --perm.
    Alt {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        q: usize,
        /// Comma-separated 1-based permutation.
        #[arg(long, value_delimiter = ',', conflicts_with = "exact")]
        perm: Option<Vec<usize>>,
        /// Minimize over every permutation.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// All lower bounds for χ(KG^q(H)) and χ_ℓ, optionally checked against exact values.
    Report {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        q: usize,
        /// Exact alternation number and exact χ(KG^q(H)).
        #[arg(long)]
        exact: bool,
        /// Also compute χ_ℓ(KG^q(H)) exactly.
        #[arg(long)]
        exact_local: bool,
        #[arg(long, value_parser = positive_usize)]
        local_max_t: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Checks that proper colorings of KG^p(H) contain a rainbow complete p-partite witness.
    VerifyRainbow {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = RMode::Defect)]
        r_mode: RMode,
        /// Color cap; defaults to χ + 1.
        #[arg(long, value_parser = positive_usize)]
        max_t: Option<usize>,
        /// Enumerate exhaustively while there are at most this many canonical colorings.
        #[arg(long, env = "KNESER_LAB_EXHAUSTIVE_CAP", default_value_t = 1_000_000, value_parser = positive_usize)]
        exhaustive_cap: usize,
        /// Random colorings checked beyond the exhaustive cap.
        #[arg(long, default_value_t = 10_000, value_parser = positive_usize)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow non-prime p; the report is marked exploratory.
        #[arg(long)]
        force: bool,
    },
    /// Checks the combinatorial Fan lemma on sd(Z_q^{*n}) with labels in Z_q × {1..m}.
    FanCheck {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Check this many random equivariant labelings instead of all of them.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of labelings enumerated exhaustively.
        #[arg(long, env = "KNESER_LAB_LABELING_CAP", default_value_t = kneser_lab::fan::DEFAULT_LABELING_CAP,
              value_parser = clap::value_parser!(u64).range(1..))]
        labeling_cap: u64,
    },
    /// Compares max alt_id on the join of G with its copy against 2α(G).
    HardnessDemo {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Shuffle the numbering ρ with this seed instead of using input order.
        #[arg(long)]
        rho_seed: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum KneserAction {
    /// Writes KG^q(H) as a hypergraph file plus a JSON sidecar mapping kg vertices to base edges.
    Build {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        q: usize,
        /// Hypergraph file for KG^q(H); without it the text is embedded in the report.
        #[arg(long)]
        hg: Option<PathBuf>,
        /// Sidecar path; defaults to the --hg path with a .json extension.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RMode {
    Defect,
    Alternation,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => RESOURCE,
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

/// A finished command: its name, config echo, result and exit status.
struct Outcome {
    command: &'static str,
    config: Value,
    result: Value,
    status: u8,
}

fn kneser_for(h: &Hypergraph, q: Option<usize>, g: &Global) -> Result<Hypergraph, Failure> {
    match q {
        Some(q) => Ok(build_kneser_capped(h, q, g.kg_edge_cap)?.kg().clone()),
        None => Ok(h.clone()),
    }
}

fn run(cmd: &Command, g: &Global) -> Result<Outcome, Failure> {
    match cmd {
        Command::Kneser {
            action: KneserAction::Build { input, q, hg, sidecar },
        } => {
            let base = input.load()?;
            let k = build_kneser_capped(&base, *q, g.kg_edge_cap)?;
            let side = report::kneser_sidecar(&k);
            let mut result = json!({ "kneser": side });
            if let Some(hg) = hg {
                let side_path = sidecar.clone().unwrap_or_else(|| hg.with_extension("json"));
                write(hg, &k.kg().to_hg_string())?;
                write(&side_path, &report::emit(&side))?;
                result["hg"] = json!(hg.display().to_string());
                result["sidecar"] = json!(side_path.display().to_string());
            } else {
                result["hg_text"] = json!(k.kg().to_hg_string());
            }
            Ok(Outcome {
                command: "kneser build",
                config: json!({ "source": input.echo(), "q": q, "seed": 0 }),
                result,
                status: OK,
            })
        }
        Command::Chromatic { input, kneser } => {
            let h = kneser_for(&input.load()?, *kneser, g)?;
            let r = chromatic_number_with(
                &h,
                &ChromaticOptions {
                    budget: g.budget(),
                    start: 0,
                },
            );
            let status = if matches!(r.value, ChromaticValue::Bounds { .. }) {
                RESOURCE
            } else {
                OK
            };
            Ok(Outcome {
                command: "chromatic",
                config: json!({ "source": input.echo(), "kneser_q": kneser, "seed": 0 }),
                result: report::chromatic(&r),
                status,
            })
        }
        Command::LocalChromatic { input, kneser, max_t } => {
            let h = kneser_for(&input.load()?, *kneser, g)?;
            let max_t = match max_t {
                Some(t) => *t,
                None => {
                    let chi = chromatic_number_with(
                        &h,
                        &ChromaticOptions {
                            budget: g.budget(),
                            start: 0,
                        },
                    );
                    match chi.value {
                        ChromaticValue::Exact(x) => default_local_cap(h.vertex_count(), x),
                        ChromaticValue::Unbounded => {
                            return Err(Failure::usage("hypergraph has a singleton edge and no proper coloring"))
                        }
                        ChromaticValue::Bounds { .. } => {
                            return Err(Failure {
                                code: RESOURCE,
                                message: "budget exhausted computing χ for the default color cap; pass --max-t".into(),
                            })
                        }
                    }
                }
            };
            let r = local_chromatic_number_with(&h, max_t, &g.budget())?;
            Ok(Outcome {
                command: "local-chromatic",
                config: json!({ "source": input.echo(), "kneser_q": kneser, "max_t": max_t, "seed": 0 }),
                status: if r.complete { OK } else { RESOURCE },
                result: report::local(&r),
            })
        }
        Command::Defect { input, q } => {
            let h = input.load()?;
            let r = cd_with(&h, *q, &g.budget())?;
            Ok(Outcome {
                command: "defect",
                config: json!({ "source": input.echo(), "q": q, "seed": 0 }),
                status: if r.complete { OK } else { RESOURCE },
                result: report::defect(&r),
            })
        }
        Command::Alt {
            input,
            q,
            perm,
            exact,
            seed,
            restarts,
        } => {
            let h = input.load()?;
            let budget = g.budget();
            let r = match perm {
                Some(p) => {
                    if p.contains(&0) {
                        return Err(Failure::usage("--perm takes 1-based vertex ids"));
                    }
                    let pi: Vec<usize> = p.iter().map(|&v| v - 1).collect();
                    max_alt_fixed_perm_with(&h, *q, &pi, g.caps(), &budget)?
                }
                None => {
                    let mode = if *exact {
                        AltSearchMode::Exact
                    } else {
                        AltSearchMode::Heuristic {
                            seed: *seed,
                            restarts: *restarts,
                        }
                    };
                    alt_number_with(&h, *q, &mode, g.caps(), &budget)?
                }
            };
            Ok(Outcome {
                command: "alt",
                config: json!({
                    "source": input.echo(), "q": q, "perm": perm, "exact": exact,
                    "seed": seed, "restarts": restarts,
                }),
                status: if r.complete { OK } else { RESOURCE },
                result: report::alt(&r),
            })
        }
        Command::Report {
            input,
            q,
            exact,
            exact_local,
            local_max_t,
            seed,
            restarts,
        } => {
            let h = input.load()?;
            let opts = ReportOptions {
                alt_mode: if *exact {
                    AltSearchMode::Exact
                } else {
                    AltSearchMode::Heuristic {
                        seed: *seed,
                        restarts: *restarts,
                    }
                },
                caps: g.caps(),
                kg_edge_cap: g.kg_edge_cap,
                exact_chi: *exact || *exact_local,
                exact_local: *exact_local,
                local_max_t: *local_max_t,
                node_limit: g.node_limit,
                time_limit: g.time_limit_ms.map(Duration::from_millis),
            };
            let r = bound_report(&h, *q, &opts)?;
            let partial = !r.cd.complete
                || matches!(r.chi, Some(ChromaticValue::Bounds { .. }))
                || r.local.as_ref().is_some_and(|l| !l.complete);
            Ok(Outcome {
                command: "report",
                config: json!({
                    "source": input.echo(), "q": q, "exact": exact, "exact_local": exact_local,
                    "local_max_t": local_max_t, "seed": seed, "restarts": restarts,
                }),
                status: if !r.consistent() {
                    COUNTEREXAMPLE
                } else if partial {
                    RESOURCE
                } else {
                    OK
                },
                result: report::bounds(&r),
            })
        }
        Command::VerifyRainbow {
            input,
            p,
            r_mode,
            max_t,
            exhaustive_cap,
            samples,
            seed,
            force,
        } => {
            let h = input.load()?;
            let opts = SweepOptions {
                r_mode: match r_mode {
                    RMode::Defect => WitnessSize::Defect,
                    RMode::Alternation => WitnessSize::Alternation,
                },
                max_t: *max_t,
                exhaustive_cap: *exhaustive_cap,
                samples: *samples,
                seed: *seed,
                force: *force,
                alt_caps: g.caps(),
                kg_edge_cap: g.kg_edge_cap,
            };
            let r = sweep_verify(&h, *p, &opts)?;
            Ok(Outcome {
                command: "verify-rainbow",
                config: json!({
                    "source": input.echo(), "p": p, "max_t": max_t, "exhaustive_cap": exhaustive_cap,
                    "samples": samples, "seed": seed, "force": force,
                }),
                status: if r.passed() { OK } else { COUNTEREXAMPLE },
                result: report::sweep(&r),
            })
        }
        Command::FanCheck {
            q,
            n,
            m,
            samples,
            seed,
            labeling_cap,
        } => {
            let sampling = samples.map(|count| Sampling { seed: *seed, count });
            let r = exhaustive_fan_check(*q, *n, *m, sampling, *labeling_cap)?;
            Ok(Outcome {
                command: "fan-check",
                config: json!({
                    "q": q, "n": n, "m": m, "samples": samples, "seed": seed, "labeling_cap": labeling_cap,
                }),
                status: if r.violations == 0 { OK } else { COUNTEREXAMPLE },
                result: report::fan(&r),
            })
        }
        Command::HardnessDemo { graph, rho_seed } => {
            let text = read(graph)?;
            let gr = parse_hypergraph(&text).map_err(|e| Failure::usage(format!("{}: {e}", graph.display())))?;
            let join = match rho_seed {
                Some(s) => join_construction_shuffled(&gr, *s)?,
                None => join_construction(&gr)?,
            };
            let v = verify_join(join, g.caps(), &g.budget())?;
            Ok(Outcome {
                command: "hardness-demo",
                config: json!({ "graph": graph.display().to_string(), "rho_seed": rho_seed, "seed": rho_seed.unwrap_or(0) }),
                status: if v.equal { OK } else { COUNTEREXAMPLE },
                result: report::hardness(&v),
            })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli.command, &cli.global) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("kneser-lab: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let mut config = outcome.config;
    config["caps"] = cli.global.echo();
    let mut doc = json!({
        "tool": "kneser-lab",
        "version": env!("CARGO_PKG_VERSION"),
        "command": outcome.command,
        "config": config,
        "result": outcome.result,
        "status": outcome.status,
    });
    if !cli.global.no_timing {
        doc["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    let text = report::emit(&doc);
    match &cli.global.output {
        Some(path) => {
            if let Err(f) = write(path, &text) {
                eprintln!("kneser-lab: {}", f.message);
                return ExitCode::from(f.code);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.status)
}
