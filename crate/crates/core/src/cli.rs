//! Batch command line: `gen`, `metrics`, `certify`, `solve`, `count`,
//! `export` and `sequence`.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 validation failure,
//! 3 certification inconclusive. Data goes to stdout or `--out`; timings go
//! to stderr only.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::builders::{build_from_recipe, pad_blocks, BuildKind, BuildRecipe};
use crate::error::Error;
use crate::io::{
    certificate_to_string, export_dot, instance_to_string, parse_certificate, read_instance, save_certificate,
    save_instance, write_atomic,
};
use crate::mobius::{mobius_orbit, DEFAULT_MAX_STEPS};
use crate::rational::{parse_rational, RationalString};
use crate::sequences::{
    hypergraph_sequence, lemma_n_sequence, simple_sequence, GradeSequence, HypergraphGradeSequence,
};
use crate::transversal::{
    check_certificate, count_transversals, find_transversal_with, propagate_certificate, SearchOptions, SearchOutcome,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "indtrans",
    version,
    about = "Independent transversal constructions and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an instance and write it as JSON.
    Gen {
        #[arg(long)]
        kind: BuildKind,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        k: Option<u64>,
        /// `simple` or a comma-separated list such as `0,8,13,20`.
        #[arg(long)]
        seq: Option<String>,
        /// Append isolated blocks up to this many blocks.
        #[arg(long)]
        pad: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print degree metrics of an instance file.
    Metrics {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Produce or check a non-existence certificate.
    Certify {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// When propagation is inconclusive, fall back to exact search and
        /// fail only if that cannot refute either.
        #[arg(long)]
        expect_none: bool,
        /// Replay this certificate file instead of producing one.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Search for one independent transversal.
    Solve {
        file: PathBuf,
        #[arg(long)]
        deterministic: bool,
        /// Node limit.
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Count independent transversals exactly.
    Count {
        file: PathBuf,
        #[arg(long)]
        cap: Option<u128>,
        /// Accepted for symmetry with `solve`; counting is always ordered.
        #[arg(long)]
        deterministic: bool,
    },
    /// Write Graphviz DOT.
    Export {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print grade sequences or orbits of z -> alpha / (1 - z).
    Sequence {
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Validate this comma-separated sequence instead of generating one.
        #[arg(long)]
        validate: Option<String>,
        #[arg(long)]
        mobius_alpha: Option<String>,
        #[arg(long, default_value = "0")]
        start: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        steps: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Validation(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

/// Runs the command line with `argv` (program name first) and returns the
/// process exit code.
pub fn cli_main<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Validation(m)) => {
            eprintln!("validation failed: {m}");
            EXIT_VALIDATION
        }
        Err(Failure::Inconclusive(m)) => {
            eprintln!("inconclusive: {m}");
            EXIT_INCONCLUSIVE
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse {s:?} as a comma-separated list of integers")))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => write_atomic(path, |w| Ok(w.write_all(text.as_bytes())?))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(Error::from)?;
        }
    }
    Ok(())
}

fn json_line(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::Gen {
            kind,
            t,
            epsilon,
            r,
            alpha,
            k,
            seq,
            pad,
            out,
        } => {
            let t = match (kind, t) {
                (BuildKind::Stars, t) => t.unwrap_or(0),
                (_, Some(t)) => t,
                (_, None) => return Err(Failure::Usage("--t is required".into())),
            };
            let needs_epsilon = match kind {
                BuildKind::BoundedDegree | BuildKind::LocalDegree => true,
                BuildKind::Stars => false,
                _ => seq.is_none(),
            };
            if needs_epsilon && epsilon.is_none() {
                return Err(Failure::Usage(format!(
                    "--epsilon is required for kind {}",
                    kind.name()
                )));
            }
            if kind == BuildKind::Stars && k.is_none() {
                return Err(Failure::Usage("--k is required for kind stars".into()));
            }
            let sequence_override = match seq.as_deref() {
                None => None,
                Some("simple") => Some(simple_sequence(t)?.values),
                Some(list) => Some(parse_list(list)?),
            };
            let recipe = BuildRecipe {
                kind,
                t,
                r,
                epsilon,
                alpha,
                k_stars: k,
                sequence_override,
            };
            let started = Instant::now();
            let mut inst = build_from_recipe(&recipe)?;
            if let Some(n) = pad {
                inst = pad_blocks(&inst, n)?;
            }
            eprintln!(
                "built {} blocks, {} vertices, {} edges in {:.3?}",
                inst.num_blocks(),
                inst.num_vertices(),
                inst.num_edges(),
                started.elapsed()
            );
            match out {
                Some(path) => save_instance(&path, &inst)?,
                None => emit(None, &instance_to_string(&inst))?,
            }
            Ok(())
        }
        Command::Metrics { file, format } => {
            let inst = read_instance(&file)?;
            let m = inst.metrics()?;
            let text = match format {
                Format::Json => json_line(&m),
                Format::Csv => {
                    let mut s = String::from("block_id,size,degree,avg_degree\n");
                    for b in &m.per_block {
                        s.push_str(&format!("{},{},{},{}\n", b.block_id.0, b.size, b.degree, b.avg_degree));
                    }
                    s
                }
            };
            emit(None, &text)
        }
        Command::Certify {
            file,
            out,
            expect_none,
            check,
        } => {
            let inst = read_instance(&file)?;
            if let Some(path) = check {
                let cert = parse_certificate(&std::fs::read_to_string(&path).map_err(Error::from)?)?;
                return if check_certificate(&inst, &cert)? {
                    eprintln!(
                        "certificate valid: {} steps, {} emptied",
                        cert.steps.len(),
                        cert.conclusion
                    );
                    Ok(())
                } else {
                    Err(Failure::Validation("certificate does not replay".into()))
                };
            }
            let started = Instant::now();
            match propagate_certificate(&inst) {
                Some(cert) => {
                    eprintln!(
                        "certificate: {} steps, {} emptied, {:.3?}",
                        cert.steps.len(),
                        cert.conclusion,
                        started.elapsed()
                    );
                    match out {
                        Some(path) => save_certificate(&path, &cert)?,
                        None => emit(None, &certificate_to_string(&cert))?,
                    }
                    Ok(())
                }
                None if expect_none => {
                    let opts = SearchOptions {
                        deterministic: true,
                        ..Default::default()
                    };
                    match find_transversal_with(&inst, &opts).outcome {
                        SearchOutcome::NoneExhaustive => {
                            eprintln!(
                                "propagation inconclusive; exhaustive search confirms no independent transversal"
                            );
                            Ok(())
                        }
                        SearchOutcome::Found { .. } => {
                            Err(Failure::Inconclusive("an independent transversal exists".into()))
                        }
                        _ => Err(Failure::Inconclusive("search did not finish".into())),
                    }
                }
                None => Err(Failure::Inconclusive(
                    "propagation reached a fixpoint without emptying a block".into(),
                )),
            }
        }
        Command::Solve {
            file,
            deterministic,
            cap,
            seed,
        } => {
            let inst = read_instance(&file)?;
            let report = find_transversal_with(
                &inst,
                &SearchOptions {
                    deterministic,
                    seed,
                    node_limit: cap,
                },
            );
            eprintln!("searched {} nodes in {:.3?}", report.nodes_explored, report.wall_time);
            emit(None, &json_line(&report))
        }
        Command::Count { file, cap, .. } => {
            let inst = read_instance(&file)?;
            let report = count_transversals(&inst, cap);
            eprintln!("searched {} nodes in {:.3?}", report.nodes_explored, report.wall_time);
            emit(None, &json_line(&report))
        }
        Command::Export { file, out } => {
            let inst = read_instance(&file)?;
            emit(out.as_deref(), &export_dot(&inst))
        }
        Command::Sequence {
            t,
            epsilon,
            r,
            validate,
            mobius_alpha,
            start,
            steps,
        } => {
            if let Some(alpha) = mobius_alpha {
                let orbit = mobius_orbit(&parse_rational(&alpha)?, &parse_rational(&start)?, steps)?;
                let report = serde_json::json!({
                    "alpha": orbit.alpha.to_string(),
                    "outcome": orbit.outcome,
                    "points": orbit.points.len(),
                    "last": orbit.points.last().map(|p| p.to_string()),
                });
                return emit(None, &json_line(&report));
            }
            let t = t.ok_or_else(|| Failure::Usage("--t is required".into()))?;
            if let Some(list) = validate {
                let values = parse_list(&list)?;
                let violations = if r == 2 {
                    let seq = match &epsilon {
                        Some(e) => GradeSequence::explicit(t, values, parse_rational(e)?),
                        None => GradeSequence::with_minimal_epsilon(t, values),
                    };
                    println!("epsilon {}", RationalString(seq.epsilon.clone()));
                    seq.violations()
                } else {
                    let seq = HypergraphGradeSequence::with_minimal_epsilon(t, r, values);
                    println!("epsilon {}", RationalString(seq.epsilon.clone()));
                    seq.violations()
                };
                if violations.is_empty() {
                    println!("valid");
                    return Ok(());
                }
                for v in &violations {
                    println!("{v}");
                }
                return Err(Failure::Validation(format!("{} violations", violations.len())));
            }
            let epsilon = epsilon.ok_or_else(|| Failure::Usage("--epsilon is required".into()))?;
            let eps = parse_rational(&epsilon)?;
            let values = if r == 2 {
                lemma_n_sequence(t, &eps)?.values
            } else {
                hypergraph_sequence(t, r, &eps)?.values
            };
            let line: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            emit(None, &format!("{}\n", line.join(",")))
        }
    }
}
