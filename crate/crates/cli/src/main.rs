use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use periodica_core::action::check_adem_coherence;
use periodica_core::fp::Prime;
use periodica_core::parse::{parse_element, parse_polynomial, ParseError};
use periodica_core::periodicity::{periodicity_report, SearchConfig};
use periodica_core::report::{render_coherence, render_periodicity, render_verification, ReportDocument};
use periodica_core::ringfile::{load_ring, LoadedRing};
use periodica_core::steenrod::algebra;
use periodica_core::verify::{conditional_relation_audit, ConditionalShape, Verifier, VerifyOptions};
use periodica_core::Error;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;

#[derive(Parser)]
#[command(name = "periodica", version, about = "Steenrod algebra normal forms, actions and periodicity checks")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print elapsed time to stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible normal form of an expression.
    Normalize {
        expr: String,
        #[arg(short, long, default_value_t = 2)]
        prime: u32,
    },
    /// Admissible monomials of one degree, with their excess.
    Basis {
        #[arg(short, long, default_value_t = 2)]
        prime: u32,
        #[arg(short, long)]
        degree: u32,
    },
    /// Whether Sq^k is indecomposable, and a decomposition if not.
    Decompose {
        #[arg(short)]
        k: u32,
    },
    /// Apply a Steenrod expression to a class of a ring.
    Act {
        #[arg(short, long)]
        ring: PathBuf,
        expr: String,
        element: String,
    },
    /// Search for periodicity elements and audit them.
    Periodicity {
        #[arg(short, long)]
        ring: PathBuf,
        /// Stop at the minimal period.
        #[arg(long)]
        min: bool,
        /// Exhaustive search when p^dim - 1 is at most this bound.
        #[arg(long, default_value_t = 4095)]
        bound: u64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check Adem relations, instability and relation invariance of an action.
    Coherence {
        #[arg(short, long)]
        ring: PathBuf,
        /// Highest operation degree checked; defaults to the cap.
        #[arg(long)]
        limit: Option<u32>,
    },
    /// Run a named verifier.
    Verify {
        /// power-of-two, half-power-family, square-shift-family, odd-leading,
        /// odd-trailing, beta-identity, final-coefficient, eight-model,
        /// candidate-16
        id: String,
        #[arg(short)]
        k: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(short)]
        p: Option<u32>,
        #[arg(long)]
        lambda: Option<u32>,
        #[arg(short)]
        a: Option<u32>,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, default_value_t = periodica_core::verify::DEFAULT_DEGREE_BUDGET)]
        budget: u32,
    },
    /// Evaluate a conditional relation on a class of a ring.
    Audit {
        #[arg(short, long)]
        ring: PathBuf,
        /// adams, cube-8, product-16, sq16-a or sq16-b
        #[arg(short, long)]
        shape: String,
        element: String,
    },
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_failure(src: &str, e: ParseError) -> Failure {
    let line = src.lines().nth(e.line.saturating_sub(1)).unwrap_or(src);
    let caret = " ".repeat(e.column.saturating_sub(1)) + "^";
    Failure::Usage(format!("{e}\n  {line}\n  {caret}"))
}

fn load(path: &Path) -> Result<LoadedRing, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    load_ring(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn prime(p: u32) -> Result<Prime, Failure> {
    Ok(Prime::new(p)?)
}

fn emit<T: Serialize>(json: bool, kind: &str, body: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", ReportDocument::new(kind, body).to_json());
    } else {
        print!("{}", text());
    }
}

#[derive(Serialize)]
struct NormalizeBody {
    prime: u32,
    input: String,
    normal_form: String,
    terms: Vec<TermBody>,
}

#[derive(Serialize)]
struct TermBody {
    monomial: String,
    coefficient: u32,
    degree: u32,
    excess: u32,
}

#[derive(Serialize)]
struct BasisBody {
    prime: u32,
    degree: u32,
    monomials: Vec<TermBody>,
}

#[derive(Serialize)]
struct DecomposeBody {
    k: u32,
    indecomposable: bool,
    decomposition: Option<String>,
}

#[derive(Serialize)]
struct ActBody {
    operation: String,
    element: String,
    degree: u32,
    result: String,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Normalize { expr, prime: p } => {
            let p = prime(p)?;
            let e = parse_element(&expr, p).map_err(|err| parse_failure(&expr, err))?;
            let nf = algebra(p).normalize(&e);
            let body = NormalizeBody {
                prime: p.value(),
                input: expr,
                normal_form: nf.to_string(),
                terms: nf
                    .terms()
                    .map(|(m, c)| TermBody {
                        monomial: m.to_string(),
                        coefficient: c.residue(),
                        degree: m.degree(),
                        excess: m.excess().unwrap_or(0),
                    })
                    .collect(),
            };
            emit(json, "normalize", &body, || format!("{}\n", body.normal_form));
        }
        Command::Basis { prime: p, degree } => {
            let p = prime(p)?;
            let basis = algebra(p).admissible_basis(degree);
            let body = BasisBody {
                prime: p.value(),
                degree,
                monomials: basis
                    .monomials
                    .iter()
                    .map(|m| TermBody {
                        monomial: m.to_string(),
                        coefficient: 1,
                        degree,
                        excess: m.excess().unwrap_or(0),
                    })
                    .collect(),
            };
            emit(json, "basis", &body, || {
                let mut s = format!("degree {degree}, p = {}: {} admissible monomials\n", p.value(), body.monomials.len());
                for t in &body.monomials {
                    s += &format!("  {} (excess {})\n", t.monomial, t.excess);
                }
                s
            });
        }
        Command::Decompose { k } => {
            let alg = algebra(Prime::TWO);
            let indecomposable = alg.is_indecomposable(k)?;
            let decomposition = if indecomposable {
                None
            } else {
                Some(alg.decompose_power(k)?.to_string())
            };
            let body = DecomposeBody {
                k,
                indecomposable,
                decomposition,
            };
            emit(json, "decompose", &body, || match &body.decomposition {
                Some(d) => format!("{d}\n"),
                None => format!("Sq^{k} is indecomposable\n"),
            });
        }
        Command::Act { ring, expr, element } => {
            let loaded = load(&ring)?;
            let p = loaded.basis.prime();
            let op = parse_element(&expr, p).map_err(|err| parse_failure(&expr, err))?;
            let poly = parse_polynomial(&element, loaded.basis.presentation())
                .map_err(|err| parse_failure(&element, err))?;
            let e = loaded.basis.polynomial(&poly)?;
            let result = loaded.table.act(&op, &e)?;
            let body = ActBody {
                operation: op.to_string(),
                element: loaded.basis.format(&e),
                degree: result.degree(),
                result: loaded.basis.format(&result),
            };
            emit(json, "act", &body, || format!("{}\n", body.result));
        }
        Command::Periodicity {
            ring,
            min,
            bound,
            samples,
            seed,
        } => {
            let loaded = load(&ring)?;
            let config = SearchConfig {
                enumeration_bound: bound,
                samples,
                seed,
            };
            let report = periodicity_report(&loaded.basis, Some(&loaded.table), min, &config)?;
            emit(json, "periodicity", &report, || render_periodicity(&report));
            if !report.audits_passed() {
                return Ok(EXIT_FAILED);
            }
            if !report.complete {
                return Ok(EXIT_INCOMPLETE);
            }
        }
        Command::Coherence { ring, limit } => {
            let loaded = load(&ring)?;
            let limit = limit.unwrap_or(loaded.basis.cap());
            let report = check_adem_coherence(&loaded.table, limit)?;
            emit(json, "coherence", &report, || render_coherence(&report));
            if !report.passed {
                return Ok(EXIT_FAILED);
            }
        }
        Command::Verify {
            id,
            k,
            k_max,
            p,
            lambda,
            a,
            cap,
            budget,
        } => {
            let opts = VerifyOptions {
                k,
                k_max,
                p,
                lambda,
                a,
                cap,
                budget,
            };
            let reports = Verifier::new().run(&id, &opts)?;
            emit(json, "verification", &reports, || {
                reports.iter().map(render_verification).collect::<Vec<_>>().join("\n")
            });
            if reports.iter().any(|r| !r.passed) {
                return Ok(EXIT_FAILED);
            }
        }
        Command::Audit { ring, shape, element } => {
            let shape: ConditionalShape = shape.parse()?;
            let loaded = load(&ring)?;
            let poly = parse_polynomial(&element, loaded.basis.presentation())
                .map_err(|err| parse_failure(&element, err))?;
            let e = loaded.basis.polynomial(&poly)?;
            let report = conditional_relation_audit(&loaded.table, &e, shape)?;
            emit(json, "verification", &vec![report.clone()], || render_verification(&report));
        }
    }
    Ok(0)
}

fn configure_workers() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("PERIODICA_WORKERS") {
        let n: usize = v
            .parse()
            .map_err(|_| Failure::Usage(format!("PERIODICA_WORKERS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let timing = cli.timing;
    let start = std::time::Instant::now();
    let code = match configure_workers().and_then(|_| run(cli)) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    };
    if timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    ExitCode::from(code)
}
