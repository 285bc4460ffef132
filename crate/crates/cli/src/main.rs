use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tt_core::oracle::{self, OracleError, DEFAULT_FUEL};
use tt_core::surface::{self, print, ElabError, ParseError, Span};
use tt_core::syntax::alpha_eq;
use tt_core::testkit::{self, check_case, check_renaming, gen_case};
use tt_core::{nbe, Context, Signature, Term, Ty};

const EXIT_TYPE_ERROR: u8 = 1;
const EXIT_PARSE_ERROR: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tt",
    version,
    about = "Type checker and normalizer for a small dependent type theory"
)]
struct Cli {
    /// Print a JSON result record instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check every declaration of a file.
    Check { file: PathBuf },
    /// Print the normal form of an expression.
    Normalize {
        file: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[command(flatten)]
        ty: TypeArg,
        /// Also normalize by rewriting and fail if the results differ.
        #[arg(long)]
        oracle: bool,
    },
    /// Decide definitional equality of two expressions.
    Equal {
        file: PathBuf,
        #[arg(short = 'e', long = "expr", num_args = 1, required = true)]
        exprs: Vec<String>,
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Run the property suites on random terms over the file's postulates.
    Fuzz {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        size: usize,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args)]
struct TypeArg {
    /// Type to check against; inferred when omitted.
    #[arg(short = 't', long = "type")]
    ty: Option<String>,
}

#[derive(Serialize)]
struct Record {
    status: &'static str,
    output: Option<String>,
    error: Option<ErrorRecord>,
}

#[derive(Serialize)]
struct ErrorRecord {
    code: String,
    line: usize,
    col: usize,
    message: String,
}

struct Failure {
    exit: u8,
    error: ErrorRecord,
    /// Where the error occurred, for plain-text reports.
    origin: String,
}

impl Failure {
    fn at(exit: u8, code: &str, origin: &str, src: &str, span: Span, message: String) -> Failure {
        let (line, col) = span.line_col(src);
        Failure {
            exit,
            error: ErrorRecord {
                code: code.to_string(),
                line,
                col,
                message,
            },
            origin: origin.to_string(),
        }
    }

    fn general(exit: u8, code: &str, origin: &str, message: String) -> Failure {
        Failure {
            exit,
            error: ErrorRecord {
                code: code.to_string(),
                line: 0,
                col: 0,
                message,
            },
            origin: origin.to_string(),
        }
    }

    fn parse(origin: &str, src: &str, e: ParseError) -> Failure {
        Failure::at(
            EXIT_PARSE_ERROR,
            "parse-error",
            origin,
            src,
            e.span,
            e.to_string(),
        )
    }

    fn elab(origin: &str, src: &str, e: ElabError) -> Failure {
        Failure::at(
            EXIT_TYPE_ERROR,
            e.code(),
            origin,
            src,
            e.span,
            e.to_string(),
        )
    }

    fn oracle(e: OracleError) -> Failure {
        let code = match e {
            OracleError::FuelExhausted(_) => "fuel-exhausted",
            OracleError::IllTyped(_) => "internal",
        };
        Failure::general(EXIT_TYPE_ERROR, code, "oracle", e.to_string())
    }
}

/// Outcome of a command: text output, plus a non-zero verdict when the
/// command ran fine but answered "no".
struct Success {
    status: &'static str,
    output: String,
    exit: u8,
}

impl Success {
    fn ok(output: String) -> Success {
        Success {
            status: "ok",
            output,
            exit: 0,
        }
    }
}

fn fuel() -> usize {
    std::env::var("TT_FUEL")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_FUEL)
}

fn load(file: &Path) -> Result<Signature, Failure> {
    let origin = file.display().to_string();
    let src = std::fs::read_to_string(file)
        .map_err(|e| Failure::general(EXIT_TYPE_ERROR, "io", &origin, e.to_string()))?;
    let decls = surface::parse_file(&src).map_err(|e| Failure::parse(&origin, &src, e))?;
    surface::elaborate(&decls).map_err(|e| Failure::elab(&origin, &src, e))
}

/// Parses and checks `src` as a closed expression, against `ty` if given.
fn closed(sig: &Signature, src: &str, ty: Option<&str>) -> Result<(Term, Ty), Failure> {
    let expr = surface::parse_expr(src).map_err(|e| Failure::parse("expression", src, e))?;
    let ty_expr = match ty {
        Some(t) => {
            let te = surface::parse_ty(t).map_err(|e| Failure::parse("type", t, e))?;
            surface::Elaborator::new(sig)
                .ty(&surface::Scope::default(), &te)
                .map_err(|e| Failure::elab("type", t, e))?;
            Some(te)
        }
        None => None,
    };
    surface::elaborate_closed(sig, &expr, ty_expr.as_ref()).map_err(|e| {
        // Errors located in the type annotation are reported against it.
        match (ty, &ty_expr) {
            (Some(t), Some(te)) if e.span == te.span => Failure::elab("type", t, e),
            _ => Failure::elab("expression", src, e),
        }
    })
}

fn internal(e: nbe::NbeError) -> Failure {
    Failure::general(EXIT_TYPE_ERROR, "internal", "normalizer", e.to_string())
}

fn run_check(file: &Path) -> Result<Success, Failure> {
    let sig = load(file)?;
    Ok(Success::ok(format!(
        "{}: {} declarations checked",
        file.display(),
        sig.len()
    )))
}

fn run_normalize(
    file: &Path,
    expr: &str,
    ty: Option<&str>,
    use_oracle: bool,
) -> Result<Success, Failure> {
    let sig = load(file)?;
    let (t, ty) = closed(&sig, expr, ty)?;
    let ctx = Context::empty();
    let nf = nbe::normalize_tm(&sig, &ctx, &ty, &t).map_err(internal)?;
    let nf_ty = nbe::normalize_ty(&sig, &ctx, &ty).map_err(internal)?;
    let shown = format!(
        "{} : {}",
        print::print_nf(&nf, &[]),
        print::print_nf_ty(&nf_ty, &[])
    );
    if use_oracle {
        let rewritten =
            oracle::rw_normalize(&sig, &ctx, &ty, &t, fuel()).map_err(Failure::oracle)?;
        if !alpha_eq(&rewritten, &nf.erase()) {
            return Ok(Success {
                status: "disagree",
                output: format!(
                    "{shown}\noracle: {}",
                    print::term_to_string(&rewritten, &[])
                ),
                exit: EXIT_DISAGREE,
            });
        }
    }
    Ok(Success::ok(shown))
}

fn run_equal(file: &Path, exprs: &[String], ty: Option<&str>) -> Result<Success, Failure> {
    let [first, second] = exprs else {
        return Err(Failure::general(
            EXIT_PARSE_ERROR,
            "usage",
            "arguments",
            format!(
                "`equal` takes exactly two expressions, found {}",
                exprs.len()
            ),
        ));
    };
    let sig = load(file)?;
    let (t, ty) = closed(&sig, first, ty)?;
    let shown_ty = print::ty_to_string(&ty, &[]);
    let (u, _) = closed(&sig, second, Some(&shown_ty))?;
    let ctx = Context::empty();
    let nt = nbe::normalize_tm(&sig, &ctx, &ty, &t).map_err(internal)?;
    let nu = nbe::normalize_tm(&sig, &ctx, &ty, &u).map_err(internal)?;
    if nt == nu {
        Ok(Success::ok(format!("equal: {}", print::print_nf(&nt, &[]))))
    } else {
        Ok(Success {
            status: "not-equal",
            output: format!(
                "not equal: {} and {}",
                print::print_nf(&nt, &[]),
                print::print_nf(&nu, &[])
            ),
            exit: EXIT_DISAGREE,
        })
    }
}

fn run_fuzz(
    file: &Path,
    count: usize,
    seed: u64,
    size: usize,
    threads: Option<usize>,
) -> Result<Success, Failure> {
    let sig = load(file)?;
    let fuel = fuel();
    let threads = threads
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .max(1);
    let next = AtomicUsize::new(0);
    let failures = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                if let Err(msg) = fuzz_one(&sig, seed.wrapping_add(i as u64), size, fuel) {
                    failures.lock().expect("no worker panicked").push((i, msg));
                }
            });
        }
    });
    let mut failures = failures.into_inner().expect("no worker panicked");
    failures.sort();
    if failures.is_empty() {
        return Ok(Success::ok(format!(
            "{count} cases passed (seed {seed}, size {size})"
        )));
    }
    let mut out = format!(
        "{} of {count} cases failed (seed {seed}, size {size})",
        failures.len()
    );
    for (i, msg) in failures.iter().take(10) {
        out.push_str(&format!("\ncase {i}: {msg}"));
    }
    Ok(Success {
        status: "failed",
        output: out,
        exit: EXIT_DISAGREE,
    })
}

/// One fuzz case: the single-term properties, then renaming stability.
fn fuzz_one(sig: &Signature, seed: u64, size: usize, fuel: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let case = gen_case(sig, 3, size, &mut rng);
    check_case(sig, &case, fuel).map_err(|f| format!("{f} for {:?}", case.term))?;
    let r = testkit::gen_renaming(sig, 3, &mut rng);
    let ty = testkit::gen_ty(sig, r.source(), 3, &mut rng);
    if let Ok(t) = testkit::gen_term(sig, r.source(), &ty, size, &mut rng) {
        check_renaming(sig, &r, &ty, &t)
            .map_err(|f| format!("{f} for {t:?} under {:?}", r.map()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file } => run_check(file),
        Command::Normalize {
            file,
            expr,
            ty,
            oracle,
        } => run_normalize(file, expr, ty.ty.as_deref(), *oracle),
        Command::Equal { file, exprs, ty } => run_equal(file, exprs, ty.ty.as_deref()),
        Command::Fuzz {
            file,
            count,
            seed,
            size,
            threads,
        } => run_fuzz(file, *count, *seed, *size, *threads),
    };
    let (record, exit) = match result {
        Ok(s) => (
            Record {
                status: s.status,
                output: Some(s.output),
                error: None,
            },
            s.exit,
        ),
        Err(f) => {
            if !cli.json {
                let e = &f.error;
                if e.line > 0 {
                    eprintln!(
                        "{}:{}:{}: error[{}]: {}",
                        f.origin, e.line, e.col, e.code, e.message
                    );
                } else {
                    eprintln!("{}: error[{}]: {}", f.origin, e.code, e.message);
                }
            }
            (
                Record {
                    status: "error",
                    output: None,
                    error: Some(f.error),
                },
                f.exit,
            )
        }
    };
    if cli.json {
        println!(
            "{}",
            serde_json::to_string(&record).expect("record serializes")
        );
    } else if let Some(out) = &record.output {
        println!("{out}");
    }
    ExitCode::from(exit)
}
