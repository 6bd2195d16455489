//! Command-line surface: Markov bases, resolutions, verification, and the
//! hull cross-check.
//!
//! Exit codes: 0 success, 1 usage, 2 precondition or input error,
//! 3 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use scarflift::chain::{cellular_differential, FreeChainComplex};
use scarflift::demo::{run_demo, EXAMPLE_PROBLEM};
use scarflift::error::Error;
use scarflift::hull::{compare_scarf_hull, default_window, hull_faces};
use scarflift::lift3::{assemble_horseshoe, lattice_resolution_z3};
use scarflift::problem::ProblemSpec;
use scarflift::scarf::build_scarf;
use scarflift::serialize::{parse_complex, render_complex};

#[derive(Parser)]
#[command(name = "scarflift", version, about = "Exact resolutions of lattice-binomial plus monomial ideals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Rank-(1,3,2) resolution of the lattice-ideal quotient.
    Lattice,
    /// Lifted resolution of the binomial-plus-monomial ideal.
    Sum,
    /// Quotient resolution of the image monomial ideal.
    ScarfOnly,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Markov basis and the genericity flag.
    Markov { problem: PathBuf },
    /// Compute a resolution and its verification report.
    Resolve {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Write the serialized complex here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Strand verification bound on the normal value of classes.
        #[arg(long)]
        classes: Option<BigInt>,
        /// Optional prime for a modular rank pre-pass.
        #[arg(long)]
        prime: Option<u64>,
        problem: PathBuf,
    },
    /// Re-verify a serialized complex against a problem.
    Verify {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        classes: Option<BigInt>,
        problem: PathBuf,
    },
    /// Compare the Scarf complex against the hull oracle.
    HullCheck {
        /// Number of fundamental domains of padding.
        #[arg(long)]
        window: Option<i64>,
        /// Embedding parameter (integer or a/b).
        #[arg(long, default_value = "25")]
        t: String,
        problem: PathBuf,
    },
    /// Run the built-in worked example end to end.
    Demo,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 1,
        Error::Parse { .. }
        | Error::DimensionMismatch(..)
        | Error::DependentBasis
        | Error::NotAntichain(_)
        | Error::NotInLattice(_)
        | Error::NotInSet(_)
        | Error::CongruentReps(..)
        | Error::WindowRequired(_)
        | Error::InfiniteNeighborSet(_)
        | Error::NotGeneric(_)
        | Error::Unsupported(_)
        | Error::WrongMode(_)
        | Error::Precondition(_) => 2,
        Error::MarkovVerification(_)
        | Error::NegativeCellularExponent(_)
        | Error::NotHomogeneous(_)
        | Error::InfiniteStrand(_)
        | Error::Lifting(_)
        | Error::Verification(_) => 3,
    }
}

fn load_problem(path: &PathBuf) -> Result<ProblemSpec, Error> {
    let text = std::fs::read_to_string(path)?;
    ProblemSpec::parse(&text)
}

fn parse_t(s: &str) -> Result<BigRational, Error> {
    let parse_err = || Error::Parse {
        line: 0,
        msg: format!("bad t value '{s}'"),
    };
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| parse_err())?;
        let d: BigInt = b.trim().parse().map_err(|_| parse_err())?;
        if d == BigInt::from(0) {
            return Err(parse_err());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.trim().parse().map_err(|_| parse_err())?;
        Ok(BigRational::from_integer(n))
    }
}

fn emit_complex(c: &FreeChainComplex, out: &Option<PathBuf>) -> Result<(), Error> {
    let text = render_complex(c);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Runs the strand sweep and prints the verification block; returns false on
/// any failure.
fn report_complex(c: &FreeChainComplex, classes: &Option<BigInt>, prime: Option<u64>) -> bool {
    let dd = c.verify_dd_zero();
    let dd_ok = dd.passed();
    println!(
        "dd-zero: {}",
        if dd_ok {
            if dd.aug_checked && !dd.aug_literal {
                "pass (augmentation zero modulo the lattice ideal)"
            } else {
                "pass"
            }
        } else {
            "FAIL"
        }
    );
    for (i, r, col) in &dd.composite_failures {
        println!("  nonzero composite at d{} o d{} entry ({r},{col})", i, i + 1);
    }
    for colidx in &dd.aug_failures {
        println!("  augmentation composite nonzero at column {colidx}");
    }
    println!(
        "minimality: {}",
        if c.check_minimality() { "minimal" } else { "not minimal" }
    );
    let mut strand_ok = true;
    if c.lattice.is_some() && c.mode == scarflift::chain::DegreeMode::ClassModLambda {
        let bound = classes.clone().or_else(|| {
            c.max_generator_value().map(|v| v * BigInt::from(3))
        });
        let p = prime.unwrap_or(scarflift::chain::DEFAULT_PRIME);
        if let Some(bound) = bound {
            match c.strand_sweep_with(&bound, true, Some(p)) {
                Ok(report) => {
                    strand_ok = report.passed();
                    println!(
                        "strand homology: {} ({} classes, normal value <= {bound})",
                        if strand_ok { "exact" } else { "FAIL" },
                        report.checked_classes
                    );
                    for (class, pos, h) in &report.homology_failures {
                        println!("  nonzero homology {h} at position {pos}, class {class}");
                    }
                    for (class, alt, want) in &report.euler_failures {
                        println!("  euler mismatch at class {class}: {alt} vs {want}");
                    }
                }
                Err(e) => {
                    strand_ok = false;
                    println!("strand homology: error: {e}");
                }
            }
        }
    }
    if let Some(p) = prime {
        println!("prime pre-pass: p = {p} (rational ranks settle anything the pre-pass cannot)");
    }
    dd_ok && strand_ok
}

fn validate_prime(p: Option<u64>) -> Result<Option<u64>, Error> {
    match p {
        Some(p) if p < 2 || p >= (1 << 31) => Err(Error::Precondition(format!(
            "prime {p} out of range (need 2 <= p < 2^31)"
        ))),
        other => Ok(other),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Markov { problem } => {
            let spec = load_problem(&problem)?;
            let lat = spec.lattice()?;
            let mb = lat.markov_basis()?;
            println!("markov basis ({} elements):", mb.elements.len());
            for e in &mb.elements {
                println!("  {e}");
            }
            println!("generic: {}", lat.is_generic()?);
            println!("search: {}", mb.window_note);
            Ok(0)
        }
        Cmd::Resolve {
            mode,
            out,
            classes,
            prime,
            problem,
        } => {
            let spec = load_problem(&problem)?;
            let classes = classes.or(spec.classes.clone());
            let prime = validate_prime(prime.or(spec.prime))?;
            let complex = match mode {
                Mode::Lattice => {
                    let lat = spec.lattice()?;
                    lattice_resolution_z3(&lat)?.to_complex()?
                }
                Mode::Sum => {
                    let ls = spec.lambda_set()?;
                    let lifted = assemble_horseshoe(&ls)?;
                    println!(
                        "scarf orbit counts: {:?}",
                        lifted.scarf_counts
                    );
                    lifted.complex
                }
                Mode::ScarfOnly => {
                    let ls = spec.lambda_set()?;
                    let scarf = build_scarf(&ls, 2.min(ls.dim() - 1))?;
                    println!("scarf orbit counts: {:?}", scarf.orbit_counts());
                    let cell = cellular_differential(&scarf, &ls)?;
                    cell.quotient_pi(ls.lattice())?
                }
            };
            println!("ranks: {:?}", complex.ranks());
            let ok = report_complex(&complex, &classes, prime);
            emit_complex(&complex, &out)?;
            Ok(if ok { 0 } else { 3 })
        }
        Cmd::Verify {
            complex,
            classes,
            problem,
        } => {
            let spec = load_problem(&problem)?;
            let classes = classes.or(spec.classes.clone());
            let text = std::fs::read_to_string(&complex)?;
            let c = parse_complex(&text)?;
            let homog = c.verify_homogeneity();
            println!(
                "homogeneity: {}",
                match &homog {
                    Ok(()) => "pass".to_string(),
                    Err(e) => format!("FAIL ({e})"),
                }
            );
            let ok = report_complex(&c, &classes, validate_prime(spec.prime)?);
            Ok(if ok && homog.is_ok() { 0 } else { 3 })
        }
        Cmd::HullCheck { window, t, problem } => {
            let spec = load_problem(&problem)?;
            let ls = spec.lambda_set()?;
            let t = parse_t(&t)?;
            let domains = window.or(spec.window).unwrap_or(2);
            let report = compare_scarf_hull(&ls, domains, &t)?;
            println!(
                "interior faces (hull):  {:?}",
                report.interior_counts_hull
            );
            println!(
                "interior faces (scarf): {:?}",
                report.interior_counts_scarf
            );
            let matched = report.is_match();
            println!("comparison: {}", if matched { "MATCH" } else { "MISMATCH" });
            for d in 0..3 {
                for f in &report.hull_only[d] {
                    println!("  hull-only {d}-face: {f:?}");
                }
                for f in &report.scarf_only[d] {
                    println!("  scarf-only {d}-face: {f:?}");
                }
            }
            // stability of the interior face set under t -> t + 1
            let scarf = build_scarf(&ls, 2)?;
            let (lo, hi, margin) = default_window(&ls, &scarf, domains);
            let ha = hull_faces(&ls, &lo, &hi, &margin, &t)?;
            let tb = &t + BigRational::from_integer(BigInt::from(1));
            let hb = hull_faces(&ls, &lo, &hi, &margin, &tb)?;
            let stable = ha.interior_faces() == hb.interior_faces();
            println!(
                "stability t={} vs t={}: {}",
                t,
                tb,
                if stable { "identical interior faces" } else { "DIFFER" }
            );
            Ok(if matched && stable { 0 } else { 3 })
        }
        Cmd::Demo => {
            println!("problem:");
            for line in EXAMPLE_PROBLEM.lines().filter(|l| !l.starts_with('#')) {
                println!("  {line}");
            }
            let outcome = run_demo()?;
            for (line, ok) in &outcome.lines {
                println!("[{}] {line}", if *ok { "pass" } else { "FAIL" });
            }
            for note in &outcome.notes {
                println!("{note}");
            }
            Ok(if outcome.all_passed() { 0 } else { 3 })
        }
    }
}
