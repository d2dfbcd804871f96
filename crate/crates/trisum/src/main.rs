//! Command-line front end: decompositions, counts, enumerations, the
//! closed-form sphere count, the representation-based criteria, theorem
//! range verification, and the exception scanner.
//!
//! Exit codes: 0 pass/representable, 1 fail or counterexample found,
//! 2 non-representable (decompose), 64 usage error, 70 internal invariant
//! violation.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use trisum::arith::exact_sqrt;
use trisum::constructive::Provenance;
use trisum::reps::ParityStructure;
use trisum::{
    all_divisors_1mod4_by_representation, count_form, count_three_squares,
    decompose_odd_square_two_tri, decompose_sq_odd_sq_tri, decompose_two_odd_squares_tri,
    enum_sq_sq_tri, enum_sq_tri_tri, hurwitz_count, is_prime_3mod4_by_representation,
    scan_two_odd_sq_tri_exceptions, three_square_decompositions, verify, Certificate, Error, Form,
    Outcome, Parity, RepTriple, TheoremId, VerificationReport, KNOWN_TWO_ODD_SQ_TRI_EXCEPTIONS,
};

const EXIT_PASS: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_NON_REPRESENTABLE: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_INTERNAL: i32 = 70;

#[derive(Parser)]
#[command(
    name = "trisum",
    version,
    about = "Mixed sums of squares and triangular numbers: counts, certificates, criteria, and range verification",
    after_help = "The input-size guard defaults to 3e9 for any value entering a squaring \
                  operation; set TRISUM_MAX_GUARD to raise it."
)]
struct Cli {
    /// Emit one JSON object per result line instead of human-readable text
    #[arg(long, global = true)]
    json: bool,
    /// Include construction provenance in certificate output
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a self-validating decomposition certificate
    Decompose {
        form: DecomposeForm,
        /// The triangular index m (pipeline forms) or the target n
        n: u64,
    },
    /// Count representations of n by a ternary form
    Count {
        form: FormArg,
        n: u64,
        /// Parity constraint on x (sq-sq-tri, sq-tri-tri)
        #[arg(long, value_enum, default_value_t = ParityArg::Any)]
        parity_x: ParityArg,
        /// Parity constraint on y (sq-sq-tri only)
        #[arg(long, value_enum, default_value_t = ParityArg::Any)]
        parity_y: ParityArg,
        /// Require x = y (mod 2) to hold (true) or fail (false); sq-sq-tri only
        #[arg(long)]
        same_parity: Option<bool>,
        /// Count only all-odd solutions (scaled forms only)
        #[arg(long)]
        all_odd: bool,
    },
    /// List representations of n by a ternary form
    Enum {
        form: FormArg,
        n: u64,
        #[arg(long, value_enum, default_value_t = ParityArg::Any)]
        parity_x: ParityArg,
        #[arg(long, value_enum, default_value_t = ParityArg::Any)]
        parity_y: ParityArg,
        #[arg(long)]
        same_parity: Option<bool>,
        /// List only all-odd solutions (scaled forms) or constrain the
        /// parity shape (three-squares)
        #[arg(long)]
        all_odd: bool,
        /// Parity shape for three-squares enumeration
        #[arg(long, value_enum, default_value_t = StructureArg::Any)]
        structure: StructureArg,
    },
    /// Closed-form count of lattice points on x² + y² + z² = n² (odd n)
    Hurwitz {
        n: u64,
        /// Cross-check the closed form against brute-force enumeration
        #[arg(long)]
        check: bool,
    },
    /// Representation criterion: is p a prime congruent to 3 mod 4?
    Prime3 { p: u64 },
    /// Representation criterion: is every prime divisor of n congruent to 1 mod 4?
    Divisors1mod4 { n: u64 },
    /// Exhaustively verify a claim on [1, max]
    Verify {
        /// One of: T1.0i, T1.0ii, T1.0iii, T1.1i, T1.1i-b, T1.1ii, T2.1i, T2.1ii, L2.1, L2.2
        theorem_id: String,
        #[arg(long)]
        max: u64,
        /// Worker threads (results are independent of this)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Scan for non-triangular numbers that are not two odd squares plus a
    /// triangular number
    Exceptions {
        #[arg(long)]
        max: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecomposeForm {
    /// T_m = a² + b² + T_v with a, b odd
    TwoOddSqTri,
    /// 2T_m = a² + T_s + T_t with a odd
    OddSqTwoTri,
    /// n = a² + b² + T_v with b odd
    SqOddSqTri,
}

impl DecomposeForm {
    fn as_str(self) -> &'static str {
        match self {
            DecomposeForm::TwoOddSqTri => "two-odd-sq-tri",
            DecomposeForm::OddSqTwoTri => "odd-sq-two-tri",
            DecomposeForm::SqOddSqTri => "sq-odd-sq-tri",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormArg {
    #[value(name = "sq-sq-tri")]
    SqSqTri,
    #[value(name = "sq-tri-tri")]
    SqTriTri,
    #[value(name = "three-squares")]
    ThreeSquares,
    #[value(name = "x2-8y2-8z2")]
    X28,
    #[value(name = "x2-4y2-4z2")]
    X24,
}

impl FormArg {
    fn as_str(self) -> &'static str {
        match self {
            FormArg::SqSqTri => "sq-sq-tri",
            FormArg::SqTriTri => "sq-tri-tri",
            FormArg::ThreeSquares => "three-squares",
            FormArg::X28 => "x2-8y2-8z2",
            FormArg::X24 => "x2-4y2-4z2",
        }
    }

    fn scaled_form(self) -> Option<Form> {
        match self {
            FormArg::X28 => Some(Form::X2Plus8Y2Plus8Z2),
            FormArg::X24 => Some(Form::X2Plus4Y2Plus4Z2),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Any,
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Any => Parity::Any,
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StructureArg {
    Any,
    OneOddTwoEven,
    AllOdd,
}

impl From<StructureArg> for ParityStructure {
    fn from(s: StructureArg) -> ParityStructure {
        match s {
            StructureArg::Any => ParityStructure::Any,
            StructureArg::OneOddTwoEven => ParityStructure::OneOddTwoEven,
            StructureArg::AllOdd => ParityStructure::AllOdd,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            std::process::exit(EXIT_USAGE);
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            std::process::exit(EXIT_PASS);
        }
    };
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Invariant(_) => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            };
            std::process::exit(code);
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get().min(8))
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Decompose { form, n } => run_decompose(cli, *form, *n),
        Command::Count {
            form,
            n,
            parity_x,
            parity_y,
            same_parity,
            all_odd,
        } => run_count(cli, *form, *n, *parity_x, *parity_y, *same_parity, *all_odd),
        Command::Enum {
            form,
            n,
            parity_x,
            parity_y,
            same_parity,
            all_odd,
            structure,
        } => run_enum(
            cli,
            *form,
            *n,
            *parity_x,
            *parity_y,
            *same_parity,
            *all_odd,
            *structure,
        ),
        Command::Hurwitz { n, check } => run_hurwitz(cli, *n, *check),
        Command::Prime3 { p } => {
            let verdict = is_prime_3mod4_by_representation(*p)?;
            let (status, text) = if verdict {
                ("pass", format!("{p} is a prime congruent to 3 (mod 4): {p}² = x² + 8(y² + z²) has no all-odd solution"))
            } else {
                ("fail", format!("{p} is not a prime congruent to 3 (mod 4): {p}² = x² + 8(y² + z²) has an all-odd solution"))
            };
            if cli.json {
                println!(
                    "{}",
                    json!({ "n": p, "criterion": "prime-3mod4", "verdict": verdict, "status": status })
                );
            } else {
                println!("{text}");
            }
            Ok(if verdict { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Divisors1mod4 { n } => {
            let verdict = all_divisors_1mod4_by_representation(*n)?;
            let (status, text) = if verdict {
                ("pass", format!("every prime divisor of {n} is congruent to 1 (mod 4): {n}² = x² + 4(y² + z²) has no all-odd solution"))
            } else {
                ("fail", format!("{n} has a prime divisor congruent to 3 (mod 4): {n}² = x² + 4(y² + z²) has an all-odd solution"))
            };
            if cli.json {
                println!(
                    "{}",
                    json!({ "n": n, "criterion": "divisors-1mod4", "verdict": verdict, "status": status })
                );
            } else {
                println!("{text}");
            }
            Ok(if verdict { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Verify {
            theorem_id,
            max,
            jobs,
        } => {
            let id: TheoremId = theorem_id.parse().map_err(usage)?;
            let report = verify(id, *max, jobs.unwrap_or_else(default_jobs))?;
            print_report(cli, &report);
            Ok(if report.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
        Command::Exceptions { max, jobs } => {
            let found = scan_two_odd_sq_tri_exceptions(*max, jobs.unwrap_or_else(default_jobs));
            if cli.json {
                for n in &found {
                    println!("{}", json!({ "n": n, "status": "exception" }));
                }
            } else {
                for n in &found {
                    println!("{n}");
                }
            }
            // Below 1029 the expected list is known; any novelty above it is
            // a discovery, not a failure.
            if *max >= *KNOWN_TWO_ODD_SQ_TRI_EXCEPTIONS.last().unwrap() {
                let known: Vec<u64> = KNOWN_TWO_ODD_SQ_TRI_EXCEPTIONS.to_vec();
                let found_known: Vec<u64> = found
                    .iter()
                    .copied()
                    .filter(|&n| n <= known[known.len() - 1])
                    .collect();
                if found_known != known {
                    eprintln!(
                        "mismatch against the known exception list: found {found_known:?}, expected {known:?}"
                    );
                    return Ok(EXIT_FAIL);
                }
                for n in found.iter().filter(|&&n| n > known[known.len() - 1]) {
                    eprintln!("discovery: {n} is a new exception beyond the known list");
                }
                if !cli.json {
                    eprintln!("known exception list confirmed up to {max}");
                }
            }
            Ok(EXIT_PASS)
        }
    }
}

fn run_decompose(cli: &Cli, form: DecomposeForm, n: u64) -> Result<i32, Error> {
    let outcome = match form {
        DecomposeForm::TwoOddSqTri => decompose_two_odd_squares_tri(n)?,
        DecomposeForm::OddSqTwoTri => decompose_odd_square_two_tri(n)?,
        DecomposeForm::SqOddSqTri => Outcome::Witness(decompose_sq_odd_sq_tri(n)?),
    };
    match outcome {
        Outcome::Witness(cert) => {
            if !cert.validate() {
                return Err(Error::Invariant(format!(
                    "certificate failed validation before printing: {cert}"
                )));
            }
            if cli.json {
                println!("{}", cert_json(&cert, form.as_str(), n, cli.verbose));
            } else {
                println!("{cert}");
                if cli.verbose {
                    print_provenance_text(&cert);
                }
            }
            Ok(EXIT_PASS)
        }
        Outcome::NonRepresentable { reason } => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "form": form.as_str(), "n": n, "status": "non-representable", "reason": reason })
                );
            } else {
                println!("non-representable: {reason}");
            }
            Ok(EXIT_NON_REPRESENTABLE)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_count(
    cli: &Cli,
    form: FormArg,
    n: u64,
    parity_x: ParityArg,
    parity_y: ParityArg,
    same_parity: Option<bool>,
    all_odd: bool,
) -> Result<i32, Error> {
    validate_flags(form, parity_x, parity_y, same_parity, all_odd)?;
    let count = match form {
        FormArg::SqSqTri => {
            enum_sq_sq_tri(n, parity_x.into(), parity_y.into(), same_parity).len() as u64
        }
        FormArg::SqTriTri => enum_sq_tri_tri(n, parity_x.into()).len() as u64,
        FormArg::ThreeSquares => count_three_squares(n),
        FormArg::X28 | FormArg::X24 => count_form(n, form.scaled_form().unwrap(), all_odd)?,
    };
    if cli.json {
        println!(
            "{}",
            json!({ "form": form.as_str(), "n": n, "count": count })
        );
    } else {
        println!("{count}");
    }
    Ok(EXIT_PASS)
}

#[allow(clippy::too_many_arguments)]
fn run_enum(
    cli: &Cli,
    form: FormArg,
    n: u64,
    parity_x: ParityArg,
    parity_y: ParityArg,
    same_parity: Option<bool>,
    all_odd: bool,
    structure: StructureArg,
) -> Result<i32, Error> {
    validate_flags(form, parity_x, parity_y, same_parity, all_odd)?;
    if structure != StructureArg::Any && form != FormArg::ThreeSquares {
        return Err(usage("--structure only applies to three-squares"));
    }
    let triples: Vec<(i64, i64, i64)> = match form {
        FormArg::SqSqTri => enum_sq_sq_tri(n, parity_x.into(), parity_y.into(), same_parity)
            .iter()
            .map(RepTriple::coords)
            .collect(),
        FormArg::SqTriTri => enum_sq_tri_tri(n, parity_x.into())
            .iter()
            .map(RepTriple::coords)
            .collect(),
        FormArg::ThreeSquares => three_square_decompositions(n, structure.into()),
        FormArg::X28 | FormArg::X24 => {
            // nonnegative solutions; signed totals come from `count`
            let c = if form == FormArg::X28 { 8u64 } else { 4 };
            let mut out = Vec::new();
            let (start, step) = if all_odd { (1u64, 2u64) } else { (0, 1) };
            let budget = n / c;
            let mut y = start;
            while y * y <= budget {
                let mut z = start;
                while y * y + z * z <= budget {
                    if let Some(x) = exact_sqrt(n - c * (y * y + z * z)) {
                        if !all_odd || x % 2 == 1 {
                            out.push((x as i64, y as i64, z as i64));
                        }
                    }
                    z += step;
                }
                y += step;
            }
            out.sort_unstable();
            out
        }
    };
    for &(x, y, z) in &triples {
        if cli.json {
            println!(
                "{}",
                json!({ "form": form.as_str(), "n": n, "x": x, "y": y, "z": z })
            );
        } else {
            println!("({x}, {y}, {z})");
        }
    }
    if !cli.json {
        eprintln!("{} solutions", triples.len());
    }
    Ok(EXIT_PASS)
}

fn validate_flags(
    form: FormArg,
    parity_x: ParityArg,
    parity_y: ParityArg,
    same_parity: Option<bool>,
    all_odd: bool,
) -> Result<(), Error> {
    let scaled = form.scaled_form().is_some();
    if all_odd && !scaled {
        return Err(usage("--all-odd only applies to x2-8y2-8z2 and x2-4y2-4z2"));
    }
    if same_parity.is_some() && form != FormArg::SqSqTri {
        return Err(usage("--same-parity only applies to sq-sq-tri"));
    }
    if parity_y != ParityArg::Any && form != FormArg::SqSqTri {
        return Err(usage("--parity-y only applies to sq-sq-tri"));
    }
    if parity_x != ParityArg::Any && !matches!(form, FormArg::SqSqTri | FormArg::SqTriTri) {
        return Err(usage("--parity-x only applies to sq-sq-tri and sq-tri-tri"));
    }
    Ok(())
}

fn run_hurwitz(cli: &Cli, n: u64, check: bool) -> Result<i32, Error> {
    let closed = hurwitz_count(n)?;
    let mut status = "pass";
    let mut brute = None;
    if check {
        let b = count_three_squares(n * n);
        brute = Some(b);
        if b != closed {
            status = "fail";
        }
    }
    if cli.json {
        println!(
            "{}",
            json!({ "n": n, "count": closed, "brute_force": brute, "status": status })
        );
    } else {
        match brute {
            None => println!("{closed}"),
            Some(_) if status == "pass" => {
                println!("{closed} (matches brute-force enumeration)")
            }
            Some(b) => println!("{closed} (MISMATCH: enumeration finds {b})"),
        }
    }
    Ok(if status == "pass" {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn print_report(cli: &Cli, report: &VerificationReport) {
    let status = if report.passed() { "pass" } else { "fail" };
    if cli.json {
        let counterexamples: Vec<_> = report
            .counterexamples
            .iter()
            .map(|c| json!({ "n": c.n, "detail": c.detail }))
            .collect();
        println!(
            "{}",
            json!({
                "theorem_id": report.theorem_id.as_str(),
                "range_checked": [report.range_checked.0, report.range_checked.1],
                "status": status,
                "counterexamples": counterexamples,
                "elapsed_ms": report.elapsed.as_millis() as u64,
            })
        );
    } else {
        println!(
            "{} on [{}, {}]: {} ({} counterexamples, {} ms)",
            report.theorem_id,
            report.range_checked.0,
            report.range_checked.1,
            status.to_uppercase(),
            report.counterexamples.len(),
            report.elapsed.as_millis()
        );
        for c in &report.counterexamples {
            println!("  n = {}: {}", c.n, c.detail);
        }
    }
}

fn seed_json(p: &Provenance) -> serde_json::Value {
    json!({
        "divisor": p.divisor,
        "cofactor": p.cofactor,
        "w": p.w,
        "seed": { "k": p.seed.k, "w": p.seed.w, "x": p.seed.x, "y": p.seed.y, "z": p.seed.z },
        "v": p.v,
        "shift": p.shift,
        "y_half": p.y_half,
        "z_half": p.z_half,
    })
}

fn cert_json(cert: &Certificate, form: &str, input: u64, verbose: bool) -> serde_json::Value {
    let mut value = match *cert {
        Certificate::TwoOddSqTri {
            n,
            a,
            b,
            v,
            ref provenance,
        } => {
            let mut out = json!({ "form": form, "input": input, "n": n, "status": "representable",
                                  "a": a, "b": b, "v": v });
            if verbose {
                if let Some(p) = provenance {
                    out["provenance"] = seed_json(p);
                }
            }
            out
        }
        Certificate::OddSqTwoTri {
            n,
            a,
            s,
            t,
            ref provenance,
        } => {
            let mut out = json!({ "form": form, "input": input, "n": n, "status": "representable",
                                  "a": a, "s": s, "t": t });
            if verbose {
                if let Some(p) = provenance {
                    out["provenance"] = seed_json(p);
                }
            }
            out
        }
        Certificate::SqOddSqTri { n, a, b, v } => {
            json!({ "form": form, "input": input, "n": n, "status": "representable",
                    "a": a, "b": b, "v": v })
        }
        Certificate::Composition { m, a, b, v, seed } => {
            json!({ "form": form, "input": input, "m": m, "status": "representable",
                    "a": a, "b": b, "v": v,
                    "seed": { "k": seed.k, "w": seed.w, "x": seed.x, "y": seed.y, "z": seed.z } })
        }
    };
    value["equation"] = json!(cert.to_string());
    value
}

fn print_provenance_text(cert: &Certificate) {
    let provenance = match cert {
        Certificate::TwoOddSqTri { provenance, .. }
        | Certificate::OddSqTwoTri { provenance, .. } => provenance.as_ref(),
        _ => None,
    };
    if let Some(p) = provenance {
        println!("  divisor d = {} (cofactor k = {})", p.divisor, p.cofactor);
        println!(
            "  seed: k = {}, w = {}, x = {}, y = {}, z = {}",
            p.seed.k, p.seed.w, p.seed.x, p.seed.y, p.seed.z
        );
        println!("  composition index v = {}", p.v);
        if let Some(u) = p.shift {
            println!("  triangular split shift u = {u}");
        }
        if let (Some(y0), Some(z0)) = (p.y_half, p.z_half) {
            println!("  halved even pair: y/2 = {y0}, z/2 = {z0}");
        }
    }
}
