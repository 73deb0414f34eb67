//! Command-line front end: dataset management, character and partition
//! computation, and the verification suites. Default output carries no
//! timestamps and is byte-identical across runs; timing is opt-in.

mod corpus;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::rational::BigRational;

use equidex::error::Error;
use equidex::fpdata::{
    parse_dataset, restrict_to_circle, segment, serialize_dataset, simplex, toric_product, Dataset,
    DelzantPolytope, FixedPointSet,
};
use equidex::localization::{character_exact, character_polarized, component_coefficient, Convention};
use equidex::partition::{default_polarization, make_sign_assignment, polarize_ints};
use equidex::theorems::{
    verify_cancellation, verify_halfspace, verify_lattice, verify_prop42, VerificationReport,
    Verdict, VerifyMode,
};

#[derive(Parser)]
#[command(
    name = "equidex",
    about = "Exact equivariant index characters and moment-map verification from fixed-point data",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a dataset and report its shape.
    Validate {
        /// Path to a dataset file, or the name of a bundled dataset.
        file: String,
    },
    /// Compute the index character of a points dataset.
    Character {
        file: String,
        #[arg(long, value_enum, default_value = "paper")]
        convention: ConventionArg,
        /// Specialize along this integer direction (comma-separated).
        #[arg(long)]
        polarize: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Show the slot classes and the point partition.
    Partition {
        file: String,
        #[arg(long)]
        polarize: Option<String>,
        /// JSON file mapping point names to rows of +1/-1 signs.
        #[arg(long)]
        epsilon: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Generate toric fixed-point datasets.
    Toric(ToricArgs),
    /// Run a verifier (or all of them) on a dataset or the bundled corpus.
    Verify(VerifyArgs),
    /// Component-data computations.
    #[command(subcommand)]
    Section4(Section4Command),
}

#[derive(Args)]
struct ToricArgs {
    #[arg(value_enum)]
    shape: ToricShape,
    /// Dilation factor for simplex and segment.
    #[arg(long, default_value_t = 1)]
    dilation: u64,
    /// Product factors, e.g. "simplex:1,segment:2" (product shape only).
    #[arg(long)]
    factors: Option<String>,
    /// Restrict to the circle generated by this integer vector.
    #[arg(long)]
    restrict: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ToricShape {
    Simplex,
    Segment,
    Product,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    theorem: TheoremArg,
    /// Dataset file or bundled name; omitted means the whole bundled corpus.
    file: Option<String>,
    #[arg(long, default_value_t = 40)]
    window: u64,
    #[arg(long)]
    polarize: Option<String>,
    #[arg(long)]
    epsilon: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "paper")]
    convention: ConventionArg,
    #[arg(long)]
    json: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Record wall-clock times in the reports (non-deterministic output).
    #[arg(long)]
    timing: bool,
    /// Fan independent verification jobs across threads.
    #[arg(long)]
    parallel: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Cancellation,
    Lattice,
    Halfspace,
    Prop42,
    All,
}

#[derive(Subcommand)]
enum Section4Command {
    /// Character coefficients of a component dataset at given degrees.
    Coeff {
        file: String,
        #[arg(long)]
        polarize: Option<String>,
        /// Single degree ("5") or inclusive range ("0..12").
        #[arg(long, default_value = "0..20")]
        k: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Paper,
    Negated,
}

impl From<ConventionArg> for Convention {
    fn from(value: ConventionArg) -> Self {
        match value {
            ConventionArg::Paper => Convention::Paper,
            ConventionArg::Negated => Convention::Negated,
        }
    }
}

/// Failure with the exit code it maps to.
struct Failure {
    message: String,
    code: i32,
}

impl Failure {
    fn data(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 3,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::data(err.to_string())
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Validate { file } => {
            let (id, dataset) = load_dataset(&file)?;
            let size = match &dataset {
                Dataset::Points(d) => d.points().len(),
                Dataset::Components(d) => d.components().len(),
            };
            println!(
                "ok: dataset={} kind={} rank={} half_dim={} entries={}",
                id,
                dataset.kind(),
                dataset.rank(),
                dataset.half_dim(),
                size
            );
            Ok(0)
        }
        Command::Character {
            file,
            convention,
            polarize,
            json,
            output,
        } => {
            let (_, dataset) = load_dataset(&file)?;
            let fps = expect_points(&dataset)?;
            let convention: Convention = convention.into();
            let chi = match &polarize {
                Some(text) => {
                    let u = parse_int_list(text)?;
                    character_polarized(fps, &u, convention)?
                }
                None => character_exact(fps, convention)?,
            };
            let var = if chi.rank() == 1 { "z" } else { "t" };
            let payload = if json {
                let terms: Vec<serde_json::Value> = chi
                    .terms()
                    .map(|(exp, coeff)| {
                        let coords: Vec<String> = exp.iter().map(|x| x.to_string()).collect();
                        ordered_json(vec![
                            (
                                "exponent",
                                serde_json::Value::String(format!("({})", coords.join(","))),
                            ),
                            ("coefficient", serde_json::Value::String(coeff.to_string())),
                        ])
                    })
                    .collect();
                let doc = ordered_json(vec![
                    (
                        "convention",
                        serde_json::Value::String(convention.label().to_string()),
                    ),
                    ("variable", serde_json::Value::String(var.to_string())),
                    (
                        "character",
                        serde_json::Value::String(chi.render(var)),
                    ),
                    ("terms", serde_json::Value::Array(terms)),
                ]);
                format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
            } else {
                format!("{}\n", chi.render(var))
            };
            emit(payload, output)
        }
        Command::Partition {
            file,
            polarize,
            epsilon,
            json,
        } => {
            let (_, dataset) = load_dataset(&file)?;
            let fps = expect_points(&dataset)?;
            let payload = match epsilon {
                Some(path) => {
                    let rows = read_epsilon(&path, fps)?;
                    let sa = make_sign_assignment(fps, rows)?;
                    render_classes(
                        fps,
                        &format!(
                            "epsilon assignment, interior point ({})",
                            sa.interior()
                                .iter()
                                .map(|x| format!("{}/{}", x.numer(), x.denom()))
                                .collect::<Vec<_>>()
                                .join(",")
                        ),
                        |i| sa.split(i).a_slots.clone(),
                        |i| sa.split(i).b_slots.clone(),
                        |i| sa.sigma(i),
                        json,
                    )
                }
                None => {
                    let part = match &polarize {
                        Some(text) => {
                            let u = parse_int_list(text)?;
                            polarize_ints(fps, &u)?
                        }
                        None => default_polarization(fps)?,
                    };
                    let u_text: Vec<String> = part
                        .vector()
                        .entries()
                        .iter()
                        .map(|x| {
                            if x.denom() == &BigInt::from(1) {
                                x.numer().to_string()
                            } else {
                                format!("{}/{}", x.numer(), x.denom())
                            }
                        })
                        .collect();
                    render_classes(
                        fps,
                        &format!("polarizing direction ({})", u_text.join(",")),
                        |i| part.split(i).a_slots.clone(),
                        |i| part.split(i).b_slots.clone(),
                        |i| part.sigma(i),
                        json,
                    )
                }
            };
            print!("{payload}");
            Ok(0)
        }
        Command::Toric(args) => {
            let polytope = build_polytope(&args)?;
            let fps = polytope.generate()?;
            let dataset = match &args.restrict {
                Some(text) => {
                    let x = parse_int_list(text)?;
                    Dataset::Points(restrict_to_circle(&fps, &x)?)
                }
                None => Dataset::Points(fps),
            };
            emit(format!("{}\n", serialize_dataset(&dataset)), args.output)
        }
        Command::Verify(args) => run_verify(args),
        Command::Section4(Section4Command::Coeff {
            file,
            polarize,
            k,
            json,
        }) => {
            let (_, dataset) = load_dataset(&file)?;
            let cs = match &dataset {
                Dataset::Components(c) => c,
                Dataset::Points(_) => {
                    return Err(Failure::data(
                        "section4 coeff expects a components dataset",
                    ))
                }
            };
            let u = match &polarize {
                Some(text) => parse_int_list(text)?,
                None => {
                    if cs.rank() == 1 {
                        vec![BigInt::from(1)]
                    } else {
                        return Err(Failure::usage(
                            "--polarize is required for rank above 1",
                        ));
                    }
                }
            };
            let (start, end) = parse_degree_range(&k)?;
            let mut rows = Vec::new();
            let mut degree = start.clone();
            while degree <= end {
                let coeff = component_coefficient(cs, &u, &degree)?;
                rows.push((degree.clone(), coeff));
                degree += 1;
            }
            let payload = if json {
                let items: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(degree, coeff)| {
                        ordered_json(vec![
                            ("k", serde_json::Value::String(degree.to_string())),
                            (
                                "coefficient",
                                serde_json::Value::String(rational_text(coeff)),
                            ),
                        ])
                    })
                    .collect();
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&serde_json::Value::Array(items)).unwrap()
                )
            } else {
                let mut text = String::new();
                for (degree, coeff) in &rows {
                    let _ = writeln!(text, "k={degree} coefficient={}", rational_text(coeff));
                }
                text
            };
            print!("{payload}");
            Ok(0)
        }
    }
}

fn build_polytope(args: &ToricArgs) -> Result<DelzantPolytope, Failure> {
    match args.shape {
        ToricShape::Simplex => {
            if args.dilation == 0 {
                return Err(Failure::usage("--dilation must be at least 1"));
            }
            Ok(simplex(args.dilation))
        }
        ToricShape::Segment => {
            if args.dilation == 0 {
                return Err(Failure::usage("--dilation must be at least 1"));
            }
            Ok(segment(args.dilation))
        }
        ToricShape::Product => {
            let Some(spec) = &args.factors else {
                return Err(Failure::usage(
                    "product shape needs --factors, e.g. \"simplex:1,segment:2\"",
                ));
            };
            let mut factors = Vec::new();
            for part in spec.split(',') {
                let (kind, dil) = part
                    .split_once(':')
                    .ok_or_else(|| Failure::usage(format!("bad factor {part:?}")))?;
                let dilation: u64 = dil
                    .parse()
                    .map_err(|_| Failure::usage(format!("bad dilation {dil:?}")))?;
                if dilation == 0 {
                    return Err(Failure::usage("factor dilation must be at least 1"));
                }
                match kind {
                    "simplex" => factors.push(simplex(dilation)),
                    "segment" => factors.push(segment(dilation)),
                    other => {
                        return Err(Failure::usage(format!("unknown factor kind {other:?}")))
                    }
                }
            }
            let mut iter = factors.into_iter();
            let first = iter
                .next()
                .ok_or_else(|| Failure::usage("--factors must name at least one polytope"))?;
            Ok(iter.fold(first, |acc, next| toric_product(&acc, &next)))
        }
    }
}

struct VerifyJob {
    dataset_id: String,
    dataset: Dataset,
    theorem: TheoremArg,
}

fn run_verify(args: VerifyArgs) -> Result<i32, Failure> {
    let datasets: Vec<(String, Dataset)> = match &args.file {
        Some(file) => vec![load_dataset(file)?],
        None => {
            if args.theorem != TheoremArg::All {
                return Err(Failure::usage(
                    "a dataset argument is required unless running `verify all`",
                ));
            }
            corpus::BUNDLED
                .iter()
                .map(|(id, text)| {
                    let dataset = parse_dataset(text).expect("bundled datasets are valid");
                    (id.to_string(), dataset)
                })
                .collect()
        }
    };

    let mut jobs = Vec::new();
    for (id, dataset) in datasets {
        let theorems: Vec<TheoremArg> = match args.theorem {
            TheoremArg::All => match &dataset {
                Dataset::Points(_) => vec![
                    TheoremArg::Cancellation,
                    TheoremArg::Lattice,
                    TheoremArg::Halfspace,
                ],
                Dataset::Components(_) => vec![TheoremArg::Prop42],
            },
            single => vec![single],
        };
        for theorem in theorems {
            jobs.push(VerifyJob {
                dataset_id: id.clone(),
                dataset: dataset.clone(),
                theorem,
            });
        }
    }

    let convention: Convention = args.convention.into();
    let reports: Vec<VerificationReport> = if args.parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = jobs
                .iter()
                .map(|job| scope.spawn(|| run_job(job, &args, convention)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("verification worker panicked"))
                .collect()
        })
    } else {
        jobs.iter().map(|job| run_job(job, &args, convention)).collect()
    };

    let json_payload = {
        let array: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
        format!(
            "{}\n",
            serde_json::to_string_pretty(&serde_json::Value::Array(array)).unwrap()
        )
    };
    if let Some(path) = &args.output {
        std::fs::write(path, &json_payload)
            .map_err(|e| Failure::data(format!("cannot write {}: {e}", path.display())))?;
    }
    if args.json {
        print!("{json_payload}");
    } else {
        for report in &reports {
            println!("{}", summarize(report, args.timing));
        }
    }

    let mut code = 0;
    if reports.iter().any(|r| r.verdict == Verdict::Inapplicable) {
        code = 3;
    }
    if reports.iter().any(|r| r.verdict == Verdict::Refuted) {
        code = 2;
    }
    Ok(code)
}

/// Run one dataset/theorem pair; precondition failures become
/// Inapplicable reports rather than aborting a whole suite.
fn run_job(job: &VerifyJob, args: &VerifyArgs, convention: Convention) -> VerificationReport {
    let started = Instant::now();
    let result = (|| -> Result<VerificationReport, Error> {
        match (&job.dataset, job.theorem) {
            (Dataset::Points(fps), TheoremArg::Cancellation) => {
                let mode = verify_mode(args, fps)?;
                verify_cancellation(fps, &mode, convention, args.window, &job.dataset_id)
            }
            (Dataset::Points(fps), TheoremArg::Lattice) => {
                let mode = verify_mode(args, fps)?;
                verify_lattice(fps, &mode, &job.dataset_id)
            }
            (Dataset::Points(fps), TheoremArg::Halfspace) => {
                verify_halfspace(fps, &job.dataset_id)
            }
            (Dataset::Components(cs), TheoremArg::Prop42) => {
                verify_prop42(cs, args.window.max(1), &job.dataset_id)
            }
            (Dataset::Points(_), TheoremArg::Prop42) => Err(Error::ShapeMismatch {
                message: "prop42 expects a components dataset".to_string(),
            }),
            (Dataset::Components(_), _) => Err(Error::ShapeMismatch {
                message: format!(
                    "{:?} expects a points dataset",
                    job.theorem_label()
                ),
            }),
            (_, TheoremArg::All) => unreachable!("expanded earlier"),
        }
    })();
    let mut report = match result {
        Ok(report) => report,
        Err(err) => VerificationReport {
            theorem: job.theorem_label().to_string(),
            dataset: job.dataset_id.clone(),
            verdict: Verdict::Inapplicable,
            witnesses: ordered_json(vec![(
                "error",
                serde_json::Value::String(err.to_string()),
            )]),
            window: serde_json::Value::Null,
            elapsed_ms: 0,
        },
    };
    if args.timing {
        report.elapsed_ms = started.elapsed().as_millis() as u64;
    }
    report
}

impl VerifyJob {
    fn theorem_label(&self) -> &'static str {
        match self.theorem {
            TheoremArg::Cancellation => "cancellation",
            TheoremArg::Lattice => "lattice",
            TheoremArg::Halfspace => "halfspace",
            TheoremArg::Prop42 => "prop42",
            TheoremArg::All => "all",
        }
    }
}

fn verify_mode(args: &VerifyArgs, fps: &FixedPointSet) -> Result<VerifyMode, Error> {
    if let Some(path) = &args.epsilon {
        let rows = read_epsilon(path, fps).map_err(|f| Error::ModeMismatch { message: f.message })?;
        return Ok(VerifyMode::Eps(rows));
    }
    if let Some(text) = &args.polarize {
        let u = parse_int_list(text).map_err(|f| Error::ModeMismatch { message: f.message })?;
        return Ok(VerifyMode::Polarized(u));
    }
    Ok(VerifyMode::Auto)
}

fn summarize(report: &VerificationReport, timing: bool) -> String {
    let mut detail = String::new();
    match report.theorem.as_str() {
        "cancellation" => {
            if let Some(rows) = report.witnesses["rows"].as_array() {
                let _ = write!(
                    detail,
                    "rows={} threshold={}",
                    rows.len(),
                    report.witnesses["threshold"]
                        .as_str()
                        .or(report.witnesses["threshold_degree"].as_str())
                        .unwrap_or("-")
                );
            }
            if let Some(failures) = report.witnesses["failures"].as_array() {
                if !failures.is_empty() {
                    let _ = write!(detail, " failures={}", failures.len());
                }
            }
        }
        "lattice" => {
            let _ = write!(detail, "mode={}", report.witnesses["mode"].as_str().unwrap_or("-"));
        }
        "halfspace" => {
            match report.witnesses["separating_direction"].as_str() {
                Some(direction) => {
                    let _ = write!(detail, "separating_direction={direction}");
                }
                None => {
                    let _ = write!(
                        detail,
                        "weights={}",
                        report.witnesses["weights_checked"]
                    );
                }
            }
        }
        "prop42" => {
            let _ = write!(
                detail,
                "threshold={} A0={} A1={}",
                report.witnesses["threshold"].as_str().unwrap_or("-"),
                report.witnesses["A0"].as_str().unwrap_or("-"),
                report.witnesses["A1"].as_str().unwrap_or("-")
            );
        }
        _ => {
            if let Some(err) = report.witnesses["error"].as_str() {
                let _ = write!(detail, "{err}");
            }
        }
    }
    if report.verdict == Verdict::Inapplicable {
        if let Some(err) = report.witnesses["error"].as_str() {
            detail = err.to_string();
        }
    }
    let mut line = format!(
        "{:<13} {:<15} {:<12} {}",
        report.theorem,
        report.dataset,
        report.verdict.label(),
        detail
    );
    if timing {
        let _ = write!(line, " [{} ms]", report.elapsed_ms);
    }
    line
}

#[allow(clippy::type_complexity)]
fn render_classes(
    fps: &FixedPointSet,
    header: &str,
    a_slots: impl Fn(usize) -> Vec<usize>,
    b_slots: impl Fn(usize) -> Vec<usize>,
    sigma: impl Fn(usize) -> i8,
    json: bool,
) -> String {
    if json {
        let points: Vec<serde_json::Value> = fps
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                ordered_json(vec![
                    ("point", serde_json::Value::String(p.name().to_string())),
                    ("a_slots", slots_json(&a_slots(i))),
                    ("b_slots", slots_json(&b_slots(i))),
                    ("sigma", serde_json::Value::from(i64::from(sigma(i)))),
                ])
            })
            .collect();
        let q_plus: Vec<serde_json::Value> = fps
            .points()
            .iter()
            .enumerate()
            .filter(|(i, _)| sigma(*i) > 0)
            .map(|(_, p)| serde_json::Value::String(p.name().to_string()))
            .collect();
        let q_minus: Vec<serde_json::Value> = fps
            .points()
            .iter()
            .enumerate()
            .filter(|(i, _)| sigma(*i) < 0)
            .map(|(_, p)| serde_json::Value::String(p.name().to_string()))
            .collect();
        let doc = ordered_json(vec![
            ("split", serde_json::Value::String(header.to_string())),
            ("points", serde_json::Value::Array(points)),
            ("q_plus", serde_json::Value::Array(q_plus)),
            ("q_minus", serde_json::Value::Array(q_minus)),
        ]);
        format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "{header}");
        for (i, p) in fps.points().iter().enumerate() {
            let show = |slots: Vec<usize>| -> String {
                let names: Vec<String> = slots.iter().map(|j| (j + 1).to_string()).collect();
                format!("{{{}}}", names.join(","))
            };
            let _ = writeln!(
                out,
                "point {}: A={} B={} sigma={:+}",
                p.name(),
                show(a_slots(i)),
                show(b_slots(i)),
                sigma(i)
            );
        }
        let q = |sign: i8| -> String {
            let names: Vec<&str> = fps
                .points()
                .iter()
                .enumerate()
                .filter(|(i, _)| sigma(*i) == sign)
                .map(|(_, p)| p.name())
                .collect();
            format!("{{{}}}", names.join(","))
        };
        let _ = writeln!(out, "Q+ = {}", q(1));
        let _ = writeln!(out, "Q- = {}", q(-1));
        out
    }
}

fn slots_json(slots: &[usize]) -> serde_json::Value {
    serde_json::Value::Array(
        slots
            .iter()
            .map(|j| serde_json::Value::from((j + 1) as u64))
            .collect(),
    )
}

fn load_dataset(file: &str) -> Result<(String, Dataset), Failure> {
    if let Some(text) = corpus::lookup(file) {
        let dataset = parse_dataset(text)?;
        return Ok((file.to_string(), dataset));
    }
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::data(format!("cannot read {file}: {e}")))?;
    let dataset = parse_dataset(&text)?;
    let id = PathBuf::from(file)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| file.to_string());
    Ok((id, dataset))
}

fn expect_points(dataset: &Dataset) -> Result<&FixedPointSet, Failure> {
    match dataset {
        Dataset::Points(fps) => Ok(fps),
        Dataset::Components(_) => Err(Failure::data(
            "this command expects a points dataset, found components",
        )),
    }
}

fn parse_int_list(text: &str) -> Result<Vec<BigInt>, Failure> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| Failure::usage(format!("bad integer {part:?} in list")))
        })
        .collect()
}

fn parse_degree_range(text: &str) -> Result<(BigInt, BigInt), Failure> {
    if let Some((a, b)) = text.split_once("..") {
        let start: BigInt = a
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad range start {a:?}")))?;
        let end: BigInt = b
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad range end {b:?}")))?;
        if end < start {
            return Err(Failure::usage("empty degree range"));
        }
        Ok((start, end))
    } else {
        let single: BigInt = text
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad degree {text:?}")))?;
        Ok((single.clone(), single))
    }
}

fn read_epsilon(path: &PathBuf, fps: &FixedPointSet) -> Result<Vec<Vec<i8>>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::data(format!("bad epsilon file: {e}")))?;
    let map = value
        .as_object()
        .ok_or_else(|| Failure::data("epsilon file must be a JSON object"))?;
    let mut rows = Vec::with_capacity(fps.points().len());
    for p in fps.points() {
        let row_value = map
            .get(p.name())
            .ok_or_else(|| Failure::data(format!("epsilon file misses point {:?}", p.name())))?;
        let entries = row_value
            .as_array()
            .ok_or_else(|| Failure::data(format!("epsilon row for {:?} must be an array", p.name())))?;
        let mut row = Vec::with_capacity(entries.len());
        for e in entries {
            match e.as_i64() {
                Some(1) => row.push(1),
                Some(-1) => row.push(-1),
                _ => {
                    return Err(Failure::data(format!(
                        "epsilon entries must be +1 or -1 (point {:?})",
                        p.name()
                    )))
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

fn emit(payload: String, output: Option<PathBuf>) -> Result<i32, Failure> {
    match output {
        Some(path) => {
            std::fs::write(&path, payload)
                .map_err(|e| Failure::data(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {}", path.display());
            Ok(0)
        }
        None => {
            print!("{payload}");
            Ok(0)
        }
    }
}

fn rational_text(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn ordered_json(pairs: Vec<(&str, serde_json::Value)>) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    serde_json::Value::Object(map)
}
