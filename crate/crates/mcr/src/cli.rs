//! Command-line front end.
//!
//! Exit codes: 0 success or Yes, 1 a negative answer (exact-weight No, failed
//! verification), 2 usage, parse or validation error, 3 a size guard tripped.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcr_core::arrangement::{build_arrangement, region_graph, Instance};
use mcr_core::cover_graph::CoverGraph;
use mcr_core::reductions::{check_certificate, subset_sum_to_ewls, wls_to_ls, ReductionError, SubsetSumInstance};
use mcr_core::solvers::{solve_greedy, solve_lines_only, ExactWeight, SolveError, Solver, DEFAULT_MAX_LABELS};
use serde_json::json;

use crate::gen::{random_instance, GenParams, Kind};
use crate::io::{parse_instance, parse_result, serialize_instance, to_canonical_json, Document, ResultDocument};
use crate::svg::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mcr", version, about = "Minimum constraint removal with weighted line-segment obstacles")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Solve an instance or cover graph and print a result document.
    Solve(SolveArgs),
    /// Build reduction instances.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Check invariants and any embedded certificate.
    Verify {
        /// Instance file, or - for standard input.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Draw an instance, optionally with a result, as SVG.
    Render {
        file: String,
        /// Result document from `solve`.
        #[arg(long)]
        result: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Min,
    Exact,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SolverKind {
    Exact,
    Greedy,
    Bruteforce,
    Lines,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Instance file, or - for standard input.
    #[arg(default_value = "-")]
    file: String,
    #[arg(long, value_enum, default_value = "min")]
    mode: Mode,
    /// Target weight for --mode exact.
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, value_enum, default_value = "exact")]
    solver: SolverKind,
    /// Limit on distinct crossable obstacles for the exponential solvers.
    #[arg(long, default_value_t = DEFAULT_MAX_LABELS)]
    max_labels: usize,
}

#[derive(Subcommand, Debug)]
enum ReduceCmd {
    /// Staircase gadget with penalty chords for a Subset Sum instance.
    SubsetSum {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long)]
        target: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replace every weighted obstacle by unit-weight parallel copies.
    Duplicate {
        file: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Mixed,
    Chords,
    IncidenceFree,
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Seeded random instance on an integer grid.
    Random {
        #[arg(long, default_value_t = 5)]
        obstacles: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "mixed")]
        kind: KindArg,
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
        #[arg(long, default_value_t = 10)]
        size: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = if matches!(e, SolveError::TooManyLabels { .. }) { EXIT_GUARD } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        let code = match e {
            ReductionError::TooLarge { .. } | ReductionError::Solve(SolveError::TooManyLabels { .. }) => EXIT_GUARD,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, file: &str) -> Result<String, Failure> {
        let mut text = String::new();
        if file == "-" {
            self.stdin.read_to_string(&mut text).map_err(|e| Failure::usage(format!("reading standard input: {e}")))?;
        } else {
            text = fs::read_to_string(file).map_err(|e| Failure::usage(format!("reading {file}: {e}")))?;
        }
        Ok(text)
    }

    fn emit(&mut self, output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
        match output {
            Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("writing {}: {e}", path.display()))),
            None => self.stdout.write_all(text.as_bytes()).map_err(Failure::usage),
        }
    }

    fn document(&mut self, file: &str) -> Result<Document, Failure> {
        parse_instance(&self.read(file)?).map_err(Failure::usage)
    }

    fn instance(&mut self, file: &str) -> Result<Instance, Failure> {
        match self.document(file)? {
            Document::Instance { instance, .. } => Ok(instance),
            Document::CoverGraph(_) => Err(Failure::usage("expected a geometric instance, found a cover graph")),
        }
    }
}

/// Runs the CLI and returns the exit code. Errors go to `stderr`.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.cmd, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Cmd, io: &mut Io) -> Result<i32, Failure> {
    match cmd {
        Cmd::Solve(args) => solve(args, io),
        Cmd::Reduce(ReduceCmd::SubsetSum { values, target, output }) => {
            let ss = SubsetSumInstance::new(values, target)?;
            let (inst, cert) = subset_sum_to_ewls(&ss)?;
            io.emit(output.as_ref(), &serialize_instance(&inst, Some(&cert)))?;
            Ok(EXIT_OK)
        }
        Cmd::Reduce(ReduceCmd::Duplicate { file, output }) => {
            let inst = io.instance(&file)?;
            let dup = wls_to_ls(&inst)?;
            io.emit(output.as_ref(), &serialize_instance(&dup.instance, None))?;
            Ok(EXIT_OK)
        }
        Cmd::Verify { file } => verify(&file, io),
        Cmd::Render { file, result, output } => {
            let inst = io.instance(&file)?;
            let res = match result {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| Failure::usage(format!("reading {path}: {e}")))?;
                    let doc = parse_result(&text).map_err(Failure::usage)?;
                    Some(doc.solve_result().ok_or_else(|| Failure::usage("result document has no witness"))?)
                }
                None => None,
            };
            io.emit(output.as_ref(), &render_svg(&inst, res.as_ref()))?;
            Ok(EXIT_OK)
        }
        Cmd::Gen(GenCmd::Random { obstacles, seed, kind, max_weight, size, output }) => {
            let kind = match kind {
                KindArg::Mixed => Kind::Mixed,
                KindArg::Chords => Kind::Chords,
                KindArg::IncidenceFree => Kind::IncidenceFree,
            };
            if size < 2 || max_weight == 0 {
                return Err(Failure::usage("--size must be at least 2 and --max-weight at least 1"));
            }
            let inst = random_instance(&GenParams { obstacles, kind, max_weight, size }, seed);
            io.emit(output.as_ref(), &serialize_instance(&inst, None))?;
            Ok(EXIT_OK)
        }
    }
}

fn solver_name(s: SolverKind) -> &'static str {
    match s {
        SolverKind::Exact => "exact",
        SolverKind::Greedy => "greedy",
        SolverKind::Bruteforce => "bruteforce",
        SolverKind::Lines => "lines",
    }
}

fn solve(args: SolveArgs, io: &mut Io) -> Result<i32, Failure> {
    let name = solver_name(args.solver);
    let mode = match args.mode {
        Mode::Min => "min",
        Mode::Exact => "exact",
    };
    let k = match (args.mode, args.k) {
        (Mode::Exact, None) => return Err(Failure::usage("--mode exact needs --k")),
        (Mode::Min, Some(_)) => return Err(Failure::usage("--k only applies to --mode exact")),
        (_, k) => k,
    };
    if args.mode == Mode::Exact && args.solver != SolverKind::Exact {
        return Err(Failure::usage("--mode exact is only supported by --solver exact"));
    }
    let solver = Solver::with_max_labels(args.max_labels);
    let mut doc = ResultDocument::new(name, mode);
    doc.k = k;
    let code = match io.document(&args.file)? {
        Document::CoverGraph(cg) => solve_cover_graph(&cg, &args, k, &mut doc)?,
        Document::Instance { instance, .. } => {
            if args.solver == SolverKind::Lines {
                let out = solve_lines_only(&instance)?;
                doc.side_tests = Some(out.side_tests);
                doc = doc.with_result(&out.result);
                EXIT_OK
            } else {
                let rg = region_graph(&instance).map_err(Failure::usage)?;
                let w = instance.weights();
                match (args.solver, k) {
                    (_, Some(k)) => match solver.solve_exact_weight(&rg, &w, k)? {
                        ExactWeight::Yes(res) => {
                            doc.decision = Some("yes".into());
                            doc = doc.with_result(&res);
                            EXIT_OK
                        }
                        ExactWeight::No => {
                            doc.decision = Some("no".into());
                            EXIT_NO
                        }
                    },
                    (SolverKind::Greedy, None) => {
                        doc = doc.with_result(&solve_greedy(&rg, &w)?);
                        EXIT_OK
                    }
                    (SolverKind::Bruteforce, None) => {
                        doc = doc.with_result(&solver.solve_bruteforce(&rg, &w)?);
                        EXIT_OK
                    }
                    _ => {
                        doc = doc.with_result(&solver.solve_min(&rg, &w)?);
                        EXIT_OK
                    }
                }
            }
        }
    };
    io.emit(None, &to_canonical_json(&doc))?;
    Ok(code)
}

fn solve_cover_graph(
    cg: &CoverGraph,
    args: &SolveArgs,
    k: Option<u64>,
    doc: &mut ResultDocument,
) -> Result<i32, Failure> {
    if let Some(k) = k {
        let sets = cg.achievable_sets(args.max_labels)?;
        let hit = sets.into_iter().find(|s| s.iter().map(|id| cg.weights[id]).sum::<u64>() == k);
        doc.decision = Some(if hit.is_some() { "yes" } else { "no" }.into());
        return Ok(match hit {
            Some(set) => {
                doc.weight = Some(k);
                doc.removed = Some(set);
                EXIT_OK
            }
            None => EXIT_NO,
        });
    }
    let sol = match args.solver {
        SolverKind::Exact => cg.solve_min()?,
        SolverKind::Bruteforce => cg.solve_bruteforce()?,
        _ => return Err(Failure::usage("cover graphs support --solver exact or bruteforce")),
    };
    *doc = doc.clone().with_cover_solution(&sol);
    Ok(EXIT_OK)
}

fn verify(file: &str, io: &mut Io) -> Result<i32, Failure> {
    let (instance, certificate) = match io.document(file)? {
        Document::CoverGraph(cg) => {
            let report =
                json!({ "kind": "cover_graph", "valid": true, "vertices": cg.covers.len(), "edges": cg.edges.len() });
            io.emit(None, &to_canonical_json(&report))?;
            return Ok(EXIT_OK);
        }
        Document::Instance { instance, certificate } => (instance, certificate),
    };
    let arr = build_arrangement(&instance).map_err(Failure::usage)?;
    let euler_ok = arr.euler_characteristic() == 1 + arr.components() as i64;
    let reconstruction_ok = instance.obstacles.iter().all(|ob| arr.reconstructs(ob));
    let locate_ok = arr.faces().iter().all(|f| arr.locate_point(&f.witness) == Ok(f.id));
    let violations = certificate.as_ref().map(|c| check_certificate(&instance, c));
    let valid = euler_ok && reconstruction_ok && locate_ok && violations.as_ref().is_none_or(|v| v.is_empty());
    let report = json!({
        "kind": "instance",
        "valid": valid,
        "vertices": arr.vertices().len(),
        "sub_edges": arr.sub_edges().len(),
        "faces": arr.faces().len(),
        "components": arr.components(),
        "euler_ok": euler_ok,
        "reconstruction_ok": reconstruction_ok,
        "locate_ok": locate_ok,
        "certificate_violations": violations,
    });
    io.emit(None, &to_canonical_json(&report))?;
    Ok(if valid { EXIT_OK } else { EXIT_NO })
}
