//! Command-line front end. [`dispatch`] parses an argument vector, runs the
//! command and returns what should be printed together with the exit status;
//! `main` only forwards it to the process.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::arith::gcd;
use crate::cabling::{
    assembly, assembly_oracle, cable_chi, cable_multiplicity, cable_order, cable_sl, is_positive_cable,
    link_resolution_chi, link_resolution_sl,
};
use crate::foliation::{self, normalize, parse_graph, write_graph, FoliationGraph, Normalized};
use crate::invariants::{
    bennequin_bound, sl_from_counts, LegendrianRecord, SeifertData, Sign, SingularityCounts, TransverseRecord,
};
use crate::lens::{dual_is_consistent, LensSpace};
use crate::unknot::{self, UnknotType};
use crate::{CableParams, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// A well-formed question whose answer is "the bound fails".
    Violated,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violated => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult { status: Status::Ok, stdout, stderr: String::new() }
    }

    fn error(reason: impl std::fmt::Display) -> Self {
        let reason = reason.to_string();
        let line = reason.lines().next().unwrap_or("failed").trim_start_matches("error: ");
        CommandResult { status: Status::Error, stdout: String::new(), stderr: format!("error: {line}\n") }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Unbounded integers written as bare JSON numbers.
struct Num(BigInt);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self.0.to_string().parse().expect("decimal integers are JSON numbers");
        n.serialize(serializer)
    }
}

fn num(n: &BigInt) -> Num {
    Num(n.clone())
}

fn nums(ns: &[BigInt]) -> Vec<Num> {
    ns.iter().map(num).collect()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output documents always serialize");
    s.push('\n');
    s
}

type Failure = String;

fn fail(e: impl std::fmt::Display) -> Failure {
    e.to_string()
}

#[derive(Parser)]
#[command(name = "ratknot", version, about = "Exact rational invariants of Legendrian and transverse knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lens space data
    #[command(subcommand)]
    Lens(LensCommand),
    /// Push-offs and stabilizations of invariant records
    #[command(subcommand)]
    Invariants(InvariantsCommand),
    /// Check the rational Bennequin bound
    Bennequin(BennequinArgs),
    /// Euler characteristic, order, multiplicity and self-linking of a cable
    Cable(CableArgs),
    /// Integral resolution of a rational binding
    Resolve(ResolveArgs),
    /// Characteristic foliation graphs
    #[command(subcommand)]
    Foliation(FoliationCommand),
    /// Rational unknots in lens spaces
    #[command(subcommand)]
    Unknot(UnknotCommand),
    #[command(hide = true)]
    Selftest,
}

#[derive(Subcommand)]
enum LensCommand {
    /// Continued fraction and dual parameters of L(p,q)
    Info { p: BigInt, q: BigInt },
}

#[derive(Subcommand)]
enum InvariantsCommand {
    /// Transverse push-off of a Legendrian knot
    Pushoff(LegendrianArgs),
    /// Stabilize a Legendrian (+ or -) or transverse knot
    Stabilize(StabilizeArgs),
}

#[derive(Args)]
struct SurfaceArgs {
    /// Order of the knot
    #[arg(short = 'r', default_value = "1")]
    r: BigInt,
    /// Seifert slope
    #[arg(short = 's', default_value = "0", allow_hyphen_values = true)]
    s: BigInt,
    /// Euler characteristic of the rational Seifert surface
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    chi: BigInt,
}

impl SurfaceArgs {
    fn seifert(&self) -> Result<SeifertData<BigInt>, Failure> {
        SeifertData::new(self.r.clone(), self.s.clone(), self.chi.clone()).map_err(fail)
    }
}

#[derive(Args)]
struct LegendrianArgs {
    #[arg(long, allow_hyphen_values = true)]
    tb: Rational,
    #[arg(long, allow_hyphen_values = true)]
    rot: Rational,
    #[command(flatten)]
    surface: SurfaceArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum StabKind {
    #[value(name = "+")]
    Positive,
    #[value(name = "-")]
    Negative,
    Transverse,
}

#[derive(Args)]
struct StabilizeArgs {
    /// +, - or transverse
    kind: StabKind,
    #[arg(long, allow_hyphen_values = true)]
    tb: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    rot: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    sl: Option<Rational>,
    /// Number of stabilizations
    #[arg(long, default_value_t = 1)]
    times: u32,
    #[command(flatten)]
    surface: SurfaceArgs,
}

#[derive(Args)]
struct BennequinArgs {
    /// Self-linking of a transverse knot
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["tb", "rot"])]
    sl: Option<Rational>,
    /// Thurston–Bennequin invariant of a Legendrian knot (with --rot)
    #[arg(long, allow_hyphen_values = true, requires = "rot")]
    tb: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, requires = "tb")]
    rot: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    chi: BigInt,
    #[arg(short = 'r')]
    r: BigInt,
}

#[derive(Args)]
struct CableArgs {
    #[arg(long, allow_hyphen_values = true)]
    chi: BigInt,
    #[arg(short = 'r')]
    r: BigInt,
    #[arg(short = 's', allow_hyphen_values = true)]
    s: BigInt,
    #[arg(short = 'p', allow_hyphen_values = true)]
    p: BigInt,
    #[arg(short = 'q', allow_hyphen_values = true)]
    q: BigInt,
    /// Self-linking of the companion; adds sl_new for positive cables
    #[arg(long, allow_hyphen_values = true)]
    sl: Option<Rational>,
}

#[derive(Args)]
struct ResolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    chi: BigInt,
    #[arg(short = 'r')]
    r: BigInt,
    /// Seifert slopes of the components, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    slopes: Vec<BigInt>,
    /// Resolution coefficients, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    coeffs: Vec<BigInt>,
    #[arg(long, allow_hyphen_values = true)]
    sl: Option<Rational>,
}

#[derive(Subcommand)]
enum FoliationCommand {
    /// Singularity counts, self-linking and the Poincaré–Hopf check
    Check(FoliationArgs),
    /// Remove negative elliptic points or report an overtwisted disk
    Simplify(FoliationArgs),
}

#[derive(Args)]
struct FoliationArgs {
    /// Graph file; standard input when absent or "-"
    file: Option<PathBuf>,
    #[arg(short = 'r', default_value = "1")]
    r: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<BigInt>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Orient {
    #[value(name = "K1")]
    K1,
    #[value(name = "-K1")]
    MinusK1,
}

impl Orient {
    fn sign(self) -> Sign {
        match self {
            Orient::K1 => Sign::Plus,
            Orient::MinusK1 => Sign::Minus,
        }
    }

    fn unknot(self) -> UnknotType {
        match self {
            Orient::K1 => UnknotType::K1,
            Orient::MinusK1 => UnknotType::MINUS_K1,
        }
    }
}

#[derive(Args)]
struct RangeArgs {
    p: BigInt,
    /// Euler class value of the tight structure on L(p,1)
    #[arg(allow_hyphen_values = true)]
    l: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    orient: Orient,
    #[arg(long, default_value_t = 8)]
    depth: u32,
}

#[derive(Subcommand)]
enum UnknotCommand {
    /// Oriented rational unknots in L(p,q) and their maximal tb
    Classify { p: BigInt, q: BigInt },
    /// Legendrian mountain range of a rational unknot in L(p,1)
    Mountain {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Transverse self-linking spectrum of a rational unknot in L(p,1)
    Sl {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Parses `argv` (program name first) and runs the command.
pub fn dispatch<A, T>(argv: A) -> CommandResult
where
    A: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    CommandResult::ok(e.render().to_string())
                }
                _ => CommandResult::error(e.render()),
            };
        }
    };
    match run(cli.command) {
        Ok(result) => result,
        Err(reason) => CommandResult::error(reason),
    }
}

fn run(command: Command) -> Result<CommandResult, Failure> {
    match command {
        Command::Lens(LensCommand::Info { p, q }) => lens_info(p, q),
        Command::Invariants(InvariantsCommand::Pushoff(args)) => pushoff(args),
        Command::Invariants(InvariantsCommand::Stabilize(args)) => stabilize(args),
        Command::Bennequin(args) => bennequin(args),
        Command::Cable(args) => cable(args),
        Command::Resolve(args) => resolve(args),
        Command::Foliation(FoliationCommand::Check(args)) => foliation_check(args),
        Command::Foliation(FoliationCommand::Simplify(args)) => foliation_simplify(args),
        Command::Unknot(UnknotCommand::Classify { p, q }) => unknot_classify(p, q),
        Command::Unknot(UnknotCommand::Mountain { range, format }) => mountain(range, format),
        Command::Unknot(UnknotCommand::Sl { range, format }) => sl_spectrum(range, format),
        Command::Selftest => Ok(selftest()),
    }
}

fn lens_info(p: BigInt, q: BigInt) -> Result<CommandResult, Failure> {
    #[derive(Serialize)]
    struct Dual {
        p: Num,
        q: Num,
    }
    #[derive(Serialize)]
    struct Out {
        p: Num,
        q: Num,
        ncf: Vec<Num>,
        dual: Dual,
    }
    let lens = LensSpace::new(p, q).map_err(fail)?;
    let dual = lens.dual();
    Ok(CommandResult::ok(json(&Out {
        p: num(lens.p()),
        q: num(lens.q()),
        ncf: nums(&lens.ncf()),
        dual: Dual { p: num(&dual.p_dual), q: num(&dual.q_dual) },
    })))
}

fn pushoff(args: LegendrianArgs) -> Result<CommandResult, Failure> {
    #[derive(Serialize)]
    struct Out {
        tb: Rational,
        rot: Rational,
        r: Num,
        sl: Rational,
    }
    let record = LegendrianRecord::new(args.surface.seifert()?, args.tb, args.rot).map_err(fail)?;
    let sl = record.transverse_pushoff().sl().clone();
    Ok(CommandResult::ok(json(&Out {
        tb: record.tb().clone(),
        rot: record.rot().clone(),
        r: num(&args.surface.r),
        sl,
    })))
}

fn stabilize(args: StabilizeArgs) -> Result<CommandResult, Failure> {
    let seifert = args.surface.seifert()?;
    match args.kind {
        StabKind::Positive | StabKind::Negative => {
            #[derive(Serialize)]
            struct Out {
                tb: Rational,
                rot: Rational,
            }
            let (Some(tb), Some(rot)) = (args.tb, args.rot) else {
                return Err("Legendrian stabilization needs --tb and --rot".into());
            };
            let sign = if matches!(args.kind, StabKind::Positive) { Sign::Plus } else { Sign::Minus };
            let mut record = LegendrianRecord::new(seifert, tb, rot).map_err(fail)?;
            for _ in 0..args.times {
                record = record.stabilize(sign);
            }
            Ok(CommandResult::ok(json(&Out { tb: record.tb().clone(), rot: record.rot().clone() })))
        }
        StabKind::Transverse => {
            #[derive(Serialize)]
            struct Out {
                sl: Rational,
            }
            let Some(sl) = args.sl else {
                return Err("transverse stabilization needs --sl".into());
            };
            let mut record = TransverseRecord::new(seifert, sl).map_err(fail)?;
            for _ in 0..args.times {
                record = record.stabilize();
            }
            Ok(CommandResult::ok(json(&Out { sl: record.sl().clone() })))
        }
    }
}

fn bennequin(args: BennequinArgs) -> Result<CommandResult, Failure> {
    if !args.r.is_positive() {
        return Err(format!("order must be at least 1, got {}", args.r));
    }
    let bound = bennequin_bound(&args.chi, &args.r);
    let (slack, body) = match (args.sl, args.tb, args.rot) {
        (Some(sl), None, None) => {
            #[derive(Serialize)]
            struct Out {
                status: Status,
                sl: Rational,
                chi: Num,
                r: Num,
                bound: Rational,
                slack: Rational,
            }
            let slack = &bound - &sl;
            let status = verdict(&slack);
            (slack.clone(), json(&Out { status, sl, chi: num(&args.chi), r: num(&args.r), bound, slack }))
        }
        (None, Some(tb), Some(rot)) => {
            #[derive(Serialize)]
            struct Out {
                status: Status,
                tb: Rational,
                rot: Rational,
                chi: Num,
                r: Num,
                bound: Rational,
                slack: Rational,
            }
            let slack = &(&bound - &tb) - &rot.abs();
            let status = verdict(&slack);
            (slack.clone(), json(&Out { status, tb, rot, chi: num(&args.chi), r: num(&args.r), bound, slack }))
        }
        _ => return Err("give either --sl or both --tb and --rot".into()),
    };
    Ok(CommandResult { status: verdict(&slack), stdout: body, stderr: String::new() })
}

fn verdict(slack: &Rational) -> Status {
    if slack.is_negative() {
        Status::Violated
    } else {
        Status::Ok
    }
}

fn cable(args: CableArgs) -> Result<CommandResult, Failure> {
    #[derive(Serialize)]
    struct Out {
        chi_new: Num,
        order: Num,
        multiplicity: Num,
        positive: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        sl_new: Option<Rational>,
    }
    let params = CableParams::new(args.p.clone(), args.q).map_err(fail)?;
    let (r, s) = (&args.r, &args.s);
    let out = Out {
        chi_new: Num(cable_chi(&args.chi, r, s, &params).map_err(fail)?),
        order: Num(cable_order(r, &args.p).map_err(fail)?),
        multiplicity: Num(cable_multiplicity(r, s, &params).map_err(fail)?),
        positive: is_positive_cable(r, s, &params).map_err(fail)?,
        sl_new: args.sl.map(|sl| cable_sl(&sl, r, s, &params)).transpose().map_err(fail)?,
    };
    Ok(CommandResult::ok(json(&out)))
}

fn resolve(args: ResolveArgs) -> Result<CommandResult, Failure> {
    #[derive(Serialize)]
    struct Out {
        chi_new: Num,
        components: Num,
        #[serde(skip_serializing_if = "Option::is_none")]
        sl_new: Option<Rational>,
    }
    let chi_new = link_resolution_chi(&args.chi, &args.r, &args.slopes, &args.coeffs).map_err(fail)?;
    let components = args.coeffs.iter().fold(BigInt::from(0), |acc, l| acc + gcd(&args.r, l));
    let sl_new = args
        .sl
        .map(|sl| link_resolution_sl(&sl, &args.r, &args.slopes, &args.coeffs))
        .transpose()
        .map_err(fail)?;
    Ok(CommandResult::ok(json(&Out { chi_new: Num(chi_new), components: Num(components), sl_new })))
}

fn read_graph(file: &Option<PathBuf>) -> Result<FoliationGraph, Failure> {
    let text = match file {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(|e| format!("cannot read standard input: {e}"))?;
            buf
        }
    };
    parse_graph(&text).map_err(fail)
}

#[derive(Serialize)]
struct CountsOut {
    e_plus: u64,
    e_minus: u64,
    h_plus: u64,
    h_minus: u64,
}

impl From<SingularityCounts> for CountsOut {
    fn from(c: SingularityCounts) -> Self {
        CountsOut { e_plus: c.e_plus, e_minus: c.e_minus, h_plus: c.h_plus, h_minus: c.h_minus }
    }
}

fn foliation_check(args: FoliationArgs) -> Result<CommandResult, Failure> {
    #[derive(Serialize)]
    struct Out {
        counts: CountsOut,
        r: Num,
        sl: Rational,
        index_sum: Num,
        #[serde(skip_serializing_if = "Option::is_none")]
        chi: Option<Num>,
        #[serde(skip_serializing_if = "Option::is_none")]
        poincare_hopf: Option<bool>,
    }
    let g = read_graph(&args.file)?;
    let counts = g.counts();
    let sl = sl_from_counts(&args.r, &counts).map_err(fail)?;
    let index_sum: BigInt = counts.index_sum().map_err(fail)?;
    let poincare_hopf = args.chi.as_ref().map(|chi| *chi == index_sum);
    Ok(CommandResult::ok(json(&Out {
        counts: counts.into(),
        r: num(&args.r),
        sl,
        index_sum: Num(index_sum),
        chi: args.chi.map(Num),
        poincare_hopf,
    })))
}

fn foliation_simplify(args: FoliationArgs) -> Result<CommandResult, Failure> {
    #[derive(Serialize)]
    #[serde(tag = "result", rename_all = "lowercase")]
    enum Out {
        Normalized {
            counts: CountsOut,
            r: Num,
            sl: Rational,
        },
        Overtwisted {
            sink: String,
            frontier: Vec<String>,
            counts: CountsOut,
        },
    }
    let g = read_graph(&args.file)?;
    if let Some(chi) = &args.chi {
        let sum: BigInt = g.counts().index_sum().map_err(fail)?;
        if *chi != sum {
            return Err(format!("graph has index sum {sum}, not chi = {chi}"));
        }
    }
    let outcome = normalize(&g);
    let graph = outcome.graph();
    let counts = graph.counts();
    let out = match &outcome {
        Normalized::Normalized(_) => Out::Normalized {
            counts: counts.into(),
            r: num(&args.r),
            sl: sl_from_counts(&args.r, &counts).map_err(fail)?,
        },
        Normalized::Overtwisted(c) => Out::Overtwisted {
            sink: c.sink.clone(),
            frontier: c.frontier.clone(),
            counts: counts.into(),
        },
    };
    let mut stdout = json(&out);
    stdout.push_str(&write_graph(graph));
    Ok(CommandResult::ok(stdout))
}

fn unknot_classify(p: BigInt, q: BigInt) -> Result<CommandResult, Failure> {
    #[derive(Serialize)]
    struct Out {
        p: Num,
        q: Num,
        unknots: Vec<UnknotType>,
        max_tb: Rational,
        #[serde(skip_serializing_if = "Option::is_none")]
        euler_classes: Option<Vec<Num>>,
    }
    let lens = LensSpace::new(p, q).map_err(fail)?;
    let euler_classes = if *lens.q() == BigInt::from(1) {
        unknot::euler_classes(lens.p()).ok().map(|ls| nums(&ls))
    } else {
        None
    };
    Ok(CommandResult::ok(json(&Out {
        p: num(lens.p()),
        q: num(lens.q()),
        unknots: unknot::classify_unknots(&lens).into_iter().collect(),
        max_tb: unknot::max_tb(&lens),
        euler_classes,
    })))
}

fn mountain(range: RangeArgs, format: Format) -> Result<CommandResult, Failure> {
    let points = unknot::mountain_range(&range.p, &range.l, range.orient.sign(), range.depth).map_err(fail)?;
    let stdout = match format {
        Format::Tsv => points.iter().map(|pt| format!("{}\t{}\n", pt.tb, pt.rot)).collect(),
        Format::Json => {
            #[derive(Serialize)]
            struct Point {
                tb: Rational,
                rot: Rational,
                depth: u32,
                split: u32,
            }
            #[derive(Serialize)]
            struct Out {
                p: Num,
                l: Num,
                orient: UnknotType,
                depth: u32,
                points: Vec<Point>,
            }
            json(&Out {
                p: num(&range.p),
                l: num(&range.l),
                orient: range.orient.unknot(),
                depth: range.depth,
                points: points
                    .into_iter()
                    .map(|pt| Point { tb: pt.tb, rot: pt.rot, depth: pt.depth, split: pt.split })
                    .collect(),
            })
        }
    };
    Ok(CommandResult::ok(stdout))
}

fn sl_spectrum(range: RangeArgs, format: Format) -> Result<CommandResult, Failure> {
    let values = unknot::sl_spectrum(&range.p, &range.l, range.orient.sign(), range.depth).map_err(fail)?;
    let stdout = match format {
        Format::Tsv => values.iter().map(|v| format!("{v}\n")).collect(),
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                p: Num,
                l: Num,
                orient: UnknotType,
                depth: u32,
                sl: Vec<Rational>,
            }
            json(&Out {
                p: num(&range.p),
                l: num(&range.l),
                orient: range.orient.unknot(),
                depth: range.depth,
                sl: values,
            })
        }
    };
    Ok(CommandResult::ok(stdout))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    cases: u64,
    failures: u64,
}

fn check_duals() -> Check {
    let (mut cases, mut failures) = (0, 0);
    for p in 2..=200i64 {
        for q in 1..p {
            if let Ok(lens) = LensSpace::new(p, q) {
                cases += 1;
                let dual = lens.dual();
                if !dual_is_consistent(&lens, &dual) || (q == 1 && dual.p_dual != p - 1) {
                    failures += 1;
                }
            }
        }
    }
    Check { name: "dual_params", cases, failures }
}

fn check_cables() -> Check {
    let (mut cases, mut failures) = (0, 0);
    let disk = SingularityCounts::new(1, 0, 0, 0);
    for r in 1..=8i64 {
        for s in -8..=8i64 {
            for p in (-8..=8i64).filter(|p| p.abs() >= 2) {
                for q in -8..=8i64 {
                    let Ok(c) = crate::cabling::CableParams::new(p, q) else { continue };
                    let Ok(pieces) = assembly(&r, &s, &c) else { continue };
                    cases += 1;
                    if cable_chi(&1, &r, &s, &c) != Ok(pieces.chi(&1)) {
                        failures += 1;
                    }
                    if let Ok((_, counts)) = assembly_oracle(&1, &disk, &r, &s, &c) {
                        let old_sl = crate::arith::Rational::new(-1, r).expect("r > 0");
                        let sl = cable_sl(&old_sl, &r, &s, &c);
                        if sl != Ok(crate::arith::Rational::from_integer(counts.signed_excess().expect("small"))) {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    Check { name: "cable_oracle", cases, failures }
}

fn check_mountains() -> Check {
    let (mut cases, mut failures) = (0, 0);
    for p in [3i64, 5, 7, 9] {
        for l in unknot::euler_classes(&p).expect("odd p") {
            for sign in [Sign::Plus, Sign::Minus] {
                cases += 1;
                let mut a = unknot::mountain_range(&p, &l, sign, 6).expect("valid class");
                let mut b = unknot::mountain_by_stabilization(&p, &l, sign, 6).expect("valid class");
                a.sort();
                b.sort();
                if a != b {
                    failures += 1;
                }
            }
        }
    }
    Check { name: "mountain_closure", cases, failures }
}

fn check_foliations() -> Check {
    let (mut cases, mut failures) = (0, 0);
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut pick = |n: usize| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % n as u64) as usize
    };
    for _ in 0..200 {
        let g = foliation::random_graph(&mut pick);
        cases += 1;
        let sum: i64 = g.counts().index_sum().expect("small");
        let ok = match normalize(&g) {
            Normalized::Normalized(n) => n.counts().e_minus == 0 && n.counts().index_sum::<i64>() == Ok(sum),
            Normalized::Overtwisted(c) => {
                c.frontier.iter().all(|id| c.graph.node(id).is_some_and(|n| n.sign == Sign::Plus))
            }
        };
        if !ok {
            failures += 1;
        }
    }
    Check { name: "foliation_normalize", cases, failures }
}

fn selftest() -> CommandResult {
    #[derive(Serialize)]
    struct Out {
        status: Status,
        checks: Vec<Check>,
    }
    let checks = vec![check_duals(), check_cables(), check_mountains(), check_foliations()];
    let status = if checks.iter().all(|c| c.failures == 0) { Status::Ok } else { Status::Error };
    CommandResult { status, stdout: json(&Out { status, checks }), stderr: String::new() }
}
