//! Command-line front end. Exit codes: 0 all checks passed, 1 a check failed
//! or a discrepancy was flagged, 2 invalid input, 3 resource guard, 4 I/O.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use torinv::ffq::{EnumerationMode, Fq, FqMatrix};
use torinv::gl2::{gl2_algebra, gl2_landmarks, sl2_algebra, sl2_landmarks};
use torinv::grgln::{
    build_gr_un, chern_coefficient, commuting_regular_subgroup, essential_kernel, exponent_check, hook_detection,
    max_rank, regular_unipotent_check, subgroup_support, theorem_borel_char2, theorem_lowest_gl, SubgroupKind,
};
use torinv::invalg::{
    detection_kernel, dimension_series, enumerate_monomials, invariant_monomials, invariant_monomials_oracle,
    monomial_weight, quillen_verify, AlgebraSpec, SeriesFilter,
};
use torinv::report::{gr_report, landmarks_report, render, render_many, Format, Report};
use torinv::rootsys::{
    build_root_system, char2_vanishing_bound, cofundamental_exponent, coweight_one_witness, coxeter_number,
    expected_coxeter_number, expected_positive_root_count, is_good_prime, lie_gr_algebra, parse_components,
    root_action_index, root_divisibility, Component, LatticeSpec, RootSystem,
};
use torinv::verify::{verify_all, Grid};
use torinv::Error;

#[derive(Parser, Debug)]
#[command(name = "torinv", version, about = "Torus-invariant cohomology combinatorics for finite groups of Lie type")]
struct Cli {
    /// Output format: table | json | csv
    #[arg(long, global = true, default_value = "table")]
    format: String,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Sample this many elements instead of enumerating all of them
    #[arg(long, global = true)]
    samples: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite field data
    #[command(subcommand)]
    Field(FieldCmd),
    /// Invariant monomials of an algebra spec file
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// Exhaustive checks: digit-sum lemma, exponent p, regular unipotents
    #[command(subcommand)]
    Check(CheckCmd),
    /// The GL2 model
    #[command(subcommand)]
    Gl2(RankOneCmd),
    /// The SL2 model
    #[command(subcommand)]
    Sl2(RankOneCmd),
    /// Root systems and lattices
    #[command(subcommand)]
    Rootsys(RootsysCmd),
    /// gr U_n for GL_n and its subgroups
    #[command(subcommand)]
    Grun(GrunCmd),
    /// Lowest-degree dimension reporters
    #[command(subcommand)]
    Theorem(TheoremCmd),
    /// The full verification grid
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Debug, Clone, Copy)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    r: u32,
}

#[derive(Subcommand, Debug)]
enum FieldCmd {
    /// Irreducible polynomial and multiplicative generator of F_{p^r}
    Info(FieldArgs),
}

#[derive(Args, Debug)]
struct SpecArg {
    /// Algebra spec (JSON)
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Subcommand, Debug)]
enum InvariantsCmd {
    /// Dimension series up to a degree
    Run {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        max_degree: u32,
        /// all | invariant | invariant_nilpotent
        #[arg(long, default_value = "invariant")]
        filter: String,
        /// Also run the field-arithmetic oracle and compare
        #[arg(long)]
        oracle: bool,
    },
    /// Monomials of one degree (all, or invariant only)
    List {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        degree: u32,
        /// all | invariant
        #[arg(long, default_value = "invariant")]
        filter: String,
        /// Use the field-arithmetic oracle for the invariant list
        #[arg(long)]
        oracle: bool,
    },
    /// Torus weight of a monomial given as `id=e,id=e`
    Weight {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        monomial: String,
    },
    /// Detection kernel against a family of generator-id sets (JSON list of lists)
    Detect {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct NprArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    r: u32,
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Digit-sum lemma for (p^r - 1) | sum p^k a_k
    Quillen(FieldArgs),
    /// g^p = I on U_n(F_q)
    Exponent(NprArgs),
    /// Regular unipotent test for a matrix `a,b,c;d,e,f;...` (packed field elements)
    Regular {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Subcommand, Debug)]
enum RankOneCmd {
    /// The algebra spec
    Algebra(FieldArgs),
    /// First invariant and non-nilpotent landmarks
    Landmarks(FieldArgs),
    /// Dimension series
    Series {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        max_degree: u32,
        /// all | invariant | invariant_nilpotent
        #[arg(long, default_value = "invariant")]
        filter: String,
    },
}

#[derive(Args, Debug)]
struct TypeArgs {
    /// `C` (with --rank) or a list like `A2,B3`
    #[arg(long = "type")]
    kind: String,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Debug)]
struct LatticeArg {
    /// adjoint | sc | FILE (JSON {"kind": "custom", "basis": [[..]]})
    #[arg(long, default_value = "adjoint")]
    lattice: String,
}

#[derive(Subcommand, Debug)]
enum RootsysCmd {
    /// Positive roots, heights, Coxeter numbers, coweight-one witnesses, good primes
    Info {
        #[command(flatten)]
        ty: TypeArgs,
        /// Also test whether p is good
        #[arg(long)]
        p: Option<u64>,
    },
    /// Exponent of coweight lattice / cocharacter lattice
    Exponent {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        lattice: LatticeArg,
    },
    /// Characteristic-2 vanishing bound r / gcd(e, 2^r - 1)
    Bound {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        r: u32,
    },
    /// Divisibility of a root in the character lattice
    Divisibility {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        lattice: LatticeArg,
        /// Simple-root coordinates, e.g. `2,2,1`
        #[arg(long)]
        root: String,
        #[arg(long, default_value_t = 2)]
        divisor: i64,
    },
    /// Index of the image of a root character in F_q^x
    ActionIndex {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        root: String,
        #[arg(long)]
        q: u64,
    },
    /// gr-level algebra of the unipotent radical, optionally with its series
    Algebra {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum GrunCmd {
    /// The gr U_n algebra spec
    Build(NprArgs),
    /// Generator support of hook:l,m | edge:i | root:i,j | superdiag:k
    Support {
        #[command(flatten)]
        npr: NprArgs,
        #[arg(long)]
        subgroup: String,
    },
    /// Detection kernel in degree r(2p-3) against hooks (odd p) or root subgroups (p = 2)
    Detect(NprArgs),
    /// Kernel on gr K_1n against the edge subgroups (r = 1, odd p)
    Essential {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Elementary abelian subgroup of regular unipotents I + lambda J
    Commuting(NprArgs),
    /// Coefficient of u^{p-1} in the Chern class expansion, mod p
    Chern {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Maximal elementary abelian rank r * floor(n^2 / 4)
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
}

#[derive(Subcommand, Debug)]
enum TheoremCmd {
    /// dim H^{r(2p-3)}(GL_n F_q; F_p) for r = 1 or p = 2
    LowestGl(NprArgs),
    /// dim H^r(B_n F_{2^r}; F_2)
    Borel2 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Run the verification grid (default: the built-in acceptance grid)
    All {
        #[arg(long)]
        grid: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::ResourceGuard { .. }) => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io(_) => 4,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

enum Output {
    One(Report),
    Many(Vec<Report>),
}

impl Output {
    fn pass(&self) -> bool {
        match self {
            Output::One(r) => r.pass,
            Output::Many(rs) => rs.iter().all(|r| r.pass),
        }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// its report. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> CliResult<i32> {
    let format: Format = cli.format.parse()?;
    let output = dispatch(cli)?;
    let text = match &output {
        Output::One(r) => render(r, format),
        Output::Many(rs) => render_many(rs, format),
    };
    match &cli.out {
        Some(path) => fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if output.pass() {
        Ok(0)
    } else {
        eprintln!("verification failed (a check did not match or a DISCREPANCY was flagged)");
        Ok(1)
    }
}

fn read_file(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_spec(arg: &SpecArg) -> CliResult<AlgebraSpec> {
    let text = read_file(&arg.spec)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", arg.spec.display())))
}

fn parse_filter(s: &str) -> CliResult<SeriesFilter> {
    serde_json::from_value(json!(s)).map_err(|_| CliError::Usage(format!("unknown filter `{s}`")))
}

fn parse_ints(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("not an integer list: `{s}`"))))
        .collect()
}

fn parse_type(ty: &TypeArgs) -> CliResult<Vec<Component>> {
    let text = match ty.rank {
        Some(rank) => format!("{}{rank}", ty.kind.trim()),
        None => ty.kind.clone(),
    };
    Ok(parse_components(&text)?)
}

fn parse_lattice(rs: &RootSystem, arg: &LatticeArg) -> CliResult<LatticeSpec> {
    match arg.lattice.as_str() {
        "adjoint" => Ok(LatticeSpec::adjoint(rs)),
        "sc" | "simply_connected" => Ok(LatticeSpec::simply_connected(rs)),
        file => {
            let text = read_file(&PathBuf::from(file))?;
            let spec: LatticeSpec =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{file}: {e}")))?;
            Ok(LatticeSpec::custom(rs, spec.basis)?)
        }
    }
}

fn parse_subgroup(s: &str) -> CliResult<SubgroupKind> {
    let (kind, args) = s.split_once(':').ok_or_else(|| CliError::Usage(format!("bad subgroup `{s}`")))?;
    let v: Vec<usize> = parse_ints(args)?.into_iter().map(|x| x.max(0) as usize).collect();
    match (kind, v.as_slice()) {
        ("hook", [l, m]) => Ok(SubgroupKind::Hook(*l, *m)),
        ("edge", [i]) => Ok(SubgroupKind::EdgeL(*i)),
        ("root", [i, j]) => Ok(SubgroupKind::Root(*i, *j)),
        ("superdiag", [k]) => Ok(SubgroupKind::Superdiag(*k)),
        _ => Err(CliError::Usage(format!("bad subgroup `{s}` (hook:l,m | edge:i | root:i,j | superdiag:k)"))),
    }
}

fn series_report(command: &str, params: Value, alg: &AlgebraSpec, max_degree: u32, filter: SeriesFilter) -> CliResult<Report> {
    let series = dimension_series(alg, max_degree, filter)?;
    let results = json!({"spec_hash": alg.spec_hash(), "filter": filter, "dims": series.dims});
    Ok(Report::new(command, params, results, true).with_series(series.dims))
}

fn algebra_report(command: &str, params: Value, alg: &AlgebraSpec) -> Report {
    let results = json!({"spec_hash": alg.spec_hash(), "spec": alg});
    Report::new(command, params, results, true)
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    let one = |r: Report| Ok(Output::One(r));
    match &cli.command {
        Command::Field(FieldCmd::Info(a)) => {
            let field = Fq::new(a.p, a.r)?;
            let g = field.multiplicative_generator();
            let results = json!({
                "q": field.prime_power().q(),
                "info": field.info(),
                "generator": field.coeffs(g),
                "generator_display": field.format(g),
            });
            one(Report::new("field info", json!({"p": a.p, "r": a.r}), results, true))
        }
        Command::Invariants(cmd) => invariants(cmd),
        Command::Check(CheckCmd::Quillen(a)) => {
            let q = quillen_verify(a.p, a.r)?;
            one(Report::new("check quillen", json!({"p": a.p, "r": a.r}), json!(q), q.pass))
        }
        Command::Check(CheckCmd::Exponent(a)) => {
            let mode = match cli.samples {
                Some(count) => EnumerationMode::Sample { count, seed: cli.seed },
                None => EnumerationMode::All,
            };
            let rep = exponent_check(a.n, a.p, a.r, mode)?;
            let expected = a.n as u64 <= a.p;
            let params = json!({"n": a.n, "p": a.p, "r": a.r, "samples": cli.samples, "seed": cli.seed});
            let mut results = json!(rep);
            results["expected_pass"] = json!(expected);
            one(Report::new("check exponent", params, results, rep.pass == expected))
        }
        Command::Check(CheckCmd::Regular { field, matrix }) => {
            let fq = Arc::new(Fq::new(field.p, field.r)?);
            let q = fq.prime_power().q();
            let rows = matrix
                .split(';')
                .map(|row| {
                    parse_ints(row)?
                        .into_iter()
                        .map(|v| {
                            if v < 0 || v as u64 >= q {
                                return Err(CliError::Usage(format!("entry {v} is not a packed element of F_{q}")));
                            }
                            let coeffs: Vec<u64> = (0..field.r).map(|i| (v as u64 / field.p.pow(i)) % field.p).collect();
                            Ok(fq.element(&coeffs)?)
                        })
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<Vec<_>>>()?;
            let m = FqMatrix::from_rows(&fq, rows)?;
            let regular = regular_unipotent_check(&m)?;
            let params = json!({"p": field.p, "r": field.r, "matrix": m.to_coeff_rows()});
            one(Report::new("check regular", params, json!({"regular": regular}), true))
        }
        Command::Gl2(cmd) => rank_one(cmd, false),
        Command::Sl2(cmd) => rank_one(cmd, true),
        Command::Rootsys(cmd) => rootsys(cmd),
        Command::Grun(cmd) => grun(cmd),
        Command::Theorem(TheoremCmd::LowestGl(a)) => one(gr_report("theorem lowest-gl", &theorem_lowest_gl(a.n, a.p, a.r)?)),
        Command::Theorem(TheoremCmd::Borel2 { n, r }) => one(gr_report("theorem borel2", &theorem_borel_char2(*n, *r)?)),
        Command::Verify(VerifyCmd::All { grid }) => {
            let grid = match grid {
                Some(path) => serde_json::from_str(&read_file(path)?)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
                None => Grid::acceptance(),
            };
            Ok(Output::Many(verify_all(&grid)?))
        }
    }
}

fn invariants(cmd: &InvariantsCmd) -> CliResult<Output> {
    let report = match cmd {
        InvariantsCmd::Run { spec, max_degree, filter, oracle } => {
            let alg = load_spec(spec)?;
            let filter = parse_filter(filter)?;
            let params = json!({"spec": spec.spec.display().to_string(), "max_degree": max_degree});
            let mut report = series_report("invariants run", params, &alg, *max_degree, filter)?;
            if *oracle {
                let mut agree = true;
                for d in 0..=*max_degree {
                    agree &= invariant_monomials(&alg, d)? == invariant_monomials_oracle(&alg, d)?;
                }
                report.results["oracle_agrees"] = json!(agree);
                report.pass = agree;
            }
            report
        }
        InvariantsCmd::List { spec, degree, filter, oracle } => {
            let alg = load_spec(spec)?;
            let monos = match (filter.as_str(), oracle) {
                ("all", _) => enumerate_monomials(&alg, *degree)?,
                ("invariant", false) => invariant_monomials(&alg, *degree)?,
                ("invariant", true) => invariant_monomials_oracle(&alg, *degree)?,
                _ => return Err(CliError::Usage(format!("unknown filter `{filter}` (all | invariant)"))),
            };
            let params = json!({"spec": spec.spec.display().to_string(), "degree": degree, "filter": filter, "oracle": oracle});
            let results = json!({
                "spec_hash": alg.spec_hash(),
                "count": monos.len(),
                "monomials": monos.iter().map(|m| alg.monomial_json(m)).collect::<Vec<_>>(),
            });
            Report::new("invariants list", params, results, true)
        }
        InvariantsCmd::Weight { spec, monomial } => {
            let alg = load_spec(spec)?;
            let mut exps = BTreeMap::new();
            for part in monomial.split(',').filter(|s| !s.trim().is_empty()) {
                let (id, e) = part.split_once('=').unwrap_or((part, "1"));
                let e: u32 = e.trim().parse().map_err(|_| CliError::Usage(format!("bad exponent in `{part}`")))?;
                *exps.entry(id.trim().to_string()).or_insert(0) += e;
            }
            let m = alg.monomial(&exps)?;
            let w = monomial_weight(&alg, &m)?;
            let params = json!({"spec": spec.spec.display().to_string(), "monomial": alg.monomial_json(&m)});
            Report::new("invariants weight", params, json!({"weight": w.coords, "invariant": w.is_zero()}), true)
        }
        InvariantsCmd::Detect { spec, degree, family } => {
            let alg = load_spec(spec)?;
            let fam: Vec<Vec<String>> = serde_json::from_str(&read_file(family)?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", family.display())))?;
            let k = detection_kernel(&alg, *degree, &fam)?;
            let params = json!({"spec": spec.spec.display().to_string(), "degree": degree, "family": fam});
            let results = json!({
                "spec_hash": alg.spec_hash(),
                "invariant_dim": k.invariant_dim,
                "kernel_dim": k.kernel_dim,
                "cokernel_dim": k.cokernel_dim,
                "kernel_basis": k.kernel_basis.iter().map(|m| alg.monomial_json(m)).collect::<Vec<_>>(),
            });
            Report::new("invariants detect", params, results, true)
        }
    };
    Ok(Output::One(report))
}

fn rank_one(cmd: &RankOneCmd, special: bool) -> CliResult<Output> {
    let group = if special { "sl2" } else { "gl2" };
    let algebra = |a: &FieldArgs| if special { sl2_algebra(a.p, a.r) } else { gl2_algebra(a.p, a.r) };
    let report = match cmd {
        RankOneCmd::Algebra(a) => algebra_report(&format!("{group} algebra"), json!({"p": a.p, "r": a.r}), &algebra(a)?),
        RankOneCmd::Landmarks(a) => {
            let l = if special { sl2_landmarks(a.p, a.r)? } else { gl2_landmarks(a.p, a.r)? };
            landmarks_report(&l)
        }
        RankOneCmd::Series { field, max_degree, filter } => {
            let params = json!({"p": field.p, "r": field.r, "max_degree": max_degree});
            series_report(&format!("{group} series"), params, &algebra(field)?, *max_degree, parse_filter(filter)?)?
        }
    };
    Ok(Output::One(report))
}

fn rootsys(cmd: &RootsysCmd) -> CliResult<Output> {
    let report = match cmd {
        RootsysCmd::Info { ty, p } => {
            let comps = parse_type(ty)?;
            let rs = build_root_system(&comps)?;
            let cox = coxeter_number(&rs);
            let wit = coweight_one_witness(&rs);
            let mut results = rs.to_json();
            results["coxeter_numbers"] = json!(cox.iter().map(|(c, h)| json!({"component": c.to_string(), "h": h})).collect::<Vec<_>>());
            results["coweight_one_witness"] =
                json!(wit.iter().map(|(c, w)| json!({"component": c.to_string(), "s": w})).collect::<Vec<_>>());
            let pass = rs.positive_roots().len() == comps.iter().map(expected_positive_root_count).sum::<usize>()
                && cox.iter().all(|(c, h)| *h == expected_coxeter_number(c))
                && wit.iter().all(|(c, w)| w.is_none() == c.is_excluded());
            if let Some(p) = p {
                if !torinv::ffq::is_prime(*p) {
                    return Err(CliError::Usage(format!("p = {p} is not prime")));
                }
                results["good_prime"] = json!(is_good_prime(&rs, *p));
            }
            Report::new("rootsys info", json!({"type": ty.kind, "rank": ty.rank, "p": p}), results, pass)
        }
        RootsysCmd::Exponent { ty, lattice } => {
            let rs = build_root_system(&parse_type(ty)?)?;
            let lat = parse_lattice(&rs, lattice)?;
            let e = cofundamental_exponent(&rs, &lat)?;
            Report::new("rootsys exponent", json!({"type": ty.kind, "rank": ty.rank, "lattice": lat}), json!({"exponent": e}), true)
        }
        RootsysCmd::Bound { ty, lattice, r } => {
            let rs = build_root_system(&parse_type(ty)?)?;
            let lat = parse_lattice(&rs, lattice)?;
            let b = char2_vanishing_bound(&rs, &lat, *r)?;
            let e = cofundamental_exponent(&rs, &lat)?;
            let results = json!({"exponent": e, "bound": b, "bound_display": b.to_string()});
            Report::new("rootsys bound", json!({"type": ty.kind, "rank": ty.rank, "lattice": lat, "r": r}), results, true)
        }
        RootsysCmd::Divisibility { ty, lattice, root, divisor } => {
            let rs = build_root_system(&parse_type(ty)?)?;
            let lat = parse_lattice(&rs, lattice)?;
            let coords = parse_ints(root)?;
            let d = root_divisibility(&rs, &lat, &coords, *divisor)?;
            let params = json!({"type": ty.kind, "rank": ty.rank, "lattice": lat, "root": coords, "divisor": divisor});
            let results = json!({"divisible": d, "character_coords": lat.character_coords(&coords)});
            Report::new("rootsys divisibility", params, results, true)
        }
        RootsysCmd::ActionIndex { ty, lattice, root, q } => {
            let rs = build_root_system(&parse_type(ty)?)?;
            let lat = parse_lattice(&rs, lattice)?;
            let coords = parse_ints(root)?;
            let idx = root_action_index(&rs, &lat, &coords, *q)?;
            let params = json!({"type": ty.kind, "rank": ty.rank, "lattice": lat, "root": coords, "q": q});
            Report::new("rootsys action-index", params, json!({"index": idx}), true)
        }
        RootsysCmd::Algebra { ty, lattice, p, r, max_degree } => {
            let rs = build_root_system(&parse_type(ty)?)?;
            let lat = parse_lattice(&rs, lattice)?;
            let alg = lie_gr_algebra(&rs, &lat, *p, *r)?;
            let params = json!({"type": ty.kind, "rank": ty.rank, "lattice": lat, "p": p, "r": r, "max_degree": max_degree});
            match max_degree {
                Some(d) => series_report("rootsys algebra", params, &alg, *d, SeriesFilter::Invariant)?,
                None => algebra_report("rootsys algebra", params, &alg),
            }
        }
    };
    Ok(Output::One(report))
}

fn grun(cmd: &GrunCmd) -> CliResult<Output> {
    let npr = |a: &NprArgs| json!({"n": a.n, "p": a.p, "r": a.r});
    let report = match cmd {
        GrunCmd::Build(a) => algebra_report("grun build", npr(a), &build_gr_un(a.n, a.p, a.r)?.algebra),
        GrunCmd::Support { npr: a, subgroup } => {
            let spec = build_gr_un(a.n, a.p, a.r)?;
            let s = subgroup_support(&spec, parse_subgroup(subgroup)?)?;
            let results = json!({
                "name": s.name,
                "generator_ids": s.generator_ids(&spec),
                "positions": s.positions(&spec),
            });
            Report::new("grun support", npr(a), results, true)
        }
        GrunCmd::Detect(a) => gr_report("grun detect", &hook_detection(&build_gr_un(a.n, a.p, a.r)?, None)?),
        GrunCmd::Essential { n, p } => gr_report("grun essential", &essential_kernel(*n, *p)?),
        GrunCmd::Commuting(a) => {
            let rep = commuting_regular_subgroup(a.n, a.p, a.r)?;
            let mut results = json!(rep);
            results["generators"] = json!(rep.generators.iter().map(FqMatrix::to_coeff_rows).collect::<Vec<_>>());
            Report::new("grun commuting", npr(a), results, rep.pass)
        }
        GrunCmd::Chern { n, p } => {
            let c = chern_coefficient(*n, *p)?;
            Report::new("grun chern", json!({"n": n, "p": p}), json!({"coefficient": c}), c == 1)
        }
        GrunCmd::Rank { n, r } => {
            if *n < 1 {
                return Err(CliError::Usage("n must be at least 1".into()));
            }
            Report::new("grun rank", json!({"n": n, "r": r}), json!({"max_rank": max_rank(*n, *r)}), true)
        }
    };
    Ok(Output::One(report))
}
