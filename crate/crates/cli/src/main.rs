//! `acrghw`: relative generalized Hamming weights of affine Cartesian codes.
//!
//! Exit codes: 0 success, 1 verification mismatch or property violation,
//! 2 invalid input, 3 oracle budget exceeded.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Duration;

use cartesian_rghw::boxcomb::{BoxShape, DegreeBand};
use cartesian_rghw::codes::{build_code, build_grid, CartesianGrid, SubsetPolicy};
use cartesian_rghw::gf::Field;
use cartesian_rghw::oracle::{oracle_rghw_support, OracleBudget};
use cartesian_rghw::poly::{common_zero_count, footprint_count, maximal_family, MultiPoly};
use cartesian_rghw::verify::{self, GridSpec, Status, VerifyOptions};
use cartesian_rghw::weights::{self, WeightRecord};
use cartesian_rghw::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "acrghw", version, about = "Relative generalized Hamming weights of affine Cartesian codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the weight hierarchy of a nested pair C(u2) < C(u1).
    Hierarchy(HierarchyArgs),
    /// Print the maximal polynomial family attaining M_r.
    Maximal(MaximalArgs),
    /// Compare the formula with the brute-force oracle over a parameter grid.
    Verify(VerifyArgs),
    /// Print the generator matrix of C(d), one row per line.
    Generator(GeneratorArgs),
    /// Check the footprint bound on seeded random polynomial families.
    Footprint(FootprintArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Field size (a prime power up to 65536).
    #[arg(long)]
    q: u32,
    /// Subset sizes d_1,...,d_m.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Explicit subsets as field-element encodings, e.g. "0,1;0,1,2".
    #[arg(long, conflicts_with = "policy")]
    subsets: Option<String>,
    /// Subset policy when --subsets is absent.
    #[arg(long, value_enum, default_value_t = PolicyArg::First)]
    policy: PolicyArg,
}

#[derive(Args)]
struct BandArgs {
    /// Upper degree bound of the larger code.
    #[arg(long, allow_negative_numbers = true)]
    u1: i64,
    /// Degree bound of the smaller code; -1 gives the zero code.
    #[arg(long, allow_negative_numbers = true)]
    u2: i64,
}

#[derive(Args)]
struct BudgetArgs {
    /// Oracle state budget.
    #[arg(long, default_value_t = 100_000_000)]
    max_states: u64,
    /// Oracle wall-clock cap in seconds.
    #[arg(long, default_value_t = 300)]
    time_cap: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Result<OracleBudget, Error> {
        OracleBudget::new(self.max_states, Duration::from_secs(self.time_cap))
    }
}

#[derive(Args)]
struct HierarchyArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    band: BandArgs,
    /// Only this r (all r when absent).
    #[arg(long)]
    r: Option<u64>,
    /// Also run the support oracle for each row.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct MaximalArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    band: BandArgs,
    #[arg(long)]
    r: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Field sizes to sweep.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    fields: Vec<u32>,
    /// Shapes to sweep, separated by ';'.
    #[arg(long, default_value = "2;3;2,2;2,3;3,3;2,2,2")]
    shapes: String,
    /// Skip shapes with more points than this.
    #[arg(long, default_value_t = 9)]
    max_n: u64,
    /// Also run the coordinate-window oracle.
    #[arg(long)]
    window: bool,
    #[arg(long, value_enum, default_value_t = PolicyArg::First)]
    policy: PolicyArg,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Adds one to every formula value (harness self-test).
    #[arg(long, hide = true)]
    corrupt_formula: bool,
}

#[derive(Args)]
struct GeneratorArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Degree bound d; -1 gives the zero code.
    #[arg(long, allow_negative_numbers = true)]
    d: i64,
}

#[derive(Args)]
struct FootprintArgs {
    #[arg(long)]
    seed: u64,
    /// Families per field.
    #[arg(long, default_value_t = 1000)]
    families: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    fields: Vec<u32>,
    /// Largest grid size used.
    #[arg(long, default_value_t = 12)]
    max_n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    First,
    Last,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    Invalid(String),
    Budget(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Hierarchy(a) => cmd_hierarchy(a),
        Command::Maximal(a) => cmd_maximal(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Generator(a) => cmd_generator(a),
        Command::Footprint(a) => cmd_footprint(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_lists<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<Vec<T>>, Failure> {
    text.split(';')
        .map(|part| {
            part.split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| Failure::Invalid(format!("bad {what} entry {x:?}")))
                })
                .collect()
        })
        .collect()
}

fn policy(grid: &GridArgs) -> Result<SubsetPolicy, Failure> {
    Ok(match (&grid.subsets, grid.policy) {
        (Some(text), _) => SubsetPolicy::Explicit(parse_lists(text, "subset")?),
        (None, PolicyArg::First) => SubsetPolicy::First,
        (None, PolicyArg::Last) => SubsetPolicy::Last,
    })
}

fn warn_if_reordered(shape: &BoxShape) {
    if shape.was_reordered() {
        let perm: Vec<String> = shape.permutation().iter().map(|i| (i + 1).to_string()).collect();
        let dims: Vec<String> = shape.dims().iter().map(|d| d.to_string()).collect();
        eprintln!(
            "WARNING: sizes reordered to ({}) by permutation [{}] (entry i is the input position of coordinate i)",
            dims.join(","),
            perm.join(",")
        );
    }
}

fn grid_of(args: &GridArgs) -> Result<CartesianGrid, Failure> {
    let field = Field::new(args.q)?;
    let grid = build_grid(&field, &args.sizes, &policy(args)?)?;
    warn_if_reordered(grid.shape());
    Ok(grid)
}

fn band_of(grid: &CartesianGrid, b: &BandArgs) -> Result<DegreeBand, Failure> {
    Ok(DegreeBand::new(grid.shape(), b.u2, b.u1)?)
}

fn check_r(r: u64, len: u64) -> Result<(), Failure> {
    if r == 0 || r > len {
        return Err(Error::RankOutOfRange { rank: r, len }.into());
    }
    Ok(())
}

fn coords(a: &[usize], sep: &str) -> String {
    a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn cmd_hierarchy(args: &HierarchyArgs) -> Outcome {
    let grid = grid_of(&args.grid)?;
    let band = band_of(&grid, &args.band)?;
    let shape = grid.shape();
    let len = shape.band_len(&band);
    let rs: Vec<u64> = match args.r {
        Some(r) => {
            check_r(r, len)?;
            vec![r]
        }
        None => (1..=len).collect(),
    };
    let records: Vec<WeightRecord> = rs
        .iter()
        .map(|&r| weights::rghw(shape, &band, r))
        .collect::<Result<_, _>>()?;
    let oracle: Vec<Option<u64>> = if args.oracle {
        let budget = args.budget.budget()?;
        let c1 = build_code(&grid, args.band.u1)?;
        let c2 = build_code(&grid, args.band.u2)?;
        rs.iter()
            .map(|&r| oracle_rghw_support(&c1, &c2, r, budget).map(|o| Some(o.value)))
            .collect::<Result<_, _>>()?
    } else {
        vec![None; rs.len()]
    };

    let out = match args.format {
        Format::Text => {
            let mut s = String::from("r a_r s M_r max_zeros oracle\n");
            for (w, o) in records.iter().zip(&oracle) {
                let o = o.map_or("-".to_string(), |v| v.to_string());
                writeln!(s, "{} {} {} {} {} {}", w.r, w.a_r, w.s, w.m_r, w.max_zeros, o).unwrap();
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("r,a_r,s,M_r,max_zeros,oracle\n");
            for (w, o) in records.iter().zip(&oracle) {
                let o = o.map_or(String::new(), |v| v.to_string());
                let a = coords(w.a_r.coords(), " ");
                writeln!(s, "{},{},{},{},{},{}", w.r, a, w.s, w.m_r, w.max_zeros, o).unwrap();
            }
            s
        }
        Format::Json => {
            let results: Vec<Value> = records
                .iter()
                .zip(&oracle)
                .map(|(w, o)| {
                    json!({
                        "r": w.r,
                        "a_r": w.a_r.coords(),
                        "s": w.s,
                        "M_r": w.m_r,
                        "max_zeros": w.max_zeros,
                        "oracle": o,
                    })
                })
                .collect();
            let subsets: Vec<Vec<u32>> = grid
                .subsets()
                .iter()
                .map(|a| a.iter().map(|x| x.value()).collect())
                .collect();
            let doc = json!({
                "query": {
                    "q": args.grid.q,
                    "sizes": shape.dims(),
                    "subsets": subsets,
                    "u1": args.band.u1,
                    "u2": args.band.u2,
                    "r": args.r,
                    "n": shape.n(),
                    "k": shape.k(),
                    "ell": len,
                },
                "results": results,
            });
            render_json(&doc)
        }
    };
    print!("{out}");
    Ok(())
}

/// Object keys come out sorted, so re-rendering a parsed document is
/// byte-identical.
fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

fn cmd_maximal(args: &MaximalArgs) -> Outcome {
    let grid = grid_of(&args.grid)?;
    let band = band_of(&grid, &args.band)?;
    check_r(args.r, grid.shape().band_len(&band))?;
    let family = maximal_family(&grid, &band, args.r)?;
    let zeros = common_zero_count(&family, &grid)?;
    let formula = weights::rghw(grid.shape(), &band, args.r)?;
    for (i, f) in family.iter().enumerate() {
        let lt = f.leading_term().expect("maximal polynomials are nonzero");
        println!("f_{} = {}    (leading exponent {})", i + 1, f, lt.exponent);
    }
    println!("zeros {zeros}");
    println!("support {}", grid.n() as u64 - zeros);
    println!("formula {}", formula.m_r);
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let spec = GridSpec {
        fields: args.fields.clone(),
        shapes: parse_lists(&args.shapes, "shape")?,
        max_n: args.max_n,
    };
    let opts = VerifyOptions {
        budget: args.budget.budget()?,
        policy: match args.policy {
            PolicyArg::First => SubsetPolicy::First,
            PolicyArg::Last => SubsetPolicy::Last,
        },
        window: args.window,
        corrupt_formula: args.corrupt_formula,
    };
    let tuples = verify::tuples(&spec)?;
    let rows = verify::run(&tuples, &opts)?;
    let show = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    println!("q sizes u2 u1 r formula oracle window status states");
    for row in &rows {
        let t = &row.tuple;
        println!(
            "{} ({}) {} {} {} {} {} {} {} {}",
            t.q,
            coords(&t.sizes, ","),
            t.u2,
            t.u1,
            t.r,
            row.formula,
            show(row.oracle),
            show(row.window),
            row.status.as_str(),
            row.states
        );
        if let Some(w) = &row.witness {
            println!("  witness: {w}");
        }
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    let mismatches = count(Status::Mismatch);
    println!(
        "total {} ok {} mismatch {} skipped {}",
        rows.len(),
        count(Status::Ok),
        mismatches,
        count(Status::Skipped)
    );
    if mismatches > 0 {
        return Err(Failure::Mismatch);
    }
    Ok(())
}

fn cmd_generator(args: &GeneratorArgs) -> Outcome {
    let grid = grid_of(&args.grid)?;
    let code = build_code(&grid, args.d)?;
    print!("{}", code.generator_text());
    Ok(())
}

fn shapes_up_to(q: usize, max_n: usize) -> Vec<Vec<usize>> {
    fn grow(cur: &mut Vec<usize>, q: usize, max_n: usize, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        let n: usize = cur.iter().product();
        let lo = cur.last().copied().unwrap_or(2);
        for d in lo..=q {
            if n * d <= max_n {
                cur.push(d);
                grow(cur, q, max_n, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), q, max_n, &mut out);
    out
}

fn random_poly(rng: &mut ChaCha8Rng, grid: &CartesianGrid) -> Result<MultiPoly, Error> {
    let field = grid.field();
    loop {
        let terms = rng.gen_range(1..=grid.n().min(5));
        let mut list = Vec::with_capacity(terms);
        for _ in 0..terms {
            let e: Vec<usize> = grid.shape().dims().iter().map(|&d| rng.gen_range(0..d)).collect();
            list.push((e.into(), field.element(rng.gen_range(1..field.order()))?));
        }
        let p = MultiPoly::from_terms(field, grid.shape(), list)?;
        if !p.is_zero() {
            return Ok(p);
        }
    }
}

fn cmd_footprint(args: &FootprintArgs) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    println!("seed {}", args.seed);
    let mut violations = 0;
    for &q in &args.fields {
        let field = Field::new(q)?;
        let side = (q as usize).min(args.max_n);
        let grids: Vec<CartesianGrid> = shapes_up_to(side, args.max_n)
            .iter()
            .map(|s| build_grid(&field, s, &SubsetPolicy::First))
            .collect::<Result<_, _>>()?;
        if grids.is_empty() {
            return Err(Failure::Invalid(format!("no shapes with n <= {} over GF({q})", args.max_n)));
        }
        let mut bad = 0;
        for i in 0..args.families {
            let grid = &grids[i % grids.len()];
            let size = rng.gen_range(1..=3);
            let family = (0..size)
                .map(|_| random_poly(&mut rng, grid))
                .collect::<Result<Vec<_>, _>>()?;
            let lts: Vec<_> = family
                .iter()
                .map(|p| p.leading_term().expect("nonzero").exponent)
                .collect();
            if common_zero_count(&family, grid)? > footprint_count(grid.shape(), &lts) {
                bad += 1;
            }
        }
        println!("GF({q}) families {} shapes {} violations {bad}", args.families, grids.len());
        violations += bad;
    }
    if violations > 0 {
        return Err(Failure::Mismatch);
    }
    Ok(())
}
