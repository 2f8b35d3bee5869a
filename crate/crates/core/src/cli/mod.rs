//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on numerical or domain failure (including a
//! residual above `--tol`), 2 on usage errors.

mod output;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::basis::{eval_grid, uniform_grid, CnoidalParam, RepPolicy};
use crate::coefficients::{
    b_symbol, coeff_table, convolution_kmax, e_ell, f_sum, verify_convolution_with,
    verify_identity, SeriesForm, SeriesRep, SingularConvention,
};
use crate::error::Error;
use crate::projection::{basis_threshold, project};
use crate::solvers::{integrated_residual, pde_residual, solve_kawahara, solve_kdv};
use crate::special::{modulus_from_s, rational_to_f64};

pub use output::{format_real, real, reals, CsvTable, OutputRecord};

const RESIDUAL_GRID: usize = 128;

#[derive(Parser, Debug)]
#[command(name = "cnoidal", version, about = "Evaluate u_s, its product identities and the travelling waves built from them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Residual threshold for verify and convolution.
    #[arg(long, global = true, default_value_t = 1e-8, allow_negative_numbers = true)]
    tol: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Rep {
    Auto,
    Fourier,
    Soliton,
    Elliptic,
    Small,
    Large,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate u_s^(n) on a uniform grid or at given points.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Coefficients b(n) and c of the (α, β) product identity.
    #[command(allow_negative_numbers = true)]
    Coeffs(PairArgs),
    /// Grid residual of the (α, β) product identity.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Brute-force check of the discrete convolution formula.
    #[command(allow_negative_numbers = true)]
    Convolution(ConvolutionArgs),
    /// Cnoidal KdV wave.
    #[command(allow_negative_numbers = true)]
    Kdv(KdvArgs),
    /// Periodic Kawahara wave.
    #[command(allow_negative_numbers = true)]
    Kawahara(KawaharaArgs),
    /// The nine lowest product identities with symbolic tags.
    #[command(allow_negative_numbers = true)]
    Table(TableArgs),
    /// The series e_ℓ and F_ℓ.
    #[command(allow_negative_numbers = true)]
    Sums(SumsArgs),
    /// Least-squares expansion of sampled data in {1, u, u', …, u^(N)}.
    #[command(allow_negative_numbers = true)]
    Project(ProjectArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    s: f64,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 64, conflicts_with = "x")]
    grid: usize,
    /// Evaluation points; comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Rep::Auto)]
    rep: Rep,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    alpha: usize,
    #[arg(long)]
    beta: usize,
    #[arg(long)]
    s: f64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    alpha: usize,
    #[arg(long)]
    beta: usize,
    #[arg(long)]
    s: f64,
    #[arg(long, default_value_t = 64)]
    grid: usize,
}

#[derive(Args, Debug)]
struct ConvolutionArgs {
    #[arg(long)]
    alpha: usize,
    #[arg(long)]
    beta: usize,
    #[arg(long)]
    j: i64,
    #[arg(long)]
    s: f64,
}

#[derive(Args, Debug)]
struct KdvArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    s: f64,
}

#[derive(Args, Debug)]
struct KawaharaArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    /// Root scan range `lo,hi` in s.
    #[arg(long, value_delimiter = ',', value_name = "LO,HI")]
    bracket: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, default_value_t = 1.0)]
    s: f64,
}

#[derive(Args, Debug)]
struct SumsArgs {
    #[arg(long)]
    s: f64,
    /// Order ℓ.
    #[arg(long, alias = "ell")]
    n: usize,
    #[arg(long, value_enum, default_value_t = Rep::Auto)]
    rep: Rep,
}

#[derive(Args, Debug)]
struct ProjectArgs {
    /// CSV file with columns x,value sampled uniformly on [0, 2π).
    target: PathBuf,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    n: usize,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
    /// The record is still emitted, then the process exits with 1.
    Tolerance(Box<OutputRecord>, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerical(e.to_string())
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (record, code) = match run(&cli) {
        Ok(record) => (record, 0),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            return 1;
        }
        Err(Failure::Tolerance(record, msg)) => {
            eprintln!("error: {msg}");
            (*record, 1)
        }
    };
    match emit(&cli, &record) {
        Ok(()) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn emit(cli: &Cli, record: &OutputRecord) -> Result<(), String> {
    let mut buf = Vec::new();
    match cli.format {
        Format::Json => record.write_json(&mut buf).map_err(|e| e.to_string())?,
        Format::Csv => record.write_csv(&mut buf).map_err(|e| e.to_string())?,
    }
    match &cli.out {
        Some(path) => fs::write(path, &buf).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout().lock().write_all(&buf).map_err(|e| e.to_string()),
    }
}

fn run(cli: &Cli) -> Result<OutputRecord, Failure> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Coeffs(a) => cmd_coeffs(a),
        Command::Verify(a) => cmd_verify(a, cli.tol),
        Command::Convolution(a) => cmd_convolution(a, cli.tol),
        Command::Kdv(a) => cmd_kdv(a),
        Command::Kawahara(a) => cmd_kawahara(a),
        Command::Table(a) => cmd_table(a),
        Command::Sums(a) => cmd_sums(a),
        Command::Project(a) => cmd_project(a),
    }
}

fn rep_name(rep: Rep) -> &'static str {
    match rep {
        Rep::Auto => "auto",
        Rep::Fourier => "fourier",
        Rep::Soliton => "soliton",
        Rep::Elliptic => "elliptic",
        Rep::Small => "small",
        Rep::Large => "large",
    }
}

fn cmd_eval(a: &EvalArgs) -> Result<OutputRecord, Failure> {
    let policy = match a.rep {
        Rep::Auto => RepPolicy::Auto,
        Rep::Fourier => RepPolicy::Fourier,
        Rep::Soliton => RepPolicy::SolitonTrain,
        Rep::Elliptic => RepPolicy::Elliptic,
        Rep::Small | Rep::Large => {
            return Err(Failure::Usage("eval accepts --rep auto, fourier, soliton or elliptic".into()))
        }
    };
    let xs = if a.x.is_empty() {
        if a.grid == 0 {
            return Err(Failure::Usage("--grid must be positive".into()));
        }
        uniform_grid(a.grid)
    } else {
        a.x.clone()
    };
    let param = CnoidalParam::new(a.s)?.with_policy(policy);
    let values = eval_grid(&param, &xs, a.n)?;
    let used = param.resolve(a.n);
    let mut r = OutputRecord::new("eval");
    r.input_real("s", a.s).input("n", a.n).input("rep", rep_name(a.rep));
    if a.x.is_empty() {
        r.input("grid", a.grid);
    } else {
        r.input("x", reals(&a.x));
    }
    r.result("x", reals(&xs)).result("u", reals(&values));
    r.diagnostic(format!("representation: {used:?}"));
    if policy == RepPolicy::Elliptic {
        let modulus = param.modulus()?;
        r.result_real("m", modulus.m);
        if modulus.precision_warning {
            r.diagnostic("elliptic parameter near the edge of double precision");
        }
    }
    r.table = Some(CsvTable {
        header: vec!["x".into(), "u".into()],
        rows: xs.iter().zip(&values).map(|(&x, &u)| vec![real(x), real(u)]).collect(),
    });
    Ok(r)
}

fn e_map(values: &std::collections::BTreeMap<usize, f64>) -> Value {
    Value::Object(values.iter().map(|(l, v)| (format!("e_{l}"), real(*v))).collect())
}

fn cmd_coeffs(a: &PairArgs) -> Result<OutputRecord, Failure> {
    let t = coeff_table(a.alpha, a.beta, a.s)?;
    let mut r = OutputRecord::new("coeffs");
    r.input("alpha", a.alpha).input("beta", a.beta).input_real("s", a.s);
    r.result("a", reals(&t.a))
        .result("b", reals(&t.b))
        .result_real("c", t.c)
        .result("leading", t.leading.to_string())
        .result("e", e_map(&t.e_values));
    if (a.alpha + a.beta).is_multiple_of(2) {
        r.result_real(&format!("F_{}", a.alpha + a.beta), t.f_value);
    }
    r.table = Some(CsvTable {
        header: vec!["n".into(), "a".into(), "b".into()],
        rows: t
            .a
            .iter()
            .zip(&t.b)
            .enumerate()
            .map(|(n, (&an, &bn))| vec![json!(n), real(an), real(bn)])
            .collect(),
    });
    Ok(r)
}

fn check_tolerance(r: OutputRecord, residual: f64, tol: f64) -> Result<OutputRecord, Failure> {
    if residual > tol {
        let msg = format!("residual {} exceeds tolerance {}", format_real(residual), format_real(tol));
        let mut r = r;
        r.diagnostic(msg.clone());
        return Err(Failure::Tolerance(Box::new(r), msg));
    }
    Ok(r)
}

fn cmd_verify(a: &VerifyArgs, tol: f64) -> Result<OutputRecord, Failure> {
    let residual = verify_identity(a.alpha, a.beta, a.s, a.grid)?;
    let mut r = OutputRecord::new("verify");
    r.input("alpha", a.alpha)
        .input("beta", a.beta)
        .input_real("s", a.s)
        .input("grid", a.grid)
        .input_real("tol", tol);
    r.result_real("residual", residual);
    check_tolerance(r, residual, tol)
}

fn cmd_convolution(a: &ConvolutionArgs, tol: f64) -> Result<OutputRecord, Failure> {
    if !(a.s > 0.0 && a.s.is_finite()) {
        return Err(Error::Domain(format!("s must be positive and finite, got {}", a.s)).into());
    }
    let k_max = convolution_kmax(a.alpha, a.beta, a.j, a.s);
    let limit = verify_convolution_with(a.alpha, a.beta, a.j, a.s, k_max, SingularConvention::Limit)?;
    let skip = verify_convolution_with(a.alpha, a.beta, a.j, a.s, k_max, SingularConvention::Skip)?;
    let mut r = OutputRecord::new("convolution");
    r.input("alpha", a.alpha)
        .input("beta", a.beta)
        .input("j", a.j)
        .input_real("s", a.s)
        .input_real("tol", tol);
    r.result_real("residual", limit)
        .result_real("residual_skip_convention", skip)
        .result("k_max", k_max);
    r.diagnostic("singular terms at k = 0 and k = -j use their limiting values");
    check_tolerance(r, limit, tol)
}

fn cmd_kdv(a: &KdvArgs) -> Result<OutputRecord, Failure> {
    let w = solve_kdv(a.alpha, a.s)?;
    let mut r = OutputRecord::new("kdv");
    r.input_real("alpha", a.alpha).input_real("s", a.s);
    r.result_real("s", w.s)
        .result_real("f1", w.f1)
        .result_real("f2", w.f2)
        .result_real("c", w.c)
        .result_real("d", w.d)
        .result_real("integrated_residual", integrated_residual(&w, RESIDUAL_GRID)?)
        .result_real("pde_residual", pde_residual(&w, RESIDUAL_GRID)?);
    Ok(r)
}

fn cmd_kawahara(a: &KawaharaArgs) -> Result<OutputRecord, Failure> {
    let bracket = match a.bracket.as_deref() {
        None => None,
        Some([lo, hi]) => Some((*lo, *hi)),
        Some(_) => return Err(Failure::Usage("--bracket takes lo,hi".into())),
    };
    let sol = solve_kawahara(a.alpha, a.beta, bracket)?;
    let w = &sol.wave;
    let mut r = OutputRecord::new("kawahara");
    r.input_real("alpha", a.alpha).input_real("beta", a.beta);
    if let Some((lo, hi)) = bracket {
        r.input("bracket", reals(&[lo, hi]));
    }
    r.result_real("s0", w.s)
        .result_real("m", modulus_from_s(w.s)?.m)
        .result_real("f1", w.f1)
        .result_real("f2", w.f2)
        .result_real("c", w.c)
        .result_real("d", w.d)
        .result("roots", reals(&sol.roots))
        .result_real("g_residual", sol.g_residual)
        .result_real("integrated_residual", integrated_residual(w, RESIDUAL_GRID)?)
        .result_real("pde_residual", pde_residual(w, RESIDUAL_GRID)?);
    r.diagnostic(format!("roots found: {}", sol.roots.len()));
    if sol.roots.len() > 1 {
        r.diagnostic("several roots bracketed; the smallest was used");
    }
    Ok(r)
}

/// The nine identities with `α ≥ β` and `α + β ≤ 4`.
const TABLE_ROWS: [(usize, usize); 9] =
    [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (2, 2), (3, 1), (4, 0)];

fn multiple(k: i64, body: &str) -> String {
    match k {
        1 => body.to_string(),
        -1 => format!("-{body}"),
        _ => format!("{k}{body}"),
    }
}

/// `3e_4`, `-1/70`, `s/pi-e_2`, `2(s/pi-e_2)`, `0`.
fn symbol_tag(alpha: usize, beta: usize, n: usize) -> Result<String, Error> {
    let sym = b_symbol(alpha, beta, n)?;
    if let Some(q) = sym.leading {
        return Ok(q.to_string());
    }
    let e = format!("e_{}", sym.ell);
    Ok(match (sym.e_multiplier, sym.pi_multiplier) {
        (0, 0) => "0".into(),
        (0, p) => multiple(p, "s/pi"),
        (k, 0) => multiple(k, &e),
        (k, p) if k == -p => multiple(p, &if p.abs() == 1 { format!("s/pi-{e}") } else { format!("(s/pi-{e})") }),
        (k, p) => format!("{}{}{}", multiple(p, "s/pi"), if k > 0 { "+" } else { "" }, multiple(k, &e)),
    })
}

fn cmd_table(a: &TableArgs) -> Result<OutputRecord, Failure> {
    let mut r = OutputRecord::new("table");
    r.input_real("s", a.s);
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for (alpha, beta) in TABLE_ROWS {
        let t = coeff_table(alpha, beta, a.s)?;
        let mut tags = Vec::with_capacity(t.b.len());
        for n in 0..t.b.len() {
            tags.push(symbol_tag(alpha, beta, n)?);
        }
        // exact rationals replace the floating value at the top order
        let mut b = t.b.clone();
        let top = b.len() - 1;
        b[top] = rational_to_f64(&t.leading);
        for (n, (tag, &v)) in tags.iter().zip(&b).enumerate() {
            csv_rows.push(vec![json!(alpha), json!(beta), json!(n), json!(tag), real(v)]);
        }
        rows.push(json!({
            "alpha": alpha,
            "beta": beta,
            "b": reals(&b),
            "symbols": tags,
            "c": real(t.c),
        }));
    }
    r.result("rows", Value::Array(rows));
    r.table = Some(CsvTable {
        header: ["alpha", "beta", "n", "symbol", "value"].map(String::from).to_vec(),
        rows: csv_rows,
    });
    Ok(r)
}

fn form_name(form: SeriesForm) -> &'static str {
    match form {
        SeriesForm::SmallS => "small",
        SeriesForm::LargeS => "large",
    }
}

fn cmd_sums(a: &SumsArgs) -> Result<OutputRecord, Failure> {
    let rep = match a.rep {
        Rep::Auto => SeriesRep::Auto,
        Rep::Small => SeriesRep::SmallS,
        Rep::Large => SeriesRep::LargeS,
        _ => return Err(Failure::Usage("sums accepts --rep auto, small or large".into())),
    };
    let mut r = OutputRecord::new("sums");
    r.input_real("s", a.s).input("n", a.n).input("rep", rep_name(a.rep));
    if a.n >= 2 {
        let e = e_ell(a.s, a.n, rep)?;
        r.result_real("e", e.value)
            .result("e_rep", form_name(e.rep))
            .result("e_terms", e.terms_used)
            .result_real("e_tail_bound", e.tail_bound);
    } else {
        r.diagnostic("e_ℓ is defined for ℓ ≥ 2; only F_ℓ reported");
    }
    let f = f_sum(a.s, a.n, rep)?;
    r.result_real("F", f.value)
        .result("F_rep", form_name(f.rep))
        .result("F_terms", f.terms_used)
        .result_real("F_tail_bound", f.tail_bound);
    Ok(r)
}

fn read_samples(path: &PathBuf) -> Result<Vec<f64>, Failure> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Failure::Numerical(format!("{}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::Numerical(format!("{}: {e}", path.display())))?;
        let field = record
            .get(if record.len() >= 2 { 1 } else { 0 })
            .ok_or_else(|| Failure::Numerical(format!("row {} is empty", i + 1)))?;
        let v: f64 = field
            .parse()
            .map_err(|_| Failure::Numerical(format!("row {}: cannot parse {field:?}", i + 1)))?;
        values.push(v);
    }
    Ok(values)
}

fn cmd_project(a: &ProjectArgs) -> Result<OutputRecord, Failure> {
    let samples = read_samples(&a.target)?;
    let p = project(&samples, a.s, a.n)?;
    let mut r = OutputRecord::new("project");
    r.input("target", a.target.display().to_string())
        .input_real("s", a.s)
        .input("n", a.n)
        .input("samples", samples.len());
    r.result("coeffs", reals(&p.coeffs))
        .result_real("l2_residual", p.l2_residual)
        .result_real("gram_condition", p.gram_condition);
    if !basis_threshold(a.s) {
        r.diagnostic("threshold sinh(π/2s)≥1 not met; completeness of the basis is not guaranteed");
    }
    let names = std::iter::once("1".to_string()).chain((0..=a.n).map(|k| format!("u^({k})")));
    r.table = Some(CsvTable {
        header: vec!["term".into(), "coefficient".into()],
        rows: names.zip(&p.coeffs).map(|(name, &c)| vec![json!(name), real(c)]).collect(),
    });
    Ok(r)
}
