use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use charcorr::asym::{acdf, AsymptoticCase, Family, Subcase};
use charcorr::chars::{root_of_unity, CharGroup};
use charcorr::corr::{self, crosscorrelate};
use charcorr::experiment::{
    fmt_g, reproduce, scan_shifts, top_panel_decimation, ExperimentSpec, Figure, PairSpec, Scale, Table,
    DEFAULT_SEED, DEFAULT_SUBSAMPLE,
};
use charcorr::optim::{minimize_acdf, CaseKind};
use charcorr::par::set_global_threads;
use charcorr::seqgen::{mult_sequence, unimodularize, ComplexSequence};
use charcorr::{nt, Exec, FiniteField};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "charcorr", version, about = "Correlation of finite-field character sequences")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a sequence, one `re,im` term per line.
    Gen(SeqArgs),
    /// Print the aperiodic crosscorrelation profile of two sequences.
    Corr(PairArgs),
    /// Print demerit factors and the Pursley-Sarwate bounds for a pair.
    Metrics(PairArgs),
    /// Demerit factors of a pair family over every shift of one member.
    Scan(ScanArgs),
    /// Evaluate a limiting crosscorrelation demerit factor.
    Asymptote(AsymArgs),
    /// Minimize a limiting demerit factor over length and shifts.
    Optimize(OptArgs),
    /// Regenerate one of the figure tables as CSV.
    Reproduce(ReproArgs),
}

#[derive(Args, Clone)]
struct SeqArgs {
    /// Field as `p=<p>; modulus=<c0,...,cn>` (additive sequences only).
    #[arg(long)]
    field: Option<String>,
    /// `add:a=<e>` (character ε(α^e ·) on powers of α^d) or `mult:p=<p>,j=<j>`.
    #[arg(long = "char", default_value = "add:a=0")]
    chr: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    shift: i64,
    /// Length (default: the natural period).
    #[arg(long)]
    len: Option<usize>,
    /// Decimation: the sequence runs over powers of α^d.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    d: i64,
    /// Replace zero terms by 1.
    #[arg(long)]
    unimodular: bool,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    field: Option<String>,
    /// One or two character specs; the second defaults to the first.
    #[arg(long = "char", num_args = 1..=2, default_values_t = ["add:a=0".to_string()])]
    chr: Vec<String>,
    /// One or two shifts; the second defaults to 0.
    #[arg(long, num_args = 1..=2, allow_hyphen_values = true, default_values_t = [0i64])]
    shift: Vec<i64>,
    #[arg(long)]
    len: Option<usize>,
    /// Decimation applied to the second sequence.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    d: i64,
    #[arg(long)]
    unimodular: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// Field for an m-sequence scan.
    #[arg(long)]
    field: Option<String>,
    /// `mult:p=<p>,j=<j>` for a character-sequence scan; omit for m-sequences.
    #[arg(long = "char")]
    chr: Option<String>,
    /// Decimation relating the two m-sequences.
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    d: i64,
    /// Shift of the fixed member (m-sequences) or shift difference (characters).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    shift: i64,
    #[arg(long)]
    len: Option<usize>,
    #[arg(long)]
    unimodular: bool,
}

#[derive(Args)]
struct AsymArgs {
    /// `additive` or `multiplicative`.
    #[arg(long)]
    family: String,
    /// `same`/`trivial`, `conjugate`/`reversing`, `unrelated` or `quadratic`.
    #[arg(long)]
    subcase: String,
    #[arg(long)]
    lambda: f64,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    /// Characteristic.
    #[arg(long, default_value_t = 2)]
    p: u64,
}

#[derive(Args)]
struct OptArgs {
    #[arg(long)]
    case: String,
    /// Defaults to `multiplicative` for the quadratic case, else `additive`.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 2)]
    p: u64,
}

#[derive(Args)]
struct ReproArgs {
    /// One of andrew, bartholomew, lester, laura, linus, lisa, percy, monica.
    figure: String,
    /// Smaller fields for a quick run.
    #[arg(long, conflicts_with = "full")]
    reduced: bool,
    /// Enumerate every shift pair in the census figures.
    #[arg(long)]
    full: bool,
    /// Decimation for the m-sequence scans; `top` picks the nonreversing panel.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Shift pairs sampled per generator pair in the census figures.
    #[arg(long, default_value_t = DEFAULT_SUBSAMPLE)]
    subsample: usize,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Io(io::Error),
}

impl From<charcorr::Error> for Failure {
    fn from(e: charcorr::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn invalid<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure::Invalid(msg.into()))
}

enum CharSpec {
    Add { a: i64 },
    Mult { p: u64, j: i64 },
}

impl FromStr for CharSpec {
    type Err = Failure;

    fn from_str(s: &str) -> Res<Self> {
        let bad = || Failure::Invalid(format!("bad character spec `{s}`"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let mut fields = std::collections::HashMap::new();
        for part in rest.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: i64 = v.trim().parse().map_err(|_| bad())?;
            fields.insert(k.trim(), v);
        }
        match kind.trim() {
            "add" => Ok(CharSpec::Add { a: *fields.get("a").ok_or_else(bad)? }),
            "mult" => {
                let p = *fields.get("p").ok_or_else(bad)?;
                let j = *fields.get("j").ok_or_else(bad)?;
                if p < 2 {
                    return Err(bad());
                }
                Ok(CharSpec::Mult { p: p as u64, j })
            }
            _ => Err(bad()),
        }
    }
}

fn parse_field(spec: Option<&str>) -> Res<FiniteField> {
    match spec {
        Some(s) => Ok(s.parse()?),
        None => Ok(FiniteField::binary_511()),
    }
}

/// `ε(α^(a + d·(shift+t)))` for `t < len`.
fn additive_terms(field: &FiniteField, a: i64, d: i64, shift: i64, len: usize) -> Res<ComplexSequence> {
    let m = field.q1();
    if nt::gcd(nt::reduce(d, m), m) != 1 {
        return invalid(format!("decimation {d} is not coprime to {m}"));
    }
    let (a, d) = (nt::reduce(a, m), nt::reduce(d, m));
    let mut k = (a + nt::mod_mul(d, nt::reduce(shift, m), m)) % m;
    let mut terms = Vec::with_capacity(len);
    for _ in 0..len {
        let tr = match field.trace_of_power(k) {
            Some(t) => t,
            None => field.trace(&field.exp(k as i64)),
        };
        terms.push(root_of_unity(tr, field.p()));
        k = (k + d) % m;
    }
    Ok(ComplexSequence::new(terms))
}

fn build(field: &Option<String>, chr: &str, shift: i64, len: Option<usize>, d: i64, unimodular: bool) -> Res<ComplexSequence> {
    let seq = match chr.parse::<CharSpec>()? {
        CharSpec::Add { a } => {
            let field = parse_field(field.as_deref())?;
            let len = len.unwrap_or(field.q1() as usize);
            additive_terms(&field, a, d, shift, len)?
        }
        CharSpec::Mult { p, j } => {
            let group = CharGroup::prime(p)?;
            let chi = group.character(j);
            mult_sequence(&chi, shift, len.unwrap_or(p as usize))?
        }
    };
    if unimodular {
        return Ok(unimodularize(&seq, Complex64::new(1.0, 0.0))?);
    }
    Ok(seq)
}

fn pair(args: &PairArgs) -> Res<(ComplexSequence, ComplexSequence)> {
    let cf = &args.chr[0];
    let cg = args.chr.get(1).unwrap_or(cf);
    let sf = args.shift[0];
    let sg = args.shift.get(1).copied().unwrap_or(0);
    let f = build(&args.field, cf, sf, args.len, 1, args.unimodular)?;
    let g = build(&args.field, cg, sg, args.len, args.d, args.unimodular)?;
    Ok((f, g))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Res<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn gen(args: &SeqArgs) -> Res<String> {
    let seq = build(&args.field, &args.chr, args.shift, args.len, args.d, args.unimodular)?;
    let mut t = Table::new(&["re", "im"]);
    t.rows = seq.terms.iter().map(|z| vec![z.re, z.im]).collect();
    Ok(t.to_csv())
}

fn corr_profile(args: &PairArgs) -> Res<String> {
    let (f, g) = pair(args)?;
    let p = crosscorrelate(&f, &g)?;
    let mut t = Table::new(&["s", "re", "im", "abs2"]);
    t.rows = p.iter().map(|(s, c)| vec![s as f64, c.re, c.im, c.norm_sqr()]).collect();
    Ok(t.to_csv())
}

fn metrics(args: &PairArgs) -> Res<String> {
    let (f, g) = pair(args)?;
    let r = corr::demerit_report(&f, &g)?;
    let mut t = Table::new(&["df_f", "df_g", "cdf", "cmf", "ps_lower", "ps_upper"]);
    t.rows.push(vec![r.df_f, r.df_g, r.cdf, r.cmf, r.ps_lower, r.ps_upper]);
    Ok(t.to_csv())
}

fn scan(args: &ScanArgs) -> Res<String> {
    let spec = match &args.chr {
        None => {
            let field = parse_field(args.field.as_deref())?;
            field.classify_decimation(args.d)?;
            let len = args.len.unwrap_or(field.q1() as usize);
            PairSpec::Additive { field: Arc::new(field), d: args.d, f_shift: args.shift, len }
        }
        Some(c) => match c.parse::<CharSpec>()? {
            CharSpec::Mult { p, j } => {
                let m = p - 1;
                let j = nt::reduce(j, m);
                PairSpec::Multiplicative {
                    p,
                    j_f: j,
                    j_g: j,
                    diff: args.shift,
                    len: args.len.unwrap_or(p as usize),
                    replacement: args.unimodular.then_some(Complex64::new(1.0, 0.0)),
                }
            }
            CharSpec::Add { .. } => return invalid("scan takes a multiplicative --char or none"),
        },
    };
    if spec.is_empty() {
        return invalid("length must be positive");
    }
    let grid: Vec<i64> = (0..spec.period() as i64).collect();
    let rows = scan_shifts(&spec, &grid, corr::Method::Auto, Exec::Parallel)?;
    let mut t = Table::new(&["shift", "fractional_shift_sum", "df_f", "df_g", "cdf"]);
    t.rows = rows
        .iter()
        .map(|r| vec![r.shift as f64, r.fractional_shift_sum, r.df_f, r.df_g, r.cdf])
        .collect();
    Ok(t.to_csv())
}

fn family(s: &str) -> Res<Family> {
    match s.to_ascii_lowercase().as_str() {
        "additive" | "add" => Ok(Family::Additive),
        "multiplicative" | "mult" => Ok(Family::Multiplicative),
        _ => invalid(format!("unknown family `{s}`")),
    }
}

fn asymptote(args: &AsymArgs) -> Res<String> {
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| Failure::Invalid(format!("--{name} is required")));
    let subcase = match args.subcase.parse::<CaseKind>()? {
        CaseKind::SameOrTrivial => Subcase::SameOrTrivial { delta: need(args.delta, "delta")? },
        CaseKind::ConjugateOrReversing => Subcase::ConjugateOrReversing { sigma: need(args.sigma, "sigma")? },
        CaseKind::Unrelated => Subcase::Unrelated,
        CaseKind::Quadratic => Subcase::Quadratic {
            delta: need(args.delta, "delta")?,
            sigma: need(args.sigma, "sigma")?,
        },
    };
    if !nt::is_prime(args.p) {
        return invalid(format!("{} is not prime", args.p));
    }
    let case = AsymptoticCase::new(family(&args.family)?, subcase, args.lambda, args.p);
    Ok(format!("{}\n", fmt_g(acdf(&case)?)))
}

fn optimize(args: &OptArgs) -> Res<String> {
    let kind: CaseKind = args.case.parse()?;
    let fam = match &args.family {
        Some(f) => family(f)?,
        None if kind == CaseKind::Quadratic => Family::Multiplicative,
        None => Family::Additive,
    };
    let p = if fam == Family::Multiplicative && args.family.is_none() && args.p == 2 { 257 } else { args.p };
    if !nt::is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let r = minimize_acdf(fam, kind, p, Exec::Parallel)?;
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), fmt_g);
    let cubic = r.matched_cubic.map_or_else(
        || "-".to_string(),
        |c| format!("{}x^3{:+}x^2{:+}x{:+}", c.coeffs[0], c.coeffs[1], c.coeffs[2], c.coeffs[3]),
    );
    let mut out = String::new();
    out.push_str(&format!("lambda,{}\n", fmt_g(r.lambda)));
    out.push_str(&format!("delta,{}\n", opt(r.delta)));
    out.push_str(&format!("sigma,{}\n", opt(r.sigma)));
    out.push_str(&format!("min_value,{}\n", fmt_g(r.min_value)));
    out.push_str(&format!("matched_root,{}\n", fmt_g(r.matched_root)));
    out.push_str(&format!("matched_cubic,{cubic}\n"));
    out.push_str(&format!("residual,{}\n", fmt_g(r.residual)));
    if let Some((lo, hi)) = r.attained_on {
        out.push_str(&format!("attained_on,({}; {}]\n", fmt_g(lo), fmt_g(hi)));
    }
    Ok(out)
}

fn repro(args: &ReproArgs) -> Res<String> {
    let figure: Figure = args.figure.parse()?;
    let scale = if args.reduced { Scale::Reduced } else { Scale::Full };
    let d = match args.d.as_deref() {
        None => None,
        Some("top") => Some(top_panel_decimation(figure, scale)),
        Some(s) => Some(s.parse::<i64>().map_err(|_| Failure::Invalid(format!("bad decimation `{s}`")))?),
    };
    let spec = ExperimentSpec {
        scale,
        d,
        full_census: args.full,
        subsample: args.subsample,
        seed: args.seed,
        ..ExperimentSpec::new(figure)
    };
    Ok(reproduce(&spec)?.to_csv())
}

fn run(cli: &Cli) -> Res<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return invalid("--threads must be positive");
        }
        set_global_threads(n);
    }
    let text = match &cli.cmd {
        Cmd::Gen(a) => gen(a)?,
        Cmd::Corr(a) => corr_profile(a)?,
        Cmd::Metrics(a) => metrics(a)?,
        Cmd::Scan(a) => scan(a)?,
        Cmd::Asymptote(a) => asymptote(a)?,
        Cmd::Optimize(a) => optimize(a)?,
        Cmd::Reproduce(a) => repro(a)?,
    };
    emit(&cli.out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
