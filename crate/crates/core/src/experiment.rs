//! Shift scans, demerit-factor census and the figure reproductions, all
//! emitted as deterministic CSV tables.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::asym::{acdf, AsymptoticCase, Family, Subcase};
use crate::chars::CharGroup;
use crate::corr::{self, Method, PowerSpectrum, Spectral};
use crate::error::{Error, Result};
use crate::gf::{DecimationKind, FiniteField};
use crate::optim::{cubic_root, APPENDED_LENGTH, TRUNCATED_LENGTH};
use crate::par::{self, Exec};
use crate::seqgen::{additive_sequence_exp, mult_sequence, unimodularize, ComplexSequence};

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros dropped.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// A CSV table with `#` comment lines for metadata.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| fmt_g(v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// One half-open histogram bin `[lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
}

fn check_width(width: f64) -> Result<()> {
    if width > 0.0 && width.is_finite() {
        Ok(())
    } else {
        Err(Error::BadBinWidth(width))
    }
}

/// Bins aligned to multiples of `width`, covering the data from its minimum
/// to its maximum.
pub fn histogram(values: &[f64], width: f64) -> Result<Vec<Bin>> {
    check_width(width)?;
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return Ok(Vec::new());
    }
    let idx = |v: f64| (v / width).floor() as i64;
    let lo = finite.iter().map(|&v| idx(v)).min().unwrap();
    let hi = finite.iter().map(|&v| idx(v)).max().unwrap();
    let mut counts = vec![0u64; (hi - lo + 1) as usize];
    for &v in &finite {
        counts[(idx(v) - lo) as usize] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| {
            let k = (lo + i as i64) as f64;
            Bin { lo: k * width, hi: (k + 1.0) * width, count }
        })
        .collect())
}

/// Fixed bins over `[lo, hi)`, plus the number of values below and above.
pub fn histogram_range(values: &[f64], lo: f64, hi: f64, width: f64) -> Result<(Vec<Bin>, u64, u64)> {
    check_width(width)?;
    if lo.is_nan() || hi.is_nan() || hi <= lo {
        return Err(Error::BadArgs(format!("empty histogram range [{lo}, {hi})")));
    }
    let n = ((hi - lo) / width).round() as usize;
    let mut counts = vec![0u64; n];
    let (mut below, mut above) = (0, 0);
    for &v in values {
        let k = ((v - lo) / width).floor();
        if k < 0.0 {
            below += 1;
        } else if k >= n as f64 {
            above += 1;
        } else {
            counts[k as usize] += 1;
        }
    }
    let bins = counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| Bin { lo: lo + i as f64 * width, hi: lo + (i + 1) as f64 * width, count })
        .collect();
    Ok((bins, below, above))
}

/// A family of sequence pairs indexed by one integer shift.
#[derive(Clone, Debug)]
pub enum PairSpec {
    /// `f` is the m-sequence of the field generator at `f_shift`; `g` is the
    /// one of `generator^d`, at each shift of the grid.
    Additive { field: Arc<FiniteField>, d: i64, f_shift: i64, len: usize },
    /// `f` uses character `j_f` at each shift `r` of the grid; `g` uses
    /// `j_g` at `r - diff`. Zero terms are replaced when `replacement` is set.
    Multiplicative { p: u64, j_f: u64, j_g: u64, diff: i64, len: usize, replacement: Option<Complex64> },
}

impl PairSpec {
    pub fn len(&self) -> usize {
        match *self {
            PairSpec::Additive { len, .. } | PairSpec::Multiplicative { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The natural period: `q - 1` or `p`.
    pub fn period(&self) -> u64 {
        match self {
            PairSpec::Additive { field, .. } => field.q1(),
            PairSpec::Multiplicative { p, .. } => *p,
        }
    }

    /// The pair at grid point `shift`, and its fractional shift sum mod 1.
    pub fn pair(&self, shift: i64) -> Result<(ComplexSequence, ComplexSequence, f64)> {
        let period = self.period() as f64;
        match self {
            PairSpec::Additive { field, d, f_shift, len } => {
                let f = additive_sequence_exp(field, 1, *f_shift, *len)?;
                let g = additive_sequence_exp(field, *d, shift, *len)?;
                Ok((f, g, frac((f_shift + shift) as f64 / period)))
            }
            PairSpec::Multiplicative { p, j_f, j_g, diff, len, replacement } => {
                let group = CharGroup::prime(*p)?;
                let s = shift - diff;
                let mut f = mult_sequence(&group.character(*j_f as i64), shift, *len)?;
                let mut g = mult_sequence(&group.character(*j_g as i64), s, *len)?;
                if let Some(r) = replacement {
                    f = unimodularize(&f, *r)?;
                    g = unimodularize(&g, *r)?;
                }
                Ok((f, g, frac((shift + s) as f64 / period)))
            }
        }
    }
}

/// `x mod 1` in `[0, 1)`.
pub fn frac(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub shift: i64,
    pub fractional_shift_sum: f64,
    pub df_f: f64,
    pub df_g: f64,
    pub cdf: f64,
}

/// Demerit factors of a pair: the exact integer kernel for ternary terms,
/// the transform route otherwise.
pub fn fast_metrics(f: &ComplexSequence, g: &ComplexSequence) -> Result<(f64, f64, f64)> {
    let ternary = f.as_ternary().is_some() && g.as_ternary().is_some();
    if ternary {
        return Ok((corr::demerit_factor(f)?, corr::demerit_factor(g)?, corr::cross_demerit(f, g)?));
    }
    if f.len() != g.len() {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    let sp = Spectral::new(f.len());
    let (pf, pg) = (sp.power(f), sp.power(g));
    if pf.energy() == 0.0 || pg.energy() == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    Ok((pf.demerit_factor(), pg.demerit_factor(), pf.cross_demerit(&pg)))
}

/// Demerit factors at every grid shift, in ascending shift order.
pub fn scan_shifts(pair: &PairSpec, grid: &[i64], method: Method, exec: Exec) -> Result<Vec<ScanRow>> {
    let mut grid = grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    par::try_map_range(exec, grid.len(), |i| {
        let shift = grid[i];
        let (f, g, sum) = pair.pair(shift)?;
        let (df_f, df_g, cdf) = match method {
            Method::Auto => fast_metrics(&f, &g)?,
            m => (
                corr::demerit_factor_with(&f, m)?,
                corr::demerit_factor_with(&g, m)?,
                corr::cross_demerit_with(&f, &g, m)?,
            ),
        };
        Ok(ScanRow { shift, fractional_shift_sum: sum, df_f, df_g, cdf })
    })
}

/// The figures this crate reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Figure {
    /// Census of crosscorrelation demerit factors, length-255 m-sequence pairs.
    Andrew,
    /// The same census split into reversing and nonreversing pairs.
    Bartholomew,
    /// Binary m-sequences of length 511 against shift.
    Lester,
    /// Ternary m-sequences of length 728 against shift.
    Laura,
    /// Binary m-sequences appended to length 570.
    Linus,
    /// Binary m-sequences truncated to length 285.
    Lisa,
    /// Legendre pairs truncated from 257 to 143.
    Percy,
    /// Legendre pairs truncated from 257 to 128.
    Monica,
}

impl Figure {
    pub const ALL: [Figure; 8] = [
        Figure::Andrew,
        Figure::Bartholomew,
        Figure::Lester,
        Figure::Laura,
        Figure::Linus,
        Figure::Lisa,
        Figure::Percy,
        Figure::Monica,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Andrew => "andrew",
            Figure::Bartholomew => "bartholomew",
            Figure::Lester => "lester",
            Figure::Laura => "laura",
            Figure::Linus => "linus",
            Figure::Lisa => "lisa",
            Figure::Percy => "percy",
            Figure::Monica => "monica",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scale {
    #[default]
    Full,
    /// Smaller fields (lengths 127 and 255) for quick runs.
    Reduced,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub figure: Figure,
    pub scale: Scale,
    /// Decimation for the m-sequence scans; `None` picks the reversing panel.
    pub d: Option<i64>,
    /// Enumerate every shift pair in the census instead of subsampling.
    pub full_census: bool,
    /// Shift pairs sampled per generator pair in the census.
    pub subsample: usize,
    pub seed: u64,
    pub exec: Exec,
}

pub const DEFAULT_SUBSAMPLE: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

impl ExperimentSpec {
    pub fn new(figure: Figure) -> Self {
        ExperimentSpec {
            figure,
            scale: Scale::Full,
            d: None,
            full_census: false,
            subsample: DEFAULT_SUBSAMPLE,
            seed: DEFAULT_SEED,
            exec: Exec::Parallel,
        }
    }
}

pub const CENSUS_LO: f64 = 0.6;
pub const CENSUS_HI: f64 = 1.6;
pub const CENSUS_BIN: f64 = 0.005;

/// Fields used by the scatter figures at each scale.
fn scatter_field(figure: Figure, scale: Scale) -> FiniteField {
    match (figure, scale) {
        (Figure::Laura, Scale::Full) => FiniteField::ternary_728(),
        (Figure::Laura, Scale::Reduced) => FiniteField::first_irreducible(3, 5).expect("GF(243)"),
        (_, Scale::Full) => FiniteField::binary_511(),
        (_, Scale::Reduced) => FiniteField::binary_255(),
    }
}

/// The nonreversing decimation shown in the top panel.
pub fn top_panel_decimation(figure: Figure, scale: Scale) -> i64 {
    match (figure, scale) {
        (Figure::Laura, _) => 5,
        (_, Scale::Full) => 3,
        (_, Scale::Reduced) => 7,
    }
}

/// Limiting fractional length the asymptotic curve of a figure uses.
pub fn figure_lambda(figure: Figure) -> f64 {
    match figure {
        Figure::Linus => cubic_root(&APPENDED_LENGTH).expect("bracketed"),
        Figure::Lisa | Figure::Percy => cubic_root(&TRUNCATED_LENGTH).expect("bracketed"),
        Figure::Monica => 0.5,
        _ => 1.0,
    }
}

/// Asymptotic crosscorrelation demerit factor for an m-sequence pair related
/// by decimation `d`, with fractional shift difference `delta` and sum `sigma`.
pub fn additive_limit(field: &FiniteField, d: i64, lambda: f64, delta: f64, sigma: f64) -> Result<f64> {
    let subcase = match field.classify_decimation(d)?.kind {
        DecimationKind::Trivial => Subcase::SameOrTrivial { delta },
        DecimationKind::Reversing => Subcase::ConjugateOrReversing { sigma },
        DecimationKind::Other => Subcase::Unrelated,
    };
    acdf(&AsymptoticCase::new(Family::Additive, subcase, lambda, field.p()))
}

/// Asymptotic (DF of f, CDF) for a quadratic character pair.
pub fn quadratic_limits(p: u64, lambda: f64, delta: f64, sigma: f64) -> Result<(f64, f64)> {
    let case = |delta, sigma| {
        AsymptoticCase::new(Family::Multiplicative, Subcase::Quadratic { delta, sigma }, lambda, p)
    };
    let cdf = acdf(&case(delta, sigma))?;
    // f against itself: no shift difference, shift sum 2r/p = Σ + Δ
    let df = acdf(&case(0.0, sigma + delta))? - 1.0;
    Ok((df, cdf))
}

/// Parameters of a scatter figure: the pair family and the limiting length.
pub fn scatter_pair(figure: Figure, scale: Scale, d: Option<i64>) -> Result<PairSpec> {
    let field = Arc::new(scatter_field(figure, scale));
    let natural = field.q1() as usize;
    let lambda = figure_lambda(figure);
    let len = match figure {
        Figure::Lester | Figure::Laura => natural,
        Figure::Linus | Figure::Lisa => (natural as f64 * lambda).round() as usize,
        _ => return Err(Error::BadArgs(format!("{} is not an m-sequence scan", figure.name()))),
    };
    let d = d.unwrap_or(-1);
    field.classify_decimation(d)?;
    Ok(PairSpec::Additive { field, d, f_shift: 0, len })
}

/// The Legendre pair family of a figure: prime, truncated length, shift difference.
pub fn legendre_pair(figure: Figure, scale: Scale) -> Result<PairSpec> {
    let p: u64 = match scale {
        Scale::Full => 257,
        Scale::Reduced => 127,
    };
    let len = match figure {
        Figure::Percy => (p as f64 * figure_lambda(figure)).round() as usize,
        Figure::Monica => ((p - 1) / 2) as usize,
        _ => return Err(Error::BadArgs(format!("{} is not a Legendre scan", figure.name()))),
    };
    let j = (p - 1) / 2;
    Ok(PairSpec::Multiplicative {
        p,
        j_f: j,
        j_g: j,
        diff: ((p - 1) / 2) as i64,
        len,
        replacement: Some(Complex64::new(1.0, 0.0)),
    })
}

pub fn reproduce(spec: &ExperimentSpec) -> Result<Table> {
    match spec.figure {
        Figure::Andrew | Figure::Bartholomew => census_table(spec),
        Figure::Lester | Figure::Laura | Figure::Linus | Figure::Lisa => scatter_table(spec),
        Figure::Percy | Figure::Monica => legendre_table(spec),
    }
}

fn scatter_table(spec: &ExperimentSpec) -> Result<Table> {
    let d = spec.d.unwrap_or(-1);
    let pair = scatter_pair(spec.figure, spec.scale, Some(d))?;
    let PairSpec::Additive { field, len, .. } = &pair else { unreachable!() };
    let lambda = figure_lambda(spec.figure);
    let period = field.q1() as i64;
    let grid: Vec<i64> = (0..period).collect();
    let rows = scan_shifts(&pair, &grid, Method::Auto, spec.exec)?;

    let mut table = Table::new(&["fractional_shift_sum", "cdf_measured", "cdf_asymptotic"]);
    table.comment(format!("figure {}", spec.figure.name()));
    table.comment(format!("field {field}"));
    table.comment(format!("decimation {d} ({:?})", field.classify_decimation(d)?.kind));
    table.comment(format!("length {len}, limiting fractional length {}", fmt_g(lambda)));
    table.comment(format!("f shift 0, g shifts 0..{}", period - 1));
    for r in rows {
        let delta = frac(-(r.shift as f64) / period as f64);
        let limit = additive_limit(field, d, lambda, delta, r.fractional_shift_sum)?;
        table.rows.push(vec![r.fractional_shift_sum, r.cdf, limit]);
    }
    Ok(table)
}

fn legendre_table(spec: &ExperimentSpec) -> Result<Table> {
    let pair = legendre_pair(spec.figure, spec.scale)?;
    let PairSpec::Multiplicative { p, diff, len, .. } = pair else { unreachable!() };
    let lambda = figure_lambda(spec.figure);
    let grid: Vec<i64> = (0..p as i64).collect();
    let rows = scan_shifts(&pair, &grid, Method::Auto, spec.exec)?;

    let mut table = Table::new(&[
        "fractional_shift_sum",
        "df_measured",
        "df_asymptotic",
        "cdf_measured",
        "cdf_asymptotic",
    ]);
    table.comment(format!("figure {}", spec.figure.name()));
    table.comment(format!("quadratic character mod {p}, zero terms replaced by 1"));
    table.comment(format!("length {len}, shift difference {diff}, f shifts 0..{}", p - 1));
    table.comment(format!("asymptotic curves at fractional length {} and difference 1/2", fmt_g(lambda)));
    for r in rows {
        let (df, cdf) = quadratic_limits(p, lambda, 0.5, r.fractional_shift_sum)?;
        table.rows.push(vec![r.fractional_shift_sum, r.df_f, df, r.cdf, cdf]);
    }
    Ok(table)
}

/// One generator-pair block of the census.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusBlock {
    pub exp_f: u64,
    pub exp_g: u64,
    pub kind: DecimationKind,
    pub cdfs: Vec<f64>,
}

/// Crosscorrelation demerit factors of m-sequence pairs over all ordered
/// pairs of distinct Galois-conjugacy classes of primitive elements.
/// `subsample = None` takes every shift pair.
pub fn census(field: &FiniteField, subsample: Option<usize>, seed: u64, exec: Exec) -> Result<Vec<CensusBlock>> {
    let reps = field.primitive_representative_exponents()?;
    let n = field.q1() as usize;
    let sp = Spectral::new(n);
    let spectra: Vec<Vec<PowerSpectrum>> = reps
        .iter()
        .map(|&e| Ok(sp.shift_powers(&additive_sequence_exp(field, e as i64, 0, n)?, exec)))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..reps.len())
        .flat_map(|a| (0..reps.len()).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let total = n * n;
    par::try_map_range(exec, pairs.len(), |i| {
        let (a, b) = pairs[i];
        // g = f decimated by d where rep_b = rep_a · d
        let m = field.q1();
        let inv_a = mod_inverse(reps[a], m).expect("primitive exponents are units");
        let d = crate::nt::mod_mul(reps[b], inv_a, m);
        let kind = field.classify_decimation(d as i64)?.kind;
        let picks: Vec<usize> = match subsample {
            Some(k) if k < total => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let mut v = index::sample(&mut rng, total, k).into_vec();
                v.sort_unstable();
                v
            }
            _ => (0..total).collect(),
        };
        let cdfs = picks
            .into_iter()
            .map(|idx| spectra[a][idx / n].cross_demerit(&spectra[b][idx % n]))
            .collect();
        Ok(CensusBlock { exp_f: reps[a], exp_g: reps[b], kind, cdfs })
    })
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

fn census_table(spec: &ExperimentSpec) -> Result<Table> {
    let field = match spec.scale {
        Scale::Full => FiniteField::binary_255(),
        Scale::Reduced => FiniteField::first_irreducible(2, 7)?,
    };
    let subsample = (!spec.full_census).then_some(spec.subsample);
    let blocks = census(&field, subsample, spec.seed, spec.exec)?;
    let all: Vec<f64> = blocks.iter().flat_map(|b| b.cdfs.iter().copied()).collect();
    let (bins, below, above) = histogram_range(&all, CENSUS_LO, CENSUS_HI, CENSUS_BIN)?;

    let split = spec.figure == Figure::Bartholomew;
    let mut table = if split {
        Table::new(&["bin_lo", "bin_hi", "count", "reversing", "nonreversing"])
    } else {
        Table::new(&["bin_lo", "bin_hi", "count"])
    };
    let n = field.q1();
    table.comment(format!("figure {}", spec.figure.name()));
    table.comment(format!("field {field}, length {n}"));
    table.comment(format!(
        "{} ordered pairs of conjugacy classes, {} shift pairs each{}",
        blocks.len(),
        blocks.first().map_or(0, |b| b.cdfs.len()),
        match subsample {
            Some(k) if k < (n * n) as usize => format!(" (seeded subsample of {k}, seed {})", spec.seed),
            _ => String::new(),
        }
    ));
    table.comment(format!("values below {CENSUS_LO}: {below}, at or above {CENSUS_HI}: {above}"));

    let (rev, nonrev) = if split {
        let pick = |want: bool| -> Result<Vec<Bin>> {
            let v: Vec<f64> = blocks
                .iter()
                .filter(|b| (b.kind == DecimationKind::Reversing) == want)
                .flat_map(|b| b.cdfs.iter().copied())
                .collect();
            Ok(histogram_range(&v, CENSUS_LO, CENSUS_HI, CENSUS_BIN)?.0)
        };
        (Some(pick(true)?), Some(pick(false)?))
    } else {
        (None, None)
    };
    for (i, bin) in bins.iter().enumerate() {
        let mut row = vec![bin.lo, bin.hi, bin.count as f64];
        if let (Some(r), Some(o)) = (&rev, &nonrev) {
            row.push(r[i].count as f64);
            row.push(o[i].count as f64);
        }
        table.rows.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(17.0), "17");
        assert_eq!(fmt_g(0.5), "0.5");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(-2.5e-7), "-2.5e-07");
        assert_eq!(fmt_g(1234567.0), "1234567");
        assert_eq!(fmt_g(1e15), "1e+15");
    }

    #[test]
    fn histogram_examples() {
        let bins = histogram(&[0.5, 0.5], 0.1).unwrap();
        assert_eq!(bins.len(), 1);
        assert_eq!(bins[0].count, 2);
        assert!(bins[0].lo <= 0.5 && 0.5 < bins[0].hi);
        assert_eq!(histogram(&[1.0], 0.0), Err(Error::BadBinWidth(0.0)));
        let (bins, below, above) = histogram_range(&[0.0, 0.25, 0.5, 1.0], 0.0, 1.0, 0.5).unwrap();
        assert_eq!(bins.iter().map(|b| b.count).collect::<Vec<_>>(), vec![2, 1]);
        assert_eq!((below, above), (0, 1));
    }

    #[test]
    fn figure_names() {
        for f in Figure::ALL {
            assert_eq!(f.name().parse::<Figure>().unwrap(), f);
        }
        assert_eq!("fig9".parse::<Figure>(), Err(Error::UnknownFigure("fig9".into())));
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(mod_inverse(7, 255), Some(73));
        assert_eq!(mod_inverse(5, 255), None);
    }
}
