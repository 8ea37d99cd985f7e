//! Aperiodic correlation and demerit factors.
//!
//! `C_{f,g}(s) = Σ_j f_j conj(g_{j+s})` with terms outside `[0, ℓ)` taken as
//! zero. Three routes compute the same quantities:
//!
//! * the direct double sum over complex terms (the reference),
//! * the same sum over `i32` arrays when every term is -1, 0 or +1, which is
//!   exact and therefore bit-identical to the reference,
//! * a transform route through zero-padded FFTs, for batch scans.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::seqgen::{cyclic_shift, ComplexSequence};

/// Longest input accepted by the O(ℓ³) quadruple-sum oracle.
pub const NORM4_MAX_LEN: usize = 64;

/// Slack allowed on the Pursley-Sarwate bounds before reporting a violation.
pub const PS_TOLERANCE: f64 = 1e-9;

/// Neumaier's compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// How the correlation sums are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    /// Integer kernel when both inputs are ternary, otherwise the direct sum.
    #[default]
    Auto,
    /// Direct complex sum, even for ternary input.
    Generic,
    /// Zero-padded FFTs.
    Spectral,
}

/// `C(s)` for `s ∈ [-(ℓ-1), ℓ-1]`, stored from the most negative shift up.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationProfile {
    pub values: Vec<Complex64>,
    pub len_f: usize,
    pub len_g: usize,
}

impl CorrelationProfile {
    pub fn max_shift(&self) -> i64 {
        self.len_f as i64 - 1
    }

    /// `C(s)`, zero outside the stored range.
    pub fn at(&self, s: i64) -> Complex64 {
        let idx = s + self.max_shift();
        if idx < 0 || idx as usize >= self.values.len() {
            return Complex64::new(0.0, 0.0);
        }
        self.values[idx as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let off = self.max_shift();
        self.values.iter().enumerate().map(move |(i, &c)| (i as i64 - off, c))
    }

    /// `Σ_s |C(s)|²`.
    pub fn sum_sq(&self) -> f64 {
        compensated_sum(self.values.iter().map(|c| c.norm_sqr()))
    }
}

fn check_lengths(f: &ComplexSequence, g: &ComplexSequence) -> Result<usize> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    if f.is_empty() {
        return Err(Error::ZeroEnergy);
    }
    Ok(f.len())
}

fn direct_lag(f: &[Complex64], g: &[Complex64], s: i64) -> Complex64 {
    let n = f.len() as i64;
    let lo = 0.max(-s);
    let hi = n.min(n - s);
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for j in lo..hi {
        let z = f[j as usize] * g[(j + s) as usize].conj();
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.value(), im.value())
}

fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `C(s)` for ternary inputs, `s` from `-(ℓ-1)` up.
fn ternary_lags(a: &[i32], b: &[i32]) -> Vec<i64> {
    let n = a.len();
    let mut out = Vec::with_capacity(2 * n - 1);
    for k in (1..n).rev() {
        out.push(dot(&a[k..], &b[..n - k]) as i64);
    }
    for s in 0..n {
        out.push(dot(&a[..n - s], &b[s..]) as i64);
    }
    out
}

/// `Σ_s C(s)²` for ternary inputs, exactly.
pub fn ternary_sum_sq(a: &[i32], b: &[i32]) -> i64 {
    let n = a.len();
    let mut total = 0i64;
    for s in 0..n {
        let c = dot(&a[..n - s], &b[s..]) as i64;
        total += c * c;
    }
    for k in 1..n {
        let c = dot(&a[k..], &b[..n - k]) as i64;
        total += c * c;
    }
    total
}

fn ternary_energy(a: &[i32]) -> i64 {
    a.iter().map(|&x| (x * x) as i64).sum()
}

/// The full crosscorrelation profile by the direct sum (integer kernel for
/// ternary input).
pub fn crosscorrelate(f: &ComplexSequence, g: &ComplexSequence) -> Result<CorrelationProfile> {
    crosscorrelate_with(f, g, Method::Auto)
}

pub fn crosscorrelate_with(
    f: &ComplexSequence,
    g: &ComplexSequence,
    method: Method,
) -> Result<CorrelationProfile> {
    let n = check_lengths(f, g)?;
    let values = match method {
        Method::Spectral => return Ok(Spectral::new(n).profile(f, g)),
        Method::Auto => match (f.as_ternary(), g.as_ternary()) {
            (Some(a), Some(b)) => ternary_lags(&a, &b)
                .into_iter()
                .map(|c| Complex64::new(c as f64, 0.0))
                .collect(),
            _ => direct_profile(f, g),
        },
        Method::Generic => direct_profile(f, g),
    };
    Ok(CorrelationProfile { values, len_f: n, len_g: n })
}

fn direct_profile(f: &ComplexSequence, g: &ComplexSequence) -> Vec<Complex64> {
    let n = f.len() as i64;
    (-(n - 1)..n).map(|s| direct_lag(&f.terms, &g.terms, s)).collect()
}

/// `Σ|f_j|²`, which equals `C_{f,f}(0)`.
pub fn energy(f: &ComplexSequence) -> f64 {
    match f.as_ternary() {
        Some(a) => ternary_energy(&a) as f64,
        None => compensated_sum(f.terms.iter().map(|z| z.norm_sqr())),
    }
}

/// `Σ_s |C_{f,g}(s)|²`.
pub fn cross_energy(f: &ComplexSequence, g: &ComplexSequence, method: Method) -> Result<f64> {
    let n = check_lengths(f, g)?;
    Ok(match method {
        Method::Auto => match (f.as_ternary(), g.as_ternary()) {
            (Some(a), Some(b)) => ternary_sum_sq(&a, &b) as f64,
            _ => crosscorrelate_with(f, g, Method::Generic)?.sum_sq(),
        },
        Method::Generic => crosscorrelate_with(f, g, Method::Generic)?.sum_sq(),
        Method::Spectral => {
            let sp = Spectral::new(n);
            sp.power(f).cross_energy(&sp.power(g))
        }
    })
}

fn nonzero_energy(f: &ComplexSequence) -> Result<f64> {
    let e = energy(f);
    if e == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    Ok(e)
}

/// `Σ_{s≠0} |C_{f,f}(s)|² / |C_{f,f}(0)|²`.
pub fn demerit_factor(f: &ComplexSequence) -> Result<f64> {
    demerit_factor_with(f, Method::Auto)
}

pub fn demerit_factor_with(f: &ComplexSequence, method: Method) -> Result<f64> {
    if f.is_empty() {
        return Err(Error::ZeroEnergy);
    }
    let e = nonzero_energy(f)?;
    let off_peak = match method {
        Method::Auto => match f.as_ternary() {
            Some(a) => {
                let e = ternary_energy(&a);
                (ternary_sum_sq(&a, &a) - e * e) as f64
            }
            None => generic_off_peak(f),
        },
        Method::Generic => generic_off_peak(f),
        Method::Spectral => {
            let sp = Spectral::new(f.len());
            sp.power(f).autocorrelation_energy() - e * e
        }
    };
    Ok(off_peak / (e * e))
}

fn generic_off_peak(f: &ComplexSequence) -> f64 {
    let n = f.len() as i64;
    compensated_sum(
        (-(n - 1)..n)
            .filter(|&s| s != 0)
            .map(|s| direct_lag(&f.terms, &f.terms, s).norm_sqr()),
    )
}

/// `Σ_s |C_{f,g}(s)|² / (|C_{f,f}(0)| |C_{g,g}(0)|)`.
pub fn cross_demerit(f: &ComplexSequence, g: &ComplexSequence) -> Result<f64> {
    cross_demerit_with(f, g, Method::Auto)
}

pub fn cross_demerit_with(f: &ComplexSequence, g: &ComplexSequence, method: Method) -> Result<f64> {
    check_lengths(f, g)?;
    let ef = nonzero_energy(f)?;
    let eg = nonzero_energy(g)?;
    Ok(cross_energy(f, g, method)? / (ef * eg))
}

/// The quadruple sum `Σ_{t+u=v+w} f_t g_u conj(f_v g_w)`, in O(ℓ³).
pub fn norm4_quadruple_oracle(f: &ComplexSequence, g: &ComplexSequence) -> Result<f64> {
    let n = check_lengths(f, g)?;
    if n > NORM4_MAX_LEN {
        return Err(Error::TooLong { len: n, max: NORM4_MAX_LEN });
    }
    let (f, g) = (&f.terms, &g.terms);
    let mut acc = CompensatedSum::default();
    #[allow(clippy::needless_range_loop)]
    for t in 0..n {
        for u in 0..n {
            let fg = f[t] * g[u];
            for v in 0..n {
                let w = (t + u) as i64 - v as i64;
                if (0..n as i64).contains(&w) {
                    acc.add((fg * (f[v] * g[w as usize]).conj()).re);
                }
            }
        }
    }
    Ok(acc.value())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DemeritReport {
    pub df_f: f64,
    pub df_g: f64,
    pub cdf: f64,
    pub cmf: f64,
    pub ps_lower: f64,
    pub ps_upper: f64,
}

/// Demerit factors of a pair together with the bounds
/// `1 ∓ sqrt(DF(f) DF(g))` on the crosscorrelation demerit factor.
pub fn demerit_report(f: &ComplexSequence, g: &ComplexSequence) -> Result<DemeritReport> {
    let df_f = demerit_factor(f)?;
    let df_g = demerit_factor(g)?;
    let cdf = cross_demerit(f, g)?;
    let (ps_lower, ps_upper) = ps_bounds(df_f, df_g);
    Ok(DemeritReport { df_f, df_g, cdf, cmf: 1.0 / cdf, ps_lower, ps_upper })
}

pub fn ps_bounds(df_f: f64, df_g: f64) -> (f64, f64) {
    let r = (df_f * df_g).sqrt();
    (1.0 - r, 1.0 + r)
}

/// Checks `lower <= cdf <= upper` up to [`PS_TOLERANCE`].
pub fn check_ps(df_f: f64, df_g: f64, cdf: f64) -> Result<(f64, f64, f64)> {
    let (lower, upper) = ps_bounds(df_f, df_g);
    if cdf < lower - PS_TOLERANCE || cdf > upper + PS_TOLERANCE {
        return Err(Error::BoundViolated { lower, cdf, upper });
    }
    Ok((lower, upper, cdf))
}

/// `(lower, upper, cdf)`; errors if the bound is violated.
pub fn pursley_sarwate_gap(f: &ComplexSequence, g: &ComplexSequence) -> Result<(f64, f64, f64)> {
    let r = demerit_report(f, g)?;
    check_ps(r.df_f, r.df_g, r.cdf)
}

/// `1 + 2/(3ℓ) - 1/ℓ² + 1/(3ℓ³)`, the mean crosscorrelation demerit factor
/// over all shift pairs of two m-sequences related by a nontrivial decimation.
pub fn sarwate_average(len: usize) -> f64 {
    let l = len as f64;
    1.0 + 2.0 / (3.0 * l) - 1.0 / (l * l) + 1.0 / (3.0 * l * l * l)
}

/// Mean of `CDF(T^j f, T^k g)` over all `ℓ²` pairs of cyclic shifts.
pub fn avg_cdf_over_all_shifts(f: &ComplexSequence, g: &ComplexSequence, exec: Exec) -> Result<f64> {
    avg_cdf_over_all_shifts_with(f, g, Method::Auto, exec)
}

pub fn avg_cdf_over_all_shifts_with(
    f: &ComplexSequence,
    g: &ComplexSequence,
    method: Method,
    exec: Exec,
) -> Result<f64> {
    let n = check_lengths(f, g)?;
    let ef = nonzero_energy(f)?;
    let eg = nonzero_energy(g)?;
    let pairs = (n * n) as f64;
    let total = match (method, f.as_ternary(), g.as_ternary()) {
        (Method::Auto, Some(a), Some(b)) => {
            let rot = |v: &[i32], k: usize| {
                let mut r = v.to_vec();
                r.rotate_left(k);
                r
            };
            let gs: Vec<Vec<i32>> = (0..n).map(|k| rot(&b, k)).collect();
            let per_j = par::map_range(exec, n, |j| {
                let fj = rot(&a, j);
                gs.iter().map(|gk| ternary_sum_sq(&fj, gk) as i128).sum::<i128>()
            });
            per_j.into_iter().sum::<i128>() as f64
        }
        (Method::Spectral, _, _) => {
            let sp = Spectral::new(n);
            let fs = sp.shift_powers(f, exec);
            let gs = sp.shift_powers(g, exec);
            let per_j = par::map_slice(exec, &fs, |pf| {
                compensated_sum(gs.iter().map(|pg| pf.cross_energy(pg)))
            });
            compensated_sum(per_j)
        }
        _ => {
            let per_j = par::try_map_range(exec, n, |j| {
                let fj = cyclic_shift(f, j as i64);
                let parts = (0..n)
                    .map(|k| cross_energy(&fj, &cyclic_shift(g, k as i64), Method::Generic))
                    .collect::<Result<Vec<_>>>()?;
                Ok::<_, Error>(compensated_sum(parts))
            })?;
            compensated_sum(per_j)
        }
    };
    Ok(total / (pairs * ef * eg))
}

/// FFT plans for one padded size `N ≥ 2ℓ - 1`.
#[derive(Clone)]
pub struct Spectral {
    len: usize,
    size: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Spectral {{ len: {}, size: {} }}", self.len, self.size)
    }
}

/// `|F̂_k|²` of a zero-padded sequence, plus its energy.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSpectrum {
    power: Vec<f64>,
    energy: f64,
}

impl PowerSpectrum {
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// `Σ_s |C_{f,g}(s)|² = (1/N) Σ_k |F̂_k|² |Ĝ_k|²`.
    pub fn cross_energy(&self, other: &PowerSpectrum) -> f64 {
        let n = self.power.len() as f64;
        compensated_sum(self.power.iter().zip(&other.power).map(|(a, b)| a * b)) / n
    }

    pub fn autocorrelation_energy(&self) -> f64 {
        self.cross_energy(self)
    }

    pub fn cross_demerit(&self, other: &PowerSpectrum) -> f64 {
        self.cross_energy(other) / (self.energy * other.energy)
    }

    pub fn demerit_factor(&self) -> f64 {
        let e2 = self.energy * self.energy;
        (self.autocorrelation_energy() - e2) / e2
    }
}

impl Spectral {
    pub fn new(len: usize) -> Self {
        let size = (2 * len.max(1) - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        Spectral {
            len,
            size,
            forward: planner.plan_fft_forward(size),
            inverse: planner.plan_fft_inverse(size),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn transform(&self, f: &ComplexSequence) -> Vec<Complex64> {
        assert_eq!(f.len(), self.len, "sequence length does not match the plan");
        let mut buf = vec![Complex64::new(0.0, 0.0); self.size];
        buf[..f.len()].copy_from_slice(&f.terms);
        self.forward.process(&mut buf);
        buf
    }

    pub fn power(&self, f: &ComplexSequence) -> PowerSpectrum {
        let power = self.transform(f).iter().map(|z| z.norm_sqr()).collect();
        PowerSpectrum { power, energy: energy(f) }
    }

    /// Power spectra of all `ℓ` left cyclic shifts of `f`.
    pub fn shift_powers(&self, f: &ComplexSequence, exec: Exec) -> Vec<PowerSpectrum> {
        par::map_range(exec, f.len(), |k| self.power(&cyclic_shift(f, k as i64)))
    }

    /// The profile via the inverse transform of `F̂ · conj(Ĝ)`.
    pub fn profile(&self, f: &ComplexSequence, g: &ComplexSequence) -> CorrelationProfile {
        let ff = self.transform(f);
        let gg = self.transform(g);
        let mut buf: Vec<Complex64> = ff.iter().zip(&gg).map(|(a, b)| a * b.conj()).collect();
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.size as f64;
        let n = self.len as i64;
        let values = (-(n - 1)..n)
            .map(|s| buf[(-s).rem_euclid(self.size as i64) as usize] * scale)
            .collect();
        CorrelationProfile { values, len_f: self.len, len_g: self.len }
    }
}
