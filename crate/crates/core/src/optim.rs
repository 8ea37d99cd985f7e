//! Minimizing the limiting demerit factors over length and shifts.

use crate::asym::{acdf, omega, phi_closed, psi_closed, AsymptoticCase, Family, Subcase};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// A real cubic `a3 x³ + a2 x² + a1 x + a0` with a bracket isolating one root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicSpec {
    pub coeffs: [f64; 4],
    pub lo: f64,
    pub hi: f64,
}

impl CubicSpec {
    pub const fn new(a3: f64, a2: f64, a1: f64, a0: f64, lo: f64, hi: f64) -> Self {
        CubicSpec { coeffs: [a3, a2, a1, a0], lo, hi }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let [a3, a2, a1, a0] = self.coeffs;
        ((a3 * x + a2) * x + a1) * x + a0
    }

    fn slope(&self, x: f64) -> f64 {
        let [a3, a2, a1, _] = self.coeffs;
        (3.0 * a3 * x + 2.0 * a2) * x + a1
    }
}

/// Middle root of `2x³ - 6x + 3`: the fractional length at which truncated
/// sequences do best.
pub const TRUNCATED_LENGTH: CubicSpec = CubicSpec::new(2.0, 0.0, -6.0, 3.0, 0.5, 1.0);
/// Middle root of `x³ - 12x + 12`; twice the truncated optimum.
pub const APPENDED_LENGTH: CubicSpec = CubicSpec::new(1.0, 0.0, -12.0, 12.0, 1.0, 2.0);
/// Root of `6x³ - 42x² + 54x - 19` near 0.65: least limiting demerit factor
/// for same-character and trivially decimated pairs.
pub const PAIR_MIN_DEMERIT: CubicSpec = CubicSpec::new(6.0, -42.0, 54.0, -19.0, 0.5, 0.7);
/// Largest root of `19x³ - 54x² + 42x - 6`, the reciprocal of [`PAIR_MIN_DEMERIT`].
pub const PAIR_MAX_MERIT: CubicSpec = CubicSpec::new(19.0, -54.0, 42.0, -6.0, 1.5, 2.0);
/// Root of `3x³ - 33x² + 33x - 7` near 0.3: least limiting demerit factor for
/// quadratic character pairs.
pub const QUADRATIC_MIN_DEMERIT: CubicSpec = CubicSpec::new(3.0, -33.0, 33.0, -7.0, 0.0, 0.5);
/// Largest root of `7x³ - 33x² + 33x - 3`, the reciprocal of [`QUADRATIC_MIN_DEMERIT`].
pub const QUADRATIC_MAX_MERIT: CubicSpec = CubicSpec::new(7.0, -33.0, 33.0, -3.0, 3.0, 4.0);

/// The bracketed root, by safeguarded Newton iteration to 1e-13.
pub fn cubic_root(spec: &CubicSpec) -> Result<f64> {
    let (mut lo, mut hi) = (spec.lo.min(spec.hi), spec.lo.max(spec.hi));
    let (flo, fhi) = (spec.eval(lo), spec.eval(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::NoSignChange(spec.lo, spec.hi));
    }
    let rising = fhi > 0.0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = spec.eval(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == rising {
            hi = x;
        } else {
            lo = x;
        }
        if hi - lo < 1e-13 {
            break;
        }
        let d = spec.slope(x);
        let newton = x - fx / d;
        x = if d != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (x - lo).min(hi - x) < 1e-15 {
            x = 0.5 * (lo + hi);
        }
    }
    Ok(x)
}

/// Where `y ↦ Ω(x, y)` attains its minimum `Ω(x, x/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OptimalShiftSet {
    /// The points `(n + 1/2)|x|`, `n ∈ ℤ`.
    Points { period: f64, offset: f64, value: f64 },
    /// The intervals `[n|x| + 1, (n+1)|x| - 1]`, `n ∈ ℤ`.
    Intervals { period: f64, lo: f64, hi: f64, value: f64 },
}

impl OptimalShiftSet {
    pub fn value(&self) -> f64 {
        match *self {
            OptimalShiftSet::Points { value, .. } | OptimalShiftSet::Intervals { value, .. } => value,
        }
    }

    /// Whether `y` belongs to the set, up to `tol`.
    pub fn contains(&self, y: f64, tol: f64) -> bool {
        match *self {
            OptimalShiftSet::Points { period, offset, .. } => {
                let r = (y - offset).rem_euclid(period);
                r.min(period - r) <= tol
            }
            OptimalShiftSet::Intervals { period, lo, hi, .. } => {
                let r = y.rem_euclid(period);
                r >= lo - tol && r <= hi + tol
            }
        }
    }
}

pub fn optimal_shift_set(x: f64) -> Result<OptimalShiftSet> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::ZeroX);
    }
    let ax = x.abs();
    let value = omega(ax, ax / 2.0)?;
    Ok(if ax < 2.0 {
        OptimalShiftSet::Points { period: ax, offset: ax / 2.0, value }
    } else {
        OptimalShiftSet::Intervals { period: ax, lo: 1.0, hi: ax - 1.0, value }
    })
}

/// Which family of pairs to optimize over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseKind {
    SameOrTrivial,
    ConjugateOrReversing,
    Unrelated,
    Quadratic,
}

impl std::str::FromStr for CaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "same" | "trivial" | "same-or-trivial" => Ok(CaseKind::SameOrTrivial),
            "conjugate" | "reversing" | "conjugate-or-reversing" => Ok(CaseKind::ConjugateOrReversing),
            "unrelated" => Ok(CaseKind::Unrelated),
            "quadratic" => Ok(CaseKind::Quadratic),
            other => Err(Error::BadCase(format!("unknown case `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimumReport {
    pub case: AsymptoticCase,
    pub lambda: f64,
    pub delta: Option<f64>,
    pub sigma: Option<f64>,
    pub min_value: f64,
    /// The closed-form optimum this minimum should match.
    pub matched_root: f64,
    pub matched_cubic: Option<CubicSpec>,
    pub residual: f64,
    /// For the unrelated case, the whole range of `Λ` attaining the minimum.
    pub attained_on: Option<(f64, f64)>,
}

/// The limiting demerit factor with the shifts already set optimally, as a
/// function of the fractional length alone.
pub fn reduced_objective(kind: CaseKind, lambda: f64) -> Result<f64> {
    Ok(match kind {
        CaseKind::SameOrTrivial | CaseKind::ConjugateOrReversing => {
            -2.0 / 3.0 * lambda + phi_closed(lambda)? + psi_closed(lambda)?
        }
        CaseKind::Unrelated => phi_closed(lambda)?,
        CaseKind::Quadratic => -4.0 / 3.0 * lambda + phi_closed(lambda)? + 2.0 * psi_closed(lambda)?,
    })
}

/// Derivative of [`reduced_objective`] away from the kinks at multiples of 1/2.
pub fn reduced_slope(kind: CaseKind, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::NonPositive(lambda));
    }
    let x = lambda;
    let m = x.floor();
    let phi = 2.0 * m * (m + 1.0) / (x * x) - 2.0 * m * (m + 1.0) * (2.0 * m + 1.0) / (3.0 * x * x * x);
    let k = (x + 0.5).floor();
    let psi = 2.0 * k * k / (x * x) - k * (4.0 * k * k - 1.0) / (3.0 * x * x * x);
    Ok(match kind {
        CaseKind::SameOrTrivial | CaseKind::ConjugateOrReversing => -2.0 / 3.0 + phi + psi,
        CaseKind::Unrelated => phi,
        CaseKind::Quadratic => -4.0 / 3.0 + phi + 2.0 * psi,
    })
}

pub const GRID_STEP: f64 = 1e-3;
pub const LAMBDA_MAX: f64 = 4.0;

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Pins a stationary point inside `[a, b]` by bisecting on the sign of the
/// slope, when the slope changes sign there.
fn polish(kind: CaseKind, a: f64, b: f64) -> Option<f64> {
    let (mut lo, mut hi) = (a, b);
    let (slo, shi) = (reduced_slope(kind, lo).ok()?, reduced_slope(kind, hi).ok()?);
    if !(slo < 0.0 && shi > 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if reduced_slope(kind, mid).ok()? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Global minimum over `Λ ∈ (0, 4]` and all shifts, for one family of pairs.
///
/// The shift variables are first set to their optimum (the midpoint
/// `Ω(x, x/2)` of every shift-dependent kernel), leaving a function of `Λ`
/// that is scanned on a grid, refined by golden section and, where the slope
/// changes sign, pinned by bisection on the slope.
pub fn minimize_acdf(family: Family, kind: CaseKind, p: u64, exec: Exec) -> Result<OptimumReport> {
    if kind == CaseKind::Quadratic && family != Family::Multiplicative {
        return Err(Error::BadCase("the quadratic case needs the multiplicative family".into()));
    }
    let n = (LAMBDA_MAX / GRID_STEP).round() as usize;
    let values = par::try_map_range(exec, n, |i| reduced_objective(kind, (i + 1) as f64 * GRID_STEP))?;
    let best = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < values[best] { i } else { best });
    let centre = (best + 1) as f64 * GRID_STEP;
    let a = (centre - GRID_STEP).max(GRID_STEP * 1e-3);
    let b = (centre + GRID_STEP).min(LAMBDA_MAX);
    let f = |l: f64| reduced_objective(kind, l).unwrap_or(f64::INFINITY);
    let mut lambda = golden_section(f, a, b, 1e-10);
    if let Some(l) = polish(kind, lambda - 1e-8, lambda + 1e-8) {
        lambda = l;
    }
    if kind == CaseKind::Unrelated {
        // flat on (0, 1]; report the longest length attaining the minimum
        lambda = 1.0;
    }
    let min_value = f(lambda);

    let (matched_cubic, attained_on) = match kind {
        CaseKind::Unrelated => (None, Some((0.0, 1.0))),
        CaseKind::Quadratic => (Some(QUADRATIC_MIN_DEMERIT), None),
        _ => (Some(PAIR_MIN_DEMERIT), None),
    };
    let matched_root = match matched_cubic {
        Some(c) => cubic_root(&c)?,
        None => 1.0,
    };

    let half = 0.5;
    let reversing_sigma = (half - lambda).rem_euclid(1.0);
    let (subcase, delta, sigma) = match kind {
        CaseKind::SameOrTrivial => (Subcase::SameOrTrivial { delta: half }, Some(half), None),
        CaseKind::ConjugateOrReversing => {
            // for odd p the additive formula shifts Σ by 1/2 internally
            let s = if family == Family::Additive && p != 2 {
                (reversing_sigma - 0.5).rem_euclid(1.0)
            } else {
                reversing_sigma
            };
            (Subcase::ConjugateOrReversing { sigma: s }, None, Some(s))
        }
        CaseKind::Unrelated => (Subcase::Unrelated, None, None),
        CaseKind::Quadratic => (
            Subcase::Quadratic { delta: half, sigma: reversing_sigma },
            Some(half),
            Some(reversing_sigma),
        ),
    };
    let case = AsymptoticCase::new(family, subcase, lambda, p);
    // the reduction must agree with the full formula at the reported shifts
    let full = acdf(&case)?;
    debug_assert!((full - min_value).abs() < 1e-9, "{full} vs {min_value}");

    Ok(OptimumReport {
        case,
        lambda,
        delta,
        sigma,
        min_value: full,
        matched_root,
        matched_cubic,
        residual: (full - matched_root).abs(),
        attained_on,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_roots() {
        assert!((cubic_root(&TRUNCATED_LENGTH).unwrap() - 0.557874).abs() < 1e-6);
        assert!((cubic_root(&APPENDED_LENGTH).unwrap() - 1.115749).abs() < 1e-6);
        assert!((cubic_root(&QUADRATIC_MAX_MERIT).unwrap() - 3.342065).abs() < 1e-6);
        assert!((cubic_root(&PAIR_MIN_DEMERIT).unwrap() - 0.649608).abs() < 1e-6);
        assert!((cubic_root(&PAIR_MAX_MERIT).unwrap() - 1.539389).abs() < 1e-6);
        assert!((cubic_root(&QUADRATIC_MIN_DEMERIT).unwrap() - 0.299216).abs() < 1e-6);
    }

    #[test]
    fn no_sign_change() {
        let c = CubicSpec::new(1.0, 0.0, 0.0, 1.0, 0.0, 1.0);
        assert_eq!(cubic_root(&c), Err(Error::NoSignChange(0.0, 1.0)));
    }

    #[test]
    fn shift_sets() {
        let s = optimal_shift_set(1.0).unwrap();
        assert!((s.value() - 0.5).abs() < 1e-12);
        assert!(s.contains(2.5, 1e-12) && !s.contains(2.0, 1e-6));
        let s = optimal_shift_set(3.0).unwrap();
        assert_eq!(s.value(), 0.0);
        assert!(s.contains(1.0, 0.0) && s.contains(5.0, 0.0) && !s.contains(0.5, 1e-6));
        assert_eq!(optimal_shift_set(2.0).unwrap().value(), 0.0);
        assert_eq!(optimal_shift_set(0.0), Err(Error::ZeroX));
    }

    #[test]
    fn case_names() {
        assert_eq!("reversing".parse::<CaseKind>().unwrap(), CaseKind::ConjugateOrReversing);
        assert!("bogus".parse::<CaseKind>().is_err());
    }
}
