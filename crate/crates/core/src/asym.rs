//! Limiting demerit factors of character sequence pairs.
//!
//! Every limit is built from the kernel
//! `Ω(x, y) = Σ_n max(0, 1 - |nx - y|)²`, evaluated at `x = 1/Λ` where `Λ` is
//! the fractional length of the sequences. This module also holds the
//! counting and character-sum identities those limits rest on, in a form the
//! tests can check against brute force.

use std::sync::Arc;

use num_complex::Complex64;

use crate::chars::CharGroup;
use crate::error::{Error, Result};
use crate::gf::DecimationKind;
use crate::nt;

/// `Σ_n max(0, 1 - |nx - y|)²`.
pub fn omega(x: f64, y: f64) -> Result<f64> {
    if x == 0.0 || !x.is_finite() || !y.is_finite() {
        return Err(Error::ZeroX);
    }
    let ax = x.abs();
    let lo = ((y - 1.0) / ax).floor() as i64 - 1;
    let hi = ((y + 1.0) / ax).ceil() as i64 + 1;
    Ok((lo..=hi)
        .map(|n| {
            let t = 1.0 - (n as f64 * ax - y).abs();
            if t > 0.0 {
                t * t
            } else {
                0.0
            }
        })
        .sum())
}

fn positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive(x))
    }
}

/// `Ω(1/x, 0)` in closed form.
pub fn phi_closed(x: f64) -> Result<f64> {
    positive(x)?;
    let m = x.floor();
    Ok(2.0 * m + 1.0 - 2.0 * m * (m + 1.0) / x + m * (m + 1.0) * (2.0 * m + 1.0) / (3.0 * x * x))
}

/// `Ω(1/x, 1/(2x))` in closed form.
pub fn psi_closed(x: f64) -> Result<f64> {
    positive(x)?;
    let m = (x + 0.5).floor();
    Ok(2.0 * m - 2.0 * m * m / x + m * (4.0 * m * m - 1.0) / (6.0 * x * x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Pairs of m-sequences (additive characters).
    Additive,
    /// Pairs of multiplicative character sequences over a prime field.
    Multiplicative,
}

/// How the two sequences of a pair are related. `delta` and `sigma` are the
/// fractional difference and sum of the two shifts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Subcase {
    /// Same character, or decimation by a power of p.
    SameOrTrivial { delta: f64 },
    /// Conjugate characters, or decimation by minus a power of p.
    ConjugateOrReversing { sigma: f64 },
    Unrelated,
    /// A quadratic character paired with itself.
    Quadratic { delta: f64, sigma: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticCase {
    pub family: Family,
    pub subcase: Subcase,
    pub lambda: f64,
    pub p: u64,
}

impl AsymptoticCase {
    pub fn new(family: Family, subcase: Subcase, lambda: f64, p: u64) -> Self {
        AsymptoticCase { family, subcase, lambda, p }
    }
}

fn check_lambda(case: &AsymptoticCase) -> Result<f64> {
    let l = case.lambda;
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::BadCase(format!("fractional length must be positive, got {l}")));
    }
    if case.p < 2 {
        return Err(Error::BadCase(format!("characteristic {} is not prime", case.p)));
    }
    Ok(l)
}

/// Limit of the crosscorrelation demerit factor for m-sequence pairs.
pub fn acdf_additive(case: &AsymptoticCase) -> Result<f64> {
    if case.family != Family::Additive {
        return Err(Error::BadCase("expected the additive family".into()));
    }
    let l = check_lambda(case)?;
    let x = 1.0 / l;
    match case.subcase {
        Subcase::SameOrTrivial { delta } => {
            Ok(-2.0 / 3.0 * l + omega(x, 0.0)? + omega(x, delta / l)?)
        }
        Subcase::ConjugateOrReversing { sigma } => {
            let sigma = if case.p == 2 { sigma } else { sigma + 0.5 };
            Ok(-2.0 / 3.0 * l + omega(x, 0.0)? + omega(x, 1.0 + sigma / l)?)
        }
        Subcase::Unrelated => omega(x, 0.0),
        Subcase::Quadratic { .. } => {
            Err(Error::BadCase("the quadratic case needs the multiplicative family".into()))
        }
    }
}

/// Limit of the crosscorrelation demerit factor for multiplicative character
/// sequence pairs.
pub fn acdf_multiplicative(case: &AsymptoticCase) -> Result<f64> {
    if case.family != Family::Multiplicative {
        return Err(Error::BadCase("expected the multiplicative family".into()));
    }
    let l = check_lambda(case)?;
    let x = 1.0 / l;
    match case.subcase {
        Subcase::SameOrTrivial { delta } => {
            Ok(-2.0 / 3.0 * l + omega(x, 0.0)? + omega(x, delta / l)?)
        }
        Subcase::ConjugateOrReversing { sigma } => {
            Ok(-2.0 / 3.0 * l + omega(x, 0.0)? + omega(x, 1.0 + sigma / l)?)
        }
        Subcase::Unrelated => omega(x, 0.0),
        Subcase::Quadratic { delta, sigma } => Ok(-4.0 / 3.0 * l
            + omega(x, 0.0)?
            + omega(x, delta / l)?
            + omega(x, 1.0 + sigma / l)?),
    }
}

pub fn acdf(case: &AsymptoticCase) -> Result<f64> {
    match case.family {
        Family::Additive => acdf_additive(case),
        Family::Multiplicative => acdf_multiplicative(case),
    }
}

/// Side conditions on the quadruples `(t, u, v, w) ∈ [0, ℓ)⁴` with
/// `t + u = v + w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadKind {
    /// No side condition.
    A,
    /// `v - t ≡ a (mod m)`.
    B,
    /// `w - t ≡ a (mod m)`.
    C,
    /// `t + u ≡ a (mod m)`.
    D,
}

/// `Σ (ℓ - |c|)²` over `|c| < ℓ` with `c ≡ r (mod m)`.
fn tent_sum(len: u64, m: u64, r: i64) -> u64 {
    let l = len as i64;
    let m = m as i64;
    let mut c = -(l - 1) + (r - (-(l - 1))).rem_euclid(m);
    let mut total = 0u64;
    while c < l {
        let w = (l - c.abs()) as u64;
        total += w * w;
        c += m;
    }
    total
}

/// Closed-form count of quadruples of the given kind; `m` and `a` are
/// ignored for [`QuadKind::A`].
pub fn count_quadruples(kind: QuadKind, len: u64, m: u64, a: i64) -> Result<u64> {
    if len == 0 || m == 0 {
        return Err(Error::BadArgs(format!("need len >= 1 and m >= 1, got {len}, {m}")));
    }
    Ok(match kind {
        QuadKind::A => (2 * len * len * len + len) / 3,
        QuadKind::B | QuadKind::C => tent_sum(len, m, a),
        QuadKind::D => tent_sum(len, m, a + 1 - len as i64),
    })
}

/// Counts the same quadruples by enumeration, in O(ℓ³).
pub fn count_quadruples_brute(kind: QuadKind, len: u64, m: u64, a: i64) -> Result<u64> {
    if len == 0 || m == 0 {
        return Err(Error::BadArgs(format!("need len >= 1 and m >= 1, got {len}, {m}")));
    }
    let l = len as i64;
    let m = m as i64;
    let hit = |x: i64| (x - a).rem_euclid(m) == 0;
    let mut count = 0;
    for t in 0..l {
        for u in 0..l {
            for v in 0..l {
                let w = t + u - v;
                if !(0..l).contains(&w) {
                    continue;
                }
                let ok = match kind {
                    QuadKind::A => true,
                    QuadKind::B => hit(v - t),
                    QuadKind::C => hit(w - t),
                    QuadKind::D => hit(t + u),
                };
                count += ok as u64;
            }
        }
    }
    Ok(count)
}

/// Largest field for which [`h_brute`] runs.
pub const H_BRUTE_MAX_Q: u64 = 64;

/// The representative of `d mod (q-1)` of least absolute value.
pub fn least_representative(d: i64, m: u64) -> i64 {
    let r = nt::reduce(d, m) as i64;
    if 2 * r > m as i64 {
        r - m as i64
    } else {
        r
    }
}

/// Bound on `|H - main term|` for the four-Gauss-sum average `H`.
pub fn edward_bound(group: &Arc<CharGroup>, d: i64) -> Result<f64> {
    let field = group.field();
    let q = field.q() as f64;
    let base = q.powf(1.5) / ((q - 1.0) * (q - 1.0));
    Ok(match field.classify_decimation(d)?.kind {
        DecimationKind::Trivial | DecimationKind::Reversing => base,
        DecimationKind::Other => least_representative(d, field.q1()).abs() as f64 * base,
    })
}

/// The main term of
/// `H = (q-1)^-3 Σ_ξ G(κξ^d) G(λξ) conj(G(μξ^d) G(νξ))`,
/// with characters given by their indices.
pub fn h_main_term(group: &Arc<CharGroup>, kappa: u64, lambda: u64, mu: u64, nu: u64, d: i64) -> Result<Complex64> {
    let field = group.field();
    let m = field.q1();
    let class = field.classify_decimation(d)?;
    let dm = nt::reduce(d, m);
    let (k, l, mu, n) = (kappa % m, lambda % m, mu % m, nu % m);
    let pow_d = |j: u64| nt::mod_mul(j, dm, m);
    let one = Complex64::new(1.0, 0.0);
    if k == mu && l == n {
        return Ok(one);
    }
    Ok(match class.kind {
        DecimationKind::Trivial if k == pow_d(n) && mu == pow_d(l) => one,
        DecimationKind::Reversing if k == pow_d(l) && mu == pow_d(n) => {
            // κ conj(μ) evaluated at -1 = g^((q-1)/2)
            group.character((k + m - mu) as i64).eval(&field.from_int(-1))
        }
        _ => Complex64::new(0.0, 0.0),
    })
}

/// `H` by direct summation over all characters ξ.
pub fn h_brute(group: &Arc<CharGroup>, kappa: u64, lambda: u64, mu: u64, nu: u64, d: i64) -> Result<Complex64> {
    let field = group.field();
    if field.q() > H_BRUTE_MAX_Q {
        return Err(Error::FieldTooLarge(format!(
            "q = {} exceeds {H_BRUTE_MAX_Q}",
            field.q()
        )));
    }
    let m = field.q1();
    field.classify_decimation(d)?;
    let dm = nt::reduce(d, m);
    let g = |j: u64| group.character(j as i64).gauss();
    let sum: Complex64 = (0..m)
        .map(|x| {
            let dx = nt::mod_mul(dm, x, m);
            g((kappa + dx) % m) * g((lambda + x) % m) * (g((mu + dx) % m) * g((nu + x) % m)).conj()
        })
        .sum();
    Ok(sum / (m as f64).powi(3))
}
