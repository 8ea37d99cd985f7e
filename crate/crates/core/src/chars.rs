//! Additive and multiplicative characters and their Gauss sums.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};
use crate::nt;

/// `exp(2πi k/m)`. Quarter turns are returned exactly, so binary and
/// quaternary character values carry no rounding error.
pub fn root_of_unity(k: u64, m: u64) -> Complex64 {
    let k = k % m;
    if (4 * k).is_multiple_of(m) {
        return match 4 * k / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * k as f64 / m as f64)
}

/// The additive character `x ↦ ε(ax)` with `ε(x) = exp(2πi Tr(x)/p)`.
#[derive(Clone, Debug)]
pub struct AdditiveCharSpec {
    pub field: Arc<FiniteField>,
    pub a: FieldElement,
}

impl AdditiveCharSpec {
    /// The canonical character ε (a = 1).
    pub fn canonical(field: Arc<FiniteField>) -> Self {
        let a = field.one();
        AdditiveCharSpec { field, a }
    }

    pub fn eval(&self, x: &FieldElement) -> Complex64 {
        let ax = self.field.mul(&self.a, x);
        root_of_unity(self.field.trace(&ax), self.field.p())
    }
}

pub fn additive_char(spec: &AdditiveCharSpec, x: &FieldElement) -> Complex64 {
    spec.eval(x)
}

/// The multiplicative characters of a field, indexed against its generator,
/// with a lazily filled table of Gauss sums `G(χ_j) = Σ ε(x)χ_j(x)`.
pub struct CharGroup {
    field: Arc<FiniteField>,
    gauss: Vec<OnceLock<Complex64>>,
}

impl fmt::Debug for CharGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharGroup").field("field", &self.field.to_string()).finish()
    }
}

impl CharGroup {
    /// Needs discrete-log tables, so the field must have at most 2^20 elements.
    pub fn new(field: Arc<FiniteField>) -> Result<Arc<Self>> {
        if !field.has_dlog() {
            return Err(Error::FieldTooLarge(format!(
                "characters need discrete logs; q = {}",
                field.q()
            )));
        }
        let gauss = (0..field.q1()).map(|_| OnceLock::new()).collect();
        Ok(Arc::new(CharGroup { field, gauss }))
    }

    /// Characters of F_p, indexed against the smallest primitive root.
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        Self::new(Arc::new(FiniteField::prime(p)?))
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// Number of characters, `q - 1`.
    pub fn size(&self) -> u64 {
        self.field.q1()
    }

    pub fn character(self: &Arc<Self>, j: i64) -> MultCharSpec {
        MultCharSpec { group: Arc::clone(self), j: nt::reduce(j, self.size()) }
    }

    pub fn characters(self: &Arc<Self>) -> impl Iterator<Item = MultCharSpec> + '_ {
        (0..self.size()).map(move |j| self.character(j as i64))
    }
}

/// The character `χ_j(g^k) = exp(2πi jk/(q-1))`, extended by `χ_j(0) = 0`.
#[derive(Clone)]
pub struct MultCharSpec {
    group: Arc<CharGroup>,
    j: u64,
}

impl fmt::Debug for MultCharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ_{} over GF({})", self.j, self.q())
    }
}

impl PartialEq for MultCharSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.j == other.j
    }
}

impl MultCharSpec {
    /// Character `j` of the prime field F_p.
    pub fn mult(p: u64, j: i64) -> Result<Self> {
        Ok(CharGroup::prime(p)?.character(j))
    }

    /// The Legendre symbol mod an odd prime.
    pub fn quadratic(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::BadArgs("F_2 has no quadratic character".into()));
        }
        Self::mult(p, ((p - 1) / 2) as i64)
    }

    pub fn group(&self) -> &Arc<CharGroup> {
        &self.group
    }

    pub fn field(&self) -> &FiniteField {
        &self.group.field
    }

    pub fn index(&self) -> u64 {
        self.j
    }

    pub fn p(&self) -> u64 {
        self.group.field.p()
    }

    pub fn q(&self) -> u64 {
        self.group.field.q()
    }

    pub fn order(&self) -> u64 {
        let m = self.group.size();
        m / nt::gcd(self.j, m)
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    pub fn conj(&self) -> Self {
        self.group.character(-(self.j as i64))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        self.group.character((self.j + other.j) as i64)
    }

    /// `χ^e`; negative powers give powers of the conjugate.
    pub fn pow(&self, e: i64) -> Self {
        let m = self.group.size();
        let e = nt::reduce(e, m);
        self.group.character(nt::mod_mul(self.j, e, m) as i64)
    }

    /// `χ(g^k)`.
    pub fn at_power(&self, k: u64) -> Complex64 {
        let m = self.group.size();
        root_of_unity(nt::mod_mul(self.j, k % m, m), m)
    }

    pub fn eval(&self, x: &FieldElement) -> Complex64 {
        match self.group.field.log(x) {
            Some(k) => self.at_power(k),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// `χ(x mod p)`, for integers read in the prime subfield.
    pub fn eval_int(&self, x: i64) -> Complex64 {
        self.eval(&self.group.field.from_int(x))
    }

    /// `G_a(χ) = Σ_{x ≠ 0} ε(ax) χ(x)` by direct summation.
    pub fn gauss_sum(&self, a: &FieldElement) -> Complex64 {
        let field = &self.group.field;
        let p = field.p();
        let m = field.q1();
        let Some(e) = field.log(a) else {
            return (0..m).map(|k| self.at_power(k)).sum();
        };
        (0..m)
            .map(|k| {
                let tr = field.trace_of_power(e + k).expect("field has dlog tables");
                root_of_unity(tr, p) * self.at_power(k)
            })
            .sum()
    }

    /// `G(χ) = G_1(χ)`, computed once per character and shared.
    pub fn gauss(&self) -> Complex64 {
        *self.group.gauss[self.j as usize].get_or_init(|| self.gauss_sum(&self.group.field.one()))
    }
}

pub fn mult_char_eval(spec: &MultCharSpec, x: i64) -> Complex64 {
    spec.eval_int(x)
}

pub fn gauss_sum(chi: &MultCharSpec, a: &FieldElement) -> Complex64 {
    chi.gauss_sum(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn exact_quarter_turns() {
        assert_eq!(root_of_unity(1, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(3, 12), Complex64::new(0.0, 1.0));
        assert_eq!(root_of_unity(510, 510), Complex64::new(1.0, 0.0));
        assert!((root_of_unity(1, 3) - Complex64::from_polar(1.0, TAU / 3.0)).norm() < TOL);
    }

    #[test]
    fn additive_examples() {
        let f4 = Arc::new(FiniteField::new(2, &[1, 1, 1]).unwrap());
        let eps = AdditiveCharSpec::canonical(Arc::clone(&f4));
        let alpha = f4.element(&[0, 1]).unwrap();
        assert_eq!(eps.eval(&alpha), Complex64::new(-1.0, 0.0));
        assert_eq!(eps.eval(&f4.zero()), Complex64::new(1.0, 0.0));

        let f3 = Arc::new(FiniteField::prime(3).unwrap());
        let eps3 = AdditiveCharSpec::canonical(Arc::clone(&f3));
        let want = Complex64::from_polar(1.0, TAU / 3.0);
        assert!((additive_char(&eps3, &f3.one()) - want).norm() < TOL);
    }

    #[test]
    fn quadratic_character_mod_7() {
        let chi = MultCharSpec::quadratic(7).unwrap();
        assert_eq!(chi.order(), 2);
        assert_eq!(mult_char_eval(&chi, 2), Complex64::new(1.0, 0.0));
        assert_eq!(mult_char_eval(&chi, 3), Complex64::new(-1.0, 0.0));
        assert_eq!(mult_char_eval(&chi, 0), Complex64::new(0.0, 0.0));
        assert_eq!(mult_char_eval(&chi, 1), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn gauss_sum_examples() {
        let eta = MultCharSpec::quadratic(5).unwrap();
        assert!((eta.gauss().norm() - 5f64.sqrt()).abs() < TOL);

        let trivial = MultCharSpec::mult(7, 0).unwrap();
        let one = trivial.field().one();
        assert!((gauss_sum(&trivial, &one) - Complex64::new(-1.0, 0.0)).norm() < TOL);

        let eta7 = MultCharSpec::quadratic(7).unwrap();
        let zero = eta7.field().zero();
        assert!(gauss_sum(&eta7, &zero).norm() < TOL);
    }

    #[test]
    fn character_algebra() {
        let group = CharGroup::prime(13).unwrap();
        let a = group.character(5);
        let b = group.character(9);
        assert_eq!(a.mul(&b).index(), 2);
        assert_eq!(a.conj().index(), 7);
        assert_eq!(a.pow(-1), a.conj());
        assert_eq!(group.character(4).order(), 3);
        for x in 1..13 {
            for y in 1..13 {
                let lhs = a.eval_int(x * y);
                let rhs = a.eval_int(x) * a.eval_int(y);
                assert!((lhs - rhs).norm() < TOL);
            }
        }
    }
}
