//! Character sequences: m-sequences with arbitrary shift and length,
//! multiplicative character sequences, and the index transforms between them.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chars::{root_of_unity, MultCharSpec};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};
use crate::nt;

/// Where a sequence came from, kept for CSV metadata and debugging.
#[derive(Clone, Debug, PartialEq)]
pub enum SeqMeta {
    /// Terms `ε(g^(exponent·(shift+t)))` for the field generator `g`.
    Additive { exponent: u64, shift: i64, len: usize },
    /// Terms `χ_j(shift+t)` over F_p.
    Multiplicative { p: u64, j: u64, shift: i64, len: usize },
    Random { seed: u64, len: usize },
    Derived(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSequence {
    pub terms: Vec<Complex64>,
    pub meta: Option<SeqMeta>,
}

impl ComplexSequence {
    pub fn new(terms: Vec<Complex64>) -> Self {
        ComplexSequence { terms, meta: None }
    }

    /// A real sequence, e.g. `[1., -1., -1.]`.
    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The terms as integers when every term is exactly -1, 0 or +1.
    pub fn as_ternary(&self) -> Option<Vec<i32>> {
        self.terms
            .iter()
            .map(|z| {
                if z.im != 0.0 {
                    return None;
                }
                match z.re {
                    1.0 => Some(1),
                    -1.0 => Some(-1),
                    0.0 => Some(0),
                    _ => None,
                }
            })
            .collect()
    }

    fn derived(terms: Vec<Complex64>, what: &str) -> Self {
        ComplexSequence { terms, meta: Some(SeqMeta::Derived(what.to_string())) }
    }
}

/// `(ε(α^shift), ..., ε(α^(shift+len-1)))` for primitive `α`. Lengths other
/// than `q - 1` truncate or wrap around periodically.
pub fn additive_sequence(
    field: &FiniteField,
    alpha: &FieldElement,
    shift: i64,
    len: usize,
) -> Result<ComplexSequence> {
    if alpha.is_zero() || !field.is_primitive(alpha)? {
        return Err(Error::NotPrimitive);
    }
    if let Some(e) = field.log(alpha) {
        return additive_sequence_exp(field, e as i64, shift, len);
    }
    let p = field.p();
    let mut x = field.pow_signed(alpha, shift)?;
    let mut terms = Vec::with_capacity(len);
    for _ in 0..len {
        terms.push(root_of_unity(field.trace(&x), p));
        x = field.mul(&x, alpha);
    }
    Ok(ComplexSequence { terms, meta: Some(SeqMeta::Derived(format!("additive, shift {shift}"))) })
}

/// [`additive_sequence`] for `α = g^exponent`, `g` the field generator.
/// Requires discrete-log tables.
pub fn additive_sequence_exp(
    field: &FiniteField,
    exponent: i64,
    shift: i64,
    len: usize,
) -> Result<ComplexSequence> {
    let m = field.q1();
    let e = nt::reduce(exponent, m);
    if nt::gcd(e, m) != 1 {
        return Err(Error::NotPrimitive);
    }
    if !field.has_dlog() {
        return additive_sequence(field, &field.exp(exponent), shift, len);
    }
    let p = field.p();
    let start = nt::mod_mul(e, nt::reduce(shift, m), m);
    let mut k = start;
    let mut terms = Vec::with_capacity(len);
    for _ in 0..len {
        let tr = field.trace_of_power(k).expect("checked has_dlog");
        terms.push(root_of_unity(tr, p));
        k = (k + e) % m;
    }
    Ok(ComplexSequence { terms, meta: Some(SeqMeta::Additive { exponent: e, shift, len }) })
}

/// The m-sequence of natural length `q - 1`.
pub fn m_sequence(field: &FiniteField, alpha: &FieldElement, shift: i64) -> Result<ComplexSequence> {
    additive_sequence(field, alpha, shift, field.q1() as usize)
}

/// `(χ(shift), ..., χ(shift+len-1))` with arguments read mod p.
pub fn mult_sequence(chi: &MultCharSpec, shift: i64, len: usize) -> Result<ComplexSequence> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    if chi.field().n() != 1 {
        return Err(Error::BadArgs("multiplicative sequences live on prime fields".into()));
    }
    let p = chi.p();
    let start = nt::reduce(shift, p);
    let terms = (0..len as u64).map(|t| chi.eval_int(((start + t) % p) as i64)).collect();
    let meta = SeqMeta::Multiplicative { p, j: chi.index(), shift, len };
    Ok(ComplexSequence { terms, meta: Some(meta) })
}

/// Replaces zero terms with `replacement`, which must have unit magnitude.
pub fn unimodularize(seq: &ComplexSequence, replacement: Complex64) -> Result<ComplexSequence> {
    let err = (replacement.norm() - 1.0).abs();
    if err.is_nan() || err > 1e-12 {
        return Err(Error::NonUnitReplacement(replacement.to_string()));
    }
    let terms = seq
        .terms
        .iter()
        .map(|&z| if z == Complex64::new(0.0, 0.0) { replacement } else { z })
        .collect();
    Ok(ComplexSequence { terms, meta: seq.meta.clone() })
}

/// Every `d`-th term, proceeding cyclically: `out[t] = in[d·t mod len]`.
pub fn decimate_cyclic(seq: &ComplexSequence, d: i64) -> Result<ComplexSequence> {
    let n = seq.len() as u64;
    if n == 0 {
        return Ok(seq.clone());
    }
    let d = nt::reduce(d, n);
    if nt::gcd(d, n) != 1 {
        return Err(Error::NotCoprime { value: d as i64, modulus: n });
    }
    let terms = (0..n).map(|t| seq.terms[nt::mod_mul(d, t, n) as usize]).collect();
    Ok(ComplexSequence::derived(terms, "decimated"))
}

/// Left cyclic shift: `out[t] = in[(t+k) mod len]`.
pub fn cyclic_shift(seq: &ComplexSequence, k: i64) -> ComplexSequence {
    let n = seq.len();
    if n == 0 {
        return seq.clone();
    }
    let k = nt::reduce(k, n as u64) as usize;
    let mut terms = seq.terms.clone();
    terms.rotate_left(k);
    ComplexSequence::derived(terms, "shifted")
}

/// I.i.d. uniform ±1 terms from a seeded ChaCha stream.
pub fn random_binary(len: usize, seed: u64) -> ComplexSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq = random_binary_from(&mut rng, len);
    seq.meta = Some(SeqMeta::Random { seed, len });
    seq
}

/// ±1 terms drawn from a caller-owned generator.
pub fn random_binary_from<R: Rng>(rng: &mut R, len: usize) -> ComplexSequence {
    let terms = (0..len)
        .map(|_| Complex64::new(if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0))
        .collect();
    ComplexSequence::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(seq: &ComplexSequence) -> Vec<f64> {
        seq.terms.iter().map(|z| z.re).collect()
    }

    #[test]
    fn gf4_m_sequence() {
        let f = FiniteField::new(2, &[1, 1, 1]).unwrap();
        let alpha = f.element(&[0, 1]).unwrap();
        let s = m_sequence(&f, &alpha, 0).unwrap();
        assert_eq!(re(&s), vec![1.0, -1.0, -1.0]);
        let s3 = additive_sequence(&f, &alpha, 3, 3).unwrap();
        assert_eq!(s3.terms, s.terms);
        assert_eq!(m_sequence(&f, &f.one(), 0), Err(Error::NotPrimitive));
        assert_eq!(m_sequence(&f, &f.zero(), 0), Err(Error::NotPrimitive));
    }

    #[test]
    fn gf8_balance() {
        let f = FiniteField::first_irreducible(2, 3).unwrap();
        for code in 1..8 {
            let a = f.decode(code);
            if !f.is_primitive(&a).unwrap() {
                continue;
            }
            let s = m_sequence(&f, &a, 0).unwrap();
            assert_eq!(s.len(), 7);
            assert_eq!(re(&s).iter().filter(|&&v| v == 1.0).count(), 3);
            assert_eq!(re(&s).iter().filter(|&&v| v == -1.0).count(), 4);
        }
    }

    #[test]
    fn legendre_mod_7() {
        let chi = MultCharSpec::quadratic(7).unwrap();
        let s = mult_sequence(&chi, 0, 7).unwrap();
        assert_eq!(re(&s), vec![0.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0]);
        assert_eq!(mult_sequence(&chi, 7, 7).unwrap().terms, s.terms);
        let u = unimodularize(&s, Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(re(&u), vec![1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0]);
        let trivial = MultCharSpec::mult(7, 0).unwrap();
        assert_eq!(mult_sequence(&trivial, 0, 3), Err(Error::TrivialCharacter));
    }

    #[test]
    fn unimodularize_cases() {
        let zeros = ComplexSequence::from_real(&[0.0, 0.0]);
        let out = unimodularize(&zeros, Complex64::new(-1.0, 0.0)).unwrap();
        assert_eq!(re(&out), vec![-1.0, -1.0]);
        let unit = ComplexSequence::from_real(&[1.0, -1.0]);
        assert_eq!(unimodularize(&unit, Complex64::new(0.0, 1.0)).unwrap().terms, unit.terms);
        assert!(matches!(
            unimodularize(&zeros, Complex64::new(2.0, 0.0)),
            Err(Error::NonUnitReplacement(_))
        ));
    }

    #[test]
    fn index_transforms() {
        let s = ComplexSequence::from_real(&[1.0, 2.0, 3.0]);
        assert_eq!(re(&decimate_cyclic(&s, 2).unwrap()), vec![1.0, 3.0, 2.0]);
        assert_eq!(re(&cyclic_shift(&s, 1)), vec![2.0, 3.0, 1.0]);
        assert_eq!(re(&cyclic_shift(&s, -1)), vec![3.0, 1.0, 2.0]);
        let s4 = ComplexSequence::from_real(&[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(decimate_cyclic(&s4, 2), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_binary(64, 5);
        assert_eq!(a, random_binary(64, 5));
        assert_ne!(a.terms, random_binary(64, 6).terms);
        assert!(a.as_ternary().is_some());
    }
}
