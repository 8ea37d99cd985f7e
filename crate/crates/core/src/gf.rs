//! Arithmetic in GF(p^n) over an explicit polynomial basis.
//!
//! Elements are dense coefficient vectors modulo an irreducible monic
//! polynomial. Fields with at most 2^20 elements also carry discrete-log and
//! exponent tables relative to the field generator, which the sequence and
//! character code use for O(1) lookups.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nt;

/// Largest order for which discrete-log tables are built.
pub const DLOG_TABLE_MAX: u64 = 1 << 20;
/// Largest supported field order (q - 1 is factored by trial division).
pub const MAX_ORDER: u64 = 1 << 40;
pub const MAX_DEGREE: usize = 24;
pub const MAX_CHARACTERISTIC: u64 = 1 << 16;

/// An element in polynomial-basis coordinates, `coeffs[i]` multiplying `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecimationKind {
    /// `d ≡ p^k (mod q-1)`: decimation leaves an m-sequence unchanged up to shift.
    Trivial,
    /// `d ≡ -p^k (mod q-1)`: decimation reverses the sequence.
    Reversing,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecimationClass {
    pub kind: DecimationKind,
    pub d: i64,
}

#[derive(Clone, Debug)]
struct DlogTable {
    /// `exp[k]` is the encoding of `g^k`.
    exp: Vec<u32>,
    /// `log[e]` is `k` with `g^k` encoded as `e`; `log[0]` is unused.
    log: Vec<u32>,
    trace_of_power: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    n: usize,
    q: u64,
    modulus: Vec<u64>,
    basis_traces: Vec<u64>,
    q1_factors: Vec<u64>,
    generator: FieldElement,
    dlog: Option<DlogTable>,
}

impl FiniteField {
    /// Builds GF(p^n) from a monic modulus given in ascending coefficients.
    pub fn new(p: u64, modulus: &[u64]) -> Result<Self> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(Error::FieldTooLarge(format!(
                "characteristic {p} exceeds {MAX_CHARACTERISTIC}"
            )));
        }
        if modulus.len() < 2 {
            return Err(Error::BadModulus("degree must be at least 1".into()));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::BadModulus(format!("coefficient {c} not in [0, {p})")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::BadModulus("modulus must be monic".into()));
        }
        let n = modulus.len() - 1;
        if n > MAX_DEGREE {
            return Err(Error::FieldTooLarge(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let q = p
            .checked_pow(n as u32)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{n} exceeds 2^40")))?;
        if !poly::is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }

        let mut field = FiniteField {
            p,
            n,
            q,
            modulus: modulus.to_vec(),
            basis_traces: Vec::new(),
            q1_factors: nt::prime_factors(q - 1),
            generator: FieldElement { coeffs: vec![0; n] },
            dlog: None,
        };
        field.basis_traces = (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                field.trace_by_frobenius(&FieldElement { coeffs: c })
            })
            .collect();
        field.generator = field.find_generator();
        if q <= DLOG_TABLE_MAX {
            field.dlog = Some(field.build_dlog());
        }
        Ok(field)
    }

    /// Like [`FiniteField::new`] but reduces signed coefficients mod p first,
    /// so `x^6 + x - 1` can be written as `[-1, 1, 0, 0, 0, 0, 1]`.
    pub fn from_signed(p: u64, modulus: &[i64]) -> Result<Self> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m: Vec<u64> = modulus.iter().map(|&c| nt::reduce(c, p)).collect();
        Self::new(p, &m)
    }

    /// The prime field F_p, represented modulo `x`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, &[0, 1])
    }

    /// GF(p^n) modulo the lexicographically first monic irreducible of degree n.
    pub fn first_irreducible(p: u64, n: usize) -> Result<Self> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::BadModulus(format!("unsupported degree {n}")));
        }
        let count = p
            .checked_pow(n as u32)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{n}")))?;
        for code in 0..count {
            let mut m = poly::digits(code, p, n);
            m.push(1);
            if poly::is_irreducible(&m, p) {
                return Self::new(p, &m);
            }
        }
        Err(Error::ReducibleModulus(p))
    }

    /// GF(512) modulo x^9 + x^4 + 1.
    pub fn binary_511() -> Self {
        Self::new(2, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]).expect("x^9+x^4+1 is irreducible")
    }

    /// GF(729) modulo x^6 + x - 1.
    pub fn ternary_728() -> Self {
        Self::from_signed(3, &[-1, 1, 0, 0, 0, 0, 1]).expect("x^6+x-1 is irreducible")
    }

    /// GF(256) modulo x^8 + x^4 + x^3 + x^2 + 1.
    pub fn binary_255() -> Self {
        Self::new(2, &[1, 0, 1, 1, 1, 0, 0, 0, 1]).expect("x^8+x^4+x^3+x^2+1 is irreducible")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Order of the multiplicative group.
    pub fn q1(&self) -> u64 {
        self.q - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The fixed primitive element every exponent in this crate refers to:
    /// the class of `x` when it is primitive, otherwise the primitive element
    /// with the smallest encoding.
    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn has_dlog(&self) -> bool {
        self.dlog.is_some()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut c = vec![0; self.n];
        c[0] = nt::reduce(v, self.p);
        FieldElement { coeffs: c }
    }

    /// Validates and pads a coefficient list (ascending powers of x).
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadArgs(format!(
                "{coeffs:?} is not an element of GF({}^{})",
                self.p, self.n
            )));
        }
        let mut c = coeffs.to_vec();
        c.resize(self.n, 0);
        Ok(FieldElement { coeffs: c })
    }

    /// Base-p digits of the coordinates, lowest first.
    pub fn encode(&self, x: &FieldElement) -> u64 {
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn decode(&self, code: u64) -> FieldElement {
        FieldElement { coeffs: poly::digits(code % self.q, self.p, self.n) }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut prod = poly::mul(&a.coeffs, &b.coeffs, self.p);
        poly::rem_monic(&mut prod, &self.modulus, self.p);
        prod.resize(self.n, 0);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for signed `e`; negative powers need `a != 0`.
    pub fn pow_signed(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(a, nt::reduce(e, self.q - 1)))
    }

    pub fn inverse(&self, a: &FieldElement) -> Result<FieldElement> {
        self.pow_signed(a, -1)
    }

    /// Absolute trace, via the precomputed traces of the basis monomials.
    pub fn trace(&self, x: &FieldElement) -> u64 {
        x.coeffs
            .iter()
            .zip(&self.basis_traces)
            .fold(0, |acc, (&c, &t)| (acc + c * t) % self.p)
    }

    /// Absolute trace computed as `x + x^p + ... + x^(p^(n-1))`.
    pub fn trace_by_frobenius(&self, x: &FieldElement) -> u64 {
        let mut sum = self.zero();
        let mut y = x.clone();
        for _ in 0..self.n {
            sum = self.add(&sum, &y);
            y = self.pow(&y, self.p);
        }
        debug_assert!(sum.coeffs[1..].iter().all(|&c| c == 0));
        sum.coeffs[0]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: &FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut ord = self.q - 1;
        for &r in &self.q1_factors {
            while ord.is_multiple_of(r) && self.pow(x, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    pub fn is_primitive(&self, x: &FieldElement) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let one = self.one();
        Ok(self
            .q1_factors
            .iter()
            .all(|&r| self.pow(x, (self.q - 1) / r) != one))
    }

    /// Discrete log relative to [`FiniteField::generator`].
    pub fn log(&self, x: &FieldElement) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let t = self.dlog.as_ref()?;
        Some(t.log[self.encode(x) as usize] as u64)
    }

    /// `generator^k`, read cyclically.
    pub fn exp(&self, k: i64) -> FieldElement {
        let k = nt::reduce(k, self.q - 1);
        match &self.dlog {
            Some(t) => self.decode(t.exp[k as usize] as u64),
            None => self.pow(&self.generator, k),
        }
    }

    /// `Tr(generator^k)` from the table, if one was built.
    pub fn trace_of_power(&self, k: u64) -> Option<u64> {
        let t = self.dlog.as_ref()?;
        Some(t.trace_of_power[(k % (self.q - 1)) as usize] as u64)
    }

    /// Exponents `k` (against the generator) of one primitive element per
    /// Galois-conjugacy class, each the smallest exponent in its class.
    pub fn primitive_representative_exponents(&self) -> Result<Vec<u64>> {
        if self.dlog.is_none() {
            return Err(Error::FieldTooLarge(format!(
                "no discrete-log table for q = {}",
                self.q
            )));
        }
        let m = self.q - 1;
        let reps = (1..m.max(2))
            .filter(|&k| nt::gcd(k % m, m) == 1)
            .filter(|&k| {
                let mut c = k % m;
                (0..self.n).all(|_| {
                    c = nt::mod_mul(c, self.p, m);
                    c >= k % m
                })
            })
            .map(|k| k % m)
            .collect();
        Ok(reps)
    }

    pub fn primitive_representatives(&self) -> Result<Vec<FieldElement>> {
        Ok(self
            .primitive_representative_exponents()?
            .into_iter()
            .map(|k| self.exp(k as i64))
            .collect())
    }

    pub fn classify_decimation(&self, d: i64) -> Result<DecimationClass> {
        let m = self.q - 1;
        let r = nt::reduce(d, m);
        if nt::gcd(r, m) != 1 {
            return Err(Error::NotCoprime { value: d, modulus: m });
        }
        let neg = (m - r) % m;
        let mut pk = 1 % m;
        let mut kind = DecimationKind::Other;
        for _ in 0..self.n {
            if r == pk {
                kind = DecimationKind::Trivial;
                break;
            }
            if neg == pk && kind == DecimationKind::Other {
                kind = DecimationKind::Reversing;
            }
            pk = nt::mod_mul(pk, self.p, m);
        }
        Ok(DecimationClass { kind, d })
    }

    fn find_generator(&self) -> FieldElement {
        if self.n > 1 {
            let mut c = vec![0; self.n];
            c[1] = 1;
            let x = FieldElement { coeffs: c };
            if self.is_primitive(&x).unwrap_or(false) {
                return x;
            }
        }
        (1..self.q)
            .map(|code| self.decode(code))
            .find(|e| self.is_primitive(e).unwrap_or(false))
            .expect("every finite field has a primitive element")
    }

    fn build_dlog(&self) -> DlogTable {
        let m = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(m);
        let mut log = vec![u32::MAX; self.q as usize];
        let mut trace_of_power = Vec::with_capacity(m);
        let mut cur = self.one();
        for k in 0..m {
            let code = self.encode(&cur);
            exp.push(code as u32);
            log[code as usize] = k as u32;
            trace_of_power.push(self.trace(&cur) as u32);
            cur = self.mul(&cur, &self.generator);
        }
        DlogTable { exp, log, trace_of_power }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.modulus.iter().map(u64::to_string).collect();
        write!(f, "p={}; modulus={}", self.p, m.join(","))
    }
}

/// Parses `p=<int>; modulus=<c0,c1,...,cn>` (ascending coefficients).
impl FromStr for FiniteField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut modulus = None;
        for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
            let value = value.trim().trim_start_matches('<').trim_end_matches('>');
            match key.trim() {
                "p" => {
                    p = Some(value.parse::<u64>().map_err(|e| Error::Parse(format!("p: {e}")))?)
                }
                "modulus" => {
                    let coeffs = value
                        .split(',')
                        .map(|c| c.trim().parse::<i64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|e| Error::Parse(format!("modulus: {e}")))?;
                    modulus = Some(coeffs);
                }
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("missing p".into()))?;
        let modulus = modulus.ok_or_else(|| Error::Parse("missing modulus".into()))?;
        if let Some(&c) = modulus.iter().find(|&&c| c < 0 || c as u64 >= p) {
            if nt::is_prime(p) {
                return Err(Error::BadModulus(format!("coefficient {c} not in [0, {p})")));
            }
        }
        FiniteField::from_signed(p, &modulus)
    }
}

/// Dense polynomials over Z_p, ascending coefficients.
mod poly {
    use crate::nt;

    pub fn digits(mut code: u64, p: u64, n: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(code % p);
            code /= p;
        }
        out
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn degree(v: &[u64]) -> Option<usize> {
        v.iter().rposition(|&c| c != 0)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    /// Reduces `a` in place modulo a monic `f`.
    pub fn rem_monic(a: &mut Vec<u64>, f: &[u64], p: u64) {
        let n = f.len() - 1;
        trim(a);
        while a.len() > n {
            let lead = *a.last().unwrap();
            let shift = a.len() - 1 - n;
            if lead != 0 {
                for (i, &c) in f.iter().enumerate() {
                    let idx = shift + i;
                    a[idx] = (a[idx] + p - (lead * c) % p) % p;
                }
            }
            a.pop();
            trim(a);
        }
    }

    fn rem_general(a: &mut Vec<u64>, b: &[u64], p: u64) {
        let db = degree(b).expect("division by zero polynomial");
        let inv = nt::mod_pow(b[db], p - 2, p);
        trim(a);
        while let Some(da) = degree(a) {
            if da < db {
                break;
            }
            let factor = a[da] * inv % p;
            let shift = da - db;
            for i in 0..=db {
                a[shift + i] = (a[shift + i] + p - factor * b[i] % p) % p;
            }
            trim(a);
        }
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            rem_general(&mut x, &y, p);
            std::mem::swap(&mut x, &mut y);
        }
        x
    }

    fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = base.to_vec();
        rem_monic(&mut b, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(&acc, &b, p);
                rem_monic(&mut acc, f, p);
            }
            b = mul(&b, &b, p);
            rem_monic(&mut b, f, p);
            e >>= 1;
        }
        trim(&mut acc);
        acc
    }

    /// Rabin's test: `x^(p^n) ≡ x` and `gcd(x^(p^(n/r)) - x, f) = 1` for every
    /// prime `r | n`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let mut frob = Vec::with_capacity(n);
        let mut cur = x.clone();
        for _ in 0..n {
            cur = powmod(&cur, p, f, p);
            frob.push(cur.clone());
        }
        if frob[n - 1] != x {
            return false;
        }
        nt::prime_factors(n as u64).into_iter().all(|r| {
            let mut h = frob[n / r as usize - 1].clone();
            h.resize(h.len().max(2), 0);
            h[1] = (h[1] + p - 1) % p;
            let g = gcd(&h, f, p);
            degree(&g) == Some(0)
        })
    }
}
