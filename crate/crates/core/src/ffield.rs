//! Arithmetic in F_q, q = p^m with p odd.
//!
//! Elements are stored by their canonical integer encoding
//! `Σ digits[i]·pⁱ`, where `digits` are the coordinates in the power basis
//! of F_p[t]/(modulus). Prime fields use plain modular arithmetic; small
//! extension fields use discrete log/antilog tables built from the cached
//! generator; larger extensions fall back to digit-polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("characteristic {0} is not supported")]
    CharacteristicUnsupported(u64),
    #[error("field order p^m does not fit in 64 bits")]
    TooLarge,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    ContextMismatch,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("element is not a square")]
    NonResidue,
    #[error("fifth roots of unity are undefined in characteristic 5")]
    CharacteristicFive,
}

/// A field element, identified by its canonical integer encoding in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Base-p digits, least significant first, always `m` long.
    pub fn digits(self, ctx: &FieldContext) -> Vec<u64> {
        ctx.to_digits(self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Neg,
    Inv,
}

enum Arith {
    Prime,
    Tables(Tables),
    DigitPoly,
}

struct Tables {
    /// exp[i] = g^i for 0 ≤ i < 2(q−1), doubled to skip a reduction in `mul`.
    exp: Vec<u32>,
    /// log[a] for a ≠ 0; log[0] unused.
    log: Vec<u32>,
    /// Full addition table for very small q.
    add: Option<Vec<u32>>,
}

const TABLE_LIMIT: u64 = 1 << 20;
const ADD_TABLE_LIMIT: u64 = 1 << 10;

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    modulus: Option<Vec<u64>>,
    generator: Elem,
    q_minus_one: Vec<(u64, u32)>,
    arith: Arith,
}

/// An odd-characteristic finite field. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct FieldContext {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p())
            .field("m", &self.m())
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m() == 1 {
            write!(f, "F_{}", self.p())
        } else {
            write!(f, "F_{}^{}", self.p(), self.m())
        }
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p() && self.m() == other.m() && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// Validate and build F_{p^m}. With `m > 1` and no modulus, the first
    /// irreducible monic polynomial in canonical-encoding order is used.
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicUnsupported(2));
        }
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::BadModulus("extension degree must be at least 1".into()));
        }
        let q = p.checked_pow(m).ok_or(FieldError::TooLarge)?;
        let modulus = match (m, modulus) {
            (1, None) => None,
            (1, Some(_)) => {
                return Err(FieldError::BadModulus("a prime field takes no modulus".into()))
            }
            (_, Some(f)) => {
                validate_modulus(p, m, &f)?;
                Some(f)
            }
            (_, None) => Some(search_modulus(p, m)?),
        };
        let q_minus_one = arith::factor_trial(q - 1);
        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            generator: Elem::ONE,
            q_minus_one,
            arith: if m == 1 { Arith::Prime } else { Arith::DigitPoly },
        };
        let probe = FieldContext { inner: Arc::new(inner) };
        let generator = probe.find_generator();
        inner = Arc::into_inner(probe.inner).expect("probe context is uniquely owned");
        inner.generator = generator;
        if m > 1 && q <= TABLE_LIMIT {
            let scratch = FieldContext { inner: Arc::new(inner) };
            let tables = scratch.build_tables();
            inner = Arc::into_inner(scratch.inner).expect("scratch context is uniquely owned");
            inner.arith = Arith::Tables(tables);
        }
        Ok(FieldContext { inner: Arc::new(inner) })
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    /// Open a context for the r = 5 engine, which also excludes p = 5.
    pub fn for_r5(p: u64, m: u32) -> Result<Self, FieldError> {
        if p == 5 {
            return Err(FieldError::CharacteristicUnsupported(5));
        }
        Self::new(p, m, None)
    }

    /// Build from a field order q = p^m.
    pub fn from_order(q: u64) -> Result<Self, FieldError> {
        let (p, m) = arith::prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::new(p, m, None)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.inner.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.inner.m
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Ascending digits of the monic defining polynomial (length m + 1).
    pub fn modulus(&self) -> Option<&[u64]> {
        self.inner.modulus.as_deref()
    }

    pub fn generator(&self) -> Elem {
        self.inner.generator
    }

    pub fn same(&self, other: &FieldContext) -> bool {
        self == other
    }

    /// p when this is a prime field with p < 2³², used by the polynomial
    /// kernels to pick lazily-reduced accumulation.
    #[inline]
    pub(crate) fn word_prime(&self) -> Option<u64> {
        match self.inner.arith {
            Arith::Prime if self.inner.p < 1 << 32 => Some(self.inner.p),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Checked constructor from a canonical encoding.
    pub fn elem(&self, v: u64) -> Result<Elem, FieldError> {
        if v < self.q() {
            Ok(Elem(v))
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p() as i64) as u64)
    }

    pub fn from_digits(&self, digits: &[u64]) -> Elem {
        let p = self.p();
        Elem(digits.iter().rev().fold(0u64, |acc, &d| acc * p + d % p))
    }

    pub fn to_digits(&self, mut v: u64) -> Vec<u64> {
        let p = self.p();
        (0..self.m())
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q()).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.arith {
            Arith::Prime => {
                let p = self.inner.p;
                let (s, carry) = a.0.overflowing_add(b.0);
                Elem(if carry || s >= p { s.wrapping_sub(p) } else { s })
            }
            Arith::Tables(Tables { add: Some(t), .. }) => {
                Elem(t[(a.0 * self.inner.q + b.0) as usize] as u64)
            }
            _ => self.digitwise(a, b, |x, y, p| (x + y) % p),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match self.inner.arith {
            Arith::Prime => Elem(if a.0 == 0 { 0 } else { self.inner.p - a.0 }),
            _ => self.digitwise(a, Elem::ZERO, |x, _, p| (p - x) % p),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        match self.inner.arith {
            Arith::Prime => {
                let p = self.inner.p;
                Elem(if a.0 >= b.0 { a.0 - b.0 } else { p - (b.0 - a.0) })
            }
            _ => self.add(a, self.neg(b)),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.arith {
            Arith::Prime if self.inner.p < 1 << 32 => Elem(a.0 * b.0 % self.inner.p),
            Arith::Prime => Elem(arith::mul_mod(a.0, b.0, self.inner.p)),
            Arith::Tables(t) => {
                if a.0 == 0 || b.0 == 0 {
                    Elem::ZERO
                } else {
                    let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                    Elem(t.exp[i] as u64)
                }
            }
            Arith::DigitPoly => self.mul_digits(a, b),
        }
    }

    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match &self.inner.arith {
            Arith::Tables(t) => {
                let l = t.log[a.0 as usize] as u64;
                Elem(t.exp[((self.q() - 1 - l) % (self.q() - 1)) as usize] as u64)
            }
            _ => self.pow(a, self.q() - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Checked arithmetic dispatcher; unary operations ignore `b`.
    pub fn field_arith(&self, op: FieldOp, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        self.elem(a.0)?;
        self.elem(b.0)?;
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Sub => Ok(self.sub(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Div => self.div(a, b),
            FieldOp::Pow(e) => Ok(self.pow(a, e)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a),
        }
    }

    /// Euler's criterion: a^{(q−1)/2} = 1.
    pub fn is_square(&self, a: Elem) -> Result<bool, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        Ok(self.pow(a, (self.q() - 1) / 2) == Elem::ONE)
    }

    /// Both square roots of `a`, the one with the smaller encoding first.
    pub fn sqrt(&self, a: Elem) -> Result<(Elem, Elem), FieldError> {
        if a.is_zero() {
            return Ok((Elem::ZERO, Elem::ZERO));
        }
        if !self.is_square(a)? {
            return Err(FieldError::NonResidue);
        }
        let q = self.q();
        let s = arith::v2(q - 1);
        let t = (q - 1) >> s;
        // Tonelli–Shanks; g^t generates the 2-Sylow subgroup.
        let mut m = s;
        let mut c = self.pow(self.generator(), t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        while b != Elem::ONE {
            let mut i = 0;
            let mut b2 = b;
            while b2 != Elem::ONE {
                b2 = self.square(b2);
                i += 1;
            }
            let mut f = c;
            for _ in 0..(m - i - 1) {
                f = self.square(f);
            }
            x = self.mul(x, f);
            c = self.square(f);
            b = self.mul(b, c);
            m = i;
        }
        let y = self.neg(x);
        Ok(if x < y { (x, y) } else { (y, x) })
    }

    /// Both square roots of `a` when it is a square (or zero), else `None`.
    pub fn sqrt_opt(&self, a: Elem) -> Option<(Elem, Elem)> {
        self.sqrt(a).ok()
    }

    /// Least k ≥ 1 with a^k = 1.
    pub fn mult_order(&self, a: Elem) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        let mut ord = self.q() - 1;
        for &(p, _) in &self.inner.q_minus_one {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == Elem::ONE {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// The coherent chain ρ_i = g^{(q−1)/2ⁱ}, 0 ≤ i ≤ v₂(q − 1).
    pub fn rho_chain(&self) -> RhoChain {
        let l1 = arith::v2(self.q() - 1);
        let entries = (0..=l1)
            .map(|i| self.pow(self.generator(), (self.q() - 1) >> i))
            .collect();
        RhoChain { entries }
    }

    /// Ω(5) when 5 | q − 1, otherwise the in-field traces w + w⁻¹ (roots of
    /// x² + x − 1) when q ≡ −1 (mod 5), otherwise nothing.
    pub fn omega5(&self) -> Result<Omega5, FieldError> {
        if self.p() == 5 {
            return Err(FieldError::CharacteristicFive);
        }
        let q = self.q();
        if (q - 1).is_multiple_of(5) {
            let g = self.generator();
            let step = (q - 1) / 5;
            let roots = (1..=4).map(|i| self.pow(g, i * step)).collect();
            return Ok(Omega5::Roots(roots));
        }
        if q % 5 == 4 {
            // t = (−1 ± √5)/2
            let (s, _) = self.sqrt(self.from_int(5))?;
            let half = self.inv(self.from_int(2))?;
            let minus_one = self.from_int(-1);
            let mut t = vec![
                self.mul(self.add(minus_one, s), half),
                self.mul(self.sub(minus_one, s), half),
            ];
            t.sort();
            return Ok(Omega5::Traces(t));
        }
        Ok(Omega5::Empty)
    }

    fn digitwise(&self, a: Elem, b: Elem, f: impl Fn(u64, u64, u64) -> u64) -> Elem {
        let p = self.p();
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut scale = 1u64;
        for i in 0..self.m() {
            out += f(x % p, y % p, p) * scale;
            x /= p;
            y /= p;
            if i + 1 < self.m() {
                scale *= p;
            }
        }
        Elem(out)
    }

    fn mul_digits(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p();
        let m = self.m() as usize;
        let f = self.inner.modulus.as_ref().expect("extension field has a modulus");
        let da = self.to_digits(a.0);
        let db = self.to_digits(b.0);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + arith::mul_mod(x, y, p)) % p;
            }
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            // modulus is monic: subtract c·x^{i−m}·f
            for (j, &fj) in f[..m].iter().enumerate() {
                let k = i - m + j;
                prod[k] = (prod[k] + p - arith::mul_mod(c, fj, p)) % p;
            }
            prod[i] = 0;
        }
        self.from_digits(&prod[..m])
    }

    fn find_generator(&self) -> Elem {
        let q = self.q();
        if q == 3 {
            return Elem(2);
        }
        (2..q)
            .map(Elem)
            .find(|&a| {
                self.inner
                    .q_minus_one
                    .iter()
                    .all(|&(p, _)| self.pow(a, (q - 1) / p) != Elem::ONE)
            })
            .expect("F_q* is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let q = self.q();
        let order = (q - 1) as usize;
        let g = self.generator();
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; q as usize];
        let mut cur = Elem::ONE;
        for i in 0..order {
            exp[i] = cur.0 as u32;
            exp[i + order] = cur.0 as u32;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_digits(cur, g);
        }
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = self.digitwise(Elem(a), Elem(b), |x, y, p| (x + y) % p).0 as u32;
                }
            }
            t
        });
        Tables { exp, log, add }
    }
}

/// ρ₀ = 1, ρ₁ = −1, …, ρ_{L₁} with ρ_i² = ρ_{i−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoChain {
    entries: Vec<Elem>,
}

impl RhoChain {
    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Elem {
        self.entries[i]
    }

    /// v₂(q − 1), the index of the last entry.
    pub fn l1(&self) -> usize {
        self.entries.len() - 1
    }

    /// Ω(2ⁿ) ∩ F_q: the odd powers of ρ_n, in exponent order.
    pub fn primitive(&self, ctx: &FieldContext, n: usize) -> Vec<Elem> {
        assert!(n <= self.l1(), "Ω(2^{n}) is not contained in the field");
        if n == 0 {
            return vec![Elem::ONE];
        }
        let rho = self.entries[n];
        let rho2 = ctx.square(rho);
        let mut cur = rho;
        let mut out = Vec::with_capacity(1 << (n - 1));
        for _ in 0..(1usize << (n - 1)) {
            out.push(cur);
            cur = ctx.mul(cur, rho2);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Omega5 {
    /// The four primitive fifth roots of unity, all in F_q.
    Roots(Vec<Elem>),
    /// The two values w + w⁻¹, sorted.
    Traces(Vec<Elem>),
    /// q ≡ ±2 (mod 5): neither is available in F_q.
    Empty,
}

fn validate_modulus(p: u64, m: u32, f: &[u64]) -> Result<(), FieldError> {
    if f.len() != m as usize + 1 {
        return Err(FieldError::BadModulus(format!("expected degree {m}, got {} coefficients", f.len())));
    }
    if f[m as usize] != 1 {
        return Err(FieldError::BadModulus("modulus must be monic".into()));
    }
    if f.iter().any(|&c| c >= p) {
        return Err(FieldError::BadModulus(format!("coefficients must lie in [0, {p})")));
    }
    if !prime_poly_irreducible(p, f) {
        return Err(FieldError::BadModulus("modulus is reducible".into()));
    }
    Ok(())
}

fn search_modulus(p: u64, m: u32) -> Result<Vec<u64>, FieldError> {
    let count = p.checked_pow(m).ok_or(FieldError::TooLarge)?;
    for v in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut x = v;
        for _ in 0..m {
            f.push(x % p);
            x /= p;
        }
        f.push(1);
        if prime_poly_irreducible(p, &f) {
            return Ok(f);
        }
    }
    Err(FieldError::BadModulus(format!("no irreducible polynomial of degree {m} over F_{p}")))
}

fn prime_poly_irreducible(p: u64, f: &[u64]) -> bool {
    let ctx = FieldContext::prime(p).expect("p already validated");
    let poly = crate::fpoly::Poly::from_values(&ctx, f).expect("digits are reduced");
    crate::fpoly::is_irreducible(&poly).unwrap_or(false)
}
