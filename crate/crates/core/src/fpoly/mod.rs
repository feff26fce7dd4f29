//! Dense univariate polynomials over a [`FieldContext`].

mod irred;
pub(crate) mod kernel;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::arith;
use crate::ffield::{Elem, FieldContext, FieldError};
use kernel::{trim, Barrett, Divisor, Kern, BARRETT_MIN_DEGREE};

pub use irred::{frobenius_power, has_order, is_irreducible, poly_order};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomials live over different fields")]
    ContextMismatch,
    #[error("characteristic {p} divides {n}")]
    CharacteristicDividesN { n: u64, p: u64 },
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial has degree zero")]
    ZeroDegree,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("q^deg - 1 does not fit in 128 bits")]
    OrderOverflow,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    ctx: FieldContext,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(ctx: &FieldContext, mut coeffs: Vec<Elem>) -> Self {
        trim(&mut coeffs);
        Poly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &FieldContext) -> Self {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldContext) -> Self {
        Self::constant(ctx, Elem::ONE)
    }

    pub fn x(ctx: &FieldContext) -> Self {
        Self::monomial(ctx, Elem::ONE, 1)
    }

    pub fn constant(ctx: &FieldContext, c: Elem) -> Self {
        Self::new(ctx, vec![c])
    }

    pub fn monomial(ctx: &FieldContext, c: Elem, k: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(ctx, coeffs)
    }

    /// From canonical encodings; every value must be below q.
    pub fn from_values(ctx: &FieldContext, values: &[u64]) -> Result<Self, PolyError> {
        let coeffs = values.iter().map(|&v| ctx.elem(v)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(ctx, coeffs))
    }

    /// Integer coefficients mapped into the prime subfield.
    pub fn from_ints(ctx: &FieldContext, values: &[i64]) -> Self {
        Self::new(ctx, values.iter().map(|&v| ctx.from_int(v)).collect())
    }

    /// Build from sparse (exponent, coefficient) pairs; repeated exponents add.
    pub fn from_terms(ctx: &FieldContext, terms: &[(usize, Elem)]) -> Self {
        let len = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let mut coeffs = vec![Elem::ZERO; len];
        for &(k, c) in terms {
            coeffs[k] = ctx.add(coeffs[k], c);
        }
        Self::new(ctx, coeffs)
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn values(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem::ONE]
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Elem::ONE
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.ctx.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { ctx: self.ctx.clone(), coeffs }
    }

    pub fn eval(&self, a: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| self.ctx.add(self.ctx.mul(acc, a), c))
    }

    pub fn derivative(&self) -> Self {
        let ctx = &self.ctx;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ctx.mul(c, ctx.from_int((i as u64 % ctx.p()) as i64)))
            .collect();
        Self::new(ctx, coeffs)
    }

    pub fn square(&self) -> Self {
        Self::new(&self.ctx, kernel::sqr(&self.ctx, &self.coeffs))
    }

    fn check(&self, other: &Poly) -> Result<(), PolyError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.check(g)?;
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let inv = self.ctx.inv(g.lead())?;
        let gm = g.scale(inv);
        let div = Divisor::new(&self.ctx, &gm.coeffs);
        let (q, r) = div.divrem(&self.ctx, self.coeffs.clone(), true);
        Ok((Poly::new(&self.ctx, q).scale(inv), Poly::new(&self.ctx, r)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly, PolyError> {
        self.check(g)?;
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let gm = g.monic();
        let div = Divisor::new(&self.ctx, &gm.coeffs);
        Ok(Poly::new(&self.ctx, div.divrem(&self.ctx, self.coeffs.clone(), false).1))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, g: &Poly) -> Result<Poly, PolyError> {
        self.check(g)?;
        let ctx = &self.ctx;
        if let Kern::Small(p) = Kern::of(ctx) {
            return Ok(Poly::new(ctx, kernel::gcd_small(&self.coeffs, &g.coeffs, p)));
        }
        let (mut a, mut b) = (self.monic(), g.monic());
        while !b.is_zero() {
            let div = Divisor::new(ctx, &b.coeffs);
            let r = Poly::new(ctx, div.divrem(ctx, a.coeffs, false).1).monic();
            a = b;
            b = r;
        }
        Ok(a)
    }

    pub fn powmod(&self, e: u128, m: &Poly) -> Result<Poly, PolyError> {
        self.check(m)?;
        Ok(Modulus::new(m)?.pow(self, e))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx == other.ctx
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Canonical factor order: by degree, then lexicographically on the
/// ascending coefficient encodings.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]{:?}", self.ctx, self.values())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.value()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, v) => write!(f, "{v}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn zip_with(a: &Poly, b: &Poly, op: impl Fn(Elem, Elem) -> Elem) -> Poly {
    assert!(a.ctx == b.ctx, "polynomials live over different fields");
    let len = a.coeffs.len().max(b.coeffs.len());
    Poly::new(&a.ctx, (0..len).map(|i| op(a.coeff(i), b.coeff(i))).collect())
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| self.ctx.add(x, y))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| self.ctx.sub(x, y))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.ctx == rhs.ctx, "polynomials live over different fields");
        Poly::new(&self.ctx, kernel::mul(&self.ctx, &self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Product of a list of polynomials, 1 when empty.
pub fn product(ctx: &FieldContext, factors: &[Poly]) -> Poly {
    // balanced pairing keeps the operands similar in size for Karatsuba
    let mut layer: Vec<Poly> = factors.to_vec();
    if layer.is_empty() {
        return Poly::one(ctx);
    }
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() })
            .collect();
    }
    layer.pop().unwrap()
}

/// Arithmetic modulo a fixed polynomial of degree ≥ 1.
#[derive(Clone, Debug)]
pub struct Modulus {
    f: Poly,
    div: Divisor,
    barrett: Option<Barrett>,
}

impl Modulus {
    /// Reduction is by the monic associate of `f`.
    pub fn new(f: &Poly) -> Result<Self, PolyError> {
        if f.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if f.degree() == 0 {
            return Err(PolyError::ZeroDegree);
        }
        let f = f.monic();
        let div = Divisor::new(&f.ctx, &f.coeffs);
        let dense = f.weight() > f.degree() / 8;
        let barrett = (matches!(Kern::of(&f.ctx), Kern::Small(_)) && dense && f.degree() >= BARRETT_MIN_DEGREE)
            .then(|| Barrett::new(&f.ctx, &f.coeffs));
        Ok(Modulus { f, div, barrett })
    }

    pub fn poly(&self) -> &Poly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.div.deg
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.f.ctx
    }

    fn wrap(&self, v: Vec<Elem>) -> Poly {
        if let Some(r) = self.barrett.as_ref().and_then(|b| b.rem(&self.f.ctx, &v)) {
            return Poly::new(&self.f.ctx, r);
        }
        Poly::new(&self.f.ctx, self.div.divrem(&self.f.ctx, v, false).1)
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        self.wrap(a.coeffs.clone())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.wrap(kernel::mul(self.ctx(), &a.coeffs, &b.coeffs))
    }

    pub fn sqr(&self, a: &Poly) -> Poly {
        self.wrap(kernel::sqr(self.ctx(), &a.coeffs))
    }

    pub fn pow(&self, a: &Poly, e: u128) -> Poly {
        let a = self.reduce(a);
        if e == 0 {
            return self.reduce(&Poly::one(self.ctx()));
        }
        let mut acc = a.clone();
        for i in (0..127 - e.leading_zeros()).rev() {
            acc = self.sqr(&acc);
            if (e >> i) & 1 == 1 {
                acc = self.mul(&acc, &a);
            }
        }
        acc
    }

    /// x^e mod f; multiplying by x is a shift plus one reduction row.
    pub fn x_pow(&self, e: u128) -> Poly {
        if e == 0 {
            return self.reduce(&Poly::one(self.ctx()));
        }
        let mut acc = self.reduce(&Poly::x(self.ctx()));
        for i in (0..127 - e.leading_zeros()).rev() {
            acc = self.sqr(&acc);
            if (e >> i) & 1 == 1 {
                acc = self.wrap(acc.shift(1).coeffs);
            }
        }
        acc
    }

    /// h(g) mod f by baby-step/giant-step (Brent–Kung).
    pub fn compose(&self, h: &Poly, g: &Poly) -> Poly {
        let ctx = self.ctx();
        let h = self.reduce(h);
        let g = self.reduce(g);
        if h.degree() == 0 {
            return h;
        }
        let n = h.coeffs.len();
        let s = (n as f64).sqrt().ceil() as usize;
        let mut pows = Vec::with_capacity(s + 1);
        pows.push(Poly::one(ctx));
        for j in 1..=s {
            let next = self.mul(&pows[j - 1], &g);
            pows.push(next);
        }
        let giant = pows.pop().unwrap();
        let basis: Vec<Vec<Elem>> = pows.into_iter().map(|p| p.coeffs).collect();
        let width = self.degree();
        let mut acc = Poly::zero(ctx);
        for chunk in h.coeffs.chunks(s).rev() {
            let lin = Poly::new(ctx, kernel::lincomb(ctx, chunk, &basis, width));
            acc = &self.mul(&acc, &giant) + &lin;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
    Gcd,
    /// `f^e mod g`.
    PowMod(u128),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyResult {
    Poly(Poly),
    Pair(Poly, Poly),
}

pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<PolyResult, PolyError> {
    f.check(g)?;
    Ok(match op {
        PolyOp::Add => PolyResult::Poly(f + g),
        PolyOp::Sub => PolyResult::Poly(f - g),
        PolyOp::Mul => PolyResult::Poly(f * g),
        PolyOp::DivRem => {
            let (q, r) = f.divrem(g)?;
            PolyResult::Pair(q, r)
        }
        PolyOp::Gcd => PolyResult::Poly(f.gcd(g)?),
        PolyOp::PowMod(e) => PolyResult::Poly(f.powmod(e, g)?),
    })
}

/// Q_n(x) via the Möbius quotient Π_{d|n} (x^d − 1)^{μ(n/d)}.
pub fn cyclotomic(ctx: &FieldContext, n: u64) -> Result<Poly, PolyError> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if n.is_multiple_of(ctx.p()) {
        return Err(PolyError::CharacteristicDividesN { n, p: ctx.p() });
    }
    let binomial = |d: u64| Poly::from_terms(ctx, &[(0, ctx.from_int(-1)), (d as usize, Elem::ONE)]);
    let mut num = Vec::new();
    let mut den = Vec::new();
    for d in arith::divisors(n) {
        match arith::moebius(n / d) {
            1 => num.push(binomial(d)),
            -1 => den.push(binomial(d)),
            _ => {}
        }
    }
    let (q, r) = product(ctx, &num).divrem(&product(ctx, &den))?;
    assert!(r.is_zero(), "Möbius quotient must be exact");
    Ok(q)
}

/// f(−x).
pub fn negate_arg(f: &Poly) -> Poly {
    let ctx = f.ctx();
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 1 { ctx.neg(c) } else { c })
        .collect();
    Poly::new(ctx, coeffs)
}

/// f(x^t).
pub fn compose_power(f: &Poly, t: usize) -> Poly {
    assert!(t >= 1);
    if t == 1 || f.is_zero() {
        return f.clone();
    }
    let mut coeffs = vec![Elem::ZERO; f.degree() * t + 1];
    for (i, &c) in f.coeffs.iter().enumerate() {
        coeffs[i * t] = c;
    }
    Poly::new(f.ctx(), coeffs)
}

/// Degree, order and count of the irreducible factors of Q_e over F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorMeta {
    pub degree: u64,
    pub order: u64,
    pub count: u64,
}

impl FactorMeta {
    pub fn for_cyclotomic(q: u64, e: u64) -> Self {
        let degree = arith::mult_order_mod(q, e);
        FactorMeta { degree, order: e, count: arith::euler_phi(e) / degree }
    }
}

#[cfg(test)]
mod tests;
