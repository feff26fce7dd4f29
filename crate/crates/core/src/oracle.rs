//! Generic factorization over F_q: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting. Shares no code
//! with the explicit engine beyond the polynomial arithmetic.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ffield::{Elem, FieldContext};
use crate::fpoly::{product, Modulus, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no factors")]
    Constant,
}

/// Number of Frobenius steps between gcds in the distinct-degree phase.
const DDF_BLOCK: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    /// Leading coefficient of the input.
    pub unit: Elem,
    /// Monic irreducible factors with multiplicity, canonically sorted.
    pub factors: Vec<(Poly, u32)>,
}

impl FactorizationReport {
    /// Factors repeated by multiplicity, in canonical order.
    pub fn expanded(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for (g, e) in &self.factors {
            out.extend(std::iter::repeat_n(g.clone(), *e as usize));
        }
        out
    }

    pub fn distinct(&self) -> Vec<Poly> {
        self.factors.iter().map(|(g, _)| g.clone()).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// unit · Π gᵉ; equals the input.
    pub fn product(&self, ctx: &FieldContext) -> Poly {
        product(ctx, &self.expanded()).scale(self.unit)
    }
}

pub fn factorize(f: &Poly, seed: u64) -> Result<FactorizationReport, OracleError> {
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(OracleError::Constant);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree(&f.monic()) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort();
    Ok(FactorizationReport { unit: f.lead(), factors })
}

/// All roots in F_q, with multiplicity, sorted by encoding.
pub fn find_roots(f: &Poly) -> Result<Vec<Elem>, OracleError> {
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    let ctx = f.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut roots = Vec::new();
    for (part, mult) in squarefree(&f.monic()) {
        let m = Modulus::new(&part).expect("degree ≥ 1");
        let h = &m.x_pow(ctx.q() as u128) - &Poly::x(ctx);
        let linear = part.gcd(&h).expect("same field");
        if linear.degree() == 0 {
            continue;
        }
        for g in equal_degree(&linear, 1, &mut rng) {
            let r = ctx.neg(g.coeff(0));
            roots.extend(std::iter::repeat_n(r, mult as usize));
        }
    }
    roots.sort();
    Ok(roots)
}

fn exact_div(a: &Poly, b: &Poly) -> Poly {
    let (q, r) = a.divrem(b).expect("nonzero divisor");
    debug_assert!(r.is_zero());
    q
}

/// g with g(x)^p = f(x); every exponent of f is a multiple of p.
fn pth_root(f: &Poly) -> Poly {
    let ctx = f.ctx();
    let p = ctx.p() as usize;
    let root_exp = ctx.q() / ctx.p();
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| ctx.pow(c, root_exp))
        .collect();
    Poly::new(ctx, coeffs)
}

/// Monic squarefree, pairwise coprime parts with their multiplicities.
fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let p = f.ctx().p() as u32;
    let mut out = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        for (g, e) in squarefree(&pth_root(f)) {
            out.push((g, e * p));
        }
        return out;
    }
    let mut c = f.gcd(&df).expect("same field");
    let mut w = exact_div(f, &c);
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c).expect("same field");
        let part = exact_div(&w, &y);
        if part.degree() > 0 {
            out.push((part, i));
        }
        c = exact_div(&c, &y);
        w = y;
        i += 1;
    }
    if c.degree() > 0 {
        for (g, e) in squarefree(&pth_root(&c)) {
            out.push((g, e * p));
        }
    }
    out
}

/// Split a squarefree monic f into (product of its degree-d factors, d).
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let ctx = f.ctx();
    let q = ctx.q() as u128;
    let x = Poly::x(ctx);
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    while f.degree() >= 2 * (d + 1) {
        let m = Modulus::new(&f).expect("degree ≥ 2");
        h = m.reduce(&h);
        let mut steps = Vec::with_capacity(DDF_BLOCK);
        let mut acc = Poly::one(ctx);
        while steps.len() < DDF_BLOCK && f.degree() >= 2 * (d + 1) {
            d += 1;
            h = m.pow(&h, q);
            let diff = &h - &x;
            acc = m.mul(&acc, &diff);
            steps.push((d, diff));
        }
        let hit = acc.gcd(&f).expect("same field");
        if hit.degree() == 0 {
            continue;
        }
        let mut rest = hit;
        for (dd, diff) in steps {
            if rest.degree() == 0 {
                break;
            }
            let g = diff.rem(&rest).expect("nonzero").gcd(&rest).expect("same field");
            if g.degree() > 0 {
                rest = exact_div(&rest, &g);
                f = exact_div(&f, &g);
                out.push((g, dd));
            }
        }
    }
    if f.degree() > 0 {
        let d = f.degree();
        out.push((f, d));
    }
    out
}

fn random_poly(ctx: &FieldContext, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = ctx.q();
    let coeffs = (0..below).map(|_| Elem(rng.next_u64() % q)).collect();
    Poly::new(ctx, coeffs)
}

/// Cantor–Zassenhaus: f is a product of distinct monic irreducibles of
/// degree d.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    if f.degree() == d {
        return vec![f.clone()];
    }
    let m = Modulus::new(f).expect("degree ≥ 1");
    let one = Poly::one(f.ctx());
    loop {
        let b = &random_splitter(&m, d, rng) - &one;
        let g = b.gcd(f).expect("same field");
        if g.degree() > 0 && g.degree() < f.degree() {
            return split_both(f, &g, d, rng);
        }
    }
}

/// a^{(q^d−1)/2} mod m for a random a, computed as
/// (a·a^q·…·a^{q^{d−1}})^{(q−1)/2}.
fn random_splitter(m: &Modulus, d: usize, rng: &mut ChaCha8Rng) -> Poly {
    let ctx = m.ctx();
    let q = ctx.q() as u128;
    let a = random_poly(ctx, m.degree(), rng);
    let mut norm = a.clone();
    let mut conj = a;
    for _ in 1..d {
        conj = m.pow(&conj, q);
        norm = m.mul(&norm, &conj);
    }
    m.pow(&norm, (q - 1) / 2)
}

fn split_both(f: &Poly, g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let mut out = equal_degree(g, d, rng);
    out.extend(equal_degree(&exact_div(f, g), d, rng));
    out
}
