//! Rabin's irreducibility test and polynomial orders.

use std::collections::BTreeMap;

use super::{Modulus, Poly, PolyError};
use crate::arith;

/// Below this degree the Frobenius powers are iterated one at a time.
const ITERATE_BELOW: usize = 32;

/// x^{q^k} mod f, k ≥ 1. Doubling uses h_{2j} = h_j ∘ h_j and odd steps
/// apply one more Frobenius.
pub fn frobenius_power(m: &Modulus, k: u64) -> Poly {
    assert!(k >= 1);
    let q = m.ctx().q() as u128;
    let h1 = m.x_pow(q);
    let mut h = h1.clone();
    for i in (0..63 - k.leading_zeros()).rev() {
        h = m.compose(&h, &h);
        if (k >> i) & 1 == 1 {
            h = m.pow(&h, q);
        }
    }
    h
}

fn frobenius_table(m: &Modulus, ks: &[u64]) -> BTreeMap<u64, Poly> {
    let mut out = BTreeMap::new();
    if (m.degree()) < ITERATE_BELOW {
        let q = m.ctx().q() as u128;
        let top = *ks.iter().max().unwrap();
        let mut h = m.x_pow(q);
        for k in 1..=top {
            if ks.contains(&k) {
                out.insert(k, h.clone());
            }
            if k < top {
                h = m.pow(&h, q);
            }
        }
    } else {
        for &k in ks {
            out.insert(k, frobenius_power(m, k));
        }
    }
    out
}

/// Deterministic test: f | x^{q^d} − x and gcd(x^{q^{d/ℓ}} − x, f) = 1
/// for every prime ℓ | d.
pub fn is_irreducible(f: &Poly) -> Result<bool, PolyError> {
    if f.is_zero() || f.degree() == 0 {
        return Err(PolyError::ZeroDegree);
    }
    if !f.is_monic() {
        return Err(PolyError::NonMonic);
    }
    let d = f.degree() as u64;
    if d == 1 {
        return Ok(true);
    }
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    let ctx = f.ctx();
    let m = Modulus::new(f)?;
    let x = Poly::x(ctx);
    let primes: Vec<u64> = arith::factor_trial(d).into_iter().map(|(l, _)| l).collect();
    let mut ks: Vec<u64> = primes.iter().map(|l| d / l).collect();
    ks.push(d);
    let table = frobenius_table(&m, &ks);
    if table[&d] != x {
        return Ok(false);
    }
    for l in primes {
        let h = &table[&(d / l)] - &x;
        if h.is_zero() || h.gcd(f)?.degree() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether f | x^e − 1 with e minimal; exact for any f with f(0) ≠ 0.
pub fn has_order(f: &Poly, e: u64) -> Result<bool, PolyError> {
    if f.coeff(0).is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    let m = Modulus::new(f)?;
    let one = m.reduce(&Poly::one(f.ctx()));
    if m.x_pow(e as u128) != one {
        return Ok(false);
    }
    for (l, _) in arith::factor_trial(e) {
        if m.x_pow((e / l) as u128) == one {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least e with f | x^e − 1, for monic irreducible f with f(0) ≠ 0.
pub fn poly_order(f: &Poly) -> Result<u128, PolyError> {
    if f.is_zero() || f.degree() == 0 {
        return Err(PolyError::ZeroDegree);
    }
    if f.coeff(0).is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    if !is_irreducible(&f.monic())? {
        return Err(PolyError::NotIrreducible);
    }
    let q = f.ctx().q() as u128;
    let d = f.degree() as u32;
    let group = q.checked_pow(d).ok_or(PolyError::OrderOverflow)? - 1;
    let m = Modulus::new(f)?;
    let one = m.reduce(&Poly::one(f.ctx()));
    let mut ord = group;
    for l in group_primes(q, d as u64) {
        while ord % l == 0 && m.x_pow(ord / l) == one {
            ord /= l;
        }
    }
    Ok(ord)
}

/// Primes dividing q^d − 1, found by factoring each Φ_k(q), k | d,
/// separately; the pieces are far smaller than q^d − 1 itself.
fn group_primes(q: u128, d: u64) -> Vec<u128> {
    let mut phi_vals: BTreeMap<u64, u128> = BTreeMap::new();
    let mut primes = Vec::new();
    for k in arith::divisors(d) {
        let mut v = q.pow(k as u32) - 1;
        for (&j, &pj) in &phi_vals {
            if k % j == 0 {
                v /= pj;
            }
        }
        phi_vals.insert(k, v);
        primes.extend(arith::factor_u128(v).into_iter().map(|(l, _)| l));
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}
