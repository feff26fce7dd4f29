//! Closed-form factorization of Q_{2ⁿ·5} over F_q, one case per residue of
//! q mod 20, plus the generic lift from Q_{2^L·r} for any odd r.
//!
//! Every residue class is handled as a tower of stages s = 0, 1, …, n₀. At
//! each stage the irreducible factors of Q_{2ˢ·5} are produced either from a
//! closed-form template or by splitting the previous stage's factors F as
//! F(x²) = G(x)·G(−x). Candidates are kept only if they divide Q_{2ˢ·5}, and
//! the stage must come out with exactly φ(2ˢ·5)/d factors. Beyond n₀ every
//! factor f lifts to f(x^{2^{n−n₀}}).

mod lift;
mod split;
mod templates;
mod verify;
mod witness;

use thiserror::Error;

use crate::arith;
use crate::ffield::{FieldContext, FieldError};
use crate::fpoly::{compose_power, FactorMeta, Modulus, Poly, PolyError};
use crate::oracle::OracleError;

pub use lift::lift_general;
pub use verify::{verify_factorization, verify_factorization_with, VerificationReport, VerifyOptions};
pub use witness::{
    solve_witness_1317, solve_witness_3mod20, solve_witness_7mod20_n5, Branch, Relation, Witness, WitnessSet,
};

/// Largest n accepted by the engines; Q_{2ⁿ·r} has degree 2^{n−1}·φ(r).
pub const MAX_N: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplicitError {
    #[error("r must be odd, got {0}")]
    EvenR(u64),
    #[error("r must be at least 3, got {0}")]
    SmallR(u64),
    #[error("characteristic {p} divides r = {r}")]
    CharacteristicDividesR { p: u64, r: u64 },
    #[error("characteristic {0} is not supported")]
    UnsupportedCharacteristic(u64),
    #[error("n = {0} is too large (limit {MAX_N})")]
    NTooLarge(u32),
    #[error("witness equations have no solution: {0}")]
    WitnessUnsolvable(String),
    #[error("lifted factor fails the irreducibility conditions: {0}")]
    LiftConditions(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseParameters {
    pub q: u64,
    pub r: u64,
    /// q mod 20.
    pub residue: u64,
    /// q = 20k + residue.
    pub k: u64,
    pub l1: u32,
    pub l2: u32,
    pub l4: u32,
    /// v₂(q^{φ(r)} − 1).
    pub l: u32,
}

fn v2_halving(mut v: u128) -> u32 {
    let mut e = 0;
    while v.is_multiple_of(2) {
        v /= 2;
        e += 1;
    }
    e
}

/// v₂(qⁱ − 1), computed mod 2^128 so the valuation is exact below 128.
fn v2_power(q: u64, i: u64) -> u32 {
    let v = (q as u128).wrapping_pow(i as u32).wrapping_sub(1);
    v2_halving(v)
}

pub fn case_params(ctx: &FieldContext, r: u64) -> Result<CaseParameters, ExplicitError> {
    if r.is_multiple_of(2) {
        return Err(ExplicitError::EvenR(r));
    }
    if r.is_multiple_of(ctx.p()) {
        return Err(ExplicitError::CharacteristicDividesR { p: ctx.p(), r });
    }
    let q = ctx.q();
    Ok(CaseParameters {
        q,
        r,
        residue: q % 20,
        k: q / 20,
        l1: v2_power(q, 1),
        l2: v2_power(q, 2),
        l4: v2_power(q, 4),
        l: v2_power(q, arith::euler_phi(r)),
    })
}

/// How the factors were obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub case: String,
    pub rule: String,
}

#[derive(Clone, Debug)]
pub struct ExplicitFactorization {
    pub ctx: FieldContext,
    pub r: u64,
    pub n: u32,
    /// Monic, distinct, sorted canonically.
    pub factors: Vec<Poly>,
    pub meta: FactorMeta,
    pub provenance: Provenance,
    /// Stage from which the factors lift by x → x².
    pub stable_from: u32,
    pub witnesses: WitnessSet,
}

impl ExplicitFactorization {
    pub fn degree(&self) -> usize {
        self.factors.first().map_or(0, Poly::degree)
    }
}

/// Stabilization index n₀ of the r = 5 engine.
pub fn stabilization_index(p: &CaseParameters) -> u32 {
    match p.residue {
        1 => p.l1,
        9 => p.l2,
        11 | 19 => p.l2.max(3),
        _ => p.l4,
    }
}

pub fn factor_explicit(ctx: &FieldContext, n: u32) -> Result<ExplicitFactorization, ExplicitError> {
    if ctx.p() == 5 {
        return Err(ExplicitError::UnsupportedCharacteristic(5));
    }
    if n > MAX_N {
        return Err(ExplicitError::NTooLarge(n));
    }
    let params = case_params(ctx, 5)?;
    let n0 = stabilization_index(&params);
    let top = n.min(n0);
    let mut tower = templates::Tower::new(ctx, params)?;
    let mut base = Vec::new();
    let mut rule = String::new();
    for s in 0..=top {
        let (factors, how) = tower.stage(s, &base)?;
        base = factors;
        rule = how;
    }
    let t = 1usize << (n - top);
    let mut factors: Vec<Poly> = base.iter().map(|f| compose_power(f, t)).collect();
    factors.sort();
    if t > 1 {
        rule = format!("{rule} at n = {top}, lifted by x → x^{t}");
    }
    let meta = FactorMeta::for_cyclotomic(ctx.q(), 5 << n);
    if factors.len() as u64 != meta.count {
        return Err(ExplicitError::WitnessUnsolvable(format!(
            "expected {} factors at n = {n}, built {}",
            meta.count,
            factors.len()
        )));
    }
    Ok(ExplicitFactorization {
        ctx: ctx.clone(),
        r: 5,
        n,
        factors,
        meta,
        provenance: Provenance { case: format!("q ≡ {} (mod 20)", params.residue), rule },
        stable_from: n0,
        witnesses: tower.into_witnesses(),
    })
}

/// Whether g divides Q_{2ˢ·5}(x) = Q₅(±x^{2^{s−1}}).
pub(crate) fn divides_q5(g: &Poly, s: u32) -> bool {
    let ctx = g.ctx();
    let m = Modulus::new(g).expect("candidate has positive degree");
    let y = if s == 0 {
        m.x_pow(1)
    } else {
        let y = m.x_pow(1u128 << (s - 1));
        -&y
    };
    // y⁴ + y³ + y² + y + 1 by Horner
    let one = Poly::one(ctx);
    let mut acc = one.clone();
    for _ in 0..4 {
        acc = &m.mul(&acc, &y) + &one;
    }
    m.reduce(&acc).is_zero()
}
