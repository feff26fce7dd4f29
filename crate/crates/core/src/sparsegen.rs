//! Sparse irreducible polynomials of order 2ⁿ·5: the stabilized factors of
//! Q_{2^{n₀}·5} lifted by x → x^{2^{n−n₀}}, which keeps at most five terms.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith;
use crate::explicit::{case_params, factor_explicit, stabilization_index, ExplicitError};
use crate::ffield::FieldContext;
use crate::fpoly::{compose_power, has_order, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparseError {
    #[error("family {family} does not apply to q ≡ {residue} (mod 20)")]
    FamilyResidueMismatch { family: Family, residue: u64 },
    #[error("family {family} needs n ≥ {min}, got {n}")]
    NBelowValidity { family: Family, n: u32, min: u32 },
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("lift of {0} is not certified irreducible")]
    NotIrreducible(String),
    #[error(transparent)]
    Explicit(#[from] ExplicitError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Pick the family matching q.
    Auto,
    /// q ≡ 1: x^{2^{n−L₁}} − wρ.
    Binomial,
    /// q ≡ 9: x^{2^{n−L₁}} + a·x^{2^{n−L₂}} + ρ.
    Trinomial9,
    /// q ≡ 11: x^{2^{n−2}} + cw·x^{2^{n−3}} ∓ w² (when L₂ = 3).
    Trinomial11,
    /// q ≡ 19: x^{2^{n−2}} + a·x^{2^{n−3}} − 1 (when L₂ = 3).
    Trinomial19,
    /// q ≡ 13, 17: quartic templates lifted from stage L₄.
    Pentanomial1317,
    /// q ≡ 3, 7 with p ≠ 3: quartic templates lifted from stage L₄.
    Pentanomial37,
    /// p = 3: x^{2^{n−2}} + a·x^{3·2^{n−4}} + 2 and its three siblings.
    Ternary,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Binomial,
        Family::Trinomial9,
        Family::Trinomial11,
        Family::Trinomial19,
        Family::Pentanomial1317,
        Family::Pentanomial37,
        Family::Ternary,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Auto => "auto",
            Family::Binomial => "binomial-1",
            Family::Trinomial9 => "trinomial-9",
            Family::Trinomial11 => "trinomial-11",
            Family::Trinomial19 => "trinomial-19",
            Family::Pentanomial1317 => "pentanomial-13-17",
            Family::Pentanomial37 => "pentanomial-3-7",
            Family::Ternary => "ternary",
        }
    }

    /// The family serving this field.
    pub fn for_field(ctx: &FieldContext) -> Family {
        match ctx.q() % 20 {
            1 => Family::Binomial,
            9 => Family::Trinomial9,
            11 => Family::Trinomial11,
            19 => Family::Trinomial19,
            13 | 17 => Family::Pentanomial1317,
            _ if ctx.p() == 3 => Family::Ternary,
            _ => Family::Pentanomial37,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        std::iter::once(Family::Auto)
            .chain(Family::ALL)
            .find(|f| f.id() == s)
            .ok_or_else(|| {
                let ids: Vec<_> = std::iter::once("auto").chain(Family::ALL.iter().map(|f| f.id())).collect();
                format!("unknown family {s:?}; expected one of {}", ids.join(", "))
            })
    }
}

/// Every member of the family at this n, sorted canonically.
pub fn generate_sparse(ctx: &FieldContext, n: u32, family: Family) -> Result<Vec<Poly>, SparseError> {
    let native = Family::for_field(ctx);
    let family = if family == Family::Auto { native } else { family };
    if family != native {
        return Err(SparseError::FamilyResidueMismatch { family, residue: ctx.q() % 20 });
    }
    let params = case_params(ctx, 5)?;
    let n0 = stabilization_index(&params);
    let min = if family == Family::Ternary { n0 + 1 } else { n0 };
    if n < min {
        return Err(SparseError::NBelowValidity { family, n, min });
    }
    let base = factor_explicit(ctx, n0)?;
    let e = 5u64 << n0;
    let t = 1usize << (n - n0);
    let mut out = Vec::with_capacity(base.factors.len());
    for f in &base.factors {
        // f has order e and degree m; f(x^t) stays irreducible when t's
        // prime factors divide e but not (q^m − 1)/e, and q^m ≡ 1 (mod 4)
        // if 4 | t.
        let m = f.degree() as u64;
        let v = arith::v2_pow_minus_one(ctx.q(), m);
        let certified = has_order(f, e).unwrap_or(false) && (t == 1 || v == n0) && (!t.is_multiple_of(4) || v >= 2);
        if !certified {
            return Err(SparseError::NotIrreducible(f.to_string()));
        }
        out.push(compose_power(f, t));
    }
    out.sort();
    Ok(out)
}

/// f(0)⁻¹·x^{deg f}·f(1/x).
pub fn reciprocal(f: &Poly) -> Result<Poly, SparseError> {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Err(SparseError::ZeroConstantTerm);
    }
    let ctx = f.ctx();
    let mut coeffs = f.coeffs().to_vec();
    coeffs.reverse();
    let inv = ctx.inv(c0).expect("nonzero");
    Ok(Poly::new(ctx, coeffs).scale(inv))
}

/// deg g for a monic f = x^D + g(x); 0 when g is constant.
pub fn tail_degree(f: &Poly) -> usize {
    let d = f.degree();
    (0..d).rev().find(|&i| !f.coeff(i).is_zero()).unwrap_or(0)
}
