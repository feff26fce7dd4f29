//! Splitting F(x²) = G(x)·G(−x) with G monic of the same degree as F.
//!
//! Writing G = x⁴ + αx³ + βx² + γx + δ,
//! G(x)·G(−x) = x⁸ + (2β − α²)x⁶ + (β² + 2δ − 2αγ)x⁴ + (2βδ − γ²)x² + δ²,
//! and the quadratic and linear cases are the obvious truncations.

use super::witness::{roots_of, Relation, WitnessSet};
use super::ExplicitError;
use crate::ffield::Elem;
use crate::fpoly::Poly;
use crate::oracle::find_roots;

/// All candidate G for one parent; the caller filters by divisibility.
pub(crate) fn split_square(f: &Poly, stage: u32, ws: &mut WitnessSet) -> Result<Vec<Poly>, ExplicitError> {
    let ctx = f.ctx();
    let int = |v: i64| ctx.from_int(v);
    let c = |i: usize| f.coeff(i);
    let mut out = Vec::new();
    match f.degree() {
        1 => {
            // x² + c₀ = (x − s)(x + s)
            let t = ctx.neg(c(0));
            for s in roots_of(ctx, t) {
                ws.push(format!("r{stage}"), stage, s, Relation::SquareRoot(t));
                out.push(Poly::new(ctx, vec![ctx.neg(s), Elem::ONE]));
            }
        }
        2 => {
            // δ² = B, α² = 2δ − A
            for d in roots_of(ctx, c(0)) {
                ws.push(format!("d{stage}"), stage, d, Relation::SquareRoot(c(0)));
                let t = ctx.sub(ctx.mul(int(2), d), c(1));
                for a in roots_of(ctx, t) {
                    ws.push(format!("a{stage}"), stage, a, Relation::SquareRoot(t));
                    out.push(Poly::new(ctx, vec![d, a, Elem::ONE]));
                }
            }
        }
        4 => {
            let (a_, b_, c_) = (c(3), c(2), c(1));
            for d in roots_of(ctx, c(0)) {
                ws.push(format!("d{stage}"), stage, d, Relation::SquareRoot(c(0)));
                // (β² + 2δ − B)² = 4(2β − A)(2βδ − C)
                let y = Poly::x(ctx);
                let e = ctx.sub(ctx.mul(int(2), d), b_);
                let left = &(&y * &y) + &Poly::constant(ctx, e);
                let u = &y.scale(int(2)) - &Poly::constant(ctx, a_);
                let v = &y.scale(ctx.mul(int(2), d)) - &Poly::constant(ctx, c_);
                let resolvent = &(&left * &left) - &(&u * &v).scale(int(4));
                let mut betas = find_roots(&resolvent)?;
                betas.dedup();
                for b in betas {
                    ws.push(format!("b{stage}"), stage, b, Relation::RootOf(resolvent.clone()));
                    let asq = ctx.sub(ctx.mul(int(2), b), a_);
                    let csq = ctx.sub(ctx.mul(ctx.mul(int(2), b), d), c_);
                    let num = ctx.add(ctx.square(b), e);
                    for a in roots_of(ctx, asq) {
                        ws.push(format!("a{stage}"), stage, a, Relation::SquareRoot(asq));
                        let gammas = if a.is_zero() {
                            roots_of(ctx, csq)
                        } else {
                            let den = ctx.mul(int(2), a);
                            let g = ctx.div(num, den)?;
                            ws.push(format!("c{stage}"), stage, g, Relation::Quotient { dividend: num, divisor: den });
                            vec![g]
                        };
                        for g in gammas {
                            if ctx.square(g) == csq {
                                out.push(Poly::new(ctx, vec![d, g, b, a, Elem::ONE]));
                            }
                        }
                    }
                }
            }
        }
        d => {
            return Err(ExplicitError::WitnessUnsolvable(format!("no square split for degree {d}")));
        }
    }
    Ok(out)
}
