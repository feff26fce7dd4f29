use super::{case_params, ExplicitError, ExplicitFactorization, Provenance, WitnessSet, MAX_N};
use crate::arith;
use crate::ffield::FieldContext;
use crate::fpoly::{compose_power, cyclotomic, has_order, FactorMeta};
use crate::oracle::factorize;

/// Factor Q_{2ⁿ·r} by factoring Q_{2^L·r} with the oracle, L = v₂(q^{φ(r)} − 1),
/// and substituting x → x^{2^{n−L}} when n > L.
pub fn lift_general(ctx: &FieldContext, r: u64, n: u32, seed: u64) -> Result<ExplicitFactorization, ExplicitError> {
    if r.is_multiple_of(2) {
        return Err(ExplicitError::EvenR(r));
    }
    if r < 3 {
        return Err(ExplicitError::SmallR(r));
    }
    if n > MAX_N {
        return Err(ExplicitError::NTooLarge(n));
    }
    let params = case_params(ctx, r)?;
    let l = params.l;
    let top = n.min(l);
    let e = r << top;
    let base = factorize(&cyclotomic(ctx, e)?, seed)?.distinct();
    let mut rule = format!("oracle factorization of Q_{e}");
    let mut factors = if n > l {
        let t = 1usize << (n - l);
        for f in &base {
            let m = f.degree() as u64;
            let v = arith::v2_pow_minus_one(ctx.q(), m);
            if !has_order(f, e)? {
                return Err(ExplicitError::LiftConditions(format!("{f} does not have order {e}")));
            }
            if v != l {
                return Err(ExplicitError::LiftConditions(format!("(q^{m} − 1)/{e} is even")));
            }
            if t.is_multiple_of(4) && v < 2 {
                return Err(ExplicitError::LiftConditions(format!("q^{m} ≢ 1 (mod 4)")));
            }
        }
        rule = format!("{rule}, lifted by x → x^{t}");
        base.iter().map(|f| compose_power(f, t)).collect()
    } else {
        base
    };
    factors.sort();
    let meta = FactorMeta::for_cyclotomic(ctx.q(), r << n);
    Ok(ExplicitFactorization {
        ctx: ctx.clone(),
        r,
        n,
        factors,
        meta,
        provenance: Provenance { case: format!("r = {r}, L = {l}"), rule },
        stable_from: l,
        witnesses: WitnessSet::new(ctx)?,
    })
}
