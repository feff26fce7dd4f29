use super::ExplicitFactorization;
use crate::fpoly::{cyclotomic, has_order, is_irreducible, product, FactorMeta};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Skip the order check when factors exceed this degree.
    pub order_degree_limit: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { order_degree_limit: Some(1 << 12) }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub product: bool,
    pub irreducible: bool,
    pub count: bool,
    pub degree: bool,
    /// `None` when skipped.
    pub order: Option<bool>,
    pub details: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.product && self.irreducible && self.count && self.degree && self.order != Some(false)
    }
}

pub fn verify_factorization(ef: &ExplicitFactorization) -> VerificationReport {
    verify_factorization_with(ef, VerifyOptions::default())
}

pub fn verify_factorization_with(ef: &ExplicitFactorization, opts: VerifyOptions) -> VerificationReport {
    let ctx = &ef.ctx;
    let e = ef.r << ef.n;
    let mut rep = VerificationReport::default();

    match cyclotomic(ctx, e) {
        Ok(target) => {
            let got = product(ctx, &ef.factors);
            rep.product = got == target;
            if !rep.product {
                rep.details.push(format!("product mismatch: factors multiply to a degree-{} polynomial different from Q_{e}", got.degree()));
            }
        }
        Err(err) => rep.details.push(format!("cannot build Q_{e}: {err}")),
    }

    rep.irreducible = true;
    for (i, f) in ef.factors.iter().enumerate() {
        let ok = f.is_monic() && is_irreducible(f).unwrap_or(false);
        if !ok {
            rep.irreducible = false;
            rep.details.push(format!("factor {i} ({f}) is not a monic irreducible"));
        }
    }

    let meta = FactorMeta::for_cyclotomic(ctx.q(), e);
    let mut sorted = ef.factors.clone();
    sorted.sort();
    sorted.dedup();
    rep.count = ef.factors.len() as u64 == meta.count && sorted.len() == ef.factors.len();
    if !rep.count {
        rep.details.push(format!(
            "count mismatch: expected {} distinct factors, got {} ({} distinct)",
            meta.count,
            ef.factors.len(),
            sorted.len()
        ));
    }
    rep.degree = ef.factors.iter().all(|f| f.degree() as u64 == meta.degree);
    if !rep.degree {
        rep.details.push(format!("degree mismatch: every factor should have degree {}", meta.degree));
    }

    let max_deg = ef.factors.iter().map(|f| f.degree()).max().unwrap_or(0);
    if opts.order_degree_limit.is_none_or(|lim| max_deg <= lim) {
        let ok = ef.factors.iter().all(|f| has_order(f, e).unwrap_or(false));
        if !ok {
            rep.details.push(format!("order mismatch: some factor does not have order {e}"));
        }
        rep.order = Some(ok);
    }
    rep
}
