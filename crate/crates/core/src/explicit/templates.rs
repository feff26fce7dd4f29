use super::split::split_square;
use super::witness::{quartic, roots_of, solve_witness_1317, solve_witness_3mod20, solve_witness_7mod20_n5, Branch, Relation, WitnessSet};
use super::{divides_q5, CaseParameters, ExplicitError};
use crate::arith;
use crate::ffield::{Elem, FieldContext, Omega5};
use crate::fpoly::Poly;

/// Q_{2ˢ·5} over F₃ for s ≤ 4, ascending integer coefficients.
fn golden_f3(s: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    match s {
        0 => out.push(vec![1, 1, 1, 1, 1]),
        1 => out.push(vec![1, -1, 1, -1, 1]),
        _ => {
            for a in [1, -1] {
                match s {
                    2 => out.push(vec![1, -a, 0, a, 1]),
                    3 => {
                        out.push(vec![1, 0, 1, a, 1]);
                        out.push(vec![1, a, 1, 0, 1]);
                    }
                    _ => {
                        out.push(vec![2, 0, 0, a, 1]);
                        out.push(vec![2, a, 0, 0, 1]);
                        out.push(vec![2, -a, 1, a, 1]);
                        out.push(vec![2, -a, -1, a, 1]);
                    }
                }
            }
        }
    }
    out
}

pub(crate) struct Tower {
    ctx: FieldContext,
    params: CaseParameters,
    ws: WitnessSet,
}

impl Tower {
    pub(crate) fn new(ctx: &FieldContext, params: CaseParameters) -> Result<Self, ExplicitError> {
        Ok(Tower { ctx: ctx.clone(), params, ws: WitnessSet::new(ctx)? })
    }

    pub(crate) fn into_witnesses(self) -> WitnessSet {
        self.ws
    }

    fn roots5(&self) -> Vec<Elem> {
        match &self.ws.omega {
            Omega5::Roots(v) => v.clone(),
            _ => Vec::new(),
        }
    }

    fn traces(&self) -> Vec<Elem> {
        match &self.ws.omega {
            Omega5::Traces(v) => v.clone(),
            _ => Vec::new(),
        }
    }

    fn rhos(&self, s: u32) -> Vec<Elem> {
        self.ws.rho.primitive(&self.ctx, s as usize)
    }

    /// x⁴ + ρx³ + ρ²x² + ρ³x + ρ⁴ for ρ ∈ Ω(2ˢ).
    fn twists(&mut self, s: u32) -> Vec<Poly> {
        let ctx = self.ctx.clone();
        self.rhos(s)
            .into_iter()
            .map(|r| {
                self.ws.push(format!("rho{s}"), s, r, Relation::PrimitiveRoot(1 << s));
                let r2 = ctx.square(r);
                let r3 = ctx.mul(r2, r);
                quartic(&ctx, [ctx.square(r2), r3, r2, r])
            })
            .collect()
    }

    fn split_all(&mut self, s: u32, prev: &[Poly]) -> Result<Vec<Poly>, ExplicitError> {
        let mut out = Vec::new();
        for f in prev {
            out.extend(split_square(f, s, &mut self.ws)?);
        }
        Ok(out)
    }

    /// Candidates for stage s and a short description of where they came from.
    fn candidates(&mut self, s: u32, prev: &[Poly]) -> Result<(Vec<Poly>, String), ExplicitError> {
        let ctx = self.ctx.clone();
        let p = self.params;
        let lin = |c: Elem| Poly::new(&ctx, vec![c, Elem::ONE]);
        let quad = |c0: Elem, c1: Elem| Poly::new(&ctx, vec![c0, c1, Elem::ONE]);
        let out = match p.residue {
            1 | 11 if s <= p.l1 => {
                let mut v = Vec::new();
                for u in self.roots5() {
                    for r in self.rhos(s) {
                        v.push(lin(ctx.neg(ctx.mul(u, r))));
                    }
                }
                (v, "linear factors x − wρ".to_string())
            }
            11 if s == 2 => (self.roots5().into_iter().map(|w| quad(w, Elem::ZERO)).collect(), "x² + w".into()),
            11 if s == 3 => {
                let mut v = Vec::new();
                let (m2, p2) = (ctx.from_int(-2), ctx.from_int(2));
                self.ws.branches.push(Branch {
                    label: "−2 vs 2".into(),
                    first: m2,
                    second: p2,
                    first_square: ctx.is_square(m2)?,
                });
                for (delta, c2) in [(ctx.from_int(-1), m2), (Elem::ONE, p2)] {
                    for c in roots_of(&ctx, c2) {
                        self.ws.push("c", 3, c, Relation::SquareRoot(c2));
                        for w in self.roots5() {
                            v.push(quad(ctx.mul(delta, ctx.square(w)), ctx.mul(c, w)));
                        }
                    }
                }
                (v, "quadratics x² + cwx ∓ w², c² = ∓2".into())
            }
            9 | 19 if s <= 1 => {
                let mut v = Vec::new();
                for t in self.traces() {
                    self.ws.push("t", s, t, Relation::RootOf(Poly::from_ints(&ctx, &[-1, 1, 1])));
                    let a = if s == 0 { ctx.neg(t) } else { t };
                    v.push(quad(Elem::ONE, a));
                }
                (v, "quadratics x² ∓ (w + w⁻¹)x + 1".into())
            }
            9 if s <= p.l1 => {
                let mut v = Vec::new();
                for r in self.rhos(s) {
                    self.ws.push(format!("rho{s}"), s, r, Relation::PrimitiveRoot(1 << s));
                    for t in self.traces() {
                        v.push(quad(ctx.square(r), ctx.mul(r, t)));
                    }
                }
                (v, "quadratics x² + ρₙ(w + w⁻¹)x + ρₙ₋₁".into())
            }
            9 if s == p.l2 => {
                let mut v = Vec::new();
                let l1 = p.l1;
                for r in self.rhos(l1) {
                    for t in self.traces() {
                        let a1 = ctx.mul(r, t);
                        let target = ctx.sub(ctx.mul(ctx.from_int(2), r), a1);
                        for a in roots_of(&ctx, target) {
                            self.ws.push(format!("a{s}"), s, a, Relation::SquareRoot(target));
                            v.push(quad(r, a));
                        }
                    }
                }
                (v, format!("quadratics x² + a{s}x + ρ{l1}, a{s}² = 2ρ{l1} − a{l1}"))
            }
            19 if s == 2 => {
                let mut v = Vec::new();
                for t in self.traces() {
                    let target = ctx.sub(ctx.from_int(2), t);
                    for a in roots_of(&ctx, target) {
                        self.ws.push("a2", 2, a, Relation::SquareRoot(target));
                        v.push(quad(Elem::ONE, a));
                    }
                }
                (v, "quadratics x² + a₂x + 1, a₂ = ρ₂(w − w⁻¹)".into())
            }
            19 if s == 3 => (self.split_all(s, prev)?, "quadratics x² + a₃x − 1, a₃² = −a₂ − 2".into()),
            13 | 17 | 3 | 7 if s <= 1 && ctx.p() != 3 => (self.twists(s), "ρ-twists of Q₅".into()),
            13 | 17 if s <= p.l1 => (self.twists(s), "ρ-twists of Q₅".into()),
            13 | 17 if s == p.l2 => {
                let mut v = Vec::new();
                let l1 = p.l1;
                for r in self.rhos(l1) {
                    let target = ctx.mul(ctx.from_int(5), r);
                    for a in roots_of(&ctx, target) {
                        self.ws.push(format!("a{s}"), s, a, Relation::SquareRoot(target));
                        v.push(quartic(&ctx, [ctx.square(r), ctx.mul(a, r), ctx.mul(ctx.from_int(3), r), a]));
                    }
                }
                (v, format!("quartics x⁴ + ax³ + 3ρx² + aρx + ρ², a² = 5ρ{l1}"))
            }
            13 | 17 if s == p.l4 => {
                let w = solve_witness_1317(&ctx, &p, &self.ws.rho)?;
                let v = w.candidates.get(&s).cloned().unwrap_or_default();
                self.ws.absorb(w);
                (v, "quartics with a² = (2ρ₂−1)a′ or −(2ρ₂+1)a′".into())
            }
            3 | 7 if s <= 4 && ctx.p() == 3 => {
                let v = golden_f3(s).iter().map(|c| Poly::from_ints(&ctx, c)).collect();
                (v, "fixed table over F₃".into())
            }
            3 | 7 if s <= 4 => {
                if s == 2 {
                    let w = solve_witness_3mod20(&ctx, &p)?;
                    self.ws.absorb(w);
                }
                let v = self.ws.candidates.get(&s).cloned().unwrap_or_default();
                let rule = match s {
                    2 => "quartics with a₂² = −5",
                    3 => "quartics with a₃² = ±2 − a₂",
                    _ => "quartics from b₄ ∈ {α ± a₂} or {β ± 1}",
                };
                (v, rule.into())
            }
            3 | 7 if s == 5 => {
                let mut w4 = WitnessSet::new(&ctx)?;
                w4.candidates.insert(4, prev.to_vec());
                let w = solve_witness_7mod20_n5(&ctx, &p, &w4)?;
                let v = w.candidates.get(&5).cloned().unwrap_or_default();
                self.ws.absorb(w);
                (v, "quartics from the stage-5 resolvent".into())
            }
            _ => (self.split_all(s, prev)?, format!("square split at stage {s}")),
        };
        Ok(out)
    }

    /// The factors of Q_{2ˢ·5}, sorted; `prev` holds stage s − 1.
    pub(crate) fn stage(&mut self, s: u32, prev: &[Poly]) -> Result<(Vec<Poly>, String), ExplicitError> {
        let (mut cands, rule) = self.candidates(s, prev)?;
        let e = 5u64 << s;
        let d = arith::mult_order_mod(self.params.q, e) as usize;
        let want = (arith::euler_phi(e) as usize) / d;
        cands.sort();
        cands.dedup();
        cands.retain(|g| g.degree() == d && divides_q5(g, s));
        if cands.len() != want {
            return Err(ExplicitError::WitnessUnsolvable(format!(
                "stage {s} ({rule}): expected {want} factors of degree {d}, found {}",
                cands.len()
            )));
        }
        self.ws.candidates.insert(s, cands.clone());
        Ok((cands, rule))
    }
}
