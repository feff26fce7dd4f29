use std::collections::BTreeMap;

use super::{split, CaseParameters, ExplicitError};
use crate::ffield::{Elem, FieldContext, Omega5, RhoChain};
use crate::fpoly::Poly;

/// The equation a witness value was solved from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// value² = target.
    SquareRoot(Elem),
    /// value · divisor = dividend.
    Quotient { dividend: Elem, divisor: Elem },
    /// f(value) = 0.
    RootOf(Poly),
    /// value has exactly this multiplicative order.
    PrimitiveRoot(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub symbol: String,
    pub stage: u32,
    pub value: Elem,
    pub relation: Relation,
}

impl Witness {
    pub fn holds(&self, ctx: &FieldContext) -> bool {
        let v = self.value;
        match &self.relation {
            Relation::SquareRoot(t) => ctx.square(v) == *t,
            Relation::Quotient { dividend, divisor } => ctx.mul(v, *divisor) == *dividend && !divisor.is_zero(),
            Relation::RootOf(f) => f.eval(v).is_zero(),
            Relation::PrimitiveRoot(k) => !v.is_zero() && ctx.mult_order(v) == Ok(*k),
        }
    }
}

/// A square-class dichotomy: exactly one of `first`, `second` should be a
/// square, and `first_square` records which.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub label: String,
    pub first: Elem,
    pub second: Elem,
    pub first_square: bool,
}

impl Branch {
    fn new(ctx: &FieldContext, label: impl Into<String>, first: Elem, second: Elem) -> Self {
        Branch { label: label.into(), first, second, first_square: is_sq(ctx, first) }
    }

    /// The recorded flag is right and the two classes differ.
    pub fn exclusive(&self, ctx: &FieldContext) -> bool {
        let a = is_sq(ctx, self.first);
        let b = is_sq(ctx, self.second);
        a != b && a == self.first_square
    }
}

fn is_sq(ctx: &FieldContext, a: Elem) -> bool {
    a.is_zero() || ctx.is_square(a).unwrap_or(false)
}

#[derive(Clone, Debug)]
pub struct WitnessSet {
    pub rho: RhoChain,
    pub omega: Omega5,
    pub witnesses: Vec<Witness>,
    pub branches: Vec<Branch>,
    /// Template instances per stage. Once the engine has filtered a stage,
    /// its entry holds the surviving factors.
    pub candidates: BTreeMap<u32, Vec<Poly>>,
}

impl WitnessSet {
    pub fn new(ctx: &FieldContext) -> Result<Self, ExplicitError> {
        Ok(WitnessSet {
            rho: ctx.rho_chain(),
            omega: ctx.omega5().unwrap_or(Omega5::Empty),
            witnesses: Vec::new(),
            branches: Vec::new(),
            candidates: BTreeMap::new(),
        })
    }

    pub(crate) fn push(&mut self, symbol: impl Into<String>, stage: u32, value: Elem, relation: Relation) {
        self.witnesses.push(Witness { symbol: symbol.into(), stage, value, relation });
    }

    pub(crate) fn candidate(&mut self, stage: u32, f: Poly) {
        self.candidates.entry(stage).or_default().push(f);
    }

    pub(crate) fn absorb(&mut self, other: WitnessSet) {
        self.witnesses.extend(other.witnesses);
        self.branches.extend(other.branches);
        for (s, fs) in other.candidates {
            self.candidates.entry(s).or_default().extend(fs);
        }
    }

    /// Values recorded under `symbol`, in solving order.
    pub fn values(&self, symbol: &str) -> Vec<Elem> {
        self.witnesses.iter().filter(|w| w.symbol == symbol).map(|w| w.value).collect()
    }

    /// Human-readable descriptions of every witness or branch that fails
    /// its defining relation.
    pub fn violations(&self, ctx: &FieldContext) -> Vec<String> {
        let mut out: Vec<String> = self
            .witnesses
            .iter()
            .filter(|w| !w.holds(ctx))
            .map(|w| format!("{} = {} violates {:?}", w.symbol, w.value, w.relation))
            .collect();
        out.extend(
            self.branches
                .iter()
                .filter(|b| !b.exclusive(ctx))
                .map(|b| format!("branch {} is not exclusive", b.label)),
        );
        out
    }
}

pub(crate) fn quartic(ctx: &FieldContext, c: [Elem; 4]) -> Poly {
    Poly::new(ctx, vec![c[0], c[1], c[2], c[3], Elem::ONE])
}

pub(crate) fn roots_of(ctx: &FieldContext, a: Elem) -> Vec<Elem> {
    match ctx.sqrt_opt(a) {
        Some((x, y)) if x == y => vec![x],
        Some((x, y)) => vec![x, y],
        None => Vec::new(),
    }
}

fn unsolvable(msg: impl Into<String>) -> ExplicitError {
    ExplicitError::WitnessUnsolvable(msg.into())
}

/// q ≡ 13, 17 (mod 20): the quartics of Q_{2^{L₄}·5}.
///
/// For each ρ ∈ Ω(2^{L₁}) and a with a² = 5ρ, exactly one of (2ρ₂−1)a and
/// −(2ρ₂+1)a is a square; its roots α give
/// x⁴ + αx³ ± aρ₂x² − 5ρα⁻¹x − ρ. Both ρ₂ ∈ Ω(4) are tried.
pub fn solve_witness_1317(
    ctx: &FieldContext,
    params: &CaseParameters,
    rho: &RhoChain,
) -> Result<WitnessSet, ExplicitError> {
    if !matches!(params.residue, 13 | 17) {
        return Err(unsolvable(format!("residue {} is not 13 or 17", params.residue)));
    }
    let mut ws = WitnessSet::new(ctx)?;
    let (l1, l2, l4) = (params.l1, params.l2, params.l4);
    let two = ctx.from_int(2);
    let five = ctx.from_int(5);
    for r in rho.primitive(ctx, l1 as usize) {
        ws.push(format!("rho{l1}"), l4, r, Relation::PrimitiveRoot(1 << l1));
        let target = ctx.mul(five, r);
        let a_roots = roots_of(ctx, target);
        if a_roots.is_empty() {
            return Err(unsolvable(format!("5ρ{l1} is not a square")));
        }
        for a in a_roots {
            ws.push(format!("a{l2}"), l4, a, Relation::SquareRoot(target));
            for r2 in rho.primitive(ctx, 2) {
                let u = ctx.mul(ctx.sub(ctx.mul(two, r2), Elem::ONE), a);
                let v = ctx.neg(ctx.mul(ctx.add(ctx.mul(two, r2), Elem::ONE), a));
                let branch = Branch::new(ctx, format!("(2ρ₂−1)a{l2} vs −(2ρ₂+1)a{l2}"), u, v);
                let (sq, beta) = if branch.first_square {
                    (u, ctx.mul(a, r2))
                } else {
                    (v, ctx.neg(ctx.mul(a, r2)))
                };
                ws.branches.push(branch);
                let num = ctx.neg(ctx.mul(five, r));
                for alpha in roots_of(ctx, sq) {
                    if alpha.is_zero() {
                        continue;
                    }
                    ws.push(format!("a{l4}"), l4, alpha, Relation::SquareRoot(sq));
                    let gamma = ctx.div(num, alpha)?;
                    ws.push(format!("c{l4}"), l4, gamma, Relation::Quotient { dividend: num, divisor: alpha });
                    ws.candidate(l4, quartic(ctx, [ctx.neg(r), gamma, beta, alpha]));
                }
            }
        }
    }
    Ok(ws)
}

/// q ≡ 3, 7 (mod 20), p ≠ 3: the quartic templates at stages 2, 3 and 4.
///
/// a₂² = −5; b₃ = 1 with a₃² = 2 − a₂ when 2 − a₂ is a square, otherwise
/// b₃ = −1 with a₃² = −2 − a₂; c₃ = 3a₃⁻¹. At stage 4 the first branch uses
/// α² = −2, b₄ ∈ {α ± a₂}, c₄ = (b₄² − 3)(2a₄)⁻¹ and constant −1; the second
/// uses β² = 2, b₄ ∈ {β ± 1}, c₄ = (b₄² + 3)(2a₄)⁻¹ and constant +1. In both
/// a₄² = 2b₄ − a₃, and c₄² must equal ∓2b₄ − c₃.
pub fn solve_witness_3mod20(ctx: &FieldContext, params: &CaseParameters) -> Result<WitnessSet, ExplicitError> {
    if !matches!(params.residue, 3 | 7) {
        return Err(unsolvable(format!("residue {} is not 3 or 7", params.residue)));
    }
    if ctx.p() == 3 {
        return Err(unsolvable("characteristic 3 is served by the fixed table"));
    }
    let mut ws = WitnessSet::new(ctx)?;
    let int = |v: i64| ctx.from_int(v);
    let minus5 = int(-5);
    let a2s = roots_of(ctx, minus5);
    if a2s.is_empty() {
        return Err(unsolvable("−5 is not a square"));
    }
    for &a2 in &a2s {
        ws.push("a2", 2, a2, Relation::SquareRoot(minus5));
        ws.candidate(2, quartic(ctx, [Elem::ONE, ctx.neg(a2), int(-3), a2]));

        let plus = ctx.sub(int(2), a2);
        let minus = ctx.sub(int(-2), a2);
        let branch = Branch::new(ctx, "2 − a2 vs −2 − a2", plus, minus);
        let first = branch.first_square;
        ws.branches.push(branch);
        let (b3, a3sq) = if first { (Elem::ONE, plus) } else { (int(-1), minus) };
        let a3s = roots_of(ctx, a3sq);
        if a3s.is_empty() {
            return Err(unsolvable("neither 2 − a2 nor −2 − a2 is a square"));
        }
        for a3 in a3s {
            ws.push("a3", 3, a3, Relation::SquareRoot(a3sq));
            let c3 = ctx.div(int(3), a3)?;
            ws.push("c3", 3, c3, Relation::Quotient { dividend: int(3), divisor: a3 });
            ws.candidate(3, quartic(ctx, [Elem::ONE, c3, b3, a3]));

            // stage 4
            let (root_sq, delta, shift) = if first { (int(-2), int(-1), int(-3)) } else { (int(2), Elem::ONE, int(3)) };
            let aux = roots_of(ctx, root_sq);
            if aux.is_empty() {
                return Err(unsolvable(if first { "−2 is not a square" } else { "2 is not a square" }));
            }
            let sym = if first { "alpha" } else { "beta" };
            let off = if first { a2 } else { Elem::ONE };
            let mut b4s = Vec::new();
            for &s in &aux {
                ws.push(sym, 4, s, Relation::SquareRoot(root_sq));
                // (b₄ − s)² = off²
                let rel = Poly::new(ctx, vec![ctx.sub(ctx.square(s), ctx.square(off)), ctx.mul(int(-2), s), Elem::ONE]);
                b4s.push((ctx.add(s, off), rel.clone()));
                b4s.push((ctx.sub(s, off), rel));
            }
            let two_delta = ctx.mul(int(2), delta);
            for (b4, rel) in b4s {
                let a4sq = ctx.sub(ctx.mul(int(2), b4), a3);
                let c4sq = ctx.sub(ctx.mul(two_delta, b4), c3);
                let num = ctx.add(ctx.square(b4), shift);
                for a4 in roots_of(ctx, a4sq) {
                    if a4.is_zero() {
                        // 2a₄c₄ = b₄² ∓ 3 degenerates; c₄ is pinned by c₄² alone
                        if num.is_zero() {
                            ws.push("b4", 4, b4, Relation::RootOf(rel.clone()));
                            for c4 in roots_of(ctx, c4sq) {
                                ws.push("c4", 4, c4, Relation::SquareRoot(c4sq));
                                ws.candidate(4, quartic(ctx, [delta, c4, b4, a4]));
                            }
                        }
                        continue;
                    }
                    let den = ctx.mul(int(2), a4);
                    let c4 = ctx.div(num, den)?;
                    if ctx.square(c4) != c4sq {
                        continue;
                    }
                    ws.push("b4", 4, b4, Relation::RootOf(rel.clone()));
                    ws.push("a4", 4, a4, Relation::SquareRoot(a4sq));
                    ws.push("c4", 4, c4, Relation::Quotient { dividend: num, divisor: den });
                    ws.push("c4", 4, c4, Relation::SquareRoot(c4sq));
                    ws.candidate(4, quartic(ctx, [delta, c4, b4, a4]));
                }
            }
        }
    }
    Ok(ws)
}

/// Stage-5 quartics for q ≡ 3 (mod 4), q ≡ ±2 (mod 5) with L₄ ≥ 5: each
/// stage-4 factor x⁴ + a₄x³ + b₄x² + c₄x ± 1 splits as G(x)·G(−x) after
/// x → x², where b₅ is a root of the resolvent quartic in F_q.
///
/// `w4` must carry the filtered stage-4 factors under `candidates[4]`.
pub fn solve_witness_7mod20_n5(
    ctx: &FieldContext,
    params: &CaseParameters,
    w4: &WitnessSet,
) -> Result<WitnessSet, ExplicitError> {
    if !matches!(params.residue, 3 | 7) || params.l4 < 5 {
        return Err(unsolvable(format!(
            "no quartic stage 5 for residue {} with L4 = {}",
            params.residue, params.l4
        )));
    }
    let parents = w4.candidates.get(&4).ok_or_else(|| unsolvable("stage-4 factors missing"))?;
    let mut ws = WitnessSet::new(ctx)?;
    for f in parents {
        for g in split::split_square(f, 5, &mut ws)? {
            ws.candidate(5, g);
        }
    }
    Ok(ws)
}
