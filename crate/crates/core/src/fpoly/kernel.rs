//! Coefficient-vector kernels. Prime fields with p < 2¹⁶ accumulate products
//! in u64 and reduce once per output slot; p < 2³² uses u128 accumulators;
//! everything else goes through the field context.

use crate::ffield::{Elem, FieldContext};

const KARATSUBA_CUTOFF: usize = 40;
const SPARSE_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kern {
    Small(u64),
    Wide(u64),
    Field,
}

impl Kern {
    pub fn of(ctx: &FieldContext) -> Self {
        match ctx.word_prime() {
            Some(p) if p < 1 << 16 => Kern::Small(p),
            Some(p) => Kern::Wide(p),
            None => Kern::Field,
        }
    }
}

pub(crate) fn trim(v: &mut Vec<Elem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn raw(a: &[Elem]) -> Vec<u64> {
    a.iter().map(|e| e.0).collect()
}

fn wrap(v: Vec<u64>) -> Vec<Elem> {
    v.into_iter().map(Elem).collect()
}

fn nnz(a: &[Elem]) -> usize {
    a.iter().filter(|c| !c.is_zero()).count()
}

pub(crate) fn mul(ctx: &FieldContext, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let kern = Kern::of(ctx);
    let mut out = if nnz(a) <= SPARSE_LIMIT {
        sparse_mul(ctx, kern, a, b)
    } else if nnz(b) <= SPARSE_LIMIT {
        sparse_mul(ctx, kern, b, a)
    } else {
        match kern {
            Kern::Small(p) => wrap(kmul(&raw(a), &raw(b), p)),
            Kern::Wide(p) => wide_mul(a, b, p),
            Kern::Field => field_mul(ctx, a, b),
        }
    };
    trim(&mut out);
    out
}

pub(crate) fn sqr(ctx: &FieldContext, a: &[Elem]) -> Vec<Elem> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = match Kern::of(ctx) {
        Kern::Small(p) => wrap(ksqr(&raw(a), p)),
        _ => return mul(ctx, a, a),
    };
    trim(&mut out);
    out
}

/// Σ coeffs[j]·basis[j], each basis vector at most `width` long.
pub(crate) fn lincomb(ctx: &FieldContext, coeffs: &[Elem], basis: &[Vec<Elem>], width: usize) -> Vec<Elem> {
    let mut out = match Kern::of(ctx) {
        Kern::Small(p) => {
            let mut acc = vec![0u64; width];
            for (c, v) in coeffs.iter().zip(basis) {
                if c.is_zero() {
                    continue;
                }
                for (slot, x) in acc.iter_mut().zip(v) {
                    *slot += c.0 * x.0;
                }
            }
            acc.into_iter().map(|v| Elem(v % p)).collect()
        }
        Kern::Wide(p) => {
            let mut acc = vec![0u128; width];
            for (c, v) in coeffs.iter().zip(basis) {
                if c.is_zero() {
                    continue;
                }
                for (slot, x) in acc.iter_mut().zip(v) {
                    *slot += (c.0 * x.0) as u128;
                }
            }
            acc.into_iter().map(|v| Elem((v % p as u128) as u64)).collect()
        }
        Kern::Field => {
            let mut acc = vec![Elem::ZERO; width];
            for (c, v) in coeffs.iter().zip(basis) {
                if c.is_zero() {
                    continue;
                }
                for (slot, &x) in acc.iter_mut().zip(v) {
                    *slot = ctx.add(*slot, ctx.mul(*c, x));
                }
            }
            acc
        }
    };
    trim(&mut out);
    out
}

fn sparse_mul(ctx: &FieldContext, kern: Kern, sparse: &[Elem], dense: &[Elem]) -> Vec<Elem> {
    let len = sparse.len() + dense.len() - 1;
    let terms = sparse.iter().enumerate().filter(|(_, c)| !c.is_zero());
    match kern {
        Kern::Small(p) | Kern::Wide(p) => {
            let mut acc = vec![0u128; len];
            for (i, c) in terms {
                for (slot, x) in acc[i..].iter_mut().zip(dense) {
                    *slot += c.0 as u128 * x.0 as u128;
                }
            }
            acc.into_iter().map(|v| Elem((v % p as u128) as u64)).collect()
        }
        Kern::Field => {
            let mut acc = vec![Elem::ZERO; len];
            for (i, &c) in terms {
                for (slot, &x) in acc[i..].iter_mut().zip(dense) {
                    *slot = ctx.add(*slot, ctx.mul(c, x));
                }
            }
            acc
        }
    }
}

fn school(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // u32 operands let the u32×u32→u64 multiply vectorize
    let b32: Vec<u32> = b.iter().map(|&y| y as u32).collect();
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u32 as u64;
        for (slot, &y) in acc[i..].iter_mut().zip(&b32) {
            *slot += x * y as u64;
        }
    }
    for v in &mut acc {
        *v %= p;
    }
    acc
}

fn add_into(dst: &mut [u64], src: &[u64], p: u64) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d += s;
        if *d >= p {
            *d -= p;
        }
    }
}

fn sub_from(dst: &mut [u64], src: &[u64], p: u64) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = if *d >= s { *d - s } else { *d + p - s };
    }
}

fn sum(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    add_into(&mut out, short, p);
    out
}

fn kmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return school(a, b, p);
    }
    let m = a.len().max(b.len()) / 2;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    if a.len() <= m || b.len() <= m {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        for (k, chunk) in long.chunks(short.len()).enumerate() {
            let z = kmul(chunk, short, p);
            add_into(&mut out[k * short.len()..], &z, p);
        }
        return out;
    }
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = kmul(a0, b0, p);
    let z2 = kmul(a1, b1, p);
    let mut z1 = kmul(&sum(a0, a1, p), &sum(b0, b1, p), p);
    sub_from(&mut z1, &z0, p);
    sub_from(&mut z1, &z2, p);
    add_into(&mut out, &z0, p);
    add_into(&mut out[m..], &z1, p);
    add_into(&mut out[2 * m..], &z2, p);
    out
}

fn ksqr(a: &[u64], p: u64) -> Vec<u64> {
    if a.len() < KARATSUBA_CUTOFF {
        return school(a, a, p);
    }
    let m = a.len() / 2;
    let (a0, a1) = a.split_at(m);
    let z0 = ksqr(a0, p);
    let z2 = ksqr(a1, p);
    let mut z1 = ksqr(&sum(a0, a1, p), p);
    sub_from(&mut z1, &z0, p);
    sub_from(&mut z1, &z2, p);
    let mut out = vec![0u64; 2 * a.len() - 1];
    add_into(&mut out, &z0, p);
    add_into(&mut out[m..], &z1, p);
    add_into(&mut out[2 * m..], &z2, p);
    out
}

fn wide_mul(a: &[Elem], b: &[Elem], p: u64) -> Vec<Elem> {
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (slot, y) in acc[i..].iter_mut().zip(b) {
            *slot += (x.0 * y.0) as u128;
        }
    }
    acc.into_iter().map(|v| Elem((v % p as u128) as u64)).collect()
}

fn field_mul(ctx: &FieldContext, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut acc = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (slot, &y) in acc[i..].iter_mut().zip(b) {
            *slot = ctx.add(*slot, ctx.mul(x, y));
        }
    }
    acc
}

/// A monic divisor prepared for repeated reduction: only its nonzero
/// lower-order terms are visited, so sparse moduli reduce in O(len·weight).
#[derive(Clone, Debug)]
pub(crate) struct Divisor {
    pub deg: usize,
    /// (j, −g_j) for each nonzero g_j with j < deg.
    terms: Vec<(usize, Elem)>,
    /// −g_j for all j < deg, kept when the divisor is dense enough that a
    /// contiguous row update beats visiting the terms one by one.
    dense: Option<Vec<u32>>,
}

impl Divisor {
    /// `g` must be monic of degree ≥ 0.
    pub fn new(ctx: &FieldContext, g: &[Elem]) -> Self {
        let deg = g.len() - 1;
        let terms = g[..deg]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| (j, ctx.neg(c)))
            .collect::<Vec<_>>();
        let dense = (terms.len() > 16 && terms.len() * 4 > deg)
            .then(|| g[..deg].iter().map(|&c| ctx.neg(c).0 as u32).collect());
        Divisor { deg, terms, dense }
    }

    /// Reduce `a` modulo the divisor, optionally collecting the quotient.
    pub fn divrem(&self, ctx: &FieldContext, mut a: Vec<Elem>, want_quot: bool) -> (Vec<Elem>, Vec<Elem>) {
        let deg = self.deg;
        if a.len() <= deg {
            trim(&mut a);
            return (Vec::new(), a);
        }
        let rows = a.len() - deg;
        let mut quot = if want_quot { vec![Elem::ZERO; rows] } else { Vec::new() };
        match Kern::of(ctx) {
            Kern::Small(p) => {
                let mut r = raw(&a);
                for i in (deg..r.len()).rev() {
                    let c = r[i] % p;
                    r[i] = 0;
                    if c == 0 {
                        continue;
                    }
                    if want_quot {
                        quot[i - deg] = Elem(c);
                    }
                    let base = i - deg;
                    match &self.dense {
                        Some(ng) => {
                            let c = c as u32 as u64;
                            for (slot, &g) in r[base..i].iter_mut().zip(ng) {
                                *slot += c * g as u64;
                            }
                        }
                        None => {
                            for &(j, ng) in &self.terms {
                                r[base + j] += c * ng.0;
                            }
                        }
                    }
                }
                r.truncate(deg);
                a = r.into_iter().map(|v| Elem(v % p)).collect();
            }
            Kern::Wide(p) => {
                let mut r: Vec<u128> = a.iter().map(|e| e.0 as u128).collect();
                let pw = p as u128;
                for i in (deg..r.len()).rev() {
                    let c = (r[i] % pw) as u64;
                    r[i] = 0;
                    if c == 0 {
                        continue;
                    }
                    if want_quot {
                        quot[i - deg] = Elem(c);
                    }
                    let base = i - deg;
                    for &(j, ng) in &self.terms {
                        r[base + j] += (c * ng.0) as u128;
                    }
                }
                r.truncate(deg);
                a = r.into_iter().map(|v| Elem((v % pw) as u64)).collect();
            }
            Kern::Field => {
                for i in (deg..a.len()).rev() {
                    let c = a[i];
                    a[i] = Elem::ZERO;
                    if c.is_zero() {
                        continue;
                    }
                    if want_quot {
                        quot[i - deg] = c;
                    }
                    let base = i - deg;
                    for &(j, ng) in &self.terms {
                        a[base + j] = ctx.add(a[base + j], ctx.mul(c, ng));
                    }
                }
                a.truncate(deg);
            }
        }
        trim(&mut a);
        trim(&mut quot);
        (quot, a)
    }
}

/// x mod p for p < 2¹⁶ via a multiply-high estimate of the quotient.
#[derive(Clone, Copy)]
struct Reducer {
    p: u64,
    m: u64,
}

impl Reducer {
    fn new(p: u64) -> Self {
        Reducer { p, m: u64::MAX / p }
    }

    #[inline(always)]
    fn reduce(self, x: u64) -> u64 {
        let q = ((x as u128 * self.m as u128) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a, p - 2, p)
}

/// Monic gcd over F_p, p < 2¹⁶, Euclid in place on reduced residues.
pub(crate) fn gcd_small(a: &[Elem], b: &[Elem], p: u64) -> Vec<Elem> {
    let red = Reducer::new(p);
    let mut a = raw(a);
    let mut b = raw(b);
    let strip = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    strip(&mut a);
    strip(&mut b);
    while !b.is_empty() {
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        // −b / lead(b), so each row is a[k] += c·nb[k]
        let nb: Vec<u64> = b[..db].iter().map(|&x| red.reduce((p - x) * inv)).collect();
        while a.len() > db {
            let top = a.len() - 1;
            let c = a[top];
            a.pop();
            if c == 0 {
                continue;
            }
            for (slot, &g) in a[top - db..].iter_mut().zip(&nb) {
                *slot = red.reduce(*slot + c * g);
            }
        }
        strip(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for v in a.iter_mut() {
            *v = red.reduce(*v * inv);
        }
    }
    wrap(a)
}

/// Remainder by a dense monic modulus through a precomputed inverse of its
/// reversal: two Karatsuba products instead of a quadratic long division.
/// Only used for small-prime fields, where the fast product exists.
#[derive(Clone, Debug)]
pub(crate) struct Barrett {
    f: Vec<Elem>,
    /// rev(f)⁻¹ mod x^{deg f}
    inv: Vec<Elem>,
}

pub(crate) const BARRETT_MIN_DEGREE: usize = 96;

impl Barrett {
    pub fn new(ctx: &FieldContext, f: &[Elem]) -> Self {
        let d = f.len() - 1;
        let rev: Vec<Elem> = f.iter().rev().copied().collect();
        // Newton: g ← g·(2 − rev·g) mod x^{2k}
        let mut g = vec![Elem::ONE];
        let mut k = 1;
        while k < d {
            k = (2 * k).min(d);
            let mut e = mul(ctx, &rev[..k.min(rev.len())], &g);
            e.truncate(k);
            for c in e.iter_mut() {
                *c = ctx.neg(*c);
            }
            if e.is_empty() {
                e.push(Elem::ZERO);
            }
            e[0] = ctx.add(e[0], ctx.from_int(2));
            g = mul(ctx, &g, &e);
            g.truncate(k);
        }
        Barrett { f: f.to_vec(), inv: g }
    }

    /// `None` when `a` is too long for a single Barrett step.
    pub fn rem(&self, ctx: &FieldContext, a: &[Elem]) -> Option<Vec<Elem>> {
        let d = self.f.len() - 1;
        let n = a.len();
        if n <= d {
            let mut out = a.to_vec();
            trim(&mut out);
            return Some(out);
        }
        let k = n - d;
        if k > d {
            return None;
        }
        let top: Vec<Elem> = a[d..].iter().rev().copied().collect();
        let mut qrev = mul(ctx, &top, &self.inv[..k.min(self.inv.len())]);
        qrev.resize(k, Elem::ZERO);
        let quot: Vec<Elem> = qrev.into_iter().rev().collect();
        let prod = mul(ctx, &quot, &self.f);
        let mut out: Vec<Elem> = (0..d).map(|i| ctx.sub(a[i], prod.get(i).copied().unwrap_or(Elem::ZERO))).collect();
        trim(&mut out);
        Some(out)
    }
}
