use super::*;
use proptest::prelude::*;

fn f(q: u64) -> FieldContext {
    FieldContext::from_order(q).unwrap()
}

fn p(ctx: &FieldContext, c: &[i64]) -> Poly {
    Poly::from_ints(ctx, c)
}

#[test]
fn arith_examples() {
    let f3 = f(3);
    let g = p(&f3, &[-1, 0, 1]).gcd(&p(&f3, &[0, 1, 1])).unwrap();
    assert_eq!(g, p(&f3, &[1, 1]));

    let f13 = f(13);
    let PolyResult::Pair(q, r) =
        poly_arith(&p(&f13, &[0, 0, 0, 0, 0, 1]), &p(&f13, &[1, 0, 1]), PolyOp::DivRem).unwrap()
    else {
        panic!()
    };
    assert_eq!(q, p(&f13, &[0, -1, 0, 1]));
    assert_eq!(r, p(&f13, &[0, 1]));

    let q5 = p(&f3, &[1, 1, 1, 1, 1]);
    let PolyResult::Poly(x9) = poly_arith(&Poly::x(&f3), &q5, PolyOp::PowMod(9)).unwrap() else {
        panic!()
    };
    assert_eq!(x9, Poly::monomial(&f3, Elem::ONE, 9).rem(&q5).unwrap());
    // x^5 = 1 mod Q5, so x^9 = x^4 = −(1 + x + x² + x³)
    assert_eq!(x9, p(&f3, &[-1, -1, -1, -1]));
}

#[test]
fn arith_errors() {
    let f3 = f(3);
    let f5 = f(5);
    assert_eq!(p(&f3, &[1, 1]).divrem(&Poly::zero(&f3)), Err(PolyError::DivisionByZero));
    assert_eq!(
        poly_arith(&p(&f3, &[1]), &p(&f5, &[1]), PolyOp::Add),
        Err(PolyError::ContextMismatch)
    );
}

#[test]
fn cyclotomic_examples() {
    let f13 = f(13);
    assert_eq!(cyclotomic(&f13, 5).unwrap(), p(&f13, &[1, 1, 1, 1, 1]));
    assert_eq!(cyclotomic(&f13, 20).unwrap(), p(&f13, &[1, 0, -1, 0, 1, 0, -1, 0, 1]));
    assert_eq!(cyclotomic(&f13, 20).unwrap(), compose_power(&cyclotomic(&f13, 10).unwrap(), 2));
    assert_eq!(cyclotomic(&f13, 1).unwrap(), p(&f13, &[-1, 1]));
    assert_eq!(
        cyclotomic(&f(3), 15),
        Err(PolyError::CharacteristicDividesN { n: 15, p: 3 })
    );
}

#[test]
fn transform_examples() {
    let f7 = f(7);
    let q5 = cyclotomic(&f7, 5).unwrap();
    assert_eq!(negate_arg(&q5), p(&f7, &[1, -1, 1, -1, 1]));
    assert_eq!(negate_arg(&q5), cyclotomic(&f7, 10).unwrap());
    assert_eq!(negate_arg(&p(&f7, &[1, 1])), p(&f7, &[1, -1]));
    assert_eq!(negate_arg(&p(&f7, &[4])), p(&f7, &[4]));
    assert_eq!(compose_power(&p(&f7, &[1, 1]), 2), p(&f7, &[1, 0, 1]));
    assert_eq!(compose_power(&q5, 1), q5);
}

#[test]
fn irreducibility_examples() {
    let f3 = f(3);
    assert!(is_irreducible(&p(&f3, &[1, 0, 1])).unwrap());
    assert!(!is_irreducible(&p(&f3, &[-1, 0, 1])).unwrap());
    assert!(is_irreducible(&p(&f(13), &[1, 1, 1, 1, 1])).unwrap());
    assert_eq!(is_irreducible(&p(&f3, &[1, 0, 2])), Err(PolyError::NonMonic));
    assert_eq!(is_irreducible(&p(&f3, &[1])), Err(PolyError::ZeroDegree));
}

#[test]
fn order_examples() {
    let f3 = f(3);
    assert_eq!(poly_order(&p(&f3, &[1, 1, 1, 1, 1])).unwrap(), 5);
    assert_eq!(poly_order(&p(&f(13), &[1, 1])).unwrap(), 2);
    assert_eq!(poly_order(&p(&f3, &[2, 0, 0, 1, 1])).unwrap(), 80);
    assert!(has_order(&p(&f3, &[2, 0, 0, 1, 1]), 80).unwrap());
    assert!(!has_order(&p(&f3, &[2, 0, 0, 1, 1]), 40).unwrap());
    assert_eq!(poly_order(&p(&f3, &[0, 1, 1])), Err(PolyError::ZeroConstantTerm));
    assert_eq!(poly_order(&p(&f3, &[-1, 0, 1])), Err(PolyError::NotIrreducible));
}

#[test]
fn divisor_product_is_binomial() {
    for q in [3u64, 7, 9, 11, 13] {
        let ctx = f(q);
        for n in (1..=200u64).filter(|n| n % ctx.p() != 0) {
            let parts: Vec<Poly> = arith::divisors(n).into_iter().map(|d| cyclotomic(&ctx, d).unwrap()).collect();
            let expect = Poly::from_terms(&ctx, &[(0, ctx.from_int(-1)), (n as usize, Elem::ONE)]);
            assert_eq!(product(&ctx, &parts), expect, "q={q} n={n}");
        }
    }
}

#[test]
fn cyclotomic_identities() {
    for q in [3u64, 13, 49] {
        let ctx = f(q);
        for n in 2..=12u32 {
            let lower = cyclotomic(&ctx, 5 << (n - 1)).unwrap();
            assert_eq!(compose_power(&lower, 2), cyclotomic(&ctx, 5 << n).unwrap());
        }
        for n in (3..=99u64).step_by(2).filter(|n| n % ctx.p() != 0) {
            assert_eq!(negate_arg(&cyclotomic(&ctx, n).unwrap()), cyclotomic(&ctx, 2 * n).unwrap());
        }
    }
}

fn monic_of_degree(ctx: &FieldContext, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = ctx.q();
    (0..q.pow(d as u32)).map(move |mut v| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(Elem(v % q));
            v /= q;
        }
        c.push(Elem::ONE);
        Poly::new(ctx, c)
    })
}

fn brute_irreducible(g: &Poly) -> bool {
    (1..=g.degree() / 2).all(|d| monic_of_degree(g.ctx(), d).all(|t| !g.rem(&t).unwrap().is_zero()))
}

#[test]
fn rabin_matches_trial_division_small() {
    for q in [3u64, 5, 7, 9] {
        let ctx = f(q);
        for d in 1..=4 {
            if q.pow(d as u32) > 3000 {
                continue;
            }
            for g in monic_of_degree(&ctx, d) {
                assert_eq!(is_irreducible(&g).unwrap(), brute_irreducible(&g), "{g:?}");
            }
        }
    }
}

#[test]
fn irreducible_counts_match_gauss_formula() {
    // N_q(d) = (1/d) Σ_{k|d} μ(k) q^{d/k}
    for (q, d) in [(3u64, 5usize), (5, 4), (7, 3), (9, 3)] {
        let ctx = f(q);
        let count = monic_of_degree(&ctx, d).filter(|g| is_irreducible(g).unwrap()).count() as i64;
        let gauss: i64 = arith::divisors(d as u64)
            .into_iter()
            .map(|k| arith::moebius(k) as i64 * (q as i64).pow((d as u64 / k) as u32))
            .sum::<i64>()
            / d as i64;
        assert_eq!(count, gauss, "q={q} d={d}");
    }
}

#[test]
fn frobenius_chain_matches_iteration() {
    let ctx = f(13);
    let g = cyclotomic(&ctx, 5 << 9).unwrap(); // degree 1024, sparse
    let m = Modulus::new(&g).unwrap();
    let mut h = m.x_pow(13);
    for _ in 1..37 {
        h = m.pow(&h, 13);
    }
    assert_eq!(frobenius_power(&m, 37), h);
}

#[test]
fn large_sparse_irreducibles() {
    // x^{2^k} − ρ with ρ of order 4 over F_13: irreducible by the lifting lemma
    let ctx = f(13);
    for k in [5usize, 8, 10] {
        let g = Poly::from_terms(&ctx, &[(0, ctx.from_int(-8)), (1 << k, Elem::ONE)]);
        assert!(is_irreducible(&g).unwrap());
        let bad = Poly::from_terms(&ctx, &[(0, ctx.from_int(-12)), (1 << k, Elem::ONE)]);
        assert!(!is_irreducible(&bad).unwrap());
    }
}

fn small_poly(q: u64, max_deg: usize) -> impl Strategy<Value = (u64, Vec<u64>)> {
    prop::collection::vec(0..q, 1..=max_deg + 1).prop_map(move |v| (q, v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trial_division_agrees_deg6((q, mut c) in prop_oneof![small_poly(3, 5), small_poly(7, 5), small_poly(13, 5)]) {
        let ctx = f(q);
        c.resize(6, 0);
        c.push(1);
        let g = Poly::from_values(&ctx, &c).unwrap();
        prop_assert_eq!(is_irreducible(&g).unwrap(), brute_irreducible(&g));
    }

    #[test]
    fn divrem_reconstructs((q, a) in small_poly(13, 150), (_, b) in small_poly(13, 90)) {
        let ctx = f(q);
        let a = Poly::from_values(&ctx, &a).unwrap();
        let b = Poly::from_values(&ctx, &b).unwrap();
        prop_assume!(!b.is_zero());
        let (qq, r) = a.divrem(&b).unwrap();
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        prop_assert_eq!(&(&qq * &b) + &r, a);
    }

    #[test]
    fn mul_matches_naive((q, a) in small_poly(49, 80), (_, b) in small_poly(49, 80)) {
        let ctx = f(q);
        let pa = Poly::from_values(&ctx, &a).unwrap();
        let pb = Poly::from_values(&ctx, &b).unwrap();
        let mut naive = vec![Elem::ZERO; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                naive[i + j] = ctx.add(naive[i + j], ctx.mul(Elem(x), Elem(y)));
            }
        }
        prop_assert_eq!(&pa * &pb, Poly::new(&ctx, naive));
        prop_assert_eq!(pa.square(), &pa * &pa);
    }

    #[test]
    fn compose_matches_evaluation((q, h) in small_poly(7, 40), (_, g) in small_poly(7, 40)) {
        let ctx = f(q);
        let m = Modulus::new(&cyclotomic(&ctx, 33).unwrap()).unwrap();
        let h = Poly::from_values(&ctx, &h).unwrap();
        let g = Poly::from_values(&ctx, &g).unwrap();
        // Horner in the quotient ring
        let mut want = Poly::zero(&ctx);
        for &c in m.reduce(&h).coeffs().iter().rev() {
            want = &m.mul(&want, &g) + &Poly::constant(&ctx, c);
        }
        prop_assert_eq!(m.compose(&h, &g), m.reduce(&want));
    }

    #[test]
    fn order_divides_group((q, mut c) in prop_oneof![small_poly(3, 4), small_poly(11, 3)]) {
        let ctx = f(q);
        c.push(1);
        let g = Poly::from_values(&ctx, &c).unwrap();
        prop_assume!(g.degree() >= 1 && !g.coeff(0).is_zero() && is_irreducible(&g).unwrap());
        let e = poly_order(&g).unwrap();
        prop_assert_eq!((q as u128).pow(g.degree() as u32 ) % e, 1 % e);
        prop_assert!(Modulus::new(&g).unwrap().x_pow(e).is_one());
    }
}

#[test]
fn barrett_reduction_matches_long_division() {
    let ctx = f(13);
    let mut s = 7u64;
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        Elem((s >> 33) % 13)
    };
    for d in [96usize, 97, 200, 513] {
        let mut c: Vec<Elem> = (0..d).map(|_| next()).collect();
        c.push(Elem::ONE);
        let g = Poly::new(&ctx, c);
        let m = Modulus::new(&g).unwrap();
        assert!(m.barrett.is_some());
        for len in [d / 2, d + 1, 2 * d - 1, 2 * d + 5] {
            let a = Poly::new(&ctx, (0..len).map(|_| next()).collect());
            assert_eq!(m.reduce(&a), a.rem(&g).unwrap(), "d={d} len={len}");
        }
    }
}
