//! Square-class dichotomies behind the case split, checked exhaustively
//! over the primes below 500.

use cyclo_core::explicit::{solve_witness_1317, solve_witness_3mod20, solve_witness_7mod20_n5};
use cyclo_core::*;

fn primes_with_residue(res: &[u64]) -> Vec<u64> {
    (7..500).filter(|&q| arith::is_prime(q) && res.contains(&(q % 20))).collect()
}

#[test]
fn residues_13_17_exactly_one_square() {
    let qs = primes_with_residue(&[13, 17]);
    assert!(qs.len() > 15);
    for q in qs {
        let ctx = FieldContext::prime(q).unwrap();
        let params = case_params(&ctx, 5).unwrap();
        let ws = solve_witness_1317(&ctx, &params, &ctx.rho_chain()).unwrap();
        assert!(!ws.branches.is_empty());
        for b in &ws.branches {
            assert!(b.exclusive(&ctx), "q={q}: {b:?}");
        }
        assert!(ws.violations(&ctx).is_empty());
    }
}

#[test]
fn residues_3_7_exactly_one_square_and_parity() {
    for q in primes_with_residue(&[3, 7]) {
        let ctx = FieldContext::prime(q).unwrap();
        let params = case_params(&ctx, 5).unwrap();
        let ws = solve_witness_3mod20(&ctx, &params).unwrap();
        assert_eq!(ws.branches.len(), 2);
        for b in &ws.branches {
            assert!(b.exclusive(&ctx), "q={q}");
            // q = 20k + 3: k even iff 2 − a₂ is a square; q = 20k + 7: k odd iff it is
            let k_even = params.k.is_multiple_of(2);
            let expect = if params.residue == 3 { k_even } else { !k_even };
            assert_eq!(b.first_square, expect, "q={q}");
        }
        assert!(ws.violations(&ctx).is_empty());
    }
}

#[test]
fn residue_11_minus_two_square_iff_k_even() {
    for q in primes_with_residue(&[11]) {
        let ctx = FieldContext::prime(q).unwrap();
        let k = q / 20;
        assert_eq!(ctx.is_square(ctx.from_int(-2)).unwrap(), k % 2 == 0, "q={q}");
        assert_ne!(ctx.is_square(ctx.from_int(-2)).unwrap(), ctx.is_square(ctx.from_int(2)).unwrap());
    }
}

#[test]
fn stage5_resolvent_has_roots_for_even_k() {
    for q in [7u64, 47, 127] {
        let ctx = FieldContext::prime(q).unwrap();
        let params = case_params(&ctx, 5).unwrap();
        assert_eq!((params.residue, params.k % 2), (7, 0));
        let mut w4 = solve_witness_3mod20(&ctx, &params).unwrap();
        w4.candidates.insert(4, factor_explicit(&ctx, 4).unwrap().factors);
        let w5 = solve_witness_7mod20_n5(&ctx, &params, &w4).unwrap();
        assert!(!w5.values("b5").is_empty(), "q={q}");
        assert!(w5.violations(&ctx).is_empty());
        let ef = factor_explicit(&ctx, 5).unwrap();
        assert_eq!((ef.factors.len(), ef.degree()), (16, 4));
    }
    // k odd: stage 5 is already a pure lift
    let ctx = FieldContext::prime(67).unwrap();
    let params = case_params(&ctx, 5).unwrap();
    assert_eq!(params.l4, 4);
    assert_eq!(factor_explicit(&ctx, 5).unwrap().degree(), 8);
}
