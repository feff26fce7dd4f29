//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 5 includes a claim about reciprocals (deg g ≤ 4) that only
//! holds at n = 4; it is checked as stated and listed in `KNOWN_FAILING`.
//! The run exits nonzero if any other criterion fails, or if a known
//! failure starts passing.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cyclo_cli::{bench_run, cmd_dispatch};
use cyclo_core::explicit::{solve_witness_1317, solve_witness_3mod20, VerificationReport};
use cyclo_core::sparsegen::tail_degree;
use cyclo_core::*;

const KNOWN_FAILING: &[u32] = &[5];

const MATRIX_Q: [u64; 13] = [3, 7, 9, 11, 13, 17, 19, 23, 27, 29, 41, 47, 49];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("took {e:.2?}, limit {limit:?}"))
}

fn field(q: u64) -> FieldContext {
    FieldContext::from_order(q).unwrap()
}

fn basic_checks(rep: &VerificationReport) -> bool {
    rep.product && rep.irreducible && rep.count && rep.degree
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut out = Vec::new();
    let code = cmd_dispatch(["cyclofact", "factor", "--q", "3", "--n", "4"], &mut out, &mut Vec::new());
    let elapsed = t.elapsed();
    ensure(code == 0, || format!("exit code {code}"))?;
    let text = String::from_utf8(out).unwrap();
    let got: BTreeSet<String> = text.lines().skip(1).map(str::to_string).collect();
    ensure(text.lines().count() == 9, || format!("{} lines", text.lines().count()))?;

    // x⁴ + a x³ + 2, x⁴ + a x + 2, x⁴ + a x³ + x² − a x + 2, x⁴ + a x³ − x² − a x + 2, a = ±1
    let mut want = BTreeSet::new();
    for a in [1i64, 2] {
        let na = 3 - a;
        for c in [[2, 0, 0, a, 1], [2, a, 0, 0, 1], [2, na, 1, a, 1], [2, na, 2, a, 1]] {
            let parts: Vec<String> = c.iter().map(i64::to_string).collect();
            want.insert(format!("({})", parts.join(", ")));
        }
    }
    ensure(got == want, || format!("got {got:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("8 quartics, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for q in MATRIX_Q {
        let ctx = field(q);
        for n in 0..=10 {
            let ef = factor_explicit(&ctx, n).map_err(|e| format!("q={q} n={n}: {e}"))?;
            let rep = verify_factorization(&ef);
            ensure(basic_checks(&rep), || format!("q={q} n={n}: {:?}", rep.details))?;
            checked += 1;
        }
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{checked} points, {:.2?}", t.elapsed()))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    for q in MATRIX_Q {
        let ctx = field(q);
        for n in 0..=7 {
            let ef = factor_explicit(&ctx, n).map_err(|e| e.to_string())?;
            let target = cyclotomic(&ctx, 5 << n).map_err(|e| e.to_string())?;
            let mut oracle = factorize(&target, 1 + q * 16 + n as u64).map_err(|e| e.to_string())?.distinct();
            oracle.sort();
            ensure(oracle == ef.factors, || format!("q={q} n={n} differs"))?;
        }
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("{} points, {:.2?}", MATRIX_Q.len() * 8, t.elapsed()))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    for q in MATRIX_Q {
        let ctx = field(q);
        for n in 0..=10 {
            let lifted = lift_general(&ctx, 5, n, 7).map_err(|e| format!("q={q} n={n}: {e}"))?;
            let explicit = factor_explicit(&ctx, n).map_err(|e| e.to_string())?;
            ensure(lifted.factors == explicit.factors, || format!("r=5 q={q} n={n} differs"))?;
        }
    }
    let mut cases = 0;
    for r in [3u64, 7, 9, 11] {
        for q in [7u64, 13, 17, 23] {
            if arith::gcd(2 * r, q) != 1 {
                continue;
            }
            let ctx = field(q);
            let l = case_params(&ctx, r).map_err(|e| e.to_string())?.l;
            for n in l + 1..=l + 4 {
                let ef = lift_general(&ctx, r, n, 7).map_err(|e| format!("q={q} r={r} n={n}: {e}"))?;
                let rep = verify_factorization(&ef);
                ensure(rep.passed(), || format!("q={q} r={r} n={n}: {:?}", rep.details))?;
                cases += 1;
            }
        }
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("r=5 matrix plus {cases} lifted cases, {:.2?}", t.elapsed()))
}

/// One field per residue class mod 20, each with L₄ = 4.
const SPARSE_FIELDS: [u64; 9] = [61, 29, 11, 19, 13, 37, 43, 107, 3];

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut residues = BTreeSet::new();
    let mut emitted = 0;
    let mut tail_violations = Vec::new();
    for q in SPARSE_FIELDS {
        let ctx = field(q);
        let params = case_params(&ctx, 5).map_err(|e| e.to_string())?;
        ensure(params.l4 == 4, || format!("q={q} has L4={}", params.l4))?;
        residues.insert(q % 20);
        let family = Family::for_field(&ctx);
        let min = match generate_sparse(&ctx, 0, family) {
            Err(SparseError::NBelowValidity { min, .. }) => min,
            _ => 0,
        };
        for n in min..=12 {
            let fam = generate_sparse(&ctx, n, family).map_err(|e| format!("q={q} n={n}: {e}"))?;
            for g in &fam {
                let tag = || format!("q={q} n={n} {family}: {g}");
                ensure(g.weight() <= 5, tag)?;
                ensure(g.degree() == 1 << (n.max(2) - 2), tag)?;
                ensure(is_irreducible(g).map_err(|e| e.to_string())?, tag)?;
                ensure(has_order(g, 5 << n).map_err(|e| e.to_string())?, tag)?;
                let r = reciprocal(g).map_err(|e| e.to_string())?;
                ensure(r.is_monic() && r.degree() == g.degree(), tag)?;
                let tail = tail_degree(&r);
                if tail > 4 {
                    tail_violations.push((q, n, tail));
                }
                emitted += 1;
            }
        }
    }
    ensure(residues.len() == 8, || format!("residues {residues:?}"))?;
    within(t, Duration::from_secs(60))?;
    if let Some(&(q, n, tail)) = tail_violations.first() {
        let worst = tail_violations.iter().map(|v| v.2).max().unwrap();
        return Err(format!(
            "{} of {emitted} reciprocals have deg g > 4 (first q={q} n={n} deg g={tail}, worst {worst}); \
             weight, degree, irreducibility and order hold for all",
            tail_violations.len()
        ));
    }
    Ok(format!("{emitted} polynomials, {:.2?}", t.elapsed()))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let primes: Vec<u64> = (7..500).filter(|&q| arith::is_prime(q)).collect();
    let mut counts = [0usize; 3];
    for &q in &primes {
        let ctx = field(q);
        let params = case_params(&ctx, 5).map_err(|e| e.to_string())?;
        let k = params.k;
        match params.residue {
            13 | 17 => {
                let ws = solve_witness_1317(&ctx, &params, &ctx.rho_chain()).map_err(|e| e.to_string())?;
                ensure(!ws.branches.is_empty(), || format!("q={q}: no branches"))?;
                for b in &ws.branches {
                    ensure(b.exclusive(&ctx), || format!("q={q}: {} not exclusive", b.label))?;
                }
                counts[0] += 1;
            }
            3 | 7 => {
                let ws = solve_witness_3mod20(&ctx, &params).map_err(|e| e.to_string())?;
                ensure(!ws.branches.is_empty(), || format!("q={q}: no branches"))?;
                for b in &ws.branches {
                    ensure(b.exclusive(&ctx), || format!("q={q}: {} not exclusive", b.label))?;
                    let want = if params.residue == 3 { k % 2 == 0 } else { k % 2 == 1 };
                    ensure(b.first_square == want, || format!("q={q}: 2 − a₂ square = {}", b.first_square))?;
                }
                counts[1] += 1;
            }
            11 => {
                let sq = ctx.is_square(ctx.from_int(-2)).map_err(|e| e.to_string())?;
                ensure(sq == (k % 2 == 0), || format!("q={q}: −2 square = {sq}, k = {k}"))?;
                counts[2] += 1;
            }
            _ => {}
        }
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!("{}/{}/{} primes in 13·17 / 3·7 / 11, {:.2?}", counts[0], counts[1], counts[2], t.elapsed()))
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let mut summary = Vec::new();
    for q in [3u64, 13] {
        let ctx = field(q);
        let table = bench_run(&ctx, 11, 1).map_err(|e| e.to_string())?;
        print!("{}", table.to_text());
        for row in &table.rows {
            ensure(row.equal != Some(false), || format!("q={q} n={}: oracle disagrees", row.n))?;
            if row.n >= 8 {
                ensure(row.explicit_ms < row.oracle_ms, || {
                    format!("q={q} n={}: explicit {:.3} ms vs oracle {:.3} ms", row.n, row.explicit_ms, row.oracle_ms)
                })?;
            }
        }
        let last = table.rows.last().unwrap();
        summary.push(format!("q={q} ratio at n=11: {:.0}", last.ratio));
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{}, {:.2?}", summary.join(", "), t.elapsed()))
}

fn criterion_8() -> Outcome {
    let mut points = 0;
    for q in MATRIX_Q {
        let ctx = field(q);
        for n in 0..=6 {
            let run = || {
                let mut ef = factor_explicit(&ctx, n).unwrap();
                assert!(verify_factorization(&ef).passed());
                let i = n as usize % ef.factors.len();
                let f = &ef.factors[i];
                let j = (q as usize + n as usize) % f.degree();
                let mut c = f.coeffs().to_vec();
                c[j] = ctx.add(c[j], Elem::ONE);
                ef.factors[i] = Poly::new(&ctx, c);
                verify_factorization(&ef)
            };
            let rep = run();
            ensure(!rep.passed() && !rep.product, || format!("q={q} n={n}: corruption not caught"))?;
            ensure(rep.details.iter().any(|d| d.contains("product mismatch")), || {
                format!("q={q} n={n}: {:?}", rep.details)
            })?;
            ensure(run().details == rep.details, || format!("q={q} n={n}: nondeterministic"))?;
            points += 1;
        }
    }
    Ok(format!("{points} corrupted factorizations rejected"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (id, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let known = KNOWN_FAILING.contains(&id);
        match &outcome {
            Ok(note) => println!("criterion {id}: PASS ({note})"),
            Err(why) if known => println!("criterion {id}: FAIL (known: {why})"),
            Err(why) => println!("criterion {id}: FAIL ({why})"),
        }
        if outcome.is_ok() == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
