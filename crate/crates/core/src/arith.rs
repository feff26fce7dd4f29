//! Machine-word number theory used throughout the crate: valuations,
//! totients, Möbius, multiplicative orders modulo integers.

use num_prime::nt_funcs;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    nt_funcs::is_prime64(n)
}

/// Prime factorization by trial division, ascending primes.
pub fn factor_trial(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factorization of a 128-bit integer, ascending primes.
pub fn factor_u128(n: u128) -> Vec<(u128, u32)> {
    nt_funcs::factorize128(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi: n must be positive");
    factor_trial(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius: n must be positive");
    let f = factor_trial(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor_trial(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// 2-adic valuation; `v2(0)` is reported as 64.
pub fn v2(n: u64) -> u32 {
    n.trailing_zeros()
}

/// v₂(qᵏ − 1), exact as long as the valuation is below 64 (the low bits of
/// qᵏ survive wrapping arithmetic).
pub fn v2_pow_minus_one(q: u64, k: u64) -> u32 {
    v2(q.wrapping_pow(k as u32).wrapping_sub(1))
}

/// Least d ≥ 1 with q^d ≡ 1 (mod n). Requires gcd(q, n) = 1.
pub fn mult_order_mod(q: u64, n: u64) -> u64 {
    assert!(n >= 1);
    if n == 1 {
        return 1;
    }
    assert_eq!(gcd(q % n, n), 1, "q must be a unit modulo n");
    let mut ord = euler_phi(n);
    for (p, _) in factor_trial(ord) {
        while ord.is_multiple_of(p) && pow_mod(q, ord / p, n) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Decompose q as p^m with p prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor_trial(q);
    match f.as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_and_mu() {
        assert_eq!(euler_phi(20), 8);
        assert_eq!(euler_phi(80), 32);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(moebius(10), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(2), -1);
        assert_eq!(moebius(1), 1);
    }

    #[test]
    fn phi_matches_gcd_count() {
        for n in 1..300u64 {
            let brute = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute, "n = {n}");
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(v2_pow_minus_one(13, 1), 2);
        assert_eq!(v2_pow_minus_one(13, 2), 3);
        assert_eq!(v2_pow_minus_one(13, 4), 4);
        assert_eq!(v2_pow_minus_one(3, 4), 4);
        assert_eq!(v2_pow_minus_one(7, 2), 4);
    }

    #[test]
    fn orders_modulo_n() {
        assert_eq!(mult_order_mod(13, 80), 4);
        assert_eq!(mult_order_mod(47, 160), 4);
        assert_eq!(mult_order_mod(3, 10), 4);
        assert_eq!(mult_order_mod(11, 40), 2);
        for n in [5u64, 20, 80, 640] {
            for q in [3u64, 7, 11, 13, 17, 19] {
                let d = mult_order_mod(q, n);
                let brute = (1..=n).find(|&k| pow_mod(q, k, n) == 1).unwrap();
                assert_eq!(d, brute);
            }
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn u128_factoring() {
        let n: u128 = 3u128.pow(64) - 1;
        let f = factor_u128(n);
        let back = f.iter().fold(1u128, |acc, &(p, e)| acc * p.pow(e));
        assert_eq!(back, n);
    }
}
