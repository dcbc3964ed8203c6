//! The bound `M` and the search for prime pairs `(p, t)` with `p = 1 mod n`
//! and `t` of multiplicative order `n` modulo `p`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{
    factor_u64, is_prime, is_prime_u64, pow_mod, prime_divisors_u64, PRIMALITY_POLICY,
};

/// Largest `n` for which `n^4 (n+2)!` is evaluated.
pub const MAX_BOUND_N: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundInputs {
    pub n: u64,
    /// Bound on the tame inertia weights.
    pub k: u64,
    /// Auxiliary conductor bound.
    pub cond: u64,
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// For `n = 2^f`, the primes dividing `2 * prod_{i=1}^{f} (2^{2i} - 1)`.
/// Empty when `n` is not a power of two.
pub fn power_of_two_clause_primes(n: u64) -> Vec<u64> {
    if n < 2 || !n.is_power_of_two() {
        return Vec::new();
    }
    let f = n.trailing_zeros() as u64;
    let mut primes = vec![2u64];
    for i in 1..=f {
        // 2^{2i} - 1 = (2^i - 1)(2^i + 1), each factor below 2^64 for i < 64.
        for part in [(1u64 << i) - 1, (1u64 << i) + 1] {
            primes.extend(prime_divisors_u64(part));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}

/// Smallest integer exceeding `n^4 (n+2)!`, `N`, `k n! + 1` and, when `n` is
/// a power of two, every clause prime.
pub fn compute_m(inputs: BoundInputs) -> Result<BigUint> {
    let BoundInputs { n, k, cond } = inputs;
    if n < 2 || n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "n must be even and >= 2, got {n}"
        )));
    }
    if k == 0 || cond == 0 {
        return Err(Error::Precondition("k and N must be positive".into()));
    }
    if n > MAX_BOUND_N {
        return Err(Error::Precondition(format!(
            "n = {n} is too large to evaluate (n+2)! exactly; limit is {MAX_BOUND_N}"
        )));
    }
    let n_big = BigUint::from(n);
    let main = n_big.pow(4) * factorial(n + 2);
    let inertia = BigUint::from(k) * factorial(n) + 1u32;
    let mut largest = main.max(inertia).max(BigUint::from(cond));
    if let Some(&p) = power_of_two_clause_primes(n).last() {
        largest = largest.max(BigUint::from(p));
    }
    Ok(largest + 1u32)
}

/// Least `d >= 1` with `t^d = 1 mod p`, found by factoring `p - 1` and
/// stripping prime factors while the power stays 1.
pub fn multiplicative_order(t: u64, p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if t.is_multiple_of(p) {
        return Err(Error::NotCoprime { t, p });
    }
    let mut d = p - 1;
    for (q, _) in factor_u64(p - 1) {
        while d.is_multiple_of(q) && pow_mod(t, d / q, p) == 1 {
            d /= q;
        }
    }
    Ok(d)
}

/// `x` has order exactly `n` modulo `p`, given the prime divisors of `n`.
fn has_order(x: &BigUint, n: u64, n_primes: &[u64], p: &BigUint) -> bool {
    let one = BigUint::one();
    x.modpow(&BigUint::from(n), p) == one
        && n_primes
            .iter()
            .all(|&q| x.modpow(&BigUint::from(n / q), p) != one)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairChecks {
    pub p_prime: bool,
    pub t_prime: bool,
    pub distinct_odd: bool,
    pub p_congruent_one_mod_n: bool,
    pub p_above_m: bool,
    pub t_above_m: bool,
    pub order_is_n: bool,
    pub half_power_is_minus_one: bool,
    /// Complete splitting of `t` in the compositum of all small-degree fields
    /// is not finitely checkable.
    pub l0_splitting: &'static str,
}

impl PairChecks {
    pub fn evaluate(p: &BigUint, t: &BigUint, n: u64, m: &BigUint) -> Self {
        let one = BigUint::one();
        let n_primes = prime_divisors_u64(n);
        let t_mod = t % p;
        PairChecks {
            p_prime: is_prime(p),
            t_prime: is_prime(t),
            distinct_odd: p != t && p.is_odd() && t.is_odd(),
            p_congruent_one_mod_n: (p % n) == one,
            p_above_m: p > m,
            t_above_m: t > m,
            order_is_n: !t_mod.is_zero() && has_order(&t_mod, n, &n_primes, p),
            half_power_is_minus_one: t.modpow(&BigUint::from(n / 2), p) == p - &one,
            l0_splitting: "not checked",
        }
    }

    pub fn all_checked_pass(&self) -> bool {
        self.p_prime
            && self.t_prime
            && self.distinct_odd
            && self.p_congruent_one_mod_n
            && self.p_above_m
            && self.t_above_m
            && self.order_is_n
            && self.half_power_is_minus_one
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePair {
    pub p: BigUint,
    pub t: BigUint,
    pub n: u64,
    pub m: BigUint,
    pub checks: PairChecks,
}

#[derive(Debug, Clone)]
pub struct PairSearch {
    pub n: u64,
    pub m: BigUint,
    pub pairs: Vec<PrimePair>,
    /// True when fewer than the requested number of pairs were found within
    /// the candidate limit.
    pub partial: bool,
    pub candidates_examined: u64,
    pub primality_policy: &'static str,
}

/// Residues of exact order `n` modulo the prime `p`, ascending.
fn order_n_residues(n: u64, n_primes: &[u64], p: &BigUint) -> Vec<BigUint> {
    let exp = (p - 1u32) / n;
    let mut x = BigUint::from(2u32);
    let generator = loop {
        let y = x.modpow(&exp, p);
        if has_order(&y, n, n_primes, p) {
            break y;
        }
        x += 1u32;
    };
    let mut out: Vec<BigUint> = (1..=n)
        .filter(|k| k.gcd(&n) == 1)
        .map(|k| generator.modpow(&BigUint::from(k), p))
        .collect();
    out.sort();
    out
}

/// Smallest odd prime `t > m` whose residue mod `p` has order `n`.
///
/// The admissible residues are the generators of the order-`n` subgroup;
/// their progressions above `m` are merged so candidates come out in
/// increasing order.
fn smallest_t(n: u64, n_primes: &[u64], p: &BigUint, m: &BigUint) -> BigUint {
    let start = m + 1u32;
    let mut heap: BinaryHeap<Reverse<BigUint>> = order_n_residues(n, n_primes, p)
        .into_iter()
        .map(|r| {
            let offset = ((&r + p) - (&start % p)) % p;
            Reverse(&start + offset)
        })
        .collect();
    loop {
        let Reverse(t) = heap.pop().expect("order-n residues exist");
        if t.is_odd() && is_prime(&t) {
            return t;
        }
        heap.push(Reverse(&t + p));
    }
}

/// Scans primes `p = 1 mod n` above `m` in increasing order and pairs each
/// with its smallest admissible `t`. At most `candidate_limit` values of `p`
/// are examined.
pub fn find_prime_pairs(
    n: u64,
    m: &BigUint,
    count: usize,
    candidate_limit: u64,
) -> Result<PairSearch> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "n must be even and >= 2, got {n}"
        )));
    }
    if m.is_zero() {
        return Err(Error::Precondition("M must be at least 1".into()));
    }
    let n_primes = prime_divisors_u64(n);
    let n_big = BigUint::from(n);
    // First p = 1 mod n strictly above m.
    let mut p = m + 1u32;
    let rem = (&p + &n_big - 1u32) % &n_big;
    if !rem.is_zero() {
        p += &n_big - rem;
    }
    let mut pairs = Vec::new();
    let mut examined = 0u64;
    while pairs.len() < count && examined < candidate_limit {
        examined += 1;
        if p.is_odd() && is_prime(&p) {
            let t = smallest_t(n, &n_primes, &p, m);
            let checks = PairChecks::evaluate(&p, &t, n, m);
            assert!(
                checks.all_checked_pass(),
                "pair ({p}, {t}) failed {checks:?}"
            );
            pairs.push(PrimePair {
                p: p.clone(),
                t,
                n,
                m: m.clone(),
                checks,
            });
        }
        p += &n_big;
    }
    Ok(PairSearch {
        n,
        m: m.clone(),
        partial: pairs.len() < count,
        pairs,
        candidates_examined: examined,
        primality_policy: PRIMALITY_POLICY,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn small(x: &BigUint) -> Option<u64> {
        x.to_u64()
    }

    fn naive_order(t: u64, p: u64) -> u64 {
        let mut x = t % p;
        let mut d = 1;
        while x != 1 {
            x = x * t % p;
            d += 1;
        }
        d
    }

    #[test]
    fn bound_n10() {
        let m = compute_m(BoundInputs {
            n: 10,
            k: 1,
            cond: 1,
        })
        .unwrap();
        assert_eq!(m, BigUint::from(4_790_016_000_001u64));
    }

    #[test]
    fn bound_powers_of_two() {
        assert_eq!(power_of_two_clause_primes(16), vec![2, 3, 5, 7, 17]);
        assert_eq!(power_of_two_clause_primes(2), vec![2, 3]);
        assert!(power_of_two_clause_primes(12).is_empty());
        assert_eq!(
            compute_m(BoundInputs {
                n: 2,
                k: 1,
                cond: 1
            })
            .unwrap(),
            BigUint::from(385u32)
        );
        let m16 = compute_m(BoundInputs {
            n: 16,
            k: 1,
            cond: 1,
        })
        .unwrap();
        assert_eq!(m16, BigUint::from(16u32).pow(4) * factorial(18) + 1u32);
    }

    #[test]
    fn bound_dominated_by_other_terms() {
        let big_cond = 10u64.pow(18);
        assert_eq!(
            compute_m(BoundInputs {
                n: 2,
                k: 1,
                cond: big_cond
            })
            .unwrap(),
            BigUint::from(big_cond + 1)
        );
        let m = compute_m(BoundInputs {
            n: 4,
            k: 10_000,
            cond: 1,
        })
        .unwrap();
        assert_eq!(m, BigUint::from(10_000u64 * 24 + 2));
        assert!(compute_m(BoundInputs {
            n: 3,
            k: 1,
            cond: 1
        })
        .is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(1, 7).unwrap(), 1);
        assert_eq!(multiplicative_order(3, 5).unwrap(), 4);
        assert_eq!(multiplicative_order(2, 13).unwrap(), 12);
        assert_eq!(multiplicative_order(4, 5).unwrap(), 2);
        assert_eq!(multiplicative_order(7, 5).unwrap(), 4);
        assert_eq!(multiplicative_order(3, 9), Err(Error::NotPrime(9)));
        assert_eq!(
            multiplicative_order(10, 5),
            Err(Error::NotCoprime { t: 10, p: 5 })
        );
        for p in [3u64, 5, 7, 11, 13, 101, 257, 65537] {
            for t in 1..p.min(60) {
                assert_eq!(
                    multiplicative_order(t, p).unwrap(),
                    naive_order(t, p),
                    "{t} mod {p}"
                );
            }
        }
    }

    #[test]
    fn first_pairs() {
        let s = find_prime_pairs(4, &BigUint::from(2u32), 1, 1000).unwrap();
        assert_eq!(
            (s.pairs[0].p.clone(), s.pairs[0].t.clone()),
            (5u32.into(), 3u32.into())
        );
        let s = find_prime_pairs(12, &BigUint::from(2u32), 1, 1000).unwrap();
        assert_eq!(
            (s.pairs[0].p.clone(), s.pairs[0].t.clone()),
            (13u32.into(), 7u32.into())
        );
    }

    #[test]
    fn large_m_pairs_pass_checks() {
        let m = BigUint::from(1_000_000u32);
        let s = find_prime_pairs(4, &m, 3, 100_000).unwrap();
        assert_eq!(s.pairs.len(), 3);
        assert!(!s.partial);
        for pair in &s.pairs {
            assert!(pair.p > m && pair.t > m);
            assert!(pair.checks.all_checked_pass());
            let (p, t) = (small(&pair.p).unwrap(), small(&pair.t).unwrap());
            assert_eq!(multiplicative_order(t % p, p).unwrap(), 4);
        }
        assert!(s.pairs.windows(2).all(|w| w[0].p < w[1].p));
    }

    #[test]
    fn limit_flags_partial() {
        let s = find_prime_pairs(4, &BigUint::from(2u32), 100, 3).unwrap();
        assert!(s.partial);
        assert_eq!(s.candidates_examined, 3);
    }

    #[test]
    fn huge_m() {
        let m = compute_m(BoundInputs {
            n: 10,
            k: 1,
            cond: 1,
        })
        .unwrap()
            * BigUint::from(10u32).pow(10);
        let s = find_prime_pairs(10, &m, 1, 1_000_000).unwrap();
        let pair = &s.pairs[0];
        assert!(pair.p > m && pair.checks.all_checked_pass());
    }
}
