//! Dominant weights and the invariants attached to them: Weyl dimension,
//! dominance order, restrictedness, duality and the Frobenius-Schur sign.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::factor_u64;
use crate::root_datum::{diagram_automorphism, LieType, RootDatum};

/// `sum a_i omega_i` with all `a_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantWeight(Vec<u32>);

impl DominantWeight {
    pub fn new(coeffs: Vec<u32>) -> Self {
        DominantWeight(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        DominantWeight(vec![0; rank])
    }

    /// `a * omega_node` with a 1-based Bourbaki node.
    pub fn fundamental(rank: usize, node: usize, a: u32) -> Self {
        let mut w = vec![0; rank];
        w[node - 1] = a;
        DominantWeight(w)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn max_coeff(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `self + omega_i` (0-based index).
    pub fn raised(&self, i: usize) -> Self {
        let mut w = self.0.clone();
        w[i] += 1;
        DominantWeight(w)
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.0.len() != rank {
            return Err(Error::WeightLength {
                expected: rank,
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for DominantWeight {
    /// Sparse form such as `67w1` or `w4+w5`; `0` for the zero weight.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if a == 1 {
                write!(f, "w{}", i + 1)?;
            } else {
                write!(f, "{a}w{}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// Pairings `<lambda + rho, alpha^vee>` over the positive coroots, computed
/// from the support of `lambda` only.
fn shifted_pairings<'a>(
    datum: &'a RootDatum,
    lambda: &DominantWeight,
) -> impl Iterator<Item = (u64, u64)> + 'a {
    let support: Vec<(usize, u64)> = lambda
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| (i, a as u64))
        .collect();
    datum
        .positive_coroots()
        .zip(datum.rho_pairings())
        .map(move |(root, &h)| {
            let shift: u64 = support.iter().map(|&(i, a)| a * root[i] as u64).sum();
            (h as u64 + shift, h as u64)
        })
}

/// Weyl dimension `prod <lambda+rho, a^vee> / <rho, a^vee>`.
///
/// The quotient is accumulated as a prime-exponent vector so the rational
/// product stays exact; integrality of the result is asserted.
pub fn weyl_dimension(datum: &RootDatum, lambda: &DominantWeight) -> Result<BigUint> {
    lambda.check_rank(datum.rank())?;
    let mut cache: HashMap<u64, Vec<(u64, u32)>> = HashMap::new();
    let mut exponents: HashMap<u64, i64> = HashMap::new();
    for (num, den) in shifted_pairings(datum, lambda) {
        if num == den {
            continue;
        }
        for (value, sign) in [(num, 1i64), (den, -1i64)] {
            let factors = cache.entry(value).or_insert_with(|| factor_u64(value));
            for &(p, e) in factors.iter() {
                *exponents.entry(p).or_insert(0) += sign * e as i64;
            }
        }
    }
    let mut primes: Vec<(u64, i64)> = exponents.into_iter().filter(|&(_, e)| e != 0).collect();
    primes.sort_unstable();
    assert!(
        primes.iter().all(|&(_, e)| e > 0),
        "Weyl product for {} at {lambda} is not integral: {primes:?}",
        datum.type_id()
    );
    Ok(primes.into_iter().fold(BigUint::one(), |acc, (p, e)| {
        acc * BigUint::from(p).pow(e as u32)
    }))
}

/// `Some(dim)` when `weyl_dimension(lambda) <= bound`, otherwise `None`.
///
/// A floating-point log sum with a safety margin rejects weights that are
/// certainly too large after as few coroots as possible; every survivor is
/// settled by the exact product. Partial products are monotone because each
/// factor is at least 1.
pub fn dimension_within(
    datum: &RootDatum,
    lambda: &DominantWeight,
    bound: u64,
) -> Result<Option<BigUint>> {
    lambda.check_rank(datum.rank())?;
    let limit = (bound as f64).ln() + 1e-6;
    let mut log_dim = 0.0f64;
    for (num, den) in shifted_pairings(datum, lambda) {
        if num != den {
            log_dim += (num as f64).ln() - (den as f64).ln();
            if log_dim > limit {
                return Ok(None);
            }
        }
    }
    let dim = weyl_dimension(datum, lambda)?;
    Ok((dim <= BigUint::from(bound)).then_some(dim))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Solves `cartan * x = rhs` over the rationals. The Cartan matrix of a
/// simple type is always invertible.
fn solve_cartan(cartan: &[Vec<i32>], rhs: &[i64]) -> Vec<BigRational> {
    let m = cartan.len();
    let mut aug: Vec<Vec<BigRational>> = cartan
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            row.iter()
                .map(|&a| BigRational::from_integer(a.into()))
                .chain(std::iter::once(BigRational::from_integer(b.into())))
                .collect()
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !aug[r][col].is_zero())
            .expect("Cartan matrix is nonsingular");
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..m {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=m {
                let delta = &factor * &aug[col][c];
                aug[r][c] = &aug[r][c] - delta;
            }
        }
    }
    aug.into_iter().map(|row| row[m].clone()).collect()
}

/// Compares `w` with `w2` in the dominance order: `Less` means `w2 - w` is
/// a non-negative integer combination of simple roots.
pub fn dominance_compare(
    datum: &RootDatum,
    w: &DominantWeight,
    w2: &DominantWeight,
) -> Result<Dominance> {
    w.check_rank(datum.rank())?;
    w2.check_rank(datum.rank())?;
    if w == w2 {
        return Ok(Dominance::Equal);
    }
    let diff: Vec<i64> = w2
        .coeffs()
        .iter()
        .zip(w.coeffs())
        .map(|(&b, &a)| b as i64 - a as i64)
        .collect();
    let x = solve_cartan(datum.cartan(), &diff);
    if !x.iter().all(|v| v.is_integer()) {
        return Ok(Dominance::Incomparable);
    }
    if x.iter().all(|v| !v.is_negative()) {
        Ok(Dominance::Less)
    } else if x.iter().all(|v| !v.is_positive()) {
        Ok(Dominance::Greater)
    } else {
        Ok(Dominance::Incomparable)
    }
}

pub fn is_q_restricted(lambda: &DominantWeight, q: u64) -> bool {
    lambda.coeffs().iter().all(|&a| (a as u64) < q)
}

/// Highest weight of the dual module.
pub fn minus_w0(type_id: LieType, lambda: &DominantWeight) -> Result<DominantWeight> {
    lambda.check_rank(type_id.rank())?;
    let perm = diagram_automorphism(type_id);
    let mut out = vec![0; lambda.rank()];
    for (i, &a) in lambda.coeffs().iter().enumerate() {
        out[perm[i]] = a;
    }
    Ok(DominantWeight(out))
}

pub fn is_self_dual(type_id: LieType, lambda: &DominantWeight) -> Result<bool> {
    Ok(&minus_w0(type_id, lambda)? == lambda)
}

/// `<lambda, 2 rho^vee>`.
pub fn two_rho_check_pairing(datum: &RootDatum, lambda: &DominantWeight) -> Result<u64> {
    lambda.check_rank(datum.rank())?;
    Ok(lambda
        .coeffs()
        .iter()
        .zip(datum.two_rho_check())
        .map(|(&a, &c)| a as u64 * c)
        .sum())
}

/// Frobenius-Schur indicator of a self-dual module: `+1` (orthogonal) when
/// `<lambda, 2 rho^vee>` is even, `-1` (symplectic) when odd.
pub fn fs_indicator(datum: &RootDatum, lambda: &DominantWeight) -> Result<i8> {
    if !is_self_dual(datum.type_id(), lambda)? {
        return Err(Error::NotSelfDual(format!(
            "{} of {}",
            lambda,
            datum.type_id()
        )));
    }
    Ok(if two_rho_check_pairing(datum, lambda)? % 2 == 0 {
        1
    } else {
        -1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Family;

    fn datum(f: Family, m: usize) -> RootDatum {
        RootDatum::build(LieType::new(f, m).unwrap())
    }

    fn w(c: &[u32]) -> DominantWeight {
        DominantWeight::new(c.to_vec())
    }

    fn dim(d: &RootDatum, c: &[u32]) -> u64 {
        weyl_dimension(d, &w(c)).unwrap().try_into().unwrap()
    }

    #[test]
    fn a1_dimensions() {
        let d = datum(Family::A, 1);
        for a in 0..50 {
            assert_eq!(dim(&d, &[a]), a as u64 + 1);
        }
    }

    #[test]
    fn known_dimensions() {
        assert_eq!(dim(&datum(Family::B, 2), &[0, 1]), 4);
        assert_eq!(dim(&datum(Family::B, 2), &[1, 0]), 5);
        assert_eq!(dim(&datum(Family::G, 2), &[1, 0]), 7);
        assert_eq!(dim(&datum(Family::G, 2), &[0, 1]), 14);
        assert_eq!(dim(&datum(Family::F, 4), &[0, 0, 0, 1]), 26);
        assert_eq!(dim(&datum(Family::F, 4), &[1, 0, 0, 0]), 52);
        assert_eq!(dim(&datum(Family::E, 6), &[1, 0, 0, 0, 0, 0]), 27);
        assert_eq!(dim(&datum(Family::E, 7), &[0, 0, 0, 0, 0, 0, 1]), 56);
        assert_eq!(dim(&datum(Family::E, 8), &[0, 0, 0, 0, 0, 0, 0, 1]), 248);
        assert_eq!(dim(&datum(Family::B, 4), &[0, 0, 0, 1]), 16);
        assert_eq!(dim(&datum(Family::C, 3), &[0, 1, 0]), 14);
    }

    #[test]
    fn d34_natural_and_zero() {
        let d = datum(Family::D, 34);
        assert_eq!(dim(&d, &DominantWeight::fundamental(34, 1, 1).0), 68);
        assert_eq!(dim(&d, &[0; 34]), 1);
    }

    #[test]
    fn length_mismatch_rejected() {
        let d = datum(Family::A, 2);
        assert!(matches!(
            weyl_dimension(&d, &w(&[1])),
            Err(Error::WeightLength {
                expected: 2,
                got: 1
            })
        ));
        assert!(dominance_compare(&d, &w(&[1]), &w(&[1, 0])).is_err());
    }

    #[test]
    fn dimension_within_agrees_at_boundary() {
        let d = datum(Family::E, 8);
        let adj = DominantWeight::fundamental(8, 8, 1);
        assert_eq!(
            dimension_within(&d, &adj, 248).unwrap(),
            Some(BigUint::from(248u32))
        );
        assert_eq!(dimension_within(&d, &adj, 247).unwrap(), None);
    }

    #[test]
    fn dominance_examples() {
        let a1 = datum(Family::A, 1);
        assert_eq!(
            dominance_compare(&a1, &w(&[0]), &w(&[2])).unwrap(),
            Dominance::Less
        );
        assert_eq!(
            dominance_compare(&a1, &w(&[2]), &w(&[0])).unwrap(),
            Dominance::Greater
        );
        assert_eq!(
            dominance_compare(&a1, &w(&[1]), &w(&[0])).unwrap(),
            Dominance::Incomparable
        );
        let a2 = datum(Family::A, 2);
        assert_eq!(
            dominance_compare(&a2, &w(&[1, 0]), &w(&[0, 1])).unwrap(),
            Dominance::Incomparable
        );
        assert_eq!(
            dominance_compare(&a2, &w(&[1, 1]), &w(&[1, 1])).unwrap(),
            Dominance::Equal
        );
        // omega_1 + omega_2 - 0 = alpha_1 + alpha_2
        assert_eq!(
            dominance_compare(&a2, &w(&[0, 0]), &w(&[1, 1])).unwrap(),
            Dominance::Less
        );
    }

    #[test]
    fn restrictedness() {
        assert!(is_q_restricted(&w(&[0, 0]), 2));
        assert!(is_q_restricted(&w(&[67]), 71));
        assert!(!is_q_restricted(&w(&[5]), 5));
        assert!(is_q_restricted(&w(&[4]), 5));
    }

    #[test]
    fn duality() {
        let a3 = LieType::new(Family::A, 3).unwrap();
        assert_eq!(minus_w0(a3, &w(&[1, 0, 0])).unwrap(), w(&[0, 0, 1]));
        assert!(!is_self_dual(a3, &w(&[1, 0, 0])).unwrap());
        assert!(is_self_dual(a3, &w(&[0, 1, 0])).unwrap());
        let e6 = LieType::new(Family::E, 6).unwrap();
        let lam = w(&[1, 0, 0, 0, 1, 0]);
        let dual = minus_w0(e6, &lam).unwrap();
        assert_eq!(dual, w(&[0, 0, 1, 0, 0, 1]));
        assert_eq!(minus_w0(e6, &dual).unwrap(), lam);
        let c5 = LieType::new(Family::C, 5).unwrap();
        assert_eq!(
            minus_w0(c5, &w(&[3, 1, 0, 2, 7])).unwrap(),
            w(&[3, 1, 0, 2, 7])
        );
    }

    #[test]
    fn indicators() {
        let a1 = datum(Family::A, 1);
        assert_eq!(fs_indicator(&a1, &w(&[0])).unwrap(), 1);
        assert_eq!(fs_indicator(&a1, &w(&[67])).unwrap(), -1);
        assert_eq!(fs_indicator(&a1, &w(&[16])).unwrap(), 1);
        let c34 = datum(Family::C, 34);
        let d34 = datum(Family::D, 34);
        let nat = DominantWeight::fundamental(34, 1, 1);
        assert_eq!(fs_indicator(&c34, &nat).unwrap(), -1);
        assert_eq!(fs_indicator(&d34, &nat).unwrap(), 1);
        assert_eq!(fs_indicator(&datum(Family::B, 2), &w(&[0, 1])).unwrap(), -1);
        let a3 = datum(Family::A, 3);
        assert!(matches!(
            fs_indicator(&a3, &w(&[1, 0, 0])),
            Err(Error::NotSelfDual(_))
        ));
    }

    #[test]
    fn display() {
        assert_eq!(w(&[0, 0]).to_string(), "0");
        assert_eq!(w(&[67]).to_string(), "67w1");
        assert_eq!(w(&[1, 0, 2]).to_string(), "w1+2w3");
    }
}
