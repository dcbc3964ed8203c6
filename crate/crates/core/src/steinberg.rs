//! Twisted tensor products of restricted modules and the orthogonal
//! classification in a fixed dimension.
//!
//! Frobenius twists do not change dimension, duality or indicator, so a
//! tensor product is recorded as the multiset of its restricted factors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{
    apply_exceptions, enumerate_in, exceptional_candidates, types_for_dimension, ExceptionRecord,
    IrrepCandidate,
};
use crate::error::{Error, Result};
use crate::numtheory::is_prime_u64;
use crate::root_datum::{Family, LieType, RootDatum};

/// Unordered factorizations of `n` into factors greater than 1, each listed
/// in non-increasing order.
pub fn factorizations(n: u64) -> Result<Vec<Vec<u64>>> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "factorizations need n >= 2, got {n}"
        )));
    }
    fn go(n: u64, max_factor: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in (2..=max_factor.min(n)).rev() {
            if n.is_multiple_of(d) {
                prefix.push(d);
                go(n / d, d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductMode {
    /// Multi-factor products only as Galois-twist orbits of one module.
    ClassSOrbit,
    /// Every multiset of restricted modules with the right dimension.
    AllProducts,
}

impl fmt::Display for ProductMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductMode::ClassSOrbit => "class_s_orbit",
            ProductMode::AllProducts => "all_products",
        })
    }
}

impl FromStr for ProductMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orbit" | "class_s_orbit" => Ok(ProductMode::ClassSOrbit),
            "all" | "all_products" => Ok(ProductMode::AllProducts),
            other => Err(Error::Precondition(format!(
                "unknown mode {other:?}, expected orbit or all"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorCandidate {
    pub type_id: LieType,
    pub factors: Vec<IrrepCandidate>,
    pub mode: ProductMode,
    pub dim: BigUint,
    pub self_dual: bool,
    pub fs: i8,
    pub min_char: u64,
}

impl TensorCandidate {
    pub fn new(type_id: LieType, factors: Vec<IrrepCandidate>, mode: ProductMode) -> Self {
        assert!(!factors.is_empty());
        let dim = factors.iter().fold(BigUint::one(), |acc, f| acc * &f.dim);
        let self_dual = factors.iter().all(|f| f.self_dual);
        let fs = if self_dual {
            factors.iter().map(|f| f.fs).product()
        } else {
            0
        };
        let min_char = factors
            .iter()
            .map(|f| {
                // A non-generic factor is pinned to its own characteristic.
                let trusted_from = if f.generic { f.min_char } else { 0 };
                trusted_from.max(f.weight.max_coeff() as u64 + 1)
            })
            .max()
            .unwrap_or(0);
        TensorCandidate {
            type_id,
            factors,
            mode,
            dim,
            self_dual,
            fs,
            min_char,
        }
    }

    pub fn is_orbit(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].weight == w[1].weight)
    }

    /// `D34 w1` or `A1 w1 (x) w1 (x) 16w1`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|f| f.weight.to_string()).collect();
        format!("{} {}", self.type_id, parts.join(" (x) "))
    }
}

fn combinations_with_repetition<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            go(items, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Products of dimension `n` from a pool of nontrivial restricted modules
/// of one type, in `AllProducts` form. Factor order follows the pool.
fn assemble(type_id: LieType, pool: &[IrrepCandidate], n: u64) -> Result<Vec<TensorCandidate>> {
    let mut by_dim: BTreeMap<BigUint, Vec<IrrepCandidate>> = BTreeMap::new();
    for c in pool.iter().filter(|c| !c.is_trivial()) {
        by_dim.entry(c.dim.clone()).or_default().push(c.clone());
    }
    let mut out = Vec::new();
    for fact in factorizations(n)? {
        let mut groups: BTreeMap<u64, usize> = BTreeMap::new();
        for d in fact {
            *groups.entry(d).or_insert(0) += 1;
        }
        let mut partial: Vec<Vec<IrrepCandidate>> = vec![Vec::new()];
        for (&d, &k) in groups.iter().rev() {
            let Some(mods) = by_dim.get(&BigUint::from(d)) else {
                partial.clear();
                break;
            };
            let choices = combinations_with_repetition(mods, k);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    choices.iter().map(move |c| {
                        let mut q = p.clone();
                        q.extend(c.iter().cloned());
                        q
                    })
                })
                .collect();
        }
        out.extend(
            partial
                .into_iter()
                .map(|factors| TensorCandidate::new(type_id, factors, ProductMode::AllProducts)),
        );
    }
    Ok(out)
}

fn restrict_mode(all: Vec<TensorCandidate>, mode: ProductMode) -> Vec<TensorCandidate> {
    all.into_iter()
        .filter(|t| mode == ProductMode::AllProducts || t.is_orbit())
        .map(|mut t| {
            t.mode = mode;
            t
        })
        .collect()
}

/// Steinberg products of dimension `n` for one type.
pub fn steinberg_products(
    type_id: LieType,
    n: u64,
    mode: ProductMode,
) -> Result<Vec<TensorCandidate>> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "tensor products need n >= 2, got {n}"
        )));
    }
    let datum = RootDatum::build(type_id);
    let pool = enumerate_in(&datum, n)?;
    Ok(restrict_mode(assemble(type_id, &pool, n)?, mode))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionRule {
    NonSelfDual,
    OrbitRestriction,
    CharacteristicTooSmall,
    IndicatorSign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub rule: ExclusionRule,
    pub candidate: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub n: u64,
    pub mode: ProductMode,
    pub min_char: u64,
    pub orthogonal: Vec<TensorCandidate>,
    pub symplectic: Vec<TensorCandidate>,
    pub excluded_non_self_dual: usize,
    pub exclusions: Vec<Exclusion>,
    pub notes: Vec<String>,
}

/// Compact listing such as `A1..A67, B2..B34, E6`.
fn describe_types(types: &[LieType]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < types.len() {
        let mut j = i;
        while j + 1 < types.len()
            && types[j + 1].family() == types[i].family()
            && types[j + 1].rank() == types[j].rank() + 1
        {
            j += 1;
        }
        parts.push(if i == j {
            types[i].to_string()
        } else {
            format!("{}..{}", types[i], types[j])
        });
        i = j + 1;
    }
    parts.join(", ")
}

/// Restricted modules of every scanned type up to a fixed dimension bound.
///
/// Enumeration is the expensive part of a classification, and the pool at a
/// bound contains the pool at every smaller bound, so one scan can serve
/// several target dimensions.
pub struct CandidatePool {
    bound: u64,
    per_type: Vec<(LieType, Vec<IrrepCandidate>)>,
}

impl CandidatePool {
    pub fn scan(bound: u64, exceptions: &[ExceptionRecord]) -> Result<Self> {
        if bound < 2 {
            return Err(Error::Precondition(format!(
                "scan bound must be >= 2, got {bound}"
            )));
        }
        let per_type = types_for_dimension(bound)
            .into_par_iter()
            .map(|t| {
                let datum = RootDatum::build(t);
                let mut cands: Vec<IrrepCandidate> = enumerate_in(&datum, bound)?
                    .into_iter()
                    .filter(|c| !c.is_trivial())
                    .collect();
                apply_exceptions(&mut cands, exceptions);
                cands.extend(exceptional_candidates(&datum, exceptions, 0)?);
                Ok((t, cands))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CandidatePool { bound, per_type })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Classifies the self-dual tensor candidates of dimension `n`.
    pub fn classify(
        &self,
        n: u64,
        min_char: u64,
        mode: ProductMode,
    ) -> Result<ClassificationReport> {
        if n < 2 || n % 2 == 1 {
            return Err(Error::Precondition(format!(
                "n must be an even positive integer, got {n}"
            )));
        }
        if n > self.bound {
            return Err(Error::Precondition(format!(
                "n = {n} exceeds the scanned bound {}",
                self.bound
            )));
        }
        let target = BigUint::from(n);
        let scanned = types_for_dimension(n);
        let mut report = ClassificationReport {
            n,
            mode,
            min_char,
            orthogonal: Vec::new(),
            symplectic: Vec::new(),
            excluded_non_self_dual: 0,
            exclusions: Vec::new(),
            notes: vec![
                format!("scanned {} types: {}", scanned.len(), describe_types(&scanned)),
                format!(
                    "generic dimensions assumed for ell >= {min_char}; factors must be ell-restricted"
                ),
                "twists abstracted: factors listed as a multiset of restricted modules".into(),
            ],
        };
        let mut dim_two_non_a1 = Vec::new();
        for (t, cands) in self.per_type.iter().filter(|(t, _)| scanned.contains(t)) {
            let usable: Vec<IrrepCandidate> = cands
                .iter()
                .filter(|c| c.dim <= target && (c.generic || c.min_char >= min_char))
                .cloned()
                .collect();
            if t.family() != Family::A || t.rank() != 1 {
                dim_two_non_a1.extend(
                    usable
                        .iter()
                        .filter(|c| c.dim == BigUint::from(2u32))
                        .map(|c| format!("{t} {}", c.weight)),
                );
            }
            for cand in assemble(*t, &usable, n)? {
                let label = cand.label();
                if !cand.is_orbit() && mode == ProductMode::ClassSOrbit {
                    report.exclusions.push(Exclusion {
                        rule: ExclusionRule::OrbitRestriction,
                        candidate: label,
                        detail: "mixed tensor product is not a twist orbit of one module".into(),
                    });
                    continue;
                }
                let mut cand = cand;
                cand.mode = mode;
                if cand.min_char > min_char {
                    report.exclusions.push(Exclusion {
                        rule: ExclusionRule::CharacteristicTooSmall,
                        candidate: label,
                        detail: format!(
                            "needs ell >= {}, report assumes ell >= {min_char}",
                            cand.min_char
                        ),
                    });
                    continue;
                }
                if !cand.self_dual {
                    report.excluded_non_self_dual += 1;
                    report.exclusions.push(Exclusion {
                        rule: ExclusionRule::NonSelfDual,
                        candidate: label,
                        detail: "highest weight not fixed by -w0".into(),
                    });
                    continue;
                }
                if cand.fs == 1 {
                    report.orthogonal.push(cand);
                } else {
                    report.exclusions.push(Exclusion {
                        rule: ExclusionRule::IndicatorSign,
                        candidate: label,
                        detail: "Frobenius-Schur indicator -1 (symplectic)".into(),
                    });
                    report.symplectic.push(cand);
                }
            }
        }
        assert!(
            dim_two_non_a1.is_empty(),
            "non-A1 modules of dimension 2: {dim_two_non_a1:?}"
        );
        if n.is_multiple_of(2) {
            report
                .notes
                .push("no type other than A1 has a 2-dimensional restricted module".into());
        }
        debug_assert!(report
            .orthogonal
            .iter()
            .chain(&report.symplectic)
            .all(|c| c.dim == target));
        Ok(report)
    }
}

pub fn classify_orthogonal(
    n: u64,
    min_char: u64,
    mode: ProductMode,
    exceptions: &[ExceptionRecord],
) -> Result<ClassificationReport> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "n must be an even positive integer, got {n}"
        )));
    }
    CandidatePool::scan(n, exceptions)?.classify(n, min_char, mode)
}

pub const THEOREM1_PRIMES: std::ops::RangeInclusive<u64> = 17..=73;

#[derive(Debug, Clone)]
pub struct Theorem1Check {
    pub pi: u64,
    pub report: ClassificationReport,
    /// Orthogonal list is exactly `D_{2 pi} w1`.
    pub orthogonal_ok: bool,
    /// Symplectic list contains `C_{2 pi} w1` and `A1 (4 pi - 1) w1`.
    pub symplectic_ok: bool,
}

impl Theorem1Check {
    pub fn passed(&self) -> bool {
        self.orthogonal_ok && self.symplectic_ok
    }
}

fn check_theorem1_prime(pi: u64) -> Result<()> {
    if !THEOREM1_PRIMES.contains(&pi) || !is_prime_u64(pi) {
        return Err(Error::Precondition(format!(
            "the dimension 4*pi statement needs pi prime with 17 <= pi <= 73, got {pi}"
        )));
    }
    Ok(())
}

fn is_natural(c: &TensorCandidate, family: Family, rank: usize) -> bool {
    c.type_id.family() == family
        && c.type_id.rank() == rank
        && c.factors.len() == 1
        && c.factors[0].weight.coeffs().first() == Some(&1)
        && c.factors[0].weight.coeffs()[1..].iter().all(|&a| a == 0)
}

fn evaluate_theorem1(pi: u64, pool: &CandidatePool) -> Result<Theorem1Check> {
    check_theorem1_prime(pi)?;
    let n = 4 * pi;
    let report = pool.classify(n, n + 1, ProductMode::ClassSOrbit)?;
    let rank = 2 * pi as usize;
    let orthogonal_ok =
        report.orthogonal.len() == 1 && is_natural(&report.orthogonal[0], Family::D, rank);
    let has_c = report
        .symplectic
        .iter()
        .any(|c| is_natural(c, Family::C, rank));
    let has_a1 = report.symplectic.iter().any(|c| {
        c.type_id.family() == Family::A
            && c.type_id.rank() == 1
            && c.factors.len() == 1
            && c.factors[0].weight.coeffs() == [(n - 1) as u32]
    });
    Ok(Theorem1Check {
        pi,
        report,
        orthogonal_ok,
        symplectic_ok: has_c && has_a1,
    })
}

/// Classification in dimension `4 pi` and the check that the only orthogonal
/// candidate is the natural module of `D_{2 pi}`.
pub fn verify_theorem1(pi: u64) -> Result<Theorem1Check> {
    check_theorem1_prime(pi)?;
    let pool = CandidatePool::scan(4 * pi, &[])?;
    evaluate_theorem1(pi, &pool)
}

/// Every prime in range, sharing a single scan at the largest dimension.
pub fn verify_theorem1_all() -> Result<Vec<Theorem1Check>> {
    let primes: Vec<u64> = THEOREM1_PRIMES.filter(|&p| is_prime_u64(p)).collect();
    let top = 4 * primes.iter().max().copied().unwrap_or(73);
    let pool = CandidatePool::scan(top, &[])?;
    primes
        .into_iter()
        .map(|pi| evaluate_theorem1(pi, &pool))
        .collect()
}
