//! Independent reference computations for the integration tests.
//!
//! Everything here starts from Euclidean coordinates of the simple roots and
//! uses reflection orbits, so it shares no code with the library's Cartan
//! tables or coroot closure.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use orthoreps::{Family, LieType};

fn unit(len: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; len];
    v[i] = scale;
    v
}

fn diff(len: usize, i: usize, j: usize) -> Vec<i64> {
    // 2 (e_i - e_j); coordinates are doubled throughout so E8 stays integral.
    let mut v = vec![0; len];
    v[i] = 2;
    v[j] = -2;
    v
}

/// Bourbaki simple roots, coordinates doubled.
pub fn simple_roots(t: LieType) -> Vec<Vec<i64>> {
    let m = t.rank();
    match t.family() {
        Family::A => (0..m).map(|i| diff(m + 1, i, i + 1)).collect(),
        Family::B | Family::C | Family::D => {
            let mut roots: Vec<Vec<i64>> = (0..m - 1).map(|i| diff(m, i, i + 1)).collect();
            roots.push(match t.family() {
                Family::B => unit(m, m - 1, 2),
                Family::C => unit(m, m - 1, 4),
                _ => {
                    let mut v = vec![0; m];
                    v[m - 2] = 2;
                    v[m - 1] = 2;
                    v
                }
            });
            roots
        }
        Family::G => vec![vec![2, -2, 0], vec![-4, 2, 2]],
        Family::F => vec![
            diff(4, 1, 2),
            diff(4, 2, 3),
            unit(4, 3, 2),
            vec![1, -1, -1, -1],
        ],
        Family::E => {
            let mut e8 = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], {
                let mut v = vec![0; 8];
                v[0] = 2;
                v[1] = 2;
                v
            }];
            for i in 0..6 {
                e8.push(diff(8, i + 1, i));
            }
            e8.truncate(m);
            e8
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Inner products of the simple roots.
pub fn gram(t: LieType) -> Vec<Vec<i64>> {
    let s = simple_roots(t);
    s.iter()
        .map(|a| s.iter().map(|b| dot(a, b)).collect())
        .collect()
}

/// `<alpha_i^vee, alpha_j>`.
pub fn cartan(t: LieType) -> Vec<Vec<i32>> {
    let g = gram(t);
    let m = g.len();
    (0..m)
        .map(|i| (0..m).map(|j| (2 * g[i][j] / g[i][i]) as i32).collect())
        .collect()
}

/// Positive roots in the simple-root basis, from the orbit of the simple
/// roots under simple reflections.
pub fn positive_roots(t: LieType) -> Vec<Vec<i64>> {
    let c = cartan(t);
    let m = c.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..m {
        let v = unit(m, i, 1);
        seen.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..m {
            let pairing: i64 = (0..m).map(|j| b[j] * c[i][j] as i64).sum();
            let mut r = b.clone();
            r[i] -= pairing;
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen
        .into_iter()
        .filter(|r| r.iter().all(|&x| x >= 0))
        .collect();
    pos.sort();
    pos
}

/// Positive coroots in the simple-coroot basis: `beta^vee = 2 beta / (beta, beta)`.
pub fn positive_coroots(t: LieType) -> Vec<Vec<i64>> {
    let g = gram(t);
    let m = g.len();
    let mut out: Vec<Vec<i64>> = positive_roots(t)
        .into_iter()
        .map(|b| {
            let norm: i64 = (0..m)
                .map(|i| (0..m).map(|j| b[i] * b[j] * g[i][j]).sum::<i64>())
                .sum();
            (0..m)
                .map(|j| {
                    let num = b[j] * g[j][j];
                    assert_eq!(num % norm, 0, "non-integral coroot coefficient");
                    num / norm
                })
                .collect()
        })
        .collect();
    out.sort();
    out
}

/// Coroots precomputed for repeated dimension evaluations.
pub struct Oracle {
    pub type_id: LieType,
    pub cartan: Vec<Vec<i32>>,
    pub coroots: Vec<Vec<i64>>,
}

impl Oracle {
    pub fn new(t: LieType) -> Self {
        Oracle {
            type_id: t,
            cartan: cartan(t),
            coroots: positive_coroots(t),
        }
    }

    /// Weyl's product over rationals.
    pub fn dim(&self, a: &[u32]) -> BigUint {
        let mut q = BigRational::one();
        for c in &self.coroots {
            let num: i64 = c.iter().zip(a).map(|(&ci, &ai)| ci * (ai as i64 + 1)).sum();
            let den: i64 = c.iter().sum();
            q *= BigRational::new(BigInt::from(num), BigInt::from(den));
        }
        assert!(q.is_integer() && q.is_positive());
        q.to_integer().to_biguint().unwrap()
    }

    pub fn two_rho_check(&self) -> Vec<i64> {
        let m = self.cartan.len();
        (0..m)
            .map(|j| self.coroots.iter().map(|c| c[j]).sum())
            .collect()
    }

    /// `-w0 lambda`: reflect to the antidominant chamber and negate.
    pub fn minus_w0(&self, a: &[u32]) -> Vec<u32> {
        let m = a.len();
        let mut v: Vec<i64> = a.iter().map(|&x| x as i64).collect();
        while let Some(j) = (0..m).find(|&j| v[j] > 0) {
            let vj = v[j];
            for (i, vi) in v.iter_mut().enumerate() {
                *vi -= vj * self.cartan[i][j] as i64;
            }
        }
        v.iter().map(|&x| (-x) as u32).collect()
    }

    /// `mu - lambda` as a rational combination of simple roots.
    pub fn root_coordinates(&self, diff: &[i64]) -> Vec<BigRational> {
        // alpha_j has omega-coordinates given by column j of the Cartan matrix;
        // solve C x = diff by Gauss-Jordan.
        let m = diff.len();
        let mut rows: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                let mut r: Vec<BigRational> = (0..m)
                    .map(|j| BigRational::from_integer(self.cartan[i][j].into()))
                    .collect();
                r.push(BigRational::from_integer(diff[i].into()));
                r
            })
            .collect();
        for col in 0..m {
            let piv = (col..m)
                .find(|&r| rows[r][col] != BigRational::from_integer(0.into()))
                .unwrap();
            rows.swap(col, piv);
            let p = rows[col][col].clone();
            for x in rows[col].iter_mut() {
                *x /= p.clone();
            }
            for r in 0..m {
                if r != col {
                    let f = rows[r][col].clone();
                    if f != BigRational::from_integer(0.into()) {
                        for k in 0..=m {
                            let sub = &f * &rows[col][k];
                            rows[r][k] -= sub;
                        }
                    }
                }
            }
        }
        rows.into_iter().map(|r| r[m].clone()).collect()
    }

    /// `lambda <= mu` in the dominance order.
    pub fn dominated_by(&self, lambda: &[u32], mu: &[u32]) -> bool {
        let d: Vec<i64> = mu
            .iter()
            .zip(lambda)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect();
        self.root_coordinates(&d)
            .iter()
            .all(|x| x.is_integer() && !x.is_negative())
    }

    /// Brute force over the box whose sides are the largest multiples of each
    /// fundamental weight within the bound. Weyl dimension grows in every
    /// coordinate, so nothing outside the box qualifies.
    pub fn box_enumerate(&self, bound: u64) -> BTreeSet<(Vec<u32>, BigUint)> {
        let m = self.cartan.len();
        let limit = BigUint::from(bound);
        let caps: Vec<u32> = (0..m)
            .map(|i| {
                let mut k = 0u32;
                loop {
                    let mut a = vec![0u32; m];
                    a[i] = k + 1;
                    if self.dim(&a) > limit {
                        break k;
                    }
                    k += 1;
                }
            })
            .collect();
        let mut out = BTreeSet::new();
        let mut a = vec![0u32; m];
        loop {
            let d = self.dim(&a);
            if d <= limit {
                out.insert((a.clone(), d));
            }
            let mut i = 0;
            loop {
                if i == m {
                    return out;
                }
                if a[i] < caps[i] {
                    a[i] += 1;
                    break;
                }
                a[i] = 0;
                i += 1;
            }
        }
    }
}

/// Closed-form positive root counts.
pub fn positive_root_count(t: LieType) -> usize {
    let m = t.rank();
    match (t.family(), m) {
        (Family::A, _) => m * (m + 1) / 2,
        (Family::B | Family::C, _) => m * m,
        (Family::D, _) => m * (m - 1),
        (Family::E, 6) => 36,
        (Family::E, 7) => 63,
        (Family::E, _) => 120,
        (Family::F, _) => 24,
        (Family::G, _) => 6,
    }
}

/// Every type of rank at most `max_rank`, C2 included.
pub fn small_types(max_rank: usize) -> Vec<LieType> {
    let mut out = Vec::new();
    for f in Family::ALL {
        for m in 1..=max_rank {
            if let Ok(t) = LieType::new(f, m) {
                out.push(t);
            }
        }
    }
    out
}

pub fn to_u64(x: &BigUint) -> u64 {
    x.to_u64().expect("fits in u64")
}
