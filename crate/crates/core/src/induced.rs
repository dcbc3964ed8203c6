//! Explicit monomial model of the induced local representation on the tame
//! quotient `<phi, tau | phi tau phi^-1 = tau^t>`, over a prime field
//! `F_lambda` that contains the `p`-th roots of unity.

use serde::Serialize;

use crate::arith::multiplicative_order;
use crate::error::{Error, Result};
use crate::numtheory::{is_prime_u64, mul_mod, pow_mod};

/// Dense square matrix over `F_modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    n: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(n: usize, modulus: u64) -> Self {
        FpMatrix {
            n,
            modulus,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diagonal(entries: &[u64], modulus: u64) -> Self {
        let mut m = Self::zeros(entries.len(), modulus);
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e % modulus);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.n + c] = v % self.modulus;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.n).map(<[u64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.n, self.modulus), (other.n, other.modulus));
        let mut out = Self::zeros(self.n, self.modulus);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..self.n {
                    let idx = i * self.n + j;
                    out.data[idx] =
                        (out.data[idx] + mul_mod(a, other.get(k, j), self.modulus)) % self.modulus;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = Self::zeros(self.n, self.modulus);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `Some(c)` when the matrix is `c * I` with `c != 0`.
    pub fn scalar_value(&self) -> Option<u64> {
        let c = self.get(0, 0);
        let scalar = c != 0
            && (0..self.n)
                .all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { c } else { 0 }));
        scalar.then_some(c)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn determinant(&self) -> u64 {
        let p = self.modulus;
        let mut a = self.rows();
        let n = self.n;
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
                return 0;
            };
            if piv != col {
                a.swap(piv, col);
                det = (p - det) % p;
            }
            det = mul_mod(det, a[col][col], p);
            let inv = pow_mod(a[col][col], p - 2, p);
            for r in col + 1..n {
                if a[r][col] == 0 {
                    continue;
                }
                let f = mul_mod(a[r][col], inv, p);
                for c in col..n {
                    a[r][c] = (a[r][c] + p - mul_mod(f, a[col][c], p)) % p;
                }
            }
        }
        det
    }
}

/// Rank of a rectangular system over `F_p` by row reduction.
fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let f = rows[r][col];
            for c in col..cols {
                rows[r][c] = (rows[r][c] + p - mul_mod(f, rows[rank][c], p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of `{X : X g = g X for every g}`.
///
/// Each generator contributes `n^2` linear equations in the `n^2` entries
/// of `X`; the commutant is the null space.
pub fn commutant_dimension_of(generators: &[&FpMatrix]) -> usize {
    let Some(first) = generators.first() else {
        return 0;
    };
    let (n, p) = (first.n, first.modulus);
    let var = |r: usize, c: usize| r * n + c;
    let mut rows = Vec::with_capacity(generators.len() * n * n);
    for g in generators {
        for i in 0..n {
            for j in 0..n {
                // (X g - g X)_{ij} = sum_k X_{ik} g_{kj} - g_{ik} X_{kj}
                let mut eq = vec![0u64; n * n];
                for k in 0..n {
                    let v = var(i, k);
                    eq[v] = (eq[v] + g.get(k, j)) % p;
                    let v = var(k, j);
                    eq[v] = (eq[v] + p - g.get(i, k)) % p;
                }
                rows.push(eq);
            }
        }
    }
    n * n - rank_mod(rows, p)
}

/// Least `d >= 1` with `g^d` scalar, up to `limit`.
pub fn projective_order_of(g: &FpMatrix, limit: u64) -> Option<u64> {
    let mut power = g.clone();
    for d in 1..=limit {
        if power.scalar_value().is_some() {
            return Some(d);
        }
        power = power.mul(g);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TameParameters {
    pub p: u64,
    pub t: u64,
    pub n: usize,
    pub lambda: u64,
    pub zeta: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Tau,
    Phi,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialRep {
    pub params: TameParameters,
    /// `diag(zeta^{t^i mod p})`, the inertia generator.
    pub tau: FpMatrix,
    /// Cyclic shift `e_i -> e_{i-1}`, the Frobenius generator.
    pub phi: FpMatrix,
    /// Symmetric pairing of `e_i` with `e_{i + n/2}`.
    pub gram: FpMatrix,
}

/// Smallest prime `lambda = 1 mod p` different from `t`.
pub fn default_lambda(p: u64, t: u64) -> u64 {
    let mut lambda = p + 1;
    while !(is_prime_u64(lambda) && lambda != t) {
        lambda += p;
    }
    lambda
}

/// Smallest element of exact order `p` in `F_lambda`.
pub fn primitive_root_of_unity(p: u64, lambda: u64) -> Option<u64> {
    (2..lambda).find(|&z| pow_mod(z, p, lambda) == 1)
}

pub fn build_induced_rep(p: u64, t: u64, n: usize, lambda: Option<u64>) -> Result<MonomialRep> {
    if !is_prime_u64(p) || p == 2 {
        return Err(Error::Precondition(format!("p = {p} must be an odd prime")));
    }
    if n < 2 || n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "n must be even and >= 2, got {n}"
        )));
    }
    let order = multiplicative_order(t % p, p)?;
    if order != n as u64 {
        return Err(Error::Precondition(format!(
            "the order of {t} mod {p} is {order}, not {n}; the induced representation would be reducible"
        )));
    }
    if !is_prime_u64(t) {
        return Err(Error::NotPrime(t));
    }
    let lambda = match lambda {
        Some(l) => {
            if !is_prime_u64(l) || l % p != 1 || l == t {
                return Err(Error::Precondition(format!(
                    "lambda = {l} must be a prime = 1 mod {p} different from t"
                )));
            }
            l
        }
        None => default_lambda(p, t),
    };
    let zeta = primitive_root_of_unity(p, lambda)
        .expect("F_lambda has p-th roots of unity when lambda = 1 mod p");

    let exponents: Vec<u64> = (0..n as u64).map(|i| pow_mod(t, i, p)).collect();
    let diag: Vec<u64> = exponents
        .iter()
        .map(|&e| pow_mod(zeta, e, lambda))
        .collect();
    let tau = FpMatrix::diagonal(&diag, lambda);
    let mut phi = FpMatrix::zeros(n, lambda);
    for c in 0..n {
        phi.set((c + n - 1) % n, c, 1);
    }
    let mut gram = FpMatrix::zeros(n, lambda);
    for i in 0..n {
        gram.set(i, (i + n / 2) % n, 1);
    }
    let rep = MonomialRep {
        params: TameParameters {
            p,
            t,
            n,
            lambda,
            zeta,
        },
        tau,
        phi,
        gram,
    };
    assert!(
        rep.tame_relation_holds(),
        "tame relation fails for {:?}",
        rep.params
    );
    assert!(rep.tau.pow(p).scalar_value() == Some(1) && rep.tau.scalar_value().is_none());
    assert!(rep.phi.pow(n as u64).scalar_value() == Some(1));
    assert!(rep.gram.is_symmetric() && rep.gram.determinant() != 0);
    assert!((0..n).all(|i| rep.gram.get(i, i) == 0));
    Ok(rep)
}

impl MonomialRep {
    pub fn generator(&self, which: Generator) -> &FpMatrix {
        match which {
            Generator::Tau => &self.tau,
            Generator::Phi => &self.phi,
        }
    }

    /// `phi tau phi^-1 = tau^t`; `phi` is a permutation so its inverse is its
    /// transpose.
    pub fn tame_relation_holds(&self) -> bool {
        self.phi.mul(&self.tau).mul(&self.phi.transpose()) == self.tau.pow(self.params.t)
    }

    pub fn gram_determinant(&self) -> u64 {
        self.gram.determinant()
    }

    /// `+1` or `-1` as an element of `F_lambda`.
    pub fn gram_determinant_is_unit_sign(&self) -> bool {
        let d = self.gram_determinant();
        d == 1 || d == self.params.lambda - 1
    }

    pub fn commutant_dimension(&self) -> usize {
        commutant_dimension_of(&[&self.tau, &self.phi])
    }

    pub fn projective_order(&self, which: Generator) -> u64 {
        let limit = self.params.p * self.params.n as u64 * self.params.lambda;
        projective_order_of(self.generator(which), limit)
            .expect("generators have finite order dividing the bound")
    }
}

/// `g^T B g = B` for both generators.
pub fn verify_orthogonality(rep: &MonomialRep) -> bool {
    preserves_form(rep, &rep.gram)
}

pub fn preserves_form(rep: &MonomialRep, form: &FpMatrix) -> bool {
    [&rep.tau, &rep.phi]
        .iter()
        .all(|g| g.transpose().mul(form).mul(g) == *form)
}

#[derive(Debug, Clone, Serialize)]
pub struct RepVerdicts {
    pub tame_relation: bool,
    pub orthogonal: bool,
    pub gram_symmetric: bool,
    pub gram_det_is_plus_minus_one: bool,
    pub commutant_dimension: usize,
    pub absolutely_irreducible: bool,
    pub tau_projective_order: u64,
    pub phi_projective_order: u64,
}

pub fn verdicts(rep: &MonomialRep) -> RepVerdicts {
    let commutant = rep.commutant_dimension();
    RepVerdicts {
        tame_relation: rep.tame_relation_holds(),
        orthogonal: verify_orthogonality(rep),
        gram_symmetric: rep.gram.is_symmetric(),
        gram_det_is_plus_minus_one: rep.gram_determinant_is_unit_sign(),
        commutant_dimension: commutant,
        absolutely_irreducible: commutant == 1,
        tau_projective_order: rep.projective_order(Generator::Tau),
        phi_projective_order: rep.projective_order(Generator::Phi),
    }
}
