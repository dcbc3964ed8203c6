use orthoreps::arith::multiplicative_order;
use orthoreps::induced::{build_induced_rep, verdicts, Generator};
use orthoreps::numtheory::is_prime_u64;
use orthoreps::Error;

type Mat = Vec<Vec<u64>>;

fn mul(a: &Mat, b: &Mat, q: u64) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j] % q).sum::<u64>() % q)
                .collect()
        })
        .collect()
}

fn transpose(a: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

fn pow(a: &Mat, e: u64, q: u64) -> Mat {
    let n = a.len();
    let mut out: Mat = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for _ in 0..e {
        out = mul(&out, a, q);
    }
    out
}

fn pow_mod(b: u64, e: u64, q: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % q)
}

/// Every admissible small configuration: odd prime `p <= 13`, even `n <= 6`
/// dividing `p - 1`, and prime `t < 120` of order `n` modulo `p`.
fn configurations() -> Vec<(u64, u64, usize)> {
    let mut out = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        for n in [2u64, 4, 6] {
            if (p - 1) % n != 0 {
                continue;
            }
            for t in (2..120).filter(|&t| is_prime_u64(t) && t != p) {
                if multiplicative_order(t, p).unwrap() == n {
                    out.push((p, t, n as usize));
                }
            }
        }
    }
    out
}

#[test]
fn configurations_cover_every_small_case() {
    let cfg = configurations();
    assert!(cfg.len() > 40, "{}", cfg.len());
    for p in [3, 5, 7, 11, 13] {
        assert!(cfg.iter().any(|&(q, _, _)| q == p));
    }
}

#[test]
fn monomial_reps_satisfy_all_invariants() {
    for (p, t, n) in configurations() {
        let rep = build_induced_rep(p, t, n, None).unwrap();
        let q = rep.params.lambda;
        let zeta = rep.params.zeta;
        assert!(is_prime_u64(q) && q % p == 1 && q != t, "lambda {q}");
        assert_eq!(pow_mod(zeta, p, q), 1);
        assert_ne!(zeta, 1);

        let tau = rep.tau.rows();
        let phi = rep.phi.rows();
        let gram = rep.gram.rows();
        // tau = diag(zeta^(t^i)); distinct eigenvalues because t has order n.
        let diag: Vec<u64> = (0..n).map(|i| tau[i][i]).collect();
        for (i, &d) in diag.iter().enumerate() {
            assert_eq!(d, pow_mod(zeta, pow_mod(t, i as u64, p), q));
        }
        let mut sorted = diag.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), n, "({p},{t},{n}) eigenvalues repeat");

        // phi tau phi^{-1} = tau^t, with phi^{-1} = phi^T for a permutation.
        let conj = mul(&mul(&phi, &tau, q), &transpose(&phi), q);
        assert_eq!(conj, pow(&tau, t, q), "({p},{t},{n}) tame relation");

        for g in [&tau, &phi] {
            assert_eq!(
                mul(&mul(&transpose(g), &gram, q), g, q),
                gram,
                "({p},{t},{n}) form"
            );
        }
        assert_eq!(gram, transpose(&gram));

        let v = verdicts(&rep);
        assert!(
            v.tame_relation && v.orthogonal && v.gram_symmetric && v.gram_det_is_plus_minus_one
        );
        assert_eq!(v.commutant_dimension, 1, "({p},{t},{n})");
        assert!(v.absolutely_irreducible);
        assert_eq!(rep.projective_order(Generator::Tau), p);
        assert_eq!(rep.projective_order(Generator::Phi), n as u64);
    }
}

#[test]
fn wrong_order_is_rejected() {
    for p in [5u64, 7, 11, 13] {
        for t in (2..60).filter(|&t| is_prime_u64(t) && t % p != 0) {
            let order = multiplicative_order(t, p).unwrap();
            for n in [2usize, 4, 6] {
                if order != n as u64 {
                    let err = build_induced_rep(p, t, n, None).unwrap_err();
                    assert!(
                        matches!(err, Error::Precondition(_)),
                        "({p},{t},{n}): {err}"
                    );
                }
            }
        }
    }
}

#[test]
fn explicit_lambda_must_split_mu_p() {
    assert!(build_induced_rep(5, 3, 4, Some(31)).is_ok());
    assert!(build_induced_rep(5, 3, 4, Some(13)).is_err());
    assert!(build_induced_rep(5, 3, 4, Some(21)).is_err());
}
