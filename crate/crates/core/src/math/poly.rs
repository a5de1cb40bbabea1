//! Arithmetic in `R_q = Z_q[X]/(X^N + 1)`.

use crate::error::{Error, Result};
use crate::math::Modulus;

/// A ring element with exactly `N` coefficients in `[0, q)`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<u64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<u64>, q: &Modulus) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|&&c| !q.contains(c)) {
            return Err(Error::param(format!(
                "coefficient {bad} is not reduced modulo {}",
                q.value()
            )));
        }
        Ok(Polynomial { coeffs })
    }

    /// Caller guarantees every coefficient is already reduced.
    pub(crate) fn from_reduced(coeffs: Vec<u64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Polynomial {
            coeffs: vec![0; degree],
        }
    }

    /// `X^j` in a ring of the given degree; `j >= N` wraps with a sign flip.
    pub fn monomial(degree: usize, j: usize, q: &Modulus) -> Self {
        let mut coeffs = vec![0; degree];
        let negate = (j / degree) % 2 == 1;
        coeffs[j % degree] = if negate { q.neg(1) } else { 1 };
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scalar_mul(&self, k: u64, q: &Modulus) -> Polynomial {
        let k = q.reduce(k as u128);
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| q.mul(c, k)).collect(),
        }
    }
}

fn check_same_length(a: &Polynomial, b: &Polynomial) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::param(format!(
            "polynomial length mismatch: {} vs {}",
            a.degree(),
            b.degree()
        )));
    }
    Ok(())
}

pub fn poly_add(a: &Polynomial, b: &Polynomial, q: &Modulus) -> Result<Polynomial> {
    check_same_length(a, b)?;
    let coeffs = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(&x, &y)| q.add(x, y))
        .collect();
    Ok(Polynomial { coeffs })
}

pub fn poly_sub(a: &Polynomial, b: &Polynomial, q: &Modulus) -> Result<Polynomial> {
    check_same_length(a, b)?;
    let coeffs = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(&x, &y)| q.sub(x, y))
        .collect();
    Ok(Polynomial { coeffs })
}

/// Schoolbook product modulo `X^N + 1`.
///
/// Coefficient `k` is `sum_{i+j=k} a_i b_j - sum_{i+j=N+k} a_i b_j (mod q)`.
pub fn poly_negacyclic_mul(a: &Polynomial, b: &Polynomial, q: &Modulus) -> Result<Polynomial> {
    check_same_length(a, b)?;
    let n = a.degree();
    if !n.is_power_of_two() {
        return Err(Error::param(format!("ring degree {n} is not a power of two")));
    }
    let coeffs = if q.is_power_of_two() {
        negacyclic_wrapping(&a.coeffs, &b.coeffs, q)
    } else {
        negacyclic_general(&a.coeffs, &b.coeffs, q)
    };
    Ok(Polynomial { coeffs })
}

// q divides 2^64, so plain wrapping u64 arithmetic is exact before the final mask.
fn negacyclic_wrapping(a: &[u64], b: &[u64], q: &Modulus) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u64; n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let (low, high) = out.split_at_mut(i);
        // j < n - i lands on i + j; the rest wraps to i + j - n with a sign flip.
        for (o, &bj) in high.iter_mut().zip(&b[..n - i]) {
            *o = o.wrapping_add(ai.wrapping_mul(bj));
        }
        for (o, &bj) in low.iter_mut().zip(&b[n - i..]) {
            *o = o.wrapping_sub(ai.wrapping_mul(bj));
        }
    }
    out.into_iter().map(|c| q.reduce(c as u128)).collect()
}

fn negacyclic_general(a: &[u64], b: &[u64], q: &Modulus) -> Vec<u64> {
    let n = a.len();
    let mut pos = vec![0u128; n];
    let mut neg = vec![0u128; n];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            let prod = q.mul(ai, bj) as u128;
            let k = i + j;
            if k < n {
                pos[k] += prod;
            } else {
                neg[k - n] += prod;
            }
        }
    }
    pos.into_iter()
        .zip(neg)
        .map(|(p, m)| q.sub(q.reduce(p), q.reduce(m)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: full length-2N product over the integers, then fold
    /// X^N = -1 and reduce once.
    fn schoolbook_oracle(a: &[u64], b: &[u64], q: u128) -> Vec<u64> {
        use num_bigint::BigInt;
        use num_traits::ToPrimitive;
        let n = a.len();
        let mut full = vec![BigInt::from(0); 2 * n];
        for i in 0..n {
            for j in 0..n {
                full[i + j] += BigInt::from(a[i]) * BigInt::from(b[j]);
            }
        }
        let q = BigInt::from(q);
        (0..n)
            .map(|k| {
                let r = ((&full[k] - &full[k + n]) % &q + &q) % &q;
                r.to_u64().unwrap()
            })
            .collect()
    }

    fn random_poly(rng: &mut impl Rng, n: usize, q: &Modulus) -> Polynomial {
        let coeffs = (0..n)
            .map(|_| rng.gen_range(0..q.value()) as u64)
            .collect();
        Polynomial::new(coeffs, q).unwrap()
    }

    #[test]
    fn identity_is_one() {
        let q = Modulus::new(97).unwrap();
        let a = Polynomial::new(vec![3, 1, 4, 1], &q).unwrap();
        let one = Polynomial::monomial(4, 0, &q);
        assert_eq!(poly_negacyclic_mul(&a, &one, &q).unwrap(), a);
    }

    #[test]
    fn x_times_one_plus_x() {
        let q = Modulus::new(17).unwrap();
        let a = Polynomial::new(vec![1, 1], &q).unwrap();
        let b = Polynomial::new(vec![0, 1], &q).unwrap();
        assert_eq!(
            poly_negacyclic_mul(&a, &b, &q).unwrap().coeffs(),
            &[16, 1]
        );
    }

    #[test]
    fn matches_oracle_n4_q97() {
        // Frozen from an independent Python evaluation: a = [5, 90, 13, 42], b = [77, 3, 61, 29].
        let q = Modulus::new(97).unwrap();
        let a = Polynomial::new(vec![5, 90, 13, 42], &q).unwrap();
        let b = Polynomial::new(vec![77, 3, 61, 29], &q).unwrap();
        let expect = schoolbook_oracle(a.coeffs(), b.coeffs(), 97);
        assert_eq!(poly_negacyclic_mul(&a, &b, &q).unwrap().coeffs(), &expect[..]);
        assert_eq!(expect, vec![57, 29, 67, 81]);
    }

    #[test]
    fn matches_oracle_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, q) in [(4, 97u128), (16, 12289), (64, 1 << 20), (32, 1 << 64), (8, 65537)] {
            let q = Modulus::new(q).unwrap();
            for _ in 0..20 {
                let a = random_poly(&mut rng, n, &q);
                let b = random_poly(&mut rng, n, &q);
                let expect = schoolbook_oracle(a.coeffs(), b.coeffs(), q.value());
                assert_eq!(poly_negacyclic_mul(&a, &b, &q).unwrap().coeffs(), &expect[..]);
            }
        }
    }

    #[test]
    fn x_to_the_n_negates() {
        let q = Modulus::new(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_poly(&mut rng, 8, &q);
        let x = Polynomial::monomial(8, 1, &q);
        let mut acc = a.clone();
        for _ in 0..8 {
            acc = poly_negacyclic_mul(&acc, &x, &q).unwrap();
        }
        let neg: Vec<u64> = a.coeffs().iter().map(|&c| q.neg(c)).collect();
        assert_eq!(acc.coeffs(), &neg[..]);
        assert_eq!(Polynomial::monomial(8, 8, &q).coeffs()[0], 96);
    }

    #[test]
    fn add_sub_examples() {
        let q = Modulus::new(64).unwrap();
        let a = Polynomial::new(vec![5], &q).unwrap();
        let b = Polynomial::new(vec![60], &q).unwrap();
        assert_eq!(poly_add(&a, &b, &q).unwrap().coeffs(), &[1]);
        assert_eq!(poly_sub(&a, &b, &q).unwrap().coeffs(), &[9]);
        assert_eq!(poly_add(&a, &Polynomial::zero(1), &q).unwrap(), a);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let q = Modulus::new(97).unwrap();
        let a = Polynomial::zero(4);
        let b = Polynomial::zero(8);
        assert!(matches!(poly_add(&a, &b, &q), Err(Error::Parameter(_))));
        assert!(matches!(poly_sub(&a, &b, &q), Err(Error::Parameter(_))));
        assert!(matches!(
            poly_negacyclic_mul(&a, &b, &q),
            Err(Error::Parameter(_))
        ));
        let c = Polynomial::zero(3);
        assert!(poly_negacyclic_mul(&c, &c, &q).is_err());
        assert!(Polynomial::new(vec![97], &q).is_err());
    }
}
