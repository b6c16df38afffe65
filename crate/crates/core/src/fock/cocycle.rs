use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_data::WeightVector;

/// A `+-1` valued bimultiplicative form on `P x P`.
///
/// Values are stored as exponents of `-1` on the basis `omega_1, alpha_1, .., alpha_{l-1}`;
/// index 0 is `omega_1` and index `j` is `alpha_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleTable {
    ell: usize,
    exponents: Vec<Vec<u8>>,
}

impl CocycleTable {
    /// Builds the default table and checks the commutator condition on `Q x Q`.
    pub fn build(ell: usize) -> Result<Self> {
        let mut exponents = vec![vec![0u8; ell]; ell];
        for i in 1..ell {
            for j in 1..i {
                // <alpha_i, alpha_j> is -1 for neighbours and 0 otherwise.
                exponents[i][j] = u8::from(i - j == 1);
            }
        }
        if ell % 2 == 0 {
            exponents[1][0] = 1;
        }
        let table = Self { ell, exponents };
        table.validate()?;
        Ok(table)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Coordinates of `lambda` in the basis `omega_1, alpha_1, .., alpha_{l-1}`.
    pub fn basis_coords(&self, lambda: &WeightVector) -> Vec<i64> {
        let l = lambda.coords();
        let ell = self.ell;
        assert_eq!(l.len(), ell, "weight of the wrong rank");
        // b[j] is the coefficient of alpha_j, with b[ell] = 0.
        let mut b = vec![0i64; ell + 1];
        if ell >= 2 {
            b[ell - 1] = -l[ell - 1];
            for k in (2..ell).rev() {
                b[k - 1] = 2 * b[k] - b[k + 1] - l[k - 1];
            }
        }
        let b1 = if ell >= 2 { b[1] } else { 0 };
        let b2 = if ell >= 3 { b[2] } else { 0 };
        b[0] = l[0] - 2 * b1 + b2;
        b.truncate(ell);
        b
    }

    fn exponent(&self, lambda: &WeightVector, mu: &WeightVector) -> bool {
        let a = self.basis_coords(lambda);
        let b = self.basis_coords(mu);
        let mut s = 0i64;
        for (p, ap) in a.iter().enumerate() {
            if ap.is_even() {
                continue;
            }
            for (q, bq) in b.iter().enumerate() {
                if self.exponents[p][q] == 1 && bq.is_odd() {
                    s += 1;
                }
            }
        }
        s.is_odd()
    }

    /// `epsilon(lambda, mu)` as `1` or `-1`.
    pub fn epsilon(&self, lambda: &WeightVector, mu: &WeightVector) -> i64 {
        if self.exponent(lambda, mu) {
            -1
        } else {
            1
        }
    }

    /// Commutator map `c(lambda, mu) = epsilon(lambda, mu) / epsilon(mu, lambda)`.
    pub fn commutator(&self, lambda: &WeightVector, mu: &WeightVector) -> i64 {
        self.epsilon(lambda, mu) * self.epsilon(mu, lambda)
    }

    fn validate(&self) -> Result<()> {
        let ell = self.ell;
        for j in 1..=ell {
            let w = WeightVector::simple_root(ell, j);
            let mut back = WeightVector::zero(ell);
            for (p, c) in self.basis_coords(&w).into_iter().enumerate() {
                let basis = if p == 0 {
                    WeightVector::fundamental(ell, 1)
                } else {
                    WeightVector::simple_root(ell, p)
                };
                back += &basis.scale(c);
            }
            if back != w {
                return Err(Error::Construction(format!("alpha_{j} is not resolved in the cocycle basis")));
            }
        }
        for a in 1..=ell {
            for b in 1..=ell {
                let (x, y) = (WeightVector::simple_root(ell, a), WeightVector::simple_root(ell, b));
                let p = *x.pair(&y).numer();
                let want = if p.is_even() { 1 } else { -1 };
                if self.commutator(&x, &y) != want {
                    return Err(Error::Construction(format!(
                        "commutator condition fails on (alpha_{a}, alpha_{b})"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_for_small_ranks() {
        for ell in 1..=10 {
            CocycleTable::build(ell).unwrap();
        }
    }

    #[test]
    fn examples() {
        let t = CocycleTable::build(1).unwrap();
        let a1 = WeightVector::simple_root(1, 1);
        assert_eq!(t.epsilon(&a1, &a1), 1);
        assert_eq!(t.commutator(&a1, &a1), 1);
        let t = CocycleTable::build(2).unwrap();
        let (a1, a2) = (WeightVector::simple_root(2, 1), WeightVector::simple_root(2, 2));
        assert_eq!(t.commutator(&a1, &a2), -1);
        let w1 = WeightVector::fundamental(2, 1);
        assert_eq!(t.epsilon(&a1, &w1) * t.epsilon(&w1, &a1), -1);
    }

    #[test]
    fn bimultiplicative() {
        let ell = 3;
        let t = CocycleTable::build(ell).unwrap();
        let pts: Vec<WeightVector> = (0..27)
            .map(|k| WeightVector::from_coords(vec![k % 3 - 1, (k / 3) % 3 - 1, k / 9 - 1]))
            .collect();
        for a in &pts {
            for b in &pts {
                for c in &pts {
                    assert_eq!(t.epsilon(&(a + b), c), t.epsilon(a, c) * t.epsilon(b, c));
                    assert_eq!(t.epsilon(a, &(b + c)), t.epsilon(a, b) * t.epsilon(a, c));
                }
            }
        }
    }

    #[test]
    fn commutator_on_root_lattice() {
        for ell in 1..=5 {
            let t = CocycleTable::build(ell).unwrap();
            let roots: Vec<WeightVector> = (1..=ell).map(|j| WeightVector::simple_root(ell, j)).collect();
            for a in &roots {
                for b in &roots {
                    let x = a + b;
                    for c in &roots {
                        let p = *x.pair(c).numer();
                        assert_eq!(t.commutator(&x, c), if p % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
        }
    }
}
