//! Dense LU solves with a reciprocal-condition guard.

use nalgebra::{DMatrix, DVector, Dyn, LU};

use crate::{Error, Result};

/// Systems whose estimated reciprocal 1-norm condition number falls below
/// this are refused.
pub(crate) const MIN_RCOND: f64 = 1e-14;

pub(crate) struct Factorized {
    lu: LU<f64, Dyn, Dyn>,
    norm1: f64,
}

pub(crate) fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

impl Factorized {
    /// Factorizes `a`. `what` names the system in error messages.
    pub(crate) fn new(a: DMatrix<f64>, what: &str) -> Result<Self> {
        assert!(a.is_square());
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::numerical(format!("{what}: non-finite matrix entry")));
        }
        let norm1 = one_norm(&a);
        let lu = a.lu();
        if !lu.is_invertible() {
            return Err(Error::numerical(format!("{what}: matrix is singular")));
        }
        Ok(Self { lu, norm1 })
    }

    fn dim(&self) -> usize {
        self.lu.l().nrows()
    }

    pub(crate) fn solve(&self, b: &DMatrix<f64>, what: &str) -> Result<DMatrix<f64>> {
        let x = self
            .lu
            .solve(b)
            .ok_or_else(|| Error::numerical(format!("{what}: matrix is singular")))?;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::numerical(format!("{what}: solve produced non-finite values")));
        }
        Ok(x)
    }

    pub(crate) fn inverse(&self, what: &str) -> Result<DMatrix<f64>> {
        let inv = self
            .lu
            .try_inverse()
            .ok_or_else(|| Error::numerical(format!("{what}: matrix is singular")))?;
        if inv.iter().any(|v| !v.is_finite()) {
            return Err(Error::numerical(format!("{what}: inverse has non-finite values")));
        }
        Ok(inv)
    }

    /// Exact reciprocal condition number when the inverse is at hand.
    pub(crate) fn rcond_with_inverse(&self, inverse: &DMatrix<f64>) -> f64 {
        1.0 / (self.norm1 * one_norm(inverse))
    }

    /// Hager's estimate of `1 / (|A|_1 |A^-1|_1)`, needing a few solves with
    /// `A` and `A^T` rather than the inverse.
    pub(crate) fn rcond_estimate(&self) -> f64 {
        let n = self.dim();
        if n == 0 {
            return 1.0;
        }
        let l = self.lu.l();
        let u = self.lu.u();
        let p = self.lu.p();
        let solve_t = |b: &DVector<f64>| -> Option<DVector<f64>> {
            // A = P^T L U, so A^T x = b  <=>  U^T L^T (P x) = b.
            let y = u.transpose().solve_lower_triangular(b)?;
            let mut v = l.transpose().solve_upper_triangular(&y)?;
            p.inv_permute_rows(&mut v);
            Some(v)
        };

        let mut x = DVector::from_element(n, 1.0 / n as f64);
        let mut estimate = 0.0;
        for _ in 0..5 {
            let Some(y) = self.lu.solve(&x) else {
                return 0.0;
            };
            estimate = y.iter().map(|v| v.abs()).sum::<f64>();
            let xi = y.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
            let Some(z) = solve_t(&xi) else {
                return 0.0;
            };
            let (jmax, zmax) = z
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (j, v)| {
                    if v.abs() > acc.1 {
                        (j, v.abs())
                    } else {
                        acc
                    }
                });
            if zmax <= z.dot(&x) {
                break;
            }
            x.fill(0.0);
            x[jmax] = 1.0;
        }
        if !estimate.is_finite() {
            return 0.0;
        }
        1.0 / (self.norm1 * estimate)
    }

    /// Fails when the estimated reciprocal condition number is below
    /// [`MIN_RCOND`].
    pub(crate) fn check_conditioning(&self, what: &str) -> Result<()> {
        let rcond = self.rcond_estimate();
        if !(rcond >= MIN_RCOND) {
            return Err(Error::numerical(format!(
                "{what}: system is ill-conditioned (reciprocal condition estimate {rcond:.3e})"
            )));
        }
        Ok(())
    }
}

/// LU-solve `a x = b` behind the conditioning guard.
pub(crate) fn guarded_solve(a: DMatrix<f64>, b: &DMatrix<f64>, what: &str) -> Result<DMatrix<f64>> {
    let f = Factorized::new(a, what)?;
    f.check_conditioning(what)?;
    f.solve(b, what)
}
