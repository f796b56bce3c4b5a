//! Dense complex linear algebra for the collocation system: LU with partial
//! pivoting, multi-RHS solves, and a 1-norm condition estimate.

use crate::error::{Error, Result};
use crate::numerics::C64;

pub struct Lu {
    n: usize,
    a: Vec<C64>, // row-major, factors packed
    piv: Vec<usize>,
    pub norm1_a: f64,
}

impl Lu {
    pub fn factor(mut a: Vec<C64>, n: usize) -> Result<Lu> {
        // 1-norm of A before factorization
        let mut norm1_a: f64 = 0.0;
        for j in 0..n {
            let s: f64 = (0..n).map(|i| a[i * n + j].norm()).sum();
            norm1_a = norm1_a.max(s);
        }
        let mut piv = vec![0usize; n];
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].norm();
            for i in k + 1..n {
                let v = a[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return Err(Error::NearNonSolvable(f64::INFINITY));
            }
            piv[k] = p;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let l = a[i * n + k] / pivot;
                a[i * n + k] = l;
                if l != C64::ZERO {
                    for j in k + 1..n {
                        let akj = a[k * n + j];
                        a[i * n + j] -= l * akj;
                    }
                }
            }
        }
        Ok(Lu { n, a, piv, norm1_a })
    }

    pub fn solve_in_place(&self, b: &mut [C64]) {
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.piv[k]);
        }
        for k in 0..n {
            let bk = b[k];
            if bk != C64::ZERO {
                for i in k + 1..n {
                    let l = self.a[i * n + k];
                    b[i] -= l * bk;
                }
            }
        }
        for k in (0..n).rev() {
            let mut s = b[k];
            for j in k + 1..n {
                s -= self.a[k * n + j] * b[j];
            }
            b[k] = s / self.a[k * n + k];
        }
    }

    /// Solve with the conjugate transpose A^H x = b (for the norm estimator).
    pub fn solve_adjoint_in_place(&self, b: &mut [C64]) {
        let n = self.n;
        // A = P^T L U  =>  A^H = U^H L^H P
        for k in 0..n {
            let mut s = b[k];
            for j in 0..k {
                s -= self.a[j * n + k].conj() * b[j];
            }
            b[k] = s / self.a[k * n + k].conj();
        }
        for k in (0..n).rev() {
            for j in k + 1..n {
                let l = self.a[j * n + k].conj();
                let bj = b[j];
                b[k] -= l * bj;
            }
        }
        for k in (0..n).rev() {
            b.swap(k, self.piv[k]);
        }
    }

    /// Hager-style 1-norm condition estimate.
    pub fn cond_estimate(&self) -> f64 {
        let n = self.n;
        let mut x = vec![C64::new(1.0 / n as f64, 0.0); n];
        let mut est = 0.0f64;
        for _ in 0..5 {
            let mut y = x.clone();
            self.solve_in_place(&mut y);
            let norm1: f64 = y.iter().map(|v| v.norm()).sum();
            est = est.max(norm1);
            // sign vector (unit phases)
            let mut xi: Vec<C64> = y
                .iter()
                .map(|v| {
                    if v.norm() > 0.0 {
                        *v / v.norm()
                    } else {
                        C64::ONE
                    }
                })
                .collect();
            self.solve_adjoint_in_place(&mut xi);
            // pick the max-magnitude component as the next probe direction
            let (jmax, _) = xi
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                .unwrap();
            x = vec![C64::ZERO; n];
            x[jmax] = C64::ONE;
        }
        est * self.norm1_a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;

    #[test]
    fn solve_small_system() {
        // 2x2: [[1, i], [2, -1]] x = [1+i, 0]
        let a = vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0), c(-1.0, 0.0)];
        let lu = Lu::factor(a.clone(), 2).unwrap();
        let mut b = vec![c(1.0, 1.0), C64::ZERO];
        lu.solve_in_place(&mut b);
        // check A x = rhs
        let r0 = a[0] * b[0] + a[1] * b[1] - c(1.0, 1.0);
        let r1 = a[2] * b[0] + a[3] * b[1];
        assert!(r0.norm() < 1e-14 && r1.norm() < 1e-14);
    }

    #[test]
    fn adjoint_solve_consistency() {
        let n = 5;
        let mut a = vec![C64::ZERO; n * n];
        let mut seed = 1u64;
        let mut rng = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for v in a.iter_mut() {
            *v = c(rng(), rng());
        }
        for i in 0..n {
            a[i * n + i] += c(4.0, 0.0);
        }
        let lu = Lu::factor(a.clone(), n).unwrap();
        let b: Vec<C64> = (0..n).map(|i| c(i as f64, 1.0)).collect();
        let mut x = b.clone();
        lu.solve_adjoint_in_place(&mut x);
        // verify A^H x = b
        for i in 0..n {
            let mut s = C64::ZERO;
            for j in 0..n {
                s += a[j * n + i].conj() * x[j];
            }
            assert!((s - b[i]).norm() < 1e-12, "row {i}");
        }
    }

    #[test]
    fn condition_of_identity() {
        let n = 8;
        let mut a = vec![C64::ZERO; n * n];
        for i in 0..n {
            a[i * n + i] = C64::ONE;
        }
        let lu = Lu::factor(a, n).unwrap();
        let cond = lu.cond_estimate();
        assert!((cond - 1.0).abs() < 1e-12);
    }
}
