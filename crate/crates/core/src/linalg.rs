//! Dense routines for the small real symmetric matrices (`g <= 3` in
//! practice) that describe `Im(tau)`. Matrices are row-major slices.

use crate::numeric::Real;

/// Lower-triangular Cholesky factor, or `None` if `a` is not positive definite.
pub fn cholesky<R: Real>(a: &[R], n: usize) -> Option<Vec<R>> {
    let zero = a[0].zero_like();
    let mut l = vec![zero.clone(); n * n];
    for j in 0..n {
        let mut diag = a[j * n + j].clone();
        for k in 0..j {
            diag = diag.minus(&l[j * n + k].times(&l[j * n + k]));
        }
        if !(diag > zero) {
            return None;
        }
        let d = diag.sqrt();
        for i in (j + 1)..n {
            let mut s = a[i * n + j].clone();
            for k in 0..j {
                s = s.minus(&l[i * n + k].times(&l[j * n + k]));
            }
            l[i * n + j] = s.divide(&d);
        }
        l[j * n + j] = d;
    }
    Some(l)
}

/// Determinant of a positive-definite matrix from its Cholesky factor.
pub fn cholesky_det<R: Real>(l: &[R], n: usize) -> R {
    let mut det = l[0].one_like();
    for i in 0..n {
        det = det.times(&l[i * n + i]).times(&l[i * n + i]);
    }
    det
}

/// Inverse of a positive-definite matrix from its Cholesky factor.
pub fn cholesky_inverse<R: Real>(l: &[R], n: usize) -> Vec<R> {
    let zero = l[0].zero_like();
    let one = l[0].one_like();
    let mut inv = vec![zero.clone(); n * n];
    for col in 0..n {
        // Solve L y = e_col, then L^T x = y.
        let mut y = vec![zero.clone(); n];
        for i in 0..n {
            let mut s = if i == col { one.clone() } else { zero.clone() };
            for k in 0..i {
                s = s.minus(&l[i * n + k].times(&y[k]));
            }
            y[i] = s.divide(&l[i * n + i]);
        }
        let mut x = vec![zero.clone(); n];
        for i in (0..n).rev() {
            let mut s = y[i].clone();
            for k in (i + 1)..n {
                s = s.minus(&l[k * n + i].times(&x[k]));
            }
            x[i] = s.divide(&l[i * n + i]);
        }
        for i in 0..n {
            inv[i * n + col] = x[i].clone();
        }
    }
    inv
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending.
pub fn symmetric_eigenvalues<R: Real>(a: &[R], n: usize) -> Vec<R> {
    let mut m = a.to_vec();
    let prec = a[0].prec();
    let eps = 2f64.powi(-(prec as i32) + 4);
    for _sweep in 0..100 {
        let mut off = 0.0;
        let mut scale = 0.0;
        for i in 0..n {
            for j in 0..n {
                let v = m[i * n + j].to_f64().abs();
                if i != j {
                    off += v * v;
                }
                scale += v * v;
            }
        }
        if off <= eps * eps * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q].clone();
                if apq.is_zero() {
                    continue;
                }
                let app = m[p * n + p].clone();
                let aqq = m[q * n + q].clone();
                // theta = (aqq - app) / (2 apq); t = sgn(theta) / (|theta| + sqrt(theta^2 + 1))
                let theta = aqq.minus(&app).divide(&apq.times_f64(2.0));
                let one = theta.one_like();
                let root = theta.times(&theta).plus(&one).sqrt();
                let denom = theta.abs().plus(&root);
                let mut t = one.divide(&denom);
                if theta.to_f64() < 0.0 {
                    t = t.negate();
                }
                let c = one.divide(&t.times(&t).plus(&one).sqrt());
                let s = t.times(&c);
                for k in 0..n {
                    let mkp = m[k * n + p].clone();
                    let mkq = m[k * n + q].clone();
                    m[k * n + p] = c.times(&mkp).minus(&s.times(&mkq));
                    m[k * n + q] = s.times(&mkp).plus(&c.times(&mkq));
                }
                for k in 0..n {
                    let mpk = m[p * n + k].clone();
                    let mqk = m[q * n + k].clone();
                    m[p * n + k] = c.times(&mpk).minus(&s.times(&mqk));
                    m[q * n + k] = s.times(&mpk).plus(&c.times(&mqk));
                }
            }
        }
    }
    let mut eig: Vec<R> = (0..n).map(|i| m[i * n + i].clone()).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    eig
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = [1.0, 2.0, 2.0, 1.0];
        assert!(cholesky(&a, 2).is_none());
    }

    #[test]
    fn inverse_and_det_2x2() {
        let a = [4.0, 1.0, 1.0, 3.0];
        let l = cholesky(&a, 2).unwrap();
        assert!((cholesky_det(&l, 2) - 11.0).abs() < 1e-12);
        let inv = cholesky_inverse(&l, 2);
        let expected = [3.0 / 11.0, -1.0 / 11.0, -1.0 / 11.0, 4.0 / 11.0];
        for (x, y) in inv.iter().zip(expected) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn jacobi_matches_closed_form_at_high_precision() {
        let prec = 200;
        let a: Vec<Float> = [2.0, 1.0, 1.0, 3.0]
            .iter()
            .map(|&x| Float::with_val(prec, x))
            .collect();
        let eig = symmetric_eigenvalues(&a, 2);
        // (5 -+ sqrt 5) / 2
        let s5 = Float::with_val(prec, 5).sqrt();
        let lo = Float::with_val(prec, 5 - s5.clone()) / 2;
        let hi = Float::with_val(prec, 5 + s5) / 2;
        assert!(Float::with_val(prec, &eig[0] - &lo).abs() < 1e-55);
        assert!(Float::with_val(prec, &eig[1] - &hi).abs() < 1e-55);
    }

    #[test]
    fn jacobi_3x3_trace_and_order() {
        let a = [2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0];
        let eig = symmetric_eigenvalues(&a, 3);
        let s2 = 2f64.sqrt();
        let expected = [2.0 - s2, 2.0, 2.0 + s2];
        for (x, y) in eig.iter().zip(expected) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }
}
