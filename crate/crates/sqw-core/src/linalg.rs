//! Dense complex kernels shared by the operator modules.
//!
//! Everything here exists in two flavours: a plain sequential loop and a
//! rayon version that splits the output into independent column (or row
//! band) jobs. With the default `parallel` feature the dispatching
//! entry points pick rayon once the problem is big enough to amortize
//! the fork; built with `--no-default-features` they compile straight to
//! the sequential code. The `*_serial` variants stay public so the
//! bench suite can compare both on the same build.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Below this many multiply-adds the rayon fork costs more than it buys.
const PAR_FLOP_CUTOFF: usize = 64 * 64 * 64;

/// C = A * B, sequential. Column-major axpy ordering: the k-th column of
/// A is streamed once per output column.
pub fn matmul_serial(a: &CMat, b: &CMat) -> CMat {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions must agree");
    let (rows, inner, cols) = (a.nrows(), a.ncols(), b.ncols());
    let mut out = CMat::zeros(rows, cols);
    let a_data = a.as_slice();
    for j in 0..cols {
        let out_col = &mut out.as_mut_slice()[j * rows..(j + 1) * rows];
        for k in 0..inner {
            let coeff = b[(k, j)];
            if coeff == Complex64::ZERO {
                continue;
            }
            let a_col = &a_data[k * rows..(k + 1) * rows];
            for (o, &av) in out_col.iter_mut().zip(a_col) {
                *o += coeff * av;
            }
        }
    }
    out
}

#[cfg(feature = "parallel")]
fn matmul_parallel(a: &CMat, b: &CMat) -> CMat {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions must agree");
    let (rows, inner, cols) = (a.nrows(), a.ncols(), b.ncols());
    let mut out = CMat::zeros(rows, cols);
    let a_data = a.as_slice();
    let b_data = b.as_slice();
    out.as_mut_slice()
        .par_chunks_mut(rows)
        .enumerate()
        .for_each(|(j, out_col)| {
            let b_col = &b_data[j * inner..(j + 1) * inner];
            for (k, &coeff) in b_col.iter().enumerate() {
                if coeff == Complex64::ZERO {
                    continue;
                }
                let a_col = &a_data[k * rows..(k + 1) * rows];
                for (o, &av) in out_col.iter_mut().zip(a_col) {
                    *o += coeff * av;
                }
            }
        });
    out
}

/// C = A * B with automatic dispatch.
pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    #[cfg(feature = "parallel")]
    {
        if a.nrows() * a.ncols() * b.ncols() >= PAR_FLOP_CUTOFF {
            return matmul_parallel(a, b);
        }
    }
    matmul_serial(a, b)
}

/// y = A * x, sequential.
pub fn matvec_serial(a: &CMat, x: &CVec) -> CVec {
    assert_eq!(a.ncols(), x.len(), "dimensions must agree");
    let rows = a.nrows();
    let mut out = CVec::zeros(rows);
    let a_data = a.as_slice();
    for (k, &coeff) in x.iter().enumerate() {
        if coeff == Complex64::ZERO {
            continue;
        }
        let a_col = &a_data[k * rows..(k + 1) * rows];
        for (o, &av) in out.iter_mut().zip(a_col) {
            *o += coeff * av;
        }
    }
    out
}

#[cfg(feature = "parallel")]
fn matvec_parallel(a: &CMat, x: &CVec) -> CVec {
    assert_eq!(a.ncols(), x.len(), "dimensions must agree");
    let rows = a.nrows();
    let cols = a.ncols();
    let mut out = CVec::zeros(rows);
    let a_data = a.as_slice();
    let x_data = x.as_slice();
    let band = rows.div_ceil(rayon::current_num_threads().max(1));
    out.as_mut_slice()
        .par_chunks_mut(band.max(1))
        .enumerate()
        .for_each(|(chunk, out_band)| {
            let r0 = chunk * band.max(1);
            for (k, &coeff) in x_data.iter().enumerate().take(cols) {
                if coeff == Complex64::ZERO {
                    continue;
                }
                let a_band = &a_data[k * rows + r0..k * rows + r0 + out_band.len()];
                for (o, &av) in out_band.iter_mut().zip(a_band) {
                    *o += coeff * av;
                }
            }
        });
    out
}

/// y = A * x with automatic dispatch.
pub fn matvec(a: &CMat, x: &CVec) -> CVec {
    #[cfg(feature = "parallel")]
    {
        if a.nrows() * a.ncols() >= PAR_FLOP_CUTOFF {
            return matvec_parallel(a, x);
        }
    }
    matvec_serial(a, x)
}

/// Largest entry modulus of A - B.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shapes must agree");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entry modulus.
pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max-norm distance from the identity.
pub fn identity_defect(a: &CMat) -> f64 {
    let n = a.nrows();
    max_abs_diff(a, &CMat::identity(n, a.ncols()))
}

/// Max-norm of U†U - I.
pub fn unitarity_defect(u: &CMat) -> f64 {
    identity_defect(&matmul(&u.adjoint(), u))
}

/// Max-norm of U - U†.
pub fn hermiticity_defect(u: &CMat) -> f64 {
    max_abs_diff(u, &u.adjoint())
}

/// Extends a set of orthonormal columns to an orthonormal basis of the
/// full space by Gram-Schmidt against the standard basis. Used to
/// complete thin SVD factors with their null-space directions.
pub fn complete_orthonormal(cols: &[CVec], dim: usize) -> Vec<CVec> {
    let mut basis: Vec<CVec> = cols.to_vec();
    let mut extra = Vec::new();
    for k in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut candidate = CVec::zeros(dim);
        candidate[k] = Complex64::ONE;
        for b in &basis {
            let overlap = b.dotc(&candidate);
            candidate -= b * overlap;
        }
        let norm = candidate.norm();
        if norm > 1e-7 {
            candidate /= Complex64::new(norm, 0.0);
            // Second orthogonalization pass for numerical hygiene.
            for b in &basis {
                let overlap = b.dotc(&candidate);
                candidate -= b * overlap;
            }
            candidate /= Complex64::new(candidate.norm(), 0.0);
            basis.push(candidate.clone());
            extra.push(candidate);
        }
    }
    assert_eq!(basis.len(), dim, "orthonormal completion failed");
    extra
}

/// In-place modified Gram-Schmidt on a block of vectors that should
/// already be near-orthonormal (degenerate eigenspaces).
pub fn reorthonormalize(block: &mut [CVec]) {
    for i in 0..block.len() {
        for j in 0..i {
            let overlap = block[j].dotc(&block[i]);
            let correction = &block[j] * overlap;
            block[i] -= correction;
        }
        let norm = block[i].norm();
        if norm > 0.0 {
            block[i] /= Complex64::new(norm, 0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_like(n: usize, m: usize, seed: u64) -> CMat {
        // Cheap deterministic fill; good enough to exercise the kernels.
        let mut s = seed;
        CMat::from_fn(n, m, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            c(re, im)
        })
    }

    #[test]
    fn matmul_matches_nalgebra() {
        for (n, k, m) in [(3, 4, 5), (17, 9, 13), (70, 70, 70)] {
            let a = random_like(n, k, 1);
            let b = random_like(k, m, 2);
            let ours = matmul(&a, &b);
            let serial = matmul_serial(&a, &b);
            let reference = &a * &b;
            assert!(max_abs_diff(&ours, &reference) < 1e-12);
            assert!(max_abs_diff(&serial, &reference) < 1e-12);
        }
    }

    #[test]
    fn matvec_matches_nalgebra() {
        for n in [5, 33, 90] {
            let a = random_like(n, n, 3);
            let x = random_like(n, 1, 4).column(0).into_owned();
            let reference = &a * &x;
            assert!((matvec(&a, &x) - &reference).norm() < 1e-12);
            assert!((matvec_serial(&a, &x) - &reference).norm() < 1e-12);
        }
    }

    #[test]
    fn unitarity_defect_detects() {
        let id = CMat::identity(4, 4);
        assert!(unitarity_defect(&id) < 1e-15);
        let mut bad = id.clone();
        bad[(0, 0)] = c(1.5, 0.0);
        assert!(unitarity_defect(&bad) > 0.1);
    }

    #[test]
    fn completion_spans_the_space() {
        let v = CVec::from_vec(vec![c(0.6, 0.0), c(0.8, 0.0), c(0.0, 0.0)]);
        let extra = complete_orthonormal(&[v.clone()], 3);
        assert_eq!(extra.len(), 2);
        for e in &extra {
            assert!((e.norm() - 1.0).abs() < 1e-12);
            assert!(v.dotc(e).norm() < 1e-12);
        }
        assert!(extra[0].dotc(&extra[1]).norm() < 1e-12);
    }
}
