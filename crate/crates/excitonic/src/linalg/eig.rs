//! Eigendecomposition of complex Hermitian matrices by cyclic Jacobi
//! rotations, and the exact unitary exponential built on top of it.
//!
//! Jacobi is the right tool here: all in-scope matrices are small (dimension
//! 2 to a few hundred), and the method delivers eigenpairs at machine
//! precision with guaranteed convergence for Hermitian input.

use num_complex::Complex;

use super::{ComplexMatrix, HermitianMatrix, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

const MAX_SWEEPS: usize = 64;

/// Sign of the exponent in exp(sign · i · H · t).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// Result of [`eigh`]: real eigenvalues in ascending order and the unitary
/// matrix whose columns are the matching eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenDecomposition<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: ComplexMatrix<T>,
}

/// Eigendecomposition of a Hermitian matrix.
pub fn eigh<T: Scalar>(h: &HermitianMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = h.dim();
    let mut a: Vec<Complex<T>> = h.data().to_vec();
    let mut v: Vec<Complex<T>> = ComplexMatrix::<T>::identity(n)?.data().to_vec();

    let scale = h.frobenius_norm();
    if scale.is_zero() {
        return Ok(EigenDecomposition {
            eigenvalues: vec![T::zero(); n],
            eigenvectors: ComplexMatrix::from_raw(n, v),
        });
    }
    let target = scale * T::epsilon() * lit(n as f64);

    let mut converged = false;
    let mut last_off = T::zero();
    for _sweep in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[i * n + j].norm_sqr();
                }
            }
        }
        let off = off.sqrt();
        last_off = off;
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(n, &mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off: last_off.to_f64().unwrap_or(f64::NAN),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let eigenvalues: Vec<T> = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = vec![Complex::new(T::zero(), T::zero()); n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + new_col] = v[row * n + old_col];
        }
    }

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_raw(n, vectors),
    })
}

/// One Jacobi rotation zeroing the (p, q) entry.
///
/// The rotation is U = [[c, −s·e^{iφ}], [s·e^{−iφ}, c]] acting on the (p, q)
/// plane, with e^{iφ} the phase of a_pq and tan θ chosen with |θ| ≤ π/4.
fn rotate<T: Scalar>(n: usize, a: &mut [Complex<T>], v: &mut [Complex<T>], p: usize, q: usize) {
    let apq = a[p * n + q];
    let mag = apq.norm();
    if mag.is_zero() {
        return;
    }
    let phase = apq / mag;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;

    let tau = (app - aqq) / (mag + mag);
    let t = if tau >= T::zero() {
        T::one() / (tau + T::one().hypot(tau))
    } else {
        -T::one() / (-tau + T::one().hypot(tau))
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let cs = Complex::new(c, T::zero());
    let sp = phase * s; // s·e^{iφ}
    let spc = phase.conj() * s; // s·e^{−iφ}

    // column update: A <- A·U, V <- V·U
    for i in 0..n {
        let aip = a[i * n + p];
        let aiq = a[i * n + q];
        a[i * n + p] = aip * cs + aiq * spc;
        a[i * n + q] = aiq * cs - aip * sp;

        let vip = v[i * n + p];
        let viq = v[i * n + q];
        v[i * n + p] = vip * cs + viq * spc;
        v[i * n + q] = viq * cs - vip * sp;
    }
    // row update: A <- U†·A
    for j in 0..n {
        let apj = a[p * n + j];
        let aqj = a[q * n + j];
        a[p * n + j] = apj * cs + aqj * sp;
        a[q * n + j] = aqj * cs - apj * spc;
    }
    // clamp the rotated pair to exactly Hermitian values
    a[p * n + q] = Complex::new(T::zero(), T::zero());
    a[q * n + p] = Complex::new(T::zero(), T::zero());
    a[p * n + p] = Complex::new(a[p * n + p].re, T::zero());
    a[q * n + q] = Complex::new(a[q * n + q].re, T::zero());
}

/// Exact unitary exponential exp(sign · i · h · t) via eigendecomposition:
/// V · diag(e^{sign·i·λ_j·t}) · V†.
pub fn expm_hermitian<T: Scalar>(
    h: &HermitianMatrix<T>,
    t: T,
    sign: Sign,
) -> Result<UnitaryMatrix<T>> {
    let n = h.dim();
    let eig = eigh(h)?;
    let s: T = sign.factor();
    let phases: Vec<Complex<T>> = eig
        .eigenvalues
        .iter()
        .map(|&lam| Complex::from_polar(T::one(), s * lam * t))
        .collect();

    let v = &eig.eigenvectors;
    let mut data = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..n {
        for k in 0..n {
            let w = v[(i, k)] * phases[k];
            if w.re.is_zero() && w.im.is_zero() {
                continue;
            }
            for j in 0..n {
                data[i * n + j] += w * v[(j, k)].conj();
            }
        }
    }
    UnitaryMatrix::new(ComplexMatrix::from_raw(n, data))
}
