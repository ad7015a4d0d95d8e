//! Dense complex linear algebra specialized to small Hermitian and unitary
//! matrices: quasi-Pauli operators, tensor products, exact Hermitian
//! exponentials, and phase-insensitive gate comparison.
//!
//! Matrices are stored row-major. Dimensions are powers of two between 2 and
//! [`MAX_DIM`]; every value is immutable after construction and all
//! operations are pure functions.

mod eig;

pub use eig::{eigh, expm_hermitian, EigenDecomposition, Sign};

use num_complex::Complex;
use std::ops::{Add, Index, Mul, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{c, lit, spec_tol, Scalar, HERMITICITY_TOL, UNITARITY_TOL};

/// Largest supported matrix dimension (2^12).
pub const MAX_DIM: usize = 1 << 12;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

fn check_dim(dim: usize) -> Result<()> {
    if !dim.is_power_of_two() || dim < 2 {
        return Err(Error::invalid(format!(
            "matrix dimension must be a power of two >= 2, got {dim}"
        )));
    }
    if dim > MAX_DIM {
        return Err(Error::CapacityExceeded { dim, max: MAX_DIM });
    }
    Ok(())
}

impl<T: Scalar> ComplexMatrix<T> {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        })
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        Ok(m)
    }

    /// Build from a function of (row, column).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Result<Self> {
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        let m = Self { dim, data };
        m.ensure_finite()?;
        Ok(m)
    }

    /// Build from explicit rows.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::invalid(format!(
                    "row {i} has length {} in a {dim}x{dim} matrix",
                    row.len()
                )));
            }
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        let m = Self { dim, data };
        m.ensure_finite()?;
        Ok(m)
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.dim + j] = v;
    }

    fn ensure_finite(&self) -> Result<()> {
        for z in &self.data {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::invalid("matrix entries must be finite"));
            }
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = vec![Complex::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self { dim: n, data }
    }

    /// Multiply every entry by a complex factor.
    pub fn scale(&self, z: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    pub fn trace(&self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..self.dim {
            acc += self.data[i * self.dim + i];
        }
        acc
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Frobenius norm of the difference.
    pub fn frobenius_distance(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "frobenius_distance: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc + (a - b).norm_sqr())
            .sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &ComplexVector<T>) -> ComplexVector<T> {
        assert_eq!(self.dim, v.dim(), "apply: dimension mismatch");
        let n = self.dim;
        let out = (0..n)
            .map(|i| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for j in 0..n {
                    acc += self.data[i * n + j] * v.data[j];
                }
                acc
            })
            .collect();
        ComplexVector { data: out }
    }
}

impl<T: Scalar> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T: Scalar> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "matrix product: dimension mismatch");
        let n = self.dim;
        let mut data = vec![Complex::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        ComplexMatrix { dim: n, data }
    }
}

impl<T: Scalar> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "matrix sum: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "matrix difference: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Complex column vector (state vector).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector<T> {
    data: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexVector<T> {
    pub fn new(data: Vec<Complex<T>>) -> Result<Self> {
        check_dim(data.len())?;
        for z in &data {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::invalid("vector entries must be finite"));
            }
        }
        Ok(Self { data })
    }

    /// Computational basis state |index⟩ in the given dimension.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::invalid(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut data = vec![Complex::new(T::zero(), T::zero()); dim];
        data[index] = Complex::new(T::one(), T::zero());
        Ok(Self { data })
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Inner product ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim(), other.dim(), "inner product: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            })
    }

    pub fn norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        Self {
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    /// Tensor product |self⟩ ⊗ |other⟩.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let dim = self.dim() * other.dim();
        if dim > MAX_DIM {
            return Err(Error::CapacityExceeded { dim, max: MAX_DIM });
        }
        let mut data = Vec::with_capacity(dim);
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Ok(Self { data })
    }
}

impl<T: Scalar> Index<usize> for ComplexVector<T> {
    type Output = Complex<T>;

    fn index(&self, i: usize) -> &Complex<T> {
        &self.data[i]
    }
}

/// Hermitian refinement of [`ComplexMatrix`].
///
/// Construction verifies ‖M − M†‖_F ≤ 1e−12 · ‖M‖_F (the zero matrix is
/// Hermitian).
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix<T>(ComplexMatrix<T>);

impl<T: Scalar> HermitianMatrix<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        m.ensure_finite()?;
        let norm = m.frobenius_norm();
        if norm > T::zero() {
            let residual = m.frobenius_distance(&m.adjoint()) / norm;
            if residual > spec_tol(HERMITICITY_TOL) {
                return Err(Error::NotHermitian {
                    residual: residual.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.0
    }
}

impl<T: Scalar> std::ops::Deref for HermitianMatrix<T> {
    type Target = ComplexMatrix<T>;

    fn deref(&self) -> &ComplexMatrix<T> {
        &self.0
    }
}

/// Unitary refinement of [`ComplexMatrix`].
///
/// Construction verifies ‖U†U − I‖_F ≤ 1e−10 · dim.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix<T>(ComplexMatrix<T>);

impl<T: Scalar> UnitaryMatrix<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        m.ensure_finite()?;
        let gram = &m.adjoint() * &m;
        let identity = ComplexMatrix::identity(m.dim())?;
        let residual = gram.frobenius_distance(&identity);
        let limit = spec_tol::<T>(UNITARITY_TOL) * lit(m.dim() as f64);
        if residual > limit {
            return Err(Error::NotUnitary {
                residual: residual.to_f64().unwrap_or(f64::NAN),
                limit: limit.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.0
    }
}

impl<T: Scalar> std::ops::Deref for UnitaryMatrix<T> {
    type Target = ComplexMatrix<T>;

    fn deref(&self) -> &ComplexMatrix<T> {
        &self.0
    }
}

/// Names of the quasi-Pauli operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(Pauli::I),
            "X" => Ok(Pauli::X),
            "Y" => Ok(Pauli::Y),
            "Z" => Ok(Pauli::Z),
            other => Err(Error::invalid(format!("unknown Pauli operator {other:?}"))),
        }
    }
}

/// The 2×2 quasi-Pauli matrix in the {|0⟩, |1⟩} basis.
///
/// X = J₊ + J₋, Y = i(−J₊ + J₋), Z = 2J_Z, so that
/// X = [[0,1],[1,0]], Y = [[0,−i],[i,0]], Z = [[1,0],[0,−1]].
pub fn quasi_pauli<T: Scalar>(p: Pauli) -> ComplexMatrix<T> {
    let rows = match p {
        Pauli::I => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
        Pauli::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        Pauli::Y => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        Pauli::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
    };
    ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()])
        .expect("2x2 Pauli construction cannot fail")
}

/// Kronecker product a ⊗ b. The left factor indexes the first qubit.
pub fn kron<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    if dim > MAX_DIM {
        return Err(Error::CapacityExceeded { dim, max: MAX_DIM });
    }
    let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for i1 in 0..da {
        for j1 in 0..da {
            let f = a[(i1, j1)];
            if f.re.is_zero() && f.im.is_zero() {
                continue;
            }
            for i2 in 0..db {
                for j2 in 0..db {
                    data[(i1 * db + i2) * dim + (j1 * db + j2)] = f * b[(i2, j2)];
                }
            }
        }
    }
    Ok(ComplexMatrix { dim, data })
}

/// |Tr(u†v)| / dim, in [0, 1]; equals 1 iff u = e^{iφ} v for some real φ.
pub fn fidelity_up_to_phase<T: Scalar>(u: &UnitaryMatrix<T>, v: &UnitaryMatrix<T>) -> Result<T> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    // Tr(u†v) = Σ_ij conj(u_ij) v_ij
    let tr = u
        .data()
        .iter()
        .zip(v.data())
        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
            acc + a.conj() * b
        });
    Ok(tr.norm() / lit(u.dim() as f64))
}

/// Frobenius norm of the commutator ‖ab − ba‖_F.
pub fn commutator_norm<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<T> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let ab = a * b;
    let ba = b * a;
    Ok(ab.frobenius_distance(&ba))
}
