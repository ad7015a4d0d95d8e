//! Hamiltonians of the exciton-qubit system in the quasi-spin computational
//! basis: the driven single dot, the Förster-coupled dot pair, and the N-dot
//! array.
//!
//! Units: ħ = 1 internally. Energies are in eV and times in eV⁻¹;
//! [`crate::scalar::HBAR_EV_FS`] converts times to femtoseconds at the I/O
//! boundary. Basis ordering is |0⟩ = ground (no exciton), |1⟩ = single
//! exciton; multi-qubit basis is big-endian (first dot = leftmost factor).

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::scalar::{lit, Scalar};

/// Largest supported number of dots in an array (dimension 2^12).
pub const MAX_DOTS: usize = 12;

/// Parameters of the driven single dot: gap energy ε, laser amplitude A and
/// laser frequency ω, all in eV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriveParams<T> {
    pub epsilon: T,
    pub amplitude: T,
    pub omega: T,
}

impl<T: Scalar> DriveParams<T> {
    pub fn new(epsilon: T, amplitude: T, omega: T) -> Result<Self> {
        let p = Self {
            epsilon,
            amplitude,
            omega,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon <= T::zero() {
            return Err(Error::invalid("drive epsilon must be positive and finite"));
        }
        if !self.amplitude.is_finite() || self.amplitude < T::zero() {
            return Err(Error::invalid(
                "drive amplitude must be non-negative and finite",
            ));
        }
        if !self.omega.is_finite() || self.omega <= T::zero() {
            return Err(Error::invalid("drive omega must be positive and finite"));
        }
        Ok(())
    }

    /// Detuning ε − ω.
    pub fn detuning(&self) -> T {
        self.epsilon - self.omega
    }

    /// Generalized Rabi frequency Ω = √((ε−ω)² + 4A²).
    pub fn generalized_rabi(&self) -> T {
        self.detuning().hypot(self.amplitude + self.amplitude)
    }
}

/// Parameters of two Förster-coupled dots: shared gap ε and coupling V, in eV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoupledDotParams<T> {
    pub epsilon: T,
    pub coupling: T,
}

impl<T: Scalar> CoupledDotParams<T> {
    pub fn new(epsilon: T, coupling: T) -> Result<Self> {
        let p = Self { epsilon, coupling };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon <= T::zero() {
            return Err(Error::invalid("coupled epsilon must be positive and finite"));
        }
        if !self.coupling.is_finite() || self.coupling <= T::zero() {
            return Err(Error::invalid("coupling must be positive and finite"));
        }
        Ok(())
    }
}

/// Parameters of an N-dot array with per-pair couplings.
///
/// The coupling matrix is symmetric with zero diagonal; entry (i, j) is the
/// Förster coupling between dots i and j in eV. A uniform coupling is the
/// special case of a constant off-diagonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DotArrayParams<T> {
    pub n_dots: usize,
    pub epsilon: T,
    pub coupling: Vec<Vec<T>>,
    pub drive_amplitude: T,
    pub drive_omega: T,
    pub drive_on: bool,
}

impl<T: Scalar> DotArrayParams<T> {
    /// Array with the same coupling between every pair and no drive.
    pub fn uniform(n_dots: usize, epsilon: T, coupling: T) -> Result<Self> {
        let mut matrix = vec![vec![T::zero(); n_dots]; n_dots];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if i != j {
                    *v = coupling;
                }
            }
        }
        let p = Self {
            n_dots,
            epsilon,
            coupling: matrix,
            drive_amplitude: T::zero(),
            drive_omega: T::one(),
            drive_on: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_drive(mut self, amplitude: T, omega: T) -> Result<Self> {
        self.drive_amplitude = amplitude;
        self.drive_omega = omega;
        self.drive_on = true;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_dots == 0 {
            return Err(Error::invalid("array needs at least one dot"));
        }
        if self.n_dots > MAX_DOTS {
            return Err(Error::CapacityExceeded {
                dim: 1usize << self.n_dots.min(63),
                max: 1 << MAX_DOTS,
            });
        }
        if !self.epsilon.is_finite() || self.epsilon <= T::zero() {
            return Err(Error::invalid("array epsilon must be positive and finite"));
        }
        if self.coupling.len() != self.n_dots {
            return Err(Error::invalid("coupling matrix must be n_dots x n_dots"));
        }
        for (i, row) in self.coupling.iter().enumerate() {
            if row.len() != self.n_dots {
                return Err(Error::invalid("coupling matrix must be n_dots x n_dots"));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < T::zero() {
                    return Err(Error::invalid(
                        "coupling entries must be non-negative and finite",
                    ));
                }
                if i == j && v != T::zero() {
                    return Err(Error::invalid("coupling diagonal must be zero"));
                }
                if v != self.coupling[j][i] {
                    return Err(Error::invalid("coupling matrix must be symmetric"));
                }
            }
        }
        if self.drive_on {
            if !self.drive_amplitude.is_finite() || self.drive_amplitude < T::zero() {
                return Err(Error::invalid(
                    "drive amplitude must be non-negative and finite",
                ));
            }
            if !self.drive_omega.is_finite() || self.drive_omega <= T::zero() {
                return Err(Error::invalid("drive omega must be positive and finite"));
            }
        }
        Ok(())
    }
}

/// Driven single-dot Hamiltonian
/// H(t) = (ε/2) Z + A cos(ωt) X + A sin(ωt) Y.
pub fn single_dot_hamiltonian<T: Scalar>(p: &DriveParams<T>, t: T) -> Result<HermitianMatrix<T>> {
    p.validate()?;
    let half = lit::<T>(0.5);
    let (sin, cos) = (p.omega * t).sin_cos();
    let drive = Complex::new(p.amplitude * cos, p.amplitude * sin);
    let mut m = ComplexMatrix::zeros(2)?;
    m.set(0, 0, Complex::new(p.epsilon * half, T::zero()));
    m.set(1, 1, Complex::new(-p.epsilon * half, T::zero()));
    m.set(0, 1, drive.conj());
    m.set(1, 0, drive);
    HermitianMatrix::new(m)
}

/// Time-independent rotating-frame generator
/// H_rot = ((ε−ω)/2) Z + A X, such that
/// U(t) = exp(−iωtZ/2) · exp(−i H_rot t) solves the driven Schrödinger
/// equation with U(0) = I.
pub fn rotating_frame_hamiltonian<T: Scalar>(p: &DriveParams<T>) -> Result<HermitianMatrix<T>> {
    p.validate()?;
    let half = lit::<T>(0.5);
    let delta = p.detuning() * half;
    let mut m = ComplexMatrix::zeros(2)?;
    m.set(0, 0, Complex::new(delta, T::zero()));
    m.set(1, 1, Complex::new(-delta, T::zero()));
    m.set(0, 1, Complex::new(p.amplitude, T::zero()));
    m.set(1, 0, Complex::new(p.amplitude, T::zero()));
    HermitianMatrix::new(m)
}

/// Two coupled dots without the drive, in basis {|00⟩, |01⟩, |10⟩, |11⟩}:
/// diag(ε, 0, 0, −ε) with −2V at (1,2) and (2,1); equivalently
/// (ε/2)(Z⊗I + I⊗Z) − V(X⊗X + Y⊗Y).
pub fn coupled_hamiltonian<T: Scalar>(p: &CoupledDotParams<T>) -> Result<HermitianMatrix<T>> {
    p.validate()?;
    let mut m = ComplexMatrix::zeros(4)?;
    m.set(0, 0, Complex::new(p.epsilon, T::zero()));
    m.set(3, 3, Complex::new(-p.epsilon, T::zero()));
    let v2 = -(p.coupling + p.coupling);
    m.set(1, 2, Complex::new(v2, T::zero()));
    m.set(2, 1, Complex::new(v2, T::zero()));
    HermitianMatrix::new(m)
}

fn bit_of(n_dots: usize, dot: usize) -> usize {
    // dot 0 is the leftmost tensor factor, i.e. the most significant bit
    1usize << (n_dots - 1 - dot)
}

/// N-dot array Hamiltonian: ε Σ J_iZ, pairwise exciton transfer with
/// per-pair couplings, and (optionally) the common laser drive
/// E(t) acting on every dot as in the single-dot case.
///
/// Assembled directly in the computational basis; the pair term between
/// dots i and j contributes −2·coupling[i][j] between basis states that
/// differ by one exciton transfer, matching the two-dot matrix exactly.
pub fn array_hamiltonian<T: Scalar>(p: &DotArrayParams<T>, t: T) -> Result<HermitianMatrix<T>> {
    p.validate()?;
    let n = p.n_dots;
    let dim = 1usize << n;
    let half = lit::<T>(0.5);
    let mut m = ComplexMatrix::zeros(dim)?;

    let (sin, cos) = (p.drive_omega * t).sin_cos();
    let drive_raise = Complex::new(p.drive_amplitude * cos, p.drive_amplitude * sin);

    for b in 0..dim {
        let ones = (b as u64).count_ones() as i64;
        let weight = lit::<T>((n as i64 - 2 * ones) as f64);
        m.set(b, b, Complex::new(p.epsilon * half * weight, T::zero()));

        for i in 0..n {
            let bi = bit_of(n, i);
            for j in (i + 1)..n {
                let bj = bit_of(n, j);
                let occupied_i = b & bi != 0;
                let occupied_j = b & bj != 0;
                if occupied_i != occupied_j {
                    let flipped = b ^ bi ^ bj;
                    let v = p.coupling[i][j];
                    m.set(flipped, b, Complex::new(-(v + v), T::zero()));
                }
            }
            if p.drive_on {
                let flipped = b ^ bi;
                if b & bi == 0 {
                    m.set(flipped, b, drive_raise);
                } else {
                    m.set(flipped, b, drive_raise.conj());
                }
            }
        }
    }
    HermitianMatrix::new(m)
}

/// Diagonal operator counting the number of excited dots; commutes with the
/// undriven array Hamiltonian.
pub fn excitation_number_operator<T: Scalar>(n_dots: usize) -> Result<ComplexMatrix<T>> {
    if n_dots == 0 || n_dots > MAX_DOTS {
        return Err(Error::invalid(format!(
            "dot count must be in 1..={MAX_DOTS}, got {n_dots}"
        )));
    }
    let dim = 1usize << n_dots;
    let mut m = ComplexMatrix::zeros(dim)?;
    for b in 0..dim {
        let ones = (b as u64).count_ones() as f64;
        m.set(b, b, Complex::new(lit(ones), T::zero()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator_norm, eigh, kron, quasi_pauli, Pauli};
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn drive(e: f64, a: f64, w: f64) -> DriveParams<f64> {
        DriveParams::new(e, a, w).unwrap()
    }

    #[test]
    fn single_dot_at_reference_times() {
        let p = drive(1.4, 0.3, 1.1);
        // t = 0: (eps/2) Z + A X
        let h0 = single_dot_hamiltonian(&p, 0.0).unwrap();
        assert_eq!(h0[(0, 0)], Complex64::new(0.7, 0.0));
        assert_eq!(h0[(0, 1)], Complex64::new(0.3, 0.0));
        // quarter period of the drive: (eps/2) Z + A Y
        let tq = PI / (2.0 * p.omega);
        let hq = single_dot_hamiltonian(&p, tq).unwrap();
        assert!((hq[(0, 1)] - Complex64::new(0.0, -0.3)).norm() < 1e-15);
        assert!((hq[(1, 0)] - Complex64::new(0.0, 0.3)).norm() < 1e-15);
        // A = 0: pure (eps/2) Z at any time
        let p0 = drive(1.4, 0.0, 1.1);
        let h = single_dot_hamiltonian(&p0, 0.83).unwrap();
        assert_eq!(h[(0, 1)], Complex64::new(0.0, 0.0));
        assert_eq!(h[(0, 0)], Complex64::new(0.7, 0.0));
    }

    #[test]
    fn single_dot_spectrum_is_time_independent() {
        let p = drive(1.2, 0.4, 0.9);
        let expected = ((p.epsilon / 2.0).powi(2) + p.amplitude.powi(2)).sqrt();
        for &t in &[0.0, 0.37, 1.9, 4.4] {
            let h = single_dot_hamiltonian(&p, t).unwrap();
            let eig = eigh(&h).unwrap();
            assert!((eig.eigenvalues[0] + expected).abs() < 1e-12);
            assert!((eig.eigenvalues[1] - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn rotating_frame_special_cases() {
        // resonance: A X only
        let p = drive(1.0, 0.25, 1.0);
        let h = rotating_frame_hamiltonian(&p).unwrap();
        assert_eq!(h[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(h[(0, 1)], Complex64::new(0.25, 0.0));
        // no drive: detuned Z only
        let p = drive(1.5, 0.0, 1.0);
        let h = rotating_frame_hamiltonian(&p).unwrap();
        assert_eq!(h[(0, 0)], Complex64::new(0.25, 0.0));
        assert_eq!(h[(0, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn coupled_matrix_pattern() {
        let p = CoupledDotParams::new(1.4, 0.105).unwrap();
        let h = coupled_hamiltonian(&p).unwrap();
        assert_eq!(h[(0, 0)], Complex64::new(1.4, 0.0));
        assert_eq!(h[(3, 3)], Complex64::new(-1.4, 0.0));
        assert_eq!(h[(1, 2)], Complex64::new(-0.21, 0.0));
        assert_eq!(h[(2, 1)], Complex64::new(-0.21, 0.0));
        assert_eq!(h[(1, 1)], Complex64::new(0.0, 0.0));
        assert_eq!(h[(0, 3)], Complex64::new(0.0, 0.0));

        // vanishing-coupling limit leaves only the diagonal
        let weak = coupled_hamiltonian(&CoupledDotParams::new(1.4, 1e-15).unwrap()).unwrap();
        let mut diag = ComplexMatrix::<f64>::zeros(4).unwrap();
        diag.set(0, 0, Complex64::new(1.4, 0.0));
        diag.set(3, 3, Complex64::new(-1.4, 0.0));
        assert!(weak.frobenius_distance(&diag) < 1e-14);
    }

    #[test]
    fn coupled_matches_tensor_construction() {
        let p = CoupledDotParams::new(1.3, 0.21).unwrap();
        let h = coupled_hamiltonian(&p).unwrap();

        let i2 = quasi_pauli::<f64>(Pauli::I);
        let x = quasi_pauli::<f64>(Pauli::X);
        let y = quasi_pauli::<f64>(Pauli::Y);
        let z = quasi_pauli::<f64>(Pauli::Z);
        let zz = &kron(&z, &i2).unwrap() + &kron(&i2, &z).unwrap();
        let xy = &kron(&x, &x).unwrap() + &kron(&y, &y).unwrap();
        let tensor = &zz.scale(Complex64::new(p.epsilon / 2.0, 0.0))
            - &xy.scale(Complex64::new(p.coupling, 0.0));

        assert!(h.frobenius_distance(&tensor) < 1e-14);
    }

    #[test]
    fn coupled_eigenvalues() {
        let p: CoupledDotParams<f64> = CoupledDotParams::new(1.4, 0.105).unwrap();
        let h = coupled_hamiltonian(&p).unwrap();
        let mut eig = eigh(&h).unwrap().eigenvalues;
        let mut want = vec![1.4, -1.4, 0.21, -0.21];
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, expect) in eig.iter().zip(&want) {
            assert!((got - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn array_reduces_to_single_dot() {
        let p = DotArrayParams::uniform(1, 1.4, 0.0)
            .unwrap()
            .with_drive(0.3, 1.1)
            .unwrap();
        let d = drive(1.4, 0.3, 1.1);
        for &t in &[0.0, 0.7, 2.3] {
            let ha = array_hamiltonian(&p, t).unwrap();
            let hs = single_dot_hamiltonian(&d, t).unwrap();
            assert!(ha.frobenius_distance(hs.matrix()) < 1e-15);
        }
    }

    #[test]
    fn array_two_dots_matches_coupled() {
        let v = 0.105;
        let p = DotArrayParams::uniform(2, 1.4, v).unwrap();
        let ha = array_hamiltonian(&p, 0.0).unwrap();
        let hc = coupled_hamiltonian(&CoupledDotParams::new(1.4, v).unwrap()).unwrap();
        assert!(ha.frobenius_distance(hc.matrix()) < 1e-14);
    }

    #[test]
    fn array_three_dots_brute_force_and_conservation() {
        let mut rng = StdRng::seed_from_u64(5);
        let n = 3;
        let mut p = DotArrayParams::uniform(n, 1.2, 0.0).unwrap();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = rng.gen_range(0.01..0.2);
                p.coupling[i][j] = v;
                p.coupling[j][i] = v;
            }
        }
        let h = array_hamiltonian(&p, 0.0).unwrap();

        // brute-force operator construction from embedded quasi-Pauli factors
        let i2 = quasi_pauli::<f64>(Pauli::I);
        let embed = |op: &crate::linalg::ComplexMatrix<f64>, site: usize| {
            let mut acc = if site == 0 { op.clone() } else { i2.clone() };
            for s in 1..n {
                let factor = if s == site { op.clone() } else { i2.clone() };
                acc = kron(&acc, &factor).unwrap();
            }
            acc
        };
        let z = quasi_pauli::<f64>(Pauli::Z);
        let x = quasi_pauli::<f64>(Pauli::X);
        let y = quasi_pauli::<f64>(Pauli::Y);
        let dim = 1usize << n;
        let mut brute = crate::linalg::ComplexMatrix::<f64>::zeros(dim).unwrap();
        for i in 0..n {
            brute = &brute + &embed(&z, i).scale(Complex64::new(p.epsilon / 2.0, 0.0));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let xixj = &embed(&x, i) * &embed(&x, j);
                let yiyj = &embed(&y, i) * &embed(&y, j);
                let pair = &xixj + &yiyj;
                brute = &brute - &pair.scale(Complex64::new(p.coupling[i][j], 0.0));
            }
        }
        assert!(h.frobenius_distance(&brute) < 1e-13);

        // exciton-number conservation for the undriven array
        let num = excitation_number_operator::<f64>(n).unwrap();
        assert!(commutator_norm(h.matrix(), &num).unwrap() < 1e-10);
    }

    #[test]
    fn array_capacity_and_validation() {
        assert!(matches!(
            DotArrayParams::uniform(13, 1.0, 0.1),
            Err(Error::CapacityExceeded { .. })
        ));
        assert!(DotArrayParams::uniform(0, 1.0, 0.1).is_err());

        let mut p = DotArrayParams::uniform(2, 1.0, 0.1).unwrap();
        p.coupling[0][1] = 0.2; // break symmetry
        assert!(p.validate().is_err());
    }

    #[test]
    fn param_validation() {
        assert!(DriveParams::new(0.0, 0.1, 1.0).is_err());
        assert!(DriveParams::new(1.0, -0.1, 1.0).is_err());
        assert!(DriveParams::new(1.0, 0.1, 0.0).is_err());
        assert!(DriveParams::new(f64::NAN, 0.1, 1.0).is_err());
        assert!(CoupledDotParams::new(1.0, 0.0).is_err());
    }
}
