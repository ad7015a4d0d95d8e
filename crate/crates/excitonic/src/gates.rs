//! Closed-form gate set: the cyclic-evolution gate U(χ, γ), the Z- and
//! X-type single-qubit gates built from it, the exact two-dot propagator,
//! iSWAP, and the seven-element CNOT sequence, plus universality witnesses.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonians::CoupledDotParams;
use crate::linalg::{fidelity_up_to_phase, kron, ComplexMatrix, UnitaryMatrix};
use crate::scalar::{c, lit, wrap_angle, Scalar};

/// Parameters of one cyclic-evolution gate: mixing angle χ ∈ [0, π] and
/// accumulated phase γ ∈ (−π, π].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingleQubitGateSpec<T> {
    pub chi: T,
    pub gamma: T,
}

impl<T: Scalar> SingleQubitGateSpec<T> {
    /// Validates χ; γ is reduced modulo 2π (the gate matrix is 2π-periodic
    /// in γ).
    pub fn new(chi: T, gamma: T) -> Result<Self> {
        if !chi.is_finite() || chi < T::zero() || chi > T::PI() {
            return Err(Error::invalid("chi must lie in [0, pi]"));
        }
        if !gamma.is_finite() {
            return Err(Error::invalid("gamma must be finite"));
        }
        Ok(Self {
            chi,
            gamma: wrap_angle(gamma),
        })
    }
}

/// Gate acquired by an arbitrary state over one cyclic evolution:
///
/// ```text
/// [ e^{iγ}cos²(χ/2) + e^{−iγ}sin²(χ/2)      i sinχ sinγ                 ]
/// [ i sinχ sinγ                             e^{iγ}sin²(χ/2) + e^{−iγ}cos²(χ/2) ]
/// ```
///
/// equivalently exp(iγ(cosχ·Z + sinχ·X)).
pub fn u_chi_gamma<T: Scalar>(spec: &SingleQubitGateSpec<T>) -> Result<UnitaryMatrix<T>> {
    let half = spec.chi * lit(0.5);
    let (sh, ch) = half.sin_cos();
    let (cos2, sin2) = (ch * ch, sh * sh);
    let eg = Complex::from_polar(T::one(), spec.gamma);
    let egc = eg.conj();
    let off = Complex::new(T::zero(), spec.chi.sin() * spec.gamma.sin());
    let mut m = ComplexMatrix::zeros(2)?;
    m.set(0, 0, eg * cos2 + egc * sin2);
    m.set(1, 1, eg * sin2 + egc * cos2);
    m.set(0, 1, off);
    m.set(1, 0, off);
    UnitaryMatrix::new(m)
}

/// Z-type gate U_Z(γ_z) = U(0, −γ_z/2) = diag(e^{−iγ_z/2}, e^{+iγ_z/2}).
pub fn u_z<T: Scalar>(gamma_z: T) -> Result<UnitaryMatrix<T>> {
    u_chi_gamma(&SingleQubitGateSpec::new(T::zero(), -gamma_z * lit(0.5))?)
}

/// X-type gate U_X(γ_x) = U(π/2, −γ_x/2) = cos(γ_x/2)·I − i·sin(γ_x/2)·X.
pub fn u_x<T: Scalar>(gamma_x: T) -> Result<UnitaryMatrix<T>> {
    u_chi_gamma(&SingleQubitGateSpec::new(
        T::PI() * lit(0.5),
        -gamma_x * lit(0.5),
    )?)
}

/// Whether two cyclic-evolution gates fail to commute:
/// sin γ₁ · sin γ₂ · sin(χ₂ − χ₁) ≠ 0 (tested against 1e−12).
pub fn noncommuting<T: Scalar>(s1: &SingleQubitGateSpec<T>, s2: &SingleQubitGateSpec<T>) -> bool {
    let witness = s1.gamma.sin() * s2.gamma.sin() * (s2.chi - s1.chi).sin();
    witness.abs() > lit(1e-12)
}

/// Exact propagator of the coupled pair in closed form: corners e^{∓itε},
/// central block with cos(−2Vt) on the diagonal and i·sin(−2Vt) off it.
///
/// The signs inside the central block are kept literally in this form;
/// simplification happens only in tests. Together with the commensurate
/// timing t·ε = 2kπ, V·t = mπ − π/4 this block becomes the iSWAP central
/// block [[0, i], [i, 0]].
pub fn two_qubit_propagator<T: Scalar>(
    p: &CoupledDotParams<T>,
    t: T,
) -> Result<UnitaryMatrix<T>> {
    p.validate()?;
    if !t.is_finite() || t < T::zero() {
        return Err(Error::invalid("time must be non-negative and finite"));
    }
    let minus_2vt = -(p.coupling + p.coupling) * t;
    let (s, co) = minus_2vt.sin_cos();
    let mut m = ComplexMatrix::zeros(4)?;
    m.set(0, 0, Complex::from_polar(T::one(), -t * p.epsilon));
    m.set(3, 3, Complex::from_polar(T::one(), t * p.epsilon));
    m.set(1, 1, Complex::new(co, T::zero()));
    m.set(2, 2, Complex::new(co, T::zero()));
    m.set(1, 2, Complex::new(T::zero(), s));
    m.set(2, 1, Complex::new(T::zero(), s));
    UnitaryMatrix::new(m)
}

/// The elementary two-qubit iSWAP gate: identity corners, central block
/// [[0, i], [i, 0]].
pub fn iswap<T: Scalar>() -> Result<UnitaryMatrix<T>> {
    let mut m = ComplexMatrix::zeros(4)?;
    m.set(0, 0, c(1.0, 0.0));
    m.set(3, 3, c(1.0, 0.0));
    m.set(1, 2, c(0.0, 1.0));
    m.set(2, 1, c(0.0, 1.0));
    UnitaryMatrix::new(m)
}

/// Embed a single-qubit gate into the two-qubit register:
/// qubit 1 → gate ⊗ I, qubit 2 → I ⊗ gate.
pub fn apply_single<T: Scalar>(gate: &UnitaryMatrix<T>, qubit: usize) -> Result<UnitaryMatrix<T>> {
    if gate.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: gate.dim(),
            right: 2,
        });
    }
    let identity = ComplexMatrix::identity(2)?;
    let embedded = match qubit {
        1 => kron(gate.matrix(), &identity)?,
        2 => kron(&identity, gate.matrix())?,
        other => {
            return Err(Error::invalid(format!(
                "qubit index must be 1 or 2, got {other}"
            )))
        }
    };
    UnitaryMatrix::new(embedded)
}

/// One element of a two-qubit gate sequence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateElement<T> {
    Single {
        spec: SingleQubitGateSpec<T>,
        qubit: usize,
    },
    ISwap,
}

impl<T: Scalar> GateElement<T> {
    /// The element's 4×4 matrix.
    pub fn matrix(&self) -> Result<UnitaryMatrix<T>> {
        match self {
            GateElement::Single { spec, qubit } => apply_single(&u_chi_gamma(spec)?, *qubit),
            GateElement::ISwap => iswap(),
        }
    }
}

impl<T: Scalar> std::fmt::Display for GateElement<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GateElement::Single { spec, qubit } => {
                let tiny = lit::<T>(1e-12);
                if spec.chi.abs() < tiny {
                    write!(f, "Uz({}) on qubit {}", -(spec.gamma + spec.gamma), qubit)
                } else if (spec.chi - T::PI() * lit(0.5)).abs() < tiny {
                    write!(f, "Ux({}) on qubit {}", -(spec.gamma + spec.gamma), qubit)
                } else {
                    write!(
                        f,
                        "U(chi={}, gamma={}) on qubit {}",
                        spec.chi, spec.gamma, qubit
                    )
                }
            }
            GateElement::ISwap => f.write_str("iSWAP"),
        }
    }
}

/// An ordered gate sequence in operator order: the product is taken left to
/// right as written, so the rightmost (last) element acts first.
#[derive(Clone, Debug)]
pub struct GateSequence<T> {
    pub elements: Vec<GateElement<T>>,
    pub composed: UnitaryMatrix<T>,
}

impl<T: Scalar> GateSequence<T> {
    /// Compose a sequence from its elements (rightmost acts first).
    pub fn compose(elements: Vec<GateElement<T>>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::invalid("gate sequence must not be empty"));
        }
        let mut product = ComplexMatrix::<T>::identity(4)?;
        for e in &elements {
            product = &product * e.matrix()?.matrix();
        }
        Ok(Self {
            elements,
            composed: UnitaryMatrix::new(product)?,
        })
    }
}

/// Standard CNOT flipping the target conditioned on `control` ∈ {1, 2}.
pub fn standard_cnot<T: Scalar>(control: usize) -> Result<UnitaryMatrix<T>> {
    let mut m = ComplexMatrix::zeros(4)?;
    let one = c::<T>(1.0, 0.0);
    match control {
        1 => {
            m.set(0, 0, one);
            m.set(1, 1, one);
            m.set(2, 3, one);
            m.set(3, 2, one);
        }
        2 => {
            m.set(0, 0, one);
            m.set(2, 2, one);
            m.set(1, 3, one);
            m.set(3, 1, one);
        }
        other => {
            return Err(Error::invalid(format!(
                "control qubit must be 1 or 2, got {other}"
            )))
        }
    }
    UnitaryMatrix::new(m)
}

/// Result of checking a composed sequence against the standard CNOT.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CnotVerification<T> {
    /// Control-qubit assignment that matches.
    pub control_qubit: usize,
    /// Fidelity of the matching assignment.
    pub fidelity: T,
    /// Fidelity of the other assignment, for the report.
    pub fidelity_other: T,
}

/// Verify a sequence's composed matrix against CNOT up to global phase,
/// trying both control-qubit assignments.
pub fn verify_cnot<T: Scalar>(sequence: &GateSequence<T>) -> Result<CnotVerification<T>> {
    let fid1 = fidelity_up_to_phase(&sequence.composed, &standard_cnot(1)?)?;
    let fid2 = fidelity_up_to_phase(&sequence.composed, &standard_cnot(2)?)?;
    let threshold = T::one() - lit(1e-10);
    let (control_qubit, fidelity, fidelity_other) = if fid1 >= fid2 {
        (1, fid1, fid2)
    } else {
        (2, fid2, fid1)
    };
    if fidelity < threshold {
        let mut elements = String::new();
        for e in &sequence.elements {
            elements.push_str(&format!("{e}:\n"));
            let m = e.matrix()?;
            for i in 0..4 {
                let row: Vec<String> = (0..4)
                    .map(|j| {
                        let z = m[(i, j)];
                        format!(
                            "({:+.6}{:+.6}i)",
                            z.re.to_f64().unwrap_or(f64::NAN),
                            z.im.to_f64().unwrap_or(f64::NAN)
                        )
                    })
                    .collect();
                elements.push_str(&format!("  [{}]\n", row.join(", ")));
            }
        }
        return Err(Error::DecompositionMismatch {
            fidelity: fid1.to_f64().unwrap_or(f64::NAN),
            fidelity_alt: fid2.to_f64().unwrap_or(f64::NAN),
            elements,
        });
    }
    Ok(CnotVerification {
        control_qubit,
        fidelity,
        fidelity_other,
    })
}

/// The seven-element CNOT sequence
/// U_Z⁽²⁾(−π/2) · U^{iS} · U_X⁽¹⁾(π/2) · U^{iS} · U_Z⁽¹⁾(π/2) ·
/// U_Z⁽²⁾(−π/2) · U_X⁽²⁾(−π/2), rightmost element applied first.
///
/// The composed matrix is checked against the standard CNOT up to global
/// phase before being returned.
pub fn cnot_sequence<T: Scalar>() -> Result<GateSequence<T>> {
    let quarter = T::PI() * lit::<T>(0.25);
    let half_pi = T::PI() * lit::<T>(0.5);
    // U_Z(g) = U(0, -g/2), U_X(g) = U(pi/2, -g/2)
    let z_plus = SingleQubitGateSpec::new(T::zero(), -quarter)?; // U_Z(pi/2)
    let z_minus = SingleQubitGateSpec::new(T::zero(), quarter)?; // U_Z(-pi/2)
    let x_plus = SingleQubitGateSpec::new(half_pi, -quarter)?; // U_X(pi/2)
    let x_minus = SingleQubitGateSpec::new(half_pi, quarter)?; // U_X(-pi/2)

    let elements = vec![
        GateElement::Single {
            spec: z_minus,
            qubit: 2,
        },
        GateElement::ISwap,
        GateElement::Single {
            spec: x_plus,
            qubit: 1,
        },
        GateElement::ISwap,
        GateElement::Single {
            spec: z_plus,
            qubit: 1,
        },
        GateElement::Single {
            spec: z_minus,
            qubit: 2,
        },
        GateElement::Single {
            spec: x_minus,
            qubit: 2,
        },
    ];
    let sequence = GateSequence::compose(elements)?;
    verify_cnot(&sequence)?;
    Ok(sequence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator_norm, expm_hermitian, quasi_pauli, HermitianMatrix, Pauli, Sign};
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn spec(chi: f64, gamma: f64) -> SingleQubitGateSpec<f64> {
        SingleQubitGateSpec::new(chi, gamma).unwrap()
    }

    #[test]
    fn u_chi_gamma_reference_values() {
        // chi = 0: diag(e^{ig}, e^{-ig})
        let u = u_chi_gamma(&spec(0.0, 0.6)).unwrap();
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, 0.6)).norm() < 1e-15);
        assert!((u[(1, 1)] - Complex64::from_polar(1.0, -0.6)).norm() < 1e-15);
        assert!(u[(0, 1)].norm() < 1e-15);

        // gamma = 0: identity
        let u = u_chi_gamma(&spec(1.1, 0.0)).unwrap();
        assert!(u.frobenius_distance(&ComplexMatrix::identity(2).unwrap()) < 1e-15);

        // chi = pi/2, gamma = -pi/4
        let u = u_chi_gamma(&spec(FRAC_PI_2, -FRAC_PI_4)).unwrap();
        let r = SQRT_2 / 2.0;
        assert!((u[(0, 0)] - Complex64::new(r, 0.0)).norm() < 1e-15);
        assert!((u[(0, 1)] - Complex64::new(0.0, -r)).norm() < 1e-15);
        assert!((u[(1, 1)] - Complex64::new(r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn u_chi_gamma_matches_exponential_construction() {
        let mut rng = StdRng::seed_from_u64(9);
        let x = quasi_pauli::<f64>(Pauli::X);
        let z = quasi_pauli::<f64>(Pauli::Z);
        for _ in 0..50 {
            let chi = rng.gen_range(0.0..PI);
            let gamma = rng.gen_range(-PI..PI);
            let u = u_chi_gamma(&spec(chi, gamma)).unwrap();
            let axis = &z.scale(Complex64::new(chi.cos(), 0.0))
                + &x.scale(Complex64::new(chi.sin(), 0.0));
            let h = HermitianMatrix::new(axis).unwrap();
            let via_exp = expm_hermitian(&h, gamma, Sign::Plus).unwrap();
            assert!(u.frobenius_distance(&via_exp) < 1e-12);
        }
    }

    #[test]
    fn u_chi_gamma_same_axis_composition_and_det() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..30 {
            let chi = rng.gen_range(0.0..PI);
            let (g1, g2) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let u1 = u_chi_gamma(&spec(chi, g1)).unwrap();
            let u2 = u_chi_gamma(&spec(chi, g2)).unwrap();
            let both = u_chi_gamma(&spec(chi, g1 + g2)).unwrap();
            let prod = u1.matrix() * u2.matrix();
            assert!(prod.frobenius_distance(&both) < 1e-12);

            // det = 1 (trace-free generator)
            let det = u1[(0, 0)] * u1[(1, 1)] - u1[(0, 1)] * u1[(1, 0)];
            assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn u_z_reference_values() {
        assert!(u_z(0.0)
            .unwrap()
            .frobenius_distance(&ComplexMatrix::identity(2).unwrap())
            < 1e-15);

        // u_z(pi) = diag(-i, i) = -i Z
        let u = u_z(PI).unwrap();
        assert!((u[(0, 0)] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((u[(1, 1)] - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        // the CNOT-sequence operand u_z(pi/2)
        let u = u_z(FRAC_PI_2).unwrap();
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, -FRAC_PI_4)).norm() < 1e-15);
        assert!((u[(1, 1)] - Complex64::from_polar(1.0, FRAC_PI_4)).norm() < 1e-15);
    }

    #[test]
    fn u_x_reference_values() {
        assert!(u_x(0.0)
            .unwrap()
            .frobenius_distance(&ComplexMatrix::identity(2).unwrap())
            < 1e-15);

        // u_x(pi) = -i X
        let u = u_x(PI).unwrap();
        assert!(u[(0, 0)].norm() < 1e-15);
        assert!((u[(0, 1)] - Complex64::new(0.0, -1.0)).norm() < 1e-15);

        // u_x(pi/2) = (I - iX)/sqrt(2)
        let u = u_x(FRAC_PI_2).unwrap();
        let r = 1.0 / SQRT_2;
        assert!((u[(0, 0)] - Complex64::new(r, 0.0)).norm() < 1e-15);
        assert!((u[(0, 1)] - Complex64::new(0.0, -r)).norm() < 1e-15);
    }

    #[test]
    fn noncommuting_reference_cases() {
        // gamma1 = 0 always commutes
        assert!(!noncommuting(&spec(0.3, 0.0), &spec(1.0, 0.7)));
        // equal chi always commutes
        assert!(!noncommuting(&spec(0.8, 0.5), &spec(0.8, 1.1)));
        // the generating pair of the universal set
        let s1 = spec(0.0, FRAC_PI_2);
        let s2 = spec(FRAC_PI_2, FRAC_PI_2);
        assert!(noncommuting(&s1, &s2));
        let n = commutator_norm(
            u_chi_gamma(&s1).unwrap().matrix(),
            u_chi_gamma(&s2).unwrap().matrix(),
        )
        .unwrap();
        assert!(n > 1.0);
    }

    #[test]
    fn noncommuting_agrees_with_commutator_norm() {
        let mut rng = StdRng::seed_from_u64(101);
        for _ in 0..1000 {
            let s1 = spec(rng.gen_range(0.0..PI), rng.gen_range(-PI..PI));
            let s2 = spec(rng.gen_range(0.0..PI), rng.gen_range(-PI..PI));
            let predicted = noncommuting(&s1, &s2);
            let norm = commutator_norm(
                u_chi_gamma(&s1).unwrap().matrix(),
                u_chi_gamma(&s2).unwrap().matrix(),
            )
            .unwrap();
            assert_eq!(predicted, norm > 1e-9, "disagreement at {s1:?}, {s2:?}");
        }
    }

    #[test]
    fn two_qubit_propagator_reference_cases() {
        let p = CoupledDotParams::new(1.3, 0.2).unwrap();
        let u0 = two_qubit_propagator(&p, 0.0).unwrap();
        assert!(u0.frobenius_distance(&ComplexMatrix::identity(4).unwrap()) < 1e-15);

        // 2Vt = pi/2 with eps*t = 2k*pi: central block [[0, -i], [-i, 0]]
        let k = 2.0;
        let t = 2.0 * k * PI / p.epsilon;
        let v = (PI / 2.0) / (2.0 * t);
        let p2 = CoupledDotParams::new(p.epsilon, v).unwrap();
        let u = two_qubit_propagator(&p2, t).unwrap();
        assert!((u[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((u[(1, 2)] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!(u[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn two_qubit_propagator_population_transfer() {
        let p: CoupledDotParams<f64> = CoupledDotParams::new(1.4, 0.105).unwrap();
        for &t in &[0.3, 1.7, 5.2] {
            let u = two_qubit_propagator(&p, t).unwrap();
            let transferred = u[(2, 1)].norm_sqr();
            let want = (2.0 * p.coupling * t).sin().powi(2);
            assert!((transferred - want).abs() < 1e-12);
        }
    }

    #[test]
    fn two_qubit_propagator_conserves_excitation_grading() {
        let p = CoupledDotParams::new(1.1, 0.17).unwrap();
        let u = two_qubit_propagator(&p, 2.9).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 0), (2, 0), (3, 1), (3, 2), (1, 3), (2, 3)] {
            assert_eq!(u[(i, j)], Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn two_qubit_propagator_is_time_reversed_exponential() {
        // the closed form equals exp(−iHt) with the coupling sign flipped;
        // the off-diagonal block of exp(−iHt) itself carries +i·sin(2Vt)
        use crate::hamiltonians::coupled_hamiltonian;
        use crate::propagation::evolve_const;
        let p = CoupledDotParams::new(1.3, 0.21).unwrap();
        let t = 0.7;
        let closed = two_qubit_propagator(&p, t).unwrap();

        let mut mirrored = coupled_hamiltonian(&p).unwrap().into_matrix();
        mirrored.set(1, 2, Complex64::new(2.0 * p.coupling, 0.0));
        mirrored.set(2, 1, Complex64::new(2.0 * p.coupling, 0.0));
        let u = evolve_const(&HermitianMatrix::new(mirrored).unwrap(), t).unwrap();
        assert!(closed.frobenius_distance(&u) < 1e-12);
    }

    #[test]
    fn iswap_matrix_and_powers() {
        let u = iswap::<f64>().unwrap();
        assert_eq!(u[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(u[(1, 2)], Complex64::new(0.0, 1.0));
        assert_eq!(u[(2, 1)], Complex64::new(0.0, 1.0));
        assert_eq!(u[(1, 1)], Complex64::new(0.0, 0.0));

        // iswap |01> = i |10>
        let psi = crate::linalg::ComplexVector::<f64>::basis_state(4, 1).unwrap();
        let out = u.apply(&psi);
        assert!((out[2] - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let u2 = u.matrix() * u.matrix();
        for (idx, want) in [1.0, -1.0, -1.0, 1.0].iter().enumerate() {
            assert!((u2[(idx, idx)] - Complex64::new(*want, 0.0)).norm() < 1e-15);
        }
        let u4 = &u2 * &u2;
        assert!(u4.frobenius_distance(&ComplexMatrix::identity(4).unwrap()) < 1e-15);
    }

    #[test]
    fn iswap_from_commensurate_timing() {
        // t*eps = 2k*pi and V*t = m*pi - pi/4 turn the propagator into iSWAP
        let epsilon = 1.4;
        let (k, m) = (5.0, 1.0);
        let t = 2.0 * k * PI / epsilon;
        let v = (m * PI - PI / 4.0) / t;
        let p = CoupledDotParams::new(epsilon, v).unwrap();
        let u = two_qubit_propagator(&p, t).unwrap();
        let fid = fidelity_up_to_phase(&u, &iswap().unwrap()).unwrap();
        assert!(fid >= 1.0 - 1e-10, "fidelity {fid}");
    }

    #[test]
    fn apply_single_reference_cases() {
        let x = UnitaryMatrix::new(quasi_pauli::<f64>(Pauli::X)).unwrap();
        let on1 = apply_single(&x, 1).unwrap();
        // (X ⊗ I)|01> = |11>
        let psi = crate::linalg::ComplexVector::<f64>::basis_state(4, 1).unwrap();
        assert!((on1.apply(&psi)[3] - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let i2 = UnitaryMatrix::new(ComplexMatrix::<f64>::identity(2).unwrap()).unwrap();
        let on2 = apply_single(&i2, 2).unwrap();
        assert!(on2.frobenius_distance(&ComplexMatrix::identity(4).unwrap()) < 1e-15);

        let uz = u_z(FRAC_PI_2).unwrap();
        let emb = apply_single(&uz, 2).unwrap();
        for (idx, phase) in [(0, -FRAC_PI_4), (1, FRAC_PI_4), (2, -FRAC_PI_4), (3, FRAC_PI_4)] {
            assert!((emb[(idx, idx)] - Complex64::from_polar(1.0, phase)).norm() < 1e-15);
        }

        assert!(apply_single(&x, 3).is_err());
    }

    #[test]
    fn cnot_sequence_composes_to_standard_cnot() {
        let seq = cnot_sequence::<f64>().unwrap();
        assert_eq!(seq.elements.len(), 7);
        let iswaps = seq
            .elements
            .iter()
            .filter(|e| matches!(e, GateElement::ISwap))
            .count();
        assert_eq!(iswaps, 2);

        let check = verify_cnot(&seq).unwrap();
        assert_eq!(check.control_qubit, 1);
        assert!(check.fidelity >= 1.0 - 1e-10);
        assert!(check.fidelity_other < 0.5);

        // composed matrix is unitary well below the type tolerance
        let gram = &seq.composed.adjoint() * seq.composed.matrix();
        assert!(gram.frobenius_distance(&ComplexMatrix::identity(4).unwrap()) < 1e-12);

        // CNOT is an involution up to global phase
        let square = UnitaryMatrix::new(seq.composed.matrix() * seq.composed.matrix()).unwrap();
        let idu = UnitaryMatrix::new(ComplexMatrix::identity(4).unwrap()).unwrap();
        assert!(fidelity_up_to_phase(&square, &idu).unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn composed_matches_right_to_left_product() {
        let seq = cnot_sequence::<f64>().unwrap();
        let mut product = ComplexMatrix::<f64>::identity(4).unwrap();
        for e in &seq.elements {
            product = &product * e.matrix().unwrap().matrix();
        }
        assert!(seq.composed.frobenius_distance(&product) < 1e-12);
    }

    #[test]
    fn gate_spec_validation() {
        assert!(SingleQubitGateSpec::new(-0.1, 0.0).is_err());
        assert!(SingleQubitGateSpec::new(PI + 0.1, 0.0).is_err());
        // gamma outside (−π, π] is wrapped, not rejected
        let s = SingleQubitGateSpec::new(0.5, 3.0 * PI).unwrap();
        assert!((s.gamma - PI).abs() < 1e-12);
    }
}
