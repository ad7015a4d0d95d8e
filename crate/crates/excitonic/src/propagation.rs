//! Propagators and state trajectories: exact exponentials for
//! time-independent Hamiltonians, time-ordered products for the driven dot,
//! and the closed-form rotating-frame propagator as a cross-check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonians::{rotating_frame_hamiltonian, single_dot_hamiltonian, DriveParams};
use crate::linalg::{
    expm_hermitian, quasi_pauli, ComplexMatrix, ComplexVector, HermitianMatrix, Pauli, Sign,
    UnitaryMatrix,
};
use crate::scalar::{c, lit, spec_tol, Scalar};

/// Numerical scheme for the time-ordered product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// Exponentiate H at the midpoint of each step. Unconditionally unitary,
    /// second order.
    #[serde(rename = "piecewise-midpoint-exponential")]
    PiecewiseMidpointExponential,
    /// Two-node Gauss–Legendre Magnus expansion. Unitary, fourth order.
    #[serde(rename = "fourth-order-magnus", alias = "fourth-order-Magnus")]
    FourthOrderMagnus,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scheme::PiecewiseMidpointExponential => f.write_str("piecewise-midpoint-exponential"),
            Scheme::FourthOrderMagnus => f.write_str("fourth-order-magnus"),
        }
    }
}

/// Step density, scheme and self-consistency tolerance of the integrator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegratorConfig<T: Scalar> {
    pub steps_per_period: usize,
    pub scheme: Scheme,
    pub tolerance: T,
}

impl<T: Scalar> Default for IntegratorConfig<T> {
    fn default() -> Self {
        Self {
            steps_per_period: 4096,
            scheme: Scheme::PiecewiseMidpointExponential,
            tolerance: lit(1e-8),
        }
    }
}

impl<T: Scalar> IntegratorConfig<T> {
    /// Configuration for accuracy-critical work (phase extraction,
    /// verification contracts): same step density, fourth-order scheme.
    pub fn high_accuracy() -> Self {
        Self {
            scheme: Scheme::FourthOrderMagnus,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps_per_period < 16 {
            return Err(Error::invalid("steps_per_period must be at least 16"));
        }
        if !self.tolerance.is_finite() || self.tolerance <= T::zero() {
            return Err(Error::invalid("tolerance must be positive and finite"));
        }
        Ok(())
    }

    fn with_steps(self, steps_per_period: usize) -> Self {
        Self {
            steps_per_period,
            ..self
        }
    }
}

/// One point of a sampled trajectory.
#[derive(Clone, Debug)]
pub struct TrajectorySample<T> {
    pub time: T,
    pub state: ComplexVector<T>,
}

/// Outcome of a propagation: the unitary, the scheme and step count used,
/// and (when requested) the sampled trajectory of an initial state.
#[derive(Clone, Debug)]
pub struct PropagationResult<T> {
    pub unitary: UnitaryMatrix<T>,
    pub samples: Option<Vec<TrajectorySample<T>>>,
    pub scheme_used: Scheme,
    pub step_count: usize,
}

/// Drive period τ = 2π/ω.
pub fn period<T: Scalar>(p: &DriveParams<T>) -> Result<T> {
    p.validate()?;
    Ok((T::PI() + T::PI()) / p.omega)
}

/// Exact propagator exp(−i·h·t) of a time-independent Hamiltonian.
pub fn evolve_const<T: Scalar>(h: &HermitianMatrix<T>, t: T) -> Result<UnitaryMatrix<T>> {
    expm_hermitian(h, t, Sign::Minus)
}

/// Closed-form propagator of the driven dot:
/// U(t) = exp(−iωtZ/2) · exp(−i·H_rot·t).
pub fn analytic_driven_propagator<T: Scalar>(
    p: &DriveParams<T>,
    t: T,
) -> Result<UnitaryMatrix<T>> {
    p.validate()?;
    let half_z = HermitianMatrix::new(quasi_pauli::<T>(Pauli::Z).scale(c(0.5, 0.0)))?;
    let frame = expm_hermitian(&half_z, p.omega * t, Sign::Minus)?;
    let rot = expm_hermitian(&rotating_frame_hamiltonian(p)?, t, Sign::Minus)?;
    UnitaryMatrix::new(frame.matrix() * rot.matrix())
}

/// Numeric propagator over [0, t] for the driven dot.
pub fn evolve_driven<T: Scalar>(
    p: &DriveParams<T>,
    t: T,
    cfg: &IntegratorConfig<T>,
) -> Result<PropagationResult<T>> {
    drive_propagate(p, T::zero(), t, cfg, None)
}

/// Numeric propagator over [t_start, t_start + duration]; the drive keeps its
/// absolute time reference, so a start offset of φ/ω realizes a drive phase φ.
pub fn evolve_driven_from<T: Scalar>(
    p: &DriveParams<T>,
    t_start: T,
    duration: T,
    cfg: &IntegratorConfig<T>,
) -> Result<PropagationResult<T>> {
    drive_propagate(p, t_start, duration, cfg, None)
}

/// Like [`evolve_driven`], additionally recording the trajectory of
/// `initial` on the integrator grid.
pub fn evolve_driven_sampled<T: Scalar>(
    p: &DriveParams<T>,
    t: T,
    cfg: &IntegratorConfig<T>,
    initial: &ComplexVector<T>,
) -> Result<PropagationResult<T>> {
    drive_propagate(p, T::zero(), t, cfg, Some(initial))
}

/// Like [`evolve_driven_from`] with trajectory recording.
pub fn evolve_driven_sampled_from<T: Scalar>(
    p: &DriveParams<T>,
    t_start: T,
    duration: T,
    cfg: &IntegratorConfig<T>,
    initial: &ComplexVector<T>,
) -> Result<PropagationResult<T>> {
    drive_propagate(p, t_start, duration, cfg, Some(initial))
}

/// [`evolve_driven`] with the refinement check: the propagation is repeated
/// at doubled step density and the two results must agree within
/// `cfg.tolerance` in Frobenius norm. Returns the finer result.
pub fn evolve_driven_checked<T: Scalar>(
    p: &DriveParams<T>,
    t: T,
    cfg: &IntegratorConfig<T>,
) -> Result<PropagationResult<T>> {
    let coarse = drive_propagate(p, T::zero(), t, cfg, None)?;
    let fine_cfg = cfg.with_steps(cfg.steps_per_period * 2);
    let fine = drive_propagate(p, T::zero(), t, &fine_cfg, None)?;
    let residual = coarse.unitary.frobenius_distance(&fine.unitary);
    if residual > cfg.tolerance {
        return Err(Error::RefinementNotConverged {
            coarse_steps: coarse.step_count,
            fine_steps: fine.step_count,
            residual: residual.to_f64().unwrap_or(f64::NAN),
            tolerance: cfg.tolerance.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(fine)
}

fn drive_propagate<T: Scalar>(
    p: &DriveParams<T>,
    t_start: T,
    duration: T,
    cfg: &IntegratorConfig<T>,
    initial: Option<&ComplexVector<T>>,
) -> Result<PropagationResult<T>> {
    p.validate()?;
    cfg.validate()?;
    if !duration.is_finite() || duration < T::zero() {
        return Err(Error::invalid("duration must be non-negative and finite"));
    }
    if let Some(state) = initial {
        if state.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: state.dim(),
                right: 2,
            });
        }
        if (state.norm() - T::one()).abs() > spec_tol(1e-10) {
            return Err(Error::invalid("initial state must be normalized"));
        }
    }

    let tau = (T::PI() + T::PI()) / p.omega;
    let periods = duration / tau;
    let steps = if duration.is_zero() {
        0
    } else {
        let raw = (lit::<T>(cfg.steps_per_period as f64) * periods).ceil();
        raw.to_usize().unwrap_or(usize::MAX).max(1)
    };

    let mut unitary = ComplexMatrix::<T>::identity(2)?;
    let mut state = initial.cloned();
    let mut samples = initial.map(|s| {
        let mut v = Vec::with_capacity(steps + 1);
        v.push(TrajectorySample {
            time: t_start,
            state: s.clone(),
        });
        v
    });

    if steps > 0 {
        let dt = duration / lit::<T>(steps as f64);
        for k in 0..steps {
            let t0 = t_start + dt * lit::<T>(k as f64);
            let step = step_unitary(p, t0, dt, cfg.scheme)?;
            unitary = step.matrix() * &unitary;
            if let Some(psi) = state.as_mut() {
                *psi = step.apply(psi);
                samples.as_mut().expect("samples follow state").push(TrajectorySample {
                    time: t0 + dt,
                    state: psi.clone(),
                });
            }
        }
    }

    if let Some(psi) = &state {
        let drift = (psi.norm() - T::one()).abs();
        if drift > spec_tol(1e-10) {
            return Err(Error::Accuracy(format!(
                "trajectory norm drift {:.3e} exceeds tolerance",
                drift.to_f64().unwrap_or(f64::NAN)
            )));
        }
    }

    Ok(PropagationResult {
        unitary: UnitaryMatrix::new(unitary)?,
        samples,
        scheme_used: cfg.scheme,
        step_count: steps,
    })
}

fn step_unitary<T: Scalar>(
    p: &DriveParams<T>,
    t0: T,
    dt: T,
    scheme: Scheme,
) -> Result<UnitaryMatrix<T>> {
    match scheme {
        Scheme::PiecewiseMidpointExponential => {
            let h = single_dot_hamiltonian(p, t0 + dt * lit(0.5))?;
            expm_hermitian(&h, dt, Sign::Minus)
        }
        Scheme::FourthOrderMagnus => {
            // Gauss-Legendre nodes t0 + (1/2 ∓ √3/6)·dt
            let offset = lit::<T>(3f64.sqrt() / 6.0) * dt;
            let mid = t0 + dt * lit(0.5);
            let h1 = single_dot_hamiltonian(p, mid - offset)?;
            let h2 = single_dot_hamiltonian(p, mid + offset)?;
            let avg = (h1.matrix() + h2.matrix()).scale(c(0.5, 0.0));
            let comm = &(h2.matrix() * h1.matrix()) - &(h1.matrix() * h2.matrix());
            let gen = &avg + &comm.scale(num_complex::Complex::new(
                T::zero(),
                -lit::<T>(3f64.sqrt() / 12.0) * dt,
            ));
            expm_hermitian(&HermitianMatrix::new(gen)?, dt, Sign::Minus)
        }
    }
}
