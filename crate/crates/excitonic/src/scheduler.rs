//! Integer commensurability constraints that turn the two-dot evolution into
//! an exact iSWAP, fidelity loss under parameter mismatch, idle-period phase
//! tracking, and the decoherence operation budget.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{iswap, two_qubit_propagator};
use crate::hamiltonians::CoupledDotParams;
use crate::linalg::{fidelity_up_to_phase, ComplexMatrix, UnitaryMatrix};
use crate::scalar::{lit, wrap_angle, Scalar, HBAR_EV_FS};

/// A commensurate timing point: t·ε = 2kπ and v_required·t = mπ − π/4 hold
/// exactly by construction, so the two-dot propagator at (t, v_required) is
/// an exact iSWAP. `v_residual` is the distance to the requested coupling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingSolution<T> {
    pub k: u32,
    pub m: u32,
    /// Gate time in eV⁻¹.
    pub t: T,
    /// Coupling that realizes the exact gate at time t, in eV.
    pub v_required: T,
    /// Requested coupling, in eV.
    pub v_target: T,
    /// |v_required − v_target| in eV.
    pub v_residual: T,
}

impl<T: Scalar> TimingSolution<T> {
    /// Gate time in femtoseconds.
    pub fn t_femtoseconds(&self) -> T {
        self.t * lit(HBAR_EV_FS)
    }
}

/// Every (k, m) candidate on the grid, in lexicographic (k, m) order.
pub fn timing_candidates<T: Scalar>(
    epsilon: T,
    v_target: T,
    k_max: u32,
    m_max: u32,
) -> Result<Vec<TimingSolution<T>>> {
    if !epsilon.is_finite() || epsilon <= T::zero() {
        return Err(Error::invalid("epsilon must be positive and finite"));
    }
    if !v_target.is_finite() || v_target <= T::zero() {
        return Err(Error::invalid("v_target must be positive and finite"));
    }
    if k_max < 1 || m_max < 1 {
        return Err(Error::invalid("k_max and m_max must be at least 1"));
    }
    let two_pi = T::PI() + T::PI();
    let mut out = Vec::with_capacity((k_max as usize) * (m_max as usize));
    for k in 1..=k_max {
        let t = two_pi * lit(k as f64) / epsilon;
        for m in 1..=m_max {
            // v = (m*pi - pi/4)/t = eps*(m - 1/4)/(2k)
            let v_required = epsilon * lit::<T>(m as f64 - 0.25) / lit(2.0 * k as f64);
            out.push(TimingSolution {
                k,
                m,
                t,
                v_required,
                v_target,
                v_residual: (v_required - v_target).abs(),
            });
        }
    }
    Ok(out)
}

/// Best commensurate timing for a hardware gap ε and a requested coupling:
/// minimal |v_required − v_target|, ties broken by smaller t, then smaller
/// k, then smaller m.
///
/// ε is treated as fixed hardware; the coupling is the tunable knob, so the
/// solver reports the nearest realizable coupling rather than moving t off
/// the 2kπ/ε lattice.
pub fn solve_iswap_timing<T: Scalar>(
    epsilon: T,
    v_target: T,
    k_max: u32,
    m_max: u32,
) -> Result<TimingSolution<T>> {
    let candidates = timing_candidates(epsilon, v_target, k_max, m_max)?;
    candidates
        .into_iter()
        .min_by(|a, b| {
            (a.v_residual, a.t, a.k, a.m)
                .partial_cmp(&(b.v_residual, b.t, b.k, b.m))
                .expect("finite candidate ordering")
        })
        .ok_or_else(|| Error::invalid("empty timing search space"))
}

/// Gate fidelity against the ideal iSWAP when the schedule runs with a
/// possibly different coupling and a timing offset.
pub fn fidelity_penalty<T: Scalar>(
    sol: &TimingSolution<T>,
    epsilon: T,
    v_actual: T,
    dt_jitter: T,
) -> Result<T> {
    let params = CoupledDotParams::new(epsilon, v_actual)?;
    let u = two_qubit_propagator(&params, sol.t + dt_jitter)?;
    fidelity_up_to_phase(&u, &iswap()?)
}

/// Accumulated idle-period phase and its compensation.
#[derive(Clone, Debug)]
pub struct IdlePhase<T> {
    /// Free evolution diag(e^{−iεT/2}, e^{+iεT/2}) over the summed spans.
    pub unitary: UnitaryMatrix<T>,
    /// Angle γ_z such that u_z(γ_z) undoes the idle phase up to a global
    /// phase, reduced to (−π, π].
    pub compensation_gamma_z: T,
    /// Total idle time T = Σ spans, in eV⁻¹.
    pub total_span: T,
}

/// Track the free-evolution phase a qubit accumulates over idle spans.
///
/// The eigenstates stay nondegenerate while idle, so these phases must be
/// compensated; u_z(compensation_gamma_z) restores the idle qubit up to a
/// global phase. On a register the leftover global phase of one qubit is a
/// relative phase, so multi-qubit schedules should prefer idle windows with
/// εT = 2kπ, where the free two-qubit evolution is exactly the identity.
pub fn idle_phase_tracker<T: Scalar>(epsilon: T, idle_spans: &[T]) -> Result<IdlePhase<T>> {
    if !epsilon.is_finite() || epsilon <= T::zero() {
        return Err(Error::invalid("epsilon must be positive and finite"));
    }
    let mut total = T::zero();
    for &s in idle_spans {
        if !s.is_finite() || s < T::zero() {
            return Err(Error::invalid("idle spans must be non-negative and finite"));
        }
        total += s;
    }
    let half = epsilon * total * lit(0.5);
    let mut m = ComplexMatrix::zeros(2)?;
    m.set(0, 0, num_complex::Complex::from_polar(T::one(), -half));
    m.set(1, 1, num_complex::Complex::from_polar(T::one(), half));
    Ok(IdlePhase {
        unitary: UnitaryMatrix::new(m)?,
        compensation_gamma_z: wrap_angle(-epsilon * total),
        total_span: total,
    })
}

/// Decoherence budget: dephasing time, elementary operation span τ_v = ħ/V,
/// and how many operations fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget<T> {
    /// Dephasing time in ps.
    pub tau_d_ps: T,
    /// Elementary operation span ħ/V in fs.
    pub tau_v_fs: T,
    /// floor(τ_d / τ_v).
    pub op_count: u64,
}

/// Number of elementary operations that fit in the dephasing time, with the
/// operation span set by the coupling: τ_v = ħ/V.
pub fn decoherence_budget<T: Scalar>(tau_d_ps: T, v: T) -> Result<Budget<T>> {
    if !tau_d_ps.is_finite() || tau_d_ps <= T::zero() {
        return Err(Error::invalid("dephasing time must be positive and finite"));
    }
    if !v.is_finite() || v <= T::zero() {
        return Err(Error::invalid("coupling must be positive and finite"));
    }
    let tau_v_fs = lit::<T>(HBAR_EV_FS) / v;
    let ratio = tau_d_ps * lit(1000.0) / tau_v_fs;
    let op_count = ratio.floor().to_u64().unwrap_or(0);
    Ok(Budget {
        tau_d_ps,
        tau_v_fs,
        op_count,
    })
}
