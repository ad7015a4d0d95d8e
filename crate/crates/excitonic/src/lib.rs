//! Simulation and gate synthesis for exciton qubits in coupled semiconductor
//! quantum dots.
//!
//! A qubit is the ground/single-exciton doublet of one dot. Single-qubit
//! gates come from cyclic evolutions of the driven two-level system — the
//! accumulated phase splits into a dynamic part (removable by a two-loop
//! schedule) and a nonadiabatic geometric part that does the work. The
//! two-qubit iSWAP is generated dynamically by the Förster coupling between
//! two dots, and CNOT follows from a fixed seven-element sequence.
//!
//! Everything is generic over the floating-point scalar through [`Scalar`];
//! the `*64` aliases below fix `f64`, which is what the numerical contracts
//! are stated for.
//!
//! Units: ħ = 1, energies in eV, times in eV⁻¹; [`HBAR_EV_FS`] converts
//! times to femtoseconds at the I/O boundary.

pub mod error;
pub mod gates;
pub mod hamiltonians;
pub mod linalg;
pub mod phase;
pub mod propagation;
pub mod scalar;
pub mod scheduler;

pub use error::{Error, Result};
pub use scalar::{angle_diff, wrap_angle, Scalar, HBAR_EV_FS};

pub use linalg::{
    commutator_norm, eigh, expm_hermitian, fidelity_up_to_phase, kron, quasi_pauli, ComplexMatrix,
    ComplexVector, EigenDecomposition, HermitianMatrix, Pauli, Sign, UnitaryMatrix, MAX_DIM,
};

pub use hamiltonians::{
    array_hamiltonian, coupled_hamiltonian, excitation_number_operator,
    rotating_frame_hamiltonian, single_dot_hamiltonian, CoupledDotParams, DotArrayParams,
    DriveParams, MAX_DOTS,
};

pub use propagation::{
    analytic_driven_propagator, evolve_const, evolve_driven, evolve_driven_checked,
    evolve_driven_from, evolve_driven_sampled, evolve_driven_sampled_from, period,
    IntegratorConfig, PropagationResult, Scheme, TrajectorySample,
};

pub use phase::{
    cancellation_sequence, cancellation_sequence_with, cyclic_states, decompose, dynamic_phase,
    geometric_phase, schedule_phases, total_phase, CyclicPair, LoopSchedule, LoopSegment,
    PhaseDecomposition, SchedulePhases,
};

pub use gates::{
    apply_single, cnot_sequence, iswap, noncommuting, standard_cnot, two_qubit_propagator,
    u_chi_gamma, u_x, u_z, verify_cnot, CnotVerification, GateElement, GateSequence,
    SingleQubitGateSpec,
};

pub use scheduler::{
    decoherence_budget, fidelity_penalty, idle_phase_tracker, solve_iswap_timing,
    timing_candidates, Budget, IdlePhase, TimingSolution,
};

/// `f64` concrete aliases for the generic core types.
pub type Matrix64 = ComplexMatrix<f64>;
pub type Vector64 = ComplexVector<f64>;
pub type Hermitian64 = HermitianMatrix<f64>;
pub type Unitary64 = UnitaryMatrix<f64>;
pub type DriveParams64 = DriveParams<f64>;
pub type CoupledDotParams64 = CoupledDotParams<f64>;
pub type DotArrayParams64 = DotArrayParams<f64>;
pub type IntegratorConfig64 = IntegratorConfig<f64>;
pub type PhaseDecomposition64 = PhaseDecomposition<f64>;
pub type LoopSchedule64 = LoopSchedule<f64>;
pub type TimingSolution64 = TimingSolution<f64>;
pub type Budget64 = Budget<f64>;
