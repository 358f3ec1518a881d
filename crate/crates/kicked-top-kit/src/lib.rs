//! Simulation kit for the quantum kicked top.
//!
//! The kicked top alternates a torsion about the z axis with a kick rotation
//! about the y axis, acting on the (2j+1)-dimensional symmetric subspace of
//! 2j qubits. This crate provides
//!
//! - [`spin`]: angular-momentum operators, Floquet propagators, coherent
//!   states and the parity rotation for arbitrary spin j,
//! - [`cheb`]: exact Chebyshev-polynomial closed forms for the three- and
//!   four-qubit tops (propagator blocks, OTOCs, echoes, state fidelities),
//! - [`otoc`]: the numerical infinite-temperature out-of-time-ordered
//!   correlator for any j, with quantum Lyapunov estimates,
//! - [`echo`]: numerical Loschmidt echoes (Haar-averaged and per-state) with
//!   decay-regime classification,
//! - [`classical`]: the classical map on the unit sphere, trajectories,
//!   phase portraits and Benettin Lyapunov exponents,
//! - [`gauss`]: the decomposition of the torsion into a finite sum of pure
//!   rotations at rational parameters, via Gauss sums,
//! - [`sweep`], [`export`], [`figures`], [`config`]: deterministic parallel
//!   parameter sweeps with CSV/JSON export and canned figure data sets.
//!
//! Closed forms and the generic numerical engine cross-validate each other;
//! see the `examples/` directory for runnable demonstrations of each part
//! and the `ktop` binary for the command-line front end.
//!
//! ```ignore
//! use kicked_top_kit::spin::SpinParams;
//! use kicked_top_kit::{cheb, otoc};
//!
//! // j = 2 at kappa0 = 2*pi: the exact OTOC and the numerical one agree.
//! let params = SpinParams::new(4, 2.0 * std::f64::consts::PI).unwrap();
//! let series = otoc::otoc_infinite(&params, 2).unwrap();
//! let exact = cheb::four_qubit_otoc(2, params.kappa0());
//! assert!((series.values[1].c_inf - exact).abs() < 1e-10);
//! assert!((exact - 68.0 / 5.0).abs() < 1e-12);
//! ```ignore

pub mod cheb;
pub mod classical;
pub mod config;
pub mod echo;
mod error;
pub mod export;
pub mod figures;
pub mod gauss;
pub mod otoc;
pub mod spin;
pub mod sweep;

pub use error::{Error, Result};

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix over the symmetric subspace.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Complex state vector in the Jz eigenbasis, ordered m = j, j-1, ..., -j.
pub type CVector = nalgebra::DVector<C64>;
