//! Quantum-battery model of two dipole-coupled two-level emitters.
//!
//! The crate covers the dimer Hamiltonian and its thermal state, charging by
//! a transverse drive, work and coherence figures of merit, and a sweep
//! engine that writes CSV and gnuplot output. All quantities are in reduced
//! units with ħ = k_B = 1; `tau` is the dimensionless charging time Ωt.
//!
//! ```
//! use dimer_battery::{evolve, hamiltonian, ergotropy, DimerParams};
//!
//! let p = DimerParams::new(6.0, 10.0, 0.05, 0.5).unwrap();
//! let rho = evolve(&p, std::f64::consts::FRAC_PI_2);
//! let e = ergotropy(&rho, &hamiltonian(&p)).unwrap();
//! assert!(e > 11.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charging;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod model;
pub mod sweep;

pub use charging::{eta_closed_form, evolve, u_x};
pub use error::{Error, Result};
pub use linalg::{hermitian_eig, ComplexMatrix4, DensityMatrix4, EigenSystem4};
pub use metrics::{anti_ergotropy, capacity, ergotropy, l1_coherence, MetricsSample};
pub use model::{gibbs_state, hamiltonian, DimerParams};
pub use sweep::{figure_preset, parse_config, run_sweep, SweepSpec};
