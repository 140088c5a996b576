//! Quantum illumination with a lossy idler memory.
//!
//! Closed-form error exponents and quantum-advantage figures for two-mode
//! squeezed thermal and electro-optomechanical (EOM) transmitter inputs, their
//! optima and critical memory efficiencies, the single-mode phase-conjugate
//! (SMPC) receiver with a finite-resolution photon counter, and a Monte-Carlo
//! simulator of the `M`-shot threshold test.
//!
//! Module map:
//!
//! - [`quantum_states`]: two-mode moments, PPT entanglement test
//! - [`eom_devices`]: thermal occupations, EOM scattering coefficients
//! - [`scene`]: target channel, idler memory line
//! - [`advantage_metrics`]: SNR, `γ_QI`, `γ_CI`, `F`, optima, `η_c`
//! - [`smpc_receiver`]: converter moments, reflectivity, PNR statistics
//! - [`detection_sim`]: seeded Monte-Carlo of the threshold test

pub mod advantage_metrics;
pub mod constants;
pub mod detection_sim;
pub mod eom_devices;
mod error;
pub mod optimize;
pub mod quantum_states;
pub mod scene;
pub mod smpc_receiver;

pub use error::{QiError, Result};

pub mod prelude {
    pub use crate::advantage_metrics::*;
    pub use crate::detection_sim::*;
    pub use crate::eom_devices::*;
    pub use crate::quantum_states::*;
    pub use crate::scene::*;
    pub use crate::smpc_receiver::*;
    pub use crate::{QiError, Result};
}
