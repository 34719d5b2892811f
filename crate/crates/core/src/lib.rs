//! Performance analysis of dual-hop mixed RF/FSO relaying with partial relay
//! selection, outdated CSI and nonlinear relay amplifiers.

pub mod analysis;
pub mod error;
pub mod fso;
pub mod hpa;
pub mod mc;
pub mod modulation;
pub mod relay;
pub mod rf;
pub mod scenario;
pub mod specfun;

pub use error::{Error, Result};
