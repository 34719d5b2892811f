//! Special functions: elementary transcendentals, complex log-gamma,
//! adaptive quadrature and Mellin–Barnes evaluation of Meijer-G and Fox-H.

pub mod cgamma;
pub mod elementary;
pub mod foxh;
pub(crate) mod mellin;
pub mod meijer;
pub mod quad;

pub use elementary::{eval_elementary, Elementary};
pub use foxh::{fox_h, fox_h_residues, ResidueTerm, fox_h_bivariate, FoxHBivariateSpec, FoxHSpec, HCoupled, HParam};
pub use meijer::{delta_vec, meijer_g, MeijerGSpec};
pub use quad::CancelToken;
