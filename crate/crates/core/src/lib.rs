pub mod barrier_estimates;
pub mod curvature_algebra;
pub mod error;
pub mod export;
mod float_serde;
pub mod limacon;
pub mod quadrature;
pub mod roots;
pub mod rot_profile;
pub mod special_integrals;
pub mod trans_profile;

pub use error::{Error, Result};
