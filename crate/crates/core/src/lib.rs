//! θ-stable combinatorics and unitarity screening for `U(p,q)`.
//!
//! The pipeline runs K-type → [`lambda_map::compute_lambda_a`] →
//! [`datum::LambdaDatum`] → [`theta::ThetaDatum`] (with ν) →
//! [`screening::screen`]. All arithmetic is exact.
//!
//! ```
//! use upq_core::{screen, KTypeWeight, NuVector, Signature, ThetaDatum, Verdict};
//!
//! let sig = Signature::new(5, 4)?;
//! let mu: KTypeWeight = "0,0,0,0,0|2,1,0,-1".parse()?;
//! let nu = ["0", "1/2", "0", "7/2"]
//!     .iter()
//!     .map(|x| Ok(NuVector(vec![x.parse()?])))
//!     .collect::<upq_core::Result<Vec<_>>>()?;
//! let td = ThetaDatum::from_mu(&mu, sig, &nu)?;
//! let report = screen(&td)?;
//! assert_eq!(report.verdict, Verdict::NonUnitaryByFPP);
//! # Ok::<(), upq_core::Error>(())
//! ```

#[cfg(feature = "cli")]
pub mod cli;
pub mod datum;
pub mod diagram;
pub mod error;
pub mod lambda_map;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod rational;
pub mod screening;
#[cfg(feature = "oracle")]
pub mod selftest;
pub mod theta;
pub mod weights;

pub use datum::{Block, BlockShape, LambdaDatum};
pub use error::{Error, Result};
pub use rational::HalfRational;
pub use screening::{screen, ScreeningReport, Verdict};
pub use theta::{InfChar, NuVector, ThetaDatum};
pub use weights::{KTypeWeight, Signature, Vector};
