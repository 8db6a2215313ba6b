//! Exact-arithmetic engine for the chain of identities linking random-word
//! combinatorics, integrals over Grassmannians, generalized hypergeometric
//! series and Painleve-V-type differential equations.
//!
//! Everything that can be checked exactly is checked in arbitrary-precision
//! rational arithmetic: partition sums, truncated power series, ODE residuals,
//! Virasoro/KP constraints. Floating point appears only in the quadrature and
//! Monte Carlo cross-validation layers.

pub mod error;
pub mod rat;

pub mod gamma;
pub mod partition;
pub mod words;

pub mod jack;
pub mod series;

pub mod hyper;
pub mod schur;
pub mod tau;

pub mod ode;

pub mod linalg;
pub mod quad;
pub mod sample;

pub use error::{Error, Result};
pub use gamma::{GammaProduct, SelbergConstant};
pub use jack::EnsembleSpec;
pub use ode::ResidualReport;
pub use partition::Partition;
pub use rat::Rat;
pub use series::{RationalSeries, SeriesBundle};
pub use words::{GreeneStats, Word};
