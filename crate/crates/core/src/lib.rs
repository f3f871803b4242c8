//! Tree representation of continuous paths.
//!
//! A path on `[0, 1]` is read as the real tree obtained by gluing times that
//! the path cannot separate: `delta(s, t) = w(s) + w(t) - 2 inf_[s,t] w`.
//! From the tree come trimming sweeps, leaf counts and lengths across scales,
//! p-variation bounds, roughness and Hurst estimators, and integrals written
//! as integrals over the tree.

pub mod error;
pub mod generators;
pub mod integrate;
pub mod io;
pub mod path;
pub mod rmq;
pub mod tree;
pub mod variation;

pub use error::{Error, Result};
pub use path::{CadlagPath, SampledPath};
