//! Dyck and alternating Motzkin paths, their altitude statistics, the
//! reversible constructions behind the Catalan/Narayana square-norm
//! identities, an exact identity verifier, the halfline random-walk view of
//! paths, and Monte Carlo moments of Wigner and Wishart matrices.

pub mod bijections;
pub mod cli;
pub mod identities;
pub mod moments;
pub mod numeric;
pub mod paths;
pub mod walks;

pub use numeric::{catalan, narayana, narayana_poly, GammaPoly};
pub use paths::{Path, PathKind, Step};
