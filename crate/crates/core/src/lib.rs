//! Computational systolic geometry on piecewise-flat pseudomanifolds.
//!
//! The crate is organised around the pipeline a geometric cycle `(V, f, g)`
//! goes through:
//!
//! - [`mesh`]: simplicial pseudomanifolds with edge-length metrics and their volumes.
//! - [`metric`]: a subdivided chord graph approximating the length metric, balls,
//!   α-dense nets and Hausdorff distances.
//! - [`homotopy`]: the map to `K(π,1)` encoded as edge words, and relative
//!   systoles computed by exploring the associated covering space.
//! - [`cubical`]: cube complexes in `[0,1]^N`, the retraction `R_ε`, the
//!   distance-coordinate embedding `J = R_ε ∘ I_0` and the extension `K(V)`.
//! - [`chains`]: cubical chains, ℓ∞ volumes, LP filling volumes and the
//!   isoperimetric constants.
//! - [`regularity`]: ball-growth, coarea, nerve and ε-regularity verdicts.
//! - [`cli`]: the `systolekit` command-line driver.
//!
//! Data-parallel kernels go through [`Execution`], which runs on rayon when the
//! `parallel` feature is enabled and falls back to plain iterators otherwise.

pub mod chains;
pub mod cli;
pub mod cubical;
mod error;
pub mod homotopy;
pub mod mesh;
pub mod metric;
pub mod models;
mod par;
pub mod regularity;
mod scalar;

pub use error::Error;
pub use par::Execution;
pub use scalar::Scalar;
