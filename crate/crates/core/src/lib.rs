//! Jacobi-Sobolev orthogonal polynomials and weighted-norm experiments.
//!
//! The library constructs the orthonormal system `q_n` for the Sobolev-type
//! inner product
//!
//! ```text
//! <f, g> = sum_{k=0}^m  ∫ f^(k)(x) g^(k)(x) (1-x)^(a+k) (1+x)^(b+k) dx
//! ```
//!
//! on `[-1, 1]`, computes Fourier-Sobolev coefficients and partial sums, and
//! provides the numerical experiments (critical windows, weighted `L^p` norm
//! growth, dual-norm products, kernel and Hardy-weight spot checks) used to
//! probe the convergence behaviour of the partial sum operators.
//!
//! Modules:
//! * [`jacobi`]: classical and orthonormal Jacobi polynomials, eigenvalues,
//!   derivative factors.
//! * [`quadrature`]: Gauss-Jacobi rules and weighted `L^p` norms.
//! * [`sobolev`]: the Sobolev inner product, `q_n`, coefficients, partial
//!   sums, `W^{p,m}` norms.
//! * [`functions`]: the built-in test-function corpus with exact derivatives.
//! * [`analysis`]: window arithmetic, norm-growth fits, convergence runs.
//! * [`kernel`]: trigonometric Jacobi functions, Abel-mean kernels, and
//!   Hardy-weight suprema.

// negated comparisons in parameter validation are deliberate: `!(x > y)`
// rejects NaN together with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod functions;
pub mod jacobi;
pub mod kernel;
pub mod quadrature;
pub mod sobolev;

pub use error::{Error, Result};
pub use jacobi::JacobiParams;
pub use sobolev::{Expansion, FunctionBundle, SobolevParams};
