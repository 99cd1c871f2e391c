//! Numerical kernels used both by the analyses and as independent oracles
//! for them.

mod eigen;
mod fd;
mod roots;
mod rk4;
mod sym;

pub use eigen::{classify_definiteness, sym_eigenvalues, DefinitenessClass, Definiteness, DEFINITENESS_REL_EPS};
pub use fd::{fd_gradient, fd_hessian};
pub use rk4::{rk4_integrate, rk4_integrate_observed, Invariant, Trajectory};
pub use roots::{bracketed_roots, DEFAULT_SCAN_CELLS};
pub use sym::SymMatrix;
