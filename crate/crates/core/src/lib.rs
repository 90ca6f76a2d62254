//! Exact class arithmetic for the relation `([X_W] - [Y_W]) * L^6 = 0` in
//! the Grothendieck ring of varieties, with a finite-field point-count
//! oracle for every intermediate formula.
//!
//! - [`lring`]: `Z[L]` and the class module over it.
//! - [`classes`]: affine, projective and Grassmannian classes.
//! - [`pfaffian`]: the two computations of the incidence class and the relation.
//! - [`ffield`]: linear algebra and alternating forms over `F_p`.
//! - [`census`]: brute-force point counts over `F_p`.
//! - [`expr`]: the class expression language.
//! - [`verify`]: the symbolic identity suite.

pub mod census;
pub mod classes;
pub mod error;
pub mod expr;
pub mod ffield;
pub mod lring;
pub mod pfaffian;
pub mod verify;

pub use error::{Error, Result};
pub use lring::{MotElem, Poly, Symbol};
