//! Tensor product multiplicities of `su(N)` from generalised
//! Berenstein–Zelevinsky (BZ) triangles.
//!
//! A BZ triangle couples three highest weights `λ ⊗ μ ⊗ ν` to the singlet.
//! Relaxing the non-negativity of its entries gives the *generalised*
//! triangles of a fixed weight, which form an affine lattice spanned by one
//! initial triangle plus integer combinations of weight-zero *virtual*
//! triangles, one per hexagon. The multiplicity `T_{λ,μ,ν}` is the number of
//! integer points of the polytope cut out by requiring every entry to be
//! non-negative.
//!
//! The crate offers three independent routes to that number:
//!
//! * [`enumerator::multiplicity_sum`], the explicit nested-sum formula over
//!   the virtual-triangle coefficients;
//! * [`enumerator::count_integer_points`] on [`enumerator::polytope_of`], a
//!   generic exact lattice-point counter built on Fourier–Motzkin elimination;
//! * [`oracle::triple_multiplicity`], the classical Freudenthal + Klimyk
//!   computation, which shares no code with the triangle machinery.
//!
//! [`closed_form`] carries the rank-2 and rank-3 closed formulas and the
//! inequality systems deciding when a multiplicity is non-zero.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;

pub mod closed_form;
pub mod enumerator;
pub mod lattice;
pub mod oracle;
pub mod triangle;
pub mod weights;

pub use error::Error;
pub use weights::{CouplingQuery, ScaledDualLabels, Weight};

pub type Result<T, E = Error> = core::result::Result<T, E>;
