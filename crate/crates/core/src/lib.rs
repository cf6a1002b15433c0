//! A verification engine for finite group actions on semisimple k-linear
//! categories over a prime field.
//!
//! The engine models a semisimple category by its simple labels, objects by
//! multiplicity vectors and morphisms by per-simple matrix blocks. A group
//! action is a permutation of labels per group element plus the scalar data
//! of the monoidal-composition isomorphisms. On top of that it constructs
//! equivariantizations, the restriction/induction/conjugation functors with
//! all their comparison isomorphisms as explicit block matrices, verifies the
//! Mackey decomposition and the coherence diagrams exactly, splits
//! endomorphism algebras to enumerate simple equivariant objects, and
//! decategorifies to Grothendieck-group tables whose Mackey and Green functor
//! axioms are checked as integer matrix identities. A smash-product backend
//! cross-checks the block data of S#`k[H]` against the abstract construction.

pub mod action;
pub mod driver;
pub mod equiv;
pub mod error;
pub mod fp;
pub mod functors;
pub mod green;
pub mod group;
pub mod mat;
pub mod pointed;
pub mod poly;
pub mod report;
pub mod rng;
pub mod sample;
pub mod smash;
pub mod split;

pub use action::{ActionData, Mor, Obj, Perm};
pub use equiv::{EqMorphism, EqObject, IsoResult};
pub use error::{Error, Result};
pub use fp::Fp;
pub use group::{Group, Subgroup};
pub use mat::Matrix;
pub use report::{CheckItem, CheckReport};
pub use rng::Rng;
