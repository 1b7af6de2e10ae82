//! Exact combinatorial models for the Orlik-Solomon algebras of the
//! hyperplane arrangements T(r,n) and for twisted cohomology of T(1,n):
//! labelled-forest bases, wreath-product group actions, characters, and
//! symbolic differential forms, all over exact rational/cyclotomic scalars.

pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod forest;
pub mod forms;
pub mod group;
pub mod induction;
pub mod local_system;
pub mod os_algebra;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod tree_module;
pub mod verification;

pub use error::Error;
