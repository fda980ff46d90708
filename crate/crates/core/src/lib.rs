//! Exact computations in the degenerate cyclotomic Hecke algebra H_{m,n}(Q).

pub mod algebra;
pub mod cellular;
pub mod combinatorics;
pub mod dual;
pub mod error;
pub mod linalg;
pub mod perm;
pub mod scalars;
pub mod schur;
pub mod seminormal;
pub mod verify;

pub use algebra::{Algebra, Element, Gen};
pub use combinatorics::{
    dominates, multipartitions, residue_set, special_tableaux, standard_tableaux,
    tableau_dominates, Multipartition, Node, Tableau,
};
pub use error::{Error, Result};
pub use perm::{Permutation, SymmetricGroup};
pub use scalars::{
    bar_scalar, default_binding, semisimplicity_poly, FactoredScalar, LinearFactor, ParamBinding,
    Rational, Residue,
};
