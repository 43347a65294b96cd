//! Exact-arithmetic computational toolkit for finite-dimensional graded
//! algebras and their multilinear polynomial identities: structure-constant
//! algebras with Wedderburn-Malcev data, brute-force identity checking and
//! identity-space kernels, the covering relation on dimension profiles,
//! truncated Grassmann envelopes, explicit strongly full polynomial
//! constructions, and the reduction pipeline computing the minimal semisimple
//! invariant of a presented T-ideal.

pub mod algebra;
pub mod constructions;
pub mod covering;
pub mod document;
pub mod error;
pub mod eval;
pub mod grassmann;
pub mod group;
pub mod poly;
pub mod reduction;
pub mod scalar;

pub use algebra::{
    classify_super_simple, direct_sum, direct_sum_many, fuse, matrix_algebra, upper_triangular,
    AlgebraBuilder, BasisTag, ComponentKind, DimensionProfile, Elem, GradedAlgebra,
    SimpleComponentDescriptor, SuperSimpleKind,
};
pub use covering::{covers, maximal_profiles, mutual_cover_implies_equal, sigma_weight, CoverWitness};
pub use error::{AlgebraError, ConstructError, EvalError, ParseError, PolyError, ReduceError};
pub use group::{GradingGroup, GroupElt};
pub use poly::{GradedVariable, MultilinearPolynomial, VarRole};
pub use scalar::Scalar;
