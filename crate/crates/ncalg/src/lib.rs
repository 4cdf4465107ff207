//! Exact symbolic computation in free associative algebras.
//!
//! The crate provides noncommutative polynomials over exact scalar fields
//! (arbitrary-precision rationals and 64-bit prime fields), the algebra of
//! generic matrices with its evaluation and characteristic-polynomial
//! toolkit, combinatorics of infinite periodic words, and centralizer
//! computation with recognition of single-variable generators.
//!
//! All core types are generic over the scalar [`field::Field`]; the aliases
//! below fix the two concrete instantiations.

// dense elimination kernels index several arrays per iteration; explicit
// ranges read better there than iterator adaptor chains
#![allow(clippy::needless_range_loop)]

pub mod acceptance;
pub mod cache;
pub mod centralizer;
pub mod commpoly;
pub mod error;
pub mod expr;
pub mod field;
pub mod freepoly;
pub mod genmat;
pub mod linalg;
pub mod oracle;
pub mod unipoly;
pub mod word;
pub mod words;

pub use centralizer::{
    centralizer_basis, in_span, integral_closure_probe, is_in_centralizer, nc_root,
    recognize_generator, span_reduce, Certificate, CentralizerReport, ClosureReport, GradedBasis,
};
pub use commpoly::{CommPoly, CommPolyRing, VarId};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp64, Rationals, Ring};
pub use freepoly::{commutator, standard_polynomial, Degree, FreePoly};
pub use genmat::{
    charpoly, minpoly, pi_test, spectral_probe, ut_eval, ConcreteMatrix, GenericMatrix, Matrix,
    PiTestReport, PiVerdict, SpectralReport,
};
pub use unipoly::UniPoly;
pub use word::Word;
pub use words::{
    bergman_projection, bergman_quotient, in_rz, inf_cmp, primitive_root, AlphabetOrder,
    BergmanProjection, OmegaClass, RzClass,
};

/// Noncommutative polynomial with rational coefficients.
pub type RatPoly = FreePoly<Rationals>;
/// Noncommutative polynomial over a 64-bit prime field.
pub type ModPoly = FreePoly<Fp64>;

#[cfg(test)]
mod thread_safety {
    #[test]
    fn shared_types_cross_thread_boundaries() {
        fn ok<T: Send + Sync>() {}
        ok::<crate::FreePoly<crate::Rationals>>();
        ok::<crate::FreePoly<crate::Fp64>>();
        ok::<crate::UniPoly<crate::Rationals>>();
        ok::<crate::CommPoly<crate::Fp64>>();
        ok::<crate::GenericMatrix<crate::Rationals>>();
        ok::<crate::ConcreteMatrix<crate::Fp64>>();
        ok::<crate::Word>();
        ok::<crate::AlphabetOrder>();
        ok::<crate::CentralizerReport<crate::Rationals>>();
        ok::<crate::Error>();
    }
}
