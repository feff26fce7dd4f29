//! Explicit factorization of the cyclotomic polynomials Q_{2ⁿ·r}(x) over
//! odd-characteristic finite fields, with a generic factorization oracle to
//! check the results against.

pub mod arith;
pub mod explicit;
pub mod ffield;
pub mod fpoly;
pub mod oracle;
pub mod sparsegen;

pub use explicit::{
    stabilization_index,
    case_params, factor_explicit, lift_general, verify_factorization, CaseParameters,
    ExplicitError, ExplicitFactorization, VerificationReport, WitnessSet,
};
pub use ffield::{Elem, FieldContext, FieldError, FieldOp, Omega5, RhoChain};
pub use fpoly::{
    compose_power, cyclotomic, has_order, is_irreducible, negate_arg, poly_arith, poly_order,
    FactorMeta, Modulus, Poly, PolyError, PolyOp, PolyResult,
};
pub use oracle::{factorize, find_roots, FactorizationReport, OracleError};
pub use sparsegen::{generate_sparse, reciprocal, Family, SparseError};
