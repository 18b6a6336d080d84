//! Finite fields, subspaces of `F_q^n` and flags, enumerated exactly.

mod field;
mod flag;
mod subspace;

pub use field::{build_field, is_irreducible, is_prime, FieldSpec, FqElem, MAX_FIELD_ORDER};
pub use flag::{
    classify_subspace, count_flags, count_flags_fast, flag_dims, flag_type_pattern,
    flag_type_pattern_count, total_flags, type_census, type_pattern_census, visit_flags,
    FlagChain, FlagRecord, TypeLabel,
};
pub use subspace::{count_subspaces, enumerate_subspaces, pivot_patterns, Subspace, SubspaceIter};
