//! Degree-7 permutation polynomials and orthomorphisms over small finite fields.

pub mod audit;
pub mod classify;
mod error;
pub mod families;
pub mod ops;
pub mod field;
pub mod parse;
pub mod perm;
pub mod poly;
pub mod preset;
pub mod reference;
pub mod verify;

pub use error::{Error, Result};
pub use classify::{canonicalize, ci_set, ck_set, criteria_check, solve_linear_relation, CanonicalForm, Classification, Classifier};
pub use families::{family_table, FamilyEntry, FamilyTable, Reading};
pub use ops::{count_ops, enumerate_ops, search_pairs_direct, search_pairs_table_based, verify_nonexistence, EnumerationReport, Method, Pair, PairSearchResult};
pub use field::{Fe, Field, FieldSpec};
pub use parse::{parse_element, parse_poly};
pub use perm::{census, is_complete_mapping, is_orthomorphism, is_permutation, CensusQuery, Property};
pub use poly::{LinearTransform, Poly};
pub use preset::{field_for_order, preset};
