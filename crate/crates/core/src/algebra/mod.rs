pub mod field;
pub mod laurent;
pub mod matrix;
pub mod snf;

pub use field::{rank_over_field, rank_with, Coefficients, Field, PrimeField, Rationals};
pub use laurent::LaurentPoly;
pub use matrix::IntegerMatrix;
pub use snf::{homology_groups, smith_normal_form, smith_normal_form_with_certificate, HomologyGroup, SmithForm};
