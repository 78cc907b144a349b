#![allow(dead_code)]

use prolam_core::syntax::{parse_type, NormalForms, Term, Type};

/// Types of order at most 2 over the base type.
pub fn low_order_types() -> Vec<Type> {
    [
        "o",
        "o -> o",
        "o -> o -> o",
        "o -> o -> o -> o",
        "(o -> o) -> o",
        "(o -> o) -> o -> o",
        "o -> (o -> o) -> o",
        "(o -> o -> o) -> o -> o",
        "(o -> o) -> (o -> o) -> o -> o",
    ]
    .iter()
    .map(|s| parse_type(s).unwrap())
    .collect()
}

pub fn closed_normal_forms(ty: &Type, max_size: usize) -> Vec<Term> {
    NormalForms::new().closed_up_to(ty, max_size)
}
