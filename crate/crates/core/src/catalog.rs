//! Small named sites and spaces used throughout the tests, the CLI and the
//! acceptance suite.

use crate::category::FinCategory;
use crate::space::FinSpace;

/// Objects `A`, `B` and a single non-identity arrow `f: A -> B`.
pub fn sierpinski() -> FinCategory {
    FinCategory::from_table(&["A", "B"], &[("f", "A", "B")], &[]).expect("valid")
}

/// The site of directed graphs: objects `V`, `E`, arrows `s, t: V -> E`.
pub fn graph() -> FinCategory {
    FinCategory::from_table(&["V", "E"], &[("s", "V", "E"), ("t", "V", "E")], &[]).expect("valid")
}

/// `r: X -> Y`, `s: Y -> X` with `r.s = id_Y` and `e = s.r` idempotent.
pub fn retract() -> FinCategory {
    FinCategory::from_table(
        &["X", "Y"],
        &[("r", "X", "Y"), ("s", "Y", "X"), ("e", "X", "X")],
        &[("r", "s", "id_Y"), ("s", "r", "e"), ("e", "e", "e"), ("r", "e", "r"), ("e", "s", "s")],
    )
    .expect("valid")
}

/// The cyclic group of order two as a one-object category.
pub fn c2() -> FinCategory {
    FinCategory::from_table(&["*"], &[("g", "*", "*")], &[("g", "g", "id_*")]).expect("valid")
}

/// The monoid `{id, e}` with `e.e = e`.
pub fn idempotent() -> FinCategory {
    FinCategory::from_table(&["*"], &[("e", "*", "*")], &[("e", "e", "e")]).expect("valid")
}

/// The monoid `{id, a, b}` where `x.y = x` for `x, y` in `{a, b}`.
pub fn non_commutative_monoid() -> FinCategory {
    FinCategory::from_table(
        &["*"],
        &[("a", "*", "*"), ("b", "*", "*")],
        &[("a", "a", "a"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "b")],
    )
    .expect("valid")
}

/// `{m, g}` with opens `{}`, `{g}`, `{g, m}`.
pub fn sierpinski_space() -> FinSpace {
    FinSpace::from_named(&["m", "g"], &[&[], &["g"], &["g", "m"]]).expect("valid")
}
