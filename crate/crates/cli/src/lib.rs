//! Presentation-file language and command-line front end for `finitopos`.
//!
//! ```text
//! # '#' starts a comment; clauses end at ';' or a line break
//! category S { objects: A, B ; arrows: f: A -> B }
//! category R {
//!   objects: X, Y
//!   arrows: r: X -> Y, s: Y -> X
//!   relations: r.s = id_Y          # g.f is "g after f"
//! }
//! functor p : T -> S { obj: x -> B ; arr: id_x -> id_B }
//! presheaf P on S { at A: {u, v} ; at B: {w} ; act f: w -> u }
//! space Sierpinski { points: o, c ; opens: {}, {o}, {o, c} }
//! ```
//!
//! `act f: e -> e'` sends an element over the codomain of `f` to one over its
//! domain. A `table:` clause in place of `relations:` gives composites
//! `g.f = h` directly; identities are implicit and named `id_X`.

pub mod commands;
pub mod print;
pub mod resolve;
pub mod syntax;

pub use commands::{run, Cli, Outcome, Report};
pub use print::print;
pub use resolve::{resolve, Model};
pub use syntax::{parse, Document, DslError, GRAMMAR_VERSION};
