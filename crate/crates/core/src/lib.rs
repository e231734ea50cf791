//! Finite models of presheaf toposes and the geometric morphisms between them.
//!
//! Sites are finite categories given by explicit composition tables. A
//! functor `F: C → D` induces the essential geometric morphism
//! `f: PSh(C) → PSh(D)`, and [`geom`] decides whether it has a cartesian
//! closed inverse image or is locally connected, returning a [`geom::Witness`]
//! whenever it is not. [`space`] handles finite topological spaces and
//! [`classify`] combines everything into per-site reports and sweeps.

pub mod catalog;
pub mod category;
pub mod classify;
pub mod exec;
pub mod functor;
pub mod geom;
pub mod presheaf;
pub mod space;
mod uf;

pub use category::{Arr, FinCategory, Obj};
pub use functor::FinFunctor;
pub use geom::GeomMorphism;
pub use presheaf::{Presheaf, PresheafMap};
pub use space::FinSpace;
