//! Finite categories stored as explicit total composition tables.
//!
//! Every arrow carries its domain and codomain, identities are explicit
//! arrows, and composition is a table indexed by `(g, f)` meaning `g ∘ f`
//! ("g after f"). All downstream checks are exhaustive loops over these
//! tables, so the representation favours direct indexing over generality.

mod cauchy;
mod iso;
mod presentation;

pub use cauchy::{cauchy_completion, CauchyCompletion};
pub use iso::{category_invariant, find_isomorphism};
pub use presentation::{close_presentation, CatPresentation, Generator, Relation};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::functor::FinFunctor;

/// Index of an object in a [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Index of an arrow in a [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arr(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowData {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

/// A broken law in a candidate composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BadEndpoint { arrow: String },
    BadIdentity { object: String },
    MissingComposite { g: String, f: String },
    SpuriousComposite { g: String, f: String },
    CompositeEndpoints { g: String, f: String, h: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadEndpoint { arrow } => write!(out, "arrow {arrow} has an unknown endpoint"),
            Violation::BadIdentity { object } => {
                write!(out, "identity of {object} is missing or not an endomorphism of {object}")
            }
            Violation::MissingComposite { g, f } => write!(out, "composite {g}.{f} is undefined"),
            Violation::SpuriousComposite { g, f } => {
                write!(out, "composite {g}.{f} is defined but {g} and {f} are not composable")
            }
            Violation::CompositeEndpoints { g, f, h } => {
                write!(out, "composite {g}.{f} = {h} has the wrong domain or codomain")
            }
            Violation::LeftIdentity { f } => write!(out, "identity law fails: id.{f} != {f}"),
            Violation::RightIdentity { f } => write!(out, "identity law fails: {f}.id != {f}"),
            Violation::Associativity { h, g, f } => {
                write!(out, "associativity fails: ({h}.{g}).{f} != {h}.({g}.{f})")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("invalid composition table: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("presentation does not close within {0} arrows")]
    NotFinitelyClosed(usize),
    #[error("relation `{0}` is not composable or its sides are not parallel")]
    IllFormedRelation(String),
}

/// A finite category given by objects, arrows and a composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<ArrowData>,
    identity: Vec<Arr>,
    /// `comp[g * m + f]` is `g ∘ f` when `dom g == cod f`.
    comp: Vec<Option<Arr>>,
    homs: Vec<Vec<Arr>>,
    hom_pos: Vec<usize>,
}

impl FinCategory {
    /// Assembles a category without checking any law. Use [`FinCategory::validate`]
    /// to inspect the result, or [`FinCategory::new`] to reject bad tables.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<ArrowData>,
        identity: Vec<Arr>,
        comp: Vec<Option<Arr>>,
    ) -> Self {
        let n = objects.len();
        let mut homs = vec![Vec::new(); n * n];
        let mut hom_pos = vec![0; arrows.len()];
        for (i, a) in arrows.iter().enumerate() {
            if a.dom.0 < n && a.cod.0 < n {
                let cell = &mut homs[a.dom.0 * n + a.cod.0];
                hom_pos[i] = cell.len();
                cell.push(Arr(i));
            }
        }
        FinCategory { objects, arrows, identity, comp, homs, hom_pos }
    }

    pub fn new(
        objects: Vec<String>,
        arrows: Vec<ArrowData>,
        identity: Vec<Arr>,
        comp: Vec<Option<Arr>>,
    ) -> Result<Self, CategoryError> {
        let c = Self::from_parts(objects, arrows, identity, comp);
        let violations = c.validate();
        if violations.is_empty() {
            Ok(c)
        } else {
            Err(CategoryError::Invalid(violations))
        }
    }

    /// Builds a category from named objects, named non-identity arrows and a
    /// table of composites `(g, f, h)` meaning `g.f = h`.
    ///
    /// Identities are implicit and named `id_X`; they are placed first, in
    /// object order. Composites involving an identity are filled in
    /// automatically, and table entries may name identities.
    pub fn from_table(
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        table: &[(&str, &str, &str)],
    ) -> Result<Self, CategoryError> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let arrows: Vec<(String, String, String)> =
            arrows.iter().map(|(a, d, c)| (a.to_string(), d.to_string(), c.to_string())).collect();
        let table: Vec<(String, String, String)> =
            table.iter().map(|(g, f, h)| (g.to_string(), f.to_string(), h.to_string())).collect();
        Self::from_named_table(&objects, &arrows, &table)
    }

    pub fn from_named_table(
        objects: &[String],
        arrows: &[(String, String, String)],
        table: &[(String, String, String)],
    ) -> Result<Self, CategoryError> {
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), Obj(i)).is_some() {
                return Err(CategoryError::DuplicateName(o.clone()));
            }
        }
        let lookup_obj =
            |name: &str| obj_index.get(name).copied().ok_or_else(|| CategoryError::UnknownObject(name.to_string()));
        let mut data: Vec<ArrowData> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| ArrowData { name: format!("id_{o}"), dom: Obj(i), cod: Obj(i) })
            .collect();
        for (name, d, c) in arrows {
            data.push(ArrowData { name: name.clone(), dom: lookup_obj(d)?, cod: lookup_obj(c)? });
        }
        let mut arr_index = HashMap::new();
        for (i, a) in data.iter().enumerate() {
            if arr_index.insert(a.name.clone(), Arr(i)).is_some() {
                return Err(CategoryError::DuplicateName(a.name.clone()));
            }
        }
        let lookup_arr =
            |name: &str| arr_index.get(name).copied().ok_or_else(|| CategoryError::UnknownArrow(name.to_string()));
        let n = objects.len();
        let m = data.len();
        let identity: Vec<Arr> = (0..n).map(Arr).collect();
        let mut comp = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if data[g].dom != data[f].cod {
                    continue;
                }
                if g < n {
                    comp[g * m + f] = Some(Arr(f));
                } else if f < n {
                    comp[g * m + f] = Some(Arr(g));
                }
            }
        }
        for (g, f, h) in table {
            let (g, f, h) = (lookup_arr(g)?, lookup_arr(f)?, lookup_arr(h)?);
            comp[g.0 * m + f.0] = Some(h);
        }
        Self::new(objects.to_vec(), data, identity, comp)
    }

    /// The category with one object and one arrow.
    pub fn terminal() -> Self {
        Self::discrete(&["*"])
    }

    /// The empty category (no objects).
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new(), Vec::new(), Vec::new())
    }

    /// A category with only identity arrows.
    pub fn discrete(objects: &[&str]) -> Self {
        Self::from_table(objects, &[], &[]).expect("discrete categories are always valid")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len()).map(Obj)
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arr> + '_ {
        (0..self.arrows.len()).map(Arr)
    }

    pub fn object_name(&self, x: Obj) -> &str {
        &self.objects[x.0]
    }

    pub fn arrow_name(&self, a: Arr) -> &str {
        &self.arrows[a.0].name
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow_data(&self) -> &[ArrowData] {
        &self.arrows
    }

    pub fn find_object(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name).map(Obj)
    }

    pub fn find_arrow(&self, name: &str) -> Option<Arr> {
        self.arrows.iter().position(|a| a.name == name).map(Arr)
    }

    #[inline]
    pub fn dom(&self, a: Arr) -> Obj {
        self.arrows[a.0].dom
    }

    #[inline]
    pub fn cod(&self, a: Arr) -> Obj {
        self.arrows[a.0].cod
    }

    #[inline]
    pub fn id(&self, x: Obj) -> Arr {
        self.identity[x.0]
    }

    pub fn is_identity(&self, a: Arr) -> bool {
        self.identity[self.dom(a).0] == a && self.dom(a) == self.cod(a)
    }

    /// `g ∘ f`, if composable.
    #[inline]
    pub fn compose(&self, g: Arr, f: Arr) -> Option<Arr> {
        self.comp[g.0 * self.arrows.len() + f.0]
    }

    /// `g ∘ f`; panics when `dom g != cod f`.
    #[inline]
    pub fn comp(&self, g: Arr, f: Arr) -> Arr {
        self.compose(g, f)
            .unwrap_or_else(|| panic!("arrows {} and {} are not composable", self.arrow_name(g), self.arrow_name(f)))
    }

    /// Arrows `x → y`, in arrow order.
    #[inline]
    pub fn hom(&self, x: Obj, y: Obj) -> &[Arr] {
        &self.homs[x.0 * self.objects.len() + y.0]
    }

    /// Position of `a` inside `hom(dom a, cod a)`.
    #[inline]
    pub fn hom_index(&self, a: Arr) -> usize {
        self.hom_pos[a.0]
    }

    pub fn inverse(&self, a: Arr) -> Option<Arr> {
        let (x, y) = (self.dom(a), self.cod(a));
        self.hom(y, x).iter().copied().find(|&b| self.comp(b, a) == self.id(x) && self.comp(a, b) == self.id(y))
    }

    pub fn is_iso(&self, a: Arr) -> bool {
        self.inverse(a).is_some()
    }

    pub fn are_isomorphic(&self, x: Obj, y: Obj) -> bool {
        self.hom(x, y).iter().any(|&a| self.is_iso(a))
    }

    fn arrow_label(&self, a: Arr) -> String {
        self.arrows.get(a.0).map(|d| d.name.clone()).unwrap_or_else(|| format!("#{}", a.0))
    }

    fn object_label(&self, x: Obj) -> String {
        self.objects.get(x.0).cloned().unwrap_or_else(|| format!("#{}", x.0))
    }

    /// Every violated category law. Empty iff the table is a category.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.objects.len();
        let m = self.arrows.len();
        let mut out = Vec::new();
        let mut endpoints_ok = true;
        for (i, a) in self.arrows.iter().enumerate() {
            if a.dom.0 >= n || a.cod.0 >= n {
                out.push(Violation::BadEndpoint { arrow: self.arrow_label(Arr(i)) });
                endpoints_ok = false;
            }
        }
        if !endpoints_ok {
            return out;
        }
        let mut ids_ok = self.identity.len() == n;
        for x in 0..n {
            let good = self
                .identity
                .get(x)
                .filter(|a| a.0 < m)
                .map(|&a| self.dom(a) == Obj(x) && self.cod(a) == Obj(x))
                .unwrap_or(false);
            if !good {
                out.push(Violation::BadIdentity { object: self.object_label(Obj(x)) });
                ids_ok = false;
            }
        }
        if self.comp.len() != m * m {
            out.push(Violation::MissingComposite { g: "*".into(), f: "*".into() });
            return out;
        }
        let mut table_ok = true;
        for g in self.arrows() {
            for f in self.arrows() {
                let composable = self.dom(g) == self.cod(f);
                match (composable, self.compose(g, f)) {
                    (true, None) => {
                        out.push(Violation::MissingComposite { g: self.arrow_label(g), f: self.arrow_label(f) });
                        table_ok = false;
                    }
                    (false, Some(_)) => {
                        out.push(Violation::SpuriousComposite { g: self.arrow_label(g), f: self.arrow_label(f) });
                        table_ok = false;
                    }
                    (true, Some(h)) => {
                        if h.0 >= m || self.dom(h) != self.dom(f) || self.cod(h) != self.cod(g) {
                            out.push(Violation::CompositeEndpoints {
                                g: self.arrow_label(g),
                                f: self.arrow_label(f),
                                h: self.arrow_label(h),
                            });
                            table_ok = false;
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !table_ok {
            return out;
        }
        if ids_ok {
            for f in self.arrows() {
                if self.comp(self.id(self.cod(f)), f) != f {
                    out.push(Violation::LeftIdentity { f: self.arrow_label(f) });
                }
                if self.comp(f, self.id(self.dom(f))) != f {
                    out.push(Violation::RightIdentity { f: self.arrow_label(f) });
                }
            }
        }
        for f in self.arrows() {
            for g in self.arrows().filter(|&g| self.dom(g) == self.cod(f)) {
                let gf = self.comp(g, f);
                for h in self.arrows().filter(|&h| self.dom(h) == self.cod(g)) {
                    if self.comp(self.comp(h, g), f) != self.comp(h, gf) {
                        out.push(Violation::Associativity {
                            h: self.arrow_label(h),
                            g: self.arrow_label(g),
                            f: self.arrow_label(f),
                        });
                    }
                }
            }
        }
        out
    }

    /// Same objects and arrows, with domain/codomain swapped and composition
    /// reversed.
    pub fn opposite(&self) -> FinCategory {
        let m = self.arrows.len();
        let arrows = self.arrows.iter().map(|a| ArrowData { name: a.name.clone(), dom: a.cod, cod: a.dom }).collect();
        let mut comp = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                // g ∘op f = f ∘ g
                comp[g * m + f] = self.compose(Arr(f), Arr(g));
            }
        }
        FinCategory::from_parts(self.objects.clone(), arrows, self.identity.clone(), comp)
    }

    pub fn is_groupoid(&self) -> bool {
        self.arrows().all(|a| self.is_iso(a))
    }

    /// Whether every arrow with a right inverse is an isomorphism. On
    /// failure returns `(a, b)` with `a ∘ b = id` and `a` not invertible.
    pub fn right_inv_implies_iso(&self) -> Result<(), (Arr, Arr)> {
        for a in self.arrows() {
            let (x, y) = (self.dom(a), self.cod(a));
            for &b in self.hom(y, x) {
                if self.comp(a, b) == self.id(y) && !(self.is_iso(a) && self.is_iso(b)) {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }

    /// An object `T` with exactly one arrow from every object; the first in
    /// object order if several exist.
    pub fn terminal_object(&self) -> Option<Obj> {
        self.objects().find(|&t| self.objects().all(|x| self.hom(x, t).len() == 1))
    }

    /// A terminal object exists and every arrow out of it is invertible.
    pub fn has_strict_terminal(&self) -> bool {
        match self.terminal_object() {
            Some(t) => self.objects().all(|x| self.hom(t, x).iter().all(|&a| self.is_iso(a))),
            None => false,
        }
    }

    /// The slice category over `x` with its projection functor.
    ///
    /// Objects are the arrows into `x` (in arrow order); an arrow from `a` to
    /// `b` is an arrow `h` with `b ∘ h = a`.
    pub fn slice(&self, x: Obj) -> (FinCategory, FinFunctor) {
        let into: Vec<Arr> = self.arrows().filter(|&a| self.cod(a) == x).collect();
        let index_of = |a: Arr| into.iter().position(|&b| b == a).expect("arrow into x");
        let objects: Vec<String> = into.iter().map(|&a| self.arrow_name(a).to_string()).collect();
        let mut arrows = Vec::new();
        let mut under = Vec::new();
        for h in self.arrows() {
            for &b in self.hom(self.cod(h), x) {
                let a = self.comp(b, h);
                let name = if self.is_identity(h) {
                    format!("id_{}", self.arrow_name(b))
                } else {
                    format!("{}/{}", self.arrow_name(h), self.arrow_name(b))
                };
                arrows.push(ArrowData { name, dom: Obj(index_of(a)), cod: Obj(index_of(b)) });
                under.push((h, b));
            }
        }
        let m = arrows.len();
        let identity: Vec<Arr> = into
            .iter()
            .map(|&a| {
                let h = self.id(self.dom(a));
                Arr(under.iter().position(|&(hh, b)| hh == h && b == a).expect("identity triangle"))
            })
            .collect();
        let mut comp = vec![None; m * m];
        for (gi, &(g, gb)) in under.iter().enumerate() {
            for (fi, &(f, fb)) in under.iter().enumerate() {
                // f: fb∘f → fb, g: gb∘g → gb; composable when gb ∘ g == fb.
                if self.compose(gb, g) == Some(fb) {
                    let h = self.comp(g, f);
                    let hi = under.iter().position(|&(hh, b)| hh == h && b == gb).expect("composite triangle");
                    comp[gi * m + fi] = Some(Arr(hi));
                }
            }
        }
        let cat = FinCategory::from_parts(objects, arrows, identity, comp);
        let obj_map = into.iter().map(|&a| self.dom(a)).collect();
        let arr_map = under.iter().map(|&(h, _)| h).collect();
        let proj = FinFunctor::from_parts_unchecked(cat.clone(), self.clone(), obj_map, arr_map);
        (cat, proj)
    }

    /// The full subcategory on `keep` (in the given order) and its inclusion.
    pub fn full_subcategory(&self, keep: &[Obj]) -> (FinCategory, FinFunctor) {
        let pos = |x: Obj| keep.iter().position(|&k| k == x);
        let kept: Vec<Arr> =
            self.arrows().filter(|&a| pos(self.dom(a)).is_some() && pos(self.cod(a)).is_some()).collect();
        let new_index = |a: Arr| kept.iter().position(|&k| k == a).expect("kept arrow");
        let objects = keep.iter().map(|&x| self.object_name(x).to_string()).collect();
        let arrows = kept
            .iter()
            .map(|&a| ArrowData {
                name: self.arrow_name(a).to_string(),
                dom: Obj(pos(self.dom(a)).unwrap()),
                cod: Obj(pos(self.cod(a)).unwrap()),
            })
            .collect();
        let identity = keep.iter().map(|&x| Arr(new_index(self.id(x)))).collect();
        let m = kept.len();
        let mut comp = vec![None; m * m];
        for (gi, &g) in kept.iter().enumerate() {
            for (fi, &f) in kept.iter().enumerate() {
                if let Some(h) = self.compose(g, f) {
                    comp[gi * m + fi] = Some(Arr(new_index(h)));
                }
            }
        }
        let sub = FinCategory::from_parts(objects, arrows, identity, comp);
        let incl = FinFunctor::from_parts_unchecked(sub.clone(), self.clone(), keep.to_vec(), kept);
        (sub, incl)
    }

    /// Renames objects and arrows; structure is untouched.
    pub fn relabel(&self, object_names: Vec<String>, arrow_names: Vec<String>) -> FinCategory {
        assert_eq!(object_names.len(), self.objects.len());
        assert_eq!(arrow_names.len(), self.arrows.len());
        let arrows =
            self.arrows.iter().zip(arrow_names).map(|(a, name)| ArrowData { name, dom: a.dom, cod: a.cod }).collect();
        FinCategory::from_parts(object_names, arrows, self.identity.clone(), self.comp.clone())
    }

    /// Applies a permutation: object `i` moves to `obj_perm[i]`, arrow `j` to
    /// `arr_perm[j]`. The result is isomorphic to `self`.
    pub fn permuted(&self, obj_perm: &[usize], arr_perm: &[usize]) -> FinCategory {
        let n = self.objects.len();
        let m = self.arrows.len();
        let mut objects = vec![String::new(); n];
        for (i, name) in self.objects.iter().enumerate() {
            objects[obj_perm[i]] = name.clone();
        }
        let mut arrows = vec![ArrowData { name: String::new(), dom: Obj(0), cod: Obj(0) }; m];
        for (j, a) in self.arrows.iter().enumerate() {
            arrows[arr_perm[j]] =
                ArrowData { name: a.name.clone(), dom: Obj(obj_perm[a.dom.0]), cod: Obj(obj_perm[a.cod.0]) };
        }
        let mut identity = vec![Arr(0); n];
        for x in 0..n {
            identity[obj_perm[x]] = Arr(arr_perm[self.identity[x].0]);
        }
        let mut comp = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.comp[g * m + f] {
                    comp[arr_perm[g] * m + arr_perm[f]] = Some(Arr(arr_perm[h.0]));
                }
            }
        }
        FinCategory::from_parts(objects, arrows, identity, comp)
    }

    /// Raw composition table, `g * num_arrows + f`.
    pub fn comp_table(&self) -> &[Option<Arr>] {
        &self.comp
    }

    pub fn identities(&self) -> &[Arr] {
        &self.identity
    }

    /// Overwrites one composition entry; the result may be invalid.
    pub fn with_comp_entry(&self, g: Arr, f: Arr, h: Option<Arr>) -> FinCategory {
        let mut comp = self.comp.clone();
        comp[g.0 * self.arrows.len() + f.0] = h;
        FinCategory::from_parts(self.objects.clone(), self.arrows.clone(), self.identity.clone(), comp)
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{{{}}}", self.objects.join(", "))?;
        let named: Vec<String> = self
            .arrows()
            .filter(|&a| !self.is_identity(a))
            .map(|a| {
                format!(
                    "{}: {} -> {}",
                    self.arrow_name(a),
                    self.object_name(self.dom(a)),
                    self.object_name(self.cod(a))
                )
            })
            .collect();
        if !named.is_empty() {
            write!(out, " [{}]", named.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn named_categories_validate() {
        for c in [catalog::sierpinski(), catalog::graph(), catalog::retract(), catalog::c2(), catalog::idempotent()] {
            assert!(c.validate().is_empty(), "{c}");
        }
        assert!(FinCategory::terminal().validate().is_empty());
        assert!(FinCategory::empty().validate().is_empty());
    }

    #[test]
    fn broken_identity_law_is_reported_once() {
        let m = catalog::c2();
        let g = m.find_arrow("g").unwrap();
        let id = m.find_arrow("id_*").unwrap();
        let broken = m.with_comp_entry(g, id, Some(id));
        let v = broken.validate();
        let identity_violations: Vec<_> = v
            .iter()
            .filter(|v| matches!(v, Violation::RightIdentity { .. } | Violation::LeftIdentity { .. }))
            .collect();
        assert_eq!(identity_violations.len(), 1, "{v:?}");
        assert_eq!(identity_violations[0], &Violation::RightIdentity { f: "g".into() });
    }

    #[test]
    fn retract_table_closes() {
        let c = catalog::retract();
        assert_eq!(c.num_arrows(), 5);
        let r = c.find_arrow("r").unwrap();
        let s = c.find_arrow("s").unwrap();
        let e = c.find_arrow("e").unwrap();
        assert_eq!(c.comp(r, s), c.id(c.find_object("Y").unwrap()));
        assert_eq!(c.comp(s, r), e);
        assert_eq!(c.comp(e, e), e);
    }

    #[test]
    fn missing_and_spurious_composites() {
        let c = catalog::sierpinski();
        let f = c.find_arrow("f").unwrap();
        let id_a = c.find_arrow("id_A").unwrap();
        let v = c.with_comp_entry(f, id_a, None).validate();
        assert_eq!(v, vec![Violation::MissingComposite { g: "f".into(), f: "id_A".into() }]);
        let v = c.with_comp_entry(f, f, Some(f)).validate();
        assert_eq!(v, vec![Violation::SpuriousComposite { g: "f".into(), f: "f".into() }]);
    }

    #[test]
    fn opposite_of_sierpinski_reverses_f() {
        let op = catalog::sierpinski().opposite();
        let f = op.find_arrow("f").unwrap();
        assert_eq!(op.object_name(op.dom(f)), "B");
        assert_eq!(op.object_name(op.cod(f)), "A");
        assert!(op.validate().is_empty());
    }

    #[test]
    fn opposite_is_an_involution() {
        for c in [catalog::sierpinski(), catalog::graph(), catalog::retract(), catalog::non_commutative_monoid()] {
            assert_eq!(c.opposite().opposite(), c);
        }
    }

    #[test]
    fn opposite_monoid_reverses_multiplication() {
        let m = catalog::non_commutative_monoid();
        let op = m.opposite();
        for a in m.arrows() {
            for b in m.arrows() {
                assert_eq!(op.comp(a, b), m.comp(b, a));
            }
        }
        assert!(find_isomorphism(&catalog::c2().opposite(), &catalog::c2()).is_some());
    }

    #[test]
    fn groupoid_examples() {
        assert!(catalog::c2().is_groupoid());
        assert!(!catalog::sierpinski().is_groupoid());
        assert!(!catalog::graph().is_groupoid());
        assert!(FinCategory::terminal().is_groupoid());
    }

    #[test]
    fn right_inverse_examples() {
        assert!(catalog::graph().right_inv_implies_iso().is_ok());
        assert!(catalog::c2().right_inv_implies_iso().is_ok());
        let c = catalog::retract();
        let (a, b) = c.right_inv_implies_iso().unwrap_err();
        assert_eq!((c.arrow_name(a), c.arrow_name(b)), ("r", "s"));
    }

    #[test]
    fn terminal_objects() {
        let s = catalog::sierpinski();
        assert_eq!(s.terminal_object().map(|t| s.object_name(t)), Some("B"));
        assert_eq!(catalog::c2().terminal_object(), None);
        let r = catalog::retract();
        assert_eq!(r.terminal_object().map(|t| r.object_name(t)), Some("Y"));
    }

    #[test]
    fn strict_terminal() {
        assert!(catalog::sierpinski().has_strict_terminal());
        assert!(!catalog::retract().has_strict_terminal());
        assert!(FinCategory::terminal().has_strict_terminal());
        assert!(!catalog::c2().has_strict_terminal());
    }

    #[test]
    fn slices_of_sierpinski() {
        let s = catalog::sierpinski();
        let (over_a, _) = s.slice(s.find_object("A").unwrap());
        assert!(find_isomorphism(&over_a, &FinCategory::terminal()).is_some());
        let (over_b, proj) = s.slice(s.find_object("B").unwrap());
        assert!(over_b.validate().is_empty());
        assert!(proj.validate().is_empty());
        assert_eq!(over_b.num_objects(), 2);
        assert!(find_isomorphism(&over_b, &s).is_some());
        let one = FinCategory::terminal();
        let (over_one, _) = one.slice(Obj(0));
        assert!(find_isomorphism(&over_one, &one).is_some());
    }

    #[test]
    fn full_subcategory_of_retract() {
        let c = catalog::retract();
        let (sub, incl) = c.full_subcategory(&[c.find_object("X").unwrap()]);
        assert_eq!(sub.num_arrows(), 2);
        assert!(sub.validate().is_empty());
        assert!(incl.validate().is_empty());
        assert!(find_isomorphism(&sub, &catalog::idempotent()).is_some());
    }
}
