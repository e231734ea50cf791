//! Finite-set-valued presheaves on a [`FinCategory`] and natural
//! transformations between them.
//!
//! Elements of each carrier are the integers `0..size`. Constructions that
//! build new presheaves (limits, quotients, Kan extensions) order their
//! elements deterministically, and quotient classes are numbered by their
//! least member, so outputs are stable across runs.

mod elements;
mod enumerate;
mod exponential;
mod limits;
mod nat;
mod quotient;

pub use elements::category_of_elements;
pub use enumerate::{enumerate_presheaves, find_presheaf_iso};
pub use exponential::{exponential, Exponential};
pub use limits::{coequalizer, coproduct, equalizer, initial, product, pullback, terminal, Cocone, Cone};
pub use nat::{count_nat_transformations, for_each_nat_transformation, nat_transformations};
pub use quotient::{congruence_closure, enumerate_quotients, quotient_by, Congruence, Quotient};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{Arr, FinCategory, Obj};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresheafError {
    #[error("presheaf is not functorial: {}", .0.join("; "))]
    NotFunctorial(Vec<String>),
    #[error("map is not natural: {}", .0.join("; "))]
    NotNatural(Vec<String>),
    #[error("presheaves live on different sites")]
    SiteMismatch,
}

/// A contravariant functor from the site to finite sets.
#[derive(Debug, Clone)]
pub struct Presheaf {
    site: Arc<FinCategory>,
    sizes: Vec<usize>,
    /// `action[u][y]` is `P(u)(y)` for `u: X → Y`, `y ∈ P(Y)`.
    action: Vec<Vec<usize>>,
    names: Option<Vec<Vec<String>>>,
}

impl PartialEq for Presheaf {
    fn eq(&self, other: &Self) -> bool {
        same_site(&self.site, &other.site) && self.sizes == other.sizes && self.action == other.action
    }
}

impl Eq for Presheaf {}

pub(crate) fn same_site(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Presheaf {
    pub fn new(
        site: impl Into<Arc<FinCategory>>,
        sizes: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        let p = Self::from_parts_unchecked(site, sizes, action);
        let v = p.validate();
        if v.is_empty() {
            Ok(p)
        } else {
            Err(PresheafError::NotFunctorial(v))
        }
    }

    pub fn from_parts_unchecked(site: impl Into<Arc<FinCategory>>, sizes: Vec<usize>, action: Vec<Vec<usize>>) -> Self {
        Presheaf { site: site.into(), sizes, action, names: None }
    }

    /// Attaches element names (one list per object).
    pub fn with_names(mut self, names: Vec<Vec<String>>) -> Self {
        debug_assert!(names.iter().zip(&self.sizes).all(|(n, &s)| n.len() == s));
        self.names = Some(names);
        self
    }

    pub fn site(&self) -> &FinCategory {
        &self.site
    }

    pub fn site_arc(&self) -> &Arc<FinCategory> {
        &self.site
    }

    #[inline]
    pub fn size(&self, x: Obj) -> usize {
        self.sizes[x.0]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `P(u)(y)` for `u: X → Y` and `y ∈ P(Y)`.
    #[inline]
    pub fn act(&self, u: Arr, y: usize) -> usize {
        self.action[u.0][y]
    }

    pub fn action(&self, u: Arr) -> &[usize] {
        &self.action[u.0]
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn names(&self) -> Option<&Vec<Vec<String>>> {
        self.names.as_ref()
    }

    pub fn element_name(&self, x: Obj, e: usize) -> String {
        match &self.names {
            Some(n) => n[x.0][e].clone(),
            None => format!("{e}"),
        }
    }

    pub fn is_compatible(&self, other: &Presheaf) -> bool {
        same_site(&self.site, &other.site)
    }

    /// Functoriality violations; empty iff this is a presheaf.
    pub fn validate(&self) -> Vec<String> {
        let c = &*self.site;
        let mut out = Vec::new();
        if self.sizes.len() != c.num_objects() || self.action.len() != c.num_arrows() {
            out.push("carrier or action table has the wrong length".into());
            return out;
        }
        for u in c.arrows() {
            let (x, y) = (c.dom(u), c.cod(u));
            let row = &self.action[u.0];
            if row.len() != self.size(y) || row.iter().any(|&v| v >= self.size(x)) {
                out.push(format!(
                    "action of {} is not a function P({}) -> P({})",
                    c.arrow_name(u),
                    c.object_name(y),
                    c.object_name(x)
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in c.objects() {
            let id = c.id(x);
            if self.action[id.0].iter().enumerate().any(|(i, &v)| i != v) {
                out.push(format!("identity of {} does not act trivially", c.object_name(x)));
            }
        }
        for f in c.arrows() {
            for g in c.arrows().filter(|&g| c.dom(g) == c.cod(f)) {
                let gf = c.comp(g, f);
                for z in 0..self.size(c.cod(g)) {
                    if self.act(gf, z) != self.act(f, self.act(g, z)) {
                        out.push(format!(
                            "P({}.{}) != P({}) o P({})",
                            c.arrow_name(g),
                            c.arrow_name(f),
                            c.arrow_name(f),
                            c.arrow_name(g)
                        ));
                        break;
                    }
                }
            }
        }
        out
    }

    /// `Hom(-, x)`: elements of `P(X)` are the arrows `X → x` in hom order.
    pub fn yoneda(site: impl Into<Arc<FinCategory>>, x: Obj) -> Presheaf {
        let site = site.into();
        let c = &*site;
        let sizes: Vec<usize> = c.objects().map(|y| c.hom(y, x).len()).collect();
        let action =
            c.arrows().map(|u| c.hom(c.cod(u), x).iter().map(|&b| c.hom_index(c.comp(b, u))).collect()).collect();
        let names = c.objects().map(|y| c.hom(y, x).iter().map(|&a| c.arrow_name(a).to_string()).collect()).collect();
        Presheaf { site, sizes, action, names: Some(names) }
    }

    /// The constant presheaf on a set of size `n`.
    pub fn constant(site: impl Into<Arc<FinCategory>>, n: usize) -> Presheaf {
        let site = site.into();
        let sizes = vec![n; site.num_objects()];
        let action = site.arrows().map(|_| (0..n).collect()).collect();
        Presheaf { site, sizes, action, names: None }
    }

    /// Whether every carrier has exactly one element.
    pub fn is_terminal(&self) -> bool {
        self.sizes.iter().all(|&s| s == 1)
    }
}

impl fmt::Display for Presheaf {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &*self.site;
        let parts: Vec<String> = c.objects().map(|x| format!("{}:{}", c.object_name(x), self.size(x))).collect();
        write!(out, "<{}>", parts.join(" "))
    }
}

/// A natural transformation between presheaves on one site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafMap {
    source: Presheaf,
    target: Presheaf,
    components: Vec<Vec<usize>>,
}

/// Evidence that a map is not bijective at some object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonBijective {
    pub object: Obj,
    pub source_size: usize,
    pub target_size: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl PresheafMap {
    pub fn new(source: Presheaf, target: Presheaf, components: Vec<Vec<usize>>) -> Result<Self, PresheafError> {
        if !source.is_compatible(&target) {
            return Err(PresheafError::SiteMismatch);
        }
        let m = Self::from_parts_unchecked(source, target, components);
        let v = m.validate();
        if v.is_empty() {
            Ok(m)
        } else {
            Err(PresheafError::NotNatural(v))
        }
    }

    pub fn from_parts_unchecked(source: Presheaf, target: Presheaf, components: Vec<Vec<usize>>) -> Self {
        PresheafMap { source, target, components }
    }

    pub fn identity(p: &Presheaf) -> PresheafMap {
        let components = p.sizes.iter().map(|&n| (0..n).collect()).collect();
        PresheafMap { source: p.clone(), target: p.clone(), components }
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    #[inline]
    pub fn at(&self, x: Obj, e: usize) -> usize {
        self.components[x.0][e]
    }

    pub fn component(&self, x: Obj) -> &[usize] {
        &self.components[x.0]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Naturality violations; empty iff the components form a natural
    /// transformation.
    pub fn validate(&self) -> Vec<String> {
        let c = self.source.site();
        let mut out = Vec::new();
        if self.components.len() != c.num_objects() {
            out.push("wrong number of components".into());
            return out;
        }
        for x in c.objects() {
            let row = &self.components[x.0];
            if row.len() != self.source.size(x) || row.iter().any(|&v| v >= self.target.size(x)) {
                out.push(format!("component at {} is not a function", c.object_name(x)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for u in c.arrows() {
            let (x, y) = (c.dom(u), c.cod(u));
            for e in 0..self.source.size(y) {
                if self.at(x, self.source.act(u, e)) != self.target.act(u, self.at(y, e)) {
                    out.push(format!("naturality fails along {}", c.arrow_name(u)));
                    break;
                }
            }
        }
        out
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PresheafMap) -> PresheafMap {
        debug_assert_eq!(self.target.sizes, other.source.sizes);
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(x, row)| row.iter().map(|&e| other.components[x][e]).collect())
            .collect();
        PresheafMap { source: self.source.clone(), target: other.target.clone(), components }
    }

    pub fn is_mono(&self) -> bool {
        self.source.site().objects().all(|x| self.injective_at(x))
    }

    pub fn is_epi(&self) -> bool {
        self.source.site().objects().all(|x| self.surjective_at(x))
    }

    pub fn is_iso(&self) -> bool {
        self.first_non_bijective().is_none()
    }

    fn injective_at(&self, x: Obj) -> bool {
        let mut seen = vec![false; self.target.size(x)];
        for &v in &self.components[x.0] {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        true
    }

    fn surjective_at(&self, x: Obj) -> bool {
        let mut seen = vec![false; self.target.size(x)];
        for &v in &self.components[x.0] {
            seen[v] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// The first object (in object order) where the component is not a
    /// bijection.
    pub fn first_non_bijective(&self) -> Option<NonBijective> {
        self.source.site().objects().find_map(|x| {
            let injective = self.injective_at(x);
            let surjective = self.surjective_at(x);
            (!(injective && surjective)).then(|| NonBijective {
                object: x,
                source_size: self.source.size(x),
                target_size: self.target.size(x),
                injective,
                surjective,
            })
        })
    }
}
