//! Exponentials `p^q` with evaluation and currying.

use std::collections::HashMap;

use super::limits::product;
use super::nat::nat_transformations;
use super::{Presheaf, PresheafMap};
use crate::category::Obj;

/// `p^q` together with the data needed to curry maps into it.
#[derive(Debug, Clone)]
pub struct Exponential {
    pub object: Presheaf,
    /// `p^q × q → p`.
    pub eval: PresheafMap,
    base: Presheaf,
    exponent: Presheaf,
    /// Per object, the element index of each transformation `y(X) × q ⇒ p`.
    index: Vec<HashMap<Vec<Vec<usize>>, usize>>,
}

/// `p^q`: the elements at `X` are the transformations `y(X) × q ⇒ p`, in
/// enumeration order.
pub fn exponential(p: &Presheaf, q: &Presheaf) -> Exponential {
    assert!(p.is_compatible(q), "presheaves on different sites");
    let site = p.site_arc().clone();
    let c = &*site;
    let elements: Vec<Vec<Vec<Vec<usize>>>> = c
        .objects()
        .map(|x| {
            let yq = product(&Presheaf::yoneda(site.clone(), x), q).apex;
            nat_transformations(&yq, p).into_iter().map(|m| m.components().to_vec()).collect()
        })
        .collect();
    let index: Vec<HashMap<Vec<Vec<usize>>, usize>> =
        elements.iter().map(|list| list.iter().enumerate().map(|(i, phi)| (phi.clone(), i)).collect()).collect();
    let action = c
        .arrows()
        .map(|u| {
            let (x1, x) = (c.dom(u), c.cod(u));
            elements[x.0]
                .iter()
                .map(|phi| {
                    // (φ·u)_z(h, b) = φ_z(u∘h, b)
                    let moved: Vec<Vec<usize>> = c
                        .objects()
                        .map(|z| {
                            let qz = q.size(z);
                            c.hom(z, x1)
                                .iter()
                                .flat_map(|&h| {
                                    let a = c.hom_index(c.comp(u, h));
                                    (0..qz).map(move |b| phi[z.0][a * qz + b])
                                })
                                .collect()
                        })
                        .collect();
                    index[x1.0][&moved]
                })
                .collect()
        })
        .collect();
    let object = Presheaf::from_parts_unchecked(site.clone(), elements.iter().map(Vec::len).collect(), action);
    let prod = product(&object, q).apex;
    let eval_components = c
        .objects()
        .map(|x| {
            let qx = q.size(x);
            let id_pos = c.hom_index(c.id(x));
            (0..object.size(x) * qx).map(|i| elements[x.0][i / qx][x.0][id_pos * qx + i % qx]).collect()
        })
        .collect();
    let eval = PresheafMap::from_parts_unchecked(prod, p.clone(), eval_components);
    Exponential { object, eval, base: p.clone(), exponent: q.clone(), index }
}

impl Exponential {
    pub fn base(&self) -> &Presheaf {
        &self.base
    }

    pub fn exponent(&self) -> &Presheaf {
        &self.exponent
    }

    /// The transpose `r → p^q` of `m: r × q → p`, where `r × q` is laid out
    /// as by [`product`].
    pub fn transpose(&self, r: &Presheaf, m: &PresheafMap) -> PresheafMap {
        let c = r.site();
        let q = &self.exponent;
        let components = c
            .objects()
            .map(|x| {
                (0..r.size(x))
                    .map(|e| {
                        let phi: Vec<Vec<usize>> = c
                            .objects()
                            .map(|z| {
                                let qz = q.size(z);
                                c.hom(z, x)
                                    .iter()
                                    .flat_map(|&h| {
                                        let re = r.act(h, e);
                                        (0..qz).map(move |b| m.at(z, re * qz + b))
                                    })
                                    .collect()
                            })
                            .collect();
                        self.index[x.0][&phi]
                    })
                    .collect()
            })
            .collect();
        PresheafMap::from_parts_unchecked(r.clone(), self.object.clone(), components)
    }

    /// Size of `p^q` at `x`.
    pub fn size(&self, x: Obj) -> usize {
        self.object.size(x)
    }
}
