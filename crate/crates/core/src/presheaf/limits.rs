//! Finite limits and colimits, computed pointwise.

use std::sync::Arc;

use super::quotient::{congruence_closure, quotient_by};
use super::{Presheaf, PresheafMap};
use crate::category::FinCategory;

/// A limit object with its projections.
#[derive(Debug, Clone)]
pub struct Cone {
    pub apex: Presheaf,
    pub legs: Vec<PresheafMap>,
}

/// A colimit object with its injections.
#[derive(Debug, Clone)]
pub struct Cocone {
    pub apex: Presheaf,
    pub legs: Vec<PresheafMap>,
}

pub fn terminal(site: &Arc<FinCategory>) -> Presheaf {
    Presheaf::constant(site.clone(), 1)
}

pub fn initial(site: &Arc<FinCategory>) -> Presheaf {
    Presheaf::constant(site.clone(), 0)
}

/// `p × q`; the pair `(a, b)` sits at index `a * |q(X)| + b`.
pub fn product(p: &Presheaf, q: &Presheaf) -> Cone {
    assert!(p.is_compatible(q), "presheaves on different sites");
    let c = p.site();
    let sizes: Vec<usize> = c.objects().map(|x| p.size(x) * q.size(x)).collect();
    let action = c
        .arrows()
        .map(|u| {
            let y = c.cod(u);
            let qx = q.size(c.dom(u));
            (0..p.size(y))
                .flat_map(|a| (0..q.size(y)).map(move |b| (a, b)))
                .map(|(a, b)| p.act(u, a) * qx + q.act(u, b))
                .collect()
        })
        .collect();
    let apex = Presheaf::from_parts_unchecked(p.site_arc().clone(), sizes, action);
    let first = c.objects().map(|x| (0..p.size(x) * q.size(x)).map(|i| i / q.size(x)).collect()).collect();
    let second = c.objects().map(|x| (0..p.size(x) * q.size(x)).map(|i| i % q.size(x)).collect()).collect();
    Cone {
        legs: vec![
            PresheafMap::from_parts_unchecked(apex.clone(), p.clone(), first),
            PresheafMap::from_parts_unchecked(apex.clone(), q.clone(), second),
        ],
        apex,
    }
}

/// `X ×_B A` for `m1: X → B`, `m2: A → B`. Elements are the matching pairs
/// `(x, a)` in lexicographic order.
pub fn pullback(m1: &PresheafMap, m2: &PresheafMap) -> Cone {
    let (x_p, a_p) = (m1.source(), m2.source());
    assert!(x_p.is_compatible(a_p), "presheaves on different sites");
    let c = x_p.site();
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(c.num_objects());
    let mut index: Vec<Vec<usize>> = Vec::with_capacity(c.num_objects());
    for obj in c.objects() {
        let na = a_p.size(obj);
        let mut here = Vec::new();
        let mut idx = vec![usize::MAX; x_p.size(obj) * na];
        for x in 0..x_p.size(obj) {
            let bx = m1.at(obj, x);
            for a in 0..na {
                if m2.at(obj, a) == bx {
                    idx[x * na + a] = here.len();
                    here.push((x, a));
                }
            }
        }
        pairs.push(here);
        index.push(idx);
    }
    let sizes: Vec<usize> = pairs.iter().map(Vec::len).collect();
    let action = c
        .arrows()
        .map(|u| {
            let (d, y) = (c.dom(u), c.cod(u));
            let na = a_p.size(d);
            pairs[y.0].iter().map(|&(x, a)| index[d.0][x_p.act(u, x) * na + a_p.act(u, a)]).collect()
        })
        .collect();
    let apex = Presheaf::from_parts_unchecked(x_p.site_arc().clone(), sizes, action);
    let first = pairs.iter().map(|row| row.iter().map(|&(x, _)| x).collect()).collect();
    let second = pairs.iter().map(|row| row.iter().map(|&(_, a)| a).collect()).collect();
    Cone {
        legs: vec![
            PresheafMap::from_parts_unchecked(apex.clone(), x_p.clone(), first),
            PresheafMap::from_parts_unchecked(apex.clone(), a_p.clone(), second),
        ],
        apex,
    }
}

/// The subpresheaf where `m1` and `m2` agree.
pub fn equalizer(m1: &PresheafMap, m2: &PresheafMap) -> Cone {
    let p = m1.source();
    let c = p.site();
    let kept: Vec<Vec<usize>> =
        c.objects().map(|x| (0..p.size(x)).filter(|&e| m1.at(x, e) == m2.at(x, e)).collect()).collect();
    let position = |x: usize, e: usize| kept[x].iter().position(|&k| k == e).expect("closed under action");
    let action =
        c.arrows().map(|u| kept[c.cod(u).0].iter().map(|&e| position(c.dom(u).0, p.act(u, e))).collect()).collect();
    let apex = Presheaf::from_parts_unchecked(p.site_arc().clone(), kept.iter().map(Vec::len).collect(), action);
    let incl = PresheafMap::from_parts_unchecked(apex.clone(), p.clone(), kept);
    Cone { apex, legs: vec![incl] }
}

/// `p + q`; elements of `p` come first.
pub fn coproduct(p: &Presheaf, q: &Presheaf) -> Cocone {
    assert!(p.is_compatible(q), "presheaves on different sites");
    let c = p.site();
    let sizes: Vec<usize> = c.objects().map(|x| p.size(x) + q.size(x)).collect();
    let action = c
        .arrows()
        .map(|u| {
            let shift = p.size(c.dom(u));
            p.action(u).iter().copied().chain(q.action(u).iter().map(|&v| v + shift)).collect()
        })
        .collect();
    let apex = Presheaf::from_parts_unchecked(p.site_arc().clone(), sizes, action);
    let left = c.objects().map(|x| (0..p.size(x)).collect()).collect();
    let right = c.objects().map(|x| (0..q.size(x)).map(|v| v + p.size(x)).collect()).collect();
    Cocone {
        legs: vec![
            PresheafMap::from_parts_unchecked(p.clone(), apex.clone(), left),
            PresheafMap::from_parts_unchecked(q.clone(), apex.clone(), right),
        ],
        apex,
    }
}

/// The quotient of the common target by the least congruence identifying
/// `m1(e)` with `m2(e)`; classes are numbered by least member.
pub fn coequalizer(m1: &PresheafMap, m2: &PresheafMap) -> Cocone {
    let q = m1.target();
    let c = q.site();
    let mut pairs = Vec::new();
    for x in c.objects() {
        for e in 0..m1.source().size(x) {
            pairs.push((x, m1.at(x, e), m2.at(x, e)));
        }
    }
    let cong = congruence_closure(q, &pairs);
    let (apex, proj) = quotient_by(q, &cong);
    Cocone { apex, legs: vec![proj] }
}
