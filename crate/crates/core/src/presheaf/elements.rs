//! The category of elements and its projection to the site.

use std::sync::Arc;

use super::Presheaf;
use crate::category::{Arr, ArrowData, FinCategory, Obj};
use crate::functor::FinFunctor;

/// `∫P` with its discrete fibration to the site.
///
/// Objects are pairs `(X, x)` ordered by object then element, named `X:x`.
/// Each arrow `u: X → Y` of the site and `y ∈ P(Y)` gives an arrow
/// `(X, P(u)(y)) → (Y, y)`, named `u@y`; identities are named `id_X:x`.
pub fn category_of_elements(p: &Presheaf) -> (FinCategory, FinFunctor) {
    let c = p.site();
    let mut offset = Vec::with_capacity(c.num_objects() + 1);
    let mut objects = Vec::new();
    let mut over = Vec::new();
    for x in c.objects() {
        offset.push(objects.len());
        for e in 0..p.size(x) {
            objects.push(format!("{}:{}", c.object_name(x), p.element_name(x, e)));
            over.push(x);
        }
    }
    let node = |x: Obj, e: usize| Obj(offset[x.0] + e);
    // arrow index of (u, y)
    let mut arr_offset = Vec::with_capacity(c.num_arrows());
    let mut arrows = Vec::new();
    let mut under = Vec::new();
    for u in c.arrows() {
        arr_offset.push(arrows.len());
        let (x, y) = (c.dom(u), c.cod(u));
        for e in 0..p.size(y) {
            let name = if c.is_identity(u) {
                format!("id_{}", objects[node(y, e).0])
            } else {
                format!("{}@{}", c.arrow_name(u), p.element_name(y, e))
            };
            arrows.push(ArrowData { name, dom: node(x, p.act(u, e)), cod: node(y, e) });
            under.push((u, e));
        }
    }
    let identity = c
        .objects()
        .flat_map(|x| (0..p.size(x)).map(move |e| (x, e)))
        .map(|(x, e)| Arr(arr_offset[c.id(x).0] + e))
        .collect();
    let m = arrows.len();
    let mut comp = vec![None; m * m];
    for (gi, &(g, ge)) in under.iter().enumerate() {
        for (fi, &(f, fe)) in under.iter().enumerate() {
            // f sits over (dom f, P(f)(fe)) → (cod f, fe); g starts where f ends
            if c.dom(g) == c.cod(f) && p.act(g, ge) == fe {
                let h = c.comp(g, f);
                comp[gi * m + fi] = Some(Arr(arr_offset[h.0] + ge));
            }
        }
    }
    let cat = FinCategory::from_parts(objects, arrows, identity, comp);
    let arr_map = under.iter().map(|&(u, _)| u).collect();
    let proj = FinFunctor::from_parts_unchecked(Arc::new(cat.clone()), p.site_arc().clone(), over, arr_map);
    (cat, proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::category::find_isomorphism;
    use crate::presheaf::{enumerate_presheaves, terminal};

    #[test]
    fn elements_of_enumerated_presheaves_are_valid() {
        for c in [catalog::sierpinski(), catalog::graph(), catalog::retract(), catalog::c2()] {
            let c = Arc::new(c);
            for p in enumerate_presheaves(&c, 2) {
                let (el, proj) = category_of_elements(&p);
                assert!(el.validate().is_empty(), "{p}");
                assert!(proj.validate().is_empty());
                assert_eq!(el.num_objects(), p.total_size());
            }
        }
    }

    #[test]
    fn elements_of_terminal_is_the_site() {
        let c = Arc::new(catalog::graph());
        let (el, _) = category_of_elements(&terminal(&c));
        assert!(find_isomorphism(&el, &c).is_some());
    }

    #[test]
    fn elements_of_representable_is_the_slice() {
        for c in [catalog::sierpinski(), catalog::graph(), catalog::retract(), catalog::idempotent()] {
            let c = Arc::new(c);
            for x in c.objects() {
                let (el, _) = category_of_elements(&Presheaf::yoneda(c.clone(), x));
                let (sl, _) = c.slice(x);
                assert!(find_isomorphism(&el, &sl).is_some());
            }
        }
    }

    #[test]
    fn constant_two_on_the_point_is_discrete() {
        let one = Arc::new(FinCategory::terminal());
        let (el, _) = category_of_elements(&Presheaf::constant(one, 2));
        assert!(find_isomorphism(&el, &FinCategory::discrete(&["a", "b"])).is_some());
    }
}
