//! Idempotent-splitting completion, skeletalized.

use std::sync::Arc;

use super::{Arr, ArrowData, FinCategory, Obj};
use crate::functor::FinFunctor;

/// The skeletal Cauchy completion of a category together with the canonical
/// inclusion.
#[derive(Debug, Clone)]
pub struct CauchyCompletion {
    pub category: FinCategory,
    pub inclusion: FinFunctor,
    /// For each completion object, the idempotent of the original category
    /// it splits.
    pub idempotents: Vec<Arr>,
}

fn is_idempotent(c: &FinCategory, a: Arr) -> bool {
    c.dom(a) == c.cod(a) && c.comp(a, a) == a
}

/// Arrows `a` with `a = e2 ∘ a ∘ e1`: the morphisms `e1 → e2` between split
/// idempotents.
fn split_hom(c: &FinCategory, e1: Arr, e2: Arr) -> Vec<Arr> {
    c.hom(c.cod(e1), c.cod(e2)).iter().copied().filter(|&a| c.comp(e2, c.comp(a, e1)) == a).collect()
}

/// An isomorphism `e1 ≅ e2` of split idempotents, as `(u: e1 → e2, v: e2 → e1)`.
fn split_iso(c: &FinCategory, e1: Arr, e2: Arr) -> Option<(Arr, Arr)> {
    let forward = split_hom(c, e1, e2);
    let backward = split_hom(c, e2, e1);
    for &u in &forward {
        for &v in &backward {
            if c.comp(v, u) == e1 && c.comp(u, v) == e2 {
                return Some((u, v));
            }
        }
    }
    None
}

/// Objects are the idempotents of `c` up to isomorphism; identities come
/// first in object order, so each class is represented by the least object
/// of `c` it contains when there is one.
pub fn cauchy_completion(c: &FinCategory) -> CauchyCompletion {
    let mut idems: Vec<Arr> = c.objects().map(|x| c.id(x)).collect();
    idems.extend(c.arrows().filter(|&a| !c.is_identity(a) && is_idempotent(c, a)));

    // representative index and isomorphism (to rep, from rep) for each idempotent
    let mut reps: Vec<Arr> = Vec::new();
    let mut class_of: Vec<(usize, Arr, Arr)> = Vec::with_capacity(idems.len());
    for &e in &idems {
        let found = reps.iter().enumerate().find_map(|(k, &r)| split_iso(c, e, r).map(|(u, v)| (k, u, v)));
        match found {
            Some(entry) => class_of.push(entry),
            None => {
                reps.push(e);
                class_of.push((reps.len() - 1, e, e));
            }
        }
    }

    let obj_name = |e: Arr| -> String {
        if c.is_identity(e) {
            c.object_name(c.dom(e)).to_string()
        } else {
            format!("split({})", c.arrow_name(e))
        }
    };
    let objects: Vec<String> = reps.iter().map(|&e| obj_name(e)).collect();
    let mut arrows = Vec::new();
    let mut under: Vec<(usize, usize, Arr)> = Vec::new();
    for (i, &e1) in reps.iter().enumerate() {
        for (j, &e2) in reps.iter().enumerate() {
            for a in split_hom(c, e1, e2) {
                let name = if c.is_identity(e1) && c.is_identity(e2) {
                    c.arrow_name(a).to_string()
                } else if a == e1 && i == j {
                    format!("id_{}", objects[i])
                } else {
                    format!("{}[{},{}]", c.arrow_name(a), objects[i], objects[j])
                };
                arrows.push(ArrowData { name, dom: Obj(i), cod: Obj(j) });
                under.push((i, j, a));
            }
        }
    }
    let locate = |i: usize, j: usize, a: Arr| -> Arr {
        Arr(under.iter().position(|&(ii, jj, aa)| ii == i && jj == j && aa == a).expect("arrow in completion"))
    };
    let identity: Vec<Arr> = reps.iter().enumerate().map(|(i, &e)| locate(i, i, e)).collect();
    let m = under.len();
    let mut comp = vec![None; m * m];
    for (gi, &(gs, gt, g)) in under.iter().enumerate() {
        for (fi, &(fs, ft, f)) in under.iter().enumerate() {
            if gs == ft {
                comp[gi * m + fi] = Some(locate(fs, gt, c.comp(g, f)));
            }
        }
    }
    let category = FinCategory::from_parts(objects, arrows, identity, comp);

    let obj_map: Vec<Obj> = c.objects().map(|x| Obj(class_of[x.0].0)).collect();
    let arr_map: Vec<Arr> = c
        .arrows()
        .map(|a| {
            let (sx, tx) = (c.dom(a), c.cod(a));
            let (si, _, v_s) = class_of[sx.0];
            let (ti, u_t, _) = class_of[tx.0];
            // u_t ∘ a ∘ v_s : rep(s) → rep(t)
            locate(si, ti, c.comp(u_t, c.comp(a, v_s)))
        })
        .collect();
    let inclusion = FinFunctor::from_parts_unchecked(Arc::new(c.clone()), Arc::new(category.clone()), obj_map, arr_map);
    CauchyCompletion { category, inclusion, idempotents: reps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::category::find_isomorphism;

    #[test]
    fn group_is_already_complete() {
        let cc = cauchy_completion(&catalog::c2());
        assert!(cc.category.validate().is_empty());
        assert!(find_isomorphism(&cc.category, &catalog::c2()).is_some());
    }

    #[test]
    fn idempotent_monoid_splits() {
        let cc = cauchy_completion(&catalog::idempotent());
        let k = &cc.category;
        assert!(k.validate().is_empty());
        assert!(cc.inclusion.validate().is_empty());
        assert_eq!(k.object_names(), &["*".to_string(), "split(e)".to_string()]);
        // split(e) is a retract of *: arrows p: * → split(e), i: split(e) → * with p∘i = id
        let (star, split) = (Obj(0), Obj(1));
        let retract =
            k.hom(split, star).iter().any(|&i| k.hom(star, split).iter().any(|&p| k.comp(p, i) == k.id(split)));
        assert!(retract);
        assert!(!k.are_isomorphic(star, split));
    }

    #[test]
    fn retract_category_is_already_skeletal_complete() {
        let cc = cauchy_completion(&catalog::retract());
        assert_eq!(cc.category.object_names(), &["X".to_string(), "Y".to_string()]);
        assert!(find_isomorphism(&cc.category, &catalog::retract()).is_some());
    }

    #[test]
    fn completion_merges_isomorphic_objects() {
        // two isomorphic objects collapse to one
        let c = FinCategory::from_table(
            &["P", "Q"],
            &[("u", "P", "Q"), ("v", "Q", "P")],
            &[("u", "v", "id_Q"), ("v", "u", "id_P")],
        )
        .unwrap();
        let cc = cauchy_completion(&c);
        assert_eq!(cc.category.num_objects(), 1);
        assert!(cc.inclusion.validate().is_empty());
    }
}
