//! Isomorphism search between finite categories.
//!
//! Pruning uses a fixed set of invariants:
//! * per object: endomorphism-monoid size, and the sorted in/out hom-set
//!   size multisets;
//! * per arrow: whether it is an identity, an isomorphism, an idempotent.
//!
//! The same object invariants (sorted) form [`category_invariant`], used to
//! bucket categories before running the full search during enumeration.

use std::sync::Arc;

use super::{Arr, FinCategory, Obj};
use crate::functor::FinFunctor;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ObjectInvariant {
    endos: usize,
    out_degrees: Vec<usize>,
    in_degrees: Vec<usize>,
}

fn object_invariant(c: &FinCategory, x: Obj) -> ObjectInvariant {
    let mut out_degrees: Vec<usize> = c.objects().map(|y| c.hom(x, y).len()).collect();
    let mut in_degrees: Vec<usize> = c.objects().map(|y| c.hom(y, x).len()).collect();
    out_degrees.sort_unstable();
    in_degrees.sort_unstable();
    ObjectInvariant { endos: c.hom(x, x).len(), out_degrees, in_degrees }
}

fn arrow_invariant(c: &FinCategory, a: Arr) -> (bool, bool, bool) {
    let idem = c.compose(a, a) == Some(a);
    (c.is_identity(a), c.is_iso(a), idem)
}

/// An isomorphism-invariant fingerprint: equal for isomorphic categories.
pub fn category_invariant(c: &FinCategory) -> (usize, usize, usize, usize, Vec<(usize, Vec<usize>, Vec<usize>)>) {
    let mut objs: Vec<(usize, Vec<usize>, Vec<usize>)> = c
        .objects()
        .map(|x| {
            let inv = object_invariant(c, x);
            (inv.endos, inv.out_degrees, inv.in_degrees)
        })
        .collect();
    objs.sort();
    let isos = c.arrows().filter(|&a| c.is_iso(a)).count();
    let idems = c.arrows().filter(|&a| c.compose(a, a) == Some(a)).count();
    (c.num_objects(), c.num_arrows(), isos, idems, objs)
}

struct Search<'a> {
    c1: &'a FinCategory,
    c2: &'a FinCategory,
    obj_inv1: Vec<ObjectInvariant>,
    obj_inv2: Vec<ObjectInvariant>,
    arr_inv1: Vec<(bool, bool, bool)>,
    arr_inv2: Vec<(bool, bool, bool)>,
    checks: Vec<Vec<(Arr, Arr, Arr)>>,
    obj_map: Vec<Option<Obj>>,
    obj_used: Vec<bool>,
    arr_map: Vec<Option<Arr>>,
    arr_used: Vec<bool>,
}

impl Search<'_> {
    fn objects(&mut self, i: usize) -> bool {
        if i == self.c1.num_objects() {
            return self.arrows(0);
        }
        for y in self.c2.objects() {
            if self.obj_used[y.0] || self.obj_inv1[i] != self.obj_inv2[y.0] {
                continue;
            }
            let x = Obj(i);
            let consistent = (0..i).all(|k| {
                let (xk, yk) = (Obj(k), self.obj_map[k].expect("assigned"));
                self.c1.hom(x, xk).len() == self.c2.hom(y, yk).len()
                    && self.c1.hom(xk, x).len() == self.c2.hom(yk, y).len()
            }) && self.c1.hom(x, x).len() == self.c2.hom(y, y).len();
            if !consistent {
                continue;
            }
            self.obj_map[i] = Some(y);
            self.obj_used[y.0] = true;
            if self.objects(i + 1) {
                return true;
            }
            self.obj_map[i] = None;
            self.obj_used[y.0] = false;
        }
        false
    }

    fn arrows(&mut self, i: usize) -> bool {
        if i == self.c1.num_arrows() {
            return true;
        }
        let a = Arr(i);
        let x = self.obj_map[self.c1.dom(a).0].expect("objects assigned");
        let y = self.obj_map[self.c1.cod(a).0].expect("objects assigned");
        let candidates: Vec<Arr> = self.c2.hom(x, y).to_vec();
        for b in candidates {
            if self.arr_used[b.0] || self.arr_inv1[i] != self.arr_inv2[b.0] {
                continue;
            }
            if self.c1.is_identity(a) && b != self.c2.id(x) {
                continue;
            }
            self.arr_map[i] = Some(b);
            let ok = self.checks[i].iter().all(|&(g, f, h)| {
                let (g2, f2, h2) = (self.arr_map[g.0], self.arr_map[f.0], self.arr_map[h.0]);
                self.c2.compose(g2.unwrap(), f2.unwrap()) == h2
            });
            if ok {
                self.arr_used[b.0] = true;
                if self.arrows(i + 1) {
                    return true;
                }
                self.arr_used[b.0] = false;
            }
            self.arr_map[i] = None;
        }
        false
    }
}

/// An isomorphism `c1 → c2` with its inverse, if the categories are
/// isomorphic.
pub fn find_isomorphism(c1: &FinCategory, c2: &FinCategory) -> Option<(FinFunctor, FinFunctor)> {
    if c1.num_objects() != c2.num_objects() || c1.num_arrows() != c2.num_arrows() {
        return None;
    }
    let obj_inv1: Vec<_> = c1.objects().map(|x| object_invariant(c1, x)).collect();
    let obj_inv2: Vec<_> = c2.objects().map(|x| object_invariant(c2, x)).collect();
    let mut s1 = obj_inv1.clone();
    let mut s2 = obj_inv2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    let mut checks: Vec<Vec<(Arr, Arr, Arr)>> = vec![Vec::new(); c1.num_arrows()];
    for f in c1.arrows() {
        for g in c1.arrows().filter(|&g| c1.dom(g) == c1.cod(f)) {
            let h = c1.comp(g, f);
            checks[f.0.max(g.0).max(h.0)].push((g, f, h));
        }
    }
    let mut search = Search {
        c1,
        c2,
        obj_inv1,
        obj_inv2,
        arr_inv1: c1.arrows().map(|a| arrow_invariant(c1, a)).collect(),
        arr_inv2: c2.arrows().map(|a| arrow_invariant(c2, a)).collect(),
        checks,
        obj_map: vec![None; c1.num_objects()],
        obj_used: vec![false; c2.num_objects()],
        arr_map: vec![None; c1.num_arrows()],
        arr_used: vec![false; c2.num_arrows()],
    };
    if !search.objects(0) {
        return None;
    }
    let obj_map: Vec<Obj> = search.obj_map.into_iter().map(|x| x.expect("assigned")).collect();
    let arr_map: Vec<Arr> = search.arr_map.into_iter().map(|a| a.expect("assigned")).collect();
    let mut inv_obj = vec![Obj(0); obj_map.len()];
    for (i, y) in obj_map.iter().enumerate() {
        inv_obj[y.0] = Obj(i);
    }
    let mut inv_arr = vec![Arr(0); arr_map.len()];
    for (i, b) in arr_map.iter().enumerate() {
        inv_arr[b.0] = Arr(i);
    }
    let a1 = Arc::new(c1.clone());
    let a2 = Arc::new(c2.clone());
    let forward = FinFunctor::from_parts_unchecked(a1.clone(), a2.clone(), obj_map, arr_map);
    let backward = FinFunctor::from_parts_unchecked(a2, a1, inv_obj, inv_arr);
    Some((forward, backward))
}
