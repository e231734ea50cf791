//! Functors between finite categories.

use std::sync::Arc;

use thiserror::Error;

use crate::category::{Arr, FinCategory, Obj};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("functor is not structure preserving: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("functors do not compose: target of the first is not the source of the second")]
    NotComposable,
}

/// A functor `F: C → D`, stored as object and arrow maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    arr_map: Vec<Arr>,
}

impl FinFunctor {
    pub fn new(
        source: impl Into<Arc<FinCategory>>,
        target: impl Into<Arc<FinCategory>>,
        obj_map: Vec<Obj>,
        arr_map: Vec<Arr>,
    ) -> Result<Self, FunctorError> {
        let f = Self::from_parts_unchecked(source, target, obj_map, arr_map);
        let violations = f.validate();
        if violations.is_empty() {
            Ok(f)
        } else {
            Err(FunctorError::Invalid(violations))
        }
    }

    pub fn from_parts_unchecked(
        source: impl Into<Arc<FinCategory>>,
        target: impl Into<Arc<FinCategory>>,
        obj_map: Vec<Obj>,
        arr_map: Vec<Arr>,
    ) -> Self {
        FinFunctor { source: source.into(), target: target.into(), obj_map, arr_map }
    }

    pub fn identity(c: impl Into<Arc<FinCategory>>) -> Self {
        let c = c.into();
        let obj_map = c.objects().collect();
        let arr_map = c.arrows().collect();
        FinFunctor { source: c.clone(), target: c, obj_map, arr_map }
    }

    /// The functor `1 → c` picking out `x`; it induces the essential point of
    /// `PSh(c)` at `x`.
    pub fn point(c: impl Into<Arc<FinCategory>>, x: Obj) -> Self {
        let c = c.into();
        let one = FinCategory::terminal();
        let id = c.id(x);
        FinFunctor { source: Arc::new(one), target: c, obj_map: vec![x], arr_map: vec![id] }
    }

    pub fn source(&self) -> &FinCategory {
        &self.source
    }

    pub fn target(&self) -> &FinCategory {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<FinCategory> {
        &self.target
    }

    #[inline]
    pub fn ob(&self, x: Obj) -> Obj {
        self.obj_map[x.0]
    }

    #[inline]
    pub fn ar(&self, a: Arr) -> Arr {
        self.arr_map[a.0]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn arr_map(&self) -> &[Arr] {
        &self.arr_map
    }

    /// Violations of functoriality, each naming the offending arrows.
    pub fn validate(&self) -> Vec<String> {
        let (c, d) = (&*self.source, &*self.target);
        let mut out = Vec::new();
        if self.obj_map.len() != c.num_objects() || self.arr_map.len() != c.num_arrows() {
            out.push("object or arrow map has the wrong length".to_string());
            return out;
        }
        if self.obj_map.iter().any(|x| x.0 >= d.num_objects()) || self.arr_map.iter().any(|a| a.0 >= d.num_arrows()) {
            out.push("map points outside the target category".to_string());
            return out;
        }
        for a in c.arrows() {
            let fa = self.ar(a);
            if d.dom(fa) != self.ob(c.dom(a)) || d.cod(fa) != self.ob(c.cod(a)) {
                out.push(format!("F({}) has the wrong domain or codomain", c.arrow_name(a)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in c.objects() {
            if self.ar(c.id(x)) != d.id(self.ob(x)) {
                out.push(format!("F(id_{}) is not an identity", c.object_name(x)));
            }
        }
        for f in c.arrows() {
            for g in c.arrows().filter(|&g| c.dom(g) == c.cod(f)) {
                if self.ar(c.comp(g, f)) != d.comp(self.ar(g), self.ar(f)) {
                    out.push(format!(
                        "F({}.{}) != F({}).F({})",
                        c.arrow_name(g),
                        c.arrow_name(f),
                        c.arrow_name(g),
                        c.arrow_name(f)
                    ));
                }
            }
        }
        out
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor, FunctorError> {
        if *self.target != *other.source {
            return Err(FunctorError::NotComposable);
        }
        Ok(FinFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            obj_map: self.obj_map.iter().map(|&x| other.ob(x)).collect(),
            arr_map: self.arr_map.iter().map(|&a| other.ar(a)).collect(),
        })
    }

    /// Equal maps on objects and arrows (sources and targets are compared
    /// structurally).
    pub fn same_maps(&self, other: &FinFunctor) -> bool {
        self.obj_map == other.obj_map && self.arr_map == other.arr_map
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target
            && self.obj_map.iter().enumerate().all(|(i, x)| x.0 == i)
            && self.arr_map.iter().enumerate().all(|(i, a)| a.0 == i)
    }

    pub fn is_fully_faithful(&self) -> bool {
        let (c, d) = (&*self.source, &*self.target);
        c.objects().all(|x| {
            c.objects().all(|y| {
                let image: Vec<Arr> = c.hom(x, y).iter().map(|&a| self.ar(a)).collect();
                let target = d.hom(self.ob(x), self.ob(y));
                image.len() == target.len() && target.iter().all(|b| image.contains(b))
            })
        })
    }

    pub fn describe(&self) -> String {
        let c = &*self.source;
        let d = &*self.target;
        let objs: Vec<String> =
            c.objects().map(|x| format!("{}->{}", c.object_name(x), d.object_name(self.ob(x)))).collect();
        let arrs: Vec<String> = c
            .arrows()
            .filter(|&a| !c.is_identity(a))
            .map(|a| format!("{}->{}", c.arrow_name(a), d.arrow_name(self.ar(a))))
            .collect();
        format!("obj[{}] arr[{}]", objs.join(","), arrs.join(","))
    }
}

/// All functors `c → d`, ordered lexicographically by object map and then by
/// arrow map (arrow choices follow target hom-set order).
pub fn enumerate_functors(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Vec<FinFunctor> {
    let n = c.num_objects();
    let m = c.num_arrows();
    let mut out = Vec::new();
    if n > 0 && d.num_objects() == 0 {
        return out;
    }
    // composable triples (g, f, g∘f) keyed by the largest arrow index involved
    let mut checks: Vec<Vec<(Arr, Arr, Arr)>> = vec![Vec::new(); m];
    for f in c.arrows() {
        for g in c.arrows().filter(|&g| c.dom(g) == c.cod(f)) {
            let h = c.comp(g, f);
            let top = f.0.max(g.0).max(h.0);
            checks[top].push((g, f, h));
        }
    }
    let mut obj_map = vec![Obj(0); n];
    loop {
        let mut arr_map = vec![Arr(0); m];
        assign_arrows(c, d, &obj_map, &checks, 0, &mut arr_map, &mut out);
        // next object assignment in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if obj_map[i].0 + 1 < d.num_objects() {
                obj_map[i] = Obj(obj_map[i].0 + 1);
                for later in obj_map.iter_mut().skip(i + 1) {
                    *later = Obj(0);
                }
                break;
            }
        }
    }
}

fn assign_arrows(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    obj_map: &[Obj],
    checks: &[Vec<(Arr, Arr, Arr)>],
    i: usize,
    arr_map: &mut Vec<Arr>,
    out: &mut Vec<FinFunctor>,
) {
    if i == c.num_arrows() {
        out.push(FinFunctor {
            source: c.clone(),
            target: d.clone(),
            obj_map: obj_map.to_vec(),
            arr_map: arr_map.clone(),
        });
        return;
    }
    let a = Arr(i);
    let (x, y) = (obj_map[c.dom(a).0], obj_map[c.cod(a).0]);
    let forced = c.is_identity(a).then(|| d.id(x));
    let choices: Vec<Arr> = match forced {
        Some(id) => vec![id],
        None => d.hom(x, y).to_vec(),
    };
    for choice in choices {
        arr_map[i] = choice;
        let ok = checks[i].iter().all(|&(g, f, h)| arr_map[h.0] == d.comp(arr_map[g.0], arr_map[f.0]));
        if ok {
            assign_arrows(c, d, obj_map, checks, i + 1, arr_map, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn brute_force_count(c: &FinCategory, d: &FinCategory) -> usize {
        // every object map and every arrow map, filtered by validate
        let n = c.num_objects();
        let m = c.num_arrows();
        let (dn, dm) = (d.num_objects(), d.num_arrows());
        let mut count = 0;
        let ca = Arc::new(c.clone());
        let da = Arc::new(d.clone());
        for oi in 0..dn.pow(n as u32) {
            let obj_map: Vec<Obj> = (0..n).map(|k| Obj(oi / dn.pow(k as u32) % dn)).collect();
            for ai in 0..dm.pow(m as u32) {
                let arr_map: Vec<Arr> = (0..m).map(|k| Arr(ai / dm.pow(k as u32) % dm)).collect();
                let f = FinFunctor::from_parts_unchecked(ca.clone(), da.clone(), obj_map.clone(), arr_map);
                if f.validate().is_empty() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let cats = [catalog::sierpinski(), catalog::graph(), catalog::c2(), catalog::idempotent(), catalog::retract()];
        for c in &cats {
            for d in &cats {
                if c.num_arrows() > 4 && d.num_arrows() > 4 {
                    continue;
                }
                let got = enumerate_functors(&Arc::new(c.clone()), &Arc::new(d.clone()));
                assert!(got.iter().all(|f| f.validate().is_empty()));
                assert_eq!(got.len(), brute_force_count(c, d), "{c} -> {d}");
            }
        }
    }

    #[test]
    fn points_and_identities_are_functors() {
        let s = Arc::new(catalog::sierpinski());
        let p = FinFunctor::point(s.clone(), Obj(1));
        assert!(p.validate().is_empty());
        assert!(FinFunctor::identity(s.clone()).is_identity());
        assert!(FinFunctor::identity(s).is_fully_faithful());
    }

    #[test]
    fn composition_of_functors() {
        let s = Arc::new(catalog::sierpinski());
        let p = FinFunctor::point(s.clone(), Obj(1));
        let id = FinFunctor::identity(s);
        let q = p.then(&id).unwrap();
        assert!(q.same_maps(&p));
        assert!(id.then(&p).is_err());
    }
}
