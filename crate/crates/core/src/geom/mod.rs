//! The geometric morphism `f: PSh(C) → PSh(D)` induced by a functor
//! `F: C → D`, with `f_! ⊣ f^* ⊣ f_*` built concretely.
//!
//! `f^*` is precomposition with `F`. `f_!` is the left Kan extension: the
//! elements of `f_!(P)(d)` are classes of triples `(c, α: d → Fc, x ∈ P(c))`
//! under `(c, α, P(h)(x')) ~ (c', F(h)∘α, x')`, numbered by least triple in
//! the order (c, α in hom order, x). `f_*` is the right Kan extension:
//! `f_*(P)(d) = Nat(f^* y(d), P)`.

mod bc;
mod decide;
mod frobenius;
mod witness;

pub use bc::{
    bc_compare, bc_holds, check_pasting, check_stability, etale_square, identity_square, restriction_square, BCError,
    BCSquare, PastingFailure,
};
pub use decide::{
    is_cc_inverse_image, is_locally_connected, is_locally_connected_bounded, is_locally_connected_over,
    is_locally_connected_with, QuotientTable, TriState, Verdict,
};
pub use frobenius::{frobenius, FrobeniusError, FrobeniusInstance};
pub use witness::{Witness, WitnessKind};

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{Arr, FinCategory, Obj};
use crate::functor::FinFunctor;
use crate::presheaf::{category_of_elements, nat_transformations, Presheaf, PresheafMap};
use crate::uf::UnionFind;

/// The morphism of presheaf toposes induced by a functor between sites.
#[derive(Debug, Clone)]
pub struct GeomMorphism {
    functor: FinFunctor,
}

impl GeomMorphism {
    pub fn new(functor: FinFunctor) -> Self {
        GeomMorphism { functor }
    }

    pub fn identity(c: &Arc<FinCategory>) -> Self {
        GeomMorphism { functor: FinFunctor::identity(c.clone()) }
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.functor
    }

    /// The site `C` of the domain topos.
    pub fn source_site(&self) -> &Arc<FinCategory> {
        self.functor.source_arc()
    }

    /// The site `D` of the codomain topos.
    pub fn target_site(&self) -> &Arc<FinCategory> {
        self.functor.target_arc()
    }

    /// `f^*(q) = q ∘ F`.
    pub fn inverse_image(&self, q: &Presheaf) -> Presheaf {
        let f = &self.functor;
        let c = f.source();
        let sizes = c.objects().map(|x| q.size(f.ob(x))).collect();
        let action = c.arrows().map(|u| q.action(f.ar(u)).to_vec()).collect();
        let mut p = Presheaf::from_parts_unchecked(self.source_site().clone(), sizes, action);
        if let Some(names) = q.names() {
            p = p.with_names(c.objects().map(|x| names[f.ob(x).0].clone()).collect());
        }
        p
    }

    pub fn inverse_image_map(&self, m: &PresheafMap) -> PresheafMap {
        let f = &self.functor;
        let components = f.source().objects().map(|x| m.component(f.ob(x)).to_vec()).collect();
        PresheafMap::from_parts_unchecked(self.inverse_image(m.source()), self.inverse_image(m.target()), components)
    }

    /// `f_!(p)` with the class bookkeeping needed to name its elements.
    pub fn left_kan(&self, p: &Presheaf) -> LeftKan {
        LeftKan::new(&self.functor, p)
    }

    pub fn pushforward_left(&self, p: &Presheaf) -> Presheaf {
        self.left_kan(p).presheaf
    }

    /// `f_*(p)` with its elements as explicit transformations.
    pub fn right_kan(&self, p: &Presheaf) -> RightKan {
        RightKan::new(self, p)
    }

    pub fn pushforward_right(&self, p: &Presheaf) -> Presheaf {
        self.right_kan(p).presheaf
    }

    /// `f_!(m)`: `[(c, α, x)] ↦ [(c, α, m_c(x))]`.
    pub fn left_map(&self, m: &PresheafMap) -> PresheafMap {
        let src = self.left_kan(m.source());
        let dst = self.left_kan(m.target());
        src.map_into(&dst, |c, x| m.at(c, x))
    }

    /// `f_*(m)`: `φ ↦ m ∘ φ`.
    pub fn right_map(&self, m: &PresheafMap) -> PresheafMap {
        let src = self.right_kan(m.source());
        let dst = self.right_kan(m.target());
        let d = self.target_site();
        let components = d
            .objects()
            .map(|y| {
                src.elements[y.0]
                    .iter()
                    .map(|phi| {
                        let moved: Vec<Vec<usize>> = phi
                            .iter()
                            .enumerate()
                            .map(|(c, row)| row.iter().map(|&e| m.at(Obj(c), e)).collect())
                            .collect();
                        dst.index[y.0][&moved]
                    })
                    .collect()
            })
            .collect();
        PresheafMap::from_parts_unchecked(src.presheaf, dst.presheaf, components)
    }

    /// Unit of `f_! ⊣ f^*`: `x ↦ [(c, id_{Fc}, x)]`.
    pub fn left_unit(&self, p: &Presheaf) -> PresheafMap {
        let f = &self.functor;
        let lk = self.left_kan(p);
        let d = f.target();
        let components = f
            .source()
            .objects()
            .map(|c| (0..p.size(c)).map(|x| lk.class(f.ob(c), c, d.id(f.ob(c)), x)).collect())
            .collect();
        PresheafMap::from_parts_unchecked(p.clone(), self.inverse_image(&lk.presheaf), components)
    }

    /// Counit of `f_! ⊣ f^*`: `[(c, α, x)] ↦ Q(α)(x)`.
    pub fn left_counit(&self, q: &Presheaf) -> PresheafMap {
        let lk = self.left_kan(&self.inverse_image(q));
        let components = lk.reps.iter().map(|row| row.iter().map(|&(_, alpha, x)| q.act(alpha, x)).collect()).collect();
        PresheafMap::from_parts_unchecked(lk.presheaf, q.clone(), components)
    }

    /// Unit of `f^* ⊣ f_*`: `q ↦ (h: Fc → d ↦ Q(h)(q))`.
    pub fn right_unit(&self, q: &Presheaf) -> PresheafMap {
        let f = &self.functor;
        let rk = self.right_kan(&self.inverse_image(q));
        let d = f.target();
        let components = d
            .objects()
            .map(|y| {
                (0..q.size(y))
                    .map(|e| {
                        let phi: Vec<Vec<usize>> = f
                            .source()
                            .objects()
                            .map(|c| d.hom(f.ob(c), y).iter().map(|&h| q.act(h, e)).collect())
                            .collect();
                        rk.index[y.0][&phi]
                    })
                    .collect()
            })
            .collect();
        PresheafMap::from_parts_unchecked(q.clone(), rk.presheaf, components)
    }

    /// Counit of `f^* ⊣ f_*`: `φ ↦ φ_c(id_{Fc})`.
    pub fn right_counit(&self, p: &Presheaf) -> PresheafMap {
        let f = &self.functor;
        let rk = self.right_kan(p);
        let d = f.target();
        let components = f
            .source()
            .objects()
            .map(|c| {
                let at = d.hom_index(d.id(f.ob(c)));
                rk.elements[f.ob(c).0].iter().map(|phi| phi[c.0][at]).collect()
            })
            .collect();
        PresheafMap::from_parts_unchecked(self.inverse_image(&rk.presheaf), p.clone(), components)
    }

    /// The functor `∫f^*E → ∫E`, `(c, e) ↦ (Fc, e)`, inducing `f/E`.
    pub fn slice_morphism(&self, e: &Presheaf) -> SliceMorphism {
        let f = &self.functor;
        let fe = self.inverse_image(e);
        let (upper, upper_proj) = category_of_elements(&fe);
        let (lower, lower_proj) = category_of_elements(e);
        let c = f.source();
        let d = f.target();
        let lower_offset: Vec<usize> = d
            .objects()
            .scan(0, |acc, y| {
                let o = *acc;
                *acc += e.size(y);
                Some(o)
            })
            .collect();
        let obj_map = upper_proj
            .obj_map()
            .iter()
            .zip(upper.objects())
            .map(|(&x, node)| {
                let elem = node.0 - upper_proj.obj_map().iter().position(|&o| o == x).expect("fibre start");
                Obj(lower_offset[f.ob(x).0] + elem)
            })
            .collect();
        // arrows of ∫P are laid out as (u, y) for u in arrow order, y ∈ P(cod u)
        let lower_arr_offset: Vec<usize> = d
            .arrows()
            .scan(0, |acc, u| {
                let o = *acc;
                *acc += e.size(d.cod(u));
                Some(o)
            })
            .collect();
        let mut arr_map = Vec::with_capacity(upper.num_arrows());
        for u in c.arrows() {
            for y in 0..fe.size(c.cod(u)) {
                arr_map.push(Arr(lower_arr_offset[f.ar(u).0] + y));
            }
        }
        let upper = Arc::new(upper);
        let lower = Arc::new(lower);
        let functor = FinFunctor::from_parts_unchecked(upper.clone(), lower.clone(), obj_map, arr_map);
        let upper_proj = FinFunctor::from_parts_unchecked(
            upper,
            self.source_site().clone(),
            upper_proj.obj_map().to_vec(),
            upper_proj.arr_map().to_vec(),
        );
        let lower_proj = FinFunctor::from_parts_unchecked(
            lower,
            self.target_site().clone(),
            lower_proj.obj_map().to_vec(),
            lower_proj.arr_map().to_vec(),
        );
        SliceMorphism {
            morphism: GeomMorphism::new(functor),
            upper_projection: upper_proj,
            lower_projection: lower_proj,
        }
    }
}

/// `f/E: PSh(∫f^*E) → PSh(∫E)` with the two étale projections.
#[derive(Debug, Clone)]
pub struct SliceMorphism {
    pub morphism: GeomMorphism,
    /// `∫f^*E → C`.
    pub upper_projection: FinFunctor,
    /// `∫E → D`.
    pub lower_projection: FinFunctor,
}

/// `f_!(P)` with its class structure.
#[derive(Debug, Clone)]
pub struct LeftKan {
    pub presheaf: Presheaf,
    /// Least triple `(c, α, x)` of each class, per object of `D`.
    pub reps: Vec<Vec<(Obj, Arr, usize)>>,
    labels: Vec<Vec<usize>>,
    base: Vec<Vec<usize>>,
    source_sizes: Vec<usize>,
    target: Arc<FinCategory>,
}

impl LeftKan {
    fn new(f: &FinFunctor, p: &Presheaf) -> Self {
        let c = f.source();
        let d = f.target();
        let sizes_c = p.sizes().to_vec();
        let base: Vec<Vec<usize>> = d
            .objects()
            .map(|y| {
                let mut row = vec![0];
                for x in c.objects() {
                    row.push(row[x.0] + d.hom(y, f.ob(x)).len() * sizes_c[x.0]);
                }
                row
            })
            .collect();
        let nc = c.num_objects();
        let index = |y: Obj, x: Obj, alpha: Arr, e: usize| base[y.0][x.0] + d.hom_index(alpha) * sizes_c[x.0] + e;
        let mut labels = Vec::with_capacity(d.num_objects());
        let mut reps = Vec::with_capacity(d.num_objects());
        for y in d.objects() {
            let total = base[y.0][nc];
            let mut uf = UnionFind::new(total);
            for h in c.arrows().filter(|&h| !c.is_identity(h)) {
                let (x, x1) = (c.dom(h), c.cod(h));
                let fh = f.ar(h);
                for &alpha in d.hom(y, f.ob(x)) {
                    let moved = d.comp(fh, alpha);
                    for e1 in 0..sizes_c[x1.0] {
                        uf.union(index(y, x, alpha, p.act(h, e1)), index(y, x1, moved, e1));
                    }
                }
            }
            let (lab, count) = uf.labels();
            let mut rep = vec![(Obj(0), Arr(0), 0); count];
            let mut seen = vec![false; count];
            for x in c.objects() {
                for &alpha in d.hom(y, f.ob(x)) {
                    for e in 0..sizes_c[x.0] {
                        let k = lab[index(y, x, alpha, e)];
                        if !seen[k] {
                            seen[k] = true;
                            rep[k] = (x, alpha, e);
                        }
                    }
                }
            }
            labels.push(lab);
            reps.push(rep);
        }
        let sizes: Vec<usize> = reps.iter().map(Vec::len).collect();
        let action = d
            .arrows()
            .map(|u| {
                let y1 = d.dom(u);
                reps[d.cod(u).0].iter().map(|&(x, alpha, e)| labels[y1.0][index(y1, x, d.comp(alpha, u), e)]).collect()
            })
            .collect();
        let names = d
            .objects()
            .map(|y| {
                reps[y.0]
                    .iter()
                    .map(|&(x, alpha, e)| {
                        format!("[{},{},{}]", c.object_name(x), d.arrow_name(alpha), p.element_name(x, e))
                    })
                    .collect()
            })
            .collect();
        let presheaf = Presheaf::from_parts_unchecked(f.target_arc().clone(), sizes, action).with_names(names);
        LeftKan { presheaf, reps, labels, base, source_sizes: sizes_c, target: f.target_arc().clone() }
    }

    /// The class of `(c, α, x)` in `f_!(P)(d)`, where `α: d → Fc`.
    pub fn class(&self, d: Obj, c: Obj, alpha: Arr, x: usize) -> usize {
        self.labels[d.0][self.base[d.0][c.0] + self.target.hom_index(alpha) * self.source_sizes[c.0] + x]
    }

    /// The map `f_!(P) → f_!(P')` induced elementwise by `g(c, x)`.
    fn map_into(&self, other: &LeftKan, g: impl Fn(Obj, usize) -> usize) -> PresheafMap {
        let components = self
            .reps
            .iter()
            .enumerate()
            .map(|(y, row)| row.iter().map(|&(x, alpha, e)| other.class(Obj(y), x, alpha, g(x, e))).collect())
            .collect();
        PresheafMap::from_parts_unchecked(self.presheaf.clone(), other.presheaf.clone(), components)
    }
}

/// `f_*(P)` with its elements as transformations `f^* y(d) ⇒ P`.
#[derive(Debug, Clone)]
pub struct RightKan {
    pub presheaf: Presheaf,
    /// `elements[d][i][c][j]`: component at `c` of the `i`-th element, applied
    /// to the `j`-th arrow `Fc → d`.
    pub elements: Vec<Vec<Vec<Vec<usize>>>>,
    index: Vec<HashMap<Vec<Vec<usize>>, usize>>,
}

impl RightKan {
    fn new(g: &GeomMorphism, p: &Presheaf) -> Self {
        let f = &g.functor;
        let d = f.target();
        let site = g.target_site();
        let elements: Vec<Vec<Vec<Vec<usize>>>> = d
            .objects()
            .map(|y| {
                let fy = g.inverse_image(&Presheaf::yoneda(site.clone(), y));
                nat_transformations(&fy, p).into_iter().map(|m| m.components().to_vec()).collect()
            })
            .collect();
        let index: Vec<HashMap<Vec<Vec<usize>>, usize>> =
            elements.iter().map(|list| list.iter().enumerate().map(|(i, phi)| (phi.clone(), i)).collect()).collect();
        let c = f.source();
        let action = d
            .arrows()
            .map(|u| {
                let (y1, y) = (d.dom(u), d.cod(u));
                elements[y.0]
                    .iter()
                    .map(|phi| {
                        // (φ·u)_c(h) = φ_c(u ∘ h) for h: Fc → y1
                        let moved: Vec<Vec<usize>> = c
                            .objects()
                            .map(|x| d.hom(f.ob(x), y1).iter().map(|&h| phi[x.0][d.hom_index(d.comp(u, h))]).collect())
                            .collect();
                        index[y1.0][&moved]
                    })
                    .collect()
            })
            .collect();
        let presheaf = Presheaf::from_parts_unchecked(site.clone(), elements.iter().map(Vec::len).collect(), action);
        RightKan { presheaf, elements, index }
    }

    /// Position of a transformation among the elements at `d`.
    pub fn position(&self, d: Obj, phi: &[Vec<usize>]) -> Option<usize> {
        self.index[d.0].get(phi).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::functor::enumerate_functors;
    use crate::presheaf::{count_nat_transformations, enumerate_presheaves, find_presheaf_iso, terminal};

    fn small_morphisms() -> Vec<GeomMorphism> {
        let sites: Vec<Arc<FinCategory>> =
            [catalog::sierpinski(), catalog::c2(), catalog::idempotent(), FinCategory::terminal()]
                .into_iter()
                .map(Arc::new)
                .collect();
        let mut out = Vec::new();
        for c in &sites {
            for d in &sites {
                out.extend(enumerate_functors(c, d).into_iter().map(GeomMorphism::new));
            }
        }
        out
    }

    #[test]
    fn kan_extensions_are_presheaves() {
        for g in small_morphisms() {
            for p in enumerate_presheaves(g.source_site(), 2) {
                assert!(g.pushforward_left(&p).validate().is_empty());
                assert!(g.pushforward_right(&p).validate().is_empty());
            }
        }
    }

    #[test]
    fn adjunctions_by_counting() {
        for g in small_morphisms() {
            let ps = enumerate_presheaves(g.source_site(), 2);
            let qs = enumerate_presheaves(g.target_site(), 2);
            for p in &ps {
                let lp = g.pushforward_left(p);
                let rp = g.pushforward_right(p);
                for q in &qs {
                    let fq = g.inverse_image(q);
                    assert_eq!(count_nat_transformations(&lp, q), count_nat_transformations(p, &fq));
                    assert_eq!(count_nat_transformations(&fq, p), count_nat_transformations(q, &rp));
                }
            }
        }
    }

    #[test]
    fn triangle_identities() {
        for g in small_morphisms() {
            for p in enumerate_presheaves(g.source_site(), 2) {
                let eta = g.left_unit(&p);
                let lhs = g.left_map(&eta).then(&g.left_counit(&g.pushforward_left(&p)));
                assert_eq!(lhs.components(), PresheafMap::identity(lhs.source()).components());
                let eta = g.right_unit(&g.pushforward_right(&p));
                let lhs = eta.then(&g.right_map(&g.right_counit(&p)));
                assert_eq!(lhs.components(), PresheafMap::identity(lhs.source()).components());
            }
            for q in enumerate_presheaves(g.target_site(), 2) {
                let fq = g.inverse_image(&q);
                let lhs = g.left_unit(&fq).then(&g.inverse_image_map(&g.left_counit(&q)));
                assert_eq!(lhs.components(), PresheafMap::identity(&fq).components());
                let lhs = g.inverse_image_map(&g.right_unit(&q)).then(&g.right_counit(&fq));
                assert_eq!(lhs.components(), PresheafMap::identity(&fq).components());
            }
        }
    }

    #[test]
    fn left_kan_preserves_representables() {
        for g in small_morphisms() {
            let c = g.source_site();
            for x in c.objects() {
                let lp = g.pushforward_left(&Presheaf::yoneda(c.clone(), x));
                let target = Presheaf::yoneda(g.target_site().clone(), g.functor().ob(x));
                assert!(find_presheaf_iso(&lp, &target).is_some());
            }
        }
    }

    #[test]
    fn point_at_b_of_sierpinski() {
        let s = Arc::new(catalog::sierpinski());
        let g = GeomMorphism::new(FinFunctor::point(s.clone(), Obj(1)));
        let one = terminal(g.source_site());
        let l = g.pushforward_left(&one);
        assert!(find_presheaf_iso(&l, &Presheaf::yoneda(s.clone(), Obj(1))).is_some());
        for p in enumerate_presheaves(&s, 2) {
            assert_eq!(g.inverse_image(&p).sizes(), &[p.size(Obj(1))]);
        }
        // f_*(S)(A) = Set(yA(B), S) = Set(∅, S) is a point, f_*(S)(B) = S
        for n in 0..3 {
            let r = g.pushforward_right(&Presheaf::constant(g.source_site().clone(), n));
            assert_eq!(r.sizes(), &[1, n]);
        }
    }

    #[test]
    fn identity_morphism_is_identity() {
        let c = Arc::new(catalog::retract());
        let g = GeomMorphism::identity(&c);
        for p in enumerate_presheaves(&c, 2) {
            assert_eq!(g.inverse_image(&p), p);
            assert!(find_presheaf_iso(&g.pushforward_left(&p), &p).is_some());
            assert!(find_presheaf_iso(&g.pushforward_right(&p), &p).is_some());
            assert!(g.pushforward_right(&terminal(&c)).is_terminal());
        }
    }

    #[test]
    fn slice_morphisms() {
        let s = Arc::new(catalog::sierpinski());
        let g = GeomMorphism::new(FinFunctor::point(s.clone(), Obj(1)));
        let sm = g.slice_morphism(&Presheaf::yoneda(s.clone(), Obj(1)));
        assert!(sm.morphism.functor().validate().is_empty());
        assert_eq!(sm.morphism.source_site().num_objects(), 1);
        assert!(crate::category::find_isomorphism(sm.morphism.target_site(), &s.slice(Obj(1)).0).is_some());

        for g in small_morphisms() {
            for e in enumerate_presheaves(g.target_site(), 2) {
                let sm = g.slice_morphism(&e);
                assert!(sm.morphism.functor().validate().is_empty());
                assert!(sm.upper_projection.validate().is_empty());
                assert!(sm.lower_projection.validate().is_empty());
                let left = sm.morphism.functor().then(&sm.lower_projection).unwrap();
                let right = sm.upper_projection.then(g.functor()).unwrap();
                assert!(left.same_maps(&right));
            }
            let one = terminal(g.target_site());
            let sm = g.slice_morphism(&one);
            assert!(crate::category::find_isomorphism(sm.morphism.source_site(), g.source_site()).is_some());
        }
        let c = Arc::new(catalog::graph());
        let id = GeomMorphism::identity(&c);
        for e in enumerate_presheaves(&c, 2) {
            assert!(id.slice_morphism(&e).morphism.functor().is_identity());
        }
    }
}
