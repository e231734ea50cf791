//! Beck–Chevalley squares of functor-induced geometric morphisms.
//!
//! A square of functors `F∘Q = P∘G` with `Q: C' → C`, `G: C' → D'`,
//! `F: C → D`, `P: D' → D` induces a commuting square of geometric
//! morphisms, and the comparison `f^* p_* → q_* g^*` at `Y` sends
//! `φ ∈ Nat(p^* y(Fc), Y)` to `ψ` with `ψ_{c'}(γ) = φ_{Gc'}(Fγ)`.

use std::sync::Arc;

use thiserror::Error;

use super::decide::TriState;
use super::witness::Witness;
use super::GeomMorphism;
use crate::category::{Arr, Obj};
use crate::functor::FinFunctor;
use crate::presheaf::{count_nat_transformations, enumerate_presheaves, same_site, Presheaf, PresheafMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BCError {
    #[error("functors do not form a square: {0}")]
    Shape(String),
    #[error("square does not commute: F.Q and P.G differ")]
    NotCommuting,
}

#[derive(Debug, Clone)]
pub enum PastingFailure {
    Shape(BCError),
    Pasted(Box<Witness>),
}

/// `F∘Q = P∘G`; in topos terms `q` over `p`, `g` left of `f`.
#[derive(Debug, Clone)]
pub struct BCSquare {
    pub q: FinFunctor,
    pub g: FinFunctor,
    pub f: FinFunctor,
    pub p: FinFunctor,
}

impl BCSquare {
    pub fn new(q: FinFunctor, g: FinFunctor, f: FinFunctor, p: FinFunctor) -> Result<Self, BCError> {
        let shape = [
            (q.source_arc(), g.source_arc(), "Q and G must share their source"),
            (q.target_arc(), f.source_arc(), "Q must land in the source of F"),
            (g.target_arc(), p.source_arc(), "G must land in the source of P"),
            (f.target_arc(), p.target_arc(), "F and P must share their target"),
        ];
        for (a, b, msg) in shape {
            if !same_site(a, b) {
                return Err(BCError::Shape(msg.into()));
            }
        }
        let sq = BCSquare { q, g, f, p };
        if !sq.commutes() {
            return Err(BCError::NotCommuting);
        }
        Ok(sq)
    }

    fn commutes(&self) -> bool {
        let c1 = self.q.source();
        c1.objects().all(|x| self.f.ob(self.q.ob(x)) == self.p.ob(self.g.ob(x)))
            && c1.arrows().all(|u| self.f.ar(self.q.ar(u)) == self.p.ar(self.g.ar(u)))
    }

    pub fn describe(&self) -> String {
        format!(
            "Q: {}; G: {}; F: {}; P: {}",
            self.q.describe(),
            self.g.describe(),
            self.f.describe(),
            self.p.describe()
        )
    }

    /// Places `left` (with `left.f = self.g`) beside this square; the result
    /// has `Q∘Q'`, `H`, `F`, `P∘P'`.
    pub fn paste(&self, left: &BCSquare) -> Result<BCSquare, BCError> {
        if !same_site(left.f.source_arc(), self.g.source_arc())
            || !same_site(left.f.target_arc(), self.g.target_arc())
            || !left.f.same_maps(&self.g)
        {
            return Err(BCError::Shape("the right edge of the left square is not the left edge of this one".into()));
        }
        let q = left.q.then(&self.q).map_err(|e| BCError::Shape(e.to_string()))?;
        let p = left.p.then(&self.p).map_err(|e| BCError::Shape(e.to_string()))?;
        BCSquare::new(q, left.g.clone(), self.f.clone(), p)
    }

    /// The left adjoint candidate `p^* f_! q_*` applied to `x` on `C'`.
    pub fn stability_left_adjoint(&self, x: &Presheaf) -> Presheaf {
        let q = GeomMorphism::new(self.q.clone());
        let f = GeomMorphism::new(self.f.clone());
        let p = GeomMorphism::new(self.p.clone());
        p.inverse_image(&f.pushforward_left(&q.pushforward_right(x)))
    }
}

/// The square `Q = id`, `G = F`, `P = id`.
pub fn identity_square(f: &FinFunctor) -> BCSquare {
    BCSquare {
        q: FinFunctor::identity(f.source_arc().clone()),
        g: f.clone(),
        f: f.clone(),
        p: FinFunctor::identity(f.target_arc().clone()),
    }
}

/// The pullback of `f` along the étale morphism of `E`:
/// `∫f^*E → C`, `f/E`, `F`, `∫E → D`.
pub fn etale_square(f: &GeomMorphism, e: &Presheaf) -> BCSquare {
    let sm = f.slice_morphism(e);
    BCSquare {
        q: sm.upper_projection,
        g: sm.morphism.functor().clone(),
        f: f.functor().clone(),
        p: sm.lower_projection,
    }
}

/// Restriction to the full subcategory `D'` of `D` on `keep`: `P` is the
/// (fully faithful) inclusion, `C'` is the full subcategory of objects sent
/// into `D'`, `Q` its inclusion and `G` the restriction of `F`.
pub fn restriction_square(f: &FinFunctor, keep: &[Obj]) -> BCSquare {
    let c = f.source();
    let d = f.target();
    let (dsub, p) = d.full_subcategory(keep);
    let upstairs: Vec<Obj> = c.objects().filter(|&x| keep.contains(&f.ob(x))).collect();
    let (csub, q) = c.full_subcategory(&upstairs);
    let dsub = Arc::new(dsub);
    let csub = Arc::new(csub);
    let obj_map = upstairs.iter().map(|&x| Obj(keep.iter().position(|&k| k == f.ob(x)).expect("kept"))).collect();
    let arr_map = q
        .arr_map()
        .iter()
        .map(|&u| Arr(p.arr_map().iter().position(|&a| a == f.ar(u)).expect("full subcategory")))
        .collect();
    let g = FinFunctor::from_parts_unchecked(csub.clone(), dsub.clone(), obj_map, arr_map);
    let q = FinFunctor::from_parts_unchecked(csub, f.source_arc().clone(), q.obj_map().to_vec(), q.arr_map().to_vec());
    let p = FinFunctor::from_parts_unchecked(dsub, f.target_arc().clone(), p.obj_map().to_vec(), p.arr_map().to_vec());
    BCSquare { q, g, f: f.clone(), p }
}

/// The comparison `f^* p_* Y → q_* g^* Y`.
pub fn bc_compare(sq: &BCSquare, y: &Presheaf) -> PresheafMap {
    let f = GeomMorphism::new(sq.f.clone());
    let p = GeomMorphism::new(sq.p.clone());
    let q = GeomMorphism::new(sq.q.clone());
    let g = GeomMorphism::new(sq.g.clone());
    let pk = p.right_kan(y);
    let source = f.inverse_image(&pk.presheaf);
    let qk = q.right_kan(&g.inverse_image(y));
    let c = sq.f.source();
    let c1 = sq.q.source();
    let d = sq.f.target();
    let components = c
        .objects()
        .map(|x| {
            pk.elements[sq.f.ob(x).0]
                .iter()
                .map(|phi| {
                    let psi: Vec<Vec<usize>> = c1
                        .objects()
                        .map(|z| {
                            c.hom(sq.q.ob(z), x)
                                .iter()
                                .map(|&gamma| phi[sq.g.ob(z).0][d.hom_index(sq.f.ar(gamma))])
                                .collect()
                        })
                        .collect();
                    qk.position(x, &psi).expect("ψ is natural")
                })
                .collect()
        })
        .collect();
    PresheafMap::from_parts_unchecked(source, qk.presheaf, components)
}

/// Checks the comparison on every `Y` with carriers of size at most `bound`.
pub fn bc_holds(sq: &BCSquare, bound: usize) -> TriState<Witness> {
    let site = sq.p.source_arc();
    for (i, y) in enumerate_presheaves(site, bound).iter().enumerate() {
        if let Some(nb) = bc_compare(sq, y).first_non_bijective() {
            return TriState::Fails(Witness::bc(sq, y, format!("enumerated presheaf #{i}"), nb));
        }
    }
    TriState::HoldsAtBound(bound)
}

/// Compares `|Nat(p^* f_! q_* X, Y)|` with `|Nat(X, g^* Y)|` for every `X` on
/// `C'` and `Y` on `D'` up to `bound`. Returns the number of pairs checked, or
/// the first mismatch `(X, Y, left count, right count)`.
pub fn check_stability(sq: &BCSquare, bound: usize) -> Result<usize, (Presheaf, Presheaf, usize, usize)> {
    let g = GeomMorphism::new(sq.g.clone());
    let xs = enumerate_presheaves(sq.q.source_arc(), bound);
    let ys = enumerate_presheaves(sq.p.source_arc(), bound);
    let mut n = 0;
    for x in &xs {
        let lx = sq.stability_left_adjoint(x);
        for y in &ys {
            let left = count_nat_transformations(&lx, y);
            let right = count_nat_transformations(x, &g.inverse_image(y));
            n += 1;
            if left != right {
                return Err((x.clone(), y.clone(), left, right));
            }
        }
    }
    Ok(n)
}

/// Instance-level pasting: for every `Y` on the far-left base up to `bound`,
/// if the left square's comparison is iso at `Y` and this (right) square's is
/// iso at `p'_* Y`, the pasted comparison must be iso at `Y`. Returns how many
/// `Y` had both premises, or a witness on the pasted square.
pub fn check_pasting(right: &BCSquare, left: &BCSquare, bound: usize) -> Result<usize, PastingFailure> {
    let pasted = right.paste(left).map_err(PastingFailure::Shape)?;
    let p_left = GeomMorphism::new(left.p.clone());
    let mut premises = 0;
    for (i, y) in enumerate_presheaves(left.p.source_arc(), bound).iter().enumerate() {
        let l = bc_compare(left, y).is_iso();
        let r = bc_compare(right, &p_left.pushforward_right(y)).is_iso();
        if !(l && r) {
            continue;
        }
        premises += 1;
        if let Some(nb) = bc_compare(&pasted, y).first_non_bijective() {
            return Err(PastingFailure::Pasted(Box::new(Witness::bc(
                &pasted,
                y,
                format!("enumerated presheaf #{i}"),
                nb,
            ))));
        }
    }
    Ok(premises)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::category::FinCategory;
    use crate::functor::enumerate_functors;
    use crate::geom::is_cc_inverse_image;
    use crate::presheaf::terminal;

    /// The same comparison assembled from the unit of `q` and the counit of
    /// `p`: `f^*p_*Y → q_*q^*f^*p_*Y = q_*g^*p^*p_*Y → q_*g^*Y`.
    fn via_units(sq: &BCSquare, y: &Presheaf) -> PresheafMap {
        let f = GeomMorphism::new(sq.f.clone());
        let p = GeomMorphism::new(sq.p.clone());
        let q = GeomMorphism::new(sq.q.clone());
        let g = GeomMorphism::new(sq.g.clone());
        let x = f.inverse_image(&p.pushforward_right(y));
        let eta = q.right_unit(&x);
        let counit = g.inverse_image_map(&p.right_counit(y));
        eta.then(&q.right_map(&counit))
    }

    fn sample_squares() -> Vec<BCSquare> {
        let sites: Vec<Arc<FinCategory>> =
            [catalog::sierpinski(), catalog::c2(), FinCategory::terminal()].into_iter().map(Arc::new).collect();
        let mut out = Vec::new();
        for c in &sites {
            for d in &sites {
                for functor in enumerate_functors(c, d) {
                    let f = GeomMorphism::new(functor.clone());
                    out.push(identity_square(&functor));
                    for e in enumerate_presheaves(d, 1) {
                        out.push(etale_square(&f, &e));
                    }
                    for keep in d.objects() {
                        out.push(restriction_square(&functor, &[keep]));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn constructed_squares_commute() {
        for sq in sample_squares() {
            assert!(BCSquare::new(sq.q.clone(), sq.g.clone(), sq.f.clone(), sq.p.clone()).is_ok(), "{}", sq.describe());
        }
    }

    #[test]
    fn comparison_matches_unit_counit_construction() {
        for sq in sample_squares() {
            for y in enumerate_presheaves(sq.p.source_arc(), 2) {
                let direct = bc_compare(&sq, &y);
                assert!(direct.validate().is_empty());
                assert_eq!(direct.components(), via_units(&sq, &y).components());
            }
        }
    }

    #[test]
    fn identity_square_holds() {
        let f = FinFunctor::point(Arc::new(catalog::graph()), Obj(1));
        let sq = identity_square(&f);
        assert!(matches!(bc_holds(&sq, 2), TriState::HoldsAtBound(2)));
        let y = terminal(sq.p.source_arc());
        assert!(bc_compare(&sq, &y).is_iso());
    }

    #[test]
    fn etale_squares_follow_cartesian_closedness() {
        let s = Arc::new(catalog::sierpinski());
        let at_a = GeomMorphism::new(FinFunctor::point(s.clone(), Obj(0)));
        let yb = Presheaf::yoneda(s.clone(), Obj(1));
        assert!(matches!(bc_holds(&etale_square(&at_a, &yb), 2), TriState::HoldsAtBound(_)));
        let at_b = GeomMorphism::new(FinFunctor::point(s.clone(), Obj(1)));
        let ya = Presheaf::yoneda(s.clone(), Obj(0));
        let sq = etale_square(&at_b, &ya);
        let w = bc_holds(&sq, 2).failure().cloned().expect("fails");
        assert!(w.verify());
        for f in [at_a, at_b] {
            let cc = is_cc_inverse_image(&f).holds;
            let all_hold = enumerate_presheaves(&s, 2).iter().all(|e| !bc_holds(&etale_square(&f, e), 2).fails());
            assert_eq!(cc, all_hold);
        }
    }

    #[test]
    fn pasting_mismatch_is_rejected() {
        let s = Arc::new(catalog::sierpinski());
        let f = FinFunctor::point(s.clone(), Obj(0));
        let right = identity_square(&f);
        let other = identity_square(&FinFunctor::identity(s));
        assert!(right.paste(&other).is_err());
        assert!(right.paste(&identity_square(&f)).is_ok());
    }
}
