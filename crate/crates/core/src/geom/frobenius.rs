//! The Frobenius comparison `θ: f_!(X ×_{f^*B} f^*A) → f_!(X) ×_B A`.

use thiserror::Error;

use super::GeomMorphism;
use crate::category::Obj;
use crate::presheaf::{pullback, same_site, Presheaf, PresheafMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrobeniusError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// One instance of the comparison together with its inputs.
#[derive(Debug, Clone)]
pub struct FrobeniusInstance {
    /// `ξ: X → f^*B` on `C`.
    pub xi: PresheafMap,
    /// `m: A → B` on `D`.
    pub m: PresheafMap,
    pub theta: PresheafMap,
}

impl FrobeniusInstance {
    pub fn x(&self) -> &Presheaf {
        self.xi.source()
    }

    pub fn a(&self) -> &Presheaf {
        self.m.source()
    }

    pub fn b(&self) -> &Presheaf {
        self.m.target()
    }
}

/// Builds `θ` for `ξ: X → f^*B` and `m: A → B`.
///
/// On a class `[(c, α, (x, a'))]` it returns the pair
/// `([(c, α, x)], A(α)(a'))`.
pub fn frobenius(f: &GeomMorphism, xi: &PresheafMap, m: &PresheafMap) -> Result<FrobeniusInstance, FrobeniusError> {
    let b = m.target();
    if !same_site(xi.source().site_arc(), f.source_site()) || !same_site(m.source().site_arc(), f.target_site()) {
        return Err(FrobeniusError::ShapeMismatch("presheaves live on the wrong sites".into()));
    }
    let fb = f.inverse_image(b);
    if xi.target() != &fb {
        return Err(FrobeniusError::ShapeMismatch("ξ does not land in f^*B".into()));
    }
    let a = m.source();
    let d = f.target_site();
    // source: f_!(X ×_{f^*B} f^*A)
    let fm = f.inverse_image_map(m);
    let upstairs = pullback(xi, &fm);
    let src = f.left_kan(&upstairs.apex);
    // target: f_!(X) ×_B A along the transpose of ξ
    let fx = f.left_kan(xi.source());
    let xi_hat: Vec<Vec<usize>> =
        fx.reps.iter().map(|row| row.iter().map(|&(c, alpha, x)| b.act(alpha, xi.at(c, x))).collect()).collect();
    let xi_hat = PresheafMap::from_parts_unchecked(fx.presheaf.clone(), b.clone(), xi_hat);
    let downstairs = pullback(&xi_hat, m);
    let (first, second) = (&downstairs.legs[0], &downstairs.legs[1]);
    let components = d
        .objects()
        .map(|y| {
            let na = a.size(y);
            let mut lookup = vec![usize::MAX; fx.presheaf.size(y) * na];
            for i in 0..downstairs.apex.size(y) {
                lookup[first.at(y, i) * na + second.at(y, i)] = i;
            }
            src.reps[y.0]
                .iter()
                .map(|&(c, alpha, pair)| {
                    let x = upstairs.legs[0].at(c, pair);
                    let a1 = upstairs.legs[1].at(c, pair);
                    let k = fx.class(y, c, alpha, x);
                    lookup[k * na + a.act(alpha, a1)]
                })
                .collect()
        })
        .collect();
    let theta = PresheafMap::from_parts_unchecked(src.presheaf, downstairs.apex, components);
    Ok(FrobeniusInstance { xi: xi.clone(), m: m.clone(), theta })
}

/// The map `y(c) → P` classifying `e ∈ P(c)`: `h ↦ P(h)(e)`.
pub(crate) fn classifying_map(y: &Presheaf, p: &Presheaf, c: Obj, e: usize) -> PresheafMap {
    let site = p.site();
    let components = site.objects().map(|z| site.hom(z, c).iter().map(|&h| p.act(h, e)).collect()).collect();
    PresheafMap::from_parts_unchecked(y.clone(), p.clone(), components)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::functor::{enumerate_functors, FinFunctor};
    use crate::presheaf::{enumerate_presheaves, nat_transformations, terminal};

    #[test]
    fn terminal_b_and_a_gives_iso() {
        let s = Arc::new(catalog::graph());
        for functor in enumerate_functors(&Arc::new(catalog::sierpinski()), &s) {
            let f = GeomMorphism::new(functor);
            let one = terminal(f.target_site());
            let m = PresheafMap::identity(&one);
            for x in enumerate_presheaves(f.source_site(), 2) {
                let xi = nat_transformations(&x, &f.inverse_image(&one)).remove(0);
                let inst = frobenius(&f, &xi, &m).unwrap();
                assert!(inst.theta.validate().is_empty());
                assert!(inst.theta.is_iso());
            }
        }
    }

    #[test]
    fn point_at_b_fails_on_ya() {
        let s = Arc::new(catalog::sierpinski());
        let f = GeomMorphism::new(FinFunctor::point(s.clone(), Obj(1)));
        let one_c = terminal(f.source_site());
        let one_d = terminal(&s);
        let ya = Presheaf::yoneda(s.clone(), Obj(0));
        let xi = PresheafMap::identity(&one_c);
        let m = nat_transformations(&ya, &one_d).remove(0);
        let inst = frobenius(&f, &xi, &m).unwrap();
        assert!(inst.theta.validate().is_empty());
        let nb = inst.theta.first_non_bijective().unwrap();
        assert_eq!(nb.object, Obj(0));
        assert_eq!((nb.source_size, nb.target_size), (0, 1));
    }

    #[test]
    fn point_at_a_is_iso_for_every_a() {
        let s = Arc::new(catalog::sierpinski());
        let f = GeomMorphism::new(FinFunctor::point(s.clone(), Obj(0)));
        let one_c = terminal(f.source_site());
        let one_d = terminal(&s);
        let xi = PresheafMap::identity(&one_c);
        for a in enumerate_presheaves(&s, 2) {
            let m = nat_transformations(&a, &one_d).remove(0);
            assert!(frobenius(&f, &xi, &m).unwrap().theta.is_iso());
        }
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let s = Arc::new(catalog::sierpinski());
        let f = GeomMorphism::new(FinFunctor::point(s.clone(), Obj(1)));
        let two = Presheaf::constant(f.source_site().clone(), 2);
        let one_d = terminal(&s);
        let xi = PresheafMap::identity(&two);
        let m = PresheafMap::identity(&one_d);
        assert!(frobenius(&f, &xi, &m).is_err());
    }
}
