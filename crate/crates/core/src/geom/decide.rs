//! Decision procedures for cartesian closed inverse images and local
//! connectedness.
//!
//! Both sides of `θ_{X,B,A}` preserve colimits in `X` and in `A` separately,
//! so it suffices to take `X = y(c')` and `A = y(d')`. The maps
//! `y(d') → B` and `y(c') → f^*B` are then two elements `b ∈ B(d')` and
//! `x ∈ B(Fc')`, and `θ` only depends on the subpresheaf they generate: a
//! mono `B' ↪ B` pulls back to identities on both sides. The generated
//! subpresheaf is a quotient of `y(d') + y(Fc')`, so quantifying over those
//! quotients is exact.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::frobenius::{classifying_map, frobenius};
use super::witness::Witness;
use super::GeomMorphism;
use crate::category::{FinCategory, Obj};
use crate::presheaf::{
    coproduct, enumerate_presheaves, enumerate_quotients, terminal, Presheaf, PresheafMap, Quotient,
};

/// Outcome of a check whose positive answer may only hold up to a bound.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum TriState<W> {
    Holds,
    HoldsAtBound(usize),
    Fails(W),
}

impl<W> TriState<W> {
    pub fn fails(&self) -> bool {
        matches!(self, TriState::Fails(_))
    }

    pub fn failure(&self) -> Option<&W> {
        match self {
            TriState::Fails(w) => Some(w),
            _ => None,
        }
    }
}

/// An exact yes/no answer with a certificate on failure.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Number of `θ` instances examined.
    pub instances: usize,
}

impl Verdict {
    fn pass(instances: usize) -> Self {
        Verdict { holds: true, witness: None, instances }
    }

    fn fail(w: Witness, instances: usize) -> Self {
        Verdict { holds: false, witness: Some(w), instances }
    }
}

/// Checks `θ` for one instance; `None` if it is an isomorphism.
fn check(f: &GeomMorphism, xi: &PresheafMap, m: &PresheafMap, labels: impl FnOnce() -> [String; 3]) -> Option<Witness> {
    let inst = frobenius(f, xi, m).expect("instances are built with matching shapes");
    let failure = inst.theta.first_non_bijective()?;
    Some(Witness::frobenius(f, inst, labels(), failure))
}

/// Whether `f^*` preserves exponentials, i.e. `θ` is an isomorphism with
/// `B = 1`, for all `X` and `A`. Only representable `X` and `A` are checked.
pub fn is_cc_inverse_image(f: &GeomMorphism) -> Verdict {
    let c = f.source_site();
    let d = f.target_site();
    let one = terminal(d);
    let f_one = f.inverse_image(&one);
    let mut n = 0;
    for x in c.objects() {
        let yx = Presheaf::yoneda(c.clone(), x);
        let xi = classifying_map(&yx, &f_one, x, 0);
        for y in d.objects() {
            let ya = Presheaf::yoneda(d.clone(), y);
            let m = classifying_map(&ya, &one, y, 0);
            n += 1;
            if let Some(w) = check(f, &xi, &m, || {
                [format!("y({})", c.object_name(x)), format!("y({})", d.object_name(y)), "1".into()]
            }) {
                return Verdict::fail(w, n);
            }
        }
    }
    Verdict::pass(n)
}

/// Quotients of `y(d1) + y(d2)` for every pair of objects of a site,
/// computed once and shared by every morphism into that site.
#[derive(Debug)]
pub struct QuotientTable {
    site: Arc<FinCategory>,
    table: HashMap<(usize, usize), Vec<Quotient>>,
}

impl QuotientTable {
    pub fn new(site: &Arc<FinCategory>) -> Self {
        let mut table = HashMap::new();
        for a in site.objects() {
            for b in site.objects() {
                let sum = coproduct(&Presheaf::yoneda(site.clone(), a), &Presheaf::yoneda(site.clone(), b)).apex;
                table.insert((a.0, b.0), enumerate_quotients(&sum));
            }
        }
        QuotientTable { site: site.clone(), table }
    }

    pub fn site(&self) -> &Arc<FinCategory> {
        &self.site
    }

    pub fn quotients(&self, a: Obj, b: Obj) -> &[Quotient] {
        &self.table[&(a.0, b.0)]
    }

    pub fn total(&self) -> usize {
        self.table.values().map(Vec::len).sum()
    }
}

/// Whether `θ` is an isomorphism for all `A → B` and `X → f^*B`.
pub fn is_locally_connected(f: &GeomMorphism) -> Verdict {
    is_locally_connected_with(f, &QuotientTable::new(f.target_site()))
}

/// As [`is_locally_connected`], reusing precomputed quotients of the target
/// site.
pub fn is_locally_connected_with(f: &GeomMorphism, quotients: &QuotientTable) -> Verdict {
    assert!(**quotients.site() == **f.target_site(), "quotient table for a different site");
    let cc = is_cc_inverse_image(f);
    if !cc.holds {
        return cc;
    }
    let c = f.source_site();
    let d = f.target_site();
    let functor = f.functor();
    let mut n = cc.instances;
    for y in d.objects() {
        let ya = Presheaf::yoneda(d.clone(), y);
        for x in c.objects() {
            let yx = Presheaf::yoneda(c.clone(), x);
            let fx = functor.ob(x);
            let offset = ya.size(fx);
            let id_pos = d.hom_index(d.id(fx));
            for q in quotients.quotients(y, fx) {
                let b = &q.quotient;
                let m = PresheafMap::from_parts_unchecked(
                    ya.clone(),
                    b.clone(),
                    d.objects().map(|z| (0..ya.size(z)).map(|e| q.projection.at(z, e)).collect()).collect(),
                );
                let fb = f.inverse_image(b);
                let xi = classifying_map(&yx, &fb, x, q.projection.at(fx, offset + id_pos));
                n += 1;
                if let Some(w) = check(f, &xi, &m, || {
                    [
                        format!("y({})", c.object_name(x)),
                        format!("y({})", d.object_name(y)),
                        format!("quotient of y({}) + y({})", d.object_name(y), d.object_name(fx)),
                    ]
                }) {
                    return Verdict::fail(w, n);
                }
            }
        }
    }
    Verdict::pass(n)
}

/// Brute force over every `B` with carriers of size at most `bound`, every
/// `y(d') → B` and every `y(c') → f^*B`. A failure is definitive; success
/// only covers the bound.
pub fn is_locally_connected_bounded(f: &GeomMorphism, bound: usize) -> TriState<Witness> {
    is_locally_connected_over(f, &enumerate_presheaves(f.target_site(), bound), bound)
}

/// As [`is_locally_connected_bounded`] over a given list of `B`s.
pub fn is_locally_connected_over(f: &GeomMorphism, bs: &[Presheaf], bound: usize) -> TriState<Witness> {
    let c = f.source_site();
    let d = f.target_site();
    let ya: Vec<Presheaf> = d.objects().map(|y| Presheaf::yoneda(d.clone(), y)).collect();
    let yx: Vec<Presheaf> = c.objects().map(|x| Presheaf::yoneda(c.clone(), x)).collect();
    for (bi, b) in bs.iter().enumerate() {
        let fb = f.inverse_image(b);
        for y in d.objects() {
            for e in 0..b.size(y) {
                let m = classifying_map(&ya[y.0], b, y, e);
                for x in c.objects() {
                    for e2 in 0..fb.size(x) {
                        let xi = classifying_map(&yx[x.0], &fb, x, e2);
                        if let Some(w) = check(f, &xi, &m, || {
                            [
                                format!("y({})", c.object_name(x)),
                                format!("y({})", d.object_name(y)),
                                format!("enumerated presheaf #{bi}"),
                            ]
                        }) {
                            return TriState::Fails(w);
                        }
                    }
                }
            }
        }
    }
    TriState::HoldsAtBound(bound)
}
