//! Site-level classification: EILC, weakly Jacobson, CILC by implication,
//! Boolean, and local with closed center.

mod enumerate;
mod sweep;

use std::sync::Arc;

use serde::Serialize;

use crate::category::{cauchy_completion, FinCategory, Obj};
use crate::functor::FinFunctor;
use crate::geom::{is_locally_connected, GeomMorphism, TriState, Witness};
use crate::space::{FinSpace, SpaceError};

pub use enumerate::{enumerate_categories, enumerate_categories_with_census, CategoryCensus};
pub use sweep::{
    constructed_squares, sample_indices, sweep_theorems, BudgetExceeded, Counterexample, InstanceVerdict, SquareCheck,
    SweepCensus, SweepConfig, SweepResult,
};

/// `PSh(C)` is EILC exactly when `C` is a groupoid.
pub fn is_eilc_presheaf(c: &FinCategory) -> bool {
    c.is_groupoid()
}

/// The first object with a non-invertible arrow into it.
fn non_etale_object(c: &FinCategory) -> Option<Obj> {
    c.objects().find(|&x| c.objects().any(|y| c.hom(y, x).iter().any(|&a| !c.is_iso(a))))
}

/// For a non-groupoid `C`, the essential point at an object receiving a
/// non-invertible arrow, with the witness showing it is not locally
/// connected. `None` for groupoids, and also if the point unexpectedly turns
/// out to be locally connected (which the sweep reports as a counterexample).
pub fn counterexample_point(c: &Arc<FinCategory>) -> Option<(GeomMorphism, Witness)> {
    let x = non_etale_object(c)?;
    let point = GeomMorphism::new(FinFunctor::point(c.clone(), x));
    let verdict = is_locally_connected(&point);
    verdict.witness.map(|w| (point, w))
}

/// Why no weakly Jacobson representative exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoRepresentative {
    pub completion_objects: usize,
    pub subcategories_searched: usize,
}

/// A Morita-equivalent site in which every right-invertible arrow is
/// invertible.
#[derive(Debug, Clone, Serialize)]
pub struct Representative {
    pub objects: Vec<String>,
    pub arrows: usize,
    /// Whether it was found inside the Cauchy completion rather than being
    /// the site itself.
    pub from_completion: bool,
    #[serde(skip)]
    pub category: FinCategory,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeaklyJacobson {
    pub status: TriState<NoRepresentative>,
    pub representative: Option<Representative>,
}

impl WeaklyJacobson {
    pub fn holds(&self) -> bool {
        matches!(self.status, TriState::Holds)
    }
}

/// Searches full subcategories of the skeletal Cauchy completion, largest
/// first and lexicographically among equal sizes, for one that generates
/// every object as a retract and in which right-invertible arrows are
/// invertible. Every Morita-equivalent site is equivalent to such a
/// subcategory, so a failed search is definitive.
pub fn is_weakly_jacobson_presheaf(c: &FinCategory) -> WeaklyJacobson {
    if c.right_inv_implies_iso().is_ok() {
        return WeaklyJacobson {
            status: TriState::Holds,
            representative: Some(Representative {
                objects: c.object_names().to_vec(),
                arrows: c.num_arrows(),
                from_completion: false,
                category: c.clone(),
            }),
        };
    }
    let k = cauchy_completion(c).category;
    let n = k.num_objects();
    // retract[e][s]: e is a retract of s
    let retract: Vec<Vec<bool>> = k
        .objects()
        .map(|e| {
            k.objects()
                .map(|s| k.hom(e, s).iter().any(|&a| k.hom(s, e).iter().any(|&b| k.comp(b, a) == k.id(e))))
                .collect()
        })
        .collect();
    let mut searched = 0;
    for size in (1..=n).rev() {
        for subset in itertools::Itertools::combinations(0..n, size) {
            if !(0..n).all(|e| subset.iter().any(|&s| retract[e][s])) {
                continue;
            }
            searched += 1;
            let keep: Vec<Obj> = subset.iter().map(|&s| Obj(s)).collect();
            let (sub, _) = k.full_subcategory(&keep);
            if sub.right_inv_implies_iso().is_ok() {
                return WeaklyJacobson {
                    status: TriState::Holds,
                    representative: Some(Representative {
                        objects: sub.object_names().to_vec(),
                        arrows: sub.num_arrows(),
                        from_completion: true,
                        category: sub,
                    }),
                };
            }
        }
    }
    WeaklyJacobson {
        status: TriState::Fails(NoRepresentative { completion_objects: n, subcategories_searched: searched }),
        representative: None,
    }
}

/// Whether `PSh(C)` is Boolean, decided on sieves: every sieve `S` on every
/// object must satisfy `S ∪ ¬S = everything`, where `¬S` holds the arrows
/// none of whose precomposites lie in `S`.
pub fn is_boolean_presheaf_topos(c: &FinCategory) -> bool {
    c.objects().all(|x| {
        let into: Vec<_> = c.objects().flat_map(|y| c.hom(y, x).iter().copied()).collect();
        let m = into.len();
        let pos = |a| into.iter().position(|&b| b == a).expect("arrow into x");
        (0u64..1 << m).all(|s| {
            let member = |a| s >> pos(a) & 1 == 1;
            let is_sieve = into
                .iter()
                .all(|&f| !member(f) || c.objects().all(|z| c.hom(z, c.dom(f)).iter().all(|&g| member(c.comp(f, g)))));
            if !is_sieve {
                return true;
            }
            into.iter()
                .all(|&f| member(f) || c.objects().all(|z| c.hom(z, c.dom(f)).iter().all(|&g| !member(c.comp(f, g)))))
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalCenter {
    pub is_local: bool,
    pub center_closed: bool,
}

/// `PSh(C)` is local when `C` has a terminal object, and its center is a
/// closed inclusion when that terminal object is strict.
pub fn check_local_center(c: &FinCategory) -> LocalCenter {
    LocalCenter { is_local: c.terminal_object().is_some(), center_closed: c.has_strict_terminal() }
}

/// The other route to a closed center: every arrow `b: 1 → C` admits a right
/// inverse. `None` without a terminal object.
pub fn terminal_arrows_split(c: &FinCategory) -> Option<bool> {
    let t = c.terminal_object()?;
    Some(c.objects().all(|x| c.hom(t, x).iter().all(|&b| c.hom(x, t).iter().any(|&r| c.comp(b, r) == c.id(x)))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CilcStatus {
    ImpliedByEilc,
    ImpliedByWjOverSets,
    Unknown,
}

#[derive(Debug, Clone)]
pub enum Origin {
    Category(FinCategory),
    /// With `t0_quotient` unset a non-T0 space is rejected.
    Space {
        space: FinSpace,
        t0_quotient: bool,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct SiteSummary {
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpaceSummary {
    pub points: Vec<String>,
    pub closed_points: Vec<String>,
    pub locally_closed_points: Vec<String>,
    pub jacobson: bool,
    pub weakly_jacobson: bool,
    pub t0: bool,
    /// Points of the T0 quotient the site was built from, if one was taken.
    pub quotient_points: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ToposReport {
    pub origin: &'static str,
    pub site: SiteSummary,
    pub space: Option<SpaceSummary>,
    pub is_groupoid_site: bool,
    pub eilc: bool,
    pub eilc_witness: Option<Witness>,
    pub weakly_jacobson: WeaklyJacobson,
    pub cilc_status: CilcStatus,
    pub boolean_topos: bool,
    pub local_center: LocalCenter,
}

fn summarize_space(s: &FinSpace, quotient: Option<&FinSpace>) -> SpaceSummary {
    let pc = s.classify_points();
    SpaceSummary {
        points: s.points().to_vec(),
        closed_points: s.subset_names(pc.closed),
        locally_closed_points: s.subset_names(pc.locally_closed),
        jacobson: s.is_jacobson().is_ok(),
        weakly_jacobson: s.is_weakly_jacobson().is_ok(),
        t0: s.is_t0(),
        quotient_points: quotient.map(|q| q.points().to_vec()),
    }
}

pub fn classify_topos(origin: &Origin) -> Result<ToposReport, SpaceError> {
    let (site, space, kind) = match origin {
        Origin::Category(c) => (c.clone(), None, "category"),
        Origin::Space { space, t0_quotient } => {
            if space.is_t0() || !t0_quotient {
                (space.to_presheaf_site()?, Some(summarize_space(space, None)), "space")
            } else {
                let (q, _) = space.t0_quotient();
                (q.to_presheaf_site()?, Some(summarize_space(space, Some(&q))), "space")
            }
        }
    };
    let site = Arc::new(site);
    let eilc = is_eilc_presheaf(&site);
    let eilc_witness = if eilc { None } else { counterexample_point(&site).map(|(_, w)| w) };
    let weakly_jacobson = is_weakly_jacobson_presheaf(&site);
    let cilc_status = if eilc {
        CilcStatus::ImpliedByEilc
    } else if weakly_jacobson.holds() {
        CilcStatus::ImpliedByWjOverSets
    } else {
        CilcStatus::Unknown
    };
    Ok(ToposReport {
        origin: kind,
        site: SiteSummary {
            objects: site.object_names().to_vec(),
            arrows: site.arrows().map(|a| site.arrow_name(a).to_string()).collect(),
        },
        space,
        is_groupoid_site: site.is_groupoid(),
        eilc,
        eilc_witness,
        weakly_jacobson,
        cilc_status,
        boolean_topos: is_boolean_presheaf_topos(&site),
        local_center: check_local_center(&site),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::category::find_isomorphism;

    #[test]
    fn eilc_examples() {
        assert!(is_eilc_presheaf(&catalog::c2()));
        assert!(!is_eilc_presheaf(&catalog::sierpinski()));
        assert!(!is_eilc_presheaf(&catalog::graph()));
    }

    #[test]
    fn counterexample_points() {
        let s = Arc::new(catalog::sierpinski());
        let (p, w) = counterexample_point(&s).unwrap();
        assert_eq!(p.functor().ob(Obj(0)), Obj(1));
        assert!(w.verify());
        assert_eq!(w.input("X").unwrap().label, "1");
        assert_eq!(w.input("A").unwrap().label, "y(A)");
        assert_eq!(w.evaluation_object, "A");
        assert_eq!((w.source_size, w.target_size), (0, 1));

        let g = Arc::new(catalog::graph());
        let (p, w) = counterexample_point(&g).unwrap();
        assert_eq!(g.object_name(p.functor().ob(Obj(0))), "E");
        assert!(w.verify());
        assert_eq!(w.input("A").unwrap().label, "y(V)");

        assert!(counterexample_point(&Arc::new(catalog::c2())).is_none());
    }

    #[test]
    fn weakly_jacobson_examples() {
        let g = is_weakly_jacobson_presheaf(&catalog::graph());
        assert!(g.holds());
        let rep = g.representative.unwrap();
        assert!(!rep.from_completion);
        assert!(find_isomorphism(&rep.category, &catalog::graph()).is_some());

        let r = is_weakly_jacobson_presheaf(&catalog::retract());
        assert!(r.holds());
        let rep = r.representative.unwrap();
        assert_eq!(rep.objects, vec!["X".to_string()]);
        assert!(rep.category.right_inv_implies_iso().is_ok());

        assert!(is_weakly_jacobson_presheaf(&catalog::c2()).holds());
    }

    #[test]
    fn boolean_iff_groupoid_on_catalog() {
        for c in [
            catalog::sierpinski(),
            catalog::graph(),
            catalog::retract(),
            catalog::c2(),
            catalog::idempotent(),
            catalog::non_commutative_monoid(),
            FinCategory::discrete(&["a", "b"]),
        ] {
            assert_eq!(is_boolean_presheaf_topos(&c), c.is_groupoid());
        }
    }

    #[test]
    fn local_center_examples() {
        let s = check_local_center(&catalog::sierpinski());
        assert_eq!(s, LocalCenter { is_local: true, center_closed: true });
        let r = check_local_center(&catalog::retract());
        assert_eq!(r, LocalCenter { is_local: true, center_closed: false });
        assert!(!check_local_center(&catalog::c2()).is_local);
        assert_eq!(terminal_arrows_split(&catalog::sierpinski()), Some(true));
        assert_eq!(terminal_arrows_split(&catalog::retract()), Some(false));
    }

    #[test]
    fn sierpinski_space_report() {
        let r = classify_topos(&Origin::Space { space: catalog::sierpinski_space(), t0_quotient: true }).unwrap();
        assert!(!r.eilc);
        assert!(r.weakly_jacobson.holds());
        assert_eq!(r.cilc_status, CilcStatus::ImpliedByWjOverSets);
        let space = r.space.unwrap();
        assert!(space.weakly_jacobson && !space.jacobson);
        assert!(r.eilc_witness.unwrap().verify());
    }

    #[test]
    fn category_reports() {
        let c2 = classify_topos(&Origin::Category(catalog::c2())).unwrap();
        assert!(c2.eilc && c2.boolean_topos);
        assert_eq!(c2.cilc_status, CilcStatus::ImpliedByEilc);
        let r = classify_topos(&Origin::Category(catalog::retract())).unwrap();
        assert!(!r.eilc && r.weakly_jacobson.holds());
    }

    #[test]
    fn non_t0_space_needs_quotient() {
        let s = FinSpace::indiscrete(2);
        assert!(classify_topos(&Origin::Space { space: s.clone(), t0_quotient: false }).is_err());
        let r = classify_topos(&Origin::Space { space: s, t0_quotient: true }).unwrap();
        assert_eq!(r.site.objects.len(), 1);
        assert!(r.eilc);
        assert!(r.space.unwrap().weakly_jacobson);
    }
}
