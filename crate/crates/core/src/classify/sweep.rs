//! Instance sweeps of the classification theorems over enumerated sites.
//!
//! Every enumerated category serves both as a codomain `D` and as a source
//! `C`; the instances are all functors `C → D`. When there are more than
//! `budget` of them, [`sample_indices`] picks an evenly strided subset whose
//! offset is the seed, so a sweep is reproducible from its configuration.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use super::{counterexample_point, enumerate_categories_with_census, is_weakly_jacobson_presheaf, CategoryCensus};
use crate::category::{FinCategory, Obj};
use crate::exec::map_ordered;
use crate::functor::{enumerate_functors, FinFunctor};
use crate::geom::{
    bc_holds, check_pasting, check_stability, etale_square, is_cc_inverse_image, is_locally_connected_with,
    restriction_square, BCSquare, GeomMorphism, PastingFailure, QuotientTable,
};
use crate::presheaf::Presheaf;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub max_objects: usize,
    pub max_arrows: usize,
    /// Maximum number of functor instances to decide.
    pub budget: usize,
    pub seed: u64,
    /// Carrier bound for Beck–Chevalley checks.
    pub bc_bound: usize,
    /// How many functors contribute constructed squares.
    pub bc_functors: usize,
    #[serde(skip)]
    pub time_limit: Option<Duration>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_objects: 2,
            max_arrows: 4,
            budget: 500,
            seed: 0,
            bc_bound: 1,
            bc_functors: 8,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepCensus {
    pub categories: CategoryCensus,
    pub groupoids: usize,
    pub weakly_jacobson: usize,
    /// Sites for which the Morita search found no representative; the
    /// question whether this can happen for finite categories is open.
    pub weakly_jacobson_unresolved: usize,
    pub functors_total: usize,
    pub functors_checked: usize,
    pub sampled: bool,
    pub cc_inverse_image: usize,
    pub locally_connected: usize,
    pub squares_checked: usize,
    pub pasting_premises: usize,
    pub stability_pairs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceVerdict {
    pub codomain: usize,
    pub source: usize,
    pub functor: String,
    pub cc_inverse_image: bool,
    pub locally_connected: bool,
    /// Wall-clock time; left out of serialized reports so they stay
    /// byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub rule: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub census: SweepCensus,
    pub verdicts: Vec<InstanceVerdict>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Error)]
#[error("sweep exceeded its time limit of {limit:?} after {} of {} functors", partial.functors_checked, partial.functors_total)]
pub struct BudgetExceeded {
    pub limit: Duration,
    pub partial: SweepCensus,
}

/// `budget` indices out of `0..total`, strictly increasing: all of them when
/// they fit, otherwise `(seed + ⌊j·total/budget⌋) mod total` for
/// `j < budget`, sorted.
pub fn sample_indices(total: usize, budget: usize, seed: u64) -> Vec<usize> {
    if total <= budget {
        return (0..total).collect();
    }
    let shift = (seed % total as u64) as usize;
    let mut picked: Vec<usize> = (0..budget).map(|j| (shift + j * total / budget) % total).collect();
    picked.sort_unstable();
    picked
}

/// Squares built from one functor for the pasting and stability checks.
#[derive(Debug, Clone)]
pub enum SquareCheck {
    /// `left.f` is `right.g`.
    Pasting { right: BCSquare, left: BCSquare },
    /// `P` and `Q` are full inclusions.
    Stability(BCSquare),
}

/// For `F: C → D`: a restriction square per object of `D`, and an étale
/// square along the last representable with a restriction square pasted to
/// its left.
pub fn constructed_squares(f: &FinFunctor) -> Vec<SquareCheck> {
    let d = f.target_arc();
    let mut out: Vec<SquareCheck> = d.objects().map(|x| SquareCheck::Stability(restriction_square(f, &[x]))).collect();
    if let Some(last) = d.objects().last() {
        let right = etale_square(&GeomMorphism::new(f.clone()), &Presheaf::yoneda(d.clone(), last));
        if right.g.target().num_objects() > 0 {
            let left = restriction_square(&right.g, &[Obj(0)]);
            out.push(SquareCheck::Pasting { right, left });
        }
    }
    out
}

struct SquareStats {
    premises: usize,
    pairs: usize,
}

fn run_square_check(check: &SquareCheck, bound: usize) -> Result<SquareStats, Counterexample> {
    match check {
        SquareCheck::Stability(sq) => {
            if bc_holds(sq, bound).fails() {
                return Ok(SquareStats { premises: 0, pairs: 0 });
            }
            match check_stability(sq, bound) {
                Ok(pairs) => Ok(SquareStats { premises: 0, pairs }),
                Err((_, _, l, r)) => Err(Counterexample {
                    rule: "stability".into(),
                    detail: format!("{}: |Nat(LX, Y)| = {l} but |Nat(X, g^*Y)| = {r}", sq.describe()),
                }),
            }
        }
        SquareCheck::Pasting { right, left } => match check_pasting(right, left, bound) {
            Ok(premises) => Ok(SquareStats { premises, pairs: 0 }),
            Err(PastingFailure::Shape(e)) => Err(Counterexample { rule: "pasting".into(), detail: e.to_string() }),
            Err(PastingFailure::Pasted(w)) => Err(Counterexample {
                rule: "pasting".into(),
                detail: format!("{} at {}", w.morphism, w.evaluation_object),
            }),
        },
    }
}

struct CodomainInfo {
    groupoid: bool,
    weakly_jacobson: Option<bool>,
    table: QuotientTable,
    counterexample: Option<Counterexample>,
}

fn study_codomain(i: usize, d: &Arc<FinCategory>) -> CodomainInfo {
    let groupoid = d.is_groupoid();
    let wj = is_weakly_jacobson_presheaf(d);
    let weakly_jacobson = match wj.status {
        crate::geom::TriState::Fails(_) => None,
        _ => Some(true),
    };
    let counterexample = match (groupoid, counterexample_point(d)) {
        (true, None) => None,
        (true, Some(_)) => Some("a groupoid produced a non-locally-connected point"),
        (false, None) => Some("no counterexample point for a non-groupoid"),
        (false, Some((_, w))) => (!w.verify()).then_some("counterexample witness does not verify"),
    }
    .map(|msg| Counterexample { rule: "groupoid".into(), detail: format!("site #{i}: {msg}") });
    CodomainInfo { groupoid, weakly_jacobson, table: QuotientTable::new(d), counterexample }
}

pub fn sweep_theorems(config: &SweepConfig) -> Result<SweepResult, BudgetExceeded> {
    let start = Instant::now();
    let (cats, categories) = enumerate_categories_with_census(config.max_objects, config.max_arrows);
    let cats: Vec<Arc<FinCategory>> = cats.into_iter().map(Arc::new).collect();
    let indexed: Vec<(usize, &Arc<FinCategory>)> = cats.iter().enumerate().collect();
    let infos = map_ordered(&indexed, |&(i, d)| study_codomain(i, d));

    let mut census = SweepCensus { categories, ..SweepCensus::default() };
    census.groupoids = infos.iter().filter(|i| i.groupoid).count();
    census.weakly_jacobson = infos.iter().filter(|i| i.weakly_jacobson.is_some()).count();
    census.weakly_jacobson_unresolved = infos.len() - census.weakly_jacobson;
    let mut counterexamples: Vec<Counterexample> = infos.iter().filter_map(|i| i.counterexample.clone()).collect();

    let mut instances: Vec<(usize, usize, FinFunctor)> = Vec::new();
    for (di, d) in cats.iter().enumerate() {
        for (ci, c) in cats.iter().enumerate() {
            instances.extend(enumerate_functors(c, d).into_iter().map(|f| (di, ci, f)));
        }
    }
    census.functors_total = instances.len();
    let picked = sample_indices(instances.len(), config.budget, config.seed);
    census.sampled = picked.len() < instances.len();
    let selected: Vec<&(usize, usize, FinFunctor)> = picked.iter().map(|&i| &instances[i]).collect();

    let deadline = config.time_limit.map(|t| start + t);
    let expired = AtomicBool::new(false);
    let verdicts = map_ordered(&selected, |&&(di, ci, ref f)| {
        if deadline.is_some_and(|d| Instant::now() > d) {
            expired.store(true, Ordering::Relaxed);
            return None;
        }
        let t = Instant::now();
        let g = GeomMorphism::new(f.clone());
        let cc = is_cc_inverse_image(&g).holds;
        let lc = is_locally_connected_with(&g, &infos[di].table).holds;
        Some(InstanceVerdict {
            codomain: di,
            source: ci,
            functor: f.describe(),
            cc_inverse_image: cc,
            locally_connected: lc,
            elapsed: t.elapsed(),
        })
    });
    let verdicts: Vec<InstanceVerdict> = verdicts.into_iter().flatten().collect();
    census.functors_checked = verdicts.len();
    census.cc_inverse_image = verdicts.iter().filter(|v| v.cc_inverse_image).count();
    census.locally_connected = verdicts.iter().filter(|v| v.locally_connected).count();
    if let (true, Some(limit)) = (expired.load(Ordering::Relaxed), config.time_limit) {
        return Err(BudgetExceeded { limit, partial: census });
    }

    for v in &verdicts {
        let info = &infos[v.codomain];
        let mut fail = |rule: &str| {
            counterexamples.push(Counterexample {
                rule: rule.into(),
                detail: format!("site #{} -> site #{}: {}", v.source, v.codomain, v.functor),
            })
        };
        if info.groupoid && !v.locally_connected {
            fail("eilc");
        }
        if info.weakly_jacobson.is_some() && v.cc_inverse_image && !v.locally_connected {
            fail("cilc");
        }
        if v.locally_connected && !v.cc_inverse_image {
            fail("locally connected without cc inverse image");
        }
    }

    let square_sources = sample_indices(selected.len(), config.bc_functors, config.seed);
    let checks: Vec<SquareCheck> = square_sources.iter().flat_map(|&i| constructed_squares(&selected[i].2)).collect();
    census.squares_checked = checks.len();
    for outcome in map_ordered(&checks, |c| run_square_check(c, config.bc_bound)) {
        match outcome {
            Ok(stats) => {
                census.pasting_premises += stats.premises;
                census.stability_pairs += stats.pairs;
            }
            Err(c) => counterexamples.push(c),
        }
    }

    Ok(SweepResult { config: config.clone(), census, verdicts, counterexamples, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_strided_and_distinct() {
        assert_eq!(sample_indices(5, 10, 3), vec![0, 1, 2, 3, 4]);
        let s = sample_indices(100, 10, 7);
        assert_eq!(s.len(), 10);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.contains(&7) && s.contains(&17));
        assert_eq!(sample_indices(100, 10, 7), s);
    }

    #[test]
    fn small_sweep_is_clean_and_reproducible() {
        let config = SweepConfig { max_objects: 2, max_arrows: 3, budget: 200, ..SweepConfig::default() };
        let a = sweep_theorems(&config).unwrap();
        assert!(a.counterexamples.is_empty(), "{:?}", a.counterexamples);
        assert!(a.census.functors_checked > 0);
        assert!(a.census.squares_checked > 0);
        let b = sweep_theorems(&config).unwrap();
        assert_eq!(a.census, b.census);
        let names = |r: &SweepResult| r.verdicts.iter().map(|v| v.functor.clone()).collect::<Vec<_>>();
        assert_eq!(names(&a), names(&b));
    }

    #[test]
    fn zero_time_limit_reports_partial_census() {
        let config = SweepConfig { time_limit: Some(Duration::ZERO), ..SweepConfig::default() };
        let err = sweep_theorems(&config).unwrap_err();
        assert!(err.partial.functors_total > 0);
        assert!(err.partial.functors_checked < err.partial.functors_total);
    }
}
