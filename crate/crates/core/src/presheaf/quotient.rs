//! Congruences on a presheaf and the quotients they define.

use std::collections::HashSet;

use super::{Presheaf, PresheafMap};
use crate::category::Obj;
use crate::uf::UnionFind;

/// An action-compatible equivalence relation on each carrier, stored as
/// dense class labels numbered by least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    labels: Vec<Vec<usize>>,
}

impl Congruence {
    pub fn discrete(p: &Presheaf) -> Self {
        Congruence { labels: p.sizes().iter().map(|&n| (0..n).collect()).collect() }
    }

    /// Builds a congruence from per-object labels (any labelling; it is
    /// renormalised). Returns `None` if the partition is not compatible with
    /// the action.
    pub fn from_labels(p: &Presheaf, labels: Vec<Vec<usize>>) -> Option<Self> {
        let labels: Vec<Vec<usize>> = labels.into_iter().map(normalise).collect();
        let cong = Congruence { labels };
        cong.is_compatible(p).then_some(cong)
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn class_count(&self, x: Obj) -> usize {
        self.labels[x.0].iter().max().map_or(0, |&m| m + 1)
    }

    pub fn related(&self, x: Obj, a: usize, b: usize) -> bool {
        self.labels[x.0][a] == self.labels[x.0][b]
    }

    pub fn is_compatible(&self, p: &Presheaf) -> bool {
        let c = p.site();
        c.arrows().all(|u| {
            let (x, y) = (c.dom(u), c.cod(u));
            let ly = &self.labels[y.0];
            let lx = &self.labels[x.0];
            (0..ly.len()).all(|a| (a + 1..ly.len()).all(|b| ly[a] != ly[b] || lx[p.act(u, a)] == lx[p.act(u, b)]))
        })
    }

    /// Whether every pair related here is related in `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.labels.iter().zip(&other.labels).all(|(mine, theirs)| {
            (0..mine.len()).all(|a| (a + 1..mine.len()).all(|b| mine[a] != mine[b] || theirs[a] == theirs[b]))
        })
    }
}

fn normalise(raw: Vec<usize>) -> Vec<usize> {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    raw.into_iter()
        .map(|l| match seen.iter().find(|&&(r, _)| r == l) {
            Some(&(_, k)) => k,
            None => {
                let k = seen.len();
                seen.push((l, k));
                k
            }
        })
        .collect()
}

/// The least congruence relating each `(X, a, b)` pair.
pub fn congruence_closure(p: &Presheaf, pairs: &[(Obj, usize, usize)]) -> Congruence {
    let c = p.site();
    let mut ufs: Vec<UnionFind> = p.sizes().iter().map(|&n| UnionFind::new(n)).collect();
    let mut work: Vec<(Obj, usize, usize)> = pairs.to_vec();
    // arrows grouped by codomain
    let mut into: Vec<Vec<crate::category::Arr>> = vec![Vec::new(); c.num_objects()];
    for u in c.arrows().filter(|&u| !c.is_identity(u)) {
        into[c.cod(u).0].push(u);
    }
    while let Some((y, a, b)) = work.pop() {
        if ufs[y.0].union(a, b) {
            for &u in &into[y.0] {
                work.push((c.dom(u), p.act(u, a), p.act(u, b)));
            }
        }
    }
    Congruence { labels: ufs.iter_mut().map(|uf| uf.labels().0).collect() }
}

fn join(p: &Presheaf, a: &Congruence, b: &Congruence) -> Congruence {
    let mut pairs = Vec::new();
    for cong in [a, b] {
        for (x, row) in cong.labels.iter().enumerate() {
            let mut first: Vec<usize> = vec![usize::MAX; row.len()];
            for (e, &l) in row.iter().enumerate() {
                if first[l] == usize::MAX {
                    first[l] = e;
                } else {
                    pairs.push((Obj(x), first[l], e));
                }
            }
        }
    }
    congruence_closure(p, &pairs)
}

/// The quotient presheaf and the projection onto it.
pub fn quotient_by(p: &Presheaf, cong: &Congruence) -> (Presheaf, PresheafMap) {
    let c = p.site();
    let sizes: Vec<usize> = c.objects().map(|x| cong.class_count(x)).collect();
    // least member of each class
    let reps: Vec<Vec<usize>> = c
        .objects()
        .map(|x| {
            let mut r = vec![usize::MAX; sizes[x.0]];
            for (e, &l) in cong.labels[x.0].iter().enumerate() {
                if r[l] == usize::MAX {
                    r[l] = e;
                }
            }
            r
        })
        .collect();
    let action = c
        .arrows()
        .map(|u| {
            let (x, y) = (c.dom(u), c.cod(u));
            reps[y.0].iter().map(|&e| cong.labels[x.0][p.act(u, e)]).collect()
        })
        .collect();
    let mut q = Presheaf::from_parts_unchecked(p.site_arc().clone(), sizes, action);
    if let Some(names) = p.names() {
        let qn = c.objects().map(|x| reps[x.0].iter().map(|&e| names[x.0][e].clone()).collect()).collect();
        q = q.with_names(qn);
    }
    let proj = PresheafMap::from_parts_unchecked(p.clone(), q.clone(), cong.labels.clone());
    (q, proj)
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub congruence: Congruence,
    pub quotient: Presheaf,
    pub projection: PresheafMap,
}

/// Every quotient of `p`, one per congruence.
///
/// Congruences are generated as joins of principal congruences, starting
/// from the discrete one. Output order: more classes first, then
/// lexicographic by labels; the discrete quotient is always first.
pub fn enumerate_quotients(p: &Presheaf) -> Vec<Quotient> {
    enumerate_congruences(p)
        .into_iter()
        .map(|congruence| {
            let (quotient, projection) = quotient_by(p, &congruence);
            Quotient { congruence, quotient, projection }
        })
        .collect()
}

pub(crate) fn enumerate_congruences(p: &Presheaf) -> Vec<Congruence> {
    let c = p.site();
    let mut principal: Vec<Congruence> = Vec::new();
    {
        let mut seen = HashSet::new();
        for x in c.objects() {
            for a in 0..p.size(x) {
                for b in a + 1..p.size(x) {
                    let cong = congruence_closure(p, &[(x, a, b)]);
                    if seen.insert(cong.clone()) {
                        principal.push(cong);
                    }
                }
            }
        }
    }
    let start = Congruence::discrete(p);
    let mut seen: HashSet<Congruence> = HashSet::new();
    seen.insert(start.clone());
    let mut all = vec![start];
    let mut i = 0;
    while i < all.len() {
        let current = all[i].clone();
        for pc in &principal {
            if pc.refines(&current) {
                continue;
            }
            let j = join(p, &current, pc);
            if seen.insert(j.clone()) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| {
        let ka: usize = a.labels.iter().map(|r| r.iter().max().map_or(0, |m| m + 1)).sum();
        let kb: usize = b.labels.iter().map(|r| r.iter().max().map_or(0, |m| m + 1)).sum();
        kb.cmp(&ka).then_with(|| b.labels.cmp(&a.labels))
    });
    all
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::presheaf::{coproduct, enumerate_presheaves, find_presheaf_iso};

    /// All set partitions of `0..n` as label vectors (restricted growth strings).
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            for l in 0..=max {
                cur.push(l);
                go(i + 1, n, cur, if l == max { max + 1 } else { max }, out);
                cur.pop();
            }
        }
        go(0, n, &mut Vec::new(), 0, &mut out);
        out
    }

    /// Every per-object partition, filtered for compatibility.
    fn naive_count(p: &Presheaf) -> usize {
        let per_object: Vec<Vec<Vec<usize>>> = p.sizes().iter().map(|&n| partitions(n)).collect();
        let mut count = 0;
        let mut idx = vec![0; per_object.len()];
        loop {
            let labels: Vec<Vec<usize>> = idx.iter().enumerate().map(|(x, &i)| per_object[x][i].clone()).collect();
            if Congruence::from_labels(p, labels).is_some() {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return count;
                }
                idx[k] += 1;
                if idx[k] < per_object[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn count_matches_naive_filter() {
        for c in [catalog::sierpinski(), catalog::graph(), catalog::c2(), catalog::retract()] {
            let c = Arc::new(c);
            for p in enumerate_presheaves(&c, 2) {
                let qs = enumerate_quotients(&p);
                assert_eq!(qs.len(), naive_count(&p), "{p}");
                for q in &qs {
                    assert!(q.quotient.validate().is_empty());
                    assert!(q.projection.validate().is_empty());
                    assert!(q.projection.is_epi());
                }
            }
            for x in c.objects() {
                for y in c.objects() {
                    let s = coproduct(&Presheaf::yoneda(c.clone(), x), &Presheaf::yoneda(c.clone(), y)).apex;
                    assert_eq!(enumerate_quotients(&s).len(), naive_count(&s));
                }
            }
        }
    }

    #[test]
    fn discrete_first_and_total_last() {
        let c = Arc::new(catalog::graph());
        let p = coproduct(&Presheaf::yoneda(c.clone(), Obj(1)), &Presheaf::yoneda(c.clone(), Obj(0))).apex;
        let qs = enumerate_quotients(&p);
        assert!(find_presheaf_iso(&qs[0].quotient, &p).is_some());
        let last = &qs[qs.len() - 1].quotient;
        assert!(c.objects().all(|x| last.size(x) == usize::from(p.size(x) > 0)));
    }

    #[test]
    fn fold_quotient_of_two_copies() {
        let s = Arc::new(catalog::sierpinski());
        let yb = Presheaf::yoneda(s.clone(), Obj(1));
        let two = coproduct(&yb, &yb).apex;
        let qs = enumerate_quotients(&two);
        assert!(qs.iter().any(|q| find_presheaf_iso(&q.quotient, &yb).is_some()));
    }

    #[test]
    fn closure_propagates_downward() {
        let s = Arc::new(catalog::sierpinski());
        let two = Presheaf::constant(s, 2);
        let cong = congruence_closure(&two, &[(Obj(1), 0, 1)]);
        assert!(cong.related(Obj(0), 0, 1));
        let cong = congruence_closure(&two, &[(Obj(0), 0, 1)]);
        assert!(!cong.related(Obj(1), 0, 1));
    }
}
