//! All finite categories within object and arrow bounds, up to isomorphism.
//!
//! For each object count the non-identity arrows are distributed over the
//! hom-sets (one distribution per orbit under object permutation), then the
//! composition table is filled entry by entry with associativity checked on
//! every triple whose composites are already known. Survivors are bucketed by
//! [`category_invariant`] and deduplicated with [`find_isomorphism`].

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::Serialize;

use crate::category::{category_invariant, find_isomorphism, Arr, ArrowData, FinCategory, Obj};

/// How many categories of each shape were found, and how much of the search
/// space was walked to find them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CategoryCensus {
    /// `(objects, arrows) → count`, up to isomorphism.
    pub by_shape: BTreeMap<String, usize>,
    /// Valid tables before deduplication.
    pub labelled_tables: usize,
    pub total: usize,
}

const OBJECT_NAMES: &[&str] = &["A", "B", "C", "D", "E", "F"];

fn arrow_name(i: usize) -> String {
    let letters = "abcdefghijklmnopqrstuvwxyz".as_bytes();
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("a{i}")
    }
}

pub fn enumerate_categories(max_objects: usize, max_arrows: usize) -> Vec<FinCategory> {
    enumerate_categories_with_census(max_objects, max_arrows).0
}

/// Categories with `1..=max_objects` objects and at most `max_arrows` arrows
/// (identities included), ordered by object count, then arrow count, then
/// discovery order.
pub fn enumerate_categories_with_census(max_objects: usize, max_arrows: usize) -> (Vec<FinCategory>, CategoryCensus) {
    assert!(max_objects <= OBJECT_NAMES.len(), "at most {} objects", OBJECT_NAMES.len());
    let mut census = CategoryCensus::default();
    let mut out = Vec::new();
    for n in 1..=max_objects {
        for m in n..=max_arrows {
            let mut found: Vec<FinCategory> = Vec::new();
            let mut buckets: HashMap<_, Vec<usize>> = HashMap::new();
            for counts in hom_distributions(n, m - n) {
                let mut tables = Vec::new();
                fill_tables(n, &counts, &mut tables);
                census.labelled_tables += tables.len();
                for c in tables {
                    let bucket = buckets.entry(category_invariant(&c)).or_default();
                    if bucket.iter().any(|&i| find_isomorphism(&found[i], &c).is_some()) {
                        continue;
                    }
                    bucket.push(found.len());
                    found.push(c);
                }
            }
            if !found.is_empty() {
                census.by_shape.insert(format!("{n} objects, {m} arrows"), found.len());
            }
            out.extend(found);
        }
    }
    census.total = out.len();
    (out, census)
}

/// Matrices `counts[x * n + y]` summing to `k`, one per orbit under
/// simultaneous permutation of rows and columns (the lexicographically least
/// member).
fn hom_distributions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut out = Vec::new();
    let mut cur = vec![0; n * n];
    distribute(&mut cur, 0, k, &mut |counts| {
        let minimal = perms.iter().all(|p| {
            let permuted: Vec<usize> = (0..n * n).map(|i| counts[p[i / n] * n + p[i % n]]).collect();
            permuted.as_slice() >= counts
        });
        if minimal {
            out.push(counts.to_vec());
        }
    });
    out
}

fn distribute(cur: &mut Vec<usize>, i: usize, left: usize, emit: &mut dyn FnMut(&[usize])) {
    if i == cur.len() - 1 {
        cur[i] = left;
        emit(cur);
        return;
    }
    for v in 0..=left {
        cur[i] = v;
        distribute(cur, i + 1, left - v, emit);
    }
    cur[i] = 0;
}

struct Filler {
    m: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    /// arrows per (dom, cod), identities first
    homs: Vec<Vec<usize>>,
    n: usize,
    comp: Vec<Option<usize>>,
    /// the non-identity composable pairs still to be filled
    open: Vec<(usize, usize)>,
}

impl Filler {
    fn get(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.m + f]
    }

    /// Checks `(h∘g)∘f = h∘(g∘f)` on every triple where all four composites
    /// are known and one of them involves the entry `(g0, f0)`.
    fn associative_near(&self, g0: usize, f0: usize) -> bool {
        let m = self.m;
        let ok = |h: usize, g: usize, f: usize| -> bool {
            if self.dom[h] != self.cod[g] || self.dom[g] != self.cod[f] {
                return true;
            }
            match (self.get(h, g), self.get(g, f)) {
                (Some(hg), Some(gf)) => match (self.get(hg, f), self.get(h, gf)) {
                    (Some(a), Some(b)) => a == b,
                    _ => true,
                },
                _ => true,
            }
        };
        (0..m).all(|x| {
            ok(x, g0, f0)
                && ok(g0, f0, x)
                && (0..m).all(|y| {
                    // the entry can also appear as an outer composite
                    (self.get(x, y) != Some(g0) || ok(x, y, f0)) && (self.get(x, y) != Some(f0) || ok(g0, x, y))
                })
        })
    }

    fn fill(&mut self, i: usize, out: &mut Vec<FinCategory>) {
        if i == self.open.len() {
            if let Some(c) = self.build() {
                out.push(c);
            }
            return;
        }
        let (g, f) = self.open[i];
        let candidates = self.homs[self.dom[f] * self.n + self.cod[g]].clone();
        for h in candidates {
            self.comp[g * self.m + f] = Some(h);
            if self.associative_near(g, f) {
                self.fill(i + 1, out);
            }
        }
        self.comp[g * self.m + f] = None;
    }

    fn build(&self) -> Option<FinCategory> {
        let objects: Vec<String> = OBJECT_NAMES[..self.n].iter().map(|s| s.to_string()).collect();
        let arrows = (0..self.m)
            .map(|a| ArrowData {
                name: if a < self.n { format!("id_{}", objects[a]) } else { arrow_name(a - self.n) },
                dom: Obj(self.dom[a]),
                cod: Obj(self.cod[a]),
            })
            .collect();
        let identity = (0..self.n).map(Arr).collect();
        let comp = self.comp.iter().map(|e| e.map(Arr)).collect();
        // associativity was only checked incrementally; validate settles it
        FinCategory::new(objects, arrows, identity, comp).ok()
    }
}

fn fill_tables(n: usize, counts: &[usize], out: &mut Vec<FinCategory>) {
    let mut dom: Vec<usize> = (0..n).collect();
    let mut cod: Vec<usize> = (0..n).collect();
    for x in 0..n {
        for y in 0..n {
            for _ in 0..counts[x * n + y] {
                dom.push(x);
                cod.push(y);
            }
        }
    }
    let m = dom.len();
    let mut homs = vec![Vec::new(); n * n];
    for a in 0..m {
        homs[dom[a] * n + cod[a]].push(a);
    }
    let mut comp = vec![None; m * m];
    let mut open = Vec::new();
    for g in 0..m {
        for f in 0..m {
            if dom[g] != cod[f] {
                continue;
            }
            if g < n {
                comp[g * m + f] = Some(f);
            } else if f < n {
                comp[g * m + f] = Some(g);
            } else {
                open.push((g, f));
            }
        }
    }
    let mut filler = Filler { m, dom, cod, homs, n, comp, open };
    filler.fill(0, out);
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::catalog;

    /// Monoids of order `k` up to isomorphism: multiplication tables on
    /// `0..k` with `0` as unit, filled cell by cell and pruned on any fully
    /// known non-associative triple, canonicalised by the least relabelling
    /// under permutations fixing `0`.
    fn monoid_oracle(k: usize) -> usize {
        fn assoc(t: &[Option<usize>], k: usize) -> bool {
            (0..k).all(|a| {
                (0..k).all(|b| {
                    (0..k).all(|c| {
                        let left = t[a * k + b].and_then(|ab| t[ab * k + c]);
                        let right = t[b * k + c].and_then(|bc| t[a * k + bc]);
                        left.is_none() || right.is_none() || left == right
                    })
                })
            })
        }
        fn rec(i: usize, k: usize, t: &mut Vec<Option<usize>>, perms: &[Vec<usize>], seen: &mut HashSet<Vec<usize>>) {
            if i == k * k {
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut inv = vec![0; k];
                        for (x, &px) in p.iter().enumerate() {
                            inv[px] = x;
                        }
                        (0..k * k).map(|j| p[t[inv[j / k] * k + inv[j % k]].unwrap()]).collect::<Vec<_>>()
                    })
                    .min()
                    .unwrap();
                seen.insert(canon);
                return;
            }
            if t[i].is_some() {
                return rec(i + 1, k, t, perms, seen);
            }
            for v in 0..k {
                t[i] = Some(v);
                if assoc(t, k) {
                    rec(i + 1, k, t, perms, seen);
                }
            }
            t[i] = None;
        }
        let perms: Vec<Vec<usize>> =
            (1..k).permutations(k - 1).map(|p| std::iter::once(0).chain(p).collect()).collect();
        let mut t = vec![None; k * k];
        for a in 0..k {
            t[a] = Some(a);
            t[a * k] = Some(a);
        }
        let mut seen = HashSet::new();
        rec(0, k, &mut t, &perms, &mut seen);
        seen.len()
    }

    #[test]
    fn monoid_counts_match_brute_force() {
        let (cats, _) = enumerate_categories_with_census(1, 5);
        for k in 1..=5 {
            let ours = cats.iter().filter(|c| c.num_arrows() == k).count();
            assert_eq!(ours, monoid_oracle(k), "order {k}");
        }
    }

    #[test]
    fn single_arrow_and_two_arrow_monoids() {
        let one = enumerate_categories(1, 1);
        assert_eq!(one.len(), 1);
        assert!(find_isomorphism(&one[0], &FinCategory::terminal()).is_some());
        let two: Vec<_> = enumerate_categories(1, 2).into_iter().filter(|c| c.num_arrows() == 2).collect();
        assert_eq!(two.len(), 2);
        assert!(two.iter().any(|c| find_isomorphism(c, &catalog::c2()).is_some()));
        assert!(two.iter().any(|c| find_isomorphism(c, &catalog::idempotent()).is_some()));
    }

    #[test]
    fn small_two_object_categories() {
        let cats = enumerate_categories(2, 3);
        assert!(cats.iter().any(|c| find_isomorphism(c, &catalog::sierpinski()).is_some()));
        assert!(cats.iter().any(|c| find_isomorphism(c, &FinCategory::discrete(&["a", "b"])).is_some()));
        for (i, a) in cats.iter().enumerate() {
            assert!(a.validate().is_empty());
            for b in &cats[..i] {
                assert!(find_isomorphism(a, b).is_none());
            }
        }
    }

    #[test]
    fn census_totals() {
        let (cats, census) = enumerate_categories_with_census(2, 4);
        assert_eq!(census.total, cats.len());
        assert_eq!(census.by_shape.values().sum::<usize>(), cats.len());
        assert!(census.labelled_tables >= cats.len());
        assert!(cats.iter().any(|c| find_isomorphism(c, &catalog::graph()).is_some()));
    }

    #[test]
    fn retract_has_five_arrows() {
        let cats = enumerate_categories(2, 5);
        assert!(cats.iter().any(|c| find_isomorphism(c, &catalog::retract()).is_some()));
    }
}
