//! Exhaustive enumeration of small presheaves up to isomorphism.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::nat::for_each_nat_transformation;
use super::{Presheaf, PresheafMap};
use crate::category::FinCategory;

/// Every presheaf whose carriers all have at most `bound` elements, one per
/// isomorphism class.
///
/// Carrier size vectors are visited in lexicographic order; within a size
/// vector, action tables are visited in lexicographic order of the
/// non-identity arrows' functions, and the first member of each class is
/// kept.
pub fn enumerate_presheaves(site: &Arc<FinCategory>, bound: usize) -> Vec<Presheaf> {
    let c = &**site;
    let n = c.num_objects();
    let mut out = Vec::new();
    let mut sizes = vec![0; n];
    loop {
        let mut kept: HashMap<Vec<(usize, usize)>, Vec<Presheaf>> = HashMap::new();
        for_each_action(site, &sizes, &mut |p| {
            let key = invariant(&p);
            let bucket = kept.entry(key).or_default();
            if !bucket.iter().any(|q| find_presheaf_iso(q, &p).is_some()) {
                bucket.push(p.clone());
                out.push(p);
            }
        });
        // next size vector, last object varying fastest
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if sizes[k] < bound {
                sizes[k] += 1;
                for s in &mut sizes[k + 1..] {
                    *s = 0;
                }
                break;
            }
        }
    }
}

fn invariant(p: &Presheaf) -> Vec<(usize, usize)> {
    let c = p.site();
    c.arrows()
        .map(|u| {
            let row = p.action(u);
            let mut seen = vec![false; p.size(c.dom(u))];
            for &v in row {
                seen[v] = true;
            }
            let image = seen.iter().filter(|&&s| s).count();
            let fixed = if c.dom(u) == c.cod(u) { row.iter().enumerate().filter(|&(i, &v)| i == v).count() } else { 0 };
            (image, fixed)
        })
        .collect()
}

/// Calls `visit` with every functorial action on the given carriers.
fn for_each_action(site: &Arc<FinCategory>, sizes: &[usize], visit: &mut dyn FnMut(Presheaf)) {
    let c = &**site;
    let m = c.num_arrows();
    let mut action: Vec<Option<Vec<usize>>> = vec![None; m];
    for x in c.objects() {
        action[c.id(x).0] = Some((0..sizes[x.0]).collect());
    }
    let free: Vec<usize> = c.arrows().filter(|&u| !c.is_identity(u)).map(|u| u.0).collect();
    fn consistent(c: &FinCategory, action: &[Option<Vec<usize>>], k: usize) -> bool {
        let u = crate::category::Arr(k);
        // every composable pair that involves u as g, f, or composite
        for g in c.arrows() {
            for f in c.arrows() {
                let Some(h) = c.compose(g, f) else { continue };
                if g != u && f != u && h != u {
                    continue;
                }
                let (Some(ag), Some(af), Some(ah)) = (&action[g.0], &action[f.0], &action[h.0]) else { continue };
                if ah.iter().enumerate().any(|(z, &v)| af[ag[z]] != v) {
                    return false;
                }
            }
        }
        true
    }
    fn go(
        site: &Arc<FinCategory>,
        sizes: &[usize],
        free: &[usize],
        i: usize,
        action: &mut Vec<Option<Vec<usize>>>,
        visit: &mut dyn FnMut(Presheaf),
    ) {
        let c = &**site;
        if i == free.len() {
            let table = action.iter().map(|a| a.clone().expect("assigned")).collect();
            visit(Presheaf::from_parts_unchecked(site.clone(), sizes.to_vec(), table));
            return;
        }
        let u = crate::category::Arr(free[i]);
        let (dom_size, cod_size) = (sizes[c.dom(u).0], sizes[c.cod(u).0]);
        if cod_size > 0 && dom_size == 0 {
            return;
        }
        let mut row = vec![0; cod_size];
        loop {
            action[u.0] = Some(row.clone());
            if consistent(c, action, u.0) {
                go(site, sizes, free, i + 1, action, visit);
            }
            // next function, last entry fastest
            let mut k = cod_size;
            loop {
                if k == 0 {
                    action[u.0] = None;
                    return;
                }
                k -= 1;
                if row[k] + 1 < dom_size {
                    row[k] += 1;
                    for r in &mut row[k + 1..] {
                        *r = 0;
                    }
                    break;
                }
            }
        }
    }
    go(site, sizes, &free, 0, &mut action, visit);
}

/// An isomorphism `p → q`, if one exists.
pub fn find_presheaf_iso(p: &Presheaf, q: &Presheaf) -> Option<PresheafMap> {
    if !p.is_compatible(q) || p.sizes() != q.sizes() {
        return None;
    }
    let mut found = None;
    for_each_nat_transformation(p, q, |components| {
        let bijective = components.iter().zip(q.sizes()).all(|(row, &n)| {
            let mut seen = vec![false; n];
            row.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        });
        if bijective {
            found = Some(components);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found.map(|components| PresheafMap::from_parts_unchecked(p.clone(), q.clone(), components))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::category::Obj;

    #[test]
    fn point_site_counts() {
        let one = Arc::new(FinCategory::terminal());
        assert_eq!(enumerate_presheaves(&one, 0).len(), 1);
        let ps = enumerate_presheaves(&one, 1);
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].sizes(), &[0]);
        assert_eq!(ps[1].sizes(), &[1]);
    }

    #[test]
    fn bound_zero_is_initial_only() {
        let c = Arc::new(catalog::graph());
        let ps = enumerate_presheaves(&c, 0);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].total_size(), 0);
    }

    /// Presheaves on the arrow category with carriers of size at most one:
    /// `P(B) = 1` forces `P(A)` nonempty, leaving (0,0), (1,0), (1,1).
    #[test]
    fn sierpinski_bound_one() {
        let s = Arc::new(catalog::sierpinski());
        let ps = enumerate_presheaves(&s, 1);
        let sizes: Vec<&[usize]> = ps.iter().map(|p| p.sizes()).collect();
        assert_eq!(sizes, vec![&[0, 0][..], &[1, 0], &[1, 1]]);
    }

    /// Independent count of presheaves on the arrow category up to
    /// isomorphism: a function `P(B) → P(A)` between sets of sizes `b`, `a`
    /// up to relabelling both sides is a partition of `b` into at most `a`
    /// nonempty fibres (the rest of `P(A)` unhit).
    #[test]
    fn sierpinski_bound_two_matches_fibre_count() {
        fn partitions_into_at_most(n: usize, parts: usize) -> usize {
            fn go(n: usize, parts: usize, max: usize) -> usize {
                if n == 0 {
                    return 1;
                }
                if parts == 0 {
                    return 0;
                }
                (1..=max.min(n)).map(|k| go(n - k, parts - 1, k)).sum()
            }
            go(n, parts, n)
        }
        let mut expected = 0;
        for a in 0..=2 {
            for b in 0..=2 {
                expected += partitions_into_at_most(b, a);
            }
        }
        let s = Arc::new(catalog::sierpinski());
        assert_eq!(enumerate_presheaves(&s, 2).len(), expected);
    }

    #[test]
    fn enumerated_presheaves_are_valid_and_pairwise_distinct() {
        for c in [catalog::graph(), catalog::c2(), catalog::retract()] {
            let c = Arc::new(c);
            let ps = enumerate_presheaves(&c, 2);
            for (i, p) in ps.iter().enumerate() {
                assert!(p.validate().is_empty());
                for q in &ps[..i] {
                    assert!(find_presheaf_iso(p, q).is_none());
                }
            }
        }
    }

    /// Presheaves on C2 are sets with an involution; with at most two
    /// elements: 0; 1; 2 fixed; 2 swapped.
    #[test]
    fn involutions_up_to_iso() {
        let c = Arc::new(catalog::c2());
        assert_eq!(enumerate_presheaves(&c, 2).len(), 4);
    }

    #[test]
    fn iso_detects_relabelled_representable() {
        let c = Arc::new(catalog::graph());
        let ye = Presheaf::yoneda(c.clone(), Obj(1));
        // swap the two elements at V
        let swap: Vec<Vec<usize>> = c
            .arrows()
            .map(|u| {
                ye.action(u).iter().map(|&v| if c.dom(u) == Obj(0) && !c.is_identity(u) { 1 - v } else { v }).collect()
            })
            .collect();
        let q = Presheaf::new(c.clone(), ye.sizes().to_vec(), swap).unwrap();
        let iso = find_presheaf_iso(&ye, &q).unwrap();
        assert!(iso.is_iso() && iso.validate().is_empty());
    }
}
