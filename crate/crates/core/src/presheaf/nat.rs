//! Exhaustive enumeration of natural transformations.
//!
//! One variable per element `(X, e)` of the source, valued in the target
//! carrier at `X`. Assigning `(Y, e)` forces `(X, P(u)(e)) = Q(u)(value)` for
//! every `u: X → Y`; every naturality square is checked when its `Y` corner is
//! assigned, so propagation alone decides consistency.

use std::ops::ControlFlow;

use super::{Presheaf, PresheafMap};

struct Solver<'a> {
    target: &'a Presheaf,
    var_object: Vec<usize>,
    /// (forced variable, arrow) pairs per variable
    edges: Vec<Vec<(usize, usize)>>,
    value: Vec<Option<usize>>,
    offsets: Vec<usize>,
    trail: Vec<usize>,
}

impl Solver<'_> {
    fn assign(&mut self, var: usize, v: usize) -> bool {
        let mut stack = vec![(var, v)];
        while let Some((var, v)) = stack.pop() {
            match self.value[var] {
                Some(existing) if existing == v => continue,
                Some(_) => return false,
                None => {
                    self.value[var] = Some(v);
                    self.trail.push(var);
                    for &(forced, u) in &self.edges[var] {
                        stack.push((forced, self.target.action[u][v]));
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let var = self.trail.pop().expect("non-empty trail");
            self.value[var] = None;
        }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.offsets.len() - 1;
        (0..n)
            .map(|x| (self.offsets[x]..self.offsets[x + 1]).map(|v| self.value[v].expect("assigned")).collect())
            .collect()
    }

    fn search<F: FnMut(Vec<Vec<usize>>) -> ControlFlow<()>>(&mut self, from: usize, visit: &mut F) -> ControlFlow<()> {
        let Some(var) = (from..self.value.len()).find(|&v| self.value[v].is_none()) else {
            return visit(self.components());
        };
        let x = self.var_object[var];
        for v in 0..self.target.sizes[x] {
            let mark = self.trail.len();
            if self.assign(var, v) {
                self.search(var + 1, visit)?;
            }
            self.undo_to(mark);
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with the components of every natural transformation
/// `p ⇒ q`, in lexicographic order of components (objects in order, elements
/// in order). Stops early if `visit` breaks.
pub fn for_each_nat_transformation<F>(p: &Presheaf, q: &Presheaf, mut visit: F)
where
    F: FnMut(Vec<Vec<usize>>) -> ControlFlow<()>,
{
    assert!(p.is_compatible(q), "presheaves on different sites");
    let c = p.site();
    let mut offsets = vec![0];
    let mut var_object = Vec::new();
    for x in c.objects() {
        for _ in 0..p.size(x) {
            var_object.push(x.0);
        }
        offsets.push(var_object.len());
    }
    let mut edges = vec![Vec::new(); var_object.len()];
    for u in c.arrows().filter(|&u| !c.is_identity(u)) {
        let (x, y) = (c.dom(u), c.cod(u));
        for e in 0..p.size(y) {
            edges[offsets[y.0] + e].push((offsets[x.0] + p.act(u, e), u.0));
        }
    }
    let mut solver = Solver {
        target: q,
        var_object,
        edges,
        value: vec![None; offsets[offsets.len() - 1]],
        offsets,
        trail: Vec::new(),
    };
    let _ = solver.search(0, &mut visit);
}

pub fn nat_transformations(p: &Presheaf, q: &Presheaf) -> Vec<PresheafMap> {
    let mut out = Vec::new();
    for_each_nat_transformation(p, q, |components| {
        out.push(PresheafMap::from_parts_unchecked(p.clone(), q.clone(), components));
        ControlFlow::Continue(())
    });
    out
}

pub fn count_nat_transformations(p: &Presheaf, q: &Presheaf) -> usize {
    let mut n = 0;
    for_each_nat_transformation(p, q, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}
