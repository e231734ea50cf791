//! Categories presented by generators and relations.
//!
//! Closure enumerates arrows breadth-first from each identity, post-composing
//! by generators, and merges classes with a union-find whenever a relation
//! forces two traces to coincide. There is no rewriting-system completion;
//! an explicit arrow bound stops the search on presentations of infinite
//! categories.

use std::collections::HashMap;

use super::{Arr, ArrowData, CategoryError, FinCategory, Obj};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// `lhs = rhs`, each side a composable word in written order: `["g", "f"]`
/// is `g.f`, i.e. `g` after `f`. `id_X` may appear as a token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CatPresentation {
    pub objects: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

struct Resolved {
    src: Obj,
    /// generator indices in application order
    lhs: Vec<usize>,
    rhs: Vec<usize>,
}

/// Resolves a written word to (src, dst, generators in application order).
fn resolve_word(
    word: &[String],
    objects: &HashMap<&str, Obj>,
    gens: &HashMap<&str, usize>,
    gen_ends: &[(Obj, Obj)],
) -> Result<(Obj, Obj, Vec<usize>), String> {
    let text = word.join(".");
    let mut ends: Option<(Obj, Obj)> = None;
    let mut applied = Vec::new();
    for token in word.iter().rev() {
        let (d, c, g) = if let Some(&g) = gens.get(token.as_str()) {
            let (d, c) = gen_ends[g];
            (d, c, Some(g))
        } else if let Some(&x) = token.strip_prefix("id_").and_then(|o| objects.get(o)) {
            (x, x, None)
        } else {
            return Err(text);
        };
        ends = match ends {
            None => Some((d, c)),
            Some((s, t)) if t == d => Some((s, c)),
            Some(_) => return Err(text),
        };
        applied.extend(g);
    }
    let (s, t) = ends.ok_or_else(|| text.clone())?;
    Ok((s, t, applied))
}

struct Table {
    gen_ends: Vec<(Obj, Obj)>,
    parent: Vec<usize>,
    src: Vec<Obj>,
    dst: Vec<Obj>,
    next: Vec<Vec<Option<usize>>>,
    pending: Vec<(usize, usize)>,
}

enum Trace {
    Done(usize),
    /// stopped at class, missing the step at this word position
    Stuck(usize, usize),
}

impl Table {
    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn add_class(&mut self, src: Obj, dst: Obj) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.src.push(src);
        self.dst.push(dst);
        self.next.push(vec![None; self.gen_ends.len()]);
        id
    }

    fn step(&mut self, a: usize, g: usize) -> Option<usize> {
        let a = self.find(a);
        self.next[a][g].map(|b| self.find(b))
    }

    fn trace(&mut self, start: usize, word: &[usize]) -> Trace {
        let mut cur = self.find(start);
        for (i, &g) in word.iter().enumerate() {
            match self.step(cur, g) {
                Some(b) => cur = b,
                None => return Trace::Stuck(cur, i),
            }
        }
        Trace::Done(cur)
    }

    fn merge_pending(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop] = keep;
            for g in 0..self.gen_ends.len() {
                if let Some(t) = self.next[drop][g] {
                    match self.next[keep][g] {
                        Some(u) => self.pending.push((u, t)),
                        None => self.next[keep][g] = Some(t),
                    }
                }
            }
        }
    }

    /// Applies every relation at every live class until nothing changes.
    fn enforce(&mut self, relations: &[Resolved]) {
        loop {
            let mut changed = false;
            for a in 0..self.parent.len() {
                if self.find(a) != a {
                    continue;
                }
                for r in relations {
                    if self.find(a) != a || self.dst[a] != r.src {
                        continue;
                    }
                    let left = self.trace(a, &r.lhs);
                    let right = self.trace(a, &r.rhs);
                    match (left, right) {
                        (Trace::Done(x), Trace::Done(y)) if x != y => {
                            self.pending.push((x, y));
                            self.merge_pending();
                            changed = true;
                        }
                        (Trace::Done(x), Trace::Stuck(at, i)) if i + 1 == r.rhs.len() => {
                            self.next[at][r.rhs[i]] = Some(x);
                            changed = true;
                        }
                        (Trace::Stuck(at, i), Trace::Done(y)) if i + 1 == r.lhs.len() => {
                            self.next[at][r.lhs[i]] = Some(y);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }
}

/// The category presented by `p`, provided it has at most `max_arrows`
/// arrows. Arrows are named by their shortest, then lexicographically least,
/// written word; identities are `id_X` and come first.
pub fn close_presentation(p: &CatPresentation, max_arrows: usize) -> Result<FinCategory, CategoryError> {
    let mut objects: HashMap<&str, Obj> = HashMap::new();
    for (i, o) in p.objects.iter().enumerate() {
        if objects.insert(o.as_str(), Obj(i)).is_some() {
            return Err(CategoryError::DuplicateName(o.clone()));
        }
    }
    let mut gens: HashMap<&str, usize> = HashMap::new();
    let mut gen_ends = Vec::new();
    for (i, g) in p.generators.iter().enumerate() {
        let d = *objects.get(g.dom.as_str()).ok_or_else(|| CategoryError::UnknownObject(g.dom.clone()))?;
        let c = *objects.get(g.cod.as_str()).ok_or_else(|| CategoryError::UnknownObject(g.cod.clone()))?;
        if gens.insert(g.name.as_str(), i).is_some() || g.name.starts_with("id_") {
            return Err(CategoryError::DuplicateName(g.name.clone()));
        }
        gen_ends.push((d, c));
    }
    let mut relations = Vec::new();
    for r in &p.relations {
        let label = format!("{} = {}", r.lhs.join("."), r.rhs.join("."));
        let (s1, t1, lhs) = resolve_word(&r.lhs, &objects, &gens, &gen_ends)
            .map_err(|_| CategoryError::IllFormedRelation(label.clone()))?;
        let (s2, t2, rhs) = resolve_word(&r.rhs, &objects, &gens, &gen_ends)
            .map_err(|_| CategoryError::IllFormedRelation(label.clone()))?;
        if (s1, t1) != (s2, t2) {
            return Err(CategoryError::IllFormedRelation(label));
        }
        relations.push(Resolved { src: s1, lhs, rhs });
    }

    let budget = 8 * max_arrows + 64;
    let mut table = Table {
        gen_ends: gen_ends.clone(),
        parent: Vec::new(),
        src: Vec::new(),
        dst: Vec::new(),
        next: Vec::new(),
        pending: Vec::new(),
    };
    for i in 0..p.objects.len() {
        table.add_class(Obj(i), Obj(i));
    }
    table.enforce(&relations);
    let mut cursor = 0;
    while cursor < table.parent.len() {
        if table.find(cursor) == cursor {
            for g in 0..gen_ends.len() {
                if table.find(cursor) != cursor {
                    break;
                }
                if gen_ends[g].0 != table.dst[cursor] || table.next[cursor][g].is_some() {
                    continue;
                }
                if table.parent.len() >= budget {
                    return Err(CategoryError::NotFinitelyClosed(max_arrows));
                }
                let fresh = table.add_class(table.src[cursor], gen_ends[g].1);
                table.next[cursor][g] = Some(fresh);
                table.enforce(&relations);
            }
        }
        cursor += 1;
    }
    let live: Vec<usize> = (0..table.parent.len()).filter(|&a| table.find(a) == a).collect();
    if live.len() > max_arrows {
        return Err(CategoryError::NotFinitelyClosed(max_arrows));
    }

    // shortlex-least written word per class, by increasing length
    let names: Vec<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();
    let mut best: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut layer: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..p.objects.len() {
        let a = table.find(i);
        layer.insert(a, Vec::new());
        best.insert(a, Vec::new());
    }
    // written-order comparison of application-order words
    let written_key = |w: &[usize]| -> Vec<&str> { w.iter().rev().map(|&g| names[g]).collect() };
    for _ in 0..live.len() {
        let mut next_layer: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut keys: Vec<usize> = layer.keys().copied().collect();
        keys.sort_unstable();
        for a in keys {
            let word = layer[&a].clone();
            for g in 0..gen_ends.len() {
                if gen_ends[g].0 != table.dst[a] {
                    continue;
                }
                let b = table.step(a, g).expect("complete table");
                let mut w = word.clone();
                w.push(g);
                let better = match next_layer.get(&b) {
                    Some(cur) => written_key(&w) < written_key(cur),
                    None => true,
                };
                if better {
                    next_layer.insert(b, w);
                }
            }
        }
        for (&b, w) in &next_layer {
            best.entry(b).or_insert_with(|| w.clone());
        }
        layer = next_layer;
        if best.len() == live.len() {
            break;
        }
    }

    let ids: Vec<usize> = (0..p.objects.len()).map(|i| table.find(i)).collect();
    let mut others: Vec<usize> = live.iter().copied().filter(|a| !ids.contains(a)).collect();
    others.sort_by(|a, b| {
        let (wa, wb) = (&best[a], &best[b]);
        wa.len().cmp(&wb.len()).then_with(|| written_key(wa).cmp(&written_key(wb)))
    });
    let order: Vec<usize> = ids.iter().copied().chain(others).collect();
    let index: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    if index.len() != order.len() {
        return Err(CategoryError::IllFormedRelation("relations identify two identities".into()));
    }
    let arrows: Vec<ArrowData> = order
        .iter()
        .map(|&a| {
            let w = &best[&a];
            let name =
                if w.is_empty() { format!("id_{}", p.objects[table.src[a].0]) } else { written_key(w).join(".") };
            ArrowData { name, dom: table.src[a], cod: table.dst[a] }
        })
        .collect();
    let m = order.len();
    let mut comp = vec![None; m * m];
    for (fi, &f) in order.iter().enumerate() {
        for (gi, &g) in order.iter().enumerate() {
            if table.src[g] != table.dst[f] {
                continue;
            }
            let word = best[&g].clone();
            match table.trace(f, &word) {
                Trace::Done(h) => comp[gi * m + fi] = Some(Arr(index[&h])),
                Trace::Stuck(..) => return Err(CategoryError::NotFinitelyClosed(max_arrows)),
            }
        }
    }
    let identity = (0..p.objects.len()).map(Arr).collect();
    FinCategory::new(p.objects.clone(), arrows, identity, comp)
}
