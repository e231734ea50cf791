//! Turns a parsed [`Document`] into categories, functors, presheaves and
//! spaces from the core library.
//!
//! Categories and spaces that break their laws are kept together with their
//! violations so that the checking commands can report them. Functors and
//! presheaves over such a category are rejected.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use finitopos::category::{
    close_presentation, ArrowData, CatPresentation, CategoryError, Generator, Relation, Violation,
};
use finitopos::space::{SpaceError, SpaceViolation, MAX_POINTS};
use finitopos::{Arr, FinCategory, FinFunctor, FinSpace, Obj, Presheaf};

use crate::syntax::{
    CategoryDecl, Composition, Decl, Document, DslError, FunctorDecl, Ident, PresheafDecl, SpaceDecl, Word,
};

/// Presentations are closed up to this many arrows before giving up.
pub const MAX_CLOSURE: usize = 512;

#[derive(Debug, Clone)]
pub struct NamedCategory {
    pub name: Ident,
    pub category: Arc<FinCategory>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone)]
pub struct NamedSpace {
    pub name: Ident,
    pub space: FinSpace,
    pub violations: Vec<SpaceViolation>,
}

#[derive(Debug, Clone, Default)]
pub struct Model {
    pub categories: Vec<NamedCategory>,
    pub functors: Vec<(Ident, FinFunctor)>,
    pub presheaves: Vec<(Ident, Presheaf)>,
    pub spaces: Vec<NamedSpace>,
}

fn check_unique<'a>(ids: impl IntoIterator<Item = &'a Ident>, what: &str) -> Result<(), DslError> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id.name.as_str()) {
            return Err(DslError::invalid(id, format!("duplicate {what}")));
        }
    }
    Ok(())
}

pub fn resolve(doc: &Document) -> Result<Model, DslError> {
    let mut model = Model::default();
    let names = |kind: fn(&Decl) -> Option<&Ident>| doc.decls.iter().filter_map(kind).collect::<Vec<_>>();
    check_unique(names(|d| if let Decl::Category(c) = d { Some(&c.name) } else { None }), "category name")?;
    check_unique(names(|d| if let Decl::Functor(c) = d { Some(&c.name) } else { None }), "functor name")?;
    check_unique(names(|d| if let Decl::Presheaf(c) = d { Some(&c.name) } else { None }), "presheaf name")?;
    check_unique(names(|d| if let Decl::Space(c) = d { Some(&c.name) } else { None }), "space name")?;
    for d in &doc.decls {
        match d {
            Decl::Category(c) => {
                let category = category(c)?;
                let violations = category.validate();
                model.categories.push(NamedCategory { name: c.name.clone(), category: Arc::new(category), violations });
            }
            Decl::Space(s) => model.spaces.push(space(s)?),
            _ => {}
        }
    }
    for d in &doc.decls {
        match d {
            Decl::Functor(f) => {
                let functor = functor(&model, f)?;
                model.functors.push((f.name.clone(), functor));
            }
            Decl::Presheaf(p) => {
                let presheaf = presheaf(&model, p)?;
                model.presheaves.push((p.name.clone(), presheaf));
            }
            _ => {}
        }
    }
    Ok(model)
}

impl Model {
    /// A category that other declarations may be built on.
    fn lawful(&self, name: &Ident) -> Result<&Arc<FinCategory>, DslError> {
        let c = self.categories.iter().find(|c| c.name == *name).ok_or_else(|| DslError::unknown(name, "category"))?;
        if let Some(v) = c.violations.first() {
            return Err(DslError::invalid(name, format!("category is not valid: {v}")));
        }
        Ok(&c.category)
    }
}

fn object(c: &FinCategory, id: &Ident) -> Result<Obj, DslError> {
    c.find_object(&id.name).ok_or_else(|| DslError::unknown(id, "object"))
}

/// Composes a written word right to left.
fn word(c: &FinCategory, w: &Word) -> Result<Arr, DslError> {
    let find = |id: &Ident| c.find_arrow(&id.name).ok_or_else(|| DslError::unknown(id, "arrow"));
    let (last, rest) = w.split_last().expect("words are non-empty");
    let mut acc = find(last)?;
    let mut prev = last;
    for id in rest.iter().rev() {
        let g = find(id)?;
        acc = c.compose(g, acc).ok_or_else(|| DslError::arity(id, format!("cannot follow `{}`", prev.name)))?;
        prev = id;
    }
    Ok(acc)
}

fn category(decl: &CategoryDecl) -> Result<FinCategory, DslError> {
    check_unique(&decl.objects, "object")?;
    let mut objects = HashMap::new();
    for (i, o) in decl.objects.iter().enumerate() {
        objects.insert(o.name.as_str(), Obj(i));
    }
    let mut arrow_names: HashSet<String> = decl.objects.iter().map(|o| format!("id_{}", o.name)).collect();
    for a in &decl.arrows {
        for end in [&a.dom, &a.cod] {
            if !objects.contains_key(end.name.as_str()) {
                return Err(DslError::unknown(end, "object"));
            }
        }
        if !arrow_names.insert(a.name.name.clone()) {
            return Err(DslError::invalid(&a.name, "duplicate arrow"));
        }
    }
    match &decl.composition {
        Composition::Free => presented(decl, &objects, &[]),
        Composition::Relations(eqs) => presented(decl, &objects, eqs),
        Composition::Table(eqs) => tabulated(decl, eqs),
    }
}

fn presented(
    decl: &CategoryDecl,
    objects: &HashMap<&str, Obj>,
    eqs: &[crate::syntax::Equation],
) -> Result<FinCategory, DslError> {
    let mut ends: HashMap<String, (Obj, Obj)> = HashMap::new();
    for (name, &x) in objects {
        ends.insert(format!("id_{name}"), (x, x));
    }
    for a in &decl.arrows {
        ends.insert(a.name.name.clone(), (objects[a.dom.name.as_str()], objects[a.cod.name.as_str()]));
    }
    let endpoints = |w: &Word| -> Result<(Obj, Obj), DslError> {
        let mut it = w.iter().rev();
        let first = it.next().expect("words are non-empty");
        let (dom, mut cod) = *ends.get(&first.name).ok_or_else(|| DslError::unknown(first, "arrow"))?;
        let mut prev = first;
        for id in it {
            let (d, c) = *ends.get(&id.name).ok_or_else(|| DslError::unknown(id, "arrow"))?;
            if d != cod {
                return Err(DslError::arity(id, format!("cannot follow `{}`", prev.name)));
            }
            cod = c;
            prev = id;
        }
        Ok((dom, cod))
    };
    let mut relations = Vec::new();
    for e in eqs {
        if endpoints(&e.lhs)? != endpoints(&e.rhs)? {
            return Err(DslError::arity(&e.lhs[0], "starts an equation whose sides are not parallel"));
        }
        let side = |w: &Word| w.iter().map(|i| i.name.clone()).collect();
        relations.push(Relation { lhs: side(&e.lhs), rhs: side(&e.rhs) });
    }
    let p = CatPresentation {
        objects: decl.objects.iter().map(|o| o.name.clone()).collect(),
        generators: decl
            .arrows
            .iter()
            .map(|a| Generator { name: a.name.name.clone(), dom: a.dom.name.clone(), cod: a.cod.name.clone() })
            .collect(),
        relations,
    };
    close_presentation(&p, MAX_CLOSURE).map_err(|e| match e {
        CategoryError::IllFormedRelation(r) => DslError::arity(&decl.name, format!("has an ill-formed relation {r}")),
        other => DslError::invalid(&decl.name, other.to_string()),
    })
}

/// Builds the table as written, leaving unfilled or unlawful entries for
/// validation to report.
fn tabulated(decl: &CategoryDecl, eqs: &[crate::syntax::Equation]) -> Result<FinCategory, DslError> {
    let n = decl.objects.len();
    let obj = |id: &Ident| Obj(decl.objects.iter().position(|o| o == id).expect("checked above"));
    let mut data: Vec<ArrowData> = decl
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| ArrowData { name: format!("id_{}", o.name), dom: Obj(i), cod: Obj(i) })
        .collect();
    for a in &decl.arrows {
        data.push(ArrowData { name: a.name.name.clone(), dom: obj(&a.dom), cod: obj(&a.cod) });
    }
    let m = data.len();
    let find = |id: &Ident| data.iter().position(|a| a.name == id.name).ok_or_else(|| DslError::unknown(id, "arrow"));
    let mut comp = vec![None; m * m];
    for g in 0..m {
        for f in 0..m {
            if data[g].dom != data[f].cod {
                continue;
            }
            if g < n {
                comp[g * m + f] = Some(Arr(f));
            } else if f < n {
                comp[g * m + f] = Some(Arr(g));
            }
        }
    }
    let mut written: HashMap<(usize, usize), usize> = HashMap::new();
    for e in eqs {
        if e.lhs.len() != 2 || e.rhs.len() != 1 {
            return Err(DslError::arity(&e.lhs[0], "starts a table entry not of the form g.f = h"));
        }
        let (g, f, h) = (find(&e.lhs[0])?, find(&e.lhs[1])?, find(&e.rhs[0])?);
        if data[g].dom != data[f].cod {
            return Err(DslError::arity(&e.lhs[0], format!("cannot follow `{}`", e.lhs[1].name)));
        }
        if let Some(&prev) = written.get(&(g, f)) {
            if prev != h {
                return Err(DslError::invalid(
                    &e.lhs[0],
                    format!("composite {}.{} is given twice", data[g].name, data[f].name),
                ));
            }
        }
        written.insert((g, f), h);
        comp[g * m + f] = Some(Arr(h));
    }
    let objects = decl.objects.iter().map(|o| o.name.clone()).collect();
    Ok(FinCategory::from_parts(objects, data, (0..n).map(Arr).collect(), comp))
}

/// Fills in `map` on composites from its values on the arrows they are built
/// from, returning the first arrow left without a value.
fn close_over_composites<T: Clone + PartialEq>(
    c: &FinCategory,
    map: &mut [Option<T>],
    mut compose: impl FnMut(&T, &T) -> Option<T>,
) -> Option<Arr> {
    let mut changed = true;
    while changed {
        changed = false;
        for g in c.arrows() {
            for f in c.arrows() {
                let (Some(h), Some(mg), Some(mf)) = (c.compose(g, f), &map[g.0], &map[f.0]) else { continue };
                if map[h.0].is_none() {
                    if let Some(v) = compose(mg, mf) {
                        map[h.0] = Some(v);
                        changed = true;
                    }
                }
            }
        }
    }
    map.iter().position(|m| m.is_none()).map(Arr)
}

fn functor(model: &Model, decl: &FunctorDecl) -> Result<FinFunctor, DslError> {
    let src = model.lawful(&decl.source)?.clone();
    let tgt = model.lawful(&decl.target)?.clone();
    let mut obj_map: Vec<Option<Obj>> = vec![None; src.num_objects()];
    for (a, x) in &decl.obj {
        let (a_, x_) = (object(&src, a)?, object(&tgt, x)?);
        if obj_map[a_.0].is_some_and(|y| y != x_) {
            return Err(DslError::invalid(a, "is mapped twice"));
        }
        obj_map[a_.0] = Some(x_);
    }
    if let Some(i) = obj_map.iter().position(|m| m.is_none()) {
        return Err(DslError::invalid(&decl.name, format!("object {} is not mapped", src.object_name(Obj(i)))));
    }
    let obj_map: Vec<Obj> = obj_map.into_iter().map(|m| m.unwrap()).collect();
    let mut arr_map: Vec<Option<Arr>> = vec![None; src.num_arrows()];
    for x in src.objects() {
        arr_map[src.id(x).0] = Some(tgt.id(obj_map[x.0]));
    }
    for (u, v) in &decl.arr {
        let (u_, v_) = (word(&src, u)?, word(&tgt, v)?);
        if arr_map[u_.0].is_some_and(|w| w != v_) {
            return Err(DslError::invalid(&u[0], "is mapped inconsistently"));
        }
        arr_map[u_.0] = Some(v_);
    }
    if let Some(a) = close_over_composites(&src, &mut arr_map, |&g, &f| tgt.compose(g, f)) {
        return Err(DslError::invalid(&decl.name, format!("no image given for arrow {}", src.arrow_name(a))));
    }
    let arr_map = arr_map.into_iter().map(|m| m.unwrap()).collect();
    FinFunctor::new(src, tgt, obj_map, arr_map).map_err(|e| DslError::invalid(&decl.name, e.to_string()))
}

fn presheaf(model: &Model, decl: &PresheafDecl) -> Result<Presheaf, DslError> {
    let site = model.lawful(&decl.site)?.clone();
    let mut carriers: Vec<Option<Vec<String>>> = vec![None; site.num_objects()];
    for (x, elems) in &decl.carriers {
        let x_ = object(&site, x)?;
        if carriers[x_.0].is_some() {
            return Err(DslError::invalid(x, "has two carriers"));
        }
        check_unique(elems, "element")?;
        carriers[x_.0] = Some(elems.iter().map(|e| e.name.clone()).collect());
    }
    if let Some(i) = carriers.iter().position(|m| m.is_none()) {
        return Err(DslError::invalid(&decl.name, format!("no carrier given for object {}", site.object_name(Obj(i)))));
    }
    let carriers: Vec<Vec<String>> = carriers.into_iter().map(|m| m.unwrap()).collect();
    let element = |x: Obj, id: &Ident| {
        carriers[x.0].iter().position(|e| *e == id.name).ok_or_else(|| DslError::unknown(id, "element"))
    };
    let mut action: Vec<Option<Vec<usize>>> = vec![None; site.num_arrows()];
    for x in site.objects() {
        action[site.id(x).0] = Some((0..carriers[x.0].len()).collect());
    }
    for act in &decl.actions {
        let u = word(&site, &act.arrow)?;
        let mut map = vec![None; carriers[site.cod(u).0].len()];
        for (e, e2) in &act.pairs {
            let (i, j) = (element(site.cod(u), e)?, element(site.dom(u), e2)?);
            if map[i].is_some_and(|k| k != j) {
                return Err(DslError::invalid(e, "is sent to two elements"));
            }
            map[i] = Some(j);
        }
        if let Some(i) = map.iter().position(|m| m.is_none()) {
            return Err(DslError::invalid(
                &act.arrow[0],
                format!("leaves element {} unmapped", carriers[site.cod(u).0][i]),
            ));
        }
        let map: Vec<usize> = map.into_iter().map(|m| m.unwrap()).collect();
        if action[u.0].as_ref().is_some_and(|m| *m != map) {
            return Err(DslError::invalid(&act.arrow[0], "acts inconsistently with an earlier clause"));
        }
        action[u.0] = Some(map);
    }
    // an arrow into an object with an empty carrier acts by the empty map
    for u in site.arrows() {
        if carriers[site.cod(u).0].is_empty() && action[u.0].is_none() {
            action[u.0] = Some(Vec::new());
        }
    }
    // P(g.f) = P(f) after P(g)
    if let Some(a) = close_over_composites(&site, &mut action, |pg, pf| Some(pg.iter().map(|&y| pf[y]).collect())) {
        return Err(DslError::invalid(&decl.name, format!("no action given for arrow {}", site.arrow_name(a))));
    }
    let action = action.into_iter().map(|m| m.unwrap()).collect();
    let sizes = carriers.iter().map(Vec::len).collect();
    Presheaf::new(site, sizes, action)
        .map(|p| p.with_names(carriers))
        .map_err(|e| DslError::invalid(&decl.name, e.to_string()))
}

fn space(decl: &SpaceDecl) -> Result<NamedSpace, DslError> {
    check_unique(&decl.points, "point")?;
    if decl.points.len() > MAX_POINTS {
        return Err(DslError::invalid(&decl.name, format!("at most {MAX_POINTS} points are supported")));
    }
    let mut opens = Vec::new();
    for o in &decl.opens {
        let mut s = 0u64;
        for p in o {
            let i = decl.points.iter().position(|q| q == p).ok_or_else(|| DslError::unknown(p, "point"))?;
            s |= 1 << i;
        }
        opens.push(s);
    }
    let points = decl.points.iter().map(|p| p.name.clone()).collect();
    let space = FinSpace::new(points, opens).map_err(|e: SpaceError| DslError::invalid(&decl.name, e.to_string()))?;
    let violations = space.validate();
    Ok(NamedSpace { name: decl.name.clone(), space, violations })
}
