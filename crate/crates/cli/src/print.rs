//! Canonical text for a [`Document`]: one clause per line, two-space indent.

use std::fmt::Write;

use crate::syntax::{Composition, Decl, Document, Equation, Ident, Word};

fn names(ids: &[Ident]) -> String {
    ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(", ")
}

fn word(w: &Word) -> String {
    w.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(".")
}

fn set(ids: &[Ident]) -> String {
    format!("{{{}}}", names(ids))
}

fn equations(eqs: &[Equation]) -> String {
    eqs.iter().map(|e| format!("{} = {}", word(&e.lhs), word(&e.rhs))).collect::<Vec<_>>().join(", ")
}

/// Writes `head: items` with nothing after the colon for an empty list.
fn clause(out: &mut String, head: &str, items: &str) {
    if items.is_empty() {
        writeln!(out, "  {head}:").unwrap();
    } else {
        writeln!(out, "  {head}: {items}").unwrap();
    }
}

pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for (i, d) in doc.decls.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match d {
            Decl::Category(c) => {
                writeln!(out, "category {} {{", c.name.name).unwrap();
                clause(&mut out, "objects", &names(&c.objects));
                if !c.arrows.is_empty() {
                    let arrows: Vec<String> =
                        c.arrows.iter().map(|a| format!("{}: {} -> {}", a.name.name, a.dom.name, a.cod.name)).collect();
                    clause(&mut out, "arrows", &arrows.join(", "));
                }
                match &c.composition {
                    Composition::Free => {}
                    Composition::Relations(eqs) => clause(&mut out, "relations", &equations(eqs)),
                    Composition::Table(eqs) => clause(&mut out, "table", &equations(eqs)),
                }
            }
            Decl::Functor(f) => {
                writeln!(out, "functor {} : {} -> {} {{", f.name.name, f.source.name, f.target.name).unwrap();
                let obj: Vec<String> = f.obj.iter().map(|(a, b)| format!("{} -> {}", a.name, b.name)).collect();
                clause(&mut out, "obj", &obj.join(", "));
                let arr: Vec<String> = f.arr.iter().map(|(a, b)| format!("{} -> {}", word(a), word(b))).collect();
                clause(&mut out, "arr", &arr.join(", "));
            }
            Decl::Presheaf(p) => {
                writeln!(out, "presheaf {} on {} {{", p.name.name, p.site.name).unwrap();
                for (x, elems) in &p.carriers {
                    writeln!(out, "  at {}: {}", x.name, set(elems)).unwrap();
                }
                for a in &p.actions {
                    let pairs: Vec<String> = a.pairs.iter().map(|(x, y)| format!("{} -> {}", x.name, y.name)).collect();
                    clause(&mut out, &format!("act {}", word(&a.arrow)), &pairs.join(", "));
                }
            }
            Decl::Space(s) => {
                writeln!(out, "space {} {{", s.name.name).unwrap();
                clause(&mut out, "points", &names(&s.points));
                let opens: Vec<String> = s.opens.iter().map(|o| set(o)).collect();
                clause(&mut out, "opens", &opens.join(", "));
            }
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn prints_canonically() {
        let doc = parse("space S { points: o, c ; opens: {}, {o}, {o, c} }").unwrap();
        assert_eq!(print(&doc), "space S {\n  points: o, c\n  opens: {}, {o}, {o, c}\n}\n");
        assert_eq!(parse(&print(&doc)).unwrap(), doc);
    }

    #[test]
    fn empty_lists_survive() {
        let doc = parse("category C { objects: ; relations: }\npresheaf P on C { act f: }").unwrap();
        assert_eq!(parse(&print(&doc)).unwrap(), doc);
    }
}
