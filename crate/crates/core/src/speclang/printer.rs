//! Canonical printing of documents, and conversion of engine values back
//! into declarations.

use std::fmt::Write;

use super::ast::*;
use super::parse_elem;
use crate::algebra::{AlgebraKind, FiniteAlgebra};
use crate::approx::ApproximationSpace;
use crate::duality::Frame;
use crate::order::Poset;

fn elem(label: &str) -> Element {
    Spanned::new(parse_elem(label).unwrap_or_else(|_| Elem::Atom(label.to_string())), SourceSpan::default())
}

fn name(s: &str) -> Name {
    Spanned::new(s.to_string(), SourceSpan::default())
}

fn sorted_set(items: &[Element]) -> Vec<String> {
    let mut v: Vec<String> = items.iter().map(|e| e.value.label()).collect();
    v.sort_by(|a, b| cmp_labels(a, b));
    v.dedup();
    v
}

fn set(items: &[Element]) -> String {
    format!("{{{}}}", sorted_set(items).join(", "))
}

fn sorted_tuples(items: Vec<Vec<String>>) -> Vec<Vec<String>> {
    let mut items = items;
    items.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| cmp_labels(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    items.dedup();
    items
}

fn pairs(items: &[(Element, Element)]) -> String {
    let v = sorted_tuples(items.iter().map(|(a, b)| vec![a.value.label(), b.value.label()]).collect());
    let parts: Vec<String> = v.iter().map(|t| format!("({})", t.join(","))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn triples(items: &[(Element, Element, Element)]) -> String {
    let v = sorted_tuples(
        items
            .iter()
            .map(|(a, b, c)| vec![a.value.label(), b.value.label(), c.value.label()])
            .collect(),
    );
    let parts: Vec<String> = v.iter().map(|t| format!("({})", t.join(","))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn maplets(items: &[(Element, Element)]) -> String {
    let v = sorted_tuples(items.iter().map(|(a, b)| vec![a.value.label(), b.value.label()]).collect());
    let parts: Vec<String> = v.iter().map(|t| format!("{} -> {}", t[0], t[1])).collect();
    format!("{{{}}}", parts.join(", "))
}

fn trimaplets(items: &[((Element, Element), Element)]) -> String {
    let v = sorted_tuples(
        items
            .iter()
            .map(|((a, b), c)| vec![a.value.label(), b.value.label(), c.value.label()])
            .collect(),
    );
    let parts: Vec<String> = v.iter().map(|t| format!("({},{}) -> {}", t[0], t[1], t[2])).collect();
    format!("{{{}}}", parts.join(", "))
}

fn print_decl(out: &mut String, d: &Decl) {
    let _ = writeln!(out, "{} {} {{", d.keyword(), d.name().value);
    match d {
        Decl::Space(s) => {
            let _ = writeln!(out, "  universe = {};", set(&s.universe));
            let mut classes: Vec<String> = s.classes.iter().map(|c| set(&c.value)).collect();
            classes.sort_by(|a, b| cmp_labels(a, b));
            let _ = writeln!(out, "  classes = {{{}}};", classes.join(", "));
        }
        Decl::Frame(f) => {
            let _ = writeln!(out, "  kind = {};", f.kind.value);
            let _ = writeln!(out, "  universe = {};", set(&f.universe));
            if let Some(o) = &f.order {
                let _ = writeln!(out, "  order = {};", pairs(o));
            }
            if let Some(r) = &f.rel {
                let _ = writeln!(out, "  rel = {};", pairs(r));
            }
            if let Some(t) = &f.ternary {
                let _ = writeln!(out, "  ternary = {};", triples(t));
            }
            for (n, m) in &f.funs {
                let _ = writeln!(out, "  fun {} = {};", n.value, maplets(m));
            }
            for (n, s) in &f.subsets {
                let _ = writeln!(out, "  subset {} = {};", n.value, set(s));
            }
        }
        Decl::Algebra(a) => {
            let _ = writeln!(out, "  kind = {};", a.kind.value);
            match &a.carrier {
                Carrier::Powerset(atoms) => {
                    let _ = writeln!(out, "  powerset = {};", set(atoms));
                }
                Carrier::Explicit { carrier, order } => {
                    let _ = writeln!(out, "  carrier = {};", set(carrier));
                    let _ = writeln!(out, "  order = {};", pairs(order));
                }
            }
            for (n, m) in &a.ops {
                let _ = writeln!(out, "  op {} = {};", n.value, maplets(m));
            }
            for (n, m) in &a.binops {
                let _ = writeln!(out, "  binop {} = {};", n.value, trimaplets(m));
            }
            for (n, e) in &a.consts {
                let _ = writeln!(out, "  const {} = {};", n.value, e.value.label());
            }
        }
        Decl::Check(c) => {
            let _ = writeln!(out, "  run = {};", c.command.value);
            for t in &c.on {
                let _ = writeln!(out, "  on = {};", t.value);
            }
            if let Some(k) = &c.kind {
                let _ = writeln!(out, "  kind = {};", k.value);
            }
        }
    }
    out.push_str("}\n");
}

/// The canonical text of a document: declarations in input order, set-like
/// contents sorted canonically, LF line endings.
pub fn print_document(doc: &Document) -> String {
    let mut out = String::new();
    for (i, d) in doc.declarations.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_decl(&mut out, d);
    }
    out
}

fn strict_order(p: &Poset) -> Vec<(Element, Element)> {
    p.pairs()
        .into_iter()
        .filter(|(x, y)| x != y)
        .map(|(x, y)| (elem(p.label(x)), elem(p.label(y))))
        .collect()
}

pub fn space_decl(n: &str, s: &ApproximationSpace) -> Decl {
    Decl::Space(SpaceDecl {
        name: name(n),
        universe: s.labels().iter().map(|l| elem(l)).collect(),
        classes: s
            .blocks()
            .iter()
            .map(|b| Spanned::new(s.names(*b).iter().map(|l| elem(l)).collect(), SourceSpan::default()))
            .collect(),
    })
}

pub fn frame_decl(n: &str, kind: AlgebraKind, frame: &Frame) -> Decl {
    let labels = crate::order::RelationalStructure::point_labels(frame);
    let mut d = FrameDecl {
        name: name(n),
        kind: Spanned::new(kind, SourceSpan::default()),
        universe: labels.iter().map(|l| elem(l)).collect(),
        order: None,
        rel: None,
        ternary: None,
        funs: vec![],
        subsets: vec![],
    };
    let fun = |f: &[usize]| -> Vec<(Element, Element)> {
        f.iter().enumerate().map(|(x, &y)| (elem(&labels[x]), elem(&labels[y]))).collect()
    };
    match frame {
        Frame::Plain { rel, .. } => {
            d.rel = Some(rel.pairs().into_iter().map(|(x, y)| (elem(&labels[x]), elem(&labels[y]))).collect());
        }
        Frame::Ordered(p) => d.order = Some(strict_order(p)),
        Frame::DeMorgan { poset, neg } => {
            d.order = Some(strict_order(poset));
            d.funs.push((name("N"), fun(neg)));
        }
        Frame::RoughRelational(r) => {
            d.order = Some(strict_order(r.poset()));
            d.ternary = Some(
                r.triples()
                    .into_iter()
                    .map(|(x, y, z)| (elem(&labels[x]), elem(&labels[y]), elem(&labels[z])))
                    .collect(),
            );
            d.funs.push((name("f"), fun(r.f())));
            d.subsets.push((name("I"), r.ideal().iter().map(|x| elem(&labels[x])).collect()));
        }
    }
    Decl::Frame(d)
}

pub fn algebra_decl(n: &str, a: &FiniteAlgebra) -> Decl {
    let l = a.lattice();
    let carrier = match l.powerset_atoms() {
        Some(atoms) => Carrier::Powerset(atoms.iter().map(|x| elem(x)).collect()),
        None => {
            let mut order = Vec::new();
            for x in 0..l.len() {
                for y in 0..l.len() {
                    if x != y && l.leq(x, y) {
                        order.push((elem(l.label(x)), elem(l.label(y))));
                    }
                }
            }
            Carrier::Explicit { carrier: l.labels().iter().map(|x| elem(x)).collect(), order }
        }
    };
    let ops = a
        .unary_ops()
        .map(|op| {
            let m = op.table.iter().enumerate().map(|(x, &y)| (elem(l.label(x)), elem(l.label(y)))).collect();
            (name(&op.name), m)
        })
        .collect();
    let binops = a
        .binary_ops()
        .map(|op| {
            let n = l.len();
            let m = (0..n * n)
                .map(|i| ((elem(l.label(i / n)), elem(l.label(i % n))), elem(l.label(op.table[i]))))
                .collect();
            (name(&op.name), m)
        })
        .collect();
    let consts = a.constants().map(|(c, v)| (name(c), elem(l.label(v)))).collect();
    Decl::Algebra(AlgebraDecl {
        name: name(n),
        kind: Spanned::new(a.kind(), SourceSpan::default()),
        carrier,
        ops,
        binops,
        consts,
    })
}

pub fn print_space(n: &str, s: &ApproximationSpace) -> String {
    print_document(&Document { declarations: vec![space_decl(n, s)] })
}

pub fn print_frame(n: &str, kind: AlgebraKind, frame: &Frame) -> String {
    print_document(&Document { declarations: vec![frame_decl(n, kind, frame)] })
}

pub fn print_algebra(n: &str, a: &FiniteAlgebra) -> String {
    print_document(&Document { declarations: vec![algebra_decl(n, a)] })
}
