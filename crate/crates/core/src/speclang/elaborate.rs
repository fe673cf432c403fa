use std::collections::HashMap;

use super::ast::*;
use super::SpecError;
use crate::algebra::{derive_join_meet, AlgebraKind, BinaryTable, FiniteAlgebra, FiniteLattice, OperatorTable};
use crate::approx::{ApproximationSpace, BinaryRelation};
use crate::duality::Frame;
use crate::labels::sort_canonical;
use crate::order::Poset;
use crate::pointset::{PointSet, MAX_POINTS};
use crate::rra::RoughRelationFrame;

/// A declared structure after validation.
#[derive(Clone, Debug)]
pub enum Entity {
    Space(ApproximationSpace),
    Frame { kind: AlgebraKind, frame: Frame },
    Algebra(FiniteAlgebra),
}

impl Entity {
    pub fn describe(&self) -> &'static str {
        match self {
            Entity::Space(_) => "a space",
            Entity::Frame { .. } => "a frame",
            Entity::Algebra(_) => "an algebra",
        }
    }

    /// The declared kind of a frame or algebra.
    pub fn kind(&self) -> Option<AlgebraKind> {
        match self {
            Entity::Space(_) => None,
            Entity::Frame { kind, .. } => Some(*kind),
            Entity::Algebra(a) => Some(a.kind()),
        }
    }
}

/// The structures of a document, in declaration order, plus its checks.
#[derive(Clone, Debug, Default)]
pub struct Model {
    pub entities: Vec<(String, Entity)>,
    pub checks: Vec<CheckDecl>,
}

impl Model {
    pub fn get(&self, name: &str) -> Option<&Entity> {
        self.entities.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }
}

fn semantic<T>(span: SourceSpan, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError::Semantic { span, message: message.into() })
}

/// Canonically sorted labels of a declared element list, with an index.
struct Universe {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    fn new(elements: &[Element], what: &str) -> Result<Self, SpecError> {
        let mut labels: Vec<String> = Vec::with_capacity(elements.len());
        let mut seen = HashMap::new();
        for e in elements {
            let l = e.value.label();
            if seen.insert(l.clone(), ()).is_some() {
                return semantic(e.span, format!("duplicate element `{l}` in {what}"));
            }
            labels.push(l);
        }
        sort_canonical(&mut labels);
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(Universe { labels, index })
    }

    fn get(&self, e: &Element, what: &str) -> Result<usize, SpecError> {
        let l = e.value.label();
        match self.index.get(&l) {
            Some(&i) => Ok(i),
            None => semantic(e.span, format!("{what} element `{l}` not in universe")),
        }
    }

    fn points(&self, span: SourceSpan) -> Result<(), SpecError> {
        if self.labels.len() > MAX_POINTS {
            return semantic(span, format!("at most {MAX_POINTS} points are supported"));
        }
        Ok(())
    }
}

fn space(d: &SpaceDecl) -> Result<ApproximationSpace, SpecError> {
    let u = Universe::new(&d.universe, "universe")?;
    u.points(d.name.span)?;
    let mut blocks = Vec::new();
    for class in &d.classes {
        let mut b = PointSet::EMPTY;
        for e in &class.value {
            b.insert(u.get(e, "class")?);
        }
        blocks.push(b);
    }
    ApproximationSpace::new(u.labels, blocks).or_else(|e| semantic(d.name.span, e.to_string()))
}

fn total_function(u: &Universe, name: &Name, maplets: &[(Element, Element)]) -> Result<Vec<usize>, SpecError> {
    let mut table = vec![None; u.labels.len()];
    for (a, b) in maplets {
        let x = u.get(a, "function")?;
        let y = u.get(b, "function")?;
        if table[x].replace(y).is_some() {
            return semantic(a.span, format!("fun {} is defined twice at `{}`", name.value, u.labels[x]));
        }
    }
    table
        .iter()
        .enumerate()
        .map(|(x, v)| v.ok_or(x))
        .collect::<Result<Vec<_>, _>>()
        .or_else(|x| semantic(name.span, format!("fun {} is not defined at `{}`", name.value, u.labels[x])))
}

fn order(u: &Universe, pairs: &[(Element, Element)], span: SourceSpan) -> Result<Poset, SpecError> {
    let mut idx: Vec<(usize, usize)> = (0..u.labels.len()).map(|i| (i, i)).collect();
    for (a, b) in pairs {
        idx.push((u.get(a, "order")?, u.get(b, "order")?));
    }
    Poset::new(u.labels.clone(), &idx).or_else(|e| semantic(span, format!("order is not a partial order: {e}")))
}

fn frame(d: &FrameDecl) -> Result<Frame, SpecError> {
    use AlgebraKind::*;
    let kind = d.kind.value;
    let u = Universe::new(&d.universe, "universe")?;
    u.points(d.name.span)?;
    let allowed: &[&str] = match kind {
        Possibility | Monadic | Sufficiency | Diversity => &["rel"],
        Bdl | Dsa | Rdsa => &["order"],
        DeMorgan => &["order", "fun N"],
        R2a => &["order", "ternary", "fun f", "subset I"],
    };
    let present = [
        ("order", d.order.is_some(), d.name.span),
        ("rel", d.rel.is_some(), d.name.span),
        ("ternary", d.ternary.is_some(), d.name.span),
    ];
    for (c, here, span) in present {
        if here && !allowed.contains(&c) {
            return semantic(span, format!("component `{c}` is not part of a {kind} frame"));
        }
    }
    let named = |prefix: &str, n: &Name| -> Result<(), SpecError> {
        let key = format!("{prefix} {}", n.value);
        if allowed.contains(&key.as_str()) {
            Ok(())
        } else {
            semantic(n.span, format!("component `{key}` is not part of a {kind} frame"))
        }
    };
    for (n, _) in &d.funs {
        named("fun", n)?;
    }
    for (n, _) in &d.subsets {
        named("subset", n)?;
    }
    let poset = || order(&u, d.order.as_deref().unwrap_or(&[]), d.name.span);
    let fun = |name: &str| -> Result<Vec<usize>, SpecError> {
        match d.funs.iter().find(|(n, _)| n.value == name) {
            Some((n, m)) => total_function(&u, n, m),
            None => semantic(d.name.span, format!("a {kind} frame needs `fun {name}`")),
        }
    };
    Ok(match kind {
        Possibility | Monadic | Sufficiency | Diversity => {
            let mut pairs = Vec::new();
            for (a, b) in d.rel.as_deref().unwrap_or(&[]) {
                pairs.push((u.get(a, "rel")?, u.get(b, "rel")?));
            }
            let rel = BinaryRelation::new(u.labels.len(), &pairs).or_else(|e| semantic(d.name.span, e.to_string()))?;
            Frame::plain(u.labels.clone(), rel).or_else(|e| semantic(d.name.span, e.to_string()))?
        }
        Bdl | Dsa | Rdsa => Frame::Ordered(poset()?),
        DeMorgan => Frame::de_morgan(poset()?, fun("N")?).or_else(|e| semantic(d.name.span, e.to_string()))?,
        R2a => {
            let mut triples = Vec::new();
            for (a, b, c) in d.ternary.as_deref().unwrap_or(&[]) {
                triples.push((u.get(a, "ternary")?, u.get(b, "ternary")?, u.get(c, "ternary")?));
            }
            let ideal = match d.subsets.iter().find(|(n, _)| n.value == "I") {
                Some((_, s)) => {
                    let mut set = PointSet::EMPTY;
                    for e in s {
                        set.insert(u.get(e, "subset")?);
                    }
                    set
                }
                None => return semantic(d.name.span, "a r2a frame needs `subset I`"),
            };
            let fr = RoughRelationFrame::new(poset()?, &triples, fun("f")?, ideal)
                .or_else(|e| semantic(d.name.span, e.to_string()))?;
            Frame::RoughRelational(fr)
        }
    })
}

fn algebra(d: &AlgebraDecl) -> Result<FiniteAlgebra, SpecError> {
    let lattice = match &d.carrier {
        Carrier::Powerset(atoms) => {
            let u = Universe::new(atoms, "powerset")?;
            if u.labels.len() > 12 {
                return semantic(d.name.span, "powersets of more than 12 atoms are out of scope");
            }
            FiniteLattice::powerset(&u.labels)
        }
        Carrier::Explicit { carrier, order: pairs } => {
            let u = Universe::new(carrier, "carrier")?;
            let p = order(&u, pairs, d.name.span)?;
            derive_join_meet(&p).or_else(|e| semantic(d.name.span, e.to_string()))?
        }
    };
    let n = lattice.len();
    let elem = |e: &Element| -> Result<usize, SpecError> {
        let l = e.value.label();
        match lattice.index_of(&l) {
            Some(i) => Ok(i),
            None => semantic(e.span, format!("element `{l}` not in carrier")),
        }
    };
    let mut unary = Vec::new();
    for (name, maplets) in &d.ops {
        let mut table = vec![None; n];
        for (a, b) in maplets {
            let x = elem(a)?;
            if table[x].replace(elem(b)?).is_some() {
                return semantic(a.span, format!("op {} is defined twice at `{}`", name.value, lattice.label(x)));
            }
        }
        let table = table
            .iter()
            .enumerate()
            .map(|(x, v)| v.ok_or(x))
            .collect::<Result<Vec<_>, _>>()
            .or_else(|x| semantic(name.span, format!("op {} is not defined at `{}`", name.value, lattice.label(x))))?;
        unary.push(OperatorTable::new(name.value.clone(), table));
    }
    let mut binary = Vec::new();
    for (name, maplets) in &d.binops {
        let mut table = vec![None; n * n];
        for ((a, b), c) in maplets {
            let (x, y) = (elem(a)?, elem(b)?);
            if table[x * n + y].replace(elem(c)?).is_some() {
                return semantic(
                    a.span,
                    format!("binop {} is defined twice at ({},{})", name.value, lattice.label(x), lattice.label(y)),
                );
            }
        }
        let table = table
            .iter()
            .enumerate()
            .map(|(i, v)| v.ok_or(i))
            .collect::<Result<Vec<_>, _>>()
            .or_else(|i| {
                semantic(
                    name.span,
                    format!("binop {} is not defined at ({},{})", name.value, lattice.label(i / n), lattice.label(i % n)),
                )
            })?;
        binary.push(BinaryTable::new(name.value.clone(), n, table));
    }
    let mut constants = Vec::new();
    for (name, e) in &d.consts {
        constants.push((name.value.clone(), elem(e)?));
    }
    FiniteAlgebra::new(d.kind.value, lattice, unary, binary, constants).or_else(|e| semantic(d.name.span, e.to_string()))
}

fn target_fits(command: Command, e: &Entity) -> bool {
    matches!(
        (command, e),
        (Command::Axioms, Entity::Frame { .. } | Entity::Algebra(_))
            | (Command::Cm | Command::RoundtripFrame, Entity::Frame { .. })
            | (Command::Cs | Command::RoundtripAlgebra, Entity::Algebra(_))
            | (Command::Approx, Entity::Space(_))
    )
}

/// Builds every declared structure and type-checks the check targets.
pub fn elaborate(doc: &Document) -> Result<Model, SpecError> {
    let mut model = Model::default();
    for d in &doc.declarations {
        match d {
            Decl::Space(s) => model.entities.push((s.name.value.clone(), Entity::Space(space(s)?))),
            Decl::Frame(f) => model
                .entities
                .push((f.name.value.clone(), Entity::Frame { kind: f.kind.value, frame: frame(f)? })),
            Decl::Algebra(a) => model.entities.push((a.name.value.clone(), Entity::Algebra(algebra(a)?))),
            Decl::Check(c) => {
                for t in &c.on {
                    let e = match model.get(&t.value) {
                        Some(e) => e,
                        None => return semantic(t.span, format!("`{}` is a check, not a structure", t.value)),
                    };
                    if !target_fits(c.command.value, e) {
                        return semantic(
                            t.span,
                            format!("command {} cannot run on `{}`, which is {}", c.command.value, t.value, e.describe()),
                        );
                    }
                }
                model.checks.push(c.clone());
            }
        }
    }
    Ok(model)
}
