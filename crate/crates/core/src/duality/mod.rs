//! Complex algebras of frames, canonical structures of algebras, and the two
//! representation maps `h` and `k`.

mod maps;

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::laws::{run_laws, Domain, Law};
use crate::algebra::{
    check_kind, prime_filters, ultrafilters, AlgebraError, AlgebraKind, Filter, FiniteAlgebra, FiniteLattice,
    OperatorTable,
};
use crate::approx::{possibility_op, sufficiency_op, ApproxError, BinaryRelation};
use crate::order::{Component, OrderError, Poset, RelationalStructure};
use crate::pointset::PointSet;
use crate::report::CheckReport;
use crate::rra::{self, RoughRelationFrame};

pub use maps::{frame_map, roundtrip_algebra, roundtrip_frame, stone_map, FrameMap, StoneMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("frame kind mismatch: {0}")]
    KindMismatch(String),
    #[error("frame violates {law}{}", fmt_witness(.witness))]
    FrameInvariant { law: String, witness: Vec<(String, String)> },
    #[error("algebra fails the {kind} laws: {law}{}", fmt_witness(.witness))]
    Precondition { kind: AlgebraKind, law: String, witness: Vec<(String, String)> },
    #[error("internal-consistency alarm: {0}")]
    Alarm(String),
    #[error("operation not closed: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

fn fmt_witness(w: &[(String, String)]) -> String {
    if w.is_empty() {
        String::new()
    } else {
        let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(" at {}", parts.join(" "))
    }
}

impl DualityError {
    pub fn is_alarm(&self) -> bool {
        matches!(self, DualityError::Alarm(_) | DualityError::Algebra(AlgebraError::Inconsistent(_)))
    }
}

/// A frame of one of the shapes the dualities use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Frame {
    /// A set with one binary relation.
    Plain { labels: Vec<String>, rel: BinaryRelation },
    Ordered(Poset),
    /// A poset with the function `N`.
    DeMorgan { poset: Poset, neg: Vec<usize> },
    RoughRelational(RoughRelationFrame),
}

impl Frame {
    pub fn plain(labels: Vec<String>, rel: BinaryRelation) -> Result<Self, DualityError> {
        if rel.carrier_len() != labels.len() {
            return Err(ApproxError::CarrierMismatch(labels.len(), rel.carrier_len()).into());
        }
        Ok(Frame::Plain { labels, rel })
    }

    pub fn de_morgan(poset: Poset, neg: Vec<usize>) -> Result<Self, DualityError> {
        if neg.len() != poset.len() || neg.iter().any(|&y| y >= poset.len()) {
            return Err(DualityError::FrameInvariant { law: "N.total".into(), witness: vec![] });
        }
        Ok(Frame::DeMorgan { poset, neg })
    }

    pub fn len(&self) -> usize {
        self.point_labels().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The order of an ordered frame.
    pub fn poset(&self) -> Option<&Poset> {
        match self {
            Frame::Plain { .. } => None,
            Frame::Ordered(p) | Frame::DeMorgan { poset: p, .. } => Some(p),
            Frame::RoughRelational(r) => Some(r.poset()),
        }
    }

    pub fn relation(&self) -> Option<&BinaryRelation> {
        match self {
            Frame::Plain { rel, .. } => Some(rel),
            _ => None,
        }
    }

    fn shape(&self) -> &'static str {
        match self {
            Frame::Plain { .. } => "plain",
            Frame::Ordered(_) => "ordered",
            Frame::DeMorgan { .. } => "de-morgan",
            Frame::RoughRelational(_) => "rough-relational",
        }
    }

    /// Whether this shape carries frames of `kind`.
    pub fn fits(&self, kind: AlgebraKind) -> bool {
        use AlgebraKind::*;
        matches!(
            (self, kind),
            (Frame::Plain { .. }, Possibility | Monadic | Sufficiency | Diversity)
                | (Frame::Ordered(_), Bdl | Dsa | Rdsa)
                | (Frame::DeMorgan { .. }, DeMorgan)
                | (Frame::RoughRelational(_), R2a)
        )
    }
}

impl RelationalStructure for Frame {
    fn point_labels(&self) -> &[String] {
        match self {
            Frame::Plain { labels, .. } => labels,
            Frame::Ordered(p) | Frame::DeMorgan { poset: p, .. } => p.point_labels(),
            Frame::RoughRelational(r) => r.poset().point_labels(),
        }
    }

    fn components(&self) -> Vec<Component<'_>> {
        match self {
            Frame::Plain { rel, .. } => vec![Component::Binary { name: "rel", succ: rel.successors().to_vec() }],
            Frame::Ordered(p) => p.components_of_frame(),
            Frame::DeMorgan { poset, neg } => {
                let mut c = poset.components_of_frame();
                c.push(Component::Function { name: "N", table: neg });
                c
            }
            Frame::RoughRelational(r) => r.components(),
        }
    }
}

impl Poset {
    fn components_of_frame(&self) -> Vec<Component<'_>> {
        RelationalStructure::components(self)
    }
}

/// First element of a component without a unique minimal or maximal point.
pub fn dsa_frame_violation(p: &Poset) -> Option<usize> {
    let (min, max) = p.extremal_points();
    p.components()
        .into_iter()
        .find(|c| c.intersection(min).len() != 1 || c.intersection(max).len() != 1)
        .and_then(|c| c.iter().next())
}

/// Evaluates the frame conditions of `kind` and returns them as a report.
pub fn frame_conditions(frame: &Frame, kind: AlgebraKind) -> Result<CheckReport, DualityError> {
    if !frame.fits(kind) {
        return Err(DualityError::KindMismatch(format!("a {} frame cannot carry kind {kind}", frame.shape())));
    }
    let labels = frame.point_labels();
    let mut report = CheckReport::new(format!("{kind}-frame"));
    let one = |report: &mut CheckReport, law: &str, bad: Option<usize>| {
        report.record(law, labels.len() as u64, bad.map(|x| vec![("x".to_string(), labels[x].clone())]));
    };
    match frame {
        Frame::Plain { rel, .. } => {
            let r = rel;
            let laws: Vec<Law<'_>> = match kind {
                AlgebraKind::Monadic => vec![
                    Law::new("frame.reflexive", &["x"], move |v| r.contains(v[0], v[0])),
                    Law::new("frame.symmetric", &["x", "y"], move |v| !r.contains(v[0], v[1]) || r.contains(v[1], v[0])),
                    Law::new("frame.transitive", &["x", "y", "z"], move |v| {
                        !(r.contains(v[0], v[1]) && r.contains(v[1], v[2])) || r.contains(v[0], v[2])
                    }),
                ],
                AlgebraKind::Diversity => vec![
                    Law::new("frame.FDiv1", &["x"], move |v| !r.contains(v[0], v[0])),
                    Law::new("frame.FDiv2", &["x", "y"], move |v| !r.contains(v[0], v[1]) || r.contains(v[1], v[0])),
                    Law::new("frame.FDiv3", &["x", "y", "z"], move |v| {
                        !r.contains(v[0], v[1]) || r.contains(v[0], v[2]) || r.contains(v[2], v[1])
                    }),
                ],
                _ => vec![],
            };
            if matches!(kind, AlgebraKind::Sufficiency | AlgebraKind::Diversity) {
                report.record("frame.nonempty", 1, labels.is_empty().then(Vec::new));
            }
            run_laws(&mut report, labels, &laws, &Domain::Exhaustive);
        }
        Frame::Ordered(p) => match kind {
            AlgebraKind::Dsa => one(&mut report, "frame.dsa-components", dsa_frame_violation(p)),
            AlgebraKind::Rdsa => one(&mut report, "frame.RDS", p.short_chain_violation()),
            _ => {}
        },
        Frame::DeMorgan { poset, neg } => {
            let laws = [
                Law::new("frame.FDeM1", &["x"], move |v| neg[neg[v[0]]] == v[0]),
                Law::new("frame.FDeM2", &["x", "y"], move |v| {
                    !poset.leq(v[0], v[1]) || poset.leq(neg[v[1]], neg[v[0]])
                }),
            ];
            run_laws(&mut report, labels, &laws, &Domain::Exhaustive);
        }
        Frame::RoughRelational(r) => report.absorb(rra::check_r2fa(r)),
    }
    Ok(report)
}

/// Fails with the first violated frame condition of `kind`.
pub fn check_frame(frame: &Frame, kind: AlgebraKind) -> Result<(), DualityError> {
    let report = frame_conditions(frame, kind)?;
    match report.violations.into_iter().next() {
        None => Ok(()),
        Some(v) => Err(DualityError::FrameInvariant { law: v.law, witness: v.witness }),
    }
}

/// The complex algebra together with the point set of each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexAlgebra {
    pub algebra: FiniteAlgebra,
    pub sets: Vec<PointSet>,
}

impl ComplexAlgebra {
    pub(crate) fn index(&self) -> HashMap<PointSet, usize> {
        self.sets.iter().enumerate().map(|(i, &s)| (s, i)).collect()
    }
}

/// The canonical structure together with the filter behind each point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalFrame {
    pub frame: Frame,
    pub filters: Vec<Filter>,
}

fn powerset_op(labels: &[String], f: impl Fn(PointSet) -> PointSet) -> (FiniteLattice, Vec<usize>) {
    let lattice = FiniteLattice::powerset(labels);
    let n = labels.len();
    let table = PointSet::all_subsets(n).map(|y| f(y).0 as usize).collect();
    (lattice, table)
}

/// The complex algebra of `frame` as an algebra of `kind`.
pub fn cm(frame: &Frame, kind: AlgebraKind) -> Result<ComplexAlgebra, DualityError> {
    check_frame(frame, kind)?;
    let labels = frame.point_labels();
    let n = labels.len();
    let out = match frame {
        Frame::Plain { rel, .. } => {
            let (lattice, op) = if matches!(kind, AlgebraKind::Possibility | AlgebraKind::Monadic) {
                let (l, t) = powerset_op(labels, |y| possibility_op(rel, y).expect("subset of the carrier"));
                (l, OperatorTable::new("f", t))
            } else {
                let (l, t) = powerset_op(labels, |y| sufficiency_op(rel, y).expect("subset of the carrier"));
                (l, OperatorTable::new("g", t))
            };
            let algebra = FiniteAlgebra::new(kind, lattice, vec![op], vec![], vec![])?;
            ComplexAlgebra { algebra, sets: PointSet::all_subsets(n).collect() }
        }
        Frame::Ordered(p) => {
            let (lattice, sets) = FiniteLattice::up_sets(p);
            let index: HashMap<PointSet, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let full = p.all();
            let ops = match kind {
                AlgebraKind::Bdl => vec![],
                AlgebraKind::Rdsa => {
                    let (min, max) = p.extremal_points();
                    let star = sets
                        .iter()
                        .map(|&y| index[&p.down_closure(max.intersection(y)).complement(n)])
                        .collect();
                    let plus = sets
                        .iter()
                        .map(|&y| index[&p.up_closure(min.intersection(y)).complement(n)])
                        .collect();
                    vec![OperatorTable::new("star", star), OperatorTable::new("plus", plus)]
                }
                _ => {
                    let (star, plus) = pointwise_pseudocomplements(p, &sets, &index);
                    vec![OperatorTable::new("star", star), OperatorTable::new("plus", plus)]
                }
            };
            debug_assert!(sets.iter().all(|s| s.is_subset(full)));
            ComplexAlgebra { algebra: FiniteAlgebra::new(kind, lattice, ops, vec![], vec![])?, sets }
        }
        Frame::DeMorgan { poset, neg } => {
            let (lattice, sets) = FiniteLattice::up_sets(poset);
            let index: HashMap<PointSet, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let mut table = Vec::with_capacity(sets.len());
            for &y in &sets {
                let image: PointSet = y.iter().map(|x| neg[x]).collect();
                let z = image.complement(n);
                match index.get(&z) {
                    Some(&i) => table.push(i),
                    None => return Err(DualityError::Alarm(format!("-N[Y] is not an up-set for Y = {:?}", y))),
                }
            }
            let algebra = FiniteAlgebra::new(kind, lattice, vec![OperatorTable::new("neg", table)], vec![], vec![])?;
            ComplexAlgebra { algebra, sets }
        }
        Frame::RoughRelational(r) => rra::cm_rra(r)?,
    };
    let report = check_kind(&out.algebra, kind)?;
    if let Some(v) = report.violations.first() {
        return Err(DualityError::Alarm(format!(
            "complex algebra of a {kind} frame fails {}{}",
            v.law,
            fmt_witness(&v.witness)
        )));
    }
    Ok(out)
}

/// `Y* = {y : ↑y ∩ Y = ∅}` and `Y⁺ = {y : ↓y ∩ −Y ≠ ∅}` on up-sets.
pub(crate) fn pointwise_pseudocomplements(
    p: &Poset,
    sets: &[PointSet],
    index: &HashMap<PointSet, usize>,
) -> (Vec<usize>, Vec<usize>) {
    let n = p.len();
    let star = sets
        .iter()
        .map(|&y| index[&(0..n).filter(|&x| !p.principal_up(x).intersects(y)).collect()])
        .collect();
    let plus = sets
        .iter()
        .map(|&y| index[&(0..n).filter(|&x| p.principal_down(x).intersects(y.complement(n))).collect()])
        .collect();
    (star, plus)
}

fn require_kind(a: &FiniteAlgebra, kind: AlgebraKind) -> Result<(), DualityError> {
    let report = check_kind(a, kind)?;
    if let Some(v) = report.violations.into_iter().next() {
        return Err(DualityError::Precondition { kind, law: v.law, witness: v.witness });
    }
    Ok(())
}

/// The canonical structure of `a` as a frame of `kind`.
pub fn cs(a: &FiniteAlgebra, kind: AlgebraKind) -> Result<CanonicalFrame, DualityError> {
    require_kind(a, kind)?;
    if kind == AlgebraKind::R2a {
        return rra::cs_rra(a);
    }
    let l = a.lattice();
    let filters = if kind.is_boolean() { ultrafilters(l)? } else { prime_filters(l)? };
    let labels: Vec<String> = filters.iter().map(|f| f.label(l)).collect();
    let m = filters.len();
    let frame = match kind {
        AlgebraKind::Possibility | AlgebraKind::Monadic => {
            let f = a.op("f");
            // F θ G iff f[G] ⊆ F
            let succ = (0..m)
                .map(|i| (0..m).filter(|&j| filters[j].members.ones().all(|x| filters[i].contains(f[x]))).collect())
                .collect();
            Frame::plain(labels, BinaryRelation::from_successors(succ))?
        }
        AlgebraKind::Sufficiency | AlgebraKind::Diversity => {
            let g = a.op("g");
            // F R G iff g[G] ∩ F ≠ ∅
            let succ = (0..m)
                .map(|i| (0..m).filter(|&j| filters[j].members.ones().any(|x| filters[i].contains(g[x]))).collect())
                .collect();
            Frame::plain(labels, BinaryRelation::from_successors(succ))?
        }
        AlgebraKind::Bdl | AlgebraKind::Dsa | AlgebraKind::Rdsa => Frame::Ordered(filter_poset(labels, &filters)?),
        AlgebraKind::DeMorgan => {
            let neg = a.op("neg");
            let mut table = Vec::with_capacity(m);
            for f in &filters {
                // N(F) = L ∖ ¬[F]
                let mut image = fixedbitset::FixedBitSet::with_capacity(l.len());
                for x in f.members.ones() {
                    image.insert(neg[x]);
                }
                image.toggle_range(..);
                match filters.iter().position(|g| g.members == image) {
                    Some(j) => table.push(j),
                    None => {
                        return Err(DualityError::Alarm(format!(
                            "N of prime filter {} is not a prime filter",
                            f.label(l)
                        )))
                    }
                }
            }
            Frame::de_morgan(filter_poset(labels, &filters)?, table)?
        }
        AlgebraKind::R2a => unreachable!(),
    };
    if let Err(e) = check_frame(&frame, kind) {
        return Err(DualityError::Alarm(format!("canonical structure is not a {kind} frame: {e}")));
    }
    Ok(CanonicalFrame { frame, filters })
}

/// Filters ordered by inclusion.
pub(crate) fn filter_poset(labels: Vec<String>, filters: &[Filter]) -> Result<Poset, DualityError> {
    let up = filters
        .iter()
        .map(|f| (0..filters.len()).filter(|&j| f.members.is_subset(&filters[j].members)).collect())
        .collect();
    Ok(Poset::from_up_sets(labels, up)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn total2() -> Frame {
        Frame::plain(names(&["1", "2"]), BinaryRelation::from_code(2, 0b1111)).unwrap()
    }

    #[test]
    fn monadic_complex_algebra() {
        let c = cm(&total2(), AlgebraKind::Monadic).unwrap();
        assert_eq!(c.algebra.len(), 4);
        let f = c.algebra.unary("f").unwrap();
        assert_eq!(c.algebra.label(f.apply(1)), "{1,2}");
    }

    #[test]
    fn rdsa_complex_algebra_of_two_chain() {
        let p = Poset::chain(&["a", "b"]);
        let c = cm(&Frame::Ordered(p), AlgebraKind::Rdsa).unwrap();
        assert_eq!(c.algebra.labels(), ["{}", "{b}", "{a,b}"]);
        let star = c.algebra.unary("star").unwrap();
        let plus = c.algebra.unary("plus").unwrap();
        assert_eq!(c.algebra.label(star.apply(1)), "{}");
        assert_eq!(c.algebra.label(plus.apply(1)), "{a,b}");
    }

    #[test]
    fn de_morgan_complex_algebra_of_antichain() {
        let f = Frame::de_morgan(Poset::antichain(&["a", "b"]), vec![1, 0]).unwrap();
        let c = cm(&f, AlgebraKind::DeMorgan).unwrap();
        let a = c.algebra.lattice().index_of("{a}").unwrap();
        assert_eq!(c.algebra.label(c.algebra.unary("neg").unwrap().apply(a)), "{a}");
    }

    #[test]
    fn frame_kind_mismatch() {
        assert!(matches!(cm(&total2(), AlgebraKind::Rdsa), Err(DualityError::KindMismatch(_))));
        let not_eq = Frame::plain(names(&["1", "2"]), BinaryRelation::new(2, &[(0, 1)]).unwrap()).unwrap();
        let e = cm(&not_eq, AlgebraKind::Monadic).unwrap_err();
        assert!(matches!(e, DualityError::FrameInvariant { ref law, .. } if law == "frame.reflexive"));
    }

    #[test]
    fn rds_rejects_three_chain_at_the_bottom() {
        let e = check_frame(&Frame::Ordered(Poset::chain(&["a", "b", "c"])), AlgebraKind::Rdsa).unwrap_err();
        assert_eq!(
            e,
            DualityError::FrameInvariant { law: "frame.RDS".into(), witness: vec![("x".into(), "a".into())] }
        );
    }

    #[test]
    fn v_shape_is_not_an_rdsa_frame() {
        // a < c, b < c: at most one element strictly above each point, yet the
        // dual Stone identity fails in the up-set lattice.
        let p = Poset::from_labeled(&["a", "b", "c"], &[("a", "a"), ("b", "b"), ("c", "c"), ("a", "c"), ("b", "c")]).unwrap();
        assert!(check_frame(&Frame::Ordered(p.clone()), AlgebraKind::Rdsa).is_err());
        let (l, _) = FiniteLattice::up_sets(&p);
        let (star, plus) = l.pseudocomplement_tables().unwrap();
        let a = FiniteAlgebra::new(
            AlgebraKind::Dsa,
            l,
            vec![OperatorTable::new("star", star), OperatorTable::new("plus", plus)],
            vec![],
            vec![],
        )
        .unwrap();
        let r = check_kind(&a, AlgebraKind::Dsa).unwrap();
        assert!(r.violated("dsa.dual-stone").is_some());
    }

    #[test]
    fn canonical_structures() {
        let c = cm(&total2(), AlgebraKind::Monadic).unwrap();
        let s = cs(&c.algebra, AlgebraKind::Monadic).unwrap();
        assert_eq!(s.filters.len(), 2);
        let rel = s.frame.relation().unwrap();
        assert_eq!(rel.pairs().len(), 4);

        let l = crate::algebra::derive_join_meet(&Poset::chain(&["0", "a", "1"])).unwrap();
        let (star, plus) = l.pseudocomplement_tables().unwrap();
        let a = FiniteAlgebra::new(
            AlgebraKind::Rdsa,
            l,
            vec![OperatorTable::new("star", star), OperatorTable::new("plus", plus)],
            vec![],
            vec![],
        )
        .unwrap();
        let s = cs(&a, AlgebraKind::Rdsa).unwrap();
        let p = s.frame.poset().unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.labels(), ["{1,a}", "{1}"]);
        // ↑1 ⊆ ↑a
        assert!(p.leq(1, 0) && !p.leq(0, 1));

        let two = FiniteAlgebra::new(
            AlgebraKind::DeMorgan,
            FiniteLattice::powerset(&["1"]),
            vec![OperatorTable::new("neg", vec![1, 0])],
            vec![],
            vec![],
        )
        .unwrap();
        let s = cs(&two, AlgebraKind::DeMorgan).unwrap();
        match s.frame {
            Frame::DeMorgan { neg, .. } => assert_eq!(neg, vec![0]),
            _ => panic!("expected a De Morgan frame"),
        }
    }

    #[test]
    fn cs_requires_the_kind_laws() {
        let l = crate::algebra::derive_join_meet(&Poset::chain(&["0", "a", "b", "1"])).unwrap();
        let (star, plus) = l.pseudocomplement_tables().unwrap();
        let a = FiniteAlgebra::new(
            AlgebraKind::Rdsa,
            l,
            vec![OperatorTable::new("star", star), OperatorTable::new("plus", plus)],
            vec![],
            vec![],
        )
        .unwrap();
        let e = cs(&a, AlgebraKind::Rdsa).unwrap_err();
        assert!(matches!(e, DualityError::Precondition { ref law, .. } if law == "rdsa.M"));
    }

    /// All labelled posets on up to four points, filtered from every relation.
    fn small_posets(max: usize) -> Vec<Poset> {
        let mut out = Vec::new();
        for n in 0..=max {
            let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            for code in 0..1u64 << (n * n) {
                let up = (0..n).map(|x| PointSet(code >> (x * n) & ((1 << n) - 1))).collect();
                if let Ok(p) = Poset::from_up_sets(labels.clone(), up) {
                    out.push(p);
                }
            }
        }
        out
    }

    #[test]
    fn dsa_frame_condition_characterises_double_stone_complex_algebras() {
        for p in small_posets(4) {
            let (l, sets) = FiniteLattice::up_sets(&p);
            let index: HashMap<PointSet, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let (star, plus) = pointwise_pseudocomplements(&p, &sets, &index);
            assert_eq!(Some((star.clone(), plus.clone())), l.pseudocomplement_tables());
            let a = FiniteAlgebra::new(
                AlgebraKind::Dsa,
                l,
                vec![OperatorTable::new("star", star), OperatorTable::new("plus", plus)],
                vec![],
                vec![],
            )
            .unwrap();
            let is_dsa = check_kind(&a, AlgebraKind::Dsa).unwrap().passed();
            assert_eq!(is_dsa, dsa_frame_violation(&p).is_none(), "{p:?}");
        }
    }

    #[test]
    fn rds_frames_are_exactly_the_regular_ones() {
        for p in small_posets(4) {
            let frame = Frame::Ordered(p.clone());
            let rds = check_frame(&frame, AlgebraKind::Rdsa).is_ok();
            if rds {
                assert!(cm(&frame, AlgebraKind::Rdsa).is_ok());
            }
            if dsa_frame_violation(&p).is_none() {
                let c = cm(&frame, AlgebraKind::Dsa).unwrap();
                let regular = check_kind(&c.algebra.with_kind(AlgebraKind::Rdsa).unwrap(), AlgebraKind::Rdsa)
                    .unwrap()
                    .passed();
                assert_eq!(regular, rds, "{p:?}");
            }
        }
    }
}
