//! Approximation spaces, rough sets, and the operators induced by a relation.

use thiserror::Error;

use crate::algebra::{AlgebraKind, FiniteAlgebra, FiniteLattice, OperatorTable};
use crate::labels::{set_literal, tuple_literal};
use crate::pointset::{PointSet, MAX_POINTS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApproxError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("universe of {0} points exceeds the limit of {MAX_POINTS}")]
    TooLarge(usize),
    #[error("subset is not contained in the universe")]
    NotASubset,
    #[error("not a rough set of this space: {0}")]
    InvalidRoughSet(String),
    #[error("carrier mismatch: {0} vs {1} points")]
    CarrierMismatch(usize, usize),
}

/// A finite universe partitioned into the classes of an equivalence θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationSpace {
    labels: Vec<String>,
    blocks: Vec<PointSet>,
    block_of: Vec<usize>,
}

impl ApproximationSpace {
    pub fn new(labels: Vec<String>, blocks: Vec<PointSet>) -> Result<Self, ApproxError> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(ApproxError::TooLarge(n));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(ApproxError::DuplicateElement(l.clone()));
            }
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(ApproxError::NotAPartition("empty class".into()));
            }
            for x in block.iter() {
                if x >= n {
                    return Err(ApproxError::NotAPartition(format!("class element #{x} outside the universe")));
                }
                if block_of[x] != usize::MAX {
                    return Err(ApproxError::NotAPartition(format!("`{}` lies in two classes", labels[x])));
                }
                block_of[x] = b;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(ApproxError::NotAPartition(format!("`{}` lies in no class", labels[x])));
        }
        Ok(ApproximationSpace { labels, blocks, block_of })
    }

    pub fn from_labeled(universe: &[&str], classes: &[&[&str]]) -> Result<Self, ApproxError> {
        let labels: Vec<String> = universe.iter().map(|s| s.to_string()).collect();
        let blocks = classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|e| universe.iter().position(|u| u == e).ok_or_else(|| ApproxError::UnknownElement(e.to_string())))
                    .collect::<Result<PointSet, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        ApproximationSpace::new(labels, blocks)
    }

    /// θ = identity.
    pub fn discrete(labels: Vec<String>) -> Result<Self, ApproxError> {
        let blocks = (0..labels.len()).map(PointSet::singleton).collect();
        ApproximationSpace::new(labels, blocks)
    }

    /// θ = X × X.
    pub fn indiscrete(labels: Vec<String>) -> Result<Self, ApproxError> {
        let blocks = if labels.is_empty() { vec![] } else { vec![PointSet::full(labels.len())] };
        ApproximationSpace::new(labels, blocks)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    pub fn universe(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// θ(x).
    pub fn class_of(&self, x: usize) -> PointSet {
        self.blocks[self.block_of[x]]
    }

    pub fn subset(&self, elements: &[&str]) -> Result<PointSet, ApproxError> {
        elements
            .iter()
            .map(|e| self.labels.iter().position(|l| l == e).ok_or_else(|| ApproxError::UnknownElement(e.to_string())))
            .collect()
    }

    pub fn names(&self, a: PointSet) -> Vec<String> {
        crate::order::sorted_names(&self.labels, a)
    }

    pub fn set_label(&self, a: PointSet) -> String {
        set_literal(self.names(a))
    }

    /// θ as a binary relation.
    pub fn relation(&self) -> BinaryRelation {
        BinaryRelation { n: self.len(), succ: (0..self.len()).map(|x| self.class_of(x)).collect() }
    }

    /// A union of classes.
    pub fn is_definable(&self, y: PointSet) -> bool {
        self.blocks.iter().all(|b| b.is_subset(y) || !b.intersects(y))
    }

    fn check_subset(&self, y: PointSet) -> Result<(), ApproxError> {
        if y.is_subset(self.universe()) {
            Ok(())
        } else {
            Err(ApproxError::NotASubset)
        }
    }

    pub fn rough_set_label(&self, r: RoughSet) -> String {
        tuple_literal([self.set_label(r.lower), self.set_label(r.upper)])
    }
}

/// A pair ⟨lower, upper⟩ of definable sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoughSet {
    pub lower: PointSet,
    pub upper: PointSet,
}

impl RoughSet {
    /// Validates that the pair is ⟨Y̲, Y̅⟩ for some Y: both components are
    /// definable, lower ⊆ upper, and no singleton class lies in the boundary.
    pub fn new(s: &ApproximationSpace, lower: PointSet, upper: PointSet) -> Result<Self, ApproxError> {
        let r = RoughSet { lower, upper };
        r.validate(s)?;
        Ok(r)
    }

    pub fn validate(&self, s: &ApproximationSpace) -> Result<(), ApproxError> {
        s.check_subset(self.upper)?;
        if !self.lower.is_subset(self.upper) {
            return Err(ApproxError::InvalidRoughSet("lower is not contained in upper".into()));
        }
        if !s.is_definable(self.lower) || !s.is_definable(self.upper) {
            return Err(ApproxError::InvalidRoughSet("a component is not a union of classes".into()));
        }
        let boundary = self.upper.difference(self.lower);
        if let Some(b) = s.blocks.iter().find(|b| b.is_subset(boundary) && b.len() < 2) {
            return Err(ApproxError::InvalidRoughSet(format!("singleton class {} in the boundary", s.set_label(*b))));
        }
        Ok(())
    }

    /// Bit key `lower | upper << 64` used for lattice construction.
    pub(crate) fn key(self) -> u128 {
        self.lower.0 as u128 | (self.upper.0 as u128) << 64
    }
}

/// ⟨Y̲, Y̅⟩ with Y̲ = {x : θ(x) ⊆ Y} and Y̅ = {x : θ(x) ∩ Y ≠ ∅}.
pub fn approximations(s: &ApproximationSpace, y: PointSet) -> Result<RoughSet, ApproxError> {
    s.check_subset(y)?;
    let mut r = RoughSet { lower: PointSet::EMPTY, upper: PointSet::EMPTY };
    for &b in &s.blocks {
        if b.is_subset(y) {
            r.lower = r.lower.union(b);
        }
        if b.intersects(y) {
            r.upper = r.upper.union(b);
        }
    }
    Ok(r)
}

fn check_pair(s: &ApproximationSpace, a: RoughSet, b: RoughSet) -> Result<(), ApproxError> {
    a.validate(s)?;
    b.validate(s)
}

pub fn rough_join(s: &ApproximationSpace, a: RoughSet, b: RoughSet) -> Result<RoughSet, ApproxError> {
    check_pair(s, a, b)?;
    Ok(RoughSet { lower: a.lower.union(b.lower), upper: a.upper.union(b.upper) })
}

pub fn rough_meet(s: &ApproximationSpace, a: RoughSet, b: RoughSet) -> Result<RoughSet, ApproxError> {
    check_pair(s, a, b)?;
    Ok(RoughSet { lower: a.lower.intersection(b.lower), upper: a.upper.intersection(b.upper) })
}

/// ⟨X ∖ upper, X ∖ upper⟩.
pub fn rough_star(s: &ApproximationSpace, a: RoughSet) -> Result<RoughSet, ApproxError> {
    a.validate(s)?;
    let c = a.upper.complement(s.len());
    Ok(RoughSet { lower: c, upper: c })
}

/// ⟨X ∖ lower, X ∖ lower⟩.
pub fn rough_plus(s: &ApproximationSpace, a: RoughSet) -> Result<RoughSet, ApproxError> {
    a.validate(s)?;
    let c = a.lower.complement(s.len());
    Ok(RoughSet { lower: c, upper: c })
}

/// All rough sets of `s`. Each class is outside, in the boundary (only when
/// it has at least two points) or inside; the first class varies fastest,
/// in that order.
pub fn rough_sets(s: &ApproximationSpace) -> Vec<RoughSet> {
    let mut out = vec![RoughSet { lower: PointSet::EMPTY, upper: PointSet::EMPTY }];
    for &b in &s.blocks {
        let mut next = Vec::with_capacity(out.len() * 3);
        for r in &out {
            next.push(*r);
            if b.len() >= 2 {
                next.push(RoughSet { lower: r.lower, upper: r.upper.union(b) });
            }
            next.push(RoughSet { lower: r.lower.union(b), upper: r.upper.union(b) });
        }
        out = next;
    }
    let radix: Vec<usize> = s.blocks.iter().map(|b| if b.len() >= 2 { 3 } else { 2 }).collect();
    let digit = |r: &RoughSet, b: PointSet| -> usize {
        if b.is_subset(r.lower) {
            2
        } else if b.is_subset(r.upper) {
            1
        } else {
            0
        }
    };
    let rank = |r: &RoughSet| -> u128 {
        s.blocks.iter().zip(&radix).rev().fold(0u128, |acc, (&b, &k)| {
            let d = digit(r, b);
            let d = if k == 2 && d == 2 { 1 } else { d };
            acc * k as u128 + d as u128
        })
    };
    out.sort_by_key(rank);
    out
}

/// The full algebra of rough sets of `s` (kind RDSA) and its elements in
/// carrier order.
pub fn build_rough_set_algebra(s: &ApproximationSpace) -> (FiniteAlgebra, Vec<RoughSet>) {
    let elements = rough_sets(s);
    let keys: Vec<u128> = elements.iter().map(|r| r.key()).collect();
    let labels = elements.iter().map(|&r| s.rough_set_label(r)).collect();
    let lattice = FiniteLattice::from_set_family(labels, &keys).expect("rough sets form a lattice");
    let index: std::collections::HashMap<u128, usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let op = |f: fn(&ApproximationSpace, RoughSet) -> Result<RoughSet, ApproxError>| -> Vec<usize> {
        elements
            .iter()
            .map(|&r| index[&f(s, r).expect("valid rough set").key()])
            .collect()
    };
    let star = op(rough_star);
    let plus = op(rough_plus);
    let algebra = FiniteAlgebra::new(
        AlgebraKind::Rdsa,
        lattice,
        vec![OperatorTable::new("star", star), OperatorTable::new("plus", plus)],
        vec![],
        vec![],
    )
    .expect("rough set operations are total");
    (algebra, elements)
}

/// ⟨X², θ²⟩ where (x,y) θ² (x′,y′) iff x θ x′ and y θ y′. Point `(x,y)` has
/// index `x·n + y`.
pub fn lift_square(s: &ApproximationSpace) -> Result<ApproximationSpace, ApproxError> {
    let n = s.len();
    if n * n > MAX_POINTS {
        return Err(ApproxError::TooLarge(n * n));
    }
    let labels = (0..n * n)
        .map(|i| tuple_literal([s.labels[i / n].as_str(), s.labels[i % n].as_str()]))
        .collect();
    let mut blocks = Vec::new();
    for &bx in &s.blocks {
        for &by in &s.blocks {
            blocks.push(bx.iter().flat_map(|x| by.iter().map(move |y| x * n + y)).collect());
        }
    }
    ApproximationSpace::new(labels, blocks)
}

/// A binary relation on `0..n`, stored as successor sets `R(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryRelation {
    n: usize,
    succ: Vec<PointSet>,
}

impl BinaryRelation {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, ApproxError> {
        if n > MAX_POINTS {
            return Err(ApproxError::TooLarge(n));
        }
        let mut succ = vec![PointSet::EMPTY; n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(ApproxError::UnknownElement(format!("#{}", x.max(y))));
            }
            succ[x].insert(y);
        }
        Ok(BinaryRelation { n, succ })
    }

    pub fn from_successors(succ: Vec<PointSet>) -> Self {
        let n = succ.len();
        assert!(succ.iter().all(|s| s.is_subset(PointSet::full(n))));
        BinaryRelation { n, succ }
    }

    /// The relation whose pair `(x, y)` is bit `x·n + y` of `code`.
    pub fn from_code(n: usize, code: u64) -> Self {
        assert!(n * n <= MAX_POINTS);
        let row = (1u64 << n) - 1;
        BinaryRelation { n, succ: (0..n).map(|x| PointSet(code >> (x * n) & row)).collect() }
    }

    pub fn carrier_len(&self) -> usize {
        self.n
    }

    /// R(x).
    pub fn image(&self, x: usize) -> PointSet {
        self.succ[x]
    }

    pub fn successors(&self) -> &[PointSet] {
        &self.succ
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.succ[x].contains(y)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|x| self.succ[x].iter().map(move |y| (x, y))).collect()
    }

    /// X² ∖ R.
    pub fn complement(&self) -> Self {
        BinaryRelation { n: self.n, succ: self.succ.iter().map(|s| s.complement(self.n)).collect() }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|x| !self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().into_iter().all(|(x, y)| self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|x| self.succ[x].iter().all(|y| self.succ[y].is_subset(self.succ[x])))
    }

    /// x R y implies x R z or z R y, for every z.
    pub fn is_cotransitive(&self) -> bool {
        self.pairs()
            .into_iter()
            .all(|(x, y)| (0..self.n).all(|z| self.contains(x, z) || self.contains(z, y)))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    fn check_subset(&self, y: PointSet) -> Result<(), ApproxError> {
        if y.is_subset(PointSet::full(self.n)) {
            Ok(())
        } else {
            Err(ApproxError::NotASubset)
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), ApproxError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(ApproxError::CarrierMismatch(self.n, other.n))
        }
    }
}

/// ⟨R⟩(Y) = {x : R(x) ∩ Y ≠ ∅}.
pub fn possibility_op(r: &BinaryRelation, y: PointSet) -> Result<PointSet, ApproxError> {
    r.check_subset(y)?;
    Ok((0..r.n).filter(|&x| r.succ[x].intersects(y)).collect())
}

/// [R](Y) = {x : R(x) ⊆ Y}.
pub fn necessity_op(r: &BinaryRelation, y: PointSet) -> Result<PointSet, ApproxError> {
    r.check_subset(y)?;
    Ok((0..r.n).filter(|&x| r.succ[x].is_subset(y)).collect())
}

/// [[R]](Y) = {x : Y ⊆ R(x)}.
pub fn sufficiency_op(r: &BinaryRelation, y: PointSet) -> Result<PointSet, ApproxError> {
    r.check_subset(y)?;
    Ok((0..r.n).filter(|&x| y.is_subset(r.succ[x])).collect())
}

/// {(x,y) : ∃z x R z ∧ z S y}.
pub fn rel_compose(r: &BinaryRelation, s: &BinaryRelation) -> Result<BinaryRelation, ApproxError> {
    r.check_same(s)?;
    let succ = r
        .succ
        .iter()
        .map(|rx| rx.iter().fold(PointSet::EMPTY, |acc, z| acc.union(s.succ[z])))
        .collect();
    Ok(BinaryRelation { n: r.n, succ })
}

pub fn rel_converse(r: &BinaryRelation) -> BinaryRelation {
    let mut succ = vec![PointSet::EMPTY; r.n];
    for (x, y) in r.pairs() {
        succ[y].insert(x);
    }
    BinaryRelation { n: r.n, succ }
}

pub fn identity_rel(n: usize) -> BinaryRelation {
    BinaryRelation { n, succ: (0..n).map(PointSet::singleton).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(v: &[usize]) -> Vec<String> {
        v.iter().map(|i| i.to_string()).collect()
    }

    fn space(n: usize, classes: &[&[usize]]) -> ApproximationSpace {
        ApproximationSpace::new(
            names(&(1..=n).collect::<Vec<_>>()),
            classes.iter().map(|c| c.iter().map(|x| x - 1).collect()).collect(),
        )
        .unwrap()
    }

    fn set(v: &[usize]) -> PointSet {
        v.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn approximations_of_two_blocks() {
        let s = space(4, &[&[1, 2], &[3, 4]]);
        let r = approximations(&s, set(&[1, 2, 3])).unwrap();
        assert_eq!(r, RoughSet { lower: set(&[1, 2]), upper: set(&[1, 2, 3, 4]) });
        assert_eq!(approximations(&s, PointSet::EMPTY).unwrap(), RoughSet { lower: PointSet::EMPTY, upper: PointSet::EMPTY });
        let d = set(&[1, 2]);
        assert_eq!(approximations(&s, d).unwrap(), RoughSet { lower: d, upper: d });
        assert_eq!(approximations(&s, PointSet(1 << 9)), Err(ApproxError::NotASubset));
    }

    #[test]
    fn space_validation() {
        let e = ApproximationSpace::from_labeled(&["1"], &[&["2"]]).unwrap_err();
        assert_eq!(e, ApproxError::UnknownElement("2".into()));
        assert!(matches!(
            ApproximationSpace::from_labeled(&["1", "2"], &[&["1"]]),
            Err(ApproxError::NotAPartition(_))
        ));
        assert!(matches!(
            ApproximationSpace::from_labeled(&["1", "2"], &[&["1", "2"], &["2"]]),
            Err(ApproxError::NotAPartition(_))
        ));
    }

    #[test]
    fn modal_operators() {
        let total = BinaryRelation::new(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(possibility_op(&total, set(&[1])).unwrap(), set(&[1, 2]));
        assert_eq!(possibility_op(&total, PointSet::EMPTY).unwrap(), PointSet::EMPTY);
        let empty = BinaryRelation::new(2, &[]).unwrap();
        assert_eq!(possibility_op(&empty, set(&[1, 2])).unwrap(), PointSet::EMPTY);
        let theta = space(4, &[&[1, 2], &[3, 4]]).relation();
        assert_eq!(necessity_op(&theta, set(&[1, 2, 3])).unwrap(), set(&[1, 2]));
        assert_eq!(necessity_op(&theta, set(&[1, 2, 3, 4])).unwrap(), set(&[1, 2, 3, 4]));
        assert_eq!(necessity_op(&empty, PointSet::EMPTY).unwrap(), set(&[1, 2]));
    }

    #[test]
    fn sufficiency_operator() {
        let r = BinaryRelation::new(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(sufficiency_op(&r, PointSet::EMPTY).unwrap(), set(&[1, 2]));
        assert_eq!(sufficiency_op(&r, set(&[1, 2])).unwrap(), set(&[1]));
        let total = BinaryRelation::from_code(2, 0b1111);
        assert_eq!(sufficiency_op(&total, set(&[2])).unwrap(), set(&[1, 2]));
    }

    #[test]
    fn rough_lattice_operations() {
        let s = space(4, &[&[1, 2], &[3, 4]]);
        let bot = RoughSet { lower: PointSet::EMPTY, upper: PointSet::EMPTY };
        let top = RoughSet { lower: s.universe(), upper: s.universe() };
        let a = RoughSet::new(&s, PointSet::EMPTY, set(&[1, 2])).unwrap();
        let b = RoughSet::new(&s, set(&[3, 4]), set(&[3, 4])).unwrap();
        assert_eq!(rough_join(&s, a, bot).unwrap(), a);
        assert_eq!(rough_meet(&s, a, top).unwrap(), a);
        assert_eq!(rough_join(&s, a, b).unwrap(), RoughSet { lower: set(&[3, 4]), upper: s.universe() });
        let other = space(2, &[&[1], &[2]]);
        let c = RoughSet { lower: set(&[1]), upper: set(&[1]) };
        assert!(rough_join(&other, c, a).is_err());
    }

    #[test]
    fn rough_pseudocomplements() {
        let s = space(3, &[&[1, 2], &[3]]);
        let bot = RoughSet { lower: PointSet::EMPTY, upper: PointSet::EMPTY };
        let top = RoughSet { lower: s.universe(), upper: s.universe() };
        assert_eq!(rough_star(&s, bot).unwrap(), top);
        assert_eq!(rough_plus(&s, top).unwrap(), bot);
        let a = RoughSet::new(&s, PointSet::EMPTY, set(&[1, 2])).unwrap();
        assert_eq!(rough_star(&s, a).unwrap(), RoughSet { lower: set(&[3]), upper: set(&[3]) });
        assert_eq!(rough_plus(&s, a).unwrap(), top);
        assert!(RoughSet::new(&s, PointSet::EMPTY, set(&[3])).is_err());
    }

    #[test]
    fn rough_set_algebras_of_small_spaces() {
        let (a, _) = build_rough_set_algebra(&space(1, &[&[1]]));
        assert_eq!(a.len(), 2);
        let (a, els) = build_rough_set_algebra(&space(2, &[&[1, 2]]));
        assert_eq!(a.labels(), ["({},{})", "({},{1,2})", "({1,2},{1,2})"]);
        assert_eq!(els.len(), 3);
        assert!((0..3).all(|i| (0..3).all(|j| a.lattice().leq(i, j) == (i <= j))));
        let (a, _) = build_rough_set_algebra(&space(2, &[&[1], &[2]]));
        assert_eq!(a.len(), 4);
        assert!(a.lattice().complement_table().is_some());
        assert!(crate::algebra::check_kind(&a, AlgebraKind::Rdsa).unwrap().passed());
    }

    #[test]
    fn lifted_spaces() {
        let id = space(2, &[&[1], &[2]]);
        let l = lift_square(&id).unwrap();
        assert_eq!(l.len(), 4);
        assert!(l.blocks().iter().all(|b| b.len() == 1));
        let one = space(2, &[&[1, 2]]);
        assert_eq!(lift_square(&one).unwrap().blocks(), [PointSet::full(4)]);
        let l = lift_square(&space(3, &[&[1, 2], &[3]])).unwrap();
        assert_eq!(l.blocks().len(), 4);
        assert_eq!(l.labels()[5], "(2,3)");
        let sizes: Vec<usize> = l.blocks().iter().map(|b| b.len()).collect();
        assert_eq!(sizes, [4, 2, 2, 1]);
    }

    #[test]
    fn relational_operations() {
        let r = BinaryRelation::new(3, &[(0, 1)]).unwrap();
        let s = BinaryRelation::new(3, &[(1, 2)]).unwrap();
        assert_eq!(rel_compose(&r, &s).unwrap().pairs(), [(0, 2)]);
        assert_eq!(rel_compose(&r, &identity_rel(3)).unwrap(), r);
        assert_eq!(rel_converse(&rel_converse(&s)), s);
        assert_eq!(rel_compose(&r, &identity_rel(2)), Err(ApproxError::CarrierMismatch(3, 2)));
    }

    /// Every partition of `0..n` as a block list, by brute force over
    /// block-assignment vectors.
    fn partitions(n: usize) -> Vec<ApproximationSpace> {
        let mut out = Vec::new();
        let total = (n.max(1)).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let assign: Vec<usize> = (0..n)
                .map(|_| {
                    let d = c % n.max(1);
                    c /= n.max(1);
                    d
                })
                .collect();
            // restricted growth: keep the first occurrence order canonical
            let mut max = 0;
            let ok = assign.iter().enumerate().all(|(i, &a)| {
                let fine = i == 0 && a == 0 || i > 0 && a <= max + 1;
                if a > max {
                    max = a;
                }
                fine
            });
            if !ok {
                continue;
            }
            let k = assign.iter().max().map_or(0, |m| m + 1);
            let blocks = (0..k).map(|b| (0..n).filter(|&x| assign[x] == b).collect()).collect();
            out.push(ApproximationSpace::new(names(&(0..n).collect::<Vec<_>>()), blocks).unwrap());
        }
        out
    }

    #[test]
    fn membership_criterion_matches_the_image_of_approximations() {
        for n in 0..=5 {
            for s in partitions(n) {
                let mut image: Vec<RoughSet> =
                    PointSet::all_subsets(n).map(|y| approximations(&s, y).unwrap()).collect();
                image.sort();
                image.dedup();
                let mut criterion: Vec<RoughSet> = PointSet::all_subsets(n)
                    .flat_map(|l| PointSet::all_subsets(n).map(move |u| RoughSet { lower: l, upper: u }))
                    .filter(|r| r.validate(&s).is_ok())
                    .collect();
                criterion.sort();
                let mut built = rough_sets(&s);
                built.sort();
                assert_eq!(image, criterion);
                assert_eq!(image, built);
            }
        }
    }

    #[test]
    fn approximations_are_the_theta_modalities() {
        for n in 0..=5 {
            for s in partitions(n) {
                let theta = s.relation();
                for y in PointSet::all_subsets(n) {
                    let r = approximations(&s, y).unwrap();
                    assert!(r.lower.is_subset(y) && y.is_subset(r.upper));
                    assert_eq!(r.upper, possibility_op(&theta, y).unwrap());
                    assert_eq!(r.lower, necessity_op(&theta, y).unwrap());
                    let comp = possibility_op(&theta, y.complement(n)).unwrap().complement(n);
                    assert_eq!(r.lower, comp);
                }
            }
        }
    }

    #[test]
    fn sufficiency_is_necessity_of_the_complement() {
        for n in 0..=3 {
            for code in 0..1u64 << (n * n) {
                let r = BinaryRelation::from_code(n, code);
                let c = r.complement();
                for y in PointSet::all_subsets(n) {
                    assert_eq!(sufficiency_op(&r, y).unwrap(), necessity_op(&c, y.complement(n)).unwrap());
                }
            }
        }
    }

    #[test]
    fn rough_set_algebras_are_rdsas() {
        for n in 0..=4 {
            for s in partitions(n) {
                if n == 0 {
                    continue;
                }
                let (a, _) = build_rough_set_algebra(&s);
                assert!(crate::algebra::check_kind(&a, AlgebraKind::Rdsa).unwrap().passed());
            }
        }
    }

    proptest! {
        #[test]
        fn composition_is_associative(n in 1usize..5, a: u64, b: u64, c: u64) {
            let mask = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };
            let (r, s, t) = (
                BinaryRelation::from_code(n, a & mask),
                BinaryRelation::from_code(n, b & mask),
                BinaryRelation::from_code(n, c & mask),
            );
            let left = rel_compose(&rel_compose(&r, &s).unwrap(), &t).unwrap();
            let right = rel_compose(&r, &rel_compose(&s, &t).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(rel_compose(&identity_rel(n), &r).unwrap(), r.clone());
            prop_assert_eq!(rel_compose(&r, &identity_rel(n)).unwrap(), r);
        }
    }
}
