//! Finite partial orders, closures, extremal points and the generic
//! frame-embedding check shared by every duality.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::labels::canonical_cmp;
use crate::pointset::{PointSet, MAX_POINTS};
use crate::report::CheckReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("too many points: {0} (at most {MAX_POINTS})")]
    TooLarge(usize),
    #[error("order is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order is not antisymmetric: `{0}` <= `{1}` <= `{0}`")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("embedding map is not total: no image for `{0}`")]
    NotTotal(String),
    #[error("embedding image {0} is outside the target")]
    OutOfRange(usize),
    #[error("frames have different signatures: {0}")]
    SignatureMismatch(String),
}

/// A finite partial order over opaque string identifiers.
///
/// Element `i` is identified by `labels[i]`; `up[i]` is the principal filter
/// of `i` and `down[i]` its principal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<PointSet>,
    down: Vec<PointSet>,
}

impl Poset {
    /// Builds a poset from index pairs `(x, y)` meaning `x <= y`. The pairs
    /// must already form a partial order (reflexive pairs included).
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset, OrderError> {
        let n = check_labels(&labels)?;
        let mut up = vec![PointSet::EMPTY; n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(OrderError::OutOfRange(x.max(y)));
            }
            up[x].insert(y);
        }
        Poset::from_up_sets(labels, up)
    }

    /// Like [`Poset::new`], but first closes the relation reflexively and
    /// transitively. Antisymmetry is still required.
    pub fn from_relation_closed(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset, OrderError> {
        let n = check_labels(&labels)?;
        let mut up = vec![PointSet::EMPTY; n];
        for (i, u) in up.iter_mut().enumerate() {
            u.insert(i);
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(OrderError::OutOfRange(x.max(y)));
            }
            up[x].insert(y);
        }
        // Warshall on rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        Poset::from_up_sets(labels, up)
    }

    /// Builds a poset from label pairs, reporting unknown labels.
    pub fn from_labeled(elements: &[&str], pairs: &[(&str, &str)]) -> Result<Poset, OrderError> {
        let labels: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let index = |s: &str| {
            elements
                .iter()
                .position(|e| *e == s)
                .ok_or_else(|| OrderError::UnknownElement(s.to_string()))
        };
        let idx: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<_, OrderError>>()?;
        Poset::new(labels, &idx)
    }

    pub(crate) fn from_up_sets(labels: Vec<String>, up: Vec<PointSet>) -> Result<Poset, OrderError> {
        let n = labels.len();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(OrderError::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(OrderError::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
                }
                for k in up[j].iter() {
                    if !up[i].contains(k) {
                        return Err(OrderError::NotTransitive(
                            labels[i].clone(),
                            labels[j].clone(),
                            labels[k].clone(),
                        ));
                    }
                }
            }
        }
        let mut down = vec![PointSet::EMPTY; n];
        for (i, u) in up.iter().enumerate() {
            for j in u.iter() {
                down[j].insert(i);
            }
        }
        Ok(Poset { labels, up, down })
    }

    /// Chain `0 < 1 < .. < n-1` labelled by the given names.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Poset {
        let labels: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = labels.len();
        let up = (0..n).map(|i| PointSet::full(n).difference(PointSet::full(i))).collect();
        Poset::from_up_sets(labels, up).expect("a chain is a partial order")
    }

    pub fn antichain<S: AsRef<str>>(names: &[S]) -> Poset {
        let labels: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let up = (0..labels.len()).map(PointSet::singleton).collect();
        Poset::from_up_sets(labels, up).expect("an antichain is a partial order")
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `{y : x <= y}`
    pub fn principal_up(&self, x: usize) -> PointSet {
        self.up[x]
    }

    /// `{y : y <= x}`
    pub fn principal_down(&self, x: usize) -> PointSet {
        self.down[x]
    }

    /// The order filter `{y : exists x in a, x <= y}`.
    pub fn up_closure(&self, a: PointSet) -> PointSet {
        a.iter().fold(PointSet::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    /// The order ideal `{y : exists x in a, y <= x}`.
    pub fn down_closure(&self, a: PointSet) -> PointSet {
        a.iter().fold(PointSet::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn is_up_set(&self, a: PointSet) -> bool {
        self.up_closure(a) == a
    }

    pub fn is_down_set(&self, a: PointSet) -> bool {
        self.down_closure(a) == a
    }

    /// Resolves labels to a point set, rejecting unknown elements.
    pub fn subset(&self, elements: &[&str]) -> Result<PointSet, OrderError> {
        elements
            .iter()
            .map(|e| self.index_of(e).ok_or_else(|| OrderError::UnknownElement(e.to_string())))
            .collect()
    }

    /// Labels of a point set in canonical sorted order.
    pub fn names(&self, a: PointSet) -> Vec<String> {
        sorted_names(&self.labels, a)
    }

    pub fn up_closure_of(&self, elements: &[&str]) -> Result<Vec<String>, OrderError> {
        Ok(self.names(self.up_closure(self.subset(elements)?)))
    }

    pub fn down_closure_of(&self, elements: &[&str]) -> Result<Vec<String>, OrderError> {
        Ok(self.names(self.down_closure(self.subset(elements)?)))
    }

    /// `(minimal, maximal)` elements.
    pub fn extremal_points(&self) -> (PointSet, PointSet) {
        let mut minimal = PointSet::EMPTY;
        let mut maximal = PointSet::EMPTY;
        for i in 0..self.len() {
            if self.down[i] == PointSet::singleton(i) {
                minimal.insert(i);
            }
            if self.up[i] == PointSet::singleton(i) {
                maximal.insert(i);
            }
        }
        (minimal, maximal)
    }

    /// Connected components of the comparability graph, ordered by their
    /// smallest index.
    pub fn components(&self) -> Vec<PointSet> {
        let mut seen = PointSet::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = PointSet::singleton(start);
            loop {
                let grown = comp
                    .iter()
                    .fold(comp, |acc, x| acc.union(self.up[x]).union(self.down[x]));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Every up-set, in increasing bitmask order.
    pub fn up_sets(&self) -> Vec<PointSet> {
        PointSet::all_subsets(self.len()).filter(|&a| self.is_up_set(a)).collect()
    }

    /// All pairs `x <= y`, reflexive ones included, grouped by `x`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                v.push((i, j));
            }
        }
        v
    }

    /// First element comparable to two other elements. `None` exactly when
    /// every connected component is a chain of at most two elements.
    pub fn short_chain_violation(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up[x].len() + self.down[x].len() > 3)
    }

    /// The largest element above `x` in a poset of short chains (x̄).
    pub fn top_of(&self, x: usize) -> usize {
        self.up[x].iter().find(|&y| self.up[y].len() == 1).unwrap_or(x)
    }

    /// The smallest element below `x` in a poset of short chains (x̲).
    pub fn bottom_of(&self, x: usize) -> usize {
        self.down[x].iter().find(|&y| self.down[y].len() == 1).unwrap_or(x)
    }

    /// The same order on relabelled points.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Poset, OrderError> {
        check_labels(&labels)?;
        Poset::from_up_sets(labels, self.up.clone())
    }
}

fn check_labels(labels: &[String]) -> Result<usize, OrderError> {
    if labels.len() > MAX_POINTS {
        return Err(OrderError::TooLarge(labels.len()));
    }
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(OrderError::DuplicateElement(l.clone()));
        }
    }
    Ok(labels.len())
}

pub(crate) fn sorted_names(labels: &[String], a: PointSet) -> Vec<String> {
    let mut v: Vec<String> = a.iter().map(|i| labels[i].clone()).collect();
    v.sort_by(|x, y| canonical_cmp(x, y));
    v
}

/// One named relational component of a frame.
#[derive(Clone, Debug)]
pub enum Component<'a> {
    /// `succ[x]` is the set of `y` with `x R y`.
    Binary { name: &'static str, succ: Vec<PointSet> },
    /// `table[x * n + y]` is the set of `z` with `R(x, y, z)`.
    Ternary { name: &'static str, table: &'a [PointSet] },
    Function { name: &'static str, table: &'a [usize] },
    Subset { name: &'static str, set: PointSet },
}

impl Component<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            Component::Binary { name, .. }
            | Component::Ternary { name, .. }
            | Component::Function { name, .. }
            | Component::Subset { name, .. } => name,
        }
    }

    fn arity(&self) -> &'static str {
        match self {
            Component::Binary { .. } => "binary",
            Component::Ternary { .. } => "ternary",
            Component::Function { .. } => "function",
            Component::Subset { .. } => "subset",
        }
    }
}

/// A finite relational structure: labelled points plus named components.
pub trait RelationalStructure {
    fn point_labels(&self) -> &[String];
    fn components(&self) -> Vec<Component<'_>>;
}

impl RelationalStructure for Poset {
    fn point_labels(&self) -> &[String] {
        &self.labels
    }

    fn components(&self) -> Vec<Component<'_>> {
        vec![Component::Binary { name: "leq", succ: self.up.clone() }]
    }
}

/// A candidate frame embedding `map: source -> target`.
pub struct FrameEmbeddingCandidate<'a, S: ?Sized, T: ?Sized> {
    pub map: Vec<usize>,
    pub source: &'a S,
    pub target: &'a T,
}

/// Checks that `map` is injective and preserves and reflects every component
/// of the source in the same-named component of the target.
pub fn check_frame_embedding<S, T>(c: &FrameEmbeddingCandidate<'_, S, T>) -> Result<CheckReport, OrderError>
where
    S: RelationalStructure + ?Sized,
    T: RelationalStructure + ?Sized,
{
    let src = c.source.point_labels();
    let tgt = c.target.point_labels();
    let n = src.len();
    let m = tgt.len();
    if c.map.len() < n {
        return Err(OrderError::NotTotal(src[c.map.len()].clone()));
    }
    if let Some(&bad) = c.map.iter().find(|&&t| t >= m) {
        return Err(OrderError::OutOfRange(bad));
    }
    let sc = c.source.components();
    let tc = c.target.components();
    let profile = |cs: &[Component<'_>]| -> Vec<(&'static str, &'static str)> {
        cs.iter().map(|c| (c.name(), c.arity())).collect()
    };
    if profile(&sc) != profile(&tc) {
        return Err(OrderError::SignatureMismatch(format!("{:?} vs {:?}", profile(&sc), profile(&tc))));
    }

    let k = &c.map;
    let w1 = |x: usize| vec![("x".to_string(), src[x].clone())];
    let w2 = |x: usize, y: usize| vec![("x".to_string(), src[x].clone()), ("y".to_string(), src[y].clone())];
    let mut report = CheckReport::new("frame-embedding");

    let mut injective = None;
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..n {
        if let Some(&y) = seen.get(&k[x]) {
            injective = Some(w2(y, x));
            break;
        }
        seen.insert(k[x], x);
    }
    report.record("embedding.injective", n as u64, injective);

    for (s, t) in sc.iter().zip(tc.iter()) {
        let law = format!("embedding.{}", s.name());
        match (s, t) {
            (Component::Binary { succ: r, .. }, Component::Binary { succ: q, .. }) => {
                let mut witness = None;
                'outer: for x in 0..n {
                    for y in 0..n {
                        if r[x].contains(y) != q[k[x]].contains(k[y]) {
                            witness = Some(w2(x, y));
                            break 'outer;
                        }
                    }
                }
                report.record(&law, (n * n) as u64, witness);
            }
            (Component::Ternary { table: r, .. }, Component::Ternary { table: q, .. }) => {
                let mut witness = None;
                'outer3: for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            if r[x * n + y].contains(z) != q[k[x] * m + k[y]].contains(k[z]) {
                                let mut w = w2(x, y);
                                w.push(("z".to_string(), src[z].clone()));
                                witness = Some(w);
                                break 'outer3;
                            }
                        }
                    }
                }
                report.record(&law, (n * n * n) as u64, witness);
            }
            (Component::Function { table: f, .. }, Component::Function { table: g, .. }) => {
                let witness = (0..n).find(|&x| k[f[x]] != g[k[x]]).map(w1);
                report.record(&law, n as u64, witness);
            }
            (Component::Subset { set: a, .. }, Component::Subset { set: b, .. }) => {
                let witness = (0..n).find(|&x| a.contains(x) != b.contains(k[x])).map(w1);
                report.record(&law, n as u64, witness);
            }
            _ => unreachable!("profiles were compared above"),
        }
    }
    report.fact("surjective", {
        let image: std::collections::BTreeSet<_> = k.iter().take(n).collect();
        image.len() == m
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn up_closure_examples() {
        let p = Poset::chain(&["a", "b"]);
        assert_eq!(p.up_closure_of(&["a"]).unwrap(), names(&["a", "b"]));
        assert!(p.up_closure_of(&[]).unwrap().is_empty());
        let p3 = Poset::chain(&["a", "b", "c"]);
        assert_eq!(p3.up_closure_of(&["b"]).unwrap(), names(&["b", "c"]));
        assert_eq!(p.up_closure_of(&["z"]), Err(OrderError::UnknownElement("z".into())));
    }

    #[test]
    fn down_closure_examples() {
        let p = Poset::chain(&["a", "b"]);
        assert_eq!(p.down_closure_of(&["b"]).unwrap(), names(&["a", "b"]));
        assert!(p.down_closure_of(&[]).unwrap().is_empty());
        let q = Poset::antichain(&["a", "b"]);
        assert_eq!(q.down_closure_of(&["a"]).unwrap(), names(&["a"]));
    }

    #[test]
    fn extremal_examples() {
        let q = Poset::antichain(&["a", "b"]);
        assert_eq!(q.extremal_points(), (q.all(), q.all()));
        let p = Poset::chain(&["a", "b"]);
        assert_eq!(p.extremal_points(), (PointSet::singleton(0), PointSet::singleton(1)));
        let e = Poset::antichain::<&str>(&[]);
        assert_eq!(e.extremal_points(), (PointSet::EMPTY, PointSet::EMPTY));
    }

    #[test]
    fn rejects_non_posets_unless_closure_requested() {
        let l = names(&["a", "b", "c"]);
        let err = Poset::new(l.clone(), &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).unwrap_err();
        assert!(matches!(err, OrderError::NotTransitive(..)));
        let err = Poset::new(l.clone(), &[(0, 1)]).unwrap_err();
        assert!(matches!(err, OrderError::NotReflexive(..)));
        let p = Poset::from_relation_closed(l.clone(), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        let err = Poset::from_relation_closed(l, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, OrderError::NotAntisymmetric(..)));
    }

    #[test]
    fn embedding_examples() {
        let c2 = Poset::chain(&["a", "b"]);
        let c3 = Poset::chain(&["x", "y", "z"]);
        let id = FrameEmbeddingCandidate { map: vec![0, 1], source: &c2, target: &c2 };
        let r = check_frame_embedding(&id).unwrap();
        assert!(r.passed());
        assert_eq!(r.fact_value("surjective"), Some("true"));

        let collapse = FrameEmbeddingCandidate { map: vec![0, 0], source: &c2, target: &c3 };
        let r = check_frame_embedding(&collapse).unwrap();
        let v = r.violated("embedding.injective").expect("injectivity witness");
        assert_eq!(v.witness, vec![("x".into(), "a".into()), ("y".into(), "b".into())]);

        let bottom = FrameEmbeddingCandidate { map: vec![0, 1], source: &c2, target: &c3 };
        let r = check_frame_embedding(&bottom).unwrap();
        assert!(r.passed());
        assert_eq!(r.fact_value("surjective"), Some("false"));

        let partial = FrameEmbeddingCandidate { map: vec![0], source: &c2, target: &c3 };
        assert_eq!(check_frame_embedding(&partial).unwrap_err(), OrderError::NotTotal("b".into()));
    }

    fn arb_poset() -> impl Strategy<Value = Poset> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..10).prop_filter_map("cyclic", move |pairs| {
                // Orient every pair upward so the closure is antisymmetric.
                let pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
                let labels = (0..n).map(|i| i.to_string()).collect();
                Poset::from_relation_closed(labels, &pairs).ok()
            })
        })
    }

    proptest! {
        #[test]
        fn closures_are_idempotent_and_monotone(p in arb_poset(), a in any::<u64>(), b in any::<u64>()) {
            let a = PointSet(a).intersection(p.all());
            let b = PointSet(b).intersection(p.all()).union(a);
            prop_assert_eq!(p.up_closure(p.up_closure(a)), p.up_closure(a));
            prop_assert_eq!(p.down_closure(p.down_closure(a)), p.down_closure(a));
            prop_assert!(p.up_closure(a).is_subset(p.up_closure(b)));
            prop_assert!(p.down_closure(a).is_subset(p.down_closure(b)));
        }

        #[test]
        fn every_point_lies_between_extremal_points(p in arb_poset()) {
            let (min, max) = p.extremal_points();
            for x in 0..p.len() {
                prop_assert!(p.principal_down(x).intersects(min));
                prop_assert!(p.principal_up(x).intersects(max));
            }
        }

        #[test]
        fn identity_always_embeds(p in arb_poset()) {
            let c = FrameEmbeddingCandidate { map: (0..p.len()).collect(), source: &p, target: &p };
            prop_assert!(check_frame_embedding(&c).unwrap().passed());
        }
    }
}
