use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::AlgebraError;
use crate::labels::set_literal;
use crate::order::Poset;
use crate::pointset::PointSet;

/// A finite bounded lattice stored as operation tables over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
    atoms: Option<Vec<String>>,
}

impl FiniteLattice {
    /// Derives join and meet tables from an order given as a predicate.
    pub fn from_order(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::Unbounded("empty carrier".into()));
        }
        let mut m = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = leq(a, b);
            }
        }
        for a in 0..n {
            if !m[a * n + a] {
                return Err(AlgebraError::NotPartialOrder(format!("`{}` is not below itself", labels[a])));
            }
            for b in 0..n {
                if a != b && m[a * n + b] && m[b * n + a] {
                    return Err(AlgebraError::NotPartialOrder(format!(
                        "`{}` and `{}` are mutually below each other",
                        labels[a], labels[b]
                    )));
                }
                if m[a * n + b] {
                    for c in 0..n {
                        if m[b * n + c] && !m[a * n + c] {
                            return Err(AlgebraError::NotPartialOrder(format!(
                                "`{}` <= `{}` <= `{}` but not `{}` <= `{}`",
                                labels[a], labels[b], labels[c], labels[a], labels[c]
                            )));
                        }
                    }
                }
            }
        }
        let bound = |a: usize, b: usize, upper: bool| -> Result<usize, AlgebraError> {
            let below = |x: usize, y: usize| if upper { m[x * n + y] } else { m[y * n + x] };
            let candidates: Vec<usize> = (0..n).filter(|&c| below(a, c) && below(b, c)).collect();
            let what = if upper { "upper" } else { "lower" };
            if candidates.is_empty() {
                return Err(AlgebraError::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    reason: format!("no {what} bound"),
                });
            }
            candidates
                .iter()
                .copied()
                .find(|&c| candidates.iter().all(|&d| below(c, d)))
                .ok_or_else(|| AlgebraError::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    reason: format!("no least {what} bound"),
                })
        };
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let j = bound(a, b, true)?;
                let mt = bound(a, b, false)?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = mt;
                meet[b * n + a] = mt;
            }
        }
        let bottom = (0..n)
            .find(|&x| (0..n).all(|y| m[x * n + y]))
            .ok_or_else(|| AlgebraError::Unbounded("no least element".into()))?;
        let top = (0..n)
            .find(|&x| (0..n).all(|y| m[y * n + x]))
            .ok_or_else(|| AlgebraError::Unbounded("no greatest element".into()))?;
        Ok(FiniteLattice { labels, leq: m, join, meet, bottom, top, atoms: None })
    }

    /// A family of bit-vectors closed under union and intersection, ordered by
    /// inclusion.
    pub(crate) fn from_set_family(labels: Vec<String>, keys: &[u128]) -> Result<Self, AlgebraError> {
        let n = keys.len();
        assert_eq!(labels.len(), n);
        let index: HashMap<u128, usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        if index.len() != n {
            return Err(AlgebraError::DuplicateElement("repeated set in family".into()));
        }
        let mut leq = vec![false; n * n];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = keys[a] & !keys[b] == 0;
                let j = index.get(&(keys[a] | keys[b]));
                let m = index.get(&(keys[a] & keys[b]));
                match (j, m) {
                    (Some(&j), Some(&m)) => {
                        join[a * n + b] = j;
                        meet[a * n + b] = m;
                    }
                    _ => {
                        return Err(AlgebraError::NotClosed(format!(
                            "family not closed under union/intersection at `{}`, `{}`",
                            labels[a], labels[b]
                        )))
                    }
                }
            }
        }
        let bottom = (0..n).find(|&x| (0..n).all(|y| leq[x * n + y]));
        let top = (0..n).find(|&x| (0..n).all(|y| leq[y * n + x]));
        match (bottom, top) {
            (Some(bottom), Some(top)) => Ok(FiniteLattice { labels, leq, join, meet, bottom, top, atoms: None }),
            _ => Err(AlgebraError::Unbounded("set family has no least or greatest member".into())),
        }
    }

    /// The Boolean lattice of all subsets of `atoms`; element `i` is the
    /// subset with bitmask `i`.
    pub fn powerset<S: AsRef<str>>(atoms: &[S]) -> Self {
        let atoms: Vec<String> = atoms.iter().map(|s| s.as_ref().to_string()).collect();
        assert!(atoms.len() < 16, "powerset of {} atoms is out of desk scale", atoms.len());
        let keys: Vec<u128> = (0..1u128 << atoms.len()).collect();
        let labels = keys
            .iter()
            .map(|&k| set_literal(PointSet(k as u64).iter().map(|i| atoms[i].as_str())))
            .collect();
        let mut l = FiniteLattice::from_set_family(labels, &keys).expect("powerset is a lattice");
        l.atoms = Some(atoms);
        l
    }

    /// Up-sets of a poset under union and intersection.
    pub fn up_sets(p: &Poset) -> (Self, Vec<PointSet>) {
        let sets = p.up_sets();
        let labels = sets.iter().map(|&s| set_literal(p.names(s))).collect();
        let keys: Vec<u128> = sets.iter().map(|s| s.0 as u128).collect();
        let l = FiniteLattice::from_set_family(labels, &keys).expect("up-sets form a lattice");
        (l, sets)
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

    /// Atoms this lattice was built from when it is a powerset.
    pub fn powerset_atoms(&self) -> Option<&[String]> {
        self.atoms.as_deref()
    }

    pub(crate) fn relabel(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.labels.len());
        self.labels = labels;
        self.atoms = None;
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// First triple `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.meet(a, b);
                for c in 0..n {
                    if self.meet(a, self.join(b, c)) != self.join(ab, self.meet(a, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// Some complement of `a`, if one exists.
    pub fn complement(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.meet(a, b) == self.bottom && self.join(a, b) == self.top)
    }

    /// Complement table when every element is complemented.
    pub fn complement_table(&self) -> Option<Vec<usize>> {
        (0..self.len()).map(|a| self.complement(a)).collect()
    }

    /// `a` is join-irreducible: not bottom and not the join of the elements
    /// strictly below it.
    pub fn is_join_irreducible(&self, a: usize) -> bool {
        if a == self.bottom {
            return false;
        }
        let below = (0..self.len())
            .filter(|&b| b != a && self.leq(b, a))
            .fold(self.bottom, |acc, b| self.join(acc, b));
        below != a
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.is_join_irreducible(a)).collect()
    }

    /// Minimal non-bottom elements.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| a != self.bottom && (0..self.len()).all(|b| b == a || b == self.bottom || !self.leq(b, a)))
            .collect()
    }

    /// `{b : a <= b}` as a bit set over the carrier.
    pub fn principal_filter(&self, a: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for b in 0..self.len() {
            if self.leq(a, b) {
                s.insert(b);
            }
        }
        s
    }

    /// Largest `c` with `c ∧ a = 0`, when it exists.
    pub fn pseudocomplement(&self, a: usize) -> Option<usize> {
        let c = (0..self.len())
            .filter(|&b| self.meet(a, b) == self.bottom)
            .fold(self.bottom, |acc, b| self.join(acc, b));
        (self.meet(a, c) == self.bottom).then_some(c)
    }

    /// Least `c` with `c ∨ a = 1`, when it exists.
    pub fn dual_pseudocomplement(&self, a: usize) -> Option<usize> {
        let c = (0..self.len())
            .filter(|&b| self.join(a, b) == self.top)
            .fold(self.top, |acc, b| self.meet(acc, b));
        (self.join(a, c) == self.top).then_some(c)
    }

    /// Tables of `*` and `+` when both exist everywhere.
    pub fn pseudocomplement_tables(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let star = (0..self.len()).map(|a| self.pseudocomplement(a)).collect::<Option<Vec<_>>>()?;
        let plus = (0..self.len()).map(|a| self.dual_pseudocomplement(a)).collect::<Option<Vec<_>>>()?;
        Some((star, plus))
    }
}

/// Join and meet tables of a poset that happens to be a lattice.
pub fn derive_join_meet(p: &Poset) -> Result<FiniteLattice, AlgebraError> {
    FiniteLattice::from_order(p.labels().to_vec(), |a, b| p.leq(a, b))
}
