use fixedbitset::FixedBitSet;

use super::{AlgebraError, FiniteLattice};
use crate::labels::set_literal;

/// A principal filter `↑generator` of a finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filter {
    pub generator: usize,
    pub members: FixedBitSet,
}

impl Filter {
    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    /// Set literal of the member labels, used as a point label in canonical
    /// structures.
    pub fn label(&self, l: &FiniteLattice) -> String {
        set_literal(self.members.ones().map(|i| l.label(i)))
    }
}

/// Every filter of a finite lattice is principal, so the proper filters are
/// exactly `↑a` for `a ≠ 0`.
fn proper_filters(l: &FiniteLattice) -> Vec<Filter> {
    (0..l.len())
        .filter(|&a| a != l.bottom())
        .map(|a| Filter { generator: a, members: l.principal_filter(a) })
        .collect()
}

fn is_prime(l: &FiniteLattice, f: &Filter) -> bool {
    let outside: Vec<usize> = (0..l.len()).filter(|&x| !f.contains(x)).collect();
    outside
        .iter()
        .all(|&x| outside.iter().all(|&y| !f.contains(l.join(x, y))))
}

/// Prime filters of a bounded distributive lattice, ordered by generator.
pub fn prime_filters(l: &FiniteLattice) -> Result<Vec<Filter>, AlgebraError> {
    if let Some((a, b, c)) = l.distributivity_witness() {
        return Err(AlgebraError::NotDistributive(
            l.label(a).to_string(),
            l.label(b).to_string(),
            l.label(c).to_string(),
        ));
    }
    prime_filters_unchecked(l)
}

/// Prime filters without the distributivity precondition check. The result
/// is still cross-checked against the join-irreducible elements.
pub(crate) fn prime_filters_unchecked(l: &FiniteLattice) -> Result<Vec<Filter>, AlgebraError> {
    let primes: Vec<Filter> = proper_filters(l).into_iter().filter(|f| is_prime(l, f)).collect();
    let generators: Vec<usize> = primes.iter().map(|f| f.generator).collect();
    if generators != l.join_irreducibles() {
        return Err(AlgebraError::Inconsistent(format!(
            "prime filters are generated by {:?}, join-irreducibles are {:?}",
            generators,
            l.join_irreducibles()
        )));
    }
    Ok(primes)
}

/// Maximal proper filters of a finite Boolean lattice.
pub fn ultrafilters(l: &FiniteLattice) -> Result<Vec<Filter>, AlgebraError> {
    if let Some(a) = (0..l.len()).find(|&a| l.complement(a).is_none()) {
        return Err(AlgebraError::NotBoolean(l.label(a).to_string()));
    }
    if let Some((a, b, c)) = l.distributivity_witness() {
        return Err(AlgebraError::NotDistributive(
            l.label(a).to_string(),
            l.label(b).to_string(),
            l.label(c).to_string(),
        ));
    }
    ultrafilters_unchecked(l)
}

pub(crate) fn ultrafilters_unchecked(l: &FiniteLattice) -> Result<Vec<Filter>, AlgebraError> {
    let proper = proper_filters(l);
    let maximal: Vec<Filter> = proper
        .iter()
        .filter(|f| {
            !proper
                .iter()
                .any(|g| g.generator != f.generator && f.members.is_subset(&g.members))
        })
        .cloned()
        .collect();
    let generators: Vec<usize> = maximal.iter().map(|f| f.generator).collect();
    if generators != l.atoms() {
        return Err(AlgebraError::Inconsistent(format!(
            "ultrafilters are generated by {:?}, atoms are {:?}",
            generators,
            l.atoms()
        )));
    }
    Ok(maximal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::derive_join_meet;
    use crate::order::Poset;

    /// Oracle: every subset of the carrier that is a proper, upward closed,
    /// meet closed, prime set.
    fn brute_prime_filters(l: &FiniteLattice) -> Vec<Vec<usize>> {
        let n = l.len();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let has = |x: usize| mask >> x & 1 == 1;
            if has(l.bottom()) {
                continue;
            }
            let up = (0..n).all(|x| !has(x) || (0..n).all(|y| !l.leq(x, y) || has(y)));
            let meets = (0..n).all(|x| (0..n).all(|y| !(has(x) && has(y)) || has(l.meet(x, y))));
            let prime = (0..n).all(|x| (0..n).all(|y| !has(l.join(x, y)) || has(x) || has(y)));
            if up && meets && prime {
                out.push((0..n).filter(|&x| has(x)).collect());
            }
        }
        out.sort();
        out
    }

    fn members(fs: &[Filter]) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = fs.iter().map(|f| f.members.ones().collect()).collect();
        v.sort();
        v
    }

    #[test]
    fn two_element_lattice_has_one_prime_filter() {
        let l = derive_join_meet(&Poset::chain(&["0", "1"])).unwrap();
        let fs = prime_filters(&l).unwrap();
        assert_eq!(members(&fs), vec![vec![1]]);
    }

    #[test]
    fn three_chain_prime_filters() {
        let l = derive_join_meet(&Poset::chain(&["0", "a", "1"])).unwrap();
        let fs = prime_filters(&l).unwrap();
        assert_eq!(members(&fs), vec![vec![1, 2], vec![2]]);
        assert_eq!(members(&fs), brute_prime_filters(&l));
    }

    #[test]
    fn powerset_prime_filters_sit_at_atoms() {
        let l = FiniteLattice::powerset(&["x", "y"]);
        let fs = prime_filters(&l).unwrap();
        assert_eq!(fs.iter().map(|f| f.generator).collect::<Vec<_>>(), l.atoms());
        assert_eq!(members(&fs), brute_prime_filters(&l));
    }

    #[test]
    fn ultrafilter_counts() {
        assert_eq!(ultrafilters(&FiniteLattice::powerset(&["1", "2", "3"])).unwrap().len(), 3);
        assert_eq!(ultrafilters(&FiniteLattice::powerset(&["1"])).unwrap().len(), 1);
        assert_eq!(ultrafilters(&FiniteLattice::powerset(&["1", "2"])).unwrap().len(), 2);
    }

    #[test]
    fn preconditions_are_enforced() {
        let chain = derive_join_meet(&Poset::chain(&["0", "a", "1"])).unwrap();
        assert!(matches!(ultrafilters(&chain), Err(AlgebraError::NotBoolean(_))));
        let m3 = Poset::from_relation_closed(
            ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect(),
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap();
        let l = derive_join_meet(&m3).unwrap();
        assert!(matches!(prime_filters(&l), Err(AlgebraError::NotDistributive(..))));
    }

    #[test]
    fn prime_filters_match_brute_force_on_up_set_lattices() {
        for p in crate::enumerate::enumerate_posets(3, true, 4).unwrap() {
            let (l, _) = FiniteLattice::up_sets(&p);
            let fs = prime_filters(&l).unwrap();
            assert_eq!(members(&fs), brute_prime_filters(&l));
            assert_eq!(fs.len(), l.join_irreducibles().len());
        }
    }
}
