//! Operator transformations on Boolean lattices.

use super::laws::{possibility_laws, run_laws, sufficiency_laws, Domain};
use super::{AlgebraError, FiniteLattice, OperatorTable};
use crate::report::CheckReport;

fn complements(l: &FiniteLattice) -> Result<Vec<usize>, AlgebraError> {
    (0..l.len())
        .map(|a| l.complement(a).ok_or_else(|| AlgebraError::NotBoolean(l.label(a).to_string())))
        .collect()
}

fn check_total(l: &FiniteLattice, f: &OperatorTable) -> Result<(), AlgebraError> {
    if f.table.len() != l.len() || f.table.iter().any(|&v| v >= l.len()) {
        return Err(AlgebraError::NotTotal {
            op: f.name.clone(),
            detail: format!("expected {} entries within the carrier", l.len()),
        });
    }
    Ok(())
}

/// `f∂(a) = −f(−a)`.
pub fn dual_operator(l: &FiniteLattice, f: &OperatorTable) -> Result<OperatorTable, AlgebraError> {
    check_total(l, f)?;
    let c = complements(l)?;
    let table = (0..l.len()).map(|a| c[f.table[c[a]]]).collect();
    Ok(OperatorTable::new(format!("{}_dual", f.name), table))
}

/// `g⋆` together with the sufficiency verdict on `g` and the possibility
/// verdict on `g⋆`. These two verdicts always agree.
#[derive(Clone, Debug)]
pub struct StarOperator {
    pub table: OperatorTable,
    pub sufficiency: CheckReport,
    pub possibility: CheckReport,
}

impl StarOperator {
    pub fn verdicts_agree(&self) -> bool {
        self.sufficiency.passed() == self.possibility.passed()
    }
}

/// `g⋆(a) = −g(a)`.
pub fn star_operator(l: &FiniteLattice, g: &OperatorTable) -> Result<StarOperator, AlgebraError> {
    check_total(l, g)?;
    let c = complements(l)?;
    let table: Vec<usize> = g.table.iter().map(|&v| c[v]).collect();
    let mut sufficiency = CheckReport::new(format!("{}.sufficiency", g.name));
    run_laws(&mut sufficiency, l.labels(), &sufficiency_laws(l, &g.table, "sufficiency"), &Domain::Exhaustive);
    let mut possibility = CheckReport::new(format!("{}_star.possibility", g.name));
    run_laws(&mut possibility, l.labels(), &possibility_laws(l, &table, "possibility"), &Domain::Exhaustive);
    if sufficiency.passed() != possibility.passed() {
        possibility
            .alarms
            .push(format!("`{}` and its star disagree on sufficiency/possibility", g.name));
    }
    Ok(StarOperator { table: OperatorTable::new(format!("{}_star", g.name), table), sufficiency, possibility })
}

/// Normality and additivity, stopping at the first failure.
pub fn is_possibility_operator(l: &FiniteLattice, f: &[usize]) -> bool {
    let n = l.len();
    f[l.bottom()] == l.bottom() && (0..n).all(|a| (a..n).all(|b| f[l.join(a, b)] == l.join(f[a], f[b])))
}

/// Co-normality and co-additivity, stopping at the first failure.
pub fn is_sufficiency_operator(l: &FiniteLattice, g: &[usize]) -> bool {
    let n = l.len();
    g[l.bottom()] == l.top() && (0..n).all(|a| (a..n).all(|b| g[l.join(a, b)] == l.meet(g[a], g[b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_kind, AlgebraKind, FiniteAlgebra};
    use proptest::prelude::*;

    fn p2() -> FiniteLattice {
        FiniteLattice::powerset(&["1", "2"])
    }

    #[test]
    fn dual_of_identity_is_identity() {
        let l = p2();
        let id = OperatorTable::new("f", vec![0, 1, 2, 3]);
        assert_eq!(dual_operator(&l, &id).unwrap().table, id.table);
    }

    #[test]
    fn dual_of_total_possibility() {
        let l = p2();
        let f = OperatorTable::new("f", vec![0, 3, 3, 3]);
        // −f(−{1}) = −f({2}) = ∅
        assert_eq!(dual_operator(&l, &f).unwrap().table[1], 0);
    }

    #[test]
    fn dual_of_constant_top() {
        let l = p2();
        let f = OperatorTable::new("f", vec![0, 3, 3, 3]);
        assert_eq!(dual_operator(&l, &f).unwrap().table, vec![0, 0, 0, 3]);
    }

    #[test]
    fn dual_needs_complements() {
        let l = crate::algebra::derive_join_meet(&crate::order::Poset::chain(&["0", "a", "1"])).unwrap();
        let f = OperatorTable::new("f", vec![0, 1, 2]);
        assert!(matches!(dual_operator(&l, &f), Err(AlgebraError::NotBoolean(_))));
    }

    #[test]
    fn star_of_empty_relation_operator() {
        let l = p2();
        // [[∅]] is constant-top
        let g = OperatorTable::new("g", vec![3; 4]);
        let s = star_operator(&l, &g).unwrap();
        assert_eq!(s.table.table, vec![0; 4]);
        assert!(s.possibility.passed());
        assert!(s.sufficiency.passed());
    }

    #[test]
    fn star_keeps_normality() {
        let l = p2();
        let g = OperatorTable::new("g", vec![3, 0, 0, 0]);
        let s = star_operator(&l, &g).unwrap();
        assert_eq!(s.table.table[0], 0);
        assert!(s.verdicts_agree());
        assert!(s.sufficiency.passed());
    }

    #[test]
    fn star_of_total_relation_matches_complement_relation() {
        // [[R]] with R total on {1,2} is constant-top; its star is ⟨∅⟩, and
        // ∅ is the complement of the total relation.
        let l = p2();
        let universe = [0usize, 1];
        let total = |_: usize, _: usize| true;
        let suff: Vec<usize> = (0..4u64)
            .map(|y| {
                universe
                    .iter()
                    .filter(|&&x| (0..2).filter(|&z| y >> z & 1 == 1).all(|z| total(x, z)))
                    .fold(0usize, |acc, &x| acc | 1 << x)
            })
            .collect();
        let poss_comp: Vec<usize> = (0..4u64)
            .map(|y| {
                universe
                    .iter()
                    .filter(|&&x| (0..2).any(|z| y >> z & 1 == 1 && !total(x, z)))
                    .fold(0usize, |acc, &x| acc | 1 << x)
            })
            .collect();
        let s = star_operator(&l, &OperatorTable::new("g", suff)).unwrap();
        assert_eq!(s.table.table, poss_comp);
    }

    #[test]
    fn fast_predicates_agree_with_law_checker_on_two_atoms() {
        let l = p2();
        for code in 0..256usize {
            let t: Vec<usize> = (0..4).map(|i| code >> (2 * i) & 3).collect();
            let a = FiniteAlgebra::new(AlgebraKind::Possibility, l.clone(), vec![OperatorTable::new("f", t.clone())], vec![], vec![])
                .unwrap();
            assert_eq!(is_possibility_operator(&l, &t), check_kind(&a, AlgebraKind::Possibility).unwrap().passed());
            let a = FiniteAlgebra::new(AlgebraKind::Sufficiency, l.clone(), vec![OperatorTable::new("g", t.clone())], vec![], vec![])
                .unwrap();
            assert_eq!(is_sufficiency_operator(&l, &t), check_kind(&a, AlgebraKind::Sufficiency).unwrap().passed());
        }
    }

    proptest! {
        #[test]
        fn dual_is_an_involution(t in proptest::collection::vec(0usize..8, 8)) {
            let l = FiniteLattice::powerset(&["1", "2", "3"]);
            let f = OperatorTable::new("f", t.clone());
            let dd = dual_operator(&l, &dual_operator(&l, &f).unwrap()).unwrap();
            prop_assert_eq!(dd.table, t);
        }

        #[test]
        fn star_is_an_involution_pointwise(t in proptest::collection::vec(0usize..8, 8)) {
            let l = FiniteLattice::powerset(&["1", "2", "3"]);
            let s = star_operator(&l, &OperatorTable::new("g", t.clone())).unwrap();
            let back = star_operator(&l, &s.table).unwrap();
            prop_assert_eq!(back.table.table, t);
            prop_assert!(s.verdicts_agree());
        }
    }
}
