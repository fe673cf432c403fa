use super::laws::{run_laws, Domain, Law};
use super::{AlgebraError, AlgebraKind, FiniteAlgebra};
use crate::report::CheckReport;

/// Checks that `h` is an injective homomorphism `a → b` for the signature of
/// `kind`. The fact `surjective` records whether `h` is onto.
pub fn check_embedding(
    h: &[usize],
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    kind: AlgebraKind,
) -> Result<CheckReport, AlgebraError> {
    if h.len() != a.len() || h.iter().any(|&y| y >= b.len()) {
        return Err(AlgebraError::NotTotal {
            op: "embedding".into(),
            detail: format!("map must send all {} source elements into {} target elements", a.len(), b.len()),
        });
    }
    for (side, alg) in [("source", a), ("target", b)] {
        if !alg.supports(kind) {
            return Err(AlgebraError::SignatureMismatch(format!("{side} lacks the operations of kind {kind}")));
        }
    }
    let (la, lb) = (a.lattice(), b.lattice());
    let mut laws = vec![
        Law::new("embedding.injective", &["a", "b"], move |v| v[0] == v[1] || h[v[0]] != h[v[1]]),
        Law::new("embedding.join", &["a", "b"], move |v| h[la.join(v[0], v[1])] == lb.join(h[v[0]], h[v[1]])),
        Law::new("embedding.meet", &["a", "b"], move |v| h[la.meet(v[0], v[1])] == lb.meet(h[v[0]], h[v[1]])),
        Law::new("embedding.bottom", &[], move |_| h[la.bottom()] == lb.bottom()),
        Law::new("embedding.top", &[], move |_| h[la.top()] == lb.top()),
    ];
    if kind.is_boolean() {
        let ca = la.complement_table().ok_or_else(|| AlgebraError::NotBoolean("source".into()))?;
        let cb = lb.complement_table().ok_or_else(|| AlgebraError::NotBoolean("target".into()))?;
        laws.push(Law::new("embedding.complement", &["a"], move |v| h[ca[v[0]]] == cb[h[v[0]]]));
    }
    for &op in kind.unary_ops() {
        let (fa, fb) = (a.op(op), b.op(op));
        laws.push(Law::new(format!("embedding.{op}"), &["a"], move |v| h[fa[v[0]]] == fb[h[v[0]]]));
    }
    for &op in kind.binary_ops() {
        let (fa, fb) = (a.binop(op), b.binop(op));
        laws.push(Law::new(format!("embedding.{op}"), &["a", "b"], move |v| {
            h[fa.apply(v[0], v[1])] == fb.apply(h[v[0]], h[v[1]])
        }));
    }
    for &c in kind.constants() {
        let (ca, cb) = (a.cons(c), b.cons(c));
        laws.push(Law::new(format!("embedding.{c}"), &[], move |_| h[ca] == cb));
    }
    let mut report = CheckReport::new("embedding");
    run_laws(&mut report, a.labels(), &laws, &Domain::Exhaustive);
    let mut hit = vec![false; b.len()];
    for &y in h {
        hit[y] = true;
    }
    report.fact("surjective", hit.iter().all(|&x| x));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteLattice, OperatorTable};

    fn monadic(atoms: &[&str], f: Vec<usize>) -> FiniteAlgebra {
        FiniteAlgebra::new(AlgebraKind::Monadic, FiniteLattice::powerset(atoms), vec![OperatorTable::new("f", f)], vec![], vec![])
            .unwrap()
    }

    #[test]
    fn identity_is_an_isomorphism() {
        let a = monadic(&["1", "2"], vec![0, 3, 3, 3]);
        let r = check_embedding(&[0, 1, 2, 3], &a, &a, AlgebraKind::Monadic).unwrap();
        assert!(r.passed());
        assert_eq!(r.fact_value("surjective"), Some("true"));
    }

    #[test]
    fn constant_map_is_not_injective() {
        let a = monadic(&["1"], vec![0, 1]);
        let r = check_embedding(&[0, 0], &a, &a, AlgebraKind::Monadic).unwrap();
        let v = r.violated("embedding.injective").unwrap();
        assert_eq!(v.witness, vec![("a".into(), "{}".into()), ("b".into(), "{1}".into())]);
    }

    #[test]
    fn two_element_algebra_into_four_element_one() {
        let a = monadic(&["1"], vec![0, 1]);
        let b = monadic(&["1", "2"], vec![0, 1, 2, 3]);
        let r = check_embedding(&[0, 3], &a, &b, AlgebraKind::Monadic).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.fact_value("surjective"), Some("false"));
    }

    #[test]
    fn partial_map_is_a_domain_error() {
        let a = monadic(&["1"], vec![0, 1]);
        assert!(matches!(check_embedding(&[0], &a, &a, AlgebraKind::Monadic), Err(AlgebraError::NotTotal { .. })));
        assert!(matches!(check_embedding(&[0, 7], &a, &a, AlgebraKind::Monadic), Err(AlgebraError::NotTotal { .. })));
    }

    #[test]
    fn operation_preservation_is_checked() {
        let a = monadic(&["1", "2"], vec![0, 3, 3, 3]);
        let b = monadic(&["1", "2"], vec![0, 1, 2, 3]);
        let r = check_embedding(&[0, 1, 2, 3], &a, &b, AlgebraKind::Monadic).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].law, "embedding.f");
    }
}
