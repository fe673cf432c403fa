//! Exhaustive law evaluation and the per-kind axiom sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{AlgebraError, AlgebraKind, FiniteAlgebra, FiniteLattice};
use crate::report::{CheckReport, EvalMode};

type Test<'a> = Box<dyn Fn(&[usize]) -> bool + Send + Sync + 'a>;

/// A universally quantified law over the carrier.
pub(crate) struct Law<'a> {
    pub name: String,
    pub vars: &'static [&'static str],
    pub test: Test<'a>,
}

impl<'a> Law<'a> {
    pub fn new(
        name: impl Into<String>,
        vars: &'static [&'static str],
        test: impl Fn(&[usize]) -> bool + Send + Sync + 'a,
    ) -> Self {
        Law { name: name.into(), vars, test: Box::new(test) }
    }
}

/// Which assignments a law is evaluated on.
#[derive(Clone, Debug)]
pub(crate) enum Domain {
    Exhaustive,
    /// Laws with at least `min_vars` variables run on every tuple of
    /// `generators` plus `samples` seeded random tuples; smaller laws stay
    /// exhaustive.
    Sampled { generators: Vec<usize>, samples: usize, seed: u64, min_vars: usize },
}

const A: &[&str] = &[];
const V1: &[&str] = &["a"];
const V2: &[&str] = &["a", "b"];
const V3: &[&str] = &["a", "b", "c"];

/// Calls `visit` on every tuple over `values` of length `k` in odometer
/// order (first variable slowest). Stops when `visit` returns `false`, and
/// returns whether every visit succeeded.
fn for_each_tuple(values: &[usize], k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if k == 0 {
        return visit(&[]);
    }
    if values.is_empty() {
        return true;
    }
    let mut idx = vec![0usize; k];
    let mut tuple: Vec<usize> = vec![values[0]; k];
    loop {
        if !visit(&tuple) {
            return false;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < values.len() {
                tuple[pos] = values[idx[pos]];
                break;
            }
            idx[pos] = 0;
            tuple[pos] = values[0];
        }
    }
}

fn evaluate(n: usize, law: &Law<'_>, domain: &Domain) -> (u64, Option<Vec<usize>>, bool) {
    let k = law.vars.len();
    let mut count = 0u64;
    let mut witness = None;
    let mut check = |t: &[usize]| {
        count += 1;
        if (law.test)(t) {
            true
        } else {
            witness = Some(t.to_vec());
            false
        }
    };
    match domain {
        Domain::Sampled { generators, samples, seed, min_vars } if k >= *min_vars && n > 0 => {
            if for_each_tuple(generators, k, &mut check) {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut t = vec![0; k];
                for _ in 0..*samples {
                    for v in t.iter_mut() {
                        *v = rng.gen_range(0..n);
                    }
                    if !check(&t) {
                        break;
                    }
                }
            }
            (count, witness, true)
        }
        _ => {
            let all: Vec<usize> = (0..n).collect();
            for_each_tuple(&all, k, &mut check);
            (count, witness, false)
        }
    }
}

/// Evaluates `laws` (in parallel) and records them in order.
pub(crate) fn run_laws(report: &mut CheckReport, labels: &[String], laws: &[Law<'_>], domain: &Domain) {
    let n = labels.len();
    let results: Vec<_> = laws.par_iter().map(|law| evaluate(n, law, domain)).collect();
    for (law, (count, witness, sampled)) in laws.iter().zip(results) {
        let witness = witness.map(|t| {
            law.vars
                .iter()
                .zip(t)
                .map(|(v, x)| (v.to_string(), labels[x].clone()))
                .collect()
        });
        report.record(&law.name, count, witness);
        if sampled {
            if let Domain::Sampled { samples, .. } = domain {
                report.mode = EvalMode::Sampled { samples: *samples };
            }
        }
    }
}

/// The first element without a complement, or the complement table.
fn complements(l: &FiniteLattice) -> Result<Vec<usize>, usize> {
    (0..l.len()).map(|a| l.complement(a).ok_or(a)).collect()
}

pub(crate) fn distributive_law<'a>(l: &'a FiniteLattice, p: &str) -> Law<'a> {
    Law::new(format!("{p}.distributive"), V3, move |v| {
        let (a, b, c) = (v[0], v[1], v[2]);
        l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c))
    })
}

pub(crate) fn possibility_laws<'a>(l: &'a FiniteLattice, f: &'a [usize], p: &str) -> Vec<Law<'a>> {
    vec![
        Law::new(format!("{p}.K1"), A, move |_| f[l.bottom()] == l.bottom()),
        Law::new(format!("{p}.K2"), V2, move |v| f[l.join(v[0], v[1])] == l.join(f[v[0]], f[v[1]])),
    ]
}

pub(crate) fn sufficiency_laws<'a>(l: &'a FiniteLattice, g: &'a [usize], p: &str) -> Vec<Law<'a>> {
    vec![
        Law::new(format!("{p}.co-normality"), A, move |_| g[l.bottom()] == l.top()),
        Law::new(format!("{p}.co-additivity"), V2, move |v| g[l.join(v[0], v[1])] == l.meet(g[v[0]], g[v[1]])),
    ]
}

fn monadic_laws<'a>(l: &'a FiniteLattice, f: &'a [usize], c: &'a [usize], p: &str) -> Vec<Law<'a>> {
    let dual = move |x: usize| c[f[c[x]]];
    vec![
        Law::new(format!("{p}.T"), V1, move |v| l.leq(v[0], f[v[0]])),
        Law::new(format!("{p}.4"), V1, move |v| l.leq(f[f[v[0]]], f[v[0]])),
        Law::new(format!("{p}.B"), V1, move |v| f[v[0]] == dual(f[v[0]])),
    ]
}

fn monadic_derived<'a>(l: &'a FiniteLattice, f: &'a [usize], c: &'a [usize], p: &str) -> Vec<Law<'a>> {
    let dual = move |x: usize| c[f[c[x]]];
    let zero = l.bottom();
    vec![
        Law::new(format!("{p}.derived.A5"), V1, move |v| l.leq(v[0], dual(f[v[0]]))),
        Law::new(format!("{p}.derived.adjoint"), V2, move |v| {
            l.leq(f[v[0]], v[1]) == l.leq(v[0], dual(v[1]))
        }),
        Law::new(format!("{p}.derived.conjugate"), V2, move |v| {
            (l.meet(v[0], f[v[1]]) == zero) == (l.meet(f[v[0]], v[1]) == zero)
        }),
        Law::new(format!("{p}.derived.cylindric"), V2, move |v| {
            f[l.meet(v[0], f[v[1]])] == l.meet(f[v[0]], f[v[1]])
        }),
    ]
}

fn diversity_laws<'a>(l: &'a FiniteLattice, g: &'a [usize], c: &'a [usize], p: &str) -> Vec<Law<'a>> {
    vec![
        Law::new(format!("{p}.Div1"), V1, move |v| l.leq(g[v[0]], c[v[0]])),
        Law::new(format!("{p}.Div2"), V1, move |v| l.leq(v[0], g[g[v[0]]])),
        Law::new(format!("{p}.Div3"), V1, move |v| l.leq(g[v[0]], g[c[g[v[0]]]])),
    ]
}

/// Double Stone laws; pseudocomplements are checked through their defining
/// adjunctions.
pub(crate) fn dsa_laws<'a>(l: &'a FiniteLattice, star: &'a [usize], plus: &'a [usize], p: &str) -> Vec<Law<'a>> {
    let (zero, one) = (l.bottom(), l.top());
    vec![
        distributive_law(l, p),
        Law::new(format!("{p}.pseudocomplement"), V2, move |v| {
            l.leq(v[1], star[v[0]]) == (l.meet(v[1], v[0]) == zero)
        }),
        Law::new(format!("{p}.dual-pseudocomplement"), V2, move |v| {
            l.leq(plus[v[0]], v[1]) == (l.join(v[1], v[0]) == one)
        }),
        Law::new(format!("{p}.stone"), V1, move |v| l.join(star[v[0]], star[star[v[0]]]) == one),
        Law::new(format!("{p}.dual-stone"), V1, move |v| l.meet(plus[v[0]], plus[plus[v[0]]]) == zero),
    ]
}

pub(crate) fn regularity_law<'a>(star: &'a [usize], plus: &'a [usize], p: &str) -> Law<'a> {
    Law::new(format!("{p}.M"), V2, move |v| {
        !(star[v[0]] == star[v[1]] && plus[v[0]] == plus[v[1]]) || v[0] == v[1]
    })
}

fn demorgan_laws<'a>(l: &'a FiniteLattice, neg: &'a [usize], p: &str) -> Vec<Law<'a>> {
    vec![
        distributive_law(l, p),
        Law::new(format!("{p}.DeM1"), V1, move |v| neg[neg[v[0]]] == v[0]),
        Law::new(format!("{p}.DeM2"), V2, move |v| neg[l.join(v[0], v[1])] == l.meet(neg[v[0]], neg[v[1]])),
    ]
}

/// RDSA laws of `a` under the law-name prefix `p`.
pub(crate) fn rdsa_laws<'a>(a: &'a FiniteAlgebra, p: &str) -> Vec<Law<'a>> {
    let l = a.lattice();
    let (star, plus) = (a.op("star"), a.op("plus"));
    let mut laws = dsa_laws(l, star, plus, p);
    laws.push(regularity_law(star, plus, p));
    laws
}

/// Evaluates every law of `kind` on `a` over all assignments.
pub fn check_kind(a: &FiniteAlgebra, kind: AlgebraKind) -> Result<CheckReport, AlgebraError> {
    if !a.supports(kind) {
        return Err(AlgebraError::SignatureMismatch(format!(
            "algebra of kind {} lacks the operations of kind {kind}",
            a.kind()
        )));
    }
    if kind == AlgebraKind::R2a {
        return Ok(crate::rra::check_r2a_algebra(a));
    }
    let l = a.lattice();
    let p = kind.name();
    let mut report = CheckReport::new(p);
    let labels = l.labels();

    if kind.is_boolean() {
        run_laws(&mut report, labels, &[distributive_law(l, p)], &Domain::Exhaustive);
        let comp = complements(l);
        report.record(
            &format!("{p}.complemented"),
            l.len() as u64,
            comp.as_ref().err().map(|&x| vec![("a".to_string(), labels[x].clone())]),
        );
        let Ok(comp) = comp else {
            // Complement-dependent laws are meaningless without complements.
            return Ok(report);
        };
        let base: Vec<Law<'_>> = match kind {
            AlgebraKind::Possibility => possibility_laws(l, a.op("f"), p),
            AlgebraKind::Monadic => {
                let f = a.op("f");
                let mut v = possibility_laws(l, f, p);
                v.extend(monadic_laws(l, f, &comp, p));
                v
            }
            AlgebraKind::Sufficiency => sufficiency_laws(l, a.op("g"), p),
            AlgebraKind::Diversity => {
                let g = a.op("g");
                let mut v = sufficiency_laws(l, g, p);
                v.extend(diversity_laws(l, g, &comp, p));
                v
            }
            _ => unreachable!(),
        };
        run_laws(&mut report, labels, &base, &Domain::Exhaustive);
        if kind == AlgebraKind::Monadic {
            let axioms_hold = report.passed();
            let derived = monadic_derived(l, a.op("f"), &comp, p);
            let before = report.violations.len();
            run_laws(&mut report, labels, &derived, &Domain::Exhaustive);
            if axioms_hold && report.violations.len() > before {
                let names: Vec<String> = report.violations[before..].iter().map(|v| v.law.clone()).collect();
                report.alarms.push(format!("derived monadic laws {names:?} fail although the axioms hold"));
            }
        }
        return Ok(report);
    }

    let laws: Vec<Law<'_>> = match kind {
        AlgebraKind::Bdl => vec![distributive_law(l, p)],
        AlgebraKind::Dsa => dsa_laws(l, a.op("star"), a.op("plus"), p),
        AlgebraKind::Rdsa => rdsa_laws(a, p),
        AlgebraKind::DeMorgan => demorgan_laws(l, a.op("neg"), p),
        _ => unreachable!(),
    };
    run_laws(&mut report, labels, &laws, &Domain::Exhaustive);
    Ok(report)
}
