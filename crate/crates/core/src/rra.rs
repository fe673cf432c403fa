//! Rough relation algebras, rough relation frames, and their duality.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::algebra::laws::{rdsa_laws, run_laws, Domain, Law};
use crate::algebra::{prime_filters, AlgebraError, AlgebraKind, BinaryTable, FiniteAlgebra, FiniteLattice, OperatorTable};
use crate::approx::{
    build_rough_set_algebra, lift_square, rel_compose, rel_converse, ApproximationSpace, BinaryRelation, RoughSet,
};
use crate::duality::{filter_poset, pointwise_pseudocomplements, CanonicalFrame, ComplexAlgebra, DualityError, Frame};
use crate::order::{Component, Poset, RelationalStructure};
use crate::pointset::PointSet;
use crate::report::CheckReport;

/// Carriers up to this size are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 16;
/// Random assignments per law beyond the generator tuples when sampling.
pub const SAMPLES: usize = 20_000;
const SEED: u64 = 0x0052_3241;

const V1: &[&str] = &["a"];
const V2: &[&str] = &["a", "b"];
const V3: &[&str] = &["a", "b", "c"];

/// The sampling domain for large carriers: join-irreducibles and bottom as
/// generators, plus seeded random tuples for laws with three variables.
fn domain_for(l: &FiniteLattice) -> Domain {
    if l.len() <= EXHAUSTIVE_LIMIT {
        return Domain::Exhaustive;
    }
    let mut generators = vec![l.bottom()];
    generators.extend(l.join_irreducibles());
    Domain::Sampled { generators, samples: SAMPLES, seed: SEED, min_vars: 3 }
}

/// Evaluates R2A₀–R2A₈ on `a`.
pub fn check_r2a(a: &FiniteAlgebra) -> Result<CheckReport, AlgebraError> {
    if !a.supports(AlgebraKind::R2a) {
        return Err(AlgebraError::SignatureMismatch("an R2A needs star, plus, conv, comp and id".into()));
    }
    Ok(check_r2a_algebra(a))
}

pub(crate) fn check_r2a_algebra(a: &FiniteAlgebra) -> CheckReport {
    let l = a.lattice();
    let mut report = CheckReport::new("r2a");
    let domain = domain_for(l);
    run_laws(&mut report, a.labels(), &rdsa_laws(a, "r2a.R2A0"), &domain);
    let (star, conv) = (a.op("star"), a.op("conv"));
    let comp = a.binop("comp");
    let id = a.cons("id");
    let c = move |x: usize, y: usize| comp.apply(x, y);
    let laws = vec![
        Law::new("r2a.R2A1.assoc", V3, move |v| c(c(v[0], v[1]), v[2]) == c(v[0], c(v[1], v[2]))),
        Law::new("r2a.R2A1.left-identity", V1, move |v| c(id, v[0]) == v[0]),
        Law::new("r2a.R2A1.right-identity", V1, move |v| c(v[0], id) == v[0]),
        Law::new("r2a.R2A2.left", V3, move |v| c(v[0], l.join(v[1], v[2])) == l.join(c(v[0], v[1]), c(v[0], v[2]))),
        Law::new("r2a.R2A2.right", V3, move |v| c(l.join(v[1], v[2]), v[0]) == l.join(c(v[1], v[0]), c(v[2], v[0]))),
        Law::new("r2a.R2A3", V1, move |v| conv[conv[v[0]]] == v[0]),
        Law::new("r2a.R2A4", V2, move |v| conv[l.join(v[0], v[1])] == l.join(conv[v[0]], conv[v[1]])),
        Law::new("r2a.R2A5", V2, move |v| conv[c(v[0], v[1])] == c(conv[v[1]], conv[v[0]])),
        Law::new("r2a.R2A6", V2, move |v| l.leq(c(conv[v[0]], star[c(v[0], v[1])]), star[v[1]])),
        Law::new("r2a.R2A7", V2, move |v| {
            let x = c(star[v[0]], star[v[1]]);
            star[star[x]] == x
        }),
        Law::new("r2a.R2A8", &[], move |_| star[star[id]] == id),
    ];
    run_laws(&mut report, a.labels(), &laws, &domain);
    report
}

/// A structure ⟨X, ≤, R, f, I⟩ whose order consists of chains of at most two
/// elements. `ternary[x·n + y]` is the set of `z` with `R(x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoughRelationFrame {
    poset: Poset,
    ternary: Vec<PointSet>,
    f: Vec<usize>,
    ideal: PointSet,
}

impl RoughRelationFrame {
    pub fn new(poset: Poset, triples: &[(usize, usize, usize)], f: Vec<usize>, ideal: PointSet) -> Result<Self, DualityError> {
        let n = poset.len();
        let mut ternary = vec![PointSet::EMPTY; n * n];
        for &(x, y, z) in triples {
            if x >= n || y >= n || z >= n {
                return Err(DualityError::FrameInvariant { law: "R.in-carrier".into(), witness: vec![] });
            }
            ternary[x * n + y].insert(z);
        }
        RoughRelationFrame::from_table(poset, ternary, f, ideal)
    }

    pub(crate) fn from_table(poset: Poset, ternary: Vec<PointSet>, f: Vec<usize>, ideal: PointSet) -> Result<Self, DualityError> {
        let n = poset.len();
        if let Some(x) = poset.short_chain_violation() {
            return Err(DualityError::FrameInvariant {
                law: "not chains of length <= 2".into(),
                witness: vec![("x".into(), poset.label(x).to_string())],
            });
        }
        if f.len() != n || f.iter().any(|&y| y >= n) {
            return Err(DualityError::FrameInvariant { law: "f.total".into(), witness: vec![] });
        }
        if ideal.is_empty() || !ideal.is_subset(poset.all()) {
            return Err(DualityError::FrameInvariant { law: "I.nonempty".into(), witness: vec![] });
        }
        Ok(RoughRelationFrame { poset, ternary, f, ideal })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn f(&self) -> &[usize] {
        &self.f
    }

    pub fn ideal(&self) -> PointSet {
        self.ideal
    }

    #[inline]
    pub fn r(&self, x: usize, y: usize, z: usize) -> bool {
        self.ternary[x * self.len() + y].contains(z)
    }

    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        (0..n * n)
            .flat_map(|i| self.ternary[i].iter().map(move |z| (i / n, i % n, z)))
            .collect()
    }

    pub(crate) fn components(&self) -> Vec<Component<'_>> {
        let mut c = RelationalStructure::components(&self.poset);
        c.push(Component::Ternary { name: "R", table: &self.ternary });
        c.push(Component::Function { name: "f", table: &self.f });
        c.push(Component::Subset { name: "I", set: self.ideal });
        c
    }
}

/// Evaluates R2FA₀–R2FA₁₁ on `fr`.
pub fn check_r2fa(fr: &RoughRelationFrame) -> CheckReport {
    let p = &fr.poset;
    let n = fr.len();
    let f = &fr.f[..];
    let i = fr.ideal;
    let r = move |x: usize, y: usize, z: usize| fr.r(x, y, z);
    let le = move |x: usize, y: usize| p.leq(x, y);
    let top: Vec<usize> = (0..n).map(|x| p.top_of(x)).collect();
    let bot: Vec<usize> = (0..n).map(|x| p.bottom_of(x)).collect();
    let (top, bot) = (&top[..], &bot[..]);
    let laws = vec![
        Law::new("r2fa.R2FA0", &["x", "y", "z", "x'", "y'", "z'"], move |v| {
            !(r(v[0], v[1], v[2]) && le(v[3], v[0]) && le(v[4], v[1]) && le(v[2], v[5])) || r(v[3], v[4], v[5])
        }),
        Law::new("r2fa.R2FA1", &["x", "y"], move |v| !le(v[0], v[1]) || le(f[v[0]], f[v[1]])),
        Law::new("r2fa.R2FA2", &["x", "y"], move |v| !le(v[0], v[1]) || i.contains(v[0]) == i.contains(v[1])),
        Law::new("r2fa.R2FA3", &["x", "y", "z", "v", "w"], move |v| {
            let (x, y, z, vv, w) = (v[0], v[1], v[2], v[3], v[4]);
            !(r(x, y, z) && r(z, vv, w)) || (0..n).any(|u| r(x, u, w) && r(y, vv, u))
        }),
        Law::new("r2fa.R2FA4", &["x", "y", "z", "v", "w"], move |v| {
            let (x, y, z, vv, w) = (v[0], v[1], v[2], v[3], v[4]);
            !(r(x, y, z) && r(vv, z, w)) || (0..n).any(|u| r(u, y, w) && r(vv, x, u))
        }),
        Law::new("r2fa.R2FA5", &["x"], move |v| f[f[v[0]]] == v[0]),
        Law::new("r2fa.R2FA6", &["x"], move |v| f[top[v[0]]] == top[f[v[0]]] && f[bot[v[0]]] == bot[f[v[0]]]),
        Law::new("r2fa.R2FA7", &["x", "y", "z"], move |v| !r(v[0], v[1], v[2]) || r(f[v[0]], v[2], top[v[1]])),
        Law::new("r2fa.R2FA8", &["x", "y", "z"], move |v| !r(v[0], v[1], v[2]) || r(v[2], f[v[1]], top[v[0]])),
        Law::new("r2fa.R2FA9", &["x", "y", "z"], move |v| !r(v[0], v[1], v[2]) || r(bot[v[0]], bot[v[1]], bot[v[2]])),
        Law::new("r2fa.R2FA10", &["x", "y"], move |v| le(v[0], v[1]) == i.iter().any(|z| r(v[0], z, v[1]))),
        Law::new("r2fa.R2FA11", &["z", "y"], move |v| le(v[0], v[1]) == i.iter().any(|x| r(x, v[0], v[1]))),
    ];
    let mut report = CheckReport::new("r2fa");
    run_laws(&mut report, p.labels(), &laws, &Domain::Exhaustive);
    report
}

/// The full algebra of rough relations over ⟨X², θ²⟩.
#[derive(Clone, Debug)]
pub struct FullRoughRelationAlgebra {
    pub algebra: FiniteAlgebra,
    pub elements: Vec<RoughSet>,
    pub lifted: ApproximationSpace,
}

/// Builds the full algebra of rough relations. Fails with
/// [`DualityError::NotClosed`] when a rough composition is not a rough
/// relation of the lifted space.
pub fn build_full_rough_relation_algebra(s: &ApproximationSpace) -> Result<FullRoughRelationAlgebra, DualityError> {
    let n = s.len();
    let lifted = lift_square(s)?;
    let (rdsa, elements) = build_rough_set_algebra(&lifted);
    let index: HashMap<RoughSet, usize> = elements.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let rel = |p: PointSet| BinaryRelation::from_code(n, p.0);
    let set = |r: &BinaryRelation| -> PointSet { r.pairs().into_iter().map(|(x, y)| x * n + y).collect() };
    let m = elements.len();

    let rels: Vec<(BinaryRelation, BinaryRelation)> = elements.iter().map(|e| (rel(e.lower), rel(e.upper))).collect();
    let mut comp = Vec::with_capacity(m * m);
    for (i, (rl, ru)) in rels.iter().enumerate() {
        for (j, (sl, su)) in rels.iter().enumerate() {
            let r = RoughSet { lower: set(&rel_compose(rl, sl)?), upper: set(&rel_compose(ru, su)?) };
            match index.get(&r) {
                Some(&k) => comp.push(k),
                None => {
                    return Err(DualityError::NotClosed(format!(
                        "composition of `{}` and `{}` is {}, which is not a rough relation",
                        rdsa.label(i),
                        rdsa.label(j),
                        crate::labels::tuple_literal([lifted.set_label(r.lower), lifted.set_label(r.upper)])
                    )))
                }
            }
        }
    }
    let mut conv = Vec::with_capacity(m);
    for (rl, ru) in &rels {
        let r = RoughSet { lower: set(&rel_converse(rl)), upper: set(&rel_converse(ru)) };
        conv.push(*index.get(&r).ok_or_else(|| DualityError::NotClosed("converse".into()))?);
    }
    let theta = set(&s.relation());
    let id = index[&RoughSet { lower: theta, upper: theta }];
    let mut unary: Vec<OperatorTable> = rdsa.unary_ops().cloned().collect();
    unary.push(OperatorTable::new("conv", conv));
    let algebra = FiniteAlgebra::new(
        AlgebraKind::R2a,
        rdsa.lattice().clone(),
        unary,
        vec![BinaryTable::new("comp", m, comp)],
        vec![("id".into(), id)],
    )?;
    Ok(FullRoughRelationAlgebra { algebra, elements, lifted })
}

/// The complex algebra of a rough relation frame.
pub fn cm_rra(fr: &RoughRelationFrame) -> Result<ComplexAlgebra, DualityError> {
    let p = &fr.poset;
    let n = p.len();
    let (lattice, sets) = FiniteLattice::up_sets(p);
    let index: HashMap<PointSet, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let lookup = |s: PointSet, what: &str| -> Result<usize, DualityError> {
        index
            .get(&s)
            .copied()
            .ok_or_else(|| DualityError::Alarm(format!("{what} produced the non-up-set {s:?}")))
    };
    let (star, plus) = pointwise_pseudocomplements(p, &sets, &index);
    let m = sets.len();
    let mut comp = Vec::with_capacity(m * m);
    for &y in &sets {
        for &z in &sets {
            let mut out = PointSet::EMPTY;
            for a in y.iter() {
                for b in z.iter() {
                    out = out.union(fr.ternary[a * n + b]);
                }
            }
            comp.push(lookup(out, "composition")?);
        }
    }
    let conv = sets
        .iter()
        .map(|&y| lookup(y.iter().map(|x| fr.f[x]).collect(), "converse"))
        .collect::<Result<Vec<_>, _>>()?;
    let id = lookup(fr.ideal, "identity")?;
    let algebra = FiniteAlgebra::new(
        AlgebraKind::R2a,
        lattice,
        vec![OperatorTable::new("star", star), OperatorTable::new("plus", plus), OperatorTable::new("conv", conv)],
        vec![BinaryTable::new("comp", m, comp)],
        vec![("id".into(), id)],
    )?;
    Ok(ComplexAlgebra { algebra, sets })
}

/// The canonical frame of an R2A over its prime filters.
pub(crate) fn cs_rra(a: &FiniteAlgebra) -> Result<CanonicalFrame, DualityError> {
    let l = a.lattice();
    let filters = prime_filters(l)?;
    let k = filters.len();
    let labels: Vec<String> = filters.iter().map(|f| f.label(l)).collect();
    let poset = filter_poset(labels, &filters)?;
    let comp = a.binop("comp");
    let conv = a.op("conv");
    let members: Vec<Vec<usize>> = filters.iter().map(|f| f.members.ones().collect()).collect();
    let mut ternary = vec![PointSet::EMPTY; k * k];
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                // {a;b : a ∈ F, b ∈ G} ⊆ H
                let inside = members[x]
                    .iter()
                    .all(|&p| members[y].iter().all(|&q| filters[z].contains(comp.apply(p, q))));
                if inside {
                    ternary[x * k + y].insert(z);
                }
            }
        }
    }
    let mut f = Vec::with_capacity(k);
    for fl in &filters {
        let mut image = FixedBitSet::with_capacity(l.len());
        for &p in &members[filters.iter().position(|g| g == fl).unwrap_or(0)] {
            image.insert(conv[p]);
        }
        match filters.iter().position(|g| g.members == image) {
            Some(j) => f.push(j),
            None => return Err(DualityError::Alarm(format!("converse image of {} is not a prime filter", fl.label(l)))),
        }
    }
    let ideal: PointSet = (0..k).filter(|&i| filters[i].contains(a.cons("id"))).collect();
    let frame = RoughRelationFrame::from_table(poset, ternary, f, ideal)
        .map_err(|e| DualityError::Alarm(format!("canonical frame is malformed: {e}")))?;
    let report = check_r2fa(&frame);
    if let Some(v) = report.violations.first() {
        let w: Vec<String> = v.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
        return Err(DualityError::Alarm(format!("canonical frame fails {} at {}", v.law, w.join(" "))));
    }
    Ok(CanonicalFrame { frame: Frame::RoughRelational(frame), filters })
}
