use fixedbitset::FixedBitSet;

use super::{cm, cs, CanonicalFrame, ComplexAlgebra, DualityError, Frame};
use crate::algebra::{check_embedding, AlgebraKind, FiniteAlgebra};
use crate::order::{check_frame_embedding, FrameEmbeddingCandidate};
use crate::pointset::PointSet;
use crate::report::DualityRoundtripReport;

/// `h(a) = {F : a ∈ F}` into `Cm(Cs(a))`.
#[derive(Clone, Debug)]
pub struct StoneMap {
    pub map: Vec<usize>,
    pub canonical: CanonicalFrame,
    pub complex: ComplexAlgebra,
}

/// `k(x) = {A : x ∈ A}` into `Cs(Cm(X))`.
#[derive(Clone, Debug)]
pub struct FrameMap {
    pub map: Vec<usize>,
    pub complex: ComplexAlgebra,
    pub canonical: CanonicalFrame,
}

pub fn stone_map(a: &FiniteAlgebra, kind: AlgebraKind) -> Result<StoneMap, DualityError> {
    let canonical = cs(a, kind)?;
    let complex = cm(&canonical.frame, kind)?;
    let index = complex.index();
    let mut map = Vec::with_capacity(a.len());
    for x in 0..a.len() {
        let h: PointSet = (0..canonical.filters.len()).filter(|&i| canonical.filters[i].contains(x)).collect();
        match index.get(&h) {
            Some(&i) => map.push(i),
            None => {
                return Err(DualityError::Alarm(format!("h({}) is not an element of Cm(Cs)", a.label(x))));
            }
        }
    }
    Ok(StoneMap { map, canonical, complex })
}

pub fn frame_map(frame: &Frame, kind: AlgebraKind) -> Result<FrameMap, DualityError> {
    let complex = cm(frame, kind)?;
    let canonical = cs(&complex.algebra, kind)?;
    let mut map = Vec::with_capacity(frame.len());
    for x in 0..frame.len() {
        let mut k = FixedBitSet::with_capacity(complex.sets.len());
        for (i, s) in complex.sets.iter().enumerate() {
            if s.contains(x) {
                k.insert(i);
            }
        }
        match canonical.filters.iter().position(|f| f.members == k) {
            Some(i) => map.push(i),
            None => {
                return Err(DualityError::Alarm(format!(
                    "k({}) is not a point of Cs(Cm)",
                    crate::order::RelationalStructure::point_labels(frame)[x]
                )));
            }
        }
    }
    Ok(FrameMap { map, complex, canonical })
}

/// Checks that `h` embeds `a` into the complex algebra of its canonical
/// structure.
pub fn roundtrip_algebra(a: &FiniteAlgebra, kind: AlgebraKind) -> Result<DualityRoundtripReport, DualityError> {
    let h = stone_map(a, kind)?;
    let mut embedding = check_embedding(&h.map, a, &h.complex.algebra, kind)?;
    embedding.name = format!("{kind}.roundtrip-algebra");
    let iso = embedding.passed() && embedding.fact_value("surjective") == Some("true");
    Ok(DualityRoundtripReport {
        name: embedding.name.clone(),
        embedding,
        iso,
        sizes: vec![
            ("algebra".into(), a.len()),
            ("canonical".into(), h.canonical.filters.len()),
            ("complex".into(), h.complex.algebra.len()),
        ],
    })
}

/// Checks that `k` embeds `frame` into the canonical structure of its complex
/// algebra.
pub fn roundtrip_frame(frame: &Frame, kind: AlgebraKind) -> Result<DualityRoundtripReport, DualityError> {
    let k = frame_map(frame, kind)?;
    let candidate = FrameEmbeddingCandidate { map: k.map.clone(), source: frame, target: &k.canonical.frame };
    let mut embedding = check_frame_embedding(&candidate)?;
    embedding.name = format!("{kind}.roundtrip-frame");
    let iso = embedding.passed() && embedding.fact_value("surjective") == Some("true");
    Ok(DualityRoundtripReport {
        name: embedding.name.clone(),
        embedding,
        iso,
        sizes: vec![
            ("frame".into(), frame.len()),
            ("complex".into(), k.complex.algebra.len()),
            ("canonical".into(), k.canonical.filters.len()),
        ],
    })
}
