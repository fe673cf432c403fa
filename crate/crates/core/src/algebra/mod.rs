//! Finite lattices and algebras as operation tables, filter enumeration and
//! the kind-tagged law checkers.

mod embedding;
mod filters;
mod kind;
mod lattice;
pub(crate) mod laws;
mod ops;

use std::collections::BTreeMap;

use thiserror::Error;

pub use embedding::check_embedding;
pub use filters::{prime_filters, ultrafilters, Filter};
pub use kind::AlgebraKind;
pub use lattice::{derive_join_meet, FiniteLattice};
pub use laws::check_kind;
pub use ops::{dual_operator, is_possibility_operator, is_sufficiency_operator, star_operator, StarOperator};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("not a lattice: `{a}` and `{b}` have {reason}")]
    NotALattice { a: String, b: String, reason: String },
    #[error("unbounded: {0}")]
    Unbounded(String),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("lattice is not distributive: a=`{0}` b=`{1}` c=`{2}`")]
    NotDistributive(String, String, String),
    #[error("lattice is not Boolean: `{0}` has no complement")]
    NotBoolean(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("operation `{op}` is not total: {detail}")]
    NotTotal { op: String, detail: String },
    #[error("not closed: {0}")]
    NotClosed(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// A named unary operation `carrier -> carrier`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTable {
    pub name: String,
    pub table: Vec<usize>,
}

impl OperatorTable {
    pub fn new(name: impl Into<String>, table: Vec<usize>) -> Self {
        OperatorTable { name: name.into(), table }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }
}

/// A named binary operation stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryTable {
    pub name: String,
    pub size: usize,
    pub table: Vec<usize>,
}

impl BinaryTable {
    pub fn new(name: impl Into<String>, size: usize, table: Vec<usize>) -> Self {
        BinaryTable { name: name.into(), size, table }
    }

    pub fn from_fn(name: impl Into<String>, size: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..size * size).map(|i| f(i / size, i % size)).collect();
        BinaryTable::new(name, size, table)
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }
}

/// Lattice plus named operations and constants, tagged with its kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    kind: AlgebraKind,
    lattice: FiniteLattice,
    unary: BTreeMap<String, OperatorTable>,
    binary: BTreeMap<String, BinaryTable>,
    constants: BTreeMap<String, usize>,
}

impl FiniteAlgebra {
    /// Validates totality and that the operations are exactly the signature of
    /// `kind`.
    pub fn new(
        kind: AlgebraKind,
        lattice: FiniteLattice,
        unary: Vec<OperatorTable>,
        binary: Vec<BinaryTable>,
        constants: Vec<(String, usize)>,
    ) -> Result<Self, AlgebraError> {
        let n = lattice.len();
        let names = |v: Vec<&str>| -> Vec<String> {
            let mut v: Vec<String> = v.into_iter().map(String::from).collect();
            v.sort();
            v
        };
        let got_u = names(unary.iter().map(|o| o.name.as_str()).collect());
        let got_b = names(binary.iter().map(|o| o.name.as_str()).collect());
        let got_c = names(constants.iter().map(|(c, _)| c.as_str()).collect());
        if got_u != names(kind.unary_ops().to_vec())
            || got_b != names(kind.binary_ops().to_vec())
            || got_c != names(kind.constants().to_vec())
        {
            return Err(AlgebraError::SignatureMismatch(format!(
                "kind {kind} expects ops {:?}, binops {:?}, constants {:?}; got {:?}, {:?}, {:?}",
                kind.unary_ops(),
                kind.binary_ops(),
                kind.constants(),
                got_u,
                got_b,
                got_c
            )));
        }
        for op in &unary {
            if op.table.len() != n || op.table.iter().any(|&v| v >= n) {
                return Err(AlgebraError::NotTotal {
                    op: op.name.clone(),
                    detail: format!("expected {n} entries within the carrier"),
                });
            }
        }
        for op in &binary {
            if op.size != n || op.table.len() != n * n || op.table.iter().any(|&v| v >= n) {
                return Err(AlgebraError::NotTotal {
                    op: op.name.clone(),
                    detail: format!("expected {} entries within the carrier", n * n),
                });
            }
        }
        if let Some((c, _)) = constants.iter().find(|(_, v)| *v >= n) {
            return Err(AlgebraError::NotTotal { op: c.clone(), detail: "constant outside the carrier".into() });
        }
        Ok(FiniteAlgebra {
            kind,
            lattice,
            unary: unary.into_iter().map(|o| (o.name.clone(), o)).collect(),
            binary: binary.into_iter().map(|o| (o.name.clone(), o)).collect(),
            constants: constants.into_iter().collect(),
        })
    }

    /// A bounded distributive lattice with no further operations.
    pub fn bdl(lattice: FiniteLattice) -> Self {
        FiniteAlgebra::new(AlgebraKind::Bdl, lattice, vec![], vec![], vec![]).expect("empty signature")
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        self.lattice.label(i)
    }

    pub fn labels(&self) -> &[String] {
        self.lattice.labels()
    }

    pub fn unary(&self, name: &str) -> Option<&OperatorTable> {
        self.unary.get(name)
    }

    pub fn binary(&self, name: &str) -> Option<&BinaryTable> {
        self.binary.get(name)
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.get(name).copied()
    }

    /// Unary table that the signature guarantees to exist.
    pub(crate) fn op(&self, name: &str) -> &[usize] {
        &self.unary[name].table
    }

    pub(crate) fn binop(&self, name: &str) -> &BinaryTable {
        &self.binary[name]
    }

    pub(crate) fn cons(&self, name: &str) -> usize {
        self.constants[name]
    }

    /// Whether this algebra carries every operation `kind` requires.
    pub fn supports(&self, kind: AlgebraKind) -> bool {
        kind.unary_ops().iter().all(|o| self.unary.contains_key(*o))
            && kind.binary_ops().iter().all(|o| self.binary.contains_key(*o))
            && kind.constants().iter().all(|c| self.constants.contains_key(*c))
    }

    /// The same algebra re-tagged with a kind of identical signature.
    pub fn with_kind(&self, kind: AlgebraKind) -> Result<Self, AlgebraError> {
        FiniteAlgebra::new(
            kind,
            self.lattice.clone(),
            kind.unary_ops().iter().map(|o| self.require_unary(o)).collect::<Result<_, _>>()?,
            kind.binary_ops().iter().map(|o| self.require_binary(o)).collect::<Result<_, _>>()?,
            kind.constants()
                .iter()
                .map(|c| {
                    self.constant(c)
                        .map(|v| (c.to_string(), v))
                        .ok_or_else(|| AlgebraError::SignatureMismatch(format!("missing constant `{c}`")))
                })
                .collect::<Result<_, _>>()?,
        )
    }

    fn require_unary(&self, name: &str) -> Result<OperatorTable, AlgebraError> {
        self.unary(name)
            .cloned()
            .ok_or_else(|| AlgebraError::SignatureMismatch(format!("missing operation `{name}`")))
    }

    fn require_binary(&self, name: &str) -> Result<BinaryTable, AlgebraError> {
        self.binary(name)
            .cloned()
            .ok_or_else(|| AlgebraError::SignatureMismatch(format!("missing binary operation `{name}`")))
    }

    pub fn unary_ops(&self) -> impl Iterator<Item = &OperatorTable> {
        self.unary.values()
    }

    pub fn binary_ops(&self) -> impl Iterator<Item = &BinaryTable> {
        self.binary.values()
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, usize)> {
        self.constants.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Replaces element labels, keeping every table.
    pub fn relabel(&mut self, labels: Vec<String>) {
        self.lattice.relabel(labels);
    }
}
