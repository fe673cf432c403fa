use std::fmt;
use std::str::FromStr;

/// Dispatch key over the algebra classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraKind {
    Possibility,
    Monadic,
    Sufficiency,
    Diversity,
    Bdl,
    Dsa,
    Rdsa,
    DeMorgan,
    R2a,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 9] = [
        AlgebraKind::Possibility,
        AlgebraKind::Monadic,
        AlgebraKind::Sufficiency,
        AlgebraKind::Diversity,
        AlgebraKind::Bdl,
        AlgebraKind::Dsa,
        AlgebraKind::Rdsa,
        AlgebraKind::DeMorgan,
        AlgebraKind::R2a,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Possibility => "possibility",
            AlgebraKind::Monadic => "monadic",
            AlgebraKind::Sufficiency => "sufficiency",
            AlgebraKind::Diversity => "diversity",
            AlgebraKind::Bdl => "bdl",
            AlgebraKind::Dsa => "dsa",
            AlgebraKind::Rdsa => "rdsa",
            AlgebraKind::DeMorgan => "demorgan",
            AlgebraKind::R2a => "r2a",
        }
    }

    /// Boolean-based kinds live on powerset-like lattices and dualise through
    /// ultrafilters; the others through prime filters.
    pub fn is_boolean(self) -> bool {
        matches!(
            self,
            AlgebraKind::Possibility | AlgebraKind::Monadic | AlgebraKind::Sufficiency | AlgebraKind::Diversity
        )
    }

    pub fn unary_ops(self) -> &'static [&'static str] {
        match self {
            AlgebraKind::Possibility | AlgebraKind::Monadic => &["f"],
            AlgebraKind::Sufficiency | AlgebraKind::Diversity => &["g"],
            AlgebraKind::Bdl => &[],
            AlgebraKind::Dsa | AlgebraKind::Rdsa => &["star", "plus"],
            AlgebraKind::DeMorgan => &["neg"],
            AlgebraKind::R2a => &["star", "plus", "conv"],
        }
    }

    pub fn binary_ops(self) -> &'static [&'static str] {
        match self {
            AlgebraKind::R2a => &["comp"],
            _ => &[],
        }
    }

    pub fn constants(self) -> &'static [&'static str] {
        match self {
            AlgebraKind::R2a => &["id"],
            _ => &[],
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgebraKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown kind `{s}`"))
    }
}
