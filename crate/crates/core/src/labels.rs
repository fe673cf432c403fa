//! Canonical ordering and formatting of element identifiers.

use std::cmp::Ordering;

/// Canonical order on element identifiers: naturals first (numerically),
/// then everything else byte-lexicographically.
pub fn canonical_cmp(a: &str, b: &str) -> Ordering {
    let na = is_natural(a);
    let nb = is_natural(b);
    match (na, nb) {
        (true, true) => {
            let a = a.trim_start_matches('0');
            let b = b.trim_start_matches('0');
            a.len().cmp(&b.len()).then_with(|| a.cmp(b))
        }
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.cmp(b),
    }
}

fn is_natural(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit())
}

pub fn sort_canonical(items: &mut [String]) {
    items.sort_by(|a, b| canonical_cmp(a, b));
}

/// Formats a set literal `{a,b,c}` with members in canonical order.
pub fn set_literal<I, S>(members: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut items: Vec<String> = members.into_iter().map(|s| s.as_ref().to_string()).collect();
    sort_canonical(&mut items);
    items.dedup();
    format!("{{{}}}", items.join(","))
}

/// Formats a tuple literal `(a,b,..)` preserving component order.
pub fn tuple_literal<I, S>(parts: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let parts: Vec<String> = parts.into_iter().map(|s| s.as_ref().to_string()).collect();
    format!("({})", parts.join(","))
}
