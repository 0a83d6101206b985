//! Identifier ordering.
//!
//! Catalog ids are compared with a numeric-aware ordering so that `f2` sorts
//! before `f10`. Every listing the crate emits (serialized catalogs, poset
//! objects, chains, reports) uses this one comparator, which keeps golden
//! output stable.

use std::cmp::Ordering;

/// Compare two identifiers, treating maximal runs of ASCII digits as numbers.
///
/// Distinct strings never compare equal: when the segment walk ties (for
/// example `a01` vs `a1`), plain byte order breaks the tie.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut xs = a.as_bytes();
    let mut ys = b.as_bytes();
    loop {
        match (xs.first(), ys.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(&x), Some(&y)) => {
                if x.is_ascii_digit() && y.is_ascii_digit() {
                    let (xn, xr) = split_digits(xs);
                    let (yn, yr) = split_digits(ys);
                    let xt = trim_zeros(xn);
                    let yt = trim_zeros(yn);
                    let ord = xt.len().cmp(&yt.len()).then_with(|| xt.cmp(yt));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    xs = xr;
                    ys = yr;
                } else {
                    if x != y {
                        return x.cmp(&y);
                    }
                    xs = &xs[1..];
                    ys = &ys[1..];
                }
            }
        }
    }
}

fn split_digits(s: &[u8]) -> (&[u8], &[u8]) {
    let end = s
        .iter()
        .position(|b| !b.is_ascii_digit())
        .unwrap_or(s.len());
    s.split_at(end)
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let start = s.iter().position(|&b| b != b'0').unwrap_or(s.len());
    &s[start..]
}

/// Sort ids in place with [`natural_cmp`].
pub fn sort_ids<S: AsRef<str>>(ids: &mut [S]) {
    ids.sort_by(|a, b| natural_cmp(a.as_ref(), b.as_ref()));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_runs_compare_numerically() {
        let mut ids = vec!["f10", "f2", "f1", "f14", "f11"];
        sort_ids(&mut ids);
        assert_eq!(ids, vec!["f1", "f2", "f10", "f11", "f14"]);
    }

    #[test]
    fn plain_text_falls_back_to_byte_order() {
        assert_eq!(natural_cmp("LQS", "MBM"), Ordering::Less);
        assert_eq!(natural_cmp("MBM", "ST"), Ordering::Less);
        assert_eq!(natural_cmp("BE", "BE"), Ordering::Equal);
    }

    #[test]
    fn leading_zeros_do_not_make_distinct_ids_equal() {
        assert_ne!(natural_cmp("a01", "a1"), Ordering::Equal);
        assert_eq!(natural_cmp("a01", "a1"), natural_cmp("a01", "a1"));
    }

    #[test]
    fn total_order_on_mixed_ids() {
        // Antisymmetry and transitivity spot check over a small universe.
        let ids = [
            "a", "a1", "a01", "a2", "a10", "a-b", "a_b", "b", "f1", "f10",
        ];
        for x in ids {
            assert_eq!(natural_cmp(x, x), Ordering::Equal);
            for y in ids {
                assert_eq!(natural_cmp(x, y), natural_cmp(y, x).reverse());
                for z in ids {
                    if natural_cmp(x, y) == Ordering::Less && natural_cmp(y, z) == Ordering::Less {
                        assert_eq!(natural_cmp(x, z), Ordering::Less);
                    }
                }
            }
        }
    }
}
