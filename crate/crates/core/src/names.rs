//! Variable-name ordering.
//!
//! Names are compared "naturally": runs of digits compare by numeric value,
//! so `x2 < x10`. Ties fall back to plain byte order, which keeps the order
//! total (`x01` and `x1` are distinct names).

use std::cmp::Ordering;

pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut ca, mut cb) = (Chunks(a.as_bytes()), Chunks(b.as_bytes()));
    loop {
        match (ca.next(), cb.next()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => {
                let ord = match (is_digits(x), is_digits(y)) {
                    (true, true) => cmp_numeric(x, y),
                    _ => x.cmp(y),
                };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
    }
}

/// Returns true when `name` matches `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut bytes = name.bytes();
    matches!(bytes.next(), Some(b) if b.is_ascii_alphabetic())
        && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Sorts and deduplicates names in natural order.
pub fn sort_names(names: &mut Vec<String>) {
    names.sort_by(|a, b| natural_cmp(a, b));
    names.dedup();
}

fn is_digits(chunk: &[u8]) -> bool {
    chunk.first().is_some_and(u8::is_ascii_digit)
}

fn cmp_numeric(x: &[u8], y: &[u8]) -> Ordering {
    let trim = |s: &[u8]| -> usize { s.iter().take_while(|&&c| c == b'0').count() };
    let (x, y) = (&x[trim(x)..], &y[trim(y)..]);
    x.len().cmp(&y.len()).then_with(|| x.cmp(y))
}

struct Chunks<'a>(&'a [u8]);

impl<'a> Iterator for Chunks<'a> {
    type Item = &'a [u8];

    fn next(&mut self) -> Option<&'a [u8]> {
        let first = *self.0.first()?;
        let digit = first.is_ascii_digit();
        let len = self
            .0
            .iter()
            .position(|c| c.is_ascii_digit() != digit)
            .unwrap_or(self.0.len());
        let (head, tail) = self.0.split_at(len);
        self.0 = tail;
        Some(head)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_compare_numerically() {
        assert_eq!(natural_cmp("x2", "x10"), Ordering::Less);
        assert_eq!(natural_cmp("x10", "y1"), Ordering::Less);
        assert_eq!(natural_cmp("a1", "a1"), Ordering::Equal);
        assert_ne!(natural_cmp("x01", "x1"), Ordering::Equal);
        assert_eq!(natural_cmp("g1_2", "g1_10"), Ordering::Less);
    }

    #[test]
    fn name_grammar() {
        assert!(is_valid_name("a1"));
        assert!(is_valid_name("x_1"));
        assert!(!is_valid_name("1a"));
        assert!(!is_valid_name(""));
        assert!(!is_valid_name("a-b"));
    }
}
