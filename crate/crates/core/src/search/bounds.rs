use crate::error::{Error, Result};

/// `1^1 * 2^2 * ... * k^k`, saturating at `u128::MAX`.
pub fn self_power_product(k: usize) -> u128 {
    let mut p: u128 = 1;
    for i in 1..=k as u128 {
        for _ in 0..i {
            p = p.saturating_mul(i);
        }
    }
    p
}

/// Largest `k` with `1^1 * 2^2 * ... * k^k <= n`. `G(n)` then has
/// readability at least `k + 1`.
pub fn main_theorem_bound(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let mut k = 1;
    while self_power_product(k + 1) <= n as u128 {
        k += 1;
    }
    Ok(k)
}

/// Whether `m >= 2 * n * k^k`, the size needed for one step of the
/// descent from read-`k` to read-`(k-1)` extensions.
pub fn recursion_step_holds(m: usize, n: usize, k: usize) -> bool {
    let kk = (k as u128).saturating_pow(k as u32);
    (m as u128) >= 2u128.saturating_mul(n as u128).saturating_mul(kk)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        assert_eq!(self_power_product(1), 1);
        assert_eq!(self_power_product(2), 4);
        assert_eq!(self_power_product(3), 108);
        assert_eq!(self_power_product(4), 27648);
    }

    #[test]
    fn bound() {
        assert_eq!(main_theorem_bound(1).unwrap(), 1);
        assert_eq!(main_theorem_bound(2).unwrap(), 1);
        assert_eq!(main_theorem_bound(4).unwrap(), 2);
        assert_eq!(main_theorem_bound(15).unwrap(), 2);
        assert_eq!(main_theorem_bound(107).unwrap(), 2);
        assert_eq!(main_theorem_bound(108).unwrap(), 3);
        assert_eq!(main_theorem_bound(27648).unwrap(), 4);
        assert!(main_theorem_bound(0).is_err());
    }

    #[test]
    fn recursion_constant() {
        assert!(recursion_step_holds(4, 2, 1));
        assert!(!recursion_step_holds(3, 2, 1));
        assert!(recursion_step_holds(16, 2, 2));
        assert!(!recursion_step_holds(15, 2, 2));
        assert!(!recursion_step_holds(usize::MAX, 2, 40));
    }
}
