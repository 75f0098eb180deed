//! Counting helpers.
//!
//! `double_fact(k)` is the number of perfect matchings on `2k` points,
//! `1·3·5⋯(2k−1)`, with `double_fact(0) = 1`. This is the meaning of `k!!`
//! everywhere in this crate.

pub fn factorial(k: u64) -> u128 {
    (1..=k as u128).product()
}

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc
}

pub fn double_fact(k: u64) -> u128 {
    (1..=k as u128).map(|j| 2 * j - 1).product()
}

pub fn pow2(k: u64) -> u128 {
    1u128 << k
}

/// `f(n) = 2^{n+1}·n!! − 2^n·n! + (n+1)!! − (n+1)!`.
pub fn rank_formula(n: u64) -> u128 {
    pow2(n + 1) * double_fact(n) + double_fact(n + 1) - pow2(n) * factorial(n) - factorial(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(double_fact(0), 1);
        assert_eq!(double_fact(3), 15);
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(2, 5), 0);
        assert_eq!(factorial(6), 720);
    }

    #[test]
    fn rank_table() {
        let expected = [3u128, 25, 273, 3801, 66315, 1414575];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(rank_formula(k as u64 + 1), *e);
        }
    }

    #[test]
    fn matchings_recursion() {
        // (k+1)!! = (2k+1)·k!!, and the sum over the partner of a fixed point.
        for k in 0..15 {
            assert_eq!(double_fact(k + 1), (2 * k as u128 + 1) * double_fact(k));
        }
    }
}
