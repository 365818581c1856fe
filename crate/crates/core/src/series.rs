//! Truncated power series in one variable with integer coefficients.

/// `prod (1 - t^e)` as a dense coefficient vector.
pub fn product_of_one_minus(exponents: &[u64]) -> Vec<i128> {
    let mut out = vec![1i128];
    for &e in exponents {
        let e = e as usize;
        let mut next = vec![0i128; out.len() + e];
        for (i, &c) in out.iter().enumerate() {
            next[i] += c;
            next[i + e] -= c;
        }
        out = next;
    }
    out
}

/// Coefficients `0..=up_to` of `numerator / denominator` by long division.
/// The denominator must have constant term 1.
pub fn divide(numerator: &[i128], denominator: &[i128], up_to: usize) -> Vec<i128> {
    assert_eq!(denominator.first(), Some(&1), "denominator must start with 1");
    let mut q = vec![0i128; up_to + 1];
    for m in 0..=up_to {
        let mut c = numerator.get(m).copied().unwrap_or(0);
        for (j, &b) in denominator.iter().enumerate().skip(1).take(m) {
            c -= b * q[m - j];
        }
        q[m] = c;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        assert_eq!(product_of_one_minus(&[1, 2]), vec![1, -1, -1, 1]);
        let d = product_of_one_minus(&[1, 2]);
        assert_eq!(divide(&[1], &d, 6), vec![1, 1, 2, 2, 3, 3, 4]);
        let d = product_of_one_minus(&[2, 3]);
        assert_eq!(divide(&[1], &d, 6), vec![1, 0, 1, 1, 1, 1, 2]);
    }
}
