//! Qubit budgets for the convolution/pooling map.

use crate::error::{Error, Result};

/// Features that `n` qubits can hold when every layer keeps `floor(k/2)` of its
/// `k` active qubits: `n + floor(n/2) + floor(floor(n/2)/2) + … + 1`.
pub fn capacity(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument("capacity of zero qubits".into()));
    }
    let mut total = 0;
    let mut k = n;
    while k >= 1 {
        total += k;
        k /= 2;
    }
    Ok(total)
}

/// Smallest register whose [`capacity`] covers `features`.
pub fn qubits_required(features: usize) -> Result<usize> {
    if features == 0 {
        return Err(Error::InvalidArgument("zero features".into()));
    }
    // capacity(n) >= n, so the search is bounded by `features`
    let mut n = 1;
    while capacity(n)? < features {
        n += 1;
    }
    Ok(n)
}

/// Meta-Fibonacci sequence `a(N) = a(N - a(N-1)) + a(N-1 - a(N-2))`, `a(1) = a(2) = 1`.
///
/// Provided for reference next to [`qubits_required`]; the two disagree at some
/// `N` (for example `a(16) = 8` while 16 features need 9 qubits under the
/// floor-halving layer rule).
pub fn meta_fibonacci(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument("meta-Fibonacci index must be >= 1".into()));
    }
    // a[0] is unused padding so that a[i] is a(i)
    let mut a = vec![0usize, 1, 1];
    for i in 3..=n {
        let back1 = lookup(&a, i.checked_sub(a[i - 1]), i)?;
        let back2 = lookup(&a, (i - 1).checked_sub(a[i - 2]), i)?;
        a.push(back1 + back2);
    }
    Ok(a[n])
}

fn lookup(a: &[usize], index: Option<usize>, at: usize) -> Result<usize> {
    match index {
        Some(k) if k >= 1 && k < a.len() => Ok(a[k]),
        _ => Err(Error::InvalidArgument(format!(
            "meta-Fibonacci recursion left the domain while computing a({at})"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_values() {
        assert_eq!(capacity(1).unwrap(), 1);
        assert_eq!(capacity(4).unwrap(), 7);
        assert_eq!(capacity(8).unwrap(), 15);
        assert_eq!(capacity(9).unwrap(), 16);
        assert_eq!(capacity(12).unwrap(), 22);
        assert_eq!(capacity(16).unwrap(), 31);
        assert!(capacity(0).is_err());
    }

    #[test]
    fn qubit_table() {
        for (features, qubits) in [(1, 1), (7, 4), (15, 8), (22, 12), (30, 16), (21, 12), (16, 9)] {
            assert_eq!(qubits_required(features).unwrap(), qubits, "{features} features");
        }
        assert!(qubits_required(0).is_err());
    }

    #[test]
    fn qubits_required_is_minimal() {
        for f in 1..=64 {
            let n = qubits_required(f).unwrap();
            assert!(capacity(n).unwrap() >= f);
            if n > 1 {
                assert!(capacity(n - 1).unwrap() < f);
            }
        }
    }

    // Direct unrolling of the recursion, written out by hand:
    // a3 = a(2)+a(1) = 2, a4 = a(2)+a(2) = 2, a5 = a(3)+a(2) = 3, a6 = a(3)+a(3) = 4,
    // a7 = a(3)+a(4) = 4.
    #[test]
    fn meta_fibonacci_small_values() {
        let want = [1, 1, 2, 2, 3, 4, 4];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(meta_fibonacci(i + 1).unwrap(), *w, "a({})", i + 1);
        }
        assert_eq!(meta_fibonacci(22).unwrap(), 12);
        assert_eq!(meta_fibonacci(16).unwrap(), 8);
        assert!(meta_fibonacci(0).is_err());
    }
}
