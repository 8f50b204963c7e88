//! Lexicographic enumeration of pairs, triads and quadruples of `{0..n}`.
//!
//! These orderings fix the coordinate layout of [`TwoVector`](crate::TwoVector)
//! and [`DeviationVector`](crate::DeviationVector), so they are part of the
//! file-format contract.

/// `C(n, 2)`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `C(n, 3)`.
pub fn triad_count(n: usize) -> usize {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

/// `C(n, 4)`.
pub fn quad_count(n: usize) -> usize {
    n * n.saturating_sub(1) * n.saturating_sub(2) * n.saturating_sub(3) / 24
}

/// Position of the pair `(k, l)`, `k < l < n`, in lexicographic order.
#[inline]
pub fn pair_index(n: usize, k: usize, l: usize) -> usize {
    debug_assert!(k < l && l < n);
    k * n - k * (k + 1) / 2 + (l - k - 1)
}

/// Position of the triad `(i, j, k)`, `i < j < k < n`, in lexicographic order.
pub fn triad_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k && k < n);
    // triads whose first element is below i, then second below j
    let before_first: usize = (0..i).map(|a| pair_count(n - 1 - a)).sum();
    let before_second: usize = (i + 1..j).map(|b| n - 1 - b).sum();
    before_first + before_second + (k - j - 1)
}

pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |k| (k + 1..n).map(move |l| (k, l)))
}

pub fn triads(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k)))
    })
}

pub fn quads(n: usize) -> impl Iterator<Item = [usize; 4]> {
    triads(n).flat_map(move |(a, b, c)| (c + 1..n).map(move |d| [a, b, c, d]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        for n in 0..10 {
            assert_eq!(pairs(n).count(), pair_count(n));
            assert_eq!(triads(n).count(), triad_count(n));
            assert_eq!(quads(n).count(), quad_count(n));
        }
    }

    #[test]
    fn index_maps_are_bijections() {
        for n in 2..9 {
            for (pos, (k, l)) in pairs(n).enumerate() {
                assert_eq!(pair_index(n, k, l), pos);
            }
            for (pos, (i, j, k)) in triads(n).enumerate() {
                assert_eq!(triad_index(n, i, j, k), pos);
            }
        }
    }
}
