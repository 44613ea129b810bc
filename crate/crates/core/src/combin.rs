//! Lexicographic k-subsets of `0..n` with ranking, for partitioned exhaustive runs.

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The `rank`-th k-subset of `0..n` in lexicographic order.
pub fn unrank(mut rank: u64, n: usize, k: usize) -> Vec<usize> {
    assert!(rank < binomial(n as u64, k as u64), "rank out of range");
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = (k - slot - 1) as u64;
        loop {
            let block = binomial((n - next - 1) as u64, remaining);
            if rank < block {
                break;
            }
            rank -= block;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

/// Advances `c` to the next k-subset of `0..n`; false when `c` was the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Iterates the subsets with ranks in `[start, end)`, yielding `(rank, subset)`.
pub fn combinations_in_range(
    n: usize,
    k: usize,
    start: u64,
    end: u64,
) -> impl Iterator<Item = (u64, Vec<usize>)> {
    let total = binomial(n as u64, k as u64);
    let end = end.min(total);
    let mut cur = (start < end).then(|| unrank(start, n, k));
    let mut rank = start;
    std::iter::from_fn(move || {
        let c = cur.as_mut()?;
        if rank >= end {
            return None;
        }
        let item = (rank, c.clone());
        rank += 1;
        if rank >= end || !next_combination(c, n) {
            cur = None;
        }
        Some(item)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(54, 4), 316_251);
        assert_eq!(binomial(55, 4), 341_055);
        assert_eq!(binomial(28, 3), 3276);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn unrank_matches_iteration() {
        let all: Vec<_> = combinations_in_range(7, 3, 0, u64::MAX).collect();
        assert_eq!(all.len(), 35);
        for (r, c) in &all {
            assert_eq!(&unrank(*r, 7, 3), c);
        }
        assert_eq!(all[0].1, vec![0, 1, 2]);
        assert_eq!(all[34].1, vec![4, 5, 6]);
        let mid: Vec<_> = combinations_in_range(7, 3, 10, 13).collect();
        assert_eq!(mid, all[10..13].to_vec());
    }

    #[test]
    fn empty_subset() {
        let all: Vec<_> = combinations_in_range(4, 0, 0, 10).collect();
        assert_eq!(all, vec![(0, vec![])]);
    }
}
