//! Subset counting and lexicographic k-subset enumeration.

/// `C(n, k)` saturating at `u64::MAX`.
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

/// Lexicographic k-subsets of a sorted item list.
///
/// Yields subsets in increasing lexicographic order, so the first minimizer
/// seen is also the lexicographically smallest one.
#[derive(Debug, Clone)]
pub struct Combinations<'a> {
    items: &'a [usize],
    idx: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub fn new(items: &'a [usize], k: usize) -> Self {
        Combinations {
            items,
            idx: (0..k).collect(),
            current: Vec::with_capacity(k),
            done: k > items.len(),
        }
    }

    /// Only subsets whose first element is `items[first]`.
    pub fn starting_with(items: &'a [usize], k: usize, first: usize) -> impl Iterator<Item = Vec<usize>> + 'a {
        let head = items[first];
        let tail = &items[first + 1..];
        let mut inner = Combinations::new(tail, k - 1);
        std::iter::from_fn(move || {
            inner.next_subset().map(|s| {
                let mut v = Vec::with_capacity(k);
                v.push(head);
                v.extend_from_slice(s);
                v
            })
        })
    }

    /// Advances and returns a borrowed view of the next subset.
    pub fn next_subset(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        self.current.clear();
        self.current.extend(self.idx.iter().map(|&i| self.items[i]));
        let k = self.idx.len();
        let n = self.items.len();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(&self.current)
    }
}

impl Iterator for Combinations<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.next_subset().map(<[usize]>::to_vec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(14, 2), 91);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn lexicographic_order() {
        let items = [1, 3, 4, 7];
        let all: Vec<_> = Combinations::new(&items, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![1, 3],
                vec![1, 4],
                vec![1, 7],
                vec![3, 4],
                vec![3, 7],
                vec![4, 7]
            ]
        );
        assert_eq!(Combinations::new(&items, 0).count(), 1);
        assert_eq!(Combinations::new(&items, 5).count(), 0);
        let tail: Vec<_> = Combinations::starting_with(&items, 2, 1).collect();
        assert_eq!(tail, vec![vec![3, 4], vec![3, 7]]);
    }

    #[test]
    fn count_matches_binomial() {
        let items: Vec<usize> = (0..9).collect();
        for k in 0..=9 {
            assert_eq!(Combinations::new(&items, k).count() as u64, binomial(9, k as u64));
        }
    }
}
