//! Ranking and unranking of `k`-subsets of `{0, .., m-1}`.
//!
//! Two orders are in use. Minor matrices list row sets by the increasing
//! sequence of *omitted* indices, products of rows list them by the
//! increasing sequence of *taken* indices.

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k > n`. Panics on overflow of `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(n - i)
            .expect("binomial coefficient overflows usize")
            / (i + 1);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubsetOrder {
    /// Lexicographic on the increasing sequence of omitted indices.
    LexOnOmitted,
    /// Lexicographic on the increasing sequence of taken indices.
    LexOnTaken,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetIndex {
    ground: usize,
    size: usize,
    order: SubsetOrder,
}

impl SubsetIndex {
    pub fn new(ground: usize, size: usize, order: SubsetOrder) -> Result<Self> {
        if size > ground {
            return Err(Error::shape(format!(
                "cannot choose {size} of {ground} elements"
            )));
        }
        Ok(SubsetIndex {
            ground,
            size,
            order,
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn order(&self) -> SubsetOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        binomial(self.ground, self.size)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The subset (taken indices, increasing) at position `rank`.
    pub fn unrank(&self, rank: usize) -> Result<Vec<usize>> {
        if rank >= self.len() {
            return Err(Error::Index(format!(
                "rank {rank} of {} subsets",
                self.len()
            )));
        }
        Ok(match self.order {
            SubsetOrder::LexOnTaken => unrank_lex(self.ground, self.size, rank),
            SubsetOrder::LexOnOmitted => complement(
                self.ground,
                &unrank_lex(self.ground, self.ground - self.size, rank),
            ),
        })
    }

    /// Position of `subset` (taken indices, strictly increasing).
    pub fn rank(&self, subset: &[usize]) -> Result<usize> {
        if subset.len() != self.size
            || subset.windows(2).any(|w| w[0] >= w[1])
            || subset.last().is_some_and(|&x| x >= self.ground)
        {
            return Err(Error::Index(format!(
                "{subset:?} is not an increasing {}-subset of 0..{}",
                self.size, self.ground
            )));
        }
        Ok(match self.order {
            SubsetOrder::LexOnTaken => rank_lex(self.ground, subset),
            SubsetOrder::LexOnOmitted => rank_lex(self.ground, &complement(self.ground, subset)),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(move |r| self.unrank(r).expect("rank in range"))
    }
}

/// Indices of `0..ground` not in `subset` (which must be increasing).
pub fn complement(ground: usize, subset: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(ground - subset.len());
    let mut it = subset.iter().peekable();
    for i in 0..ground {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            out.push(i);
        }
    }
    out
}

fn rank_lex(ground: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut next = 0;
    for (i, &c) in subset.iter().enumerate() {
        for skipped in next..c {
            rank += binomial(ground - skipped - 1, k - i - 1);
        }
        next = c + 1;
    }
    rank
}

fn unrank_lex(ground: usize, k: usize, mut rank: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut c = 0;
    for i in 0..k {
        loop {
            let block = binomial(ground - c - 1, k - i - 1);
            if rank < block {
                break;
            }
            rank -= block;
            c += 1;
        }
        out.push(c);
        c += 1;
    }
    out
}

/// All `k`-subsets of `0..ground` in lex-on-taken order, without the
/// ranking machinery. Used on hot paths.
pub fn combinations(ground: usize, k: usize) -> Combinations {
    Combinations {
        ground,
        current: if k <= ground {
            Some((0..k).collect())
        } else {
            None
        },
    }
}

pub struct Combinations {
    ground: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // Rightmost position that can still move.
        let mut i = k;
        while i > 0 && next[i - 1] == self.ground - k + i - 1 {
            i -= 1;
        }
        if i > 0 {
            next[i - 1] += 1;
            for j in i..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: all subsets by bitmask, sorted by the relevant key.
    fn brute(ground: usize, k: usize, order: SubsetOrder) -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = (0u32..1 << ground)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..ground).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        match order {
            SubsetOrder::LexOnTaken => all.sort(),
            SubsetOrder::LexOnOmitted => all.sort_by_key(|s| complement(ground, s)),
        }
        all
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn matches_bruteforce_in_both_orders() {
        for ground in 0..=8 {
            for k in 0..=ground {
                for order in [SubsetOrder::LexOnTaken, SubsetOrder::LexOnOmitted] {
                    let idx = SubsetIndex::new(ground, k, order).unwrap();
                    let expected = brute(ground, k, order);
                    let got: Vec<_> = idx.iter().collect();
                    assert_eq!(got, expected, "ground={ground} k={k} {order:?}");
                    for (r, s) in expected.iter().enumerate() {
                        assert_eq!(idx.rank(s).unwrap(), r);
                    }
                }
                assert_eq!(
                    combinations(ground, k).collect::<Vec<_>>(),
                    brute(ground, k, SubsetOrder::LexOnTaken)
                );
            }
        }
    }

    #[test]
    fn omitted_order_example() {
        // 1-subsets of {0,1,2}: omitted {0,1} first, so row 2 comes first.
        let idx = SubsetIndex::new(3, 1, SubsetOrder::LexOnOmitted).unwrap();
        assert_eq!(
            idx.iter().collect::<Vec<_>>(),
            vec![vec![2], vec![1], vec![0]]
        );
    }

    #[test]
    fn bad_inputs() {
        assert!(SubsetIndex::new(2, 3, SubsetOrder::LexOnTaken).is_err());
        let idx = SubsetIndex::new(4, 2, SubsetOrder::LexOnTaken).unwrap();
        assert!(idx.unrank(6).is_err());
        assert!(idx.rank(&[1, 1]).is_err());
        assert!(idx.rank(&[2, 1]).is_err());
        assert!(idx.rank(&[0, 4]).is_err());
        assert!(idx.rank(&[0]).is_err());
    }
}
