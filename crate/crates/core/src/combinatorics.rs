//! Binomial coefficients and ranking of fixed-size subsets.
//!
//! Two orders are used throughout the crate:
//!
//! * **lexicographic** order of ascending position tuples `(l_1 < ... < l_m)`,
//!   used to lay out spin-basis amplitudes inside a magnetization sector;
//! * **colexicographic** order of bitmasks, which coincides with sorting the
//!   masks of a given popcount as plain integers. Occupation vectors inside a
//!   sector are ranked this way.

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Iterator over the `m`-element subsets of `{1, ..., n}` as ascending
/// tuples, in lexicographic order.
#[derive(Debug, Clone)]
pub struct LexCombinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl LexCombinations {
    pub fn new(n: usize, m: usize) -> Self {
        LexCombinations {
            n,
            current: (1..=m).collect(),
            done: m > n,
        }
    }
}

impl Iterator for LexCombinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let m = self.current.len();
        // rightmost entry that can still be advanced
        let mut i = m;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - (m - 1 - i) {
                self.current[i] += 1;
                for j in i + 1..m {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Zero-based lexicographic rank of an ascending tuple drawn from `{1, ..., n}`.
///
/// The caller guarantees the tuple is strictly ascending and within range.
pub fn lex_rank(n: usize, tuple: &[usize]) -> usize {
    let m = tuple.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &p) in tuple.iter().enumerate() {
        for v in prev + 1..p {
            rank += binomial(n - v, m - i - 1);
        }
        prev = p;
    }
    rank
}

/// Zero-based colex rank of a bitmask among masks with the same popcount.
pub fn colex_rank(mask: u64) -> usize {
    let mut rank = 0;
    let mut bits = mask;
    let mut i = 0;
    while bits != 0 {
        let c = bits.trailing_zeros() as usize;
        rank += binomial(c, i + 1);
        bits &= bits - 1;
        i += 1;
    }
    rank
}

/// Inverse of [`colex_rank`]: the `rank`-th mask (ascending integer order)
/// with exactly `m` bits set among the low `n` bits.
///
/// Returns `None` when `rank >= C(n, m)`.
pub fn colex_unrank(n: usize, m: usize, rank: usize) -> Option<u64> {
    if rank >= binomial(n, m) {
        return None;
    }
    let mut mask = 0u64;
    let mut rest = rank;
    let mut c = n;
    for i in (1..=m).rev() {
        // largest c with C(c, i) <= rest
        c -= 1;
        while binomial(c, i) > rest {
            c -= 1;
        }
        rest -= binomial(c, i);
        mask |= 1 << c;
    }
    Some(mask)
}

/// Masks with `m` bits set among the low `n` bits, ascending.
pub fn masks_with_popcount(n: usize, m: usize) -> impl Iterator<Item = u64> {
    let first = if m > n { None } else { Some(low_bits(m)) };
    let limit = 1u64 << n;
    std::iter::successors(first, move |&v| {
        if v == 0 {
            return None;
        }
        // Gosper's hack
        let c = v & v.wrapping_neg();
        let r = v + c;
        let next = (((r ^ v) >> 2) / c) | r;
        (next < limit).then_some(next)
    })
}

fn low_bits(m: usize) -> u64 {
    if m == 0 {
        0
    } else {
        u64::MAX >> (64 - m)
    }
}

/// One-based site positions of the set bits of `mask`, ascending.
pub fn mask_positions(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut bits = mask;
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize + 1);
        bits &= bits - 1;
    }
    out
}

/// Bitmask with bit `l - 1` set for each one-based position `l`.
pub fn positions_mask(positions: &[usize]) -> u64 {
    positions.iter().fold(0, |acc, &l| acc | 1 << (l - 1))
}
