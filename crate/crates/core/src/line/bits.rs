//! Dense bit rows: row `r` of a table holds one bit per description index.

#[derive(Clone, Debug)]
pub(crate) struct BitTable {
    words: usize,
    data: Vec<u64>,
}

impl BitTable {
    pub(crate) fn new(rows: usize, bits: usize) -> Self {
        let words = bits.div_ceil(64).max(1);
        BitTable {
            words,
            data: vec![0; rows * words],
        }
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub(crate) fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub(crate) fn get(&self, r: usize, bit: usize) -> bool {
        self.data[r * self.words + bit / 64] >> (bit % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, r: usize, bit: usize) {
        self.data[r * self.words + bit / 64] |= 1 << (bit % 64);
    }

    /// Rows before `r` (mutable) and rows from `r` on.
    pub(crate) fn split_at_row_mut(&mut self, r: usize) -> (&mut [u64], &mut [u64]) {
        self.data.split_at_mut(r * self.words)
    }
}

/// Mask with the low `bits` bits set, spread over `words` words.
pub(crate) fn full_mask(bits: usize, words: usize) -> Vec<u64> {
    let mut mask = vec![0u64; words];
    for b in 0..bits {
        mask[b / 64] |= 1 << (b % 64);
    }
    mask
}

pub(crate) fn is_zero(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

/// `dst |= a & b`.
pub(crate) fn or_and(dst: &mut [u64], a: &[u64], b: &[u64]) {
    for ((d, &x), &y) in dst.iter_mut().zip(a).zip(b) {
        *d |= x & y;
    }
}

/// `dst |= a & b & c`; returns whether `a & b & c` was nonzero.
pub(crate) fn or_and3(dst: &mut [u64], a: &[u64], b: &[u64], c: &[u64]) -> bool {
    let mut any = 0;
    for (((d, &x), &y), &z) in dst.iter_mut().zip(a).zip(b).zip(c) {
        let v = x & y & z;
        *d |= v;
        any |= v;
    }
    any != 0
}

/// Indices of set bits, ascending.
pub(crate) fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &word)| {
        let mut w = word;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_lists_set_bits() {
        let mut t = BitTable::new(2, 130);
        for b in [0, 5, 63, 64, 129] {
            t.set(1, b);
        }
        assert_eq!(ones(t.row(1)).collect::<Vec<_>>(), vec![0, 5, 63, 64, 129]);
        assert!(is_zero(t.row(0)));
        assert!(t.get(1, 64) && !t.get(1, 65));
    }

    #[test]
    fn masked_or() {
        let mut dst = vec![0b0001];
        assert!(or_and3(&mut dst, &[0b1110], &[0b0110], &[0b1100]));
        assert_eq!(dst, vec![0b0101]);
        assert!(!or_and3(&mut dst, &[0b1000], &[0b0110], &[0b1111]));
        or_and(&mut dst, &[0b1000], &[0b1111]);
        assert_eq!(dst, vec![0b1101]);
        assert_eq!(full_mask(66, 2), vec![u64::MAX, 0b11]);
    }
}
