/// Fixed-length bit table indexed from 0, packed into `u64` words.
#[derive(Clone, PartialEq, Eq)]
pub struct BitTable {
    words: Vec<u64>,
    len: u64,
}

impl std::fmt::Debug for BitTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BitTable")
            .field("len", &self.len)
            .field("ones", &self.count_ones())
            .finish()
    }
}

impl BitTable {
    pub fn new(len: u64) -> Self {
        BitTable {
            words: vec![0; len.div_ceil(64) as usize],
            len,
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: u64) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: u64) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[(i / 64) as usize] |= 1 << (i % 64);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn is_subset_of(&self, other: &BitTable) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Largest index in `lo..hi` whose bit is clear.
    pub fn last_zero_in(&self, lo: u64, hi: u64) -> Option<u64> {
        let hi = hi.min(self.len);
        (lo..hi).rev().find(|&i| !self.get(i))
    }

    pub(crate) fn grow(&mut self, len: u64) {
        debug_assert!(len >= self.len);
        self.words.resize(len.div_ceil(64) as usize, 0);
        self.len = len;
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1 << rem) - 1;
            }
        }
    }

    /// The 64 bits starting at `start`; positions below 0 read as clear.
    fn window(&self, start: i64) -> u64 {
        let end = start + 64;
        if end <= 0 {
            return 0;
        }
        let word = start.div_euclid(64);
        let shift = start.rem_euclid(64) as u32;
        let lo = if word >= 0 {
            self.words.get(word as usize).copied().unwrap_or(0)
        } else {
            0
        };
        if shift == 0 {
            return lo;
        }
        let hi = self.words.get((word + 1) as usize).copied().unwrap_or(0);
        (lo >> shift) | (hi << (64 - shift))
    }

    /// `self |= src << shift`, truncated to `self.len()`.
    pub fn or_shifted(&mut self, src: &BitTable, shift: u64) {
        let word_shift = (shift / 64) as usize;
        let bit_shift = (shift % 64) as u32;
        let n = self.words.len();
        for i in word_shift..n {
            let j = i - word_shift;
            let mut w = src.words.get(j).copied().unwrap_or(0) << bit_shift;
            if bit_shift != 0 && j >= 1 {
                w |= src.words.get(j - 1).copied().unwrap_or(0) >> (64 - bit_shift);
            }
            self.words[i] |= w;
        }
        self.clear_tail();
    }

    /// One unbounded-coin pass: for `m` in `from..len` ascending,
    /// `bit[m] |= bit[m - coin]`. Bits below `from` are treated as final.
    pub fn close_under(&mut self, coin: u64, from: u64) {
        if coin == 0 || from >= self.len {
            return;
        }
        if coin < 64 {
            for m in from.max(coin)..self.len {
                if self.get(m - coin) {
                    self.set(m);
                }
            }
            return;
        }
        // Every source bit lies at least one full word behind its target,
        // so whole words can be filled in ascending order.
        let first = (from / 64) as usize;
        for i in first..self.words.len() {
            let w = self.window(i as i64 * 64 - coin as i64);
            self.words[i] |= w;
        }
        self.clear_tail();
    }
}
