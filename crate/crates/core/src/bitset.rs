/// Fixed-length bit vector used for transitive-closure rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    /// `self |= other` over the common prefix.
    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.ones_in(0, self.len)
    }

    /// Set bits in `[start, end)`.
    pub fn ones_in(&self, start: usize, end: usize) -> impl Iterator<Item = usize> + '_ {
        let end = end.min(self.len);
        let first = start >> 6;
        let last = if end == 0 { 0 } else { end.div_ceil(64) };
        (first..last.max(first)).flat_map(move |wi| {
            let mut w = self.words[wi];
            if wi == first {
                w &= u64::MAX.checked_shl((start & 63) as u32).unwrap_or(0);
            }
            if wi + 1 == last && end & 63 != 0 {
                w &= (1u64 << (end & 63)) - 1;
            }
            BitIter { w, base: wi << 6 }
        })
    }
}

struct BitIter {
    w: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.w == 0 {
            return None;
        }
        let tz = self.w.trailing_zeros() as usize;
        self.w &= self.w - 1;
        Some(self.base + tz)
    }
}

/// Calls `f` on every index in `[start, end)` set in both `a` and `b`.
#[inline]
pub fn for_each_common(a: &Bitset, b: &Bitset, start: usize, end: usize, mut f: impl FnMut(usize)) {
    let end = end.min(a.len).min(b.len);
    if start >= end {
        return;
    }
    let first = start >> 6;
    let last = end.div_ceil(64);
    for wi in first..last {
        let mut w = a.words[wi] & b.words[wi];
        if wi == first {
            w &= u64::MAX << (start & 63);
        }
        if wi + 1 == last && end & 63 != 0 {
            w &= (1u64 << (end & 63)) - 1;
        }
        while w != 0 {
            let tz = w.trailing_zeros() as usize;
            w &= w - 1;
            f((wi << 6) + tz);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_respect_word_boundaries() {
        let mut b = Bitset::new(200);
        for i in [0, 5, 63, 64, 65, 127, 128, 199] {
            b.set(i);
        }
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 5, 63, 64, 65, 127, 128, 199]);
        assert_eq!(b.ones_in(5, 65).collect::<Vec<_>>(), vec![5, 63, 64]);
        assert_eq!(b.ones_in(64, 64).count(), 0);
        assert_eq!(b.count_ones(), 8);
        let mut c = Bitset::new(130);
        c.set(64);
        c.set(127);
        c.set(3);
        let mut seen = vec![];
        for_each_common(&b, &c, 1, 200, |i| seen.push(i));
        assert_eq!(seen, vec![64, 127]);
    }
}
