//! Fixed-universe bit sets. Every element set and cone row in the crate is one
//! of these, so the quantifier loops in the axiom checks reduce to word ops.

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits { len, words: vec![!0u64; len.div_ceil(WORD)] };
        b.trim();
        b
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut b = Bits::new(len);
        b.insert(i);
        b
    }

    fn trim(&mut self) {
        let spare = self.words.len() * WORD - self.len;
        if spare > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 >> spare;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest set bit.
    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Highest set bit.
    pub fn last(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(k * WORD + (WORD - 1) - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter { bits: self, word: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn and(a: &Bits, b: &Bits) -> Bits {
        let mut r = a.clone();
        r.intersect_with(b);
        r
    }

    pub fn or(a: &Bits, b: &Bits) -> Bits {
        let mut r = a.clone();
        r.union_with(b);
        r
    }
}

/// Lowest bit of `a & b` without materializing the intersection.
pub fn first_common(a: &Bits, b: &Bits) -> Option<usize> {
    for (k, (x, y)) in a.words.iter().zip(&b.words).enumerate() {
        let w = x & y;
        if w != 0 {
            return Some(k * WORD + w.trailing_zeros() as usize);
        }
    }
    None
}

/// Highest bit of `a & b`.
pub fn last_common(a: &Bits, b: &Bits) -> Option<usize> {
    for (k, (x, y)) in a.words.iter().zip(&b.words).enumerate().rev() {
        let w = x & y;
        if w != 0 {
            return Some(k * WORD + (WORD - 1) - w.leading_zeros() as usize);
        }
    }
    None
}

/// `a & b ⊆ c` without materializing the intersection.
pub fn and_subset_of(a: &Bits, b: &Bits, c: &Bits) -> bool {
    a.words
        .iter()
        .zip(&b.words)
        .zip(&c.words)
        .all(|((x, y), z)| x & y & !z == 0)
}

pub struct BitIter<'a> {
    bits: &'a Bits,
    word: usize,
    cur: u64,
}

impl Iterator for BitIter<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD + b);
            }
            self.word += 1;
            if self.word >= self.bits.words.len() {
                return None;
            }
            self.cur = self.bits.words[self.word];
        }
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Bits {
    /// Collects indices into a set sized to hold the largest one; mostly for tests.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let v: Vec<usize> = iter.into_iter().collect();
        let len = v.iter().max().map_or(0, |m| m + 1);
        let mut b = Bits::new(len);
        for i in v {
            b.insert(i);
        }
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut b = Bits::new(130);
        b.insert(0);
        b.insert(64);
        b.insert(129);
        assert!(b.contains(64) && !b.contains(63));
        assert_eq!(b.count(), 3);
        assert_eq!(b.first(), Some(0));
        assert_eq!(b.last(), Some(129));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        b.remove(0);
        assert_eq!(b.first(), Some(64));
    }

    #[test]
    fn full_is_trimmed() {
        let b = Bits::full(70);
        assert_eq!(b.count(), 70);
        assert_eq!(b.last(), Some(69));
    }

    #[test]
    fn lattice_of_sets() {
        let a: Bits = [1, 3, 5].into_iter().collect();
        let mut b = Bits::new(6);
        b.insert(3);
        assert!(b.is_subset(&a));
        assert_eq!(first_common(&a, &b), Some(3));
        assert_eq!(last_common(&a, &b), Some(3));
        assert!(and_subset_of(&a, &b, &b));
    }
}
