//! Bitset over carrier indices.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use std::fmt;

const WORD: usize = 64;

/// A set of carrier indices stored as a bitset.
///
/// Ordering is lexicographic on the sorted member list, which gives the
/// "smallest witness" convention used by the checkers.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: SmallVec<[u64; 2]>,
}

impl ElemSet {
    pub fn new() -> Self {
        ElemSet {
            words: SmallVec::new(),
        }
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / WORD, x % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, x: usize) -> bool {
        let (w, b) = (x / WORD, x % WORD);
        if w >= self.words.len() {
            return false;
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        self.trim();
        had
    }

    pub fn contains(&self, x: usize) -> bool {
        let (w, b) = (x / WORD, x % WORD);
        w < self.words.len() && self.words[w] >> b & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut r = ElemSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        };
        r.trim();
        r
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut r = self.clone();
        for (a, b) in r.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
        r.trim();
        r
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().enumerate().all(|(i, &a)| {
            let b = other.words.get(i).copied().unwrap_or(0);
            a & !b == 0
        })
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// The single member, if the set is a singleton.
    pub fn only(&self) -> Option<usize> {
        if self.len() == 1 {
            self.first()
        } else {
            None
        }
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD + b);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a ElemSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl Extend<usize> for ElemSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for x in iter {
            self.insert(x);
        }
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Ok(Vec::<usize>::deserialize(de)?.into_iter().collect())
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: ElemSet = [1, 5, 70].into_iter().collect();
        let b: ElemSet = [5, 6].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(70) && !a.contains(6));
        assert_eq!(a.intersection(&b).to_vec(), vec![5]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 5, 6, 70]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 70]);
        assert!(ElemSet::singleton(5).is_subset(&b));
        assert_eq!(ElemSet::singleton(3).only(), Some(3));
        assert_eq!(a.first(), Some(1));
    }

    #[test]
    fn equality_ignores_trailing_words() {
        let mut a = ElemSet::singleton(100);
        a.remove(100);
        assert_eq!(a, ElemSet::new());
        assert!(a.is_empty());
    }
}
