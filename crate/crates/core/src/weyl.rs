//! Weyl group elements as words in simple reflections.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::roots::{Root, RootSystem, Weight};

/// Default bound for [`enumerate_weyl`]; `|W(E7)| = 2903040` stays below it.
pub const DEFAULT_ORDER_CAP: usize = 4_000_000;

/// `s_{i_1} s_{i_2} ... s_{i_k}` acting on the root lattice. The rightmost
/// reflection acts first. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    // row-major rank x rank; column j is the image of α_j
    matrix: Vec<i64>,
    rank: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement {
            word: Vec::new(),
            matrix,
            rank,
        }
    }

    pub fn from_word(sys: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(sys.rank());
        for &j in word {
            sys.check_index(j)?;
            w = w.then_reflect(sys, j);
        }
        Ok(w)
    }

    /// `self · s_j`.
    fn then_reflect(&self, sys: &RootSystem, j: usize) -> Self {
        let n = self.rank;
        let jj = j - 1;
        let cartan = sys.cartan();
        // (M S_j)[i][k] = M[i][k] - a_kj M[i][j]
        let mut matrix = self.matrix.clone();
        for i in 0..n {
            let mij = self.matrix[i * n + jj];
            if mij == 0 {
                continue;
            }
            for k in 0..n {
                matrix[i * n + k] -= cartan[k][jj] * mij;
            }
        }
        let mut word = self.word.clone();
        word.push(j);
        WeylElement { word, matrix, rank: n }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn apply_root(&self, r: &Root) -> Root {
        let n = self.rank;
        Root((0..n)
            .map(|i| (0..n).map(|j| self.matrix[i * n + j] * r.0[j]).sum())
            .collect())
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        let n = self.rank;
        Weight(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| x.0[j] * self.matrix[i * n + j])
                        .fold(Rational::from_integer(0), |a, b| a + b)
                })
                .collect(),
        )
    }

    /// Shortlex order on words, used to break ties deterministically.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, j) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{j}")?;
        }
        Ok(())
    }
}

/// `s_j(x) = x - <x, α_j^∨> α_j`, `j` 1-based.
pub fn reflect(sys: &RootSystem, j: usize, x: &Weight) -> Result<Weight> {
    sys.check_index(j)?;
    sys.check_rank(x.rank())?;
    let c = sys.coroot_pairing(x, j - 1);
    let mut y = x.clone();
    y.0[j - 1] -= c;
    Ok(y)
}

pub fn apply_weyl(sys: &RootSystem, w: &WeylElement, x: &Weight) -> Result<Weight> {
    sys.check_rank(x.rank())?;
    sys.check_rank(w.rank())?;
    Ok(w.apply(x))
}

/// Every element of the Weyl group, each with its lexicographically least
/// reduced word, listed in shortlex order of those words.
///
/// Breadth-first from the identity: the parents of each length are visited
/// in shortlex order and extended by `s_1, s_2, ...` in turn, so the first
/// word reaching an element is its lexicographically least reduced word.
pub fn enumerate_weyl(sys: &RootSystem, order_cap: usize) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(sys.rank());
    let mut seen: HashSet<Vec<i64>> = HashSet::from([id.matrix.clone()]);
    let mut all = vec![id];
    let mut level_start = 0;
    loop {
        let level_end = all.len();
        for p in level_start..level_end {
            for j in 1..=sys.rank() {
                let child = all[p].then_reflect(sys, j);
                if seen.insert(child.matrix.clone()) {
                    all.push(child);
                    if all.len() > order_cap {
                        return Err(Error::WeylCapExceeded { cap: order_cap });
                    }
                }
            }
        }
        if all.len() == level_end {
            break;
        }
        level_start = level_end;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Family;
    use crate::roots::cartan;

    fn sys(f: Family, n: usize) -> RootSystem {
        RootSystem::new(cartan::standard(f, n).unwrap()).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_weyl(&sys(Family::A, 1), 100).unwrap().len(), 2);
        assert_eq!(enumerate_weyl(&sys(Family::A, 2), 100).unwrap().len(), 6);
        assert_eq!(enumerate_weyl(&sys(Family::B, 2), 100).unwrap().len(), 8);
        assert_eq!(enumerate_weyl(&sys(Family::G, 2), 100).unwrap().len(), 12);
        assert_eq!(enumerate_weyl(&sys(Family::A, 3), 100).unwrap().len(), 24);
        assert_eq!(enumerate_weyl(&sys(Family::F, 4), 2000).unwrap().len(), 1152);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_weyl(&sys(Family::F, 4), 1000).unwrap_err(),
            Error::WeylCapExceeded { cap: 1000 }
        );
    }

    #[test]
    fn canonical_words_are_lex_least_reduced() {
        // brute force over all words up to the longest length
        let s = sys(Family::A, 3);
        let elems = enumerate_weyl(&s, 100).unwrap();
        let max_len = elems.iter().map(|e| e.len()).max().unwrap();
        assert_eq!(max_len, 6);
        let mut best: std::collections::HashMap<Vec<i64>, Vec<usize>> = Default::default();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..=max_len {
            for w in &words {
                let e = WeylElement::from_word(&s, w).unwrap();
                best.entry(e.matrix().to_vec()).or_insert_with(|| w.clone());
            }
            let mut next = Vec::new();
            for w in &words {
                for j in 1..=3 {
                    let mut v = w.clone();
                    v.push(j);
                    next.push(v);
                }
            }
            words = next;
        }
        for e in &elems {
            assert_eq!(best[e.matrix()], e.word());
        }
        for pair in elems.windows(2) {
            assert!(pair[0].canonical_cmp(&pair[1]).is_lt());
        }
    }

    #[test]
    fn reflection_basics() {
        let s = sys(Family::F, 4);
        let a1 = s.simple_root(1).to_weight();
        assert_eq!(reflect(&s, 1, &a1).unwrap(), a1.scale(Rational::from_integer(-1)));
        let id = WeylElement::identity(4);
        let x = Weight(vec![
            Rational::new(1, 3),
            Rational::from_integer(-2),
            Rational::new(5, 2),
            Rational::from_integer(0),
        ]);
        assert_eq!(apply_weyl(&s, &id, &x).unwrap(), x);
        assert!(reflect(&s, 5, &x).is_err());
        assert!(WeylElement::from_word(&s, &[0]).is_err());
    }

    #[test]
    fn catalog_word_moves_highest_root() {
        let s = sys(Family::F, 4);
        let beta = s.highest_root().unwrap();
        let w = WeylElement::from_word(&s, &[4, 2, 3, 2, 1]).unwrap();
        let image = w.apply_root(&beta);
        assert!(s.is_positive_root(&image));
        assert_ne!(image, beta);
        assert_eq!(image, Root(vec![1, 1, 2, 0]));
        assert_eq!(w.to_string(), "s4 s2 s3 s2 s1");
    }
}
