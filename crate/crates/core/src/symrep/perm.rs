//! Permutations of `{0, …, n−1}`.
//!
//! Composition is `(g h)(i) = g(h(i))`; `s_i` swaps `i` and `i + 1`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// The adjacent transposition `s_i` in `S_n`.
    pub fn s(i: usize, n: usize) -> Self {
        assert!(i + 1 < n, "s_{i} is not in S_{n}");
        let mut p = Self::identity(n);
        p.images.swap(i, i + 1);
        p
    }

    /// `s_{w_0} s_{w_1} ⋯` in `S_n`.
    pub fn from_word(word: &[usize], n: usize) -> Self {
        word.iter()
            .fold(Self::identity(n), |acc, &i| acc.compose(&Self::s(i, n)))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`; sizes are padded with fixed points to agree.
    pub fn compose(&self, other: &Perm) -> Perm {
        let n = self.n().max(other.n());
        let a = self.resize(n);
        let b = other.resize(n);
        Perm {
            images: (0..n).map(|i| a.images[b.images[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// Pads with fixed points, or drops trailing points the permutation
    /// fixes. Panics when a dropped point is moved.
    pub fn resize(&self, n: usize) -> Perm {
        if n >= self.n() {
            let mut images = self.images.clone();
            images.extend(self.n()..n);
            Perm { images }
        } else {
            assert!(
                (n..self.n()).all(|i| self.images[i] == i),
                "cannot truncate {self:?} to S_{n}"
            );
            Perm {
                images: self.images[..n].to_vec(),
            }
        }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut c = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// A reduced word `w` with `self = s_{w_0} s_{w_1} ⋯ s_{w_k}`, obtained by
    /// bubble sort on right descents.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut h = self.images.clone();
        let mut w = Vec::new();
        loop {
            let Some(i) = (0..h.len().saturating_sub(1)).find(|&i| h[i] > h[i + 1]) else {
                break;
            };
            h.swap(i, i + 1);
            w.push(i);
        }
        w.reverse();
        w
    }

    /// A second reduced word, peeled off from left descents; used to test
    /// that actions do not depend on the word chosen.
    pub fn reduced_word_left(&self) -> Vec<usize> {
        let mut w = self.inverse().reduced_word();
        w.reverse();
        w
    }

    /// Smallest `i` with `g^{-1}(i) > g^{-1}(i+1)`, i.e. `ℓ(s_i g) < ℓ(g)`.
    pub fn first_left_descent(&self) -> Option<usize> {
        let inv = self.inverse();
        (0..self.n().saturating_sub(1)).find(|&i| inv.images[i] > inv.images[i + 1])
    }

    /// All of `S_n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_reproduce_the_permutation() {
        for n in 0..6 {
            for g in Perm::all(n) {
                let w = g.reduced_word();
                assert_eq!(w.len(), g.length());
                assert_eq!(Perm::from_word(&w, n), g);
                let w2 = g.reduced_word_left();
                assert_eq!(w2.len(), g.length());
                assert_eq!(Perm::from_word(&w2, n), g);
            }
        }
    }

    #[test]
    fn group_laws() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        for g in &all {
            assert!(g.compose(&g.inverse()).is_identity());
            if let Some(i) = g.first_left_descent() {
                assert_eq!(Perm::s(i, 4).compose(g).length() + 1, g.length());
            }
        }
        let s0 = Perm::s(0, 3);
        assert_eq!(s0.resize(5).resize(2), Perm::s(0, 2));
    }
}
