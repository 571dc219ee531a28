//! Young subgroups `S_{n_1} × ⋯ × S_{n_k} ⊂ S_n` on consecutive blocks, and
//! their coset representatives.

use super::perm::Perm;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungSubgroup {
    blocks: Vec<usize>,
}

impl YoungSubgroup {
    /// Empty blocks are dropped.
    pub fn new(blocks: &[usize]) -> Self {
        YoungSubgroup {
            blocks: blocks.iter().cloned().filter(|&b| b > 0).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self::new(&[n])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn order(&self) -> u128 {
        self.blocks
            .iter()
            .map(|&b| (1..=b as u128).product::<u128>())
            .product()
    }

    /// Block index of each point.
    pub fn labels(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, &len)| std::iter::repeat(b).take(len))
            .collect()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.labels()[i]
    }

    /// Whether `s_i` lies in the subgroup.
    pub fn has_generator(&self, i: usize) -> bool {
        let l = self.labels();
        i + 1 < l.len() && l[i] == l[i + 1]
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.n().saturating_sub(1))
            .filter(|&i| self.has_generator(i))
            .collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let l = self.labels();
        g.n() <= l.len() && (0..g.n()).all(|i| l[g.apply(i)] == l[i])
    }

    /// Whether every block of `self` sits inside a block of `other`.
    pub fn is_subgroup_of(&self, other: &YoungSubgroup) -> bool {
        self.n() == other.n() && self.generators().iter().all(|&i| other.has_generator(i))
    }

    /// All elements, ordered lexicographically by images.
    pub fn elements(&self) -> Vec<Perm> {
        Perm::all(self.n())
            .into_iter()
            .filter(|g| self.contains(g))
            .collect()
    }

    /// Minimal-length representatives of the right cosets `H g` of
    /// `self = H` in `S_n`, in lexicographic order of the labeling
    /// `i ↦ block(g(i))`.
    pub fn right_coset_reps(&self) -> Vec<Perm> {
        labelings(&self.blocks)
            .into_iter()
            .map(|lab| self.rep_of_labeling(&lab))
            .collect()
    }

    /// Representatives of `H\G` for a Young subgroup `G ⊇ H`: those of
    /// `H\S_n` that lie in `G`, in the same order.
    pub fn right_coset_reps_in(&self, g: &YoungSubgroup) -> Result<Vec<Perm>> {
        if !self.is_subgroup_of(g) {
            return Err(Error::invalid(format!(
                "{:?} is not a subgroup of {:?}",
                self.blocks, g.blocks
            )));
        }
        // each block of G is labelled independently by the H-blocks inside it
        let mine = self.labels();
        let mut per_block: Vec<Vec<Vec<usize>>> = Vec::new();
        for (&start, &len) in g.block_starts().iter().zip(&g.blocks) {
            let inside = &mine[start..start + len];
            let first = inside[0];
            let counts: Vec<usize> = (first..=inside[len - 1])
                .map(|b| inside.iter().filter(|&&x| x == b).count())
                .collect();
            per_block.push(
                labelings(&counts)
                    .into_iter()
                    .map(|l| l.into_iter().map(|x| x + first).collect())
                    .collect(),
            );
        }
        let mut out = vec![Vec::new()];
        for choices in &per_block {
            let mut next = Vec::new();
            for prefix in &out {
                for c in choices {
                    let mut l: Vec<usize> = prefix.clone();
                    l.extend(c);
                    next.push(l);
                }
            }
            out = next;
        }
        Ok(out.iter().map(|lab| self.rep_of_labeling(lab)).collect())
    }

    /// The minimal-length element with labeling `lab`: positions labelled
    /// `b` receive the values of block `b` in increasing order.
    fn rep_of_labeling(&self, lab: &[usize]) -> Perm {
        let starts = self.block_starts();
        let mut next = starts.clone();
        let images = lab
            .iter()
            .map(|&b| {
                let v = next[b];
                next[b] += 1;
                v
            })
            .collect();
        Perm::from_images(images).unwrap()
    }

    pub fn block_starts(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, &b| {
                let s = *acc;
                *acc += b;
                Some(s)
            })
            .collect()
    }

    /// The representative `ḡ` of `H g`.
    pub fn right_rep(&self, g: &Perm) -> Perm {
        let l = self.labels();
        let lab: Vec<usize> = (0..g.n()).map(|i| l[g.apply(i)]).collect();
        self.rep_of_labeling(&lab)
    }

    /// `ρ(g) = g ḡ^{-1} ∈ H`.
    pub fn rho(&self, g: &Perm) -> Perm {
        g.compose(&self.right_rep(g).inverse())
    }

    /// Minimal-length representatives `c` of the left cosets `c H` for two
    /// blocks `(a, b)`: `c` maps `0..a` increasingly onto a subset `A` and
    /// the rest increasingly onto the complement, subsets in lex order.
    pub fn left_coset_reps_two_blocks(&self) -> Result<Vec<(Vec<usize>, Perm)>> {
        if self.blocks.len() > 2 {
            return Err(Error::invalid("left coset representatives need at most two blocks"));
        }
        let n = self.n();
        let a = self.blocks.first().cloned().unwrap_or(0);
        Ok(subsets(n, a)
            .into_iter()
            .map(|s| {
                let c = subset_rep(n, &s);
                (s, c)
            })
            .collect())
    }
}

/// The permutation sending `0..|A|` increasingly onto `A` and the remaining
/// points increasingly onto the complement.
pub fn subset_rep(n: usize, a: &[usize]) -> Perm {
    let mut images = a.to_vec();
    images.extend((0..n).filter(|i| !a.contains(i)));
    Perm::from_images(images).unwrap()
}

/// All `k`-subsets of `0..n`, sorted, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All words with `blocks[b]` copies of the letter `b`, lexicographically.
fn labelings(blocks: &[usize]) -> Vec<Vec<usize>> {
    fn rec(left: &mut Vec<usize>, cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for b in 0..left.len() {
            if left[b] > 0 {
                left[b] -= 1;
                cur.push(b);
                rec(left, cur, total, out);
                cur.pop();
                left[b] += 1;
            }
        }
    }
    let total = blocks.iter().sum();
    let mut out = Vec::new();
    rec(&mut blocks.to_vec(), &mut Vec::new(), total, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_decomposition() {
        let h = YoungSubgroup::new(&[2, 1, 2]);
        let reps = h.right_coset_reps();
        assert_eq!(reps.len(), 30);
        assert_eq!(h.order(), 4);
        for g in Perm::all(5) {
            let r = h.right_rep(&g);
            assert!(reps.contains(&r));
            let rho = h.rho(&g);
            assert!(h.contains(&rho));
            assert_eq!(rho.compose(&r), g);
            assert!(r.length() <= g.length());
        }
    }

    #[test]
    fn relative_coset_reps() {
        let h = YoungSubgroup::new(&[1, 2, 1, 1]);
        let g = YoungSubgroup::new(&[3, 2]);
        let reps = h.right_coset_reps_in(&g).unwrap();
        assert_eq!(reps.len() as u128, g.order() / h.order());
        for r in &reps {
            assert!(g.contains(r));
            assert_eq!(&h.right_rep(r), r);
        }
        assert!(g.right_coset_reps_in(&h).is_err());
    }

    #[test]
    fn left_reps_for_two_blocks() {
        let h = YoungSubgroup::new(&[2, 2]);
        let reps = h.left_coset_reps_two_blocks().unwrap();
        assert_eq!(reps.len(), 6);
        assert_eq!(reps[0].0, vec![0, 1]);
        for (a, c) in &reps {
            assert_eq!(&c.images()[..2], &a[..]);
        }
    }
}
