//! Normalized inhomogeneous cochains of a Young subgroup `H ⊆ S_N` with
//! coefficients in a representation of `H`.
//!
//! A `t`-cocycle (`t ≥ 1`) is determined by its values `f(s, x_2, …, x_t)`
//! with `s` a simple reflection of `H`: writing `g = s·b` with `b` shorter,
//! the cocycle identity at `(s, b, x_2, …)` computes `f(g, x_2, …)` from
//! `f(b, …)` and values with first argument `s`. Those values are the
//! *coordinates* of a cochain. The remaining instances of the cocycle
//! identity cut out the cocycles.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{Mat, Ring};
use crate::symrep::{Perm, Rep, YoungSubgroup};

/// A cochain as a function of `t` group elements.
pub type Cocycle<R> = Arc<dyn Fn(&[Perm]) -> Vec<<R as Ring>::Elem> + Send + Sync>;

/// Pads or checks a permutation against the ambient size.
pub(crate) fn fit(g: &Perm, n: usize) -> Perm {
    if g.n() == n {
        g.clone()
    } else {
        g.resize(n)
    }
}

/// Elements of a Young subgroup with multiplication table and the chosen
/// factorizations `g = s·b`.
#[derive(Debug)]
pub struct GroupTable {
    pub elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<u32>,
    /// `(generator position, index of b)` with `g = s b`, `ℓ(b) < ℓ(g)`.
    decomp: Vec<Option<(usize, usize)>>,
    gen_index: Vec<usize>,
}

impl GroupTable {
    pub fn new(h: &YoungSubgroup, gens: &[usize]) -> Self {
        let n = h.n();
        // product of the block symmetric groups
        let mut elems = vec![Perm::identity(n)];
        for (&start, &len) in h.block_starts().iter().zip(h.blocks()) {
            let mut next = Vec::new();
            for p in Perm::all(len) {
                for e in &elems {
                    let mut im = e.images().to_vec();
                    for (i, &x) in p.images().iter().enumerate() {
                        im[start + i] = start + x;
                    }
                    next.push(Perm::from_images(im).unwrap());
                }
            }
            elems = next;
        }
        elems.sort_by_key(|g| (g.length(), g.images().to_vec()));
        let index: HashMap<Perm, usize> = elems.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let size = elems.len();
        let mut mul = vec![0u32; size * size];
        for (a, ga) in elems.iter().enumerate() {
            for (b, gb) in elems.iter().enumerate() {
                mul[a * size + b] = index[&ga.compose(gb)] as u32;
            }
        }
        let gen_index: Vec<usize> = gens.iter().map(|&i| index[&Perm::s(i, n)]).collect();
        let decomp = elems
            .iter()
            .map(|g| {
                let i = g.first_left_descent()?;
                let pos = gens.iter().position(|&x| x == i).expect("descent outside the subgroup");
                let b = Perm::s(i, n).compose(g);
                Some((pos, index[&b]))
            })
            .collect();
        GroupTable {
            elems,
            index,
            mul,
            decomp,
            gen_index,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elems.len() + b] as usize
    }
}

/// Values of `k` cochains on all of `H^t`, as `m × k` blocks.
#[derive(Clone, Debug)]
pub struct CochainTable<E> {
    k: usize,
    m: usize,
    data: Vec<E>,
}

impl<E: Clone> CochainTable<E> {
    fn block(&self, code: usize) -> &[E] {
        let s = self.m * self.k;
        &self.data[code * s..(code + 1) * s]
    }
}

/// Cochains of `H` in degree `t` with coefficients in `module`.
#[derive(Clone, Debug)]
pub struct CochainModel<R: Ring> {
    ring: R,
    group: YoungSubgroup,
    gens: Vec<usize>,
    gen_mats: Vec<Mat<R>>,
    module: Rep<R>,
    t: usize,
    table: Option<Arc<GroupTable>>,
}

impl<R: Ring> CochainModel<R> {
    /// `with_table` enumerates `H`, which degree `t ≥ 2` requires.
    pub fn new(group: &YoungSubgroup, module: &Rep<R>, t: usize, with_table: bool) -> Result<Self> {
        if module.n() != group.n() {
            return Err(Error::invalid(format!(
                "module lives on {} points, subgroup on {}",
                module.n(),
                group.n()
            )));
        }
        let gens = group.generators();
        let mut gen_mats = Vec::new();
        for &i in &gens {
            gen_mats.push(
                module
                    .generator(i)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("module does not define s_{i}")))?,
            );
        }
        if t >= 2 && !with_table {
            return Err(Error::invalid("degree ≥ 2 needs the element table"));
        }
        let table = with_table.then(|| Arc::new(GroupTable::new(group, &gens)));
        Ok(CochainModel {
            ring: module.ring().clone(),
            group: group.clone(),
            gens,
            gen_mats,
            module: module.clone(),
            t,
            table,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn group(&self) -> &YoungSubgroup {
        &self.group
    }
    pub fn module(&self) -> &Rep<R> {
        &self.module
    }
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn m(&self) -> usize {
        self.module.dim()
    }
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }
    pub fn table(&self) -> Option<&Arc<GroupTable>> {
        self.table.as_ref()
    }

    fn tail_count(&self) -> usize {
        match self.t {
            0 | 1 => 1,
            t => (self.table.as_ref().unwrap().len() - 1).pow(t as u32 - 1),
        }
    }

    /// Number of coordinates.
    pub fn ncoords(&self) -> usize {
        match self.t {
            0 => self.m(),
            _ => self.gens.len() * self.tail_count() * self.m(),
        }
    }

    fn coord(&self, gpos: usize, tail: usize, c: usize) -> usize {
        (gpos * self.tail_count() + tail) * self.m() + c
    }

    /// Code of a tail of non-identity element indices.
    fn tail_code(&self, tail: &[usize]) -> Option<usize> {
        let base = self.table.as_ref().map_or(1, |t| t.len() - 1);
        let mut code = 0;
        for &x in tail {
            if x == 0 {
                return None;
            }
            code = code * base + (x - 1);
        }
        Some(code)
    }

    fn tail_of(&self, mut code: usize) -> Vec<usize> {
        let base = self.table.as_ref().map_or(1, |t| t.len() - 1);
        let mut out = vec![0; self.t.saturating_sub(1)];
        for x in out.iter_mut().rev() {
            *x = code % base + 1;
            code /= base;
        }
        out
    }

    /// Values of the cochains with coordinate columns `coords` on all of `H^t`.
    pub fn cochain_table(&self, coords: &Mat<R>) -> CochainTable<R::Elem> {
        let r = &self.ring;
        let tab = self.table.as_ref().expect("element table");
        let (t, m, k, size) = (self.t, self.m(), coords.cols(), tab.len());
        assert!(t >= 1 && coords.rows() == self.ncoords());
        let tuples = size.pow(t as u32);
        let stride = m * k;
        let mut data = vec![r.zero(); tuples * stride];
        let rest_tuples = size.pow(t as u32 - 1);
        let coord_block = |gpos: usize, tail: &[usize], out: &mut [R::Elem], sign: bool| {
            if let Some(code) = self.tail_code(tail) {
                for c in 0..m {
                    let row = self.coord(gpos, code, c);
                    for col in 0..k {
                        let v = coords.get(row, col);
                        let o = &mut out[c * k + col];
                        *o = if sign { r.sub(o, v) } else { r.add(o, v) };
                    }
                }
            }
        };
        let digits = |code: usize| -> Vec<usize> {
            let mut d = vec![0; t - 1];
            let mut c = code;
            for x in d.iter_mut().rev() {
                *x = c % size;
                c /= size;
            }
            d
        };
        for g in 1..size {
            let (gpos, b) = tab.decomp[g].unwrap();
            for rest in 0..rest_tuples {
                let tail = digits(rest);
                if tail.contains(&0) {
                    continue;
                }
                let mut out = vec![r.zero(); stride];
                if b == 0 {
                    coord_block(gpos, &tail, &mut out, false);
                } else {
                    // s · f(b, tail)
                    let src = &data[(b * rest_tuples + rest) * stride..(b * rest_tuples + rest + 1) * stride];
                    let s = &self.gen_mats[gpos];
                    for c in 0..m {
                        for c2 in 0..m {
                            let a = s.get(c, c2);
                            if r.is_zero(a) {
                                continue;
                            }
                            for col in 0..k {
                                r.add_mul_assign(&mut out[c * k + col], a, &src[c2 * k + col]);
                            }
                        }
                    }
                    let mut args = vec![b];
                    args.extend(&tail);
                    for j in 2..=t {
                        let mut merged = args.clone();
                        let x = tab.mul(merged[j - 2], merged[j - 1]);
                        merged.splice(j - 2..j, [x]);
                        coord_block(gpos, &merged, &mut out, j % 2 == 1);
                    }
                    coord_block(gpos, &args[..t - 1], &mut out, t % 2 == 0);
                }
                let dst = (g * rest_tuples + rest) * stride;
                data[dst..dst + stride].clone_from_slice(&out);
            }
        }
        CochainTable { k, m, data }
    }

    fn tuple_code(&self, idx: &[usize]) -> usize {
        let size = self.table.as_ref().unwrap().len();
        idx.iter().fold(0, |acc, &x| acc * size + x)
    }

    /// The cochain with the given coordinates, as a function.
    pub fn evaluator(&self, coords: &[R::Elem]) -> Cocycle<R> {
        assert_eq!(coords.len(), self.ncoords());
        let n = self.group.n();
        match self.t {
            0 => {
                let v = coords.to_vec();
                Arc::new(move |_: &[Perm]| v.clone())
            }
            1 => {
                // f(s b) = s f(b) + f(s) along a reduced word
                let m = self.m();
                let values: Vec<Vec<R::Elem>> = (0..self.gens.len())
                    .map(|g| coords[g * m..(g + 1) * m].to_vec())
                    .collect();
                let gens = self.gens.clone();
                let mats = self.gen_mats.clone();
                let r = self.ring.clone();
                Arc::new(move |args: &[Perm]| {
                    let g = fit(&args[0], n);
                    let mut v = vec![r.zero(); m];
                    for &letter in g.reduced_word().iter().rev() {
                        let pos = gens
                            .iter()
                            .position(|&x| x == letter)
                            .expect("argument outside the subgroup");
                        v = mats[pos].mul_vec(&v);
                        for (a, b) in v.iter_mut().zip(&values[pos]) {
                            r.add_assign(a, b);
                        }
                    }
                    v
                })
            }
            _ => {
                let c = Mat::from_columns(&self.ring, coords.len(), &[coords.to_vec()]);
                let table = Arc::new(self.cochain_table(&c));
                let tab = self.table.clone().unwrap();
                let model = self.clone();
                Arc::new(move |args: &[Perm]| {
                    let idx: Vec<usize> = args
                        .iter()
                        .map(|g| tab.index_of(&fit(g, n)).expect("argument outside the subgroup"))
                        .collect();
                    table.block(model.tuple_code(&idx)).to_vec()
                })
            }
        }
    }

    /// Coordinates of a cochain given as a function.
    pub fn coords_of(&self, f: &Cocycle<R>) -> Vec<R::Elem> {
        let n = self.group.n();
        match self.t {
            0 => f(&[]),
            _ => {
                let mut out = Vec::with_capacity(self.ncoords());
                for &i in &self.gens {
                    for code in 0..self.tail_count() {
                        let mut args = vec![Perm::s(i, n)];
                        if self.t >= 2 {
                            let tab = self.table.as_ref().unwrap();
                            args.extend(self.tail_of(code).into_iter().map(|x| tab.elems[x].clone()));
                        }
                        out.extend(f(&args));
                    }
                }
                out
            }
        }
    }

    /// Degree 0: the fixed vectors.
    pub fn invariants(&self) -> Mat<R> {
        let r = &self.ring;
        let m = self.m();
        let mut stacked = Mat::zeros(r, 0, m);
        for s in &self.gen_mats {
            stacked = stacked.vstack(&s.sub(&Mat::identity(r, m)));
        }
        stacked.kernel()
    }

    /// Degree 1: the Coxeter relations `s_i^2`, `(s_i s_{i+1})^3` and
    /// `(s_i s_j)^2` imposed on the values at the generators.
    pub fn relation_matrix(&self) -> Mat<R> {
        let r = &self.ring;
        let m = self.m();
        let k = self.gens.len();
        let mut words: Vec<Vec<usize>> = Vec::new();
        for a in 0..k {
            words.push(vec![a, a]);
            for b in a + 1..k {
                if self.gens[b] == self.gens[a] + 1 {
                    words.push([a, b].repeat(3));
                } else {
                    words.push([a, b].repeat(2));
                }
            }
        }
        let mut out = Mat::zeros(r, words.len() * m, k * m);
        for (w, word) in words.iter().enumerate() {
            let mut prefix = Mat::identity(r, m);
            for &letter in word {
                for i in 0..m {
                    for j in 0..m {
                        let row = w * m + i;
                        let col = letter * m + j;
                        let v = r.add(out.get(row, col), prefix.get(i, j));
                        out.set(row, col, v);
                    }
                }
                prefix = prefix.mul(&self.gen_mats[letter]);
            }
        }
        out
    }

    /// Coordinates of `δ` of a basis of normalized `(t−1)`-cochains.
    pub fn coboundaries(&self) -> Mat<R> {
        let r = &self.ring;
        let m = self.m();
        let t = self.t;
        if t == 0 {
            return Mat::zeros(r, m, 0);
        }
        if t == 1 {
            let mut out = Mat::zeros(r, self.ncoords(), m);
            for (g, s) in self.gen_mats.iter().enumerate() {
                let d = s.sub(&Mat::identity(r, m));
                for c in 0..m {
                    for j in 0..m {
                        out.set(self.coord(g, 0, c), j, d.get(c, j).clone());
                    }
                }
            }
            return out;
        }
        let tab = self.table.as_ref().unwrap();
        let base = tab.len() - 1;
        let ncols = base.pow(t as u32 - 1) * m;
        let mut out = Mat::zeros(r, self.ncoords(), ncols);
        let add = |row: usize, col: usize, v: &R::Elem, out: &mut Mat<R>| {
            let x = r.add(out.get(row, col), v);
            out.set(row, col, x);
        };
        let one = r.one();
        let minus = r.neg(&one);
        for gpos in 0..self.gens.len() {
            let s_idx = tab.gen_index[gpos];
            for code in 0..self.tail_count() {
                let tail = self.tail_of(code);
                let mut args = vec![s_idx];
                args.extend(&tail);
                // a_1 u(a_2, …, a_t)
                let u_code = self.tail_code(&tail).unwrap();
                for c in 0..m {
                    for c2 in 0..m {
                        let v = self.gen_mats[gpos].get(c, c2);
                        if !r.is_zero(v) {
                            add(self.coord(gpos, code, c), u_code * m + c2, v, &mut out);
                        }
                    }
                }
                for j in 1..t {
                    let mut merged = args.clone();
                    let x = tab.mul(merged[j - 1], merged[j]);
                    merged.splice(j - 1..j + 1, [x]);
                    if let Some(uc) = self.tail_code(&merged) {
                        let sign = if j % 2 == 1 { &minus } else { &one };
                        for c in 0..m {
                            add(self.coord(gpos, code, c), uc * m + c, sign, &mut out);
                        }
                    }
                }
                if let Some(uc) = self.tail_code(&args[..t - 1]) {
                    let sign = if t % 2 == 1 { &minus } else { &one };
                    for c in 0..m {
                        add(self.coord(gpos, code, c), uc * m + c, sign, &mut out);
                    }
                }
            }
        }
        out
    }

    /// The instances `δf(s, b, x_2, …, x_t) = 0` not used to build the table,
    /// evaluated on a table: returns the violated rows, at most `cap`.
    fn violated_rows(&self, table: &CochainTable<R::Elem>, order: &[u32], cap: usize) -> Vec<Vec<R::Elem>> {
        let r = &self.ring;
        let tab = self.table.as_ref().unwrap();
        let (t, m, k, size) = (self.t, self.m(), table.k, tab.len());
        let base = size - 1;
        let per_gen = base.pow(t as u32);
        let mut out = Vec::new();
        for &e in order {
            let e = e as usize;
            let gpos = e / per_gen;
            let mut rest = e % per_gen;
            let mut args = vec![0; t];
            for x in args.iter_mut().rev() {
                *x = rest % base + 1;
                rest /= base;
            }
            let s = tab.gen_index[gpos];
            let sb = tab.mul(s, args[0]);
            if tab.decomp[sb] == Some((gpos, args[0])) {
                continue;
            }
            // s f(b, x) − f(sb, x) + Σ_{j≥2} (−1)^j f(s, …) + (−1)^{t+1} f(s, b, …)
            let mut val = vec![r.zero(); m * k];
            let fb = table.block(self.tuple_code(&args));
            let smat = &self.gen_mats[gpos];
            for c in 0..m {
                for c2 in 0..m {
                    let a = smat.get(c, c2);
                    if !r.is_zero(a) {
                        for col in 0..k {
                            r.add_mul_assign(&mut val[c * k + col], a, &fb[c2 * k + col]);
                        }
                    }
                }
            }
            let sub = |tuple: &[usize], negate: bool, val: &mut Vec<R::Elem>| {
                if tuple.contains(&0) {
                    return;
                }
                let blk = table.block(self.tuple_code(tuple));
                for (v, x) in val.iter_mut().zip(blk) {
                    *v = if negate { r.sub(v, x) } else { r.add(v, x) };
                }
            };
            let mut first = args.clone();
            first[0] = sb;
            sub(&first, true, &mut val);
            for j in 2..=t {
                let mut merged = args.clone();
                let x = tab.mul(merged[j - 2], merged[j - 1]);
                merged.splice(j - 2..j, [x]);
                merged.insert(0, s);
                sub(&merged, j % 2 == 1, &mut val);
            }
            let mut last = vec![s];
            last.extend(&args[..t - 1]);
            sub(&last, t % 2 == 0, &mut val);
            for c in 0..m {
                let row = &val[c * k..(c + 1) * k];
                if row.iter().any(|x| !r.is_zero(x)) {
                    out.push(row.to_vec());
                    if out.len() >= cap {
                        return out;
                    }
                }
            }
        }
        out
    }

    /// A basis (saturated over `Z`) of the cocycles in coordinates, from the
    /// full cocycle identity. Violated identities are added in batches in a
    /// seeded order until none remain.
    pub fn bar_cocycles(&self, seed: u64) -> Mat<R> {
        let r = &self.ring;
        let n = self.ncoords();
        if self.t == 0 {
            return self.invariants();
        }
        let tab = self.table.as_ref().expect("element table");
        let total = self.gens.len() * (tab.len() - 1).pow(self.t as u32);
        let mut order: Vec<u32> = (0..total as u32).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut basis = Mat::identity(r, n);
        loop {
            if basis.cols() == 0 {
                return basis;
            }
            let table = self.cochain_table(&basis);
            let rows = self.violated_rows(&table, &order, basis.cols() + 16);
            if rows.is_empty() {
                return basis;
            }
            let k = basis.cols();
            let v = Mat::from_rows(r, rows, k);
            basis = basis.mul(&v.kernel());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    #[test]
    fn coordinates_round_trip_through_the_table() {
        let f = PrimeField::new(3).unwrap();
        let h = YoungSubgroup::new(&[3]);
        let m = Rep::sign(&f, 3);
        let model = CochainModel::new(&h, &m, 2, true).unwrap();
        let z = model.bar_cocycles(1);
        for j in 0..z.cols() {
            let c = z.column(j);
            let e = model.evaluator(&c);
            assert_eq!(model.coords_of(&e), c);
        }
        // coboundaries are cocycles
        let b = model.coboundaries();
        let table = model.cochain_table(&b);
        let order: Vec<u32> = (0..(2 * 5 * 5) as u32).collect();
        assert!(model.violated_rows(&table, &order, 1).is_empty());
    }
}
