//! FI-modules as evaluable families `n ↦ M_n` with transition maps
//! `M_n → M_{n+1}` along the standard inclusion `[n] ⊂ [n+1]`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Mat, Ring};
use crate::symrep::specht::express_in_standard_basis;
use crate::symrep::{
    induce_young, outer_tensor, permutation_module, specht_module, subset_rep, subsets, Partition, Perm, Rep,
};

pub const DEFAULT_N_MAX: usize = 12;

/// Generation degree, relation degree bound and degree, as supplied by the
/// constructors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FIMeta {
    pub g: i64,
    pub r: i64,
    pub delta: i64,
    pub source: String,
}

/// A named representation of `S_d` used in descriptors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseRep {
    Trivial,
    Sign,
    Regular,
    Points,
}

impl BaseRep {
    pub fn build<R: Ring>(self, ring: &R, d: usize) -> Rep<R> {
        match self {
            BaseRep::Trivial => Rep::trivial(ring, d),
            BaseRep::Sign => Rep::sign(ring, d),
            BaseRep::Regular => Rep::regular(ring, d),
            BaseRep::Points => Rep::points(ring, d),
        }
    }

    fn name(self) -> &'static str {
        match self {
            BaseRep::Trivial => "trivial",
            BaseRep::Sign => "sign",
            BaseRep::Regular => "regular",
            BaseRep::Points => "points",
        }
    }
}

impl FromStr for BaseRep {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "trivial" | "triv" => Ok(BaseRep::Trivial),
            "sign" => Ok(BaseRep::Sign),
            "regular" => Ok(BaseRep::Regular),
            "points" | "perm" => Ok(BaseRep::Points),
            other => Err(Error::invalid(format!(
                "unknown representation '{other}' (trivial, sign, regular, points)"
            ))),
        }
    }
}

/// Constructor tag and parameters, as written in config files:
/// `trivial`, `induced:d=2,rep=regular`, `specht:2,1`, `point:d=0`,
/// `shift:<descriptor>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FIDescriptor {
    Trivial,
    Induced { d: usize, rep: BaseRep },
    Specht(Partition),
    Point { d: usize, rep: BaseRep },
    Shift(Box<FIDescriptor>),
}

impl fmt::Display for FIDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FIDescriptor::Trivial => write!(f, "trivial"),
            FIDescriptor::Induced { d, rep } => write!(f, "induced:d={d},rep={}", rep.name()),
            FIDescriptor::Specht(mu) => {
                let s: Vec<String> = mu.parts().iter().map(|p| p.to_string()).collect();
                write!(f, "specht:{}", s.join(","))
            }
            FIDescriptor::Point { d, rep } => write!(f, "point:d={d},rep={}", rep.name()),
            FIDescriptor::Shift(inner) => write!(f, "shift:{inner}"),
        }
    }
}

fn parse_kv(body: &str) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for item in body.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("expected key=value, got '{item}'")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

impl FromStr for FIDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (tag, body) = s.split_once(':').unwrap_or((s, ""));
        let get_d = |kv: &HashMap<String, String>| -> Result<usize> {
            kv.get("d")
                .ok_or_else(|| Error::invalid(format!("'{s}' needs d=<degree>")))?
                .parse()
                .map_err(|_| Error::invalid(format!("bad degree in '{s}'")))
        };
        match tag {
            "trivial" | "A" => Ok(FIDescriptor::Trivial),
            "induced" | "point" => {
                let kv = parse_kv(body)?;
                for k in kv.keys() {
                    if k != "d" && k != "rep" {
                        return Err(Error::invalid(format!("unknown key '{k}' in '{s}'")));
                    }
                }
                let d = get_d(&kv)?;
                let rep = kv.get("rep").map_or(Ok(BaseRep::Trivial), |r| r.parse())?;
                Ok(if tag == "induced" {
                    FIDescriptor::Induced { d, rep }
                } else {
                    FIDescriptor::Point { d, rep }
                })
            }
            "specht" => {
                let parts = body
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::invalid(format!("bad partition in '{s}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(FIDescriptor::Specht(Partition::new(&parts)?))
            }
            "shift" => Ok(FIDescriptor::Shift(Box::new(body.parse()?))),
            other => Err(Error::invalid(format!(
                "unknown module '{other}' (trivial, induced, specht, point, shift)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
enum Kind<R: Ring> {
    Induced { v: Rep<R>, d: usize },
    Specht { mu: Partition },
    Point { v: Rep<R>, d: usize },
    Shift(Box<FIModuleHandle<R>>),
}

/// An FI-module with memoized evaluation. Clones share the cache.
#[derive(Clone, Debug)]
pub struct FIModuleHandle<R: Ring> {
    ring: R,
    kind: Kind<R>,
    meta: FIMeta,
    n_max: usize,
    cache: Arc<Mutex<HashMap<usize, Rep<R>>>>,
    tcache: Arc<Mutex<HashMap<usize, Mat<R>>>>,
}

impl<R: Ring> FIModuleHandle<R> {
    fn build(ring: &R, kind: Kind<R>, meta: FIMeta) -> Self {
        FIModuleHandle {
            ring: ring.clone(),
            kind,
            meta,
            n_max: DEFAULT_N_MAX,
            cache: Arc::new(Mutex::new(HashMap::new())),
            tcache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn from_descriptor(ring: &R, desc: &FIDescriptor) -> Result<Self> {
        Ok(match desc {
            FIDescriptor::Trivial => trivial_fi(ring),
            FIDescriptor::Induced { d, rep } => induced_fi(&rep.build(ring, *d))?,
            FIDescriptor::Specht(mu) => specht_fi(ring, mu),
            FIDescriptor::Point { d, rep } => point_fi(*d, &rep.build(ring, *d))?,
            FIDescriptor::Shift(inner) => shift_fi(&Self::from_descriptor(ring, inner)?),
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn meta(&self) -> &FIMeta {
        &self.meta
    }
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check_range(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::scale(format!("FI-module evaluation at n = {n}"), self.n_max));
        }
        Ok(())
    }

    /// `M_n` as an `S_n`-module.
    pub fn eval(&self, n: usize) -> Result<Rep<R>> {
        self.check_range(n)?;
        if let Some(m) = self.cache.lock().unwrap().get(&n) {
            return Ok(m.clone());
        }
        let m = self.compute_eval(n)?;
        self.cache.lock().unwrap().insert(n, m.clone());
        Ok(m)
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.eval(n)?.dim())
    }

    /// `M_n → M_{n+1}`.
    pub fn transition(&self, n: usize) -> Result<Mat<R>> {
        self.check_range(n + 1)?;
        if let Some(m) = self.tcache.lock().unwrap().get(&n) {
            return Ok(m.clone());
        }
        let m = self.compute_transition(n)?;
        self.tcache.lock().unwrap().insert(n, m.clone());
        Ok(m)
    }

    /// `M_n → M_m` along `[n] ⊂ [m]`.
    pub fn transition_composite(&self, n: usize, m: usize) -> Result<Mat<R>> {
        let mut acc = Mat::identity(&self.ring, self.dim(n)?);
        for k in n..m {
            acc = self.transition(k)?.mul(&acc);
        }
        Ok(acc)
    }

    fn compute_eval(&self, n: usize) -> Result<Rep<R>> {
        let r = &self.ring;
        match &self.kind {
            Kind::Induced { v, d } => {
                if n < *d {
                    return Ok(Rep::zero(r, n));
                }
                induce_young(&outer_tensor(v, &Rep::trivial(r, n - d))?, *d)
            }
            Kind::Specht { mu } => match mu.padded(n) {
                None => Ok(Rep::zero(r, n)),
                Some(shape) => Ok(specht_module(r, &shape).rep),
            },
            Kind::Point { v, d } => {
                if n == *d {
                    Ok(v.clone())
                } else {
                    Ok(Rep::zero(r, n))
                }
            }
            Kind::Shift(inner) => inner.eval(n + 1)?.restrict_to_first(n),
        }
    }

    fn compute_transition(&self, n: usize) -> Result<Mat<R>> {
        let r = &self.ring;
        match &self.kind {
            Kind::Induced { v, d } => {
                let (a, b) = (self.dim(n)?, self.dim(n + 1)?);
                let mut m = Mat::zeros(r, b, a);
                if n >= *d {
                    let small = subsets(n, *d);
                    let big = subsets(n + 1, *d);
                    let dv = v.dim();
                    for (i, s) in small.iter().enumerate() {
                        let j = big.binary_search(s).unwrap();
                        for x in 0..dv {
                            m.set(j * dv + x, i * dv + x, r.one());
                        }
                    }
                }
                Ok(m)
            }
            Kind::Specht { mu } => {
                let (a, b) = (self.dim(n)?, self.dim(n + 1)?);
                if a == 0 {
                    return Ok(Mat::zeros(r, b, 0));
                }
                let small = specht_module(r, &mu.padded(n).unwrap());
                let large = specht_module(r, &mu.padded(n + 1).unwrap());
                let index: HashMap<&Vec<usize>, usize> =
                    large.tabloids.iter().enumerate().map(|(i, t)| (t, i)).collect();
                let leading: Vec<usize> = (0..large.embedding.cols())
                    .map(|j| {
                        (0..large.embedding.rows())
                            .find(|&i| !r.is_zero(large.embedding.get(i, j)))
                            .unwrap()
                    })
                    .collect();
                let mut cols = Vec::new();
                for j in 0..small.embedding.cols() {
                    let mut v = vec![r.zero(); large.tabloids.len()];
                    for (i, t) in small.tabloids.iter().enumerate() {
                        let c = small.embedding.get(i, j);
                        if r.is_zero(c) {
                            continue;
                        }
                        // the new point joins the first row
                        let mut u = t.clone();
                        u.push(0);
                        v[index[&u]] = c.clone();
                    }
                    cols.push(express_in_standard_basis(r, &large.embedding, &leading, &v)?);
                }
                Ok(Mat::from_columns(r, b, &cols))
            }
            Kind::Point { .. } => Ok(Mat::zeros(r, self.dim(n + 1)?, self.dim(n)?)),
            Kind::Shift(inner) => {
                // [n] ⊔ {*} → [n+1] ⊔ {*}: include, then move * from n to n+1
                let t = inner.transition(n + 1)?;
                let big = inner.eval(n + 2)?;
                let s = big.generator(n).unwrap();
                Ok(s.mul(&t))
            }
        }
    }

    /// `transition(n)` is `S_n`-equivariant.
    pub fn check_equivariance(&self, n: usize) -> Result<bool> {
        let a = self.eval(n)?;
        let b = self.eval(n + 1)?;
        let t = self.transition(n)?;
        Ok((0..n.saturating_sub(1)).all(|i| t.mul(a.generator(i).unwrap()) == b.generator(i).unwrap().mul(&t)))
    }

    /// The image of `M_n → M_{n+k}` is fixed by `S_k` on the new points.
    pub fn check_fixed_points(&self, n: usize, k: usize) -> Result<bool> {
        let t = self.transition_composite(n, n + k)?;
        let b = self.eval(n + k)?;
        let id = Mat::identity(&self.ring, b.dim());
        Ok((n..(n + k).saturating_sub(1)).all(|i| b.generator(i).unwrap().sub(&id).mul(&t).is_zero()))
    }
}

/// `I(V)_n = Ind_{S_d × S_{n−d}}^{S_n}(V ⊠ triv)`.
pub fn induced_fi<R: Ring>(v: &Rep<R>) -> Result<FIModuleHandle<R>> {
    if !v.is_sn_module() {
        return Err(Error::invalid("V must be a representation of all of S_d"));
    }
    let d = v.n();
    let meta = FIMeta {
        g: d as i64,
        r: d as i64,
        delta: d as i64,
        source: format!("induced:d={d}"),
    };
    Ok(FIModuleHandle::build(v.ring(), Kind::Induced { v: v.clone(), d }, meta))
}

/// The module `A` with `A_n = k` trivial.
pub fn trivial_fi<R: Ring>(ring: &R) -> FIModuleHandle<R> {
    let mut h = induced_fi(&Rep::trivial(ring, 0)).unwrap();
    h.meta.source = "trivial".into();
    h
}

/// `L_μ`: `(L_μ)_n` is the Specht module of `μ[n]`, inside the tabloid
/// module `M^{μ[n]} ≅ I(V_μ)_n`.
pub fn specht_fi<R: Ring>(ring: &R, mu: &Partition) -> FIModuleHandle<R> {
    let d = mu.size() as i64;
    let m1 = mu.first() as i64;
    let meta = FIMeta {
        g: d + m1,
        r: 2 * d + m1 + 1,
        delta: d,
        source: format!("specht:{mu}"),
    };
    FIModuleHandle::build(ring, Kind::Specht { mu: mu.clone() }, meta)
}

/// `V` in degree `d`, zero elsewhere; a torsion module.
pub fn point_fi<R: Ring>(d: usize, v: &Rep<R>) -> Result<FIModuleHandle<R>> {
    if v.n() != d || !v.is_sn_module() {
        return Err(Error::invalid(format!("V must be a representation of S_{d}")));
    }
    let meta = FIMeta {
        g: d as i64,
        r: d as i64 + 1,
        delta: -1,
        source: format!("point:d={d}"),
    };
    Ok(FIModuleHandle::build(v.ring(), Kind::Point { v: v.clone(), d }, meta))
}

/// `Σ(M)_n = M_{n+1}` restricted to `S_n`.
pub fn shift_fi<R: Ring>(m: &FIModuleHandle<R>) -> FIModuleHandle<R> {
    let meta = FIMeta {
        source: format!("shift:{}", m.meta.source),
        ..m.meta.clone()
    };
    let mut h = FIModuleHandle::build(&m.ring, Kind::Shift(Box::new(m.clone())), meta);
    h.n_max = m.n_max.saturating_sub(1);
    h
}

/// Per-degree maps `M_n → N_n` for `n ≤ N`.
#[derive(Clone, Debug)]
pub struct FIMap<R: Ring> {
    pub maps: Vec<Mat<R>>,
}

impl<R: Ring> FIMap<R> {
    /// Equivariance in each degree and commutation with transitions.
    pub fn verify(&self, src: &FIModuleHandle<R>, tgt: &FIModuleHandle<R>) -> Result<bool> {
        for (n, f) in self.maps.iter().enumerate() {
            if !src.eval(n)?.is_equivariant(f, &tgt.eval(n)?) {
                return Ok(false);
            }
            if n + 1 < self.maps.len() {
                let lhs = self.maps[n + 1].mul(&src.transition(n)?);
                let rhs = tgt.transition(n)?.mul(f);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The map `I(V) → M` determined by an `S_d`-equivariant `φ : V → M_d`:
/// `(A, v) ↦ c_A · τ(φ(v))` with `τ : M_d → M_n` the transition.
pub fn fi_map<R: Ring>(
    v: &Rep<R>,
    target: &FIModuleHandle<R>,
    phi: &Mat<R>,
    n_max: usize,
) -> Result<FIMap<R>> {
    let r = v.ring();
    let d = v.n();
    let md = target.eval(d)?;
    if phi.rows() != md.dim() || phi.cols() != v.dim() {
        return Err(Error::invalid("φ has the wrong shape"));
    }
    if !v.is_equivariant(phi, &md) {
        return Err(Error::NotEquivariant(format!("V → M_{d} does not commute with S_{d}")));
    }
    let source = induced_fi(v)?;
    let mut maps = Vec::new();
    for n in 0..=n_max {
        let mn = target.eval(n)?;
        let sn = source.dim(n)?;
        if n < d {
            maps.push(Mat::zeros(r, mn.dim(), sn));
            continue;
        }
        let tau = target.transition_composite(d, n)?.mul(phi);
        let mut cols = Vec::new();
        for a in subsets(n, d) {
            let c = mn.matrix(&subset_rep(n, &a))?.mul(&tau);
            cols.extend(c.columns());
        }
        maps.push(Mat::from_columns(r, mn.dim(), &cols));
    }
    Ok(FIMap { maps })
}

/// The inclusion `L_μ → I(V_μ)` in degrees `≤ n_max`, with `V_μ` the
/// tabloid module of `μ`.
pub fn specht_inclusion<R: Ring>(ring: &R, mu: &Partition, n_max: usize) -> Result<(FIMap<R>, FIModuleHandle<R>)> {
    let d = mu.size();
    let (vmu, vtab) = permutation_module(ring, mu);
    let vindex: HashMap<&Vec<usize>, usize> = vtab.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let target = induced_fi(&vmu)?;
    let source = specht_fi(ring, mu);
    let mut maps = Vec::new();
    for n in 0..=n_max {
        let (a, b) = (source.dim(n)?, target.dim(n)?);
        let mut m = Mat::zeros(ring, b, a);
        if let Some(shape) = mu.padded(n) {
            let sp = specht_module(ring, &shape);
            let subs = subsets(n, d);
            for (i, t) in sp.tabloids.iter().enumerate() {
                // rows ≥ 1 of μ[n] ↔ the subset A and a tabloid of μ
                let aset: Vec<usize> = (0..n).filter(|&x| t[x] >= 1).collect();
                let c = subset_rep(n, &aset);
                let vt: Vec<usize> = (0..d).map(|k| t[c.apply(k)] - 1).collect();
                let row = subs.binary_search(&aset).unwrap() * vtab.len() + vindex[&vt];
                for j in 0..a {
                    let e = sp.embedding.get(i, j);
                    if !ring.is_zero(e) {
                        m.set(row, j, e.clone());
                    }
                }
            }
        }
        maps.push(m);
    }
    Ok((FIMap { maps }, target))
}

/// `(M ⊗ N)_n = ⊕_{i+j=n} Ind_{S_i × S_j}^{S_n}(M_i ⊠ N_j)`.
pub fn tensor_eval<R: Ring>(m: &FIModuleHandle<R>, n_mod: &FIModuleHandle<R>, n: usize) -> Result<Vec<Rep<R>>> {
    (0..=n)
        .map(|i| induce_young(&outer_tensor(&m.eval(i)?, &n_mod.eval(n - i)?)?, i))
        .collect()
}

/// Checks `Σ(I(V))_n = I(V)_n ⊕ I(ΣV)_n`: in the basis `(A, v)` of
/// `I(V)_{n+1}`, subsets avoiding the point `n` span `I(V)_n` and subsets
/// containing it span `I(ΣV)_n`, with matching `S_n`-actions.
pub fn shift_decomposition_check<R: Ring>(v: &Rep<R>, n: usize) -> Result<bool> {
    let d = v.n();
    if d == 0 {
        return Ok(true);
    }
    let sigma = shift_fi(&induced_fi(v)?);
    let whole = sigma.eval(n)?;
    let left = induced_fi(v)?.eval(n)?;
    let right = induced_fi(&v.restrict_to_first(d - 1)?)?.eval(n)?;
    if whole.dim() != left.dim() + right.dim() {
        return Ok(false);
    }
    let dv = v.dim();
    let big = subsets(n + 1, d);
    let mut order_left = Vec::new();
    let mut order_right = Vec::new();
    for (i, a) in big.iter().enumerate() {
        let dst = if a.contains(&n) { &mut order_right } else { &mut order_left };
        for x in 0..dv {
            dst.push(i * dv + x);
        }
    }
    // I(ΣV)_n is indexed by (d−1)-subsets of [n] in lex order: A ∪ {n} keeps that order
    for i in 0..n.saturating_sub(1) {
        let g = whole.generator(i).unwrap();
        let ll = g.select_rows(&order_left).select_columns(&order_left);
        let rr = g.select_rows(&order_right).select_columns(&order_right);
        let lr = g.select_rows(&order_left).select_columns(&order_right);
        let rl = g.select_rows(&order_right).select_columns(&order_left);
        if !lr.is_zero() || !rl.is_zero() {
            return Ok(false);
        }
        if &ll != left.generator(i).unwrap() || &rr != right.generator(i).unwrap() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `g·v` for a permutation in `S_n` acting on `M_n`.
pub fn act_on<R: Ring>(m: &FIModuleHandle<R>, n: usize, g: &Perm, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
    m.eval(n)?.act(g, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Integers, PrimeField};

    #[test]
    fn induced_dimensions() {
        let z = Integers;
        let a = trivial_fi(&z);
        let one = induced_fi(&Rep::trivial(&z, 1)).unwrap();
        let reg = induced_fi(&Rep::regular(&z, 2)).unwrap();
        for n in 0..7 {
            assert_eq!(a.dim(n).unwrap(), 1);
            assert_eq!(one.dim(n).unwrap(), n);
            assert_eq!(reg.dim(n).unwrap(), n * n.saturating_sub(1));
        }
    }

    #[test]
    fn fi_axioms_for_every_constructor() {
        let f = PrimeField::new(2).unwrap();
        let mods = vec![
            trivial_fi(&f),
            induced_fi(&Rep::regular(&f, 2)).unwrap(),
            specht_fi(&f, &Partition::new(&[1]).unwrap()),
            specht_fi(&f, &Partition::new(&[2, 1]).unwrap()),
            point_fi(1, &Rep::trivial(&f, 1)).unwrap(),
            shift_fi(&induced_fi(&Rep::trivial(&f, 2)).unwrap()),
        ];
        for m in &mods {
            for n in 0..6 {
                assert!(m.eval(n).unwrap().check_relations(), "{}", m.meta().source);
                assert!(m.check_equivariance(n).unwrap(), "{} at {n}", m.meta().source);
                assert!(m.check_fixed_points(n, 2).unwrap(), "{} at {n}", m.meta().source);
            }
        }
    }

    #[test]
    fn specht_metadata_and_dims() {
        let l = specht_fi(&Integers, &Partition::new(&[1]).unwrap());
        assert_eq!((l.meta().g, l.meta().delta), (2, 1));
        assert!(l.meta().r <= 4);
        for n in 2..8 {
            assert_eq!(l.dim(n).unwrap(), n - 1);
        }
        assert_eq!(l.dim(1).unwrap(), 0);
    }

    #[test]
    fn specht_inclusion_commutes() {
        let f = PrimeField::new(3).unwrap();
        for mu in [vec![1], vec![2], vec![1, 1]] {
            let mu = Partition::new(&mu).unwrap();
            let (map, target) = specht_inclusion(&f, &mu, 6).unwrap();
            let source = specht_fi(&f, &mu);
            assert!(map.verify(&source, &target).unwrap());
        }
    }

    #[test]
    fn identity_and_zero_assignments() {
        let f = PrimeField::new(2).unwrap();
        let v = Rep::regular(&f, 2);
        let iv = induced_fi(&v).unwrap();
        let id = fi_map(&v, &iv, &Mat::identity(&f, 2), 5).unwrap();
        for (n, m) in id.maps.iter().enumerate() {
            assert_eq!(m, &Mat::identity(&f, iv.dim(n).unwrap()));
        }
        let zero = fi_map(&v, &iv, &Mat::zeros(&f, 2, 2), 5).unwrap();
        assert!(zero.maps.iter().all(|m| m.is_zero()));
        let bad = Mat::from_i64(&f, &[vec![1, 0], vec![0, 0]]);
        assert!(matches!(fi_map(&v, &iv, &bad, 3), Err(Error::NotEquivariant(_))));
    }

    #[test]
    fn shift_identity() {
        let f = PrimeField::new(3).unwrap();
        for v in [Rep::trivial(&f, 1), Rep::regular(&f, 2), Rep::sign(&f, 2)] {
            for n in 0..6 {
                assert!(shift_decomposition_check(&v, n).unwrap());
            }
        }
        let sa = shift_fi(&trivial_fi(&f));
        assert!((0..6).all(|n| sa.dim(n).unwrap() == 1));
    }

    #[test]
    fn descriptors_round_trip() {
        for s in ["trivial", "induced:d=2,rep=regular", "specht:2,1", "point:d=0,rep=trivial", "shift:specht:1"] {
            let d: FIDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("induced:d=2,colour=red".parse::<FIDescriptor>().is_err());
        assert!("specht:1,2".parse::<FIDescriptor>().is_err());
    }
}
