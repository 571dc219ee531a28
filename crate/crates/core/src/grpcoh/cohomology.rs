use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::cochain::{Cocycle, CochainModel};
use crate::error::{Error, Result};
use crate::exactlin::{AbelianGroupStructure, Mat, Ring, Subquotient};
use crate::symrep::{Rep, YoungSubgroup};

/// Largest group order for bar cochains in degree `≥ 1` over a field.
pub const BAR_LIMIT_FIELD: u128 = 120;
/// Largest group order for bar cochains over `Z`.
pub const BAR_LIMIT_Z: u128 = 24;
/// Largest `n` for the degree-1 presentation method.
pub const PRESENTATION_LIMIT: usize = 12;

const SAMPLING_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Invariants in degree 0, the presentation in degree 1, bar cochains above.
    Auto,
    Bar,
    Presentation,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Auto => "auto",
            Method::Bar => "bar",
            Method::Presentation => "presentation",
        };
        f.write_str(s)
    }
}

/// `H^t(H, M)` as cocycles modulo coboundaries, in cochain coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyGroup<R: Ring> {
    model: Arc<CochainModel<R>>,
    quotient: Subquotient<R>,
    method: Method,
}

fn check_bar_scale<R: Ring>(ring: &R, h: &YoungSubgroup, t: usize) -> Result<()> {
    let limit = if ring.is_field() { BAR_LIMIT_FIELD } else { BAR_LIMIT_Z };
    if h.order() > limit {
        return Err(Error::scale(
            format!("bar cochains in degree {t} for a group of order {}", h.order()),
            format!("group order {limit}"),
        ));
    }
    Ok(())
}

/// `H^t(H, M)` for a Young subgroup `H` of the points `M` lives on.
pub fn cohomology<R: Ring>(
    group: &YoungSubgroup,
    module: &Rep<R>,
    t: usize,
    method: Method,
) -> Result<CohomologyGroup<R>> {
    let ring = module.ring();
    let method = match (method, t) {
        (Method::Auto, 0) => Method::Auto,
        (Method::Auto, 1) => Method::Presentation,
        (Method::Auto, _) => Method::Bar,
        (Method::Presentation, 1) => Method::Presentation,
        (Method::Presentation, _) => {
            return Err(Error::invalid("the presentation method computes degree 1 only"));
        }
        (Method::Bar, _) => Method::Bar,
    };
    let (model, z) = match method {
        Method::Auto => {
            let model = CochainModel::new(group, module, 0, false)?;
            let z = model.invariants();
            (model, z)
        }
        Method::Presentation => {
            if group.n() > PRESENTATION_LIMIT {
                return Err(Error::scale(
                    format!("degree-1 presentation on {} points", group.n()),
                    PRESENTATION_LIMIT,
                ));
            }
            let model = CochainModel::new(group, module, 1, false)?;
            let z = model.relation_matrix().kernel();
            (model, z)
        }
        Method::Bar => {
            if t > 0 {
                check_bar_scale(ring, group, t)?;
            }
            let model = CochainModel::new(group, module, t, t > 0)?;
            let z = model.bar_cocycles(SAMPLING_SEED);
            (model, z)
        }
    };
    let b = model.coboundaries();
    let quotient = Subquotient::new(&z, &b)?;
    Ok(CohomologyGroup {
        model: Arc::new(model),
        quotient,
        method,
    })
}

/// `H^1(S_n, M)` from crossed homomorphisms on `s_0, …, s_{n−2}` modulo
/// principal ones.
pub fn h1_presentation<R: Ring>(n: usize, module: &Rep<R>) -> Result<CohomologyGroup<R>> {
    cohomology(&YoungSubgroup::full(n), module, 1, Method::Presentation)
}

impl<R: Ring> CohomologyGroup<R> {
    pub fn model(&self) -> &CochainModel<R> {
        &self.model
    }
    pub fn ring(&self) -> &R {
        self.model.ring()
    }
    pub fn group(&self) -> &YoungSubgroup {
        self.model.group()
    }
    pub fn module(&self) -> &Rep<R> {
        self.model.module()
    }
    pub fn t(&self) -> usize {
        self.model.t()
    }
    pub fn method(&self) -> Method {
        self.method
    }

    /// Number of class generators: the dimension over a field.
    pub fn dim(&self) -> usize {
        self.quotient.ngens()
    }

    pub fn structure(&self) -> AbelianGroupStructure {
        self.quotient.structure()
    }

    pub fn moduli(&self) -> &[R::Elem] {
        self.quotient.moduli()
    }

    pub fn subquotient(&self) -> &Subquotient<R> {
        &self.quotient
    }

    /// Coordinates of the representative cocycle of generator `i`.
    pub fn representative(&self, i: usize) -> Vec<R::Elem> {
        self.quotient.representative(i)
    }

    /// Representative cocycle of the class with the given class coordinates.
    pub fn cocycle(&self, class: &[R::Elem]) -> Cocycle<R> {
        let r = self.ring();
        let mut v = vec![r.zero(); self.model.ncoords()];
        for (i, c) in class.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            for (a, b) in v.iter_mut().zip(self.representative(i)) {
                r.add_mul_assign(a, c, &b);
            }
        }
        self.model.evaluator(&v)
    }

    pub fn generator_cocycle(&self, i: usize) -> Cocycle<R> {
        self.model.evaluator(&self.representative(i))
    }

    /// Class coordinates of a cocycle; errors if it is not one.
    pub fn classify(&self, f: &Cocycle<R>) -> Result<Vec<R::Elem>> {
        self.quotient.classify(&self.model.coords_of(f))
    }

    pub fn normalize(&self, class: &[R::Elem]) -> Vec<R::Elem> {
        self.quotient.normalize(class)
    }

    /// Matrix, in class coordinates, of the map induced by a cochain map.
    pub fn map_to(&self, target: &CohomologyGroup<R>, f: impl Fn(Cocycle<R>) -> Result<Cocycle<R>>) -> Result<Mat<R>> {
        let r = self.ring();
        let mut cols = Vec::new();
        for i in 0..self.dim() {
            cols.push(target.classify(&f(self.generator_cocycle(i))?)?);
        }
        Ok(Mat::from_columns(r, target.dim(), &cols))
    }

    /// Whether two maps into `self`, in class coordinates, agree.
    pub fn same_map(&self, a: &Mat<R>, b: &Mat<R>) -> bool {
        a.cols() == b.cols()
            && (0..a.cols()).all(|j| self.normalize(&a.column(j)) == self.normalize(&b.column(j)))
    }
}
