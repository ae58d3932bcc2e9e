//! Row reduction, kernels and subspace arithmetic over a field.

use crate::domain::{CoeffDomain, Elem};
use crate::error::{Error, Result};

/// A subspace of `K^dim` kept in reduced row echelon form.
///
/// Each stored row has a leading 1 at its pivot column and every other row is
/// zero in that column. Rows are kept sorted by pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    domain: CoeffDomain,
    dim: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(domain: &CoeffDomain, dim: usize) -> Result<Self> {
        domain.require_field()?;
        Ok(EchelonBasis {
            domain: domain.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Elem>> {
        self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduces `v` against the basis, returning the residual.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let d = &self.domain;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if d.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !d.is_zero(r) {
                    *x = d.sub(x, &d.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.domain.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let d = self.domain.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !d.is_zero(x)) else {
            return false;
        };
        let inv = d.inv(&r[p]).expect("field element is invertible");
        for x in r.iter_mut() {
            *x = d.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if d.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !d.is_zero(y) {
                    *x = d.sub(x, &d.mul(&c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }
}

fn check_rows(domain: &CoeffDomain, rows: &[Vec<Elem>]) -> Result<usize> {
    domain.require_field()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::ShapeMismatch("rows of unequal length".into()));
    }
    for e in rows.iter().flatten() {
        let ok = matches!(
            (domain, e),
            (CoeffDomain::Finite(_), Elem::Fq(_)) | (CoeffDomain::Rationals, Elem::Rat(_))
        );
        if !ok {
            return Err(Error::DomainMismatch(domain.to_string(), format!("{e:?}")));
        }
    }
    Ok(width)
}

/// Reduced row echelon basis of the row span, and its rank.
pub fn rref(domain: &CoeffDomain, rows: &[Vec<Elem>]) -> Result<(Vec<Vec<Elem>>, usize)> {
    let width = check_rows(domain, rows)?;
    let mut basis = EchelonBasis::new(domain, width)?;
    for r in rows {
        basis.insert(r);
    }
    let rank = basis.rank();
    Ok((basis.into_rows(), rank))
}

/// Basis of the right kernel `{v : M v = 0}` of an `r × cols` matrix.
pub fn kernel_basis(
    domain: &CoeffDomain,
    rows: &[Vec<Elem>],
    cols: usize,
) -> Result<Vec<Vec<Elem>>> {
    let width = check_rows(domain, rows)?;
    if !rows.is_empty() && width != cols {
        return Err(Error::ShapeMismatch(format!(
            "rows have {width} columns, expected {cols}"
        )));
    }
    let (basis, _) = rref(domain, rows)?;
    let pivots: Vec<usize> = basis
        .iter()
        .map(|r| r.iter().position(|x| !domain.is_zero(x)).unwrap())
        .collect();
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![domain.zero(); cols];
        v[free] = domain.one();
        for (row, &p) in basis.iter().zip(&pivots) {
            v[p] = domain.neg(&row[free]);
        }
        out.push(v);
    }
    Ok(out)
}

/// Basis of `U ∩ V` for subspaces given by spanning rows.
pub fn intersect(
    domain: &CoeffDomain,
    u: &[Vec<Elem>],
    v: &[Vec<Elem>],
    dim: usize,
) -> Result<Vec<Vec<Elem>>> {
    // x ∈ U ∩ V  ⇔  x is killed by the annihilators of both.
    let ann_u = kernel_basis(domain, u, dim)?;
    let ann_v = kernel_basis(domain, v, dim)?;
    let mut constraints = ann_u;
    constraints.extend(ann_v);
    kernel_basis(domain, &constraints, dim)
}

pub fn rank(domain: &CoeffDomain, rows: &[Vec<Elem>]) -> Result<usize> {
    Ok(rref(domain, rows)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecs(d: &CoeffDomain, rows: &[&[i64]]) -> Vec<Vec<Elem>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| d.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn rref_examples() {
        let f2 = CoeffDomain::prime_field(2).unwrap();
        assert_eq!(rref(&f2, &vecs(&f2, &[&[1, 0], &[0, 1]])).unwrap().1, 2);

        let q = CoeffDomain::Rationals;
        let (basis, rank) = rref(&q, &vecs(&q, &[&[1, 1], &[2, 2]])).unwrap();
        assert_eq!(rank, 1);
        assert_eq!(basis, vecs(&q, &[&[1, 1]]));

        let f3 = CoeffDomain::prime_field(3).unwrap();
        // (2,1) = 2·(1,2) mod 3
        assert_eq!(rref(&f3, &vecs(&f3, &[&[1, 2], &[2, 1]])).unwrap().1, 1);
    }

    #[test]
    fn rref_rejects_integers_and_mixed() {
        let z = CoeffDomain::Integers;
        assert!(rref(&z, &vecs(&z, &[&[1]])).is_err());
        let f2 = CoeffDomain::prime_field(2).unwrap();
        let q = CoeffDomain::Rationals;
        assert!(matches!(
            rref(&f2, &vecs(&q, &[&[1]])),
            Err(Error::DomainMismatch(..))
        ));
    }

    #[test]
    fn kernel_examples() {
        let f3 = CoeffDomain::prime_field(3).unwrap();
        assert_eq!(
            kernel_basis(&f3, &vecs(&f3, &[&[0, 0], &[0, 0]]), 2)
                .unwrap()
                .len(),
            2
        );
        assert!(kernel_basis(&f3, &vecs(&f3, &[&[1, 0], &[0, 1]]), 2)
            .unwrap()
            .is_empty());
        let f2 = CoeffDomain::prime_field(2).unwrap();
        let k = kernel_basis(&f2, &vecs(&f2, &[&[1, 1], &[1, 1]]), 2).unwrap();
        assert_eq!(k, vecs(&f2, &[&[1, 1]]));
    }

    #[test]
    fn intersection_of_planes() {
        let q = CoeffDomain::Rationals;
        let u = vecs(&q, &[&[1, 0, 0], &[0, 1, 0]]);
        let v = vecs(&q, &[&[0, 1, 0], &[0, 0, 1]]);
        let w = intersect(&q, &u, &v, 3).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(rref(&q, &w).unwrap().0, vecs(&q, &[&[0, 1, 0]]));
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_kernel_dim(rows in proptest::collection::vec(proptest::collection::vec(0i64..5, 5), 0..7)) {
            let f5 = CoeffDomain::prime_field(5).unwrap();
            let rows = vecs(&f5, &rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
            let (basis, rank) = rref(&f5, &rows).unwrap();
            prop_assert!(rank <= rows.len().min(5));
            let (again, rank2) = rref(&f5, &basis).unwrap();
            prop_assert_eq!(&again, &basis);
            prop_assert_eq!(rank, rank2);
            let ker = kernel_basis(&f5, &rows, 5).unwrap();
            prop_assert_eq!(ker.len(), 5 - rank);
            for v in &ker {
                for r in &rows {
                    let dot = r.iter().zip(v).fold(f5.zero(), |a, (x, y)| f5.add(&a, &f5.mul(x, y)));
                    prop_assert!(f5.is_zero(&dot));
                }
            }
        }
    }
}
