//! Maximal subalgebras of `M_2(F_q)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::domain::{CoeffDomain, Elem};
use crate::error::{Error, Result};
use crate::linalg::{intersect, kernel_basis, rref, EchelonBasis};
use crate::matrix::Mat;

/// Largest field order for which the catalog is built.
pub const CATALOG_MAX_Q: u64 = 16;

/// Stabilizer of a line `v` in `F_q²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineStabilizer {
    /// Projective coordinates of the line, normalized so the first nonzero is 1.
    pub line: [String; 2],
    pub basis: Vec<Mat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraCatalog {
    pub q: u64,
    /// One per point of `P¹(F_q)`, each of dimension 3.
    pub noncommutative: Vec<LineStabilizer>,
    /// Copies of `F_{q²}`, each of dimension 2.
    pub commutative: Vec<Vec<Mat>>,
    /// The scalar matrices.
    pub scalars: Mat,
    /// Matrices whose characteristic polynomial is irreducible.
    pub irreducible_matrices: usize,
    /// Pairs and triples whose intersections were checked on construction.
    pub pairs_checked: usize,
    pub triples_checked: usize,
}

fn span_dim(d: &CoeffDomain, basis: &[Vec<Elem>]) -> usize {
    rref(d, basis).map(|r| r.1).unwrap_or(0)
}

fn vectors(basis: &[Mat]) -> Vec<Vec<Elem>> {
    basis.iter().map(Mat::vectorize).collect()
}

/// Whether the span of `basis` is exactly the scalars.
fn is_scalars(d: &CoeffDomain, basis: &[Vec<Elem>]) -> bool {
    basis.len() == 1 && span_dim(d, basis) == 1 && {
        let m = Mat::from_vector(d, 2, &basis[0]);
        m.is_scalar()
    }
}

impl SubalgebraCatalog {
    pub fn domain(&self) -> CoeffDomain {
        self.scalars.domain().clone()
    }

    /// Bases of all maximal subalgebras, noncommutative first.
    pub fn maximal(&self) -> Vec<&[Mat]> {
        self.noncommutative
            .iter()
            .map(|a| a.basis.as_slice())
            .chain(self.commutative.iter().map(Vec::as_slice))
            .collect()
    }

    /// For each maximal subalgebra, whether it contains `m`.
    pub fn membership(&self, m: &Mat) -> Result<Vec<bool>> {
        let d = self.domain();
        self.maximal()
            .into_iter()
            .map(|basis| {
                let mut e = EchelonBasis::new(&d, 4)?;
                for b in basis {
                    e.insert(&b.vectorize());
                }
                Ok(e.contains(&m.vectorize()))
            })
            .collect()
    }
}

/// Lists the `q + 1` line stabilizers and the `(q² − q)/2` copies of `F_{q²}`
/// in `M_2(F_q)`, and checks their intersection pattern.
pub fn enumerate_maximal_subalgebras(q: u64) -> Result<SubalgebraCatalog> {
    if q > CATALOG_MAX_Q {
        return Err(Error::CapExceeded {
            size: q as u128,
            cap: CATALOG_MAX_Q as u128,
        });
    }
    let d = CoeffDomain::finite(q)?;
    let field = d.finite_field().unwrap().clone();
    let qs = q as u32;

    let mut points: Vec<(u32, u32)> = (0..qs).map(|t| (1, t)).collect();
    points.push((0, 1));
    let mut noncommutative = Vec::new();
    for &(x, y) in &points {
        let (vx, vy) = (Elem::Fq(x), Elem::Fq(y));
        // M v ∧ v = 0, linear in the entries (m11, m12, m21, m22)
        let row = vec![
            d.mul(&vx, &vy),
            d.mul(&vy, &vy),
            d.neg(&d.mul(&vx, &vx)),
            d.neg(&d.mul(&vx, &vy)),
        ];
        let ker = kernel_basis(&d, &[row], 4)?;
        noncommutative.push(LineStabilizer {
            line: [field.format(x), field.format(y)],
            basis: ker.iter().map(|v| Mat::from_vector(&d, 2, v)).collect(),
        });
    }

    let identity = Mat::identity(&d, 2);
    let mut seen = BTreeSet::new();
    let mut commutative = Vec::new();
    let mut irreducible_matrices = 0;
    for a in 0..qs.pow(4) {
        let v: Vec<Elem> = (0..4).map(|k| Elem::Fq(a / qs.pow(k) % qs)).collect();
        let m = Mat::from_vector(&d, 2, &v);
        let b = field.neg(elem_u32(&m.trace()));
        let c = elem_u32(&m.det());
        if !field.quadratic_roots(b, c).is_empty() {
            continue;
        }
        irreducible_matrices += 1;
        let (rows, _) = rref(&d, &[identity.vectorize(), m.vectorize()])?;
        if seen.insert(rows.clone()) {
            commutative.push(rows.iter().map(|r| Mat::from_vector(&d, 2, r)).collect());
        }
    }

    let mut catalog = SubalgebraCatalog {
        q,
        noncommutative,
        commutative,
        scalars: identity,
        irreducible_matrices,
        pairs_checked: 0,
        triples_checked: 0,
    };
    check_invariants(&mut catalog)?;
    Ok(catalog)
}

fn elem_u32(e: &Elem) -> u32 {
    match e {
        Elem::Fq(x) => *x,
        _ => unreachable!("finite field element expected"),
    }
}

fn check_invariants(cat: &mut SubalgebraCatalog) -> Result<()> {
    let d = cat.domain();
    let q = cat.q as usize;
    let fail = |msg: String| Err(Error::VerificationFailed(msg));
    if cat.noncommutative.len() != q + 1 || cat.commutative.len() != (q * q - q) / 2 {
        return fail(format!(
            "found {} + {} maximal subalgebras over F_{q}",
            cat.noncommutative.len(),
            cat.commutative.len()
        ));
    }
    if cat.irreducible_matrices != (q * q - q) / 2 * (q * q - q) {
        return fail(format!(
            "{} matrices with irreducible characteristic polynomial",
            cat.irreducible_matrices
        ));
    }
    let nc = cat.noncommutative.len();
    let all: Vec<Vec<Vec<Elem>>> = cat.maximal().into_iter().map(vectors).collect();
    for (i, a) in all.iter().enumerate() {
        let want = if i < nc { 3 } else { 2 };
        if span_dim(&d, a) != want {
            return fail(format!("subalgebra {i} has the wrong dimension"));
        }
    }
    let mut pairs = 0;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let meet = intersect(&d, &all[i], &all[j], 4)?;
            let ok = if j < nc {
                span_dim(&d, &meet) == 2
            } else {
                is_scalars(&d, &meet)
            };
            if !ok {
                return fail(format!(
                    "subalgebras {i} and {j} meet in dimension {}",
                    meet.len()
                ));
            }
            pairs += 1;
        }
    }
    let mut triples = 0;
    for i in 0..nc {
        for j in i + 1..nc {
            let ij = intersect(&d, &all[i], &all[j], 4)?;
            for (k, third) in all.iter().enumerate().take(nc).skip(j + 1) {
                let meet = intersect(&d, &ij, third, 4)?;
                if !is_scalars(&d, &meet) {
                    return fail(format!("stabilizers {i}, {j}, {k} meet beyond the scalars"));
                }
                triples += 1;
            }
        }
    }
    cat.pairs_checked = pairs;
    cat.triples_checked = triples;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts() {
        for (q, nc, c) in [(2, 3, 1), (3, 4, 3), (4, 5, 6), (5, 6, 10)] {
            let cat = enumerate_maximal_subalgebras(q).unwrap();
            assert_eq!(cat.noncommutative.len(), nc);
            assert_eq!(cat.commutative.len(), c);
        }
        assert_eq!(
            enumerate_maximal_subalgebras(2)
                .unwrap()
                .irreducible_matrices,
            2
        );
        assert!(enumerate_maximal_subalgebras(17).is_err());
    }

    #[test]
    fn upper_triangular_is_a_stabilizer() {
        let cat = enumerate_maximal_subalgebras(3).unwrap();
        let d = cat.domain();
        let e12 = Mat::unit(&d, 2, 1, 2);
        let e21 = Mat::unit(&d, 2, 2, 1);
        let m = cat.membership(&e12).unwrap();
        // E12 fixes exactly the line (1, 0)
        assert_eq!(m.iter().filter(|&&x| x).count(), 1);
        assert!(m[0]);
        assert!(cat.membership(&e21).unwrap()[3]);
        assert!(cat
            .membership(&Mat::identity(&d, 2))
            .unwrap()
            .iter()
            .all(|&x| x));
    }
}
