//! Integer matrices: Hermite and Smith normal forms, kernels and lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `(g, s, t)` with `s a + t b = g = gcd(a, b) >= 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Row-style Hermite normal form with its unimodular transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    /// Same shape as the input; nonzero rows first, zero rows last.
    pub h: IntMatrix,
    /// Unimodular `r × r` matrix with `transform · input = h`.
    pub transform: IntMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Hermite normal form: positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> Hnf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h = m.clone();
    let mut u = identity(rows);
    let mut row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        if row == rows {
            break;
        }
        for i in row + 1..rows {
            if h[i][col].is_zero() {
                continue;
            }
            let a = h[row][col].clone();
            let b = h[i][col].clone();
            let (g, s, t) = ext_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            // [[s, t], [-b/g, a/g]] has determinant 1.
            for mat in [&mut h, &mut u] {
                let (r0, ri) = (mat[row].clone(), mat[i].clone());
                for c in 0..r0.len() {
                    mat[row][c] = &s * &r0[c] + &t * &ri[c];
                    mat[i][c] = &ag * &ri[c] - &bg * &r0[c];
                }
            }
        }
        if h[row][col].is_zero() {
            continue;
        }
        if h[row][col].is_negative() {
            for mat in [&mut h, &mut u] {
                for x in mat[row].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        let pivot = h[row][col].clone();
        for i in 0..row {
            let q = h[i][col].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for mat in [&mut h, &mut u] {
                let r0 = mat[row].clone();
                for (x, y) in mat[i].iter_mut().zip(&r0) {
                    *x -= &q * y;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    Hnf {
        h,
        transform: u,
        rank: row,
        pivot_cols,
    }
}

/// Elementary divisors `d_1 | d_2 | ...` (length `min(rows, cols)`, zeros last).
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let size = rows.min(cols);
    let mut out = Vec::with_capacity(size);
    for t in 0..size {
        // smallest nonzero entry of the trailing block becomes the pivot
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = best else {
            out.extend(std::iter::repeat_n(BigInt::zero(), size - t));
            break;
        };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let rt = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&rt) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for r in a.iter_mut() {
                    let sub = &q * &r[t];
                    r[j] -= sub;
                }
                if !a[t][j].is_zero() {
                    for r in a.iter_mut() {
                        r.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let ri = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&ri) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// Basis of the saturated integer kernel `{v ∈ Z^cols : M v = 0}`.
pub fn integer_kernel(m: &IntMatrix, cols: usize) -> IntMatrix {
    let rows = m.len();
    let mt: IntMatrix = (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect();
    if rows == 0 {
        return identity(cols);
    }
    let res = hnf(&mt);
    // rows of the transform that map M^T to zero rows span the left kernel of M^T
    res.transform[res.rank..].to_vec()
}

/// A sublattice of `Z^ambient`, stored as the nonzero rows of its HNF.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntLattice {
    pub ambient: usize,
    pub basis: IntMatrix,
}

impl IntLattice {
    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Self {
        let mut b = LatticeBuilder::new(ambient);
        for g in gens {
            b.insert(g.clone());
        }
        b.lattice()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `Z^ambient` itself, i.e. the HNF is the identity.
    pub fn is_full(&self) -> bool {
        self.basis == identity(self.ambient)
    }

    /// Index in `Z^ambient` for full-rank lattices.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.ambient {
            return None;
        }
        Some(
            (0..self.ambient)
                .map(|i| self.basis[i][i].clone())
                .product(),
        )
    }
}

/// Incremental Hermite basis of a growing sublattice of `Z^ambient`.
///
/// Rows are kept sorted by pivot column and reduced above each pivot, so the
/// stored rows are always the HNF of the lattice.
#[derive(Clone, Debug)]
pub struct LatticeBuilder {
    ambient: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl LatticeBuilder {
    pub fn new(ambient: usize) -> Self {
        LatticeBuilder {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the lattice; returns whether the lattice grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut changed = false;
        let mut at = 0;
        while let Some(col) = v.iter().position(|x| !x.is_zero()) {
            while at < self.rows.len() && self.rows[at].0 < col {
                at += 1;
            }
            if at == self.rows.len() || self.rows[at].0 != col {
                if v[col].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(at, (col, v));
                changed = true;
                break;
            }
            let row = &mut self.rows[at].1;
            let (a, b) = (row[col].clone(), v[col].clone());
            if b.is_multiple_of(&a) {
                let f = &b / &a;
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= &f * y;
                }
                continue;
            }
            let (g, s, t) = ext_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let r0 = row.clone();
            for c in 0..r0.len() {
                row[c] = &s * &r0[c] + &t * &v[c];
                v[c] = &ag * &v[c] - &bg * &r0[c];
            }
            changed = true;
        }
        if changed {
            self.reduce_above();
        }
        changed
    }

    fn reduce_above(&mut self) {
        for k in 0..self.rows.len() {
            let (col, pivot_row) = (self.rows[k].0, self.rows[k].1.clone());
            let pivot = &pivot_row[col];
            for i in 0..k {
                let q = self.rows[i].1[col].div_floor(pivot);
                if q.is_zero() {
                    continue;
                }
                for (x, y) in self.rows[i].1.iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
    }

    pub fn lattice(&self) -> IntLattice {
        IntLattice {
            ambient: self.ambient,
            basis: self.rows.iter().map(|(_, r)| r.clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|r| {
                (0..cols)
                    .map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum())
                    .collect()
            })
            .collect()
    }

    fn det(m: &IntMatrix) -> BigInt {
        let d = crate::domain::CoeffDomain::Integers;
        let rows = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| crate::domain::Elem::Int(x.clone()))
                    .collect()
            })
            .collect();
        match crate::matrix::det_rows(&d, rows) {
            crate::domain::Elem::Int(x) => x,
            _ => unreachable!(),
        }
    }

    #[test]
    fn hnf_examples() {
        let id = im(&[&[1, 0], &[0, 1]]);
        assert_eq!(hnf(&id).h, id);
        let two = im(&[&[2, 0], &[0, 2]]);
        let lat = IntLattice::from_generators(2, &two);
        assert_eq!(lat.basis, two);
        assert_eq!(lat.index(), Some(BigInt::from(4)));
        let m = im(&[&[2, 1], &[0, 3]]);
        assert_eq!(hnf(&m).h, m);
        assert_eq!(
            IntLattice::from_generators(2, &m).index(),
            Some(BigInt::from(6))
        );
    }

    #[test]
    fn hnf_reduces_above_pivot() {
        let m = im(&[&[3, 5], &[6, 1]]);
        let res = hnf(&m);
        // det = -27, lattice index 27
        assert_eq!(res.h[0][0].clone() * res.h[1][1].clone(), BigInt::from(27));
        assert!(res.h[0][1] >= BigInt::zero() && res.h[0][1] < res.h[1][1]);
        assert_eq!(matmul(&res.transform, &m), res.h);
    }

    #[test]
    fn snf_examples() {
        assert_eq!(snf(&im(&[&[1, 0], &[0, 1]])), vec![1.into(), 1.into()]);
        assert_eq!(snf(&im(&[&[2, 0], &[0, 4]])), vec![2.into(), 4.into()]);
        assert_eq!(snf(&im(&[&[2, 1], &[0, 3]])), vec![1.into(), 6.into()]);
        assert_eq!(snf(&im(&[&[2, 0], &[0, 3]])), vec![1.into(), 6.into()]);
        assert_eq!(
            snf(&im(&[&[0, 0], &[0, 0], &[2, 4]])),
            vec![2.into(), 0.into()]
        );
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // 2x + 4y = 0 has primitive kernel (2, -1) up to sign
        let k = integer_kernel(&im(&[&[2, 4]]), 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0].abs(), BigInt::from(2));
        assert_eq!(v[1].abs(), BigInt::from(1));
    }

    proptest! {
        #[test]
        fn builder_matches_hnf(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 4), 1..7)) {
            let m = im(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
            let h = hnf(&m);
            let lat = IntLattice::from_generators(4, &m);
            prop_assert_eq!(&lat.basis, &h.h[..h.rank].to_vec());
        }

        #[test]
        fn hnf_transform_certifies(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 1..5)) {
            let m = im(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
            let res = hnf(&m);
            prop_assert_eq!(matmul(&res.transform, &m), res.h.clone());
            prop_assert!(det(&res.transform).abs().is_one());
            for (r, &c) in res.pivot_cols.iter().enumerate() {
                prop_assert!(res.h[r][c].is_positive());
                for above in 0..r {
                    prop_assert!(!res.h[above][c].is_negative() && res.h[above][c] < res.h[r][c]);
                }
            }
            for r in res.rank..res.h.len() {
                prop_assert!(res.h[r].iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn snf_chain_and_product(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 3)) {
            let m = im(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
            let ds = snf(&m);
            for w in ds.windows(2) {
                if !w[1].is_zero() {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                }
            }
            prop_assert_eq!(ds.iter().product::<BigInt>(), det(&m).abs());
        }

        #[test]
        fn kernel_vectors_annihilate(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 4), 1..4)) {
            let m = im(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
            let k = integer_kernel(&m, 4);
            let rank = hnf(&m).rank;
            prop_assert_eq!(k.len(), 4 - rank);
            for v in &k {
                let col: IntMatrix = v.iter().map(|x| vec![x.clone()]).collect();
                prop_assert!(matmul(&m, &col).iter().all(|r| r[0].is_zero()));
            }
        }
    }
}
