//! Dense square matrices over a [`CoeffDomain`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::domain::{CoeffDomain, Elem};
use crate::error::{Error, Result};

/// An `n × n` matrix stored row-major.
///
/// [`Mat::vectorize`] always reads entries in row-major order; span bases,
/// kernels and the flattened rows of the commutator determinant all rely on it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    domain: CoeffDomain,
    n: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zero(domain: &CoeffDomain, n: usize) -> Self {
        Mat {
            domain: domain.clone(),
            n,
            data: vec![domain.zero(); n * n],
        }
    }

    pub fn identity(domain: &CoeffDomain, n: usize) -> Self {
        Self::scalar(domain, n, domain.one())
    }

    pub fn scalar(domain: &CoeffDomain, n: usize, c: Elem) -> Self {
        let mut m = Self::zero(domain, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// The matrix unit `E_{ij}` (1-based indices).
    pub fn unit(domain: &CoeffDomain, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(domain, n);
        m.data[(i - 1) * n + (j - 1)] = domain.one();
        m
    }

    /// Builds a matrix from integer rows, mapping entries into `domain`.
    pub fn from_i64_rows(domain: &CoeffDomain, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend(row.iter().map(|&v| domain.from_i64(v)));
        }
        Mat {
            domain: domain.clone(),
            n,
            data,
        }
    }

    pub fn from_entries(domain: &CoeffDomain, n: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != n * n || n == 0 {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {n}×{n} matrix",
                data.len()
            )));
        }
        Ok(Mat {
            domain: domain.clone(),
            n,
            data,
        })
    }

    /// Inverse of [`Mat::vectorize`].
    pub fn from_vector(domain: &CoeffDomain, n: usize, v: &[Elem]) -> Self {
        assert_eq!(v.len(), n * n);
        Mat {
            domain: domain.clone(),
            n,
            data: v.to_vec(),
        }
    }

    pub fn domain(&self) -> &CoeffDomain {
        &self.domain
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    /// Row-major flattening to a length-`n²` vector.
    pub fn vectorize(&self) -> Vec<Elem> {
        self.data.clone()
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    fn check_compatible(&self, other: &Mat) {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        assert_eq!(self.domain, other.domain, "matrix domains differ");
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.domain.is_zero(e))
    }

    pub fn is_scalar(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e == self.get(0, 0)
                } else {
                    self.domain.is_zero(e)
                }
            })
        })
    }

    pub fn scale(&self, c: &Elem) -> Mat {
        Mat {
            domain: self.domain.clone(),
            n: self.n,
            data: self.data.iter().map(|e| self.domain.mul(c, e)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Elem {
        (0..self.n).fold(self.domain.zero(), |acc, i| {
            self.domain.add(&acc, self.get(i, i))
        })
    }

    pub fn pow(&self, mut e: u32) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.domain, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Mat) -> Mat {
        &(self * other) - &(other * self)
    }

    /// Entrywise image in another domain (reduction mod `p`, `Z ⊂ Q`, ...).
    pub fn map_into(&self, target: &CoeffDomain) -> Result<Mat> {
        let data = self
            .data
            .iter()
            .map(|e| target.reduce(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            domain: target.clone(),
            n: self.n,
            data,
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination; valid over every domain.
    pub fn det(&self) -> Elem {
        det_rows(&self.domain, self.rows())
    }

    /// Coefficients of `det(tI - A)`, highest degree first (monic, length `n + 1`).
    ///
    /// Division-free (Berkowitz), so it works over `Z` as well as over fields.
    pub fn char_poly(&self) -> Vec<Elem> {
        let d = &self.domain;
        let mut poly = vec![d.one()];
        for k in 1..=self.n {
            // Leading k×k block split as [[A', c], [r, a]].
            let a = self.get(k - 1, k - 1).clone();
            let mut col = vec![d.one(), d.neg(&a)];
            if k > 1 {
                let c: Vec<Elem> = (0..k - 1).map(|i| self.get(i, k - 1).clone()).collect();
                let r: Vec<Elem> = (0..k - 1).map(|j| self.get(k - 1, j).clone()).collect();
                let mut v = c;
                for _ in 0..k - 1 {
                    let rv = r
                        .iter()
                        .zip(&v)
                        .fold(d.zero(), |acc, (x, y)| d.add(&acc, &d.mul(x, y)));
                    col.push(d.neg(&rv));
                    // v <- A' v
                    v = (0..k - 1)
                        .map(|i| {
                            (0..k - 1).fold(d.zero(), |acc, j| {
                                d.add(&acc, &d.mul(self.get(i, j), &v[j]))
                            })
                        })
                        .collect();
                }
            }
            // Lower-triangular Toeplitz (k+1)×k matrix with first column `col`.
            let next: Vec<Elem> = (0..=k)
                .map(|i| {
                    (0..k.min(i + 1)).fold(d.zero(), |acc, j| {
                        d.add(&acc, &d.mul(&col[i - j], &poly[j]))
                    })
                })
                .collect();
            poly = next;
        }
        poly
    }

    /// Evaluates a polynomial (highest degree first) at this matrix.
    pub fn eval_poly(&self, coeffs: &[Elem]) -> Mat {
        let id = Mat::identity(&self.domain, self.n);
        coeffs
            .iter()
            .fold(Mat::zero(&self.domain, self.n), |acc, c| {
                &(&acc * self) + &id.scale(c)
            })
    }

    pub fn format_rows(&self) -> Vec<Vec<String>> {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().map(|e| self.domain.format(e)).collect())
            .collect()
    }
}

/// Bareiss determinant of a square list of rows.
pub fn det_rows(d: &CoeffDomain, mut m: Vec<Vec<Elem>>) -> Elem {
    let n = m.len();
    if n == 0 {
        return d.one();
    }
    let mut sign_neg = false;
    let mut prev = d.one();
    for k in 0..n - 1 {
        if d.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !d.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(k, i);
                    sign_neg = !sign_neg;
                }
                None => return d.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = d.sub(&d.mul(&m[i][j], &m[k][k]), &d.mul(&m[i][k], &m[k][j]));
                m[i][j] = d.exact_div(&t, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        d.neg(&det)
    } else {
        det
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.check_compatible(rhs);
        Mat {
            domain: self.domain.clone(),
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| self.domain.add(a, b))
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.check_compatible(rhs);
        Mat {
            domain: self.domain.clone(),
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| self.domain.sub(a, b))
                .collect(),
        }
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.check_compatible(rhs);
        let n = self.n;
        let d = &self.domain;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = d.zero();
                for k in 0..n {
                    let a = &self.data[i * n + k];
                    if d.is_zero(a) {
                        continue;
                    }
                    acc = d.add(&acc, &d.mul(a, &rhs.data[k * n + j]));
                }
                data.push(acc);
            }
        }
        Mat {
            domain: d.clone(),
            n,
            data,
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            domain: self.domain.clone(),
            n: self.n,
            data: self.data.iter().map(|e| self.domain.neg(e)).collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .format_rows()
            .into_iter()
            .map(|r| format!("[{}]", r.join(" ")))
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}
