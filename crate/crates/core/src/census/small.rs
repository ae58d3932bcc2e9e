//! Table-driven arithmetic for small matrices over small fields.
//!
//! A matrix in `M_n(F_q)` is encoded as its row-major entries read as base-`q`
//! digits, entry 0 least significant. Census loops work on these indices.

use crate::domain::{CoeffDomain, Elem};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::matrix::Mat;

/// Largest `n` handled by the table path.
pub const MAX_N: usize = 4;
const MAX_NN: usize = MAX_N * MAX_N;

/// `M_n(F_q)` for `q ≤ 256`, `n ≤ 4`, with precomputed field tables.
#[derive(Clone, Debug)]
pub struct SmallRing {
    field: FiniteField,
    q: usize,
    n: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
    neg: Vec<u8>,
    /// Matrix product on indices, for `n = 2` and `q ≤ 5`.
    prod: Option<Vec<u16>>,
}

pub type Entries = [u8; MAX_NN];

impl SmallRing {
    pub fn new(q: u64, n: usize) -> Result<Self> {
        if q > 256 {
            return Err(Error::InvalidInput(format!(
                "q = {q} is too large for table arithmetic"
            )));
        }
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidInput(format!("n = {n} outside 1..={MAX_N}")));
        }
        let field = match CoeffDomain::finite(q)? {
            CoeffDomain::Finite(f) => f,
            _ => unreachable!(),
        };
        let qu = q as usize;
        let mut add = vec![0u8; qu * qu];
        let mut mul = vec![0u8; qu * qu];
        let mut inv = vec![0u8; qu];
        let mut neg = vec![0u8; qu];
        for a in 0..qu {
            for b in 0..qu {
                add[a * qu + b] = field.add(a as u32, b as u32) as u8;
                mul[a * qu + b] = field.mul(a as u32, b as u32) as u8;
            }
            inv[a] = field.inv(a as u32).unwrap_or(0) as u8;
            neg[a] = field.neg(a as u32) as u8;
        }
        let mut ring = SmallRing {
            field,
            q: qu,
            n,
            add,
            mul,
            inv,
            neg,
            prod: None,
        };
        if n == 2 && qu <= 5 {
            let size = qu.pow(4);
            let mut table = vec![0u16; size * size];
            let mut out = [0u8; MAX_NN];
            for a in 0..size {
                let ea = ring.decode(a as u64);
                for b in 0..size {
                    ring.mul_entries_slow(&ea, &ring.decode(b as u64), &mut out);
                    table[a * size + b] = ring.encode(&out) as u16;
                }
            }
            ring.prod = Some(table);
        }
        Ok(ring)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `q^{n²}`.
    pub fn size(&self) -> u64 {
        (self.q as u64).pow((self.n * self.n) as u32)
    }

    pub fn nn(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn fadd(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn fmul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn finv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn fneg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn decode(&self, mut idx: u64) -> Entries {
        let mut e = [0u8; MAX_NN];
        for x in e.iter_mut().take(self.nn()) {
            *x = (idx % self.q as u64) as u8;
            idx /= self.q as u64;
        }
        e
    }

    pub fn encode(&self, e: &Entries) -> u64 {
        e[..self.nn()]
            .iter()
            .rev()
            .fold(0u64, |acc, &x| acc * self.q as u64 + x as u64)
    }

    fn mul_entries_slow(&self, a: &Entries, b: &Entries, out: &mut Entries) {
        let n = self.n;
        for r in 0..n {
            for c in 0..n {
                let mut s = 0u8;
                for t in 0..n {
                    s = self.fadd(s, self.fmul(a[r * n + t], b[t * n + c]));
                }
                out[r * n + c] = s;
            }
        }
    }

    /// Product of two encoded matrices.
    pub fn mul_idx(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.prod {
            let size = self.size() as usize;
            return t[a as usize * size + b as usize] as u64;
        }
        let mut out = [0u8; MAX_NN];
        self.mul_entries_slow(&self.decode(a), &self.decode(b), &mut out);
        self.encode(&out)
    }

    pub fn identity_idx(&self) -> u64 {
        let mut e = [0u8; MAX_NN];
        for i in 0..self.n {
            e[i * self.n + i] = 1;
        }
        self.encode(&e)
    }

    pub fn det_idx(&self, a: u64) -> u8 {
        let n = self.n;
        let mut m = self.decode(a);
        let mut det = 1u8;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for k in 0..n {
                    m.swap(piv * n + k, col * n + k);
                }
                det = self.fneg(det);
            }
            let x = m[col * n + col];
            det = self.fmul(det, x);
            let xi = self.finv(x);
            for r in col + 1..n {
                let f = self.fneg(self.fmul(m[r * n + col], xi));
                if f == 0 {
                    continue;
                }
                for k in col..n {
                    m[r * n + k] = self.fadd(m[r * n + k], self.fmul(f, m[col * n + k]));
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination, if invertible.
    pub fn inv_idx(&self, a: u64) -> Option<u64> {
        let n = self.n;
        let mut m = self.decode(a);
        let mut inv = self.decode(self.identity_idx());
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r * n + col] != 0)?;
            for k in 0..n {
                m.swap(piv * n + k, col * n + k);
                inv.swap(piv * n + k, col * n + k);
            }
            let xi = self.finv(m[col * n + col]);
            for k in 0..n {
                m[col * n + k] = self.fmul(m[col * n + k], xi);
                inv[col * n + k] = self.fmul(inv[col * n + k], xi);
            }
            for r in (0..n).filter(|&r| r != col) {
                let f = self.fneg(m[r * n + col]);
                if f == 0 {
                    continue;
                }
                for k in 0..n {
                    m[r * n + k] = self.fadd(m[r * n + k], self.fmul(f, m[col * n + k]));
                    inv[r * n + k] = self.fadd(inv[r * n + k], self.fmul(f, inv[col * n + k]));
                }
            }
        }
        Some(self.encode(&inv))
    }

    /// All invertible matrices, as indices, with their inverses.
    pub fn general_linear(&self) -> Vec<(u64, u64)> {
        (0..self.size())
            .filter_map(|a| self.inv_idx(a).map(|i| (a, i)))
            .collect()
    }

    /// Whether `gens` (with the identity when asked) span all of `M_n(F_q)`
    /// under products.
    pub fn generates(&self, gens: &[u64], include_identity: bool) -> bool {
        let nn = self.nn();
        let mut basis = SmallEchelon::new(nn);
        let mut frontier: [u64; MAX_NN] = [0; MAX_NN];
        let mut flen = 0;
        let seeds = include_identity
            .then(|| self.identity_idx())
            .into_iter()
            .chain(gens.iter().copied());
        for s in seeds {
            if basis.insert(self, &self.decode(s)) {
                frontier[flen] = s;
                flen += 1;
            }
        }
        let mut next: [u64; MAX_NN] = [0; MAX_NN];
        while flen > 0 && basis.rank < nn {
            let mut nlen = 0;
            for &f in &frontier[..flen] {
                for &g in gens {
                    for prod in [self.mul_idx(f, g), self.mul_idx(g, f)] {
                        if basis.insert(self, &self.decode(prod)) {
                            next[nlen] = prod;
                            nlen += 1;
                            if basis.rank == nn {
                                return true;
                            }
                        }
                    }
                }
            }
            frontier = next;
            flen = nlen;
        }
        basis.rank == nn
    }

    pub fn to_mat(&self, idx: u64) -> Mat {
        let d = CoeffDomain::Finite(self.field.clone());
        let e = self.decode(idx);
        let v: Vec<Elem> = e[..self.nn()].iter().map(|&x| Elem::Fq(x as u32)).collect();
        Mat::from_vector(&d, self.n, &v)
    }

    pub fn from_mat(&self, m: &Mat) -> Result<u64> {
        if m.n() != self.n {
            return Err(Error::ShapeMismatch(format!("expected {0}×{0}", self.n)));
        }
        let mut e = [0u8; MAX_NN];
        for (x, v) in e.iter_mut().zip(m.entries()) {
            match v {
                Elem::Fq(a) if (*a as usize) < self.q => *x = *a as u8,
                _ => {
                    return Err(Error::DomainMismatch(
                        self.field.to_string(),
                        format!("{v:?}"),
                    ))
                }
            }
        }
        Ok(self.encode(&e))
    }
}

/// Row echelon basis of a subspace of `F_q^{nn}`, rows not fully reduced.
struct SmallEchelon {
    rows: [Entries; MAX_NN],
    pivots: [usize; MAX_NN],
    rank: usize,
    nn: usize,
}

impl SmallEchelon {
    fn new(nn: usize) -> Self {
        SmallEchelon {
            rows: [[0; MAX_NN]; MAX_NN],
            pivots: [0; MAX_NN],
            rank: 0,
            nn,
        }
    }

    fn insert(&mut self, ring: &SmallRing, v: &Entries) -> bool {
        let mut v = *v;
        // each row is zero at the pivots of the rows inserted before it
        for i in 0..self.rank {
            let p = self.pivots[i];
            if v[p] != 0 {
                let f = ring.fneg(v[p]);
                for (x, &r) in v[..self.nn].iter_mut().zip(&self.rows[i][..self.nn]) {
                    *x = ring.fadd(*x, ring.fmul(f, r));
                }
            }
        }
        let Some(p) = v[..self.nn].iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = ring.finv(v[p]);
        for x in v[..self.nn].iter_mut() {
            *x = ring.fmul(*x, inv);
        }
        self.rows[self.rank] = v;
        self.pivots[self.rank] = p;
        self.rank += 1;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generation::generates_matrix_algebra;

    #[test]
    fn encode_round_trip_and_products() {
        for q in [2, 3, 4] {
            let r = SmallRing::new(q, 2).unwrap();
            for a in 0..r.size() {
                assert_eq!(r.encode(&r.decode(a)), a);
                assert_eq!(r.from_mat(&r.to_mat(a)).unwrap(), a);
            }
            for a in (0..r.size()).step_by(7) {
                for b in (0..r.size()).step_by(5) {
                    let want = &r.to_mat(a) * &r.to_mat(b);
                    assert_eq!(r.to_mat(r.mul_idx(a, b)), want);
                    assert_eq!(Elem::Fq(r.det_idx(a) as u32), r.to_mat(a).det());
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(SmallRing::new(2, 2).unwrap().general_linear().len(), 6);
        assert_eq!(SmallRing::new(3, 2).unwrap().general_linear().len(), 48);
        let r = SmallRing::new(2, 3).unwrap();
        let gl = r.general_linear();
        assert_eq!(gl.len(), 168);
        for (c, ci) in gl {
            assert_eq!(r.mul_idx(c, ci), r.identity_idx());
        }
    }

    #[test]
    fn table_closure_matches_generic() {
        for q in [2, 3, 4] {
            let r = SmallRing::new(q, 2).unwrap();
            let size = r.size();
            for a in (0..size).step_by(3) {
                for b in (0..size).step_by(11) {
                    let fast = r.generates(&[a, b], true);
                    let slow = generates_matrix_algebra(&[r.to_mat(a), r.to_mat(b)]).unwrap();
                    assert_eq!(fast, slow, "q={q} a={a} b={b}");
                }
            }
        }
    }
}
