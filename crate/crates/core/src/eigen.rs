//! Eigenlines of 2×2 matrices over `F_q`, found in the quadratic extension `F_{q^2}`.

use serde::Serialize;

use crate::domain::{CoeffDomain, Elem};
use crate::error::{Error, Result};
use crate::field::{QElem, QuadExt};
use crate::matrix::Mat;

/// A point of the projective line over `F_{q^2}`, scaled so that its first
/// nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjLine {
    pub x: QElem,
    pub y: QElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigenlines {
    /// Scalar matrix: every line is an eigenline.
    All,
    Lines(Vec<ProjLine>),
}

impl ProjLine {
    pub fn new(ext: &QuadExt, x: QElem, y: QElem) -> Option<Self> {
        let lead = if ext.is_zero(x) { y } else { x };
        let inv = ext.inv(lead)?;
        Some(ProjLine {
            x: ext.mul(x, inv),
            y: ext.mul(y, inv),
        })
    }

    /// Slope `y/x`, `None` for the vertical line through `(0, 1)`.
    pub fn slope(&self, ext: &QuadExt) -> Option<QElem> {
        if ext.is_zero(self.x) {
            None
        } else {
            Some(ext.mul(self.y, ext.inv(self.x).unwrap()))
        }
    }

    /// Whether the line is defined over the base field.
    pub fn is_rational(&self) -> bool {
        self.x.im == 0 && self.y.im == 0
    }
}

fn entries(ext: &QuadExt, m: &Mat) -> Result<[QElem; 4]> {
    if m.n() != 2 {
        return Err(Error::ShapeMismatch(format!(
            "expected 2×2, got {0}×{0}",
            m.n()
        )));
    }
    match m.domain() {
        CoeffDomain::Finite(f) if f == ext.base() => {}
        other => {
            return Err(Error::DomainMismatch(
                other.to_string(),
                ext.base().to_string(),
            ));
        }
    }
    let get = |i, j| match m.get(i, j) {
        Elem::Fq(x) => ext.embed(*x),
        _ => unreachable!(),
    };
    Ok([get(0, 0), get(0, 1), get(1, 0), get(1, 1)])
}

/// Whether `M·L ⊆ L`, checked in the extension field.
pub fn preserves_line(ext: &QuadExt, m: &Mat, line: &ProjLine) -> Result<bool> {
    let [a, b, c, d] = entries(ext, m)?;
    let mx = ext.add(ext.mul(a, line.x), ext.mul(b, line.y));
    let my = ext.add(ext.mul(c, line.x), ext.mul(d, line.y));
    let cross = ext.sub(ext.mul(line.x, my), ext.mul(line.y, mx));
    Ok(ext.is_zero(cross))
}

/// All eigenlines of a 2×2 matrix over `F_q`, as lines over `F_{q^2}`.
pub fn quadratic_eigvecs(ext: &QuadExt, m: &Mat) -> Result<Eigenlines> {
    let [a, b, c, d] = entries(ext, m)?;
    if m.is_scalar() {
        return Ok(Eigenlines::All);
    }
    let f = ext.base();
    let (tr, det) = match (m.trace(), m.det()) {
        (Elem::Fq(t), Elem::Fq(dt)) => (t, dt),
        _ => unreachable!(),
    };
    // char poly t^2 - tr t + det
    let mut roots = ext.roots_of_base_quadratic(f.neg(tr), det);
    roots.dedup();
    let mut lines = Vec::new();
    for lambda in roots {
        let (m11, m22) = (ext.sub(a, lambda), ext.sub(d, lambda));
        // A - λI has rank 1 since A is not scalar
        let (x, y) = if !ext.is_zero(m11) || !ext.is_zero(b) {
            (b, ext.sub(ext.zero(), m11))
        } else {
            (m22, ext.sub(ext.zero(), c))
        };
        let line = ProjLine::new(ext, x, y).expect("nonzero kernel vector");
        if !lines.contains(&line) {
            lines.push(line);
        }
    }
    lines.sort();
    Ok(Eigenlines::Lines(lines))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn setup(q: u64) -> (CoeffDomain, QuadExt) {
        let d = CoeffDomain::finite(q).unwrap();
        let ext = QuadExt::new(&FiniteField::clone(d.finite_field().unwrap()));
        (d, ext)
    }

    #[test]
    fn scalar_gives_all_lines() {
        let (d, ext) = setup(3);
        let s = Mat::scalar(&d, 2, d.from_i64(2));
        assert_eq!(quadratic_eigvecs(&ext, &s).unwrap(), Eigenlines::All);
    }

    #[test]
    fn diagonal_gives_axes() {
        let (d, ext) = setup(2);
        let e11 = Mat::unit(&d, 2, 1, 1);
        let Eigenlines::Lines(lines) = quadratic_eigvecs(&ext, &e11).unwrap() else {
            panic!()
        };
        let one = ext.embed(1);
        let zero = ext.zero();
        assert_eq!(lines.len(), 2);
        assert!(lines.contains(&ProjLine { x: one, y: zero }));
        assert!(lines.contains(&ProjLine { x: zero, y: one }));
    }

    #[test]
    fn fibonacci_lines_live_in_f4() {
        let (d, ext) = setup(2);
        let fib = Mat::from_i64_rows(&d, &[&[0, 1], &[1, 1]]);
        let Eigenlines::Lines(lines) = quadratic_eigvecs(&ext, &fib).unwrap() else {
            panic!()
        };
        assert_eq!(lines.len(), 2);
        for line in &lines {
            assert!(!line.is_rational());
            // slope s satisfies s^2 + s + 1 = 0
            let s = line.slope(&ext).unwrap();
            let v = ext.add(ext.add(ext.mul(s, s), s), ext.embed(1));
            assert!(ext.is_zero(v));
            assert!(preserves_line(&ext, &fib, line).unwrap());
        }
    }

    #[test]
    fn nilpotent_has_one_line() {
        let (d, ext) = setup(5);
        let e12 = Mat::unit(&d, 2, 1, 2);
        let Eigenlines::Lines(lines) = quadratic_eigvecs(&ext, &e12).unwrap() else {
            panic!()
        };
        assert_eq!(
            lines,
            vec![ProjLine {
                x: ext.embed(1),
                y: ext.zero()
            }]
        );
    }

    #[test]
    fn every_matrix_preserves_its_lines() {
        for q in [2u64, 3, 4, 5] {
            let (d, ext) = setup(q);
            let f = d.finite_field().unwrap().clone();
            for idx in 0..(q.pow(4)) {
                let mut v = idx;
                let data = (0..4)
                    .map(|_| {
                        let e = Elem::Fq((v % q) as u32);
                        v /= q;
                        e
                    })
                    .collect();
                let m = Mat::from_entries(&d, 2, data).unwrap();
                if let Eigenlines::Lines(lines) = quadratic_eigvecs(&ext, &m).unwrap() {
                    assert!(!lines.is_empty() && lines.len() <= 2, "{m} over {f}");
                    for l in &lines {
                        assert!(preserves_line(&ext, &m, l).unwrap());
                    }
                }
            }
        }
    }
}
