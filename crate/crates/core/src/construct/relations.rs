//! The two-letter relations presenting `M_n`, evaluated at the standard pair.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::construct::standard_xy;
use crate::domain::CoeffDomain;
use crate::error::{Error, Result};
use crate::matrix::Mat;

/// An integer combination of words in `x` and `y`. The empty word is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NcPoly {
    pub terms: Vec<(i64, String)>,
}

impl NcPoly {
    /// Collects like terms and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (i64, String)>) -> Result<Self> {
        let mut acc: BTreeMap<String, i64> = BTreeMap::new();
        for (c, w) in terms {
            if w.chars().any(|ch| ch != 'x' && ch != 'y') {
                return Err(Error::InvalidInput(format!(
                    "word {w:?} uses letters other than x, y"
                )));
            }
            *acc.entry(w).or_insert(0) += c;
        }
        let mut terms: Vec<(i64, String)> = acc
            .into_iter()
            .filter(|t| t.1 != 0)
            .map(|(w, c)| (c, w))
            .collect();
        terms.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.1.cmp(&b.1)));
        Ok(NcPoly { terms })
    }

    pub fn eval(&self, x: &Mat, y: &Mat) -> Mat {
        let d = x.domain();
        let n = x.n();
        let mut out = Mat::zero(d, n);
        for (c, w) in &self.terms {
            let mut m = Mat::identity(d, n);
            for ch in w.chars() {
                m = &m * if ch == 'x' { x } else { y };
            }
            out = &out + &m.scale(&d.from_i64(*c));
        }
        out
    }

    /// The polynomial `p(x, a·x + y)`, expanded.
    pub fn shift_y(&self, a: i64) -> NcPoly {
        let mut out = Vec::new();
        for (c, w) in &self.terms {
            let mut partial: Vec<(i64, String)> = vec![(*c, String::new())];
            for ch in w.chars() {
                let mut next = Vec::with_capacity(partial.len() * 2);
                for (k, prefix) in partial {
                    if ch == 'x' {
                        next.push((k, prefix + "x"));
                    } else {
                        next.push((k * a, prefix.clone() + "x"));
                        next.push((k, prefix + "y"));
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
        NcPoly::new(out).expect("letters stay in x, y")
    }
}

fn fmt_word(w: &str) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    let chars: Vec<char> = w.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut j = i;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        out.push(chars[i]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if i == 0 {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (a, w.is_empty()) {
                (1, _) => f.write_str(&fmt_word(w))?,
                (_, true) => write!(f, "{a}")?,
                _ => write!(f, "{a}{}", fmt_word(w))?,
            }
        }
        Ok(())
    }
}

/// `r1 = x^n − 1`, `r2 = Σ_{i<n} x^{n−i} y x^i − 1`, `s_0 = y² − y` and
/// `s_j = y x^j y` for `1 ≤ j < n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationSet {
    pub n: usize,
    pub r1: NcPoly,
    pub r2: NcPoly,
    pub s: Vec<NcPoly>,
}

impl RelationSet {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        let xs = |k: usize| "x".repeat(k);
        let r1 = NcPoly::new([(1, xs(n)), (-1, String::new())])?;
        let r2 = NcPoly::new(
            (0..n)
                .map(|i| (1, format!("{}y{}", xs(n - i), xs(i))))
                .chain([(-1, String::new())]),
        )?;
        let mut s = vec![NcPoly::new([(1, "yy".to_string()), (-1, "y".to_string())])?];
        for j in 1..n {
            s.push(NcPoly::new([(1, format!("y{}y", xs(j)))])?);
        }
        Ok(RelationSet { n, r1, r2, s })
    }

    /// Named relations in a fixed order.
    pub fn named(&self) -> Vec<(String, &NcPoly)> {
        let mut out = vec![("r1".to_string(), &self.r1), ("r2".to_string(), &self.r2)];
        out.extend(self.s.iter().enumerate().map(|(j, p)| (format!("s{j}"), p)));
        out
    }

    /// Every relation with `y` replaced by `a·x + y`.
    pub fn shift_y(&self, a: i64) -> RelationSet {
        RelationSet {
            n: self.n,
            r1: self.r1.shift_y(a),
            r2: self.r2.shift_y(a),
            s: self.s.iter().map(|p| p.shift_y(a)).collect(),
        }
    }

    /// Names of the relations that do not vanish at `(x, y)`.
    pub fn failures(&self, x: &Mat, y: &Mat) -> Vec<String> {
        self.named()
            .into_iter()
            .filter(|(_, p)| !p.eval(x, y).is_zero())
            .map(|(name, _)| name)
            .collect()
    }
}

/// Whether all relations vanish at the standard pair `(X, Y)` over `domain`.
pub fn check_relations(n: usize, domain: &CoeffDomain) -> Result<bool> {
    let (x, y) = standard_xy(n, domain);
    Ok(RelationSet::new(n)?.failures(&x, &y).is_empty())
}

/// Whether the relations `r(x, a·x + y)` vanish at `(X, Y − aX)`.
pub fn check_shifted_relations(n: usize, domain: &CoeffDomain, a: i64) -> Result<bool> {
    let (x, y) = standard_xy(n, domain);
    let y_shifted = &y - &x.scale(&domain.from_i64(a));
    Ok(RelationSet::new(n)?
        .shift_y(a)
        .failures(&x, &y_shifted)
        .is_empty())
}
