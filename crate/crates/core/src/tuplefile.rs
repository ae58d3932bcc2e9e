//! JSON exchange format for generator families.
//!
//! ```json
//! {"coeff": {"kind": "prime_field", "p": 2}, "n": 2, "shape": [[2, 3]],
//!  "generators": [[[["1","0"],["0","0"]], ...], ...]}
//! ```
//!
//! Each generator lists one matrix per block copy, in shape order. Matrices are
//! row-major arrays of canonical element strings.

use serde::{Deserialize, Serialize};

use crate::domain::CoeffDomain;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::generation::{DirectSumShape, SumElem};
use crate::matrix::Mat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoeffDesc {
    PrimeField {
        p: u64,
    },
    ExtField {
        p: u64,
        deg: u32,
        /// Monic modulus, lowest degree first. The default modulus is used when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
    },
    Integers,
    Rationals,
}

impl CoeffDesc {
    pub fn of(domain: &CoeffDomain) -> Self {
        match domain {
            CoeffDomain::Finite(f) if f.is_prime_field() => CoeffDesc::PrimeField {
                p: f.characteristic() as u64,
            },
            CoeffDomain::Finite(f) => CoeffDesc::ExtField {
                p: f.characteristic() as u64,
                deg: f.degree(),
                modulus: Some(f.modulus().to_vec()),
            },
            CoeffDomain::Integers => CoeffDesc::Integers,
            CoeffDomain::Rationals => CoeffDesc::Rationals,
        }
    }

    pub fn domain(&self) -> Result<CoeffDomain> {
        match self {
            CoeffDesc::PrimeField { p } => CoeffDomain::prime_field(*p),
            CoeffDesc::ExtField { p, deg, modulus } => {
                let field = match modulus {
                    Some(m) => {
                        if m.len() != *deg as usize + 1 {
                            return Err(Error::InvalidInput(format!(
                                "modulus {m:?} does not have degree {deg}"
                            )));
                        }
                        FiniteField::with_modulus(*p, m.clone())?
                    }
                    None => FiniteField::new(*p, *deg)?,
                };
                Ok(CoeffDomain::Finite(field))
            }
            CoeffDesc::Integers => Ok(CoeffDomain::Integers),
            CoeffDesc::Rationals => Ok(CoeffDomain::Rationals),
        }
    }
}

type RawMatrix = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleFile {
    pub coeff: CoeffDesc,
    /// Block size, present when every block has the same size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub shape: Vec<(usize, usize)>,
    pub generators: Vec<Vec<RawMatrix>>,
}

impl TupleFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("tuple file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tuple files always serialize")
    }

    pub fn encode(domain: &CoeffDomain, shape: &DirectSumShape, gens: &[SumElem]) -> Self {
        let sizes = shape.component_sizes();
        let uniform = sizes.windows(2).all(|w| w[0] == w[1]);
        TupleFile {
            coeff: CoeffDesc::of(domain),
            n: uniform.then(|| sizes.first().copied()).flatten(),
            shape: shape.blocks().to_vec(),
            generators: gens
                .iter()
                .map(|g| g.0.iter().map(Mat::format_rows).collect())
                .collect(),
        }
    }

    /// Parses every element and checks the generators against the shape.
    pub fn decode(&self) -> Result<(CoeffDomain, DirectSumShape, Vec<SumElem>)> {
        let domain = self.coeff.domain()?;
        let shape = DirectSumShape::new(self.shape.clone())?;
        let sizes = shape.component_sizes();
        if let Some(n) = self.n {
            if sizes.iter().any(|&s| s != n) {
                return Err(Error::ShapeMismatch(format!(
                    "n = {n} but shape is {:?}",
                    self.shape
                )));
            }
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for (g, raw) in self.generators.iter().enumerate() {
            if raw.len() != sizes.len() {
                return Err(Error::ShapeMismatch(format!(
                    "generator {g} has {} components, shape needs {}",
                    raw.len(),
                    sizes.len()
                )));
            }
            let mut parts = Vec::with_capacity(raw.len());
            for (rows, &n) in raw.iter().zip(&sizes) {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::ShapeMismatch(format!(
                        "generator {g}: expected {n}x{n} matrices"
                    )));
                }
                let data = rows
                    .iter()
                    .flatten()
                    .map(|s| domain.parse(s))
                    .collect::<Result<Vec<_>>>()?;
                parts.push(Mat::from_entries(&domain, n, data)?);
            }
            gens.push(SumElem(parts));
        }
        Ok((domain, shape, gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for d in [
            CoeffDomain::finite(2).unwrap(),
            CoeffDomain::finite(9).unwrap(),
            CoeffDomain::Integers,
            CoeffDomain::Rationals,
        ] {
            let shape = DirectSumShape::new(vec![(2, 2), (3, 1)]).unwrap();
            let mut g = SumElem::identity(&d, &shape);
            g.0[0] = Mat::unit(&d, 2, 1, 2);
            let file = TupleFile::encode(&d, &shape, &[g.clone(), SumElem::zero(&d, &shape)]);
            assert_eq!(file.n, None);
            let text = file.to_json();
            let back = TupleFile::from_json(&text).unwrap();
            assert_eq!(back, file);
            let (d2, s2, gens) = back.decode().unwrap();
            assert_eq!((d2, s2), (d.clone(), shape));
            assert_eq!(gens[0], g);
        }
    }

    #[test]
    fn rejects_bad_files() {
        assert!(TupleFile::from_json("{").is_err());
        let bad_elem = r#"{"coeff":{"kind":"integers"},"shape":[[2,1]],"generators":[[[["1","x"],["0","0"]]]]}"#;
        assert!(TupleFile::from_json(bad_elem).unwrap().decode().is_err());
        let bad_size =
            r#"{"coeff":{"kind":"prime_field","p":3},"n":3,"shape":[[2,1]],"generators":[]}"#;
        assert!(TupleFile::from_json(bad_size).unwrap().decode().is_err());
        let not_prime = r#"{"coeff":{"kind":"prime_field","p":4},"shape":[[2,1]],"generators":[]}"#;
        assert!(TupleFile::from_json(not_prime).unwrap().decode().is_err());
        let reducible = r#"{"coeff":{"kind":"ext_field","p":2,"deg":2,"modulus":[1,0,1]},"shape":[[2,1]],"generators":[]}"#;
        assert!(TupleFile::from_json(reducible).unwrap().decode().is_err());
    }

    #[test]
    fn extension_elements_are_digit_lists() {
        let text = r#"{"coeff":{"kind":"ext_field","p":2,"deg":2},"n":2,"shape":[[2,1]],
            "generators":[[[["0,1","1,0"],["0,0","1,1"]]]]}"#;
        let (d, _, gens) = TupleFile::from_json(text).unwrap().decode().unwrap();
        assert_eq!(d.cardinality(), Some(4));
        assert_eq!(gens[0].0[0].format_rows()[1][1], "1,1");
    }
}
