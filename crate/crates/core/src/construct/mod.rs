//! Explicit generator families, each checked before it is handed out.

pub mod relations;
pub mod tables;

use num_rational::BigRational;
use serde::Serialize;

use crate::domain::{CoeffDomain, Elem};
use crate::error::{Error, Result};
use crate::generation::{closure_generates, lattice_closure, DirectSumShape, MatTuple, SumElem};
use crate::matrix::Mat;
use crate::tuplefile::TupleFile;

pub use relations::{check_relations, check_shifted_relations, NcPoly, RelationSet};
pub use tables::{table16, table16_family, table16_generators, table_conj_classes, ConjClass};

/// Primes at which integer families are additionally checked by closure.
pub const VERIFY_PRIMES: [u64; 3] = [2, 3, 5];

/// How a family was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "recipe", rename_all = "snake_case")]
pub enum Provenance {
    StandardXY,
    /// `k` generators of `M_n^l` turned into `k + 1` generators of `M_n^{l+1}`.
    ExtendByOneCopy,
    /// `k` generators of `M_n^l` turned into `k + 1` generators of `M_n^{2l}`.
    DoubleCopies,
    /// Juxtaposition of families on blocks of distinct sizes.
    Mixed,
    /// Two generators `x = X`, `y = Y − aX` with one copy per scalar `a`.
    ScalarShift {
        scalars: Vec<Vec<String>>,
    },
    Table16,
    /// Supplied by the caller.
    Given,
}

/// A generating set of a direct sum, verified at construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorFamily {
    shape: DirectSumShape,
    #[serde(serialize_with = "domain_name")]
    domain: CoeffDomain,
    generators: Vec<SumElem>,
    provenance: Provenance,
}

fn domain_name<S: serde::Serializer>(
    d: &CoeffDomain,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.to_string())
}

/// Whether `gens` generate the direct sum (with the identity adjoined).
///
/// Fields use linear closure. Over `Z` the ring generated must be the full
/// lattice, and the reductions mod each of [`VERIFY_PRIMES`] must generate too.
pub fn generates_direct_sum(
    gens: &[SumElem],
    shape: &DirectSumShape,
    domain: &CoeffDomain,
) -> Result<bool> {
    match domain {
        CoeffDomain::Integers => {
            if !lattice_closure(gens, shape)?.0 {
                return Ok(false);
            }
            for p in VERIFY_PRIMES {
                let fp = CoeffDomain::prime_field(p)?;
                let reduced = gens
                    .iter()
                    .map(|g| g.map_into(&fp))
                    .collect::<Result<Vec<_>>>()?;
                if !closure_generates(&reduced, shape, &fp, true)?.verdict {
                    return Err(Error::VerificationFailed(format!(
                        "full integer lattice but reduction mod {p} is proper"
                    )));
                }
            }
            Ok(true)
        }
        _ => Ok(closure_generates(gens, shape, domain, true)?.verdict),
    }
}

impl GeneratorFamily {
    /// Checks that `generators` generate `shape` over `domain`.
    pub fn new(
        shape: DirectSumShape,
        domain: CoeffDomain,
        generators: Vec<SumElem>,
        provenance: Provenance,
    ) -> Result<Self> {
        for g in &generators {
            shape.check(g)?;
            if *g.domain() != domain {
                return Err(Error::DomainMismatch(
                    domain.to_string(),
                    g.domain().to_string(),
                ));
            }
        }
        if !generates_direct_sum(&generators, &shape, &domain)? {
            return Err(Error::VerificationFailed(format!(
                "{} generators do not generate {:?} over {domain}",
                generators.len(),
                shape.blocks()
            )));
        }
        Ok(GeneratorFamily {
            shape,
            domain,
            generators,
            provenance,
        })
    }

    /// Builds a family on `M_n^m` from `k` tuples of length `m`.
    pub fn from_tuples(tuples: &[MatTuple], provenance: Provenance) -> Result<Self> {
        let first = tuples
            .first()
            .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
        let shape = DirectSumShape::uniform(first.n(), first.len())?;
        let gens = tuples.iter().map(MatTuple::to_sum_elem).collect();
        Self::new(shape, first.domain().clone(), gens, provenance)
    }

    pub fn shape(&self) -> &DirectSumShape {
        &self.shape
    }

    pub fn domain(&self) -> &CoeffDomain {
        &self.domain
    }

    pub fn generators(&self) -> &[SumElem] {
        &self.generators
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The generators as tuples, when the shape is a single block.
    pub fn tuples(&self) -> Result<Vec<MatTuple>> {
        if self.shape.blocks().len() != 1 {
            return Err(Error::ShapeMismatch(
                "family has several block sizes".into(),
            ));
        }
        self.generators
            .iter()
            .map(|g| MatTuple::new(g.0.clone()))
            .collect()
    }

    pub fn to_tuple_file(&self) -> TupleFile {
        TupleFile::encode(&self.domain, &self.shape, &self.generators)
    }

    /// Reduction to another domain, re-verified there.
    pub fn map_into(&self, target: &CoeffDomain) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.map_into(target))
            .collect::<Result<_>>()?;
        Self::new(
            self.shape.clone(),
            target.clone(),
            gens,
            self.provenance.clone(),
        )
    }

    fn single_block(&self) -> Result<(usize, usize)> {
        match self.shape.blocks() {
            [b] => Ok(*b),
            _ => Err(Error::ShapeMismatch(format!(
                "expected one block, got {:?}",
                self.shape.blocks()
            ))),
        }
    }
}

/// `X = E_{1n} + Σ E_{i+1,i}` (cyclic shift) and `Y = E_{11}`.
pub fn standard_xy(n: usize, domain: &CoeffDomain) -> (Mat, Mat) {
    let mut x = Mat::unit(domain, n, 1, n);
    for i in 1..n {
        x = &x + &Mat::unit(domain, n, i + 1, i);
    }
    (x, Mat::unit(domain, n, 1, 1))
}

/// `{X, Y}` as a verified family on one copy of `M_n`.
pub fn standard_family(n: usize, domain: &CoeffDomain) -> Result<GeneratorFamily> {
    let (x, y) = standard_xy(n, domain);
    let shape = DirectSumShape::uniform(n, 1)?;
    GeneratorFamily::new(
        shape,
        domain.clone(),
        vec![SumElem(vec![x]), SumElem(vec![y])],
        Provenance::StandardXY,
    )
}

/// From `a_1..a_k` generating `M_n^l`: `(a_i, 0)` for `i < k`, `(a_k, Y)`, and
/// `(0, …, 0, X)`, which generate `M_n^{l+1}`.
pub fn extend_by_one_copy(family: &GeneratorFamily) -> Result<GeneratorFamily> {
    let (n, l) = family.single_block()?;
    let d = family.domain();
    let (x, y) = standard_xy(n, d);
    let zero = Mat::zero(d, n);
    let k = family.len();
    let mut gens: Vec<SumElem> = family
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut parts = g.0.clone();
            parts.push(if i + 1 == k { y.clone() } else { zero.clone() });
            SumElem(parts)
        })
        .collect();
    let mut last = vec![zero; l];
    last.push(x);
    gens.push(SumElem(last));
    GeneratorFamily::new(
        DirectSumShape::uniform(n, l + 1)?,
        d.clone(),
        gens,
        Provenance::ExtendByOneCopy,
    )
}

/// From `a_1..a_k` generating `M_n^l`: `(a_i, a_i)` and `(0^l, I^l)`, which
/// generate `M_n^{2l}`.
pub fn double_copies(family: &GeneratorFamily) -> Result<GeneratorFamily> {
    let (n, l) = family.single_block()?;
    let d = family.domain();
    let mut gens: Vec<SumElem> = family
        .generators()
        .iter()
        .map(|g| SumElem(g.0.iter().chain(&g.0).cloned().collect()))
        .collect();
    let mut last = vec![Mat::zero(d, n); l];
    last.extend(std::iter::repeat_n(Mat::identity(d, n), l));
    gens.push(SumElem(last));
    GeneratorFamily::new(
        DirectSumShape::uniform(n, 2 * l)?,
        d.clone(),
        gens,
        Provenance::DoubleCopies,
    )
}

/// Juxtaposes families on blocks of pairwise distinct sizes. Generator `t` is
/// the `t`-th generator of each family where it has one, zero elsewhere.
pub fn combine_mixed(families: &[GeneratorFamily]) -> Result<GeneratorFamily> {
    let first = families
        .first()
        .ok_or_else(|| Error::InvalidInput("no families".into()))?;
    if families.len() == 1 {
        return Ok(first.clone());
    }
    let d = first.domain().clone();
    let mut blocks = Vec::new();
    for f in families {
        if *f.domain() != d {
            return Err(Error::DomainMismatch(d.to_string(), f.domain().to_string()));
        }
        let (n, m) = f.single_block()?;
        if n < 2 {
            return Err(Error::InvalidInput(
                "blocks must have size at least 2".into(),
            ));
        }
        blocks.push((n, m));
    }
    let shape = DirectSumShape::new(blocks.clone())?;
    if !shape.has_distinct_sizes() {
        return Err(Error::InvalidInput(format!(
            "repeated block sizes in {blocks:?}"
        )));
    }
    let s = families.iter().map(GeneratorFamily::len).max().unwrap_or(0);
    let gens = (0..s)
        .map(|t| {
            let parts = families
                .iter()
                .zip(&blocks)
                .flat_map(|(f, &(n, m))| match f.generators().get(t) {
                    Some(g) => g.0.clone(),
                    None => vec![Mat::zero(&d, n); m],
                })
                .collect();
            SumElem(parts)
        })
        .collect();
    GeneratorFamily::new(shape, d, gens, Provenance::Mixed)
}

/// The pair `x = X_{n_i}`, `y = Y_{n_i} − a·X_{n_i}` with one copy for each scalar
/// `a ∈ S_i`, over any domain, without checking generation.
///
/// `(X, Y − aX)` is the image of `(x, y)` under the isomorphism with `M_n`
/// whose kernel is generated by the relations `r(x, ax + y)`.
pub fn scalar_shift_candidate(
    blocks: &[(usize, Vec<Elem>)],
    domain: &CoeffDomain,
) -> Result<(DirectSumShape, Vec<SumElem>)> {
    let mut shape_blocks = Vec::new();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (n, scalars) in blocks {
        if *n < 2 {
            return Err(Error::InvalidInput(
                "blocks must have size at least 2".into(),
            ));
        }
        let mut sorted = scalars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != scalars.len() || scalars.is_empty() {
            return Err(Error::InvalidInput(format!(
                "scalars for block {n} must be distinct and nonempty"
            )));
        }
        let (x, y) = standard_xy(*n, domain);
        for a in scalars {
            xs.push(x.clone());
            ys.push(&y - &x.scale(a));
        }
        shape_blocks.push((*n, scalars.len()));
    }
    let shape = DirectSumShape::new(shape_blocks)?;
    if !shape.has_distinct_sizes() {
        return Err(Error::InvalidInput("repeated block sizes".into()));
    }
    Ok((shape, vec![SumElem(xs), SumElem(ys)]))
}

/// Two generators of `⊕ M_{n_i}(Q)^{|S_i|}`, verified by exact closure over `Q`.
pub fn scalar_shift_generators(blocks: &[(usize, Vec<BigRational>)]) -> Result<GeneratorFamily> {
    let q = CoeffDomain::Rationals;
    let elems: Vec<(usize, Vec<Elem>)> = blocks
        .iter()
        .map(|(n, s)| (*n, s.iter().cloned().map(Elem::Rat).collect()))
        .collect();
    let (shape, gens) = scalar_shift_candidate(&elems, &q)?;
    let scalars = elems
        .iter()
        .map(|(_, s)| s.iter().map(|a| q.format(a)).collect())
        .collect();
    GeneratorFamily::new(shape, q, gens, Provenance::ScalarShift { scalars })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::simultaneously_conjugate;
    use crate::generation::closure_span;

    fn f(q: u64) -> CoeffDomain {
        CoeffDomain::finite(q).unwrap()
    }

    fn rats(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|&a| BigRational::from_integer(a.into()))
            .collect()
    }

    fn dim(fam: &GeneratorFamily) -> usize {
        closure_span(fam.generators(), fam.shape(), fam.domain(), true)
            .unwrap()
            .rank()
    }

    #[test]
    fn standard_pair() {
        let z = CoeffDomain::Integers;
        let (x, y) = standard_xy(2, &z);
        assert_eq!(x, Mat::from_i64_rows(&z, &[&[0, 1], &[1, 0]]));
        assert_eq!(y, Mat::unit(&z, 2, 1, 1));
        for n in 1..=4 {
            let (x, y) = standard_xy(n, &z);
            for i in 1..=n {
                for j in 1..=n {
                    let e = &(&x.pow(i as u32 - 1) * &y) * &x.pow((n - j + 1) as u32);
                    assert_eq!(e, Mat::unit(&z, n, i, j), "E_{i}{j} for n = {n}");
                }
            }
        }
        assert_eq!(dim(&standard_family(3, &f(2)).unwrap()), 9);
        assert!(standard_family(2, &z).is_ok());
        assert!(standard_family(3, &CoeffDomain::Rationals).is_ok());
    }

    #[test]
    fn extend_and_double() {
        let d2 = f(2);
        let gens = table16_generators();
        let two_rows: Vec<MatTuple> = gens
            .iter()
            .map(|t| {
                MatTuple::new(t.mats()[..2].to_vec())
                    .unwrap()
                    .map_into(&d2)
                    .unwrap()
            })
            .collect();
        let fam = GeneratorFamily::from_tuples(&two_rows, Provenance::Table16).unwrap();
        let ext = extend_by_one_copy(&fam).unwrap();
        assert_eq!(ext.len(), 3);
        assert_eq!(dim(&ext), 12);
        // (a'_{k+1})^n a'_k isolates Y in the new copy
        let g = ext.generators();
        let iso = g[2].mul(&g[2]).mul(&g[1]);
        let (_, y) = standard_xy(2, &d2);
        assert!(iso.0[..2].iter().all(Mat::is_zero));
        assert_eq!(iso.0[2], y);

        let d3 = f(3);
        let ext3 = extend_by_one_copy(&standard_family(2, &d3).unwrap()).unwrap();
        assert_eq!((ext3.len(), ext3.shape().dimension()), (3, 8));

        let dbl = double_copies(&standard_family(2, &d2).unwrap()).unwrap();
        assert_eq!((dbl.len(), dim(&dbl)), (3, 8));
        let dbl4 = double_copies(&fam).unwrap();
        assert_eq!((dbl4.len(), dbl4.shape().blocks()[0]), (3, (2, 4)));
    }

    #[test]
    fn composite_paths_up_to_four_copies() {
        for q in [2, 3] {
            let base = standard_family(2, &f(q)).unwrap();
            let one = extend_by_one_copy(&base).unwrap();
            let paths = [
                extend_by_one_copy(&one).unwrap(),
                double_copies(&one).unwrap(),
                extend_by_one_copy(&double_copies(&base).unwrap()).unwrap(),
                extend_by_one_copy(&extend_by_one_copy(&one).unwrap()).unwrap(),
            ];
            let copies: Vec<usize> = paths.iter().map(|p| p.shape().blocks()[0].1).collect();
            assert_eq!(copies, [3, 4, 3, 4]);
        }
    }

    #[test]
    fn integer_families_are_checked_mod_p() {
        let z = CoeffDomain::Integers;
        let ext = extend_by_one_copy(&standard_family(2, &z).unwrap()).unwrap();
        assert_eq!(ext.shape().dimension(), 8);
        let (x, y) = standard_xy(2, &z);
        let two = Elem::Int(2.into());
        let scaled = vec![SumElem(vec![x.scale(&two)]), SumElem(vec![y.scale(&two)])];
        let r = GeneratorFamily::new(
            DirectSumShape::uniform(2, 1).unwrap(),
            z,
            scaled,
            Provenance::Given,
        );
        assert!(matches!(r, Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn mixed_sizes() {
        let d = f(2);
        let fam = combine_mixed(&[
            standard_family(2, &d).unwrap(),
            standard_family(3, &d).unwrap(),
        ])
        .unwrap();
        assert_eq!((fam.len(), dim(&fam)), (2, 13));

        let d3 = f(3);
        let two = extend_by_one_copy(&standard_family(2, &d3).unwrap()).unwrap();
        // three generators; reduce to two by the scalar shift pair over F_3
        let (shape, gens) =
            scalar_shift_candidate(&[(2, vec![Elem::Fq(0), Elem::Fq(1)])], &d3).unwrap();
        let pair = GeneratorFamily::new(shape, d3.clone(), gens, Provenance::Given).unwrap();
        let fam = combine_mixed(&[pair, standard_family(3, &d3).unwrap()]).unwrap();
        assert_eq!((fam.len(), dim(&fam)), (2, 17));
        let wider = combine_mixed(&[two.clone(), standard_family(3, &d3).unwrap()]).unwrap();
        assert_eq!((wider.len(), dim(&wider)), (3, 17));

        let single = standard_family(2, &d).unwrap();
        assert_eq!(
            combine_mixed(std::slice::from_ref(&single)).unwrap(),
            single
        );
        assert!(combine_mixed(&[single.clone(), single]).is_err());
    }

    #[test]
    fn rational_two_generator_family() {
        let fam = scalar_shift_generators(&[(2, rats(&[0, 1, 2]))]).unwrap();
        assert_eq!((fam.len(), dim(&fam)), (2, 12));
        let fam = scalar_shift_generators(&[(2, rats(&[0, 1, 2])), (3, rats(&[0, 1]))]).unwrap();
        assert_eq!((fam.len(), dim(&fam)), (2, 30));
        assert!(scalar_shift_generators(&[(2, rats(&[1, 1]))]).is_err());
        assert!(scalar_shift_generators(&[(2, rats(&[0])), (2, rats(&[1]))]).is_err());

        let tuples = scalar_shift_generators(&[(3, rats(&[-1, 0, 1, 5]))])
            .unwrap()
            .tuples()
            .unwrap();
        let sections = crate::generation::cross_sections(&tuples).unwrap();
        for i in 0..sections.len() {
            for j in i + 1..sections.len() {
                assert_eq!(
                    simultaneously_conjugate(&sections[i], &sections[j]).unwrap(),
                    None
                );
            }
        }
    }

    #[test]
    fn scalar_shift_over_f2_is_recorded() {
        // with S = {0, 1} the two copies (X, Y) and (X, Y + X) over F_2
        let d = f(2);
        let (shape, gens) =
            scalar_shift_candidate(&[(2, vec![Elem::Fq(0), Elem::Fq(1)])], &d).unwrap();
        let verdict = generates_direct_sum(&gens, &shape, &d).unwrap();
        assert!(verdict);
    }

    #[test]
    fn tuple_file_round_trip() {
        let fam = scalar_shift_generators(&[(2, rats(&[0, 1])), (3, rats(&[2]))]).unwrap();
        let file = TupleFile::from_json(&fam.to_tuple_file().to_json()).unwrap();
        let (d, shape, gens) = file.decode().unwrap();
        let again = GeneratorFamily::new(shape, d, gens, fam.provenance().clone()).unwrap();
        assert_eq!(again, fam);
    }
}
