//! Deciding whether a set of elements generates a (direct sum of) matrix algebra(s).

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::conjugacy::simultaneously_conjugate;
use crate::domain::{CoeffDomain, Elem};
use crate::eigen::{preserves_line, quadratic_eigvecs, Eigenlines, ProjLine};
use crate::error::{Error, Result};
use crate::field::QuadExt;
use crate::intlat::{IntLattice, LatticeBuilder};
use crate::linalg::EchelonBasis;
use crate::matrix::{det_rows, Mat};

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.format_rows().serialize(s)
    }
}

/// An ordered tuple of matrices of one size over one domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MatTuple(Vec<Mat>);

impl MatTuple {
    pub fn new(mats: Vec<Mat>) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(Error::InvalidInput("empty matrix tuple".into()));
        };
        for m in &mats[1..] {
            if m.n() != first.n() {
                return Err(Error::ShapeMismatch(format!(
                    "sizes {} and {}",
                    first.n(),
                    m.n()
                )));
            }
            if m.domain() != first.domain() {
                return Err(Error::DomainMismatch(
                    first.domain().to_string(),
                    m.domain().to_string(),
                ));
            }
        }
        Ok(MatTuple(mats))
    }

    pub fn mats(&self) -> &[Mat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn n(&self) -> usize {
        self.0[0].n()
    }

    pub fn domain(&self) -> &CoeffDomain {
        self.0[0].domain()
    }

    pub fn map_into(&self, target: &CoeffDomain) -> Result<MatTuple> {
        Ok(MatTuple(
            self.0
                .iter()
                .map(|m| m.map_into(target))
                .collect::<Result<_>>()?,
        ))
    }

    /// The element of `M_n^m` whose components are these matrices.
    pub fn to_sum_elem(&self) -> SumElem {
        SumElem(self.0.clone())
    }
}

/// Block structure `⊕ M_{n_i}^{m_i}`, listed as `(n_i, m_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DirectSumShape {
    blocks: Vec<(usize, usize)>,
}

impl DirectSumShape {
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self> {
        if blocks.iter().any(|&(n, m)| n == 0 || m == 0) {
            return Err(Error::InvalidInput(format!("invalid blocks {blocks:?}")));
        }
        Ok(DirectSumShape { blocks })
    }

    /// `M_n^copies`.
    pub fn uniform(n: usize, copies: usize) -> Result<Self> {
        Self::new(vec![(n, copies)])
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    /// Matrix size of every component, in order.
    pub fn component_sizes(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .flat_map(|&(n, m)| std::iter::repeat_n(n, m))
            .collect()
    }

    /// `Σ m_i n_i²`.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|&(n, m)| m * n * n).sum()
    }

    pub fn has_distinct_sizes(&self) -> bool {
        let mut ns: Vec<usize> = self.blocks.iter().map(|b| b.0).collect();
        ns.sort_unstable();
        ns.windows(2).all(|w| w[0] != w[1])
    }

    pub fn check(&self, elem: &SumElem) -> Result<()> {
        let sizes = self.component_sizes();
        let got: Vec<usize> = elem.0.iter().map(Mat::n).collect();
        if sizes != got {
            return Err(Error::ShapeMismatch(format!(
                "components {got:?} for shape {:?}",
                self.blocks
            )));
        }
        Ok(())
    }
}

/// An element of a direct sum: one matrix per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SumElem(pub Vec<Mat>);

impl SumElem {
    pub fn identity(domain: &CoeffDomain, shape: &DirectSumShape) -> Self {
        SumElem(
            shape
                .component_sizes()
                .into_iter()
                .map(|n| Mat::identity(domain, n))
                .collect(),
        )
    }

    pub fn zero(domain: &CoeffDomain, shape: &DirectSumShape) -> Self {
        SumElem(
            shape
                .component_sizes()
                .into_iter()
                .map(|n| Mat::zero(domain, n))
                .collect(),
        )
    }

    pub fn mul(&self, other: &SumElem) -> SumElem {
        SumElem(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    pub fn vectorize(&self) -> Vec<Elem> {
        self.0
            .iter()
            .flat_map(|m| m.entries().iter().cloned())
            .collect()
    }

    pub fn from_vector(domain: &CoeffDomain, shape: &DirectSumShape, v: &[Elem]) -> Self {
        let mut at = 0;
        let parts = shape
            .component_sizes()
            .into_iter()
            .map(|n| {
                let m = Mat::from_vector(domain, n, &v[at..at + n * n]);
                at += n * n;
                m
            })
            .collect();
        SumElem(parts)
    }

    pub fn domain(&self) -> &CoeffDomain {
        self.0[0].domain()
    }

    pub fn map_into(&self, target: &CoeffDomain) -> Result<SumElem> {
        Ok(SumElem(
            self.0
                .iter()
                .map(|m| m.map_into(target))
                .collect::<Result<_>>()?,
        ))
    }
}

/// Why a generation test failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailedCondition {
    /// Cross-section `index` does not generate `M_n`.
    CrossSectionFails { index: usize },
    /// Cross-sections `i` and `j` are conjugate: `witness · cs_i = cs_j · witness`.
    ConjugatePair { i: usize, j: usize, witness: Mat },
    /// The spanned subalgebra is proper (no finer diagnosis available).
    ProperSubalgebra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenReport {
    pub verdict: bool,
    pub closure_dim: usize,
    pub ambient_dim: usize,
    pub failed_condition: Option<FailedCondition>,
    pub eigen_witness: Option<ProjLine>,
}

/// Linear span of all products of `gens` (and of the identity when asked).
///
/// Each round multiplies the vectors added in the previous round by the
/// generators on both sides; the loop stops when the rank stops growing.
pub fn closure_span(
    gens: &[SumElem],
    shape: &DirectSumShape,
    domain: &CoeffDomain,
    include_identity: bool,
) -> Result<EchelonBasis> {
    domain.require_field()?;
    for g in gens {
        shape.check(g)?;
        if g.domain() != domain {
            return Err(Error::DomainMismatch(
                domain.to_string(),
                g.domain().to_string(),
            ));
        }
    }
    let mut basis = EchelonBasis::new(domain, shape.dimension())?;
    let mut frontier: Vec<SumElem> = Vec::new();
    let seeds = include_identity
        .then(|| SumElem::identity(domain, shape))
        .into_iter()
        .chain(gens.iter().cloned());
    for s in seeds {
        if basis.insert(&s.vectorize()) {
            frontier.push(s);
        }
    }
    while !frontier.is_empty() && !basis.is_full() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                for prod in [f.mul(g), g.mul(f)] {
                    if basis.insert(&prod.vectorize()) {
                        next.push(prod);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(basis)
}

/// Whether `gens` generate the whole direct sum `shape` over a field.
pub fn closure_generates(
    gens: &[SumElem],
    shape: &DirectSumShape,
    domain: &CoeffDomain,
    include_identity: bool,
) -> Result<GenReport> {
    let basis = closure_span(gens, shape, domain, include_identity)?;
    let verdict = basis.is_full();
    Ok(GenReport {
        verdict,
        closure_dim: basis.rank(),
        ambient_dim: shape.dimension(),
        failed_condition: (!verdict).then_some(FailedCondition::ProperSubalgebra),
        eigen_witness: None,
    })
}

/// Convenience wrapper: do these matrices generate `M_n(F)`?
pub fn generates_matrix_algebra(mats: &[Mat]) -> Result<bool> {
    let Some(first) = mats.first() else {
        return Ok(false);
    };
    let shape = DirectSumShape::uniform(first.n(), 1)?;
    let gens: Vec<SumElem> = mats.iter().map(|m| SumElem(vec![m.clone()])).collect();
    Ok(closure_generates(&gens, &shape, first.domain(), true)?.verdict)
}

/// Splits `k` generators of `M_n^m` into their `m` cross-sections.
pub fn cross_sections(gens: &[MatTuple]) -> Result<Vec<MatTuple>> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidInput("no generators".into()));
    };
    let m = first.len();
    if gens
        .iter()
        .any(|g| g.len() != m || g.n() != first.n() || g.domain() != first.domain())
    {
        return Err(Error::ShapeMismatch(
            "generators of unequal length, size or domain".into(),
        ));
    }
    (0..m)
        .map(|i| MatTuple::new(gens.iter().map(|g| g.mats()[i].clone()).collect()))
        .collect()
}

/// The cross-section criterion for `k` generators of `M_n(F)^m`: every
/// cross-section generates `M_n(F)` and no two are simultaneously conjugate.
pub fn cross_section_generates(gens: &[MatTuple]) -> Result<GenReport> {
    let sections = cross_sections(gens)?;
    let n = gens[0].n();
    if n < 2 {
        return Err(Error::InvalidInput(
            "cross-section criterion needs n >= 2".into(),
        ));
    }
    let domain = gens[0].domain().clone();
    domain.require_field()?;
    let shape = DirectSumShape::uniform(n, sections.len())?;

    let mut failed = None;
    for (i, cs) in sections.iter().enumerate() {
        if !generates_matrix_algebra(cs.mats())? {
            failed = Some(FailedCondition::CrossSectionFails { index: i });
            break;
        }
    }
    if failed.is_none() {
        'pairs: for i in 0..sections.len() {
            for j in i + 1..sections.len() {
                if let Some(c) = simultaneously_conjugate(&sections[i], &sections[j])? {
                    failed = Some(FailedCondition::ConjugatePair { i, j, witness: c });
                    break 'pairs;
                }
            }
        }
    }

    let elems: Vec<SumElem> = gens.iter().map(MatTuple::to_sum_elem).collect();
    let direct = closure_generates(&elems, &shape, &domain, true)?;
    if direct.verdict != failed.is_none() {
        return Err(Error::VerificationFailed(format!(
            "cross-section criterion ({}) disagrees with direct closure ({})",
            failed.is_none(),
            direct.verdict
        )));
    }
    Ok(GenReport {
        verdict: failed.is_none(),
        closure_dim: direct.closure_dim,
        ambient_dim: shape.dimension(),
        failed_condition: failed,
        eigen_witness: None,
    })
}

/// Outcome of the common-eigenline search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonEigen {
    /// Every matrix is scalar (or the set is empty).
    AllLines,
    Line(ProjLine),
    None,
}

/// Common eigenline over `F_{q^2}` of a set of 2×2 matrices over `F_q`.
///
/// The set generates `M_2(F_q)` exactly when the answer is [`CommonEigen::None`].
pub fn common_eigenline(mats: &[Mat]) -> Result<CommonEigen> {
    let Some(first) = mats.first() else {
        return Ok(CommonEigen::AllLines);
    };
    let field = first
        .domain()
        .finite_field()
        .ok_or_else(|| Error::NotAField(format!("{} (finite field required)", first.domain())))?;
    let ext = QuadExt::new(field);
    let Some(pivot) = mats.iter().find(|m| !m.is_scalar()) else {
        return Ok(CommonEigen::AllLines);
    };
    let Eigenlines::Lines(candidates) = quadratic_eigvecs(&ext, pivot)? else {
        unreachable!("pivot is not scalar");
    };
    for line in candidates {
        let mut common = true;
        for m in mats {
            if !preserves_line(&ext, m, &line)? {
                common = false;
                break;
            }
        }
        if common {
            return Ok(CommonEigen::Line(line));
        }
    }
    Ok(CommonEigen::None)
}

fn require_2x2(m: &Mat) -> Result<()> {
    if m.n() != 2 {
        return Err(Error::ShapeMismatch(format!(
            "expected 2×2, got {0}×{0}",
            m.n()
        )));
    }
    Ok(())
}

/// `det` of the 4×4 matrix with rows `Flatten(I), Flatten(A), Flatten(B), Flatten(AB)`.
pub fn flatten_det(a: &Mat, b: &Mat) -> Result<Elem> {
    require_2x2(a)?;
    require_2x2(b)?;
    let d = a.domain();
    let rows = vec![
        Mat::identity(d, 2).vectorize(),
        a.vectorize(),
        b.vectorize(),
        (a * b).vectorize(),
    ];
    Ok(det_rows(d, rows))
}

/// `det(AB - BA)`.
pub fn det_commutator(a: &Mat, b: &Mat) -> Result<Elem> {
    require_2x2(a)?;
    require_2x2(b)?;
    Ok(a.commutator(b).det())
}

/// Two 2×2 matrices generate `M_2(R)` iff `det[A, B]` is a unit of `R`.
pub fn det_commutator_generates(a: &Mat, b: &Mat) -> Result<bool> {
    let d = det_commutator(a, b)?;
    Ok(a.domain().is_unit(&d))
}

/// Maximum number of lattice-closure rounds before giving up.
pub const LATTICE_ROUND_CAP: usize = 64;

fn int_vector(m: &Mat) -> Vec<BigInt> {
    m.entries()
        .iter()
        .map(|e| match e {
            Elem::Int(x) => x.clone(),
            _ => unreachable!("integer matrix expected"),
        })
        .collect()
}

fn sum_int_vector(e: &SumElem) -> Vec<BigInt> {
    e.0.iter().flat_map(int_vector).collect()
}

/// The ring generated by integer elements of a direct sum, as a lattice.
///
/// The identity is adjoined up front. The lattice is then closed under
/// products of its spanning elements; each round only multiplies elements
/// that enlarged the lattice in the previous round.
pub fn lattice_closure(gens: &[SumElem], shape: &DirectSumShape) -> Result<(bool, IntLattice)> {
    let z = CoeffDomain::Integers;
    for g in gens {
        shape.check(g)?;
        if *g.domain() != z {
            return Err(Error::DomainMismatch("Z".into(), g.domain().to_string()));
        }
    }
    let mut builder = LatticeBuilder::new(shape.dimension());
    let mut spanning: Vec<SumElem> = Vec::new();
    for s in std::iter::once(SumElem::identity(&z, shape)).chain(gens.iter().cloned()) {
        if builder.insert(sum_int_vector(&s)) {
            spanning.push(s);
        }
    }
    let mut fresh = 0;
    let mut rounds = 0;
    while fresh < spanning.len() {
        rounds += 1;
        if rounds > LATTICE_ROUND_CAP {
            return Err(Error::IterationCap(LATTICE_ROUND_CAP));
        }
        let end = spanning.len();
        for i in fresh..end {
            for j in 0..end {
                let (a, b) = (&spanning[i], &spanning[j]);
                for prod in [a.mul(b), b.mul(a)] {
                    if builder.insert(sum_int_vector(&prod)) {
                        spanning.push(prod);
                    }
                }
            }
        }
        fresh = end;
    }
    let lattice = builder.lattice();
    Ok((lattice.is_full(), lattice))
}

/// Whether integer matrices generate the ring `M_n(Z)`.
pub fn lattice_generates_mnz(mats: &[Mat], n: usize) -> Result<(bool, IntLattice)> {
    let shape = DirectSumShape::uniform(n, 1)?;
    let gens: Vec<SumElem> = mats.iter().map(|m| SumElem(vec![m.clone()])).collect();
    lattice_closure(&gens, &shape)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> CoeffDomain {
        CoeffDomain::finite(q).unwrap()
    }

    fn m(d: &CoeffDomain, rows: &[&[i64]]) -> Mat {
        Mat::from_i64_rows(d, rows)
    }

    fn singles(mats: &[Mat]) -> Vec<SumElem> {
        mats.iter().map(|x| SumElem(vec![x.clone()])).collect()
    }

    #[test]
    fn closure_examples() {
        let d = f(2);
        let n = 3;
        let mut x = Mat::unit(&d, n, 1, n);
        for i in 1..n {
            x = &x + &Mat::unit(&d, n, i + 1, i);
        }
        let y = Mat::unit(&d, n, 1, 1);
        let shape = DirectSumShape::uniform(3, 1).unwrap();
        let r = closure_generates(&singles(&[x, y]), &shape, &d, false).unwrap();
        assert!(r.verdict);
        assert_eq!(r.closure_dim, 9);

        let d3 = f(3);
        let shape2 = DirectSumShape::uniform(2, 1).unwrap();
        let r = closure_generates(&singles(&[Mat::identity(&d3, 2)]), &shape2, &d3, false).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.closure_dim, 1);

        let e12 = Mat::unit(&d, 2, 1, 2);
        let e21 = Mat::unit(&d, 2, 2, 1);
        let r = closure_generates(&singles(&[e12, e21]), &shape2, &d, false).unwrap();
        assert!(r.verdict);
        assert_eq!(r.closure_dim, 4);
    }

    #[test]
    fn empty_set_is_not_generating() {
        let d = f(2);
        let shape = DirectSumShape::uniform(2, 1).unwrap();
        let r = closure_generates(&[], &shape, &d, false).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.closure_dim, 0);
        let r = closure_generates(&[], &shape, &d, true).unwrap();
        assert_eq!(r.closure_dim, 1);
    }

    #[test]
    fn closure_rejects_integers() {
        let z = CoeffDomain::Integers;
        let shape = DirectSumShape::uniform(2, 1).unwrap();
        let err = closure_generates(&singles(&[Mat::identity(&z, 2)]), &shape, &z, true);
        assert!(matches!(err, Err(Error::NotAField(_))));
    }

    #[test]
    fn cross_section_examples() {
        let d = f(2);
        let e11 = Mat::unit(&d, 2, 1, 1);
        let swap = m(&d, &[&[0, 1], &[1, 0]]);
        let ones = m(&d, &[&[1, 1], &[1, 1]]);
        // generators a = (E11, E11), b = (swap, J)
        let a = MatTuple::new(vec![e11.clone(), e11.clone()]).unwrap();
        let b = MatTuple::new(vec![swap.clone(), ones]).unwrap();
        let r = cross_section_generates(&[a, b]).unwrap();
        assert!(r.verdict, "{r:?}");
        assert_eq!(r.closure_dim, 8);

        let a = MatTuple::new(vec![e11.clone(), e11.clone()]).unwrap();
        let b = MatTuple::new(vec![swap.clone(), swap.clone()]).unwrap();
        let r = cross_section_generates(&[a, b]).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.closure_dim, 4);
        assert_eq!(
            r.failed_condition,
            Some(FailedCondition::ConjugatePair {
                i: 0,
                j: 1,
                witness: Mat::identity(&d, 2)
            })
        );
    }

    #[test]
    fn triangular_cross_sections() {
        // (E11, E11+E12) only spans upper-triangular matrices; no conjugator
        // exists either (checked by brute force in the conjugacy tests).
        let d = f(2);
        let e11 = Mat::unit(&d, 2, 1, 1);
        let up = m(&d, &[&[1, 1], &[0, 0]]);
        let low = m(&d, &[&[1, 0], &[1, 0]]);
        let a = MatTuple::new(vec![e11.clone(), e11]).unwrap();
        let b = MatTuple::new(vec![up, low]).unwrap();
        let r = cross_section_generates(&[a, b]).unwrap();
        assert!(!r.verdict);
        assert_eq!(
            r.failed_condition,
            Some(FailedCondition::CrossSectionFails { index: 0 })
        );
    }

    #[test]
    fn common_eigenline_examples() {
        let d = f(2);
        let e12 = Mat::unit(&d, 2, 1, 2);
        let e21 = Mat::unit(&d, 2, 2, 1);
        assert_eq!(common_eigenline(&[e12, e21]).unwrap(), CommonEigen::None);

        let d3 = f(3);
        let r = common_eigenline(&[Mat::unit(&d3, 2, 1, 1), Mat::unit(&d3, 2, 1, 2)]).unwrap();
        let CommonEigen::Line(line) = r else {
            panic!("{r:?}")
        };
        assert!(line.is_rational());
        assert_eq!((line.x.re, line.y.re), (1, 0));

        let fib = m(&d, &[&[0, 1], &[1, 1]]);
        assert_eq!(
            common_eigenline(&[fib, Mat::unit(&d, 2, 1, 1)]).unwrap(),
            CommonEigen::None
        );
        assert_eq!(common_eigenline(&[]).unwrap(), CommonEigen::AllLines);
        assert_eq!(
            common_eigenline(&[Mat::identity(&d, 2)]).unwrap(),
            CommonEigen::AllLines
        );
    }

    #[test]
    fn flatten_det_specializations() {
        let z = CoeffDomain::Integers;
        for a11 in -3..=3 {
            for b21 in -3..=3 {
                let a = m(&z, &[&[a11, 0], &[1, 0]]);
                let b = m(&z, &[&[0, 1], &[b21, 0]]);
                assert_eq!(
                    flatten_det(&a, &b).unwrap(),
                    z.from_i64(-1 + b21 * a11 * a11)
                );
            }
        }
        for a12 in -3..=3 {
            for b21 in -3..=3 {
                let a = m(&z, &[&[0, a12], &[1, 0]]);
                let b = m(&z, &[&[0, 1], &[b21, 0]]);
                let v = a12 * b21 - 1;
                assert_eq!(flatten_det(&a, &b).unwrap(), z.from_i64(-v * v));
            }
        }
        let e12 = Mat::unit(&z, 2, 1, 2);
        let e21 = Mat::unit(&z, 2, 2, 1);
        assert_eq!(flatten_det(&e12, &e21).unwrap(), z.from_i64(-1));
        assert!(flatten_det(&Mat::identity(&z, 3), &Mat::identity(&z, 3)).is_err());
    }

    #[test]
    fn det_commutator_examples() {
        let z = CoeffDomain::Integers;
        let e11 = Mat::unit(&z, 2, 1, 1);
        let swap = m(&z, &[&[0, 1], &[1, 0]]);
        let ones = m(&z, &[&[1, 1], &[1, 1]]);
        assert_eq!(det_commutator(&e11, &swap).unwrap(), z.from_i64(1));
        assert!(det_commutator_generates(&e11, &swap).unwrap());
        assert!(!det_commutator_generates(&swap, &swap).unwrap());
        assert_eq!(det_commutator(&e11, &ones).unwrap(), z.from_i64(1));
        assert!(det_commutator_generates(&e11, &ones).unwrap());
        // det 4 is nonzero but not a unit of Z
        let two = m(&z, &[&[2, 0], &[0, 0]]);
        assert!(!det_commutator_generates(&two, &swap).unwrap());
    }

    #[test]
    fn lattice_examples() {
        let z = CoeffDomain::Integers;
        let x = m(&z, &[&[0, 1], &[1, 0]]);
        let y = Mat::unit(&z, 2, 1, 1);
        let (ok, lat) = lattice_generates_mnz(&[x.clone(), y.clone()], 2).unwrap();
        assert!(ok);
        assert!(lat.is_full());

        let doubled: Vec<Mat> = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| (i, j)))
            .map(|(i, j)| Mat::unit(&z, 2, i, j).scale(&z.from_i64(2)))
            .collect();
        let lat0 =
            IntLattice::from_generators(4, &doubled.iter().map(int_vector).collect::<Vec<_>>());
        assert_eq!(lat0.index(), Some(BigInt::from(16)));
        let (ok, lat) = lattice_generates_mnz(&doubled, 2).unwrap();
        assert!(!ok);
        assert_eq!(lat.index(), Some(BigInt::from(8)));

        let (ok, _) = lattice_generates_mnz(&[y, x], 2).unwrap();
        assert!(ok);
    }

    #[test]
    fn shape_dimension() {
        let s = DirectSumShape::new(vec![(2, 3), (3, 2)]).unwrap();
        assert_eq!(s.dimension(), 30);
        assert!(s.has_distinct_sizes());
        assert!(DirectSumShape::new(vec![(0, 1)]).is_err());
    }
}
