//! Linear rank-metric codes: Gabidulin codes, the MRD rank distribution,
//! lower bounds for codes with restricted ranks, and lifting.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::cdc::Cdc;
use crate::error::{Error, Result};
use crate::gf::{Elem, ExtFieldCtx, FieldCtx};
use crate::linalg::{gaussian_binomial, span_rank, BigCount, MatGF, Subspace};

/// Enumeration guardrail: at most 2^20 codewords.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// A GF(q)-linear space of m×n matrices given by a basis.
#[derive(Clone, Debug)]
pub struct LinearMatrixCode {
    field: &'static FieldCtx,
    m: usize,
    n: usize,
    basis: Vec<MatGF>,
    delta: usize,
}

impl LinearMatrixCode {
    pub fn new(field: &'static FieldCtx, m: usize, n: usize, basis: Vec<MatGF>, delta: usize) -> Result<Self> {
        if let Some(b) = basis.iter().find(|b| b.shape() != (m, n) || b.q() != field.q()) {
            return Err(Error::BadShape(format!(
                "basis matrix {:?} is not {}x{} over GF({})",
                b.shape(),
                m,
                n,
                field.q()
            )));
        }
        if span_rank(field, &basis) != basis.len() {
            return Err(Error::BadArguments("basis matrices are linearly dependent".into()));
        }
        Ok(LinearMatrixCode {
            field,
            m,
            n,
            basis,
            delta,
        })
    }

    pub fn zero_code(field: &'static FieldCtx, m: usize, n: usize, delta: usize) -> Self {
        LinearMatrixCode {
            field,
            m,
            n,
            basis: Vec::new(),
            delta,
        }
    }

    pub fn field(&self) -> &'static FieldCtx {
        self.field
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }
    pub fn basis(&self) -> &[MatGF] {
        &self.basis
    }
    pub fn delta(&self) -> usize {
        self.delta
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn size(&self) -> BigCount {
        Pow::pow(BigUint::from(self.q()), self.dim() as u32)
    }
    pub fn is_enumerable(&self) -> bool {
        (self.dim() as f64) * (self.q() as f64).log2() <= 20.0 + 1e-9
    }

    /// Σ coeffs[i]·basis[i].
    pub fn codeword(&self, coeffs: &[Elem]) -> MatGF {
        let mut m = MatGF::zero(self.field, self.m, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            m.add_scaled(*c, b);
        }
        m
    }

    /// All codewords, coefficient vectors in lexicographic order.
    pub fn codewords(&self) -> Result<Vec<MatGF>> {
        if !self.is_enumerable() {
            return Err(Error::TooLargeToEnumerate(format!(
                "{}^{} codewords",
                self.q(),
                self.dim()
            )));
        }
        Ok(enumerate_span(self.field, self.m, self.n, &self.basis, None))
    }

    pub fn transpose(&self) -> LinearMatrixCode {
        LinearMatrixCode {
            field: self.field,
            m: self.n,
            n: self.m,
            basis: self.basis.iter().map(MatGF::transpose).collect(),
            delta: self.delta,
        }
    }

    pub fn contains(&self, mat: &MatGF) -> bool {
        let mut all = self.basis.clone();
        all.push(mat.clone());
        span_rank(self.field, &all) == self.dim()
    }

    /// Minimum rank over nonzero codewords, `None` for the zero code.
    pub fn min_rank(&self) -> Result<Option<usize>> {
        Ok(self.codewords()?.iter().filter(|c| !c.is_zero()).map(MatGF::rank).min())
    }

    pub fn to_matrix_set(&self) -> Result<MatrixSet> {
        Ok(MatrixSet {
            field: self.field,
            m: self.m,
            n: self.n,
            members: self.codewords()?,
            delta: self.delta,
        })
    }
}

/// Odometer enumeration of `offset + span(basis)`; the last coefficient moves fastest.
pub(crate) fn enumerate_span(
    field: &'static FieldCtx,
    m: usize,
    n: usize,
    basis: &[MatGF],
    offset: Option<&MatGF>,
) -> Vec<MatGF> {
    let q = field.q() as usize;
    let dim = basis.len();
    let total = q.pow(dim as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = offset.cloned().unwrap_or_else(|| MatGF::zero(field, m, n));
    let mut digits = vec![0usize; dim];
    out.push(cur.clone());
    for _ in 1..total {
        let mut j = dim;
        loop {
            j -= 1;
            let next = (digits[j] + 1) % q;
            cur.add_scaled(field.sub(next as Elem, digits[j] as Elem), &basis[j]);
            digits[j] = next;
            if next != 0 {
                break;
            }
        }
        out.push(cur.clone());
    }
    out
}

/// An explicit, not necessarily linear, set of m×n matrices.
#[derive(Clone, Debug)]
pub struct MatrixSet {
    pub field: &'static FieldCtx,
    pub m: usize,
    pub n: usize,
    pub members: Vec<MatGF>,
    pub delta: usize,
}

impl MatrixSet {
    pub fn new(field: &'static FieldCtx, m: usize, n: usize, members: Vec<MatGF>, delta: usize) -> Result<Self> {
        if members.iter().any(|x| x.shape() != (m, n)) {
            return Err(Error::BadShape(format!("members must be {}x{}", m, n)));
        }
        Ok(MatrixSet {
            field,
            m,
            n,
            members,
            delta,
        })
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    /// Minimum pairwise rank distance, `None` below two members.
    pub fn min_distance(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                let r = a.sub(b).rank();
                best = Some(best.map_or(r, |x| x.min(r)));
            }
        }
        best
    }
}

/// Gabidulin code: expansions of Σ_{i<=n-delta} a_i x^{q^i} evaluated at 1, x, ..., x^{n-1}.
///
/// Basis order: linearized degree i outer, coefficient basis element x^b inner.
pub fn gabidulin(q: u32, m: usize, n: usize, delta: usize) -> Result<LinearMatrixCode> {
    if delta == 0 || delta > m.min(n) {
        return Err(Error::BadShape(format!("delta={} for a {}x{} code", delta, m, n)));
    }
    if m < n {
        return Ok(gabidulin(q, n, m, delta)?.transpose());
    }
    let field = FieldCtx::get(q)?;
    let ext = ExtFieldCtx::new(field, m)?;
    let points: Vec<_> = (0..n).map(|j| ext.basis_elem(j)).collect();
    let mut basis = Vec::with_capacity(m * (n - delta + 1));
    for i in 0..=(n - delta) {
        let powered: Vec<_> = points.iter().map(|g| ext.frobenius(g, i)).collect();
        for b in 0..m {
            let beta = ext.basis_elem(b);
            let row: Vec<_> = powered.iter().map(|g| ext.mul(&beta, g)).collect();
            basis.push(ext.expand_rows(&row));
        }
    }
    LinearMatrixCode::new(field, m, n, basis, delta)
}

fn big_pow(q: u32, e: usize) -> BigInt {
    Pow::pow(BigInt::from(q), e as u32)
}

/// Number of rank-r codewords in a linear MRD code; 1 for r = 0 and 0 for 0 < r < delta.
pub fn rank_distribution(q: u32, m: usize, n: usize, delta: usize, r: usize) -> Result<BigCount> {
    let (lo, hi) = (m.min(n), m.max(n));
    if r > lo || delta == 0 {
        return Err(Error::BadArguments(format!("r={} delta={} for {}x{}", r, delta, m, n)));
    }
    if r == 0 {
        return Ok(BigUint::one());
    }
    if r < delta {
        return Ok(BigUint::zero());
    }
    let mut sum = BigInt::zero();
    for i in 0..=(r - delta) {
        let term = big_pow(q, i * i.saturating_sub(1) / 2)
            * BigInt::from(gaussian_binomial(r, i, q)?)
            * (big_pow(q, hi * (r - i - delta + 1)) - 1);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let total = BigInt::from(gaussian_binomial(lo, r, q)?) * sum;
    match total.sign() {
        Sign::Minus => Err(Error::BadArguments("negative rank distribution".into())),
        _ => Ok(total.magnitude().clone()),
    }
}

/// Lower bound on the size of an m×n rank-metric code with distance delta and ranks in [t1, t2].
///
/// With t1 = 0 the zero matrix alone is admissible, so the bound is at least 1.
pub fn grmc_lower_bound(q: u32, m: usize, n: usize, delta: usize, t1: usize, t2: usize) -> Result<BigCount> {
    let (big, small) = (m.max(n), m.min(n));
    if delta == 0 || delta > small || t1 > t2 || t2 > small {
        return Err(Error::BadArguments(format!(
            "need 1 <= delta <= min(m,n) and t1 <= t2 <= min(m,n); got {}x{} delta={} t=[{},{}]",
            m, n, delta, t1, t2
        )));
    }
    if t2 >= delta {
        let mut s = BigUint::zero();
        for i in t1..=t2 {
            s += rank_distribution(q, big, small, delta, i)?;
        }
        return Ok(s);
    }
    if t2 == 0 {
        return Ok(BigUint::one());
    }
    let lo = t1.max(1);
    let mut best = BigUint::zero();
    for a in lo..delta {
        let mut s = BigUint::zero();
        for i in lo..=t2 {
            s += rank_distribution(q, big, small, a, i)?;
        }
        let den = Pow::pow(BigUint::from(q), (big * (delta - a)) as u32) - 1u32;
        let v = s.div_ceil(&den);
        if v > best {
            best = v;
        }
    }
    if t1 == 0 && best.is_zero() {
        best = BigUint::one();
    }
    Ok(best)
}

/// Codewords of rank at most t2.
pub fn restrict_ranks(code: &LinearMatrixCode, t2: usize) -> Result<MatrixSet> {
    let members = code.codewords()?.into_iter().filter(|c| c.rank() <= t2).collect();
    let (m, n) = code.shape();
    Ok(MatrixSet {
        field: code.field(),
        m,
        n,
        members,
        delta: code.delta(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftSide {
    /// rs(I_k | M)
    Left,
    /// rs(M | I_k)
    Right,
}

/// Lifts k×n matrices to k-dimensional subspaces of GF(q)^{k+n}.
pub fn lift(set: &MatrixSet, side: LiftSide) -> Result<Cdc> {
    let k = set.m;
    let id = MatGF::identity(set.field, k);
    let mut out = Cdc::new(set.field, k + set.n, k, 2 * set.delta, "lifted rank-metric code");
    for mat in &set.members {
        let gen = match side {
            LiftSide::Left => id.hstack(mat),
            LiftSide::Right => mat.hstack(&id),
        };
        out.insert(Subspace::from_generators(&gen))?;
    }
    Ok(out)
}

pub fn lift_code(code: &LinearMatrixCode, side: LiftSide) -> Result<Cdc> {
    lift(&code.to_matrix_set()?, side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn census(code: &LinearMatrixCode) -> HashMap<usize, u64> {
        let mut h = HashMap::new();
        for c in code.codewords().unwrap() {
            *h.entry(c.rank()).or_insert(0) += 1;
        }
        h
    }

    #[test]
    fn gabidulin_dimensions() {
        let g = gabidulin(2, 3, 3, 2).unwrap();
        assert_eq!(g.dim(), 6);
        assert_eq!(g.size(), BigUint::from(64u32));
        let g = gabidulin(2, 2, 2, 2).unwrap();
        assert_eq!(g.dim(), 2);
        let words = g.codewords().unwrap();
        assert_eq!(words.len(), 4);
        assert!(words.iter().filter(|w| !w.is_zero()).all(|w| w.rank() == 2));
        assert!(matches!(gabidulin(2, 3, 3, 4), Err(Error::BadShape(_))));
    }

    #[test]
    fn gabidulin_wide_shape_is_transposed() {
        let g = gabidulin(3, 2, 4, 2).unwrap();
        assert_eq!(g.shape(), (2, 4));
        assert_eq!(g.dim(), 4);
        assert_eq!(g.min_rank().unwrap(), Some(2));
    }

    #[test]
    fn census_matches_formula() {
        for delta in [2, 3] {
            let g = gabidulin(2, 3, 3, delta).unwrap();
            let c = census(&g);
            for r in 1..=3 {
                let expected = rank_distribution(2, 3, 3, delta, r).unwrap();
                assert_eq!(
                    BigUint::from(*c.get(&r).unwrap_or(&0)),
                    expected,
                    "delta={} r={}",
                    delta,
                    r
                );
            }
        }
        assert_eq!(rank_distribution(2, 3, 3, 2, 2).unwrap(), BigUint::from(49u32));
        assert_eq!(rank_distribution(2, 3, 3, 2, 3).unwrap(), BigUint::from(14u32));
        assert_eq!(rank_distribution(2, 3, 3, 3, 3).unwrap(), BigUint::from(7u32));
        assert!(rank_distribution(2, 3, 3, 2, 4).is_err());
    }

    #[test]
    fn grmc_branches() {
        let direct: BigUint = rank_distribution(2, 9, 9, 4, 4).unwrap() + rank_distribution(2, 9, 9, 4, 5).unwrap();
        assert_eq!(grmc_lower_bound(2, 9, 9, 4, 4, 5).unwrap(), direct);
        assert_eq!(grmc_lower_bound(2, 9, 9, 4, 0, 5).unwrap(), direct + 1u32);
        assert_eq!(grmc_lower_bound(3, 4, 4, 2, 0, 0).unwrap(), BigUint::one());
        assert!(grmc_lower_bound(2, 3, 3, 2, 2, 1).is_err());
    }

    #[test]
    fn restricted_census() {
        let g = gabidulin(2, 3, 3, 2).unwrap();
        assert_eq!(restrict_ranks(&g, 2).unwrap().len(), 50);
        assert_eq!(restrict_ranks(&g, 3).unwrap().len(), 64);
        let z = restrict_ranks(&g, 0).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z.members[0].is_zero());
    }

    #[test]
    fn lifting() {
        let g = gabidulin(2, 2, 2, 2).unwrap();
        let c = lift_code(&g, LiftSide::Left).unwrap();
        assert_eq!((c.n(), c.k(), c.len()), (4, 2, 4));
        assert_eq!(c.min_distance(), Some(4));
        let zero = MatrixSet::new(g.field(), 2, 3, vec![MatGF::zero(g.field(), 2, 3)], 1).unwrap();
        let c = lift(&zero, LiftSide::Right).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.members()[0].pivots(), vec![3, 4]);
    }

    #[test]
    fn codeword_order_is_lexicographic() {
        let g = gabidulin(2, 2, 2, 1).unwrap();
        let words = g.codewords().unwrap();
        assert_eq!(words[1], g.basis()[3]);
        assert_eq!(words[2], g.basis()[2]);
        assert_eq!(words[8], g.basis()[0]);
    }

    #[test]
    fn enumeration_over_extension_fields() {
        for q in [4, 8, 9] {
            let g = gabidulin(q, 3, 3, 2).unwrap();
            let words = g.codewords().unwrap();
            let distinct: std::collections::HashSet<_> = words.iter().map(|w| format!("{:?}", w)).collect();
            assert_eq!(distinct.len(), words.len());
            let h = census(&g);
            for r in 0..=3 {
                assert_eq!(
                    BigUint::from(*h.get(&r).unwrap_or(&0)),
                    rank_distribution(q, 3, 3, 2, r).unwrap(),
                    "q={} r={}",
                    q,
                    r
                );
            }
        }
    }
}
