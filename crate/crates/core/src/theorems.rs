//! Bound evaluators and constructions for new families of constant-dimension
//! codes: parallel cosets, the new identifying-vector family, coset insertion,
//! the worked recipes and the registry of improved lower bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, Signed, Zero};

use crate::cdc::{
    build_coset_cdc_lists, coset_list_profile, ferrers_of, hamming_guard, identifying_vector,
    inverse_identifying_vector, multilevel, paired_sum, parallel_linkage, reorder_pairing, Cdc, CdcList, CwcSet,
    IdKind, IdVec, ListProfile,
};
use crate::error::{Error, Result};
use crate::ferrers::{optimal_fdrmc, th43_diagram, th43_optimal_fdrmc, FdrmCode, FerrersDiagram};
use crate::gf::FieldCtx;
use crate::linalg::{BigCount, MatGF, Subspace};
use crate::rankmetric::{gabidulin, lift_code, rank_distribution, restrict_ranks, LiftSide};

/// Integer polynomial in q.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }
    pub fn one() -> Poly {
        Poly::monomial(1, 0)
    }
    pub fn monomial(c: i64, e: u32) -> Poly {
        let mut p = Poly::zero();
        p.add_term(BigInt::from(c), e);
        p
    }
    pub fn from_terms(terms: &[(i64, u32)]) -> Poly {
        let mut p = Poly::zero();
        for &(c, e) in terms {
            p.add_term(BigInt::from(c), e);
        }
        p
    }
    fn add_term(&mut self, c: BigInt, e: u32) {
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }
    /// (coefficient, exponent), highest exponent first.
    pub fn terms(&self) -> Vec<(BigInt, u32)> {
        self.coeffs.iter().rev().map(|(&e, c)| (c.clone(), e)).collect()
    }
    pub fn coeff(&self, e: u32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }
    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (&e, c) in &other.coeffs {
            p.add_term(c.clone(), e);
        }
        p
    }
    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1))
    }
    pub fn scale(&self, c: i64) -> Poly {
        let mut p = Poly::zero();
        for (&e, x) in &self.coeffs {
            p.add_term(x * c, e);
        }
        p
    }
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                p.add_term(c1 * c2, e1 + e2);
            }
        }
        p
    }
    pub fn shift(&self, e: u32) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|(&x, c)| (x + e, c.clone())).collect(),
        }
    }
    pub fn eval(&self, q: u32) -> BigInt {
        self.coeffs.iter().map(|(&e, c)| c * Pow::pow(BigInt::from(q), e)).sum()
    }
    pub fn eval_nat(&self, q: u32) -> Result<BigUint> {
        let v = self.eval(q);
        match v.sign() {
            Sign::Minus => Err(Error::BadArguments(format!("{} is negative at q={}", self, q))),
            _ => Ok(v.magnitude().clone()),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, e)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (e, a.is_one()) {
                (0, _) => write!(f, "{}", a)?,
                (_, true) => write!(f, "q^{}", e)?,
                (_, false) => write!(f, "{}q^{}", a, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

/// Gaussian binomial [n, k]_q as a polynomial (q-Pascal recursion).
pub fn gaussian_poly(n: usize, k: usize) -> Poly {
    if k > n {
        return Poly::zero();
    }
    let mut row = vec![Poly::one()];
    for i in 1..=n {
        let mut next = vec![Poly::one(); i + 1];
        for j in 1..i {
            next[j] = row[j - 1].add(&row[j].shift(j as u32));
        }
        row = next;
    }
    row[k].clone()
}

/// Rank distribution of an m×n MRD code with distance delta, as a polynomial in q.
pub fn rank_distribution_poly(m: usize, n: usize, delta: usize, r: usize) -> Result<Poly> {
    let (hi, lo) = (m.max(n), m.min(n));
    if r > lo || delta == 0 {
        return Err(Error::BadArguments(format!("r={} delta={} for {}x{}", r, delta, m, n)));
    }
    if r == 0 {
        return Ok(Poly::one());
    }
    if r < delta {
        return Ok(Poly::zero());
    }
    let mut sum = Poly::zero();
    for j in 0..=(r - delta) {
        let inner = Poly::monomial(1, (hi * (r - delta - j + 1)) as u32).sub(&Poly::one());
        let term = gaussian_poly(r, j)
            .shift((j * j.saturating_sub(1) / 2) as u32)
            .mul(&inner);
        sum = if j % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
    }
    Ok(gaussian_poly(lo, r).mul(&sum))
}

fn qpow(q: u32, e: usize) -> BigUint {
    Pow::pow(BigUint::from(q), e as u32)
}

/// Size of an m×n MRD code with distance delta (1 when delta exceeds min(m, n)).
pub fn mrd_size(q: u32, m: usize, n: usize, delta: usize) -> BigUint {
    qpow(q, mrd_dim(m, n, delta))
}

fn mrd_dim(m: usize, n: usize, delta: usize) -> usize {
    let (hi, lo) = (m.max(n), m.min(n));
    if delta == 0 || delta > lo {
        0
    } else {
        hi * (lo - delta + 1)
    }
}

/// A lower bound on A_q(n, d, k) with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub q: u32,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub value: BigCount,
    pub polynomial: Option<Poly>,
    pub source: String,
    /// Previously known bound, when transcribed.
    pub old: Option<BigCount>,
    pub notes: Vec<String>,
}

impl BoundResult {
    fn from_poly(q: u32, n: usize, d: usize, k: usize, poly: Poly, source: &str) -> Result<BoundResult> {
        Ok(BoundResult {
            q,
            n,
            d,
            k,
            value: poly.eval_nat(q)?,
            polynomial: Some(poly),
            source: source.to_string(),
            old: None,
            notes: Vec::new(),
        })
    }
    fn from_value(q: u32, n: usize, d: usize, k: usize, value: BigCount, source: &str) -> BoundResult {
        BoundResult {
            q,
            n,
            d,
            k,
            value,
            polynomial: None,
            source: source.to_string(),
            old: None,
            notes: Vec::new(),
        }
    }
    pub fn diff(&self) -> Option<BigInt> {
        self.old
            .as_ref()
            .map(|o| BigInt::from(self.value.clone()) - BigInt::from(o.clone()))
    }
    pub fn improves(&self) -> Option<bool> {
        self.old.as_ref().map(|o| &self.value > o)
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A_{}({},{},{}) >= {}", self.q, self.n, self.d, self.k, self.value)?;
        if let Some(p) = &self.polynomial {
            writeln!(f, "polynomial: {}", p)?;
        }
        writeln!(f, "source: {}", self.source)?;
        if let (Some(o), Some(d)) = (&self.old, self.diff()) {
            writeln!(f, "old: {}", o)?;
            writeln!(f, "diff: {}", d)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {}", n)?;
        }
        Ok(())
    }
}

fn ceil_half(x: usize) -> usize {
    x.div_ceil(2)
}

fn runs(spec: &[(bool, isize)]) -> Result<IdVec> {
    let mut bits = Vec::new();
    for &(b, len) in spec {
        if len < 0 {
            return Err(Error::BadArguments(format!(
                "identifying vector needs a run of length {}",
                len
            )));
        }
        bits.extend(std::iter::repeat_n(b, len as usize));
    }
    Ok(IdVec::new(bits, IdKind::Forward))
}

fn th41_check(n: usize, k: usize, delta: usize) -> Result<()> {
    if delta < 2 {
        return Err(Error::BadArguments(format!("delta must be >= 2, got {}", delta)));
    }
    if delta % 2 == 1 && delta != 3 {
        return Err(Error::OddDeltaUnsupported(delta));
    }
    if n < 2 * k || k + 1 < 2 * delta + delta / 2 {
        return Err(Error::BadArguments(format!(
            "need n >= 2k and k >= 2delta + floor(delta/2) - 1, got n={} k={} delta={}",
            n, k, delta
        )));
    }
    let jmax = if delta == 3 { 3 } else { 2 };
    let need = k + delta + jmax * ceil_half(delta);
    if n < need {
        return Err(Error::BadArguments(format!(
            "the last vector needs n >= {}, got n={}",
            need, n
        )));
    }
    Ok(())
}

/// The identifying vectors S1 ∪ S2 ∪ S3 of the new family.
pub fn th41_vectors(n: usize, k: usize, delta: usize) -> Result<Vec<IdVec>> {
    th41_check(n, k, delta)?;
    let (c, f) = (ceil_half(delta) as isize, (delta / 2) as isize);
    let (n, k, d) = (n as isize, k as isize, delta as isize);
    let mut out = vec![runs(&[(true, k), (false, n - k)])?];
    let is: &[isize] = if delta == 3 { &[0, 1] } else { &[0] };
    for &i in is {
        out.push(runs(&[
            (false, i * c),
            (true, k - d),
            (false, d - i * c),
            (true, c),
            (false, i * f),
            (true, f),
            (false, n - k - d - i * f),
        ])?);
    }
    let js: &[isize] = if delta == 3 { &[1, 2, 3] } else { &[1, 2] };
    for &j in js {
        out.push(runs(&[
            (true, k - d - f),
            (false, j * f),
            (true, f),
            (false, d - j * f),
            (true, f),
            (false, j * c),
            (true, c),
            (false, n - k - d - j * c),
        ])?);
    }
    Ok(out)
}

pub fn th41_cwc(n: usize, k: usize, delta: usize) -> Result<CwcSet> {
    CwcSet::new(th41_vectors(n, k, delta)?, 2 * delta)
}

/// Whether the sufficient condition for an optimal code holds: in the
/// orientation with at least as many rows as columns, the last delta-1
/// columns are full (square diagrams and delta <= 2 always qualify).
pub fn optimal_code_exists(f: &FerrersDiagram, delta: usize) -> bool {
    let f = f.normal();
    if delta <= 2 || f.rows() == f.ncols() {
        return true;
    }
    let g = if f.rows() >= f.ncols() { f } else { f.transpose() };
    let m = g.rows();
    let cols = g.cols();
    cols.len() >= delta - 1 && cols[cols.len() + 1 - delta..].iter().all(|&c| c == m)
}

/// One vector of the family with the dimension of its optimal code.
#[derive(Clone, Debug)]
pub struct Th41Term {
    pub vector: IdVec,
    pub diagram: FerrersDiagram,
    pub exponent: usize,
}

pub fn th41_terms(n: usize, k: usize, delta: usize) -> Result<Vec<Th41Term>> {
    th41_cwc(n, k, delta)?
        .vectors()
        .iter()
        .map(|v| {
            let diagram = ferrers_of(v)?.diagram.normal();
            if !optimal_code_exists(&diagram, delta) {
                return Err(Error::ConditionNotMet(format!(
                    "no optimal code certified on {} for {}",
                    diagram, v
                )));
            }
            let exponent = diagram.singleton_bound(delta)?;
            Ok(Th41Term {
                vector: v.clone(),
                diagram,
                exponent,
            })
        })
        .collect()
}

/// The lifted-code sizes of the family, exponents taken from each vector's diagram.
pub fn th41_poly(n: usize, k: usize, delta: usize) -> Result<Poly> {
    let mut p = Poly::zero();
    for t in th41_terms(n, k, delta)? {
        p = p.add(&Poly::monomial(1, t.exponent as u32));
    }
    Ok(p)
}

pub fn th41_bound(q: u32, n: usize, delta: usize, k: usize) -> Result<BoundResult> {
    FieldCtx::get(q)?;
    let p = th41_poly(n, k, delta)?;
    BoundResult::from_poly(q, n, 2 * delta, k, p, "th41")
}

/// The closed form exactly as displayed in the theorem statement.
pub fn th41_displayed_poly(n: usize, delta: usize, k: usize) -> Result<Poly> {
    th41_check(n, k, delta)?;
    let (c, f) = (ceil_half(delta), delta / 2);
    let e = (n - k) * (k - delta + 1);
    let mut p = Poly::monomial(1, e as u32);
    if delta == 3 {
        p = p.add(&Poly::monomial(
            1,
            ((n - k - c) * (k - delta + 1) - f * (delta + f)) as u32,
        ));
        for j in 0..=3 {
            p = p.add(&Poly::monomial(1, (e - delta * delta - j * c * c - j * f * f) as u32));
        }
    } else {
        for j in 0..=2 {
            p = p.add(&Poly::monomial(1, (e - delta * delta - j * f * f) as u32));
        }
    }
    Ok(p)
}

/// The extra vector carrying the optimal code on the composite diagram.
pub fn th44_vprime(n: usize, k: usize) -> Result<IdVec> {
    if k < 1 || n < k + 2 {
        return Err(Error::BadArguments(format!("need n >= k + 2, got n={} k={}", n, k)));
    }
    let (f, c) = ((k - 1) / 2, ceil_half(k - 1));
    runs(&[
        (true, 1),
        (false, (n - k - 2) as isize),
        (true, f as isize),
        (false, 1),
        (true, f as isize),
        (false, 1),
        (true, (c - f) as isize),
    ])
}

fn th44_check(n: usize, k: usize, delta: usize) -> Result<IdVec> {
    th41_check(n, k, delta)?;
    if n < 2 * k + 2 {
        return Err(Error::BadArguments(format!("need n >= 2k + 2, got n={} k={}", n, k)));
    }
    if delta > 3 {
        return Err(Error::BadArguments(format!(
            "the composite code has rank distance 3 < delta = {}",
            delta
        )));
    }
    let vp = th44_vprime(n, k)?;
    if ferrers_of(&vp)?.diagram != th43_diagram(n, k)? {
        return Err(Error::ConditionNotMet(
            "diagram of v' differs from the composite diagram".into(),
        ));
    }
    for v in th41_vectors(n, k, delta)? {
        let d = hamming_guard(&vp, &v)?;
        if d < 2 * delta {
            return Err(Error::GuardFailed(format!(
                "d_H({}, {}) = {} < {}",
                vp,
                v,
                d,
                2 * delta
            )));
        }
    }
    Ok(vp)
}

pub fn th44_poly(n: usize, k: usize, delta: usize) -> Result<Poly> {
    th44_check(n, k, delta)?;
    Ok(th41_poly(n, k, delta)?.add(&Poly::monomial(1, ((k - 1) / 2) as u32)))
}

pub fn th44_bound(q: u32, n: usize, delta: usize, k: usize) -> Result<BoundResult> {
    FieldCtx::get(q)?;
    let p = th44_poly(n, k, delta)?;
    BoundResult::from_poly(q, n, 2 * delta, k, p, "th44")
}

/// Displayed closed form of the extended family.
pub fn th44_displayed_poly(n: usize, delta: usize, k: usize) -> Result<Poly> {
    Ok(th41_displayed_poly(n, delta, k)?.add(&Poly::monomial(1, ((k - 1) / 2) as u32)))
}

/// A list of codes on the union of several constant-weight codes, one part per
/// Lemma-13 block, concatenated in order.
#[derive(Clone, Debug)]
pub struct ListSpec {
    pub parts: Vec<CwcSet>,
    pub delta1: usize,
    pub delta2: usize,
    pub inverse: bool,
    pub r: Option<usize>,
}

impl ListSpec {
    pub fn forward(parts: Vec<CwcSet>, delta1: usize, delta2: usize) -> ListSpec {
        ListSpec {
            parts,
            delta1,
            delta2,
            inverse: false,
            r: None,
        }
    }
    pub fn inverse(parts: Vec<CwcSet>, delta1: usize, delta2: usize, r: Option<usize>) -> ListSpec {
        ListSpec {
            parts,
            delta1,
            delta2,
            inverse: true,
            r,
        }
    }
    /// Parses parts separated by `;`, vectors by `,`.
    pub fn parse(s: &str, delta1: usize, delta2: usize, inverse: bool, r: Option<usize>) -> Result<ListSpec> {
        let kind = if inverse { IdKind::Inverse } else { IdKind::Forward };
        let parts: Result<Vec<CwcSet>> = s.split(';').map(|p| CwcSet::parse(p, kind, 2 * delta1)).collect();
        let spec = ListSpec {
            parts: parts?,
            delta1,
            delta2,
            inverse,
            r,
        };
        spec.validate()?;
        Ok(spec)
    }
    pub fn n(&self) -> usize {
        self.parts[0].n()
    }
    pub fn k(&self) -> usize {
        self.parts[0].weight()
    }
    pub fn vectors(&self) -> Vec<IdVec> {
        self.parts.iter().flat_map(|p| p.vectors().iter().cloned()).collect()
    }
    pub fn validate(&self) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::BadArguments("list without vectors".into()));
        }
        CwcSet::new(self.vectors(), 2 * self.delta2)?;
        for p in &self.parts {
            CwcSet::new(p.vectors().to_vec(), 2 * self.delta1)?;
        }
        Ok(())
    }
    pub fn profile(&self, q: u32) -> Result<ListProfile> {
        self.validate()?;
        let ps: Result<Vec<ListProfile>> = self
            .parts
            .iter()
            .map(|p| coset_list_profile(p, self.delta1, self.delta2, q, self.inverse, self.r))
            .collect();
        Ok(ListProfile::concat(&ps?))
    }
    pub fn build(&self, q: u32) -> Result<CdcList> {
        self.validate()?;
        let ls: Result<Vec<CdcList>> = self
            .parts
            .iter()
            .map(|p| build_coset_cdc_lists(p, self.delta1, self.delta2, q, self.inverse, self.r))
            .collect();
        CdcList::concat(ls?)
    }
}

/// Rank of the matrix sitting in the dots of the echelon (or inverse echelon) form.
pub fn dot_rank(u: &Subspace, inverse: bool) -> Result<usize> {
    if inverse {
        let layout = ferrers_of(&inverse_identifying_vector(u))?;
        Ok(layout.extract(&u.rrief().0).rank())
    } else {
        let layout = ferrers_of(&identifying_vector(u))?;
        Ok(layout.extract(u.gen()).rank())
    }
}

fn list_params(l: &CdcList, what: &str) -> Result<(usize, usize)> {
    let c = l
        .lists
        .first()
        .ok_or_else(|| Error::ParameterMismatch(format!("{} is empty", what)))?;
    Ok((c.n(), c.k()))
}

/// Cardinalities of the block-diagonal and anti-diagonal parts after reordering.
pub fn thm31_count(a: &ListProfile, b: &ListProfile, ahat: &ListProfile, bhat: &ListProfile) -> (BigCount, BigCount) {
    (paired_sum(a, b), paired_sum(ahat, bhat))
}

/// Materializes the block-diagonal part C3 and the anti-diagonal part C4.
pub fn thm31_build(a: &CdcList, b: &CdcList, ahat: &CdcList, bhat: &CdcList) -> Result<(Cdc, Cdc)> {
    let (n1, k1) = list_params(a, "A")?;
    let (n2, k2) = list_params(b, "B")?;
    if list_params(ahat, "A^")? != (n1, k1) || list_params(bhat, "B^")? != (n2, k2) {
        return Err(Error::ParameterMismatch(
            "inverse lists differ in shape from the forward lists".into(),
        ));
    }
    let d = a.intra_d;
    if [b.intra_d, ahat.intra_d, bhat.intra_d].iter().any(|&x| x != d) {
        return Err(Error::ParameterMismatch("lists with different distances".into()));
    }
    if a.inter_d + b.inter_d != d || ahat.inter_d + bhat.inter_d != d {
        return Err(Error::ParameterMismatch(format!(
            "fixed distances do not add up to {}",
            d
        )));
    }
    if n1 < k1 || n2 < k2 || 2 * k1 < d || 2 * k2 < d {
        return Err(Error::ParameterMismatch("need n_i >= k_i >= d/2".into()));
    }
    let r = ahat.restricted_rank.unwrap_or(k1);
    for c in &ahat.lists {
        for u in c.members() {
            let rk = dot_rank(u, true)?;
            if rk > r {
                return Err(Error::RankRestrictionViolated(format!(
                    "{:?} has rank {} > {}",
                    u, rk, r
                )));
            }
        }
    }
    let field = a.lists[0].field();
    let (n, k) = (n1 + n2, k1 + k2);
    let pair = |x: &CdcList, y: &CdcList| reorder_pairing(&x.sizes(), &y.sizes()).pairs;
    let mut c3 = Cdc::new(field, n, k, d, "parallel cosets, block diagonal");
    for (i, j) in pair(a, b) {
        for ua in a.lists[i].members() {
            for ub in b.lists[j].members() {
                let mut g = MatGF::zero(field, k, n);
                g.set_block(0, 0, ua.gen());
                g.set_block(k1, n1, ub.gen());
                c3.insert(Subspace::from_generators(&g))?;
            }
        }
    }
    let mut c4 = Cdc::new(field, n, k, d, "parallel cosets, anti-diagonal");
    for (i, j) in pair(ahat, bhat) {
        for ua in ahat.lists[i].members() {
            for ub in bhat.lists[j].members() {
                let mut g = MatGF::zero(field, k, n);
                g.set_block(0, n1, &ub.rrief().0);
                g.set_block(k2, 0, &ua.rrief().0);
                c4.insert(Subspace::from_generators(&g))?;
            }
        }
    }
    Ok((c3, c4))
}

/// Source of known lower bounds A_q(n, d, k) used as plug-in factors.
pub trait KnownBounds {
    fn lower_bound(&self, q: u32, n: usize, d: usize, k: usize) -> BigCount;
}

/// Lifted MRD codes: q^{max(k,n-k)(min(k,n-k)-d/2+1)}, and 1 when that exponent is not positive.
#[derive(Clone, Copy, Debug, Default)]
pub struct LiftedMrdBounds;

impl KnownBounds for LiftedMrdBounds {
    fn lower_bound(&self, q: u32, n: usize, d: usize, k: usize) -> BigCount {
        if k > n {
            return BigUint::zero();
        }
        mrd_size(q, k, n - k, d / 2)
    }
}

/// Inputs of the combined construction: parallel linkage plus parallel cosets.
#[derive(Clone, Debug)]
pub struct Thm32Input {
    pub q: u32,
    pub n1: usize,
    pub n2: usize,
    pub k: usize,
    pub d: usize,
    pub a: ListSpec,
    pub b: ListSpec,
    pub ahat: ListSpec,
    pub bhat: ListSpec,
}

impl Thm32Input {
    fn check(&self) -> Result<()> {
        let (n1, n2, k, d) = (self.n1, self.n2, self.k, self.d);
        for (l, n) in [(&self.a, n1), (&self.ahat, n1), (&self.b, n2), (&self.bhat, n2)] {
            l.validate()?;
            if l.n() != n || 2 * l.delta1 != d {
                return Err(Error::ParameterMismatch(format!(
                    "list of length {} and distance {}",
                    l.n(),
                    2 * l.delta1
                )));
            }
        }
        if self.a.k() + self.b.k() != k || self.ahat.k() != self.a.k() || self.bhat.k() != self.b.k() {
            return Err(Error::ParameterMismatch("dimensions do not add up to k".into()));
        }
        if self.a.delta2 + self.b.delta2 != d / 2 || self.ahat.delta2 + self.bhat.delta2 != d / 2 {
            return Err(Error::ParameterMismatch("fixed distances do not add up to d".into()));
        }
        if self.a.inverse || self.b.inverse || !self.ahat.inverse || !self.bhat.inverse {
            return Err(Error::ParameterMismatch(
                "A, B must be forward lists and A^, B^ inverse lists".into(),
            ));
        }
        if n1 < k || n2 < k || 2 * k < d {
            return Err(Error::ParameterMismatch(format!(
                "need n_i >= k >= d/2, got {} {} {} {}",
                n1, n2, k, d
            )));
        }
        Ok(())
    }

    /// d_H(u1, û2) >= 2(r + d/2) for every forward vector of A and inverse vector of Â.
    pub fn guard(&self) -> Result<()> {
        let r = self.ahat.r.unwrap_or(self.ahat.k());
        for u in self.a.vectors() {
            for v in self.ahat.vectors() {
                let h = hamming_guard(&u, &v)?;
                if h < 2 * (r + self.d / 2) {
                    return Err(Error::GuardFailed(format!(
                        "d_H({}, {}) = {} < {}",
                        u,
                        v,
                        h,
                        2 * (r + self.d / 2)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Exact count of C1 ∪ C2 ∪ C3 ∪ C4, with plug-in factors for A_q(n_i, d, k).
pub fn thm32_count(input: &Thm32Input, known: &dyn KnownBounds) -> Result<BoundResult> {
    input.check()?;
    input.guard()?;
    let (q, n1, n2, k, d) = (input.q, input.n1, input.n2, input.k, input.d);
    let c1 = known.lower_bound(q, n1, d, k) * mrd_size(q, k, n2, d / 2);
    let mut m2 = BigUint::one();
    for i in 1..=(k - d / 2) {
        m2 += rank_distribution(q, k, n1, d / 2, i)?;
    }
    let c2 = m2 * known.lower_bound(q, n2, d, k);
    let (c3, c4) = thm31_count(
        &input.a.profile(q)?,
        &input.b.profile(q)?,
        &input.ahat.profile(q)?,
        &input.bhat.profile(q)?,
    );
    let mut out = BoundResult::from_value(q, n1 + n2, d, k, &c1 + &c2 + &c3 + &c4, "thm32");
    out.notes = vec![
        format!("|C1| = {}", c1),
        format!("|C2| = {}", c2),
        format!("|C3| = {}", c3),
        format!("|C4| = {}", c4),
    ];
    Ok(out)
}

fn trivial_or_lifted(q: u32, n: usize, k: usize, d: usize) -> Result<Cdc> {
    let field = FieldCtx::get(q)?;
    if n == k {
        let mut c = Cdc::new(field, n, k, d, "whole space");
        c.insert(Subspace::from_generators(&MatGF::identity(field, k)))?;
        return Ok(c);
    }
    let mut c = if d / 2 > k.min(n - k) {
        let mut c = Cdc::new(field, n, k, d, "single subspace");
        c.insert(Subspace::from_generators(
            &MatGF::identity(field, k).hstack(&MatGF::zero(field, k, n - k)),
        ))?;
        c
    } else {
        lift_code(&gabidulin(q, k, n - k, d / 2)?, LiftSide::Left)?
    };
    c.set_d(d);
    Ok(c)
}

/// Materializes the combined code at desk scale (lifted MRD codes as U1, U2).
pub fn thm32_build(input: &Thm32Input) -> Result<Cdc> {
    input.check()?;
    input.guard()?;
    let (q, n1, n2, k, d) = (input.q, input.n1, input.n2, input.k, input.d);
    let u1 = trivial_or_lifted(q, n1, k, d)?;
    let u2 = trivial_or_lifted(q, n2, k, d)?;
    let m1 = gabidulin(q, k, n2, d / 2)?;
    let m2 = restrict_ranks(&gabidulin(q, k, n1, d / 2)?, k - d / 2)?;
    let mut out = parallel_linkage(&u1, &u2, &m1, &m2)?;
    let (c3, c4) = thm31_build(
        &input.a.build(q)?,
        &input.b.build(q)?,
        &input.ahat.build(q)?,
        &input.bhat.build(q)?,
    )?;
    out.union(c3)?;
    out.union(c4)?;
    out.note("combined parallel linkage and parallel cosets");
    Ok(out)
}

/// Two lists and the MRD filler of a coset construction inserted into the new family.
#[derive(Clone, Debug)]
pub struct CosetInsertion {
    pub a: ListSpec,
    pub b: ListSpec,
}

impl CosetInsertion {
    pub fn n1(&self) -> usize {
        self.a.n()
    }
    pub fn k1(&self) -> usize {
        self.a.k()
    }
    pub fn n2(&self) -> usize {
        self.b.n()
    }
    pub fn k2(&self) -> usize {
        self.b.k()
    }
    /// log_q |H| for the k1 × (n2 - k2) MRD filler with distance delta.
    pub fn h_dim(&self, delta: usize) -> usize {
        mrd_dim(self.k1(), self.n2() - self.k2(), delta)
    }
    /// Identifying vectors of the inserted codewords.
    pub fn vectors(&self) -> Vec<IdVec> {
        let bs = self.b.vectors();
        self.a
            .vectors()
            .iter()
            .flat_map(|a| bs.iter().map(move |b| a.concat(b)))
            .collect()
    }

    fn check(&self, n: usize, k: usize, delta: usize) -> Result<()> {
        self.a.validate()?;
        self.b.validate()?;
        if self.a.inverse || self.b.inverse {
            return Err(Error::ParameterMismatch("insertion lists must be forward lists".into()));
        }
        if self.n1() + self.n2() != n || self.k1() + self.k2() != k {
            return Err(Error::ParameterMismatch(format!(
                "n1 + n2 = {} and k1 + k2 = {}, expected {} and {}",
                self.n1() + self.n2(),
                self.k1() + self.k2(),
                n,
                k
            )));
        }
        if self.a.delta1 != delta || self.b.delta1 != delta || self.a.delta2 + self.b.delta2 != delta {
            return Err(Error::ParameterMismatch("list distances do not match delta".into()));
        }
        if self.n1() < k + 1 || self.n2() < self.k2() || self.k1() < delta || self.k2() < delta {
            return Err(Error::ParameterMismatch(
                "need n1 >= k+1, n2 >= k2 and k1, k2 >= delta".into(),
            ));
        }
        if (k as isize - delta as isize + 1 - self.k1() as isize).unsigned_abs() < delta {
            return Err(Error::GuardFailed(format!(
                "|k - delta + 1 - k1| < delta for k1 = {}",
                self.k1()
            )));
        }
        Ok(())
    }

    /// |H| · Σ|A_i||B_i| after reordering.
    pub fn count(&self, q: u32, delta: usize) -> Result<BigCount> {
        Ok(qpow(q, self.h_dim(delta)) * paired_sum(&self.a.profile(q)?, &self.b.profile(q)?))
    }
}

fn multi_coset_guard(family: &[IdVec], n1: usize, k1: usize, delta: usize) -> Result<()> {
    for u in family {
        let x = u.prefix_weight(n1);
        if x.abs_diff(k1) < delta {
            return Err(Error::GuardFailed(format!(
                "{} has {} ones among the first {} positions, k1 = {}",
                u, x, n1, k1
            )));
        }
    }
    Ok(())
}

/// The family plus an inserted coset construction.
pub fn th42_insert(q: u32, n: usize, delta: usize, k: usize, ins: &CosetInsertion) -> Result<BoundResult> {
    ins.check(n, k, delta)?;
    multi_coset_guard(&th41_vectors(n, k, delta)?, ins.n1(), ins.k1(), delta)?;
    let base = th41_bound(q, n, delta, k)?;
    let c6 = ins.count(q, delta)?;
    let mut out = BoundResult::from_value(q, n, 2 * delta, k, &base.value + &c6, "th42");
    out.notes
        .push(format!("family: {}", base.polynomial.expect("th41 has a polynomial")));
    out.notes.push(format!("inserted: {}", c6));
    Ok(out)
}

fn th45_shape(u: &IdVec, k: usize, delta: usize) -> bool {
    let (f, c) = ((k - 1) / 2, ceil_half(k - 1));
    let (l1, l2) = ((delta - 1 + f).saturating_sub(c), c - f);
    let b = u.bits();
    let n = b.len();
    if n < l1 + l2 + 2 || b[0] {
        return false;
    }
    let tail = &b[n - l1 - l2 - 1..];
    tail[..l1].iter().all(|&x| !x) && tail[l1] && tail[l1 + 1..].iter().all(|&x| !x)
}

/// The extended family plus an inserted coset construction.
pub fn th45_insert(q: u32, n: usize, delta: usize, k: usize, ins: &CosetInsertion) -> Result<BoundResult> {
    if ins.n1() != k + 1 {
        return Err(Error::ParameterMismatch(format!("need n1 = k + 1, got {}", ins.n1())));
    }
    ins.check(n, k, delta)?;
    let vp = th44_check(n, k, delta)?;
    multi_coset_guard(&th41_vectors(n, k, delta)?, ins.n1(), ins.k1(), delta)?;
    for u in ins.vectors() {
        if !th45_shape(&u, k, delta) {
            return Err(Error::GuardFailed(format!("condition (2): {} has the wrong shape", u)));
        }
        let h = hamming_guard(&u, &vp)?;
        if h < 2 * delta {
            return Err(Error::GuardFailed(format!(
                "d_H({}, {}) = {} < {}",
                u,
                vp,
                h,
                2 * delta
            )));
        }
    }
    let base = th44_bound(q, n, delta, k)?;
    let c8 = ins.count(q, delta)?;
    let mut out = BoundResult::from_value(q, n, 2 * delta, k, &base.value + &c8, "th45");
    out.notes
        .push(format!("family: {}", base.polynomial.expect("th44 has a polynomial")));
    out.notes.push(format!("inserted: {}", c8));
    Ok(out)
}

/// The lifted optimal codes of the family, one per vector (desk scale only).
pub fn th41_entries(q: u32, n: usize, delta: usize, k: usize) -> Result<Vec<(IdVec, FdrmCode)>> {
    th41_terms(n, k, delta)?
        .into_iter()
        .map(|t| {
            let code = optimal_fdrmc(&t.diagram, delta, q)?;
            Ok((t.vector, code))
        })
        .collect()
}

pub fn th44_entries(q: u32, n: usize, delta: usize, k: usize) -> Result<Vec<(IdVec, FdrmCode)>> {
    let vp = th44_check(n, k, delta)?;
    let mut e = th41_entries(q, n, delta, k)?;
    e.push((vp, th43_optimal_fdrmc(n, k, q)?));
    Ok(e)
}

fn build_entries(entries: &[(IdVec, FdrmCode)], delta: usize, limit: usize) -> Result<Cdc> {
    let total: BigUint = entries.iter().map(|(_, c)| c.size()).sum();
    if total > BigUint::from(limit) {
        return Err(Error::TooLarge(format!("{} codewords", total)));
    }
    multilevel(entries, delta)
}

/// Materializes the family when it has at most `limit` codewords.
pub fn th41_build(q: u32, n: usize, delta: usize, k: usize, limit: usize) -> Result<Cdc> {
    build_entries(&th41_entries(q, n, delta, k)?, delta, limit)
}

pub fn th44_build(q: u32, n: usize, delta: usize, k: usize, limit: usize) -> Result<Cdc> {
    build_entries(&th44_entries(q, n, delta, k)?, delta, limit)
}

/// Materializes the inserted coset code; the family itself is usually too large to build.
pub fn insertion_build(q: u32, delta: usize, ins: &CosetInsertion) -> Result<Cdc> {
    let field = FieldCtx::get(q)?;
    let h = if ins.h_dim(delta) == 0 {
        crate::rankmetric::LinearMatrixCode::zero_code(field, ins.k1(), ins.n2() - ins.k2(), delta)
    } else {
        gabidulin(q, ins.k1(), ins.n2() - ins.k2(), delta)?
    };
    crate::cdc::coset_construction(&ins.a.build(q)?, &ins.b.build(q)?, &h)
}

/// Smallest Hamming distance between the family's vectors and the inserted code's members.
pub fn cross_certificate(family: &[IdVec], code: &Cdc) -> Result<usize> {
    let mut best = usize::MAX;
    let vs: std::collections::HashSet<IdVec> = code.members().iter().map(identifying_vector).collect();
    for u in family {
        for v in &vs {
            best = best.min(hamming_guard(u, v)?);
        }
    }
    Ok(best)
}

fn cwc(vs: &[&str], kind: IdKind, min_hd: usize) -> CwcSet {
    let v = vs
        .iter()
        .map(|s| IdVec::parse(s, kind).expect("literal vector"))
        .collect();
    CwcSet::new(v, min_hd).expect("literal constant-weight code")
}

/// The (18, 8, 9) combined construction.
pub fn example3_input(q: u32) -> Thm32Input {
    Thm32Input {
        q,
        n1: 9,
        n2: 9,
        k: 9,
        d: 8,
        a: ListSpec::forward(vec![cwc(&["111100000"], IdKind::Forward, 8)], 4, 2),
        b: ListSpec::forward(vec![cwc(&["111110000", "000011111"], IdKind::Forward, 8)], 4, 2),
        ahat: ListSpec::inverse(vec![cwc(&["000001111"], IdKind::Inverse, 8)], 4, 2, Some(0)),
        bhat: ListSpec::inverse(vec![cwc(&["000011111", "111110000"], IdKind::Inverse, 8)], 4, 2, None),
    }
}

pub fn example3_bound(q: u32) -> Result<BoundResult> {
    let mut r = thm32_count(&example3_input(q), &LiftedMrdBounds)?;
    r.source = "example:3".into();
    Ok(r)
}

/// The (17, 6, 8) insertion with k1 = 3, k2 = 5.
///
/// B uses a repaired distance-4 code with the same list profile.
pub fn example5_insertion() -> CosetInsertion {
    let f = IdKind::Forward;
    CosetInsertion {
        a: ListSpec::forward(vec![cwc(&["111000000", "000111000", "000000111"], f, 6)], 3, 1),
        b: ListSpec::forward(
            vec![
                cwc(&["11111000", "11000111"], f, 6),
                cwc(&["10110110"], f, 6),
                cwc(&["01110101", "10101011"], f, 6),
                cwc(&["10011101"], f, 6),
                cwc(&["01011110"], f, 6),
            ],
            3,
            2,
        ),
    }
}

pub fn example5_bound(q: u32) -> Result<BoundResult> {
    let mut r = th42_insert(q, 17, 3, 8, &example5_insertion())?;
    r.source = "example:5".into();
    Ok(r)
}

/// The (19, 6, 8) insertion with n1 = 9, k1 = 3.
pub fn example8_insertion() -> CosetInsertion {
    let f = IdKind::Forward;
    CosetInsertion {
        a: ListSpec::forward(vec![cwc(&["011100000", "000011100"], f, 6)], 3, 1),
        b: ListSpec::forward(
            vec![
                cwc(&["1111000010", "1000111010"], f, 6),
                cwc(&["0110110010"], f, 6),
                cwc(&["0101101010"], f, 6),
                cwc(&["0011011010"], f, 6),
            ],
            3,
            2,
        ),
    }
}

pub fn example8_bound(q: u32) -> Result<BoundResult> {
    let mut r = th45_insert(q, 19, 3, 8, &example8_insertion())?;
    r.source = "example:8".into();
    Ok(r)
}

/// One row of the improved-bounds table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegistryRow {
    pub q: u32,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub new: BigCount,
    pub old: Option<BigCount>,
}

#[derive(Clone, Debug)]
pub struct Registry {
    pub rows: Vec<RegistryRow>,
}

const TABLE11: &str = include_str!("../data/table11.txt");

impl Registry {
    pub fn embedded() -> Registry {
        Registry::parse(TABLE11).expect("embedded registry parses")
    }
    pub fn load(path: &Path) -> Result<Registry> {
        Registry::parse(&std::fs::read_to_string(path)?)
    }
    pub fn parse(text: &str) -> Result<Registry> {
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: i + 1, msg };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 && f.len() != 6 {
                return Err(bad(format!("expected `q n d k new [old]`, got {:?}", line)));
            }
            let small = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("bad integer {:?}", s)));
            let big = |s: &str| s.parse::<BigUint>().map_err(|_| bad(format!("bad integer {:?}", s)));
            let q = small(f[0])? as u32;
            if FieldCtx::get(q).is_err() {
                return Err(bad(format!("unsupported field order {}", q)));
            }
            let row = RegistryRow {
                q,
                n: small(f[1])?,
                d: small(f[2])?,
                k: small(f[3])?,
                new: big(f[4])?,
                old: f.get(5).map(|s| big(s)).transpose()?,
            };
            if row.d % 2 == 1 || row.k > row.n {
                return Err(bad(format!("invalid parameters in {:?}", line)));
            }
            if rows
                .iter()
                .any(|r: &RegistryRow| (r.q, r.n, r.d, r.k) == (row.q, row.n, row.d, row.k))
            {
                return Err(bad(format!("duplicate row {:?}", line)));
            }
            rows.push(row);
        }
        Ok(Registry { rows })
    }
    pub fn get(&self, q: u32, n: usize, d: usize, k: usize) -> Option<&RegistryRow> {
        self.rows.iter().find(|r| (r.q, r.n, r.d, r.k) == (q, n, d, k))
    }
}

/// The polynomial behind a registry row and the example it comes from.
pub fn registry_poly(q: u32, n: usize, d: usize, k: usize) -> Option<(Poly, &'static str)> {
    let p = |t: &[(i64, u32)]| Poly::from_terms(t);
    let th44 = |t: &[(i64, u32)]| (p(t), "example:7");
    Some(match (n, d, k) {
        (18, 8, 9) => {
            let mut m = p(&[(1, 54), (1, 20), (2, 5), (2, 0)]);
            for r in 4..=5 {
                m = m.add(&rank_distribution_poly(9, 9, 4, r).ok()?);
            }
            (m, "example:3")
        }
        (19, 8, 9) => (p(&[(1, 60), (1, 44), (1, 36), (1, 28)]), "example:4"),
        (17, 6, 8) => (
            p(&[
                (1, 54),
                (1, 45),
                (1, 40),
                (1, 38),
                (1, 35),
                (1, 30),
                (1, 25),
                (1, 22),
                (1, 19),
                (3, 18),
                (1, 17),
                (2, 16),
                (3, 15),
                (2, 14),
                (1, 13),
                (1, 12),
            ]),
            "example:5",
        ),
        (15, 6, 6) => th44(&[(1, 36), (1, 27), (1, 24), (2, 22), (1, 12), (1, 2)]),
        (16, 6, 6) => th44(&[(1, 40), (1, 31), (1, 28), (1, 26), (1, 21), (1, 16), (1, 2)]),
        (16, 6, 7) => th44(&[(1, 45), (1, 36), (2, 31), (1, 26), (1, 21), (1, 3)]),
        (17, 6, 6) => th44(&[(1, 44), (1, 35), (1, 32), (1, 30), (1, 25), (1, 20), (1, 2)]),
        (17, 6, 7) => th44(&[(1, 50), (1, 41), (2, 36), (1, 31), (1, 26), (1, 3)]),
        (18, 6, 7) => th44(&[(1, 55), (1, 46), (2, 41), (1, 36), (1, 31), (1, 3)]),
        (19, 6, 7) => th44(&[(1, 60), (1, 51), (2, 46), (1, 41), (1, 36), (1, 3)]),
        (19, 6, 8) => {
            let base = p(&[(1, 66), (1, 57), (1, 52), (1, 50), (1, 47), (1, 42), (1, 3)]);
            let c8 = if q == 2 {
                p(&[
                    (1, 26),
                    (1, 21),
                    (1, 20),
                    (1, 18),
                    (1, 17),
                    (1, 16),
                    (1, 15),
                    (1, 13),
                    (1, 12),
                ])
            } else {
                p(&[
                    (1, 26),
                    (1, 21),
                    (1, 20),
                    (1, 18),
                    (1, 17),
                    (1, 16),
                    (1, 15),
                    (1, 13),
                    (1, 12),
                    (1, 11),
                ])
            };
            (base.add(&c8), "example:8")
        }
        _ => return None,
    })
}

/// Evaluates the registry row (q, n, d, k), attaching the transcribed old bound.
pub fn table11_bound(q: u32, n: usize, d: usize, k: usize) -> Result<BoundResult> {
    table11_bound_in(&Registry::embedded(), q, n, d, k)
}

pub fn table11_bound_in(reg: &Registry, q: u32, n: usize, d: usize, k: usize) -> Result<BoundResult> {
    let row = reg.get(q, n, d, k).ok_or(Error::NotInRegistry { q, n, d, k })?;
    let (poly, src) = registry_poly(q, n, d, k).ok_or(Error::NotInRegistry { q, n, d, k })?;
    let mut out = BoundResult::from_poly(q, n, d, k, poly, src)?;
    out.old = row.old.clone();
    if out.value != row.new {
        out.notes.push(format!(
            "transcribed value {} differs from the evaluated polynomial",
            row.new
        ));
    }
    Ok(out)
}

/// Evaluation of every registry row against its transcription.
#[derive(Clone, Debug)]
pub struct Table11Line {
    pub row: RegistryRow,
    pub result: Result<BoundResult>,
}

impl Table11Line {
    pub fn matches(&self) -> bool {
        matches!(&self.result, Ok(r) if r.value == self.row.new)
    }
    pub fn improves(&self) -> bool {
        matches!(&self.result, Ok(r) if r.improves() != Some(false))
    }
}

pub fn table11_check(reg: &Registry) -> Vec<Table11Line> {
    reg.rows
        .iter()
        .map(|row| Table11Line {
            row: row.clone(),
            result: table11_bound_in(reg, row.q, row.n, row.d, row.k),
        })
        .collect()
}

/// A comparison between a registry value and an independent derivation.
#[derive(Clone, Debug)]
pub struct Consistency {
    pub q: u32,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub check: &'static str,
    pub registry: BigCount,
    pub other: std::result::Result<BigCount, String>,
}

impl Consistency {
    pub fn agrees(&self) -> bool {
        matches!(&self.other, Ok(v) if *v == self.registry)
    }
}

/// Compares every registry row with the generic theorem formulas and the recipe derivations.
pub fn consistency_report(reg: &Registry) -> Vec<Consistency> {
    let mut out = Vec::new();
    for row in &reg.rows {
        let (q, n, d, k) = (row.q, row.n, row.d, row.k);
        let delta = d / 2;
        let mut push = |check: &'static str, v: Result<BigCount>| {
            out.push(Consistency {
                q,
                n,
                d,
                k,
                check,
                registry: row.new.clone(),
                other: v.map_err(|e| e.to_string()),
            })
        };
        let derived: Vec<(&'static str, Result<BigCount>)> = match (n, d, k) {
            (18, 8, 9) => vec![("example:3 recipe", example3_bound(q).map(|r| r.value))],
            (17, 6, 8) => vec![("example:5 recipe", example5_bound(q).map(|r| r.value))],
            (19, 6, 8) => vec![
                ("example:8 recipe", example8_bound(q).map(|r| r.value)),
                ("example:8 printed polynomial", printed_example8(q)),
            ],
            (19, 8, 9) => vec![
                ("th41 construction", th41_bound(q, n, delta, k).map(|r| r.value)),
                (
                    "th41 displayed formula",
                    th41_displayed_poly(n, delta, k).and_then(|p| p.eval_nat(q)),
                ),
            ],
            _ => vec![
                ("th44 construction", th44_bound(q, n, delta, k).map(|r| r.value)),
                (
                    "th44 displayed formula",
                    th44_displayed_poly(n, delta, k).and_then(|p| p.eval_nat(q)),
                ),
            ],
        };
        for (c, v) in derived {
            push(c, v);
        }
    }
    out
}

fn printed_example8(q: u32) -> Result<BigCount> {
    let base = Poly::from_terms(&[(1, 66), (1, 57), (1, 52), (1, 50), (1, 47), (1, 42), (1, 3)]);
    let c8 = if q == 2 {
        Poly::from_terms(&[
            (1, 26),
            (1, 21),
            (1, 20),
            (1, 18),
            (1, 17),
            (1, 16),
            (1, 15),
            (1, 13),
            (1, 12),
        ])
    } else {
        Poly::from_terms(&[
            (1, 26),
            (1, 21),
            (1, 20),
            (1, 18),
            (1, 17),
            (1, 16),
            (1, 15),
            (1, 12),
            (1, 11),
        ])
    };
    base.add(&c8).eval_nat(q)
}

/// Resolves `auto | th41 | th44 | table11 | example:<name>` to a bound.
pub fn bound_by_source(source: &str, q: u32, n: usize, d: usize, k: usize) -> Result<BoundResult> {
    if d % 2 == 1 {
        return Err(Error::BadArguments(format!(
            "subspace distance must be even, got {}",
            d
        )));
    }
    let delta = d / 2;
    let want = |r: BoundResult| -> Result<BoundResult> {
        if (r.n, r.d, r.k) != (n, d, k) {
            return Err(Error::ParameterMismatch(format!(
                "{} is about ({},{},{})",
                r.source, r.n, r.d, r.k
            )));
        }
        Ok(r)
    };
    match source {
        "auto" => table11_bound(q, n, d, k)
            .or_else(|_| th44_bound(q, n, delta, k))
            .or_else(|_| th41_bound(q, n, delta, k)),
        "th41" => th41_bound(q, n, delta, k),
        "th44" => th44_bound(q, n, delta, k),
        "table11" => table11_bound(q, n, d, k),
        "example:3" => want(example3_bound(q)?),
        "example:4" => want(th41_bound(q, n, delta, k)?).map(|mut r| {
            r.source = "example:4".into();
            r
        }),
        "example:5" => want(example5_bound(q)?),
        "example:6" | "example:7" => want(th44_bound(q, n, delta, k)?),
        "example:8" => want(example8_bound(q)?),
        other => Err(Error::BadArguments(format!("unknown source {:?}", other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn gaussian_poly_matches_numbers() {
        for n in 0..7 {
            for k in 0..=n {
                for q in [2u32, 3] {
                    let v = crate::linalg::gaussian_binomial(n, k, q).unwrap();
                    assert_eq!(gaussian_poly(n, k).eval_nat(q).unwrap(), v);
                }
            }
        }
        assert_eq!(gaussian_poly(4, 2).to_string(), "q^4 + q^3 + 2q^2 + q^1 + 1");
    }

    #[test]
    fn rank_poly_matches_numbers() {
        for (m, n, d, r) in [(3, 3, 2, 2), (3, 3, 2, 3), (9, 9, 4, 4), (9, 9, 4, 5), (5, 3, 2, 3)] {
            for q in [2u32, 3, 4] {
                assert_eq!(
                    rank_distribution_poly(m, n, d, r).unwrap().eval_nat(q).unwrap(),
                    rank_distribution(q, m, n, d, r).unwrap()
                );
            }
        }
    }

    #[test]
    fn family_vectors_delta3() {
        let vs = th41_vectors(15, 6, 3).unwrap();
        let s: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        assert_eq!(
            s,
            vec![
                "111111000000000",
                "111000111000000",
                "001110110100000",
                "110100100110000",
                "110010100001100",
                "110001100000011",
            ]
        );
        assert_eq!(th41_cwc(15, 6, 3).unwrap().vectors().len(), 6);
    }

    #[test]
    fn family_rejections() {
        assert!(matches!(th41_vectors(12, 6, 3), Err(Error::BadArguments(_))));
        assert!(matches!(th41_vectors(30, 12, 5), Err(Error::OddDeltaUnsupported(5))));
        assert!(matches!(th41_vectors(10, 6, 3), Err(Error::BadArguments(_))));
        assert!(matches!(th41_vectors(12, 4, 3), Err(Error::BadArguments(_))));
    }

    #[test]
    fn family_even_delta() {
        let c = th41_cwc(19, 9, 4).unwrap();
        assert_eq!(c.vectors().len(), 4);
        let p = th41_poly(19, 9, 4).unwrap();
        assert_eq!(p, Poly::from_terms(&[(1, 60), (1, 44), (1, 36), (1, 28)]));
        assert_eq!(
            th41_bound(3, 19, 4, 9).unwrap().value,
            big("42391159260137223209995120164")
        );
        assert_ne!(th41_displayed_poly(19, 4, 9).unwrap(), p);
    }

    #[test]
    fn family_delta3_polys() {
        let p = th41_poly(16, 7, 3).unwrap();
        assert_eq!(p, Poly::from_terms(&[(1, 45), (1, 36), (2, 31), (1, 26), (1, 21)]));
        assert_eq!(p, th41_displayed_poly(16, 3, 7).unwrap());
        assert_eq!(
            p.terms().iter().map(|(c, _)| c.clone()).sum::<BigInt>(),
            BigInt::from(6)
        );
    }

    #[test]
    fn extended_family() {
        assert_eq!(th44_vprime(16, 6).unwrap().to_string(), "1000000001101101");
        assert_eq!(th44_bound(3, 16, 3, 6).unwrap().value, big("12158308561614895971"));
        assert_eq!(th44_bound(3, 17, 3, 7).unwrap().value, big("717934761497715615667197"));
        let generic = th44_bound(3, 15, 3, 6).unwrap();
        assert_ne!(generic.value, big("150102606086671257"));
        assert_eq!(
            generic.polynomial.unwrap(),
            Poly::from_terms(&[(1, 36), (1, 27), (1, 24), (1, 22), (1, 17), (1, 12), (1, 2)])
        );
        assert!(matches!(th44_bound(3, 19, 4, 9), Err(Error::BadArguments(_))));
    }

    #[test]
    fn registry_rows() {
        let reg = Registry::embedded();
        assert_eq!(reg.rows.len(), 65);
        let r = table11_bound(2, 18, 8, 9).unwrap();
        assert_eq!(r.value, big("18015215399116937"));
        assert_eq!(r.diff().unwrap(), BigInt::from(1015379));
        assert!(matches!(table11_bound(2, 10, 4, 3), Err(Error::NotInRegistry { .. })));
        for line in table11_check(&reg) {
            assert!(line.matches(), "{:?}", line.row);
            assert!(line.improves(), "{:?}", line.row);
        }
    }

    #[test]
    fn registry_parse_errors() {
        let e = Registry::parse("# header\n2 18 8 9 12\n2 18 8 x 5\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 3,
                msg: "bad integer \"x\"".into()
            }
        );
        assert!(matches!(
            Registry::parse("6 18 8 9 1"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn example3_matches() {
        for q in [2u32, 3] {
            let r = example3_bound(q).unwrap();
            assert_eq!(r.value, table11_bound(q, 18, 8, 9).unwrap().value);
        }
    }

    #[test]
    fn example3_lists() {
        let x = example3_input(2);
        let q = 3u32;
        let b = x.b.profile(q).unwrap();
        assert_eq!(
            b.runs,
            vec![
                (BigUint::from(244u32), BigUint::one()),
                (BigUint::from(243u32), qpow(3, 10) - 1u32)
            ]
        );
        assert_eq!(x.bhat.profile(q).unwrap(), b);
        assert_eq!(x.ahat.profile(q).unwrap().runs, vec![(BigUint::one(), BigUint::one())]);
        let (c3, c4) = thm31_count(
            &x.a.profile(q).unwrap(),
            &b,
            &x.ahat.profile(q).unwrap(),
            &x.bhat.profile(q).unwrap(),
        );
        assert_eq!(c3, qpow(3, 20) + qpow(3, 5));
        assert_eq!(c4, qpow(3, 5) + 1u32);
    }

    #[test]
    fn guard_failure() {
        let mut x = example3_input(2);
        x.ahat = ListSpec::inverse(vec![cwc(&["110000011"], IdKind::Inverse, 8)], 4, 2, Some(0));
        assert!(matches!(thm32_count(&x, &LiftedMrdBounds), Err(Error::GuardFailed(_))));
    }

    #[test]
    fn example8_matches_numerals() {
        let r = example8_bound(3).unwrap();
        assert_eq!(r.value, big("30904731631209804712703574912729"));
        assert_ne!(printed_example8(3).unwrap(), r.value);
    }

    #[test]
    fn insertion_guard() {
        let mut ins = example5_insertion();
        ins.a = ListSpec::forward(vec![cwc(&["111100000"], IdKind::Forward, 6)], 3, 1);
        ins.b = ListSpec::forward(vec![cwc(&["11110000"], IdKind::Forward, 6)], 3, 2);
        assert!(matches!(th42_insert(3, 17, 3, 8, &ins), Err(Error::GuardFailed(_))));
    }
}
