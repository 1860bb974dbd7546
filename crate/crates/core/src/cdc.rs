//! Constant-dimension codes and the assembly constructions: identifying
//! vectors, multilevel lifting, the φ_B embedding, coset construction,
//! parallel linkage and lists of codes with fixed distance.

use std::fmt;

use indexmap::IndexSet;
use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::ferrers::{coset_list, coset_list_inverse, nested_pair, FdrmCode, FerrersDiagram};
use crate::gf::FieldCtx;
use crate::linalg::{subspace_distance, BigCount, MatGF, Subspace};
use crate::rankmetric::{LinearMatrixCode, MatrixSet};

/// A set of k-dimensional subspaces of GF(q)^n with declared minimum distance d.
#[derive(Clone, Debug)]
pub struct Cdc {
    field: &'static FieldCtx,
    n: usize,
    k: usize,
    d: usize,
    members: IndexSet<Subspace>,
    provenance: Vec<String>,
}

impl Cdc {
    pub fn new(field: &'static FieldCtx, n: usize, k: usize, d: usize, provenance: &str) -> Cdc {
        Cdc {
            field,
            n,
            k,
            d,
            members: IndexSet::new(),
            provenance: vec![provenance.to_string()],
        }
    }

    pub fn field(&self) -> &'static FieldCtx {
        self.field
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn members(&self) -> &indexmap::set::Slice<Subspace> {
        self.members.as_slice()
    }
    pub fn contains(&self, u: &Subspace) -> bool {
        self.members.contains(u)
    }
    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }
    pub fn note(&mut self, line: impl Into<String>) {
        self.provenance.push(line.into());
    }
    pub fn set_d(&mut self, d: usize) {
        self.d = d;
    }

    pub fn insert(&mut self, u: Subspace) -> Result<()> {
        if u.ambient() != self.n || u.dim() != self.k || u.q() != self.q() {
            return Err(Error::ParameterMismatch(format!(
                "subspace of dim {} in GF({})^{} does not fit a code with k={} n={} q={}",
                u.dim(),
                u.q(),
                u.ambient(),
                self.k,
                self.n,
                self.q()
            )));
        }
        if !self.members.insert(u.clone()) {
            return Err(Error::BadArguments(format!("duplicate subspace {:?}", u)));
        }
        Ok(())
    }

    /// Disjoint union; a shared member is an error.
    pub fn union(&mut self, other: Cdc) -> Result<()> {
        if (other.n, other.k) != (self.n, self.k) {
            return Err(Error::ParameterMismatch("union of codes with different n or k".into()));
        }
        for u in other.members {
            self.insert(u)?;
        }
        self.provenance.extend(other.provenance);
        Ok(())
    }

    /// Serial exhaustive minimum distance, `None` below two members.
    pub fn min_distance(&self) -> Option<usize> {
        let m = self.members();
        let mut best = None;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                let d = subspace_distance(&m[i], &m[j]).expect("same ambient");
                best = Some(best.map_or(d, |b: usize| b.min(d)));
            }
        }
        best
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdKind {
    Forward,
    Inverse,
}

/// Binary vector marking pivot columns (RREF for forward, RRIEF for inverse).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdVec {
    bits: Vec<bool>,
    kind: IdKind,
}

impl fmt::Debug for IdVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.kind == IdKind::Inverse { "^" } else { "" };
        write!(f, "{}{}", tag, self)
    }
}

impl fmt::Display for IdVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(f, "{}", s)
    }
}

impl IdVec {
    pub fn new(bits: Vec<bool>, kind: IdKind) -> IdVec {
        IdVec { bits, kind }
    }
    pub fn parse(s: &str, kind: IdKind) -> Result<IdVec> {
        let bits: Result<Vec<bool>> = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::BadArguments(format!("bad bit {:?} in {:?}", c, s))),
            })
            .collect();
        Ok(IdVec { bits: bits?, kind })
    }
    pub fn forward(s: &str) -> Result<IdVec> {
        IdVec::parse(s, IdKind::Forward)
    }
    pub fn inverse(s: &str) -> Result<IdVec> {
        IdVec::parse(s, IdKind::Inverse)
    }
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
    pub fn kind(&self) -> IdKind {
        self.kind
    }
    pub fn len(&self) -> usize {
        self.bits.len()
    }
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
    pub fn ones(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).collect()
    }
    /// Number of ones among the first `len` positions.
    pub fn prefix_weight(&self, len: usize) -> usize {
        self.bits[..len.min(self.bits.len())].iter().filter(|&&b| b).count()
    }
    pub fn concat(&self, other: &IdVec) -> IdVec {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        IdVec { bits, kind: self.kind }
    }
}

pub fn identifying_vector(u: &Subspace) -> IdVec {
    let mut bits = vec![false; u.ambient()];
    for p in u.pivots() {
        bits[p] = true;
    }
    IdVec {
        bits,
        kind: IdKind::Forward,
    }
}

pub fn inverse_identifying_vector(u: &Subspace) -> IdVec {
    let mut bits = vec![false; u.ambient()];
    for p in u.rrief().1 {
        bits[p] = true;
    }
    IdVec {
        bits,
        kind: IdKind::Inverse,
    }
}

pub fn hamming_guard(u: &IdVec, v: &IdVec) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.bits.iter().zip(&v.bits).filter(|(a, b)| a != b).count())
}

/// A constant-weight binary code with a declared minimum Hamming distance.
#[derive(Clone, Debug)]
pub struct CwcSet {
    vectors: Vec<IdVec>,
    n: usize,
    weight: usize,
    min_hd: usize,
}

impl CwcSet {
    pub fn new(vectors: Vec<IdVec>, min_hd: usize) -> Result<CwcSet> {
        let first = vectors.first().ok_or_else(|| Error::NotACwc("no vectors".into()))?;
        let (n, weight, kind) = (first.len(), first.weight(), first.kind());
        for v in &vectors {
            if v.len() != n || v.weight() != weight || v.kind() != kind {
                return Err(Error::NotACwc(format!(
                    "{:?} differs in length, weight or kind from {:?}",
                    v, first
                )));
            }
        }
        for (i, a) in vectors.iter().enumerate() {
            for b in &vectors[i + 1..] {
                let d = hamming_guard(a, b)?;
                if d < min_hd {
                    return Err(Error::NotACwc(format!("d_H({}, {}) = {} < {}", a, b, d, min_hd)));
                }
            }
        }
        Ok(CwcSet {
            vectors,
            n,
            weight,
            min_hd,
        })
    }

    /// Parses comma-separated bit strings.
    pub fn parse(s: &str, kind: IdKind, min_hd: usize) -> Result<CwcSet> {
        let vs: Result<Vec<IdVec>> = s.split(',').map(|x| IdVec::parse(x, kind)).collect();
        CwcSet::new(vs?, min_hd)
    }

    pub fn vectors(&self) -> &[IdVec] {
        &self.vectors
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn weight(&self) -> usize {
        self.weight
    }
    pub fn min_hd(&self) -> usize {
        self.min_hd
    }
    pub fn kind(&self) -> IdKind {
        self.vectors[0].kind()
    }
}

/// Echelon Ferrers layout of an identifying vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonLayout {
    /// Ferrers diagram, mirrored for inverse vectors.
    pub diagram: FerrersDiagram,
    /// Pivot column of each generator row (ascending for forward, descending for inverse).
    pub pivots: Vec<usize>,
    /// Echelon-form column of each displayed diagram column.
    pub dot_cols: Vec<usize>,
}

pub fn ferrers_of(v: &IdVec) -> Result<EchelonLayout> {
    if v.weight() == 0 {
        return Err(Error::BadArguments("identifying vector of weight 0".into()));
    }
    let mut pivots = v.ones();
    if v.kind() == IdKind::Inverse {
        pivots.reverse();
    }
    let mut counts = Vec::new();
    let mut dot_cols = Vec::new();
    for j in (0..v.len()).filter(|&j| !v.bits[j]) {
        let c = match v.kind() {
            IdKind::Forward => pivots.iter().filter(|&&p| p < j).count(),
            IdKind::Inverse => pivots.iter().filter(|&&p| p > j).count(),
        };
        if c > 0 {
            counts.push(c);
            dot_cols.push(j);
        }
    }
    let diagram = match v.kind() {
        IdKind::Forward => FerrersDiagram::new(counts)?,
        IdKind::Inverse => {
            counts.reverse();
            FerrersDiagram::new(counts)?.inverse()
        }
    };
    Ok(EchelonLayout {
        diagram,
        pivots,
        dot_cols,
    })
}

impl EchelonLayout {
    /// Generator with `mat` written into the dots (RREF or RRIEF layout).
    pub fn fill(&self, field: &'static FieldCtx, n: usize, mat: &MatGF) -> MatGF {
        let k = self.pivots.len();
        let mut g = MatGF::zero(field, k, n);
        for (r, &p) in self.pivots.iter().enumerate() {
            g.set(r, p, 1);
        }
        for (c, &j) in self.dot_cols.iter().enumerate() {
            for r in 0..mat.rows() {
                if self.diagram.is_dot(r, c) {
                    g.set(r, j, mat.get(r, c));
                }
            }
        }
        g
    }

    /// Reads the dot entries of an echelon generator back into a diagram-shaped matrix.
    pub fn extract(&self, gen: &MatGF) -> MatGF {
        let (m, n) = self.diagram.shape();
        let mut out = MatGF::zero(gen.field(), m, n);
        for (c, &j) in self.dot_cols.iter().enumerate() {
            for r in 0..m {
                if self.diagram.is_dot(r, c) {
                    out.set(r, c, gen.get(r, j));
                }
            }
        }
        out
    }
}

/// Something that can be lifted on an identifying vector.
pub trait MatrixSource {
    fn matrices(&self) -> Result<Vec<MatGF>>;
    fn delta(&self) -> usize;
    /// Diagram the matrices claim to live on, if any.
    fn diagram(&self) -> Option<&FerrersDiagram> {
        None
    }
}

impl MatrixSource for FdrmCode {
    fn matrices(&self) -> Result<Vec<MatGF>> {
        self.codewords()
    }
    fn delta(&self) -> usize {
        FdrmCode::delta(self)
    }
    fn diagram(&self) -> Option<&FerrersDiagram> {
        Some(FdrmCode::diagram(self))
    }
}

impl MatrixSource for MatrixSet {
    fn matrices(&self) -> Result<Vec<MatGF>> {
        Ok(self.members.clone())
    }
    fn delta(&self) -> usize {
        self.delta
    }
}

/// Lifts every matrix of `code` into the echelon Ferrers form of `v`.
pub fn lift_on_vector<S: MatrixSource + ?Sized>(v: &IdVec, code: &S, field: &'static FieldCtx) -> Result<Cdc> {
    let layout = ferrers_of(v)?;
    if let Some(d) = code.diagram() {
        if *d != layout.diagram {
            return Err(Error::DiagramMismatch(format!(
                "code on {} but {} needs {}",
                d, v, layout.diagram
            )));
        }
    }
    let mut out = Cdc::new(
        field,
        v.len(),
        v.weight(),
        2 * code.delta(),
        &format!("lifted on {:?}", v),
    );
    for mat in code.matrices()? {
        if !layout.diagram.supports(&mat) {
            return Err(Error::DiagramMismatch(format!(
                "matrix {:?} is not supported on {}",
                mat, layout.diagram
            )));
        }
        out.insert(Subspace::from_generators(&layout.fill(field, v.len(), &mat)))?;
    }
    Ok(out)
}

/// Union of lifted codes over a constant-weight code with distance 2·delta.
pub fn multilevel(entries: &[(IdVec, FdrmCode)], delta: usize) -> Result<Cdc> {
    let vecs: Vec<IdVec> = entries.iter().map(|(v, _)| v.clone()).collect();
    let cwc = CwcSet::new(vecs, 2 * delta)?;
    let field = entries[0].1.field();
    let mut out = Cdc::new(field, cwc.n(), cwc.weight(), 2 * delta, "multilevel");
    for (v, code) in entries {
        if code.delta() < delta {
            return Err(Error::BadArguments(format!(
                "code on {} has distance {} < {}",
                v,
                code.delta(),
                delta
            )));
        }
        let mut part = lift_on_vector(v, code, field)?;
        part.set_d(2 * delta);
        out.union(part)?;
    }
    Ok(out)
}

/// Places the columns of `f` outside the pivot columns of the echelon matrix `b`.
///
/// `b` must have full row rank with strictly increasing leading columns; the
/// entries above later pivots need not be cleared.
pub fn phi_embed(b: &MatGF, f: &MatGF) -> Result<MatGF> {
    let lead = b.leading_columns();
    let pivots: Vec<usize> = lead.iter().flatten().copied().collect();
    if pivots.len() != b.rows() || pivots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotRref(format!("{:?} is not a full-rank echelon matrix", b)));
    }
    let n = b.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if f.cols() != free.len() {
        return Err(Error::BadShape(format!(
            "F has {} columns, expected {}",
            f.cols(),
            free.len()
        )));
    }
    let mut out = MatGF::zero(f.field(), f.rows(), n);
    for (j, &c) in free.iter().enumerate() {
        for r in 0..f.rows() {
            out.set(r, c, f.get(r, j));
        }
    }
    Ok(out)
}

/// An ordered family of codes on common (q, n, k) with intra- and inter-code distances.
#[derive(Clone, Debug)]
pub struct CdcList {
    pub lists: Vec<Cdc>,
    pub intra_d: usize,
    pub inter_d: usize,
    pub restricted_rank: Option<usize>,
}

impl CdcList {
    pub fn len(&self) -> usize {
        self.lists.len()
    }
    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }
    pub fn sizes(&self) -> Vec<BigCount> {
        self.lists.iter().map(|c| BigUint::from(c.len())).collect()
    }
    pub fn profile(&self) -> ListProfile {
        ListProfile::from_sizes(&self.sizes())
    }
    /// Concatenation of lists built from the parts of a split constant-weight code.
    pub fn concat(parts: Vec<CdcList>) -> Result<CdcList> {
        let first = parts.first().ok_or_else(|| Error::BadArguments("no lists".into()))?;
        let (intra_d, inter_d, restricted_rank) = (first.intra_d, first.inter_d, first.restricted_rank);
        let mut lists = Vec::new();
        for p in parts {
            if p.intra_d != intra_d || p.inter_d != inter_d {
                return Err(Error::ParameterMismatch("lists with different distances".into()));
            }
            lists.extend(p.lists);
        }
        Ok(CdcList {
            lists,
            intra_d,
            inter_d,
            restricted_rank,
        })
    }
    /// Stable sort by size, largest first.
    pub fn sorted_desc(mut self) -> CdcList {
        self.lists.sort_by_key(|c| std::cmp::Reverse(c.len()));
        self
    }
    pub fn truncated(mut self, len: usize) -> CdcList {
        self.lists.truncate(len);
        self
    }
}

/// Run-length description of a list of codes: (size, how many codes of that size).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListProfile {
    pub runs: Vec<(BigCount, BigCount)>,
}

impl ListProfile {
    pub fn from_sizes(sizes: &[BigCount]) -> ListProfile {
        let mut runs: Vec<(BigCount, BigCount)> = Vec::new();
        for s in sizes {
            match runs.last_mut() {
                Some((size, count)) if size == s => *count += 1u32,
                _ => runs.push((s.clone(), BigUint::one())),
            }
        }
        ListProfile { runs }
    }
    pub fn len(&self) -> BigCount {
        self.runs.iter().map(|(_, c)| c).sum()
    }
    pub fn is_empty(&self) -> bool {
        self.len().is_zero()
    }
    pub fn codewords(&self) -> BigCount {
        self.runs.iter().map(|(s, c)| s * c).sum()
    }
    pub fn concat(parts: &[ListProfile]) -> ListProfile {
        ListProfile {
            runs: parts.iter().flat_map(|p| p.runs.iter().cloned()).collect(),
        }
    }
    /// Runs merged by size, largest first.
    pub fn sorted_desc(&self) -> ListProfile {
        let mut runs = self.runs.clone();
        runs.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(BigCount, BigCount)> = Vec::new();
        for (s, c) in runs {
            if c.is_zero() {
                continue;
            }
            match merged.last_mut() {
                Some((ms, mc)) if *ms == s => *mc += c,
                _ => merged.push((s, c)),
            }
        }
        ListProfile { runs: merged }
    }
    /// Explicit sizes; refuses lists longer than `limit`.
    pub fn expand(&self, limit: usize) -> Result<Vec<BigCount>> {
        if self.len() > BigUint::from(limit) {
            return Err(Error::TooLarge(format!("list of {} codes", self.len())));
        }
        let mut out = Vec::new();
        for (s, c) in &self.runs {
            let c: usize = c.try_into().expect("checked above");
            out.extend(std::iter::repeat_n(s.clone(), c));
        }
        Ok(out)
    }
}

/// Index pairing of two size lists, each sorted descending, and its total Σ a·b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    pub total: BigCount,
}

/// Pairs the i-th largest of `a` with the i-th largest of `b` (stable), truncating to the shorter list.
pub fn reorder_pairing(a: &[BigCount], b: &[BigCount]) -> Pairing {
    let order = |x: &[BigCount]| {
        let mut idx: Vec<usize> = (0..x.len()).collect();
        idx.sort_by(|&i, &j| x[j].cmp(&x[i]));
        idx
    };
    let (oa, ob) = (order(a), order(b));
    let pairs: Vec<(usize, usize)> = oa.into_iter().zip(ob).collect();
    let total = pairs.iter().map(|&(i, j)| &a[i] * &b[j]).sum();
    Pairing { pairs, total }
}

/// Σ a_i·b_i over run-length profiles after sorting both descending, truncated to the shorter.
pub fn paired_sum(a: &ListProfile, b: &ListProfile) -> BigCount {
    let a = a.sorted_desc().runs;
    let b = b.sorted_desc().runs;
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (a.first().map(|r| r.1.clone()), b.first().map(|r| r.1.clone()));
    let mut total = BigUint::zero();
    while let (Some(ca), Some(cb)) = (ra.clone(), rb.clone()) {
        let take = ca.clone().min(cb.clone());
        total += &take * &a[i].0 * &b[j].0;
        let (la, lb) = (ca - &take, cb - &take);
        ra = if la.is_zero() {
            i += 1;
            a.get(i).map(|r| r.1.clone())
        } else {
            Some(la)
        };
        rb = if lb.is_zero() {
            j += 1;
            b.get(j).map(|r| r.1.clone())
        } else {
            Some(lb)
        };
    }
    total
}

/// Per-vector data of a coset list: D_v = q^{b1}, s_v = q^{b2-b1}.
#[derive(Clone, Debug)]
pub struct VectorCosets {
    pub vector: IdVec,
    pub layout: EchelonLayout,
    pub bound1: usize,
    pub bound2: usize,
}

fn vector_cosets(cwc: &CwcSet, delta1: usize, delta2: usize) -> Result<Vec<VectorCosets>> {
    if !(delta1 > delta2 && delta2 >= 1) {
        return Err(Error::BadArguments(format!(
            "need delta1 > delta2 >= 1, got {} {}",
            delta1, delta2
        )));
    }
    if cwc.min_hd() < 2 * delta1 {
        return Err(Error::NotACwc(format!(
            "declared distance {} < {}",
            cwc.min_hd(),
            2 * delta1
        )));
    }
    cwc.vectors()
        .iter()
        .map(|v| {
            let layout = ferrers_of(v)?;
            let bound1 = layout.diagram.singleton_bound(delta1)?;
            let bound2 = layout.diagram.singleton_bound(delta2)?;
            Ok(VectorCosets {
                vector: v.clone(),
                layout,
                bound1,
                bound2,
            })
        })
        .collect()
}

fn check_kind(cwc: &CwcSet, inverse: bool) -> Result<()> {
    let want = if inverse { IdKind::Inverse } else { IdKind::Forward };
    if cwc.kind() != want {
        return Err(Error::BadArguments(format!(
            "vectors are {:?}, list asks for {:?}",
            cwc.kind(),
            want
        )));
    }
    Ok(())
}

/// Count mode: the sizes of the list built from `cwc`, without materializing it.
///
/// Every vector's nested pair is constructed (not just assumed), so a vector
/// without an implemented route fails with `ConditionNotMet`. With `r = Some(0)`
/// only the coset holding the zero matrix survives for each vector.
pub fn coset_list_profile(
    cwc: &CwcSet,
    delta1: usize,
    delta2: usize,
    q: u32,
    inverse: bool,
    r: Option<usize>,
) -> Result<ListProfile> {
    check_kind(cwc, inverse)?;
    let data = vector_cosets(cwc, delta1, delta2)?;
    for vc in &data {
        nested_pair(&vc.layout.diagram, delta1, delta2, q)
            .map_err(|e| Error::ConditionNotMet(format!("vector {}: {}", vc.vector, e)))?;
    }
    match r {
        Some(0) => {
            return Ok(ListProfile {
                runs: vec![(BigUint::from(data.len()), BigUint::one())],
            })
        }
        Some(_) => {
            let built = build_coset_cdc_lists(cwc, delta1, delta2, q, inverse, r)?;
            return Ok(built.profile());
        }
        None => {}
    }
    let qb = BigUint::from(q);
    let mut items: Vec<(BigCount, BigCount)> = data
        .iter()
        .map(|vc| {
            (
                Pow::pow(&qb, vc.bound2 as u32 - vc.bound1 as u32),
                Pow::pow(&qb, vc.bound1 as u32),
            )
        })
        .collect();
    items.sort_by(|a, b| b.0.cmp(&a.0));
    let mut runs = Vec::new();
    let mut acc = BigUint::zero();
    let prefix: Vec<BigCount> = items
        .iter()
        .map(|(_, d)| {
            acc += d;
            acc.clone()
        })
        .collect();
    for i in (0..items.len()).rev() {
        let next = items.get(i + 1).map_or_else(BigUint::zero, |x| x.0.clone());
        let count = &items[i].0 - next;
        if !count.is_zero() {
            runs.push((prefix[i].clone(), count));
        }
    }
    Ok(ListProfile { runs })
}

/// Build mode: materializes the list, code j being the union over vectors of their j-th cosets.
pub fn build_coset_cdc_lists(
    cwc: &CwcSet,
    delta1: usize,
    delta2: usize,
    q: u32,
    inverse: bool,
    r: Option<usize>,
) -> Result<CdcList> {
    check_kind(cwc, inverse)?;
    let field = FieldCtx::get(q)?;
    let data = vector_cosets(cwc, delta1, delta2)?;
    let mut per_vector: Vec<(IdVec, Vec<MatrixSet>)> = Vec::new();
    for vc in &data {
        let pair = nested_pair(&vc.layout.diagram, delta1, delta2, q)
            .map_err(|e| Error::ConditionNotMet(format!("vector {}: {}", vc.vector, e)))?;
        let sets = if inverse {
            coset_list_inverse(&pair, r)?.sets
        } else {
            let mut sets = coset_list(&pair)?;
            if let Some(r) = r {
                sets.iter_mut().for_each(|s| s.members.retain(|x| x.rank() <= r));
                if let Some(i) = sets.iter().position(MatrixSet::is_empty) {
                    return Err(Error::EmptyAfterRestriction(i));
                }
            }
            sets
        };
        per_vector.push((vc.vector.clone(), sets));
    }
    per_vector.sort_by_key(|v| std::cmp::Reverse(v.1.len()));
    let len = per_vector.first().map_or(0, |p| p.1.len());
    let mut lists = Vec::with_capacity(len);
    for j in 0..len {
        let mut code = Cdc::new(
            field,
            cwc.n(),
            cwc.weight(),
            2 * delta1,
            &format!("coset list entry {}", j),
        );
        for (v, sets) in &per_vector {
            if let Some(set) = sets.get(j) {
                let mut part = lift_on_vector(v, set, field)?;
                part.set_d(2 * delta1);
                code.union(part)?;
            }
        }
        lists.push(code);
    }
    Ok(CdcList {
        lists,
        intra_d: 2 * delta1,
        inter_d: 2 * delta2,
        restricted_rank: r,
    })
}

fn list_shape(list: &CdcList, what: &str) -> Result<(usize, usize)> {
    let first = list
        .lists
        .first()
        .ok_or_else(|| Error::ParameterMismatch(format!("{} is empty", what)))?;
    let (n, k) = (first.n(), first.k());
    if list.lists.iter().any(|c| (c.n(), c.k()) != (n, k)) {
        return Err(Error::ParameterMismatch(format!("{} mixes parameters", what)));
    }
    Ok((n, k))
}

/// Block codewords rs([A φ_B(H); 0 B]) over paired list entries, truncated to the shorter list.
pub fn coset_construction(a: &CdcList, b: &CdcList, h: &LinearMatrixCode) -> Result<Cdc> {
    let (n1, k1) = list_shape(a, "A")?;
    let (n2, k2) = list_shape(b, "B")?;
    let (n, k) = (n1 + n2, k1 + k2);
    if a.intra_d != b.intra_d {
        return Err(Error::ParameterMismatch(format!(
            "A has distance {} but B has {}",
            a.intra_d, b.intra_d
        )));
    }
    let d = a.intra_d;
    if a.inter_d + b.inter_d != d {
        return Err(Error::ParameterMismatch(format!(
            "fixed distances {} + {} != {}",
            a.inter_d, b.inter_d, d
        )));
    }
    if n < 2 * k || n1 < k1 || n2 < k2 {
        return Err(Error::ParameterMismatch(format!("need n >= 2k, got n={} k={}", n, k)));
    }
    if h.shape() != (k1, n2 - k2) || 2 * h.delta() < d {
        return Err(Error::ParameterMismatch(format!(
            "H must be {}x{} with distance >= {}, got {:?} with {}",
            k1,
            n2 - k2,
            d / 2,
            h.shape(),
            h.delta()
        )));
    }
    let field = h.field();
    let hs = h.codewords()?;
    let s = a.len().min(b.len());
    let mut out = Cdc::new(field, n, k, d, "coset construction");
    if a.len() != b.len() {
        out.note(format!(
            "lists truncated to s = {} (A has {}, B has {})",
            s,
            a.len(),
            b.len()
        ));
    }
    for i in 0..s {
        for ua in a.lists[i].members() {
            for ub in b.lists[i].members() {
                for hm in &hs {
                    let phi = phi_embed(ub.gen(), hm)?;
                    let mut g = MatGF::zero(field, k, n);
                    g.set_block(0, 0, ua.gen());
                    g.set_block(0, n1, &phi);
                    g.set_block(k1, n1, ub.gen());
                    out.insert(Subspace::from_generators(&g))?;
                }
            }
        }
    }
    Ok(out)
}

/// {rs(U1 | M1)} ∪ {rs(M2 | U2)}.
pub fn parallel_linkage(u1: &Cdc, u2: &Cdc, m1: &LinearMatrixCode, m2: &MatrixSet) -> Result<Cdc> {
    let (n1, n2, k, d) = (u1.n(), u2.n(), u1.k(), u1.d());
    if u2.k() != k || u2.d() != d {
        return Err(Error::ParameterMismatch("U1 and U2 differ in k or d".into()));
    }
    if n1 < k || n2 < k || 2 * k < d {
        return Err(Error::ParameterMismatch(format!(
            "need n_i >= k >= d/2, got n1={} n2={} k={} d={}",
            n1, n2, k, d
        )));
    }
    if m1.shape() != (k, n2) || 2 * m1.delta() < d {
        return Err(Error::ParameterMismatch(format!(
            "M1 must be {}x{} with distance >= {}",
            k,
            n2,
            d / 2
        )));
    }
    if (m2.m, m2.n) != (k, n1) || 2 * m2.delta < d {
        return Err(Error::ParameterMismatch(format!(
            "M2 must be {}x{} with distance >= {}",
            k,
            n1,
            d / 2
        )));
    }
    if let Some(x) = m2.members.iter().find(|x| x.rank() > k - d / 2) {
        return Err(Error::ParameterMismatch(format!(
            "M2 member of rank {} > {}",
            x.rank(),
            k - d / 2
        )));
    }
    let field = u1.field();
    let mut out = Cdc::new(field, n1 + n2, k, d, "parallel linkage");
    let m1s = m1.codewords()?;
    for u in u1.members() {
        for m in &m1s {
            out.insert(Subspace::from_generators(&u.gen().hstack(m)))?;
        }
    }
    for u in u2.members() {
        for m in &m2.members {
            out.insert(Subspace::from_generators(&m.hstack(u.gen())))?;
        }
    }
    Ok(out)
}

/// Header fields `key=value` after a fixed prefix, in order.
fn header_fields(line: &str, prefix: &str, keys: &[&str]) -> std::result::Result<Vec<String>, String> {
    let mut parts = line.split_whitespace();
    for p in prefix.split_whitespace() {
        if parts.next() != Some(p) {
            return Err(format!("expected header starting with {:?}", prefix));
        }
    }
    let mut out = Vec::new();
    for &k in keys {
        let f = parts.next().ok_or_else(|| format!("missing {}=", k))?;
        let v = f
            .strip_prefix(k)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| format!("expected {}=, got {:?}", k, f))?;
        out.push(v.to_string());
    }
    if let Some(extra) = parts.next() {
        return Err(format!("unexpected {:?}", extra));
    }
    Ok(out)
}

/// Blocks of digit lines separated by blank lines, with the line number of each block's first row.
fn digit_blocks(lines: &[(usize, &str)], rows: usize) -> Result<Vec<(usize, Vec<String>)>> {
    let mut out = Vec::new();
    let mut cur: Vec<String> = Vec::new();
    let mut start = 0;
    for &(no, l) in lines {
        let l = l.trim_end();
        if l.is_empty() {
            if !cur.is_empty() {
                return Err(Error::Parse {
                    line: no,
                    msg: format!("block has {} rows, expected {}", cur.len(), rows),
                });
            }
            continue;
        }
        if cur.is_empty() {
            start = no;
        }
        cur.push(l.to_string());
        if cur.len() == rows {
            out.push((start, std::mem::take(&mut cur)));
        }
    }
    if !cur.is_empty() {
        return Err(Error::Parse {
            line: start,
            msg: format!("block has {} rows, expected {}", cur.len(), rows),
        });
    }
    Ok(out)
}

fn parse_block(field: &'static FieldCtx, start: usize, rows: &[String], cols: usize) -> Result<MatGF> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(Error::Parse {
                line: start + i,
                msg: format!("expected {} digits, got {:?}", cols, r),
            });
        }
        if let Some(c) = r.chars().find(|c| c.to_digit(10).is_none_or(|d| d >= field.q())) {
            return Err(Error::Parse {
                line: start + i,
                msg: format!("{:?} is not an element of GF({})", c, field.q()),
            });
        }
    }
    let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
    MatGF::from_digits(field, &refs).map_err(|e| Error::Parse {
        line: start,
        msg: e.to_string(),
    })
}

fn numbered(text: &str) -> Vec<(usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect()
}

fn parse_num<T: std::str::FromStr>(v: &str, line: usize) -> Result<T> {
    v.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad number {:?}", v),
    })
}

impl Cdc {
    /// Text form: a `cdc v1` header, then one RREF generator per blank-line separated block.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "cdc v1 q={} n={} k={} d={} count={}\n",
            self.q(),
            self.n,
            self.k,
            self.d,
            self.len()
        );
        for (i, u) in self.members.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            for r in 0..self.k {
                s.push_str(&u.gen().row_digits(r));
                s.push('\n');
            }
        }
        s
    }

    /// Parses [`Cdc::to_text`] output; generators must already be in RREF.
    pub fn from_text(text: &str) -> Result<Cdc> {
        let lines = numbered(text);
        let (&(_, head), body) = lines.split_first().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let f = header_fields(head, "cdc v1", &["q", "n", "k", "d", "count"])
            .map_err(|msg| Error::Parse { line: 1, msg })?;
        let q: u32 = parse_num(&f[0], 1)?;
        let (n, k, d, count): (usize, usize, usize, usize) = (
            parse_num(&f[1], 1)?,
            parse_num(&f[2], 1)?,
            parse_num(&f[3], 1)?,
            parse_num(&f[4], 1)?,
        );
        let field = FieldCtx::get(q).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        if k == 0 || k > n {
            return Err(Error::Parse {
                line: 1,
                msg: format!("need 1 <= k <= n, got k={} n={}", k, n),
            });
        }
        let blocks = digit_blocks(body, k)?;
        if blocks.len() != count {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header says {} codewords, found {}", count, blocks.len()),
            });
        }
        let mut out = Cdc::new(field, n, k, d, "read from text");
        for (start, rows) in blocks {
            let g = parse_block(field, start, &rows, n)?;
            let u = Subspace::from_rref(g).map_err(|e| Error::Parse {
                line: start,
                msg: e.to_string(),
            })?;
            if out.contains(&u) {
                return Err(Error::Parse {
                    line: start,
                    msg: "repeated codeword".into(),
                });
            }
            out.insert(u)?;
        }
        Ok(out)
    }
}

impl FdrmCode {
    /// Text form: an `fdrmc v1` header, then the basis matrices as blank-line separated blocks.
    pub fn to_text(&self) -> String {
        let (m, n) = self.code().shape();
        let mut s = format!(
            "fdrmc v1 q={} m={} n={} delta={} diagram={} dim={}\n",
            self.field().q(),
            m,
            n,
            self.delta(),
            self.diagram(),
            self.dim()
        );
        for (i, b) in self.code().basis().iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            for r in 0..m {
                s.push_str(&b.row_digits(r));
                s.push('\n');
            }
        }
        s
    }

    /// Parses [`FdrmCode::to_text`] output without checking support, so audits can see leaks.
    pub fn from_text(text: &str) -> Result<FdrmCode> {
        let lines = numbered(text);
        let (&(_, head), body) = lines.split_first().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let f = header_fields(head, "fdrmc v1", &["q", "m", "n", "delta", "diagram", "dim"])
            .map_err(|msg| Error::Parse { line: 1, msg })?;
        let q: u32 = parse_num(&f[0], 1)?;
        let (m, n, delta, dim): (usize, usize, usize, usize) = (
            parse_num(&f[1], 1)?,
            parse_num(&f[2], 1)?,
            parse_num(&f[3], 1)?,
            parse_num(&f[5], 1)?,
        );
        let field = FieldCtx::get(q).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        let diagram = FerrersDiagram::parse(&f[4]).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        if diagram.shape() != (m, n) {
            return Err(Error::Parse {
                line: 1,
                msg: format!("{} is not {}x{}", diagram, m, n),
            });
        }
        let blocks = if m == 0 { Vec::new() } else { digit_blocks(body, m)? };
        if blocks.len() != dim {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header says dimension {}, found {} matrices", dim, blocks.len()),
            });
        }
        let basis = blocks
            .iter()
            .map(|(start, rows)| parse_block(field, *start, rows, n))
            .collect::<Result<Vec<_>>>()?;
        let code = LinearMatrixCode::new(field, m, n, basis, delta).map_err(|e| Error::Parse {
            line: 2,
            msg: e.to_string(),
        })?;
        Ok(FdrmCode::new_unchecked(diagram, code))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ferrers::optimal_fdrmc;

    fn f2() -> &'static FieldCtx {
        FieldCtx::get(2).unwrap()
    }

    #[test]
    fn example_identifying_vectors() {
        let e = MatGF::from_digits(f2(), &["10001", "00101", "00010"]).unwrap();
        let u = Subspace::from_generators(&e);
        assert_eq!(identifying_vector(&u).to_string(), "10110");
        assert_eq!(inverse_identifying_vector(&u).to_string(), "00111");
        let layout = ferrers_of(&identifying_vector(&u)).unwrap();
        assert_eq!(layout.diagram, FerrersDiagram::new(vec![1, 3]).unwrap());
        let inv = ferrers_of(&inverse_identifying_vector(&u)).unwrap();
        assert_eq!(inv.diagram.normal(), FerrersDiagram::full(3, 2));
        assert_eq!(
            inv.extract(&u.rrief().0),
            MatGF::from_digits(f2(), &["10", "00", "10"]).unwrap()
        );
        assert_eq!(
            layout.extract(u.gen()),
            MatGF::from_digits(f2(), &["01", "01", "00"]).unwrap()
        );
    }

    #[test]
    fn trivial_vectors() {
        let id = MatGF::identity(f2(), 2).hstack(&MatGF::zero(f2(), 2, 2));
        let u = Subspace::from_generators(&id);
        assert_eq!(identifying_vector(&u).to_string(), "1100");
        let back = IdVec::forward("0011").unwrap();
        let layout = ferrers_of(&back).unwrap();
        assert!(layout.diagram.is_empty());
        let z = FdrmCode::zero(f2(), FerrersDiagram::empty(), 2);
        assert_eq!(lift_on_vector(&back, &z, f2()).unwrap().len(), 1);
    }

    #[test]
    fn lifting_on_vectors() {
        let v = IdVec::forward("1100").unwrap();
        let code = optimal_fdrmc(&FerrersDiagram::full(2, 2), 2, 2).unwrap();
        let c = lift_on_vector(&v, &code, f2()).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.min_distance(), Some(4));
        assert!(c.members().iter().all(|u| identifying_vector(u) == v));
        let wrong = optimal_fdrmc(&FerrersDiagram::full(2, 3), 2, 2).unwrap();
        assert!(matches!(
            lift_on_vector(&v, &wrong, f2()),
            Err(Error::DiagramMismatch(_))
        ));
        let v = IdVec::forward("10110").unwrap();
        let z = FdrmCode::zero(f2(), FerrersDiagram::new(vec![1, 3]).unwrap(), 5);
        let c = lift_on_vector(&v, &z, f2()).unwrap();
        assert_eq!(
            c.members()[0].gen(),
            &MatGF::from_digits(f2(), &["10000", "00100", "00010"]).unwrap()
        );
    }

    #[test]
    fn small_multilevel_code() {
        let a = IdVec::forward("1100").unwrap();
        let b = IdVec::forward("0011").unwrap();
        let ca = optimal_fdrmc(&FerrersDiagram::full(2, 2), 2, 2).unwrap();
        let cb = FdrmCode::zero(f2(), FerrersDiagram::empty(), 2);
        let c = multilevel(&[(a.clone(), ca.clone()), (b, cb)], 2).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.min_distance(), Some(4));
        let close = IdVec::forward("1010").unwrap();
        let cc = optimal_fdrmc(&ferrers_of(&close).unwrap().diagram, 2, 2).unwrap();
        assert!(matches!(multilevel(&[(a, ca), (close, cc)], 2), Err(Error::NotACwc(_))));
    }

    #[test]
    fn hamming() {
        let a = IdVec::forward("10110").unwrap();
        assert_eq!(hamming_guard(&a, &a).unwrap(), 0);
        let x = IdVec::forward("1100").unwrap();
        let y = IdVec::forward("0011").unwrap();
        assert_eq!(hamming_guard(&x, &y).unwrap(), 4);
        assert_eq!(hamming_guard(&a, &x).unwrap_err(), Error::LengthMismatch(5, 4));
    }

    #[test]
    fn phi_trivial_cases() {
        let b = MatGF::identity(f2(), 2).hstack(&MatGF::from_digits(f2(), &["11", "01"]).unwrap());
        let f = MatGF::from_digits(f2(), &["10", "11", "01"]).unwrap();
        let out = phi_embed(&b, &f).unwrap();
        assert_eq!(out, MatGF::zero(f2(), 3, 2).hstack(&f));
        let z = phi_embed(&b, &MatGF::zero(f2(), 3, 2)).unwrap();
        assert!(z.is_zero());
        let bad = MatGF::from_digits(f2(), &["0110", "1000"]).unwrap();
        assert!(matches!(phi_embed(&bad, &f), Err(Error::NotRref(_))));
    }

    #[test]
    fn pairing_and_profiles() {
        let big = |v: &[u32]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
        let p = reorder_pairing(&big(&[1, 5, 3]), &big(&[2, 7]));
        assert_eq!(p.pairs, vec![(1, 1), (2, 0)]);
        assert_eq!(p.total, BigUint::from(41u32));
        let a = ListProfile::from_sizes(&big(&[5, 5, 3]));
        let b = ListProfile::from_sizes(&big(&[4, 7, 7, 1]));
        let direct = reorder_pairing(&a.expand(10).unwrap(), &b.expand(10).unwrap()).total;
        assert_eq!(paired_sum(&a, &b), direct);
        assert_eq!(a.codewords(), BigUint::from(13u32));
    }

    #[test]
    fn coset_list_sizes_agree() {
        let cwc = CwcSet::parse("1100,0011", IdKind::Forward, 4).unwrap();
        let prof = coset_list_profile(&cwc, 2, 1, 2, false, None).unwrap();
        let built = build_coset_cdc_lists(&cwc, 2, 1, 2, false, None).unwrap();
        assert_eq!(built.profile(), prof);
        assert_eq!(
            built.sizes(),
            vec![BigUint::from(5u32), 4u32.into(), 4u32.into(), 4u32.into()]
        );
    }

    fn small_code(q: u32) -> Cdc {
        let entries = ["1100", "0011"]
            .iter()
            .map(|s| {
                let v = IdVec::forward(s).unwrap();
                let f = ferrers_of(&v).unwrap().diagram;
                (v, optimal_fdrmc(&f, 2, q).unwrap())
            })
            .collect::<Vec<_>>();
        multilevel(&entries, 2).unwrap()
    }

    #[test]
    fn text_round_trip() {
        for q in [2, 3, 4] {
            let c = small_code(q);
            let text = c.to_text();
            let back = Cdc::from_text(&text).unwrap();
            assert_eq!(back.len(), c.len());
            assert_eq!(back.to_text(), text);
        }
        let f = FerrersDiagram::parse("F^=[3,2,1]").unwrap();
        let code = optimal_fdrmc(&f, 2, 3).unwrap();
        let text = code.to_text();
        assert_eq!(FdrmCode::from_text(&text).unwrap().to_text(), text);
    }

    #[test]
    fn text_errors_name_lines() {
        let text = "cdc v1 q=2 n=4 k=2 d=4 count=2\n1000\n0100\n\n1010\n0010\n";
        match Cdc::from_text(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected parse error, got {:?}", other.map(|c| c.len())),
        }
        let short = "cdc v1 q=2 n=4 k=2 d=4 count=3\n1000\n0100\n";
        assert!(matches!(Cdc::from_text(short), Err(Error::Parse { line: 1, .. })));
        let junk = "cdc v1 q=2 n=4 k=2 d=4 count=1\n10x0\n0100\n";
        assert!(matches!(Cdc::from_text(junk), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            Cdc::from_text("subspaces\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
