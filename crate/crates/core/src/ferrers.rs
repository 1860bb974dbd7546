//! Ferrers diagrams and Ferrers diagram rank-metric codes (FDRMCs).
//!
//! A diagram is stored by ascending column dot counts with dots top- and
//! right-aligned. The `mirrored` flag marks the inverse orientation used by
//! RRIEF lifting: same dots, columns displayed right to left.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::linalg::{span_rank, BigCount, MatGF};
use crate::rankmetric::{enumerate_span, gabidulin, grmc_lower_bound, LinearMatrixCode, MatrixSet};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FerrersDiagram {
    cols: Vec<usize>,
    mirrored: bool,
}

impl fmt::Debug for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.profile().iter().map(|c| c.to_string()).collect();
        let tag = if self.mirrored { "F^" } else { "F" };
        write!(f, "{}=[{}]", tag, body.join(","))
    }
}

impl FerrersDiagram {
    pub fn new(cols: Vec<usize>) -> Result<FerrersDiagram> {
        if cols.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::BadArguments(format!(
                "column counts {:?} are not non-decreasing",
                cols
            )));
        }
        if cols.first() == Some(&0) {
            return Err(Error::BadArguments("empty columns are not allowed".into()));
        }
        Ok(FerrersDiagram { cols, mirrored: false })
    }

    pub fn full(m: usize, n: usize) -> FerrersDiagram {
        if m == 0 {
            return FerrersDiagram::empty();
        }
        FerrersDiagram {
            cols: vec![m; n],
            mirrored: false,
        }
    }

    pub fn empty() -> FerrersDiagram {
        FerrersDiagram {
            cols: Vec::new(),
            mirrored: false,
        }
    }

    /// Parses `F=[1,2,4]`, `[1,2,4]`, or the mirrored display form `F^=[4,2,1]`.
    pub fn parse(s: &str) -> Result<FerrersDiagram> {
        let s = s.trim();
        let (mirrored, s) = match s.strip_prefix("F^=") {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix("F=").unwrap_or(s)),
        };
        let inner = s
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::BadArguments(format!("diagram literal {:?}", s)))?;
        if inner.trim().is_empty() {
            return Ok(FerrersDiagram::empty());
        }
        let cols: std::result::Result<Vec<usize>, _> = inner.split(',').map(|x| x.trim().parse()).collect();
        let mut cols = cols.map_err(|e| Error::BadArguments(format!("diagram literal: {}", e)))?;
        if mirrored {
            cols.reverse();
            return Ok(FerrersDiagram::new(cols)?.inverse());
        }
        FerrersDiagram::new(cols)
    }

    /// Ascending column counts (orientation-free).
    pub fn cols(&self) -> &[usize] {
        &self.cols
    }
    /// Column counts left to right as displayed.
    pub fn profile(&self) -> Vec<usize> {
        let mut p = self.cols.clone();
        if self.mirrored {
            p.reverse();
        }
        p
    }
    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }
    pub fn rows(&self) -> usize {
        self.cols.last().copied().unwrap_or(0)
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows(), self.ncols())
    }
    pub fn dots(&self) -> usize {
        self.cols.iter().sum()
    }
    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// Dot test in displayed coordinates.
    pub fn is_dot(&self, r: usize, c: usize) -> bool {
        let idx = if self.mirrored { self.cols.len() - 1 - c } else { c };
        r < self.cols[idx]
    }

    /// Dot positions in displayed coordinates, row-major.
    pub fn dot_positions(&self) -> Vec<(usize, usize)> {
        let (m, n) = self.shape();
        (0..m)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|&(r, c)| self.is_dot(r, c))
            .collect()
    }

    /// Rows of `•` and `.`, one line per row.
    pub fn render(&self) -> String {
        let (m, n) = self.shape();
        (0..m)
            .map(|r| {
                (0..n)
                    .map(|c| if self.is_dot(r, c) { '•' } else { '.' })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Same dots in the normal orientation.
    pub fn normal(&self) -> FerrersDiagram {
        FerrersDiagram {
            cols: self.cols.clone(),
            mirrored: false,
        }
    }

    /// Column counts [ρ_m, ..., ρ_1] where ρ_r is the dot count of row r.
    pub fn transpose(&self) -> FerrersDiagram {
        let m = self.rows();
        let cols = (0..m)
            .rev()
            .map(|r| self.cols.iter().filter(|&&g| g > r).count())
            .collect();
        FerrersDiagram {
            cols,
            mirrored: self.mirrored,
        }
    }

    pub fn inverse(&self) -> FerrersDiagram {
        FerrersDiagram {
            cols: self.cols.clone(),
            mirrored: !self.mirrored,
        }
    }

    /// Dots left after deleting the first i rows and the rightmost delta-1-i columns.
    pub fn nu(&self, delta: usize, i: usize) -> Result<usize> {
        if delta == 0 || i >= delta {
            return Err(Error::BadArguments(format!(
                "need 0 <= i < delta, got i={} delta={}",
                i, delta
            )));
        }
        let keep = self.cols.len().saturating_sub(delta - 1 - i);
        Ok(self.cols[..keep].iter().map(|&g| g.saturating_sub(i)).sum())
    }

    /// Upper bound on the dimension of any FDRMC on this diagram.
    pub fn singleton_bound(&self, delta: usize) -> Result<usize> {
        if delta == 0 {
            return Err(Error::BadArguments("delta must be >= 1".into()));
        }
        let mut best = usize::MAX;
        for i in 0..delta {
            best = best.min(self.nu(delta, i)?);
        }
        Ok(best)
    }

    /// The rotation carrying a code on this diagram to a code on its transpose.
    pub fn transpose_matrix(&self, mat: &MatGF) -> MatGF {
        let (m, n) = mat.shape();
        let mut t = MatGF::zero(mat.field(), n, m);
        for r in 0..m {
            for c in 0..n {
                t.set(n - 1 - c, m - 1 - r, mat.get(r, c));
            }
        }
        t
    }

    /// True if `mat` is zero outside the dots.
    pub fn supports(&self, mat: &MatGF) -> bool {
        if mat.shape() != self.shape() {
            return false;
        }
        let (m, n) = self.shape();
        (0..m).all(|r| (0..n).all(|c| self.is_dot(r, c) || mat.get(r, c) == 0))
    }
}

pub fn transpose(f: &FerrersDiagram) -> FerrersDiagram {
    f.transpose()
}
pub fn inverse(f: &FerrersDiagram) -> FerrersDiagram {
    f.inverse()
}
pub fn nu(f: &FerrersDiagram, delta: usize, i: usize) -> Result<usize> {
    f.nu(delta, i)
}
pub fn singleton_bound(f: &FerrersDiagram, delta: usize) -> Result<usize> {
    f.singleton_bound(delta)
}

/// A linear rank-metric code whose codewords vanish outside a Ferrers diagram.
#[derive(Clone, Debug)]
pub struct FdrmCode {
    diagram: FerrersDiagram,
    code: LinearMatrixCode,
    optimal: bool,
}

impl FdrmCode {
    pub fn new(diagram: FerrersDiagram, code: LinearMatrixCode) -> Result<FdrmCode> {
        if code.shape() != diagram.shape() {
            return Err(Error::DiagramMismatch(format!(
                "code shape {:?} vs {}",
                code.shape(),
                diagram
            )));
        }
        if let Some(i) = code.basis().iter().position(|b| !diagram.supports(b)) {
            return Err(Error::DiagramMismatch(format!("basis matrix {} leaves {}", i, diagram)));
        }
        let bound = diagram.singleton_bound(code.delta())?;
        if code.dim() > bound {
            return Err(Error::BadArguments(format!(
                "dimension {} exceeds the bound {}",
                code.dim(),
                bound
            )));
        }
        Ok(FdrmCode {
            optimal: code.dim() == bound,
            diagram,
            code,
        })
    }

    /// Skips validation; used by audits that must see broken codes.
    pub fn new_unchecked(diagram: FerrersDiagram, code: LinearMatrixCode) -> FdrmCode {
        FdrmCode {
            diagram,
            code,
            optimal: false,
        }
    }

    pub fn zero(field: &'static FieldCtx, diagram: FerrersDiagram, delta: usize) -> FdrmCode {
        let (m, n) = diagram.shape();
        let optimal = diagram.singleton_bound(delta) == Ok(0);
        FdrmCode {
            code: LinearMatrixCode::zero_code(field, m, n, delta),
            diagram,
            optimal,
        }
    }

    pub fn diagram(&self) -> &FerrersDiagram {
        &self.diagram
    }
    pub fn code(&self) -> &LinearMatrixCode {
        &self.code
    }
    pub fn dim(&self) -> usize {
        self.code.dim()
    }
    pub fn delta(&self) -> usize {
        self.code.delta()
    }
    pub fn is_optimal(&self) -> bool {
        self.optimal
    }
    pub fn field(&self) -> &'static FieldCtx {
        self.code.field()
    }
    pub fn size(&self) -> BigCount {
        self.code.size()
    }
    pub fn codewords(&self) -> Result<Vec<MatGF>> {
        self.code.codewords()
    }

    /// The same code on the inverse diagram (columns reversed).
    pub fn mirror(&self) -> FdrmCode {
        let basis = self.code.basis().iter().map(MatGF::reverse_cols).collect();
        let (m, n) = self.code.shape();
        FdrmCode {
            diagram: self.diagram.inverse(),
            code: LinearMatrixCode::new(self.field(), m, n, basis, self.delta()).expect("reversal keeps independence"),
            optimal: self.optimal,
        }
    }

    /// The same code carried to the transposed diagram.
    pub fn transpose(&self) -> FdrmCode {
        let d = &self.diagram;
        let basis = if d.is_mirrored() {
            let n = d.normal();
            self.code
                .basis()
                .iter()
                .map(|b| n.transpose_matrix(&b.reverse_cols()).reverse_cols())
                .collect()
        } else {
            self.code.basis().iter().map(|b| d.transpose_matrix(b)).collect()
        };
        let (m, n) = self.code.shape();
        FdrmCode {
            diagram: d.transpose(),
            code: LinearMatrixCode::new(self.field(), n, m, basis, self.delta()).expect("rotation keeps independence"),
            optimal: self.optimal,
        }
    }
}

fn all_dots_code(field: &'static FieldCtx, f: &FerrersDiagram) -> LinearMatrixCode {
    let (m, n) = f.shape();
    let basis = f
        .dot_positions()
        .into_iter()
        .map(|(r, c)| {
            let mut b = MatGF::zero(field, m, n);
            b.set(r, c, 1);
            b
        })
        .collect();
    LinearMatrixCode::new(field, m, n, basis, 1).expect("unit matrices are independent")
}

/// Subcode of `code` vanishing outside the dots of `f` (normal orientation, same shape).
fn restrict_to_support(code: &LinearMatrixCode, f: &FerrersDiagram) -> LinearMatrixCode {
    let field = code.field();
    let (m, n) = code.shape();
    let outside: Vec<(usize, usize)> = (0..m)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| !f.is_dot(r, c))
        .collect();
    let d = code.dim();
    let mut cons = MatGF::zero(field, outside.len(), d);
    for (p, &(r, c)) in outside.iter().enumerate() {
        for (i, b) in code.basis().iter().enumerate() {
            cons.set(p, i, b.get(r, c));
        }
    }
    let basis = cons.nullspace().into_iter().map(|x| code.codeword(&x)).collect();
    LinearMatrixCode::new(field, m, n, basis, code.delta()).expect("kernel vectors give independent codewords")
}

/// Gabidulin code in one of the variants tried for a given diagram shape:
/// bit 0 reverses rows, bit 1 reverses columns.
fn gabidulin_variant(q: u32, m: usize, n: usize, delta: usize, variant: u8) -> Result<LinearMatrixCode> {
    let g = gabidulin(q, m, n, delta)?;
    if variant == 0 {
        return Ok(g);
    }
    let basis = g
        .basis()
        .iter()
        .map(|b| {
            let mut b = b.clone();
            if variant & 1 == 1 {
                b = b.transpose().reverse_cols().transpose();
            }
            if variant & 2 == 2 {
                b = b.reverse_cols();
            }
            b
        })
        .collect();
    LinearMatrixCode::new(g.field(), m, n, basis, delta)
}

/// A route to an optimal code: orientation (rotated to the transpose or not), Gabidulin
/// variant, and whether a square code on the top rows is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Route {
    rotated: bool,
    variant: u8,
    square: bool,
}

const fn route(rotated: bool, variant: u8, square: bool) -> Route {
    Route {
        rotated,
        variant,
        square,
    }
}

const ROUTES: [Route; 10] = [
    route(false, 0, false),
    route(true, 0, false),
    route(false, 1, false),
    route(true, 1, false),
    route(false, 2, false),
    route(true, 2, false),
    route(false, 3, false),
    route(true, 3, false),
    route(false, 0, true),
    route(true, 0, true),
];

/// Gabidulin intersection along a route, returned on the normal diagram `f`.
///
/// The square route takes an n×n code padded with zero rows below; it is optimal
/// when each of the rightmost delta-1 columns has at least n dots.
fn intersect_along(f: &FerrersDiagram, delta: usize, q: u32, route: Route) -> Result<LinearMatrixCode> {
    let target = if route.rotated { f.transpose() } else { f.clone() };
    let (m, n) = target.shape();
    let g = if route.square {
        if m < n || delta > n {
            return Ok(LinearMatrixCode::zero_code(
                FieldCtx::get(q)?,
                f.rows(),
                f.ncols(),
                delta,
            ));
        }
        let sq = gabidulin_variant(q, n, n, delta, route.variant)?;
        let pad = MatGF::zero(sq.field(), m - n, n);
        let basis = sq.basis().iter().map(|b| b.vstack(&pad)).collect();
        LinearMatrixCode::new(sq.field(), m, n, basis, delta)?
    } else {
        gabidulin_variant(q, m, n, delta, route.variant)?
    };
    let sub = restrict_to_support(&g, &target);
    if !route.rotated {
        return Ok(sub);
    }
    // rotate back: the rotation of the transposed diagram is the inverse rotation
    let basis = sub.basis().iter().map(|b| target.transpose_matrix(b)).collect();
    LinearMatrixCode::new(sub.field(), f.rows(), f.ncols(), basis, delta)
}

/// Attempts of the seeded search over equivalent Gabidulin codes.
const TRANSFORM_ATTEMPTS: usize = 1 << 14;

fn random_invertible(field: &'static FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> MatGF {
    let q = field.q();
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..q) as Elem).collect();
        let m = MatGF::from_vec(field, n, n, data).expect("square data");
        if m.rank() == n {
            return m;
        }
    }
}

/// Last resort: codes P·G·Q for seeded random invertible P, Q, one Gabidulin code per
/// distance, intersected with the support of `f` until every target dimension is met.
/// Shared P, Q keep the codes nested.
fn transformed_search(f: &FerrersDiagram, deltas: &[usize], q: u32) -> Result<Option<Vec<LinearMatrixCode>>> {
    let field = FieldCtx::get(q)?;
    let (m, n) = f.shape();
    let targets = deltas
        .iter()
        .map(|&d| f.singleton_bound(d))
        .collect::<Result<Vec<_>>>()?;
    let codes = deltas
        .iter()
        .map(|&d| gabidulin(q, m, n, d))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..TRANSFORM_ATTEMPTS {
        let p = random_invertible(field, m, &mut rng);
        let r = random_invertible(field, n, &mut rng);
        let mut out = Vec::with_capacity(codes.len());
        for (code, &t) in codes.iter().zip(&targets) {
            let basis = code.basis().iter().map(|b| p.mul(b).mul(&r)).collect();
            let moved = LinearMatrixCode::new(field, m, n, basis, code.delta())?;
            let sub = restrict_to_support(&moved, f);
            if sub.dim() != t {
                break;
            }
            out.push(sub);
        }
        if out.len() == codes.len() {
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// Optimal FDRMC on `f`: Gabidulin codes intersected with the support constraints,
/// accepted only when the dimension meets the Singleton-like bound.
pub fn optimal_fdrmc(f: &FerrersDiagram, delta: usize, q: u32) -> Result<FdrmCode> {
    let field = FieldCtx::get(q)?;
    if f.is_mirrored() {
        return Ok(optimal_fdrmc(&f.normal(), delta, q)?.mirror());
    }
    let bound = f.singleton_bound(delta)?;
    if bound == 0 {
        return Ok(FdrmCode::zero(field, f.clone(), delta));
    }
    if delta == 1 {
        return FdrmCode::new(f.clone(), all_dots_code(field, f));
    }
    for route in ROUTES {
        let code = intersect_along(f, delta, q, route)?;
        if code.dim() == bound {
            return FdrmCode::new(f.clone(), code);
        }
    }
    if let Some(mut found) = transformed_search(f, &[delta], q)? {
        return FdrmCode::new(f.clone(), found.remove(0));
    }
    Err(Error::ConditionNotMet(format!(
        "no Gabidulin intersection reaches dimension {} on {} with delta={}",
        bound, f, delta
    )))
}

/// Block composition: c1 top-left, a full m3×n3 block to its right, c2 below that block.
/// Basis matrix i pairs c1's i-th with c2's i-th.
pub fn compose_fdrmc(c1: &FdrmCode, c2: &FdrmCode, m3: usize, n3: usize) -> Result<FdrmCode> {
    if c1.dim() != c2.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", c1.dim(), c2.dim())));
    }
    if c1.diagram().is_mirrored() || c2.diagram().is_mirrored() {
        return Err(Error::BadArguments(
            "composition needs normally oriented diagrams".into(),
        ));
    }
    let (m1, n1) = c1.diagram().shape();
    let (m2, n2) = c2.diagram().shape();
    if m3 < m1 || n3 < n2 || m3 == 0 {
        return Err(Error::BadArguments(format!(
            "need m3 >= {} and n3 >= {}, got {}x{}",
            m1, n2, m3, n3
        )));
    }
    let mut cols: Vec<usize> = c1.diagram().cols().to_vec();
    let lead = n3 - n2;
    for j in 0..n3 {
        let below = if j >= lead { c2.diagram().cols()[j - lead] } else { 0 };
        cols.push(m3 + below);
    }
    let diagram = FerrersDiagram::new(cols)?;
    let (m, n) = diagram.shape();
    debug_assert_eq!((m, n), (m3 + m2, n1 + n3));
    let field = c1.field();
    let basis = c1
        .code()
        .basis()
        .iter()
        .zip(c2.code().basis())
        .map(|(a, b)| {
            let mut x = MatGF::zero(field, m, n);
            x.set_block(0, 0, a);
            x.set_block(m3, n1 + lead, b);
            x
        })
        .collect();
    let code = LinearMatrixCode::new(field, m, n, basis, c1.delta() + c2.delta())?;
    FdrmCode::new(diagram, code)
}

/// Column counts [1^{n-k-2}, f+1, 2f+1] with f = floor((k-1)/2).
pub fn th43_diagram(n: usize, k: usize) -> Result<FerrersDiagram> {
    if k < 2 || n < 2 * k {
        return Err(Error::BadArguments(format!("need n >= 2k >= 4, got n={} k={}", n, k)));
    }
    let f = (k - 1) / 2;
    let mut cols = vec![1; n - k - 2];
    cols.push(f + 1);
    cols.push(2 * f + 1);
    FerrersDiagram::new(cols)
}

/// Optimal distance-3 code of dimension floor((k-1)/2) on [`th43_diagram`].
pub fn th43_optimal_fdrmc(n: usize, k: usize, q: u32) -> Result<FdrmCode> {
    let diagram = th43_diagram(n, k)?;
    let field = FieldCtx::get(q)?;
    let f = (k - 1) / 2;
    if f == 0 {
        return Ok(FdrmCode::zero(field, diagram, 3));
    }
    let mut c1_cols = vec![1; n - k - 2];
    c1_cols.push(f + 1);
    let c1 = optimal_fdrmc(&FerrersDiagram::new(c1_cols)?, 2, q)?;
    let c2 = optimal_fdrmc(&FerrersDiagram::new(vec![f])?, 1, q)?;
    if c1.dim() != f || c2.dim() != f {
        return Err(Error::ConditionNotMet(format!(
            "pieces have dimensions {} and {}, expected {}",
            c1.dim(),
            c2.dim(),
            f
        )));
    }
    let code = compose_fdrmc(&c1, &c2, f + 1, 1)?;
    debug_assert_eq!(code.diagram(), &diagram);
    Ok(code)
}

/// c1 ⊆ c2 on one diagram, with a basis completion of c1 inside c2.
#[derive(Clone, Debug)]
pub struct NestedPair {
    pub c1: FdrmCode,
    pub c2: FdrmCode,
    /// Quotient basis: c1's basis followed by these spans c2.
    pub complement: Vec<MatGF>,
}

impl NestedPair {
    pub fn diagram(&self) -> &FerrersDiagram {
        self.c1.diagram()
    }
    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }
    /// Number of cosets of c1 in c2.
    pub fn coset_count(&self) -> BigCount {
        Pow::pow(BigUint::from(self.c1.field().q()), self.quotient_dim() as u32)
    }
}

fn complete_basis(field: &'static FieldCtx, sub: &[MatGF], sup: &[MatGF]) -> Vec<MatGF> {
    let mut cur = sub.to_vec();
    let mut comp = Vec::new();
    for b in sup {
        cur.push(b.clone());
        if span_rank(field, &cur) == cur.len() {
            comp.push(b.clone());
        } else {
            cur.pop();
        }
    }
    comp
}

/// Optimal codes with distances delta1 > delta2 on `f`, the first inside the second.
pub fn nested_pair(f: &FerrersDiagram, delta1: usize, delta2: usize, q: u32) -> Result<NestedPair> {
    if !(delta1 > delta2 && delta2 >= 1) {
        return Err(Error::BadArguments(format!(
            "need delta1 > delta2 >= 1, got {} and {}",
            delta1, delta2
        )));
    }
    if f.is_mirrored() {
        let p = nested_pair(&f.normal(), delta1, delta2, q)?;
        return Ok(NestedPair {
            complement: p.complement.iter().map(MatGF::reverse_cols).collect(),
            c1: p.c1.mirror(),
            c2: p.c2.mirror(),
        });
    }
    let field = FieldCtx::get(q)?;
    let b1 = f.singleton_bound(delta1)?;
    let b2 = f.singleton_bound(delta2)?;
    let (c1, c2) = if b1 == 0 || delta2 == 1 {
        (optimal_fdrmc(f, delta1, q)?, optimal_fdrmc(f, delta2, q)?)
    } else {
        let mut found = None;
        for route in ROUTES {
            let a = intersect_along(f, delta1, q, route)?;
            if a.dim() != b1 {
                continue;
            }
            let b = intersect_along(f, delta2, q, route)?;
            if b.dim() == b2 {
                found = Some((FdrmCode::new(f.clone(), a)?, FdrmCode::new(f.clone(), b)?));
                break;
            }
        }
        if found.is_none() {
            if let Some(mut codes) = transformed_search(f, &[delta1, delta2], q)? {
                let b = codes.pop().expect("two codes");
                let a = codes.pop().expect("two codes");
                found = Some((FdrmCode::new(f.clone(), a)?, FdrmCode::new(f.clone(), b)?));
            }
        }
        found.ok_or_else(|| {
            Error::ConditionNotMet(format!(
                "no common route gives optimal codes of distances {} and {} on {}",
                delta1, delta2, f
            ))
        })?
    };
    let mut all = c1.code().basis().to_vec();
    all.extend_from_slice(c2.code().basis());
    if span_rank(field, &all) != c2.dim() {
        return Err(Error::ConditionNotMet(format!(
            "distance-{} code is not inside the distance-{} code",
            delta1, delta2
        )));
    }
    let complement = complete_basis(field, c1.code().basis(), c2.code().basis());
    Ok(NestedPair { c1, c2, complement })
}

fn check_coset_budget(pair: &NestedPair) -> Result<()> {
    let q = pair.c1.field().q() as f64;
    let bits = |d: usize| d as f64 * q.log2();
    if bits(pair.quotient_dim()) > 20.0 + 1e-9 || bits(pair.c1.dim()) > 20.0 + 1e-9 {
        return Err(Error::TooLargeToEnumerate(format!(
            "{}^{} cosets of size {}^{}",
            q,
            pair.quotient_dim(),
            q,
            pair.c1.dim()
        )));
    }
    Ok(())
}

/// The cosets of c1 in c2, representatives in lexicographic order of quotient coefficients.
pub fn coset_list(pair: &NestedPair) -> Result<Vec<MatrixSet>> {
    check_coset_budget(pair)?;
    let field = pair.c1.field();
    let (m, n) = pair.diagram().shape();
    let reps = enumerate_span(field, m, n, &pair.complement, None);
    Ok(reps
        .iter()
        .map(|rep| MatrixSet {
            field,
            m,
            n,
            members: enumerate_span(field, m, n, pair.c1.code().basis(), Some(rep)),
            delta: pair.c1.delta(),
        })
        .collect())
}

/// Cosets for an inverse list, optionally keeping only members of rank at most r.
#[derive(Clone, Debug)]
pub struct RestrictedCosets {
    /// Non-empty restricted cosets, in coset order.
    pub sets: Vec<MatrixSet>,
    /// Indices of cosets that lost every member.
    pub emptied: Vec<usize>,
}

impl RestrictedCosets {
    /// Fails if any coset was emptied.
    pub fn strict(self) -> Result<Vec<MatrixSet>> {
        match self.emptied.first() {
            Some(&i) => Err(Error::EmptyAfterRestriction(i)),
            None => Ok(self.sets),
        }
    }
}

pub fn coset_list_inverse(pair: &NestedPair, r: Option<usize>) -> Result<RestrictedCosets> {
    let all = coset_list(pair)?;
    let mut sets = Vec::new();
    let mut emptied = Vec::new();
    for (i, mut set) in all.into_iter().enumerate() {
        if let Some(r) = r {
            set.members.retain(|x| x.rank() <= r);
        }
        if set.members.is_empty() {
            emptied.push(i);
        } else {
            sets.push(set);
        }
    }
    Ok(RestrictedCosets { sets, emptied })
}

/// Lower bound on the size of a code on `f` with distance delta and ranks at most r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfrmcBound {
    pub value: BigCount,
    /// 1-based column index attaining the maximum.
    pub column: usize,
}

pub fn gfrmc_lower_bound(f: &FerrersDiagram, delta: usize, r: usize, q: u32) -> Result<GfrmcBound> {
    let n = f.ncols();
    if r > n || delta == 0 {
        return Err(Error::BadArguments(format!(
            "need n >= r and delta >= 1, got n={} r={} delta={}",
            n, r, delta
        )));
    }
    FieldCtx::get(q)?;
    let cols = f.cols();
    let mut best = GfrmcBound {
        value: BigUint::one(),
        column: n.max(1),
    };
    for i in 1..=n {
        let (rows, width) = (cols[i - 1], n - i);
        let small = rows.min(width);
        let v = if small == 0 || delta > small {
            BigUint::one()
        } else {
            grmc_lower_bound(q, rows, width, delta, 0, r.min(small))?
        };
        if v > best.value {
            best = GfrmcBound { value: v, column: i };
        }
    }
    Ok(best)
}
