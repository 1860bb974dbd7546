//! Independent oracles: pairwise distance certification, exact maximum
//! cliques on tiny Grassmannians, and FDRMC audits.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cdc::Cdc;
use crate::error::{Error, Result};
use crate::ferrers::{FdrmCode, FerrersDiagram};
use crate::gf::{Elem, FieldCtx};
use crate::linalg::{gaussian_binomial, MatGF, Subspace};

/// Default cap on the number of pairs checked exhaustively.
pub const EXHAUSTIVE_PAIR_LIMIT: u64 = 1_000_000;
/// Default sample size.
pub const SAMPLE_PAIRS: u64 = 100_000;
/// Largest Grassmannian handled by the clique search.
pub const CLIQUE_VERTEX_LIMIT: usize = 2000;
const MAX_REPORTED: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every pair; refuses more than `max_pairs`.
    Exhaustive {
        max_pairs: u64,
    },
    Sampled {
        seed: u64,
        pairs: u64,
    },
}

impl Mode {
    pub fn exhaustive() -> Mode {
        Mode::Exhaustive {
            max_pairs: EXHAUSTIVE_PAIR_LIMIT,
        }
    }
    pub fn sampled(seed: u64) -> Mode {
        Mode::Sampled {
            seed,
            pairs: SAMPLE_PAIRS,
        }
    }
    /// Exhaustive when the pair count fits the default cap, sampled otherwise.
    pub fn auto(members: usize, seed: u64) -> Mode {
        if pair_count(members) <= EXHAUSTIVE_PAIR_LIMIT {
            Mode::exhaustive()
        } else {
            Mode::sampled(seed)
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive { .. } => write!(f, "exhaustive"),
            Mode::Sampled { seed, pairs } => write!(f, "sampled(seed={}, pairs={})", seed, pairs),
        }
    }
}

/// A pair of members closer than declared: (i, j, distance).
pub type Violation = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub target: String,
    pub mode: Mode,
    pub declared: usize,
    pub pairs_checked: u64,
    /// `None` when nothing was compared.
    pub min_distance_found: Option<usize>,
    /// The first few offending pairs, in index order (0-based; printed 1-based).
    pub violations: Vec<Violation>,
    pub violation_count: u64,
    pub passed: bool,
}

impl VerifyReport {
    fn finish(
        target: String,
        mode: Mode,
        declared: usize,
        pairs: u64,
        min: Option<usize>,
        mut v: Vec<Violation>,
    ) -> Self {
        v.sort_unstable();
        let violation_count = v.len() as u64;
        v.truncate(MAX_REPORTED);
        let passed = v.is_empty() && min.is_none_or(|m| m >= declared);
        VerifyReport {
            target,
            mode,
            declared,
            pairs_checked: pairs,
            min_distance_found: min,
            violations: v,
            violation_count,
            passed,
        }
    }

    /// Machine-readable `key=value` lines.
    pub fn key_values(&self) -> String {
        let min = self.min_distance_found.map_or("none".to_string(), |m| m.to_string());
        let mut s = format!(
            "target={}\nmode={}\ndeclared={}\npairs={}\nmin_distance={}\nviolations={}\npassed={}\n",
            self.target, self.mode, self.declared, self.pairs_checked, min, self.violation_count, self.passed
        );
        for (i, j, d) in &self.violations {
            s.push_str(&format!("violation={},{},{}\n", i + 1, j + 1, d));
        }
        s
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let min = self.min_distance_found.map_or("-".to_string(), |m| m.to_string());
        writeln!(f, "{}: {} over {} pairs", self.target, self.mode, self.pairs_checked)?;
        writeln!(f, "  minimum distance {} (declared {})", min, self.declared)?;
        for (i, j, d) in &self.violations {
            writeln!(f, "  members {} and {} at distance {}", i + 1, j + 1, d)?;
        }
        if self.violation_count > self.violations.len() as u64 {
            writeln!(f, "  ... {} violations in total", self.violation_count)?;
        }
        write!(f, "  {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

fn pair_count(m: usize) -> u64 {
    let m = m as u64;
    m * m.saturating_sub(1) / 2
}

/// Generators packed one u64 per row, for GF(2) and n <= 64.
fn pack(members: &[Subspace]) -> Vec<Vec<u64>> {
    members
        .iter()
        .map(|u| {
            let g = u.gen();
            (0..g.rows())
                .map(|r| {
                    g.row(r)
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (c, &x)| acc | ((x as u64) << c))
                })
                .collect()
        })
        .collect()
}

fn rank2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let p = rows[i..].iter().position(|&r| r != 0);
        let Some(p) = p else { break };
        rows.swap(i, i + p);
        let low = rows[i] & rows[i].wrapping_neg();
        for j in i + 1..rows.len() {
            if rows[j] & low != 0 {
                rows[j] ^= rows[i];
            }
        }
        rank += 1;
    }
    rank
}

enum Dist<'a> {
    Packed(Vec<Vec<u64>>),
    General(&'a [Subspace]),
}

impl Dist<'_> {
    fn new(members: &[Subspace], q: u32, n: usize) -> Dist<'_> {
        if q == 2 && n <= 64 {
            Dist::Packed(pack(members))
        } else {
            Dist::General(members)
        }
    }
    fn get(&self, i: usize, j: usize) -> usize {
        match self {
            Dist::Packed(p) => {
                let (a, b) = (&p[i], &p[j]);
                let len = a.len() + b.len();
                let r = if len <= 64 {
                    let mut buf = [0u64; 64];
                    buf[..a.len()].copy_from_slice(a);
                    buf[a.len()..len].copy_from_slice(b);
                    rank2(&mut buf[..len])
                } else {
                    rank2(&mut a.iter().chain(b).copied().collect::<Vec<_>>())
                };
                2 * r - len
            }
            Dist::General(m) => {
                let s = m[i].gen().vstack(m[j].gen()).rank();
                2 * s - m[i].dim() - m[j].dim()
            }
        }
    }
}

/// Certifies the pairwise subspace distance of `code` against its declared d.
pub fn check_cdc(code: &Cdc, mode: Mode) -> Result<VerifyReport> {
    let members: Vec<Subspace> = code.members().iter().cloned().collect();
    let target = format!(
        "({}, {}, {}, {})_{} code",
        code.n(),
        code.len(),
        code.d(),
        code.k(),
        code.q()
    );
    check_members(&members, code.q(), code.n(), code.d(), mode, target)
}

/// Same as [`check_cdc`] on a bare list of subspaces; repeated members show up at distance 0.
pub fn check_members(
    members: &[Subspace],
    q: u32,
    n: usize,
    d: usize,
    mode: Mode,
    target: String,
) -> Result<VerifyReport> {
    let m = members.len();
    let dist = Dist::new(members, q, n);
    match mode {
        Mode::Exhaustive { max_pairs } => {
            let total = pair_count(m);
            if total > max_pairs {
                return Err(Error::TooLarge(format!(
                    "{} pairs exceed the exhaustive cap {}",
                    total, max_pairs
                )));
            }
            let (min, viol) = (0..m)
                .into_par_iter()
                .map(|i| {
                    let mut min: Option<usize> = None;
                    let mut viol = Vec::new();
                    for j in i + 1..m {
                        let x = dist.get(i, j);
                        min = Some(min.map_or(x, |a| a.min(x)));
                        if x < d {
                            viol.push((i, j, x));
                        }
                    }
                    (min, viol)
                })
                .reduce(|| (None, Vec::new()), merge);
            Ok(VerifyReport::finish(target, mode, d, total, min, viol))
        }
        Mode::Sampled { seed, pairs } => {
            if m < 2 {
                return Ok(VerifyReport::finish(target, mode, d, 0, None, Vec::new()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sample: Vec<(usize, usize)> = (0..pairs)
                .map(|_| {
                    let i = rng.gen_range(0..m);
                    let mut j = rng.gen_range(0..m - 1);
                    if j >= i {
                        j += 1;
                    }
                    (i.min(j), i.max(j))
                })
                .collect();
            let (min, viol) = sample
                .par_iter()
                .map(|&(i, j)| {
                    let x = dist.get(i, j);
                    (Some(x), if x < d { vec![(i, j, x)] } else { Vec::new() })
                })
                .reduce(|| (None, Vec::new()), merge);
            let mut viol = viol;
            viol.sort_unstable();
            viol.dedup();
            Ok(VerifyReport::finish(target, mode, d, pairs, min, viol))
        }
    }
}

type Partial = (Option<usize>, Vec<Violation>);

fn merge(a: Partial, b: Partial) -> Partial {
    let min = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    let mut v = a.1;
    v.extend(b.1);
    (min, v)
}

/// Minimum distance between members of two codes, checked on sampled or all pairs.
pub fn check_cross(a: &Cdc, b: &Cdc, d: usize, mode: Mode) -> Result<VerifyReport> {
    let mut members: Vec<Subspace> = a.members().iter().cloned().collect();
    let split = members.len();
    members.extend(b.members().iter().cloned());
    let (ma, mb) = (split, members.len() - split);
    let dist = Dist::new(&members, a.q(), a.n());
    let target = format!("cross check of {} x {} members", ma, mb);
    let total = (ma as u64) * (mb as u64);
    let pairs: Vec<(usize, usize)> = match mode {
        Mode::Exhaustive { max_pairs } => {
            if total > max_pairs {
                return Err(Error::TooLarge(format!(
                    "{} pairs exceed the exhaustive cap {}",
                    total, max_pairs
                )));
            }
            (0..ma).flat_map(|i| (split..split + mb).map(move |j| (i, j))).collect()
        }
        Mode::Sampled { seed, pairs } => {
            if ma == 0 || mb == 0 {
                Vec::new()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..pairs)
                    .map(|_| (rng.gen_range(0..ma), split + rng.gen_range(0..mb)))
                    .collect()
            }
        }
    };
    let (min, mut viol) = pairs
        .par_iter()
        .map(|&(i, j)| {
            let x = dist.get(i, j);
            (Some(x), if x < d { vec![(i, j - split, x)] } else { Vec::new() })
        })
        .reduce(|| (None, Vec::new()), merge);
    viol.sort_unstable();
    viol.dedup();
    Ok(VerifyReport::finish(target, mode, d, pairs.len() as u64, min, viol))
}

/// All k-dimensional subspaces of GF(q)^n in RREF, pivot sets in lexicographic order.
pub fn grassmannian(q: u32, n: usize, k: usize, limit: usize) -> Result<Vec<Subspace>> {
    let field = FieldCtx::get(q)?;
    let size = gaussian_binomial(n, k, q)?;
    if size > limit.into() {
        return Err(Error::TooLarge(format!("G_{}({},{}) has {} elements", q, n, k, size)));
    }
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let p = pivots.clone();
                (p[r] + 1..n).filter(move |c| !p.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0 as Elem; free.len()];
        loop {
            let mut g = MatGF::zero(field, k, n);
            for (r, &p) in pivots.iter().enumerate() {
                g.set(r, p, 1);
            }
            for (&(r, c), &x) in free.iter().zip(&digits) {
                g.set(r, c, x);
            }
            out.push(Subspace::from_rref(g)?);
            if !odometer(&mut digits, q) {
                break;
            }
        }
    }
    Ok(out)
}

fn odometer(digits: &mut [Elem], q: u32) -> bool {
    for x in digits.iter_mut().rev() {
        if (*x as u32) + 1 < q {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Undirected graph on at most a few thousand vertices, adjacency as bitsets.
struct Graph {
    adj: Vec<Vec<u64>>,
}

impl Graph {
    fn new(n: usize, edge: impl Fn(usize, usize) -> bool + Sync) -> Graph {
        let words = n.div_ceil(64);
        let adj = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for j in 0..n {
                    if i != j && edge(i, j) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        Graph { adj }
    }
    fn has(&self, i: usize, j: usize) -> bool {
        self.adj[i][j / 64] >> (j % 64) & 1 == 1
    }
}

/// Maximum clique by branch and bound with greedy colouring bounds,
/// vertices ordered by decreasing degree.
fn max_clique(g: &Graph) -> Vec<usize> {
    let n = g.adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    let deg: Vec<u32> = g.adj.iter().map(|r| r.iter().map(|w| w.count_ones()).sum()).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    let mut best = Vec::new();
    let mut cur = Vec::new();
    expand(g, &mut cur, order, &mut best);
    best.sort_unstable();
    best
}

fn colour_bounds(g: &Graph, cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        match classes.iter_mut().find(|c| c.iter().all(|&u| !g.has(u, v))) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut verts = Vec::with_capacity(cand.len());
    let mut bounds = Vec::with_capacity(cand.len());
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            verts.push(v);
            bounds.push(i + 1);
        }
    }
    (verts, bounds)
}

fn expand(g: &Graph, cur: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>) {
    let (verts, bounds) = colour_bounds(g, &cand);
    let mut alive: Vec<bool> = vec![true; verts.len()];
    for idx in (0..verts.len()).rev() {
        if cur.len() + bounds[idx] <= best.len() {
            return;
        }
        let v = verts[idx];
        cur.push(v);
        let next: Vec<usize> = (0..idx)
            .filter(|&i| alive[i] && g.has(v, verts[i]))
            .map(|i| verts[i])
            .collect();
        if next.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand(g, cur, next, best);
        }
        cur.pop();
        alive[idx] = false;
    }
}

/// Exact A_q(n, d, k) on a Grassmannian with at most 2000 elements.
pub fn brute_force_optimum(q: u32, n: usize, k: usize, d: usize) -> Result<usize> {
    Ok(brute_force_code(q, n, k, d)?.len())
}

/// A maximum code found by the clique search.
pub fn brute_force_code(q: u32, n: usize, k: usize, d: usize) -> Result<Cdc> {
    let g = grassmannian(q, n, k, CLIQUE_VERTEX_LIMIT)?;
    let dist = Dist::new(&g, q, n);
    let graph = Graph::new(g.len(), |i, j| dist.get(i, j) >= d);
    let mut out = Cdc::new(FieldCtx::get(q)?, n, k, d, "maximum clique");
    for i in max_clique(&graph) {
        out.insert(g[i].clone())?;
    }
    Ok(out)
}

/// Largest set of matrices on `f` with ranks at most r and pairwise rank distance >= delta.
pub fn brute_force_gfrmc(f: &FerrersDiagram, delta: usize, r: usize, q: u32) -> Result<usize> {
    let field = FieldCtx::get(q)?;
    let f = f.normal();
    let (m, n) = f.shape();
    let dots = f.dot_positions();
    let total = (q as f64).powi(dots.len() as i32);
    if total > 1u64.wrapping_shl(16) as f64 {
        return Err(Error::TooLarge(format!("{}^{} matrices on {}", q, dots.len(), f)));
    }
    let mut mats = Vec::new();
    let mut digits = vec![0 as Elem; dots.len()];
    loop {
        let mut x = MatGF::zero(field, m, n);
        for (&(a, b), &v) in dots.iter().zip(&digits) {
            x.set(a, b, v);
        }
        if x.rank() <= r {
            mats.push(x);
        }
        if !odometer(&mut digits, q) {
            break;
        }
    }
    if mats.len() > CLIQUE_VERTEX_LIMIT {
        return Err(Error::TooLarge(format!("{} candidate matrices", mats.len())));
    }
    let graph = Graph::new(mats.len(), |i, j| mats[i].sub(&mats[j]).rank() >= delta);
    Ok(max_clique(&graph).len())
}

/// Result of an FDRMC audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdrmcAudit {
    pub diagram: FerrersDiagram,
    pub dim: usize,
    pub bound: usize,
    pub delta: usize,
    pub min_rank: Option<usize>,
    /// Basis indices with entries outside the diagram.
    pub support_violations: Vec<usize>,
    pub optimal: bool,
    pub passed: bool,
}

impl fmt::Display for FdrmcAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mr = self.min_rank.map_or("-".to_string(), |m| m.to_string());
        writeln!(f, "diagram {} delta {}", self.diagram, self.delta)?;
        writeln!(
            f,
            "  dimension {} (bound {}{})",
            self.dim,
            self.bound,
            if self.optimal { ", optimal" } else { "" }
        )?;
        writeln!(f, "  minimum rank {}", mr)?;
        if !self.support_violations.is_empty() {
            writeln!(f, "  basis matrices outside the diagram: {:?}", self.support_violations)?;
        }
        write!(f, "  {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Support containment, exact minimum rank by enumeration, and dimension against the bound.
pub fn audit_fdrmc(code: &FdrmCode) -> Result<FdrmcAudit> {
    let diagram = code.diagram().clone();
    let delta = code.delta();
    let support_violations: Vec<usize> = code
        .code()
        .basis()
        .iter()
        .enumerate()
        .filter(|(_, b)| !diagram.supports(b))
        .map(|(i, _)| i)
        .collect();
    if !code.code().is_enumerable() {
        return Err(Error::TooLarge(format!(
            "{}^{} codewords",
            code.field().q(),
            code.dim()
        )));
    }
    let min_rank = code.code().min_rank()?;
    let bound = diagram.singleton_bound(delta)?;
    let dim = code.dim();
    let passed = support_violations.is_empty() && min_rank.is_none_or(|r| r >= delta) && dim <= bound;
    Ok(FdrmcAudit {
        diagram,
        dim,
        bound,
        delta,
        min_rank,
        support_violations,
        optimal: dim == bound,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::{multilevel, IdVec};
    use crate::ferrers::{optimal_fdrmc, th43_optimal_fdrmc};
    use crate::rankmetric::{gabidulin, lift_code, LiftSide, LinearMatrixCode};

    fn small_multilevel() -> Cdc {
        let entries: Vec<(IdVec, FdrmCode)> = ["1100", "0011"]
            .iter()
            .map(|s| {
                let v = IdVec::forward(s).unwrap();
                let f = crate::cdc::ferrers_of(&v).unwrap().diagram;
                (v, optimal_fdrmc(&f, 2, 2).unwrap())
            })
            .collect();
        multilevel(&entries, 2).unwrap()
    }

    #[test]
    fn multilevel_distance() {
        let c = small_multilevel();
        let r = check_cdc(&c, Mode::exhaustive()).unwrap();
        assert_eq!((c.len(), r.min_distance_found, r.passed), (5, Some(4), true));
    }

    #[test]
    fn lifted_mrd_distance() {
        let c = lift_code(&gabidulin(2, 2, 2, 2).unwrap(), LiftSide::Left).unwrap();
        let r = check_cdc(&c, Mode::exhaustive()).unwrap();
        assert_eq!(r.min_distance_found, Some(4));
        let c = lift_code(&gabidulin(3, 2, 2, 2).unwrap(), LiftSide::Left).unwrap();
        let r = check_cdc(&c, Mode::exhaustive()).unwrap();
        assert_eq!((r.pairs_checked, r.min_distance_found), (36, Some(4)));
    }

    #[test]
    fn duplicate_is_a_violation() {
        let c = small_multilevel();
        let mut m: Vec<Subspace> = c.members().iter().cloned().collect();
        m.push(m[0].clone());
        let r = check_members(&m, 2, 4, 4, Mode::exhaustive(), "corrupted".into()).unwrap();
        assert!(!r.passed);
        assert_eq!(r.min_distance_found, Some(0));
        assert_eq!(r.violations, vec![(0, 5, 0)]);
        assert!(r.key_values().contains("passed=false"));
    }

    #[test]
    fn exhaustive_cap_and_sampling() {
        let c = lift_code(&gabidulin(2, 3, 3, 2).unwrap(), LiftSide::Left).unwrap();
        assert!(matches!(
            check_cdc(&c, Mode::Exhaustive { max_pairs: 100 }),
            Err(Error::TooLarge(_))
        ));
        let a = check_cdc(&c, Mode::Sampled { seed: 7, pairs: 500 }).unwrap();
        let b = check_cdc(&c, Mode::Sampled { seed: 7, pairs: 500 }).unwrap();
        assert_eq!(a, b);
        assert!(a.passed);
    }

    #[test]
    fn packed_and_general_agree() {
        let g = grassmannian(2, 5, 2, 2000).unwrap();
        let packed = Dist::new(&g, 2, 5);
        let general = Dist::General(&g);
        for i in (0..g.len()).step_by(7) {
            for j in 0..g.len() {
                assert_eq!(packed.get(i, j), general.get(i, j));
            }
        }
    }

    #[test]
    fn grassmannian_sizes() {
        assert_eq!(grassmannian(2, 4, 2, 2000).unwrap().len(), 35);
        assert_eq!(grassmannian(3, 4, 2, 2000).unwrap().len(), 130);
        assert!(matches!(grassmannian(2, 8, 4, 2000), Err(Error::TooLarge(_))));
    }

    #[test]
    fn clique_optima() {
        assert_eq!(brute_force_optimum(2, 4, 2, 4).unwrap(), 5);
        assert_eq!(brute_force_optimum(2, 4, 2, 2).unwrap(), 35);
        assert_eq!(brute_force_optimum(2, 5, 2, 4).unwrap(), 9);
        assert_eq!(brute_force_optimum(3, 4, 2, 4).unwrap(), 10);
        let c = brute_force_code(2, 4, 2, 4).unwrap();
        assert!(check_cdc(&c, Mode::exhaustive()).unwrap().passed);
    }

    #[test]
    fn gfrmc_search() {
        let f = FerrersDiagram::new(vec![1, 2, 4]).unwrap();
        assert_eq!(brute_force_gfrmc(&f, 2, 0, 2).unwrap(), 1);
        let best = brute_force_gfrmc(&f, 2, 1, 2).unwrap();
        let bound = crate::ferrers::gfrmc_lower_bound(&f, 2, 1, 2).unwrap();
        assert!(bound.value <= best.into());
    }

    #[test]
    fn audits() {
        let a = audit_fdrmc(&optimal_fdrmc(&FerrersDiagram::new(vec![1, 2, 4]).unwrap(), 2, 2).unwrap()).unwrap();
        assert_eq!((a.dim, a.min_rank, a.optimal, a.passed), (3, Some(2), true, true));
        let t = audit_fdrmc(&th43_optimal_fdrmc(15, 6, 3).unwrap()).unwrap();
        assert_eq!((t.dim, t.min_rank, t.optimal, t.passed), (2, Some(3), true, true));
        let f = FerrersDiagram::new(vec![1, 2]).unwrap();
        let field = FieldCtx::get(2).unwrap();
        let mut leak = MatGF::zero(field, 2, 2);
        leak.set(1, 0, 1);
        let code = LinearMatrixCode::new(field, 2, 2, vec![leak], 1).unwrap();
        let bad = audit_fdrmc(&FdrmCode::new_unchecked(f, code)).unwrap();
        assert_eq!(bad.support_violations, vec![0]);
        assert!(!bad.passed);
    }
}
