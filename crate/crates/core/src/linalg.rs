//! Dense matrices over GF(q), echelon forms, subspaces and Gaussian binomials.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

pub type BigCount = BigUint;

#[derive(Clone)]
pub struct MatGF {
    field: &'static FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for MatGF {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}
impl Eq for MatGF {}

impl Hash for MatGF {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for MatGF {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MatGF {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.q(), self.rows, self.cols, &self.data).cmp(&(other.field.q(), other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for MatGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatGF(q={}, {}x{})[", self.field.q(), self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", self.row_digits(r))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for MatGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row_digits(r))?;
        }
        Ok(())
    }
}

impl MatGF {
    pub fn zero(field: &'static FieldCtx, rows: usize, cols: usize) -> MatGF {
        MatGF {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &'static FieldCtx, k: usize) -> MatGF {
        let mut m = MatGF::zero(field, k, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(field: &'static FieldCtx, rows: usize, cols: usize, data: Vec<Elem>) -> Result<MatGF> {
        if data.len() != rows * cols {
            return Err(Error::BadShape(format!("{} entries for {}x{}", data.len(), rows, cols)));
        }
        if let Some(&bad) = data.iter().find(|&&x| x as u32 >= field.q()) {
            return Err(Error::BadArguments(format!("entry {} not in GF({})", bad, field.q())));
        }
        Ok(MatGF {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &'static FieldCtx, rows: &[Vec<Elem>]) -> Result<MatGF> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadShape("ragged rows".into()));
        }
        MatGF::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// Rows written as digit strings, e.g. `["1011", "0110"]`.
    pub fn from_digits(field: &'static FieldCtx, rows: &[&str]) -> Result<MatGF> {
        let parsed: Result<Vec<Vec<Elem>>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as Elem)
                            .ok_or_else(|| Error::BadArguments(format!("bad digit {:?}", c)))
                    })
                    .collect()
            })
            .collect();
        MatGF::from_rows(field, &parsed?)
    }

    pub fn field(&self) -> &'static FieldCtx {
        self.field
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn row_digits(&self, r: usize) -> String {
        self.row(r).iter().map(|d| char::from(b'0' + d)).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> MatGF {
        let mut t = MatGF::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn hstack(&self, other: &MatGF) -> MatGF {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = MatGF::zero(self.field, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &MatGF) -> MatGF {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatGF {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Copies `block` so that its (0,0) entry lands at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatGF) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatGF {
        let mut m = MatGF::zero(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> MatGF {
        let mut m = MatGF::zero(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn reverse_cols(&self) -> MatGF {
        let idx: Vec<usize> = (0..self.cols).rev().collect();
        self.select_cols(&idx)
    }

    pub fn add(&self, other: &MatGF) -> MatGF {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        MatGF {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &MatGF) -> MatGF {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        MatGF {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: Elem) -> MatGF {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        MatGF {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, c: Elem, other: &MatGF) {
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn mul(&self, other: &MatGF) -> MatGF {
        assert_eq!(self.cols, other.rows);
        let f = self.field;
        let mut m = MatGF::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(m.get(r, c), f.mul(a, other.get(t, c)));
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// In-place Gauss-Jordan; returns pivot columns.
    fn gauss_jordan(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c));
            if inv != 1 {
                for j in c..self.cols {
                    let v = f.mul(inv, self.get(r, j));
                    self.set(r, j, v);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (MatGF, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.gauss_jordan();
        (m, pivots)
    }

    /// Reduced row inverse echelon form: each row's last nonzero entry is a 1
    /// in a unit column, strictly left of the previous row's.
    pub fn rrief(&self) -> (MatGF, Vec<usize>) {
        let (r, piv) = self.reverse_cols().rref();
        let n = self.cols;
        (r.reverse_cols(), piv.into_iter().map(|p| n - 1 - p).collect())
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.gauss_jordan().len()
    }

    pub fn is_rref(&self) -> bool {
        let (r, _) = self.rref();
        r == *self
    }

    /// Basis of the right kernel {x : self * x = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0; self.cols];
                x[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(r.get(i, fc));
                }
                x
            })
            .collect()
    }

    /// First nonzero column of each row, `None` for zero rows.
    pub fn leading_columns(&self) -> Vec<Option<usize>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().position(|&x| x != 0))
            .collect()
    }

    /// Drops zero rows.
    pub fn nonzero_rows(&self) -> MatGF {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|&x| x != 0))
            .collect();
        let mut m = MatGF::zero(self.field, keep.len(), self.cols);
        for (i, &r) in keep.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        m
    }
}

pub fn rref(m: &MatGF) -> (MatGF, Vec<usize>) {
    m.rref()
}
pub fn rrief(m: &MatGF) -> (MatGF, Vec<usize>) {
    m.rrief()
}
pub fn rank(m: &MatGF) -> usize {
    m.rank()
}

/// Rank of the span of equally shaped matrices, each flattened to a vector.
pub fn span_rank(field: &'static FieldCtx, mats: &[MatGF]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let len = mats[0].data.len();
    let data: Vec<Elem> = mats.iter().flat_map(|m| m.data.iter().copied()).collect();
    MatGF {
        field,
        rows: mats.len(),
        cols: len,
        data,
    }
    .rank()
}

/// A subspace of GF(q)^n stored by its RREF generator matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    gen: MatGF,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({:?})", self.gen)
    }
}

impl Subspace {
    /// Row space of `m`, canonicalized.
    pub fn from_generators(m: &MatGF) -> Subspace {
        let (r, _) = m.rref();
        Subspace { gen: r.nonzero_rows() }
    }

    /// Accepts `m` only if it already is a full-rank RREF matrix.
    pub fn from_rref(m: MatGF) -> Result<Subspace> {
        let (r, piv) = m.rref();
        if r != m || piv.len() != m.rows() {
            return Err(Error::NotRref(format!("{:?}", m)));
        }
        Ok(Subspace { gen: m })
    }

    pub fn gen(&self) -> &MatGF {
        &self.gen
    }
    pub fn dim(&self) -> usize {
        self.gen.rows()
    }
    pub fn ambient(&self) -> usize {
        self.gen.cols()
    }
    pub fn q(&self) -> u32 {
        self.gen.q()
    }
    pub fn pivots(&self) -> Vec<usize> {
        self.gen.leading_columns().into_iter().flatten().collect()
    }
    pub fn rrief(&self) -> (MatGF, Vec<usize>) {
        self.gen.rrief()
    }
}

pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    if u.ambient() != v.ambient() {
        return Err(Error::AmbientMismatch(u.ambient(), v.ambient()));
    }
    let r = u.gen.vstack(&v.gen).rank();
    Ok(2 * r - u.dim() - v.dim())
}

pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> Result<BigCount> {
    if k > n {
        return Err(Error::BadArguments(format!("k={} > n={}", k, n)));
    }
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= Pow::pow(&qb, (n - i) as u32) - 1u32;
        den *= Pow::pow(&qb, (k - i) as u32) - 1u32;
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> &'static FieldCtx {
        FieldCtx::get(2).unwrap()
    }

    #[test]
    fn rref_of_identity_and_example() {
        let id = MatGF::identity(f2(), 4);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2, 3]));
        let e = MatGF::from_digits(f2(), &["10001", "00101", "00010"]).unwrap();
        let (r, p) = e.rref();
        assert_eq!(r, e);
        assert_eq!(p, vec![0, 2, 3]);
    }

    #[test]
    fn rrief_examples() {
        let eh = MatGF::from_digits(f2(), &["10001", "00010", "10100"]).unwrap();
        let (r, p) = eh.rrief();
        assert_eq!(r, eh);
        assert_eq!(p, vec![4, 3, 2]);
        let id = MatGF::identity(f2(), 3);
        let (r, p) = id.rrief();
        assert_eq!(p, vec![2, 1, 0]);
        assert_eq!(Subspace::from_generators(&r), Subspace::from_generators(&id));
    }

    #[test]
    fn example_subspace_forms_agree() {
        let e = MatGF::from_digits(f2(), &["10001", "00101", "00010"]).unwrap();
        let eh = MatGF::from_digits(f2(), &["10001", "00010", "10100"]).unwrap();
        assert_eq!(e.rrief().0, eh);
        assert_eq!(eh.rref().0, e);
    }

    #[test]
    fn rank_facts() {
        assert_eq!(MatGF::zero(f2(), 3, 4).rank(), 0);
        assert_eq!(MatGF::identity(f2(), 5).rank(), 5);
        let f = MatGF::from_digits(f2(), &["110", "000", "101", "001"]).unwrap();
        assert_eq!(f.rank(), 3);
    }

    #[test]
    fn distances() {
        let e = |rows: &[&str]| Subspace::from_generators(&MatGF::from_digits(f2(), rows).unwrap());
        let u = e(&["1000", "0100"]);
        assert_eq!(subspace_distance(&u, &u).unwrap(), 0);
        assert_eq!(subspace_distance(&u, &e(&["0010", "0001"])).unwrap(), 4);
        assert_eq!(subspace_distance(&u, &e(&["1000", "0010"])).unwrap(), 2);
        let w = e(&["10000"]);
        assert_eq!(subspace_distance(&u, &w).unwrap_err(), Error::AmbientMismatch(4, 5));
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(7, 0, 3).unwrap(), BigUint::one());
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(3, 2, 2).unwrap(), BigUint::from(7u32));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn nullspace_annihilates() {
        let f3 = FieldCtx::get(3).unwrap();
        let a = MatGF::from_digits(f3, &["1201", "0112", "1010"]).unwrap();
        let ns = a.nullspace();
        assert_eq!(ns.len(), 4 - a.rank());
        for x in ns {
            let col = MatGF::from_vec(f3, 4, 1, x).unwrap();
            assert!(a.mul(&col).is_zero());
        }
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(MatGF::from_digits(f2(), &["12"]).is_err());
        assert!(MatGF::from_rows(f2(), &[vec![1, 0], vec![1]]).is_err());
    }
}
