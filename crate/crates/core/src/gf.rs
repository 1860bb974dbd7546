//! Arithmetic in GF(q) for the small prime powers used by the bound tables,
//! and in extension fields GF(q^m) for Gabidulin codes.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Field element, encoded as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`.
pub type Elem = u8;

pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Arithmetic context for GF(q), q = p^e.
///
/// Moduli: t for prime q, t^2+t+1 for q=4, t^3+t+1 for q=8, t^2+2t+2 for q=9.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    exp: Vec<u8>,
    log: Vec<u8>,
}

fn split_order(q: u32) -> Option<(u32, u32, Vec<u8>)> {
    match q {
        2 | 3 | 5 | 7 => Some((q, 1, vec![0, 1])),
        4 => Some((2, 2, vec![1, 1, 1])),
        8 => Some((2, 3, vec![1, 1, 0, 1])),
        9 => Some((3, 2, vec![2, 2, 1])),
        _ => None,
    }
}

fn digits(x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(e as usize);
    let mut x = x;
    for _ in 0..e {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldCtx {
    pub fn new(q: u32) -> Result<FieldCtx> {
        let (p, e, modulus) = split_order(q).ok_or(Error::UnsupportedOrder(q))?;
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p) as u8;
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; (2 * e - 1) as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    for (i, &mc) in modulus.iter().enumerate().take(e as usize) {
                        let idx = deg - e as usize + i;
                        prod[idx] = (prod[idx] + c * (p - mc as u32)) % p;
                    }
                    prod[deg] = 0;
                }
                mul[(a * q + b) as usize] = undigits(&prod[..e as usize], p) as u8;
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..n)
                    .find(|&b| mul[a * n + b] == 1)
                    .ok_or(Error::UnsupportedOrder(q))? as u8;
            }
        }
        let generator = (2..n.max(2))
            .chain(std::iter::once(1))
            .find(|&g| {
                let mut x = 1usize;
                for k in 1..n {
                    x = mul[x * n + g] as usize;
                    if x == 1 {
                        return k == n - 1;
                    }
                }
                false
            })
            .ok_or(Error::UnsupportedOrder(q))?;
        let mut exp = vec![0u8; n - 1];
        let mut log = vec![0u8; n];
        let mut x = 1usize;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x as u8;
            log[x] = k as u8;
            x = mul[x * n + generator] as usize;
        }
        Ok(FieldCtx {
            q,
            p,
            e,
            modulus,
            add,
            mul,
            neg,
            inv,
            exp,
            log,
        })
    }

    /// Shared context for `q`, built once per process.
    pub fn get(q: u32) -> Result<&'static FieldCtx> {
        static CELLS: [OnceLock<FieldCtx>; 10] = [const { OnceLock::new() }; 10];
        if !SUPPORTED_ORDERS.contains(&q) {
            return Err(Error::UnsupportedOrder(q));
        }
        Ok(CELLS[q as usize].get_or_init(|| FieldCtx::new(q).expect("supported order")))
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.e
    }
    /// Modulus coefficients over GF(p), constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }
    /// Primitive element used for the log/exp tables.
    pub fn generator(&self) -> Elem {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }
    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let ord = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (k % ord)) % ord;
        self.exp[l as usize]
    }
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize] as u32)
    }
    pub fn exp(&self, k: u32) -> Elem {
        self.exp[(k % (self.q - 1)) as usize]
    }
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as u8
    }
}

/// Owned GF(q) context; see [`FieldCtx::get`] for the shared instance.
pub fn field_new(q: u32) -> Result<FieldCtx> {
    FieldCtx::new(q)
}

// ---- polynomials over GF(q), coefficient vectors with constant term first ----

fn poly_trim(p: &mut Vec<Elem>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_rem(f: &FieldCtx, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = f.mul(r[d], lead_inv);
        for (i, &mc) in m.iter().enumerate() {
            let idx = d - dm + i;
            r[idx] = f.sub(r[idx], f.mul(c, mc));
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(f: &FieldCtx, a: &[Elem], b: &[Elem], m: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    poly_rem(f, &prod, m)
}

fn poly_powmod(f: &FieldCtx, a: &[Elem], mut k: u64, m: &[Elem]) -> Vec<Elem> {
    let mut result = vec![1];
    let mut base = poly_rem(f, a, m);
    while k > 0 {
        if k & 1 == 1 {
            result = poly_mulmod(f, &result, &base, m);
        }
        base = poly_mulmod(f, &base, &base, m);
        k >>= 1;
    }
    result
}

fn poly_gcd(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial of degree >= 1.
pub fn is_irreducible(f: &FieldCtx, m: &[Elem]) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    let q = f.q() as u64;
    let x = vec![0, 1];
    // x^{q^j} mod m for j = 0..=deg
    let mut frob = vec![poly_rem(f, &x, m)];
    for j in 1..=deg {
        let next = poly_powmod(f, &frob[j - 1], q, m);
        frob.push(next);
    }
    let minus_x = |p: &[Elem]| {
        let mut r = p.to_vec();
        r.resize(r.len().max(2), 0);
        r[1] = f.sub(r[1], 1);
        poly_trim(&mut r);
        r
    };
    if !minus_x(&frob[deg]).is_empty() {
        return false;
    }
    prime_factors(deg).into_iter().all(|r| {
        let g = poly_gcd(f, &minus_x(&frob[deg / r]), m);
        g.len() == 1
    })
}

/// Lexicographically first monic irreducible of degree `m` over GF(q): candidates
/// are ordered by the base-q integer whose digits are the lower coefficients,
/// constant term least significant.
pub fn smallest_irreducible(f: &FieldCtx, m: usize) -> Vec<Elem> {
    if m == 1 {
        return vec![0, 1];
    }
    let q = f.q() as u64;
    let mut t: u64 = 1;
    loop {
        let mut poly = Vec::with_capacity(m + 1);
        let mut x = t;
        for _ in 0..m {
            poly.push((x % q) as Elem);
            x /= q;
        }
        poly.push(1);
        if poly[0] != 0 && is_irreducible(f, &poly) {
            return poly;
        }
        t += 1;
    }
}

/// Element of GF(q^m): coordinates in the polynomial basis 1, x, ..., x^{m-1}.
pub type ExtElem = Vec<Elem>;

/// GF(q^m) as GF(q)[x]/(f) with the polynomial basis.
#[derive(Debug, Clone)]
pub struct ExtFieldCtx {
    base: &'static FieldCtx,
    m: usize,
    modulus: Vec<Elem>,
    // row j: coordinates of (x^j)^q
    frob: Vec<ExtElem>,
}

impl ExtFieldCtx {
    pub fn new(base: &'static FieldCtx, m: usize) -> Result<ExtFieldCtx> {
        if m == 0 || m > 16 {
            return Err(Error::DegreeTooLarge(m));
        }
        let modulus = smallest_irreducible(base, m);
        let mut ctx = ExtFieldCtx {
            base,
            m,
            modulus,
            frob: Vec::new(),
        };
        let q = base.q() as u64;
        ctx.frob = (0..m).map(|j| ctx.pow(&ctx.basis_elem(j), q)).collect();
        Ok(ctx)
    }

    pub fn base(&self) -> &'static FieldCtx {
        self.base
    }
    pub fn degree(&self) -> usize {
        self.m
    }
    /// Monic modulus over GF(q), constant term first.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }
    pub fn order(&self) -> u64 {
        (self.base.q() as u64).pow(self.m as u32)
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.m]
    }
    pub fn one(&self) -> ExtElem {
        self.basis_elem(0)
    }
    /// x^j for j < m.
    pub fn basis_elem(&self, j: usize) -> ExtElem {
        let mut v = self.zero();
        v[j] = 1;
        v
    }
    pub fn basis(&self) -> Vec<ExtElem> {
        (0..self.m).map(|j| self.basis_elem(j)).collect()
    }
    /// The element whose coordinates are the base-q digits of `idx`.
    pub fn from_index(&self, idx: u64) -> ExtElem {
        let q = self.base.q() as u64;
        let mut x = idx;
        (0..self.m)
            .map(|_| {
                let d = (x % q) as Elem;
                x /= q;
                d
            })
            .collect()
    }
    pub fn is_zero(&self, a: &[Elem]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }
    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.base.sub(x, y)).collect()
    }
    pub fn scale(&self, c: Elem, a: &[Elem]) -> ExtElem {
        a.iter().map(|&x| self.base.mul(c, x)).collect()
    }
    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> ExtElem {
        let mut r = poly_mulmod(self.base, a, b, &self.modulus);
        r.resize(self.m, 0);
        r
    }
    pub fn pow(&self, a: &[Elem], k: u64) -> ExtElem {
        let mut r = poly_powmod(self.base, a, k, &self.modulus);
        r.resize(self.m, 0);
        r
    }
    pub fn inv(&self, a: &[Elem]) -> ExtElem {
        assert!(!self.is_zero(a), "zero has no inverse");
        self.pow(a, self.order() - 2)
    }

    /// x^{q^i}, applied as the GF(q)-linear Frobenius map i times.
    pub fn frobenius(&self, a: &[Elem], i: usize) -> ExtElem {
        let mut cur = a.to_vec();
        for _ in 0..i % self.m {
            let mut next = self.zero();
            for (j, &c) in cur.iter().enumerate() {
                if c != 0 {
                    for (t, &fc) in self.frob[j].iter().enumerate() {
                        next[t] = self.base.add(next[t], self.base.mul(c, fc));
                    }
                }
            }
            cur = next;
        }
        cur
    }

    pub fn multiplicative_order(&self, a: &[Elem]) -> u64 {
        assert!(!self.is_zero(a));
        let n = self.order() - 1;
        let mut ord = n;
        for r in prime_factors(n as usize) {
            let r = r as u64;
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        ord
    }

    /// Smallest-index element of full multiplicative order.
    pub fn primitive_element(&self) -> ExtElem {
        let n = self.order() - 1;
        (1..self.order())
            .map(|i| self.from_index(i))
            .find(|a| self.multiplicative_order(a) == n)
            .expect("a finite field has a primitive element")
    }

    /// m×n matrix over GF(q) whose column j holds the coordinates of v_j.
    pub fn expand_rows(&self, v: &[ExtElem]) -> crate::linalg::MatGF {
        let mut mat = crate::linalg::MatGF::zero(self.base, self.m, v.len());
        for (j, x) in v.iter().enumerate() {
            for (i, &c) in x.iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        mat
    }
}

pub fn ext_new(base: &'static FieldCtx, m: usize) -> Result<ExtFieldCtx> {
    ExtFieldCtx::new(base, m)
}

pub fn frobenius(ctx: &ExtFieldCtx, x: &[Elem], i: usize) -> ExtElem {
    ctx.frobenius(x, i)
}

pub fn expand_rows(ctx: &ExtFieldCtx, v: &[ExtElem]) -> crate::linalg::MatGF {
    ctx.expand_rows(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FieldCtx) {
        let q = f.q() as u8;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_for_all_supported_orders() {
        for q in SUPPORTED_ORDERS {
            check_axioms(&field_new(q).unwrap());
        }
    }

    #[test]
    fn small_facts() {
        let f2 = FieldCtx::get(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        // t is encoded as 2 in GF(4); t*t = t+1 = 3
        let f4 = FieldCtx::get(4).unwrap();
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(field_new(6).unwrap_err(), Error::UnsupportedOrder(6));
        assert!(FieldCtx::get(16).is_err());
    }

    #[test]
    fn generator_has_full_order() {
        for q in SUPPORTED_ORDERS {
            let f = FieldCtx::get(q).unwrap();
            let g = f.generator();
            let mut seen = std::collections::HashSet::new();
            for k in 0..q - 1 {
                seen.insert(f.pow(g, k as u64));
            }
            assert_eq!(seen.len() as u32, q - 1);
        }
    }

    #[test]
    fn extension_moduli_are_pinned() {
        let f2 = FieldCtx::get(2).unwrap();
        assert_eq!(smallest_irreducible(f2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(f2, 3), vec![1, 1, 0, 1]);
        assert_eq!(smallest_irreducible(f2, 4), vec![1, 1, 0, 0, 1]);
        let f3 = FieldCtx::get(3).unwrap();
        assert_eq!(smallest_irreducible(f3, 2), vec![1, 0, 1]);
        // x^4+1 = (x^2+x+1)^2 is not irreducible over GF(2)
        assert!(!is_irreducible(f2, &[1, 0, 0, 0, 1]));
    }

    #[test]
    fn gf8_generator_order_seven() {
        let e = ext_new(FieldCtx::get(2).unwrap(), 3).unwrap();
        assert_eq!(e.order(), 8);
        assert_eq!(e.multiplicative_order(&e.primitive_element()), 7);
    }

    #[test]
    fn gf9_as_extension() {
        let e = ext_new(FieldCtx::get(3).unwrap(), 2).unwrap();
        for i in 1..9 {
            let a = e.from_index(i);
            assert_eq!(e.pow(&a, 8), e.one());
            assert_eq!(e.mul(&a, &e.inv(&a)), e.one());
        }
    }

    #[test]
    fn degree_one_extension_is_base() {
        let f = FieldCtx::get(2).unwrap();
        let e = ext_new(f, 1).unwrap();
        assert_eq!(e.order(), 2);
        assert_eq!(e.mul(&[1], &[1]), vec![1]);
        assert_eq!(ext_new(f, 17).unwrap_err(), Error::DegreeTooLarge(17));
        assert_eq!(ext_new(f, 0).unwrap_err(), Error::DegreeTooLarge(0));
    }

    #[test]
    fn frobenius_facts() {
        let f2 = FieldCtx::get(2).unwrap();
        let e4 = ext_new(f2, 2).unwrap();
        let x = e4.basis_elem(1);
        assert_eq!(e4.frobenius(&x, 1), e4.mul(&x, &x));
        assert_eq!(e4.frobenius(&x, 0), x);
        let e8 = ext_new(f2, 3).unwrap();
        for i in 0..8 {
            let a = e8.from_index(i);
            assert_eq!(e8.frobenius(&a, 3), a);
            assert_eq!(e8.frobenius(&a, 1), e8.pow(&a, 2));
        }
    }

    #[test]
    fn frobenius_m_times_is_identity() {
        for q in SUPPORTED_ORDERS {
            let f = FieldCtx::get(q).unwrap();
            for m in 1..=4usize {
                let e = ext_new(f, m).unwrap();
                let total = e.order();
                let step = (total / 600).max(1);
                let mut i = 0;
                while i < total {
                    let a = e.from_index(i);
                    let mut b = a.clone();
                    for _ in 0..m {
                        b = e.frobenius(&b, 1);
                    }
                    assert_eq!(a, b);
                    assert_eq!(e.frobenius(&a, 1), e.pow(&a, q as u64));
                    i += step;
                }
            }
        }
    }

    #[test]
    fn expansion_of_basis_element() {
        let e = ext_new(FieldCtx::get(3).unwrap(), 4).unwrap();
        let m = e.expand_rows(&[e.one()]);
        assert_eq!((m.rows(), m.cols()), (4, 1));
        assert_eq!(m.col(0), vec![1, 0, 0, 0]);
        let z = e.expand_rows(&[e.zero(), e.zero()]);
        assert!(z.is_zero());
    }
}
