//! Finite fields GF(q) for prime powers q up to 2^16.
//!
//! Elements are encoded as integers in `0..q`. For q = p^e with e > 1 the
//! encoding is the base-p digit vector of the polynomial representative,
//! least significant digit = constant coefficient. So in GF(4) with modulus
//! x^2 + x + 1 the encodings 0, 1, 2, 3 stand for 0, 1, x, x + 1.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const TABLE_LIMIT: u32 = 256;
const MAX_Q: u32 = 1 << 16;

/// An element of some [`Field`], stored as its canonical encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

struct Inner {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// GF(q). Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.inner.q)
            .field("p", &self.inner.p)
            .field("e", &self.inner.e)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // the modulus is a deterministic function of q
        self.inner.q == other.inner.q
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(q). For q = p^e with e > 1 the modulus is the smallest monic
    /// irreducible polynomial of degree e over GF(p), comparing lower
    /// coefficients as a base-p integer.
    pub fn new(q: u32) -> Result<Field> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::FieldSizeOutOfRange(q));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        let modulus = if e == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, e)
        };
        let mut inner = Inner {
            q,
            p,
            e,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    /// Coefficients (constant first, leading 1 last) of the defining
    /// polynomial; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value < self.inner.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::NotAFieldElement {
                value,
                q: self.inner.q,
            })
        }
    }

    /// All q elements in ascending encoding order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.inner.q).map(FieldElement).collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.add[self.idx(a, b)] as u32),
            None => FieldElement(slow_add(&self.inner, a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize] as u32),
            None => FieldElement(slow_neg(&self.inner, a.0)),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.mul[self.idx(a, b)] as u32),
            None => FieldElement(slow_mul(&self.inner, a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.inner.tables {
            Some(t) => FieldElement(t.inv[a.0 as usize] as u32),
            None => self.pow(a, (self.inner.q - 2) as u64),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    #[inline]
    fn idx(&self, a: FieldElement, b: FieldElement) -> usize {
        a.0 as usize * self.inner.q as usize + b.0 as usize
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn digits(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn slow_add(f: &Inner, a: u32, b: u32) -> u32 {
    if f.e == 1 {
        return (a + b) % f.p;
    }
    let (da, db) = (digits(a, f.p, f.e), digits(b, f.p, f.e));
    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % f.p).collect();
    undigits(&sum, f.p)
}

fn slow_neg(f: &Inner, a: u32) -> u32 {
    if f.e == 1 {
        return (f.p - a) % f.p;
    }
    let ds: Vec<u32> = digits(a, f.p, f.e)
        .into_iter()
        .map(|d| (f.p - d) % f.p)
        .collect();
    undigits(&ds, f.p)
}

fn slow_mul(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.p as u64;
    if f.e == 1 {
        return ((a as u64 * b as u64) % p) as u32;
    }
    let e = f.e as usize;
    let (da, db) = (digits(a, f.p, f.e), digits(b, f.p, f.e));
    let mut prod = vec![0u64; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    // reduce with the monic modulus, highest degree first
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in f.modulus[..e].iter().enumerate() {
            let t = (c * m as u64) % p;
            let slot = &mut prod[deg - e + i];
            *slot = (*slot + p - t) % p;
        }
    }
    let low: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
    undigits(&low, f.p)
}

fn slow_neg_table(f: &Inner) -> Vec<u16> {
    (0..f.q).map(|a| slow_neg(f, a) as u16).collect()
}

fn build_tables(f: &Inner) -> Tables {
    let q = f.q as usize;
    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for a in 0..f.q {
        for b in 0..f.q {
            let i = a as usize * q + b as usize;
            add[i] = slow_add(f, a, b) as u16;
            mul[i] = slow_mul(f, a, b) as u16;
        }
    }
    let mut inv = vec![0u16; q];
    for a in 1..q {
        let b = (1..q).find(|&b| mul[a * q + b] == 1).expect("field has inverses");
        inv[a] = b as u16;
    }
    Tables {
        add,
        mul,
        neg: slow_neg_table(f),
        inv,
    }
}

/// Remainder of `num` modulo the monic `den` over GF(p); coefficient lists
/// are constant-first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let dd = den.len() - 1;
    while r.len() > dd {
        let top = r.len() - 1;
        let c = r[top];
        if c != 0 {
            for (i, &m) in den.iter().enumerate() {
                let slot = &mut r[top - dd + i];
                *slot = (*slot + p - (c * m as u64) % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn monic(lower: u32, p: u32, degree: u32) -> Vec<u32> {
    let mut coeffs = digits(lower, p, degree);
    coeffs.push(1);
    coeffs
}

pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let degree = poly.len() as u32 - 1;
    for dd in 1..=degree / 2 {
        for lower in 0..p.pow(dd) {
            let den = monic(lower, p, dd);
            if poly_rem(poly, &den, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    (0..p.pow(e))
        .map(|lower| monic(lower, p, e))
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}
