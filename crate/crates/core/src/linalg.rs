//! Row reduction over GF(q).

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// A subspace of GF(q)^n kept in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    len: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, len: usize) -> Self {
        Echelon {
            field: field.clone(),
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(
        field: &Field,
        len: usize,
        vectors: impl IntoIterator<Item = &'a Vec<FieldElement>>,
    ) -> Result<Self> {
        let mut e = Echelon::new(field, len);
        for v in vectors {
            e.insert(v)?;
        }
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.len {
            return Err(Error::LengthMismatch {
                got: v.len(),
                expected: self.len,
            });
        }
        Ok(())
    }

    /// `v` minus its projection onto the pivot columns.
    pub fn reduce(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(v)?;
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p];
            if c.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(row) {
                *o = f.sub(*o, f.mul(c, x));
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[FieldElement]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|x| x.is_zero()))
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[FieldElement]) -> Result<bool> {
        let mut r = self.reduce(v)?;
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let f = self.field.clone();
        let inv = f.inv(r[p])?;
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c.is_zero() {
                continue;
            }
            for (o, &x) in row.iter_mut().zip(&r) {
                *o = f.sub(*o, f.mul(c, x));
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        Ok(true)
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank(field: &Field, len: usize, vectors: &[Vec<FieldElement>]) -> Result<usize> {
    Ok(Echelon::from_vectors(field, len, vectors)?.rank())
}

/// `sum c_i * v_i`.
pub fn combine(field: &Field, coeffs: &[FieldElement], vectors: &[Vec<FieldElement>], len: usize) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::ZERO; len];
    for (&c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}
