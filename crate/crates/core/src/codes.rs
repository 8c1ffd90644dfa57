//! Affine Cartesian codes `AC_q(d, A)`: the grid `A = A_1 x ... x A_m`,
//! the monomial basis, and generator matrices.
//!
//! Grid points are listed row-major (last coordinate fastest) so that point
//! `j` corresponds to the box point with encoding `j`. The position of a
//! field element inside `A_i` is its box coordinate.

use std::fmt::Write as _;

use crate::boxcomb::{BoxPoint, BoxShape, DegreeBand};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::Echelon;

/// How to pick the subsets `A_i` of the field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetPolicy {
    /// The first `d_i` field elements in encoding order.
    First,
    /// The last `d_i` field elements, listed in descending encoding order.
    Last,
    /// Caller-supplied subsets, one per size in the caller's order.
    Explicit(Vec<Vec<u32>>),
}

#[derive(Debug, Clone)]
pub struct CartesianGrid {
    field: Field,
    shape: BoxShape,
    subsets: Vec<Vec<FieldElement>>,
    // powers[i][j][e] = A_i[j]^e for e < d_i
    powers: Vec<Vec<Vec<FieldElement>>>,
}

impl CartesianGrid {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    /// `A_i` in sorted-shape coordinate order.
    pub fn subsets(&self) -> &[Vec<FieldElement>] {
        &self.subsets
    }

    pub fn n(&self) -> usize {
        self.shape.n() as usize
    }

    /// The `j`-th grid point (0-based), as field coordinates.
    pub fn point(&self, j: usize) -> Vec<FieldElement> {
        let idx = self.shape.decode(j as u64);
        idx.coords()
            .iter()
            .zip(&self.subsets)
            .map(|(&t, a)| a[t])
            .collect()
    }

    pub fn points(&self) -> Vec<Vec<FieldElement>> {
        (0..self.n()).map(|j| self.point(j)).collect()
    }

    /// Box index of a grid point (the bijection from grid to box).
    pub fn index_of(&self, point: &[FieldElement]) -> Option<BoxPoint> {
        if point.len() != self.subsets.len() {
            return None;
        }
        point
            .iter()
            .zip(&self.subsets)
            .map(|(x, a)| a.iter().position(|y| y == x))
            .collect::<Option<Vec<_>>>()
            .map(BoxPoint::new)
    }

    /// `x^exponent` evaluated at every grid point.
    pub fn monomial_values(&self, exponent: &BoxPoint) -> Vec<FieldElement> {
        (0..self.n())
            .map(|j| self.monomial_at(exponent.coords(), j))
            .collect()
    }

    pub(crate) fn monomial_at(&self, exponent: &[usize], j: usize) -> FieldElement {
        let idx = self.shape.decode(j as u64);
        let mut acc = FieldElement::ONE;
        for (i, (&e, &t)) in exponent.iter().zip(idx.coords()).enumerate() {
            acc = self.field.mul(acc, self.powers[i][t][e]);
        }
        acc
    }

    pub fn same_grid(&self, other: &CartesianGrid) -> bool {
        self.field == other.field && self.shape == other.shape && self.subsets == other.subsets
    }
}

/// Builds the grid for `sizes`. Sizes are sorted ascending; explicit
/// subsets follow the same permutation.
pub fn build_grid(field: &Field, sizes: &[usize], policy: &SubsetPolicy) -> Result<CartesianGrid> {
    let shape = BoxShape::new(sizes)?;
    let q = field.order();
    if let Some(&d) = shape.dims().last() {
        if d as u64 > q as u64 {
            return Err(Error::SubsetTooLarge { d, q });
        }
    }
    let elements = field.elements();
    let subsets: Vec<Vec<FieldElement>> = match policy {
        SubsetPolicy::First => shape.dims().iter().map(|&d| elements[..d].to_vec()).collect(),
        SubsetPolicy::Last => shape
            .dims()
            .iter()
            .map(|&d| elements.iter().rev().take(d).copied().collect())
            .collect(),
        SubsetPolicy::Explicit(given) => {
            if given.len() != sizes.len() {
                return Err(Error::ShapeMismatch(format!(
                    "{} subsets for {} sizes",
                    given.len(),
                    sizes.len()
                )));
            }
            let mut out = Vec::with_capacity(given.len());
            for (sorted_i, &orig) in shape.permutation().iter().enumerate() {
                let raw = &given[orig];
                let expected = shape.dims()[sorted_i];
                if raw.len() != expected {
                    return Err(Error::SubsetSizeMismatch {
                        index: orig + 1,
                        got: raw.len(),
                        expected,
                    });
                }
                let els = raw
                    .iter()
                    .map(|&v| field.element(v))
                    .collect::<Result<Vec<_>>>()?;
                let mut seen = els.clone();
                seen.sort_unstable();
                seen.dedup();
                if seen.len() != els.len() {
                    return Err(Error::DuplicateElements { index: orig + 1 });
                }
                out.push(els);
            }
            out
        }
    };
    let powers = subsets
        .iter()
        .zip(shape.dims())
        .map(|(a, &d)| {
            a.iter()
                .map(|&x| (0..d).map(|e| field.pow(x, e as u64)).collect())
                .collect()
        })
        .collect();
    Ok(CartesianGrid {
        field: field.clone(),
        shape,
        subsets,
        powers,
    })
}

/// `AC_q(d, A)` together with its monomial generator matrix.
#[derive(Debug, Clone)]
pub struct CartesianCode {
    grid: CartesianGrid,
    degree: i64,
    basis: Vec<BoxPoint>,
    generator: Vec<Vec<FieldElement>>,
    echelon: Echelon,
}

impl CartesianCode {
    pub fn grid(&self) -> &CartesianGrid {
        &self.grid
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Monomial exponents of the rows, descending lex.
    pub fn basis(&self) -> &[BoxPoint] {
        &self.basis
    }

    pub fn generator(&self) -> &[Vec<FieldElement>] {
        &self.generator
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn len(&self) -> usize {
        self.grid.n()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn membership(&self, v: &[FieldElement]) -> Result<bool> {
        self.echelon.contains(v)
    }

    /// One row per line, entries as space-separated encodings.
    pub fn generator_text(&self) -> String {
        let mut out = String::new();
        for row in &self.generator {
            let line: Vec<String> = row.iter().map(|x| x.value().to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Builds `AC_q(d, A)`. `d = -1` yields the zero code.
pub fn build_code(grid: &CartesianGrid, d: i64) -> Result<CartesianCode> {
    let k = grid.shape().k();
    if d < -1 || d > k as i64 {
        return Err(Error::DegreeOutOfRange { degree: d, k });
    }
    let basis: Vec<BoxPoint> = if d < 0 {
        Vec::new()
    } else {
        let band = DegreeBand::at_most(grid.shape(), d)?;
        crate::boxcomb::enumerate_band(grid.shape(), &band)
    };
    let generator: Vec<Vec<FieldElement>> =
        basis.iter().map(|b| grid.monomial_values(b)).collect();
    let echelon = Echelon::from_vectors(grid.field(), grid.n(), &generator)?;
    debug_assert_eq!(echelon.rank(), basis.len());
    Ok(CartesianCode {
        grid: grid.clone(),
        degree: d,
        basis,
        generator,
        echelon,
    })
}

/// Positions (0-based) where some vector is nonzero. For a spanning set
/// this is the support of the span.
pub fn support_of_span(vectors: &[Vec<FieldElement>]) -> Result<Vec<usize>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
        return Err(Error::LengthMismatch {
            got: bad.len(),
            expected: n,
        });
    }
    Ok((0..n)
        .filter(|&j| vectors.iter().any(|v| !v[j].is_zero()))
        .collect())
}
