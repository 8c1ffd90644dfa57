//! Sparse polynomials whose exponents live in the box, i.e. reduced
//! modulo the vanishing polynomials of the grid.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::boxcomb::{self, BoxPoint, BoxShape, DegreeBand, PointSet};
use crate::codes::CartesianGrid;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Graded lex: total degree first, then lex.
pub fn cmp_graded_lex(a: &BoxPoint, b: &BoxPoint) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coords().cmp(b.coords()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingTerm {
    pub exponent: BoxPoint,
    pub coefficient: FieldElement,
}

/// A polynomial with every `deg_{x_i} < d_i`. Zero coefficients are never
/// stored, so the zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    shape: BoxShape,
    terms: BTreeMap<BoxPoint, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &Field, shape: &BoxShape) -> Self {
        MultiPoly {
            field: field.clone(),
            shape: shape.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field, shape: &BoxShape) -> Self {
        Self::monomial(field, shape, BoxPoint::new(vec![0; shape.m()]), FieldElement::ONE)
            .expect("origin is in every box")
    }

    pub fn monomial(
        field: &Field,
        shape: &BoxShape,
        exponent: BoxPoint,
        coefficient: FieldElement,
    ) -> Result<Self> {
        Self::from_terms(field, shape, [(exponent, coefficient)])
    }

    /// Sums the given terms. Exponents outside the box are rejected.
    pub fn from_terms(
        field: &Field,
        shape: &BoxShape,
        terms: impl IntoIterator<Item = (BoxPoint, FieldElement)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, shape);
        for (e, c) in terms {
            if !shape.contains(&e) {
                return Err(Error::ExponentOutOfBox {
                    exponent: e.coords().to_vec(),
                    dims: shape.dims().to_vec(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Sums terms with arbitrary exponents, reducing each `x_i^e` with
    /// `e >= d_i` modulo `prod_{gamma in A_i} (x_i - gamma)`.
    pub fn from_terms_on_grid(
        grid: &CartesianGrid,
        terms: impl IntoIterator<Item = (Vec<usize>, FieldElement)>,
    ) -> Result<Self> {
        let field = grid.field();
        let shape = grid.shape();
        let vanishing: Vec<Vec<FieldElement>> = grid
            .subsets()
            .iter()
            .map(|a| vanishing_poly(field, a))
            .collect();
        let mut p = Self::zero(field, shape);
        for (exps, c) in terms {
            if exps.len() != shape.m() {
                return Err(Error::ShapeMismatch(format!(
                    "exponent of length {} for {} variables",
                    exps.len(),
                    shape.m()
                )));
            }
            // expand prod_i (x_i^{e_i} mod g_i) term by term
            let mut partial: Vec<(Vec<usize>, FieldElement)> = vec![(Vec::new(), c)];
            for (i, &e) in exps.iter().enumerate() {
                let rem = reduce_power(field, &vanishing[i], e);
                let mut next = Vec::new();
                for (prefix, pc) in &partial {
                    for (deg, &rc) in rem.iter().enumerate() {
                        if rc.is_zero() {
                            continue;
                        }
                        let mut ex = prefix.clone();
                        ex.push(deg);
                        next.push((ex, field.mul(*pc, rc)));
                    }
                }
                partial = next;
            }
            for (ex, pc) in partial {
                p.add_term(BoxPoint::new(ex), pc);
            }
        }
        Ok(p)
    }

    fn add_term(&mut self, e: BoxPoint, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        let sum = match self.terms.get(&e) {
            Some(&old) => f.add(old, c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BoxPoint, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &BoxPoint) -> FieldElement {
        self.terms.get(e).copied().unwrap_or(FieldElement::ZERO)
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|e| e.degree() as i64).max().unwrap_or(-1)
    }

    pub fn leading_term(&self) -> Option<LeadingTerm> {
        self.terms
            .iter()
            .max_by(|a, b| cmp_graded_lex(a.0, b.0))
            .map(|(e, &c)| LeadingTerm {
                exponent: e.clone(),
                coefficient: c,
            })
    }

    /// Multiplies by `(x_var - gamma)`. The caller guarantees the result
    /// stays inside the box.
    fn mul_linear(&self, var: usize, gamma: FieldElement) -> MultiPoly {
        let f = &self.field;
        let minus_gamma = f.neg(gamma);
        let mut out = MultiPoly::zero(f, &self.shape);
        for (e, &c) in &self.terms {
            let mut up = e.coords().to_vec();
            up[var] += 1;
            out.add_term(BoxPoint::new(up), c);
            out.add_term(e.clone(), f.mul(c, minus_gamma));
        }
        out
    }

    /// Value at every grid point, in grid order.
    pub fn evaluate_on_grid(&self, grid: &CartesianGrid) -> Result<Vec<FieldElement>> {
        if grid.shape() != &self.shape {
            return Err(Error::ShapeMismatch(format!(
                "polynomial box {:?} vs grid box {:?}",
                self.shape.dims(),
                grid.shape().dims()
            )));
        }
        let f = &self.field;
        Ok((0..grid.n())
            .map(|j| {
                self.terms.iter().fold(FieldElement::ZERO, |acc, (e, &c)| {
                    f.add(acc, f.mul(c, grid.monomial_at(e.coords(), j)))
                })
            })
            .collect())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&BoxPoint, &FieldElement)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| cmp_graded_lex(b.0, a.0));
        for (t, (e, c)) in ordered.into_iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| match x {
                    1 => format!("x{}", i + 1),
                    _ => format!("x{}^{}", i + 1, x),
                })
                .collect();
            match (vars.is_empty(), c.value()) {
                (true, v) => write!(f, "{v}")?,
                (false, 1) => write!(f, "{}", vars.join("*"))?,
                (false, v) => write!(f, "{v}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Coefficients (constant first) of `prod_{gamma in a} (x - gamma)`.
fn vanishing_poly(field: &Field, a: &[FieldElement]) -> Vec<FieldElement> {
    let mut coeffs = vec![FieldElement::ONE];
    for &g in a {
        let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.sub(next[i], field.mul(c, g));
        }
        coeffs = next;
    }
    coeffs
}

/// `x^e mod g` for monic `g`, as `deg g` coefficients.
fn reduce_power(field: &Field, g: &[FieldElement], e: usize) -> Vec<FieldElement> {
    let d = g.len() - 1;
    let mut cur = vec![FieldElement::ZERO; d];
    if d == 0 {
        return cur;
    }
    cur[0] = FieldElement::ONE;
    for _ in 0..e {
        // multiply by x, then fold the x^d coefficient back
        let top = cur[d - 1];
        for i in (1..d).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = FieldElement::ZERO;
        if !top.is_zero() {
            for i in 0..d {
                cur[i] = field.sub(cur[i], field.mul(top, g[i]));
            }
        }
    }
    cur
}

/// `f_b = prod_i prod_{j < b_i} (x_i - A_i[j])`.
pub fn make_maximal_poly(grid: &CartesianGrid, b: &BoxPoint) -> Result<MultiPoly> {
    grid.shape().check(b)?;
    let mut p = MultiPoly::one(grid.field(), grid.shape());
    for (i, &bi) in b.coords().iter().enumerate() {
        for &gamma in &grid.subsets()[i][..bi] {
            p = p.mul_linear(i, gamma);
        }
    }
    Ok(p)
}

/// Bit mask over grid positions where `values` vanish. Grids up to 64
/// points only.
pub(crate) fn zero_mask(values: &[FieldElement]) -> u64 {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_zero())
        .fold(0u64, |m, (j, _)| m | 1 << j)
}

/// Number of grid points where every polynomial vanishes.
pub fn common_zero_count(family: &[MultiPoly], grid: &CartesianGrid) -> Result<u64> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut alive = vec![true; grid.n()];
    for f in family {
        let vals = f.evaluate_on_grid(grid)?;
        for (a, v) in alive.iter_mut().zip(vals) {
            *a &= v.is_zero();
        }
    }
    Ok(alive.into_iter().filter(|&a| a).count() as u64)
}

/// Number of box monomials divisible by none of `lts`.
pub fn footprint_count(shape: &BoxShape, lts: &[BoxPoint]) -> u64 {
    let set = PointSet::from_points(shape, lts);
    shape.n() - boxcomb::shadow(shape, &set).len() as u64
}

/// `[f_{a_1}, ..., f_{a_r}]` for the first `r` band elements in
/// descending lex order.
pub fn maximal_family(grid: &CartesianGrid, band: &DegreeBand, r: u64) -> Result<Vec<MultiPoly>> {
    let len = grid.shape().band_len(band);
    if r == 0 || r > len {
        return Err(Error::RankOutOfRange { rank: r, len });
    }
    boxcomb::band_prefix(grid.shape(), band, r)?
        .iter()
        .map(|a| make_maximal_poly(grid, a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_grid, SubsetPolicy};
    use crate::linalg;

    fn grid(q: u32, sizes: &[usize]) -> CartesianGrid {
        build_grid(&Field::new(q).unwrap(), sizes, &SubsetPolicy::First).unwrap()
    }

    fn pt(c: &[usize]) -> BoxPoint {
        BoxPoint::new(c.to_vec())
    }

    fn el(f: &Field, v: u32) -> FieldElement {
        f.element(v).unwrap()
    }

    #[test]
    fn leading_terms() {
        let g = grid(3, &[2, 3]);
        let f = g.field();
        let p = MultiPoly::from_terms(
            f,
            g.shape(),
            [(pt(&[1, 1]), el(f, 1)), (pt(&[0, 2]), el(f, 1))],
        )
        .unwrap();
        assert_eq!(p.leading_term().unwrap().exponent, pt(&[1, 1]));
        assert_eq!(MultiPoly::zero(f, g.shape()).leading_term(), None);
        assert_eq!(MultiPoly::zero(f, g.shape()).degree(), -1);

        let fb = make_maximal_poly(&g, &pt(&[1, 2])).unwrap();
        let lt = fb.leading_term().unwrap();
        assert_eq!(lt.exponent, pt(&[1, 2]));
        assert_eq!(lt.coefficient, FieldElement::ONE);
    }

    #[test]
    fn out_of_box_rejected_without_grid() {
        let g = grid(3, &[2, 3]);
        let err = MultiPoly::monomial(g.field(), g.shape(), pt(&[2, 0]), FieldElement::ONE);
        assert!(matches!(err, Err(Error::ExponentOutOfBox { .. })));
    }

    #[test]
    fn grid_reduction_preserves_values() {
        let g = grid(3, &[2, 3]);
        let f = g.field();
        // x1^2 on {0,1} equals x1; x2^3 on {0,1,2} equals x2
        let p = MultiPoly::from_terms_on_grid(&g, [(vec![2, 3], el(f, 2)), (vec![0, 4], el(f, 1))]).unwrap();
        let expect = MultiPoly::from_terms(
            f,
            g.shape(),
            [(pt(&[1, 1]), el(f, 2)), (pt(&[0, 2]), el(f, 1))],
        )
        .unwrap();
        assert_eq!(p, expect);
        // direct evaluation of the unreduced monomials agrees
        let vals = p.evaluate_on_grid(&g).unwrap();
        for (j, point) in g.points().iter().enumerate() {
            let t1 = f.mul(el(f, 2), f.mul(f.pow(point[0], 2), f.pow(point[1], 3)));
            let t2 = f.pow(point[1], 4);
            assert_eq!(vals[j], f.add(t1, t2));
        }
    }

    #[test]
    fn maximal_polys_expand() {
        let g = grid(3, &[2, 3]);
        assert_eq!(make_maximal_poly(&g, &pt(&[0, 0])).unwrap().to_string(), "1");
        let fb = make_maximal_poly(&g, &pt(&[1, 2])).unwrap();
        assert_eq!(fb.to_string(), "x1*x2^2 + 2*x1*x2");
        let g2 = grid(2, &[2, 2]);
        assert_eq!(make_maximal_poly(&g2, &pt(&[1, 1])).unwrap().to_string(), "x1*x2");
        assert!(make_maximal_poly(&g2, &pt(&[2, 0])).is_err());
    }

    #[test]
    fn evaluation() {
        let g = grid(2, &[2, 2]);
        let f = g.field();
        let one = MultiPoly::one(f, g.shape());
        assert!(one.evaluate_on_grid(&g).unwrap().iter().all(|&v| v == FieldElement::ONE));
        let x1 = MultiPoly::monomial(f, g.shape(), pt(&[1, 0]), FieldElement::ONE).unwrap();
        let v: Vec<u32> = x1.evaluate_on_grid(&g).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(v, vec![0, 0, 1, 1]);
        let other = grid(3, &[2, 3]);
        assert!(x1.evaluate_on_grid(&other).is_err());
    }

    #[test]
    fn nonvanishing_set_is_the_shadow() {
        for (q, sizes) in [(3, &[2, 3][..]), (4, &[3, 3]), (4, &[2, 2, 3]), (3, &[3, 3])] {
            let g = grid(q, sizes);
            let s = g.shape();
            for code in 0..s.n() {
                let b = s.decode(code);
                let vals = make_maximal_poly(&g, &b).unwrap().evaluate_on_grid(&g).unwrap();
                for (j, v) in vals.iter().enumerate() {
                    let idx = s.decode(j as u64);
                    let in_shadow = boxcomb::dominated_by(b.coords(), idx.coords());
                    assert_eq!(!v.is_zero(), in_shadow, "b={b} point={idx}");
                }
            }
        }
    }

    #[test]
    fn maximal_poly_degrees_over_gf4() {
        for sizes in [&[2, 2][..], &[2, 3], &[3, 3], &[2, 4]] {
            let g = grid(4, sizes);
            for code in 0..g.shape().n() {
                let b = g.shape().decode(code);
                let fb = make_maximal_poly(&g, &b).unwrap();
                assert_eq!(fb.degree(), b.degree() as i64);
                let lt = fb.leading_term().unwrap();
                assert_eq!(lt.exponent, b);
                assert_eq!(lt.coefficient, FieldElement::ONE);
            }
        }
    }

    #[test]
    fn zero_counts() {
        let g = grid(2, &[2, 2]);
        let f = g.field();
        let x1 = MultiPoly::monomial(f, g.shape(), pt(&[1, 0]), FieldElement::ONE).unwrap();
        let x2 = MultiPoly::monomial(f, g.shape(), pt(&[0, 1]), FieldElement::ONE).unwrap();
        assert_eq!(common_zero_count(std::slice::from_ref(&x1), &g).unwrap(), 2);
        assert_eq!(common_zero_count(&[x1, x2], &g).unwrap(), 1);
        assert_eq!(common_zero_count(&[], &g), Err(Error::EmptyFamily));

        let g3 = grid(3, &[2, 3]);
        let fam = [
            make_maximal_poly(&g3, &pt(&[1, 1])).unwrap(),
            make_maximal_poly(&g3, &pt(&[1, 0])).unwrap(),
        ];
        assert_eq!(common_zero_count(&fam, &g3).unwrap(), 3);
    }

    #[test]
    fn footprints() {
        let s = BoxShape::new(&[2, 3]).unwrap();
        assert_eq!(footprint_count(&s, &[pt(&[0, 0])]), 0);
        assert_eq!(footprint_count(&s, &[]), 6);
        assert_eq!(footprint_count(&s, &[pt(&[1, 1])]), 4);
    }

    #[test]
    fn maximal_families() {
        let g = grid(2, &[2, 2]);
        let band = DegreeBand::new(g.shape(), -1, 1).unwrap();
        let fam = maximal_family(&g, &band, 1).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].to_string(), "x1");
        assert_eq!(g.n() as u64 - common_zero_count(&fam, &g).unwrap(), 2);
        assert!(maximal_family(&g, &band, 4).is_err());

        let g3 = grid(3, &[2, 3]);
        let band = DegreeBand::new(g3.shape(), 0, 2).unwrap();
        let fam = maximal_family(&g3, &band, 1).unwrap();
        assert_eq!(fam[0].to_string(), "x1*x2");
        assert_eq!(6 - common_zero_count(&fam, &g3).unwrap(), 2);
    }

    #[test]
    fn maximal_families_satisfy_generation_conditions() {
        let g = grid(4, &[3, 3]);
        let k = g.shape().k() as i64;
        for u2 in -1..k {
            for u1 in u2 + 1..=k {
                let band = DegreeBand::new(g.shape(), u2, u1).unwrap();
                let len = g.shape().band_len(&band);
                let fam = maximal_family(&g, &band, len).unwrap();
                let lts: Vec<BoxPoint> = fam.iter().map(|p| p.leading_term().unwrap().exponent).collect();
                let distinct = PointSet::from_points(g.shape(), &lts);
                assert_eq!(distinct.len() as u64, len);
                assert!(lts.iter().all(|e| band.contains_degree(e.degree())));
                let evals: Vec<Vec<FieldElement>> =
                    fam.iter().map(|p| p.evaluate_on_grid(&g).unwrap()).collect();
                assert_eq!(linalg::rank(g.field(), g.n(), &evals).unwrap() as u64, len);
            }
        }
    }

    #[test]
    fn rendering() {
        let g = grid(3, &[2, 3]);
        let f = g.field();
        let p = MultiPoly::from_terms(
            f,
            g.shape(),
            [
                (pt(&[0, 0]), el(f, 2)),
                (pt(&[1, 0]), el(f, 1)),
                (pt(&[0, 2]), el(f, 2)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "2*x2^2 + x1 + 2");
        assert_eq!(MultiPoly::zero(f, g.shape()).to_string(), "0");
    }
}
