//! Combinatorics of the exponent box `F = {0..d_1-1} x ... x {0..d_m-1}`.
//!
//! Points are compared in two ways: the lexicographic order (first
//! differing coordinate decides) and the coordinatewise partial order.
//! Every point has a mixed-radix encoding `sum a_i * prod_{j>i} d_j`; lex
//! order on points is exactly numeric order on encodings, so point sets are
//! kept as sorted encoding vectors ([`PointSet`]).
//!
//! Ranking and unranking inside a degree band never materialize the band:
//! they count completions of a lex prefix with a per-shape table of
//! bounded compositions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of comparing two points coordinatewise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// An exponent vector / box element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoxPoint(Vec<usize>);

impl BoxPoint {
    pub fn new(coords: Vec<usize>) -> Self {
        BoxPoint(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for BoxPoint {
    fn from(v: Vec<usize>) -> Self {
        BoxPoint(v)
    }
}

impl fmt::Display for BoxPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The box `{0..d_1-1} x ... x {0..d_m-1}` with side lengths sorted
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxShape {
    dims: Vec<usize>,
    // permutation[i] = caller's index of sorted coordinate i
    permutation: Vec<usize>,
    radix: Vec<u64>,
    n: u64,
    k: usize,
    // cumulative[i][s] = #{tails (a_i..a_m) with sum <= s}
    cumulative: Vec<Vec<u64>>,
}

impl BoxShape {
    /// Normalizes `sizes` to ascending order. The applied permutation is
    /// kept in [`BoxShape::permutation`].
    pub fn new(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::EmptyShape);
        }
        if sizes.contains(&0) {
            return Err(Error::ZeroSide);
        }
        let mut permutation: Vec<usize> = (0..sizes.len()).collect();
        permutation.sort_by_key(|&i| sizes[i]);
        let dims: Vec<usize> = permutation.iter().map(|&i| sizes[i]).collect();

        let m = dims.len();
        let mut radix = vec![1u64; m];
        for i in (0..m.saturating_sub(1)).rev() {
            radix[i] = radix[i + 1] * dims[i + 1] as u64;
        }
        let n = radix[0] * dims[0] as u64;
        let k: usize = dims.iter().map(|d| d - 1).sum();

        // ways[i][s]: tails starting at coordinate i summing to exactly s
        let mut ways = vec![vec![0u64; k + 1]; m + 1];
        ways[m][0] = 1;
        for i in (0..m).rev() {
            for s in 0..=k {
                ways[i][s] = (0..dims[i]).filter(|&v| v <= s).map(|v| ways[i + 1][s - v]).sum();
            }
        }
        let cumulative = ways
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .scan(0u64, |acc, w| {
                        *acc += w;
                        Some(*acc)
                    })
                    .collect()
            })
            .collect();

        Ok(BoxShape {
            dims,
            permutation,
            radix,
            n,
            k,
            cumulative,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn was_reordered(&self) -> bool {
        self.permutation.iter().enumerate().any(|(i, &p)| i != p)
    }

    pub fn m(&self) -> usize {
        self.dims.len()
    }

    /// Number of points, `d_1 * ... * d_m`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Largest degree in the box, `sum (d_i - 1)`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn contains(&self, a: &BoxPoint) -> bool {
        a.len() == self.m() && a.coords().iter().zip(&self.dims).all(|(x, d)| x < d)
    }

    pub fn check(&self, a: &BoxPoint) -> Result<()> {
        if a.len() != self.m() {
            return Err(Error::ShapeMismatch(format!(
                "point {a} has {} coordinates, box has {}",
                a.len(),
                self.m()
            )));
        }
        if !self.contains(a) {
            return Err(Error::PointOutOfBox {
                point: a.coords().to_vec(),
                dims: self.dims.clone(),
            });
        }
        Ok(())
    }

    pub fn point(&self, coords: &[usize]) -> Result<BoxPoint> {
        let a = BoxPoint(coords.to_vec());
        self.check(&a)?;
        Ok(a)
    }

    /// Mixed-radix encoding `sum a_i * prod_{j>i} d_j`.
    pub fn encode(&self, a: &BoxPoint) -> u64 {
        a.coords()
            .iter()
            .zip(&self.radix)
            .map(|(&x, &w)| x as u64 * w)
            .sum()
    }

    pub fn decode(&self, mut code: u64) -> BoxPoint {
        let mut coords = vec![0; self.m()];
        for (c, &w) in coords.iter_mut().zip(&self.radix) {
            *c = (code / w) as usize;
            code %= w;
        }
        BoxPoint(coords)
    }

    /// Degree of the point with the given encoding.
    pub fn degree_of(&self, mut code: u64) -> usize {
        let mut deg = 0;
        for &w in &self.radix {
            deg += (code / w) as usize;
            code %= w;
        }
        deg
    }

    /// All points in descending lex order.
    pub fn points_desc(&self) -> impl Iterator<Item = BoxPoint> + '_ {
        (0..self.n).rev().map(move |c| self.decode(c))
    }

    /// Number of tails `(a_i, ..., a_m)` whose sum lies in `(lo, hi]`.
    fn tails_in(&self, i: usize, lo: i64, hi: i64) -> u64 {
        let hi = hi.min(self.k as i64);
        if hi < 0 || hi <= lo {
            return 0;
        }
        let cum = &self.cumulative[i];
        let upper = cum[hi as usize];
        let lower = if lo < 0 { 0 } else { cum[lo as usize] };
        upper - lower
    }

    /// Size of the band `F_{u2}^{u1}`.
    pub fn band_len(&self, band: &DegreeBand) -> u64 {
        self.tails_in(0, band.u2, band.u1)
    }

    /// Size of the slice `F_u`.
    pub fn slice_len(&self, u: usize) -> u64 {
        self.tails_in(0, u as i64 - 1, u as i64)
    }
}

/// Degrees `u2 < deg <= u1` with `-1 <= u2 < u1 <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBand {
    u2: i64,
    u1: i64,
}

impl DegreeBand {
    pub fn new(shape: &BoxShape, u2: i64, u1: i64) -> Result<Self> {
        if u2 < -1 || u2 >= u1 || u1 > shape.k() as i64 {
            return Err(Error::InvalidBand {
                u2,
                u1,
                k: shape.k(),
            });
        }
        Ok(DegreeBand { u2, u1 })
    }

    /// `F_{<= d}`, i.e. the band `(-1, d]`.
    pub fn at_most(shape: &BoxShape, d: i64) -> Result<Self> {
        Self::new(shape, -1, d)
    }

    /// Exclusive lower degree bound.
    pub fn lower(&self) -> i64 {
        self.u2
    }

    /// Inclusive upper degree bound.
    pub fn upper(&self) -> i64 {
        self.u1
    }

    pub fn contains_degree(&self, deg: usize) -> bool {
        let deg = deg as i64;
        self.u2 < deg && deg <= self.u1
    }
}

/// A sorted, deduplicated set of point encodings for one shape.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PointSet(Vec<u64>);

impl PointSet {
    pub fn new() -> Self {
        PointSet(Vec::new())
    }

    pub fn from_codes(codes: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = codes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        PointSet(v)
    }

    pub fn from_points<'a>(shape: &BoxShape, points: impl IntoIterator<Item = &'a BoxPoint>) -> Self {
        Self::from_codes(points.into_iter().map(|a| shape.encode(a)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, code: u64) -> bool {
        self.0.binary_search(&code).is_ok()
    }

    pub fn codes(&self) -> &[u64] {
        &self.0
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.iter().all(|&c| other.contains(c))
    }

    pub fn points(&self, shape: &BoxShape) -> Vec<BoxPoint> {
        self.0.iter().map(|&c| shape.decode(c)).collect()
    }
}

fn same_len(a: &BoxPoint, b: &BoxPoint) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

pub fn cmp_lex(a: &BoxPoint, b: &BoxPoint) -> Result<Ordering> {
    same_len(a, b)?;
    Ok(a.coords().cmp(b.coords()))
}

pub fn cmp_partial(a: &BoxPoint, b: &BoxPoint) -> Result<PartialOrdering> {
    same_len(a, b)?;
    let le = a.coords().iter().zip(b.coords()).all(|(x, y)| x <= y);
    let ge = a.coords().iter().zip(b.coords()).all(|(x, y)| x >= y);
    Ok(match (le, ge) {
        (true, true) => PartialOrdering::Equal,
        (true, false) => PartialOrdering::Less,
        (false, true) => PartialOrdering::Greater,
        (false, false) => PartialOrdering::Incomparable,
    })
}

/// `a <= b` coordinatewise. Both points must have equal length.
pub fn dominated_by(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The band `F_{u2}^{u1}` in descending lex order.
pub fn enumerate_band(shape: &BoxShape, band: &DegreeBand) -> Vec<BoxPoint> {
    shape
        .points_desc()
        .filter(|a| band.contains_degree(a.degree()))
        .collect()
}

/// The `r`-th (1-based) element of the band in descending lex order,
/// found digit by digit without listing the band.
pub fn nth_band_element(shape: &BoxShape, band: &DegreeBand, r: u64) -> Result<BoxPoint> {
    let len = shape.band_len(band);
    if r == 0 || r > len {
        return Err(Error::RankOutOfRange { rank: r, len });
    }
    let mut rest = r;
    let mut used = 0i64;
    let mut coords = Vec::with_capacity(shape.m());
    for (i, &d) in shape.dims().iter().enumerate() {
        let mut chosen = None;
        for v in (0..d as i64).rev() {
            let c = shape.tails_in(i + 1, band.u2 - used - v, band.u1 - used - v);
            if rest <= c {
                chosen = Some(v);
                break;
            }
            rest -= c;
        }
        let v = chosen.expect("band count covers the rank");
        used += v;
        coords.push(v as usize);
    }
    Ok(BoxPoint(coords))
}

/// 1-based position of `a` in the band, descending lex.
pub fn rank_in_band(shape: &BoxShape, band: &DegreeBand, a: &BoxPoint) -> Result<u64> {
    shape.check(a)?;
    if !band.contains_degree(a.degree()) {
        return Err(Error::DegreeTooHigh {
            degree: a.degree(),
            bound: band.u1,
        });
    }
    let mut before = 0u64;
    let mut used = 0i64;
    for (i, (&x, &d)) in a.coords().iter().zip(shape.dims()).enumerate() {
        for v in (x as i64 + 1)..d as i64 {
            before += shape.tails_in(i + 1, band.u2 - used - v, band.u1 - used - v);
        }
        used += x as i64;
    }
    Ok(before + 1)
}

/// Position `s` of `a` inside `F_{<= u1}` sorted descending lex.
pub fn lex_rank_in_leq(shape: &BoxShape, u1: i64, a: &BoxPoint) -> Result<u64> {
    shape.check(a)?;
    if a.degree() as i64 > u1 {
        return Err(Error::DegreeTooHigh {
            degree: a.degree(),
            bound: u1,
        });
    }
    let band = DegreeBand::at_most(shape, u1.min(shape.k() as i64))?;
    rank_in_band(shape, &band, a)
}

/// First `r` band elements in descending lex order (the set `N(r)`).
pub fn band_prefix(shape: &BoxShape, band: &DegreeBand, r: u64) -> Result<Vec<BoxPoint>> {
    let len = shape.band_len(band);
    if r > len {
        return Err(Error::RankOutOfRange { rank: r, len });
    }
    Ok(shape
        .points_desc()
        .filter(|a| band.contains_degree(a.degree()))
        .take(r as usize)
        .collect())
}

/// `{b in F : a <= b for some a in S}`.
pub fn shadow(shape: &BoxShape, set: &PointSet) -> PointSet {
    let gens = set.points(shape);
    PointSet::from_codes((0..shape.n()).filter(|&c| {
        let b = shape.decode(c);
        gens.iter().any(|a| dominated_by(a.coords(), b.coords()))
    }))
}

/// `F \ shadow(S)`.
pub fn footprint(shape: &BoxShape, set: &PointSet) -> PointSet {
    let sh = shadow(shape, set);
    PointSet::from_codes((0..shape.n()).filter(|&c| !sh.contains(c)))
}

fn slice_of(shape: &BoxShape, set: PointSet, u: usize) -> PointSet {
    PointSet::from_codes(set.0.into_iter().filter(|&c| shape.degree_of(c) == u))
}

/// Degree-`u` part of the shadow.
pub fn shadow_slice(shape: &BoxShape, set: &PointSet, u: usize) -> PointSet {
    slice_of(shape, shadow(shape, set), u)
}

/// Degree-`u` part of the footprint.
pub fn footprint_slice(shape: &BoxShape, set: &PointSet, u: usize) -> PointSet {
    slice_of(shape, footprint(shape, set), u)
}

/// First `count` elements of `F_u` in descending lex order (`L(S)` for
/// `|S| = count`).
pub fn lex_prefix_of_slice(shape: &BoxShape, u: usize, count: usize) -> Result<PointSet> {
    let len = shape.slice_len(u) as usize;
    if count > len {
        return Err(Error::CountOutOfRange { count, len });
    }
    Ok(PointSet::from_codes(
        (0..shape.n())
            .rev()
            .filter(|&c| shape.degree_of(c) == u)
            .take(count),
    ))
}

/// Shadow size of the first `r` elements of `F_{<= d}`:
/// `n - encode(a_r)` where `a_r` is the `r`-th element.
pub fn shadow_card_of_leq_prefix(shape: &BoxShape, d: i64, r: u64) -> Result<u64> {
    let band = DegreeBand::at_most(shape, d)?;
    let a_r = nth_band_element(shape, &band, r)?;
    Ok(shape.n() - shape.encode(&a_r))
}
