//! Closed-form relative generalized Hamming weights.
//!
//! For the band `u2 < deg <= u1`, let `a_r` be the `r`-th band element in
//! descending lex order and `s` its position inside `F_{<= u1}`. Then
//!
//! ```text
//! M_r = n - encode(a_r) - s + r,     max zeros = encode(a_r) + s - r
//! ```
//!
//! where `encode(a) = sum a_i * prod_{j>i} d_j`.

use serde::{Deserialize, Serialize};

use crate::boxcomb::{self, BoxPoint, BoxShape, DegreeBand};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightQuery {
    pub shape: BoxShape,
    pub band: DegreeBand,
    pub r: u64,
}

impl WeightQuery {
    pub fn new(shape: BoxShape, u2: i64, u1: i64, r: u64) -> Result<Self> {
        let band = DegreeBand::new(&shape, u2, u1)?;
        let len = shape.band_len(&band);
        if r == 0 || r > len {
            return Err(Error::RankOutOfRange { rank: r, len });
        }
        Ok(WeightQuery { shape, band, r })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRecord {
    pub r: u64,
    pub a_r: BoxPoint,
    pub s: u64,
    #[serde(rename = "M_r")]
    pub m_r: u64,
    pub max_zeros: u64,
}

pub fn rghw(shape: &BoxShape, band: &DegreeBand, r: u64) -> Result<WeightRecord> {
    let a_r = boxcomb::nth_band_element(shape, band, r)?;
    let s = boxcomb::lex_rank_in_leq(shape, band.upper(), &a_r)?;
    let enc = shape.encode(&a_r);
    // s >= r: every band element before a_r also precedes it in F_{<= u1}
    let max_zeros = enc + (s - r);
    Ok(WeightRecord {
        r,
        a_r,
        s,
        m_r: shape.n() - max_zeros,
        max_zeros,
    })
}

pub fn rghw_query(query: &WeightQuery) -> Result<WeightRecord> {
    rghw(&query.shape, &query.band, query.r)
}

/// `n - M_r`: the largest number of common grid zeros of an admissible
/// family of `r` polynomials.
pub fn max_zeros(query: &WeightQuery) -> Result<u64> {
    Ok(rghw_query(query)?.max_zeros)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightReport {
    pub shape: BoxShape,
    pub band: DegreeBand,
    pub records: Vec<WeightRecord>,
}

impl WeightReport {
    pub fn values(&self) -> Vec<u64> {
        self.records.iter().map(|w| w.m_r).collect()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.records.windows(2).all(|w| w[0].m_r < w[1].m_r)
    }
}

/// All `M_1, ..., M_l` for the band.
pub fn hierarchy(shape: &BoxShape, band: &DegreeBand) -> Result<WeightReport> {
    let len = shape.band_len(band);
    let records = (1..=len)
        .map(|r| rghw(shape, band, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightReport {
        shape: shape.clone(),
        band: *band,
        records,
    })
}
