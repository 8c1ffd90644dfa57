//! Formula-versus-oracle sweeps over parameter grids.

use rayon::prelude::*;

use crate::boxcomb::{BoxShape, DegreeBand};
use crate::codes::{build_code, build_grid, SubsetPolicy};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::oracle::{self, OracleBudget};
use crate::weights;

/// Which `(q, shape)` pairs to sweep. A shape is used with a field only
/// when its largest side fits (`d_m <= q`) and it has at most `max_n`
/// points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub fields: Vec<u32>,
    pub shapes: Vec<Vec<usize>>,
    pub max_n: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            fields: vec![2, 3, 4],
            shapes: vec![
                vec![2],
                vec![3],
                vec![2, 2],
                vec![2, 3],
                vec![3, 3],
                vec![2, 2, 2],
            ],
            max_n: 9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tuple {
    pub q: u32,
    pub sizes: Vec<usize>,
    pub u2: i64,
    pub u1: i64,
    pub r: u64,
}

impl Tuple {
    pub fn n(&self) -> u64 {
        self.sizes.iter().map(|&d| d as u64).product()
    }
}

/// Every admissible `(q, shape, u2, u1, r)` of the grid, in a fixed order.
pub fn tuples(spec: &GridSpec) -> Result<Vec<Tuple>> {
    let mut out = Vec::new();
    for &q in &spec.fields {
        for sizes in &spec.shapes {
            let shape = BoxShape::new(sizes)?;
            let fits = shape.dims().last().is_some_and(|&d| d as u64 <= q as u64);
            if !fits || shape.n() > spec.max_n {
                continue;
            }
            let k = shape.k() as i64;
            for u2 in -1..k {
                for u1 in u2 + 1..=k {
                    let band = DegreeBand::new(&shape, u2, u1)?;
                    for r in 1..=shape.band_len(&band) {
                        out.push(Tuple {
                            q,
                            sizes: shape.dims().to_vec(),
                            u2,
                            u1,
                            r,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Mismatch => "MISMATCH",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub budget: OracleBudget,
    pub policy: SubsetPolicy,
    /// Also run the coordinate-window oracle.
    pub window: bool,
    /// Test hook: adds one to every formula value.
    pub corrupt_formula: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: OracleBudget::default(),
            policy: SubsetPolicy::First,
            window: false,
            corrupt_formula: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyRow {
    pub tuple: Tuple,
    pub formula: u64,
    pub oracle: Option<u64>,
    pub window: Option<u64>,
    pub status: Status,
    pub states: u64,
    /// Rendered oracle witness, kept for mismatches.
    pub witness: Option<String>,
}

pub fn run_tuple(t: &Tuple, opts: &VerifyOptions) -> Result<VerifyRow> {
    let field = Field::new(t.q)?;
    let grid = build_grid(&field, &t.sizes, &opts.policy)?;
    let band = DegreeBand::new(grid.shape(), t.u2, t.u1)?;
    let mut formula = weights::rghw(grid.shape(), &band, t.r)?.m_r;
    if opts.corrupt_formula {
        formula += 1;
    }
    let c1 = build_code(&grid, t.u1)?;
    let c2 = build_code(&grid, t.u2)?;

    let skipped = |states| VerifyRow {
        tuple: t.clone(),
        formula,
        oracle: None,
        window: None,
        status: Status::Skipped,
        states,
        witness: None,
    };
    let support = match oracle::oracle_rghw_support(&c1, &c2, t.r, opts.budget) {
        Ok(res) => res,
        Err(Error::BudgetExceeded { states_explored, .. }) => return Ok(skipped(states_explored)),
        Err(e) => return Err(e),
    };
    let window = if opts.window {
        match oracle::oracle_rghw_window(&c1, &c2, t.r, opts.budget) {
            Ok(res) => Some(res.value),
            Err(Error::BudgetExceeded { states_explored, .. }) => {
                return Ok(skipped(states_explored))
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let agree = support.value == formula && window.is_none_or(|w| w == formula);
    let witness = (!agree).then(|| format!("{:?}", support.witness));
    Ok(VerifyRow {
        tuple: t.clone(),
        formula,
        oracle: Some(support.value),
        window,
        status: if agree { Status::Ok } else { Status::Mismatch },
        states: support.states_explored,
        witness,
    })
}

/// Runs every tuple (in parallel); rows come back in tuple order.
pub fn run(tuples: &[Tuple], opts: &VerifyOptions) -> Result<Vec<VerifyRow>> {
    tuples.par_iter().map(|t| run_tuple(t, opts)).collect()
}
