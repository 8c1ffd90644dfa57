//! Brute-force computation of `M_r(C1, C2)` for tiny codes.
//!
//! Three formulations, each exact:
//!
//! * [`oracle_rghw_support`]: minimum support of an `r`-dimensional
//!   `D <= C1` with `D & C2 = {0}`. Every such `D` is the graph
//!   `{u + lambda(u) : u in U}` of a linear map `lambda: U -> C2`, with `U`
//!   an `r`-dimensional subspace of the complement `W` spanned by the band
//!   monomials. `U` is walked through its reduced echelon forms.
//! * [`oracle_rghw_window`]: minimum `|J|` with
//!   `dim (C1)_J - dim (C2)_J = r`, over every coordinate subset `J`.
//! * [`oracle_max_zeros_families`]: `n - max |Z(f_1..f_r)|` over reduced
//!   families with distinct band leading terms.
//!
//! The objective only depends on zero/support masks of the individual
//! basis vectors, so candidates for each echelon row are deduplicated by
//! mask before a branch-and-bound over rows. Grids are limited to 64 points.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use crate::boxcomb::{self, BoxPoint, DegreeBand};
use crate::codes::{self, CartesianCode, CartesianGrid};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{self, Echelon};
use crate::poly::{self, cmp_graded_lex, MultiPoly};

const MAX_POINTS: u64 = 64;
const TIME_CHECK_EVERY: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    max_states: u64,
    time_cap: Duration,
}

impl OracleBudget {
    pub fn new(max_states: u64, time_cap: Duration) -> Result<Self> {
        if max_states == 0 || time_cap.is_zero() {
            return Err(Error::InvalidBudget);
        }
        Ok(OracleBudget {
            max_states,
            time_cap,
        })
    }

    pub fn max_states(&self) -> u64 {
        self.max_states
    }

    pub fn time_cap(&self) -> Duration {
        self.time_cap
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_states: 100_000_000,
            time_cap: Duration::from_secs(300),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    Support,
    Window,
    Families,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// A basis of the minimizing subspace `D`.
    Subspace(Vec<Vec<FieldElement>>),
    /// The minimizing coordinate set `J` (0-based positions).
    Window(Vec<usize>),
    /// The maximizing polynomial family.
    Family(Vec<MultiPoly>),
}

/// `value` is always the `M_r` estimate, for every method.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: u64,
    pub witness: Witness,
    pub states_explored: u64,
    pub method: OracleMethod,
}

impl OracleResult {
    /// Recomputes the objective from the witness alone and checks its
    /// admissibility for the pair `C2 < C1`.
    pub fn reverify(&self, c1: &CartesianCode, c2: &CartesianCode, r: u64) -> Result<bool> {
        let band = check_nesting(c1, c2)?;
        let grid = c1.grid();
        let field = grid.field();
        let n = grid.n();
        Ok(match &self.witness {
            Witness::Subspace(basis) => {
                let in_c1 = basis
                    .iter()
                    .map(|v| c1.membership(v))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|b| b);
                let own_rank = linalg::rank(field, n, basis)?;
                let mut joint = Echelon::from_vectors(field, n, c2.generator())?;
                for v in basis {
                    joint.insert(v)?;
                }
                let trivial_meet = joint.rank() == c2.dim() + basis.len();
                let support = codes::support_of_span(basis)?.len() as u64;
                in_c1 && own_rank as u64 == r && trivial_meet && support == self.value
            }
            Witness::Window(j) => {
                let mask = j.iter().fold(0u64, |m, &i| m | 1 << i);
                let gap = restricted_dim(c1, mask)? - restricted_dim(c2, mask)?;
                gap as u64 == r && j.len() as u64 == self.value
            }
            Witness::Family(fam) => {
                let mut lts = Vec::with_capacity(fam.len());
                for f in fam {
                    match f.leading_term() {
                        Some(lt) if band.contains_degree(lt.exponent.degree()) => {
                            lts.push(lt.exponent)
                        }
                        _ => return Ok(false),
                    }
                }
                lts.sort();
                lts.dedup();
                let zeros = poly::common_zero_count(fam, grid)?;
                lts.len() as u64 == r && n as u64 - zeros == self.value
            }
        })
    }
}

struct Meter {
    budget: OracleBudget,
    start: Instant,
    states: u64,
}

impl Meter {
    fn new(budget: OracleBudget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            states: 0,
        }
    }

    fn exceeded(&self, reason: &str) -> Error {
        Error::BudgetExceeded {
            states_explored: self.states,
            reason: reason.to_string(),
        }
    }

    /// Refuses work that would certainly blow the state cap.
    fn reserve(&self, upcoming: Option<u64>) -> Result<()> {
        match upcoming.and_then(|u| u.checked_add(self.states)) {
            Some(total) if total <= self.budget.max_states => Ok(()),
            _ => Err(self.exceeded("state cap")),
        }
    }

    fn tick(&mut self, k: u64) -> Result<()> {
        let before = self.states;
        self.states += k;
        if self.states > self.budget.max_states {
            return Err(self.exceeded("state cap"));
        }
        if before / TIME_CHECK_EVERY != self.states / TIME_CHECK_EVERY
            && self.start.elapsed() > self.budget.time_cap
        {
            return Err(self.exceeded("time cap"));
        }
        Ok(())
    }
}

fn check_nesting(c1: &CartesianCode, c2: &CartesianCode) -> Result<DegreeBand> {
    if !c1.grid().same_grid(c2.grid()) {
        return Err(Error::InvalidNesting("codes live on different grids".into()));
    }
    if c2.degree() >= c1.degree() {
        return Err(Error::InvalidNesting(format!(
            "C2 degree {} is not below C1 degree {}",
            c2.degree(),
            c1.degree()
        )));
    }
    DegreeBand::new(c1.grid().shape(), c2.degree(), c1.degree())
}

fn check_grid(grid: &CartesianGrid) -> Result<()> {
    if grid.shape().n() > MAX_POINTS {
        return Err(Error::GridTooLarge {
            n: grid.shape().n(),
            max: MAX_POINTS,
        });
    }
    Ok(())
}

fn check_rank(r: u64, len: u64) -> Result<()> {
    if r == 0 || r > len {
        return Err(Error::RankOutOfRange { rank: r, len });
    }
    Ok(())
}

/// Calls `visit` with every vector of `GF(q)^len`, ascending encoding with
/// the last entry varying fastest.
fn for_each_coeffs(
    field: &Field,
    len: usize,
    mut visit: impl FnMut(&[FieldElement]) -> Result<()>,
) -> Result<()> {
    let q = field.order();
    let mut digits = vec![0u32; len];
    let mut coeffs = vec![FieldElement::ZERO; len];
    loop {
        visit(&coeffs)?;
        let mut i = len;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                coeffs[i] = field.element(digits[i])?;
                break;
            }
            digits[i] = 0;
            coeffs[i] = FieldElement::ZERO;
        }
    }
}

fn checked_pow(q: u32, e: usize) -> Option<u64> {
    (q as u64).checked_pow(e as u32)
}

fn nonzero_mask(v: &[FieldElement]) -> u64 {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .fold(0u64, |m, (j, _)| m | 1 << j)
}

/// r-subsets of `0..len` in lex order of index lists.
fn combinations(len: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (r <= len).then(|| (0..r).collect::<Vec<usize>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if succ[i] < len - r + i {
                succ[i] += 1;
                for j in i + 1..r {
                    succ[j] = succ[j - 1] + 1;
                }
                next = Some(succ);
                break;
            }
        }
        Some(cur)
    })
}

/// One candidate list per echelon row: (mask, index into `store`).
type RowChoices = Vec<(u64, usize)>;

struct MinUnion<'a> {
    rows: &'a [RowChoices],
    best: u32,
    best_pick: Option<Vec<usize>>,
    prune: bool,
}

impl MinUnion<'_> {
    fn search(&mut self, meter: &mut Meter, row: usize, acc: u64, picks: &mut Vec<usize>) -> Result<()> {
        for &(mask, idx) in &self.rows[row] {
            meter.tick(1)?;
            if self.prune && mask.count_ones() >= self.best {
                // rows are sorted by popcount
                break;
            }
            let union = acc | mask;
            if self.prune && union.count_ones() >= self.best {
                continue;
            }
            picks.push(idx);
            if row + 1 == self.rows.len() {
                if union.count_ones() < self.best {
                    self.best = union.count_ones();
                    self.best_pick = Some(picks.clone());
                }
            } else {
                self.search(meter, row + 1, union, picks)?;
            }
            picks.pop();
        }
        Ok(())
    }
}

struct MaxMeet<'a> {
    rows: &'a [RowChoices],
    best: i64,
    best_pick: Option<Vec<usize>>,
    prune: bool,
}

impl MaxMeet<'_> {
    fn search(&mut self, meter: &mut Meter, row: usize, acc: u64, picks: &mut Vec<usize>) -> Result<()> {
        for &(mask, idx) in &self.rows[row] {
            meter.tick(1)?;
            if self.prune && (mask.count_ones() as i64) <= self.best {
                // rows are sorted by popcount, descending
                break;
            }
            let meet = acc & mask;
            if self.prune && (meet.count_ones() as i64) <= self.best {
                continue;
            }
            picks.push(idx);
            if row + 1 == self.rows.len() {
                if meet.count_ones() as i64 > self.best {
                    self.best = meet.count_ones() as i64;
                    self.best_pick = Some(picks.clone());
                }
            } else {
                self.search(meter, row + 1, meet, picks)?;
            }
            picks.pop();
        }
        Ok(())
    }
}

/// Orders candidate masks by popcount so the search can stop early.
fn order_choices(mut found: RowChoices, prune: bool, ascending: bool) -> RowChoices {
    if prune {
        if ascending {
            found.sort_by_key(|&(m, _)| m.count_ones());
        } else {
            found.sort_by_key(|&(m, _)| std::cmp::Reverse(m.count_ones()));
        }
    }
    found
}

/// Minimum support of an `r`-dimensional `D <= C1` meeting `C2` trivially.
pub fn oracle_rghw_support(
    c1: &CartesianCode,
    c2: &CartesianCode,
    r: u64,
    budget: OracleBudget,
) -> Result<OracleResult> {
    support_search(c1, c2, r, budget, true)
}

fn support_search(
    c1: &CartesianCode,
    c2: &CartesianCode,
    r: u64,
    budget: OracleBudget,
    prune: bool,
) -> Result<OracleResult> {
    let band = check_nesting(c1, c2)?;
    let grid = c1.grid();
    check_grid(grid)?;
    let field = grid.field();
    let n = grid.n();

    // complement W: C1 rows whose monomial lies in the band
    let w_rows: Vec<Vec<FieldElement>> = c1
        .basis()
        .iter()
        .zip(c1.generator())
        .filter(|(b, _)| band.contains_degree(b.degree()))
        .map(|(_, row)| row.clone())
        .collect();
    let ell = w_rows.len();
    check_rank(r, ell as u64)?;
    let r = r as usize;

    let mut meter = Meter::new(budget);
    meter.reserve(checked_pow(field.order(), c2.dim()))?;
    let mut c2_span: Vec<Vec<FieldElement>> = Vec::new();
    for_each_coeffs(field, c2.dim(), |coeffs| {
        meter.tick(1)?;
        c2_span.push(linalg::combine(field, coeffs, c2.generator(), n));
        Ok(())
    })?;

    let mut store: Vec<Vec<FieldElement>> = Vec::new();
    // (pivot, free columns) -> deduplicated candidates
    let mut cache: HashMap<(usize, Vec<usize>), RowChoices> = HashMap::new();
    let mut best = u32::MAX;
    let mut best_basis: Option<Vec<Vec<FieldElement>>> = None;

    for pivots in combinations(ell, r) {
        let mut rows: Vec<RowChoices> = Vec::with_capacity(r);
        for &p in &pivots {
            let free: Vec<usize> = (p + 1..ell).filter(|j| !pivots.contains(j)).collect();
            let key = (p, free.clone());
            if let Some(c) = cache.get(&key) {
                rows.push(c.clone());
                continue;
            }
            meter.reserve(
                checked_pow(field.order(), free.len())
                    .and_then(|a| a.checked_mul(c2_span.len() as u64)),
            )?;
            let free_rows: Vec<Vec<FieldElement>> = free.iter().map(|&j| w_rows[j].clone()).collect();
            let mut found = Vec::new();
            let mut seen: HashSet<u64> = HashSet::new();
            for_each_coeffs(field, free.len(), |coeffs| {
                let mut u = linalg::combine(field, coeffs, &free_rows, n);
                for (x, &y) in u.iter_mut().zip(&w_rows[p]) {
                    *x = field.add(*x, y);
                }
                for c in &c2_span {
                    meter.tick(1)?;
                    let v: Vec<FieldElement> =
                        u.iter().zip(c).map(|(&a, &b)| field.add(a, b)).collect();
                    let mask = nonzero_mask(&v);
                    // the objective only sees the mask; keep the first vector
                    if prune && !seen.insert(mask) {
                        continue;
                    }
                    found.push((mask, store.len()));
                    store.push(v);
                }
                Ok(())
            })?;
            let choices = order_choices(found, prune, true);
            if prune {
                cache.insert(key, choices.clone());
            }
            rows.push(choices);
        }
        let mut dfs = MinUnion {
            rows: &rows,
            best,
            best_pick: None,
            prune,
        };
        dfs.search(&mut meter, 0, 0, &mut Vec::with_capacity(r))?;
        if let Some(pick) = dfs.best_pick {
            best = dfs.best;
            best_basis = Some(pick.iter().map(|&i| store[i].clone()).collect());
        }
    }

    let basis = best_basis.expect("at least one admissible subspace exists");
    Ok(OracleResult {
        value: best as u64,
        witness: Witness::Subspace(basis),
        states_explored: meter.states,
        method: OracleMethod::Support,
    })
}

/// `dim` of the subcode supported inside `mask`.
fn restricted_dim(code: &CartesianCode, mask: u64) -> Result<usize> {
    if code.dim() == 0 {
        return Ok(0);
    }
    let outside: Vec<usize> = (0..code.len()).filter(|&j| mask >> j & 1 == 0).collect();
    let cols: Vec<Vec<FieldElement>> = code
        .generator()
        .iter()
        .map(|row| outside.iter().map(|&j| row[j]).collect())
        .collect();
    let field = code.grid().field();
    Ok(code.dim() - linalg::rank(field, outside.len(), &cols)?)
}

/// Minimum `|J|` with `dim (C1)_J - dim (C2)_J = r`, scanning all `2^n`
/// coordinate subsets.
pub fn oracle_rghw_window(
    c1: &CartesianCode,
    c2: &CartesianCode,
    r: u64,
    budget: OracleBudget,
) -> Result<OracleResult> {
    let band = check_nesting(c1, c2)?;
    let grid = c1.grid();
    check_grid(grid)?;
    check_rank(r, grid.shape().band_len(&band))?;
    let n = grid.n();
    let mut meter = Meter::new(budget);
    let total = 1u64.checked_shl(n as u32).filter(|_| n < 64);
    meter.reserve(total)?;
    let total = total.expect("reserve rejects overflow");

    let mut best: Option<(u32, u64)> = None;
    for mask in 0..total {
        meter.tick(1)?;
        let size = mask.count_ones();
        if matches!(best, Some((b, _)) if size >= b) {
            continue;
        }
        let gap = restricted_dim(c1, mask)? as i64 - restricted_dim(c2, mask)? as i64;
        if gap == r as i64 {
            best = Some((size, mask));
        }
    }
    let (size, mask) = best.expect("the full coordinate set reaches every gap");
    Ok(OracleResult {
        value: size as u64,
        witness: Witness::Window((0..n).filter(|&j| mask >> j & 1 == 1).collect()),
        states_explored: meter.states,
        method: OracleMethod::Window,
    })
}

/// `n - max |Z(f_1, ..., f_r)|` over families with distinct leading
/// monomials `t_i` in the band, each `f_i` monic in `x^{t_i}` and
/// supported on `t_i` plus graded-lex-smaller monomials outside the
/// leading set.
pub fn oracle_max_zeros_families(
    grid: &CartesianGrid,
    band: &DegreeBand,
    r: u64,
    budget: OracleBudget,
) -> Result<OracleResult> {
    families_search(grid, band, r, budget, true)
}

fn families_search(
    grid: &CartesianGrid,
    band: &DegreeBand,
    r: u64,
    budget: OracleBudget,
    prune: bool,
) -> Result<OracleResult> {
    check_grid(grid)?;
    let shape = grid.shape();
    let field = grid.field();
    let n = grid.n();
    let lead = boxcomb::enumerate_band(shape, band);
    check_rank(r, lead.len() as u64)?;
    let r = r as usize;

    let mut monomials: Vec<BoxPoint> = (0..shape.n()).map(|c| shape.decode(c)).collect();
    monomials.sort_by(cmp_graded_lex);
    let values: HashMap<BoxPoint, Vec<FieldElement>> = monomials
        .iter()
        .map(|m| (m.clone(), grid.monomial_values(m)))
        .collect();

    let mut meter = Meter::new(budget);
    // each stored entry: (leading exponent, lower monomials, coefficients)
    let mut store: Vec<(BoxPoint, Vec<BoxPoint>, Vec<FieldElement>)> = Vec::new();
    let mut cache: HashMap<(BoxPoint, Vec<BoxPoint>), RowChoices> = HashMap::new();
    let mut best: i64 = -1;
    let mut best_family: Option<Vec<usize>> = None;

    for pick in combinations(lead.len(), r) {
        let leaders: Vec<&BoxPoint> = pick.iter().map(|&i| &lead[i]).collect();
        let mut rows: Vec<RowChoices> = Vec::with_capacity(r);
        for &t in &leaders {
            let lower: Vec<BoxPoint> = monomials
                .iter()
                .take_while(|m| cmp_graded_lex(m, t).is_lt())
                .filter(|m| !leaders.contains(m))
                .cloned()
                .collect();
            let key = (t.clone(), lower.clone());
            if let Some(c) = cache.get(&key) {
                rows.push(c.clone());
                continue;
            }
            meter.reserve(checked_pow(field.order(), lower.len()))?;
            let lower_vals: Vec<Vec<FieldElement>> = lower.iter().map(|m| values[m].clone()).collect();
            let lead_vals = &values[t];
            let mut found = Vec::new();
            let mut seen: HashSet<u64> = HashSet::new();
            for_each_coeffs(field, lower.len(), |coeffs| {
                meter.tick(1)?;
                let mut v = linalg::combine(field, coeffs, &lower_vals, n);
                for (x, &y) in v.iter_mut().zip(lead_vals) {
                    *x = field.add(*x, y);
                }
                let mask = poly::zero_mask(&v);
                if prune && !seen.insert(mask) {
                    return Ok(());
                }
                found.push((mask, store.len()));
                store.push((t.clone(), lower.clone(), coeffs.to_vec()));
                Ok(())
            })?;
            let choices = order_choices(found, prune, false);
            if prune {
                cache.insert(key, choices.clone());
            }
            rows.push(choices);
        }
        let mut dfs = MaxMeet {
            rows: &rows,
            best,
            best_pick: None,
            prune,
        };
        dfs.search(&mut meter, 0, u64::MAX >> (64 - n), &mut Vec::with_capacity(r))?;
        if let Some(p) = dfs.best_pick {
            best = dfs.best;
            best_family = Some(p);
        }
    }

    let family = best_family
        .expect("some family exists")
        .into_iter()
        .map(|i| {
            let (t, lower, coeffs) = &store[i];
            let terms = std::iter::once((t.clone(), FieldElement::ONE))
                .chain(lower.iter().cloned().zip(coeffs.iter().copied()));
            MultiPoly::from_terms(field, shape, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleResult {
        value: n as u64 - best as u64,
        witness: Witness::Family(family),
        states_explored: meter.states,
        method: OracleMethod::Families,
    })
}
