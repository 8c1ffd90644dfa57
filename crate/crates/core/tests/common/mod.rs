//! Brute-force box combinatorics for tests. Deliberately shares no code
//! with the library: points are plain vectors, orders come from sorting.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Pt = Vec<usize>;

pub fn all_points(dims: &[usize]) -> Vec<Pt> {
    let mut out: Vec<Pt> = vec![vec![]];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    // descending lex
    out.sort_by(|a, b| b.cmp(a));
    out
}

pub fn deg(p: &[usize]) -> usize {
    p.iter().sum()
}

pub fn below(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn k_of(dims: &[usize]) -> usize {
    dims.iter().map(|d| d - 1).sum()
}

/// `F_{u2}^{u1}`, descending lex.
pub fn band(dims: &[usize], u2: i64, u1: i64) -> Vec<Pt> {
    all_points(dims)
        .into_iter()
        .filter(|p| (deg(p) as i64) > u2 && (deg(p) as i64) <= u1)
        .collect()
}

/// `F_u`, descending lex.
pub fn slice(dims: &[usize], u: usize) -> Vec<Pt> {
    all_points(dims).into_iter().filter(|p| deg(p) == u).collect()
}

pub fn shadow(dims: &[usize], set: &[Pt]) -> BTreeSet<Pt> {
    all_points(dims)
        .into_iter()
        .filter(|b| set.iter().any(|a| below(a, b)))
        .collect()
}

pub fn shadow_at(dims: &[usize], set: &[Pt], u: usize) -> BTreeSet<Pt> {
    shadow(dims, set).into_iter().filter(|p| deg(p) == u).collect()
}

/// First `count` elements of `F_u` in descending lex order.
pub fn lex_prefix(dims: &[usize], u: usize, count: usize) -> BTreeSet<Pt> {
    slice(dims, u).into_iter().take(count).collect()
}

/// Every subset of `items`, as index masks.
pub fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

fn set_of(v: &[Pt]) -> BTreeSet<Pt> {
    v.iter().cloned().collect()
}

/// Lex prefixes of a slice have the smallest next-degree shadow:
/// `shadow_{u+1}(L(S)) <= L(shadow_{u+1}(S))` for all `S <= F_u`, `u < k`.
pub fn clements_lindstrom_violations(dims: &[usize]) -> usize {
    let k = k_of(dims);
    let mut bad = 0;
    for u in 0..k {
        let fu = slice(dims, u);
        for s in subsets(&fu) {
            let l: Vec<Pt> = lex_prefix(dims, u, s.len()).into_iter().collect();
            let lhs = shadow_at(dims, &l, u + 1);
            let sh = shadow_at(dims, &s, u + 1);
            let rhs = lex_prefix(dims, u + 1, sh.len());
            if !lhs.is_subset(&rhs) {
                bad += 1;
            }
        }
    }
    bad
}

/// Same inclusion at every higher degree `v`, plus the cardinality
/// consequences `|shadow_v(L(S))| <= |shadow_v(S)|` and
/// `|shadow(L(S))| <= |shadow(S)|`.
pub fn iterated_shadow_violations(dims: &[usize]) -> usize {
    let k = k_of(dims);
    let mut bad = 0;
    for u in 0..=k {
        let fu = slice(dims, u);
        for s in subsets(&fu) {
            let l: Vec<Pt> = lex_prefix(dims, u, s.len()).into_iter().collect();
            for v in u..=k {
                let lhs = shadow_at(dims, &l, v);
                let sh = shadow_at(dims, &s, v);
                let rhs = lex_prefix(dims, v, sh.len());
                if !lhs.is_subset(&rhs) || lhs.len() > sh.len() {
                    bad += 1;
                }
            }
            if shadow(dims, &l).len() > shadow(dims, &s).len() {
                bad += 1;
            }
        }
    }
    bad
}

/// For `u < v` and `y` of degree `v`, the lex-largest degree-`u` point
/// lex-below `y` is coordinatewise below `y`.
pub fn lex_below_violations(dims: &[usize]) -> usize {
    let k = k_of(dims);
    let mut bad = 0;
    for v in 1..=k {
        for y in slice(dims, v) {
            for u in 0..v {
                // slice is descending, so the first hit is the lex maximum
                match slice(dims, u).into_iter().find(|f| f <= &y) {
                    Some(a) if below(&a, &y) => {}
                    _ => bad += 1,
                }
            }
        }
    }
    bad
}

pub fn prefix(dims: &[usize], u2: i64, u1: i64, r: usize) -> Vec<Pt> {
    band(dims, u2, u1).into_iter().take(r).collect()
}

fn part(set: &[Pt], u: usize) -> Vec<Pt> {
    set.iter().filter(|p| deg(p) == u).cloned().collect()
}

/// `shadow_{u1}(N_u) <= N_{u1} <= shadow_{u1}(N_u*)` for every
/// `u2 < u <= u1` and every prefix size `r`.
pub fn band_prefix_sandwich_violations(dims: &[usize]) -> usize {
    let k = k_of(dims) as i64;
    let mut bad = 0;
    for u2 in -1..k {
        for u1 in u2 + 1..=k {
            let len = band(dims, u2, u1).len();
            for r in 1..=len {
                let n_r = prefix(dims, u2, u1, r);
                let top = set_of(&part(&n_r, u1 as usize));
                for u in (u2 + 1)..=u1 {
                    let u = u as usize;
                    let n_u = part(&n_r, u);
                    let star: Vec<Pt> = lex_prefix(dims, u, n_u.len() + 1).into_iter().collect();
                    let low = shadow_at(dims, &n_u, u1 as usize);
                    let high = shadow_at(dims, &star, u1 as usize);
                    if !low.is_subset(&top) || !top.is_subset(&high) {
                        bad += 1;
                    }
                }
            }
        }
    }
    bad
}

/// `|shadow(N(r))| = r - |N_{u1}| + |shadow(N_{u1})|` when `u2 < u1 - 1`.
pub fn band_prefix_shadow_violations(dims: &[usize]) -> usize {
    let k = k_of(dims) as i64;
    let mut bad = 0;
    for u2 in -1..k {
        for u1 in u2 + 2..=k {
            let len = band(dims, u2, u1).len();
            for r in 1..=len {
                let n_r = prefix(dims, u2, u1, r);
                let top = part(&n_r, u1 as usize);
                let lhs = shadow(dims, &n_r).len();
                let rhs = r - top.len() + shadow(dims, &top).len();
                if lhs != rhs {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// Over every band and every `S` inside it, `|shadow(N(|S|))| <= |shadow(S)|`.
/// Returns (violations, subsets examined).
pub fn extremal_prefix_violations(dims: &[usize]) -> (usize, usize) {
    let k = k_of(dims) as i64;
    let mut bad = 0;
    let mut seen = 0;
    for u2 in -1..k {
        for u1 in u2 + 1..=k {
            let b = band(dims, u2, u1);
            let best: Vec<usize> = (0..=b.len())
                .map(|r| shadow(dims, &prefix(dims, u2, u1, r)).len())
                .collect();
            for s in subsets(&b) {
                if s.is_empty() {
                    continue;
                }
                seen += 1;
                if shadow(dims, &s).len() < best[s.len()] {
                    bad += 1;
                }
            }
        }
    }
    (bad, seen)
}

/// Max footprint over `r`-subsets of the band, by exhaustion.
pub fn max_footprint(dims: &[usize], u2: i64, u1: i64, r: usize) -> usize {
    let n: usize = dims.iter().product();
    let b = band(dims, u2, u1);
    subsets(&b)
        .filter(|s| s.len() == r)
        .map(|s| n - shadow(dims, &s).len())
        .max()
        .unwrap()
}
