//! Shared fixtures and test-side oracles. Nothing here calls into the
//! library code it is used to check.
#![allow(dead_code)]

use horn_core::error::HornError;
use horn_core::horn::{Convention, HornConfig, HornSystem, Params};
use horn_core::linalg::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Regression {
    pub name: &'static str,
    pub rows: Vec<[i64; 2]>,
    pub rank: i64,
    pub g: i64,
    pub vol: i64,
    pub puiseux: i64,
}

pub fn regression() -> Vec<Regression> {
    vec![
        Regression {
            name: "rational normal curve B",
            rows: vec![[1, 0], [-2, 1], [1, -2], [0, 1]],
            rank: 4,
            g: 1,
            vol: 3,
            puiseux: 1,
        },
        Regression {
            name: "rank-six B'",
            rows: vec![[1, 2], [-2, -3], [1, 0], [0, 1]],
            rank: 6,
            g: 1,
            vol: 3,
            puiseux: 3,
        },
        Regression {
            name: "Appell F1",
            rows: vec![[1, 1], [1, 0], [0, 1], [-1, -1], [-1, 0], [0, -1]],
            rank: 3,
            g: 1,
            vol: 3,
            puiseux: 0,
        },
        Regression {
            name: "Horn G3",
            rows: vec![[2, -1], [-1, 2], [-1, -1]],
            rank: 4,
            g: 3,
            vol: 1,
            puiseux: 1,
        },
        Regression {
            name: "twisted cubic",
            rows: vec![[-1, 2], [0, -3], [3, 0], [-2, 1]],
            rank: 9,
            g: 3,
            vol: 3,
            puiseux: 0,
        },
    ]
}

pub fn generic_config(rows: &[[i64; 2]], seed: u64) -> HornConfig {
    HornConfig::new(rows.to_vec(), Params::Generic { seed }, Convention::Falling).expect("valid configuration")
}

/// Runs `f` on successive generic parameter samples until it stops reporting
/// a genericity failure.
pub fn with_generic<T>(cfg: &HornConfig, mut f: impl FnMut(&HornSystem) -> Result<T, HornError>) -> Result<T, HornError> {
    let mut last = None;
    for attempt in 0..8 {
        match f(&cfg.realize(attempt)) {
            Err(e @ HornError::GenericityFailure(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap())
}

/// Random rank-two integer matrices with zero column sums, entries in
/// `[-bound, bound]`, no zero rows and `3..=max_rows` rows.
pub fn random_matrix(rng: &mut ChaCha8Rng, bound: i64, max_rows: usize) -> Vec<[i64; 2]> {
    loop {
        let n = rng.gen_range(3..=max_rows);
        let mut rows: Vec<[i64; 2]> = (0..n - 1)
            .map(|_| [rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)])
            .collect();
        let last = [-rows.iter().map(|r| r[0]).sum::<i64>(), -rows.iter().map(|r| r[1]).sum::<i64>()];
        rows.push(last);
        let in_range = rows.iter().all(|r| r[0].abs() <= bound && r[1].abs() <= bound);
        let nonzero = rows.iter().all(|r| r[0] != 0 || r[1] != 0);
        let rank2 = rows
            .iter()
            .enumerate()
            .any(|(i, a)| rows[i + 1..].iter().any(|b| a[0] * b[1] - a[1] * b[0] != 0));
        if in_range && nonzero && rank2 {
            return rows;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rat(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(rng.gen_range(-span..=span)), BigInt::from(rng.gen_range(1..=den)))
}

/// Normalized volume of the convex hull of the columns of `a` (first row all
/// ones) for at most two further rows: a segment length or twice a polygon
/// area.
pub fn hull_volume(a: &[Vec<i64>]) -> i64 {
    match a.len() {
        1 => 1,
        2 => a[1].iter().max().unwrap() - a[1].iter().min().unwrap(),
        3 => {
            let mut pts: Vec<(i64, i64)> = a[1].iter().zip(&a[2]).map(|(&x, &y)| (x, y)).collect();
            pts.sort();
            pts.dedup();
            let hull = convex_hull(&pts);
            let mut twice = 0;
            for i in 0..hull.len() {
                let (x1, y1) = hull[i];
                let (x2, y2) = hull[(i + 1) % hull.len()];
                twice += x1 * y2 - x2 * y1;
            }
            twice.abs()
        }
        _ => panic!("hull volume oracle only covers n <= 5"),
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Andrew's monotone chain on sorted, deduplicated points.
fn convex_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    if pts.len() < 3 {
        return pts.to_vec();
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Number of monomials of total degree `d` in `n` variables outside the
/// monomial ideal generated by `gens`.
pub fn standard_monomials_in_degree(gens: &[Vec<u32>], n: usize, d: u32) -> u64 {
    fn rec(gens: &[Vec<u32>], cur: &mut Vec<u32>, i: usize, left: u32, count: &mut u64) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left;
            if !gens.iter().any(|g| g.iter().zip(cur.iter()).all(|(a, b)| a <= b)) {
                *count += 1;
            }
            cur[i] = 0;
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(gens, cur, i + 1, left - k, count);
        }
        cur[i] = 0;
    }
    let mut count = 0;
    rec(gens, &mut vec![0; n], 0, d, &mut count);
    count
}

/// Degree of `S/M` for a monomial ideal of dimension `dim >= 1`, read off as
/// the `(dim-1)`-th finite difference of the Hilbert function at degree `d`.
pub fn hilbert_degree(gens: &[Vec<u32>], n: usize, dim: usize, d: u32) -> i64 {
    let k = dim - 1;
    let mut binom = 1i64;
    let mut total = 0i64;
    for j in 0..=k {
        if j > 0 {
            binom = binom * (k as i64 - j as i64 + 1) / j as i64;
        }
        let h = standard_monomials_in_degree(gens, n, d - j as u32) as i64;
        total += if j % 2 == 0 { binom * h } else { -binom * h };
    }
    total
}

/// Resultant via the Euclidean remainder sequence, coefficients in
/// increasing degree. Convention: `lc(g)^deg f * prod f(beta)` over the roots
/// of `g`.
pub fn euclid_resultant(f: &[Rat], g: &[Rat]) -> Rat {
    let trim = |p: &[Rat]| {
        let mut v = p.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let f = trim(f);
    let g = trim(g);
    if f.is_empty() || g.is_empty() {
        return Rat::zero();
    }
    // Res(g, f) in the usual "first argument's roots" convention
    res_first(&g, &f)
}

/// `lc(a)^deg b * prod b(alpha)` over the roots `alpha` of `a`.
fn res_first(a: &[Rat], b: &[Rat]) -> Rat {
    let da = a.len() - 1;
    let db = b.len() - 1;
    if da == 0 {
        return a[0].pow(db as i32);
    }
    if db == 0 {
        return b[0].pow(da as i32);
    }
    // b mod a
    let mut r = b.to_vec();
    while r.len() >= a.len() {
        let k = r.last().unwrap() / a.last().unwrap();
        let shift = r.len() - a.len();
        for (i, c) in a.iter().enumerate() {
            r[shift + i] -= &k * c;
        }
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    if r.is_empty() {
        return Rat::zero();
    }
    let dr = r.len() - 1;
    // Res_a(b) = lc(a)^(db - dr) Res_a(r), and Res_a(r) = (-1)^(da dr) Res_r(a)
    let sign = if (da * dr) % 2 == 1 { -Rat::one() } else { Rat::one() };
    a.last().unwrap().pow((db - dr) as i32) * sign * res_first(&r, a)
}

pub fn is_coprime(f: &[Rat], g: &[Rat]) -> bool {
    let mut a: Vec<Rat> = f.to_vec();
    let mut b: Vec<Rat> = g.to_vec();
    let trim = |v: &mut Vec<Rat>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let mut r = a.clone();
        while r.len() >= b.len() && !r.is_empty() {
            let k = r.last().unwrap() / b.last().unwrap();
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[shift + i] -= &k * c;
            }
            r.pop();
            trim(&mut r);
        }
        a = b;
        b = r;
    }
    a.len() == 1 && !a[0].abs().is_zero()
}
