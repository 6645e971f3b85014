//! Horn configurations: the integer data `(B, c)`, the combinatorial index
//! of pairs of rows, and the rank formulas built on it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{HornError, Result};
use crate::linalg::{gale_dual, gcd_maximal_minors, rat, IntMatrix, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Falling,
    Rising,
}

impl std::str::FromStr for Convention {
    type Err = HornError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "falling" => Ok(Convention::Falling),
            "rising" => Ok(Convention::Rising),
            other => Err(HornError::InvalidInput(format!(
                "unknown convention {other:?}, expected falling or rising"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Params {
    Explicit(Vec<Rat>),
    Generic { seed: u64 },
}

/// Denominator of sampled generic parameters.
pub const GENERIC_DENOMINATOR: i64 = 1_000_003;

#[derive(Clone, Debug)]
pub struct HornConfig {
    input_rows: Vec<[i64; 2]>,
    rows: Vec<[i64; 2]>,
    pub params: Params,
    pub convention: Convention,
    zero_sum: bool,
}

fn rank_of(rows: &[[i64; 2]]) -> usize {
    let nonzero = rows.iter().any(|r| r[0] != 0 || r[1] != 0);
    let independent = rows
        .iter()
        .enumerate()
        .any(|(i, a)| rows[i + 1..].iter().any(|b| a[0] * b[1] - a[1] * b[0] != 0));
    if independent {
        2
    } else {
        nonzero as usize
    }
}

impl HornConfig {
    /// A Horn configuration: `n >= 3` rows summing to zero, rank two.
    pub fn new(rows: Vec<[i64; 2]>, params: Params, convention: Convention) -> Result<Self> {
        let cfg = Self::build(rows, params, convention)?;
        for j in 0..2 {
            let s: i64 = cfg.rows.iter().map(|r| r[j]).sum();
            if s != 0 {
                return Err(HornError::ZeroColumnSums {
                    column: j + 1,
                    sum: s.to_string(),
                });
            }
        }
        if cfg.n() < 3 {
            return Err(HornError::InvalidInput(
                "a Horn configuration needs at least three rows".into(),
            ));
        }
        Ok(cfg)
    }

    /// A nonsingular 2x2 system whose rows need not sum to zero. Only the
    /// Puiseux and operator-level computations apply to it.
    pub fn pair_system(rows: [[i64; 2]; 2], params: Params, convention: Convention) -> Result<Self> {
        Self::build(rows.to_vec(), params, convention)
    }

    fn build(rows: Vec<[i64; 2]>, params: Params, convention: Convention) -> Result<Self> {
        if rows.len() < 2 {
            return Err(HornError::InvalidInput("B needs at least two rows".into()));
        }
        let rank = rank_of(&rows);
        if rank != 2 {
            return Err(HornError::RankDeficient { rank });
        }
        if let Params::Explicit(c) = &params {
            if c.len() != rows.len() {
                return Err(HornError::InvalidInput(format!(
                    "parameter length: c has {} entries but B has {} rows",
                    c.len(),
                    rows.len()
                )));
            }
        }
        let normalized = match convention {
            Convention::Falling => rows.clone(),
            Convention::Rising => rows.iter().map(|r| [-r[0], -r[1]]).collect(),
        };
        let zero_sum = (0..2).all(|j| normalized.iter().map(|r| r[j]).sum::<i64>() == 0);
        Ok(HornConfig {
            input_rows: rows,
            rows: normalized,
            params,
            convention,
            zero_sum,
        })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Rows in the falling convention.
    pub fn rows(&self) -> &[[i64; 2]] {
        &self.rows
    }

    pub fn input_rows(&self) -> &[[i64; 2]] {
        &self.input_rows
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    pub fn is_zero_sum(&self) -> bool {
        self.zero_sum
    }

    fn require_zero_sum(&self) -> Result<()> {
        if self.zero_sum && self.n() >= 3 {
            Ok(())
        } else {
            Err(HornError::InvalidInput(
                "this computation needs at least three rows summing to zero".into(),
            ))
        }
    }

    /// `d_i`, the sum of the positive entries of column `i`.
    pub fn orders(&self) -> [i64; 2] {
        let d = |j: usize| self.rows.iter().map(|r| r[j].max(0)).sum();
        [d(0), d(1)]
    }

    pub fn gale_dual(&self) -> Result<IntMatrix> {
        self.require_zero_sum()?;
        gale_dual(&self.matrix())
    }

    /// `g`, the index of `ZB` in its saturation.
    pub fn lattice_index(&self) -> Result<BigInt> {
        gcd_maximal_minors(&self.matrix())
    }

    /// Concrete parameters for the given sampling attempt, in the falling
    /// convention.
    pub fn realize(&self, attempt: u32) -> HornSystem {
        let c: Vec<Rat> = match &self.params {
            Params::Explicit(c) => match self.convention {
                Convention::Falling => c.clone(),
                Convention::Rising => c.iter().map(|x| -x).collect(),
            },
            Params::Generic { seed } => sample_generic(*seed, attempt, self.n()),
        };
        HornSystem {
            rows: self.rows.clone(),
            c,
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self.params, Params::Generic { .. })
    }
}

pub fn sample_generic(seed: u64, attempt: u32, n: usize) -> Vec<Rat> {
    let mixed = seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = ChaCha8Rng::seed_from_u64(mixed);
    (0..n)
        .map(|_| {
            let p: i64 = rng.gen_range(1_000_000..=2_000_000);
            Rat::new(BigInt::from(p), BigInt::from(GENERIC_DENOMINATOR))
        })
        .collect()
}

/// Falling factor `b_row . theta + c_row - shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub row: usize,
    pub shift: i64,
}

/// `(B, c)` with concrete parameters, always in the falling convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornSystem {
    pub rows: Vec<[i64; 2]>,
    pub c: Vec<Rat>,
}

impl HornSystem {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Factors of `Q_i` (rows with positive entry) and `P_i` (negative).
    pub fn factors(&self, i: usize) -> (Vec<Factor>, Vec<Factor>) {
        let mut q = Vec::new();
        let mut p = Vec::new();
        for (row, b) in self.rows.iter().enumerate() {
            let k = b[i];
            let target = if k > 0 { &mut q } else { &mut p };
            for shift in 0..k.abs() {
                target.push(Factor { row, shift });
            }
        }
        (q, p)
    }

    pub fn linear_form(&self, row: usize, s: &[Rat; 2]) -> Rat {
        let b = self.rows[row];
        rat(b[0]) * &s[0] + rat(b[1]) * &s[1] + &self.c[row]
    }

    fn eval_factors(&self, fs: &[Factor], s: &[Rat; 2]) -> Rat {
        let mut acc = rat(1);
        for f in fs {
            acc *= self.linear_form(f.row, s) - rat(f.shift);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn q_eval(&self, i: usize, s: &[Rat; 2]) -> Rat {
        self.eval_factors(&self.factors(i).0, s)
    }

    pub fn p_eval(&self, i: usize, s: &[Rat; 2]) -> Rat {
        self.eval_factors(&self.factors(i).1, s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Quadrant {
    First,
    Second,
    Third,
    Fourth,
    Axis,
    Origin,
}

pub fn quadrant(b: [i64; 2]) -> Quadrant {
    match (b[0].signum(), b[1].signum()) {
        (1, 1) => Quadrant::First,
        (-1, 1) => Quadrant::Second,
        (-1, -1) => Quadrant::Third,
        (1, -1) => Quadrant::Fourth,
        (0, 0) => Quadrant::Origin,
        _ => Quadrant::Axis,
    }
}

pub fn opposite_open_quadrants(a: [i64; 2], b: [i64; 2]) -> bool {
    matches!(
        (quadrant(a), quadrant(b)),
        (Quadrant::First, Quadrant::Third)
            | (Quadrant::Third, Quadrant::First)
            | (Quadrant::Second, Quadrant::Fourth)
            | (Quadrant::Fourth, Quadrant::Second)
    )
}

pub fn dependent(a: [i64; 2], b: [i64; 2]) -> bool {
    a[0] * b[1] - a[1] * b[0] == 0
}

/// `min(|a1 b2|, |b1 a2|)` for rows in opposite open quadrants, else 0.
pub fn index_nu(a: [i64; 2], b: [i64; 2]) -> i64 {
    if opposite_open_quadrants(a, b) {
        (a[0] * b[1]).abs().min((b[0] * a[1]).abs())
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairIndex {
    pub i: usize,
    pub j: usize,
    pub nu: i64,
    pub dependent: bool,
}

/// All pairs of rows with a nonzero index.
pub fn index_table(rows: &[[i64; 2]]) -> Vec<PairIndex> {
    let mut out = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let nu = index_nu(rows[i], rows[j]);
            if nu > 0 {
                out.push(PairIndex {
                    i,
                    j,
                    nu,
                    dependent: dependent(rows[i], rows[j]),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub orders: [i64; 2],
    pub product: i64,
    pub sum_dependent: i64,
    pub sum_independent: i64,
    pub lattice_index: i64,
    pub volume: i64,
    pub rank: i64,
    pub puiseux_rank: i64,
    pub pairs: Vec<PairIndex>,
    pub artinian: bool,
}

impl RankReport {
    /// `g * vol(A) + sum over independent pairs`.
    pub fn rank_from_volume(&self) -> i64 {
        self.lattice_index * self.volume + self.sum_independent
    }
}

pub fn generic_rank(cfg: &HornConfig) -> Result<RankReport> {
    cfg.require_zero_sum()?;
    let rows = cfg.rows();
    let orders = cfg.orders();
    let product = orders[0] * orders[1];
    let pairs = index_table(rows);
    let sum_dependent: i64 = pairs.iter().filter(|p| p.dependent).map(|p| p.nu).sum();
    let sum_independent: i64 = pairs.iter().filter(|p| !p.dependent).map(|p| p.nu).sum();
    let g = cfg
        .lattice_index()?
        .to_i64()
        .ok_or_else(|| HornError::InvalidInput("lattice index out of range".into()))?;
    let numerator = product - sum_dependent - sum_independent;
    let (vol, rem) = numerator.div_rem(&g);
    if !rem.is_zero() || vol <= 0 {
        return Err(HornError::NonIntegralVolume {
            numerator: numerator.to_string(),
            denominator: g.to_string(),
        });
    }
    let report = RankReport {
        orders,
        product,
        sum_dependent,
        sum_independent,
        lattice_index: g,
        volume: vol,
        rank: product - sum_dependent,
        puiseux_rank: sum_independent,
        pairs,
        artinian: artinian_criterion(rows),
    };
    if report.rank != report.rank_from_volume() {
        return Err(HornError::IdentityViolation(format!(
            "rank {} differs from g*vol + independent sum {}",
            report.rank,
            report.rank_from_volume()
        )));
    }
    Ok(report)
}

/// No linearly dependent pair of rows lies in opposite open quadrants.
pub fn artinian_criterion(rows: &[[i64; 2]]) -> bool {
    index_table(rows).iter().all(|p| !p.dependent)
}

/// `alpha_i = max_j nu_ij` for rows with positive first entry.
pub fn alpha_vector(rows: &[[i64; 2]]) -> Vec<u32> {
    (0..rows.len())
        .map(|i| {
            if rows[i][0] <= 0 {
                return 0;
            }
            (0..rows.len())
                .filter(|&j| j != i)
                .map(|j| index_nu(rows[i], rows[j]) as u32)
                .max()
                .unwrap_or(0)
        })
        .collect()
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "orders d1, d2        : {}, {}", self.orders[0], self.orders[1])?;
        writeln!(f, "d1 * d2              : {}", self.product)?;
        for p in &self.pairs {
            writeln!(
                f,
                "pair ({}, {})          : nu = {} ({})",
                p.i + 1,
                p.j + 1,
                p.nu,
                if p.dependent { "dependent" } else { "independent" }
            )?;
        }
        writeln!(f, "lattice index g      : {}", self.lattice_index)?;
        writeln!(f, "vol(A)               : {}", self.volume)?;
        writeln!(f, "rank                 : {}", self.rank)?;
        writeln!(f, "g*vol + sum indep    : {}", self.rank_from_volume())?;
        writeln!(f, "Puiseux rank         : {}", self.puiseux_rank)?;
        write!(f, "Artinian             : {}", self.artinian)
    }
}
