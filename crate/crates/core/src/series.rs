//! Truncated Gamma-series `phi_v = sum_{u in N_v} [v]_{u-} / [v+u]_{u+} x^{v+u}`
//! supported on a rank-two lattice, their verification against lattice
//! binomials and Euler operators, the split of a series over `L` into its
//! `L / ZB` cosets, and the passage to Horn variables.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{HornError, Result};
use crate::groebner::{generic_initial_ideal, lattice_basis_ideal, saturate_by_product, InitialIdeal, Limits};
use crate::horn::{HornConfig, HornSystem};
use crate::linalg::{is_integer, lattice_quotient, rat, rational_rank, solve_rational, IntMatrix, LatticeQuotient, Rat};
use crate::puiseux::{all_puiseux, PuiseuxPolynomial};
use crate::shift::{horn_operators, ShiftElement};
use crate::stdpairs::{exponent_roots, standard_pairs, top_pairs, ExponentRoot, StandardPair};

pub const DEFAULT_WINDOW: i64 = 12;

fn is_negative_integer(x: &Rat) -> bool {
    is_integer(x) && x < &Rat::zero()
}

fn is_nonnegative_integer(x: &Rat) -> bool {
    is_integer(x) && x >= &Rat::zero()
}

/// Membership of `u` in `N_v`: negative-integer and nonnegative-integer
/// coordinates of `v` keep their type in `v + u`.
pub fn nv_member(v: &[Rat], u: &[i64]) -> bool {
    v.iter().zip(u).all(|(vi, &ui)| {
        let w = vi + rat(ui);
        is_negative_integer(vi) == is_negative_integer(&w) && is_nonnegative_integer(vi) == is_nonnegative_integer(&w)
    })
}

/// `[w]_k = prod_i prod_{l < k_i} (w_i - l)`
pub fn falling_vec(w: &[Rat], k: &[i64]) -> Rat {
    let mut acc = Rat::one();
    for (wi, &ki) in w.iter().zip(k) {
        for l in 0..ki.max(0) {
            acc *= wi - rat(l);
            if acc.is_zero() {
                return acc;
            }
        }
    }
    acc
}

/// `[v]_{u-} / [v+u]_{u+}` with `[v+u]_{u+} = prod (v_i + j), j = 1..u_i`.
pub fn gamma_coefficient(v: &[Rat], u: &[i64]) -> Result<Rat> {
    let mut num = Rat::one();
    let mut den = Rat::one();
    for (vi, &ui) in v.iter().zip(u) {
        if ui < 0 {
            for j in 1..=-ui {
                num *= vi - rat(j) + rat(1);
            }
        } else {
            for j in 1..=ui {
                den *= vi + rat(j);
            }
        }
    }
    if den.is_zero() {
        return Err(HornError::GenericityFailure(format!(
            "Gamma-series denominator vanishes at u = {u:?}"
        )));
    }
    Ok(num / den)
}

pub fn window_points(n: i64) -> Vec<[i64; 2]> {
    let mut pts = Vec::new();
    for a in -n..=n {
        let r = n - a.abs();
        for b in -r..=r {
            pts.push([a, b]);
        }
    }
    pts
}

fn in_window(z: [i64; 2], n: i64) -> bool {
    z[0].abs() + z[1].abs() <= n
}

/// A truncated series over the lattice spanned by the columns of `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedGammaSeries {
    pub v: Vec<Rat>,
    pub basis: Vec<[i64; 2]>,
    pub window: i64,
    /// Nonzero coefficients, keyed by lattice coordinates `z` with `u = basis z`.
    pub coeffs: BTreeMap<[i64; 2], Rat>,
}

impl TruncatedGammaSeries {
    pub fn lattice_vector(&self, z: [i64; 2]) -> Vec<i64> {
        self.basis.iter().map(|r| r[0] * z[0] + r[1] * z[1]).collect()
    }

    pub fn exponent(&self, z: [i64; 2]) -> Vec<Rat> {
        self.v
            .iter()
            .zip(self.lattice_vector(z))
            .map(|(vi, ui)| vi + rat(ui))
            .collect()
    }

    /// Coefficient at `z` when determined: stored inside the window, zero
    /// outside `N_v`, unknown otherwise.
    pub fn known(&self, z: [i64; 2]) -> Option<Rat> {
        if in_window(z, self.window) {
            return Some(self.coeffs.get(&z).cloned().unwrap_or_else(Rat::zero));
        }
        if nv_member(&self.v, &self.lattice_vector(z)) {
            None
        } else {
            Some(Rat::zero())
        }
    }

    /// Window points with a neighbour outside the window.
    pub fn frontier(&self) -> BTreeSet<[i64; 2]> {
        self.coeffs
            .keys()
            .filter(|z| z[0].abs() + z[1].abs() == self.window)
            .copied()
            .collect()
    }
}

pub fn build_phi(v: &[Rat], basis: &[[i64; 2]], window: i64) -> Result<TruncatedGammaSeries> {
    let mut s = TruncatedGammaSeries {
        v: v.to_vec(),
        basis: basis.to_vec(),
        window,
        coeffs: BTreeMap::new(),
    };
    for z in window_points(window) {
        let u = s.lattice_vector(z);
        if nv_member(v, &u) {
            let c = gamma_coefficient(v, &u)?;
            if !c.is_zero() {
                s.coeffs.insert(z, c);
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked: usize,
    pub frontier_excluded: usize,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn merge(&mut self, o: VerificationReport) {
        self.checked += o.checked;
        self.frontier_excluded += o.frontier_excluded;
        self.violations.extend(o.violations);
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Anything that can report a coefficient by lattice coordinates.
pub trait Coefficients {
    fn known(&self, z: [i64; 2]) -> Option<Rat>;
    fn candidates(&self) -> Vec<[i64; 2]>;
}

impl Coefficients for TruncatedGammaSeries {
    fn known(&self, z: [i64; 2]) -> Option<Rat> {
        TruncatedGammaSeries::known(self, z)
    }
    fn candidates(&self) -> Vec<[i64; 2]> {
        window_points(self.window)
    }
}

fn term(coef: &dyn Coefficients, z: [i64; 2], factor: Rat) -> Option<Rat> {
    if factor.is_zero() {
        Some(Rat::zero())
    } else {
        coef.known(z).map(|c| c * factor)
    }
}

/// Checks `d^{u+} - d^{u-}`, `u = basis zu`, on every constraint whose two
/// coefficients are determined.
pub fn verify_binomial(series: &TruncatedGammaSeries, coef: &dyn Coefficients, zu: [i64; 2]) -> VerificationReport {
    let u = series.lattice_vector(zu);
    let (up, um): (Vec<i64>, Vec<i64>) = u.iter().map(|&x| (x.max(0), (-x).max(0))).unzip();
    let mut targets: BTreeSet<[i64; 2]> = BTreeSet::new();
    for z in coef.candidates() {
        targets.insert(z);
        targets.insert([z[0] + zu[0], z[1] + zu[1]]);
    }
    let mut rep = VerificationReport::default();
    for z in targets {
        let w = series.exponent(z);
        let zm = [z[0] - zu[0], z[1] - zu[1]];
        let wm = series.exponent(zm);
        let lhs = term(coef, z, falling_vec(&w, &up));
        let rhs = term(coef, zm, falling_vec(&wm, &um));
        match (lhs, rhs) {
            (Some(a), Some(b)) => {
                rep.checked += 1;
                if a != b {
                    rep.violations.push(format!(
                        "binomial {u:?} fails at z = {z:?}: {a} != {b}"
                    ));
                }
            }
            _ => rep.frontier_excluded += 1,
        }
    }
    rep
}

/// Checks `A theta - A v` on every stored term.
pub fn verify_euler(series: &TruncatedGammaSeries, a: &IntMatrix) -> VerificationReport {
    let rows = a.to_i64_rows().expect("small Gale dual");
    let target: Vec<Rat> = rows
        .iter()
        .map(|r| r.iter().zip(&series.v).map(|(&x, y)| rat(x) * y).sum())
        .collect();
    let mut rep = VerificationReport::default();
    for z in series.coeffs.keys() {
        let w = series.exponent(*z);
        for (r, t) in rows.iter().zip(&target) {
            rep.checked += 1;
            let val: Rat = r.iter().zip(&w).map(|(&x, y)| rat(x) * y).sum();
            if &val != t {
                rep.violations.push(format!("Euler operator fails at z = {z:?}"));
            }
        }
    }
    rep
}

/// Binomials for both columns of the series lattice plus the Euler
/// operators.
pub fn verify_annihilation(series: &TruncatedGammaSeries, a: &IntMatrix) -> VerificationReport {
    let mut rep = verify_binomial(series, series, [1, 0]);
    rep.merge(verify_binomial(series, series, [0, 1]));
    rep.merge(verify_euler(series, a));
    rep
}

#[derive(Clone, Debug)]
pub struct CosetPart {
    pub label: usize,
    pub representative: Vec<BigInt>,
    pub coeffs: BTreeMap<[i64; 2], Rat>,
}

/// A series over `L` split by the cosets of `ZB` in `L`.
#[derive(Clone, Debug)]
pub struct CosetSplit {
    pub parent: TruncatedGammaSeries,
    pub quotient: LatticeQuotient,
    pub parts: Vec<CosetPart>,
}

pub struct CosetView<'a> {
    split: &'a CosetSplit,
    label: usize,
}

impl CosetSplit {
    fn label_of(&self, z: [i64; 2]) -> usize {
        let u: Vec<BigInt> = self.parent.lattice_vector(z).into_iter().map(BigInt::from).collect();
        self.quotient.classify(&u).expect("series lattice lies in L")
    }

    pub fn view(&self, label: usize) -> CosetView<'_> {
        CosetView { split: self, label }
    }

    pub fn nonempty_parts(&self) -> usize {
        self.parts.iter().filter(|p| !p.coeffs.is_empty()).count()
    }

    pub fn pairwise_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.parts.iter().all(|p| p.coeffs.keys().all(|z| seen.insert(*z)))
    }
}

impl Coefficients for CosetView<'_> {
    fn known(&self, z: [i64; 2]) -> Option<Rat> {
        if self.split.label_of(z) != self.label {
            return Some(Rat::zero());
        }
        self.split.parent.known(z)
    }
    fn candidates(&self) -> Vec<[i64; 2]> {
        window_points(self.split.parent.window)
    }
}

pub fn coset_split(series: &TruncatedGammaSeries, b: &IntMatrix, a: &IntMatrix) -> Result<CosetSplit> {
    let quotient = lattice_quotient(b, a)?;
    let mut parts: Vec<CosetPart> = quotient
        .representatives
        .iter()
        .enumerate()
        .map(|(label, r)| CosetPart {
            label,
            representative: r.clone(),
            coeffs: BTreeMap::new(),
        })
        .collect();
    let mut split = CosetSplit {
        parent: series.clone(),
        quotient,
        parts: Vec::new(),
    };
    for (z, c) in &series.coeffs {
        let label = split.label_of(*z);
        parts[label].coeffs.insert(*z, c.clone());
    }
    split.parts = parts;
    Ok(split)
}

/// Checks every coset part against the binomials of the columns of `B`,
/// given in the coordinates of the series lattice.
pub fn verify_coset_parts(split: &CosetSplit, columns: &[[i64; 2]]) -> Vec<VerificationReport> {
    split
        .parts
        .iter()
        .map(|p| {
            let view = split.view(p.label);
            let mut rep = VerificationReport::default();
            for zu in columns {
                rep.merge(verify_binomial(&split.parent, &view, *zu));
            }
            rep
        })
        .collect()
}

/// A Gamma-series rewritten in `y`: coefficient `lambda(z)` at `y^{alpha+z}`.
#[derive(Clone, Debug)]
pub struct HornSeries {
    pub alpha: [Rat; 2],
    pub phi: TruncatedGammaSeries,
    pub root: Option<ExponentRoot>,
}

impl HornSeries {
    pub fn exponent(&self, z: [i64; 2]) -> [Rat; 2] {
        [&self.alpha[0] + rat(z[0]), &self.alpha[1] + rat(z[1])]
    }
}

/// `alpha` with `v = c + B alpha`, solved on two independent coordinates
/// and checked on all of them.
pub fn to_horn_series(phi: &TruncatedGammaSeries, sys: &HornSystem, pair: [usize; 2]) -> Result<HornSeries> {
    let m: Vec<Vec<Rat>> = pair.iter().map(|&k| vec![rat(sys.rows[k][0]), rat(sys.rows[k][1])]).collect();
    let rhs: Vec<Rat> = pair.iter().map(|&k| &phi.v[k] - &sys.c[k]).collect();
    let s = solve_rational(&m, &rhs).ok_or_else(|| {
        HornError::GenericityFailure("dependent rows for the exponent pair".into())
    })?;
    let alpha = [s[0].clone(), s[1].clone()];
    for (k, row) in sys.rows.iter().enumerate() {
        let val = &sys.c[k] + rat(row[0]) * &alpha[0] + rat(row[1]) * &alpha[1];
        if val != phi.v[k] {
            return Err(HornError::NotInColumnSpace);
        }
    }
    Ok(HornSeries {
        alpha,
        phi: phi.clone(),
        root: None,
    })
}

fn verify_shift_operator(hs: &HornSeries, op: &ShiftElement) -> VerificationReport {
    let shifts: Vec<[i64; 2]> = op.terms().map(|(a, _)| *a).collect();
    let mut targets = BTreeSet::new();
    for z in window_points(hs.phi.window) {
        for a in &shifts {
            targets.insert([z[0] + a[0], z[1] + a[1]]);
        }
    }
    let mut rep = VerificationReport::default();
    for t in targets {
        let mut total = Some(Rat::zero());
        for (a, p) in op.terms() {
            let z = [t[0] - a[0], t[1] - a[1]];
            let f = p.eval(&hs.exponent(z));
            let contribution = if f.is_zero() {
                Some(Rat::zero())
            } else {
                hs.phi.known(z).map(|c| c * f)
            };
            total = match (total, contribution) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            };
        }
        match total {
            Some(x) => {
                rep.checked += 1;
                if !x.is_zero() {
                    rep.violations.push(format!("residual {x} at z = {t:?}"));
                }
            }
            None => rep.frontier_excluded += 1,
        }
    }
    rep
}

/// Both Horn operators on the determined part of the series.
pub fn verify_horn_series(hs: &HornSeries, sys: &HornSystem) -> VerificationReport {
    let ops = horn_operators(sys);
    let mut rep = verify_shift_operator(hs, &ops.h[0]);
    rep.merge(verify_shift_operator(hs, &ops.h[1]));
    rep
}

#[derive(Clone, Debug)]
pub struct FullBasis {
    pub initial: InitialIdeal,
    pub top_pairs: Vec<StandardPair>,
    pub roots: Vec<ExponentRoot>,
    pub series: Vec<HornSeries>,
    pub puiseux: Vec<PuiseuxPolynomial>,
}

impl FullBasis {
    pub fn len(&self) -> usize {
        self.series.len() + self.puiseux.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Exponent roots of `in_w(I)` for a lattice ideal generated from `rows`.
pub fn lattice_roots(rows: &[[i64; 2]], a: &IntMatrix, c: &[Rat], seed: u64) -> Result<(InitialIdeal, Vec<StandardPair>, Vec<ExponentRoot>)> {
    let sat = saturate_by_product(&lattice_basis_ideal(rows), Limits::default())?;
    let ini = generic_initial_ideal(&sat.polys, seed)?;
    let top = top_pairs(&standard_pairs(&ini.ideal), 2);
    let roots = exponent_roots(&top, a, c)?;
    for r in &roots {
        if r.v.iter().any(is_negative_integer) {
            return Err(HornError::GenericityFailure(
                "exponent root has a negative integer coordinate".into(),
            ));
        }
    }
    Ok((ini, top, roots))
}

/// `g vol(A)` Gamma-series and all Puiseux polynomials.
pub fn full_basis(cfg: &HornConfig, sys: &HornSystem, window: i64, seed: u64) -> Result<FullBasis> {
    let a = cfg.gale_dual()?;
    let (initial, top, roots) = lattice_roots(&sys.rows, &a, &sys.c, seed)?;
    let mut series = Vec::with_capacity(roots.len());
    for r in &roots {
        let phi = build_phi(&r.v, &sys.rows, window)?;
        let mut hs = to_horn_series(&phi, sys, r.complement())?;
        hs.root = Some(r.clone());
        series.push(hs);
    }
    let puiseux = all_puiseux(sys)?;
    Ok(FullBasis {
        initial,
        top_pairs: top,
        roots,
        series,
        puiseux,
    })
}

/// Exact rank of the coefficient vectors of all basis elements, the series
/// restricted to `|z|_1 <= radius`.
pub fn coefficient_rank(fb: &FullBasis, radius: i64) -> usize {
    let mut rows: Vec<BTreeMap<[Rat; 2], Rat>> = Vec::new();
    for s in &fb.series {
        rows.push(
            s.phi
                .coeffs
                .iter()
                .filter(|(z, _)| in_window(**z, radius))
                .map(|(z, c)| (s.exponent(*z), c.clone()))
                .collect(),
        );
    }
    for p in &fb.puiseux {
        rows.push(p.y_terms.clone());
    }
    let cols: BTreeSet<[Rat; 2]> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    let matrix: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).cloned().unwrap_or_else(Rat::zero)).collect())
        .collect();
    rational_rank(matrix)
}
