//! Puiseux polynomial solutions. Each pair of rows of `B` lying in opposite
//! open quadrants and linearly independent contributes `nu` polynomials: the
//! finite connected components of its support graph that meet the base
//! rectangle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{HornError, Result};
use crate::horn::{dependent, index_nu, opposite_open_quadrants, HornSystem};
use crate::linalg::{rat, solve_rational, Rat};
use crate::shift::horn_operators;

/// Two rows `p, q` of `B`, oriented so that `b_p1 > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSystem {
    pub p: usize,
    pub q: usize,
    pub m: [[i64; 2]; 2],
    pub nu: i64,
}

impl PairSystem {
    pub fn new(rows: &[[i64; 2]], i: usize, j: usize) -> Option<Self> {
        let (a, b) = (rows[i], rows[j]);
        if !opposite_open_quadrants(a, b) || dependent(a, b) {
            return None;
        }
        let (p, q) = if a[0] > 0 { (i, j) } else { (j, i) };
        Some(PairSystem {
            p,
            q,
            m: [rows[p], rows[q]],
            nu: index_nu(a, b),
        })
    }

    /// Column `k` of `M`, a move in the `(x_p, x_q)` exponent plane.
    pub fn column(&self, k: usize) -> [i64; 2] {
        [self.m[0][k], self.m[1][k]]
    }

    /// Base points in the `(x_p, x_q)` exponent plane, one per polynomial.
    pub fn base_rectangle(&self) -> Vec<[i64; 2]> {
        let [bp, bq] = self.m;
        let (w, h) = if (bp[0] * bq[1]).abs() > (bp[1] * bq[0]).abs() {
            (bp[1].abs(), bq[0].abs())
        } else {
            (bp[0].abs(), bq[1].abs())
        };
        let mut pts = Vec::with_capacity((w * h) as usize);
        for u in 0..w {
            for v in 0..h {
                pts.push([u, v]);
            }
        }
        pts
    }

    fn escape_bound(&self) -> i64 {
        let [bp, bq] = self.m;
        let spread: i64 = bp.iter().chain(bq.iter()).map(|x| x.abs()).sum();
        (bp[0].abs() + bq[0].abs()) * (bp[1].abs() + bq[1].abs()) + spread
    }

    /// The connected component of `start` in the graph on `N^2` whose edges
    /// are the column moves.
    pub fn component(&self, start: [i64; 2]) -> Result<BTreeSet<[i64; 2]>> {
        let bound = self.escape_bound();
        let moves = [self.column(0), self.column(1)];
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for mv in moves {
                for sgn in [1, -1] {
                    let nb = [w[0] + sgn * mv[0], w[1] + sgn * mv[1]];
                    if nb[0] < 0 || nb[1] < 0 || seen.contains(&nb) {
                        continue;
                    }
                    if nb[0] > bound || nb[1] > bound {
                        return Err(HornError::InvalidInput(format!(
                            "support through {start:?} is not finite"
                        )));
                    }
                    seen.insert(nb);
                    queue.push_back(nb);
                }
            }
        }
        Ok(seen)
    }

    /// Coefficients on a component for the two-row system in `x`:
    /// `a(w) [w]_{col+} = a(w - col) [w - col]_{col-}`.
    pub fn solve_x_coefficients(&self, support: &BTreeSet<[i64; 2]>) -> Result<BTreeMap<[i64; 2], Rat>> {
        let moves = [self.column(0), self.column(1)];
        let root = *support.iter().next().expect("nonempty support");
        let mut coef: BTreeMap<[i64; 2], Rat> = BTreeMap::from([(root, Rat::one())]);
        let mut queue = VecDeque::from([root]);
        while let Some(w) = queue.pop_front() {
            for col in moves {
                let up = [w[0] + col[0], w[1] + col[1]];
                let down = [w[0] - col[0], w[1] - col[1]];
                // edge (up, w): a(up) [up]_{col+} = a(w) [w]_{col-}
                if support.contains(&up) && !coef.contains_key(&up) {
                    let val = &coef[&w] * falling_pow(w, col, false) / falling_pow(up, col, true);
                    coef.insert(up, val);
                    queue.push_back(up);
                }
                if support.contains(&down) && !coef.contains_key(&down) {
                    let val = &coef[&w] * falling_pow(w, col, true) / falling_pow(down, col, false);
                    coef.insert(down, val);
                    queue.push_back(down);
                }
            }
        }
        for (&w, a) in &coef {
            for col in moves {
                let down = [w[0] - col[0], w[1] - col[1]];
                let lhs = a * falling_pow(w, col, true);
                let rhs = coef.get(&down).cloned().unwrap_or_else(Rat::zero) * falling_pow(down, col, false);
                if lhs != rhs {
                    return Err(HornError::Violation(format!(
                        "x-recurrence fails at {w:?} along {col:?}"
                    )));
                }
            }
        }
        Ok(normalize(coef))
    }

    /// `alpha = M^{-1}((u, v) - (c_p, c_q))`.
    pub fn to_horn_exponent(&self, w: [i64; 2], c: &[Rat]) -> Result<[Rat; 2]> {
        let m: Vec<Vec<Rat>> = self.m.iter().map(|r| vec![rat(r[0]), rat(r[1])]).collect();
        let rhs = [rat(w[0]) - &c[self.p], rat(w[1]) - &c[self.q]];
        let s = solve_rational(&m, &rhs).ok_or_else(|| {
            HornError::InvalidInput("pair rows are linearly dependent".into())
        })?;
        Ok([s[0].clone(), s[1].clone()])
    }
}

/// `[w]_{col+}` when `plus`, `[w]_{col-}` otherwise.
fn falling_pow(w: [i64; 2], col: [i64; 2], plus: bool) -> Rat {
    let mut acc = BigInt::one();
    for i in 0..2 {
        let k = if plus { col[i].max(0) } else { (-col[i]).max(0) };
        for l in 0..k {
            acc *= w[i] - l;
        }
    }
    Rat::from_integer(acc)
}

/// Scales to a primitive integer vector whose first entry (in key order) is
/// positive.
pub fn normalize<K: Ord + Clone>(coef: BTreeMap<K, Rat>) -> BTreeMap<K, Rat> {
    let coef: BTreeMap<K, Rat> = coef.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    let Some(first) = coef.values().next().cloned() else {
        return coef;
    };
    let mut den = BigInt::one();
    for c in coef.values() {
        den = den.lcm(c.denom());
    }
    let mut num = BigInt::zero();
    for c in coef.values() {
        num = num.gcd(&(c * Rat::from_integer(den.clone())).to_integer());
    }
    let mut k = Rat::new(den, num);
    if first.is_negative() {
        k = -k;
    }
    coef.into_iter().map(|(e, c)| (e, c * &k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxPolynomial {
    pub p: usize,
    pub q: usize,
    pub base_point: [i64; 2],
    /// Exponents of `(x_p, x_q)` for the two-row system.
    pub x_terms: BTreeMap<[i64; 2], Rat>,
    /// Exponents of `(y1, y2)` for the full Horn system.
    pub y_terms: BTreeMap<[Rat; 2], Rat>,
}

impl PuiseuxPolynomial {
    pub fn y_term_list(&self) -> Vec<([Rat; 2], Rat)> {
        self.y_terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect()
    }
}

/// Coefficients on a y-support for the full Horn system:
/// `a(s) Q_k(s) = a(s - e_k) P_k(s - e_k)`.
fn solve_y_coefficients(sys: &HornSystem, support: &BTreeSet<[Rat; 2]>) -> Result<BTreeMap<[Rat; 2], Rat>> {
    let root = support.iter().next().expect("nonempty support").clone();
    let mut coef: BTreeMap<[Rat; 2], Rat> = BTreeMap::from([(root.clone(), Rat::one())]);
    let mut queue = VecDeque::from([root]);
    while let Some(s) = queue.pop_front() {
        for k in 0..2 {
            let mut up = s.clone();
            up[k] += rat(1);
            let mut down = s.clone();
            down[k] -= rat(1);
            if support.contains(&up) && !coef.contains_key(&up) {
                let q = sys.q_eval(k, &up);
                if q.is_zero() {
                    return Err(HornError::GenericityFailure(format!(
                        "Q_{} vanishes inside a Puiseux support",
                        k + 1
                    )));
                }
                let val = &coef[&s] * sys.p_eval(k, &s) / q;
                coef.insert(up.clone(), val);
                queue.push_back(up);
            }
            if support.contains(&down) && !coef.contains_key(&down) {
                let p = sys.p_eval(k, &down);
                if p.is_zero() {
                    return Err(HornError::GenericityFailure(format!(
                        "P_{} vanishes inside a Puiseux support",
                        k + 1
                    )));
                }
                let val = &coef[&s] * sys.q_eval(k, &s) / p;
                coef.insert(down.clone(), val);
                queue.push_back(down);
            }
        }
    }
    Ok(normalize(coef))
}

/// Checks that both Horn operators annihilate the polynomial exactly.
pub fn verify_puiseux(sys: &HornSystem, poly: &PuiseuxPolynomial) -> Result<()> {
    let ops = horn_operators(sys);
    let terms = poly.y_term_list();
    for (i, h) in ops.h.iter().enumerate() {
        let r = h.apply(&terms);
        if let Some((e, c)) = r.iter().next() {
            return Err(HornError::Violation(format!(
                "H_{} leaves {} at exponent ({}, {})",
                i + 1,
                c,
                e[0],
                e[1]
            )));
        }
    }
    Ok(())
}

/// Puiseux polynomials of one pair, one per base point.
pub fn pair_puiseux(sys: &HornSystem, ps: &PairSystem) -> Result<Vec<PuiseuxPolynomial>> {
    let mut out = Vec::new();
    let mut claimed: BTreeSet<[i64; 2]> = BTreeSet::new();
    for base in ps.base_rectangle() {
        if claimed.contains(&base) {
            return Err(HornError::IdentityViolation(format!(
                "base point {base:?} shares a support with another base point"
            )));
        }
        let support = ps.component(base)?;
        claimed.extend(support.iter().copied());
        let x_terms = ps.solve_x_coefficients(&support)?;
        let mut y_support = BTreeSet::new();
        for w in &support {
            y_support.insert(ps.to_horn_exponent(*w, &sys.c)?);
        }
        let y_terms = solve_y_coefficients(sys, &y_support)?;
        let poly = PuiseuxPolynomial {
            p: ps.p,
            q: ps.q,
            base_point: base,
            x_terms,
            y_terms,
        };
        verify_puiseux(sys, &poly).map_err(|e| match e {
            HornError::Violation(m) => HornError::GenericityFailure(m),
            other => other,
        })?;
        out.push(poly);
    }
    Ok(out)
}

pub fn all_puiseux(sys: &HornSystem) -> Result<Vec<PuiseuxPolynomial>> {
    let mut out = Vec::new();
    for i in 0..sys.n() {
        for j in i + 1..sys.n() {
            if let Some(ps) = PairSystem::new(&sys.rows, i, j) {
                out.extend(pair_puiseux(sys, &ps)?);
            }
        }
    }
    Ok(out)
}

pub fn format_y_terms(terms: &BTreeMap<[Rat; 2], Rat>) -> String {
    let parts: Vec<String> = terms
        .iter()
        .rev()
        .map(|(e, c)| {
            let mut s = if c.is_one() { String::new() } else { format!("{c}*") };
            s.push_str(&format!("y1^({})*y2^({})", e[0], e[1]));
            s
        })
        .collect();
    parts.join(" + ")
}

pub fn format_x_terms(ps_p: usize, ps_q: usize, terms: &BTreeMap<[i64; 2], Rat>) -> String {
    let parts: Vec<String> = terms
        .iter()
        .rev()
        .map(|(e, c)| {
            let vars: Vec<String> = [(ps_p, e[0]), (ps_q, e[1])]
                .iter()
                .filter(|(_, k)| *k != 0)
                .map(|&(v, k)| if k == 1 { format!("x{}", v + 1) } else { format!("x{}^{}", v + 1, k) })
                .collect();
            match (c.is_one(), vars.is_empty()) {
                (_, true) => c.to_string(),
                (true, false) => vars.join("*"),
                (false, false) => format!("{c}*{}", vars.join("*")),
            }
        })
        .collect();
    parts.join(" + ")
}
