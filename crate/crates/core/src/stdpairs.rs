//! Standard pairs of monomial ideals, the degree count through top pairs,
//! and the exponent roots read off from them.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{HornError, Result};
use crate::linalg::{solve_rational, IntMatrix, Rat};
use crate::poly::Exponent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Exponent>,
}

fn minimalize(mut gens: Vec<Exponent>) -> Vec<Exponent> {
    gens.sort_by_key(|g| (g.degree(), g.clone()));
    gens.dedup();
    let mut out: Vec<Exponent> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Exponent>) -> Self {
        assert!(gens.iter().all(|g| g.nvars() == nvars));
        MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.gens.iter().any(|g| g.divides(e))
    }
}

/// `(eta, sigma)`: every monomial `x^eta * x_sigma^*` lies outside the
/// ideal, and the family is maximal with that property.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardPair {
    pub eta: Vec<u32>,
    pub sigma: Vec<usize>,
}

impl StandardPair {
    pub fn complement(&self) -> Vec<usize> {
        (0..self.eta.len()).filter(|i| !self.sigma.contains(i)).collect()
    }
}

pub fn standard_pairs(m: &MonomialIdeal) -> Vec<StandardPair> {
    let n = m.nvars;
    assert!(n < 32, "too many variables for subset enumeration");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let sigma: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let free: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let local: Vec<Vec<u32>> = {
            let projected: Vec<Exponent> = m
                .gens
                .iter()
                .map(|g| Exponent(free.iter().map(|&j| g.0[j]).collect()))
                .collect();
            minimalize(projected).into_iter().map(|e| e.0).collect()
        };
        if local.iter().any(|g| g.iter().all(|&x| x == 0)) {
            continue;
        }
        if free.is_empty() {
            out.push(StandardPair {
                eta: vec![0; n],
                sigma,
            });
            continue;
        }
        let bounds: Vec<u32> = (0..free.len())
            .map(|k| local.iter().map(|g| g[k]).max().unwrap_or(0))
            .collect();
        if bounds.contains(&0) {
            continue;
        }
        let mut eta = vec![0u32; free.len()];
        search(&local, &bounds, 0, &mut eta, &mut |e| {
            let mut full = vec![0; n];
            for (k, &j) in free.iter().enumerate() {
                full[j] = e[k];
            }
            out.push(StandardPair {
                eta: full,
                sigma: sigma.clone(),
            });
        });
    }
    out.sort();
    out
}

fn in_local(local: &[Vec<u32>], eta: &[u32]) -> bool {
    local.iter().any(|g| g.iter().zip(eta).all(|(a, b)| a <= b))
}

fn search(local: &[Vec<u32>], bounds: &[u32], pos: usize, eta: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if pos == eta.len() {
        let maximal = (0..eta.len()).all(|l| {
            local
                .iter()
                .any(|g| g.iter().zip(eta.iter()).enumerate().all(|(k, (a, b))| k == l || a <= b))
        });
        if maximal {
            emit(eta);
        }
        return;
    }
    for v in 0..bounds[pos] {
        eta[pos] = v;
        if in_local(local, eta) {
            break;
        }
        search(local, bounds, pos + 1, eta, emit);
    }
    eta[pos] = 0;
}

/// Pairs whose `sigma` has size `n - codim`.
pub fn top_pairs(pairs: &[StandardPair], codim: usize) -> Vec<StandardPair> {
    pairs
        .iter()
        .filter(|p| p.sigma.len() + codim == p.eta.len())
        .cloned()
        .collect()
}

/// Pairs of lower dimension, discarded by the degree count.
pub fn embedded_pairs(pairs: &[StandardPair], codim: usize) -> Vec<StandardPair> {
    pairs
        .iter()
        .filter(|p| p.sigma.len() + codim < p.eta.len())
        .cloned()
        .collect()
}

pub fn degree(m: &MonomialIdeal, codim: usize) -> usize {
    top_pairs(&standard_pairs(m), codim).len()
}

fn rows_independent(rows: &[[i64; 2]], k: usize, l: usize) -> bool {
    rows[k][0] * rows[l][1] - rows[k][1] * rows[l][0] != 0
}

/// Top pairs whose two complementary rows of `B` are linearly independent.
pub fn admissible_pairs(top: &[StandardPair], rows: &[[i64; 2]]) -> Vec<StandardPair> {
    top.iter()
        .filter(|p| {
            let c = p.complement();
            c.len() == 2 && rows_independent(rows, c[0], c[1])
        })
        .cloned()
        .collect()
}

/// Number of top pairs with `sigma` equal to the complement of `{k, l}`.
pub fn dependent_multiplicity(top: &[StandardPair], k: usize, l: usize) -> usize {
    top.iter()
        .filter(|p| {
            let c = p.complement();
            c.len() == 2 && c.contains(&k) && c.contains(&l)
        })
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentRoot {
    pub pair: StandardPair,
    pub v: Vec<Rat>,
}

impl ExponentRoot {
    pub fn complement(&self) -> [usize; 2] {
        let c = self.pair.complement();
        [c[0], c[1]]
    }
}

/// The exponent `v` with `v_i = eta_i` off `sigma` and `A v = A c`, one per
/// top pair. Fails when a system is singular or two roots coincide.
pub fn exponent_roots(pairs: &[StandardPair], a: &IntMatrix, c: &[Rat]) -> Result<Vec<ExponentRoot>> {
    let n = c.len();
    let ar: Vec<Vec<Rat>> = (0..a.rows())
        .map(|i| a.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let ac: Vec<Rat> = ar
        .iter()
        .map(|row| row.iter().zip(c).map(|(x, y)| x * y).sum())
        .collect();
    let mut roots = Vec::with_capacity(pairs.len());
    for p in pairs {
        if p.sigma.len() != a.rows() {
            return Err(HornError::InvalidInput(
                "exponent roots need top standard pairs".into(),
            ));
        }
        let free = p.complement();
        let rhs: Vec<Rat> = ar
            .iter()
            .zip(&ac)
            .map(|(row, t)| {
                let mut r = t.clone();
                for &j in &free {
                    r -= &row[j] * Rat::from_integer(p.eta[j].into());
                }
                r
            })
            .collect();
        let sys: Vec<Vec<Rat>> = ar
            .iter()
            .map(|row| p.sigma.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let sol = solve_rational(&sys, &rhs).ok_or_else(|| {
            HornError::GenericityFailure(format!(
                "singular system for standard pair with sigma {:?}",
                p.sigma
            ))
        })?;
        let mut v = vec![Rat::zero(); n];
        for &j in &free {
            v[j] = Rat::from_integer(p.eta[j].into());
        }
        for (k, &j) in p.sigma.iter().enumerate() {
            v[j] = sol[k].clone();
        }
        roots.push(ExponentRoot { pair: p.clone(), v });
    }
    let distinct: BTreeSet<&Vec<Rat>> = roots.iter().map(|r| &r.v).collect();
    if distinct.len() != roots.len() {
        return Err(HornError::GenericityFailure(
            "two exponent roots coincide".into(),
        ));
    }
    Ok(roots)
}
