//! Buchberger's algorithm over the rationals, lattice basis ideals, their
//! saturations and weight initial ideals.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HornError, Result};
use crate::linalg::Rat;
use crate::poly::{Exponent, MonomialOrder, SparsePolynomial};
use crate::stdpairs::MonomialIdeal;

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_pairs: 1_000_000 }
    }
}

type Terms = Vec<(Exponent, Rat)>;

#[derive(Clone)]
struct OPoly {
    terms: Terms,
    sugar: u64,
}

impl OPoly {
    fn new(f: &SparsePolynomial, order: &MonomialOrder) -> Self {
        let mut p = OPoly {
            terms: f.sorted_terms(order),
            sugar: f.total_degree(),
        };
        p.make_monic();
        p
    }

    fn lm(&self) -> &Exponent {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.recip();
                for (_, c) in self.terms.iter_mut() {
                    *c *= &inv;
                }
            }
        }
    }

    fn to_poly(&self, nvars: usize) -> SparsePolynomial {
        SparsePolynomial::from_terms(nvars, self.terms.iter().cloned())
    }
}

/// `f - k * x^shift * g` for sorted term lists.
fn sub_scaled(f: &[(Exponent, Rat)], k: &Rat, shift: &Exponent, g: &[(Exponent, Rat)], order: &MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted: Vec<(Exponent, Rat)> = g.iter().map(|(e, c)| (e.add(shift), c * k)).collect();
    while i < f.len() || j < shifted.len() {
        if j == shifted.len() {
            out.push(f[i].clone());
            i += 1;
        } else if i == f.len() {
            out.push((shifted[j].0.clone(), -&shifted[j].1));
            j += 1;
        } else {
            match order.cmp(&f[i].0, &shifted[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((shifted[j].0.clone(), -&shifted[j].1));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &f[i].1 - &shifted[j].1;
                    if !c.is_zero() {
                        out.push((f[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    out
}

fn reduce(mut p: Terms, basis: &[OPoly], skip: Option<usize>, order: &MonomialOrder) -> Terms {
    let mut rem = Vec::new();
    while !p.is_empty() {
        let divisor = basis
            .iter()
            .enumerate()
            .find(|(idx, g)| Some(*idx) != skip && g.lm().divides(&p[0].0));
        match divisor {
            Some((_, g)) => {
                let shift = p[0].0.sub(g.lm());
                let k = p[0].1.clone();
                p = sub_scaled(&p, &k, &shift, &g.terms, order);
            }
            None => rem.push(p.remove(0)),
        }
    }
    rem
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub polys: Vec<SparsePolynomial>,
    pub order: MonomialOrder,
    nvars: usize,
    pub pairs_processed: usize,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.polys
            .iter()
            .map(|p| p.leading_term(&self.order).expect("nonzero").0.clone())
            .collect()
    }

    pub fn normal_form(&self, f: &SparsePolynomial) -> SparsePolynomial {
        let basis: Vec<OPoly> = self.polys.iter().map(|p| OPoly::new(p, &self.order)).collect();
        let rem = reduce(f.sorted_terms(&self.order), &basis, None, &self.order);
        SparsePolynomial::from_terms(self.nvars, rem)
    }

    pub fn contains(&self, f: &SparsePolynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

pub fn buchberger(gens: &[SparsePolynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_limits(gens, order, Limits::default())
}

/// Reduced Gröbner basis by the normal selection strategy with sugar,
/// using the coprime and chain criteria.
pub fn buchberger_with_limits(gens: &[SparsePolynomial], order: &MonomialOrder, limits: Limits) -> Result<GroebnerBasis> {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    let mut basis: Vec<OPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OPoly::new(g, order))
        .collect();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let mut processed = 0usize;
    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let (la, sa) = pair_key(&basis, **a);
                let (lb, sb) = pair_key(&basis, **b);
                sa.cmp(&sb).then_with(|| order.cmp(&la, &lb)).then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let (lcm, sugar) = pair_key(&basis, (i, j));
        if basis[i].lm().coprime(basis[j].lm()) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > limits.max_pairs {
            return Err(HornError::exhausted(
                "buchberger",
                format!("{} S-pairs processed, basis size {}", processed - 1, basis.len()),
            ));
        }
        let si = lcm.sub(basis[i].lm());
        let sj = lcm.sub(basis[j].lm());
        let fi: Terms = basis[i].terms.iter().map(|(e, c)| (e.add(&si), c.clone())).collect();
        let s = sub_scaled(&fi, &Rat::one(), &sj, &basis[j].terms, order);
        let h = reduce(s, &basis, None, order);
        if h.is_empty() {
            continue;
        }
        let mut h = OPoly { terms: h, sugar };
        h.make_monic();
        let new = basis.len();
        basis.push(h);
        for k in 0..new {
            pending.insert((k, new));
        }
    }

    // minimize, then tail-reduce
    let mut keep: Vec<OPoly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx && h.lm().divides(g.lm()) && (h.lm() != g.lm() || k < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let lead = keep[idx].terms[0].clone();
        let tail = reduce(keep[idx].terms[1..].to_vec(), &keep, Some(idx), order);
        let mut terms = vec![lead];
        terms.extend(tail);
        reduced.push(OPoly { terms, sugar: 0 }.to_poly(nvars));
    }
    reduced.sort_by(|a, b| {
        order.cmp(
            a.leading_term(order).unwrap().0,
            b.leading_term(order).unwrap().0,
        )
    });
    Ok(GroebnerBasis {
        polys: reduced,
        order: order.clone(),
        nvars,
        pairs_processed: processed,
    })
}

fn pair_key(basis: &[OPoly], (i, j): (usize, usize)) -> (Exponent, u64) {
    let lcm = basis[i].lm().lcm(basis[j].lm());
    let d = lcm.degree();
    let s = (basis[i].sugar + d - basis[i].lm().degree()).max(basis[j].sugar + d - basis[j].lm().degree());
    (lcm, s)
}

/// The binomials `T_i = d^{b(i)+} - d^{b(i)-}` built from the columns of `B`.
pub fn lattice_basis_ideal(rows: &[[i64; 2]]) -> Vec<SparsePolynomial> {
    (0..2)
        .map(|j| {
            let col: Vec<i64> = rows.iter().map(|r| r[j]).collect();
            SparsePolynomial::lattice_binomial(&col)
        })
        .collect()
}

/// `(gens) : (x_1 ... x_n)^infinity`, by eliminating `t` from
/// `gens + (t x_1 ... x_n - 1)`.
pub fn saturate_by_product(gens: &[SparsePolynomial], limits: Limits) -> Result<GroebnerBasis> {
    let n = gens[0].nvars();
    let mut lifted: Vec<SparsePolynomial> = gens.iter().map(SparsePolynomial::append_variable).collect();
    let mut t_rel = SparsePolynomial::monomial(Exponent(vec![1; n + 1]));
    t_rel.add_term(Exponent::zeros(n + 1), -Rat::one());
    lifted.push(t_rel);
    let mut mask = vec![false; n + 1];
    mask[n] = true;
    let gb = buchberger_with_limits(&lifted, &MonomialOrder::elimination(&mask), limits)?;
    let kept: Vec<SparsePolynomial> = gb.polys.iter().filter_map(|p| p.drop_last_variable()).collect();
    Ok(GroebnerBasis {
        polys: kept,
        order: MonomialOrder::grevlex(),
        nvars: n,
        pairs_processed: gb.pairs_processed,
    })
}

/// The lattice ideal `I_B`, the saturation of the lattice basis ideal.
pub fn lattice_ideal(rows: &[[i64; 2]]) -> Result<GroebnerBasis> {
    saturate_by_product(&lattice_basis_ideal(rows), Limits::default())
}

#[derive(Clone, Debug)]
pub struct InitialIdeal {
    pub weight: Vec<i64>,
    pub ideal: MonomialIdeal,
    pub generic: bool,
    pub basis: GroebnerBasis,
}

/// `in_w` of the ideal generated by `gens`, refined by grevlex. `generic`
/// records whether every Gröbner basis element has a unique `w`-maximal
/// term, i.e. whether `in_w` is itself a monomial ideal.
pub fn initial_ideal(gens: &[SparsePolynomial], w: &[i64]) -> Result<InitialIdeal> {
    let order = MonomialOrder::weighted(w);
    let gb = buchberger(gens, &order)?;
    let generic = gb.polys.iter().all(|p| {
        let top = p.terms().map(|(e, _)| e.dot(w)).max().unwrap();
        p.terms().filter(|(e, _)| e.dot(w) == top).count() == 1
    });
    let ideal = MonomialIdeal::new(gb.nvars(), gb.leading_monomials());
    Ok(InitialIdeal {
        weight: w.to_vec(),
        ideal,
        generic,
        basis: gb,
    })
}

pub const WEIGHT_RESAMPLE_CAP: usize = 32;

/// Draws weights in `[1, 2^16]` until the initial ideal is monomial.
pub fn generic_initial_ideal(gens: &[SparsePolynomial], seed: u64) -> Result<InitialIdeal> {
    let n = gens[0].nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..WEIGHT_RESAMPLE_CAP {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=1 << 16)).collect();
        let ini = initial_ideal(gens, &w)?;
        if ini.generic {
            return Ok(ini);
        }
    }
    Err(HornError::GenericityFailure(format!(
        "no generic weight found after {} samples",
        WEIGHT_RESAMPLE_CAP
    )))
}

#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub alpha: Vec<u32>,
    pub checked: usize,
    pub failures: Vec<SparsePolynomial>,
}

impl MembershipReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `d^alpha * I_B` is contained in `I` generator by generator.
pub fn alpha_membership(rows: &[[i64; 2]], alpha: &[u32]) -> Result<MembershipReport> {
    let i_gens = lattice_basis_ideal(rows);
    let gb_i = buchberger(&i_gens, &MonomialOrder::grevlex())?;
    let gb_ib = saturate_by_product(&i_gens, Limits::default())?;
    let shift = Exponent(alpha.to_vec());
    let failures: Vec<SparsePolynomial> = gb_ib
        .polys
        .iter()
        .map(|f| f.mul_term(&shift, &Rat::one()))
        .filter(|f| !gb_i.contains(f))
        .collect();
    Ok(MembershipReport {
        alpha: alpha.to_vec(),
        checked: gb_ib.polys.len(),
        failures,
    })
}
