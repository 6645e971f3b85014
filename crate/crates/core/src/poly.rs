//! Sparse multivariate polynomials with exact rational coefficients and
//! weight-refined monomial orders.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::Rat;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zeros(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, assuming `other` divides `self`.
    pub fn sub(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum()
    }

    /// Splits an integer vector `u` into `(u+, u-)`.
    pub fn split(u: &[i64]) -> (Exponent, Exponent) {
        let plus = u.iter().map(|&x| x.max(0) as u32).collect();
        let minus = u.iter().map(|&x| (-x).max(0) as u32).collect();
        (Exponent(plus), Exponent(minus))
    }
}

/// Compare by each weight vector in turn, then by graded reverse
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub weights: Vec<Vec<i64>>,
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder { weights: vec![] }
    }

    pub fn weighted(w: &[i64]) -> Self {
        MonomialOrder {
            weights: vec![w.to_vec()],
        }
    }

    /// Eliminates the variables flagged in `mask`.
    pub fn elimination(mask: &[bool]) -> Self {
        MonomialOrder {
            weights: vec![mask.iter().map(|&m| m as i64).collect()],
        }
    }

    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        for w in &self.weights {
            match a.dot(w).cmp(&b.dot(w)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::term(Exponent::zeros(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Exponent::unit(nvars, i), Rat::one())
    }

    pub fn term(e: Exponent, c: Rat) -> Self {
        let mut p = SparsePolynomial::zero(e.nvars());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn monomial(e: Exponent) -> Self {
        Self::term(e, Rat::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Self {
        let mut p = SparsePolynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.nvars(), nvars);
            p.add_term(e, c);
        }
        p
    }

    /// The binomial `x^{u+} - x^{u-}`.
    pub fn lattice_binomial(u: &[i64]) -> Self {
        let (p, m) = Exponent::split(u);
        let n = u.len();
        let mut f = SparsePolynomial::monomial(p);
        f.add_term(m, -Rat::one());
        debug_assert_eq!(f.nvars, n);
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return SparsePolynomial::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul_term(&self, e: &Exponent, k: &Rat) -> Self {
        if k.is_zero() {
            return SparsePolynomial::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(f, c)| (f.add(e), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = SparsePolynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_term(e.add(f), c * d);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = SparsePolynomial::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Exponent, &Rat)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x_i -> scale_i * x_i + shift_i` in every variable.
    pub fn affine_substitute(&self, scale: &[Rat], shift: &[Rat]) -> Self {
        let n = self.nvars;
        let images: Vec<SparsePolynomial> = (0..n)
            .map(|i| {
                SparsePolynomial::var(n, i)
                    .scale(&scale[i])
                    .add(&SparsePolynomial::constant(n, shift[i].clone()))
            })
            .collect();
        let mut out = SparsePolynomial::zero(n);
        for (e, c) in &self.terms {
            let mut t = SparsePolynomial::constant(n, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&images[i].pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Drops the last variable, requiring it to be absent.
    pub fn drop_last_variable(&self) -> Option<Self> {
        let n = self.nvars.checked_sub(1)?;
        let mut out = SparsePolynomial::zero(n);
        for (e, c) in &self.terms {
            if e.0[n] != 0 {
                return None;
            }
            out.terms.insert(Exponent(e.0[..n].to_vec()), c.clone());
        }
        Some(out)
    }

    pub fn append_variable(&self) -> Self {
        SparsePolynomial {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = e.0.clone();
                    v.push(0);
                    (Exponent(v), c.clone())
                })
                .collect(),
        }
    }

    pub fn is_binomial(&self) -> bool {
        self.terms.len() <= 2
    }

    /// Terms in decreasing order under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Exponent, Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        names[j].clone()
                    } else {
                        format!("{}^{}", names[j], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&format!("{}*", a));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn e(v: &[u32]) -> Exponent {
        Exponent(v.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::grevlex();
        // x1^2 > x1 x2 > x2^2 > x1 x3 in grevlex with x1 > x2 > x3
        assert_eq!(o.cmp(&e(&[2, 0, 0]), &e(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&e(&[0, 2, 0]), &e(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&e(&[0, 0, 3]), &e(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn weights_take_priority() {
        let o = MonomialOrder::weighted(&[1, 5]);
        assert_eq!(o.cmp(&e(&[3, 0]), &e(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn binomial_and_arithmetic() {
        let f = SparsePolynomial::lattice_binomial(&[1, -2, 1, 0]);
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&e(&[1, 0, 1, 0])), rat(1));
        assert_eq!(f.coefficient(&e(&[0, 2, 0, 0])), rat(-1));
        assert!(f.sub(&f).is_zero());
        let sq = f.mul(&f);
        assert_eq!(sq.coefficient(&e(&[1, 2, 1, 0])), rat(-2));
    }

    #[test]
    fn affine_substitution_shifts() {
        // (x + y)^2 at x -> x + 1
        let n = 2;
        let s = SparsePolynomial::var(n, 0).add(&SparsePolynomial::var(n, 1)).pow(2);
        let shifted = s.affine_substitute(&[rat(1), rat(1)], &[rat(1), rat(0)]);
        let pt = [rat(2), rat(3)];
        assert_eq!(shifted.eval(&pt), rat(36));
    }
}
