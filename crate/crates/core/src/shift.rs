//! The algebra generated by `y1, y2` and the Euler operators `theta1,
//! theta2`, with normal form `sum_a y^a p_a(theta)`. Elements are used to
//! express Horn operators, the commutation identities between them and the
//! resultant-based certificate for special Horn systems.
//!
//! Theta-polynomials may carry extra variables after `theta1, theta2`; those
//! are treated as symbolic parameters that commute with everything.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{HornError, Result};
use crate::horn::HornSystem;
use crate::linalg::{rat, rational_det, Rat};
use crate::poly::SparsePolynomial;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThetaPoly(SparsePolynomial);

impl ThetaPoly {
    pub fn from_poly(p: SparsePolynomial) -> Self {
        assert!(p.nvars() >= 2, "theta polynomials need two theta variables");
        ThetaPoly(p)
    }

    pub fn poly(&self) -> &SparsePolynomial {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn zero(nv: usize) -> Self {
        ThetaPoly(SparsePolynomial::zero(nv))
    }

    pub fn one(nv: usize) -> Self {
        ThetaPoly(SparsePolynomial::one(nv))
    }

    pub fn constant(nv: usize, c: Rat) -> Self {
        ThetaPoly(SparsePolynomial::constant(nv, c))
    }

    pub fn theta(nv: usize, i: usize) -> Self {
        ThetaPoly(SparsePolynomial::var(nv, i))
    }

    /// The `k`-th symbolic parameter.
    pub fn param(nv: usize, k: usize) -> Self {
        ThetaPoly(SparsePolynomial::var(nv, 2 + k))
    }

    /// `b1 theta1 + b2 theta2 + c`.
    pub fn linear(b: [i64; 2], c: &ThetaPoly) -> Self {
        let nv = c.nvars();
        ThetaPoly::theta(nv, 0)
            .scale(&rat(b[0]))
            .add(&ThetaPoly::theta(nv, 1).scale(&rat(b[1])))
            .add(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ThetaPoly(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        ThetaPoly(self.0.sub(&o.0))
    }

    pub fn neg(&self) -> Self {
        ThetaPoly(self.0.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        ThetaPoly(self.0.mul(&o.0))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        ThetaPoly(self.0.scale(k))
    }

    /// `p(theta + a)`.
    pub fn shift(&self, a: [i64; 2]) -> Self {
        if a == [0, 0] {
            return self.clone();
        }
        let nv = self.nvars();
        let mut shift = vec![Rat::zero(); nv];
        shift[0] = rat(a[0]);
        shift[1] = rat(a[1]);
        ThetaPoly(self.0.affine_substitute(&vec![Rat::one(); nv], &shift))
    }

    /// `p(theta1 / a, theta2 / b)`.
    pub fn rescale(&self, a: i64, b: i64) -> Self {
        let nv = self.nvars();
        let mut scale = vec![Rat::one(); nv];
        scale[0] = Rat::new(1.into(), a.into());
        scale[1] = Rat::new(1.into(), b.into());
        ThetaPoly(self.0.affine_substitute(&scale, &vec![Rat::zero(); nv]))
    }

    /// Value at `theta = s`; parameters must be absent.
    pub fn eval(&self, s: &[Rat; 2]) -> Rat {
        assert_eq!(self.nvars(), 2, "cannot evaluate a symbolic polynomial");
        self.0.eval(s)
    }

    pub fn fmt_with(&self, params: &[String]) -> String {
        let mut names = vec!["θ1".to_string(), "θ2".to_string()];
        names.extend(params.iter().cloned());
        while names.len() < self.nvars() {
            names.push(format!("p{}", names.len() - 1));
        }
        self.0.fmt_with(&names)
    }
}

impl fmt::Debug for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&[]))
    }
}

/// `sum_a y^a p_a(theta)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ShiftElement {
    nv: usize,
    terms: BTreeMap<[i64; 2], ThetaPoly>,
}

impl ShiftElement {
    pub fn zero(nv: usize) -> Self {
        ShiftElement {
            nv,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(a: [i64; 2], p: ThetaPoly) -> Self {
        let mut s = ShiftElement::zero(p.nvars());
        s.add_term(a, p);
        s
    }

    pub fn from_theta(p: ThetaPoly) -> Self {
        Self::monomial([0, 0], p)
    }

    pub fn nvars(&self) -> usize {
        self.nv
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; 2], &ThetaPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: [i64; 2]) -> ThetaPoly {
        self.terms.get(&a).cloned().unwrap_or_else(|| ThetaPoly::zero(self.nv))
    }

    fn add_term(&mut self, a: [i64; 2], p: ThetaPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(a).or_insert_with(|| ThetaPoly::zero(p.nvars()));
        *entry = entry.add(&p);
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, p) in &o.terms {
            out.add_term(*a, p.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut out = ShiftElement::zero(self.nv);
        for (a, p) in &self.terms {
            out.add_term(*a, p.scale(k));
        }
        out
    }

    /// Product in the shift algebra: `p(theta) y^b = y^b p(theta + b)`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = ShiftElement::zero(self.nv);
        for (a, p) in &self.terms {
            for (b, q) in &o.terms {
                out.add_term([a[0] + b[0], a[1] + b[1]], p.shift(*b).mul(q));
            }
        }
        out
    }

    pub fn mul_theta_right(&self, q: &ThetaPoly) -> Self {
        self.mul(&ShiftElement::from_theta(q.clone()))
    }

    /// Applies the operator to `sum_s c_s y^s`; only nonzero coefficients
    /// of the result are kept.
    pub fn apply(&self, terms: &[([Rat; 2], Rat)]) -> BTreeMap<[Rat; 2], Rat> {
        let mut out: BTreeMap<[Rat; 2], Rat> = BTreeMap::new();
        for (s, c) in terms {
            for (a, p) in &self.terms {
                let v = p.eval(s) * c;
                if v.is_zero() {
                    continue;
                }
                let key = [&s[0] + rat(a[0]), &s[1] + rat(a[1])];
                let e = out.entry(key.clone()).or_insert_with(Rat::zero);
                *e += v;
                if e.is_zero() {
                    out.remove(&key);
                }
            }
        }
        out
    }

    pub fn fmt_with(&self, params: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, p)| {
                let mut y = Vec::new();
                for (k, &e) in a.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => y.push(format!("y{}", k + 1)),
                        _ => y.push(format!("y{}^{}", k + 1, e)),
                    }
                }
                let body = p.fmt_with(params);
                if y.is_empty() {
                    format!("({body})")
                } else {
                    format!("{}*({body})", y.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for ShiftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&[]))
    }
}

#[derive(Clone, Debug)]
pub struct HornOperators {
    pub q: [ThetaPoly; 2],
    pub p: [ThetaPoly; 2],
    pub h: [ShiftElement; 2],
}

/// `H_i = Q_i - y_i P_i` with parameters given as theta-polynomials (usually
/// constants or symbolic parameters).
pub fn horn_operators_with(rows: &[[i64; 2]], c: &[ThetaPoly]) -> HornOperators {
    let nv = c[0].nvars();
    let build = |i: usize, positive: bool| {
        let mut acc = ThetaPoly::one(nv);
        for (row, b) in rows.iter().enumerate() {
            let k = b[i];
            if (k > 0) != positive || k == 0 {
                continue;
            }
            for l in 0..k.abs() {
                let shifted = c[row].sub(&ThetaPoly::constant(nv, rat(l)));
                acc = acc.mul(&ThetaPoly::linear(*b, &shifted));
            }
        }
        acc
    };
    let q = [build(0, true), build(1, true)];
    let p = [build(0, false), build(1, false)];
    let h = [0, 1].map(|i| {
        let mut e = [0, 0];
        e[i] = 1;
        ShiftElement::from_theta(q[i].clone()).sub(&ShiftElement::monomial(e, p[i].clone()))
    });
    HornOperators { q, p, h }
}

pub fn horn_operators(sys: &HornSystem) -> HornOperators {
    let c: Vec<ThetaPoly> = sys.c.iter().map(|x| ThetaPoly::constant(2, x.clone())).collect();
    horn_operators_with(&sys.rows, &c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    /// `[y1 P1, y2 P2] = 0`
    pub commutator_vanishes: bool,
    /// `(E2 Q2)(E1 E2 Q1) = (E1 Q1)(E1 E2 Q2)`
    pub q_relation: bool,
    /// The cross-multiplied consistency of the two coefficient ratios.
    pub ratio_consistent: bool,
}

impl CompatibilityReport {
    pub fn holds(&self) -> bool {
        self.commutator_vanishes && self.q_relation
    }
}

pub fn commutator(a: &ShiftElement, b: &ShiftElement) -> ShiftElement {
    a.mul(b).sub(&b.mul(a))
}

pub fn compatibility_check(p: &[ThetaPoly; 2], q: &[ThetaPoly; 2]) -> CompatibilityReport {
    let y1p1 = ShiftElement::monomial([1, 0], p[0].clone());
    let y2p2 = ShiftElement::monomial([0, 1], p[1].clone());
    let commutator_vanishes = commutator(&y1p1, &y2p2).is_zero();
    let lhs = q[1].shift([0, 1]).mul(&q[0].shift([1, 1]));
    let rhs = q[0].shift([1, 0]).mul(&q[1].shift([1, 1]));
    // R_i(s) = P_i(s) / Q_i(s + e_i); R_1(s + e2) R_2(s) = R_2(s + e1) R_1(s)
    let left = p[0]
        .shift([0, 1])
        .mul(&p[1])
        .mul(&q[1].shift([1, 1]))
        .mul(&q[0].shift([1, 0]));
    let right = p[1]
        .shift([1, 0])
        .mul(&p[0])
        .mul(&q[0].shift([1, 1]))
        .mul(&q[1].shift([0, 1]));
    CompatibilityReport {
        commutator_vanishes,
        q_relation: lhs == rhs,
        ratio_consistent: left == right,
    }
}

/// `Psi = y1 Q2 P1 - y2 Q1 P2`.
pub fn psi_operator(p: &[ThetaPoly; 2], q: &[ThetaPoly; 2]) -> ShiftElement {
    ShiftElement::monomial([1, 0], q[1].mul(&p[0])).sub(&ShiftElement::monomial([0, 1], q[0].mul(&p[1])))
}

/// The difference between both sides of
/// `(a E2^-1 Q1 - b y1 P1)(c Q2 - d y2 P2) - (a E1^-1 Q2 - b y2 P2)(c Q1 - d y1 P1)
///  = (ad - bc) Psi`.
pub fn determinant_identity_residual(p: &[ThetaPoly; 2], q: &[ThetaPoly; 2], coef: [&Rat; 4]) -> ShiftElement {
    let [a, b, c, d] = coef;
    let y1p1 = ShiftElement::monomial([1, 0], p[0].clone());
    let y2p2 = ShiftElement::monomial([0, 1], p[1].clone());
    let left1 = ShiftElement::from_theta(q[0].shift([0, -1]).scale(a)).sub(&y1p1.scale(b));
    let right1 = ShiftElement::from_theta(q[1].scale(c)).sub(&y2p2.scale(d));
    let left2 = ShiftElement::from_theta(q[1].shift([-1, 0]).scale(a)).sub(&y2p2.scale(b));
    let right2 = ShiftElement::from_theta(q[0].scale(c)).sub(&y1p1.scale(d));
    let lhs = left1.mul(&right1).sub(&left2.mul(&right2));
    let det = a * d - b * c;
    lhs.sub(&psi_operator(p, q).scale(&det))
}

pub fn determinant_identity_check(p: &[ThetaPoly; 2], q: &[ThetaPoly; 2], coef: [&Rat; 4]) -> Result<()> {
    let r = determinant_identity_residual(p, q, coef);
    if r.is_zero() {
        Ok(())
    } else {
        Err(HornError::IdentityViolation(format!(
            "determinant identity leaves residual {:?}",
            r
        )))
    }
}

/// `prod_{j=1}^{k} E^{-j step} P`
pub fn lambda(p: &ThetaPoly, step: [i64; 2], k: u32) -> ThetaPoly {
    let mut acc = ThetaPoly::one(p.nvars());
    for j in 1..=k as i64 {
        acc = acc.mul(&p.shift([-j * step[0], -j * step[1]]));
    }
    acc
}

/// `prod_{j=0}^{k-1} E^{j step} P`
pub fn mu(p: &ThetaPoly, step: [i64; 2], k: u32) -> ThetaPoly {
    let mut acc = ThetaPoly::one(p.nvars());
    for j in 0..k as i64 {
        acc = acc.mul(&p.shift([j * step[0], j * step[1]]));
    }
    acc
}

#[derive(Clone, Debug)]
pub struct Telescoped {
    pub multiplier: ShiftElement,
    pub operator: ShiftElement,
    /// `Q lambda^{k-1}(Q) - y^{k step} mu^k(P)`
    pub result: ShiftElement,
}

/// Left multiplier turning `Q - y^step P` into an operator in `y^{k step}`.
pub fn telescope(q: &ThetaPoly, p: &ThetaPoly, step: [i64; 2], k: u32) -> Result<Telescoped> {
    assert!(k >= 1);
    let nv = q.nvars();
    let mut multiplier = ShiftElement::zero(nv);
    for nu in 0..k {
        let coeff = lambda(q, step, k - 1 - nu).mul(&mu(p, step, nu));
        multiplier = multiplier.add(&ShiftElement::monomial(
            [nu as i64 * step[0], nu as i64 * step[1]],
            coeff,
        ));
    }
    let operator = ShiftElement::from_theta(q.clone()).sub(&ShiftElement::monomial(step, p.clone()));
    let result = ShiftElement::from_theta(q.mul(&lambda(q, step, k - 1))).sub(&ShiftElement::monomial(
        [k as i64 * step[0], k as i64 * step[1]],
        mu(p, step, k),
    ));
    if multiplier.mul(&operator) != result {
        return Err(HornError::IdentityViolation(
            "telescoping identity failed".into(),
        ));
    }
    Ok(Telescoped {
        multiplier,
        operator,
        result,
    })
}

/// The Horn operators rewritten in `xi1 = y1^{1/a}`, `xi2 = y2^{1/b}` and
/// telescoped so that both involve `xi^{ab}` only.
pub fn telescoped_operators(ops: &HornOperators, a: u32, b: u32) -> Result<[Telescoped; 2]> {
    let (ai, bi) = (a as i64, b as i64);
    let qh = [ops.q[0].rescale(ai, bi), ops.q[1].rescale(ai, bi)];
    let ph = [ops.p[0].rescale(ai, bi), ops.p[1].rescale(ai, bi)];
    let first = telescope(&qh[0], &ph[0], [ai, 0], b)?;
    let second = telescope(&qh[1], &ph[1], [0, bi], a)?;
    Ok([first, second])
}

/// Univariate polynomial in `t`, coefficients in increasing degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rat>);

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = SparsePolynomial::zero(1);
        for (k, c) in self.0.iter().enumerate() {
            p.add_term(crate::poly::Exponent(vec![k as u32]), c.clone());
        }
        write!(f, "{}", p.fmt_with(&["t".to_string()]))
    }
}

impl UniPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return UniPoly(vec![]);
        }
        let mut out = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// The theta-polynomial obtained by substituting `t = theta1 + theta2`.
    pub fn in_t(&self, nv: usize) -> ThetaPoly {
        let t = ThetaPoly::theta(nv, 0).add(&ThetaPoly::theta(nv, 1));
        let mut acc = ThetaPoly::zero(nv);
        let mut pow = ThetaPoly::one(nv);
        for c in &self.0 {
            acc = acc.add(&pow.scale(c));
            pow = pow.mul(&t);
        }
        acc
    }
}

/// `lc(g)^deg f * prod f(beta)` over the roots `beta` of `g`: the Sylvester
/// determinant with the rows of `g` on top.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Rat {
    let (Some(m), Some(k)) = (f.degree(), g.degree()) else {
        return Rat::zero();
    };
    let size = m + k;
    if size == 0 {
        return Rat::one();
    }
    let mut s = vec![vec![Rat::zero(); size]; size];
    for r in 0..m {
        for (i, c) in g.0.iter().rev().enumerate() {
            s[r][r + i] = c.clone();
        }
    }
    for r in 0..k {
        for (i, c) in f.0.iter().rev().enumerate() {
            s[m + r][r + i] = c.clone();
        }
    }
    rational_det(s)
}

/// Horn operators written as `U_i = f(t) Q~_i - y_i g(t) P~_i` with
/// `t = theta1 + theta2` and `P~_i, Q~_i` free of factors in `t`.
#[derive(Clone, Debug)]
pub struct SpecialForm {
    pub f: UniPoly,
    pub g: UniPoly,
    pub q: [ThetaPoly; 2],
    pub p: [ThetaPoly; 2],
}

/// Splits off the factors coming from rows proportional to `(1, 1)`.
pub fn special_form(sys: &HornSystem) -> Result<SpecialForm> {
    let nv = 2;
    let mut f = UniPoly::new(vec![Rat::one()]);
    let mut g = UniPoly::new(vec![Rat::one()]);
    let mut rest = HornSystem {
        rows: Vec::new(),
        c: Vec::new(),
    };
    for (b, c) in sys.rows.iter().zip(&sys.c) {
        if b[0] == b[1] && b[0] != 0 {
            let k = b[0];
            let target = if k > 0 { &mut f } else { &mut g };
            for l in 0..k.abs() {
                // k t + c - l, made monic in t; the sign is absorbed below
                let root = (c - rat(l)) / rat(k);
                *target = target.mul(&UniPoly::new(vec![root, Rat::one()]));
            }
        } else {
            rest.rows.push(*b);
            rest.c.push(c.clone());
        }
    }
    if f.degree() == Some(0) && g.degree() == Some(0) {
        return Err(HornError::UnsupportedShape(
            "no row of B is proportional to (1, 1)".into(),
        ));
    }
    let full = horn_operators(sys);
    let reduced = if rest.rows.is_empty() {
        let one = ThetaPoly::one(nv);
        HornOperators {
            q: [one.clone(), one.clone()],
            p: [one.clone(), one],
            h: [ShiftElement::zero(nv), ShiftElement::zero(nv)],
        }
    } else {
        horn_operators(&rest)
    };
    // match leading scalars so that f Q~ = Q and g P~ = P exactly
    let fit = |target: &ThetaPoly, t_part: &UniPoly, body: &ThetaPoly| -> Result<ThetaPoly> {
        let prod = t_part.in_t(nv).mul(body);
        let (e, c) = prod
            .poly()
            .terms()
            .next()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(|| HornError::UnsupportedShape("vanishing operator".into()))?;
        let k = target.poly().coefficient(&e) / c;
        let scaled = body.scale(&k);
        if t_part.in_t(nv).mul(&scaled) != *target {
            return Err(HornError::UnsupportedShape(
                "cannot split operator into t-part and remainder".into(),
            ));
        }
        Ok(scaled)
    };
    let q = [
        fit(&full.q[0], &f, &reduced.q[0])?,
        fit(&full.q[1], &f, &reduced.q[1])?,
    ];
    let p = [
        fit(&full.p[0], &g, &reduced.p[0])?,
        fit(&full.p[1], &g, &reduced.p[1])?,
    ];
    if !compatibility_check(&p, &q).holds() {
        return Err(HornError::UnsupportedShape(
            "operators without the t-factors are not compatible".into(),
        ));
    }
    Ok(SpecialForm { f, g, q, p })
}

#[derive(Clone, Debug)]
pub struct ResultantCertificate {
    pub resultant: Rat,
    pub psi: ShiftElement,
    /// `Theta_1j U_2 - Theta_2j U_1 = Psi~ (f_j g(t) - g_j f(t))` for each
    /// coefficient index `j`
    pub identities_checked: usize,
    /// For linear `f, g`: explicit `(L_1, L_2)` with `L_1 U_1 + L_2 U_2 =
    /// Res(f, g) Psi~`
    pub combination: Option<(ShiftElement, ShiftElement)>,
}

pub fn resultant_certificate(sf: &SpecialForm) -> Result<ResultantCertificate> {
    let nv = 2;
    let psi = psi_operator(&sf.p, &sf.q);
    let u = [0usize, 1].map(|i| {
        let mut e = [0, 0];
        e[i] = 1;
        ShiftElement::from_theta(sf.f.in_t(nv).mul(&sf.q[i]))
            .sub(&ShiftElement::monomial(e, sf.g.in_t(nv).mul(&sf.p[i])))
    });
    let len = sf.f.0.len().max(sf.g.0.len());
    let coeff = |p: &UniPoly, j: usize| p.0.get(j).cloned().unwrap_or_else(Rat::zero);
    let mut thetas = Vec::new();
    for j in 0..len {
        let (fj, gj) = (coeff(&sf.f, j), coeff(&sf.g, j));
        let t1 = ShiftElement::from_theta(sf.q[0].shift([0, -1]).scale(&fj))
            .sub(&ShiftElement::monomial([1, 0], sf.p[0].scale(&gj)));
        let t2 = ShiftElement::from_theta(sf.q[1].shift([-1, 0]).scale(&fj))
            .sub(&ShiftElement::monomial([0, 1], sf.p[1].scale(&gj)));
        let lhs = t1.mul(&u[1]).sub(&t2.mul(&u[0]));
        let d = UniPoly::new(
            (0..len)
                .map(|i| &fj * coeff(&sf.g, i) - &gj * coeff(&sf.f, i))
                .collect(),
        );
        let rhs = psi.mul_theta_right(&d.in_t(nv));
        if lhs != rhs {
            return Err(HornError::IdentityViolation(format!(
                "combination for coefficient {j} does not reduce to Psi"
            )));
        }
        thetas.push((t1, t2));
    }
    let res = resultant(&sf.f, &sf.g);
    let combination = if sf.f.degree() == Some(1) && sf.g.degree() == Some(1) {
        // f_1 g - g_1 f is the constant Res(f, g) up to the leading coefficients
        let (t1, t2) = &thetas[1];
        let d1 = &coeff(&sf.f, 1) * coeff(&sf.g, 0) - &coeff(&sf.g, 1) * coeff(&sf.f, 0);
        if d1.is_zero() {
            None
        } else {
            let k = &res / &d1;
            let l1 = t2.neg().scale(&k);
            let l2 = t1.scale(&k);
            let check = l1.mul(&u[0]).add(&l2.mul(&u[1]));
            if check != psi.scale(&res) {
                return Err(HornError::IdentityViolation(
                    "resultant combination does not reproduce Psi".into(),
                ));
            }
            Some((l1, l2))
        }
    } else {
        None
    };
    Ok(ResultantCertificate {
        resultant: res,
        psi,
        identities_checked: thetas.len(),
        combination,
    })
}
