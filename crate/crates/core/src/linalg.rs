//! Integer matrices over `BigInt`, Hermite and Smith normal forms, Gale
//! duality and the finite quotient of the saturated lattice by `ZB`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{HornError, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub_rows(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = range.map(|i| self.row(i).to_vec()).collect();
        IntMatrix::from_big_rows(&rows, self.cols)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = k * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// col[dst] += k * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = k * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self[(i, j)];
            self[(i, j)] = x;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        (0..h.rows)
            .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
            .count()
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let a: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        let d = rational_det(a);
        d.to_integer()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form. Returns `(H, U)` with `U` unimodular and
/// `U * M = H`; pivots are positive and entries above a pivot lie in
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        loop {
            let pivot = (pr..rows)
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(p, pr);
            u.swap_rows(p, pr);
            let mut clean = true;
            for r in pr + 1..rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = -h[(r, col)].div_floor(&h[(pr, col)]);
                h.add_row_multiple(r, pr, &q);
                u.add_row_multiple(r, pr, &q);
                if !h[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        for r in 0..pr {
            let q = -h[(r, col)].div_floor(&h[(pr, col)]);
            h.add_row_multiple(r, pr, &q);
            u.add_row_multiple(r, pr, &q);
        }
        pr += 1;
    }
    (h, u)
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

/// Smith normal form `U * M * V = D` with a nonnegative divisibility chain on
/// the diagonal of `D`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if d[(r, c)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(br, bc)| d[(r, c)].abs() < d[(br, bc)].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return SmithForm { d, u, v };
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);
            let mut clean = true;
            for r in t + 1..rows {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let q = -d[(r, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                clean &= d[(r, t)].is_zero();
            }
            for c in t + 1..cols {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let q = -d[(t, c)].div_floor(&d[(t, t)]);
                d.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                clean &= d[(t, c)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !d[(r, c)].is_multiple_of(&d[(t, t)])));
            match offender {
                Some(r) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v }
}

/// Inverse of a unimodular matrix, or `None` if it is not unimodular.
pub fn inverse_unimodular(m: &IntMatrix) -> Option<IntMatrix> {
    if m.rows != m.cols {
        return None;
    }
    let (h, t) = hermite_normal_form(m);
    (h == IntMatrix::identity(m.rows)).then_some(t)
}

/// An integer solution `z` of `M z = w`, if one exists.
pub fn solve_integer(m: &IntMatrix, w: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows, w.len(), "dimension mismatch");
    let snf = smith_normal_form(m);
    let uw = snf.u.mul_vec(w);
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, rhs) in uw.iter().enumerate() {
        let di = if i < m.cols { snf.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
        } else {
            let (q, r) = rhs.div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// gcd of the 2x2 minors of an `n x 2` matrix, which is the index of `ZB` in
/// its saturation.
pub fn gcd_maximal_minors(b: &IntMatrix) -> Result<BigInt> {
    if b.cols != 2 {
        return Err(HornError::InvalidInput(format!(
            "expected two columns, got {}",
            b.cols
        )));
    }
    let mut g = BigInt::zero();
    for i in 0..b.rows {
        for j in i + 1..b.rows {
            let minor = &b[(i, 0)] * &b[(j, 1)] - &b[(i, 1)] * &b[(j, 0)];
            g = g.gcd(&minor);
        }
    }
    if g.is_zero() {
        return Err(HornError::RankDeficient { rank: b.rank() });
    }
    Ok(g)
}

fn check_horn_matrix(b: &IntMatrix) -> Result<()> {
    if b.cols != 2 {
        return Err(HornError::InvalidInput(format!(
            "expected two columns, got {}",
            b.cols
        )));
    }
    for j in 0..2 {
        let s: BigInt = (0..b.rows).map(|i| b[(i, j)].clone()).sum();
        if !s.is_zero() {
            return Err(HornError::ZeroColumnSums {
                column: j + 1,
                sum: s.to_string(),
            });
        }
    }
    let r = b.rank();
    if r != 2 {
        return Err(HornError::RankDeficient { rank: r });
    }
    Ok(())
}

/// An `(n-2) x n` integer matrix `A` with first row `(1, ..., 1)` whose rows
/// form a Z-basis of the left kernel of `B`.
pub fn gale_dual(b: &IntMatrix) -> Result<IntMatrix> {
    check_horn_matrix(b)?;
    let n = b.rows;
    if n < 3 {
        return Err(HornError::InvalidInput(
            "Gale dual needs at least three rows".into(),
        ));
    }
    let snf = smith_normal_form(b);
    let kernel = snf.u.sub_rows(2..n);
    let ones = vec![BigInt::one(); n];
    let c = solve_integer(&kernel.transpose(), &ones).ok_or_else(|| {
        HornError::InconsistentGale("(1,...,1) is not in the left kernel lattice".into())
    })?;
    let k = n - 2;
    let col = IntMatrix::from_big_rows(&c.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>(), 1);
    let (_, uc) = hermite_normal_form(&col);
    let w = inverse_unimodular(&uc)
        .expect("HNF transform is unimodular")
        .transpose();
    let a = w.mul(&kernel);
    let mut rows: Vec<Vec<BigInt>> = vec![a.row(0).to_vec()];
    if k > 1 {
        let (tail, _) = hermite_normal_form(&a.sub_rows(1..k));
        rows.extend((0..k - 1).map(|i| tail.row(i).to_vec()));
    }
    let a = IntMatrix::from_big_rows(&rows, n);
    debug_assert!(a.row(0).iter().all(One::is_one));
    debug_assert!(a.mul(b).is_zero());
    Ok(a)
}

/// The finite group `L / ZB`, where `L` is the saturation of the column
/// lattice of `B`.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
    pub representatives: Vec<Vec<BigInt>>,
    u: IntMatrix,
    diag: [BigInt; 2],
}

impl LatticeQuotient {
    /// Index of the coset containing `u`, or `None` when `u` is not in `L`.
    pub fn classify(&self, u: &[BigInt]) -> Option<usize> {
        let uu = self.u.mul_vec(u);
        if uu[2..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let a = uu[0].mod_floor(&self.diag[0]);
        let b = uu[1].mod_floor(&self.diag[1]);
        (a * &self.diag[1] + b).to_usize()
    }

    pub fn contains_in_saturation(&self, u: &[BigInt]) -> bool {
        self.classify(u).is_some()
    }
}

pub fn lattice_quotient(b: &IntMatrix, a: &IntMatrix) -> Result<LatticeQuotient> {
    check_horn_matrix(b)?;
    if a.cols != b.rows || !a.mul(b).is_zero() {
        return Err(HornError::InconsistentGale("A * B is not zero".into()));
    }
    if a.rank() != b.rows - 2 {
        return Err(HornError::InconsistentGale(format!(
            "A has rank {}, expected {}",
            a.rank(),
            b.rows - 2
        )));
    }
    let snf = smith_normal_form(b);
    let diag = [snf.d[(0, 0)].clone(), snf.d[(1, 1)].clone()];
    let uinv = inverse_unimodular(&snf.u).expect("Smith transform is unimodular");
    let mut reps = Vec::new();
    let (d0, d1) = (
        diag[0].to_u64().expect("small index"),
        diag[1].to_u64().expect("small index"),
    );
    for x in 0..d0 {
        for y in 0..d1 {
            let mut e = vec![BigInt::zero(); b.rows];
            e[0] = BigInt::from(x);
            e[1] = BigInt::from(y);
            reps.push(uinv.mul_vec(&e));
        }
    }
    Ok(LatticeQuotient {
        invariant_factors: diag.iter().filter(|d| !d.is_one()).cloned().collect(),
        order: &diag[0] * &diag[1],
        representatives: reps,
        u: snf.u,
        diag,
    })
}

/// A basis of the saturation `L` of `ZB` as the columns of an `n x 2` matrix
/// `S`, together with the 2x2 integer matrix `K` such that `B = S K`.
pub fn saturation_basis(b: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    check_horn_matrix(b)?;
    let snf = smith_normal_form(b);
    let uinv = inverse_unimodular(&snf.u).expect("Smith transform is unimodular");
    let mut s = IntMatrix::zeros(b.rows, 2);
    for i in 0..b.rows {
        s[(i, 0)] = uinv[(i, 0)].clone();
        s[(i, 1)] = uinv[(i, 1)].clone();
    }
    let vinv = inverse_unimodular(&snf.v).expect("Smith transform is unimodular");
    let mut dd = IntMatrix::zeros(2, 2);
    dd[(0, 0)] = snf.d[(0, 0)].clone();
    dd[(1, 1)] = snf.d[(1, 1)].clone();
    let k = dd.mul(&vinv);
    debug_assert_eq!(s.mul(&k), *b);
    Ok((s, k))
}

/// Unique solution of a square rational system, `None` when singular.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "system must be square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for k in col..=n {
                let delta = &f * &m[col][k];
                m[r][k] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn rational_det(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for k in col..n {
                let delta = &f * &a[col][k];
                a[r][k] -= delta;
            }
        }
    }
    det
}

/// Rank of a rational matrix.
pub fn rational_rank(mut a: Vec<Vec<Rat>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[rank][col];
            for k in col..cols {
                let delta = &f * &a[rank][k];
                a[r][k] -= delta;
            }
        }
        rank += 1;
    }
    rank
}
