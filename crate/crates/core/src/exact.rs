//! Exact integer and rational matrix kernels.
//!
//! Row-style Hermite normal form is the single canonical form used across
//! the crate: pivots positive, entries above a pivot reduced into
//! `[0, pivot)`, zero rows last. Smith normal form backs integer preimage
//! computations, and determinants use fraction-free Bareiss elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        IntMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
    }

    /// Empty matrix with a declared column count (0 rows).
    pub fn empty(cols: usize) -> Self {
        IntMatrix {
            rows: 0,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * other.at(k, c);
                    *out.at_mut(r, c) += term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Submatrix picking the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                *out.at_mut(i, j) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|e| Rat::from_integer(e.clone()))
                .collect(),
        }
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<Int, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut m = self.clone();
        let mut sign = 1i8;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                // pivot by the first row below with a nonzero entry
                match (k + 1..n).find(|&r| !m.at(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    *m.at_mut(i, j) = q;
                }
                *m.at_mut(i, k) = Int::zero();
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        Ok(if sign < 0 { -d } else { d })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    // row_b += q * row_a
    fn add_mul_row(&mut self, b: usize, a: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = q * self.at(a, c);
            *self.at_mut(b, c) += t;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// Row-style Hermite normal form. Returns `(H, U)` with `U` unimodular,
    /// `U * self = H`, pivots positive, entries above each pivot in
    /// `[0, pivot)`, zero rows last. `H` is the unique canonical basis of
    /// the row lattice.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pr = 0usize;
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            // gcd-combine rows pr.. to concentrate the column gcd at (pr, pc)
            let mut any = false;
            for r in pr..self.rows {
                if !h.at(r, pc).is_zero() {
                    any = true;
                    break;
                }
            }
            if !any {
                continue;
            }
            for r in pr + 1..self.rows {
                if h.at(r, pc).is_zero() {
                    continue;
                }
                let a = h.at(pr, pc).clone();
                let b = h.at(r, pc).clone();
                let eg = a.extended_gcd(&b);
                let (d, x, y) = (eg.gcd, eg.x, eg.y);
                // [[x, y], [-b/d, a/d]] has determinant 1
                let bd = &b / &d;
                let ad = &a / &d;
                for c in 0..self.cols {
                    let hp = h.at(pr, c).clone();
                    let hr = h.at(r, c).clone();
                    *h.at_mut(pr, c) = &x * &hp + &y * &hr;
                    *h.at_mut(r, c) = &ad * &hr - &bd * &hp;
                }
                for c in 0..self.rows {
                    let up = u.at(pr, c).clone();
                    let ur = u.at(r, c).clone();
                    *u.at_mut(pr, c) = &x * &up + &y * &ur;
                    *u.at_mut(r, c) = &ad * &ur - &bd * &up;
                }
            }
            if h.at(pr, pc).is_negative() {
                h.negate_row(pr);
                u.negate_row(pr);
            }
            if h.at(pr, pc).is_zero() {
                continue;
            }
            // reduce entries above the pivot into [0, pivot)
            let p = h.at(pr, pc).clone();
            for r in 0..pr {
                let q = h.at(r, pc).div_floor(&p);
                if !q.is_zero() {
                    let nq = -q;
                    h.add_mul_row(r, pr, &nq);
                    u.add_mul_row(r, pr, &nq);
                }
            }
            pr += 1;
        }
        (h, u)
    }

    /// Rows with at least one nonzero entry, preserving order.
    pub fn drop_zero_rows(&self) -> IntMatrix {
        let rows: Vec<Vec<Int>> = (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|e| !e.is_zero()))
            .map(|r| self.row(r).to_vec())
            .collect();
        if rows.is_empty() {
            IntMatrix::empty(self.cols)
        } else {
            IntMatrix::from_rows(rows)
        }
    }

    /// Smith normal form. Returns `(S, U, V)` with `U`, `V` unimodular and
    /// `U * self * V = S` diagonal, `s_1 | s_2 | ...`, all entries >= 0.
    pub fn snf(&self) -> (IntMatrix, IntMatrix, IntMatrix) {
        let mut s = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0usize;
        while t < n {
            // pick the nonzero entry of smallest magnitude in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for r in t..self.rows {
                for c in t..self.cols {
                    if !s.at(r, c).is_zero()
                        && pivot
                            .map(|(pr, pc)| s.at(r, c).abs() < s.at(pr, pc).abs())
                            .unwrap_or(true)
                    {
                        pivot = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = pivot else { break };
            s.swap_rows(t, pr);
            u.swap_rows(t, pr);
            s.swap_cols(t, pc);
            v.swap_cols(t, pc);
            loop {
                // clear column t with row gcd operations
                for r in t + 1..self.rows {
                    if s.at(r, t).is_zero() {
                        continue;
                    }
                    let a = s.at(t, t).clone();
                    let b = s.at(r, t).clone();
                    let eg = a.extended_gcd(&b);
                    let (d, x, y) = (eg.gcd, eg.x, eg.y);
                    let bd = &b / &d;
                    let ad = &a / &d;
                    for c in 0..self.cols {
                        let st = s.at(t, c).clone();
                        let sr = s.at(r, c).clone();
                        *s.at_mut(t, c) = &x * &st + &y * &sr;
                        *s.at_mut(r, c) = &ad * &sr - &bd * &st;
                    }
                    for c in 0..self.rows {
                        let ut = u.at(t, c).clone();
                        let ur = u.at(r, c).clone();
                        *u.at_mut(t, c) = &x * &ut + &y * &ur;
                        *u.at_mut(r, c) = &ad * &ur - &bd * &ut;
                    }
                }
                // clear row t with column gcd operations
                for c in t + 1..self.cols {
                    if s.at(t, c).is_zero() {
                        continue;
                    }
                    let a = s.at(t, t).clone();
                    let b = s.at(t, c).clone();
                    let eg = a.extended_gcd(&b);
                    let (d, x, y) = (eg.gcd, eg.x, eg.y);
                    let bd = &b / &d;
                    let ad = &a / &d;
                    for r in 0..self.rows {
                        let st = s.at(r, t).clone();
                        let sc = s.at(r, c).clone();
                        *s.at_mut(r, t) = &x * &st + &y * &sc;
                        *s.at_mut(r, c) = &ad * &sc - &bd * &st;
                    }
                    for r in 0..self.cols {
                        let vt = v.at(r, t).clone();
                        let vc = v.at(r, c).clone();
                        *v.at_mut(r, t) = &x * &vt + &y * &vc;
                        *v.at_mut(r, c) = &ad * &vc - &bd * &vt;
                    }
                }
                // column ops may have refilled column t
                let col_clear = (t + 1..self.rows).all(|r| s.at(r, t).is_zero());
                if col_clear {
                    break;
                }
            }
            // enforce divisibility of the trailing block by the pivot
            let p = s.at(t, t).clone();
            let mut fixed = true;
            'scan: for r in t + 1..self.rows {
                for c in t + 1..self.cols {
                    if !(s.at(r, c) % &p).is_zero() {
                        // fold row r into row t and redo the reduction
                        s.add_mul_row(t, r, &Int::one());
                        u.add_mul_row(t, r, &Int::one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                if s.at(t, t).is_negative() {
                    s.negate_row(t);
                    u.negate_row(t);
                }
                t += 1;
            }
        }
        (s, u, v)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// Z-basis of the integer kernel `{x : self * x = 0}`, rows of the
    /// result, in HNF; empty matrix (0 rows) when the kernel is trivial.
    pub fn kernel(&self) -> IntMatrix {
        let mt = self.transpose();
        let (h, u) = mt.hnf();
        let mut basis: Vec<Vec<Int>> = Vec::new();
        for r in 0..h.rows() {
            if h.row(r).iter().all(Zero::is_zero) {
                basis.push(u.row(r).to_vec());
            }
        }
        if basis.is_empty() {
            return IntMatrix::empty(self.cols);
        }
        let (hb, _) = IntMatrix::from_rows(basis).hnf();
        hb.drop_zero_rows()
    }

    /// Some integer solution of `self * x = b`, if one exists, computed via
    /// Smith normal form with free coordinates set to zero.
    pub fn preimage(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let (s, u, v) = self.snf();
        let c = u.mul_vec(b);
        let mut y = vec![Int::zero(); self.cols];
        let n = self.rows.min(self.cols);
        for i in 0..n {
            let si = s.at(i, i);
            if si.is_zero() {
                if !c[i].is_zero() {
                    return None;
                }
            } else {
                let (q, rem) = c[i].div_rem(si);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        }
        for i in n..self.rows {
            if !c[i].is_zero() {
                return None;
            }
        }
        Some(v.mul_vec(&y))
    }

    /// Rank over Q (= number of nonzero Smith invariants).
    pub fn rank(&self) -> usize {
        let (s, _, _) = self.snf();
        let n = self.rows.min(self.cols);
        (0..n).filter(|&i| !s.at(i, i).is_zero()).count()
    }

    /// Whether the row lattice of `self` contains `x`.
    pub fn row_lattice_contains(&self, x: &[Int]) -> bool {
        self.transpose().preimage(x).is_some()
    }

    /// Adjugate times vector without forming the adjugate: coordinate `i`
    /// is the determinant of `self` with column `i` replaced by `w`.
    pub fn adjugate_mul_vec(&self, w: &[Int]) -> Result<Vec<Int>, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        assert_eq!(w.len(), self.rows);
        let mut out = Vec::with_capacity(self.cols);
        for i in 0..self.cols {
            let mut m = self.clone();
            for r in 0..self.rows {
                *m.at_mut(r, i) = w[r].clone();
            }
            out.push(m.det()?);
        }
        Ok(out)
    }

    /// Inverse of a matrix with determinant +-1; integer entries.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, MatrixError> {
        let d = self.det()?;
        if d.abs() != Int::one() {
            return Err(MatrixError::Singular);
        }
        let n = self.rows;
        let mut inv = IntMatrix::zero(n, n);
        for i in 0..n {
            let mut e = vec![Int::zero(); n];
            e[i] = Int::one();
            let col = self.adjugate_mul_vec(&e)?;
            for r in 0..n {
                *inv.at_mut(r, i) = &col[r] * &d;
            }
        }
        Ok(inv)
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RatMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * other.at(k, c);
                    *out.at_mut(r, c) += term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Clear denominators: returns `(M, L)` with integer `M` and positive
    /// `L` such that `self = M / L`.
    pub fn clear_denominators(&self) -> (IntMatrix, Int) {
        let mut l = Int::one();
        for e in &self.entries {
            l = l.lcm(e.denom());
        }
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.at(r, c);
                *m.at_mut(r, c) = e.numer() * (&l / e.denom());
            }
        }
        (m, l)
    }

    /// Exact determinant: clears denominators row-wise, then Bareiss.
    pub fn det(&self) -> Result<Rat, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut scale = Rat::one();
        let mut rows: Vec<Vec<Int>> = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut l = Int::one();
            for c in 0..self.cols {
                l = l.lcm(self.at(r, c).denom());
            }
            scale *= Rat::new(Int::one(), l.clone());
            rows.push(
                (0..self.cols)
                    .map(|c| {
                        let e = self.at(r, c);
                        e.numer() * (&l / e.denom())
                    })
                    .collect(),
            );
        }
        if self.rows == 0 {
            return Ok(Rat::one());
        }
        let d = IntMatrix::from_rows(rows).det()?;
        Ok(scale * Rat::from_integer(d))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.det().map(|d| !d.is_zero()).unwrap_or(false)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for c in 0..n {
            let pivot = (c..n).find(|&r| !a.at(r, c).is_zero());
            let Some(pr) = pivot else {
                return Err(MatrixError::Singular);
            };
            if pr != c {
                for j in 0..n {
                    a.entries.swap(pr * n + j, c * n + j);
                    inv.entries.swap(pr * n + j, c * n + j);
                }
            }
            let p = a.at(c, c).clone();
            let pinv = p.recip();
            for j in 0..n {
                let v = a.at(c, j) * &pinv;
                *a.at_mut(c, j) = v;
                let w = inv.at(c, j) * &pinv;
                *inv.at_mut(c, j) = w;
            }
            for r in 0..n {
                if r == c || a.at(r, c).is_zero() {
                    continue;
                }
                let f = a.at(r, c).clone();
                for j in 0..n {
                    let v = a.at(r, j) - &f * a.at(c, j);
                    *a.at_mut(r, j) = v;
                    let w = inv.at(r, j) - &f * inv.at(c, j);
                    *inv.at_mut(r, j) = w;
                }
            }
        }
        Ok(inv)
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let (m, _) = self.clear_denominators();
        m.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_already_canonical() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let (h, u) = a.hnf();
        assert_eq!(h, a);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_permutation_rows() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let (h, u) = a.hnf();
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.det().unwrap().abs(), Int::one());
    }

    #[test]
    fn hnf_same_lattice_after_adjoining_combination() {
        // rows of b are integer combinations of rows of a and vice versa
        let a = m(&[&[1, 0], &[2, 5]]);
        let b = m(&[&[1, 0], &[2, 5], &[-1, 5]]);
        let (ha, _) = a.hnf();
        let (hb, _) = b.hnf();
        assert_eq!(ha.drop_zero_rows(), hb.drop_zero_rows());
        // membership oracle: every row of a lies in the lattice of b and back
        for r in 0..a.rows() {
            assert!(hb.drop_zero_rows().transpose().preimage(a.row(r)).is_some());
        }
        for r in 0..b.rows() {
            assert!(ha.drop_zero_rows().transpose().preimage(b.row(r)).is_some());
        }
    }

    #[test]
    fn hnf_idempotent() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let (h, _) = a.hnf();
        let (h2, _) = h.hnf();
        assert_eq!(h, h2);
    }

    #[test]
    fn snf_identity() {
        let (s, u, v) = IntMatrix::identity(3).snf();
        assert_eq!(s, IntMatrix::identity(3));
        assert_eq!(u.mul(&IntMatrix::identity(3)).mul(&v), s);
    }

    #[test]
    fn snf_diag_2_3() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = a.snf();
        assert_eq!(s, m(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&a).mul(&v), s);
        assert_eq!(u.det().unwrap().abs(), Int::one());
        assert_eq!(v.det().unwrap().abs(), Int::one());
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zero(2, 3);
        let (s, u, v) = a.snf();
        assert!(s.is_zero());
        assert_eq!(u.mul(&a).mul(&v), s);
    }

    /// Product of the first k Smith invariants equals the gcd of all k x k
    /// minors (brute-force minor oracle).
    fn minor_gcd(a: &IntMatrix, k: usize) -> Int {
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in combos(n, k - 1) {
                    if rest.iter().all(|&x| x > first) {
                        let mut c = vec![first];
                        c.append(&mut rest);
                        out.push(c);
                    }
                }
            }
            out
        }
        let mut g = Int::zero();
        for rs in combos(a.rows(), k) {
            for cs in combos(a.cols(), k) {
                g = g.gcd(&a.submatrix(&rs, &cs).det().unwrap());
            }
        }
        g
    }

    #[test]
    fn snf_invariants_match_minor_gcds() {
        let cases = [
            m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]),
            m(&[&[1, 2], &[3, 4]]),
            m(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]]),
            m(&[&[0, 1, 1], &[1, 0, 1]]),
        ];
        for a in &cases {
            let (s, _, _) = a.snf();
            let n = a.rows().min(a.cols());
            let mut prod = Int::one();
            for k in 1..=n {
                prod = &prod * s.at(k - 1, k - 1);
                assert_eq!(prod.abs(), minor_gcd(a, k).abs(), "minor oracle at k={k}");
            }
            // divisibility chain
            for k in 1..n {
                let (a0, b0) = (s.at(k - 1, k - 1), s.at(k, k));
                if !a0.is_zero() {
                    assert!((b0 % a0).is_zero());
                } else {
                    assert!(b0.is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_simple() {
        let a = m(&[&[1, 0]]);
        let k = a.kernel();
        assert_eq!(k, m(&[&[0, 1]]));
    }

    #[test]
    fn kernel_invertible_is_empty() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.kernel().rows(), 0);
    }

    #[test]
    fn kernel_paper_functional() {
        // coordinates of n1 + (1/5) n2 + beta n3 + gamma n4, denominators cleared
        let a = m(&[&[5, 1, 0, 0], &[0, 0, 5, 0], &[0, 0, 0, 5]]);
        let k = a.kernel();
        assert_eq!(k.rows(), 1);
        // same rank-1 lattice as (-1, 5, 0, 0)
        let w: Vec<Int> = [-1i64, 5, 0, 0].iter().map(|&v| Int::from(v)).collect();
        assert!(k.row_lattice_contains(&w));
        assert!(a.mul_vec(k.row(0)).iter().all(Zero::is_zero));
    }

    #[test]
    fn preimage_identity() {
        let a = IntMatrix::identity(3);
        let b: Vec<Int> = [7i64, -2, 0].iter().map(|&v| Int::from(v)).collect();
        assert_eq!(a.preimage(&b).unwrap(), b);
    }

    #[test]
    fn preimage_parity_obstruction() {
        let a = m(&[&[2]]);
        assert!(a.preimage(&[Int::from(3)]).is_none());
    }

    #[test]
    fn preimage_bezout() {
        let a = m(&[&[2, 3]]);
        let x = a.preimage(&[Int::from(1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![Int::from(1)]);
    }

    #[test]
    fn det_identity() {
        assert_eq!(IntMatrix::identity(4).det().unwrap(), Int::one());
    }

    #[test]
    fn det_nonsquare_rejected() {
        assert!(IntMatrix::zero(2, 3).det().is_err());
    }

    /// Cofactor-expansion determinant, used as an oracle.
    fn det_cofactor(a: &IntMatrix) -> Int {
        let n = a.rows();
        if n == 0 {
            return Int::one();
        }
        let mut d = Int::zero();
        let cols: Vec<usize> = (1..n).collect();
        for j in 0..n {
            if a.at(0, j).is_zero() {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let sub = a.submatrix(&cols, &keep);
            let term = a.at(0, j) * det_cofactor(&sub);
            if j % 2 == 0 {
                d += term;
            } else {
                d -= term;
            }
        }
        d
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let rows: Vec<Vec<Int>> = (0..5)
                .map(|_| (0..5).map(|_| Int::from(rng.gen_range(-9i64..=9))).collect())
                .collect();
            let a = IntMatrix::from_rows(rows);
            assert_eq!(a.det().unwrap(), det_cofactor(&a));
        }
    }

    #[test]
    fn hnf_snf_transform_unimodular_and_kernel_rank() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let r = rng.gen_range(1usize..=4);
            let c = rng.gen_range(1usize..=4);
            let rows: Vec<Vec<Int>> = (0..r)
                .map(|_| (0..c).map(|_| Int::from(rng.gen_range(-6i64..=6))).collect())
                .collect();
            let a = IntMatrix::from_rows(rows);
            let (h, u) = a.hnf();
            assert_eq!(u.mul(&a), h);
            assert_eq!(u.det().unwrap().abs(), Int::one());
            let (s, us, vs) = a.snf();
            assert_eq!(us.mul(&a).mul(&vs), s);
            assert_eq!(us.det().unwrap().abs(), Int::one());
            assert_eq!(vs.det().unwrap().abs(), Int::one());
            let k = a.kernel();
            for i in 0..k.rows() {
                assert!(a.mul_vec(k.row(i)).iter().all(Zero::is_zero));
            }
            assert_eq!(a.rank() + k.rows(), c);
        }
    }

    #[test]
    fn rat_det_and_inverse() {
        let half = Rat::new(Int::one(), Int::from(2));
        let a = RatMatrix::from_rows(vec![
            vec![Rat::one(), half.clone()],
            vec![Rat::zero(), Rat::one()],
        ]);
        assert_eq!(a.det().unwrap(), Rat::one());
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() (
        ) -> impl Strategy<Value = IntMatrix> {
            (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-8i64..=8, r * c).prop_map(move |v| IntMatrix {
                    rows: r,
                    cols: c,
                    entries: v.into_iter().map(Int::from).collect(),
                })
            })
        }

        proptest! {
            #[test]
            fn hnf_is_idempotent_and_canonical(a in small_matrix()) {
                let (h, _) = a.hnf();
                let (h2, _) = h.hnf();
                prop_assert_eq!(h.clone(), h2);
                // row lattice unchanged: mutual membership
                let hz = h.drop_zero_rows();
                for r in 0..a.rows() {
                    prop_assert!(hz.rows() == 0 && a.row(r).iter().all(|e| e.is_zero())
                        || hz.transpose().preimage(a.row(r)).is_some());
                }
            }
        }
    }
}
