//! Arbitrary-precision integer matrices with Hermite and Smith normal
//! forms, integer kernels, and exact linear solving.
//!
//! Lattices are column lattices throughout: a matrix stands for the set
//! of integer combinations of its columns. The column-style Hermite form
//! is the canonical basis of that lattice, so two matrices span the same
//! lattice exactly when their Hermite forms agree (after discarding zero
//! columns). The Smith form U M V = diag(d_1, ..., d_r) with d_1 | d_2 |
//! ... delivers the invariant factors of finite quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = IntMat::zero(n, n);
        for i in 0..n {
            out[(i, i)] = BigInt::one();
        }
        out
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut out = IntMat::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                out[(i, j)] = v.clone();
            }
        }
        out
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut out = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                out[(i, j)] = BigInt::from(*v);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero_col(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self[(i, j)].is_zero())
    }

    /// Concatenate columns of `other` to the right.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other[(k, j)].is_zero() {
                        let add = &self[(i, k)] * &other[(k, j)];
                        out[(i, j)] += add;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// col_dst += q * col_src
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// row_dst += q * row_src
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    /// Column-style Hermite normal form: the canonical basis matrix of
    /// the column lattice. Pivot rows strictly increase across nonzero
    /// columns, pivots are positive, entries to the left of a pivot in
    /// its row are reduced to [0, pivot), and zero columns sit at the
    /// right.
    pub fn hnf(&self) -> IntMat {
        self.hnf_with_transform().0
    }

    /// Hermite form together with a unimodular V such that self * V = H.
    pub fn hnf_with_transform(&self) -> (IntMat, IntMat) {
        let mut h = self.clone();
        let mut v = IntMat::identity(self.cols);
        let mut next_col = 0usize;
        for r in 0..self.rows {
            if next_col == self.cols {
                break;
            }
            // Gcd-eliminate row r across columns next_col..; keep the
            // survivor in next_col.
            loop {
                let mut best: Option<usize> = None;
                for j in next_col..self.cols {
                    if h[(r, j)].is_zero() {
                        continue;
                    }
                    best = match best {
                        None => Some(j),
                        Some(b) => {
                            if h[(r, j)].magnitude() < h[(r, b)].magnitude() {
                                Some(j)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
                let Some(b) = best else {
                    break;
                };
                h.swap_cols(b, next_col);
                v.swap_cols(b, next_col);
                let mut done = true;
                let pivot = h[(r, next_col)].clone();
                for j in next_col + 1..self.cols {
                    if h[(r, j)].is_zero() {
                        continue;
                    }
                    let q = -(&h[(r, j)] / &pivot);
                    h.add_col_multiple(j, next_col, &q);
                    v.add_col_multiple(j, next_col, &q);
                    if !h[(r, j)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[(r, next_col)].is_zero() {
                continue;
            }
            if h[(r, next_col)].is_negative() {
                h.negate_col(next_col);
                v.negate_col(next_col);
            }
            // Reduce the entries left of the pivot into [0, pivot).
            let pivot = h[(r, next_col)].clone();
            for j in 0..next_col {
                let q = -h[(r, j)].div_floor(&pivot);
                h.add_col_multiple(j, next_col, &q);
                v.add_col_multiple(j, next_col, &q);
            }
            next_col += 1;
        }
        (h, v)
    }

    /// Hermite form with zero columns removed: a basis of the column
    /// lattice.
    pub fn lattice_basis(&self) -> IntMat {
        let h = self.hnf();
        let keep: Vec<usize> = (0..h.cols).filter(|&j| !h.is_zero_col(j)).collect();
        let mut out = IntMat::zero(h.rows, keep.len());
        for (jj, &j) in keep.iter().enumerate() {
            for i in 0..h.rows {
                out[(i, jj)] = h[(i, j)].clone();
            }
        }
        out
    }

    /// Basis of the integer kernel {x : self * x = 0}, as columns.
    pub fn kernel(&self) -> IntMat {
        let (h, v) = self.hnf_with_transform();
        let keep: Vec<usize> = (0..self.cols).filter(|&j| h.is_zero_col(j)).collect();
        let mut out = IntMat::zero(self.cols, keep.len());
        for (jj, &j) in keep.iter().enumerate() {
            for i in 0..self.cols {
                out[(i, jj)] = v[(i, j)].clone();
            }
        }
        out
    }

    /// Solve self * x = b over the integers.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let (h, v) = self.hnf_with_transform();
        // Columns of H have strictly increasing pivot rows and zeros
        // above their pivots, so each pivot row forces the coefficient
        // of its column.
        let mut y = vec![BigInt::zero(); self.cols];
        let mut rem = b.to_vec();
        for j in 0..h.cols {
            if h.is_zero_col(j) {
                break;
            }
            let r = (0..h.rows)
                .find(|&i| !h[(i, j)].is_zero())
                .expect("nonzero column");
            let (q, rest) = rem[r].div_rem(&h[(r, j)]);
            if !rest.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in 0..h.rows {
                    let sub = &h[(i, j)] * &q;
                    rem[i] -= sub;
                }
                y[j] = q;
            }
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(v.mul_vec(&y))
    }

    /// True when b lies in the column lattice.
    pub fn contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }

    /// Smith normal form: (diagonal, U, V) with U * self * V diagonal,
    /// U and V unimodular, diagonal entries nonnegative with each
    /// dividing the next.
    pub fn snf(&self) -> (Vec<BigInt>, IntMat, IntMat) {
        let mut m = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut v = IntMat::identity(self.cols);
        let n = self.rows.min(self.cols);

        for t in 0..n {
            // Find a nonzero pivot in the trailing block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if m[(i, j)].is_zero() {
                        continue;
                    }
                    pivot = match pivot {
                        None => Some((i, j)),
                        Some((pi, pj)) => {
                            if m[(i, j)].magnitude() < m[(pi, pj)].magnitude() {
                                Some((i, j))
                            } else {
                                Some((pi, pj))
                            }
                        }
                    };
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            m.swap_rows(t, pi);
            u.swap_rows(t, pi);
            m.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // Clear row and column t alternately.
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if m[(i, t)].is_zero() {
                        continue;
                    }
                    let q = -m[(i, t)].div_floor(&m[(t, t)]);
                    m.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    if !m[(i, t)].is_zero() {
                        // Remainder is smaller than the pivot; swap up.
                        m.swap_rows(t, i);
                        u.swap_rows(t, i);
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if m[(t, j)].is_zero() {
                        continue;
                    }
                    let q = -m[(t, j)].div_floor(&m[(t, t)]);
                    m.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    if !m[(t, j)].is_zero() {
                        m.swap_cols(t, j);
                        v.swap_cols(t, j);
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if m[(t, t)].is_negative() {
                m.negate_row(t);
                u.negate_row(t);
            }
        }

        // Enforce the divisibility chain d_t | d_{t+1}.
        loop {
            let mut fixed = true;
            for t in 0..n.saturating_sub(1) {
                let a = m[(t, t)].clone();
                let b = m[(t + 1, t + 1)].clone();
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                if a.is_zero() && !b.is_zero() {
                    // Move the nonzero entry forward.
                    m.swap_rows(t, t + 1);
                    u.swap_rows(t, t + 1);
                    m.swap_cols(t, t + 1);
                    v.swap_cols(t, t + 1);
                    fixed = false;
                    continue;
                }
                if b.is_zero() || (&b % &a).is_zero() {
                    continue;
                }
                // Standard 2x2 repair: gcd goes to position t, lcm to t+1.
                m.add_col_multiple(t, t + 1, &BigInt::one());
                v.add_col_multiple(t, t + 1, &BigInt::one());
                // Clear the block again.
                loop {
                    let q = -m[(t + 1, t)].div_floor(&m[(t, t)]);
                    m.add_row_multiple(t + 1, t, &q);
                    u.add_row_multiple(t + 1, t, &q);
                    if m[(t + 1, t)].is_zero() {
                        break;
                    }
                    m.swap_rows(t, t + 1);
                    u.swap_rows(t, t + 1);
                }
                let q = -m[(t, t + 1)].div_floor(&m[(t, t)]);
                m.add_col_multiple(t + 1, t, &q);
                v.add_col_multiple(t + 1, t, &q);
                debug_assert!(m[(t, t + 1)].is_zero());
                if m[(t, t)].is_negative() {
                    m.negate_row(t);
                    u.negate_row(t);
                }
                if m[(t + 1, t + 1)].is_negative() {
                    m.negate_row(t + 1);
                    u.negate_row(t + 1);
                }
                fixed = false;
            }
            if fixed {
                break;
            }
        }

        let diag = (0..n).map(|t| m[(t, t)].clone()).collect();
        (diag, u, v)
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Display for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Solution lattice of a system of congruences and equations
/// `rows[i] . x = 0 (mod moduli[i])`, a modulus of zero meaning an exact
/// equation. Returns a basis (columns) of the full-rank solution lattice
/// in Z^cols.
pub fn congruence_kernel(rows: &[(Vec<BigInt>, BigInt)], cols: usize) -> IntMat {
    let k = rows.len();
    let modular: Vec<usize> = (0..k).filter(|&i| !rows[i].1.is_zero()).collect();
    // Stack [A | -D] where D carries the moduli on the modular rows, and
    // project its kernel onto the x block.
    let mut m = IntMat::zero(k, cols + modular.len());
    for (i, (row, _)) in rows.iter().enumerate() {
        assert_eq!(row.len(), cols);
        for (j, value) in row.iter().enumerate() {
            m[(i, j)] = value.clone();
        }
    }
    for (jj, &i) in modular.iter().enumerate() {
        m[(i, cols + jj)] = -rows[i].1.clone();
    }
    let kernel = m.kernel();
    let mut proj = IntMat::zero(cols, kernel.cols());
    for j in 0..kernel.cols() {
        for i in 0..cols {
            proj[(i, j)] = kernel[(i, j)].clone();
        }
    }
    proj.lattice_basis()
}

/// Preimage lattice {x : t x lies in the column lattice of b}, projected
/// basis as columns.
pub fn lattice_preimage(t: &IntMat, b: &IntMat) -> IntMat {
    assert_eq!(t.rows(), b.rows());
    let stacked = t.hstack(&{
        let mut neg = b.clone();
        for i in 0..neg.rows {
            for j in 0..neg.cols {
                let v = -std::mem::take(&mut neg[(i, j)]);
                neg[(i, j)] = v;
            }
        }
        neg
    });
    let kernel = stacked.kernel();
    let mut proj = IntMat::zero(t.cols(), kernel.cols());
    for j in 0..kernel.cols() {
        for i in 0..t.cols() {
            proj[(i, j)] = kernel[(i, j)].clone();
        }
    }
    proj.lattice_basis()
}

/// Whether two matrices span the same column lattice.
pub fn same_lattice(a: &IntMat, b: &IntMat) -> bool {
    a.lattice_basis() == b.lattice_basis()
}
