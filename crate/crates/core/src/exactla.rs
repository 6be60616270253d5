//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`BigInt`]) or
//! rationals ([`BigRational`]). Rank is computed by fraction-free (Bareiss)
//! elimination after clearing denominators row by row, and the Smith normal
//! form tracks column operations so that it also yields an integer kernel
//! basis.

use std::fmt;
use std::ops::{Index, IndexMut};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Dense rational matrix, row-major. Entries are always in lowest terms with
/// positive denominators (guaranteed by [`BigRational`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

macro_rules! matrix_common {
    ($ty:ident, $elem:ty) => {
        impl $ty {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                $ty {
                    rows,
                    cols,
                    data: vec![<$elem>::zero(); rows * cols],
                }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m[(i, i)] = <$elem>::one();
                }
                m
            }

            /// Builds a matrix from row-major data.
            ///
            /// Panics if `data.len() != rows * cols`.
            pub fn from_vec(rows: usize, cols: usize, data: Vec<$elem>) -> Self {
                assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
                $ty { rows, cols, data }
            }

            pub fn rows(&self) -> usize {
                self.rows
            }

            pub fn cols(&self) -> usize {
                self.cols
            }

            pub fn is_empty(&self) -> bool {
                self.data.is_empty()
            }

            pub fn row(&self, i: usize) -> &[$elem] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            pub fn column(&self, j: usize) -> Vec<$elem> {
                (0..self.rows).map(|i| self[(i, j)].clone()).collect()
            }

            pub fn entries(&self) -> &[$elem] {
                &self.data
            }

            pub fn to_rows(&self) -> Vec<Vec<$elem>> {
                (0..self.rows).map(|i| self.row(i).to_vec()).collect()
            }

            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t[(j, i)] = self[(i, j)].clone();
                    }
                }
                t
            }

            /// Matrix product `self * rhs`.
            ///
            /// Panics on a dimension mismatch.
            pub fn mul(&self, rhs: &Self) -> Self {
                assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
                let mut out = Self::zeros(self.rows, rhs.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = &self[(i, k)];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..rhs.cols {
                            let b = &rhs[(k, j)];
                            if !b.is_zero() {
                                out.data[i * rhs.cols + j] += a * b;
                            }
                        }
                    }
                }
                out
            }

            pub fn is_zero(&self) -> bool {
                self.data.iter().all(|x| x.is_zero())
            }

            pub fn select_rows(&self, idx: &[usize]) -> Self {
                let mut data = Vec::with_capacity(idx.len() * self.cols);
                for &i in idx {
                    data.extend_from_slice(self.row(i));
                }
                $ty {
                    rows: idx.len(),
                    cols: self.cols,
                    data,
                }
            }

            pub fn select_columns(&self, idx: &[usize]) -> Self {
                let mut out = Self::zeros(self.rows, idx.len());
                for i in 0..self.rows {
                    for (jj, &j) in idx.iter().enumerate() {
                        out[(i, jj)] = self[(i, j)].clone();
                    }
                }
                out
            }

            pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
                let mut out = Self::zeros(rows.len(), cols.len());
                for (ii, &i) in rows.iter().enumerate() {
                    for (jj, &j) in cols.iter().enumerate() {
                        out[(ii, jj)] = self[(i, j)].clone();
                    }
                }
                out
            }

            pub fn is_symmetric(&self) -> bool {
                self.rows == self.cols
                    && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
            }
        }

        impl Index<(usize, usize)> for $ty {
            type Output = $elem;

            fn index(&self, (i, j): (usize, usize)) -> &$elem {
                debug_assert!(i < self.rows && j < self.cols);
                &self.data[i * self.cols + j]
            }
        }

        impl IndexMut<(usize, usize)> for $ty {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut $elem {
                debug_assert!(i < self.rows && j < self.cols);
                &mut self.data[i * self.cols + j]
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for i in 0..self.rows {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[{}]", self.row(i).iter().join(", "))?;
                }
                write!(f, "]")
            }
        }
    };
}

matrix_common!(IntMatrix, BigInt);
matrix_common!(RatMatrix, BigRational);

impl IntMatrix {
    /// Builds a matrix from rows of anything convertible to [`BigInt`].
    ///
    /// Returns `None` when the rows are ragged. An empty slice gives a 0x0 matrix.
    pub fn from_rows<T, R>(rows: &[R]) -> Option<Self>
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return None;
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Some(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        }
    }

    /// Determinant by Bareiss elimination. Panics if the matrix is not square.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }
}

impl RatMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        m.to_rat()
    }

    /// Inverse by Gauss-Jordan elimination, or `None` when singular or non-square.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            let pivot = a[(col, col)].recip();
            a.scale_row(col, &pivot);
            inv.scale_row(col, &pivot);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, col, &(-&f));
                    inv.add_row_multiple(r, col, &(-&f));
                }
            }
        }
        Some(inv)
    }

    /// Determinant by rational Gaussian elimination. Panics if not square.
    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if !a[(r, col)].is_zero() {
                    let f = &a[(r, col)] / &pivot;
                    a.add_row_multiple(r, col, &(-f));
                }
            }
        }
        det
    }

    /// Scales every row by the lcm of its denominators, giving an integer
    /// matrix with the same row space.
    pub fn clear_denominators(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            data.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
        }
        IntMatrix::from_vec(self.rows, self.cols, data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: &BigRational) {
        for j in 0..self.cols {
            self.data[r * self.cols + j] *= f;
        }
    }

    // row[dst] += f * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &BigRational) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * f;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }
}

/// Nontrivial invariant factors of an integer matrix, each at least 2, each
/// dividing the next.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InvariantFactors(Vec<BigInt>);

impl InvariantFactors {
    /// Drops units and checks the divisibility chain. Returns `None` if the
    /// remaining factors (taken in absolute value) do not form a chain.
    pub fn new(factors: Vec<BigInt>) -> Option<Self> {
        let fs: Vec<BigInt> = factors
            .into_iter()
            .map(|f| f.abs())
            .filter(|f| !f.is_one())
            .collect();
        if fs.iter().any(|f| f.is_zero()) {
            return None;
        }
        if fs.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return None;
        }
        Some(InvariantFactors(fs))
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Order of the finite group `⊕ Z/f`.
    pub fn order(&self) -> BigInt {
        self.0.iter().product()
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.0.iter().all(|f| f > &BigInt::one())
            && self.0.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

/// Result of [`snf`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: InvariantFactors,
    /// Columns form a basis of `{x ∈ Z^cols : m x = 0}`.
    pub kernel: IntMatrix,
    pub rank: usize,
}

/// Diagonal of the Smith normal form of a `rows x cols` matrix over any
/// Euclidean integer type, together with the unimodular column transform
/// `V` (row-major, `cols x cols`) satisfying `U m V = D` for some unimodular `U`.
///
/// The returned diagonal has `rank` nonzero entries, all positive, each
/// dividing the next. This is the engine behind [`snf`]; it is generic so it
/// can be run on machine integers when sweeping many small matrices.
pub fn smith_diagonal<T>(rows: usize, cols: usize, mut a: Vec<T>) -> (Vec<T>, Vec<T>)
where
    T: Integer + Signed + Clone,
{
    assert_eq!(a.len(), rows * cols);
    let mut v: Vec<T> = (0..cols * cols)
        .map(|k| {
            if k / cols == k % cols {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect();
    let at = |i: usize, j: usize| i * cols + j;

    let swap_rows = |a: &mut Vec<T>, r1: usize, r2: usize| {
        if r1 != r2 {
            for j in 0..cols {
                a.swap(r1 * cols + j, r2 * cols + j);
            }
        }
    };
    let swap_cols = |a: &mut Vec<T>, v: &mut Vec<T>, c1: usize, c2: usize| {
        if c1 != c2 {
            for i in 0..rows {
                a.swap(i * cols + c1, i * cols + c2);
            }
            for i in 0..cols {
                v.swap(i * cols + c1, i * cols + c2);
            }
        }
    };

    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &a[at(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[at(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, &mut v, t, pj);

        loop {
            let p = a[at(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[at(i, t)].is_zero() {
                    continue;
                }
                let q = a[at(i, t)].div_floor(&p);
                for j in t..cols {
                    let d = q.clone() * a[at(t, j)].clone();
                    a[at(i, j)] = a[at(i, j)].clone() - d;
                }
                clean &= a[at(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[at(t, j)].is_zero() {
                    continue;
                }
                let q = a[at(t, j)].div_floor(&p);
                for i in t..rows {
                    let d = q.clone() * a[at(i, t)].clone();
                    a[at(i, j)] = a[at(i, j)].clone() - d;
                }
                for i in 0..cols {
                    let d = q.clone() * v[i * cols + t].clone();
                    v[i * cols + j] = v[i * cols + j].clone() - d;
                }
                clean &= a[at(t, j)].is_zero();
            }
            if !clean {
                // A nonzero remainder is smaller than the pivot; move it in.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[at(i, t)].is_zero() && a[at(i, t)].abs() < a[at(best.0, best.1)].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[at(t, j)].is_zero() && a[at(t, j)].abs() < a[at(best.0, best.1)].abs() {
                        best = (t, j);
                    }
                }
                swap_rows(&mut a, t, best.0);
                swap_cols(&mut a, &mut v, t, best.1);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[at(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[at(t, j)] = a[at(t, j)].clone() + a[at(i, j)].clone();
                    }
                }
                None => break,
            }
        }
        diag.push(a[at(t, t)].abs());
        t += 1;
    }
    (diag, v)
}

/// Smith normal form of an integer matrix: nontrivial invariant factors,
/// an integer kernel basis and the rank.
pub fn snf(m: &IntMatrix) -> SmithForm {
    let (diag, v) = smith_diagonal(m.rows, m.cols, m.data.clone());
    let rank = diag.len();
    let v = IntMatrix::from_vec(m.cols, m.cols, v);
    let kernel = v.select_columns(&(rank..m.cols).collect::<Vec<_>>());
    let factors = InvariantFactors::new(diag).expect("smith diagonal is a divisibility chain");
    SmithForm {
        factors,
        kernel,
        rank,
    }
}

/// Rank of an integer matrix by Bareiss elimination.
pub fn int_rank(m: &IntMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank over the rationals, via fraction-free elimination on the
/// denominator-cleared matrix.
pub fn rank(m: &RatMatrix) -> usize {
    int_rank(&m.clear_denominators())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `k`-th compound matrix: the matrix of `Λ^k m` in the lexicographically
/// ordered bases of `k`-subsets. Entry `(I, J)` is the minor `det m[I, J]`.
pub fn compound(m: &RatMatrix, k: usize) -> RatMatrix {
    let row_sets = k_subsets(m.rows, k);
    let col_sets = k_subsets(m.cols, k);
    let mut out = RatMatrix::zeros(row_sets.len(), col_sets.len());
    if k == 0 {
        return RatMatrix::identity(1);
    }
    for (a, rs) in row_sets.iter().enumerate() {
        for (b, cs) in col_sets.iter().enumerate() {
            out[(a, b)] = if k == 1 {
                m[(rs[0], cs[0])].clone()
            } else {
                m.submatrix(rs, cs).det()
            };
        }
    }
    out
}
