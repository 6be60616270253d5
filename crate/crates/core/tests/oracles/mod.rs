//! Independent oracles for the test suites. Nothing here calls into the
//! elimination, projection or Čech code it is used to check.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use unicent::exactla::{smith_diagonal, snf, IntMatrix};

/// Determinant by cofactor expansion.
pub fn laplace_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * laplace_det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

/// Invariant factors (those >= 2) and rank of an integer matrix from its
/// determinantal divisors `d_k = gcd of k x k minors`, with `f_k = d_k / d_{k-1}`.
pub fn minors_invariants(m: &[Vec<i64>]) -> (Vec<i64>, usize) {
    let r = m.len();
    let c = m.first().map_or(0, |row| row.len());
    let mut prev = 1i64;
    let mut factors = Vec::new();
    let mut rank = 0;
    for k in 1..=r.min(c) {
        let mut g = 0i64;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                    .collect();
                g = g.gcd(&laplace_det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        rank = k;
        if g / prev > 1 {
            factors.push(g / prev);
        }
        prev = g;
    }
    (factors, rank)
}

/// For a nonsingular square integer matrix `m` (rows generating `L`), counts
/// `#{x ∈ Z^n / L : k x = 0}` for each `k` by enumerating the box
/// `[0, D)^n`, `D = |det m|`, which covers every coset `D^n / D` times.
pub fn coset_kernel_counts(m: &[Vec<i64>], ks: &[i64]) -> Vec<u64> {
    let n = m.len();
    let det = laplace_det(m).abs();
    assert!(det > 0);
    // x ∈ L iff x · adj(m) ≡ 0 mod det, since m^{-1} = adj(m) / det(m)
    let adj: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                        .collect();
                    let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                    s * laplace_det(&minor)
                })
                .collect()
        })
        .collect();
    let in_lattice =
        |x: &[i64]| (0..n).all(|j| (0..n).map(|i| x[i] * adj[i][j]).sum::<i64>() % det == 0);
    let total = (det as u64).pow(n as u32);
    let mut counts = vec![0u64; ks.len()];
    let mut x = vec![0i64; n];
    for idx in 0..total {
        let mut t = idx;
        for xi in x.iter_mut() {
            *xi = (t % det as u64) as i64;
            t /= det as u64;
        }
        for (c, &k) in counts.iter_mut().zip(ks) {
            let kx: Vec<i64> = x.iter().map(|v| v * k).collect();
            if in_lattice(&kx) {
                *c += 1;
            }
        }
    }
    // each coset is hit D^n / D times
    let fiber = total / det as u64;
    counts.into_iter().map(|c| c / fiber).collect()
}

/// `#{x : k x = 0}` in `⊕ Z/f_i`, which is `Π gcd(k, f_i)`.
pub fn kernel_count_from_factors(factors: &[BigInt], k: i64) -> u64 {
    factors
        .iter()
        .map(|f| f.gcd(&BigInt::from(k)).try_into().unwrap_or(0u64))
        .product()
}

fn mat_i64(rows: usize, cols: usize, data: &[i64]) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|i| data[i * cols..(i + 1) * cols].to_vec())
        .collect()
}

/// Minor of a row-major matrix with `cols` columns on the given index sets
/// (at most 3 each), by explicit expansion.
fn small_minor(data: &[i64], cols: usize, rs: &[usize], cs: &[usize]) -> i64 {
    let a = |i: usize, j: usize| data[rs[i] * cols + cs[j]];
    match rs.len() {
        1 => a(0, 0),
        2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
        3 => {
            a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
        }
        _ => unreachable!("at most 3x3"),
    }
}

/// As [`minors_invariants`] for matrices of at most 3 rows and columns,
/// without allocating per minor.
fn small_minors_invariants(
    data: &[i64],
    cols: usize,
    row_sets: &[Vec<Vec<usize>>],
    col_sets: &[Vec<Vec<usize>>],
    factors: &mut Vec<i64>,
) -> usize {
    factors.clear();
    let mut prev = 1i64;
    let mut rank = 0;
    for k in 1..row_sets.len().min(col_sets.len()) {
        let mut g = 0i64;
        for rs in &row_sets[k] {
            for cs in &col_sets[k] {
                g = g.gcd(&small_minor(data, cols, rs, cs));
            }
        }
        if g == 0 {
            break;
        }
        rank = k;
        if g / prev > 1 {
            factors.push(g / prev);
        }
        prev = g;
    }
    rank
}

/// Checks the SNF engine against determinantal divisors on every
/// `rows x cols` matrix (both at most 3) with entries in `-bound..=bound`.
/// Shapes with at most `bigint_cells` entries go through the public [`snf`]
/// on big integers; the rest through the same elimination instantiated at
/// `i64`. Also checks the kernel basis: it annihilates the matrix, and in the
/// `i64` path the full column transform is unimodular.
///
/// Returns the number of matrices checked, or a description of the first failure.
pub fn sweep_snf(rows: usize, cols: usize, bound: i64, bigint_cells: usize) -> Result<u64, String> {
    assert!(rows <= 3 && cols <= 3);
    let cells = rows * cols;
    let base = (2 * bound + 1) as u64;
    let total = base.pow(cells as u32);
    let row_sets: Vec<Vec<Vec<usize>>> = (0..=rows).map(|k| subsets(rows, k)).collect();
    let col_sets: Vec<Vec<Vec<usize>>> = (0..=cols).map(|k| subsets(cols, k)).collect();
    let all_cols: Vec<usize> = (0..cols).collect();
    let mut data = vec![0i64; cells];
    let mut expected = Vec::with_capacity(3);
    for idx in 0..total {
        let mut t = idx;
        for x in data.iter_mut() {
            *x = (t % base) as i64 - bound;
            t /= base;
        }
        let expected_rank =
            small_minors_invariants(&data, cols, &row_sets, &col_sets, &mut expected);
        if cells <= bigint_cells {
            let m = mat_i64(rows, cols, &data);
            let im = IntMatrix::from_rows(&m).unwrap();
            let s = snf(&im);
            let got: Vec<i64> = s
                .factors
                .factors()
                .iter()
                .map(|f| f.try_into().unwrap())
                .collect();
            if got != expected || s.rank != expected_rank {
                return Err(format!(
                    "{m:?}: snf {got:?} rank {}, minors {expected:?} rank {expected_rank}",
                    s.rank
                ));
            }
            if !im.mul(&s.kernel).is_zero() || s.kernel.cols() != cols - s.rank {
                return Err(format!("{m:?}: kernel basis {:?} is wrong", s.kernel));
            }
        } else {
            let (diag, v) = smith_diagonal::<i64>(rows, cols, data.clone());
            let nontrivial = diag.iter().filter(|&&f| f > 1);
            if !nontrivial.copied().eq(expected.iter().copied()) || diag.len() != expected_rank {
                return Err(format!(
                    "{:?}: snf {diag:?}, minors {expected:?} rank {expected_rank}",
                    mat_i64(rows, cols, &data)
                ));
            }
            if small_minor(&v, cols, &all_cols, &all_cols).abs() != 1 {
                return Err(format!(
                    "{:?}: column transform not unimodular",
                    mat_i64(rows, cols, &data)
                ));
            }
            for j in diag.len()..cols {
                for i in 0..rows {
                    if (0..cols)
                        .map(|k| data[i * cols + k] * v[k * cols + j])
                        .sum::<i64>()
                        != 0
                    {
                        return Err(format!(
                            "{:?}: kernel column {j} does not annihilate",
                            mat_i64(rows, cols, &data)
                        ));
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Size of the Weyl group as the orbit of the regular weight `ρ` under simple
/// reflections `s_i(λ) = λ - λ_i α_i`, in fundamental-weight coordinates.
pub fn weyl_orbit_size(cartan: &IntMatrix) -> usize {
    let n = cartan.rows();
    let start: Vec<BigInt> = vec![BigInt::one(); n];
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let w: Vec<BigInt> = (0..n).map(|j| &v[j] - &v[i] * &cartan[(i, j)]).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.len()
}

/// Rank by textbook Gaussian elimination on rationals.
pub fn naive_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn rat(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

pub fn is_nonneg(x: &BigInt) -> bool {
    !x.is_negative()
}

/// Every simple type of rank at most `max_rank`, as strings like `"B3"`.
pub fn simple_types(max_rank: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push(format!("A{n}"));
        if n >= 2 {
            out.push(format!("B{n}"));
        }
        if n >= 3 {
            out.push(format!("C{n}"));
        }
        if n >= 4 {
            out.push(format!("D{n}"));
        }
        if (6..=8).contains(&n) {
            out.push(format!("E{n}"));
        }
        if n == 4 {
            out.push("F4".into());
        }
        if n == 2 {
            out.push("G2".into());
        }
    }
    out
}

/// Whether every row of `roots` lies in the row lattice of the nonsingular
/// `lattice`: `r = y L` with `y = r adj(L) / det(L)` integral.
pub fn rows_in_lattice(roots: &[Vec<i64>], lattice: &[Vec<i64>]) -> bool {
    let n = lattice.len();
    let det = laplace_det(lattice);
    assert!(det != 0);
    let adj = |i: usize, j: usize| {
        let minor: Vec<Vec<i64>> = (0..n)
            .filter(|&r| r != j)
            .map(|r| (0..n).filter(|&c| c != i).map(|c| lattice[r][c]).collect())
            .collect();
        let s = if (i + j).is_multiple_of(2) { 1 } else { -1 };
        s * laplace_det(&minor)
    };
    roots
        .iter()
        .all(|r| (0..n).all(|j| (0..n).map(|i| r[i] * adj(i, j)).sum::<i64>() % det == 0))
}
