//! Exact linear algebra over `ℚ` and `ℤ` on dense row-major matrices.

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &[Vec<BigRational>]) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<BigRational>], cols: usize) -> Matrix {
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in a.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, brow)| x * &brow[j])
                        .fold(BigRational::zero(), |s, t| s + t)
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(x, y)| x * y)
                .fold(BigRational::zero(), |s, t| s + t)
        })
        .collect()
}

pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let d = &f * &a[c][j];
                a[i][j] -= d;
            }
        }
    }
    det
}

/// The unique solution of `m x = b` for square invertible `m`.
pub fn solve(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, x)| row.iter().cloned().chain(std::iter::once(x.clone())).collect())
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(r.iter().map(|row| row[n].clone()).collect())
}

/// Whether the row spaces of `a` and `b` coincide.
pub fn same_row_space(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == rb && rank(&both) == ra
}

/// Scales a rational row to a primitive integer row with the same span.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// A basis of the lattice `{x ∈ ℤ^cols : m x = 0}` for an integer matrix `m`.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    // column operations on m, recorded in u, bring m to column echelon form
    let rows = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let col_op = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, j: usize, k: usize, f: &BigInt| {
        // column j -= f * column k
        for row in a.iter_mut() {
            let d = f * &row[k];
            row[j] -= d;
        }
        for row in u.iter_mut() {
            let d = f * &row[k];
            row[j] -= d;
        }
    };
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, j: usize, k: usize| {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
        for row in u.iter_mut() {
            row.swap(j, k);
        }
    };
    let mut piv = 0;
    for i in 0..rows {
        if piv == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (piv..cols).filter(|&j| !a[i][j].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let &k = nz.iter().min_by_key(|&&j| a[i][j].abs()).unwrap();
            swap_cols(&mut a, &mut u, piv, k);
            let mut done = true;
            for j in piv + 1..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let f = a[i][j].div_floor(&a[i][piv]);
                col_op(&mut a, &mut u, j, piv, &f);
                if !a[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                piv += 1;
                break;
            }
        }
    }
    (piv..cols).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Row-style Hermite reduction; returns the non-zero rows in echelon form.
pub fn integer_echelon(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = gens.to_vec();
    let mut r = 0;
    for c in 0..dim {
        loop {
            let nz: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let &k = nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, k);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].div_floor(&a[r][c]);
                for j in c..dim {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    a
}

/// Index of the lattice spanned by `gens` in `ℤ^dim`, or `None` if it has lower rank.
pub fn lattice_index(gens: &[Vec<BigInt>], dim: usize) -> Option<BigInt> {
    let e = integer_echelon(gens, dim);
    if e.len() < dim {
        return None;
    }
    for (i, row) in e.iter().enumerate() {
        if row[i].is_zero() {
            return None;
        }
    }
    Some(e.iter().enumerate().fold(BigInt::one(), |acc, (i, row)| acc * row[i].abs()))
}
