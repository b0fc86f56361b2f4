//! Exact integer and rational linear algebra used throughout the crate.
//!
//! Matrices are plain row-major `Vec<Vec<_>>`. Nothing here is tuned for
//! large dimensions; the lattices handled by the crate have rank at most a
//! few dozen.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Representative of `r` modulo 1 in `[0, 1)`.
pub fn frac_part(r: &Rational) -> Rational {
    r - Rational::from_integer(r.floor().to_integer())
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn rat_to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn identity_int(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_rat_matrix(m: &IntMatrix) -> RatMatrix {
    m.iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|r| r.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &r[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Least common multiple of the denominators of `v`.
pub fn common_denominator(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Determinant by Gaussian elimination over Q.
pub fn determinant(m: &RatMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..2 * n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `m · x = b` for some `x` (any solution), `None` if inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: RatMatrix = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        let Some(p) = (pr..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, pr);
        let pivot = a[pr][c].clone();
        for x in a[pr].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..rows {
            if r == pr || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..=cols {
                let t = &f * &a[pr][k];
                a[r][k] -= t;
            }
        }
        pivots.push(c);
        pr += 1;
    }
    if a[pr..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Some(x)
}

/// Smith normal form `p · m · q = diag` with `p`, `q` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub p: IntMatrix,
    pub diag: Vec<BigInt>,
    pub q: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut p = identity_int(rows);
    let mut q = identity_int(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else { break };
        a.swap(t, i);
        p.swap(t, i);
        for r in a.iter_mut() {
            r.swap(t, j);
        }
        for r in q.iter_mut() {
            r.swap(t, j);
        }

        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let f = a[i][t].div_floor(&a[t][t]);
            for k in 0..cols {
                let s = &f * &a[t][k];
                a[i][k] -= s;
            }
            for k in 0..rows {
                let s = &f * &p[t][k];
                p[i][k] -= s;
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let f = a[t][j].div_floor(&a[t][t]);
            for k in 0..rows {
                let s = &f * &a[k][t];
                a[k][j] -= s;
            }
            for k in 0..cols {
                let s = &f * &q[k][t];
                q[k][j] -= s;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the rest of the block by the pivot
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
        if let Some((i, _)) = bad {
            for k in 0..cols {
                let s = a[i][k].clone();
                a[t][k] += s;
            }
            for k in 0..rows {
                let s = p[i][k].clone();
                p[t][k] += s;
            }
            continue;
        }
        if a[t][t].is_negative() {
            for k in 0..cols {
                a[t][k] = -a[t][k].clone();
            }
            for k in 0..rows {
                p[t][k] = -p[t][k].clone();
            }
        }
        t += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    SmithForm { p, diag, q }
}

/// Row-style Hermite normal form: an echelon basis of the Z-span of `rows`.
pub fn hermite_rows(rows: &IntMatrix) -> IntMatrix {
    let mut a: IntMatrix = rows.clone();
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut pr = 0;
    for c in 0..cols {
        loop {
            let nonzero: Vec<usize> = (pr..a.len()).filter(|&r| !a[r][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let min = *nonzero.iter().min_by_key(|&&r| a[r][c].abs()).unwrap();
            a.swap(pr, min);
            if nonzero.len() == 1 {
                break;
            }
            for r in pr + 1..a.len() {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].div_floor(&a[pr][c]);
                for k in c..cols {
                    let s = &f * &a[pr][k];
                    a[r][k] -= s;
                }
            }
        }
        if pr < a.len() && !a[pr][c].is_zero() {
            if a[pr][c].is_negative() {
                for k in c..cols {
                    a[pr][k] = -a[pr][k].clone();
                }
            }
            for r in 0..pr {
                let f = a[r][c].div_floor(&a[pr][c]);
                if f.is_zero() {
                    continue;
                }
                for k in c..cols {
                    let s = &f * &a[pr][k];
                    a[r][k] -= s;
                }
            }
            pr += 1;
        }
    }
    a.truncate(pr);
    a
}

/// Unimodular `u` with `row · u = (g, 0, …, 0)`, `g = gcd(row) ≥ 0`.
fn column_reduce(row: &[BigInt]) -> (BigInt, IntMatrix) {
    let n = row.len();
    let mut a = row.to_vec();
    let mut u = identity_int(n);
    for j in 1..n {
        if a[j].is_zero() {
            continue;
        }
        if a[0].is_zero() {
            a.swap(0, j);
            for r in u.iter_mut() {
                r.swap(0, j);
            }
            continue;
        }
        let e = a[0].extended_gcd(&a[j]);
        let (x, y, g) = (e.x, e.y, e.gcd);
        let s = &a[0] / &g;
        let t = &a[j] / &g;
        // new col0 = x c0 + y cj, new colj = -t c0 + s cj
        for r in u.iter_mut() {
            let c0 = r[0].clone();
            let cj = r[j].clone();
            r[0] = &x * &c0 + &y * &cj;
            r[j] = -&t * &c0 + &s * &cj;
        }
        a[0] = g;
        a[j] = BigInt::zero();
    }
    if a.first().is_some_and(|g| g.is_negative()) {
        a[0] = -a[0].clone();
        for r in u.iter_mut() {
            r[0] = -r[0].clone();
        }
    }
    (a.first().cloned().unwrap_or_default(), u)
}

/// Z-basis of `{x ∈ Zⁿ : row · x = 0}`, standard basis vectors first where
/// possible, ordered by leading index.
pub fn integer_kernel(row: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = row.len();
    let nz: Vec<usize> = (0..n).filter(|&i| !row[i].is_zero()).collect();
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .filter(|&i| row[i].is_zero())
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            e
        })
        .collect();
    if nz.len() > 1 {
        let sub: Vec<BigInt> = nz.iter().map(|&i| row[i].clone()).collect();
        let (_, u) = column_reduce(&sub);
        for j in 1..nz.len() {
            let mut v = vec![BigInt::zero(); n];
            for (k, &i) in nz.iter().enumerate() {
                v[i] = u[k][j].clone();
            }
            basis.push(v);
        }
    }
    let lead = |v: &Vec<BigInt>| v.iter().position(|x| !x.is_zero()).unwrap_or(n);
    basis.sort_by_key(lead);
    basis
}

/// Unimodular matrix whose first column is the primitive vector `c`.
/// Returns `None` when `c` is not primitive.
pub fn complete_to_basis(c: &[BigInt]) -> Option<IntMatrix> {
    let n = c.len();
    let nonzero: Vec<usize> = (0..n).filter(|&i| !c[i].is_zero()).collect();
    if nonzero.len() == 1 && c[nonzero[0]].abs().is_one() {
        let i = nonzero[0];
        let mut cols = vec![c.to_vec()];
        for j in (0..n).filter(|&j| j != i) {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            cols.push(e);
        }
        return Some(transpose(&cols));
    }
    let (g, u) = column_reduce(c);
    if !g.is_one() {
        return None;
    }
    let inv = inverse(&to_rat_matrix(&u))?;
    Some(
        transpose(&inv)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
            .collect(),
    )
}

/// Integer vector `y` with `row · y = gcd(row)`.
pub fn bezout_vector(row: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let (g, u) = column_reduce(row);
    (g, u.iter().map(|r| r[0].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &[Vec<i64>]) {
        let a = int_matrix(m);
        let s = smith_normal_form(&a);
        let prod = mat_mul(&mat_mul(&to_rat_matrix(&s.p), &to_rat_matrix(&a)), &to_rat_matrix(&s.q));
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { Rational::from_integer(s.diag[i].clone()) } else { Rational::zero() };
                assert_eq!(*x, want);
            }
        }
        for w in s.diag.windows(2) {
            assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        assert!(determinant(&to_rat_matrix(&s.p)).abs().is_one());
        assert!(determinant(&to_rat_matrix(&s.q)).abs().is_one());
    }

    #[test]
    fn smith_small_cases() {
        check_smith(&[vec![2, -1], vec![-1, 2]]);
        check_smith(&[vec![8]]);
        check_smith(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check_smith(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&int_matrix(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diag, vec![big(1), big(6)]);
    }

    #[test]
    fn hermite_spans() {
        let h = hermite_rows(&int_matrix(&[vec![2, 0], vec![0, 2], vec![1, 1]]));
        assert_eq!(h, int_matrix(&[vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn kernel_and_completion() {
        let k = integer_kernel(&[big(0), big(1), big(0), big(0)]);
        assert_eq!(k, int_matrix(&[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]));
        let k = integer_kernel(&[big(2), big(3), big(0)]);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((big(2) * &v[0] + big(3) * &v[1]).is_zero());
        }
        let m = complete_to_basis(&[big(2), big(3)]).unwrap();
        assert_eq!((m[0][0].clone(), m[1][0].clone()), (big(2), big(3)));
        assert!(determinant(&to_rat_matrix(&m)).abs().is_one());
        assert!(complete_to_basis(&[big(2), big(4)]).is_none());
    }

    #[test]
    fn solve_and_inverse() {
        let m = to_rat_matrix(&int_matrix(&[vec![2, -1], vec![-1, 2]]));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], rat(2, 3));
        assert_eq!(determinant(&m), int(3));
        let x = solve(&m, &[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        assert!(solve(&vec![vec![int(1)], vec![int(1)]], &[int(1), int(2)]).is_none());
    }
}
