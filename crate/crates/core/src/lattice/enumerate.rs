//! Exact Fincke–Pohst enumeration of integer vectors of bounded norm.
//!
//! The form `q(y) = yᵀ A y` is decomposed as `Σ dᵢ (yᵢ + Σ_{j>i} uᵢⱼ yⱼ)²`
//! over Q, then every row is scaled to integers so the search runs on exact
//! integer arithmetic. When a priori bounds show all intermediate values fit,
//! the search runs on `i128`; otherwise on `BigInt`.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{inverse, Rational, RatMatrix};
use crate::error::{Error, Result};

/// Restricts enumeration to `y ≡ residues (mod modulus)` coordinatewise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub modulus: i64,
    pub residues: Vec<i64>,
}

trait SearchInt: Clone + Ord + Integer + Roots + From<i64> + Into<BigInt> + Add + Sub + Mul {
    fn from_big(x: &BigInt) -> Self;
}

impl SearchInt for i128 {
    fn from_big(x: &BigInt) -> Self {
        x.to_i128().expect("bound check guarantees i128 range")
    }
}

impl SearchInt for BigInt {
    fn from_big(x: &BigInt) -> Self {
        x.clone()
    }
}

struct ScaledForm {
    n: usize,
    /// Row `i` of the scaled unit upper triangular factor; `rows[i][i] = denᵢ`.
    rows: Vec<Vec<BigInt>>,
    /// Weight `kᵢ` so that `q(y)·scale = Σ kᵢ sᵢ²` with `sᵢ = Σ_{j≥i} rows[i][j] yⱼ`.
    weights: Vec<BigInt>,
    scale: BigInt,
}

fn decompose(a: &RatMatrix) -> Result<ScaledForm> {
    let n = a.len();
    let mut q = a.clone();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    let mut rows = Vec::with_capacity(n);
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let den = (i + 1..n).fold(BigInt::one(), |acc, j| acc.lcm(q[i][j].denom()));
        let mut row = vec![BigInt::zero(); n];
        row[i] = den.clone();
        for j in i + 1..n {
            row[j] = (&q[i][j] * Rational::from_integer(den.clone())).to_integer();
        }
        coeffs.push(&q[i][i] / Rational::from_integer(&den * &den));
        rows.push(row);
    }
    let scale = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let weights = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    Ok(ScaledForm { n, rows, weights, scale })
}

struct Search<'a, T, F> {
    rows: Vec<Vec<T>>,
    weights: Vec<T>,
    budget: T,
    congruence: Option<&'a Congruence>,
    y: Vec<i64>,
    visit: F,
}

impl<T: SearchInt, F: FnMut(&[i64], T)> Search<'_, T, F> {
    fn run(&mut self, level: usize, rem: T) {
        if level == 0 {
            let used = self.budget.clone() - rem;
            (self.visit)(&self.y, used);
            return;
        }
        let i = level - 1;
        let mut partial = T::from(0);
        for j in level..self.y.len() {
            partial = partial + self.rows[i][j].clone() * T::from(self.y[j]);
        }
        let den = self.rows[i][i].clone();
        let k = self.weights[i].clone();
        let t = rem.div_floor(&k).sqrt();
        let lo_num = T::from(0) - t.clone() - partial.clone();
        let lo = T::from(0) - (T::from(0) - lo_num).div_floor(&den);
        let hi = (t - partial.clone()).div_floor(&den);
        let (Some(mut lo), Some(hi)) = (into_i64(lo), into_i64(hi)) else {
            unreachable!("coordinate bounds exceed i64")
        };
        let step = match self.congruence {
            Some(c) => {
                lo += (c.residues[i] - lo).rem_euclid(c.modulus);
                c.modulus
            }
            None => 1,
        };
        let mut yi = lo;
        while yi <= hi {
            let s = den.clone() * T::from(yi) + partial.clone();
            let term = k.clone() * s.clone() * s;
            if term <= rem {
                self.y[i] = yi;
                self.run(i, rem.clone() - term);
            }
            yi += step;
        }
        self.y[i] = 0;
    }
}

fn into_i64<T: Into<BigInt>>(x: T) -> Option<i64> {
    x.into().to_i64()
}

/// Visits every `y ∈ Zⁿ` (optionally in a congruence class) with `yᵀ A y ≤ bound`.
/// The callback receives `y` and the exact value `yᵀ A y`.
pub fn for_each_short_vector(
    a: &RatMatrix,
    bound: &Rational,
    congruence: Option<&Congruence>,
    mut visit: impl FnMut(&[i64], &Rational),
) -> Result<()> {
    let n = a.len();
    if let Some(c) = congruence {
        if c.residues.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: c.residues.len() });
        }
        if c.modulus <= 0 {
            return Err(Error::InvalidGram("congruence modulus must be positive".into()));
        }
    }
    if bound.is_negative() {
        return Ok(());
    }
    if n == 0 {
        visit(&[], &Rational::zero());
        return Ok(());
    }
    let form = decompose(a)?;
    let budget = (bound * Rational::from_integer(form.scale.clone())).floor().to_integer();

    // a priori magnitude bounds decide between i128 and BigInt search
    let inv = inverse(a).ok_or(Error::SingularGram)?;
    let coord_bound: Vec<BigInt> = (0..n)
        .map(|j| (bound * &inv[j][j]).floor().to_integer().sqrt() + BigInt::one())
        .collect();
    let mut largest = budget.clone();
    for i in 0..form.n {
        let s: BigInt = (i..n).map(|j| form.rows[i][j].abs() * &coord_bound[j]).sum();
        largest = largest.max(&form.weights[i] * &s * &s).max(s);
    }
    let fits = largest.bits() < 120;

    let scale = Rational::from_integer(form.scale.clone());
    let mut emit = |y: &[i64], used: BigInt| visit(y, &(Rational::from_integer(used) / &scale));
    if fits {
        let mut search = Search::<i128, _> {
            rows: form.rows.iter().map(|r| r.iter().map(i128::from_big).collect()).collect(),
            weights: form.weights.iter().map(i128::from_big).collect(),
            budget: i128::from_big(&budget),
            congruence,
            y: vec![0; n],
            visit: |y: &[i64], used: i128| emit(y, BigInt::from(used)),
        };
        let b = search.budget;
        search.run(n, b);
    } else {
        let mut search = Search::<BigInt, _> {
            rows: form.rows.clone(),
            weights: form.weights.clone(),
            budget: budget.clone(),
            congruence,
            y: vec![0; n],
            visit: |y: &[i64], used: BigInt| emit(y, used),
        };
        search.run(n, budget);
    }
    Ok(())
}

/// All solutions of [`for_each_short_vector`], sorted lexicographically.
pub fn short_vectors_of_form(
    a: &RatMatrix,
    bound: &Rational,
    congruence: Option<&Congruence>,
) -> Result<Vec<(Vec<i64>, Rational)>> {
    let mut out = Vec::new();
    for_each_short_vector(a, bound, congruence, |y, q| out.push((y.to_vec(), q.clone())))?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn form(rows: &[&[i64]]) -> RatMatrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    /// Brute force over a box, independent of the decomposition.
    fn brute(a: &RatMatrix, bound: &Rational, radius: i64, c: Option<&Congruence>) -> Vec<(Vec<i64>, Rational)> {
        let n = a.len();
        let mut out = Vec::new();
        let mut y = vec![-radius; n];
        loop {
            let ok = c.is_none_or(|c| y.iter().zip(&c.residues).all(|(a, r)| (a - r).rem_euclid(c.modulus) == 0));
            if ok {
                let mut v = Rational::zero();
                for i in 0..n {
                    for j in 0..n {
                        v += &a[i][j] * int(y[i] * y[j]);
                    }
                }
                if &v <= bound {
                    out.push((y.clone(), v));
                }
            }
            let mut k = 0;
            while k < n && y[k] == radius {
                y[k] = -radius;
                k += 1;
            }
            if k == n {
                break;
            }
            y[k] += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn a2_small_norms() {
        let a = form(&[&[1, -1], &[-1, 1]]);
        // not positive definite
        assert_eq!(short_vectors_of_form(&a, &int(2), None), Err(Error::NotPositiveDefinite));
        let a2 = form(&[&[2, -1], &[-1, 2]]);
        let v = short_vectors_of_form(&a2, &int(2), None).unwrap();
        assert_eq!(v.len(), 7);
        assert_eq!(v, brute(&a2, &int(2), 3, None));
    }

    #[test]
    fn congruence_classes() {
        let a = form(&[&[2, 1], &[1, 2]]);
        let c = Congruence { modulus: 3, residues: vec![1, 2] };
        assert_eq!(short_vectors_of_form(&a, &int(40), Some(&c)).unwrap(), brute(&a, &int(40), 8, Some(&c)));
    }

    #[test]
    fn rational_forms() {
        let a = vec![vec![rat(2, 3), rat(1, 3)], vec![rat(1, 3), rat(2, 3)]];
        assert_eq!(short_vectors_of_form(&a, &rat(7, 2), None).unwrap(), brute(&a, &rat(7, 2), 6, None));
    }

    #[test]
    fn zero_rank_and_negative_bound() {
        assert_eq!(short_vectors_of_form(&Vec::new(), &int(0), None).unwrap(), vec![(vec![], int(0))]);
        assert!(short_vectors_of_form(&form(&[&[2]]), &int(-1), None).unwrap().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_brute_force(d0 in 1i64..5, d1 in 1i64..5, d2 in 1i64..5, o0 in -2i64..3, o1 in -2i64..3, o2 in -2i64..3, b in 0i64..12) {
            // L·D·Lᵀ with unit lower L is positive definite for positive D
            let l = [[1, 0, 0], [o0, 1, 0], [o1, o2, 1]];
            let d = [d0, d1, d2];
            let a: RatMatrix = (0..3).map(|i| (0..3).map(|j| int((0..3).map(|k| l[i][k] * d[k] * l[j][k]).sum())).collect()).collect();
            let fast = short_vectors_of_form(&a, &int(b), None).unwrap();
            let inv = inverse(&a).unwrap();
            let radius = (0..3)
                .map(|j| ((b as f64) * inv[j][j].to_f64().unwrap()).sqrt() as i64 + 1)
                .max()
                .unwrap();
            prop_assert_eq!(fast, brute(&a, &int(b), radius, None));
        }
    }
}
