//! The classical level one series `Δ`, `E_k` and `j`, exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::series::FracQSeries;

/// `∏_{n=1}^{∞} (1 − qⁿ)^e` with coefficients known through `q^b`.
fn euler_power(e: u32, b: i64) -> Vec<BigInt> {
    let len = (b + 1).max(1) as usize;
    let mut poly = vec![BigInt::zero(); len];
    poly[0] = BigInt::one();
    for n in 1..len {
        for _ in 0..e {
            // multiply in place by (1 − qⁿ), high to low
            for k in (n..len).rev() {
                let t = poly[k - n].clone();
                poly[k] -= t;
            }
        }
    }
    poly
}

/// `Δ = q ∏ (1 − qⁿ)^24` through the `q^b` term.
pub fn delta_series(b: i64) -> FracQSeries {
    let eta24 = euler_power(24, b - 1);
    let mut s = FracQSeries::zero(1, b + 1);
    for (k, c) in eta24.into_iter().enumerate() {
        s.set(k as i64 + 1, Rational::from_integer(c));
    }
    s
}

/// Bernoulli number `B_k` (with `B_1 = −1/2`).
pub fn bernoulli(k: usize) -> Rational {
    let mut b = vec![Rational::one()];
    for m in 1..=k {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut binom = BigInt::one();
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b.swap_remove(k)
}

fn divisor_power_sum(n: i64, k: u32) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(k)).sum()
}

/// Normalized Eisenstein series `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ` through `q^b`.
pub fn eisenstein(k: u32, b: i64) -> Result<FracQSeries> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(Error::UnsupportedWeight(k));
    }
    let factor = -int(2 * k as i64) / bernoulli(k as usize);
    let mut s = FracQSeries::zero(1, b + 1);
    s.set(0, Rational::one());
    for n in 1..=b {
        s.set(n, &factor * Rational::from_integer(divisor_power_sum(n, k - 1)));
    }
    Ok(s)
}

/// `j = E4³ / Δ` through the `q^b` term.
pub fn j_series(b: i64) -> FracQSeries {
    let e4 = eisenstein(4, b + 1).expect("weight 4 is supported");
    let delta = delta_series(b + 2);
    e4.pow(3).mul(&delta.invert().expect("Δ has leading coefficient 1")).truncate(&int(b + 1))
}

/// `1/Δ` through the `q^b` term.
pub fn inverse_delta(b: i64) -> FracQSeries {
    delta_series(b + 2).invert().expect("Δ has leading coefficient 1").truncate(&int(b + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: Jacobi's identity ∏(1−qⁿ)³ = Σ (−1)^k (2k+1) q^{k(k+1)/2},
    /// raised to the eighth power by naive convolution.
    fn delta_by_jacobi(b: i64) -> Vec<i64> {
        let len = b as usize;
        let mut cube = vec![0i64; len];
        let mut k = 0i64;
        while k * (k + 1) / 2 < len as i64 {
            cube[(k * (k + 1) / 2) as usize] += if k % 2 == 0 { 2 * k + 1 } else { -(2 * k + 1) };
            k += 1;
        }
        let mut acc = vec![0i64; len];
        acc[0] = 1;
        for _ in 0..8 {
            let mut next = vec![0i64; len];
            for (i, a) in acc.iter().enumerate() {
                for (j, c) in cube.iter().enumerate().take(len - i) {
                    next[i + j] += a * c;
                }
            }
            acc = next;
        }
        // Δ = q · (η-product), so coefficient of q^{n} is acc[n-1]
        acc
    }

    #[test]
    fn delta_coefficients() {
        let d = delta_series(4);
        assert_eq!(d.integer_coefficients(0, 5).unwrap(), vec![int(0), int(1), int(-24), int(252), int(-1472)]);
        let oracle = delta_by_jacobi(12);
        let d = delta_series(12);
        for n in 1..=12 {
            assert_eq!(d.coeff(n).unwrap(), int(oracle[(n - 1) as usize]), "tau({n})");
        }
        assert_eq!(delta_series(6).coeff(6).unwrap(), int(-6048));
        assert_eq!(int(-24) * int(252), delta_series(6).coeff(6).unwrap());
        assert!(delta_series(20).is_integral());
    }

    #[test]
    fn eisenstein_series() {
        assert_eq!(bernoulli(4), Rational::new((-1).into(), 30.into()));
        assert_eq!(bernoulli(6), Rational::new(1.into(), 42.into()));
        let e4 = eisenstein(4, 2).unwrap();
        assert_eq!(e4.integer_coefficients(0, 3).unwrap(), vec![int(1), int(240), int(2160)]);
        assert_eq!(eisenstein(6, 1).unwrap().coeff(1).unwrap(), int(-504));
        assert!(matches!(eisenstein(5, 3), Err(Error::UnsupportedWeight(5))));
        assert!(matches!(eisenstein(2, 3), Err(Error::UnsupportedWeight(2))));
    }

    #[test]
    fn e4_cubed_minus_e6_squared() {
        let lhs = eisenstein(4, 6).unwrap().pow(3).sub(&eisenstein(6, 6).unwrap().pow(2));
        let rhs = delta_series(6).scale(&int(1728));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn j_invariant() {
        let j = j_series(1);
        assert_eq!(j.integer_coefficients(-1, 2).unwrap(), vec![int(1), int(744), int(196884)]);
        assert_eq!(j.precision(), int(2));
        for b in 0..=8 {
            assert!(j_series(b).is_integral());
        }
        assert_eq!(j_series(3).coeff(3).unwrap(), int(864299970));
    }

    #[test]
    fn delta_inverse_round_trip() {
        let d = delta_series(10);
        let inv = d.invert().unwrap();
        assert_eq!(inv.integer_coefficients(-1, 2).unwrap(), vec![int(1), int(24), int(324)]);
        assert_eq!(d.mul(&inv), FracQSeries::one(10));
    }
}
