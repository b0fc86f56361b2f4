//! Exact elements of cyclotomic fields `Q(ζ_M)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, is_integer, solve, Rational};

/// Coefficients of the cyclotomic polynomial `Φ_m`, constant term first.
fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m − 1 divided by Φ_d for every proper divisor d
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = exact_divide(&p, &cyclotomic_poly(d));
    }
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// Quotient of `a` by the monic polynomial `b`, assuming exact division.
fn exact_divide(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = rem.len() - 1 - db;
    let mut q = vec![BigInt::zero(); dq + 1];
    for i in (0..=dq).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    q
}

fn totient(m: u64) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

/// `Σ a_r ζ_M^r` reduced modulo `Φ_M`, stored in the power basis
/// `1, ζ, …, ζ^{φ(M)−1}`.
#[derive(Debug, Clone)]
pub struct CycScalar {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    /// Reduces `Σ poly[r] ζ_M^r` (any length) modulo `Φ_M`.
    fn reduce(conductor: u64, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(conductor);
        let deg = phi.len() - 1;
        for i in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(deg) {
                poly[i - deg + j] -= &c * Rational::from_integer(pj.clone());
            }
        }
        poly.resize(deg, Rational::zero());
        CycScalar { conductor, coeffs: poly }
    }

    pub fn rational(r: Rational) -> Self {
        CycScalar { conductor: 1, coeffs: vec![r] }
    }

    /// `e(a/b) = exp(2πi a/b)`.
    pub fn root_of_unity(a: i64, b: i64) -> Self {
        assert!(b > 0, "root of unity needs a positive denominator");
        let g = a.gcd(&b);
        let (a, b) = (a / g, (b / g) as u64);
        let r = a.rem_euclid(b as i64) as usize;
        let mut poly = vec![Rational::zero(); r + 1];
        poly[r] = Rational::one();
        Self::reduce(b, poly)
    }

    /// `e(x)` for a rational `x`.
    pub fn e(x: &Rational) -> Self {
        let b = x.denom().to_i64().expect("denominator fits i64");
        let a = x.numer().mod_floor(x.denom()).to_i64().unwrap();
        Self::root_of_unity(a, b)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Same element in `Q(ζ_M)` for a multiple `M` of the conductor.
    fn lift(&self, m: u64) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.conductor), "conductor must divide the target");
        let f = (m / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len().saturating_sub(1)) * f + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * f] = c.clone();
        }
        Self::reduce(m, poly)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycScalar { conductor: a.conductor, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycScalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|x| x * r).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut poly = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        Self::reduce(a.conductor, poly)
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = CycScalar::rational(Rational::one());
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Some(out)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let mut poly = vec![Rational::zero(); m.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(m - i) % m.max(1)] += c;
        }
        Self::reduce(self.conductor, poly)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.coeffs.len();
        // column j of the multiplication matrix is self · ζ^j
        let cols: Vec<Vec<Rational>> = (0..d)
            .map(|j| {
                let mut poly = vec![Rational::zero(); d + j];
                for (i, c) in self.coeffs.iter().enumerate() {
                    poly[i + j] = c.clone();
                }
                Self::reduce(self.conductor, poly).coeffs
            })
            .collect();
        let m: Vec<Vec<Rational>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        let mut one = vec![Rational::zero(); d];
        one[0] = Rational::one();
        solve(&m, &one).map(|coeffs| CycScalar { conductor: self.conductor, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        // rational elements are fixed by conjugation and every Galois automorphism;
        // comparing with the constant embedding suffices
        let r = self.trace_constant();
        (CycScalar::rational(r.clone()) == *self).then_some(r)
    }

    fn trace_constant(&self) -> Rational {
        // the average over Galois conjugates ζ ↦ ζ^a
        let m = self.conductor;
        let units: Vec<u64> = (1..=m.max(1)).filter(|a| a.gcd(&m) == 1).collect();
        let mut sum = CycScalar::rational(Rational::zero());
        for &a in &units {
            let mut poly = vec![Rational::zero(); self.coeffs.len() * a as usize + 1];
            for (i, c) in self.coeffs.iter().enumerate() {
                poly[i * a as usize] += c;
            }
            sum = sum.add(&Self::reduce(m, poly));
        }
        sum.coeffs[0].clone() / int(units.len() as i64)
    }

    /// Numerical value, for sign checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(0.0);
            let t = std::f64::consts::TAU * i as f64 / m;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    pub fn degree(&self) -> usize {
        totient(self.conductor)
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &Rational)> = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in terms.into_iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            match (k, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "z{}^{i}", self.conductor)?;
            }
        }
        Ok(())
    }
}

impl crate::series::Coefficient for CycScalar {
    fn zero() -> Self {
        CycScalar::rational(<Rational as Zero>::zero())
    }
    fn one() -> Self {
        CycScalar::rational(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        CycScalar::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        CycScalar::mul(self, other)
    }
    fn from_rational(r: &Rational) -> Self {
        CycScalar::rational(r.clone())
    }
    fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        let p = |m| cyclotomic_poly(m).into_iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        let i = CycScalar::root_of_unity(1, 4);
        assert_eq!(i.mul(&i), CycScalar::rational(int(-1)));
        let w = CycScalar::root_of_unity(1, 3);
        // 1 + ω + ω² = 0
        assert!(CycScalar::rational(int(1)).add(&w).add(&w.mul(&w)).is_zero());
        assert_eq!(CycScalar::root_of_unity(1, 2), CycScalar::rational(int(-1)));
        assert_eq!(CycScalar::root_of_unity(3, 12), i);
        assert_eq!(i.conj(), CycScalar::root_of_unity(3, 4));
        assert_eq!(i.conj().conj(), i);
        assert_eq!(CycScalar::e(&rat(-1, 8)), CycScalar::root_of_unity(7, 8));
    }

    #[test]
    fn gauss_sum_sqrt() {
        // (ζ8 + ζ8^{-1})² = 2
        let z = CycScalar::root_of_unity(1, 8);
        let s = z.add(&z.conj());
        assert_eq!(s.mul(&s).as_rational(), Some(int(2)));
        assert_eq!(s.as_rational(), None);
        assert!(s.to_complex().0 > 0.0);
    }

    #[test]
    fn inverses() {
        let a = CycScalar::root_of_unity(1, 5).add(&CycScalar::rational(int(2)));
        assert_eq!(a.mul(&a.inverse().unwrap()), CycScalar::rational(int(1)));
        assert_eq!(CycScalar::rational(int(0)).inverse(), None);
        assert_eq!(a.to_string(), "2 + z5^1");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn field_axioms(a in -12i64..12, b in 1i64..13, c in -12i64..12, d in 1i64..13, r in -5i64..6) {
            let x = CycScalar::root_of_unity(a, b).scale(&int(r)).add(&CycScalar::root_of_unity(c, d));
            let y = CycScalar::root_of_unity(c, d);
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
            if !x.is_zero() {
                prop_assert_eq!(x.mul(&x.inverse().unwrap()), CycScalar::rational(int(1)));
            }
        }
    }
}
