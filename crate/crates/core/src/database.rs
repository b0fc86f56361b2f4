//! Bundled lattices, glue codes and weakly holomorphic forms.

use crate::arith::{int, Rational};
use crate::borcherds::WHForm;
use crate::lattice::{cyclic_words, glue_lattice, DiscriminantForm, GramLattice};
use crate::series::{eisenstein, inverse_delta, j_series, FracQSeries};

/// Hyperbolic plane.
pub fn u() -> GramLattice {
    GramLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap().named("U")
}

pub fn a1() -> GramLattice {
    GramLattice::new(vec![vec![2]]).unwrap().named("A1")
}

pub fn a2() -> GramLattice {
    GramLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap().named("A2")
}

/// Cartan matrix of E8, branch node attached to the fourth node of the chain 1-3-4-5-6-7-8.
pub fn e8() -> GramLattice {
    let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        g[a - 1][b - 1] = -1;
        g[b - 1][a - 1] = -1;
    }
    GramLattice::new(g).unwrap().named("E8")
}

/// Generator matrix of the extended binary Golay code `[24, 12, 8]`.
pub const BINARY_GOLAY: [&str; 12] = [
    "100000000000101011100011",
    "010000000000111110010010",
    "001000000000110100101011",
    "000100000000110001110110",
    "000010000000110011011001",
    "000001000000011001101101",
    "000000100000001100110111",
    "000000010000101101111000",
    "000000001000010110111100",
    "000000000100001011011110",
    "000000000010101110001101",
    "000000000001010111000111",
];

/// Generator matrix of the extended ternary Golay code `[12, 6, 6]`.
pub const TERNARY_GOLAY: [&str; 6] = [
    "100000201212",
    "010000122210",
    "001000111011",
    "000100110222",
    "000010212201",
    "000001021221",
];

pub fn code_matrix(rows: &[&str]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| r.bytes().map(|b| (b - b'0') as i64).collect()).collect()
}

/// The Niemeier lattice with root system `A1^24`.
pub fn niemeier_a1() -> GramLattice {
    glue_lattice(vec![a1(); 24], cyclic_words(&code_matrix(&BINARY_GOLAY)))
        .expect("the binary Golay code is doubly even")
        .named("Niemeier(A1^24)")
}

/// The Niemeier lattice with root system `A2^12`.
pub fn niemeier_a2() -> GramLattice {
    glue_lattice(vec![a2(); 12], cyclic_words(&code_matrix(&TERNARY_GOLAY)))
        .expect("the ternary Golay code is self-orthogonal")
        .named("Niemeier(A2^12)")
}

/// A bundled lattice by name.
pub fn lattice(name: &str) -> Option<GramLattice> {
    Some(match name {
        "U" => u(),
        "A1" => a1(),
        "A2" => a2(),
        "E8" => e8(),
        "Niemeier(A1^24)" | "niemeier-a1" => niemeier_a1(),
        "Niemeier(A2^12)" | "niemeier-a2" => niemeier_a2(),
        "U+U" => u().direct_sum(&u()).named("U+U"),
        "E8+U+U" => e8().direct_sum(&u()).direct_sum(&u()).named("E8+U+U"),
        _ => return None,
    })
}

/// Names accepted by [`form`].
pub const FORM_NAMES: [&str; 5] = ["one-over-delta", "24-over-delta", "j-minus-744", "e4sq-over-delta", "24-e4sq-over-delta"];

/// `E4²/Δ` through the `q^b` term.
pub fn e4_squared_over_delta(b: i64) -> FracQSeries {
    let e4 = eisenstein(4, b + 1).expect("weight 4 is supported");
    e4.pow(2).mul(&inverse_delta(b + 1)).truncate(&int(b + 1))
}

/// A bundled form through `q^b`, with the lattice it lives on.
///
/// The forms of weight 0 live on `U ⊕ U`, those of weight −4 on `E8 ⊕ U ⊕ U`.
pub fn form(name: &str, b: i64) -> Option<(GramLattice, WHForm)> {
    let (home, weight, series) = match name {
        "one-over-delta" => ("U+U", 0, inverse_delta(b)),
        "24-over-delta" => ("U+U", 0, inverse_delta(b).scale(&int(24))),
        "j-minus-744" => ("U+U", 0, j_series(b).sub(&FracQSeries::one(b + 1).scale(&int(744)))),
        "e4sq-over-delta" => ("E8+U+U", -4, e4_squared_over_delta(b)),
        "24-e4sq-over-delta" => ("E8+U+U", -4, e4_squared_over_delta(b).scale(&int(24))),
        _ => return None,
    };
    let l = lattice(home)?;
    let d = DiscriminantForm::of(&l).ok()?;
    Some((l, WHForm::scalar(d, int(weight), series)))
}

/// Cusp, chamber point and Weyl vector for `j(p) − j(q)` on `U ⊕ U`.
///
/// `ℓ = e1`; `V0` is the second copy of `U`. The chamber point `w = (2, −1)`
/// grades `p^a q^b` by `2a + b`, and `ϱ = (0, −1)` has dual coordinates
/// `(−1, 0)`, giving the prefactor `p^{-1}`.
pub struct ShippedCusp {
    pub ell: Vec<i64>,
    pub w: Vec<Rational>,
    pub weyl_vector: Option<Vec<Rational>>,
}

pub fn knz_cusp() -> ShippedCusp {
    ShippedCusp { ell: vec![1, 0, 0, 0], w: vec![int(2), int(-1)], weyl_vector: Some(vec![int(0), int(-1)]) }
}

/// Cusp and chamber point on `E8 ⊕ U ⊕ U` with `ℓ = e9`.
///
/// `w` is the Weyl vector of `E8` in the simple root basis followed by
/// `(1009, −31)` in the remaining `U`; no Weyl vector is shipped.
pub fn e8_cusp() -> ShippedCusp {
    let mut w: Vec<Rational> = [46, 68, 91, 135, 110, 84, 57, 29].iter().map(|&x| int(x)).collect();
    w.extend([int(1009), int(-31)]);
    let mut ell = vec![0; 12];
    ell[8] = 1;
    ShippedCusp { ell, w, weyl_vector: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Coset;
    use num_bigint::BigInt;

    #[test]
    fn unimodular_niemeier_lattices() {
        for l in [niemeier_a1(), niemeier_a2()] {
            assert_eq!(l.rank(), 24);
            assert_eq!(l.determinant(), BigInt::from(1));
            assert!(l.is_positive_definite());
        }
        assert_eq!(niemeier_a1().glue().unwrap().codewords().unwrap().len(), 4096);
        assert_eq!(niemeier_a2().glue().unwrap().codewords().unwrap().len(), 729);
    }

    #[test]
    fn bundled_forms() {
        for name in FORM_NAMES {
            let (l, f) = form(name, 4).unwrap();
            assert!(f.check_support() && f.is_integral(), "{name}");
            assert_eq!(f.weight, int(1) - int(l.rank() as i64 - 2) / int(2));
        }
        let (_, f) = form("e4sq-over-delta", 2).unwrap();
        assert_eq!(f.coefficient(&int(-1), &Coset(vec![])).unwrap(), int(1));
        assert_eq!(f.coefficient(&int(0), &Coset(vec![])).unwrap(), int(504));
        let (_, j) = form("j-minus-744", 2).unwrap();
        assert_eq!(j.coefficient(&int(1), &Coset(vec![])).unwrap(), int(196884));
        assert_eq!(j.constant_term(), int(0));
        assert!(form("nothing", 2).is_none());
    }

    #[test]
    fn e8_is_unimodular() {
        assert_eq!(e8().determinant(), BigInt::from(1));
        assert!(e8().is_positive_definite());
    }
}
