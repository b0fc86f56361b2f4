//! Walls `λ^⊥` of the arrangement attached to `f₀` and Weyl chambers.
//!
//! Vectors of `V0^∨` are written in dual coordinates `z = G₀x`, so that
//! `[λ, w] = z · w` for `w` in `V0` coordinates.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::arith::{dot, int, inverse, mat_vec, Rational, RatMatrix};
use crate::borcherds::form::WHForm;
use crate::error::{Error, Result};
use crate::lattice::enumerate::for_each_short_vector;
use crate::lattice::{Coset, CuspData, GramLattice};

/// Radius used by [`chamber_of`] for the walls it records.
pub const CHAMBER_RADIUS: i64 = 2;

/// `V0^∨` in dual coordinates.
#[derive(Debug, Clone)]
pub(crate) struct DualLattice {
    g0inv: RatMatrix,
}

impl DualLattice {
    pub(crate) fn new(v0: &GramLattice) -> Result<Self> {
        Ok(DualLattice { g0inv: inverse(&v0.gram_rat()).ok_or(Error::SingularGram)? })
    }

    /// `V0` coordinates of the vector with dual coordinates `z`.
    pub(crate) fn point(&self, z: &[i64]) -> Vec<Rational> {
        let z: Vec<Rational> = z.iter().map(|&v| int(v)).collect();
        mat_vec(&self.g0inv, &z)
    }

    /// `Q(λ) = zᵀ G₀⁻¹ z / 2`.
    pub(crate) fn norm(&self, z: &[i64]) -> Rational {
        let z: Vec<Rational> = z.iter().map(|&v| int(v)).collect();
        dot(&z, &mat_vec(&self.g0inv, &z)) / int(2)
    }

    /// `zᵀ A z = Q(λ) + [λ, w]² / (2|Q(w)|)`, positive definite when `Q(w) < 0`.
    pub(crate) fn majorant(&self, w: &[Rational], qw: &Rational) -> RatMatrix {
        let c = int(1) / (int(2) * qw.abs());
        self.g0inv
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, g)| g / int(2) + &w[i] * &w[j] * &c).collect())
            .collect()
    }
}

/// Norm of `w` in `V0`, which must be negative and in the chosen cone component.
pub(crate) fn cone_norm(data: &CuspData, w: &[Rational]) -> Result<Rational> {
    if w.len() != data.v0.rank() {
        return Err(Error::DimensionMismatch { expected: data.v0.rank(), found: w.len() });
    }
    if !data.in_cone(w)? {
        return Err(Error::OutsideCone);
    }
    data.v0.quadratic_value(w)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Wall {
    /// Dual coordinates, first nonzero entry positive.
    pub z: Vec<i64>,
    /// `Q(λ) > 0`.
    pub m: Rational,
}

fn canonical(z: &[i64]) -> Vec<i64> {
    match z.iter().find(|&&v| v != 0) {
        Some(&v) if v < 0 => z.iter().map(|x| -x).collect(),
        _ => z.to_vec(),
    }
}

/// Every `λ ∈ V0^∨` with `Q(λ) = m > 0`, `c₀(−m, λ + V0) ≠ 0` and
/// `[λ, w]² ≤ radius² · m · |Q(w)|`, up to sign.
pub fn enumerate_walls(f0: &WHForm, data: &CuspData, w: &[Rational], radius: &Rational) -> Result<Vec<Wall>> {
    let qw = cone_norm(data, w)?;
    let dual = DualLattice::new(&data.v0)?;
    let depth = f0.pole_order();
    if depth.is_zero() {
        return Ok(Vec::new());
    }
    let a = dual.majorant(w, &qw);
    let r2 = radius * radius;
    let bound = &depth * (int(1) + &r2 / int(2));
    let mut found = std::collections::BTreeSet::new();
    let mut failure = None;
    for_each_short_vector(&a, &bound, None, |z, _| {
        if failure.is_some() {
            return;
        }
        let m = dual.norm(z);
        if !m.is_positive() || m > depth {
            return;
        }
        let t = dot(&z.iter().map(|&v| int(v)).collect::<Vec<_>>(), w);
        if &t * &t > &r2 * &m * qw.abs() {
            return;
        }
        let coset = match data.v0_form.reduce(&dual.point(z)) {
            Ok(c) => c,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        match f0.coefficient(&-&m, &coset) {
            Ok(c) if !c.is_zero() => {
                found.insert(Wall { z: canonical(z), m });
            }
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found.into_iter().collect()),
    }
}

/// A chamber, recorded by a point `w` and the side of each nearby wall.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylChamber {
    pub w: Vec<Rational>,
    pub radius: Rational,
    /// Sign of `[λ, w]` for each wall `λ` within the radius.
    pub walls: BTreeMap<Vec<i64>, i8>,
    /// Principal part of the `f₀` the walls come from.
    pub principal: Vec<(Rational, Coset, Rational)>,
}

impl WeylChamber {
    /// True when no recorded wall separates `w` from `other`.
    pub fn contains(&self, other: &[Rational]) -> bool {
        self.walls.iter().all(|(z, &s)| {
            let t = dot(&z.iter().map(|&v| int(v)).collect::<Vec<_>>(), other);
            t.signum() == int(s as i64)
        })
    }
}

pub fn chamber_of(w: &[Rational], f0: &WHForm, data: &CuspData) -> Result<WeylChamber> {
    chamber_with_radius(w, f0, data, &int(CHAMBER_RADIUS))
}

pub fn chamber_with_radius(w: &[Rational], f0: &WHForm, data: &CuspData, radius: &Rational) -> Result<WeylChamber> {
    let walls = enumerate_walls(f0, data, w, radius)?;
    let mut signs = BTreeMap::new();
    for wall in walls {
        let t = dot(&wall.z.iter().map(|&v| int(v)).collect::<Vec<_>>(), w);
        if t.is_zero() {
            return Err(Error::OnWall);
        }
        signs.insert(wall.z, if t.is_positive() { 1 } else { -1 });
    }
    Ok(WeylChamber { w: w.to_vec(), radius: radius.clone(), walls: signs, principal: f0.principal_part() })
}

/// Checks that `chamber` was built from `f0` and that its point is off every wall.
pub(crate) fn verify_chamber(chamber: &WeylChamber, f0: &WHForm, data: &CuspData) -> Result<()> {
    if chamber.principal != f0.principal_part() || !chamber.contains(&chamber.w) {
        return Err(Error::ChamberMismatch);
    }
    if !enumerate_walls(f0, data, &chamber.w, &Rational::zero())?.is_empty() {
        return Err(Error::OnWall);
    }
    Ok(())
}

/// `λ ↦ λ + V0` for `λ` in dual coordinates.
pub(crate) fn dual_coset(data: &CuspData, dual: &DualLattice, z: &[i64]) -> Result<Coset> {
    data.v0_form.reduce(&dual.point(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::borcherds::reduce_f0;
    use crate::database;
    use crate::lattice::{cusp_data, DiscriminantForm};
    use crate::series::j_series;
    use proptest::prelude::*;

    fn knz() -> (WHForm, CuspData) {
        let l = database::lattice("U+U").unwrap();
        let data = cusp_data(&l, &[1, 0, 0, 0]).unwrap();
        let j = j_series(6).sub(&crate::series::FracQSeries::one(6).scale(&int(744)));
        let f = WHForm::scalar(DiscriminantForm::of(&l).unwrap(), int(0), j);
        (reduce_f0(&f, &data).unwrap(), data)
    }

    fn pt(a: i64, b: i64) -> Vec<Rational> {
        vec![int(a), int(b)]
    }

    #[test]
    fn hyperbolic_walls() {
        let (f0, data) = knz();
        let walls = enumerate_walls(&f0, &data, &pt(2, -1), &int(2)).unwrap();
        assert_eq!(walls, vec![Wall { z: vec![1, 1], m: int(1) }]);
        let c = chamber_of(&pt(2, -1), &f0, &data).unwrap();
        assert!(c.contains(&pt(3, -1)));
        assert_eq!(chamber_of(&pt(3, -1), &f0, &data).unwrap().walls, c.walls);
        assert!(!c.contains(&pt(1, -2)));
        assert_eq!(chamber_of(&pt(1, -1), &f0, &data), Err(Error::OnWall));
        assert_eq!(chamber_of(&pt(-2, 1), &f0, &data), Err(Error::OutsideCone));
    }

    #[test]
    fn empty_principal_part_has_no_walls() {
        let (_, data) = knz();
        let f0 = WHForm::scalar(data.v0_form.clone(), int(1), crate::series::FracQSeries::one(4));
        assert!(enumerate_walls(&f0, &data, &pt(2, -1), &int(5)).unwrap().is_empty());
    }

    /// Brute force over a box of dual coordinates.
    fn brute_walls(f0: &WHForm, data: &CuspData, w: &[Rational], radius: &Rational, box_size: i64) -> Vec<Wall> {
        let dual = DualLattice::new(&data.v0).unwrap();
        let qw = data.v0.quadratic_value(w).unwrap().abs();
        let mut out = std::collections::BTreeSet::new();
        for a in -box_size..=box_size {
            for b in -box_size..=box_size {
                let z = [a, b];
                let m = dual.norm(&z);
                if !m.is_positive() {
                    continue;
                }
                let t = &w[0] * int(a) + &w[1] * int(b);
                if &t * &t > radius * radius * &m * &qw {
                    continue;
                }
                let mu = dual_coset(data, &dual, &z).unwrap();
                if let Ok(c) = f0.coefficient(&-&m, &mu) {
                    if !c.is_zero() {
                        out.insert(Wall { z: canonical(&z), m });
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn walls_match_brute_force_with_deeper_pole() {
        let (_, data) = knz();
        // q^-3 + q^-1 on the trivial form of U
        let s = crate::series::FracQSeries::from_integer_coeffs(-3, &[1, 0, 1], 1);
        let f0 = WHForm::scalar(data.v0_form.clone(), int(1), s);
        for (a, b) in [(2, -1), (5, -1), (1, -3), (7, -2)] {
            let w = pt(a, b);
            let r = int(3);
            assert_eq!(enumerate_walls(&f0, &data, &w, &r).unwrap(), brute_walls(&f0, &data, &w, &r, 40));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn chamber_independence(a in 1i64..12, b in 1i64..12, c in 1i64..12, d in 1i64..12, r in 1i64..4) {
            let (_, data) = knz();
            let s = crate::series::FracQSeries::from_integer_coeffs(-4, &[1, 0, 2, 0, 1], 1);
            let f0 = WHForm::scalar(data.v0_form.clone(), int(1), s);
            let (w1, w2) = (pt(a, -b), pt(c, -d));
            let r = int(r);
            let walls1 = enumerate_walls(&f0, &data, &w1, &r).unwrap();
            let walls2 = enumerate_walls(&f0, &data, &w2, &r).unwrap();
            let side = |z: &[i64], w: &[Rational]| (int(z[0]) * &w[0] + int(z[1]) * &w[1]).signum();
            let separated = walls1.iter().chain(&walls2).any(|x| side(&x.z, &w1) != side(&x.z, &w2));
            if !separated {
                // within the region both points see, the wall sets agree
                let qw = |w: &[Rational]| data.v0.quadratic_value(w).unwrap().abs();
                let inside = |x: &Wall, w: &[Rational]| {
                    let t = int(x.z[0]) * &w[0] + int(x.z[1]) * &w[1];
                    &t * &t <= &r * &r * &x.m * qw(w)
                };
                let shared1: Vec<_> = walls1.iter().filter(|x| inside(x, &w2)).collect();
                let shared2: Vec<_> = walls2.iter().filter(|x| inside(x, &w1)).collect();
                prop_assert_eq!(shared1, shared2);
            }
            let bigger = enumerate_walls(&f0, &data, &w1, &(&r * int(2))).unwrap();
            prop_assert!(walls1.iter().all(|x| bigger.contains(x)));
            prop_assert!(rat(0, 1) <= r);
        }
    }
}
