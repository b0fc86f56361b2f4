//! The Weil representation of `Mp₂(Z)` on `C[L^∨/L]`.
//!
//! `ρ(T) e_μ = e(Q(μ)) e_μ` and `ρ(S) e_μ = e(−sig/8)/√|D| · Σ_ν e(−[μ,ν]) e_ν`.
//! By Milgram's formula the Gauss sum `G = Σ e(Q(μ))` equals
//! `√|D| e(sig/8)`, so the `S` scalar is exactly `1/G`.

use num_traits::{One, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::lattice::{Coset, DiscriminantForm};
use crate::weil::CycScalar;

pub type CycMatrix = Vec<Vec<CycScalar>>;

#[derive(Debug, Clone, PartialEq)]
pub struct WeilRepData {
    pub form: DiscriminantForm,
    pub sig8: i64,
    /// Basis order of the matrices.
    pub elements: Vec<Coset>,
    /// Diagonal of `ρ(T)`.
    pub rho_t: Vec<CycScalar>,
    /// `ρ(S)`, column `μ` holding the image of `e_μ`.
    pub rho_s: CycMatrix,
}

/// `Σ_μ e(Q(μ))`.
pub fn gauss_sum(form: &DiscriminantForm) -> CycScalar {
    form.elements()
        .iter()
        .fold(CycScalar::rational(Rational::zero()), |acc, mu| acc.add(&CycScalar::e(&form.q(mu))))
}

/// Checks Milgram's formula for `sig8` and returns `√|D|` as a cyclotomic number.
pub fn milgram_sqrt(form: &DiscriminantForm, sig8: i64) -> Result<CycScalar> {
    let g = gauss_sum(form);
    let h = g.mul(&CycScalar::e(&Rational::new((-sig8).into(), 8.into())));
    let order = int(form.order() as i64);
    let real = h == h.conj();
    let squares = h.mul(&h).as_rational() == Some(order);
    let positive = h.to_complex().0 > 0.0;
    if real && squares && positive {
        Ok(h)
    } else {
        Err(Error::SignatureMismatch { sig8 })
    }
}

pub fn build_weil_rep(form: &DiscriminantForm, sig8: i64) -> Result<WeilRepData> {
    let sig8 = sig8.rem_euclid(8);
    milgram_sqrt(form, sig8)?;
    let elements = form.elements();
    let order = int(form.order() as i64);
    let scalar = gauss_sum(form).conj().scale(&(Rational::one() / order));
    let rho_t = elements.iter().map(|mu| CycScalar::e(&form.q(mu))).collect();
    let rho_s = elements
        .iter()
        .map(|nu| elements.iter().map(|mu| scalar.mul(&CycScalar::e(&-form.b(mu, nu)))).collect())
        .collect();
    Ok(WeilRepData { form: form.clone(), sig8, elements, rho_t, rho_s })
}

/// Entrywise complex conjugate representation.
pub fn conjugate_rep(w: &WeilRepData) -> WeilRepData {
    WeilRepData {
        form: w.form.clone(),
        sig8: (-w.sig8).rem_euclid(8),
        elements: w.elements.clone(),
        rho_t: w.rho_t.iter().map(CycScalar::conj).collect(),
        rho_s: w.rho_s.iter().map(|r| r.iter().map(CycScalar::conj).collect()).collect(),
    }
}

pub fn mat_mul(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    a[i].iter()
                        .zip(b.iter())
                        .filter(|(x, _)| !x.is_zero())
                        .fold(CycScalar::rational(Rational::zero()), |acc, (x, row)| acc.add(&x.mul(&row[j])))
                })
                .collect()
        })
        .collect()
}

pub fn scalar_matrix(n: usize, c: &CycScalar) -> CycMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { c.clone() } else { CycScalar::rational(Rational::zero()) }).collect())
        .collect()
}

impl WeilRepData {
    pub fn t_matrix(&self) -> CycMatrix {
        let n = self.elements.len();
        let mut m = scalar_matrix(n, &CycScalar::rational(Rational::zero()));
        for (i, t) in self.rho_t.iter().enumerate() {
            m[i][i] = t.clone();
        }
        m
    }

    /// `(ρ_S ρ_T)³ = ρ_S²`.
    pub fn braid_relation_holds(&self) -> bool {
        let st = mat_mul(&self.rho_s, &self.t_matrix());
        let st3 = mat_mul(&mat_mul(&st, &st), &st);
        st3 == mat_mul(&self.rho_s, &self.rho_s)
    }

    /// `ρ_S² e_μ = e(−sig/4) e_{−μ}` and `ρ_S⁴ = e(−sig/2)`.
    pub fn center_relations_hold(&self) -> bool {
        let n = self.elements.len();
        let s2 = mat_mul(&self.rho_s, &self.rho_s);
        let c = CycScalar::e(&Rational::new((-self.sig8).into(), 4.into()));
        let zero = CycScalar::rational(Rational::zero());
        for (j, mu) in self.elements.iter().enumerate() {
            let minus = self.form.neg(mu);
            for (i, nu) in self.elements.iter().enumerate() {
                let want = if *nu == minus { &c } else { &zero };
                if &s2[i][j] != want {
                    return false;
                }
            }
        }
        let s4 = mat_mul(&s2, &s2);
        s4 == scalar_matrix(n, &CycScalar::e(&Rational::new((-self.sig8).into(), 2.into())))
    }

    /// `ρ_S` is symmetric.
    pub fn s_is_symmetric(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| (0..n).all(|j| self.rho_s[i][j] == self.rho_s[j][i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::database;
    use crate::lattice::GramLattice;

    fn rep(l: &GramLattice) -> WeilRepData {
        build_weil_rep(&DiscriminantForm::of(l).unwrap(), l.signature_mod8()).unwrap()
    }

    #[test]
    fn trivial_form() {
        let w = rep(&database::e8());
        assert_eq!(w.rho_t, vec![CycScalar::rational(int(1))]);
        assert_eq!(w.rho_s, vec![vec![CycScalar::rational(int(1))]]);
        assert_eq!(conjugate_rep(&w).rho_s, w.rho_s);
    }

    #[test]
    fn a1_form() {
        let w = rep(&database::a1());
        let i = CycScalar::root_of_unity(1, 4);
        assert_eq!(w.rho_t, vec![CycScalar::rational(int(1)), i.clone()]);
        assert_eq!(conjugate_rep(&w).rho_t[1], i.conj());
        assert!(w.braid_relation_holds());
        assert!(w.center_relations_hold());
    }

    #[test]
    fn relations_for_small_forms() {
        let a1a2 = database::a1().direct_sum(&database::a2());
        for l in [database::u(), database::a1(), database::a2(), a1a2] {
            let w = rep(&l);
            assert!(w.braid_relation_holds(), "{:?}", l.name());
            assert!(w.center_relations_hold(), "{:?}", l.name());
            assert!(w.s_is_symmetric());
            let c = conjugate_rep(&w);
            assert!(c.braid_relation_holds());
            assert_eq!(conjugate_rep(&c), w);
        }
    }

    #[test]
    fn wrong_signature_rejected() {
        let d = DiscriminantForm::of(&database::a1()).unwrap();
        assert_eq!(build_weil_rep(&d, 3), Err(Error::SignatureMismatch { sig8: 3 }));
        // A2 has signature 2; the negative of its Gauss sum phase is 6
        let d2 = DiscriminantForm::of(&database::a2()).unwrap();
        assert!(build_weil_rep(&d2, 2).is_ok());
        assert!(build_weil_rep(&d2, 6).is_err());
    }
}
