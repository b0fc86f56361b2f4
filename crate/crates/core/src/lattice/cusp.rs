//! Data attached to a primitive isotropic vector: the second isotropic
//! vector `ℓ_*`, the lattice `(ℓ^⊥ ∩ L)/Zℓ`, and reduction of cosets to it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    bezout_vector, complete_to_basis, int, inverse, is_integer, mat_vec, solve, transpose, Rational,
};
use crate::error::{Error, Result};
use crate::lattice::{Coset, DiscriminantForm, GramLattice};

/// Outcome of a bounded search for an isotropic vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropicSearch {
    pub vector: Option<Vec<i64>>,
    /// False when the search stopped at its bound without settling existence.
    pub complete: bool,
}

const SEARCH_LIMIT: u64 = 4_000_000;

fn q_int(gram: &[Vec<i64>], x: &[i64]) -> i128 {
    let mut s = 0i128;
    for (i, row) in gram.iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            s += x[i] as i128 * g as i128 * x[j] as i128;
        }
    }
    s / 2
}

/// Visits nonzero vectors with first nonzero coordinate positive, shell by
/// shell in the sup norm, lexicographically inside a shell. Stops when
/// `found` returns true or the budget runs out; returns whether it stopped early.
fn search_shells(n: usize, max_radius: i64, mut found: impl FnMut(&[i64]) -> bool) -> Option<bool> {
    if n == 0 {
        return Some(false);
    }
    let mut visited = 0u64;
    for r in 1..=max_radius {
        let mut x = vec![-r; n];
        loop {
            let first = x.iter().find(|&&v| v != 0);
            if first.is_some_and(|&v| v > 0) && x.iter().any(|v| v.abs() == r) {
                if found(&x) {
                    return Some(true);
                }
                visited += 1;
                if visited > SEARCH_LIMIT {
                    return None;
                }
            }
            // odometer step, last coordinate fastest
            let Some(k) = (0..n).rev().find(|&k| x[k] < r) else { break };
            x[k] += 1;
            for v in &mut x[k + 1..] {
                *v = -r;
            }
        }
    }
    Some(false)
}

fn is_primitive(x: &[i64]) -> bool {
    x.iter().fold(0i64, |g, &v| g.gcd(&v)) == 1
}

/// A primitive `ℓ` with `Q(ℓ) = 0`, searching coordinates up to
/// `4 · max|G| · rank`. Definite lattices return `None` immediately.
pub fn isotropic_line(lattice: &GramLattice) -> IsotropicSearch {
    let (p, q) = lattice.signature();
    let n = lattice.rank();
    if p == 0 || q == 0 {
        return IsotropicSearch { vector: None, complete: true };
    }
    let gram = lattice.gram();
    if let Some(i) = (0..n).find(|&i| gram[i][i] == 0) {
        let mut e = vec![0; n];
        e[i] = 1;
        return IsotropicSearch { vector: Some(e), complete: true };
    }
    let largest = gram.iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
    let bound = 4 * largest * n as i64;
    let mut hit = None;
    let stopped = search_shells(n, bound, |x| {
        if is_primitive(x) && q_int(gram, x) == 0 {
            hit = Some(x.to_vec());
            true
        } else {
            false
        }
    });
    IsotropicSearch { complete: hit.is_some() || stopped.is_some(), vector: hit }
}

/// Cusp data for a primitive isotropic `ℓ ∈ L`.
///
/// `k ∈ L^∨` satisfies `[ℓ, k] = 1` (taken in `L` when `N = 1`), so
/// `ℓ_* = k − Q(k)ℓ` is isotropic with `[ℓ, ℓ_*] = 1`.
#[derive(Debug, Clone)]
pub struct CuspData {
    pub lattice: GramLattice,
    pub form: DiscriminantForm,
    pub ell: Vec<i64>,
    /// `NZ = [L, ℓ]`.
    pub n: i64,
    pub k: Vec<Rational>,
    pub ell_star: Vec<Rational>,
    /// `(ℓ^⊥ ∩ L)/Zℓ` with its induced form.
    pub v0: GramLattice,
    pub v0_form: DiscriminantForm,
    /// Row `j` lifts the `j`-th basis vector of `V0` into `ℓ^⊥ ∩ L`.
    pub lift: Vec<Vec<i64>>,
    /// A vector of `V0` with negative norm fixing the light cone component, when `V0` is Lorentzian.
    pub cone_reference: Option<Vec<i64>>,
    /// Coset reductions, `μ ↦ λ` for every `μ` with a lift in `ℓ^⊥`.
    reductions: BTreeMap<Coset, (Coset, Vec<Rational>)>,
}

fn big_vec(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&v| BigInt::from(v)).collect()
}

fn rat_vec(x: &[BigInt]) -> Vec<Rational> {
    x.iter().map(|v| Rational::from_integer(v.clone())).collect()
}

fn to_i64_vec(x: &[BigInt]) -> Result<Vec<i64>> {
    x.iter()
        .map(|v| v.to_i64().ok_or_else(|| Error::InvalidGram("coordinate too large".into())))
        .collect()
}

pub fn cusp_data(lattice: &GramLattice, ell: &[i64]) -> Result<CuspData> {
    let n = lattice.rank();
    if ell.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: ell.len() });
    }
    if ell.iter().all(|&x| x == 0) || q_int(lattice.gram(), ell) != 0 {
        return Err(Error::NotIsotropic);
    }
    if !is_primitive(ell) {
        return Err(Error::NotPrimitive);
    }
    let form = DiscriminantForm::of(lattice)?;
    let row = lattice.pairing_row(&big_vec(ell));
    let (big_n, y) = bezout_vector(&row);
    let n_val = big_n.to_i64().ok_or_else(|| Error::InvalidGram("level of ℓ too large".into()))?;

    let gram = lattice.gram_rat();
    let k: Vec<Rational> = if big_n.is_one() {
        rat_vec(&y)
    } else {
        // G k = e with e·ℓ = 1
        let (_, e) = bezout_vector(&big_vec(ell));
        mat_vec(&inverse(&gram).ok_or(Error::SingularGram)?, &rat_vec(&e))
    };
    let ell_r: Vec<Rational> = ell.iter().map(|&x| int(x)).collect();
    let qk = lattice.quadratic_value(&k)?;
    let ell_star: Vec<Rational> = k.iter().zip(&ell_r).map(|(a, b)| a - &qk * b).collect();

    // basis of ℓ^⊥ ∩ L with ℓ first
    let kernel = crate::arith::integer_kernel(&row);
    let kt = transpose(&kernel);
    let coords = solve(&crate::arith::to_rat_matrix(&kt), &ell_r).ok_or(Error::NotIsotropic)?;
    if !coords.iter().all(is_integer) {
        return Err(Error::NotPrimitive);
    }
    let c: Vec<BigInt> = coords.iter().map(|x| x.to_integer()).collect();
    let u = complete_to_basis(&c).ok_or(Error::NotPrimitive)?;
    let m = kernel.len();
    let mut lift = Vec::with_capacity(m.saturating_sub(1));
    for col in 1..m {
        let v: Vec<BigInt> = (0..n).map(|i| (0..m).map(|j| &kernel[j][i] * &u[j][col]).sum()).collect();
        lift.push(to_i64_vec(&v)?);
    }
    let mut g0 = vec![vec![0i64; lift.len()]; lift.len()];
    for (i, a) in lift.iter().enumerate() {
        for (j, b) in lift.iter().enumerate() {
            let a: Vec<Rational> = a.iter().map(|&x| int(x)).collect();
            let b: Vec<Rational> = b.iter().map(|&x| int(x)).collect();
            g0[i][j] = lattice.bilinear(&a, &b)?.to_integer().to_i64().unwrap();
        }
    }
    let v0 = if g0.is_empty() { GramLattice::zero() } else { GramLattice::new(g0)? };
    let v0_form = DiscriminantForm::of(&v0)?;
    let cone_reference = light_cone_reference(&v0);

    let mut data = CuspData {
        lattice: lattice.clone(),
        form,
        ell: ell.to_vec(),
        n: n_val,
        k,
        ell_star,
        v0,
        v0_form,
        lift,
        cone_reference,
        reductions: BTreeMap::new(),
    };
    for mu in data.form.elements() {
        if let Some((lambda, lifted)) = data.lift_coset(&mu)? {
            data.reductions.insert(mu, (lambda, lifted));
        }
    }
    Ok(data)
}

/// First negative norm vector in shell order, for Lorentzian `V0`.
fn light_cone_reference(v0: &GramLattice) -> Option<Vec<i64>> {
    if v0.signature().1 != 1 {
        return None;
    }
    let n = v0.rank();
    let mut hit = None;
    search_shells(n, i64::MAX / 4, |x| {
        if q_int(v0.gram(), x) < 0 {
            hit = Some(x.to_vec());
            true
        } else {
            false
        }
    });
    hit
}

impl CuspData {
    /// A lift `μ̃ ∈ ℓ^⊥ ∩ (μ + L)` and its image in `D(V0)`, if one exists.
    fn lift_coset(&self, mu: &Coset) -> Result<Option<(Coset, Vec<Rational>)>> {
        let rep = self.form.representative(mu);
        let ell: Vec<Rational> = self.ell.iter().map(|&x| int(x)).collect();
        let t = self.lattice.bilinear(&rep, &ell)?.to_integer();
        if !t.is_multiple_of(&BigInt::from(self.n)) {
            return Ok(None);
        }
        let row = self.lattice.pairing_row(&big_vec(&self.ell));
        let (_, y) = bezout_vector(&row);
        let f = -(t / BigInt::from(self.n));
        let lifted: Vec<Rational> = rep.iter().zip(&y).map(|(r, yi)| r + Rational::from_integer(yi * &f)).collect();
        let lambda = self.project(&lifted)?;
        let coset = self.v0_form.reduce(&lambda)?;
        Ok(Some((coset, lifted)))
    }

    /// Coordinates in `V0` of a vector of `ℓ^⊥ ⊗ Q` given in lattice coordinates.
    pub fn project(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.lattice.rank();
        let mut cols: Vec<Vec<Rational>> = vec![self.ell.iter().map(|&v| int(v)).collect()];
        cols.extend(self.lift.iter().map(|r| r.iter().map(|&v| int(v)).collect()));
        let a = transpose(&cols);
        if a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.len() });
        }
        let sol = solve(&a, x).ok_or_else(|| Error::IncompatibleDiscriminant("vector is not orthogonal to ℓ".into()))?;
        Ok(sol[1..].to_vec())
    }

    /// `λ` with `μ ∼ λ`, or `None` when `μ` has no lift orthogonal to `ℓ`.
    pub fn coset_reduce(&self, mu: &Coset) -> Option<Coset> {
        self.reductions.get(mu).map(|(l, _)| l.clone())
    }

    /// A lift of `μ` into `ℓ^⊥`, in lattice coordinates.
    pub fn coset_lift(&self, mu: &Coset) -> Option<&[Rational]> {
        self.reductions.get(mu).map(|(_, x)| x.as_slice())
    }

    /// All `μ ∼ λ`, in coset order.
    pub fn cosets_over(&self, lambda: &Coset) -> Vec<Coset> {
        self.reductions.iter().filter(|(_, (l, _))| l == lambda).map(|(m, _)| m.clone()).collect()
    }

    /// `[μ̃, k]` modulo 1 for a lift `μ̃` of `μ`.
    pub fn phase(&self, mu: &Coset) -> Result<Rational> {
        let x = self.coset_lift(mu).ok_or(Error::NoLift)?;
        let p = self.lattice.bilinear(x, &self.k)?;
        Ok(crate::arith::frac_part(&p))
    }

    /// True when `w` (in `V0` coordinates) has negative norm and lies in the
    /// light cone component of [`CuspData::cone_reference`].
    pub fn in_cone(&self, w: &[Rational]) -> Result<bool> {
        let Some(r) = &self.cone_reference else { return Ok(false) };
        let r: Vec<Rational> = r.iter().map(|&x| int(x)).collect();
        Ok(self.v0.quadratic_value(w)?.is_negative() && self.v0.bilinear(w, &r)?.is_negative())
    }

    /// `[ℓ, ℓ_*]`.
    pub fn pairing_ell_ell_star(&self) -> Rational {
        let ell: Vec<Rational> = self.ell.iter().map(|&x| int(x)).collect();
        self.lattice.bilinear(&ell, &self.ell_star).unwrap_or_else(|_| Rational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::database;

    #[test]
    fn hyperbolic_plane_sum() {
        let l = database::u().direct_sum(&database::u());
        let s = isotropic_line(&l);
        assert_eq!(s.vector, Some(vec![1, 0, 0, 0]));
        let d = cusp_data(&l, &[1, 0, 0, 0]).unwrap();
        assert_eq!(d.n, 1);
        assert_eq!(d.k, vec![int(0), int(1), int(0), int(0)]);
        assert_eq!(d.ell_star, d.k);
        assert_eq!(d.v0.gram(), database::u().gram());
        assert_eq!(d.cone_reference, Some(vec![1, -1]));
        assert_eq!(d.pairing_ell_ell_star(), int(1));
        assert_eq!(d.coset_reduce(&Coset(vec![])), Some(Coset(vec![])));
    }

    #[test]
    fn e8_plus_u() {
        let l = database::e8().direct_sum(&database::u());
        let ell = isotropic_line(&l).vector.unwrap();
        assert_eq!(ell, vec![0, 0, 0, 0, 0, 0, 0, 0, 1, 0]);
        let d = cusp_data(&l, &ell).unwrap();
        assert_eq!(d.v0.gram(), database::e8().gram());
        assert_eq!(d.n, 1);
    }

    #[test]
    fn u_plus_a1() {
        let l = database::u().direct_sum(&database::a1());
        assert_eq!(isotropic_line(&l).vector, Some(vec![1, 0, 0]));
        let d = cusp_data(&l, &[1, 0, 0]).unwrap();
        assert_eq!(d.v0.gram(), &[vec![2]]);
        assert_eq!(d.coset_reduce(&Coset(vec![1])), Some(Coset(vec![1])));
    }

    #[test]
    fn level_two_line() {
        // U(2) ⊕ U: ℓ = e1 pairs to 2Z with L, so N = 2 and k = e2/2
        let l = GramLattice::new(vec![vec![0, 2, 0, 0], vec![2, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]).unwrap();
        let d = cusp_data(&l, &[1, 0, 0, 0]).unwrap();
        assert_eq!(d.n, 2);
        assert_eq!(d.pairing_ell_ell_star(), int(1));
        assert_eq!(l.quadratic_value(&d.ell_star).unwrap(), int(0));
        // e2/2 pairs to 1 with ℓ, so its coset has no lift in ℓ^⊥
        let e2_half = vec![int(0), crate::arith::rat(1, 2), int(0), int(0)];
        let mu = d.form.reduce(&e2_half).unwrap();
        assert_eq!(d.coset_reduce(&mu), None);
        // e1/2 lies in ℓ^⊥ and pairs with k = e2/2 to 1/2
        let e1_half = vec![crate::arith::rat(1, 2), int(0), int(0), int(0)];
        let nu = d.form.reduce(&e1_half).unwrap();
        assert!(d.coset_reduce(&nu).is_some());
        assert_eq!(d.phase(&nu).unwrap(), crate::arith::rat(1, 2));
    }

    #[test]
    fn definite_and_errors() {
        assert_eq!(isotropic_line(&database::e8()), IsotropicSearch { vector: None, complete: true });
        let u = database::u();
        assert!(matches!(cusp_data(&u, &[1, 1]), Err(Error::NotIsotropic)));
        assert!(matches!(cusp_data(&u, &[2, 0]), Err(Error::NotPrimitive)));
    }
}
