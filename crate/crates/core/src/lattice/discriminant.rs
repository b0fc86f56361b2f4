//! The discriminant form `L^∨ / L` of an even lattice, presented through the
//! Smith normal form of the Gram matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    common_denominator, frac_part, hermite_rows, int, inverse, is_integer, mat_vec, smith_normal_form,
    Rational, RatMatrix,
};
use crate::error::{Error, Result};
use crate::lattice::GramLattice;

/// An element of `L^∨ / L`, as coordinates modulo the invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coset(pub Vec<i64>);

impl Coset {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantForm {
    invariant_factors: Vec<i64>,
    /// Dual vectors (lattice coordinates) generating each cyclic factor.
    generators: Vec<Vec<Rational>>,
    /// Rows of the Smith transform `P` for the nontrivial factors.
    reduction: Vec<Vec<BigInt>>,
    gram: RatMatrix,
    signature_mod8: i64,
}

impl DiscriminantForm {
    pub fn of(lattice: &GramLattice) -> Result<Self> {
        let n = lattice.rank();
        let gram = lattice.gram_rat();
        if n == 0 {
            return Ok(Self::trivial());
        }
        let g: Vec<Vec<BigInt>> = lattice.gram().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let snf = smith_normal_form(&g);
        if snf.diag.iter().any(|d| d.is_zero()) {
            return Err(Error::SingularGram);
        }
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        let mut reduction = Vec::new();
        for (i, d) in snf.diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let d64 = d.to_i64().ok_or_else(|| Error::InvalidGram("invariant factor too large".into()))?;
            invariant_factors.push(d64);
            generators.push((0..n).map(|r| Rational::new(snf.q[r][i].clone(), d.clone())).collect());
            reduction.push(snf.p[i].clone());
        }
        Ok(DiscriminantForm {
            invariant_factors,
            generators,
            reduction,
            gram,
            signature_mod8: lattice.signature_mod8(),
        })
    }

    pub fn trivial() -> Self {
        DiscriminantForm {
            invariant_factors: Vec::new(),
            generators: Vec::new(),
            reduction: Vec::new(),
            gram: Vec::new(),
            signature_mod8: 0,
        }
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn signature_mod8(&self) -> i64 {
        self.signature_mod8
    }

    /// Ambient lattice rank.
    pub fn lattice_rank(&self) -> usize {
        self.gram.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().map(|&d| d as u64).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn zero(&self) -> Coset {
        Coset(vec![0; self.invariant_factors.len()])
    }

    /// All elements in lexicographic order of their coordinates.
    pub fn elements(&self) -> Vec<Coset> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Coset).collect()
    }

    fn normalize(&self, coords: impl IntoIterator<Item = i64>) -> Coset {
        Coset(coords.into_iter().zip(&self.invariant_factors).map(|(a, &d)| a.rem_euclid(d)).collect())
    }

    pub fn contains(&self, mu: &Coset) -> bool {
        mu.0.len() == self.invariant_factors.len()
            && mu.0.iter().zip(&self.invariant_factors).all(|(&a, &d)| (0..d).contains(&a))
    }

    pub fn add(&self, a: &Coset, b: &Coset) -> Coset {
        self.normalize(a.0.iter().zip(&b.0).map(|(x, y)| x + y))
    }

    pub fn neg(&self, a: &Coset) -> Coset {
        self.normalize(a.0.iter().map(|x| -x))
    }

    pub fn scale(&self, k: i64, a: &Coset) -> Coset {
        Coset(
            a.0.iter()
                .zip(&self.invariant_factors)
                .map(|(&x, &d)| (x as i128 * k as i128).rem_euclid(d as i128) as i64)
                .collect(),
        )
    }

    /// A dual-lattice vector in the coset.
    pub fn representative(&self, mu: &Coset) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.lattice_rank()];
        for (a, g) in mu.0.iter().zip(&self.generators) {
            for (x, y) in v.iter_mut().zip(g) {
                *x += y * int(*a);
            }
        }
        v
    }

    /// Coset of a dual-lattice vector given in lattice coordinates.
    pub fn reduce(&self, x: &[Rational]) -> Result<Coset> {
        if x.len() != self.lattice_rank() {
            return Err(Error::DimensionMismatch { expected: self.lattice_rank(), found: x.len() });
        }
        let y = mat_vec(&self.gram, x);
        if !y.iter().all(is_integer) {
            return Err(Error::IncompatibleDiscriminant("vector is not in the dual lattice".into()));
        }
        let y: Vec<BigInt> = y.into_iter().map(|r| r.to_integer()).collect();
        Ok(self.normalize(self.reduction.iter().zip(&self.invariant_factors).map(|(row, &d)| {
            let s: BigInt = row.iter().zip(&y).map(|(a, b)| a * b).sum();
            s.mod_floor(&BigInt::from(d)).to_i64().unwrap()
        })))
    }

    /// `Q(μ)` modulo 1, in `[0, 1)`.
    pub fn q(&self, mu: &Coset) -> Rational {
        let x = self.representative(mu);
        let gx = mat_vec(&self.gram, &x);
        let v: Rational = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
        frac_part(&(v / int(2)))
    }

    /// `[μ, ν]` modulo 1, in `[0, 1)`.
    pub fn b(&self, mu: &Coset, nu: &Coset) -> Rational {
        let x = self.representative(mu);
        let y = self.representative(nu);
        let gy = mat_vec(&self.gram, &y);
        frac_part(&x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    /// Least `N` with `N·Q(μ) ∈ Z` for all `μ`.
    pub fn level(&self) -> i64 {
        self.elements()
            .iter()
            .fold(BigInt::one(), |acc, mu| acc.lcm(self.q(mu).denom()))
            .to_i64()
            .unwrap_or(1)
    }

    /// Nonzero isotropic element, if any (the form is then not anisotropic).
    pub fn isotropic_element(&self) -> Option<Coset> {
        self.elements().into_iter().find(|mu| !mu.is_zero() && self.q(mu).is_zero())
    }
}

/// A proper even overlattice `L + Z·v` proving a lattice is not maximal.
#[derive(Debug, Clone)]
pub struct OverlatticeWitness {
    /// Isotropic coset generating the extension.
    pub coset: Coset,
    /// Basis of the overlattice in the original lattice's coordinates.
    pub basis: Vec<Vec<Rational>>,
    /// Gram matrix of the overlattice in that basis.
    pub lattice: GramLattice,
    pub index: u64,
}

impl OverlatticeWitness {
    /// Re-derives the Gram matrix and index from the basis.
    pub fn verify(&self, original: &GramLattice) -> bool {
        let n = original.rank();
        if self.basis.len() != n {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                let Ok(b) = original.bilinear(&self.basis[i], &self.basis[j]) else { return false };
                if b != int(self.lattice.gram()[i][j]) {
                    return false;
                }
            }
        }
        // original basis vectors must lie in the overlattice
        let Some(inv) = inverse(&self.basis.iter().map(|r| r.to_vec()).collect::<Vec<_>>()) else {
            return false;
        };
        let contains_original = (0..n).all(|i| inv[i].iter().all(is_integer));
        let index = original.determinant() / self.lattice.determinant();
        contains_original && index == BigInt::from(self.index * self.index) && self.index > 1
    }
}

/// Maximality of an even lattice: its discriminant form has no nonzero isotropic element.
pub fn is_maximal(lattice: &GramLattice) -> Result<bool> {
    Ok(DiscriminantForm::of(lattice)?.isotropic_element().is_none())
}

/// Overlattice witness for a non-maximal lattice, `None` when maximal.
pub fn overlattice_witness(lattice: &GramLattice) -> Result<Option<OverlatticeWitness>> {
    let d = DiscriminantForm::of(lattice)?;
    let Some(mu) = d.isotropic_element() else { return Ok(None) };
    let v = d.representative(&mu);
    let n = lattice.rank();
    let den = common_denominator(&v);
    let mut gens: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect())
        .collect();
    gens.push(v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect());
    let basis: Vec<Vec<Rational>> = hermite_rows(&gens)
        .into_iter()
        .map(|r| r.into_iter().map(|x| Rational::new(x, den.clone())).collect())
        .collect();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let b = lattice.bilinear(&basis[i], &basis[j])?;
            if !is_integer(&b) {
                return Err(Error::InvalidGram("overlattice is not integral".into()));
            }
            gram[i][j] = b.to_integer().to_i64().unwrap();
        }
    }
    let over = GramLattice::new(gram)?;
    // order of μ is the index of the extension
    let mut index = 1u64;
    let mut acc = mu.clone();
    while !acc.is_zero() {
        acc = d.add(&acc, &mu);
        index += 1;
    }
    Ok(Some(OverlatticeWitness { coset: mu, basis, lattice: over, index }))
}
