use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{determinant, dot, int, mat_vec, Rational, RatMatrix};
use crate::error::{Error, Result};
use crate::lattice::glue::GlueData;

/// An even integral lattice `Zⁿ` with quadratic form `Q(x) = ½ xᵀ G x`.
///
/// The bilinear form is `[x, y] = Q(x + y) − Q(x) − Q(y) = xᵀ G y`, so the
/// diagonal of `G` is even and `Q` is integer valued on `Zⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    name: Option<String>,
    gram: Vec<Vec<i64>>,
    glue: Option<Box<GlueData>>,
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGram(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if row[i] % 2 != 0 {
                return Err(Error::InvalidGram(format!("diagonal entry {i} is odd")));
            }
            for (j, &x) in row.iter().enumerate() {
                if gram[j][i] != x {
                    return Err(Error::InvalidGram(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        let lattice = GramLattice { name: None, gram, glue: None };
        if lattice.determinant().is_zero() {
            return Err(Error::SingularGram);
        }
        Ok(lattice)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub(crate) fn with_glue(mut self, glue: GlueData) -> Self {
        self.glue = Some(Box::new(glue));
        self
    }

    /// The zero lattice.
    pub fn zero() -> Self {
        GramLattice { name: Some("0".into()), gram: Vec::new(), glue: None }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Glue description when the lattice was built as an overlattice of root blocks.
    pub fn glue(&self) -> Option<&GlueData> {
        self.glue.as_deref()
    }

    pub fn gram_rat(&self) -> RatMatrix {
        self.gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    fn check_dim(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: x.len() });
        }
        Ok(())
    }

    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(dot(x, &mat_vec(&self.gram_rat(), y)))
    }

    pub fn quadratic_value(&self, x: &[Rational]) -> Result<Rational> {
        Ok(self.bilinear(x, x)? / int(2))
    }

    /// `xᵀ G` for integer `x`, the functional `[x, ·]`.
    pub fn pairing_row(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.rank())
            .map(|j| x.iter().zip(&self.gram).map(|(a, row)| a * row[j]).sum())
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.gram_rat()).to_integer()
    }

    /// `(positive, negative)` index of inertia.
    pub fn signature(&self) -> (usize, usize) {
        let (mut pos, mut neg) = (0, 0);
        for d in congruence_diagonal(&self.gram_rat()) {
            if d.is_positive() {
                pos += 1;
            } else if d.is_negative() {
                neg += 1;
            }
        }
        (pos, neg)
    }

    pub fn signature_mod8(&self) -> i64 {
        let (p, q) = self.signature();
        (p as i64 - q as i64).rem_euclid(8)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature() == (self.rank(), 0)
    }

    /// Orthogonal direct sum; glue data is dropped.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            gram[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            gram[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        let name = match (self.name(), other.name()) {
            (Some(x), Some(y)) => Some(format!("{x}+{y}")),
            _ => None,
        };
        GramLattice { name, gram, glue: None }
    }
}

/// Diagonal entries of a congruence diagonalization `Pᵀ A P` of a symmetric
/// rational matrix; zero entries correspond to the radical.
pub fn congruence_diagonal(m: &RatMatrix) -> Vec<Rational> {
    let n = m.len();
    let mut a = m.clone();
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for r in a.iter_mut() {
                    r.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // replace e_k by e_k + e_j, making the pivot 2 a_kj
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][k] += t;
                }
            } else {
                out.push(Rational::zero());
                k += 1;
                continue;
            }
        }
        let pivot = a[k][k].clone();
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in k..n {
                let t = &f * &a[k][c];
                a[r][c] -= t;
            }
            for c in k + 1..n {
                a[c][r] = a[r][c].clone();
            }
            a[k][r] = Rational::zero();
        }
        out.push(pivot);
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn lat(g: &[&[i64]]) -> GramLattice {
        GramLattice::new(g.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rejects_bad_grams() {
        assert!(matches!(GramLattice::new(vec![vec![1]]), Err(Error::InvalidGram(_))));
        assert!(matches!(GramLattice::new(vec![vec![2, 1], vec![0, 2]]), Err(Error::InvalidGram(_))));
        assert_eq!(GramLattice::new(vec![vec![2, 2], vec![2, 2]]), Err(Error::SingularGram));
    }

    #[test]
    fn quadratic_values() {
        let a1 = lat(&[&[2]]);
        assert_eq!(a1.quadratic_value(&[int(1)]).unwrap(), int(1));
        assert_eq!(a1.quadratic_value(&[rat(1, 2)]).unwrap(), rat(1, 4));
        assert_eq!(a1.quadratic_value(&[int(0)]).unwrap(), int(0));
        assert!(matches!(a1.quadratic_value(&[int(1), int(2)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn signatures() {
        let u = lat(&[&[0, 1], &[1, 0]]);
        assert_eq!(u.signature(), (1, 1));
        assert_eq!(u.direct_sum(&u).signature(), (2, 2));
        let a2 = lat(&[&[2, -1], &[-1, 2]]);
        assert!(a2.is_positive_definite());
        assert_eq!(a2.signature_mod8(), 2);
        assert_eq!(lat(&[&[-2]]).signature_mod8(), 7);
        assert_eq!(GramLattice::zero().signature(), (0, 0));
        assert_eq!(GramLattice::zero().determinant(), BigInt::from(1));
    }
}
