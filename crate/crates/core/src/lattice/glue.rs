//! Overlattices of orthogonal sums of blocks, glued along an isotropic code.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{common_denominator, hermite_rows, is_integer, Rational};
use crate::error::{Error, Result};
use crate::lattice::{Coset, DiscriminantForm, GramLattice};

/// A glue code: one coset per block for every generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueData {
    pub blocks: Vec<GramLattice>,
    pub code_generators: Vec<Vec<Coset>>,
}

/// A word of the product group `∏ D(blockᵢ)`.
pub type GlueWord = Vec<Coset>;

impl GlueData {
    pub fn forms(&self) -> Result<Vec<DiscriminantForm>> {
        self.blocks.iter().map(DiscriminantForm::of).collect()
    }

    /// Every codeword of the subgroup spanned by the generators, sorted.
    pub fn codewords(&self) -> Result<Vec<GlueWord>> {
        let forms = self.forms()?;
        span(&forms, &self.code_generators)
    }

    /// Orthogonal sum of the blocks.
    pub fn ambient(&self) -> GramLattice {
        self.blocks.iter().fold(GramLattice::zero(), |acc, b| acc.direct_sum(b))
    }
}

fn word_add(forms: &[DiscriminantForm], a: &GlueWord, b: &GlueWord) -> GlueWord {
    forms.iter().zip(a.iter().zip(b)).map(|(d, (x, y))| d.add(x, y)).collect()
}

fn word_q(forms: &[DiscriminantForm], a: &GlueWord) -> Rational {
    forms.iter().zip(a).map(|(d, x)| d.q(x)).sum()
}

fn word_b(forms: &[DiscriminantForm], a: &GlueWord, b: &GlueWord) -> Rational {
    forms.iter().zip(a.iter().zip(b)).map(|(d, (x, y))| d.b(x, y)).sum()
}

fn validate(forms: &[DiscriminantForm], words: &[GlueWord]) -> Result<()> {
    for (k, w) in words.iter().enumerate() {
        if w.len() != forms.len() {
            return Err(Error::InvalidGlue(format!("word {k} has {} entries for {} blocks", w.len(), forms.len())));
        }
        for (i, (d, mu)) in forms.iter().zip(w).enumerate() {
            if !d.contains(mu) {
                return Err(Error::InvalidGlue(format!("word {k}, block {i}: {mu} is not a coset")));
            }
        }
    }
    Ok(())
}

/// Subgroup spanned by `generators`, by closure under addition.
fn span(forms: &[DiscriminantForm], generators: &[GlueWord]) -> Result<Vec<GlueWord>> {
    validate(forms, generators)?;
    let zero: GlueWord = forms.iter().map(DiscriminantForm::zero).collect();
    let mut words: BTreeSet<GlueWord> = BTreeSet::from([zero]);
    for g in generators {
        if words.contains(g) {
            continue;
        }
        // adjoin multiples of g to every existing word
        let mut multiples = vec![g.clone()];
        loop {
            let next = word_add(forms, multiples.last().unwrap(), g);
            if words.contains(&next) || multiples.contains(&next) {
                break;
            }
            multiples.push(next);
        }
        let existing: Vec<GlueWord> = words.iter().cloned().collect();
        for w in &existing {
            for m in &multiples {
                words.insert(word_add(forms, w, m));
            }
        }
    }
    Ok(words.into_iter().collect())
}

/// The overlattice of `⊕ blocks` generated by lifts of the code.
///
/// Errors when a generator is not a tuple of cosets or the code is not
/// isotropic for the total discriminant quadratic form.
pub fn glue_lattice(blocks: Vec<GramLattice>, code_generators: Vec<GlueWord>) -> Result<GramLattice> {
    let glue = GlueData { blocks, code_generators };
    let forms = glue.forms()?;
    validate(&forms, &glue.code_generators)?;
    for (i, a) in glue.code_generators.iter().enumerate() {
        if !word_q(&forms, a).is_integer() {
            return Err(Error::InvalidGlue(format!("generator {i} is not isotropic")));
        }
        for (j, b) in glue.code_generators.iter().enumerate().skip(i + 1) {
            if !word_b(&forms, a, b).is_integer() {
                return Err(Error::InvalidGlue(format!("generators {i} and {j} are not orthogonal")));
            }
        }
    }
    let code_size = span(&forms, &glue.code_generators)?.len() as u64;
    let ambient = glue.ambient();
    let n = ambient.rank();

    let lifts: Vec<Vec<Rational>> = glue
        .code_generators
        .iter()
        .map(|w| forms.iter().zip(w).flat_map(|(d, mu)| d.representative(mu)).collect())
        .collect();
    let den = lifts.iter().fold(BigInt::from(1), |acc, v| num_integer::lcm(acc, common_denominator(v)));
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect())
        .collect();
    for v in &lifts {
        rows.push(v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect());
    }
    let basis: Vec<Vec<Rational>> = hermite_rows(&rows)
        .into_iter()
        .map(|r| r.into_iter().map(|x| Rational::new(x, den.clone())).collect())
        .collect();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let b = ambient.bilinear(&basis[i], &basis[j])?;
            if !is_integer(&b) {
                return Err(Error::InvalidGlue("glued lattice is not integral".into()));
            }
            gram[i][j] = b.to_integer().to_i64().ok_or_else(|| Error::InvalidGram("entry too large".into()))?;
        }
    }
    let lattice = GramLattice::new(gram).map_err(|e| Error::InvalidGlue(format!("glued lattice is not even: {e}")))?;
    let expected = forms.iter().map(|d| d.order()).product::<u64>() / (code_size * code_size);
    if lattice.determinant().abs() != BigInt::from(expected) {
        return Err(Error::InvalidGlue(format!("determinant {} differs from expected {expected}", lattice.determinant())));
    }
    Ok(lattice.with_glue(glue))
}

/// Like [`glue_lattice`], but takes the full code and checks it is a subgroup.
pub fn glue_lattice_from_words(blocks: Vec<GramLattice>, words: Vec<GlueWord>) -> Result<GramLattice> {
    let forms: Vec<DiscriminantForm> = blocks.iter().map(DiscriminantForm::of).collect::<Result<_>>()?;
    validate(&forms, &words)?;
    let set: BTreeSet<&GlueWord> = words.iter().collect();
    let zero: GlueWord = forms.iter().map(DiscriminantForm::zero).collect();
    if !set.contains(&zero) {
        return Err(Error::InvalidGlue("code does not contain zero".into()));
    }
    for a in &words {
        for b in &words {
            if !set.contains(&word_add(&forms, a, b)) {
                return Err(Error::InvalidGlue("code is not closed under addition".into()));
            }
        }
    }
    glue_lattice(blocks, words)
}

/// Glue words from a matrix over `Z/d` for blocks with cyclic discriminant.
pub fn cyclic_words(rows: &[Vec<i64>]) -> Vec<GlueWord> {
    rows.iter().map(|r| r.iter().map(|&x| Coset(vec![x])).collect()).collect()
}
