use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, Rational};
use crate::borcherds::WHForm;
use crate::database;
use crate::divisor::expr::{DivisorExpr, Symbol};
use crate::error::{Error, Result};
use crate::lattice::{representation_numbers, theta_series, Coset, DiscriminantForm, GramLattice};
use crate::series::{delta_series, divide_by_24delta, FracQSeries};

/// `Σ_{m>0, μ} c(−m, μ) Z(m, μ) − c(0, 0) ω`.
pub fn borcherds_relation(f: &WHForm) -> Result<DivisorExpr> {
    f.require_integral()?;
    let mut d = DivisorExpr::zero();
    for (m, mu, c) in f.series.nonzero_terms() {
        if !m.is_positive() {
            d.add_z(&-m, &mu, &c)?;
        }
    }
    Ok(d)
}

/// Representation numbers `r_Λ(m, μ)` of a positive definite lattice,
/// known for every `m ≤ max_norm`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationNumbers {
    pub form: DiscriminantForm,
    pub max_norm: Rational,
    counts: BTreeMap<Coset, BTreeMap<Rational, BigInt>>,
}

impl RepresentationNumbers {
    /// By enumeration of every coset of `Λ^∨/Λ`.
    pub fn of_lattice(lattice: &GramLattice, max_norm: &Rational) -> Result<Self> {
        let form = DiscriminantForm::of(lattice)?;
        let mut counts = BTreeMap::new();
        for mu in form.elements() {
            let r = representation_numbers(lattice, &mu, max_norm)?;
            counts.insert(mu, r.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect());
        }
        Ok(RepresentationNumbers { form, max_norm: max_norm.clone(), counts })
    }

    /// From the theta series of a unimodular lattice.
    pub fn from_theta(theta: &FracQSeries) -> Self {
        let form = DiscriminantForm::trivial();
        let step = Rational::new(BigInt::one(), BigInt::from(theta.denominator()));
        let max_norm = theta.precision() - step;
        let terms = theta.terms().map(|(m, c)| (m, c.to_integer())).collect();
        let mut counts = BTreeMap::new();
        counts.insert(form.zero(), terms);
        RepresentationNumbers { form, max_norm, counts }
    }

    pub fn get(&self, m: &Rational, mu: &Coset) -> Result<BigInt> {
        if m > &self.max_norm {
            return Err(Error::Precision(format!("r({m}) beyond norm {}", self.max_norm)));
        }
        Ok(self.counts.get(mu).and_then(|r| r.get(m)).cloned().unwrap_or_else(BigInt::zero))
    }

    fn row(&self, mu: &Coset) -> impl Iterator<Item = (&Rational, &BigInt)> {
        self.counts.get(mu).into_iter().flatten()
    }
}

/// Pullback of `Z(m, μ)` on `V ⊕ Λ` to `V`, for `μ = (μ_V, μ_Λ)`:
/// `Σ_{m₁ + m₂ = m} r_Λ(m₂, μ_Λ) Z(m₁, μ_V)`.
pub fn pullback(m: &Rational, mu_v: &Coset, mu_lambda: &Coset, form_v: &DiscriminantForm, reps: &RepresentationNumbers) -> Result<DivisorExpr> {
    if m.is_negative() {
        return Err(Error::InvalidInput(format!("Z({m}, ·) has negative index")));
    }
    if !form_v.contains(mu_v) {
        return Err(Error::IncompatibleDiscriminant(format!("{mu_v} is not a coset of D(V)")));
    }
    if !reps.form.contains(mu_lambda) {
        return Err(Error::IncompatibleDiscriminant(format!("{mu_lambda} is not a coset of D(Λ)")));
    }
    if m > &reps.max_norm {
        return Err(Error::Precision(format!("representation numbers known up to {}, {m} needed", reps.max_norm)));
    }
    let mut d = DivisorExpr::zero();
    for (m2, r) in reps.row(mu_lambda) {
        if m2 <= m {
            d.add_z(&(m - m2), mu_v, &Rational::from_integer(r.clone()))?;
        }
    }
    Ok(d)
}

/// Pulls back a relation on `V ⊕ Λ` for unimodular `Λ`, symbol by symbol.
fn pullback_relation(rel: &DivisorExpr, form_v: &DiscriminantForm, reps: &RepresentationNumbers) -> Result<DivisorExpr> {
    let zero = reps.form.zero();
    let mut out = DivisorExpr::zero();
    for (s, c) in rel.terms() {
        let image = match s {
            Symbol::Omega => DivisorExpr::omega(),
            Symbol::Z { m, mu } => pullback(m, mu, &zero, form_v, reps)?,
        };
        out = out.add(&image.scale(c));
    }
    Ok(out)
}

/// The two Niemeier lattices with `θ^[2] − θ^[1] = 24Δ`.
#[derive(Debug, Clone)]
pub struct EmbeddingData {
    pub lambda1: GramLattice,
    pub lambda2: GramLattice,
    pub theta1: FracQSeries,
    pub theta2: FracQSeries,
    pub r1: RepresentationNumbers,
    pub r2: RepresentationNumbers,
}

impl EmbeddingData {
    /// `Λ^[1] = Niemeier(A1^24)`, `Λ^[2] = Niemeier(A2^12)`, theta series through `q^precision`.
    pub fn new(precision: i64) -> Result<Self> {
        Self::from_lattices(database::niemeier_a1(), database::niemeier_a2(), precision)
    }

    pub fn from_lattices(lambda1: GramLattice, lambda2: GramLattice, precision: i64) -> Result<Self> {
        for l in [&lambda1, &lambda2] {
            if !DiscriminantForm::of(l)?.is_trivial() {
                return Err(Error::ThetaTrick("lattices must be unimodular".into()));
            }
        }
        let theta1 = theta_series(&lambda1, precision)?;
        let theta2 = theta_series(&lambda2, precision)?;
        let diff = theta2.sub(&theta1);
        let target = delta_series(precision + 1).scale(&int(24)).truncate(&diff.precision());
        if diff != target {
            return Err(Error::ThetaTrick(format!("θ^[2] − θ^[1] ≠ 24Δ below q^{}", diff.precision())));
        }
        Ok(EmbeddingData {
            r1: RepresentationNumbers::from_theta(&theta1),
            r2: RepresentationNumbers::from_theta(&theta2),
            lambda1,
            lambda2,
            theta1,
            theta2,
        })
    }
}

/// `f^[i] = f / (24Δ)`, required to be integral.
pub fn split_form(f: &WHForm) -> Result<WHForm> {
    let g = divide_by_24delta(&f.series);
    if !g.is_integral() {
        return Err(Error::NonIntegral("f/(24Δ) has non-integral coefficients; scale f by 24".into()));
    }
    Ok(WHForm::new(f.form.clone(), &f.weight - int(12), g))
}

/// The relation for `f` obtained from the relations of `f/(24Δ)` on
/// `V ⊕ Λ^[i]`: `pullback₂ − pullback₁`.
pub fn embedding_trick(f: &WHForm, e: &EmbeddingData) -> Result<DivisorExpr> {
    f.require_integral()?;
    let g = split_form(f)?;
    if !g.precision().is_positive() {
        return Err(Error::Precision("f/(24Δ) must be known through q^0".into()));
    }
    let rel = borcherds_relation(&g)?;
    let depth = rel.max_index().unwrap_or_else(<Rational as Zero>::zero);
    for r in [&e.r1, &e.r2] {
        if depth > r.max_norm {
            return Err(Error::Precision(format!("theta series known up to q^{}, q^{depth} needed", r.max_norm)));
        }
    }
    let p1 = pullback_relation(&rel, &f.form, &e.r1)?;
    let p2 = pullback_relation(&rel, &f.form, &e.r2)?;
    Ok(p2.sub(&p1))
}

/// Values a modularity pairing can take.
pub trait PairingValue: Clone {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl PairingValue for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl PairingValue for DivisorExpr {
    fn zero() -> Self {
        DivisorExpr::zero()
    }
    fn add(&self, other: &Self) -> Self {
        DivisorExpr::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        DivisorExpr::scale(self, c)
    }
}

/// `Σ_{m≥0, μ} c(−m, μ) a(m, μ)`.
pub fn modularity_pairing<V: PairingValue>(f: &WHForm, a: impl Fn(&Rational, &Coset) -> Option<V>) -> Result<V> {
    let mut acc = V::zero();
    for (m, mu, c) in f.series.nonzero_terms() {
        if m.is_positive() {
            continue;
        }
        let m = -m;
        let v = a(&m, &mu).ok_or_else(|| Error::MissingValue(format!("a({m}, {mu})")))?;
        acc = acc.add(&v.scale(&c));
    }
    Ok(acc)
}

/// `a(m, μ) = Z(m, μ)`.
pub fn symbol_values(m: &Rational, mu: &Coset) -> Option<DivisorExpr> {
    DivisorExpr::z(m, mu).ok()
}

/// Row-reduced basis of a span of relations.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RelationIdeal {
    /// Each row has leading symbol coefficient 1, absent from all other rows.
    rows: Vec<DivisorExpr>,
}

fn leading(d: &DivisorExpr) -> Option<(&Symbol, &Rational)> {
    d.terms().iter().next()
}

impl RelationIdeal {
    pub fn new() -> Self {
        RelationIdeal::default()
    }

    pub fn basis(&self) -> &[DivisorExpr] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `d` after eliminating every pivot symbol.
    pub fn reduce(&self, d: &DivisorExpr) -> DivisorExpr {
        let mut r = d.clone();
        for row in &self.rows {
            let (s, _) = leading(row).expect("rows are nonzero");
            let c = r.coefficient(s);
            if !c.is_zero() {
                r = r.sub(&row.scale(&c));
            }
        }
        r
    }

    pub fn contains(&self, d: &DivisorExpr) -> bool {
        self.reduce(d).is_zero()
    }

    pub fn insert(&mut self, d: &DivisorExpr) {
        let r = self.reduce(d);
        let Some((s, c)) = leading(&r) else { return };
        let s = s.clone();
        let row = r.scale(&(Rational::one() / c));
        for other in &mut self.rows {
            let c = other.coefficient(&s);
            if !c.is_zero() {
                *other = other.sub(&row.scale(&c));
            }
        }
        self.rows.push(row);
        self.rows.sort_by(|a, b| leading(a).map(|x| x.0).cmp(&leading(b).map(|x| x.0)));
    }
}

/// The span of `borcherds_relation(f)` over `forms`.
pub fn relation_ideal(forms: &[WHForm]) -> Result<RelationIdeal> {
    let mut ideal = RelationIdeal::new();
    for f in forms {
        ideal.insert(&borcherds_relation(f)?);
    }
    Ok(ideal)
}
