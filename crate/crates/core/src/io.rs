//! JSON files for lattices, forms and series, each tagged with [`HEADER`].

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::borcherds::WHForm;
use crate::error::{Error, Result};
use crate::lattice::{glue_lattice, Coset, DiscriminantForm, GramLattice};
use crate::series::{FracQSeries, VectorQSeries};

pub const HEADER: &str = "borcherds-kit v1";

/// An integer written as a JSON number when it fits `i64`, else as a string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Small(i64),
    Big(String),
}

impl Num {
    fn of(n: &BigInt) -> Self {
        i64::try_from(n).map(Num::Small).unwrap_or_else(|_| Num::Big(n.to_string()))
    }

    fn value(&self) -> Result<BigInt> {
        match self {
            Num::Small(v) => Ok(BigInt::from(*v)),
            Num::Big(s) => s.parse().map_err(|_| schema(format!("`{s}` is not an integer"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesData {
    denominator: i64,
    /// `[exponent · denominator, numerator, denominator]`
    terms: Vec<(i64, Num, Num)>,
    /// Exclusive bound, in units of `1/denominator`.
    precision: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    gram: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlueFileData {
    blocks: Vec<BlockData>,
    /// One coset tuple per code generator.
    code: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    header: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    glue: Option<GlueFileData>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentData {
    coset: Vec<i64>,
    series: SeriesData,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    header: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    /// Gram matrix of the lattice carrying the discriminant form.
    gram: Vec<Vec<i64>>,
    weight: String,
    precision: String,
    components: Vec<ComponentData>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesFile {
    header: String,
    series: SeriesData,
}

fn schema(message: String) -> Error {
    Error::Parse { line: 1, column: 1, message }
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

fn check_header(h: &str) -> Result<()> {
    if h == HEADER {
        Ok(())
    } else {
        Err(schema(format!("expected header `{HEADER}`, found `{h}`")))
    }
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file data serializes");
    s.push('\n');
    s
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse().map_err(|_| schema(format!("`{s}` is not a rational number")))
}

fn series_data(s: &FracQSeries) -> SeriesData {
    SeriesData {
        denominator: s.denominator(),
        terms: s.raw_terms().iter().map(|(e, c)| (*e, Num::of(c.numer()), Num::of(c.denom()))).collect(),
        precision: s.precision_numerator(),
    }
}

fn series_value(d: &SeriesData) -> Result<FracQSeries> {
    if d.denominator <= 0 {
        return Err(schema("series denominator must be positive".into()));
    }
    let mut terms = Vec::with_capacity(d.terms.len());
    for (e, n, q) in &d.terms {
        let q = q.value()?;
        if q == BigInt::from(0) {
            return Err(schema("coefficient with zero denominator".into()));
        }
        terms.push((*e, Rational::new(n.value()?, q)));
    }
    Ok(FracQSeries::from_terms(d.denominator, terms, d.precision))
}

pub fn lattice_to_json(l: &GramLattice) -> String {
    let glue = l.glue().map(|g| GlueFileData {
        blocks: g.blocks.iter().map(|b| BlockData { name: b.name().map(str::to_string), gram: b.gram().to_vec() }).collect(),
        code: g.code_generators.iter().map(|w| w.iter().map(|c| c.0.clone()).collect()).collect(),
    });
    render(&LatticeFile { header: HEADER.into(), name: l.name().map(str::to_string), gram: l.gram().to_vec(), glue })
}

pub fn lattice_from_json(text: &str) -> Result<GramLattice> {
    let f: LatticeFile = parse(text)?;
    check_header(&f.header)?;
    let mut l = match f.glue {
        None => GramLattice::new(f.gram)?,
        Some(g) => {
            let mut blocks = Vec::new();
            for b in g.blocks {
                let block = GramLattice::new(b.gram)?;
                blocks.push(match b.name {
                    Some(n) => block.named(n),
                    None => block,
                });
            }
            let code = g.code.into_iter().map(|w| w.into_iter().map(Coset).collect()).collect();
            let l = glue_lattice(blocks, code)?;
            if l.gram() != f.gram.as_slice() {
                return Err(Error::InvalidGlue("stored Gram matrix differs from the glued lattice".into()));
            }
            l
        }
    };
    if let Some(n) = f.name {
        l = l.named(n);
    }
    Ok(l)
}

/// A form together with the lattice whose discriminant form it lives on.
pub fn form_to_json(lattice: &GramLattice, f: &WHForm, name: Option<&str>) -> String {
    let components = f
        .series
        .components()
        .map(|(mu, s)| ComponentData { coset: mu.0.clone(), series: series_data(s) })
        .collect();
    render(&FormFile {
        header: HEADER.into(),
        name: name.map(str::to_string),
        gram: lattice.gram().to_vec(),
        weight: f.weight.to_string(),
        precision: f.precision().to_string(),
        components,
    })
}

pub fn form_from_json(text: &str) -> Result<(GramLattice, WHForm)> {
    let f: FormFile = parse(text)?;
    check_header(&f.header)?;
    let lattice = GramLattice::new(f.gram)?;
    let lattice = match f.name {
        Some(n) => lattice.named(n),
        None => lattice,
    };
    let form = DiscriminantForm::of(&lattice)?;
    let mut series = VectorQSeries::new(parse_rational(&f.precision)?);
    for c in f.components {
        let mu = Coset(c.coset);
        if !form.contains(&mu) {
            return Err(schema(format!("{mu} is not a reduced coset of the discriminant form")));
        }
        series.insert(mu, series_value(&c.series)?);
    }
    Ok((lattice, WHForm::new(form, parse_rational(&f.weight)?, series)))
}

pub fn series_to_json(s: &FracQSeries) -> String {
    render(&SeriesFile { header: HEADER.into(), series: series_data(s) })
}

pub fn series_from_json(text: &str) -> Result<FracQSeries> {
    let f: SeriesFile = parse(text)?;
    check_header(&f.header)?;
    series_value(&f.series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::database;

    #[test]
    fn lattice_round_trip() {
        for l in [database::e8(), database::u(), database::niemeier_a2()] {
            let text = lattice_to_json(&l);
            assert_eq!(lattice_from_json(&text).unwrap(), l);
            assert_eq!(lattice_to_json(&lattice_from_json(&text).unwrap()), text);
        }
    }

    #[test]
    fn form_round_trip() {
        for name in database::FORM_NAMES {
            let (l, f) = database::form(name, 5).unwrap();
            let text = form_to_json(&l, &f, Some(name));
            let (l2, f2) = form_from_json(&text).unwrap();
            assert_eq!(f2, f);
            assert_eq!(form_to_json(&l2, &f2, Some(name)), text);
        }
    }

    #[test]
    fn series_round_trip_with_large_coefficients() {
        let s = crate::series::j_series(12).scale(&Rational::new(1.into(), 7.into()));
        let text = series_to_json(&s);
        assert!(text.contains('"'));
        assert_eq!(series_from_json(&text).unwrap(), s);
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = lattice_from_json("{\n  \"header\": \"borcherds-kit v1\",\n  \"gram\": [[2,]]\n}").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = lattice_from_json("{\"header\": \"v0\", \"gram\": [[2]]}").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        assert!(lattice_from_json("{\"header\": \"borcherds-kit v1\", \"gram\": [[1]]}").is_err());
    }
}
