//! One function per subcommand, each returning its report.

use std::fmt::Write;

use borcherds_core::arith::{int, Rational};
use borcherds_core::borcherds::{chamber_of, product_expand, reduce_f0, WHForm};
use borcherds_core::database;
use borcherds_core::divisor::{
    borcherds_relation, embedding_trick, modularity_pairing, relation_ideal, symbol_values, DivisorExpr, EmbeddingData,
};
use borcherds_core::io;
use borcherds_core::lattice::{cusp_data, is_maximal, isotropic_line, overlattice_witness, theta_series, DiscriminantForm};
use borcherds_core::series::{delta_series, eisenstein, j_series};
use borcherds_core::Error;

use crate::files::{load_form, load_lattice, load_series, Failure};

fn tuple<T: std::fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn parse_coords(text: &str, what: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(|_| Failure::Usage(format!("{what}: `{s}` is not a rational number"))))
        .collect()
}

fn parse_integer_coords(text: &str, what: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("{what}: `{s}` is not an integer"))))
        .collect()
}

fn scaled(f: WHForm, scale: i64) -> WHForm {
    if scale == 1 {
        f
    } else {
        f.scale(&int(scale))
    }
}

pub fn lattice_info(name: &str) -> Result<String, Failure> {
    let l = load_lattice(name)?;
    let d = DiscriminantForm::of(&l)?;
    let (p, q) = l.signature();
    let mut r = String::new();
    writeln!(r, "name: {}", l.name().unwrap_or("-")).unwrap();
    writeln!(r, "rank: {}", l.rank()).unwrap();
    writeln!(r, "signature: ({p}, {q})").unwrap();
    writeln!(r, "det: {}", l.determinant()).unwrap();
    let factors: Vec<String> = d.invariant_factors().iter().map(|n| format!("Z/{n}")).collect();
    writeln!(r, "discriminant group: {}", if factors.is_empty() { "trivial".into() } else { factors.join(" + ") }).unwrap();
    writeln!(r, "discriminant order: {}", d.order()).unwrap();
    writeln!(r, "level: {}", d.level()).unwrap();
    writeln!(r, "maximal: {}", is_maximal(&l)?).unwrap();
    if let Some(w) = overlattice_witness(&l)? {
        writeln!(r, "overlattice coset: {}", w.coset).unwrap();
        writeln!(r, "overlattice index: {}", w.index).unwrap();
        writeln!(r, "overlattice gram: {:?}", w.lattice.gram()).unwrap();
    }
    if p > 0 && q > 0 {
        let s = isotropic_line(&l);
        match (s.vector, s.complete) {
            (Some(v), _) => writeln!(r, "isotropic vector: {}", tuple(&v)).unwrap(),
            (None, true) => writeln!(r, "isotropic vector: none").unwrap(),
            (None, false) => writeln!(r, "isotropic vector: not found within the search bound").unwrap(),
        }
    }
    if let Some(g) = l.glue() {
        writeln!(r, "glue blocks: {}", g.blocks.len()).unwrap();
        writeln!(r, "glue codewords: {}", g.codewords()?.len()).unwrap();
    }
    Ok(r)
}

pub fn lattice_export(name: &str) -> Result<String, Failure> {
    let l = database::lattice(name).ok_or_else(|| {
        Failure::Usage(format!("unknown lattice `{name}`; known: U, A1, A2, E8, niemeier-a1, niemeier-a2, U+U, E8+U+U"))
    })?;
    Ok(io::lattice_to_json(&l))
}

pub fn theta(name: &str, prec: i64) -> Result<String, Failure> {
    if prec < 1 {
        return Err(Failure::Usage("--prec must be at least 1".into()));
    }
    let l = load_lattice(name)?;
    let s = theta_series(&l, prec)?;
    let mut r = String::new();
    writeln!(r, "theta series of {} through q^{prec}", l.name().unwrap_or(name)).unwrap();
    for (n, c) in s.integer_coefficients(0, prec + 1)?.iter().enumerate() {
        writeln!(r, "q^{n} {c}").unwrap();
    }
    Ok(r)
}

pub struct ExpandJob<'a> {
    pub lattice: &'a str,
    pub form: &'a str,
    pub scale: i64,
    pub ell: Option<&'a str>,
    pub chamber_point: &'a str,
    pub weyl: &'a str,
    pub cutoff: &'a str,
}

pub fn expand(job: &ExpandJob<'_>) -> Result<String, Failure> {
    let l = load_lattice(job.lattice)?;
    let (_, f) = load_form(job.form)?;
    let f = scaled(f, job.scale);
    let ell = match job.ell {
        Some(text) => parse_integer_coords(text, "--ell")?,
        None => isotropic_line(&l).vector.ok_or_else(|| Error::InvalidInput("no isotropic vector found; pass --ell".into()))?,
    };
    let w = parse_coords(job.chamber_point, "--chamber-point")?;
    let rho = parse_coords(job.weyl, "--weyl")?;
    let cutoff: Rational = job.cutoff.parse().map_err(|_| Failure::Usage(format!("--cutoff: `{}` is not a rational number", job.cutoff)))?;
    let data = cusp_data(&l, &ell)?;
    let chamber = chamber_of(&w, &reduce_f0(&f, &data)?, &data)?;
    let p = product_expand(&f, &data, &chamber, &rho, &cutoff)?;

    let mut r = String::new();
    writeln!(r, "ell: {}", tuple(&ell)).unwrap();
    writeln!(r, "N: {}", p.n).unwrap();
    writeln!(r, "A: {}", p.constant_a).unwrap();
    writeln!(r, "weight: {}", p.weight_out).unwrap();
    writeln!(r, "chamber point: {}", tuple(&chamber.w)).unwrap();
    writeln!(r, "walls within radius {}: {}", chamber.radius, chamber.walls.len()).unwrap();
    writeln!(r, "weyl exponent: {}", tuple(&p.weyl_exponent)).unwrap();
    writeln!(r, "factors: {}", p.factors.len()).unwrap();
    writeln!(r, "skipped exponents: {}", p.skipped).unwrap();
    writeln!(r, "max grade: {}", p.body.max_grade()).unwrap();
    let mut terms: Vec<_> = p.body.terms().iter().collect();
    terms.sort_by(|a, b| p.body.grade(a.0).cmp(&p.body.grade(b.0)).then_with(|| a.0.cmp(b.0)));
    writeln!(r, "terms: {}", terms.len()).unwrap();
    for (z, c) in terms {
        writeln!(r, "{} {c}", tuple(z)).unwrap();
    }
    Ok(r)
}

pub fn relation(form: &str, scale: i64) -> Result<String, Failure> {
    let (_, f) = load_form(form)?;
    Ok(borcherds_relation(&scaled(f, scale))?.to_string())
}

pub fn embed_trick(form: &str, scale: i64, prec: i64) -> Result<String, Failure> {
    let (_, f) = load_form(form)?;
    let f = scaled(f, scale);
    let e = EmbeddingData::new(prec)?;
    let lhs = embedding_trick(&f, &e)?;
    let rhs = borcherds_relation(&f)?;
    if lhs != rhs {
        return Err(Failure::Domain(Error::InvalidInput(format!("embedding trick gives\n{lhs}but the relation is\n{rhs}"))));
    }
    Ok(lhs.to_string())
}

pub fn pair(form: &str, scale: i64, series: Option<&str>) -> Result<String, Failure> {
    let (_, f) = load_form(form)?;
    let f = scaled(f, scale);
    match series {
        Some(name) => {
            let a = load_series(name)?;
            let v: Rational = modularity_pairing(&f, |m, mu| if mu.is_zero() { a.coefficient(m).ok() } else { None })?;
            Ok(format!("{v}\n"))
        }
        None => {
            let v: DivisorExpr = modularity_pairing(&f, symbol_values)?;
            let reduced = relation_ideal(std::slice::from_ref(&f))?.reduce(&v);
            let mut r = v.to_string();
            writeln!(r, "reduced: {}", if reduced.is_zero() { "0".to_string() } else { reduced.to_string() }).unwrap();
            Ok(r)
        }
    }
}

pub fn form_gen(name: &str, prec: i64, scale: i64) -> Result<String, Failure> {
    if prec < 1 {
        return Err(Failure::Usage("--prec must be at least 1".into()));
    }
    let (l, f) = database::form(name, prec)
        .ok_or_else(|| Failure::Usage(format!("unknown form `{name}`; known: {}", database::FORM_NAMES.join(", "))))?;
    Ok(io::form_to_json(&l, &scaled(f, scale), Some(name)))
}

pub fn series_gen(name: &str, prec: i64) -> Result<String, Failure> {
    let s = match name {
        "delta" => delta_series(prec),
        "j" => j_series(prec),
        _ => {
            let k = name
                .strip_prefix('e')
                .and_then(|k| k.parse::<u32>().ok())
                .ok_or_else(|| Failure::Usage(format!("unknown series `{name}`; known: delta, j, e4, e6, ...")))?;
            eisenstein(k, prec)?
        }
    };
    Ok(io::series_to_json(&s))
}
