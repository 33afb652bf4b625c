//! Named groupoids used as worked examples and test fixtures.

use crate::error::{Error, Result};
use crate::groupoid::{Element, Groupoid, MAX_CARRIER};
use crate::ring::{TruncatedRing, DEFAULT_DEGREE};

/// A gallery entry: either a finite table or the evaluation-only ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Specimen {
    Table(Groupoid),
    Ring(TruncatedRing),
}

impl Specimen {
    pub fn table(self) -> Result<Groupoid> {
        match self {
            Specimen::Table(g) => Ok(g),
            Specimen::Ring(r) => Err(Error::EvaluationOnly(format!(
                "truncated_ring:{}",
                r.degree()
            ))),
        }
    }
}

/// Catalogue line for `gallery list`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub param: Option<&'static str>,
    pub carrier: &'static str,
    pub summary: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "egg4",
        param: None,
        carrier: "4",
        summary: "term functions vanish once a bracketing has three egg pairs",
    },
    CatalogEntry {
        name: "egg7",
        param: None,
        carrier: "7",
        summary: "egg4 with nonzero elements split by the Sheffer tags; fine spectrum is the three-egg spectrum",
    },
    CatalogEntry {
        name: "polyk",
        param: Some("k"),
        carrier: "k+2",
        summary: "min(x+1, k+1) groupoid; spectrum is a polynomial of degree k",
    },
    CatalogEntry {
        name: "sheffer",
        param: None,
        carrier: "2",
        summary: "two tags, hat·hat = tilde and every other product hat; separates all bracketings",
    },
    CatalogEntry {
        name: "const_assoc",
        param: Some("m"),
        carrier: "m",
        summary: "min(x+y, m-1); associative",
    },
    CatalogEntry {
        name: "truncated_ring",
        param: Some("N"),
        carrier: "6^N (evaluation only)",
        summary: "3Y·X1 + 2Y·X2 over Z_6[Y]/(Y^N)",
    },
];

/// Splits `name:param` into its parts.
pub fn parse_spec(text: &str) -> Result<(&str, Option<usize>)> {
    match text.split_once(':') {
        None => Ok((text, None)),
        Some((name, param)) => {
            let value = param.parse().map_err(|_| Error::BadParams {
                name: name.into(),
                reason: format!("parameter {param:?} is not a non-negative integer"),
            })?;
            Ok((name, Some(value)))
        }
    }
}

/// Looks up a gallery entry. Parameterised entries require `param`; the
/// ring defaults to degree 16.
pub fn gallery(name: &str, param: Option<usize>) -> Result<Specimen> {
    let entry = CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownGroupoid(name.into()))?;
    if entry.param.is_none() && param.is_some() {
        return Err(Error::BadParams {
            name: name.into(),
            reason: "takes no parameter".into(),
        });
    }
    let required = |what: &str| {
        param.ok_or_else(|| Error::BadParams {
            name: name.into(),
            reason: format!("missing parameter {what}"),
        })
    };
    let g = match name {
        "egg4" => egg4(),
        "egg7" => egg7(),
        "sheffer" => sheffer(),
        "polyk" => polyk(required("k")?)?,
        "const_assoc" => const_assoc(required("m")?)?,
        "truncated_ring" => {
            return Ok(Specimen::Ring(TruncatedRing::new(
                param.unwrap_or(DEFAULT_DEGREE),
            )?));
        }
        _ => unreachable!("catalogue and match agree"),
    };
    Ok(Specimen::Table(g))
}

/// Parses `name[:param]` and looks it up.
pub fn gallery_spec(text: &str) -> Result<Specimen> {
    let (name, param) = parse_spec(text)?;
    gallery(name, param)
}

const EGG4: [[Element; 4]; 4] = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 2], [0, 1, 2, 2]];

fn numbered(size: usize) -> Vec<String> {
    (0..size).map(|i| i.to_string()).collect()
}

pub fn egg4() -> Groupoid {
    Groupoid::from_fn(2, 4, Some(numbered(4)), |a| {
        EGG4[a[0] as usize][a[1] as usize]
    })
    .expect("fixed table")
}

const HAT: Element = 0;
const TILDE: Element = 1;

fn sheffer_tag(a: Element, b: Element) -> Element {
    if a == HAT && b == HAT {
        TILDE
    } else {
        HAT
    }
}

pub fn sheffer() -> Groupoid {
    Groupoid::from_fn(2, 2, Some(vec!["hat".into(), "tilde".into()]), |a| {
        sheffer_tag(a[0], a[1])
    })
    .expect("fixed table")
}

/// Element order `0, 1^, 1~, 2^, 2~, 3^, 3~`.
pub fn egg7() -> Groupoid {
    let split = |e: Element| -> (Element, Element) {
        if e == 0 {
            (0, HAT)
        } else {
            ((e - 1) / 2 + 1, (e - 1) % 2)
        }
    };
    let join = |v: Element, tag: Element| if v == 0 { 0 } else { 1 + 2 * (v - 1) + tag };
    let names = ["0", "1^", "1~", "2^", "2~", "3^", "3~"]
        .map(String::from)
        .to_vec();
    Groupoid::from_fn(2, 7, Some(names), |a| {
        let (x, s) = split(a[0]);
        let (y, t) = split(a[1]);
        join(EGG4[x as usize][y as usize], sheffer_tag(s, t))
    })
    .expect("fixed table")
}

pub fn polyk(k: usize) -> Result<Groupoid> {
    let size = k + 2;
    if size > MAX_CARRIER {
        return Err(Error::BadParams {
            name: "polyk".into(),
            reason: format!("k = {k} needs {size} elements, above {MAX_CARRIER}"),
        });
    }
    let top = (k + 1) as Element;
    Groupoid::from_fn(2, size, Some(numbered(size)), |a| match (a[0], a[1]) {
        (0, _) => 0,
        (_, 0) => 1,
        (x, _) => (x + 1).min(top),
    })
}

pub fn const_assoc(m: usize) -> Result<Groupoid> {
    if m == 0 || m > MAX_CARRIER {
        return Err(Error::BadParams {
            name: "const_assoc".into(),
            reason: format!("m must lie in 1..={MAX_CARRIER}, got {m}"),
        });
    }
    Groupoid::from_fn(2, m, Some(numbered(m)), |a| {
        (a[0] as usize + a[1] as usize).min(m - 1) as Element
    })
}
