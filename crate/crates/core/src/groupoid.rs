//! Finite p-ary groupoids given by operation tables.

use serde::{Deserialize, Serialize};

use crate::bracketing::check_arity;
use crate::error::{Error, Result};

/// Carrier element. Carriers are `0..size` with `size <= 256`.
pub type Element = u8;

pub const MAX_CARRIER: usize = Element::MAX as usize + 1;

/// A finite carrier with one p-ary operation.
///
/// The table is flat: the arguments `(a_1, …, a_p)` sit at index
/// `a_1·size^{p-1} + … + a_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Groupoid {
    arity: usize,
    size: usize,
    names: Option<Vec<String>>,
    table: Vec<Element>,
}

/// On-disk form: `{"p": 2, "size": 4, "names": [...], "table": [...]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidDoc {
    p: usize,
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    table: Vec<u64>,
}

fn table_len(size: usize, arity: usize) -> Result<usize> {
    u32::try_from(arity)
        .ok()
        .and_then(|a| size.checked_pow(a))
        .ok_or_else(|| Error::Precondition(format!("table of size {size}^{arity} is too large")))
}

impl Groupoid {
    pub fn new(
        arity: usize,
        size: usize,
        table: Vec<Element>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        check_arity(arity)?;
        if size == 0 || size > MAX_CARRIER {
            return Err(Error::Schema(format!(
                "carrier size must lie in 1..={MAX_CARRIER}, got {size}"
            )));
        }
        let expected = table_len(size, arity)?;
        if table.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: table.len(),
            });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v as usize >= size) {
            return Err(Error::Range {
                index,
                value: value as u64,
                size,
            });
        }
        if let Some(names) = &names {
            if names.len() != size {
                return Err(Error::Schema(format!(
                    "{} names given for {size} elements",
                    names.len()
                )));
            }
        }
        Ok(Groupoid {
            arity,
            size,
            names,
            table,
        })
    }

    /// Tabulates `op` over all argument tuples in flat-index order.
    pub fn from_fn(
        arity: usize,
        size: usize,
        names: Option<Vec<String>>,
        mut op: impl FnMut(&[Element]) -> Element,
    ) -> Result<Self> {
        check_arity(arity)?;
        if size == 0 || size > MAX_CARRIER {
            return Err(Error::Schema(format!(
                "carrier size must lie in 1..={MAX_CARRIER}, got {size}"
            )));
        }
        let len = table_len(size, arity)?;
        let mut table = Vec::with_capacity(len);
        let mut args = vec![0 as Element; arity];
        for _ in 0..len {
            table.push(op(&args));
            // Odometer, last argument fastest.
            for slot in args.iter_mut().rev() {
                if (*slot as usize) + 1 < size {
                    *slot += 1;
                    break;
                }
                *slot = 0;
            }
        }
        Self::new(arity, size, table, names)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn name_of(&self, e: Element) -> String {
        match &self.names {
            Some(names) => names[e as usize].clone(),
            None => e.to_string(),
        }
    }

    pub fn flat_index(&self, args: &[Element]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.size + a as usize)
    }

    /// Applies the operation; `args.len()` must equal the arity.
    pub fn apply(&self, args: &[Element]) -> Element {
        debug_assert_eq!(args.len(), self.arity);
        self.table[self.flat_index(args)]
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GroupoidDoc =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        check_arity(doc.p)
            .map_err(|_| Error::Schema(format!("p must be at least 2, got {}", doc.p)))?;
        if doc.size == 0 || doc.size > MAX_CARRIER {
            return Err(Error::Schema(format!(
                "size must lie in 1..={MAX_CARRIER}, got {}",
                doc.size
            )));
        }
        let expected = table_len(doc.size, doc.p)?;
        if doc.table.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: doc.table.len(),
            });
        }
        let table = doc
            .table
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                if (value as usize) < doc.size {
                    Ok(value as Element)
                } else {
                    Err(Error::Range {
                        index,
                        value,
                        size: doc.size,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.p, doc.size, table, doc.names)
    }

    pub fn to_json(&self) -> String {
        let doc = GroupoidDoc {
            p: self.arity,
            size: self.size,
            names: self.names.clone(),
            table: self.table.iter().map(|&v| v as u64).collect(),
        };
        serde_json::to_string(&doc).expect("groupoid document serialises")
    }

    /// The subgroupoid on `elements`, renumbered in the given order. Fails if
    /// the subset is not closed under the operation.
    pub fn subgroupoid(&self, elements: &[Element]) -> Result<Groupoid> {
        let mut position = vec![None; self.size];
        for (i, &e) in elements.iter().enumerate() {
            if e as usize >= self.size || position[e as usize].is_some() {
                return Err(Error::Precondition(format!("bad subset element {e}")));
            }
            position[e as usize] = Some(i as Element);
        }
        let mut failure = None;
        let names = self.names.as_ref().map(|names| {
            elements
                .iter()
                .map(|&e| names[e as usize].clone())
                .collect()
        });
        let sub = Groupoid::from_fn(self.arity, elements.len(), names, |args| {
            let lifted: Vec<Element> = args.iter().map(|&a| elements[a as usize]).collect();
            let value = self.apply(&lifted);
            position[value as usize].unwrap_or_else(|| {
                failure.get_or_insert(value);
                0
            })
        })?;
        match failure {
            Some(v) => Err(Error::Precondition(format!(
                "subset is not closed: the product {v} falls outside"
            ))),
            None => Ok(sub),
        }
    }
}

/// Componentwise product; `(a, b)` is encoded as `a·|h| + b`.
pub fn direct_product(g: &Groupoid, h: &Groupoid) -> Result<Groupoid> {
    if g.arity != h.arity {
        return Err(Error::ArityMismatch {
            expected: g.arity,
            found: h.arity,
        });
    }
    let size = g.size * h.size;
    if size > MAX_CARRIER {
        return Err(Error::CapExceeded {
            what: "direct product carrier",
            required: format!("{size} elements"),
            cap: MAX_CARRIER as u64,
        });
    }
    let names = match (&g.names, &h.names) {
        (None, None) => None,
        _ => Some(
            (0..size)
                .map(|e| {
                    let (a, b) = (e / h.size, e % h.size);
                    format!("({},{})", g.name_of(a as Element), h.name_of(b as Element))
                })
                .collect(),
        ),
    };
    let hs = h.size as Element;
    let mut left = vec![0 as Element; g.arity];
    let mut right = vec![0 as Element; g.arity];
    Groupoid::from_fn(g.arity, size, names, |args| {
        for (i, &e) in args.iter().enumerate() {
            left[i] = e / hs;
            right[i] = e % hs;
        }
        g.apply(&left) * hs + h.apply(&right)
    })
}
