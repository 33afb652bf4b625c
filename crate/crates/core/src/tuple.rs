//! Insertion tuples: the monotone integer encoding of bracketings.
//!
//! Entry `i` of the tuple of `t` is one plus the number of variables that
//! precede the `i`-th operation symbol in the prefix code of `t`. The map is a
//! bijection from bracketings with `n` operation symbols onto `M(n, 1, p)`,
//! the weakly increasing `n`-tuples with `1 <= u_i <= (p-1)(i-1) + 1`.

use std::fmt;
use std::str::FromStr;

use crate::bracketing::{check_arity, Bracketing, Sym};
use crate::counting::count_m;
use crate::error::{Error, Result};
use crate::{BigCount, Limits};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InsertionTuple {
    arity: usize,
    entries: Vec<usize>,
}

/// Upper bound on entry `i` (1-based) of a tuple in `M(n, k, p)`.
pub fn entry_bound(i: usize, k: usize, p: usize) -> usize {
    (p - 1) * (i - 1) + k
}

impl InsertionTuple {
    /// A positive, weakly increasing tuple. Bracketing bounds are not checked.
    pub fn new(arity: usize, entries: Vec<usize>) -> Result<Self> {
        check_arity(arity)?;
        let tuple = InsertionTuple { arity, entries };
        if let Some(pos) = tuple.entries.iter().position(|&u| u == 0) {
            return Err(tuple.invalid(format!("entry {} is zero", pos + 1)));
        }
        if let Some(pos) = tuple.entries.windows(2).position(|w| w[0] > w[1]) {
            return Err(tuple.invalid(format!("entries {} and {} decrease", pos + 1, pos + 2)));
        }
        Ok(tuple)
    }

    pub(crate) fn new_unchecked(arity: usize, entries: Vec<usize>) -> Self {
        InsertionTuple { arity, entries }
    }

    fn invalid(&self, reason: String) -> Error {
        Error::InvalidTuple {
            tuple: self.to_string(),
            reason,
        }
    }

    /// The insertion tuple of a bracketing.
    pub fn of(t: &Bracketing) -> Self {
        let mut entries = Vec::with_capacity(t.occ());
        let mut vars = 0;
        for s in t.code() {
            match s {
                Sym::Op => entries.push(vars + 1),
                Sym::Var => vars += 1,
            }
        }
        InsertionTuple {
            arity: t.arity(),
            entries,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Length `n` of the tuple, the occurrence number of its bracketing.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether the tuple lies in `M(n, 1, p)`, i.e. encodes a bracketing.
    pub fn is_bracketing(&self) -> bool {
        self.first_bound_violation(1).is_none()
    }

    fn first_bound_violation(&self, k: usize) -> Option<usize> {
        self.entries
            .iter()
            .enumerate()
            .position(|(q, &u)| u == 0 || u > entry_bound(q + 1, k, self.arity))
    }

    /// The bracketing with this insertion tuple.
    ///
    /// The `q`-th operation symbol is preceded by exactly `u_q - 1`
    /// variables, which pins down the whole prefix code.
    pub fn to_bracketing(&self) -> Result<Bracketing> {
        if let Some(pos) = self.entries.windows(2).position(|w| w[0] > w[1]) {
            return Err(self.invalid(format!("entries {} and {} decrease", pos + 1, pos + 2)));
        }
        if let Some(pos) = self.first_bound_violation(1) {
            return Err(self.invalid(format!(
                "entry {} must lie in 1..={}",
                pos + 1,
                entry_bound(pos + 1, 1, self.arity)
            )));
        }
        Ok(self.to_bracketing_unchecked())
    }

    pub(crate) fn to_bracketing_unchecked(&self) -> Bracketing {
        let n = self.entries.len();
        let total_vars = (self.arity - 1) * n + 1;
        let mut code = Vec::with_capacity(n + total_vars);
        let mut vars = 0;
        for &u in &self.entries {
            code.extend(std::iter::repeat_n(Sym::Var, u - 1 - vars));
            vars = u - 1;
            code.push(Sym::Op);
        }
        code.extend(std::iter::repeat_n(Sym::Var, total_vars - vars));
        Bracketing::from_code_unchecked(self.arity, code)
    }

    /// Tuple of the bracketing obtained by replacing leaf `i` with `ω x … x`,
    /// computed directly on the tuple.
    pub fn expand_leaf(&self, i: usize) -> Result<InsertionTuple> {
        let max = (self.arity - 1) * self.entries.len() + 1;
        if i == 0 || i > max {
            return Err(Error::IndexOutOfRange { index: i, max });
        }
        Ok(self.expand_leaf_unchecked(i))
    }

    pub(crate) fn expand_leaf_unchecked(&self, i: usize) -> InsertionTuple {
        // Entries are sorted, so the pivot is the count of entries <= i.
        let pivot = self.entries.partition_point(|&u| u <= i);
        let shift = self.arity - 1;
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.extend_from_slice(&self.entries[..pivot]);
        entries.push(i);
        entries.extend(self.entries[pivot..].iter().map(|u| u + shift));
        InsertionTuple {
            arity: self.arity,
            entries,
        }
    }

    /// Tuple of the bracketing placed as the `i`-th child of `ω x … x`.
    pub fn wrap_at(&self, i: usize) -> Result<InsertionTuple> {
        if i == 0 || i > self.arity {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.arity,
            });
        }
        Ok(self.wrap_at_unchecked(i))
    }

    pub(crate) fn wrap_at_unchecked(&self, i: usize) -> InsertionTuple {
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.push(1);
        entries.extend(self.entries.iter().map(|u| u + i - 1));
        InsertionTuple {
            arity: self.arity,
            entries,
        }
    }
}

impl fmt::Display for InsertionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, u) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str(")")
    }
}

/// Parses the `(1,2,3)` form. The arity is not part of the text, so the
/// result carries arity 2; use [`parse_tuple`] to supply it.
impl FromStr for InsertionTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tuple(s, 2)
    }
}

pub fn parse_tuple(text: &str, arity: usize) -> Result<InsertionTuple> {
    let parse_err = |message: &str| Error::Parse {
        offset: 0,
        message: format!("{message} in tuple {text:?}"),
    };
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err("missing parentheses"))?;
    let entries = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|e| {
                e.trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err("bad entry"))
            })
            .collect::<Result<Vec<_>>>()?
    };
    InsertionTuple::new(arity, entries)
}

/// All of `M(n, k, p)` in lexicographic order.
pub fn enumerate_m(n: usize, k: usize, p: usize, limits: &Limits) -> Result<Vec<InsertionTuple>> {
    check_arity(p)?;
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let count: BigCount = count_m(n as u64, k as u64, p as u64);
    let count = match u64::try_from(&count) {
        Ok(c) if c <= limits.max_bracketings => c as usize,
        _ => {
            return Err(Error::CapExceeded {
                what: "tuple enumeration",
                required: format!("{count} tuples"),
                cap: limits.max_bracketings,
            })
        }
    };

    fn descend(
        prefix: &mut Vec<usize>,
        n: usize,
        k: usize,
        p: usize,
        out: &mut Vec<InsertionTuple>,
    ) {
        let q = prefix.len() + 1;
        if q > n {
            out.push(InsertionTuple::new_unchecked(p, prefix.clone()));
            return;
        }
        let low = prefix.last().copied().unwrap_or(1);
        for u in low..=entry_bound(q, k, p) {
            prefix.push(u);
            descend(prefix, n, k, p, out);
            prefix.pop();
        }
    }

    let mut out = Vec::with_capacity(count);
    descend(&mut Vec::with_capacity(n), n, k, p, &mut out);
    debug_assert_eq!(out.len(), count);
    Ok(out)
}
