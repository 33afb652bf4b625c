//! p-ary bracketings: full p-ary trees over a single variable.
//!
//! A bracketing is stored as its prefix code, the word over `{ω, x}` obtained
//! by a preorder walk. The code determines the tree uniquely, hashes cheaply
//! and makes the occurrence number and length simple counts.

use std::fmt;

use crate::error::{Error, Result};
use crate::tuple::{enumerate_m, InsertionTuple};
use crate::{counting, BigCount, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Sym {
    Op,
    Var,
}

/// A full p-ary tree whose inner nodes are the operation symbol and whose
/// leaves are the variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bracketing {
    arity: usize,
    code: Vec<Sym>,
}

/// Text serialisations of a bracketing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextFormat {
    /// Prefix code with `w` for the operation and `x` for the variable.
    Prefix,
    /// Fully parenthesised infix, binary only: `((xx)x)`.
    Infix,
}

pub(crate) fn check_arity(p: usize) -> Result<()> {
    if p < 2 {
        Err(Error::InvalidArity(p))
    } else {
        Ok(())
    }
}

/// Exclusive end of the subterm starting at `start`.
fn subterm_end(code: &[Sym], arity: usize, start: usize) -> usize {
    let mut need = 1usize;
    let mut pos = start;
    while need > 0 {
        match code[pos] {
            Sym::Op => need += arity - 1,
            Sym::Var => need -= 1,
        }
        pos += 1;
    }
    pos
}

/// Borrowed subterm of a bracketing.
#[derive(Clone, Copy)]
struct View<'a> {
    arity: usize,
    code: &'a [Sym],
}

impl<'a> View<'a> {
    fn is_leaf(self) -> bool {
        self.code[0] == Sym::Var
    }

    fn children(self) -> impl Iterator<Item = View<'a>> {
        let arity = self.arity;
        let code = self.code;
        let mut start = 1;
        let count = if self.is_leaf() { 0 } else { arity };
        (0..count).map(move |_| {
            let end = subterm_end(code, arity, start);
            let child = View {
                arity,
                code: &code[start..end],
            };
            start = end;
            child
        })
    }

    fn first_child(self) -> Option<View<'a>> {
        self.children().next()
    }

    fn last_child(self) -> Option<View<'a>> {
        self.children().last()
    }

    fn len(self) -> usize {
        self.code.iter().filter(|s| **s == Sym::Var).count()
    }
}

impl Bracketing {
    /// The single variable `x`.
    pub fn leaf(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        Ok(Bracketing {
            arity,
            code: vec![Sym::Var],
        })
    }

    /// `ω t_1 … t_p`.
    pub fn node(arity: usize, children: &[Bracketing]) -> Result<Self> {
        check_arity(arity)?;
        if children.len() != arity {
            return Err(Error::LengthMismatch {
                expected: arity,
                found: children.len(),
            });
        }
        let mut code = Vec::with_capacity(1 + children.iter().map(|c| c.code.len()).sum::<usize>());
        code.push(Sym::Op);
        for child in children {
            if child.arity != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: child.arity,
                });
            }
            code.extend_from_slice(&child.code);
        }
        Ok(Bracketing { arity, code })
    }

    pub(crate) fn from_code_unchecked(arity: usize, code: Vec<Sym>) -> Self {
        debug_assert_eq!(
            code.iter().filter(|s| **s == Sym::Var).count(),
            (arity - 1) * code.iter().filter(|s| **s == Sym::Op).count() + 1
        );
        Bracketing { arity, code }
    }

    pub(crate) fn code(&self) -> &[Sym] {
        &self.code
    }

    fn view(&self) -> View<'_> {
        View {
            arity: self.arity,
            code: &self.code,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of operation symbols.
    pub fn occ(&self) -> usize {
        self.code.iter().filter(|s| **s == Sym::Op).count()
    }

    /// Number of variable occurrences, `(p - 1) * occ + 1`; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.code.len() - self.occ()
    }

    pub fn is_leaf(&self) -> bool {
        self.code.len() == 1
    }

    /// The `p` immediate subterms, or `None` for the leaf.
    pub fn children(&self) -> Option<Vec<Bracketing>> {
        if self.is_leaf() {
            return None;
        }
        Some(
            self.view()
                .children()
                .map(|v| Bracketing {
                    arity: self.arity,
                    code: v.code.to_vec(),
                })
                .collect(),
        )
    }

    /// Left-associated bracketing: `n` operation symbols followed by all variables.
    pub fn left_associated(n: usize, arity: usize) -> Result<Self> {
        check_arity(arity)?;
        let mut code = vec![Sym::Op; n];
        code.extend(std::iter::repeat_n(Sym::Var, (arity - 1) * n + 1));
        Ok(Bracketing { arity, code })
    }

    pub fn parse(text: &str, arity: usize, format: TextFormat) -> Result<Self> {
        check_arity(arity)?;
        match format {
            TextFormat::Prefix => parse_prefix(text, arity),
            TextFormat::Infix => {
                if arity != 2 {
                    return Err(Error::UnsupportedFormat(arity));
                }
                parse_infix(text)
            }
        }
    }

    pub fn render(&self, format: TextFormat) -> Result<String> {
        match format {
            TextFormat::Prefix => Ok(self
                .code
                .iter()
                .map(|s| match s {
                    Sym::Op => 'w',
                    Sym::Var => 'x',
                })
                .collect()),
            TextFormat::Infix => {
                if self.arity != 2 {
                    return Err(Error::UnsupportedFormat(self.arity));
                }
                let mut out = String::with_capacity(self.code.len() * 2);
                render_infix(self.view(), &mut out, &mut |out, _| out.push('x'));
                Ok(out)
            }
        }
    }

    /// Labels the leaves `x_j, x_{j+1}, …` from left to right.
    pub fn enumerate_leaves(&self, first: usize) -> LabeledBracketing {
        LabeledBracketing {
            shape: self.clone(),
            first,
        }
    }

    /// `(|left^1(t)|, …, |left^k(t)|)` where `left` takes the first factor
    /// and fixes the leaf.
    pub fn left_lengths(&self, k: usize) -> Result<Vec<usize>> {
        self.require_binary()?;
        let mut current = self.view();
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            if let Some(left) = current.first_child() {
                current = left;
            }
            out.push(current.len());
        }
        Ok(out)
    }

    /// Number of subterms equal to `(xx)`.
    pub fn egg_pairs(&self) -> Result<usize> {
        self.require_binary()?;
        Ok(self
            .code
            .windows(3)
            .filter(|w| w == &[Sym::Op, Sym::Var, Sym::Var])
            .count())
    }

    /// Edge distances from the root to the leftmost and to the rightmost leaf.
    pub fn left_right_depth(&self) -> Result<(usize, usize)> {
        self.require_binary()?;
        fn walk<'a>(view: View<'a>, step: impl Fn(View<'a>) -> Option<View<'a>> + Copy) -> usize {
            match step(view) {
                Some(next) => 1 + walk(next, step),
                None => 0,
            }
        }
        Ok((
            walk(self.view(), |v| v.first_child()),
            walk(self.view(), |v| v.last_child()),
        ))
    }

    /// Reverses the order of children at every node.
    pub fn mirror(&self) -> Bracketing {
        fn go(view: View<'_>, out: &mut Vec<Sym>) {
            if view.is_leaf() {
                out.push(Sym::Var);
                return;
            }
            out.push(Sym::Op);
            let children: Vec<_> = view.children().collect();
            for child in children.into_iter().rev() {
                go(child, out);
            }
        }
        let mut code = Vec::with_capacity(self.code.len());
        go(self.view(), &mut code);
        Bracketing {
            arity: self.arity,
            code,
        }
    }

    /// Places `self` as the `i`-th child of `ω x … x` (1-based).
    pub fn wrap_at(&self, i: usize) -> Result<Bracketing> {
        if i == 0 || i > self.arity {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.arity,
            });
        }
        let mut code = Vec::with_capacity(self.code.len() + self.arity);
        code.push(Sym::Op);
        code.extend(std::iter::repeat_n(Sym::Var, i - 1));
        code.extend_from_slice(&self.code);
        code.extend(std::iter::repeat_n(Sym::Var, self.arity - i));
        Ok(Bracketing {
            arity: self.arity,
            code,
        })
    }

    /// Like [`wrap_at`](Self::wrap_at) but the host operation must have the
    /// arity `host_arity`; fails when it differs from the bracketing's arity.
    pub fn wrap_at_in(&self, i: usize, host_arity: usize) -> Result<Bracketing> {
        if host_arity != self.arity {
            return Err(Error::ArityMismatch {
                expected: host_arity,
                found: self.arity,
            });
        }
        self.wrap_at(i)
    }

    /// Replaces the `i`-th leaf (1-based, left to right) by `ω x … x`.
    pub fn expand_leaf(&self, i: usize) -> Result<Bracketing> {
        let max = self.len();
        if i == 0 || i > max {
            return Err(Error::IndexOutOfRange { index: i, max });
        }
        let mut code = Vec::with_capacity(self.code.len() + self.arity);
        let mut seen = 0;
        for &s in &self.code {
            if s == Sym::Var {
                seen += 1;
                if seen == i {
                    code.push(Sym::Op);
                    code.extend(std::iter::repeat_n(Sym::Var, self.arity));
                    continue;
                }
            }
            code.push(s);
        }
        Ok(Bracketing {
            arity: self.arity,
            code,
        })
    }

    pub fn insertion_tuple(&self) -> InsertionTuple {
        InsertionTuple::of(self)
    }

    fn require_binary(&self) -> Result<()> {
        if self.arity == 2 {
            Ok(())
        } else {
            Err(Error::UnsupportedArity(self.arity))
        }
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let format = if self.arity == 2 {
            TextFormat::Infix
        } else {
            TextFormat::Prefix
        };
        f.write_str(&self.render(format).expect("format chosen by arity"))
    }
}

fn render_infix(view: View<'_>, out: &mut String, leaf: &mut dyn FnMut(&mut String, usize)) {
    fn go(
        view: View<'_>,
        out: &mut String,
        next: &mut usize,
        leaf: &mut dyn FnMut(&mut String, usize),
    ) {
        if view.is_leaf() {
            leaf(out, *next);
            *next += 1;
            return;
        }
        out.push('(');
        for child in view.children() {
            go(child, out, next, leaf);
        }
        out.push(')');
    }
    let mut next = 0;
    go(view, out, &mut next, leaf);
}

fn parse_prefix(text: &str, arity: usize) -> Result<Bracketing> {
    let mut code = Vec::with_capacity(text.len());
    let mut need = 1usize;
    for (offset, ch) in text.char_indices() {
        if need == 0 {
            return Err(Error::Parse {
                offset,
                message: format!("trailing input {:?}", &text[offset..]),
            });
        }
        match ch {
            'w' => {
                code.push(Sym::Op);
                need += arity - 1;
            }
            'x' => {
                code.push(Sym::Var);
                need -= 1;
            }
            other => {
                return Err(Error::Parse {
                    offset,
                    message: format!("unexpected character {other:?}, expected 'w' or 'x'"),
                })
            }
        }
    }
    if need > 0 {
        return Err(Error::Parse {
            offset: text.len(),
            message: format!("incomplete bracketing, {need} more variable(s) required"),
        });
    }
    Ok(Bracketing { arity, code })
}

fn parse_infix(text: &str) -> Result<Bracketing> {
    struct Parser<'a> {
        bytes: &'a [u8],
        pos: usize,
        code: Vec<Sym>,
    }

    impl Parser<'_> {
        fn error(&self, message: impl Into<String>) -> Error {
            Error::Parse {
                offset: self.pos,
                message: message.into(),
            }
        }

        fn term(&mut self) -> Result<()> {
            match self.bytes.get(self.pos) {
                Some(b'x') => {
                    self.pos += 1;
                    self.code.push(Sym::Var);
                    Ok(())
                }
                Some(b'(') => {
                    self.pos += 1;
                    self.code.push(Sym::Op);
                    self.term()?;
                    self.term()?;
                    match self.bytes.get(self.pos) {
                        Some(b')') => {
                            self.pos += 1;
                            Ok(())
                        }
                        Some(_) => Err(self.error("expected ')' after two factors")),
                        None => Err(self.error("unbalanced parentheses")),
                    }
                }
                Some(_) => Err(self.error("expected 'x' or '('")),
                None => Err(self.error("unexpected end of input")),
            }
        }
    }

    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        code: Vec::with_capacity(text.len()),
    };
    parser.term()?;
    if parser.pos != text.len() {
        return Err(parser.error(format!("trailing input {:?}", &text[parser.pos..])));
    }
    Ok(Bracketing {
        arity: 2,
        code: parser.code,
    })
}

/// A bracketing whose leaves carry the consecutive labels `first, first + 1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledBracketing {
    shape: Bracketing,
    first: usize,
}

impl LabeledBracketing {
    pub fn shape(&self) -> &Bracketing {
        &self.shape
    }

    /// Leaf labels in left-to-right order.
    pub fn labels(&self) -> Vec<usize> {
        (self.first..self.first + self.shape.len()).collect()
    }
}

impl fmt::Display for LabeledBracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.shape.arity == 2 {
            let first = self.first;
            render_infix(self.shape.view(), &mut out, &mut |out, i| {
                out.push_str(&format!("x{}", first + i))
            });
        } else {
            let mut next = self.first;
            for s in &self.shape.code {
                match s {
                    Sym::Op => out.push('w'),
                    Sym::Var => {
                        out.push_str(&format!("x{next}"));
                        next += 1;
                    }
                }
            }
        }
        f.write_str(&out)
    }
}

pub(crate) fn check_level_size(n: usize, p: usize, limits: &Limits) -> Result<usize> {
    check_arity(p)?;
    let count: BigCount = counting::catalan(n as u64, p as u64);
    match u64::try_from(&count) {
        Ok(c) if c <= limits.max_bracketings => Ok(c as usize),
        _ => Err(Error::CapExceeded {
            what: "bracketing enumeration",
            required: format!("{count} bracketings"),
            cap: limits.max_bracketings,
        }),
    }
}

/// All bracketings with `n` operation symbols, ordered lexicographically by
/// insertion tuple.
pub fn enumerate_bracketings(n: usize, p: usize, limits: &Limits) -> Result<Vec<Bracketing>> {
    check_level_size(n, p, limits)?;
    Ok(enumerate_m(n, 1, p, limits)?
        .iter()
        .map(InsertionTuple::to_bracketing_unchecked)
        .collect())
}
