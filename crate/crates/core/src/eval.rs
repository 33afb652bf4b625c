//! Term functions and fine spectra of finite groupoids by exhaustive evaluation.
//!
//! The term function of a bracketing with `L` leaves is stored as a dense
//! table over all `size^L` argument tuples (first variable most significant).
//! Tables are memoised per subterm shape: the function a subterm computes on
//! its own variables does not depend on where it sits, so a parent's table is
//! assembled from its children's tables by index arithmetic alone.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bracketing::Bracketing;
use crate::error::{Error, Result};
use crate::groupoid::{Element, Groupoid};
use crate::partition::{Level, Partition};
use crate::spectrum::SpectrumPrefix;
use crate::{counting, BigCount, Limits};

/// The function `A^L → A` induced by a leaf-enumerated bracketing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermFunction {
    level: usize,
    arity: usize,
    carrier: usize,
    values: Arc<Vec<Element>>,
}

impl TermFunction {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of variables, `(p - 1)·level + 1`.
    pub fn vars(&self) -> usize {
        (self.arity - 1) * self.level + 1
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn eval(&self, args: &[Element]) -> Element {
        let index = args
            .iter()
            .fold(0usize, |acc, &a| acc * self.carrier + a as usize);
        self.values[index]
    }

    pub fn max_value(&self) -> Element {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// Evaluates `t` with its `i`-th leaf bound to `args[i]`.
pub fn eval_term(g: &Groupoid, t: &Bracketing, args: &[Element]) -> Result<Element> {
    if t.arity() != g.arity() {
        return Err(Error::ArityMismatch {
            expected: g.arity(),
            found: t.arity(),
        });
    }
    if args.len() != t.len() {
        return Err(Error::LengthMismatch {
            expected: t.len(),
            found: args.len(),
        });
    }
    if let Some(&bad) = args.iter().find(|&&a| a as usize >= g.size()) {
        return Err(Error::Range {
            index: 0,
            value: bad as u64,
            size: g.size(),
        });
    }

    fn go(g: &Groupoid, t: &Bracketing, args: &mut std::slice::Iter<'_, Element>) -> Element {
        match t.children() {
            None => *args.next().expect("argument count checked"),
            Some(children) => {
                let inner: Vec<Element> = children.iter().map(|c| go(g, c, args)).collect();
                g.apply(&inner)
            }
        }
    }
    Ok(go(g, t, &mut args.iter()))
}

fn cells_for(size: usize, vars: usize, terms: &BigCount) -> BigCount {
    num_traits::pow(BigCount::from(size), vars) * terms
}

fn check_cells(cells: BigCount, what: &'static str, limits: &Limits) -> Result<()> {
    if cells > BigCount::from(limits.max_cells) {
        return Err(Error::CapExceeded {
            what,
            required: format!("{cells} table cells"),
            cap: limits.max_cells,
        });
    }
    Ok(())
}

/// Builds and caches term-function tables for one groupoid.
pub struct Evaluator<'g> {
    groupoid: &'g Groupoid,
    limits: Limits,
    memo: HashMap<Bracketing, Arc<Vec<Element>>>,
}

impl<'g> Evaluator<'g> {
    pub fn new(groupoid: &'g Groupoid, limits: Limits) -> Self {
        Evaluator {
            groupoid,
            limits,
            memo: HashMap::new(),
        }
    }

    pub fn groupoid(&self) -> &Groupoid {
        self.groupoid
    }

    pub fn term_function(&mut self, t: &Bracketing) -> Result<TermFunction> {
        self.check_arity(t)?;
        check_cells(
            cells_for(self.groupoid.size(), t.len(), &BigCount::from(1u32)),
            "term function table",
            &self.limits,
        )?;
        Ok(TermFunction {
            level: t.occ(),
            arity: t.arity(),
            carrier: self.groupoid.size(),
            values: self.table(t, true),
        })
    }

    fn check_arity(&self, t: &Bracketing) -> Result<()> {
        if t.arity() != self.groupoid.arity() {
            return Err(Error::ArityMismatch {
                expected: self.groupoid.arity(),
                found: t.arity(),
            });
        }
        Ok(())
    }

    fn table(&mut self, t: &Bracketing, remember: bool) -> Arc<Vec<Element>> {
        if let Some(hit) = self.memo.get(t) {
            return Arc::clone(hit);
        }
        let size = self.groupoid.size();
        let values = match t.children() {
            None => Arc::new((0..size).map(|e| e as Element).collect::<Vec<_>>()),
            Some(children) => {
                let tables: Vec<Arc<Vec<Element>>> =
                    children.iter().map(|c| self.table(c, true)).collect();
                let slices: Vec<&[Element]> = tables.iter().map(|t| t.as_slice()).collect();
                let total = slices.iter().map(|s| s.len()).product();
                let mut out = Vec::with_capacity(total);
                compose(self.groupoid.table(), size, &slices, 0, &mut out);
                Arc::new(out)
            }
        };
        if remember {
            self.memo.insert(t.clone(), Arc::clone(&values));
        }
        values
    }

    /// Partition of `B_n` by equality of term functions.
    pub fn fine_level(&mut self, n: usize) -> Result<Partition> {
        let p = self.groupoid.arity();
        let terms: BigCount = counting::catalan(n as u64, p as u64);
        check_cells(
            cells_for(self.groupoid.size(), (p - 1) * n + 1, &terms),
            "fine spectrum level",
            &self.limits,
        )?;
        let level = Level::new(n, p, &self.limits)?;
        let mut classes: HashMap<Arc<Vec<Element>>, u32> = HashMap::new();
        let mut labels = Vec::with_capacity(level.size());
        for t in level.bracketings() {
            // Top-level tables are only compared, never reused as subterms
            // of this level, so they stay out of the memo.
            let table = self.table(&t, false);
            let next = classes.len() as u32;
            labels.push(*classes.entry(table).or_insert(next));
        }
        Ok(Partition::from_labels(n, p, labels))
    }

    /// Levels `0..=max_n`, stopping at the first level that fails; the levels
    /// computed before the failure are returned with the error.
    pub fn fine_levels(&mut self, max_n: usize) -> (Vec<Partition>, Option<Error>) {
        let mut levels = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            match self.fine_level(n) {
                Ok(part) => levels.push(part),
                Err(e) => return (levels, Some(e)),
            }
        }
        (levels, None)
    }
}

fn compose(
    op: &[Element],
    size: usize,
    children: &[&[Element]],
    acc: usize,
    out: &mut Vec<Element>,
) {
    match children {
        [] => out.push(op[acc]),
        [last] => out.extend(last.iter().map(|&v| op[acc * size + v as usize])),
        [first, rest @ ..] => {
            for &v in first.iter() {
                compose(op, size, rest, acc * size + v as usize, out);
            }
        }
    }
}

pub fn term_function(g: &Groupoid, t: &Bracketing, limits: &Limits) -> Result<TermFunction> {
    Evaluator::new(g, *limits).term_function(t)
}

/// Level `n` of the fine spectrum of `g`.
pub fn fine_level(g: &Groupoid, n: usize, limits: &Limits) -> Result<Partition> {
    Evaluator::new(g, *limits).fine_level(n)
}

/// Levels `0..=max_n` of the fine spectrum of `g`.
pub fn fine_spectrum(g: &Groupoid, max_n: usize, limits: &Limits) -> Result<SpectrumPrefix> {
    let (levels, err) = Evaluator::new(g, *limits).fine_levels(max_n);
    match err {
        Some(e) => Err(e),
        None => SpectrumPrefix::new(g.arity(), levels),
    }
}

/// Class counts `s_0, …, s_{max_n}` of the fine spectrum.
pub fn assoc_spectrum(g: &Groupoid, max_n: usize, limits: &Limits) -> Result<Vec<usize>> {
    Ok(fine_spectrum(g, max_n, limits)?.class_counts())
}

/// Whether all bracketings with two operation symbols induce the same term
/// function; for binary groupoids this is `(xy)z = x(yz)`.
pub fn is_associative(g: &Groupoid) -> bool {
    fine_level(g, 2, &Limits::default())
        .map(|part| part.is_full())
        .expect("level 2 of a carrier of at most 256 elements fits the default cap")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracketing::TextFormat;

    fn b(s: &str) -> Bracketing {
        Bracketing::parse(s, 2, TextFormat::Infix).unwrap()
    }

    fn egg4() -> Groupoid {
        Groupoid::new(
            2,
            4,
            vec![0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 2, 0, 1, 2, 2],
            None,
        )
        .unwrap()
    }

    fn saturating(m: usize) -> Groupoid {
        Groupoid::from_fn(2, m, None, |a| {
            (a[0] as usize + a[1] as usize).min(m - 1) as Element
        })
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let g = egg4();
        assert_eq!(eval_term(&g, &b("(xx)"), &[3, 3]).unwrap(), 2);
        assert_eq!(eval_term(&g, &b("x"), &[1]).unwrap(), 1);
        assert!(matches!(
            eval_term(&g, &b("(xx)"), &[3]),
            Err(Error::LengthMismatch { .. })
        ));
        let ternary = Bracketing::left_associated(1, 3).unwrap();
        assert!(matches!(
            eval_term(&g, &ternary, &[0, 0, 0]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn tables_agree_with_direct_evaluation() {
        let g = egg4();
        let mut ev = Evaluator::new(&g, Limits::default());
        for t in crate::enumerate_bracketings(3, 2, &Limits::default()).unwrap() {
            let tf = ev.term_function(&t).unwrap();
            assert_eq!(tf.vars(), 4);
            let mut args = [0u8; 4];
            for idx in 0..256usize {
                for (i, slot) in args.iter_mut().enumerate() {
                    *slot = ((idx >> (2 * (3 - i))) & 3) as u8;
                }
                assert_eq!(tf.eval(&args), eval_term(&g, &t, &args).unwrap());
            }
        }
    }

    #[test]
    fn ternary_tables_agree_with_direct_evaluation() {
        let g = Groupoid::from_fn(3, 3, None, |a| {
            ((a[0] + 2 * a[1] + a[2] * a[2]) % 3) as Element
        })
        .unwrap();
        let mut ev = Evaluator::new(&g, Limits::default());
        for t in crate::enumerate_bracketings(2, 3, &Limits::default()).unwrap() {
            let tf = ev.term_function(&t).unwrap();
            for idx in 0..3usize.pow(5) {
                let args: Vec<Element> = (0..5)
                    .map(|i| ((idx / 3usize.pow(4 - i)) % 3) as Element)
                    .collect();
                assert_eq!(tf.eval(&args), eval_term(&g, &t, &args).unwrap());
            }
        }
    }

    #[test]
    fn trivial_groupoid_is_constant() {
        let g = Groupoid::new(2, 1, vec![0], None).unwrap();
        let tf = term_function(&g, &b("((xx)(xx))"), &Limits::default()).unwrap();
        assert!(tf.is_constant());
        assert_eq!(
            assoc_spectrum(&g, 5, &Limits::default()).unwrap(),
            vec![1; 6]
        );
    }

    #[test]
    fn low_levels_are_single_classes() {
        for g in [egg4(), saturating(3)] {
            for n in 0..2 {
                assert_eq!(
                    fine_level(&g, n, &Limits::default()).unwrap().class_count(),
                    1
                );
            }
        }
    }

    #[test]
    fn saturating_sum_is_associative() {
        let g = saturating(3);
        assert!(is_associative(&g));
        assert_eq!(
            assoc_spectrum(&g, 5, &Limits::default()).unwrap(),
            vec![1; 6]
        );
        assert!(!is_associative(&egg4()));
        assert!(is_associative(&Groupoid::new(2, 1, vec![0], None).unwrap()));
    }

    #[test]
    fn egg4_witness_of_non_associativity() {
        let g = egg4();
        // (3·3)·3 and 3·(3·3) agree (both 2); (3·3)·1 = 0 but 3·(3·1) = 1.
        assert_eq!(eval_term(&g, &b("((xx)x)"), &[3, 3, 3]).unwrap(), 2);
        assert_eq!(eval_term(&g, &b("(x(xx))"), &[3, 3, 3]).unwrap(), 2);
        assert_eq!(eval_term(&g, &b("((xx)x)"), &[3, 3, 1]).unwrap(), 0);
        assert_eq!(eval_term(&g, &b("(x(xx))"), &[3, 3, 1]).unwrap(), 1);
    }

    #[test]
    fn cell_cap() {
        let tight = Limits {
            max_cells: 100,
            ..Limits::default()
        };
        assert!(matches!(
            fine_level(&egg4(), 3, &tight),
            Err(Error::CapExceeded { .. })
        ));
        let (levels, err) = Evaluator::new(&egg4(), tight).fine_levels(5);
        assert_eq!(levels.len(), 2);
        assert!(err.is_some());
    }
}
