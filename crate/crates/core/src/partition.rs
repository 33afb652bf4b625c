//! Equivalence relations on one level `B_n` of bracketings.
//!
//! Elements of a level are identified with their rank in canonical order
//! (lexicographic on insertion tuples). A [`Partition`] is a dense array of
//! class ids indexed by rank, normalised so that ids are `0..c` in order of
//! first appearance.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::bracketing::{check_level_size, Bracketing};
use crate::error::{Error, Result};
use crate::tuple::{entry_bound, enumerate_m, parse_tuple, InsertionTuple};
use crate::Limits;

/// The enumerated level `B_n` for a fixed arity, with a rank function.
#[derive(Debug, Clone)]
pub struct Level {
    n: usize,
    arity: usize,
    tuples: Vec<InsertionTuple>,
    // completions[q][v]: ways to fill positions q+1..=n (1-based) weakly
    // increasing from at least v. Indexed [q][v] with q in 0..=n.
    completions: Vec<Vec<u64>>,
}

impl Level {
    pub fn new(n: usize, arity: usize, limits: &Limits) -> Result<Self> {
        check_level_size(n, arity, limits)?;
        let tuples = enumerate_m(n, 1, arity, limits)?;
        let max_value = entry_bound(n.max(1), 1, arity) + 1;
        let mut completions = vec![vec![0u64; max_value + 1]; n + 1];
        completions[n].fill(1);
        for q in (0..n).rev() {
            // Position q+1 takes a value w in v..=bound.
            let bound = entry_bound(q + 1, 1, arity);
            let mut acc = 0u64;
            for v in (1..=max_value).rev() {
                if v <= bound {
                    acc += completions[q + 1][v];
                }
                completions[q][v] = acc;
            }
        }
        Ok(Level {
            n,
            arity,
            tuples,
            completions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuples(&self) -> &[InsertionTuple] {
        &self.tuples
    }

    pub fn bracketing(&self, rank: usize) -> Bracketing {
        self.tuples[rank].to_bracketing_unchecked()
    }

    pub fn bracketings(&self) -> impl Iterator<Item = Bracketing> + '_ {
        self.tuples
            .iter()
            .map(InsertionTuple::to_bracketing_unchecked)
    }

    /// Canonical rank of a tuple of this level.
    pub fn rank(&self, tuple: &InsertionTuple) -> Result<usize> {
        if tuple.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: tuple.arity(),
            });
        }
        if tuple.len() != self.n {
            return Err(Error::LevelMismatch {
                expected: self.n,
                found: tuple.len(),
            });
        }
        if !tuple.is_bracketing() {
            return Err(Error::InvalidTuple {
                tuple: tuple.to_string(),
                reason: "not the tuple of a bracketing".into(),
            });
        }
        Ok(self.rank_unchecked(tuple.entries()))
    }

    pub(crate) fn rank_unchecked(&self, entries: &[usize]) -> usize {
        let mut rank = 0u64;
        let mut low = 1;
        for (q, &u) in entries.iter().enumerate() {
            // Tuples that agree before position q+1 and carry w in low..u there.
            rank += self.completions[q][low] - self.completions[q][u];
            low = u;
        }
        rank as usize
    }

    pub fn rank_of(&self, t: &Bracketing) -> Result<usize> {
        self.rank(&InsertionTuple::of(t))
    }
}

/// Union-find over `0..n` with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (big, small) = if self.size[a] >= self.size[b] {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    pub fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    level: usize,
    arity: usize,
    class_of: Vec<u32>,
    classes: usize,
}

impl Partition {
    /// Builds a partition from arbitrary labels, one per element in rank order.
    pub fn from_labels<K: Eq + Hash>(
        level: usize,
        arity: usize,
        labels: impl IntoIterator<Item = K>,
    ) -> Self {
        let mut ids: HashMap<K, u32> = HashMap::new();
        let class_of: Vec<u32> = labels
            .into_iter()
            .map(|k| {
                let next = ids.len() as u32;
                *ids.entry(k).or_insert(next)
            })
            .collect();
        Partition {
            level,
            arity,
            class_of,
            classes: ids.len(),
        }
    }

    /// Validates the element count against the level.
    pub fn from_labels_checked<K: Eq + Hash>(
        level: &Level,
        labels: impl IntoIterator<Item = K>,
    ) -> Result<Self> {
        let part = Self::from_labels(level.n(), level.arity(), labels);
        if part.size() != level.size() {
            return Err(Error::LengthMismatch {
                expected: level.size(),
                found: part.size(),
            });
        }
        Ok(part)
    }

    /// Classes keyed by a function of each bracketing's insertion tuple.
    pub fn keyed_by<K: Eq + Hash>(level: &Level, key: impl FnMut(&InsertionTuple) -> K) -> Self {
        Self::from_labels(level.n(), level.arity(), level.tuples().iter().map(key))
    }

    /// Every element alone.
    pub fn equality(level: &Level) -> Self {
        Self::from_labels(level.n(), level.arity(), 0..level.size())
    }

    /// One class.
    pub fn full(level: &Level) -> Self {
        Self::from_labels(
            level.n(),
            level.arity(),
            std::iter::repeat_n((), level.size()),
        )
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, rank: usize) -> usize {
        self.class_of[rank] as usize
    }

    pub fn class_ids(&self) -> &[u32] {
        &self.class_of
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Members of each class, in rank order, indexed by class id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes];
        for (rank, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(rank);
        }
        out
    }

    /// First member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = Vec::with_capacity(self.classes);
        for (rank, &c) in self.class_of.iter().enumerate() {
            if c as usize == reps.len() {
                reps.push(rank);
            }
        }
        reps
    }

    pub fn is_equality(&self) -> bool {
        self.classes == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.classes <= 1
    }

    fn check_compatible(&self, other: &Partition) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: other.level,
            });
        }
        Ok(())
    }

    /// A pair of elements together in `self` but apart in `other`, if any.
    pub fn refinement_witness(&self, other: &Partition) -> Result<Option<(usize, usize)>> {
        self.check_compatible(other)?;
        let mut target: Vec<Option<(u32, usize)>> = vec![None; self.classes];
        for (rank, (&mine, &theirs)) in self.class_of.iter().zip(&other.class_of).enumerate() {
            match target[mine as usize] {
                None => target[mine as usize] = Some((theirs, rank)),
                Some((expected, first)) if expected != theirs => return Ok(Some((first, rank))),
                Some(_) => {}
            }
        }
        Ok(None)
    }

    /// Whether every class of `self` lies inside one class of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        Ok(self.refinement_witness(other)?.is_none())
    }

    /// Classwise intersection: the coarsest partition refining both.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_compatible(other)?;
        Ok(Partition::from_labels(
            self.level,
            self.arity,
            self.class_of
                .iter()
                .zip(&other.class_of)
                .map(|(a, b)| (*a, *b)),
        ))
    }

    /// Writes the text block: a header line and one line per class.
    pub fn render(&self, level: &Level) -> String {
        assert_eq!(
            level.n(),
            self.level,
            "level table does not match partition"
        );
        let mut out = format!(
            "level={} p={} classes={}\n",
            self.level, self.arity, self.classes
        );
        for (id, members) in self.classes().iter().enumerate() {
            out.push_str(&format!("class {id}:"));
            for &rank in members {
                out.push(' ');
                out.push_str(&level.tuples()[rank].to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parses one text block as written by [`render`](Self::render).
    pub fn parse(text: &str, limits: &Limits) -> Result<Partition> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Schema("empty partition block".into()))?;
        let (n, p, c) = parse_header(header)?;
        let level = Level::new(n, p, limits)?;
        let mut labels: Vec<Option<usize>> = vec![None; level.size()];
        let mut seen_classes = 0;
        for line in lines {
            let (head, members) = line
                .split_once(':')
                .ok_or_else(|| Error::Schema(format!("expected 'class <id>: …', got {line:?}")))?;
            let id: usize = head
                .strip_prefix("class")
                .map(str::trim)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Schema(format!("bad class label {head:?}")))?;
            seen_classes += 1;
            for token in members.split_whitespace() {
                let tuple = parse_tuple(token, p)?;
                let rank = level.rank(&tuple)?;
                if labels[rank].replace(id).is_some() {
                    return Err(Error::Schema(format!("{tuple} listed twice")));
                }
            }
        }
        if seen_classes != c {
            return Err(Error::Schema(format!(
                "header announces {c} classes but {seen_classes} were listed"
            )));
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(rank, l)| {
                l.ok_or_else(|| {
                    Error::Schema(format!("{} is not classified", level.tuples()[rank]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let part = Partition::from_labels(n, p, labels);
        if part.class_count() != c {
            return Err(Error::Schema(format!(
                "header announces {c} classes but {} are non-empty",
                part.class_count()
            )));
        }
        Ok(part)
    }
}

fn parse_header(header: &str) -> Result<(usize, usize, usize)> {
    let mut fields: HashMap<&str, usize> = HashMap::new();
    for token in header.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::Schema(format!("bad header field {token:?}")))?;
        let value = value
            .parse()
            .map_err(|_| Error::Schema(format!("bad number in {token:?}")))?;
        fields.insert(key, value);
    }
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| Error::Schema(format!("header is missing {k}=")))
    };
    Ok((get("level")?, get("p")?, get("classes")?))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Partition(level={}, p={}, classes={})",
            self.level, self.arity, self.classes
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(n: usize, p: usize) -> Level {
        Level::new(n, p, &Limits::default()).unwrap()
    }

    #[test]
    fn rank_is_position_in_enumeration() {
        for (n, p) in [(0, 2), (1, 2), (4, 2), (7, 2), (3, 3), (4, 3), (3, 4)] {
            let lv = level(n, p);
            for (i, t) in lv.tuples().iter().enumerate() {
                assert_eq!(lv.rank(t).unwrap(), i, "n={n} p={p} {t}");
            }
        }
    }

    #[test]
    fn rank_rejects_foreign_tuples() {
        let lv = level(2, 2);
        assert!(lv.rank(&"(1)".parse().unwrap()).is_err());
        assert!(lv.rank(&"(1,3)".parse().unwrap()).is_err());
    }

    #[test]
    fn normalisation_by_first_appearance() {
        let p = Partition::from_labels(3, 2, ["b", "a", "b", "c", "a"]);
        assert_eq!(p.class_ids(), &[0, 1, 0, 2, 1]);
        assert_eq!(p.class_count(), 3);
        assert_eq!(p.representatives(), vec![0, 1, 3]);
        assert_eq!(p.classes(), vec![vec![0, 2], vec![1, 4], vec![3]]);
    }

    #[test]
    fn meet_identities() {
        let lv = level(3, 2);
        let x = Partition::from_labels(3, 2, [0, 0, 1, 1, 0]);
        assert_eq!(Partition::full(&lv).meet(&x).unwrap(), x);
        assert_eq!(
            Partition::equality(&lv).meet(&x).unwrap(),
            Partition::equality(&lv)
        );
        let other_level = Partition::full(&level(2, 2));
        assert!(matches!(
            x.meet(&other_level),
            Err(Error::LevelMismatch { .. })
        ));
        let ternary = Partition::full(&level(3, 3));
        assert!(matches!(x.meet(&ternary), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn refinement() {
        let fine = Partition::from_labels(3, 2, [0, 1, 2, 3, 3]);
        let coarse = Partition::from_labels(3, 2, [0, 0, 1, 2, 2]);
        assert!(fine.refines(&coarse).unwrap());
        assert!(!coarse.refines(&fine).unwrap());
        assert_eq!(coarse.refinement_witness(&fine).unwrap(), Some((0, 1)));
    }

    #[test]
    fn text_round_trip() {
        let lv = level(3, 2);
        let part = Partition::from_labels(3, 2, [0, 0, 1, 2, 2]);
        let text = part.render(&lv);
        assert_eq!(
            text,
            "level=3 p=2 classes=3\nclass 0: (1,1,1) (1,1,2)\nclass 1: (1,1,3)\nclass 2: (1,2,2) (1,2,3)\n"
        );
        assert_eq!(Partition::parse(&text, &Limits::default()).unwrap(), part);
    }

    #[test]
    fn text_errors() {
        let limits = Limits::default();
        assert!(Partition::parse("", &limits).is_err());
        assert!(Partition::parse("level=2 p=2 classes=1\nclass 0: (1,1)\n", &limits).is_err());
        assert!(Partition::parse(
            "level=2 p=2 classes=1\nclass 0: (1,1) (1,2) (1,1)\n",
            &limits
        )
        .is_err());
        assert!(
            Partition::parse("level=2 p=2 classes=2\nclass 0: (1,1) (1,2)\n", &limits).is_err()
        );
        assert!(Partition::parse("level=2 classes=1\nclass 0: (1,1) (1,2)\n", &limits).is_err());
    }

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 3));
        assert!(uf.union(3, 4));
        assert!(!uf.union(4, 0));
        let labels = uf.labels();
        assert_eq!(labels[0], labels[4]);
        assert_ne!(labels[0], labels[1]);
    }
}
