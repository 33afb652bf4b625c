//! Spectrum prefixes, the implication operator and the closure test, plus the
//! named abstract spectra and lattice probes built on them.
//!
//! A sequence of partitions `(Σ_0, …, Σ_N)` is a prefix of some groupoid's
//! fine spectrum exactly when each `Σ_{n+1}` contains the implication image of
//! `Σ_n`: the equivalence generated by all pairs `(ξ(s), ξ(t))` with `s ~ t`
//! in `Σ_n` and `ξ` ranging over the `p` wrapping maps and the `(p-1)n + 1`
//! leaf expansions.

use std::fmt;

use crate::bracketing::{check_arity, Bracketing};
use crate::error::{Error, Result};
use crate::partition::{Level, Partition, UnionFind};
use crate::tuple::InsertionTuple;
use crate::{BigCount, Limits};

/// Images of one tuple under every wrapping and leaf-expansion map, in the
/// order wrap 1..=p, expand 1..=(p-1)n+1.
fn successor_tuples(t: &InsertionTuple) -> impl Iterator<Item = InsertionTuple> + '_ {
    let p = t.arity();
    let leaves = (p - 1) * t.len() + 1;
    (1..=p)
        .map(move |i| t.wrap_at_unchecked(i))
        .chain((1..=leaves).map(move |i| t.expand_leaf_unchecked(i)))
}

fn implication_between(pi: &Partition, source: &Level, target: &Level) -> Partition {
    debug_assert_eq!(pi.size(), source.size());
    let images: Vec<Vec<usize>> = source
        .tuples()
        .iter()
        .map(|t| {
            successor_tuples(t)
                .map(|img| target.rank_unchecked(img.entries()))
                .collect()
        })
        .collect();

    let mut uf = UnionFind::new(target.size());
    let mut touched = vec![false; target.size()];
    let reps = pi.representatives();
    for (rank, imgs) in images.iter().enumerate() {
        for &img in imgs {
            touched[img] = true;
        }
        let rep = reps[pi.class_of(rank)];
        if rep != rank {
            for (&a, &b) in imgs.iter().zip(&images[rep]) {
                uf.union(a, b);
            }
        }
    }
    // Every bracketing at level n+1 is a leaf expansion of one at level n.
    assert!(
        touched.iter().all(|&t| t),
        "implication image does not cover level {}",
        target.n()
    );
    Partition::from_labels(target.n(), target.arity(), uf.labels())
}

/// The implication operator: maps a partition of `B_n` to the finest
/// partition of `B_{n+1}` forced by it.
pub fn implication(pi: &Partition, limits: &Limits) -> Result<Partition> {
    let source = Level::new(pi.level(), pi.arity(), limits)?;
    if source.size() != pi.size() {
        return Err(Error::LengthMismatch {
            expected: source.size(),
            found: pi.size(),
        });
    }
    let target = Level::new(pi.level() + 1, pi.arity(), limits)?;
    Ok(implication_between(pi, &source, &target))
}

/// Alias kept for readers who know the operator by its usual letter.
pub use self::implication as delta;

/// A finite sequence `(Σ_0, …, Σ_N)` of partitions of consecutive levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumPrefix {
    arity: usize,
    levels: Vec<Partition>,
}

impl SpectrumPrefix {
    pub fn new(arity: usize, levels: Vec<Partition>) -> Result<Self> {
        check_arity(arity)?;
        if levels.is_empty() {
            return Err(Error::Precondition(
                "a spectrum prefix needs level 0".into(),
            ));
        }
        for (n, part) in levels.iter().enumerate() {
            if part.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: part.arity(),
                });
            }
            if part.level() != n {
                return Err(Error::LevelMismatch {
                    expected: n,
                    found: part.level(),
                });
            }
            let expected: BigCount = crate::counting::catalan(n as u64, arity as u64);
            if BigCount::from(part.size()) != expected {
                return Err(Error::Precondition(format!(
                    "partition at level {n} covers {} elements, the level has {expected}",
                    part.size()
                )));
            }
        }
        Ok(SpectrumPrefix { arity, levels })
    }

    /// Builds levels `0..=horizon` from a per-level constructor.
    pub fn from_fn(
        arity: usize,
        horizon: usize,
        limits: &Limits,
        mut build: impl FnMut(&Level) -> Result<Partition>,
    ) -> Result<Self> {
        let levels = (0..=horizon)
            .map(|n| build(&Level::new(n, arity, limits)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(arity, levels)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Highest level `N`.
    pub fn horizon(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> Option<&Partition> {
        self.levels.get(n)
    }

    pub fn class_counts(&self) -> Vec<usize> {
        self.levels.iter().map(Partition::class_count).collect()
    }

    /// Drops every level above `horizon`.
    pub fn truncate(&mut self, horizon: usize) {
        self.levels.truncate(horizon + 1);
    }

    /// Blank-line separated partition blocks.
    pub fn render(&self, limits: &Limits) -> Result<String> {
        let mut blocks = Vec::with_capacity(self.levels.len());
        for part in &self.levels {
            let level = Level::new(part.level(), self.arity, limits)?;
            blocks.push(part.render(&level));
        }
        Ok(blocks.join("\n"))
    }

    pub fn parse(text: &str, limits: &Limits) -> Result<Self> {
        let mut blocks: Vec<String> = Vec::new();
        let mut current = String::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                if !current.is_empty() && line.is_empty() {
                    blocks.push(std::mem::take(&mut current));
                }
                continue;
            }
            current.push_str(line);
            current.push('\n');
        }
        if !current.is_empty() {
            blocks.push(current);
        }
        let levels = blocks
            .iter()
            .map(|b| Partition::parse(b, limits))
            .collect::<Result<Vec<_>>>()?;
        let arity = levels
            .first()
            .map(Partition::arity)
            .ok_or_else(|| Error::Schema("no partition blocks".into()))?;
        Self::new(arity, levels)
    }
}

/// A pair forced together by the implication operator but separated by the
/// next level of the prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Source level `n`; the witnesses live at level `n + 1`.
    pub level: usize,
    pub first: InsertionTuple,
    pub second: InsertionTuple,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "VIOLATION at n={}: {} ~ {} required",
            self.level,
            self.first.to_bracketing_unchecked(),
            self.second.to_bracketing_unchecked()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub violation: Option<Violation>,
}

impl ClosureReport {
    pub fn is_closed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that every level contains the implication image of the previous one.
pub fn verify_closed(sigma: &SpectrumPrefix, limits: &Limits) -> Result<ClosureReport> {
    let mut source = Level::new(0, sigma.arity, limits)?;
    for n in 0..sigma.horizon() {
        let target = Level::new(n + 1, sigma.arity, limits)?;
        let implied = implication_between(&sigma.levels[n], &source, &target);
        if let Some((a, b)) = implied.refinement_witness(&sigma.levels[n + 1])? {
            return Ok(ClosureReport {
                violation: Some(Violation {
                    level: n,
                    first: target.tuples()[a].clone(),
                    second: target.tuples()[b].clone(),
                }),
            });
        }
        source = target;
    }
    Ok(ClosureReport { violation: None })
}

/// Covering relation between two closed prefixes, `a` below `b`: they differ
/// at exactly one level, and there `b` merges exactly two classes of `a`.
pub fn covers(a: &SpectrumPrefix, b: &SpectrumPrefix, limits: &Limits) -> Result<bool> {
    if a.arity != b.arity {
        return Err(Error::ArityMismatch {
            expected: a.arity,
            found: b.arity,
        });
    }
    if a.horizon() != b.horizon() {
        return Err(Error::Precondition(format!(
            "horizons differ ({} vs {})",
            a.horizon(),
            b.horizon()
        )));
    }
    for (name, s) in [("lower", a), ("upper", b)] {
        if let Some(v) = verify_closed(s, limits)?.violation {
            return Err(Error::Precondition(format!(
                "{name} prefix is not closed: {v}"
            )));
        }
    }
    let mut differing = Vec::new();
    for (n, (pa, pb)) in a.levels.iter().zip(&b.levels).enumerate() {
        if !pa.refines(pb)? {
            return Err(Error::Precondition(format!(
                "lower prefix does not refine the upper one at level {n}"
            )));
        }
        if pa != pb {
            differing.push(n);
        }
    }
    Ok(match differing.as_slice() {
        [n] => a.levels[*n].class_count() == b.levels[*n].class_count() + 1,
        _ => false,
    })
}

/// Bracketings with at least `threshold` egg pairs form one class; all other
/// bracketings are singletons.
pub fn egg_threshold_partition(n: usize, threshold: usize, limits: &Limits) -> Result<Partition> {
    let level = Level::new(n, 2, limits)?;
    Ok(egg_threshold_on(&level, threshold))
}

fn egg_threshold_on(level: &Level, threshold: usize) -> Partition {
    let labels = level.bracketings().enumerate().map(|(rank, t)| {
        let eggs = t.egg_pairs().expect("binary level");
        (eggs < threshold).then_some(rank)
    });
    Partition::from_labels(level.n(), 2, labels)
}

/// The three-egg partition: at least three egg pairs merge, everything else
/// stays apart.
pub fn three_egg_partition(n: usize, limits: &Limits) -> Result<Partition> {
    egg_threshold_partition(n, 3, limits)
}

/// `(…(((xx)(xx))x)x…x)(xx)` with `n` operation symbols: it has exactly three
/// egg pairs but no occurrence-reducing preimage with three.
pub fn egg_gap_witness(n: usize) -> Result<Bracketing> {
    if n < 5 {
        return Err(Error::Precondition(format!(
            "the witness needs n >= 5, got {n}"
        )));
    }
    let x = Bracketing::leaf(2)?;
    let egg = Bracketing::node(2, &[x.clone(), x.clone()])?;
    let mut left = Bracketing::node(2, &[egg.clone(), egg.clone()])?;
    for _ in 5..n {
        left = Bracketing::node(2, &[left, x.clone()])?;
    }
    Bracketing::node(2, &[left, egg])
}

/// The prefix driven by a 0/1 sequence `a_0 … a_N`: level `n` takes the
/// implication image of level `n - 1` when `a_n = 0` and the three-egg
/// partition when `a_n = 1`. The first five bits must be zero.
pub fn egg_switch_spectrum(bits: &[bool], limits: &Limits) -> Result<SpectrumPrefix> {
    if bits.is_empty() {
        return Err(Error::Precondition("bit sequence is empty".into()));
    }
    if let Some(i) = bits.iter().take(5).position(|&b| b) {
        return Err(Error::Precondition(format!(
            "bit {i} is set; the first five bits must be 0"
        )));
    }
    let mut source = Level::new(0, 2, limits)?;
    let mut levels = vec![Partition::equality(&source)];
    for (n, &bit) in bits.iter().enumerate().skip(1) {
        let target = Level::new(n, 2, limits)?;
        let next = if bit {
            egg_threshold_on(&target, 3)
        } else {
            implication_between(levels.last().expect("level 0 present"), &source, &target)
        };
        levels.push(next);
        source = target;
    }
    SpectrumPrefix::new(2, levels)
}

/// Parses a `0`/`1` string into bits.
pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.char_indices()
        .map(|(offset, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse {
                offset,
                message: format!("expected '0' or '1', got {other:?}"),
            }),
        })
        .collect()
}

/// `s ~ t` iff the first `k` iterated left-factor lengths agree.
pub fn left_factor_partition(n: usize, k: usize, limits: &Limits) -> Result<Partition> {
    let level = Level::new(n, 2, limits)?;
    let keys = level
        .bracketings()
        .map(|t| t.left_lengths(k))
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_labels(n, 2, keys))
}

/// `s ~ t` iff the last `k` insertion-tuple entries agree; equality when `n < k`.
pub fn tail_tuple_partition(n: usize, k: usize, p: usize, limits: &Limits) -> Result<Partition> {
    let level = Level::new(n, p, limits)?;
    if n < k {
        return Ok(Partition::equality(&level));
    }
    Ok(Partition::keyed_by(&level, |t| {
        t.entries()[n - k..].to_vec()
    }))
}

/// `s ~ t` iff the left depths and the right depths agree.
pub fn depth_pair_partition(n: usize, limits: &Limits) -> Result<Partition> {
    let level = Level::new(n, 2, limits)?;
    let keys = level
        .bracketings()
        .map(|t| t.left_right_depth())
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_labels(n, 2, keys))
}

/// Horizon used by [`coatom_census`]; above level 2 every candidate is full,
/// and the implication image of a full level is full.
pub const COATOM_HORIZON: usize = 4;

/// Counts the prefixes that are full everywhere except a two-class level 2,
/// checking each for closure.
pub fn coatom_census(p: usize, limits: &Limits) -> Result<BigCount> {
    check_arity(p)?;
    if p > 6 {
        return Err(Error::Precondition(format!(
            "coatom census enumerates partitions of a {p}-element level; p <= 6 required"
        )));
    }
    let levels = (0..=COATOM_HORIZON)
        .map(|n| Level::new(n, p, limits))
        .collect::<Result<Vec<_>>>()?;
    let full: Vec<Partition> = levels.iter().map(Partition::full).collect();
    let two = &levels[2];
    let mut count = BigCount::from(0u32);
    // Element 0 sits in the first block; the mask picks the second block.
    for mask in 1u32..(1 << (two.size() - 1)) {
        let labels = (0..two.size()).map(|i| i > 0 && mask & (1 << (i - 1)) != 0);
        let split = Partition::from_labels(2, p, labels);
        debug_assert_eq!(split.class_count(), 2);
        let mut prefix = full.clone();
        prefix[2] = split;
        let sigma = SpectrumPrefix::new(p, prefix)?;
        if verify_closed(&sigma, limits)?.is_closed() {
            count += 1u32;
        }
    }
    Ok(count)
}
