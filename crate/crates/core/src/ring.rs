//! The binary operation `X_1 ⊕ X_2 = 3Y·X_1 + 2Y·X_2` on `Z_6[Y]`, truncated
//! modulo `Y^N`.
//!
//! The carrier is far too large to tabulate, so this groupoid is only ever
//! evaluated. For a bracketing `s` with `n >= 1` operation symbols the term
//! function collapses to `(3Y)^{d_l(s)}·X_1 + (2Y)^{d_r(s)}·X_{n+1}`, where
//! `d_l`, `d_r` are the depths of the leftmost and rightmost leaves;
//! [`ring_closed_form_check`] confirms that identity by random evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bracketing::Bracketing;
use crate::error::{Error, Result};
use crate::partition::Level;
use crate::Limits;

const MODULUS: u8 = 6;

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 16;

/// Coefficient vector of length `N`, lowest degree first.
pub type Poly = Vec<u8>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedRing {
    degree: usize,
}

impl TruncatedRing {
    pub fn new(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::BadParams {
                name: "truncated_ring".into(),
                reason: "truncation degree must be positive".into(),
            });
        }
        Ok(TruncatedRing { degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> Poly {
        vec![0; self.degree]
    }

    /// `c·Y^shift·a` modulo 6 and `Y^N`.
    fn scaled_shift(&self, a: &[u8], c: u8, shift: usize, out: &mut Poly) {
        for (i, &coef) in a.iter().enumerate() {
            let j = i + shift;
            if j >= self.degree {
                break;
            }
            out[j] = (out[j] + c * coef) % MODULUS;
        }
    }

    pub fn op(&self, a: &[u8], b: &[u8]) -> Poly {
        let mut out = self.zero();
        self.scaled_shift(a, 3, 1, &mut out);
        self.scaled_shift(b, 2, 1, &mut out);
        out
    }

    /// Evaluates a binary bracketing with leaf `i` bound to `args[i]`.
    pub fn eval(&self, t: &Bracketing, args: &[Poly]) -> Result<Poly> {
        if t.arity() != 2 {
            return Err(Error::UnsupportedArity(t.arity()));
        }
        if args.len() != t.len() {
            return Err(Error::LengthMismatch {
                expected: t.len(),
                found: args.len(),
            });
        }
        fn go(ring: &TruncatedRing, t: &Bracketing, args: &mut std::slice::Iter<'_, Poly>) -> Poly {
            match t.children() {
                None => args.next().expect("argument count checked").clone(),
                Some(children) => {
                    let left = go(ring, &children[0], args);
                    let right = go(ring, &children[1], args);
                    ring.op(&left, &right)
                }
            }
        }
        Ok(go(self, t, &mut args.iter()))
    }

    /// `(3Y)^{d_l}·X_1 + (2Y)^{d_r}·X_last`, or `X_1` for the bare variable.
    pub fn closed_form(&self, t: &Bracketing, args: &[Poly]) -> Result<Poly> {
        let (dl, dr) = t.left_right_depth()?;
        if t.is_leaf() {
            return Ok(args[0].clone());
        }
        let mut out = self.zero();
        self.scaled_shift(&args[0], pow_mod(3, dl), dl, &mut out);
        self.scaled_shift(&args[args.len() - 1], pow_mod(2, dr), dr, &mut out);
        Ok(out)
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Poly {
        (0..self.degree)
            .map(|_| rng.gen_range(0..MODULUS))
            .collect()
    }
}

fn pow_mod(base: u8, exp: usize) -> u8 {
    (0..exp).fold(1u8, |acc, _| acc * base % MODULUS)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMismatch {
    pub bracketing: String,
    pub trial: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCheckReport {
    pub degree: usize,
    pub level: usize,
    pub bracketings: usize,
    pub evaluations: usize,
    pub mismatches: Vec<RingMismatch>,
}

impl RingCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares recursive evaluation with the closed form on `trials` random
/// argument tuples for every bracketing at level `n`.
pub fn ring_closed_form_check(
    degree: usize,
    n: usize,
    trials: usize,
    seed: u64,
    limits: &Limits,
) -> Result<RingCheckReport> {
    let ring = TruncatedRing::new(degree)?;
    if n >= degree {
        return Err(Error::Precondition(format!(
            "level {n} must stay below the truncation degree {degree}"
        )));
    }
    let level = Level::new(n, 2, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    let mut evaluations = 0;
    for t in level.bracketings() {
        for trial in 0..trials {
            let args: Vec<Poly> = (0..t.len())
                .map(|_| ring.random_element(&mut rng))
                .collect();
            evaluations += 1;
            if ring.eval(&t, &args)? != ring.closed_form(&t, &args)? {
                mismatches.push(RingMismatch {
                    bracketing: t.to_string(),
                    trial,
                });
            }
        }
    }
    Ok(RingCheckReport {
        degree,
        level: n,
        bracketings: level.size(),
        evaluations,
        mismatches,
    })
}
