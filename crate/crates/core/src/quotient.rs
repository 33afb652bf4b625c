//! Finite groupoids realising finally associative spectra.
//!
//! Given a closed prefix that is full from level `cut` on, the carrier is the
//! set of classes of bracketings with fewer than `cut` operation symbols plus
//! an absorbing element `*`. A product whose bracketing would reach `cut`
//! operation symbols collapses to `*`.

use crate::bracketing::{Bracketing, TextFormat};
use crate::error::{Error, Result};
use crate::groupoid::{Element, Groupoid, MAX_CARRIER};
use crate::partition::Level;
use crate::spectrum::{verify_closed, SpectrumPrefix};
use crate::Limits;

/// Carrier order: classes sorted by occurrence number, then by the canonical
/// rank of their first member; `*` last.
pub fn quotient_from_spectrum(
    sigma: &SpectrumPrefix,
    cut: usize,
    limits: &Limits,
) -> Result<Groupoid> {
    if cut < 2 {
        return Err(Error::Precondition(format!(
            "cut must be at least 2, got {cut}"
        )));
    }
    if sigma.horizon() < cut {
        return Err(Error::Precondition(format!(
            "horizon {} is below the cut {cut}",
            sigma.horizon()
        )));
    }
    if let Some(n) = (cut..=sigma.horizon()).find(|&n| !sigma.levels()[n].is_full()) {
        return Err(Error::Precondition(format!(
            "level {n} is not full although it is at or above the cut {cut}"
        )));
    }
    if let Some(v) = verify_closed(sigma, limits)?.violation {
        return Err(Error::Precondition(format!("prefix is not closed: {v}")));
    }

    let p = sigma.arity();
    let levels = (0..cut)
        .map(|n| Level::new(n, p, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::with_capacity(cut);
    // (occurrence number, representative) per carrier element.
    let mut members: Vec<(usize, Bracketing)> = Vec::new();
    for (n, level) in levels.iter().enumerate() {
        offsets.push(members.len());
        for rep in sigma.levels()[n].representatives() {
            members.push((n, level.bracketing(rep)));
        }
    }
    let star = members.len();
    let size = star + 1;
    if size > MAX_CARRIER {
        return Err(Error::CapExceeded {
            what: "quotient carrier",
            required: format!("{size} elements"),
            cap: MAX_CARRIER as u64,
        });
    }

    let mut names: Vec<String> = members
        .iter()
        .map(|(_, t)| {
            format!(
                "[{}]",
                t.render(TextFormat::Prefix).expect("prefix always renders")
            )
        })
        .collect();
    names.push("*".into());

    let mut failure = None;
    let g = Groupoid::from_fn(p, size, Some(names), |args| {
        if args.iter().any(|&a| a as usize == star) {
            return star as Element;
        }
        let occ = 1 + args.iter().map(|&a| members[a as usize].0).sum::<usize>();
        if occ >= cut {
            return star as Element;
        }
        let children: Vec<Bracketing> = args
            .iter()
            .map(|&a| members[a as usize].1.clone())
            .collect();
        let product = Bracketing::node(p, &children).expect("children share the arity");
        match levels[occ].rank_of(&product) {
            Ok(rank) => (offsets[occ] + sigma.levels()[occ].class_of(rank)) as Element,
            Err(e) => {
                failure.get_or_insert(e);
                star as Element
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(g),
    }
}
