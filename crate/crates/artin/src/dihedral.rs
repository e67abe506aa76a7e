//! Two-generator machinery: the p/n statistics, the geodesic criterion,
//! critical-word classification, and the tau and delta rewrites.
//!
//! Everything here works on freely reduced words involving at most two
//! generator names, relative to the relation length `m` of that pair.

use thiserror::Error;

use crate::context::MValue;
use crate::word::{alt_left, alt_right, GeneratorId, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DihedralError {
    #[error("word involves {0} generator names; at most two are allowed here")]
    TooManyNames(usize),
    #[error("delta is undefined for an infinite relation length")]
    DeltaUndefined,
}

/// Verdict of the dihedral geodesic criterion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeodesicStatus {
    /// p + n < m: the unique geodesic representative.
    GeodesicUnique,
    /// p + n = m: geodesic, but other representatives exist.
    GeodesicNonUnique,
    /// p + n > m: not geodesic.
    NonGeodesic,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CriticalKind {
    AllPosFull,
    AllNegFull,
    UnsignedPosNeg,
    UnsignedNegPos,
    PosLeft,
    PosRight,
    NegLeft,
    NegRight,
    OverCriticalPosNeg,
    OverCriticalNegPos,
}

impl CriticalKind {
    pub fn is_over_critical(self) -> bool {
        matches!(
            self,
            CriticalKind::OverCriticalPosNeg | CriticalKind::OverCriticalNegPos
        )
    }
}

/// Generator roles in a critical decomposition. `x`/`y` name the leading
/// alternating block, `z`/`t` the trailing one; always `{x,y} = {z,t}` as
/// sets of the two active generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Roles {
    pub x: GeneratorId,
    pub y: GeneratorId,
    pub z: GeneratorId,
    pub t: GeneratorId,
}

/// Classification record of a critical or over-critical word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CriticalForm {
    pub kind: CriticalKind,
    pub p: usize,
    pub n: usize,
    pub roles: Roles,
    /// The interior subword between the two alternating blocks.
    pub core: Word,
}

fn check_names(w: &Word) -> Result<(), DihedralError> {
    let names = w.generators_of();
    if names.len() > 2 {
        return Err(DihedralError::TooManyNames(names.len()));
    }
    Ok(())
}

fn longest_alternating(w: &Word, positive: bool) -> usize {
    let mut best = 0usize;
    let mut cur = 0usize;
    let mut prev: Option<Letter> = None;
    for &l in w.letters() {
        if l.is_positive() == positive {
            if prev.is_some_and(|p| p.name() != l.name()) && cur > 0 {
                cur += 1;
            } else {
                cur = 1;
            }
            prev = Some(l);
        } else {
            cur = 0;
            prev = None;
        }
        best = best.max(cur);
    }
    best
}

/// min(m, length of the longest positive alternating subword).
pub fn p_value(w: &Word, m: MValue) -> Result<usize, DihedralError> {
    check_names(w)?;
    let raw = longest_alternating(w, true);
    Ok(match m {
        MValue::Finite(m) => raw.min(m),
        MValue::Infinity => raw,
    })
}

/// min(m, length of the longest negative alternating subword).
pub fn n_value(w: &Word, m: MValue) -> Result<usize, DihedralError> {
    check_names(w)?;
    let raw = longest_alternating(w, false);
    Ok(match m {
        MValue::Finite(m) => raw.min(m),
        MValue::Infinity => raw,
    })
}

/// The Mairesse–Mathéus criterion: a freely reduced two-generator word is
/// geodesic iff p + n ≤ m, uniquely so iff the inequality is strict.
pub fn geodesic_status(w: &Word, m: MValue) -> Result<GeodesicStatus, DihedralError> {
    let p = p_value(w, m)?;
    let n = n_value(w, m)?;
    Ok(match m {
        MValue::Infinity => GeodesicStatus::GeodesicUnique,
        MValue::Finite(m) => {
            if p + n < m {
                GeodesicStatus::GeodesicUnique
            } else if p + n == m {
                GeodesicStatus::GeodesicNonUnique
            } else {
                GeodesicStatus::NonGeodesic
            }
        }
    })
}

fn is_alternating(letters: &[Letter], positive: bool) -> bool {
    letters.iter().all(|l| l.is_positive() == positive)
        && letters.windows(2).all(|w| w[0].name() != w[1].name())
}

/// Number of start positions of sign-pure alternating subwords of length
/// exactly `m`.
fn alternating_window_count(letters: &[Letter], m: usize, positive: bool) -> usize {
    if letters.len() < m {
        return 0;
    }
    (0..=letters.len() - m)
        .filter(|&i| is_alternating(&letters[i..i + m], positive))
        .count()
}

fn other_name(pair: (GeneratorId, GeneratorId), g: GeneratorId) -> GeneratorId {
    if pair.0 == g {
        pair.1
    } else {
        pair.0
    }
}

/// Classifies a freely reduced two-generator word as critical or
/// over-critical, or returns `None`.
///
/// Ties between shapes are resolved in the fixed order AllPosFull,
/// AllNegFull, UnsignedPosNeg, UnsignedNegPos, PosLeft, PosRight, NegLeft,
/// NegRight; in practice only the full alternating words are matched by
/// more than one shape.
pub fn classify_critical(w: &Word, m: MValue) -> Result<Option<CriticalForm>, DihedralError> {
    check_names(w)?;
    let m = match m {
        MValue::Finite(m) => m,
        // No relation: no critical words exist for this pair.
        MValue::Infinity => return Ok(None),
    };
    let p = p_value(w, MValue::Finite(m))?;
    let n = n_value(w, MValue::Finite(m))?;
    if p + n < m {
        return Ok(None);
    }
    // p + n ≥ m ≥ 4 forces two distinct names.
    let names = w.generators_of();
    Ok(classify_critical_given(
        w.letters(),
        (names[0], names[1]),
        m,
        p,
        n,
    ))
}

/// Classification core for callers that already track the active pair and
/// the capped alternating statistics `p`, `n` of `letters` incrementally.
pub(crate) fn classify_critical_given(
    letters: &[Letter],
    pair: (GeneratorId, GeneratorId),
    m: usize,
    p: usize,
    n: usize,
) -> Option<CriticalForm> {
    if p + n < m {
        return None;
    }

    let len = letters.len();
    let sub = |a: usize, b: usize| Word::from_letters(letters[a..b].to_vec());

    if p + n > m {
        // Over-critical: the leading run of length p and trailing run of
        // length n (or the signs swapped) must sit at the ends.
        debug_assert!(p >= 1 && n >= 1 && p + n <= len);

        if is_alternating(&letters[..p], true) && is_alternating(&letters[len - n..], false) {
            let x = letters[0].name();
            let t = letters[len - 1].name();
            return Some(CriticalForm {
                kind: CriticalKind::OverCriticalPosNeg,
                p,
                n,
                roles: Roles {
                    x,
                    y: other_name(pair, x),
                    z: other_name(pair, t),
                    t,
                },
                core: sub(p, len - n),
            });
        }
        if is_alternating(&letters[..n], false) && is_alternating(&letters[len - p..], true) {
            let x = letters[0].name();
            let t = letters[len - 1].name();
            return Some(CriticalForm {
                kind: CriticalKind::OverCriticalNegPos,
                p,
                n,
                roles: Roles {
                    x,
                    y: other_name(pair, x),
                    z: other_name(pair, t),
                    t,
                },
                core: sub(n, len - p),
            });
        }
        return None;
    }

    // p + n = m from here on.
    if n == 0 || p == 0 {
        // Sign-pure word with a full alternating block of length m:
        // critical iff that block is unique and sits at an end.
        let positive = n == 0;
        if alternating_window_count(letters, m, positive) != 1 {
            return None;
        }

        if len == m {
            let x = letters[0].name();
            let y = other_name(pair, x);
            return Some(CriticalForm {
                kind: if positive {
                    CriticalKind::AllPosFull
                } else {
                    CriticalKind::AllNegFull
                },
                p,
                n,
                roles: Roles { x, y, z: x, t: y },
                core: Word::new(),
            });
        }
        if is_alternating(&letters[..m], positive) {
            let x = letters[0].name();
            let core = sub(m, len);
            let z = core.last().unwrap().name();
            return Some(CriticalForm {
                kind: if positive {
                    CriticalKind::PosLeft
                } else {
                    CriticalKind::NegLeft
                },
                p,
                n,
                roles: Roles {
                    x,
                    y: other_name(pair, x),
                    z,
                    t: other_name(pair, z),
                },
                core,
            });
        }
        if is_alternating(&letters[len - m..], positive) {
            let y = letters[len - 1].name();
            let core = sub(0, len - m);
            let z = core.first().unwrap().name();
            return Some(CriticalForm {
                kind: if positive {
                    CriticalKind::PosRight
                } else {
                    CriticalKind::NegRight
                },
                p,
                n,
                roles: Roles {
                    x: other_name(pair, y),
                    y,
                    z,
                    t: other_name(pair, z),
                },
                core,
            });
        }
        return None;
    }

    // Unsigned with p, n ≥ 1; a freely reduced unsigned word uses both names.
    debug_assert!(p + n <= len);

    if is_alternating(&letters[..p], true) && is_alternating(&letters[len - n..], false) {
        let x = letters[0].name();
        let t = letters[len - 1].name();
        return Some(CriticalForm {
            kind: CriticalKind::UnsignedPosNeg,
            p,
            n,
            roles: Roles {
                x,
                y: other_name(pair, x),
                z: other_name(pair, t),
                t,
            },
            core: sub(p, len - n),
        });
    }
    if is_alternating(&letters[..n], false) && is_alternating(&letters[len - p..], true) {
        let x = letters[0].name();
        let t = letters[len - 1].name();
        return Some(CriticalForm {
            kind: CriticalKind::UnsignedNegPos,
            p,
            n,
            roles: Roles {
                x,
                y: other_name(pair, x),
                z: other_name(pair, t),
                t,
            },
            core: sub(n, len - p),
        });
    }
    None
}

/// Letter-wise conjugation by the relation element: identity for even `m`,
/// swaps the two generator names for odd `m`.
pub fn delta(w: &Word, x: GeneratorId, y: GeneratorId, m: MValue) -> Result<Word, DihedralError> {
    let m = m.finite().ok_or(DihedralError::DeltaUndefined)?;
    if m % 2 == 0 {
        return Ok(w.clone());
    }
    Ok(w.letters()
        .iter()
        .map(|&l| {
            let swapped = if l.name() == x { y } else { x };
            Letter {
                gen: swapped,
                sign: l.sign,
            }
        })
        .collect())
}

/// The tau image of a classified critical or over-critical word. For the
/// critical kinds the image has the same length and represents the same
/// element; for the over-critical kinds it is strictly shorter.
pub fn tau(form: &CriticalForm, m: MValue) -> Word {
    let mf = m.finite().expect("tau requires a finite relation length");
    let Roles { x, y, z, t } = form.roles;
    let (xp, yp, zp, tp) = (
        Letter::pos(x),
        Letter::pos(y),
        Letter::pos(z),
        Letter::pos(t),
    );
    let core = delta(&form.core, x, y, m).expect("finite m");
    let seg = |w: Result<Word, _>| w.expect("roles have distinct names");
    match form.kind {
        CriticalKind::UnsignedPosNeg => seg(alt_left(yp.inverse(), xp.inverse(), form.n))
            .concat(&core)
            .concat(&seg(alt_right(tp, zp, form.p))),
        CriticalKind::UnsignedNegPos => seg(alt_left(yp, xp, form.p))
            .concat(&core)
            .concat(&seg(alt_right(tp.inverse(), zp.inverse(), form.n))),
        CriticalKind::AllPosFull => seg(alt_left(yp, xp, mf)),
        CriticalKind::AllNegFull => seg(alt_left(yp.inverse(), xp.inverse(), mf)),
        CriticalKind::PosLeft => core.concat(&seg(alt_right(zp, tp, mf))),
        CriticalKind::PosRight => seg(alt_left(tp, zp, mf)).concat(&core),
        CriticalKind::NegLeft => core.concat(&seg(alt_right(zp.inverse(), tp.inverse(), mf))),
        CriticalKind::NegRight => seg(alt_left(tp.inverse(), zp.inverse(), mf)).concat(&core),
        CriticalKind::OverCriticalPosNeg => seg(alt_left(yp.inverse(), xp.inverse(), mf - form.p))
            .concat(&core)
            .concat(&seg(alt_right(tp, zp, mf - form.n))),
        CriticalKind::OverCriticalNegPos => seg(alt_left(yp, xp, mf - form.n))
            .concat(&core)
            .concat(&seg(alt_right(tp.inverse(), zp.inverse(), mf - form.p))),
    }
}
