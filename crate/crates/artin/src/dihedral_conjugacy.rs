//! Conjugacy in the two-generator group, decided in the `y`-generator
//! picture.
//!
//! For finite even `m` the group is generated by `y1 = x1`, `y2 = x1·x2`
//! with `z = y2^(m/2)` central and quotient `C_∞ ⋆ C_(m/2)`. For odd `m`
//! the generators are `y1` (the alternating product of length m) and
//! `y2 = x1·x2`, with `z = y1² = y2^m` central and quotient `C_2 ⋆ C_m`.
//! For `m = ∞` both factors are infinite cyclic and `z` is trivial. Every
//! element has a unique normal form: an alternating syllable word with
//! exponents in fixed ranges, times a power of `z`. Conjugacy mod the
//! centre is cyclic rotation of syllables; a candidate witness is lifted
//! back and verified exactly, which is conclusive.

use crate::context::MValue;
use crate::word::{alt_left, GeneratorId, Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum YFactor {
    Y1,
    Y2,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct YSyllable {
    pub factor: YFactor,
    pub exp: i64,
}

fn syl(factor: YFactor, exp: i64) -> YSyllable {
    YSyllable { factor, exp }
}

/// Unnormalised word over the `y` generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct YWord(pub Vec<YSyllable>);

impl YWord {
    pub fn invert(&self) -> YWord {
        YWord(
            self.0
                .iter()
                .rev()
                .map(|s| syl(s.factor, -s.exp))
                .collect(),
        )
    }

    pub fn concat(&self, other: &YWord) -> YWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        YWord(v)
    }
}

/// Free-product normal form: alternating syllables in canonical exponent
/// ranges plus a central z exponent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpNormalForm {
    pub syllables: Vec<YSyllable>,
    pub z_exp: i64,
}

/// Canonical range fold for one syllable exponent. Returns the reduced
/// exponent (zero meaning the syllable vanishes) and the emitted z power.
fn fold_exp(factor: YFactor, exp: i64, m: MValue) -> (i64, i64) {
    let order: Option<i64> = match (factor, m) {
        (_, MValue::Infinity) => None,
        (YFactor::Y1, MValue::Finite(m)) => {
            if m % 2 == 1 {
                Some(2)
            } else {
                None
            }
        }
        (YFactor::Y2, MValue::Finite(m)) => {
            if m % 2 == 1 {
                Some(m as i64)
            } else {
                Some((m / 2) as i64)
            }
        }
    };
    match order {
        None => (exp, 0),
        Some(q) => {
            let rem = exp.rem_euclid(q);
            (rem, (exp - rem) / q)
        }
    }
}

/// Collects a y-word into its free product normal form: merge adjacent
/// same-factor syllables, fold exponents into canonical ranges emitting
/// z powers, drop vanished syllables, repeat to a fixpoint.
pub fn collect(w: &YWord, m: MValue) -> FpNormalForm {
    let mut z_exp = 0i64;
    let mut syllables: Vec<YSyllable> = Vec::with_capacity(w.0.len());
    for &s in &w.0 {
        syllables.push(s);
        loop {
            let Some(&top) = syllables.last() else { break };
            let (rem, z) = fold_exp(top.factor, top.exp, m);
            z_exp += z;
            if rem == 0 {
                syllables.pop();
                // A vanished syllable may expose two mergeable neighbours.
                let k = syllables.len();
                if k >= 2 && syllables[k - 1].factor == syllables[k - 2].factor {
                    let merged = syl(
                        syllables[k - 1].factor,
                        syllables[k - 2].exp + syllables[k - 1].exp,
                    );
                    syllables.truncate(k - 2);
                    syllables.push(merged);
                    continue;
                }
                break;
            }
            syllables.last_mut().unwrap().exp = rem;
            let k = syllables.len();
            if k >= 2 && syllables[k - 1].factor == syllables[k - 2].factor {
                let merged = syl(
                    syllables[k - 1].factor,
                    syllables[k - 2].exp + syllables[k - 1].exp,
                );
                syllables.truncate(k - 2);
                syllables.push(merged);
                continue;
            }
            break;
        }
    }
    FpNormalForm { syllables, z_exp }
}

/// Rewrites a word over `x1, x2` into the `y` generators; the result
/// represents the same element.
pub fn x_to_y(w: &Word, m: MValue) -> YWord {
    assert!(
        w.generators_of()
            .iter()
            .all(|g| g.index() < 2),
        "dihedral conversion expects a word over the first two generators"
    );
    let mut out: Vec<YSyllable> = Vec::new();
    let half_down = |m: usize| ((m - 1) / 2) as i64;
    let half_up = |m: usize| ((m + 1) / 2) as i64;
    for &l in w.letters() {
        let pieces: Vec<YSyllable> = match (m, l.name().index(), l.is_positive()) {
            (MValue::Infinity, 0, true) => vec![syl(YFactor::Y1, 1)],
            (MValue::Infinity, 0, false) => vec![syl(YFactor::Y1, -1)],
            (MValue::Infinity, _, true) => vec![syl(YFactor::Y2, 1)],
            (MValue::Infinity, _, false) => vec![syl(YFactor::Y2, -1)],
            (MValue::Finite(m), 0, true) if m % 2 == 0 => vec![syl(YFactor::Y1, 1)],
            (MValue::Finite(m), 0, false) if m % 2 == 0 => vec![syl(YFactor::Y1, -1)],
            (MValue::Finite(m), _, true) if m % 2 == 0 => {
                vec![syl(YFactor::Y1, -1), syl(YFactor::Y2, 1)]
            }
            (MValue::Finite(m), _, false) if m % 2 == 0 => {
                vec![syl(YFactor::Y2, -1), syl(YFactor::Y1, 1)]
            }
            // Odd m: x1 = y2^{-(m-1)/2} y1, x2 = y1^{-1} y2^{(m+1)/2}.
            (MValue::Finite(m), 0, true) => {
                vec![syl(YFactor::Y2, -half_down(m)), syl(YFactor::Y1, 1)]
            }
            (MValue::Finite(m), 0, false) => {
                vec![syl(YFactor::Y1, -1), syl(YFactor::Y2, half_down(m))]
            }
            (MValue::Finite(m), _, true) => {
                vec![syl(YFactor::Y1, -1), syl(YFactor::Y2, half_up(m))]
            }
            (MValue::Finite(m), _, false) => {
                vec![syl(YFactor::Y2, -half_up(m)), syl(YFactor::Y1, 1)]
            }
        };
        out.extend(pieces);
    }
    YWord(out)
}

/// Expands a y-word back into the standard generators.
pub fn y_to_x(w: &YWord, m: MValue) -> Word {
    let x1 = Letter::pos(GeneratorId(0));
    let x2 = Letter::pos(GeneratorId(1));
    let y1: Word = match m {
        MValue::Finite(m) if m % 2 == 1 => alt_left(x1, x2, m).unwrap(),
        _ => Word::single(x1),
    };
    let y2: Word = match m {
        MValue::Infinity => Word::single(x2),
        MValue::Finite(_) => Word::from_letters(vec![x1, x2]),
    };
    let mut out = Word::new();
    for &s in &w.0 {
        let base = match s.factor {
            YFactor::Y1 => &y1,
            YFactor::Y2 => &y2,
        };
        let piece = if s.exp >= 0 {
            base.clone()
        } else {
            base.invert()
        };
        for _ in 0..s.exp.unsigned_abs() {
            out = out.concat(&piece);
        }
    }
    out.free_reduce()
}

/// Cyclically reduces a collected syllable word in the quotient free
/// product. Returns the reduced sequence and the conjugating syllables:
/// the result equals `conj⁻¹ · input · conj` mod the centre.
fn fp_cyclic_reduce(syllables: &[YSyllable], m: MValue) -> (Vec<YSyllable>, Vec<YSyllable>) {
    let mut cur = syllables.to_vec();
    let mut conj: Vec<YSyllable> = Vec::new();
    loop {
        if cur.len() < 2 || cur.first().unwrap().factor != cur.last().unwrap().factor {
            return (cur, conj);
        }
        let front = cur.remove(0);
        conj.push(front);
        cur.push(front);
        cur = collect(&YWord(cur), m).syllables;
    }
}

/// Decides conjugacy of the central quotients of two collected forms.
/// On success returns a y-word `f` with `f⁻¹·g·f = h` modulo the centre.
pub fn fp_conjugacy(g: &FpNormalForm, h: &FpNormalForm, m: MValue) -> Option<YWord> {
    let (gr, cg) = fp_cyclic_reduce(&g.syllables, m);
    let (hr, ch) = fp_cyclic_reduce(&h.syllables, m);
    if gr.len() != hr.len() {
        return None;
    }
    let rotation: Option<Vec<YSyllable>> = if gr.is_empty() {
        Some(Vec::new())
    } else if gr.len() == 1 {
        // Both lie in one (abelian) factor: conjugate iff equal.
        if gr == hr {
            Some(Vec::new())
        } else {
            None
        }
    } else {
        (0..gr.len()).find_map(|r| {
            let rotated: Vec<YSyllable> =
                gr[r..].iter().chain(gr[..r].iter()).copied().collect();
            if rotated == hr {
                Some(gr[..r].to_vec())
            } else {
                None
            }
        })
    };
    let rotation = rotation?;
    // f = cg · rotation · ch⁻¹ conjugates g to h in the quotient.
    Some(
        YWord(cg)
            .concat(&YWord(rotation))
            .concat(&YWord(ch).invert()),
    )
}

/// Full dihedral conjugacy: returns a verified witness word `f` over
/// `x1, x2` with `f⁻¹·u·f = v`, or `None` when the elements are not
/// conjugate.
pub fn conjugacy_dihedral(u: &Word, v: &Word, m: MValue) -> Option<Word> {
    if let MValue::Finite(m) = m {
        assert!(m >= 4, "extra-large type requires m >= 4");
    }
    let yu = x_to_y(u, m);
    let yv = x_to_y(v, m);
    let gu = collect(&yu, m);
    let gv = collect(&yv, m);

    // Central elements are conjugate only to themselves.
    if gu.syllables.is_empty() || gv.syllables.is_empty() {
        return if gu == gv { Some(Word::new()) } else { None };
    }

    let f = fp_conjugacy(&gu, &gv, m)?;
    // Exact verification in the group, including the z part; failure here
    // proves non-conjugacy.
    let conjugated = collect(&f.invert().concat(&yu).concat(&f), m);
    if conjugated == gv {
        Some(y_to_x(&f, m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{CoxeterMatrix, GroupContext};
    use crate::rewrite::equal_elements;

    fn l(i: u16) -> Letter {
        Letter::pos(GeneratorId(i))
    }

    fn li(i: u16) -> Letter {
        Letter::neg(GeneratorId(i))
    }

    fn w(ls: &[Letter]) -> Word {
        Word::from_letters(ls.to_vec())
    }

    fn ctx(m: usize) -> GroupContext {
        let matrix = CoxeterMatrix::from_pairs(2, &[(0, 1, MValue::Finite(m))]).unwrap();
        GroupContext::new(matrix).unwrap()
    }

    const M4: MValue = MValue::Finite(4);
    const M5: MValue = MValue::Finite(5);

    #[test]
    fn conversion_examples() {
        // m even: x2 = y1^{-1} y2.
        let got = x_to_y(&w(&[l(1)]), M4);
        assert_eq!(got.0, vec![syl(YFactor::Y1, -1), syl(YFactor::Y2, 1)]);

        // m odd: x1 x2 collects to y2.
        let nf = collect(&x_to_y(&w(&[l(0), l(1)]), M5), M5);
        assert_eq!(nf.syllables, vec![syl(YFactor::Y2, 1)]);
        assert_eq!(nf.z_exp, 0);

        // m odd: x1 = y2^{-2} y1 for m = 5.
        let got = x_to_y(&w(&[l(0)]), M5);
        assert_eq!(got.0, vec![syl(YFactor::Y2, -2), syl(YFactor::Y1, 1)]);
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(
            y_to_x(&YWord(vec![syl(YFactor::Y2, 1)]), M4),
            w(&[l(0), l(1)])
        );
        assert_eq!(
            y_to_x(&YWord(vec![syl(YFactor::Y1, 1)]), M5),
            w(&[l(0), l(1), l(0), l(1), l(0)])
        );
    }

    #[test]
    fn round_trip_is_identity_in_group() {
        for m in [4usize, 5] {
            let mv = MValue::Finite(m);
            let context = ctx(m);
            let words = [
                w(&[l(0), l(1), li(0)]),
                w(&[l(1), l(1), l(0)]),
                w(&[li(0), li(1), l(0), l(1)]),
                w(&[l(0), l(0), l(0)]),
            ];
            for word in &words {
                let back = y_to_x(&x_to_y(word, mv), mv);
                assert!(
                    equal_elements(&back, word, &context),
                    "round trip failed for {:?} at m={}",
                    word,
                    m
                );
            }
        }
    }

    #[test]
    fn collect_fold_examples() {
        // m = 4: y2² = z.
        let nf = collect(&YWord(vec![syl(YFactor::Y2, 2)]), M4);
        assert!(nf.syllables.is_empty());
        assert_eq!(nf.z_exp, 1);

        // m = 5: y1³ = z · y1.
        let nf = collect(&YWord(vec![syl(YFactor::Y1, 3)]), M5);
        assert_eq!(nf.syllables, vec![syl(YFactor::Y1, 1)]);
        assert_eq!(nf.z_exp, 1);

        // Already normal.
        let input = YWord(vec![
            syl(YFactor::Y1, 1),
            syl(YFactor::Y2, 1),
            syl(YFactor::Y1, -1),
        ]);
        let nf = collect(&input, M4);
        assert_eq!(nf.syllables, input.0);
        assert_eq!(nf.z_exp, 0);
    }

    #[test]
    fn collect_cascades_merges() {
        // y1 y2^2 y1 at m=4: the middle syllable is z, leaving y1².
        let input = YWord(vec![
            syl(YFactor::Y1, 1),
            syl(YFactor::Y2, 2),
            syl(YFactor::Y1, 1),
        ]);
        let nf = collect(&input, M4);
        assert_eq!(nf.syllables, vec![syl(YFactor::Y1, 2)]);
        assert_eq!(nf.z_exp, 1);
    }

    #[test]
    fn fp_conjugacy_rotation() {
        let g = FpNormalForm {
            syllables: vec![syl(YFactor::Y1, 1), syl(YFactor::Y2, 1)],
            z_exp: 0,
        };
        let h = FpNormalForm {
            syllables: vec![syl(YFactor::Y2, 1), syl(YFactor::Y1, 1)],
            z_exp: 0,
        };
        let f = fp_conjugacy(&g, &h, M5).unwrap();
        assert_eq!(f.0, vec![syl(YFactor::Y1, 1)]);
    }

    #[test]
    fn fp_conjugacy_single_factor() {
        let g = FpNormalForm {
            syllables: vec![syl(YFactor::Y2, 1)],
            z_exp: 0,
        };
        let h = FpNormalForm {
            syllables: vec![syl(YFactor::Y2, 2)],
            z_exp: 0,
        };
        assert!(fp_conjugacy(&g, &h, M5).is_none());
        assert!(fp_conjugacy(&g, &g, M5).is_some());
    }

    #[test]
    fn generators_conjugate_iff_m_odd() {
        let u = w(&[l(0)]);
        let v = w(&[l(1)]);
        let context5 = ctx(5);
        let f = conjugacy_dihedral(&u, &v, M5).expect("x1 ~ x2 for odd m");
        let lifted = f.invert().concat(&u).concat(&f);
        assert!(equal_elements(&lifted, &v, &context5));

        assert!(conjugacy_dihedral(&u, &v, M4).is_none());
    }

    #[test]
    fn central_elements() {
        // (x1 x2)² is central for m = 4; conjugate only to itself.
        let z = w(&[l(0), l(1), l(0), l(1)]);
        assert_eq!(conjugacy_dihedral(&z, &z, M4), Some(Word::new()));
        assert!(conjugacy_dihedral(&z, &w(&[l(0), l(1)]), M4).is_none());
    }

    #[test]
    fn identity_case() {
        assert_eq!(conjugacy_dihedral(&Word::new(), &Word::new(), M4), Some(Word::new()));
        assert!(conjugacy_dihedral(&Word::new(), &w(&[l(0)]), M4).is_none());
    }

    #[test]
    fn infinite_m_free_group() {
        let mv = MValue::Infinity;
        // Cyclic rotation: x1x2 ~ x2x1.
        let u = w(&[l(0), l(1)]);
        let v = w(&[l(1), l(0)]);
        let f = conjugacy_dihedral(&u, &v, mv).unwrap();
        let matrix = CoxeterMatrix::from_pairs(2, &[]).unwrap();
        let context = GroupContext::new(matrix).unwrap();
        assert!(equal_elements(&f.invert().concat(&u).concat(&f), &v, &context));

        // Not conjugate in a free group.
        assert!(conjugacy_dihedral(&w(&[l(0)]), &w(&[l(1)]), mv).is_none());
        assert!(conjugacy_dihedral(&w(&[l(0)]), &w(&[li(0)]), mv).is_none());
    }

    #[test]
    fn witness_is_verified_for_small_pairs() {
        let context = ctx(4);
        let pairs = [
            (w(&[l(0), l(1)]), w(&[l(1), l(0)])),
            (w(&[l(0), l(0)]), w(&[l(0), l(0)])),
            (w(&[l(0), l(1), li(0)]), w(&[l(1)])),
        ];
        for (u, v) in pairs {
            if let Some(f) = conjugacy_dihedral(&u, &v, M4) {
                let lifted = f.invert().concat(&u).concat(&f);
                assert!(equal_elements(&lifted, &v, &context));
            }
        }
    }
}
