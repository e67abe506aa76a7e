//! The conjugacy decision procedure.
//!
//! Both inputs are brought to a specially cyclically reduced form, then
//! dispatched by generator support: powers of one generator, two-generator
//! words, or the general bounded search of conjugates `aⁿ·u*·a⁻ⁿ` across
//! cyclic conjugates, with the exponent capped by the word length.
//! Every positive verdict carries a witness `f` with `f⁻¹·u·f = v`,
//! verified before it is returned.

use crate::context::GroupContext;
use crate::dihedral_conjugacy::conjugacy_dihedral;
use crate::rewrite::{
    conjugate_reduce, equal_elements, normal_form, reduce, specially_cyclically_reduce,
};
use crate::word::{alt_left, GeneratorId, Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CaseTag {
    Equal,
    Power,
    TwoGenerator,
    General,
    SupportMismatch,
    LengthMismatch,
}

/// Verdict with witness. When `conjugate` is true, the witness satisfies
/// `witness⁻¹ · u · witness = v` and has been checked by `equal_elements`.
#[derive(Clone, Debug)]
pub struct ConjugacyOutcome {
    pub conjugate: bool,
    pub witness: Option<Word>,
    pub case: CaseTag,
    /// Exponent at which the general-case search met its target, when the
    /// general case produced the verdict.
    pub general_hit_exponent: Option<usize>,
}

impl ConjugacyOutcome {
    fn no(case: CaseTag) -> ConjugacyOutcome {
        ConjugacyOutcome {
            conjugate: false,
            witness: None,
            case,
            general_hit_exponent: None,
        }
    }

    fn yes(case: CaseTag, witness: Word) -> ConjugacyOutcome {
        ConjugacyOutcome {
            conjugate: true,
            witness: Some(witness),
            case,
            general_hit_exponent: None,
        }
    }
}

/// Conjugating word along a path of odd-labelled edges: each hop `s → t`
/// contributes the alternating word of length `m(s,t)`, which conjugates
/// `x_s` to `x_t`.
fn odd_path_witness(ctx: &GroupContext, path: &[usize]) -> Word {
    let mut f = Word::new();
    for hop in path.windows(2) {
        let (s, t) = (GeneratorId(hop[0] as u16), GeneratorId(hop[1] as u16));
        let m = ctx.m(s, t).finite().expect("odd edges are finite");
        f = f.concat(&alt_left(Letter::pos(s), Letter::pos(t), m).unwrap());
    }
    f
}

/// Conjugacy for `u = x_i^k`: the only cyclically reduced conjugates of a
/// generator power are equal powers of generators in the same odd-edge
/// component.
pub fn conjugacy_power_case(u: &Word, v: &Word, ctx: &GroupContext) -> ConjugacyOutcome {
    let (i, k) = u
        .as_generator_power()
        .expect("power case requires a generator power");
    let Some((j, k2)) = v.as_generator_power() else {
        return ConjugacyOutcome::no(CaseTag::Power);
    };
    if k != k2 {
        return ConjugacyOutcome::no(CaseTag::Power);
    }
    if i == j {
        return ConjugacyOutcome::yes(CaseTag::Power, Word::new());
    }
    match ctx.odd_path(i, j) {
        Some(path) => ConjugacyOutcome::yes(CaseTag::Power, odd_path_witness(ctx, &path)),
        None => ConjugacyOutcome::no(CaseTag::Power),
    }
}

fn relabel_to_pair(w: &Word, pair: (GeneratorId, GeneratorId)) -> Word {
    w.letters()
        .iter()
        .map(|l| Letter {
            gen: if l.name() == pair.0 {
                GeneratorId(0)
            } else {
                GeneratorId(1)
            },
            sign: l.sign,
        })
        .collect()
}

fn relabel_from_pair(w: &Word, pair: (GeneratorId, GeneratorId)) -> Word {
    w.letters()
        .iter()
        .map(|l| Letter {
            gen: if l.name() == GeneratorId(0) {
                pair.0
            } else {
                pair.1
            },
            sign: l.sign,
        })
        .collect()
}

/// Conjugacy when `u` involves exactly two generators and is not a power:
/// the conjugate must lie in the same two-generator subgroup, so the
/// dihedral procedure decides.
pub fn conjugacy_two_gen_case(u: &Word, v: &Word, ctx: &GroupContext) -> ConjugacyOutcome {
    let support = u.generators_of();
    assert_eq!(support.len(), 2, "two-generator case requires two names");
    if v.generators_of() != support {
        return ConjugacyOutcome::no(CaseTag::SupportMismatch);
    }
    let pair = (support[0], support[1]);
    let m = ctx.m(pair.0, pair.1);
    match conjugacy_dihedral(&relabel_to_pair(u, pair), &relabel_to_pair(v, pair), m) {
        Some(f) => ConjugacyOutcome::yes(CaseTag::TwoGenerator, relabel_from_pair(&f, pair)),
        None => ConjugacyOutcome::no(CaseTag::TwoGenerator),
    }
}

/// Bounded search for specially cyclically reduced words over at least
/// three common generators: for every letter `a` named in both words,
/// every cyclic conjugate `u*`, and every exponent `n ≤ |u|`, test whether
/// `aⁿ·u*·a⁻ⁿ` matches a cyclic conjugate of `v` by canonical form.
pub fn conjugacy_general_case(u: &Word, v: &Word, ctx: &GroupContext) -> ConjugacyOutcome {
    debug_assert_eq!(u.len(), v.len());
    // Lookup set of canonical forms of the cyclic conjugates of v.
    let mut lookup: Vec<(Word, Word)> = Vec::new();
    for (rot, prefix) in v.cyclic_conjugates().expect("input is cyclically reduced") {
        lookup.push((normal_form(&rot, ctx), prefix));
    }
    let find = |key: &Word| -> Option<&Word> {
        lookup
            .iter()
            .find_map(|(k, prefix)| (k == key).then_some(prefix))
    };

    let names = u.generators_of();
    let rotations = u.cyclic_conjugates().expect("input is cyclically reduced");
    let target_len = v.len();

    for &name in &names {
        for a in [Letter::pos(name), Letter::neg(name)] {
            for (rot, p) in &rotations {
                let mut cur = rot.clone();
                for exp in 0..=u.len() {
                    if cur.len() == target_len {
                        let key = normal_form(&cur, ctx);
                        if let Some(q) = find(&key) {
                            // aⁿ·u*·a⁻ⁿ = v* gives v = (p·a⁻ⁿ·q⁻¹)⁻¹·u·(…).
                            let mut f = p.clone();
                            for _ in 0..exp {
                                f.push(a.inverse());
                            }
                            let f = f.concat(&q.invert()).free_reduce();
                            debug_assert!(exp <= u.len());
                            return ConjugacyOutcome {
                                conjugate: true,
                                witness: Some(f),
                                case: CaseTag::General,
                                general_hit_exponent: Some(exp),
                            };
                        }
                    }
                    if exp < u.len() {
                        cur = conjugate_reduce(&cur, a.inverse(), ctx);
                    }
                }
            }
        }
    }
    ConjugacyOutcome::no(CaseTag::General)
}

/// Full conjugacy decision with witness assembly and final verification.
pub fn conjugacy(u: &Word, v: &Word, ctx: &GroupContext) -> ConjugacyOutcome {
    let (ru, fu) = specially_cyclically_reduce(&reduce(u, ctx), ctx);
    let (rv, fv) = specially_cyclically_reduce(&reduce(v, ctx), ctx);

    let mut outcome = dispatch(&ru, &rv, ctx);
    if outcome.conjugate {
        let inner = outcome.witness.take().expect("positive verdicts carry witnesses");
        let f = fu.concat(&inner).concat(&fv.invert()).free_reduce();
        assert!(
            equal_elements(&f.invert().concat(u).concat(&f), v, ctx),
            "conjugacy witness failed verification"
        );
        outcome.witness = Some(f);
    }
    outcome
}

fn dispatch(ru: &Word, rv: &Word, ctx: &GroupContext) -> ConjugacyOutcome {
    if ru.is_empty() && rv.is_empty() {
        return ConjugacyOutcome::yes(CaseTag::Equal, Word::new());
    }
    if ru.len() != rv.len() && (ru.is_empty() || rv.is_empty()) {
        return ConjugacyOutcome::no(CaseTag::LengthMismatch);
    }

    if ru.as_generator_power().is_some() {
        return conjugacy_power_case(ru, rv, ctx);
    }
    if rv.as_generator_power().is_some() {
        let mut out = conjugacy_power_case(rv, ru, ctx);
        if let Some(f) = out.witness.take() {
            out.witness = Some(f.invert());
        }
        return out;
    }

    let su = ru.generators_of();
    let sv = rv.generators_of();
    if su.len() == 2 {
        return conjugacy_two_gen_case(ru, rv, ctx);
    }
    if sv.len() == 2 {
        let mut out = conjugacy_two_gen_case(rv, ru, ctx);
        if let Some(f) = out.witness.take() {
            out.witness = Some(f.invert());
        }
        return out;
    }

    if su != sv {
        return ConjugacyOutcome::no(CaseTag::SupportMismatch);
    }
    if ru.len() != rv.len() {
        return ConjugacyOutcome::no(CaseTag::LengthMismatch);
    }
    conjugacy_general_case(ru, rv, ctx)
}
