//! Geodesic reduction, equality testing, canonical forms, and cyclic
//! reduction over the whole group.
//!
//! The reduction strategy keeps a geodesic prefix and, for each appended
//! letter, looks for a rightward length-reducing sequence: a chain of
//! consecutive critical blocks whose tau images hand their last letter to
//! the next block, with the final hand-off letter cancelling the appended
//! letter. A freely reduced non-geodesic word of the form
//! (geodesic)·(letter) always admits such a sequence, so failure of the
//! search certifies geodesity.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::context::{GroupContext, MValue};
use crate::dihedral::{classify_critical, classify_critical_given, tau, CriticalForm};
use crate::word::{Letter, Word};

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("geodesic closure exceeded its cap of {cap} words")]
pub struct ClosureCapExceeded {
    pub cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveKind {
    FreeCancel,
    TauCritical,
    TauOverCritical,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TraceStep {
    /// Index in the word being rewritten at the time of the move.
    pub position: usize,
    pub kind: MoveKind,
    pub length_after: usize,
}

/// Record of the moves applied while reducing a word.
#[derive(Clone, Debug, Default)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub result_length: usize,
}

/// Looks up the relation length for a pair of names present in `letters`;
/// `None` when fewer than two names occur.
fn pair_m(ctx: &GroupContext, letters: &[Letter]) -> Option<MValue> {
    let mut first = None;
    for l in letters {
        match first {
            None => first = Some(l.name()),
            Some(f) if f != l.name() => return Some(ctx.m(f, l.name())),
            _ => {}
        }
    }
    None
}

fn classify_block(ctx: &GroupContext, letters: &[Letter]) -> Option<CriticalForm> {
    let m = pair_m(ctx, letters)?;
    if !m.is_finite() {
        return None;
    }
    let word = Word::from_letters(letters.to_vec());
    classify_critical(&word, m).ok().flatten()
}

/// Alternating-run statistics maintained letter by letter, so that block
/// scans only pay for a full classification when p + n hits m exactly.
#[derive(Clone, Copy, Default)]
struct RunStats {
    edge: Option<Letter>,
    pos_run: usize,
    neg_run: usize,
    max_pos: usize,
    max_neg: usize,
}

impl RunStats {
    /// Extends the tracked block by one letter; `edge` is the last letter
    /// for rightward growth and the first for leftward growth, and the
    /// update rule is the same for both.
    fn push(&mut self, l: Letter) {
        let chains = |prev: Option<Letter>| {
            prev.is_some_and(|e| e.is_positive() == l.is_positive() && e.name() != l.name())
        };
        if l.is_positive() {
            self.pos_run = if chains(self.edge) { self.pos_run + 1 } else { 1 };
            self.neg_run = 0;
            self.max_pos = self.max_pos.max(self.pos_run);
        } else {
            self.neg_run = if chains(self.edge) { self.neg_run + 1 } else { 1 };
            self.pos_run = 0;
            self.max_neg = self.max_neg.max(self.neg_run);
        }
        self.edge = Some(l);
    }

    fn p(&self, m: usize) -> usize {
        self.max_pos.min(m)
    }

    fn n(&self, m: usize) -> usize {
        self.max_neg.min(m)
    }
}

/// Leading sign-pure alternating run of a block growing rightward.
#[derive(Clone, Copy, Default)]
struct LeadRun {
    len: usize,
    positive: bool,
    open: bool,
    prev: Option<Letter>,
}

impl LeadRun {
    fn push(&mut self, l: Letter) {
        match self.prev {
            None => {
                self.len = 1;
                self.positive = l.is_positive();
                self.open = true;
            }
            Some(prev) => {
                if self.open
                    && l.is_positive() == self.positive
                    && prev.name() != l.name()
                    && prev.is_positive() == self.positive
                {
                    self.len += 1;
                } else {
                    self.open = false;
                }
            }
        }
        self.prev = Some(l);
    }
}

/// O(1) necessary conditions for the block to match a critical shape:
/// the leading run must realise the first alternating segment (or, for the
/// mirrored shapes, the trailing run must).
fn critical_precheck(stats: &RunStats, lead: &LeadRun, m: usize, p: usize, n: usize) -> bool {
    if n == 0 {
        // All-positive: the unique length-m window must touch an end.
        return (lead.positive && lead.len >= m) || stats.pos_run >= m;
    }
    if p == 0 {
        return (!lead.positive && lead.len >= m) || stats.neg_run >= m;
    }
    (lead.positive && lead.len >= p && stats.neg_run >= n)
        || (!lead.positive && lead.len >= n && stats.pos_run >= p)
}

/// Tracks the (at most two) generator names of a growing block and the
/// relation length of the pair once both names have appeared.
#[derive(Clone, Copy)]
enum PairState {
    Empty,
    One(crate::word::GeneratorId),
    Pair(crate::word::GeneratorId, crate::word::GeneratorId, Option<usize>),
    Broken,
}

impl PairState {
    fn push(&mut self, l: Letter, ctx: &GroupContext) {
        let name = l.name();
        *self = match *self {
            PairState::Empty => PairState::One(name),
            PairState::One(a) if a == name => PairState::One(a),
            PairState::One(a) => PairState::Pair(a, name, ctx.m(a, name).finite()),
            PairState::Pair(a, b, m) if a == name || b == name => PairState::Pair(a, b, m),
            _ => PairState::Broken,
        };
    }
}

/// One node per discovered search state (block end, hand-off letter).
struct SearchNode {
    pos: usize,
    carry: Letter,
    block_start: usize,
    tau_word: Word,
    parent: Option<usize>,
}

/// Searches for a rightward length-reducing sequence in `v` (freely
/// reduced, with `v` minus its last letter geodesic). On success returns
/// the reduced word of length |v| − 2.
fn rightward_reduce(v: &Word, ctx: &GroupContext, events: &mut Vec<TraceStep>) -> Option<Word> {
    let len = v.len();
    if len < 2 {
        return None;
    }
    let letters = v.letters();
    let target = letters[len - 1].inverse();

    let mut nodes: Vec<SearchNode> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut seen: HashSet<(usize, Letter)> = HashSet::new();
    let mut accept: Option<usize> = None;

    let try_form = |nodes: &mut Vec<SearchNode>,
                    queue: &mut VecDeque<usize>,
                    seen: &mut HashSet<(usize, Letter)>,
                    form: &CriticalForm,
                    m: usize,
                    start: usize,
                    end: usize,
                    parent: Option<usize>|
     -> Option<usize> {
        debug_assert!(!form.kind.is_over_critical());
        let image = tau(form, MValue::Finite(m));
        let carry = image.last().expect("tau images are nonempty");
        if !seen.insert((end, carry)) {
            return None;
        }
        nodes.push(SearchNode {
            pos: end,
            carry,
            block_start: start,
            tau_word: image,
            parent,
        });
        let id = nodes.len() - 1;
        if end == len - 1 && carry == target {
            return Some(id);
        }
        queue.push_back(id);
        None
    };

    // Walks a block rightward from `start`, maintaining run statistics and
    // classifying only when the O(1) shape prechecks pass with p + n equal
    // to the pair's relation length; once the sum exceeds it no further
    // extension can be critical.
    let scan_blocks = |nodes: &mut Vec<SearchNode>,
                       queue: &mut VecDeque<usize>,
                       seen: &mut HashSet<(usize, Letter)>,
                       carry: Option<Letter>,
                       start: usize,
                       parent: Option<usize>|
     -> Option<usize> {
        let mut stats = RunStats::default();
        let mut pair = PairState::Empty;
        let mut lead = LeadRun::default();
        let mut block: Vec<Letter> = Vec::new();
        if let Some(c) = carry {
            stats.push(c);
            pair.push(c, ctx);
            lead.push(c);
            block.push(c);
        }
        for j in start + 1..len {
            let l = letters[j - 1];
            stats.push(l);
            pair.push(l, ctx);
            lead.push(l);
            block.push(l);
            match pair {
                PairState::Broken => return None,
                PairState::Pair(_, _, None) => return None,
                PairState::Pair(a, b, Some(m)) => {
                    let (p, n) = (stats.p(m), stats.n(m));
                    if p + n > m {
                        return None;
                    }
                    if p + n == m && critical_precheck(&stats, &lead, m, p, n) {
                        if let Some(form) = classify_critical_given(&block, (a, b), m, p, n) {
                            if !form.kind.is_over_critical() {
                                if let Some(id) =
                                    try_form(nodes, queue, seen, &form, m, start, j, parent)
                                {
                                    return Some(id);
                                }
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        None
    };

    // Seed with carry-free blocks starting at every position.
    for i in 0..len - 1 {
        if let Some(id) = scan_blocks(&mut nodes, &mut queue, &mut seen, None, i, None) {
            accept = Some(id);
            break;
        }
    }

    while accept.is_none() {
        let Some(cur) = queue.pop_front() else {
            break;
        };
        let (start, carry) = (nodes[cur].pos, nodes[cur].carry);
        if start >= len - 1 || carry == letters[start].inverse() {
            continue;
        }
        accept = scan_blocks(&mut nodes, &mut queue, &mut seen, Some(carry), start, Some(cur));
    }

    let accept = accept?;

    // Reassemble: collect the block chain, substitute the tau images, and
    // drop the cancelling pair at the end.
    let mut chain = Vec::new();
    let mut cur = Some(accept);
    while let Some(id) = cur {
        chain.push(id);
        cur = nodes[id].parent;
    }
    chain.reverse();

    let first_start = nodes[chain[0]].block_start;
    let mut out: Vec<Letter> = letters[..first_start].to_vec();
    for &id in &chain {
        let img = nodes[id].tau_word.letters();
        out.extend_from_slice(&img[..img.len() - 1]);
        events.push(TraceStep {
            position: nodes[id].block_start,
            kind: MoveKind::TauCritical,
            length_after: len,
        });
    }
    events.push(TraceStep {
        position: len - 2,
        kind: MoveKind::FreeCancel,
        length_after: len - 2,
    });

    let reduced = Word::from_letters(out).free_reduce();
    debug_assert_eq!(reduced.len(), len - 2);
    Some(reduced)
}

/// Scans suffixes of `v` for an over-critical shape and applies the
/// shortening tau once. Only suffixes can be over-critical when all of `v`
/// but the last letter is geodesic.
fn over_critical_reduce(v: &Word, ctx: &GroupContext, events: &mut Vec<TraceStep>) -> Option<Word> {
    let letters = v.letters();
    let len = v.len();
    let mut stats = RunStats::default();
    let mut pair = PairState::Empty;
    for i in (0..len).rev() {
        let l = letters[i];
        stats.push(l);
        pair.push(l, ctx);
        let (a, b, m) = match pair {
            PairState::Broken => return None,
            PairState::Pair(a, b, Some(m)) => (a, b, m),
            _ => continue,
        };
        let (p, n) = (stats.p(m), stats.n(m));
        if p + n <= m {
            continue;
        }
        let Some(form) = classify_critical_given(&letters[i..], (a, b), m, p, n) else {
            continue;
        };
        debug_assert!(form.kind.is_over_critical());
        let image = tau(&form, MValue::Finite(m));
        let mut out = letters[..i].to_vec();
        out.extend_from_slice(image.letters());
        let reduced = Word::from_letters(out).free_reduce();
        events.push(TraceStep {
            position: i,
            kind: MoveKind::TauOverCritical,
            length_after: reduced.len(),
        });
        return Some(reduced);
    }
    None
}

fn append_reduce_traced(
    w: &Word,
    a: Letter,
    ctx: &GroupContext,
    events: &mut Vec<TraceStep>,
) -> Word {
    if w.last() == Some(a.inverse()) {
        let out = w.slice(0..w.len() - 1);
        events.push(TraceStep {
            position: w.len() - 1,
            kind: MoveKind::FreeCancel,
            length_after: out.len(),
        });
        return out;
    }
    let mut v = w.clone();
    v.push(a);
    if let Some(out) = over_critical_reduce(&v, ctx, events) {
        return out;
    }
    if let Some(out) = rightward_reduce(&v, ctx, events) {
        return out;
    }
    v
}

/// Geodesic word for `w·a`, given geodesic `w`. The result length is
/// |w| + 1 or |w| − 1.
pub fn append_reduce(w: &Word, a: Letter, ctx: &GroupContext) -> Word {
    let mut events = Vec::new();
    append_reduce_traced(w, a, ctx, &mut events)
}

/// Reduces a word to a geodesic representative of the same element.
pub fn reduce_to_geodesic(w: &Word, ctx: &GroupContext) -> (Word, ReductionTrace) {
    let mut trace = ReductionTrace::default();
    let mut cur = Word::new();
    for &a in w.letters() {
        cur = append_reduce_traced(&cur, a, ctx, &mut trace.steps);
    }
    trace.result_length = cur.len();
    (cur, trace)
}

/// Geodesic word, trace discarded.
pub fn reduce(w: &Word, ctx: &GroupContext) -> Word {
    reduce_to_geodesic(w, ctx).0
}

pub fn is_geodesic(w: &Word, ctx: &GroupContext) -> bool {
    reduce(w, ctx).len() == w.len()
}

/// Word problem: true iff `u` and `v` represent the same element.
pub fn equal_elements(u: &Word, v: &Word, ctx: &GroupContext) -> bool {
    reduce(&u.concat(&v.invert()), ctx).is_empty()
}

/// Geodesic of `a⁻¹ · w · a` for geodesic `w`, via two one-letter updates.
pub fn conjugate_reduce(w: &Word, a: Letter, ctx: &GroupContext) -> Word {
    let prepended = append_reduce(&w.invert(), a, ctx).invert();
    append_reduce(&prepended, a, ctx)
}

/// All geodesic words reachable from a geodesic `w` by length-preserving
/// tau moves on critical subwords; this is the full set of geodesic
/// representatives of the element.
pub fn geodesic_closure_with_cap(
    w: &Word,
    ctx: &GroupContext,
    cap: usize,
) -> Result<HashSet<Word>, ClosureCapExceeded> {
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(cur) = queue.pop_front() {
        let letters = cur.letters();
        let len = cur.len();
        for i in 0..len {
            let mut names = [None, None];
            for j in i + 1..=len {
                let name = letters[j - 1].name();
                if names[0].is_none() {
                    names[0] = Some(name);
                } else if names[0] != Some(name) && names[1].is_none() {
                    names[1] = Some(name);
                } else if names[0] != Some(name) && names[1] != Some(name) {
                    break;
                }
                let Some(form) = classify_block(ctx, &letters[i..j]) else {
                    continue;
                };
                debug_assert!(!form.kind.is_over_critical(), "geodesic words have no over-critical subwords");
                let m = pair_m(ctx, &letters[i..j]).expect("two names present");
                let image = tau(&form, m);
                let mut out = letters[..i].to_vec();
                out.extend_from_slice(image.letters());
                out.extend_from_slice(&letters[j..]);
                let next = Word::from_letters(out);
                debug_assert!(next.is_freely_reduced());
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(ClosureCapExceeded { cap });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

pub fn geodesic_closure(w: &Word, ctx: &GroupContext) -> Result<HashSet<Word>, ClosureCapExceeded> {
    geodesic_closure_with_cap(w, ctx, DEFAULT_CLOSURE_CAP)
}

/// Canonical form: the shortlex-least geodesic word of the element. Built
/// greedily, one least feasible letter at a time; a letter `a` can start a
/// geodesic representative exactly when it shortens from the left.
pub fn normal_form(w: &Word, ctx: &GroupContext) -> Word {
    let mut cur = reduce(w, ctx);
    let mut out = Vec::with_capacity(cur.len());
    while !cur.is_empty() {
        let mut advanced = false;
        for &a in ctx.letters() {
            let tail = append_reduce(&cur.invert(), a, ctx);
            if tail.len() + 1 == cur.len() {
                out.push(a);
                cur = tail.invert();
                advanced = true;
                break;
            }
        }
        assert!(advanced, "some letter always starts a geodesic representative");
    }
    Word::from_letters(out)
}

/// Conjugates `w` until the element is cyclically reduced: no single-letter
/// conjugate is shorter. Returns `(r, f)` with `r = f⁻¹·w·f` in the group.
pub fn cyclically_reduce(w: &Word, ctx: &GroupContext) -> (Word, Word) {
    let mut r = reduce(w, ctx);
    let mut f = Word::new();
    'outer: loop {
        for &b in ctx.letters() {
            let cand = conjugate_reduce(&r, b, ctx);
            if cand.len() < r.len() {
                debug_assert_eq!(cand.len() + 2, r.len());
                r = cand;
                f.push(b);
                continue 'outer;
            }
        }
        return (r, f.free_reduce());
    }
}

/// Strengthens cyclic reduction until every cyclic conjugate of the word is
/// geodesic. Each restart strictly shortens, so this terminates.
pub fn specially_cyclically_reduce(w: &Word, ctx: &GroupContext) -> (Word, Word) {
    let mut r = reduce(w, ctx);
    let mut f = Word::new();
    'outer: loop {
        let (rr, fr) = cyclically_reduce(&r, ctx);
        r = rr;
        f = f.concat(&fr).free_reduce();
        let rotations = r
            .cyclic_conjugates()
            .expect("cyclically reduced elements are cyclically reduced words");
        for (rot, prefix) in rotations {
            let reduced = reduce(&rot, ctx);
            if reduced.len() < r.len() {
                r = reduced;
                f = f.concat(&prefix).free_reduce();
                continue 'outer;
            }
        }
        return (r, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{CoxeterMatrix, GroupContext, MValue};
    use crate::word::{GeneratorId, Letter};

    fn l(i: u16) -> Letter {
        Letter::pos(GeneratorId(i))
    }

    fn li(i: u16) -> Letter {
        Letter::neg(GeneratorId(i))
    }

    fn w(ls: &[Letter]) -> Word {
        Word::from_letters(ls.to_vec())
    }

    fn dihedral(m: usize) -> GroupContext {
        let matrix = CoxeterMatrix::from_pairs(2, &[(0, 1, MValue::Finite(m))]).unwrap();
        GroupContext::new(matrix).unwrap()
    }

    fn all4() -> GroupContext {
        let matrix = CoxeterMatrix::from_pairs(
            3,
            &[
                (0, 1, MValue::Finite(4)),
                (0, 2, MValue::Finite(4)),
                (1, 2, MValue::Finite(4)),
            ],
        )
        .unwrap();
        GroupContext::new(matrix).unwrap()
    }

    #[test]
    fn reduce_free_cancellation() {
        let ctx = dihedral(4);
        assert_eq!(reduce(&w(&[l(0), li(0)]), &ctx), Word::new());
    }

    #[test]
    fn reduce_keeps_doubled_letter_geodesic() {
        // Appending a copy of the last letter never breaks geodesity.
        let ctx = dihedral(4);
        let word = w(&[l(0), l(1), l(0), l(1), l(1)]);
        let got = reduce(&word, &ctx);
        assert_eq!(got.len(), 5);
        assert_eq!(got, word);
    }

    #[test]
    fn reduce_over_critical_word() {
        let ctx = dihedral(4);
        let word = w(&[l(0), l(1), l(0), li(1), li(0), li(1)]);
        let got = reduce(&word, &ctx);
        assert_eq!(got.len(), 2);
        assert!(equal_elements(&got, &word, &ctx));
        assert_eq!(got, w(&[li(1), l(0)]));
    }

    #[test]
    fn reduce_full_relation_cancel() {
        // x1x2x1x2 x1⁻¹ shortens through the relation.
        let ctx = dihedral(4);
        let word = w(&[l(0), l(1), l(0), l(1), li(0)]);
        let got = reduce(&word, &ctx);
        assert_eq!(got.len(), 3);
        assert_eq!(got, w(&[l(1), l(0), l(1)]));
    }

    #[test]
    fn reduce_needs_interior_critical_sequence() {
        // x1x2x1 · x1 · x2⁻¹x1⁻¹ is over-critical (p=3, n=2) and reduces to
        // length 4.
        let ctx = dihedral(4);
        let word = w(&[l(0), l(1), l(0), l(0), li(1), li(0)]);
        let got = reduce(&word, &ctx);
        assert_eq!(got.len(), 4);
        assert_eq!(got, w(&[li(1), l(0), l(0), l(1)]));
    }

    #[test]
    fn append_examples() {
        let ctx = dihedral(4);
        assert_eq!(append_reduce(&Word::new(), l(0), &ctx), w(&[l(0)]));
        assert_eq!(
            append_reduce(&w(&[l(0), l(1), l(0)]), li(1), &ctx).len(),
            4
        );
        assert_eq!(append_reduce(&w(&[l(0)]), li(0), &ctx), Word::new());
    }

    #[test]
    fn equal_elements_relation() {
        let ctx = dihedral(4);
        assert!(equal_elements(
            &w(&[l(0), l(1), l(0), l(1)]),
            &w(&[l(1), l(0), l(1), l(0)]),
            &ctx
        ));
        assert!(!equal_elements(&w(&[l(0)]), &w(&[l(1)]), &ctx));
    }

    #[test]
    fn delta_conjugates_generators_when_odd() {
        let ctx = dihedral(5);
        let delta = crate::word::alt_left(l(0), l(1), 5).unwrap();
        let conj = delta.invert().concat(&w(&[l(0)])).concat(&delta);
        assert!(equal_elements(&conj, &w(&[l(1)]), &ctx));
    }

    #[test]
    fn closure_of_unique_geodesic() {
        let ctx = dihedral(4);
        let word = w(&[l(0), l(1), li(0)]);
        let closure = geodesic_closure(&word, &ctx).unwrap();
        assert_eq!(closure.len(), 1);
    }

    #[test]
    fn closure_of_relation_side() {
        let ctx = dihedral(4);
        let word = w(&[l(0), l(1), l(0), l(1)]);
        let closure = geodesic_closure(&word, &ctx).unwrap();
        assert_eq!(closure.len(), 2);
        assert!(closure.contains(&w(&[l(1), l(0), l(1), l(0)])));
    }

    #[test]
    fn closure_of_empty() {
        let ctx = dihedral(4);
        let closure = geodesic_closure(&Word::new(), &ctx).unwrap();
        assert_eq!(closure.len(), 1);
    }

    #[test]
    fn normal_form_picks_shortlex_least() {
        let ctx = dihedral(4);
        assert_eq!(
            normal_form(&w(&[l(1), l(0), l(1), l(0)]), &ctx),
            w(&[l(0), l(1), l(0), l(1)])
        );
        assert_eq!(normal_form(&w(&[l(0), li(0)]), &ctx), Word::new());
    }

    #[test]
    fn normal_form_canonical_for_short_words() {
        let ctx = dihedral(4);
        let u = w(&[l(0), l(1), l(0), li(1), li(0), li(1)]);
        let nf = normal_form(&u, &ctx);
        assert_eq!(nf.len(), 2);
        let closure = geodesic_closure(&reduce(&u, &ctx), &ctx).unwrap();
        let least = closure
            .iter()
            .min_by(|a, b| ctx.shortlex_cmp(a, b))
            .unwrap()
            .clone();
        assert_eq!(nf, least);
    }

    #[test]
    fn cyclic_reduction_examples() {
        let ctx = all4();
        let (r, f) = cyclically_reduce(&w(&[l(0), l(1), li(0)]), &ctx);
        assert_eq!(r, w(&[l(1)]));
        let lifted = f.invert().concat(&w(&[l(0), l(1), li(0)])).concat(&f);
        assert!(equal_elements(&lifted, &r, &ctx));

        let (r, f) = cyclically_reduce(&w(&[l(0)]), &ctx);
        assert_eq!(r, w(&[l(0)]));
        assert!(f.is_empty());
    }

    #[test]
    fn cyclic_reduction_is_stable_under_all_letters() {
        let ctx = all4();
        let (r, _) = cyclically_reduce(&w(&[l(0), l(1), l(2), li(1), li(0)]), &ctx);
        for &a in ctx.letters() {
            assert!(conjugate_reduce(&r, a, &ctx).len() >= r.len());
        }
    }

    #[test]
    fn specially_cyclic_reduction() {
        let ctx = all4();
        let (r, f) = specially_cyclically_reduce(&w(&[l(0), li(0), l(1)]), &ctx);
        assert_eq!(r, w(&[l(1)]));
        assert!(f.is_empty());

        let (r, f) = specially_cyclically_reduce(&w(&[l(0), l(1), l(2)]), &ctx);
        assert_eq!(r.len(), 3);
        for (rot, _) in r.cyclic_conjugates().unwrap() {
            assert_eq!(reduce(&rot, &ctx).len(), r.len());
        }
        let lifted = f.invert().concat(&w(&[l(0), l(1), l(2)])).concat(&f);
        assert!(equal_elements(&lifted, &r, &ctx));
    }

    #[test]
    fn trace_tau_steps_end_in_cancellation() {
        let ctx = dihedral(4);
        let word = w(&[l(0), l(1), l(0), l(1), li(0), l(1), li(1), l(0)]);
        let (got, trace) = reduce_to_geodesic(&word, &ctx);
        assert_eq!(trace.result_length, got.len());
        // A length-reducing tau chain always ends in a free cancellation.
        if let Some(last_tau) = trace
            .steps
            .iter()
            .rposition(|s| s.kind == MoveKind::TauCritical)
        {
            assert!(trace.steps[last_tau..]
                .iter()
                .any(|s| s.kind == MoveKind::FreeCancel));
        }
    }
}
