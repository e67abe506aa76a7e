//! Brute-force ground truth built directly from the presentation.
//!
//! Moves are substitutions `s → s'` where `s · s'⁻¹` is a cyclic rotation
//! of a defining relator or of its inverse, followed by free reduction.
//! Nothing here shares a code path with the tau machinery; the production
//! engine is validated against this module, never the other way round.
//!
//! Reachability searches are bounded in two ways: a length bound on every
//! freely reduced word along the way, and a hard cap on the number of
//! explored states. Exceeding the cap aborts loudly.
//!
//! For geodesic-length queries the length bound is the input length plus
//! `2·(max finite m − 1)`: rewriting a critical prefix through the
//! relation temporarily lengthens a word by up to that much, and with that
//! slack every length reduction used by the rewriting theory is available
//! as a chain of relator substitutions. The plain closure with the exact
//! input bound can miss reductions whose intermediate words are longer.
//!
//! Internally words are byte strings (letter code = 2·generator + sign
//! bit), so hashing and equality are single contiguous operations.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Mutex;

use thiserror::Error;

use crate::context::GroupContext;
use crate::word::{alt_left, GeneratorId, Letter, Word};

pub const DEFAULT_STATE_CAP: usize = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("oracle search exceeded its cap of {cap} states")]
pub struct CapExceeded {
    pub cap: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub state_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

type Code = u8;

fn encode(w: &Word) -> Vec<Code> {
    w.letters().iter().map(|l| l.code() as Code).collect()
}

fn decode(codes: &[Code]) -> Word {
    codes
        .iter()
        .map(|&c| Letter::from_code(c as usize))
        .collect()
}

fn reduce_codes(codes: &[Code]) -> Vec<Code> {
    let mut stack: Vec<Code> = Vec::with_capacity(codes.len());
    for &c in codes {
        if stack.last().is_some_and(|&top| top == c ^ 1) {
            stack.pop();
        } else {
            stack.push(c);
        }
    }
    stack
}

/// All substitutions derived from the defining relators: for every cyclic
/// rotation `r` of `m(xi,xj)·m(xj,xi)⁻¹` or its inverse and every split
/// `r = s·s'⁻¹`, the replacement `s → s'`.
struct MoveIndex {
    by_subword: HashMap<Box<[Code]>, Vec<Box<[Code]>>>,
    max_subword: usize,
}

impl MoveIndex {
    fn build(ctx: &GroupContext) -> MoveIndex {
        let mut by_subword: HashMap<Box<[Code]>, Vec<Box<[Code]>>> = HashMap::new();
        let mut max_subword = 0;
        let n = ctx.n();
        for i in 0..n {
            for j in (i + 1)..n {
                let gi = GeneratorId(i as u16);
                let gj = GeneratorId(j as u16);
                let Some(m) = ctx.m(gi, gj).finite() else {
                    continue;
                };
                let a = Letter::pos(gi);
                let b = Letter::pos(gj);
                let relator = alt_left(a, b, m)
                    .unwrap()
                    .concat(&alt_left(b, a, m).unwrap().invert());
                for base in [encode(&relator), encode(&relator.invert())] {
                    let len = base.len();
                    for start in 0..len {
                        let mut rot: Vec<Code> = base[start..].to_vec();
                        rot.extend_from_slice(&base[..start]);
                        for k in 0..=len {
                            let s: Box<[Code]> = rot[..k].into();
                            let s_prime: Box<[Code]> =
                                rot[k..].iter().rev().map(|&c| c ^ 1).collect();
                            max_subword = max_subword.max(k);
                            let entry = by_subword.entry(s).or_default();
                            if !entry.contains(&s_prime) {
                                entry.push(s_prime);
                            }
                        }
                    }
                }
            }
        }
        MoveIndex {
            by_subword,
            max_subword,
        }
    }
}

struct Memo {
    /// Per reduced word: (geodesic length, canonical form).
    facts: HashMap<Vec<Code>, (usize, Vec<Code>)>,
}

pub struct Oracle<'a> {
    ctx: &'a GroupContext,
    moves: MoveIndex,
    cfg: OracleConfig,
    slack: usize,
    rank: Vec<usize>,
    memo: Mutex<Memo>,
}

impl<'a> Oracle<'a> {
    pub fn new(ctx: &'a GroupContext) -> Oracle<'a> {
        Oracle::with_config(ctx, OracleConfig::default())
    }

    pub fn with_config(ctx: &'a GroupContext, cfg: OracleConfig) -> Oracle<'a> {
        let mut max_m = 0;
        for i in 0..ctx.n() {
            for j in (i + 1)..ctx.n() {
                if let Some(m) = ctx.m(GeneratorId(i as u16), GeneratorId(j as u16)).finite() {
                    max_m = max_m.max(m);
                }
            }
        }
        let slack = if max_m == 0 { 0 } else { 2 * (max_m - 1) };
        let rank: Vec<usize> = (0..2 * ctx.n())
            .map(|c| ctx.rank(Letter::from_code(c)))
            .collect();
        Oracle {
            ctx,
            moves: MoveIndex::build(ctx),
            cfg,
            slack,
            rank,
            memo: Mutex::new(Memo {
                facts: HashMap::new(),
            }),
        }
    }

    pub fn context(&self) -> &GroupContext {
        self.ctx
    }

    fn shortlex_less(&self, a: &[Code], b: &[Code]) -> bool {
        if a.len() != b.len() {
            return a.len() < b.len();
        }
        for (&x, &y) in a.iter().zip(b) {
            let (rx, ry) = (self.rank[x as usize], self.rank[y as usize]);
            if rx != ry {
                return rx < ry;
            }
        }
        false
    }

    fn explore(
        &self,
        start: &[Code],
        bound: usize,
        allow_insert: bool,
    ) -> Result<HashSet<Vec<Code>>, CapExceeded> {
        let mut seen: HashSet<Vec<Code>> = HashSet::new();
        let mut queue: VecDeque<Vec<Code>> = VecDeque::new();
        seen.insert(start.to_vec());
        queue.push_back(start.to_vec());
        while let Some(cur) = queue.pop_front() {
            let len = cur.len();
            let min_k = usize::from(!allow_insert);
            for i in 0..=len {
                let max_k = self.moves.max_subword.min(len - i);
                for k in min_k..=max_k {
                    let Some(replacements) = self.moves.by_subword.get(&cur[i..i + k]) else {
                        continue;
                    };
                    for rep in replacements {
                        let mut next: Vec<Code> = Vec::with_capacity(len - k + rep.len());
                        next.extend_from_slice(&cur[..i]);
                        next.extend_from_slice(rep);
                        next.extend_from_slice(&cur[i + k..]);
                        let next = reduce_codes(&next);
                        if next.len() > bound || seen.contains(&next) {
                            continue;
                        }
                        if seen.len() >= self.cfg.state_cap {
                            return Err(CapExceeded {
                                cap: self.cfg.state_cap,
                            });
                        }
                        seen.insert(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(seen)
    }

    /// All freely reduced words reachable from `w` through relator
    /// substitutions and free reduction, with every reduced word along the
    /// way no longer than `length_bound`.
    pub fn closure(&self, w: &Word, length_bound: usize) -> Result<HashSet<Word>, CapExceeded> {
        let start = reduce_codes(&encode(w));
        assert!(
            start.len() <= length_bound,
            "closure bound below the reduced input length"
        );
        let set = self.explore(&start, length_bound, true)?;
        Ok(set.iter().map(|c| decode(c)).collect())
    }

    /// Ensures the memo holds geodesic length and canonical form for `w`.
    fn facts_for(&self, w: &Word) -> Result<(usize, Vec<Code>), CapExceeded> {
        let reduced = reduce_codes(&encode(w));
        if let Some(hit) = self.memo.lock().unwrap().facts.get(&reduced) {
            return Ok(hit.clone());
        }
        let set = self.explore(&reduced, reduced.len() + self.slack, false)?;
        let min_len = set.iter().map(|x| x.len()).min().unwrap();
        let canonical = set
            .iter()
            .filter(|x| x.len() == min_len)
            .fold(None::<&Vec<Code>>, |best, x| match best {
                Some(b) if !self.shortlex_less(x, b) => Some(b),
                _ => Some(x),
            })
            .unwrap()
            .clone();
        let mut memo = self.memo.lock().unwrap();
        for member in set {
            memo.facts
                .entry(member)
                .or_insert_with(|| (min_len, canonical.clone()));
        }
        Ok((min_len, canonical))
    }

    /// Minimal length of any word representing the same element.
    pub fn geodesic_length(&self, w: &Word) -> Result<usize, CapExceeded> {
        Ok(self.facts_for(w)?.0)
    }

    /// Shortlex-least geodesic representative of the element.
    pub fn canonical(&self, w: &Word) -> Result<Word, CapExceeded> {
        Ok(decode(&self.facts_for(w)?.1))
    }

    /// Exponent sums per odd-edge component; invariant under the relators.
    fn abelianized(&self, w: &Word) -> Vec<i64> {
        let mut sums = vec![0i64; self.ctx.odd_component_count()];
        for &l in w.letters() {
            let c = self.ctx.odd_component(l.name());
            sums[c] += if l.is_positive() { 1 } else { -1 };
        }
        sums
    }

    /// Word problem by brute force: geodesic length of `u·v⁻¹` is zero.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool, CapExceeded> {
        let probe = u.concat(&v.invert()).free_reduce();
        if probe.len() % 2 == 1 || self.abelianized(&probe).iter().any(|&s| s != 0) {
            return Ok(false);
        }
        Ok(self.geodesic_length(&probe)? == 0)
    }

    /// Freely reduced words of length at most `max_len`, in shortlex order
    /// under the context's letter order.
    pub fn shortlex_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::new()];
        let mut layer = vec![Word::new()];
        for _ in 0..max_len {
            let mut next_layer = Vec::new();
            for w in &layer {
                for &a in self.ctx.letters() {
                    if w.last() == Some(a.inverse()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(a);
                    next_layer.push(v);
                }
            }
            out.extend(next_layer.iter().cloned());
            layer = next_layer;
        }
        out
    }

    /// First conjugating witness in shortlex order with length at most
    /// `bound`, if one exists: `f⁻¹·u·f = v`. A `None` only certifies that
    /// no witness within the bound was found, except when the abelianised
    /// images already differ, which proves non-conjugacy outright.
    pub fn conjugate(
        &self,
        u: &Word,
        v: &Word,
        bound: usize,
    ) -> Result<Option<Word>, CapExceeded> {
        if self.abelianized(u) != self.abelianized(v) {
            return Ok(None);
        }
        let target = self.canonical(v)?;
        for f in self.shortlex_words(bound) {
            let probe = f.invert().concat(u).concat(&f);
            if self.canonical(&probe)? == target {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    /// Same verdict as [`Oracle::conjugate`] but decided by meeting in the
    /// middle: any witness `f` of length at most `bound` splits as `p·q`
    /// with `|p| ≤ ⌈bound/2⌉`, `|q| ≤ bound − |p|`, and `f⁻¹·u·f = v` is
    /// equivalent to `p⁻¹·u·p = q·v·q⁻¹`. The returned witness is valid
    /// but not necessarily the shortlex-least one.
    pub fn conjugate_bounded(
        &self,
        u: &Word,
        v: &Word,
        bound: usize,
    ) -> Result<Option<Word>, CapExceeded> {
        if self.abelianized(u) != self.abelianized(v) {
            return Ok(None);
        }
        let left_bound = bound.div_ceil(2);
        let right_bound = bound - left_bound;
        let mut left: HashMap<Word, Word> = HashMap::new();
        for p in self.shortlex_words(left_bound) {
            let probe = p.invert().concat(u).concat(&p);
            left.entry(self.canonical(&probe)?).or_insert(p);
        }
        for q in self.shortlex_words(right_bound) {
            let probe = q.concat(v).concat(&q.invert());
            if let Some(p) = left.get(&self.canonical(&probe)?) {
                return Ok(Some(p.concat(&q).free_reduce()));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{CoxeterMatrix, GroupContext, MValue};
    use crate::word::GeneratorId;

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

    #[test]
    fn closure_contains_relation_partner() {
        let ctx = dihedral(4);
        let oracle = Oracle::new(&ctx);
        let set = oracle.closure(&w(&[l(0), l(1), l(0), l(1)]), 4).unwrap();
        assert!(set.contains(&w(&[l(1), l(0), l(1), l(0)])));
    }

    #[test]
    fn closure_trivial_cases() {
        let ctx = dihedral(4);
        let oracle = Oracle::new(&ctx);
        assert_eq!(
            oracle.closure(&Word::new(), 3).unwrap(),
            HashSet::from([Word::new()])
        );
        let set = oracle.closure(&w(&[l(0), li(0), l(1)]), 3).unwrap();
        assert!(set.contains(&w(&[l(1)])));
    }

    #[test]
    fn geodesic_lengths() {
        let ctx = dihedral(4);
        let oracle = Oracle::new(&ctx);
        assert_eq!(oracle.geodesic_length(&Word::new()).unwrap(), 0);
        assert_eq!(
            oracle
                .geodesic_length(&w(&[l(0), l(1), l(0), l(1)]))
                .unwrap(),
            4
        );
        assert_eq!(
            oracle
                .geodesic_length(&w(&[l(0), l(1), l(0), li(1), li(0), li(1)]))
                .unwrap(),
            2
        );
        // The over-critical word whose reduction needs lengthening moves.
        assert_eq!(
            oracle
                .geodesic_length(&w(&[l(0), l(1), l(0), l(0), li(1), li(0)]))
                .unwrap(),
            4
        );
    }

    #[test]
    fn equality_of_relation_sides() {
        let ctx = dihedral(5);
        let oracle = Oracle::new(&ctx);
        assert!(oracle
            .equal(
                &w(&[l(0), l(1), l(0), l(1), l(0)]),
                &w(&[l(1), l(0), l(1), l(0), l(1)])
            )
            .unwrap());
        assert!(!oracle.equal(&w(&[l(0)]), &w(&[l(1)])).unwrap());
        let any = w(&[l(0), li(1), l(1), l(0)]);
        assert!(oracle.equal(&any, &any.free_reduce()).unwrap());
    }

    #[test]
    fn conjugacy_of_generators() {
        let ctx5 = dihedral(5);
        let oracle5 = Oracle::new(&ctx5);
        let f = oracle5.conjugate(&w(&[l(0)]), &w(&[l(1)]), 5).unwrap();
        let f = f.expect("x1 ~ x2 in the odd dihedral group");
        assert!(oracle5
            .equal(&f.invert().concat(&w(&[l(0)])).concat(&f), &w(&[l(1)]))
            .unwrap());

        let ctx4 = dihedral(4);
        let oracle4 = Oracle::new(&ctx4);
        assert_eq!(oracle4.conjugate(&w(&[l(0)]), &w(&[l(1)]), 6).unwrap(), None);
        assert_eq!(
            oracle4.conjugate(&w(&[l(0)]), &w(&[l(0)]), 0).unwrap(),
            Some(Word::new())
        );
    }

    #[test]
    fn closure_symmetry_small() {
        let ctx = dihedral(4);
        let oracle = Oracle::new(&ctx);
        let u = w(&[l(0), l(1), l(0), l(1)]);
        let bound = 6;
        let from_u = oracle.closure(&u, bound).unwrap();
        for member in from_u.iter().take(50) {
            let back = oracle.closure(member, bound).unwrap();
            assert!(back.contains(&u), "closure not symmetric via {:?}", member);
        }
    }

    #[test]
    fn closure_members_are_equal_to_the_start() {
        let ctx = dihedral(4);
        let oracle = Oracle::new(&ctx);
        let u = w(&[l(0), l(1), li(0), li(1)]);
        for member in oracle.closure(&u, 8).unwrap() {
            assert!(oracle.equal(&member, &u).unwrap());
        }
    }

    #[test]
    fn state_cap_aborts() {
        let ctx = dihedral(4);
        let oracle = Oracle::with_config(&ctx, OracleConfig { state_cap: 3 });
        let long = w(&[l(0), l(1), l(0), l(1), l(0), l(1)]);
        assert!(matches!(
            oracle.geodesic_length(&long),
            Err(CapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn bounded_conjugacy_agrees_with_scan() {
        let ctx = dihedral(5);
        let oracle = Oracle::new(&ctx);
        let words = oracle.shortlex_words(2);
        for u in &words {
            for v in &words {
                let scan = oracle.conjugate(u, v, 3).unwrap();
                let mim = oracle.conjugate_bounded(u, v, 3).unwrap();
                assert_eq!(scan.is_some(), mim.is_some(), "u={:?} v={:?}", u, v);
                if let Some(f) = mim {
                    assert!(oracle
                        .equal(&f.invert().concat(u).concat(&f), v)
                        .unwrap());
                }
            }
        }
    }

    #[test]
    fn shortlex_enumeration_order() {
        let ctx = dihedral(4);
        let oracle = Oracle::new(&ctx);
        let words = oracle.shortlex_words(2);
        assert_eq!(words[0], Word::new());
        assert_eq!(words[1], w(&[l(0)]));
        assert_eq!(words[2], w(&[li(0)]));
        assert_eq!(words[3], w(&[l(1)]));
        // Length-2 words follow all length-1 words.
        assert!(words[5..].iter().all(|x| x.len() == 2));
        assert!(words.iter().all(|x| x.is_freely_reduced()));
    }
}
