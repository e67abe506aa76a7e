//! Letters and words over the standard generating set.
//!
//! A word is a finite sequence of signed generator letters. Words are the
//! only representation of group elements in this crate; every operation
//! states explicitly whether it expects freely reduced or geodesic input.

use std::fmt;

use thiserror::Error;

/// Index of a generator within its group context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GeneratorId(pub u16);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

/// A generator or an inverse generator. The generator itself is the
/// letter's *name*.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GeneratorId,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: GeneratorId) -> Letter {
        Letter { gen, sign: Sign::Pos }
    }

    pub fn neg(gen: GeneratorId) -> Letter {
        Letter { gen, sign: Sign::Neg }
    }

    pub fn name(self) -> GeneratorId {
        self.gen
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn inverse(self) -> Letter {
        let sign = match self.sign {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        };
        Letter { gen: self.gen, sign }
    }

    /// Dense index in `0..2n`, used for rank tables.
    pub fn code(self) -> usize {
        self.gen.index() * 2 + if self.is_positive() { 0 } else { 1 }
    }

    pub fn from_code(code: usize) -> Letter {
        let gen = GeneratorId((code / 2) as u16);
        if code % 2 == 0 {
            Letter::pos(gen)
        } else {
            Letter::neg(gen)
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "x{}", self.gen.0 + 1),
            Sign::Neg => write!(f, "x{}^-1", self.gen.0 + 1),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("alternating word requires two distinct generator names")]
    SameName,
    #[error("word is not cyclically reduced as a word")]
    NotCyclicallyReduced,
}

/// A word over the generators; may or may not be freely reduced.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn single(letter: Letter) -> Word {
        Word(vec![letter])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Cancels adjacent inverse pairs until none remain. The result is the
    /// unique freely reduced word representing the same element.
    pub fn free_reduce(&self) -> Word {
        free_reduce_slice(&self.0)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Reversed sequence with all signs flipped.
    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Names occurring in the word.
    pub fn generators_of(&self) -> Vec<GeneratorId> {
        let mut names: Vec<GeneratorId> = self.0.iter().map(|l| l.name()).collect();
        names.sort();
        names.dedup();
        names
    }

    /// True when every letter is a positive or negative power of one fixed
    /// generator; returns that generator and the signed exponent.
    pub fn as_generator_power(&self) -> Option<(GeneratorId, i64)> {
        let first = self.first()?;
        if self.0.iter().all(|&l| l == first) {
            let k = self.len() as i64;
            Some((first.name(), if first.is_positive() { k } else { -k }))
        } else {
            None
        }
    }

    /// All rotations of a freely and cyclically reduced word, each paired
    /// with the prefix `p` such that the rotation equals `p⁻¹·w·p` as words.
    pub fn cyclic_conjugates(&self) -> Result<Vec<(Word, Word)>, WordError> {
        if !self.is_freely_reduced() {
            return Err(WordError::NotCyclicallyReduced);
        }
        if let (Some(f), Some(l)) = (self.first(), self.last()) {
            if f == l.inverse() {
                return Err(WordError::NotCyclicallyReduced);
            }
        }
        if self.is_empty() {
            return Ok(vec![(Word::new(), Word::new())]);
        }
        let mut out = Vec::with_capacity(self.len());
        for k in 0..self.len() {
            let mut rot = self.0[k..].to_vec();
            rot.extend_from_slice(&self.0[..k]);
            out.push((Word(rot), Word(self.0[..k].to_vec())));
        }
        Ok(out)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("{:?}", l)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Word {
        Word(iter.into_iter().collect())
    }
}

pub(crate) fn free_reduce_slice(letters: &[Letter]) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if stack.last().is_some_and(|&top| top == l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word(stack)
}

/// The word of `k` alternating `a`s and `b`s that starts with `a`.
pub fn alt_left(a: Letter, b: Letter, k: usize) -> Result<Word, WordError> {
    if a.name() == b.name() {
        return Err(WordError::SameName);
    }
    Ok((0..k).map(|i| if i % 2 == 0 { a } else { b }).collect())
}

/// The word of `k` alternating `a`s and `b`s that ends with `b`.
pub fn alt_right(a: Letter, b: Letter, k: usize) -> Result<Word, WordError> {
    if a.name() == b.name() {
        return Err(WordError::SameName);
    }
    Ok((0..k)
        .map(|i| if (k - 1 - i) % 2 == 0 { b } else { a })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(g: u16) -> Letter {
        Letter::pos(GeneratorId(g))
    }

    fn li(g: u16) -> Letter {
        Letter::neg(GeneratorId(g))
    }

    fn w(ls: &[Letter]) -> Word {
        Word::from_letters(ls.to_vec())
    }

    #[test]
    fn free_reduce_cancels_pairs() {
        assert_eq!(w(&[l(0), li(0)]).free_reduce(), Word::new());
        assert_eq!(
            w(&[l(0), l(1), li(1), l(0)]).free_reduce(),
            w(&[l(0), l(0)])
        );
        assert_eq!(
            w(&[l(0), l(1), l(2)]).free_reduce(),
            w(&[l(0), l(1), l(2)])
        );
    }

    #[test]
    fn invert_reverses_and_flips() {
        assert_eq!(w(&[l(0), l(1)]).invert(), w(&[li(1), li(0)]));
        assert_eq!(Word::new().invert(), Word::new());
        assert_eq!(w(&[li(0)]).invert(), w(&[l(0)]));
    }

    #[test]
    fn alternating_builders() {
        let a = l(0);
        let b = l(1);
        assert_eq!(alt_left(a, b, 4).unwrap(), w(&[l(0), l(1), l(0), l(1)]));
        assert_eq!(alt_right(a, b, 3).unwrap(), w(&[l(1), l(0), l(1)]));
        assert_eq!(alt_left(a, b, 0).unwrap(), Word::new());
        assert_eq!(alt_left(a, l(0), 2), Err(WordError::SameName));
        // For k = m the two relation sides have the same length m.
        assert_eq!(alt_left(a, b, 5).unwrap().len(), 5);
        assert_eq!(alt_left(b, a, 5).unwrap().len(), 5);
    }

    #[test]
    fn cyclic_conjugates_rotations() {
        let word = w(&[l(0), l(1), l(2)]);
        let rots = word.cyclic_conjugates().unwrap();
        assert_eq!(rots.len(), 3);
        assert_eq!(rots[0], (w(&[l(0), l(1), l(2)]), Word::new()));
        assert_eq!(rots[1], (w(&[l(1), l(2), l(0)]), w(&[l(0)])));
        assert_eq!(rots[2], (w(&[l(2), l(0), l(1)]), w(&[l(0), l(1)])));

        assert_eq!(
            w(&[l(0)]).cyclic_conjugates().unwrap(),
            vec![(w(&[l(0)]), Word::new())]
        );
        assert_eq!(
            w(&[l(0), l(1), li(0)]).cyclic_conjugates(),
            Err(WordError::NotCyclicallyReduced)
        );
    }

    #[test]
    fn rotation_prefix_identity() {
        let word = w(&[l(0), l(1), l(0), l(2)]);
        for (rot, p) in word.cyclic_conjugates().unwrap() {
            let conj = p.invert().concat(&word).concat(&p).free_reduce();
            assert_eq!(conj, rot);
        }
    }

    #[test]
    fn generators_of_names() {
        assert_eq!(
            w(&[l(0), li(1), l(0)]).generators_of(),
            vec![GeneratorId(0), GeneratorId(1)]
        );
        assert!(Word::new().generators_of().is_empty());
        assert_eq!(w(&[li(2), li(2)]).generators_of(), vec![GeneratorId(2)]);
    }

    #[test]
    fn generator_power_detection() {
        assert_eq!(
            w(&[l(0), l(0), l(0)]).as_generator_power(),
            Some((GeneratorId(0), 3))
        );
        assert_eq!(
            w(&[li(1), li(1)]).as_generator_power(),
            Some((GeneratorId(1), -2))
        );
        assert_eq!(w(&[l(0), l(1)]).as_generator_power(), None);
        assert_eq!(w(&[l(0), li(0)]).as_generator_power(), None);
    }
}
