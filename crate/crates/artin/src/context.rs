//! Coxeter data and the validated group context.

use std::collections::VecDeque;

use thiserror::Error;

use crate::word::{GeneratorId, Letter, Word};

/// An off-diagonal Coxeter matrix entry: the relation length, or no relation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MValue {
    Finite(usize),
    Infinity,
}

impl MValue {
    pub fn is_finite(self) -> bool {
        matches!(self, MValue::Finite(_))
    }

    pub fn is_odd(self) -> bool {
        matches!(self, MValue::Finite(m) if m % 2 == 1)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            MValue::Finite(m) => Some(m),
            MValue::Infinity => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContextError {
    #[error("a group context needs at least 2 generators, got {0}")]
    TooFewGenerators(usize),
    #[error("entry m[{i}][{j}] = {m} is below 4; only extra-large type is supported")]
    NotExtraLarge { i: usize, j: usize, m: usize },
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("letter order must be a permutation of the 2n letters")]
    BadLetterOrder,
}

/// Symmetric matrix of relation lengths with all finite entries at least 4.
#[derive(Clone, Debug)]
pub struct CoxeterMatrix {
    n: usize,
    entries: Vec<MValue>,
}

impl CoxeterMatrix {
    /// Builds an `n`-generator matrix from pair entries; unspecified pairs
    /// default to infinity (no relation).
    pub fn from_pairs(n: usize, pairs: &[(usize, usize, MValue)]) -> Result<CoxeterMatrix, ContextError> {
        if n < 2 {
            return Err(ContextError::TooFewGenerators(n));
        }
        let mut entries = vec![MValue::Infinity; n * n];
        for &(i, j, m) in pairs {
            if i >= n || j >= n {
                return Err(ContextError::GeneratorOutOfRange(i.max(j)));
            }
            if let MValue::Finite(v) = m {
                if v < 4 {
                    return Err(ContextError::NotExtraLarge { i, j, m: v });
                }
            }
            entries[i * n + j] = m;
            entries[j * n + i] = m;
        }
        Ok(CoxeterMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> MValue {
        self.entries[i * self.n + j]
    }
}

/// A validated group: Coxeter matrix, letter order for shortlex, and the
/// partition of generators into components connected by odd-labelled edges.
#[derive(Clone, Debug)]
pub struct GroupContext {
    matrix: CoxeterMatrix,
    letter_order: Vec<Letter>,
    rank: Vec<usize>,
    odd_component: Vec<usize>,
    odd_adjacent: Vec<Vec<usize>>,
}

impl GroupContext {
    /// Context with the default letter order `x1 < x1⁻¹ < x2 < x2⁻¹ < …`.
    pub fn new(matrix: CoxeterMatrix) -> Result<GroupContext, ContextError> {
        let order: Vec<Letter> = (0..2 * matrix.n()).map(Letter::from_code).collect();
        GroupContext::with_letter_order(matrix, order)
    }

    pub fn with_letter_order(
        matrix: CoxeterMatrix,
        letter_order: Vec<Letter>,
    ) -> Result<GroupContext, ContextError> {
        let n = matrix.n();
        if letter_order.len() != 2 * n {
            return Err(ContextError::BadLetterOrder);
        }
        let mut rank = vec![usize::MAX; 2 * n];
        for (r, &l) in letter_order.iter().enumerate() {
            if l.gen.index() >= n || rank[l.code()] != usize::MAX {
                return Err(ContextError::BadLetterOrder);
            }
            rank[l.code()] = r;
        }

        let mut odd_adjacent = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix.entry(i, j).is_odd() {
                    odd_adjacent[i].push(j);
                    odd_adjacent[j].push(i);
                }
            }
        }
        let mut odd_component = vec![usize::MAX; n];
        let mut comp = 0;
        for start in 0..n {
            if odd_component[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            odd_component[start] = comp;
            while let Some(v) = queue.pop_front() {
                for &u in &odd_adjacent[v] {
                    if odd_component[u] == usize::MAX {
                        odd_component[u] = comp;
                        queue.push_back(u);
                    }
                }
            }
            comp += 1;
        }

        Ok(GroupContext {
            matrix,
            letter_order,
            rank,
            odd_component,
            odd_adjacent,
        })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn m(&self, i: GeneratorId, j: GeneratorId) -> MValue {
        self.matrix.entry(i.index(), j.index())
    }

    /// All 2n letters in the context's order.
    pub fn letters(&self) -> &[Letter] {
        &self.letter_order
    }

    pub fn rank(&self, l: Letter) -> usize {
        self.rank[l.code()]
    }

    /// Shortlex: length first, ties broken by the letter order.
    pub fn shortlex_cmp(&self, a: &Word, b: &Word) -> std::cmp::Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (&la, &lb) in a.letters().iter().zip(b.letters()) {
                let c = self.rank(la).cmp(&self.rank(lb));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    }

    pub fn same_odd_component(&self, i: GeneratorId, j: GeneratorId) -> bool {
        self.odd_component[i.index()] == self.odd_component[j.index()]
    }

    pub fn odd_component(&self, i: GeneratorId) -> usize {
        self.odd_component[i.index()]
    }

    pub fn odd_component_count(&self) -> usize {
        self.odd_component.iter().copied().max().map_or(0, |c| c + 1)
    }

    /// Shortest path from `i` to `j` through odd-labelled edges, inclusive.
    pub fn odd_path(&self, i: GeneratorId, j: GeneratorId) -> Option<Vec<usize>> {
        if !self.same_odd_component(i, j) {
            return None;
        }
        let (s, t) = (i.index(), j.index());
        let mut prev = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::from([s]);
        prev[s] = s;
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &u in &self.odd_adjacent[v] {
                if prev[u] == usize::MAX {
                    prev[u] = v;
                    queue.push_back(u);
                }
            }
        }
        let mut path = vec![t];
        while *path.last().unwrap() != s {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        Some(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_types_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::word::Word>();
        assert_send_sync::<GroupContext>();
        assert_send_sync::<crate::oracle::Oracle>();
    }

    #[test]
    fn rejects_small_entries() {
        for m in [0, 1, 2, 3] {
            let err = CoxeterMatrix::from_pairs(2, &[(0, 1, MValue::Finite(m))]);
            assert_eq!(err.unwrap_err(), ContextError::NotExtraLarge { i: 0, j: 1, m });
        }
        assert!(CoxeterMatrix::from_pairs(2, &[(0, 1, MValue::Finite(4))]).is_ok());
        assert!(CoxeterMatrix::from_pairs(1, &[]).is_err());
    }

    #[test]
    fn default_letter_order() {
        let m = CoxeterMatrix::from_pairs(2, &[(0, 1, MValue::Finite(4))]).unwrap();
        let ctx = GroupContext::new(m).unwrap();
        let ls = ctx.letters();
        assert_eq!(ls[0], Letter::pos(GeneratorId(0)));
        assert_eq!(ls[1], Letter::neg(GeneratorId(0)));
        assert_eq!(ls[2], Letter::pos(GeneratorId(1)));
        assert!(ctx.rank(ls[0]) < ctx.rank(ls[1]));
    }

    #[test]
    fn odd_components_follow_odd_edges() {
        // m12 = 5 (odd), m23 = 4 (even), m13 = inf.
        let m = CoxeterMatrix::from_pairs(
            3,
            &[(0, 1, MValue::Finite(5)), (1, 2, MValue::Finite(4))],
        )
        .unwrap();
        let ctx = GroupContext::new(m).unwrap();
        assert!(ctx.same_odd_component(GeneratorId(0), GeneratorId(1)));
        assert!(!ctx.same_odd_component(GeneratorId(0), GeneratorId(2)));
        assert!(!ctx.same_odd_component(GeneratorId(1), GeneratorId(2)));
        assert_eq!(ctx.odd_path(GeneratorId(0), GeneratorId(1)), Some(vec![0, 1]));
        assert_eq!(ctx.odd_path(GeneratorId(0), GeneratorId(2)), None);
    }

    #[test]
    fn odd_path_multi_hop() {
        let m = CoxeterMatrix::from_pairs(
            3,
            &[(0, 1, MValue::Finite(5)), (1, 2, MValue::Finite(7))],
        )
        .unwrap();
        let ctx = GroupContext::new(m).unwrap();
        assert_eq!(ctx.odd_path(GeneratorId(0), GeneratorId(2)), Some(vec![0, 1, 2]));
        assert_eq!(ctx.odd_component_count(), 1);
    }
}
