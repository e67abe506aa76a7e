//! Group-file and word parsing.
//!
//! Group files list generator names and the finite Coxeter entries:
//!
//! ```text
//! generators: a b c
//! m: a b 4
//! m: b c 5
//! ```
//!
//! Unlisted pairs default to `inf`. Words are whitespace-separated tokens
//! `name` or `name^k` with a nonzero integer `k`; `a^-1` is the inverse
//! letter and `a^3` expands to three letters.

use std::collections::HashMap;

use artin::{ContextError, CoxeterMatrix, GeneratorId, GroupContext, Letter, MValue, Word};

#[derive(Debug)]
pub struct NameTable {
    pub names: Vec<String>,
    index: HashMap<String, GeneratorId>,
}

impl NameTable {
    fn lookup(&self, name: &str) -> Option<GeneratorId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, g: GeneratorId) -> &str {
        &self.names[g.index()]
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_group_file(text: &str) -> Result<(GroupContext, NameTable), String> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, GeneratorId> = HashMap::new();
    let mut pairs: Vec<(usize, usize, MValue)> = Vec::new();
    let mut seen_pairs: Vec<(usize, usize)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("generators:") {
            if !names.is_empty() {
                return Err(format!("line {}: duplicate generators line", lineno));
            }
            for tok in rest.split_whitespace() {
                if !valid_identifier(tok) {
                    return Err(format!("line {}: bad generator name '{}'", lineno, tok));
                }
                if index.contains_key(tok) {
                    return Err(format!("line {}: duplicate generator '{}'", lineno, tok));
                }
                index.insert(tok.to_string(), GeneratorId(names.len() as u16));
                names.push(tok.to_string());
            }
        } else if let Some(rest) = line.strip_prefix("m:") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(format!("line {}: expected 'm: NAME NAME VALUE'", lineno));
            }
            let a = index
                .get(toks[0])
                .ok_or_else(|| format!("line {}: unknown generator '{}'", lineno, toks[0]))?;
            let b = index
                .get(toks[1])
                .ok_or_else(|| format!("line {}: unknown generator '{}'", lineno, toks[1]))?;
            if a == b {
                return Err(format!("line {}: m entry needs two distinct generators", lineno));
            }
            let m = if toks[2] == "inf" {
                MValue::Infinity
            } else {
                let v: usize = toks[2]
                    .parse()
                    .map_err(|_| format!("line {}: bad m value '{}'", lineno, toks[2]))?;
                if v < 4 {
                    return Err(format!(
                        "line {}: m({}, {}) = {} is below 4; the group must be of extra-large type",
                        lineno, toks[0], toks[1], v
                    ));
                }
                MValue::Finite(v)
            };
            let key = (a.index().min(b.index()), a.index().max(b.index()));
            if seen_pairs.contains(&key) {
                return Err(format!(
                    "line {}: duplicate pair '{} {}'",
                    lineno, toks[0], toks[1]
                ));
            }
            seen_pairs.push(key);
            pairs.push((a.index(), b.index(), m));
        } else {
            return Err(format!("line {}: unrecognised line '{}'", lineno, line));
        }
    }

    let matrix = CoxeterMatrix::from_pairs(names.len(), &pairs).map_err(|e| match e {
        ContextError::TooFewGenerators(n) => {
            format!("need at least 2 generators, got {}", n)
        }
        other => other.to_string(),
    })?;
    let ctx = GroupContext::new(matrix).map_err(|e| e.to_string())?;
    Ok((ctx, NameTable { names, index }))
}

pub fn parse_word(text: &str, names: &NameTable) -> Result<Word, String> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            None => (tok, 1i64),
            Some((name, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| format!("malformed exponent in '{}'", tok))?;
                if exp == 0 {
                    return Err(format!("zero exponent in '{}'", tok));
                }
                (name, exp)
            }
        };
        let gen = names
            .lookup(name)
            .ok_or_else(|| format!("unknown generator '{}'", name))?;
        if exp.unsigned_abs() > 1_000_000 {
            return Err(format!("exponent too large in '{}'", tok));
        }
        let letter = if exp > 0 {
            Letter::pos(gen)
        } else {
            Letter::neg(gen)
        };
        for _ in 0..exp.unsigned_abs() {
            letters.push(letter);
        }
    }
    Ok(Word::from_letters(letters))
}
