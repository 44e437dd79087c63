//! Words in the free algebra k⟨t, ∂⟩ and a one-step rewriting normalizer.
//!
//! The normalizer applies `∂t → t∂ + 1` at the leftmost redex until no `∂`
//! precedes a `t`. Each step removes one (∂, t) inversion, so it terminates.
//! It shares nothing with the closed-form product in the parent module and is
//! used to cross-check it.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::accumulate;
use crate::rational::Rational;

use super::WeylOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    T,
    D,
}

/// `scalar · s_1 s_2 ⋯ s_n` in the free algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    pub scalar: Rational,
    pub symbols: Vec<Symbol>,
}

impl GeneratorWord {
    pub fn new(scalar: Rational, symbols: Vec<Symbol>) -> Self {
        GeneratorWord { scalar, symbols }
    }

    pub fn unit(symbols: Vec<Symbol>) -> Self {
        GeneratorWord::new(Rational::one(), symbols)
    }

    /// Parses `"ddtt"`-style strings, with `d` standing for ∂. Other characters are ignored.
    pub fn from_letters(s: &str) -> Self {
        GeneratorWord::unit(
            s.chars()
                .filter_map(|c| match c {
                    't' => Some(Symbol::T),
                    'd' => Some(Symbol::D),
                    _ => None,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Concatenation; scalars multiply.
    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        GeneratorWord::new(&self.scalar * &other.scalar, symbols)
    }

    /// The word as a product of generator operators, multiplied with the closed-form kernel.
    pub fn to_op(&self) -> WeylOp {
        self.symbols
            .iter()
            .fold(WeylOp::scalar(self.scalar.clone()), |acc, s| {
                let g = match s {
                    Symbol::T => WeylOp::t(),
                    Symbol::D => WeylOp::d(),
                };
                &acc * &g
            })
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·", self.scalar)?;
        for s in &self.symbols {
            f.write_str(match s {
                Symbol::T => "t",
                Symbol::D => "d",
            })?;
        }
        Ok(())
    }
}

/// Normal form of a sum of words by exhaustive leftmost rewriting.
pub fn normalize_words(words: impl IntoIterator<Item = GeneratorWord>) -> WeylOp {
    let mut pending: BTreeMap<Vec<Symbol>, Rational> = BTreeMap::new();
    for w in words {
        accumulate(&mut pending, w.symbols, w.scalar);
    }
    let mut normal: Vec<((u32, u32), Rational)> = Vec::new();
    while let Some((word, c)) = pending.pop_first() {
        match word.windows(2).position(|p| p == [Symbol::D, Symbol::T]) {
            Some(k) => {
                let mut swapped = word.clone();
                swapped.swap(k, k + 1);
                let mut contracted = word;
                contracted.drain(k..k + 2);
                accumulate(&mut pending, swapped, c.clone());
                accumulate(&mut pending, contracted, c);
            }
            None => {
                let i = word.iter().filter(|&&s| s == Symbol::T).count() as u32;
                let j = word.len() as u32 - i;
                normal.push(((i, j), c));
            }
        }
    }
    WeylOp::from_terms(normal)
}

/// Normal form of the product `w1 · w2`, computed by rewriting only.
pub fn weyl_mul_oracle(w1: &GeneratorWord, w2: &GeneratorWord) -> WeylOp {
    normalize_words([w1.concat(w2)])
}
