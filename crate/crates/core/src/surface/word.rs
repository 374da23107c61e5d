use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weingarten::{letter_name, Occurrence};

pub type Letter = Occurrence;

/// A reduced word in the free group on `a₁,b₁,…,a_g,b_g` (printed `a,b,c,d,…`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordWire", into = "WordWire")]
pub struct Word {
    g: usize,
    letters: Vec<Letter>,
}

#[derive(Serialize, Deserialize)]
struct WordWire {
    g: usize,
    word: String,
}

impl TryFrom<WordWire> for Word {
    type Error = Error;
    fn try_from(w: WordWire) -> Result<Self> {
        Word::parse(&w.word, w.g)
    }
}

impl From<Word> for WordWire {
    fn from(w: Word) -> Self {
        WordWire {
            g: w.g,
            word: w.to_string(),
        }
    }
}

impl Word {
    /// Freely reduces `letters`.
    pub fn new(g: usize, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            if l.letter >= 2 * g || (l.exp != 1 && l.exp != -1) {
                return Err(Error::Precondition(format!(
                    "letter {l:?} is not a generator or inverse for genus {g}"
                )));
            }
        }
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for l in letters {
            match out.last() {
                Some(top) if top.letter == l.letter && top.exp == -l.exp => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Ok(Word { g, letters: out })
    }

    /// Lowercase letters are generators, uppercase their inverses; `""` is the identity.
    pub fn parse(text: &str, g: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for (col, ch) in text.chars().enumerate() {
            let err = |message: String| Error::Parse {
                line: 1,
                column: col + 1,
                message,
            };
            if !ch.is_ascii_alphabetic() {
                return Err(err(format!("unexpected character '{ch}'")));
            }
            let letter = (ch.to_ascii_lowercase() as u8 - b'a') as usize;
            if letter >= 2 * g {
                return Err(err(format!("letter '{ch}' is outside the {} generators of genus {g}", 2 * g)));
            }
            let exp = if ch.is_ascii_lowercase() { 1 } else { -1 };
            letters.push(Letter { letter, exp });
        }
        Word::new(g, letters)
    }

    pub fn identity(g: usize) -> Self {
        Word { g, letters: Vec::new() }
    }

    /// `[a₁,b₁]⋯[a_g,b_g]`.
    pub fn relator(g: usize) -> Self {
        Word::relator_prefix(g, g)
    }

    /// The first `k` commutators of the relator.
    pub fn relator_prefix(g: usize, k: usize) -> Self {
        let mut letters = Vec::with_capacity(4 * k);
        for h in 0..k {
            let (a, b) = (2 * h, 2 * h + 1);
            letters.extend([
                Letter { letter: a, exp: 1 },
                Letter { letter: b, exp: 1 },
                Letter { letter: a, exp: -1 },
                Letter { letter: b, exp: -1 },
            ]);
        }
        Word { g, letters }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            g: self.g,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    letter: l.letter,
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(self.g.max(other.g), letters).expect("letters already validated")
    }

    /// `self^k`, unreduced-then-reduced; `k = 0` is the identity.
    pub fn power(&self, k: usize) -> Word {
        (0..k).fold(Word::identity(self.g), |acc, _| acc.concat(self))
    }

    /// Every generator appears as often as its inverse.
    pub fn is_commutator_balanced(&self) -> bool {
        let mut net = vec![0i64; 2 * self.g];
        for l in &self.letters {
            net[l.letter] += l.exp as i64;
        }
        net.iter().all(|&c| c == 0)
    }

    /// `Some(k)` when the word is literally `[a₁,b₁]⋯[a_k,b_k]` with `k ≤ g`.
    pub fn relator_prefix_handles(&self) -> Option<usize> {
        if self.letters.len() % 4 != 0 {
            return None;
        }
        let k = self.letters.len() / 4;
        (k <= self.g && *self == Word::relator_prefix(self.g, k)).then_some(k)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            let ch = letter_name(l.letter);
            if l.exp > 0 {
                write!(f, "{ch}")?;
            } else {
                write!(f, "{}", ch.to_ascii_uppercase())?;
            }
        }
        Ok(())
    }
}
