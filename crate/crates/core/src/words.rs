//! Reduced words in the free group on a finite alphabet.
//!
//! A [`Word`] is always kept freely reduced: no letter is ever adjacent to
//! its own formal inverse. Every word carries a handle to the [`Alphabet`]
//! it was built over, so that combining words from unrelated alphabets is
//! reported instead of silently producing nonsense.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("words are over different alphabets ({left} vs {right})")]
    AlphabetMismatch { left: String, right: String },
    #[error("generator index {index} is outside an alphabet of {size} generators")]
    GeneratorOutOfRange { index: usize, size: usize },
}

/// An ordered list of generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Arc<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Arc::new(Self {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn describe(&self) -> String {
        format!("{{{}}}", self.names.join(", "))
    }
}

/// A generator or the formal inverse of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub const fn inv(generator: usize) -> Self {
        Self {
            generator,
            inverse: true,
        }
    }

    pub const fn inverted(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// +1 for a generator, -1 for a formal inverse.
    pub const fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word over an [`Alphabet`].
#[derive(Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word.
    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        Self {
            alphabet: Arc::clone(alphabet),
            letters: Vec::new(),
        }
    }

    /// The single-letter word for generator `index`.
    pub fn generator(alphabet: &Arc<Alphabet>, index: usize) -> Result<Self, WordError> {
        Self::reduce(alphabet, [Letter::new(index)])
    }

    /// Freely reduces an arbitrary letter sequence.
    ///
    /// One left-to-right pass: each incoming letter either cancels the last
    /// emitted letter or is pushed, so the cost is linear in the input.
    pub fn reduce<I>(alphabet: &Arc<Alphabet>, raw: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut letters: Vec<Letter> = Vec::new();
        for letter in raw {
            if letter.generator >= alphabet.len() {
                return Err(WordError::GeneratorOutOfRange {
                    index: letter.generator,
                    size: alphabet.len(),
                });
            }
            push_reducing(&mut letters, letter);
        }
        Ok(Self {
            alphabet: Arc::clone(alphabet),
            letters,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
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

    pub fn same_alphabet(&self, other: &Word) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }

    fn check_alphabet(&self, other: &Word) -> Result<(), WordError> {
        if self.same_alphabet(other) {
            Ok(())
        } else {
            Err(WordError::AlphabetMismatch {
                left: self.alphabet.describe(),
                right: other.alphabet.describe(),
            })
        }
    }

    /// Product in the free group: concatenation followed by cancellation.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        self.check_alphabet(other)?;
        let mut letters = self.letters.clone();
        for &letter in &other.letters {
            push_reducing(&mut letters, letter);
        }
        Ok(Word {
            alphabet: Arc::clone(&self.alphabet),
            letters,
        })
    }

    /// Reverses the letter order and flips every sign.
    pub fn inverse(&self) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Reverses the letter order, keeping every sign.
    ///
    /// The reverse of a reduced word is reduced: an adjacent pair `x x^-1` in
    /// the output would be an adjacent pair `x^-1 x` in the input.
    pub fn reverse(&self) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        self.letters.iter().eq(self.letters.iter().rev())
    }

    /// `self^exponent` in the free group; negative exponents use the inverse.
    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::identity(&self.alphabet);
        for _ in 0..exponent.unsigned_abs() {
            for &letter in &base.letters {
                push_reducing(&mut out.letters, letter);
            }
        }
        out
    }

    /// True when `self` is a generator power `g^k` with `k != 0`.
    pub fn single_generator(&self) -> Option<usize> {
        let first = self.letters.first()?;
        self.letters
            .iter()
            .all(|l| l.generator == first.generator)
            .then_some(first.generator)
    }

    /// Splits the letter sequence at `at` without any cancellation.
    pub(crate) fn split_at(&self, at: usize) -> (Word, Word) {
        let (l, r) = self.letters.split_at(at);
        (
            Word {
                alphabet: Arc::clone(&self.alphabet),
                letters: l.to_vec(),
            },
            Word {
                alphabet: Arc::clone(&self.alphabet),
                letters: r.to_vec(),
            },
        )
    }
}

fn push_reducing(letters: &mut Vec<Letter>, letter: Letter) {
    match letters.last() {
        Some(&last) if last.cancels(letter) => {
            letters.pop();
        }
        _ => letters.push(letter),
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.same_alphabet(other) && self.letters == other.letters
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Generators by name, inverses as `name^-1`, separated by spaces; the
/// empty word is `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(letter.generator))?;
            if letter.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}
