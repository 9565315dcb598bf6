use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite word over the alphabet `{1, …, m}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(symbols: Vec<usize>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word read from the end.
    pub fn mirror(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Checks every symbol lies in `1..=alphabet_size`.
    pub fn validate(&self, alphabet_size: usize) -> Result<()> {
        match self.0.iter().find(|&&s| s == 0 || s > alphabet_size) {
            Some(s) => Err(Error::word(
                self,
                &format!("symbol {s} outside 1..={alphabet_size}"),
            )),
            None => Ok(()),
        }
    }

    /// Validation for edge labels, which must also be nonempty.
    pub fn validate_label(&self, alphabet_size: usize) -> Result<()> {
        if self.is_empty() {
            return Err(Error::word(self, "labels must be nonempty"));
        }
        self.validate(alphabet_size)
    }

    /// True iff `pattern` occurs as a contiguous factor.
    pub fn contains_factor(&self, pattern: &Word) -> bool {
        pattern.is_empty() || self.0.windows(pattern.len()).any(|w| w == pattern.0)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl<const N: usize> From<[usize; N]> for Word {
    fn from(v: [usize; N]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All words of length exactly `len`, in lexicographic order.
pub fn words_of_length(alphabet_size: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = alphabet_size.checked_pow(len as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut code| {
        let mut symbols = vec![1; len];
        for slot in symbols.iter_mut().rev() {
            *slot = code % alphabet_size + 1;
            code /= alphabet_size;
        }
        Word(symbols)
    })
}
