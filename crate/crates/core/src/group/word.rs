use std::fmt;

use serde::{Deserialize, Serialize};

use super::Letter;
use crate::error::{Error, Result};

/// A freely reduced word: no letter is immediately followed by its inverse.
///
/// The empty word is the identity of `F_d`. Reduced words are exactly the
/// admissible words of the non-backtracking shift.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReducedWord(Vec<Letter>);

/// True iff no adjacent pair backtracks.
pub fn is_admissible(word: &[Letter]) -> bool {
    word.windows(2).all(|w| w[1] != w[0].inverse())
}

/// Free reduction by a single stack pass.
pub fn reduce(raw: &[Letter]) -> ReducedWord {
    let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
    for &l in raw {
        push_reduced(&mut out, l);
    }
    ReducedWord(out)
}

/// Reduced representative of `a * b`.
pub fn concat_reduce(a: &ReducedWord, b: &ReducedWord) -> ReducedWord {
    // Only the junction can cancel, so peel matching letters off both ends.
    let mut left = a.0.len();
    let mut right = 0;
    while left > 0 && right < b.0.len() && a.0[left - 1] == b.0[right].inverse() {
        left -= 1;
        right += 1;
    }
    let mut out = Vec::with_capacity(left + b.0.len() - right);
    out.extend_from_slice(&a.0[..left]);
    out.extend_from_slice(&b.0[right..]);
    ReducedWord(out)
}

/// The involution `(w_1, ..., w_n) -> (w_n^-1, ..., w_1^-1)` on nonempty words.
pub fn kappa(word: &ReducedWord) -> Result<ReducedWord> {
    if word.is_empty() {
        return Err(Error::InvalidInput("empty word has no κ image".into()));
    }
    Ok(ReducedWord(word.0.iter().rev().map(|l| l.inverse()).collect()))
}

pub(crate) fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    /// Wraps letters that are already reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Result<Self> {
        if !is_admissible(&letters) {
            return Err(Error::InvalidInput("word is not reduced".into()));
        }
        Ok(ReducedWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
