use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Freely reduced word in the free group on `rank` generators.
///
/// Letters are signed generator indices: `i` for `s_i`, `-i` for its
/// inverse, with `1 <= i <= rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    rank: usize,
    letters: Vec<i32>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    pub fn generator(i: usize, rank: usize) -> Result<Self> {
        Self::from_letters(rank, &[i as i32])
    }

    /// Validates the letters and freely reduces them.
    pub fn from_letters(rank: usize, letters: &[i32]) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > rank) {
            return Err(Error::invalid(format!("letter {bad} outside rank {rank}")));
        }
        let mut reduced = Vec::with_capacity(letters.len());
        append_reduced(&mut reduced, letters);
        Ok(Word { rank, letters: reduced })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word { rank: self.rank, letters: inverse_letters(&self.letters) }
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut letters = self.letters.clone();
        append_reduced(&mut letters, &other.letters);
        Ok(Word { rank: self.rank, letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> =
            self.letters.iter().map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub(crate) fn inverse_letters(letters: &[i32]) -> Vec<i32> {
    letters.iter().rev().map(|&l| -l).collect()
}

/// Appends `letters` to the reduced word in `buf`, cancelling at the seam
/// and within `letters`.
pub(crate) fn append_reduced(buf: &mut Vec<i32>, letters: &[i32]) {
    for &l in letters {
        if buf.last() == Some(&-l) {
            buf.pop();
        } else {
            buf.push(l);
        }
    }
}

pub fn is_reduced(letters: &[i32]) -> bool {
    letters.windows(2).all(|w| w[0] != -w[1])
}
