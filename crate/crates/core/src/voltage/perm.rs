use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::error::{Error, Result};

/// Permutation of `{0, .., n-1}` stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::invalid("image is not a permutation"));
            }
        }
        Ok(Permutation { image })
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn cyclic(n: usize) -> Self {
        Permutation { image: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation { image: other.image.iter().map(|&x| self.image[x]).collect() }
    }
}

/// Image of `w` under the homomorphism `s_i ↦ perms[i-1]`, so that
/// `s_a s_b ↦ S_a ∘ S_b`. The empty word maps to the identity.
pub fn evaluate_word(w: &Word, perms: &[Permutation]) -> Result<Permutation> {
    if perms.len() != w.rank() {
        return Err(Error::RankMismatch(w.rank(), perms.len()));
    }
    let n = perms.first().map_or(0, Permutation::len);
    if perms.iter().any(|p| p.len() != n) {
        return Err(Error::invalid("permutations of different sizes"));
    }
    let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
    let mut image: Vec<usize> = (0..n).collect();
    for &l in w.letters().iter().rev() {
        let p = if l > 0 { &perms[l as usize - 1] } else { &inverses[(-l) as usize - 1] };
        for x in image.iter_mut() {
            *x = p.apply(*x);
        }
    }
    Ok(Permutation { image })
}
