use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator of `F_d` or its inverse.
///
/// Letters are packed as `2 * generator + inverse_bit`, so the alphabet
/// `{g1, g1^-1, ..., gd, gd^-1}` maps onto `0..2d` and inversion is a bit flip.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(((generator as u16) << 1) | inverse as u16)
    }

    /// Letter with the given dense index in `0..2d`.
    pub fn from_index(index: usize) -> Self {
        Letter(index as u16)
    }

    /// Parses the signed 1-based notation used in config and report files:
    /// `3` is `g3`, `-3` is `g3^-1`.
    pub fn from_signed(value: i64, rank: usize) -> Result<Self> {
        let generator = value.unsigned_abs() as usize;
        if value == 0 || generator > rank {
            return Err(Error::InvalidInput(format!(
                "letter {value} is not in the alphabet of rank {rank}"
            )));
        }
        Ok(Letter::new(generator - 1, value < 0))
    }

    pub fn to_signed(self) -> i64 {
        let g = self.generator() as i64 + 1;
        if self.is_inverse() {
            -g
        } else {
            g
        }
    }

    /// Zero-based generator index.
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// All `2d` letters in index order.
    pub fn alphabet(rank: usize) -> impl Iterator<Item = Letter> {
        (0..2 * rank).map(Letter::from_index)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator() + 1)
        } else {
            write!(f, "g{}", self.generator() + 1)
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.to_signed())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(deserializer)?;
        if v == 0 || v.unsigned_abs() > u16::MAX as u64 / 2 {
            return Err(serde::de::Error::custom("letter must be a nonzero signed generator index"));
        }
        Ok(Letter::new(v.unsigned_abs() as usize - 1, v < 0))
    }
}
