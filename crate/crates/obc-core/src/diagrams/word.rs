use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::DiagramError;

/// Orientation of a single boundary point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Dir::Up => 'u',
            Dir::Down => 'd',
        }
    }
}

/// An object: a finite string of orientations, left to right. Empty is the unit object.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<Dir>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn ups(r: usize) -> Word {
        Word(vec![Dir::Up; r])
    }

    pub fn downs(s: usize) -> Word {
        Word(vec![Dir::Down; s])
    }

    /// `downs(s) ++ ups(r)`.
    pub fn walled(r: usize, s: usize) -> Word {
        Word::downs(s).concat(&Word::ups(r))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Dir] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn count(&self, d: Dir) -> usize {
        self.0.iter().filter(|&&x| x == d).count()
    }

    /// `#up - #down`; morphisms only exist between words with equal flow.
    pub fn flow(&self) -> i64 {
        self.count(Dir::Up) as i64 - self.count(Dir::Down) as i64
    }

    /// The dual word: reversed with every orientation flipped.
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|d| d.flip()).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.letter())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                'u' | '↑' => Ok(Dir::Up),
                'd' | '↓' => Ok(Dir::Down),
                other => Err(DiagramError::BadWord(format!(
                    "unexpected letter {other:?} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
