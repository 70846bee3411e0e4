use serde::{Deserialize, Serialize};

use super::word::{Dir, Word};
use super::Expr;

use Dir::{Down as D, Up as U};

/// The twelve generating morphisms the engine works with.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Gen {
    /// unit -> up down
    LCup,
    /// down up -> unit
    LCap,
    /// up up -> up up
    UpCross,
    /// closed dot on an upward strand
    BlackDot,
    /// open (odd) dot on an upward strand
    WhiteDot,
    /// unit -> down up
    RCup,
    /// up down -> unit
    RCap,
    /// up down -> down up
    LCross,
    /// down up -> up down
    RCross,
    /// down down -> down down
    DownCross,
    DownBlackDot,
    DownWhiteDot,
}

pub const ALL_GENS: [Gen; 12] = [
    Gen::LCup,
    Gen::LCap,
    Gen::UpCross,
    Gen::BlackDot,
    Gen::WhiteDot,
    Gen::RCup,
    Gen::RCap,
    Gen::LCross,
    Gen::RCross,
    Gen::DownCross,
    Gen::DownBlackDot,
    Gen::DownWhiteDot,
];

impl Gen {
    pub fn src(self) -> &'static [Dir] {
        match self {
            Gen::LCup | Gen::RCup => &[],
            Gen::LCap => &[D, U],
            Gen::RCap => &[U, D],
            Gen::UpCross => &[U, U],
            Gen::BlackDot | Gen::WhiteDot => &[U],
            Gen::LCross => &[U, D],
            Gen::RCross => &[D, U],
            Gen::DownCross => &[D, D],
            Gen::DownBlackDot | Gen::DownWhiteDot => &[D],
        }
    }

    pub fn dst(self) -> &'static [Dir] {
        match self {
            Gen::LCap | Gen::RCap => &[],
            Gen::LCup => &[U, D],
            Gen::RCup => &[D, U],
            Gen::UpCross => &[U, U],
            Gen::BlackDot | Gen::WhiteDot => &[U],
            Gen::LCross => &[D, U],
            Gen::RCross => &[U, D],
            Gen::DownCross => &[D, D],
            Gen::DownBlackDot | Gen::DownWhiteDot => &[D],
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Gen::WhiteDot | Gen::DownWhiteDot)
    }

    pub fn is_black(self) -> bool {
        matches!(self, Gen::BlackDot | Gen::DownBlackDot)
    }

    pub fn is_crossing(self) -> bool {
        matches!(
            self,
            Gen::UpCross | Gen::DownCross | Gen::LCross | Gen::RCross
        )
    }

    pub fn is_cup(self) -> bool {
        matches!(self, Gen::LCup | Gen::RCup)
    }

    pub fn is_cap(self) -> bool {
        matches!(self, Gen::LCap | Gen::RCap)
    }

    /// The crossing whose source is the given pair of letters.
    pub fn crossing_for(a: Dir, b: Dir) -> Gen {
        match (a, b) {
            (U, U) => Gen::UpCross,
            (D, D) => Gen::DownCross,
            (U, D) => Gen::LCross,
            (D, U) => Gen::RCross,
        }
    }

    pub fn cup_for(a: Dir) -> Gen {
        match a {
            U => Gen::LCup,
            D => Gen::RCup,
        }
    }

    pub fn cap_for(a: Dir) -> Gen {
        match a {
            D => Gen::LCap,
            U => Gen::RCap,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Gen::LCup => "cup",
            Gen::LCap => "cap",
            Gen::UpCross => "s",
            Gen::BlackDot => "x",
            Gen::WhiteDot => "c",
            Gen::RCup => "rcup",
            Gen::RCap => "rcap",
            Gen::LCross => "ls",
            Gen::RCross => "rs",
            Gen::DownCross => "ds",
            Gen::DownBlackDot => "xd",
            Gen::DownWhiteDot => "cd",
        }
    }

    pub fn from_token(t: &str) -> Option<Gen> {
        ALL_GENS.iter().copied().find(|g| g.token() == t)
    }

    /// Definition of a derived generator in terms of the others, bottom layer first.
    /// `LCross` has none: it is defined as the inverse of `RCross`.
    pub fn expansion(self) -> Option<Vec<Layer>> {
        let w = |s: &str| -> Word { s.parse().unwrap() };
        let l = |left: &str, g: Gen, right: &str| Layer::new(w(left), g, w(right));
        match self {
            Gen::RCross => Some(vec![
                l("du", Gen::LCup, ""),
                l("d", Gen::UpCross, "d"),
                l("", Gen::LCap, "ud"),
            ]),
            Gen::RCup => Some(vec![l("", Gen::LCup, ""), l("", Gen::LCross, "")]),
            Gen::RCap => Some(vec![l("", Gen::LCross, ""), l("", Gen::LCap, "")]),
            Gen::DownCross => Some(vec![
                l("dd", Gen::LCup, ""),
                l("d", Gen::RCross, "d"),
                l("", Gen::LCap, "dd"),
            ]),
            Gen::DownBlackDot => Some(vec![
                l("d", Gen::LCup, ""),
                l("d", Gen::BlackDot, "d"),
                l("", Gen::LCap, "d"),
            ]),
            Gen::DownWhiteDot => Some(vec![
                l("d", Gen::LCup, ""),
                l("d", Gen::WhiteDot, "d"),
                l("", Gen::LCap, "d"),
            ]),
            _ => None,
        }
    }
}

/// `id_left (x) gen (x) id_right`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Layer {
    pub left: Word,
    pub gen: Gen,
    pub right: Word,
}

impl Layer {
    pub fn new(left: Word, gen: Gen, right: Word) -> Layer {
        Layer { left, gen, right }
    }

    /// The layer acting on `word` at `offset`; panics if the letters do not match.
    pub fn at(word: &Word, offset: usize, gen: Gen) -> Layer {
        let n = gen.src().len();
        debug_assert_eq!(
            &word.0[offset..offset + n],
            gen.src(),
            "layer {gen:?} at {offset} on {word}"
        );
        Layer {
            left: word.slice(0, offset),
            gen,
            right: word.slice(offset + n, word.len()),
        }
    }

    pub fn offset(&self) -> usize {
        self.left.len()
    }

    pub fn src(&self) -> Word {
        let mut v = self.left.0.clone();
        v.extend_from_slice(self.gen.src());
        v.extend_from_slice(&self.right.0);
        Word(v)
    }

    pub fn dst(&self) -> Word {
        let mut v = self.left.0.clone();
        v.extend_from_slice(self.gen.dst());
        v.extend_from_slice(&self.right.0);
        Word(v)
    }

    /// Widens by identities on both sides.
    pub fn pad(&self, left: &Word, right: &Word) -> Layer {
        Layer {
            left: left.concat(&self.left),
            gen: self.gen,
            right: self.right.concat(right),
        }
    }
}

impl Expr {
    /// A single generator as an expression.
    pub fn gen(g: Gen) -> Expr {
        Expr::from_layer(Layer::new(Word::empty(), g, Word::empty()))
    }
}
