//! Free-group words over the cores of the fiber's 1-handles.
//!
//! Letters are the connector arc `a0`, the handle cores `a1..aN`, and the
//! boundary path `at`. The connector is kept as a formal generator and is
//! never collapsed to the identity, so that printed words survive verbatim.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// The arc `a0` inside the 0-handle.
    Connector,
    /// Core of the 1-handle with the given index (1-based).
    Handle(u32),
    /// The boundary path, only meaningful on the genus `2g` fiber (`n = 1`).
    TildeBoundary,
}

impl Letter {
    pub fn handle_index(self) -> Option<u32> {
        match self {
            Letter::Handle(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Connector => write!(f, "a0"),
            Letter::Handle(i) => write!(f, "a{i}"),
            Letter::TildeBoundary => write!(f, "at"),
        }
    }
}

/// A letter with an exponent of `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub letter: Letter,
    pub inverted: bool,
}

impl Gen {
    pub const fn new(letter: Letter, inverted: bool) -> Self {
        Gen { letter, inverted }
    }

    pub fn sign(self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Gen { letter: self.letter, inverted: !self.inverted }
    }

    fn cancels(self, other: Gen) -> bool {
        self.letter == other.letter && self.inverted != other.inverted
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter)?;
        if self.inverted {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// `a_i` to the power `sign` (any negative value means inverse).
pub fn alpha(i: u32, sign: i32) -> Word {
    let letter = if i == 0 { Letter::Connector } else { Letter::Handle(i) };
    Word::from_gens(vec![Gen::new(letter, sign < 0)])
}

/// A word as a plain sequence of generators. Possibly unreduced; most
/// constructors in this crate return reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    gens: Vec<Gen>,
}

impl Word {
    pub fn empty() -> Self {
        Word { gens: Vec::new() }
    }

    /// Builds a word without reducing it.
    pub fn from_gens(gens: Vec<Gen>) -> Self {
        Word { gens }
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.gens.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    /// Free reduction.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Gen> = Vec::with_capacity(self.gens.len());
        for &g in &self.gens {
            match out.last() {
                Some(&last) if last.cancels(g) => {
                    out.pop();
                }
                _ => out.push(g),
            }
        }
        Word { gens: out }
    }

    pub fn invert(&self) -> Word {
        Word { gens: self.gens.iter().rev().map(|g| g.inverse()).collect() }
    }

    /// Reduced product `self * other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Word { gens }.reduce()
    }

    /// Reduced product of several words.
    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut gens = Vec::new();
        for w in words {
            gens.extend_from_slice(&w.gens);
        }
        Word { gens }.reduce()
    }

    /// Strips conjugating pairs from the ends after free reduction.
    pub fn cyclic_reduce(&self) -> Word {
        let r = self.reduce();
        let g = &r.gens;
        let mut lo = 0;
        let mut hi = g.len();
        while hi - lo >= 2 && g[lo].cancels(g[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word { gens: g[lo..hi].to_vec() }
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.gens.is_empty() {
            return self.clone();
        }
        let k = k % self.gens.len();
        let mut gens = self.gens[k..].to_vec();
        gens.extend_from_slice(&self.gens[..k]);
        Word { gens }
    }

    /// Number of occurrences of handle letter `i`, both signs. Connector and
    /// boundary letters never count.
    pub fn handle_occurrences(&self, i: u32) -> usize {
        self.gens.iter().filter(|g| g.letter == Letter::Handle(i)).count()
    }

    /// Sorted distinct handle indices appearing in the word.
    pub fn handle_support(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.gens.iter().filter_map(|g| g.letter.handle_index()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn max_handle(&self) -> Option<u32> {
        self.gens.iter().filter_map(|g| g.letter.handle_index()).max()
    }

    pub fn contains_letter(&self, letter: Letter) -> bool {
        self.gens.iter().any(|g| g.letter == letter)
    }

    /// Replaces `a_i^{sign}` by `replacement` and `a_i^{-sign}` by its
    /// inverse, then reduces.
    pub fn substitute(&self, i: u32, sign: i8, replacement: &Word) -> Word {
        self.substitute_letter(Letter::Handle(i), sign, replacement)
    }

    pub fn substitute_letter(&self, letter: Letter, sign: i8, replacement: &Word) -> Word {
        let inv = replacement.invert();
        let mut gens = Vec::with_capacity(self.gens.len());
        for &g in &self.gens {
            if g.letter == letter {
                if g.sign() == sign {
                    gens.extend_from_slice(&replacement.gens);
                } else {
                    gens.extend_from_slice(&inv.gens);
                }
            } else {
                gens.push(g);
            }
        }
        Word { gens }.reduce()
    }

    /// Applies a letter-wise homomorphism: each positive letter is sent to
    /// `image(letter)` and inverse letters to the inverted image.
    pub fn map_letters<F>(&self, mut image: F) -> Result<Word>
    where
        F: FnMut(Letter) -> Result<Word>,
    {
        let mut gens = Vec::with_capacity(self.gens.len());
        for &g in &self.gens {
            let im = image(g.letter)?;
            if g.inverted {
                gens.extend(im.gens.iter().rev().map(|x| x.inverse()));
            } else {
                gens.extend_from_slice(&im.gens);
            }
        }
        Ok(Word { gens }.reduce())
    }

    /// Text form used in traces: `a0' a1 at`. The empty word is `""`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// 64-bit FNV-1a over the text form.
    pub fn digest(&self) -> u64 {
        fnv1a64(self.to_text().as_bytes())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut gens = Vec::new();
        for tok in s.split_whitespace() {
            let (body, inverted) = match tok.strip_suffix('\'') {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let bad = || Error::WordParse { token: tok.to_string() };
            let rest = body.strip_prefix('a').ok_or_else(bad)?;
            let letter = if rest == "t" {
                Letter::TildeBoundary
            } else {
                if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                match rest.parse::<u32>().map_err(|_| bad())? {
                    0 => Letter::Connector,
                    i => Letter::Handle(i),
                }
            };
            gens.push(Gen::new(letter, inverted));
        }
        Ok(Word { gens })
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Parses a word, panicking on malformed input. Meant for literals.
pub fn w(text: &str) -> Word {
    text.parse().expect("malformed word literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(w("a1 a1'").reduce(), Word::empty());
        assert_eq!(w("a0' a1 a1' a0").reduce(), Word::empty());
        assert_eq!(w("a1 a2' a2 a3").reduce(), w("a1 a3"));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("a1").concat(&w("a1'")), Word::empty());
        assert_eq!(w("a0' a1").concat(&w("a1' a0")), Word::empty());
        assert_eq!(w("a0' a1").concat(&w("a0' a2")), w("a0' a1 a0' a2"));
    }

    #[test]
    fn occurrences() {
        assert_eq!(w("a0' a1 a0'").handle_occurrences(1), 1);
        assert_eq!(w("a0' a0'").handle_occurrences(1), 0);
        assert_eq!(w("a0' a1 a2' a1 a0' a3").handle_occurrences(1), 2);
        assert_eq!(w("at a0 at'").handle_occurrences(0), 0);
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(w("a1 a2").substitute(2, 1, &w("a0")), w("a1 a0"));
        assert_eq!(w("a2' a1").substitute(2, 1, &w("a0' a3")), w("a3' a0 a1"));
        assert_eq!(w("a1").substitute(2, 1, &w("a5 a6")), w("a1"));
    }

    #[test]
    fn text_form() {
        let word = w("a0' a12 at a3'");
        assert_eq!(word.to_text(), "a0' a12 at a3'");
        assert_eq!(w("").to_text(), "");
        for bad in ["b1", "a", "a1''", "ax", "a-1"] {
            assert!(bad.parse::<Word>().is_err(), "{bad}");
        }
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w("a0' a1 a2' a0").cyclic_reduce(), w("a1 a2'"));
        assert_eq!(w("a1 a2 a1'").cyclic_reduce(), w("a2"));
        assert_eq!(w("a1 a1'").cyclic_reduce(), Word::empty());
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
    }
}
