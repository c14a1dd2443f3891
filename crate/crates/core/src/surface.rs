//! The fiber surface of genus `2g + n - 1` with one 0-handle and
//! `4g + 2n - 2` 1-handles, and the words of the reference paths and
//! vanishing cycles drawn on it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{alpha, Gen, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberSurface {
    /// Genus of the fibered knot.
    pub g: u32,
    /// Index of the elliptic surface `E(n)`.
    pub n: u32,
}

impl FiberSurface {
    pub fn new(g: u32, n: u32) -> Result<Self> {
        if g == 0 || n == 0 {
            return Err(Error::Surface { g, n });
        }
        Ok(FiberSurface { g, n })
    }

    /// Number of 1-handles, `4g + 2n - 2`.
    pub fn num_handles(&self) -> u32 {
        4 * self.g + 2 * self.n - 2
    }

    pub fn fiber_genus(&self) -> u32 {
        2 * self.g + self.n - 1
    }

    /// Whether `w` only uses letters that exist on this surface.
    pub fn admits(&self, w: &Word) -> bool {
        w.gens().iter().all(|g| match g.letter {
            Letter::Connector => true,
            Letter::Handle(i) => (1..=self.num_handles()).contains(&i),
            Letter::TildeBoundary => self.n == 1,
        })
    }
}

/// Names of the curves appearing in the monodromy factorizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveId {
    B(u32),
    C(u32),
    /// Chain curve `a_j` of the knot fiber.
    A(u32),
    /// The extra curve `b2` of the Stallings monodromy.
    B2,
    /// Boundary of the fiber, i.e. the 2-handle of `F x D^2`.
    Boundary,
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveId::B(i) => write!(f, "B{i}"),
            CurveId::C(i) => write!(f, "c{i}"),
            CurveId::A(i) => write!(f, "a{i}"),
            CurveId::B2 => write!(f, "b2"),
            CurveId::Boundary => write!(f, "dF"),
        }
    }
}

impl FromStr for CurveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::KnotParse(format!("unknown curve `{s}`"));
        match s {
            "b2" => return Ok(CurveId::B2),
            "dF" => return Ok(CurveId::Boundary),
            _ => {}
        }
        let (head, idx) = s.split_at(1.min(s.len()));
        let i: u32 = idx.parse().map_err(|_| bad())?;
        match head {
            "B" => Ok(CurveId::B(i)),
            "c" => Ok(CurveId::C(i)),
            "a" => Ok(CurveId::A(i)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for CurveId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn sign_of(j: u32, flip: bool) -> i32 {
    let odd = j % 2 == 1;
    if odd != flip {
        1
    } else {
        -1
    }
}

/// `a_j^{(-1)^{j+1}}`.
fn alt(j: u32) -> Word {
    alpha(j, sign_of(j, false))
}

/// The interior of `beta_i` without its two connector letters:
/// `a1 a2' ... a_i^{(-1)^{i+1}} ... a2' a1`.
fn beta_core(i: u32) -> Word {
    let mut gens: Vec<Gen> = Vec::new();
    for j in (1..=i).chain((1..i).rev()) {
        gens.extend_from_slice(alt(j).gens());
    }
    Word::from_gens(gens)
}

/// Reference path `beta_i`, `0 <= i <= 4g`.
pub fn beta_word(i: u32, s: &FiberSurface) -> Result<Word> {
    if i > 4 * s.g {
        return Err(Error::IndexOutOfRange { what: "beta", index: i64::from(i) });
    }
    if i == 0 {
        return Ok(alpha(0, -1));
    }
    Ok(Word::product([&alpha(0, -1), &beta_core(i), &alpha(0, -1)]))
}

/// Expansion of the boundary path: `a_{4g} a_{4g-1}' ... a2 a1' a0`.
fn tilde_expansion(g: u32) -> Word {
    let mut gens: Vec<Gen> = Vec::new();
    for j in (1..=4 * g).rev() {
        gens.extend_from_slice(alpha(j, sign_of(j, true)).gens());
    }
    gens.extend_from_slice(alpha(0, 1).gens());
    Word::from_gens(gens)
}

/// Word of the boundary path `at`; only defined when `n = 1`.
pub fn tilde_alpha_word(s: &FiberSurface) -> Result<Word> {
    if s.n != 1 {
        return Err(Error::RequiresOneFiberBlock("boundary path word"));
    }
    Ok(tilde_expansion(s.g))
}

/// Replaces every `at` by its expansion.
pub fn expand_tilde(w: &Word, s: &FiberSurface) -> Result<Word> {
    if !w.contains_letter(Letter::TildeBoundary) {
        return Ok(w.clone());
    }
    let t = tilde_alpha_word(s)?;
    Ok(w.substitute_letter(Letter::TildeBoundary, 1, &t))
}

/// Word of the vanishing cycle `B_i`, `0 <= i <= 2g`.
///
/// For `n = 1` this is `beta_i * a_{4g+1-i}` (with the boundary path for
/// `i = 0`). For `n >= 2` the words start at `a1` and pass the chain block
/// through `a_{4g+1}'`; `B_0` is taken as `a0' a_{4g+1}' (boundary path)`.
pub fn b_word(i: u32, s: &FiberSurface) -> Result<Word> {
    let g = s.g;
    if i > 2 * g {
        return Err(Error::IndexOutOfRange { what: "B", index: i64::from(i) });
    }
    if s.n == 1 {
        if i == 0 {
            return Ok(Word::product([&alpha(0, -1), &tilde_expansion(g)]));
        }
        return Ok(beta_word(i, s)?.concat(&alpha(4 * g + 1 - i, 1)));
    }
    if i == 0 {
        return Ok(Word::product([&alpha(0, -1), &alpha(4 * g + 1, -1), &tilde_expansion(g)]));
    }
    Ok(Word::product([
        &beta_core(i),
        &alpha(4 * g + 1, -1),
        &alpha(4 * g + 1 - i, 1),
        &alpha(0, -1),
    ]))
}

/// Word of `c_i`, `1 <= i <= 2n-1`, for `n >= 2`. For `n = 1` the single
/// `c_1` has no known word and is treated as opaque by callers.
pub fn c_word(i: u32, s: &FiberSurface) -> Result<Word> {
    let (g, n) = (s.g, s.n);
    if n < 2 {
        return Err(Error::RequiresChainBlock("c-curve word"));
    }
    if i == 0 || i > 2 * n - 1 {
        return Err(Error::IndexOutOfRange { what: "c", index: i64::from(i) });
    }
    let top = 4 * g + 2 * n;
    let word = if i == 1 {
        Word::product([&alpha(top - 3, 1), &alpha(0, -1)])
    } else if i == 2 * n - 1 {
        let mut gens: Vec<Gen> = Vec::new();
        for j in (1..=2 * g).rev() {
            gens.extend_from_slice(alpha(j, sign_of(j, false)).gens());
        }
        gens.extend_from_slice(alpha(4 * g + 1, -1).gens());
        for j in (1..=2 * g).rev() {
            gens.extend_from_slice(alpha(j, sign_of(j, true)).gens());
        }
        gens.extend_from_slice(alpha(0, 1).gens());
        Word::from_gens(gens).reduce()
    } else if i.is_multiple_of(2) {
        let k = i / 2;
        Word::product([&alpha(top - 2 * k, 1), &alpha(top - 2 * k - 1, -1)])
    } else {
        let k = (i - 1) / 2;
        Word::product([&alpha(top - 2 * k - 3, 1), &alpha(top - 2 * k - 1, -1)])
    };
    Ok(word)
}

/// The reference words of the genus-2 Stallings fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsReference {
    /// The path `eta`, solved from `a0 * eta = a1 a2' a3 a4'`.
    pub eta: Word,
    pub beta: [Word; 5],
    /// Expansion of the boundary path `a9~` (on the `n = 1` fiber).
    pub tilde: Word,
}

pub fn stallings_reference_words() -> StallingsReference {
    let s = FiberSurface { g: 2, n: 1 };
    let rel = Word::product([&alpha(1, 1), &alpha(2, -1), &alpha(3, 1), &alpha(4, -1)]);
    let eta = alpha(0, -1).concat(&rel);
    let beta = [0, 1, 2, 3, 4].map(|i| beta_word(i, &s).expect("i <= 4g"));
    StallingsReference { eta, beta, tilde: tilde_expansion(2) }
}
