//! Dehn twists about the chain curves acting on words, and the monodromies
//! of the fibered knots built from them.
//!
//! A [`MonodromySpec`] lists twists in application order: the leftmost twist
//! acts first. In composition notation `a1^-1 a2^-1 b2 a4 a3^3` is
//! `t_a3^3 ∘ t_a4 ∘ t_b2 ∘ t_a2^-1 ∘ t_a1^-1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{stallings_reference_words, CurveId, FiberSurface};
use crate::word::{alpha, Letter, Word};

/// A single twist `t_c^{±1}` as a letter substitution. Letters not in
/// `letter_map` are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistRule {
    pub curve: CurveId,
    pub sign: i8,
    pub letter_map: BTreeMap<Letter, Word>,
    /// Largest handle index of the ambient fiber.
    pub max_handle: u32,
}

impl TwistRule {
    /// `t_{a_j}^{sign}` on a fiber whose knot block has genus `knot_genus`.
    pub fn chain(j: u32, sign: i8, knot_genus: u32, max_handle: u32) -> Result<Self> {
        if j == 0 || j > 2 * knot_genus {
            return Err(Error::IndexOutOfRange { what: "chain twist", index: i64::from(j) });
        }
        let lower = if j == 1 { Letter::Connector } else { Letter::Handle(j - 1) };
        let (lo, hi) = (alpha(j - 1, 1), alpha(j, 1));
        let mut letter_map = BTreeMap::new();
        if sign > 0 {
            letter_map.insert(lower, Word::product([&lo, &hi.invert(), &lo]));
            letter_map.insert(Letter::Handle(j), lo.clone());
        } else {
            letter_map.insert(lower, hi.clone());
            letter_map.insert(Letter::Handle(j), Word::product([&hi, &lo.invert(), &hi]));
        }
        Ok(TwistRule { curve: CurveId::A(j), sign: if sign > 0 { 1 } else { -1 }, letter_map, max_handle })
    }

    pub fn inverse(&self, knot_genus: u32) -> Result<Self> {
        match self.curve {
            CurveId::A(j) => TwistRule::chain(j, -self.sign, knot_genus, self.max_handle),
            other => Err(Error::NoLetterRule(other.to_string())),
        }
    }

    fn image(&self, letter: Letter) -> Result<Word> {
        if let Letter::Handle(i) = letter {
            if i > self.max_handle {
                return Err(Error::LetterOutOfAlphabet {
                    letter: letter.to_string(),
                    curve: self.curve.to_string(),
                });
            }
        }
        Ok(match self.letter_map.get(&letter) {
            Some(w) => w.clone(),
            None => Word::from_gens(vec![crate::word::Gen::new(letter, false)]),
        })
    }
}

pub fn apply_twist(rule: &TwistRule, w: &Word) -> Result<Word> {
    w.map_letters(|l| rule.image(l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub curve: CurveId,
    pub power: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MonodromySource {
    TwoBridge { epsilons: Vec<i8> },
    Stallings { m: i64 },
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromySpec {
    pub twists: Vec<Twist>,
    pub source: MonodromySource,
    /// Genus of the knot fiber the chain curves live on.
    pub genus: u32,
}

impl MonodromySpec {
    pub fn identity(genus: u32) -> Self {
        MonodromySpec { twists: Vec::new(), source: MonodromySource::Derived, genus }
    }

    /// The inverse mapping class: reversed order, negated powers.
    pub fn inverse(&self) -> Self {
        MonodromySpec {
            twists: self
                .twists
                .iter()
                .rev()
                .map(|t| Twist { curve: t.curve, power: -t.power })
                .collect(),
            source: MonodromySource::Derived,
            genus: self.genus,
        }
    }

    pub fn is_stallings(&self) -> bool {
        matches!(self.source, MonodromySource::Stallings { .. })
    }

    /// Composition notation, e.g. `t_a2 ∘ t_a1^-1`.
    pub fn composition_string(&self) -> String {
        if self.twists.is_empty() {
            return "id".to_string();
        }
        self.twists
            .iter()
            .rev()
            .map(|t| match t.power {
                1 => format!("t_{}", t.curve),
                p => format!("t_{}^{p}", t.curve),
            })
            .collect::<Vec<_>>()
            .join(" ∘ ")
    }
}

impl fmt::Display for MonodromySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.twists.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if t.power == 1 {
                write!(f, "{}", t.curve)?;
            } else {
                write!(f, "{}^{}", t.curve, t.power)?;
            }
        }
        Ok(())
    }
}

impl FromStr for MonodromySpec {
    type Err = Error;

    /// Parses the serialized form; the genus is the smallest one containing
    /// every chain curve mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let mut twists = Vec::new();
        let mut genus = 1;
        for tok in s.split_whitespace() {
            let (c, p) = match tok.split_once('^') {
                Some((c, p)) => {
                    (c, p.parse::<i32>().map_err(|_| Error::KnotParse(format!("bad power in `{tok}`")))?)
                }
                None => (tok, 1),
            };
            let curve: CurveId = c.parse()?;
            if let CurveId::A(j) = curve {
                genus = genus.max(j.div_ceil(2));
            }
            twists.push(Twist { curve, power: p });
        }
        Ok(MonodromySpec { twists, source: MonodromySource::Derived, genus })
    }
}

/// Applies the twists of `phi` in order (leftmost first).
pub fn apply_monodromy(phi: &MonodromySpec, w: &Word, s: &FiberSurface) -> Result<Word> {
    let mut cur = w.clone();
    for t in &phi.twists {
        let j = match t.curve {
            CurveId::A(j) => j,
            other => return Err(Error::NoLetterRule(other.to_string())),
        };
        if phi.is_stallings() && j == 4 {
            return Err(Error::NoLetterRule("a4".into()));
        }
        if t.power == 0 {
            continue;
        }
        let rule = TwistRule::chain(j, t.power.signum() as i8, phi.genus, s.num_handles())?;
        for _ in 0..t.power.unsigned_abs() {
            cur = apply_twist(&rule, &cur)?;
        }
    }
    Ok(cur)
}

fn check_fibered(eps: &[i8]) -> Result<()> {
    if eps.is_empty() {
        return Err(Error::EmptySequence);
    }
    if eps.len() % 2 == 1 {
        return Err(Error::OddLength);
    }
    if let Some(bad) = eps.iter().find(|e| e.abs() != 1) {
        return Err(Error::NotFibered(format!("entry {bad} is not ±1")));
    }
    Ok(())
}

/// Monodromy `t_{a_2k}^{e_2k} ∘ ... ∘ t_{a_1}^{e_1}` of `D(e_1, ..., e_2k)`.
pub fn two_bridge_monodromy(eps: &[i8]) -> Result<MonodromySpec> {
    check_fibered(eps)?;
    let twists = eps
        .iter()
        .enumerate()
        .map(|(k, &e)| Twist { curve: CurveId::A(k as u32 + 1), power: i32::from(e) })
        .collect();
    Ok(MonodromySpec {
        twists,
        source: MonodromySource::TwoBridge { epsilons: eps.to_vec() },
        genus: (eps.len() / 2) as u32,
    })
}

/// The chain composite with `a_1` outermost: `t_{a_1}^{e_1} ∘ ... ∘
/// t_{a_2k}^{e_2k}`, so `t_{a_2k}` acts first. This is the form in which
/// the cancellation schedule reads the conjugated factorization.
pub fn outer_first_chain(eps: &[i8]) -> Result<MonodromySpec> {
    check_fibered(eps)?;
    let twists = eps
        .iter()
        .enumerate()
        .rev()
        .map(|(k, &e)| Twist { curve: CurveId::A(k as u32 + 1), power: i32::from(e) })
        .collect();
    Ok(MonodromySpec { twists, source: MonodromySource::Derived, genus: (eps.len() / 2) as u32 })
}

pub fn mirror(eps: &[i8]) -> Vec<i8> {
    eps.iter().map(|e| -e).collect()
}

/// `phi_m = t_a3^m ∘ t_a4 ∘ t_b2 ∘ t_a2^-1 ∘ t_a1^-1`.
pub fn stallings_monodromy(m: i64) -> MonodromySpec {
    let c = |curve, power| Twist { curve, power };
    MonodromySpec {
        twists: vec![
            c(CurveId::A(1), -1),
            c(CurveId::A(2), -1),
            c(CurveId::B2, 1),
            c(CurveId::A(4), 1),
            c(CurveId::A(3), m as i32),
        ],
        source: MonodromySource::Stallings { m },
        genus: 2,
    }
}

/// Letter rules of `t_a3^{±1}` on the genus-2 fiber and the words of
/// `phi_m(B_i)` built from the `phi_0(B_i)` decompositions.
#[derive(Clone, Debug)]
pub struct StallingsRules {
    pub m: i64,
    pub t_a3: TwistRule,
    pub t_a3_inv: TwistRule,
}

pub fn stallings_rules(m: i64) -> StallingsRules {
    // Large enough for every Stallings fiber; the rules only move a2, a3.
    let max = u32::MAX;
    StallingsRules {
        m,
        t_a3: TwistRule::chain(3, 1, 2, max).expect("a3 is a genus-2 chain curve"),
        t_a3_inv: TwistRule::chain(3, -1, 2, max).expect("a3 is a genus-2 chain curve"),
    }
}

impl StallingsRules {
    /// `t_a3^m(w)`.
    pub fn power(&self, w: &Word) -> Word {
        let rule = if self.m >= 0 { &self.t_a3 } else { &self.t_a3_inv };
        let mut cur = w.clone();
        for _ in 0..self.m.unsigned_abs() {
            cur = apply_twist(rule, &cur).expect("a3 rules accept every letter");
        }
        cur
    }

    /// The part of `phi_m(B_i)` before its terminal arc: everything the
    /// twists touch.
    fn image_prefix(&self, i: u32) -> Word {
        let r = stallings_reference_words();
        let ta3 = self.power(&alpha(3, 1));
        match i {
            0 => Word::product([&r.eta, &ta3, &self.power(&alpha(2, -1))]),
            1 => Word::product([&r.eta, &ta3, &r.beta[0]]),
            2 => Word::product([&r.eta, &ta3, &r.beta[1]]),
            3 => Word::product([&r.eta, &ta3, &r.beta[4]]),
            _ => Word::product([&r.beta[4], &self.power(&r.beta[3].invert()), &r.beta[4]]),
        }
    }

    /// `phi_m(B_i)` on the fiber `s` (genus 2). For `n >= 2` the arc through
    /// the chain block, `a9'`, is spliced in before the terminal arc in the
    /// same place the `B_i` words carry it.
    pub fn phi_image(&self, i: u32, s: &FiberSurface) -> Result<Word> {
        if s.g != 2 {
            return Err(Error::GenusMismatch { knot: 2, surface: s.g });
        }
        if i > 4 {
            return Err(Error::IndexOutOfRange { what: "B", index: i64::from(i) });
        }
        let r = stallings_reference_words();
        let prefix = self.image_prefix(i);
        let tail = if i == 0 { r.tilde.clone() } else { alpha(9 - i, 1) };
        if s.n == 1 {
            return Ok(prefix.concat(&tail));
        }
        let gamma = alpha(9, -1);
        if i == 0 {
            return Ok(Word::product([&prefix, &gamma, &tail]));
        }
        // Every other prefix ends on the connector; the chain arc replaces it.
        let mut gens = prefix.gens().to_vec();
        debug_assert_eq!(gens.last().map(|g| g.letter), Some(Letter::Connector));
        gens.pop();
        Ok(Word::product([&Word::from_gens(gens), &gamma, &tail]))
    }
}
