//! Monodromy factorizations `Phi_K(W) . W` and `W . Phi_K(W)` of the two
//! halves of `E(n)_K`, with the word of every vanishing cycle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::surface::{b_word, c_word, CurveId, FiberSurface};
use crate::twist::{apply_monodromy, stallings_rules, MonodromySource, MonodromySpec};
use crate::word::Word;

/// Which curve a vanishing cycle is, including the images it went through.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CycleLabel {
    Curve(CurveId),
    Phi(Box<CycleLabel>),
    PhiInv(Box<CycleLabel>),
    /// `base` conjugated past `by` by an elementary Hurwitz move.
    Hurwitz { base: Box<CycleLabel>, by: Box<CycleLabel>, inverse: bool },
}

impl CycleLabel {
    pub fn phi(self) -> Self {
        match self {
            CycleLabel::PhiInv(x) => *x,
            other => CycleLabel::Phi(Box::new(other)),
        }
    }

    pub fn phi_inv(self) -> Self {
        match self {
            CycleLabel::Phi(x) => *x,
            other => CycleLabel::PhiInv(Box::new(other)),
        }
    }

    fn hurwitz(base: CycleLabel, by: CycleLabel, inverse: bool) -> Self {
        if let CycleLabel::Hurwitz { base: b, by: y, inverse: inv } = &base {
            if **y == by && *inv != inverse {
                return (**b).clone();
            }
        }
        CycleLabel::Hurwitz { base: Box::new(base), by: Box::new(by), inverse }
    }

    /// The underlying curve when the label is a plain curve or a single
    /// monodromy image of one.
    pub fn image_of(&self) -> Option<CurveId> {
        match self {
            CycleLabel::Phi(x) | CycleLabel::PhiInv(x) => match **x {
                CycleLabel::Curve(c) => Some(c),
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for CycleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleLabel::Curve(c) => write!(f, "{c}"),
            CycleLabel::Phi(x) => write!(f, "phi({x})"),
            CycleLabel::PhiInv(x) => write!(f, "phi^-1({x})"),
            CycleLabel::Hurwitz { base, by, inverse: false } => write!(f, "hur({base}|{by})"),
            CycleLabel::Hurwitz { base, by, inverse: true } => write!(f, "hur^-1({base}|{by})"),
        }
    }
}

fn parse_label(s: &str) -> Result<CycleLabel> {
    let bad = || Error::KnotParse(format!("bad cycle label `{s}`"));
    let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
    if let Some(x) = inner("phi^-1(") {
        return Ok(CycleLabel::PhiInv(Box::new(parse_label(x)?)));
    }
    if let Some(x) = inner("phi(") {
        return Ok(CycleLabel::Phi(Box::new(parse_label(x)?)));
    }
    for (prefix, inverse) in [("hur^-1(", true), ("hur(", false)] {
        if let Some(x) = inner(prefix) {
            // split at the top-level `|`
            let mut depth = 0i32;
            for (k, ch) in x.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    '|' if depth == 0 => {
                        let base = parse_label(&x[..k])?;
                        let by = parse_label(&x[k + 1..])?;
                        return Ok(CycleLabel::Hurwitz { base: Box::new(base), by: Box::new(by), inverse });
                    }
                    _ => {}
                }
            }
            return Err(bad());
        }
    }
    s.parse::<CurveId>().map(CycleLabel::Curve).map_err(|_| bad())
}

impl FromStr for CycleLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_label(s)
    }
}

impl Serialize for CycleLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CycleLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Vanishing cycles attach with framing one less than the fiber framing;
/// the label is symbolic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Framing {
    #[default]
    #[serde(rename = "fiber-1")]
    FiberMinusOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCycle {
    pub curve: CycleLabel,
    /// `None` when no word is known for the curve.
    pub word: Option<Word>,
    pub framing: Framing,
}

impl VanishingCycle {
    fn new(curve: CycleLabel, word: Option<Word>) -> Self {
        VanishingCycle { curve, word, framing: Framing::FiberMinusOne }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub fiber: FiberSurface,
    pub cycles: Vec<VanishingCycle>,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Piece {
    X1,
    X2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LFPiece {
    pub which: Piece,
    pub factorization: Factorization,
}

/// The hyperelliptic word `W`. For `n = 1` the `c`-chains are empty and
/// `W = B_0 ... B_2g c_1` with `c_1` opaque.
pub fn build_w(s: &FiberSurface) -> Result<Factorization> {
    let (g, n) = (s.g, s.n);
    let mut ids: Vec<CurveId> = Vec::new();
    if n >= 2 {
        ids.extend((1..=2 * n - 2).rev().map(CurveId::C));
        ids.extend((1..=2 * n - 2).map(CurveId::C));
    }
    ids.extend((0..=2 * g).map(CurveId::B));
    ids.push(CurveId::C(2 * n - 1));
    let mut cycles = Vec::with_capacity(ids.len());
    for id in ids {
        let word = match id {
            CurveId::B(i) => Some(b_word(i, s)?),
            CurveId::C(i) if n >= 2 => Some(c_word(i, s)?),
            _ => None,
        };
        cycles.push(VanishingCycle::new(CycleLabel::Curve(id), word));
    }
    Ok(Factorization { fiber: *s, cycles })
}

fn phi_image(phi: &MonodromySpec, c: &VanishingCycle, s: &FiberSurface) -> Result<VanishingCycle> {
    let label = c.curve.clone().phi();
    let word = match &phi.source {
        MonodromySource::Stallings { m } => match c.curve {
            CycleLabel::Curve(CurveId::B(i)) => Some(stallings_rules(*m).phi_image(i, s)?),
            // c_1..c_{2n-2} live in the middle summand where Phi is the identity.
            CycleLabel::Curve(CurveId::C(i)) if s.n >= 2 && i <= 2 * s.n - 2 => c.word.clone(),
            _ => None,
        },
        _ => match &c.word {
            Some(w) => Some(apply_monodromy(phi, w, s)?),
            None => None,
        },
    };
    Ok(VanishingCycle::new(label, word))
}

/// `X_1 = Phi(W) . W` and `X_2 = W . Phi(W)`.
pub fn build_pieces(phi: &MonodromySpec, s: &FiberSurface) -> Result<(LFPiece, LFPiece)> {
    if phi.genus != s.g {
        return Err(Error::GenusMismatch { knot: phi.genus, surface: s.g });
    }
    let w = build_w(s)?;
    let image: Vec<VanishingCycle> =
        w.cycles.iter().map(|c| phi_image(phi, c, s)).collect::<Result<_>>()?;
    let mut x1 = image.clone();
    x1.extend(w.cycles.iter().cloned());
    let mut x2 = w.cycles.clone();
    x2.extend(image);
    Ok((
        LFPiece { which: Piece::X1, factorization: Factorization { fiber: *s, cycles: x1 } },
        LFPiece { which: Piece::X2, factorization: Factorization { fiber: *s, cycles: x2 } },
    ))
}

/// Simultaneous conjugation: every word replaced by its image under `phi`
/// (or `phi^-1`), order preserved.
pub fn conjugate_factorization(f: &Factorization, phi: &MonodromySpec, inverse: bool) -> Result<Factorization> {
    let map = if inverse { phi.inverse() } else { phi.clone() };
    let mut cycles = Vec::with_capacity(f.cycles.len());
    for c in &f.cycles {
        let word = match &c.word {
            Some(w) => Some(apply_monodromy(&map, w, &f.fiber)?),
            None => None,
        };
        let curve = if map.twists.is_empty() {
            c.curve.clone()
        } else if inverse {
            c.curve.clone().phi_inv()
        } else {
            c.curve.clone().phi()
        };
        cycles.push(VanishingCycle { curve, word, framing: c.framing });
    }
    Ok(Factorization { fiber: f.fiber, cycles })
}

fn check_position(f: &Factorization, i: usize) -> Result<()> {
    if i == 0 || i >= f.cycles.len() {
        return Err(Error::PositionOutOfRange { position: i, len: f.cycles.len() });
    }
    Ok(())
}

/// Elementary Hurwitz move at 1-based position `i`:
/// `(.., t_a, t_b, ..) -> (.., t_b, t_{b^-1 a b}, ..)`. The conjugated word
/// is `b' a b`; it is unknown when either word is.
pub fn hurwitz_move(f: &Factorization, i: usize) -> Result<Factorization> {
    check_position(f, i)?;
    let (a, b) = (&f.cycles[i - 1], &f.cycles[i]);
    let word = match (&a.word, &b.word) {
        (Some(x), Some(y)) => Some(Word::product([&y.invert(), x, y])),
        _ => None,
    };
    let moved = VanishingCycle {
        curve: CycleLabel::hurwitz(a.curve.clone(), b.curve.clone(), false),
        word,
        framing: a.framing,
    };
    let mut out = f.clone();
    out.cycles[i - 1] = b.clone();
    out.cycles[i] = moved;
    Ok(out)
}

/// Inverse of [`hurwitz_move`] at the same position.
pub fn inverse_hurwitz_move(f: &Factorization, i: usize) -> Result<Factorization> {
    check_position(f, i)?;
    let (x, y) = (&f.cycles[i - 1], &f.cycles[i]);
    let word = match (&x.word, &y.word) {
        (Some(xw), Some(yw)) => Some(Word::product([xw, yw, &xw.invert()])),
        _ => None,
    };
    let moved = VanishingCycle {
        curve: CycleLabel::hurwitz(y.curve.clone(), x.curve.clone(), true),
        word,
        framing: y.framing,
    };
    let mut out = f.clone();
    out.cycles[i - 1] = moved;
    out.cycles[i] = x.clone();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::{stallings_monodromy, two_bridge_monodromy};

    fn surf(g: u32, n: u32) -> FiberSurface {
        FiberSurface::new(g, n).unwrap()
    }

    fn labels(f: &Factorization) -> Vec<String> {
        f.cycles.iter().map(|c| c.curve.to_string()).collect()
    }

    #[test]
    fn w_shapes() {
        assert_eq!(labels(&build_w(&surf(1, 1)).unwrap()), ["B0", "B1", "B2", "c1"]);
        assert_eq!(
            labels(&build_w(&surf(1, 2)).unwrap()),
            ["c2", "c1", "c1", "c2", "B0", "B1", "B2", "c3"]
        );
        for g in 1..=3 {
            for n in 1..=3 {
                assert_eq!(build_w(&surf(g, n)).unwrap().len() as u32, 2 * g + 4 * n - 2);
            }
        }
        assert!(build_w(&surf(1, 1)).unwrap().cycles[3].word.is_none());
    }

    #[test]
    fn piece_sizes() {
        let phi = two_bridge_monodromy(&[1, 1]).unwrap();
        let (x1, x2) = build_pieces(&phi, &surf(1, 1)).unwrap();
        assert_eq!(x1.factorization.len() + 1, 9);
        assert_eq!(x2.factorization.len(), 8);
        let (x1, _) = build_pieces(&stallings_monodromy(2), &surf(2, 1)).unwrap();
        assert_eq!(x1.factorization.len() + 1, 13);
        let (x1, _) = build_pieces(&phi, &surf(1, 2)).unwrap();
        assert_eq!(x1.factorization.len() + 1, 17);
        assert!(matches!(build_pieces(&phi, &surf(2, 1)), Err(Error::GenusMismatch { .. })));
    }

    #[test]
    fn x2_is_rotation_of_x1() {
        let phi = two_bridge_monodromy(&[1, -1, -1, 1]).unwrap();
        let s = surf(2, 2);
        let (x1, x2) = build_pieces(&phi, &s).unwrap();
        let wl = build_w(&s).unwrap().len();
        let mut rot = x1.factorization.cycles.clone();
        rot.rotate_left(wl);
        assert_eq!(rot, x2.factorization.cycles);
    }

    #[test]
    fn conjugation() {
        let s = surf(1, 1);
        let phi = two_bridge_monodromy(&[1, -1]).unwrap();
        let (x1, _) = build_pieces(&phi, &s).unwrap();
        let f = &x1.factorization;
        let same = conjugate_factorization(f, &MonodromySpec::identity(1), false).unwrap();
        assert_eq!(&same, f);
        let back = conjugate_factorization(&conjugate_factorization(f, &phi, false).unwrap(), &phi, true).unwrap();
        assert_eq!(&back, f);
        // Phi(W) . W conjugated by Phi^-1 is W . Phi^-1(W).
        let conj = conjugate_factorization(f, &phi, true).unwrap();
        let w = build_w(&s).unwrap();
        assert_eq!(conj.cycles[..4], w.cycles[..]);
        let tail = conjugate_factorization(&w, &phi, true).unwrap();
        assert_eq!(conj.cycles[4..], tail.cycles[..]);
        assert_eq!(conj.cycles[4].curve.to_string(), "phi^-1(B0)");
    }

    #[test]
    fn hurwitz_round_trip() {
        let phi = two_bridge_monodromy(&[1, 1]).unwrap();
        let (x1, _) = build_pieces(&phi, &surf(1, 2)).unwrap();
        let f = x1.factorization;
        for i in 1..f.len() {
            let moved = hurwitz_move(&f, i).unwrap();
            assert_eq!(moved.cycles[i - 1], f.cycles[i]);
            assert_eq!(inverse_hurwitz_move(&moved, i).unwrap(), f);
        }
        assert!(hurwitz_move(&f, 0).is_err());
        assert!(hurwitz_move(&f, f.len()).is_err());
    }

    #[test]
    fn cyclic_permutation_by_moves() {
        let phi = two_bridge_monodromy(&[1, 1]).unwrap();
        let (x1, _) = build_pieces(&phi, &surf(1, 2)).unwrap();
        let mut f = x1.factorization;
        let n = f.len();
        for i in 1..n {
            f = hurwitz_move(&f, i).unwrap();
        }
        assert_eq!(f.len(), n);
    }

    #[test]
    fn label_text() {
        let l = CycleLabel::hurwitz(CycleLabel::Curve(CurveId::B(0)).phi(), CycleLabel::Curve(CurveId::C(1)), false);
        assert_eq!(l.to_string(), "hur(phi(B0)|c1)");
        assert_eq!(l.to_string().parse::<CycleLabel>().unwrap(), l);
        let json = serde_json::to_string(&VanishingCycle::new(l, None)).unwrap();
        assert_eq!(json, r#"{"curve":"hur(phi(B0)|c1)","word":null,"framing":"fiber-1"}"#);
    }
}
