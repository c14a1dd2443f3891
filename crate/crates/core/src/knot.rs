//! Two-bridge knot arithmetic and the Stallings family.
//!
//! Knot spec grammar (one form per string):
//!
//! ```text
//! spec      := twobridge | conway | stallings
//! twobridge := "twobridge:" eps ("," eps)*      eps  := "+" | "-" | "+1" | "-1" | "1"
//! conway    := "conway:" int ("," int)*
//! stallings := "stallings:m=" int
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::twist::{stallings_monodromy, two_bridge_monodromy, MonodromySpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConwayForm {
    pub coefficients: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotFraction {
    pub p: i64,
    pub q: i64,
}

/// `D(m_1, ..., m_2k)`, shorthand for `C(2m_1, -2m_2, ..., 2m_{2k-1}, -2m_2k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DForm {
    pub entries: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StallingsKnot {
    pub m: i64,
}

impl StallingsKnot {
    pub fn genus(&self) -> u32 {
        2
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Evaluates `[n_1, ..., n_k]` as a reduced fraction `p/q` with `p > 0`.
pub fn rational_value(c: &ConwayForm) -> Result<(i64, i64)> {
    let (&last, rest) = c.coefficients.split_last().ok_or(Error::EmptySequence)?;
    // value = num/den, folded from the innermost coefficient outwards.
    let (mut num, mut den) = (last, 1i64);
    for &a in rest.iter().rev() {
        if num == 0 {
            return Err(Error::DivisionByZero);
        }
        (num, den) = (a * num + den, num);
    }
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    let d = gcd(num, den);
    let (mut p, mut q) = (num / d, den / d);
    if p < 0 {
        p = -p;
        q = -q;
    }
    Ok((p, q))
}

pub fn continued_fraction(c: &ConwayForm) -> Result<KnotFraction> {
    let (p, q) = rational_value(c)?;
    if p % 2 == 0 {
        return Err(Error::NotAKnot { p, q });
    }
    Ok(KnotFraction { p, q })
}

pub fn d_to_conway(d: &DForm) -> Result<ConwayForm> {
    if d.entries.is_empty() {
        return Err(Error::EmptySequence);
    }
    if d.entries.len() % 2 == 1 {
        return Err(Error::OddLength);
    }
    let coefficients = d
        .entries
        .iter()
        .enumerate()
        .map(|(k, &m)| if k % 2 == 0 { 2 * m } else { -2 * m })
        .collect();
    Ok(ConwayForm { coefficients })
}

/// Reads a Conway form as a D-form when it has the alternating doubled shape.
pub fn conway_to_d(c: &ConwayForm) -> Option<DForm> {
    let cs = &c.coefficients;
    if cs.is_empty() || cs.len() % 2 == 1 || cs.iter().any(|x| x % 2 != 0) {
        return None;
    }
    let entries = cs.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x / 2 } else { -x / 2 }).collect();
    Some(DForm { entries })
}

pub fn is_fibered(d: &DForm) -> bool {
    !d.entries.is_empty() && d.entries.iter().all(|e| e.abs() == 1)
}

pub fn equivalent(f: &KnotFraction, g: &KnotFraction) -> bool {
    if f.p != g.p {
        return false;
    }
    let p = f.p;
    (f.q - g.q).rem_euclid(p) == 0 || (f.q * g.q).rem_euclid(p) == 1 % p
}

pub fn isotopic_d(a: &DForm, b: &DForm) -> bool {
    let (x, y) = (&a.entries, &b.entries);
    if x.len() != y.len() || x.len() % 2 == 1 {
        return false;
    }
    x == y || x.iter().eq(y.iter().rev())
}

pub fn genus_of(d: &DForm) -> Result<u32> {
    if !is_fibered(d) {
        return Err(Error::NotFibered(format!("{d}")));
    }
    if d.entries.len() % 2 == 1 {
        return Err(Error::OddLength);
    }
    Ok((d.entries.len() / 2) as u32)
}

/// The 4-plat braid word, e.g. `s2^2 s1^2` for `C(2, -2)`; `eps` is the
/// closing adjustment used when the form has even length.
pub fn four_plat_braid(c: &ConwayForm, eps: i8) -> String {
    let k = c.coefficients.len();
    let mut parts = Vec::new();
    for (idx, &n) in c.coefficients.iter().enumerate() {
        let (gen, exp) = if idx % 2 == 0 { (2, n) } else { (1, -n) };
        if k.is_multiple_of(2) && idx == k - 1 {
            parts.push(format!("s{gen}^{}", exp + i64::from(eps)));
            parts.push(format!("s2^{eps}"));
        } else {
            parts.push(format!("s{gen}^{exp}"));
        }
    }
    parts.join(" ")
}

impl fmt::Display for DForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "D({})", s.join(","))
    }
}

impl fmt::Display for ConwayForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coefficients.iter().map(|e| e.to_string()).collect();
        write!(f, "C({})", s.join(","))
    }
}

/// A parsed knot spec string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum KnotSpec {
    TwoBridge(DForm),
    Conway(ConwayForm),
    Stallings(StallingsKnot),
}

/// A knot the schedules accept: fibered two-bridge or Stallings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberedKnot {
    TwoBridge(Vec<i8>),
    Stallings(i64),
}

impl FiberedKnot {
    pub fn genus(&self) -> u32 {
        match self {
            FiberedKnot::TwoBridge(e) => (e.len() / 2) as u32,
            FiberedKnot::Stallings(_) => 2,
        }
    }

    pub fn monodromy(&self) -> MonodromySpec {
        match self {
            FiberedKnot::TwoBridge(e) => two_bridge_monodromy(e).expect("validated on construction"),
            FiberedKnot::Stallings(m) => stallings_monodromy(*m),
        }
    }

    pub fn spec_string(&self) -> String {
        match self {
            FiberedKnot::TwoBridge(e) => {
                let s: Vec<&str> = e.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
                format!("twobridge:{}", s.join(","))
            }
            FiberedKnot::Stallings(m) => format!("stallings:m={m}"),
        }
    }

    /// All fibered D-forms of length `2k`, in lexicographic order with `+`
    /// before `-`.
    pub fn all_two_bridge(k: usize) -> Vec<FiberedKnot> {
        let len = 2 * k;
        (0..1u64 << len)
            .map(|bits| {
                let eps = (0..len).map(|j| if bits >> (len - 1 - j) & 1 == 0 { 1 } else { -1 }).collect();
                FiberedKnot::TwoBridge(eps)
            })
            .collect()
    }
}

impl fmt::Display for FiberedKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl KnotSpec {
    pub fn d_form(&self) -> Option<DForm> {
        match self {
            KnotSpec::TwoBridge(d) => Some(d.clone()),
            KnotSpec::Conway(c) => conway_to_d(c),
            KnotSpec::Stallings(_) => None,
        }
    }

    pub fn conway(&self) -> Option<ConwayForm> {
        match self {
            KnotSpec::TwoBridge(d) => d_to_conway(d).ok(),
            KnotSpec::Conway(c) => Some(c.clone()),
            KnotSpec::Stallings(_) => None,
        }
    }

    /// Fiberedness is read off the D-form only.
    pub fn fibered(&self) -> Result<FiberedKnot> {
        match self {
            KnotSpec::Stallings(s) => Ok(FiberedKnot::Stallings(s.m)),
            other => {
                let d = other
                    .d_form()
                    .ok_or_else(|| Error::NotFibered("no D-form presentation".into()))?;
                if d.entries.len() % 2 == 1 {
                    return Err(Error::OddLength);
                }
                if !is_fibered(&d) {
                    return Err(Error::NotFibered(format!("{d} has a non-unit entry")));
                }
                Ok(FiberedKnot::TwoBridge(d.entries.iter().map(|&e| e as i8).collect()))
            }
        }
    }
}

impl FromStr for KnotSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| Error::KnotParse(format!("missing `kind:` prefix in `{s}`")))?;
        let list = |body: &str| -> Vec<String> { body.split(',').map(|t| t.trim().to_string()).collect() };
        match kind {
            "twobridge" => {
                let mut entries = Vec::new();
                for tok in list(body) {
                    let e = match tok.as_str() {
                        "+" => 1,
                        "-" => -1,
                        t => match t.parse::<i64>() {
                            Ok(v) if v != 0 => v,
                            _ => return Err(Error::KnotParse(format!("bad entry token `{tok}`"))),
                        },
                    };
                    entries.push(e);
                }
                if entries.len() % 2 == 1 {
                    return Err(Error::OddLength);
                }
                Ok(KnotSpec::TwoBridge(DForm { entries }))
            }
            "conway" => {
                let mut coefficients = Vec::new();
                for tok in list(body) {
                    let v = tok
                        .parse::<i64>()
                        .map_err(|_| Error::KnotParse(format!("bad coefficient `{tok}`")))?;
                    coefficients.push(v);
                }
                Ok(KnotSpec::Conway(ConwayForm { coefficients }))
            }
            "stallings" => {
                let m = body
                    .strip_prefix("m=")
                    .ok_or_else(|| Error::KnotParse(format!("expected `m=<int>`, got `{body}`")))?;
                let m = m.parse::<i64>().map_err(|_| Error::KnotParse(format!("bad twist count `{m}`")))?;
                Ok(KnotSpec::Stallings(StallingsKnot { m }))
            }
            other => Err(Error::KnotParse(format!("unknown knot kind `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> ConwayForm {
        ConwayForm { coefficients: v.to_vec() }
    }
    fn d(v: &[i64]) -> DForm {
        DForm { entries: v.to_vec() }
    }
    fn f(p: i64, q: i64) -> KnotFraction {
        KnotFraction { p, q }
    }

    #[test]
    fn fractions() {
        assert_eq!(continued_fraction(&c(&[2, -2])).unwrap(), f(3, 2));
        assert_eq!(continued_fraction(&c(&[2, 2])).unwrap(), f(5, 2));
        assert_eq!(continued_fraction(&c(&[3])).unwrap(), f(3, 1));
        assert_eq!(continued_fraction(&c(&[1, 0])), Err(Error::DivisionByZero));
        assert_eq!(continued_fraction(&c(&[2])), Err(Error::NotAKnot { p: 2, q: 1 }));
        assert_eq!(rational_value(&c(&[-3])).unwrap(), (3, -1));
    }

    #[test]
    fn d_notation() {
        assert_eq!(d_to_conway(&d(&[1, 1])).unwrap(), c(&[2, -2]));
        assert_eq!(d_to_conway(&d(&[1, -1])).unwrap(), c(&[2, 2]));
        assert_eq!(d_to_conway(&d(&[1, -1, 1, 1])).unwrap(), c(&[2, 2, 2, -2]));
        assert_eq!(d_to_conway(&d(&[1])), Err(Error::OddLength));
        assert_eq!(conway_to_d(&c(&[2, -2])), Some(d(&[1, 1])));
        assert_eq!(conway_to_d(&c(&[2, 1])), None);
    }

    #[test]
    fn fibered_and_genus() {
        assert!(is_fibered(&d(&[1, -1])));
        assert!(!is_fibered(&d(&[2, 1])));
        assert!(!is_fibered(&d(&[])));
        assert_eq!(genus_of(&d(&[1, 1])).unwrap(), 1);
        assert_eq!(genus_of(&d(&[1, -1, 1, 1])).unwrap(), 2);
        assert_eq!(StallingsKnot { m: 4 }.genus(), 2);
    }

    #[test]
    fn equivalence_rules() {
        assert!(equivalent(&f(5, 2), &f(5, 3)));
        assert!(equivalent(&f(3, 1), &f(3, 1)));
        assert!(!equivalent(&f(5, 2), &f(7, 2)));
        assert!(equivalent(&f(5, 2), &f(5, -3)));
    }

    #[test]
    fn isotopy_rules() {
        assert!(isotopic_d(&d(&[1, -1, 1, 1]), &d(&[1, 1, -1, 1])));
        assert!(isotopic_d(&d(&[1, 1]), &d(&[1, 1])));
        assert!(!isotopic_d(&d(&[1, 1]), &d(&[1, -1])));
        assert!(!isotopic_d(&d(&[1, 1]), &d(&[1, 1, 1, 1])));
    }

    #[test]
    fn spec_parsing() {
        let k: KnotSpec = "twobridge:+,-,+,+".parse().unwrap();
        assert_eq!(k, KnotSpec::TwoBridge(d(&[1, -1, 1, 1])));
        assert_eq!("conway:2,-2".parse::<KnotSpec>().unwrap().fibered().unwrap(), FiberedKnot::TwoBridge(vec![1, 1]));
        assert!(matches!("conway:2,1".parse::<KnotSpec>().unwrap().fibered(), Err(Error::NotFibered(_))));
        assert_eq!("stallings:m=-1".parse::<KnotSpec>().unwrap(), KnotSpec::Stallings(StallingsKnot { m: -1 }));
        for bad in ["twobridge:+,x", "conway:2,a", "stallings:3", "torus:2,3", "twobridge:+", "plain"] {
            assert!(bad.parse::<KnotSpec>().is_err(), "{bad}");
        }
        let err = "twobridge:+,x".parse::<KnotSpec>().unwrap_err().to_string();
        assert!(err.contains("`x`"), "{err}");
    }

    #[test]
    fn enumeration_and_spec_strings() {
        let all = FiberedKnot::all_two_bridge(2);
        assert_eq!(all.len(), 16);
        assert_eq!(all[0], FiberedKnot::TwoBridge(vec![1, 1, 1, 1]));
        assert_eq!(all[1].spec_string(), "twobridge:+,+,+,-");
        for k in &all {
            assert_eq!(k.spec_string().parse::<KnotSpec>().unwrap().fibered().unwrap(), *k);
        }
    }

    #[test]
    fn braid_words() {
        assert_eq!(four_plat_braid(&c(&[3]), 1), "s2^3");
        assert_eq!(four_plat_braid(&c(&[2, -2]), 1), "s2^2 s1^3 s2^1");
        assert_eq!(four_plat_braid(&c(&[2, 2, 2]), -1), "s2^2 s1^-2 s2^2");
    }
}
