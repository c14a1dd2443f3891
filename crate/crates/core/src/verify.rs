//! Cross-checks on the handle counts and the twist lemmas, collected into
//! reports.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factorization::Piece;
use crate::handle::{assemble, HandleCounts};
use crate::knot::FiberedKnot;
use crate::schedule::{replay_document, run_schedule, ScheduleRun};
use crate::surface::FiberSurface;
use crate::twist::{apply_monodromy, outer_first_chain, two_bridge_monodromy, MonodromySpec};
use crate::word::{alpha, Letter, Word};

pub fn euler_char(c: &HandleCounts) -> i64 {
    c.euler_characteristic()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check { name: name.into(), pass: expected == actual, expected, actual }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub knot: String,
    pub n: u32,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    fn new(knot: String, n: u32, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport { schema: crate::schedule::TRACE_SCHEMA.into(), knot, n, checks, pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn eps_string(eps: &[i8]) -> String {
    FiberedKnot::TwoBridge(eps.to_vec()).spec_string()
}

/// Checks that `phi(a_i)`, with `phi = t_a1^e1 o ... o t_a2g^e2g`, lies over
/// `a0..a_{i+1}` and meets `a_{i+1}` once, for `i = 0..2g-1`.
pub fn check_lemma_alpha_i(eps: &[i8]) -> Result<VerificationReport> {
    let g = (eps.len() / 2) as u32;
    let s = FiberSurface::new(g.max(1), 1)?;
    let phi = outer_first_chain(eps)?;
    let mut checks = Vec::new();
    for i in 0..2 * g {
        let img = apply_monodromy(&phi, &alpha(i, 1), &s)?;
        let over = img.gens().iter().all(|x| match x.letter {
            Letter::Connector => true,
            Letter::Handle(j) => j <= i + 1,
            Letter::TildeBoundary => false,
        });
        let once = img.handle_occurrences(i + 1) == 1;
        checks.push(Check {
            name: format!("phi(a{i}) over a0..a{} with one a{}", i + 1, i + 1),
            expected: "true".into(),
            actual: format!("{} ({img})", over && once),
            pass: over && once,
        });
    }
    Ok(VerificationReport::new(eps_string(eps), 1, checks))
}

/// Applies `phi` and then its inverse to every generator `a0..a_2g`.
pub fn check_spec_invertible(phi: &MonodromySpec, s: &FiberSurface) -> Result<Vec<Check>> {
    let inv = phi.inverse();
    let mut checks = Vec::new();
    for i in 0..=2 * phi.genus {
        let a = alpha(i, 1);
        let back = apply_monodromy(&inv, &apply_monodromy(phi, &a, s)?, s)?;
        checks.push(Check::new(format!("phi^-1 phi(a{i})"), &a, &back));
    }
    Ok(checks)
}

pub fn check_monodromy_invertible(eps: &[i8]) -> Result<VerificationReport> {
    if eps.is_empty() {
        return Ok(VerificationReport::new(String::new(), 1, Vec::new()));
    }
    let phi = two_bridge_monodromy(eps)?;
    let s = FiberSurface::new(phi.genus, 1)?;
    let checks = check_spec_invertible(&phi, &s)?;
    Ok(VerificationReport::new(eps_string(eps), 1, checks))
}

fn no_handle_letters(run: &ScheduleRun) -> bool {
    run.complex
        .two_handles
        .iter()
        .filter_map(|h| h.word.as_ref())
        .all(|w: &Word| w.handle_support().is_empty())
}

/// Runs both pieces, assembles them and checks every count the schedule
/// claims against the closed-form values.
pub fn full_report(knot: &FiberedKnot, n: u32) -> Result<VerificationReport> {
    let g = knot.genus();
    let s = FiberSurface::new(g, n)?;
    let (n_us, g_us) = (n as usize, g as usize);
    let mut checks = Vec::new();
    let x1 = run_schedule(knot, n, Piece::X1)?;
    let x2 = run_schedule(knot, n, Piece::X2)?;
    for run in [&x1, &x2] {
        let p = crate::handle::piece_name(run.piece);
        let init = run.initial.counts();
        let fin = run.complex.counts();
        checks.push(Check::new(format!("{p} initial 1-handles"), s.num_handles(), init.h1));
        checks.push(Check::new(format!("{p} initial 2-handles"), 4 * g_us + 8 * n_us - 3, init.h2));
        checks.push(Check::new(format!("{p} initial chi"), 6 * n as i64, init.euler_characteristic()));
        checks.push(Check::new(format!("{p} final 1-handles"), 0, fin.h1));
        checks.push(Check::new(format!("{p} final 2-handles"), 6 * n_us - 1, fin.h2));
        checks.push(Check::new(format!("{p} final chi"), 6 * n as i64, fin.euler_characteristic()));
        checks.push(Check::new(format!("{p} words free of 1-handles"), true, no_handle_letters(run)));
        let replayed = replay_document(&run.document()).map(|c| c == run.complex).unwrap_or(false);
        checks.push(Check::new(format!("{p} trace replay"), true, replayed));
    }
    let total = assemble(&x1.complex, &x2.complex)?;
    let expected = HandleCounts { h0: 1, h1: 0, h2: 12 * n_us - 2, h3: 0, h4: 1 };
    checks.push(Check::new("1-handles", 0, total.h1));
    checks.push(Check::new("3-handles", 0, total.h3));
    checks.push(Check::new("2-handles", expected.h2, total.h2));
    checks.push(Check::new("2-handle count even", true, total.h2 % 2 == 0));
    checks.push(Check::new("chi", 12 * n as i64, euler_char(&total)));
    checks.push(Check::new("chi from closed form", euler_char(&expected), euler_char(&total)));
    checks.push(Check::new("b1 (no 1-handles)", 0, total.h1));
    checks.extend(check_spec_invertible(&knot.monodromy(), &s).unwrap_or_default());
    Ok(VerificationReport::new(knot.spec_string(), n, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn euler_examples() {
        let c = |h0, h1, h2, h3, h4| HandleCounts { h0, h1, h2, h3, h4 };
        assert_eq!(euler_char(&c(1, 0, 10, 0, 1)), 12);
        assert_eq!(euler_char(&c(1, 0, 22, 0, 1)), 24);
        for g in 1..5 {
            for n in 1..4 {
                assert_eq!(euler_char(&c(1, 4 * g + 2 * n - 2, 4 * g + 8 * n - 3, 0, 0)), 6 * n as i64);
            }
        }
    }

    #[test]
    fn lemma_examples() {
        let r = check_lemma_alpha_i(&[1, 1]).unwrap();
        assert!(r.pass);
        assert!(r.checks[0].actual.contains(&w("a0 a1' a0").to_string()));
        let r = check_lemma_alpha_i(&[-1, -1]).unwrap();
        assert!(r.pass);
        assert_eq!(r.checks[0].actual, "true (a1)");
        for bits in 0..16u32 {
            let eps: Vec<i8> = (0..4).map(|j| if bits >> j & 1 == 0 { 1 } else { -1 }).collect();
            assert!(check_lemma_alpha_i(&eps).unwrap().pass);
        }
    }

    #[test]
    fn invertible_examples() {
        assert!(check_monodromy_invertible(&[1, -1]).unwrap().pass);
        let r = check_monodromy_invertible(&[]).unwrap();
        assert!(r.pass && r.checks.is_empty());
    }

    #[test]
    fn full_reports() {
        let r = full_report(&FiberedKnot::TwoBridge(vec![1, 1]), 1).unwrap();
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().any(|c| c.name == "chi" && c.actual == "12"));
        assert!(full_report(&FiberedKnot::Stallings(2), 1).unwrap().pass);
        let r = full_report(&FiberedKnot::TwoBridge(vec![1, 1, 1, 1]), 3).unwrap();
        assert!(r.pass);
        assert!(r.checks.iter().any(|c| c.name == "chi" && c.actual == "36"));
    }
}
