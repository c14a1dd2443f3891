//! The scripted slide/cancel schedules that remove every 1-handle of a
//! piece, and the JSON trace they leave behind.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{build_pieces, conjugate_factorization, CycleLabel, LFPiece, Piece};
use crate::handle::{hex, replay, HandleComplex, Move, MoveTrace};
use crate::knot::FiberedKnot;
use crate::surface::{CurveId, FiberSurface};

pub const TRACE_SCHEMA: &str = "handlecalc/1";

/// The piece as the schedule sees it. Two-bridge pieces are conjugated by
/// `Phi_K^-1`, which leaves the fibration unchanged and turns `Phi_K(W)`
/// back into `W`.
pub fn schedule_piece(knot: &FiberedKnot, n: u32, which: Piece) -> Result<LFPiece> {
    let s = FiberSurface::new(knot.genus(), n)?;
    let phi = knot.monodromy();
    let (x1, x2) = build_pieces(&phi, &s)?;
    let piece = if which == Piece::X1 { x1 } else { x2 };
    match knot {
        FiberedKnot::Stallings(_) => Ok(piece),
        FiberedKnot::TwoBridge(_) => Ok(LFPiece {
            which,
            factorization: conjugate_factorization(&piece.factorization, &phi, true)?,
        }),
    }
}

pub fn initial_complex(knot: &FiberedKnot, n: u32, which: Piece) -> Result<HandleComplex> {
    Ok(HandleComplex::from_piece(&schedule_piece(knot, n, which)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleRun {
    pub knot: FiberedKnot,
    pub n: u32,
    pub piece: Piece,
    pub initial: HandleComplex,
    pub complex: HandleComplex,
    pub trace: MoveTrace,
}

struct Runner {
    cx: HandleComplex,
    trace: MoveTrace,
}

impl Runner {
    fn curve(&self, c: CurveId) -> Result<usize> {
        self.cx
            .find(|l| *l == CycleLabel::Curve(c))
            .ok_or_else(|| Error::Schedule { step: format!("locate {c}"), word: Default::default() })
    }

    fn image(&self, c: CurveId) -> Result<usize> {
        self.cx
            .find(|l| l.image_of() == Some(c))
            .ok_or_else(|| Error::Schedule { step: format!("locate image of {c}"), word: Default::default() })
    }

    fn slide(&mut self, target: usize, over: usize) -> Result<()> {
        let mv = self.cx.slide(target, over)?;
        if let Move::Slide { productive: false, .. } = mv {
            self.trace.warnings.push(format!("slide of handle {target} over {over} cancels nothing"));
        }
        self.trace.moves.push(mv);
        Ok(())
    }

    fn cancel(&mut self, i: u32, id: usize) -> Result<()> {
        let before = self.cx.word(id)?.clone();
        let moves = self.cx.cancel(i, id).map_err(|e| match e {
            Error::HelperNotSingle { .. } => Error::Schedule { step: format!("cancel a{i} on handle {id}"), word: before.clone() },
            other => other,
        })?;
        if let Some(Move::Cancel { isolated: false, .. }) = moves.first() {
            self.trace.warnings.push(format!("a{i} cancelled by `{}` which still meets other 1-handles", before.cyclic_reduce()));
        }
        self.trace.moves.extend(moves);
        Ok(())
    }

    /// The `c`-chain cancellations in the middle summand.
    fn chain(&mut self, g: u32, n: u32) -> Result<()> {
        if n < 2 {
            return Ok(());
        }
        let top = 4 * g + 2 * n;
        for k in 1..=2 * n - 2 {
            let i = match k {
                1 => top - 3,
                k if k % 2 == 0 => top - k,
                k => top - k - 2,
            };
            let id = self.curve(CurveId::C(k))?;
            self.cancel(i, id)?;
        }
        Ok(())
    }

    /// `B_2g, ..., B_1` cancel `a_{2g+1}, ..., a_4g`.
    fn tail(&mut self, g: u32) -> Result<()> {
        for i in 1..=2 * g {
            let id = self.curve(CurveId::B(2 * g + 1 - i))?;
            self.cancel(2 * g + i, id)?;
        }
        Ok(())
    }

    fn two_bridge(&mut self, g: u32, n: u32) -> Result<()> {
        for i in 1..=2 * g {
            let over = self.curve(CurveId::B(i - 1))?;
            let target = self.image(CurveId::B(i - 1))?;
            self.slide(target, over)?;
            self.cancel(i, target)?;
        }
        self.chain(g, n)?;
        self.tail(g)
    }

    fn stallings(&mut self, n: u32) -> Result<()> {
        let mut h = [0usize; 5];
        for (i, slot) in h.iter_mut().enumerate() {
            let over = self.curve(CurveId::B(i as u32))?;
            *slot = self.image(CurveId::B(i as u32))?;
            self.slide(*slot, over)?;
        }
        self.slide(h[1], h[2])?;
        self.slide(h[3], h[2])?;
        self.cancel(2, h[1])?;
        self.slide(h[0], h[3])?;
        self.cancel(3, h[0])?;
        self.slide(h[2], h[3])?;
        self.cancel(1, h[2])?;
        self.cancel(4, h[3])?;
        self.chain(2, n)?;
        self.tail(2)
    }
}

/// Runs the schedule for one piece of `E(n)_K`.
pub fn run_schedule(knot: &FiberedKnot, n: u32, which: Piece) -> Result<ScheduleRun> {
    let initial = initial_complex(knot, n, which)?;
    let mut r = Runner { cx: initial.clone(), trace: MoveTrace::default() };
    match knot {
        FiberedKnot::TwoBridge(_) => r.two_bridge(knot.genus(), n)?,
        FiberedKnot::Stallings(_) => r.stallings(n)?,
    }
    Ok(ScheduleRun { knot: knot.clone(), n, piece: which, initial, complex: r.cx, trace: r.trace })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub one_handles: usize,
    pub two_handles: usize,
    pub euler_characteristic: i64,
    pub final_digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub schema: String,
    pub knot: String,
    pub n: u32,
    pub piece: Piece,
    pub initial: HandleComplex,
    pub moves: Vec<Move>,
    pub warnings: Vec<String>,
    #[serde(rename = "final")]
    pub final_complex: HandleComplex,
    pub certificate: Certificate,
}

impl ScheduleRun {
    pub fn document(&self) -> TraceDocument {
        let c = self.complex.counts();
        TraceDocument {
            schema: TRACE_SCHEMA.to_string(),
            knot: self.knot.spec_string(),
            n: self.n,
            piece: self.piece,
            initial: self.initial.clone(),
            moves: self.trace.moves.clone(),
            warnings: self.trace.warnings.clone(),
            final_complex: self.complex.clone(),
            certificate: Certificate {
                one_handles: c.h1,
                two_handles: c.h2,
                euler_characteristic: c.euler_characteristic(),
                final_digest: hex(self.complex.digest()),
            },
        }
    }
}

/// Replays a trace document and checks it lands on the recorded final
/// complex and certificate.
pub fn replay_document(doc: &TraceDocument) -> Result<HandleComplex> {
    if doc.schema != TRACE_SCHEMA {
        return Err(Error::Replay { index: 0, reason: format!("unknown schema `{}`", doc.schema) });
    }
    let end = replay(&doc.initial, &doc.moves)?;
    let at = doc.moves.len();
    if end != doc.final_complex || hex(end.digest()) != doc.certificate.final_digest {
        return Err(Error::Replay { index: at, reason: "final complex differs from the recorded one".into() });
    }
    let c = end.counts();
    if c.h1 != doc.certificate.one_handles || c.h2 != doc.certificate.two_handles {
        return Err(Error::Replay { index: at, reason: "certificate counts differ".into() });
    }
    Ok(end)
}
