//! Word-level handle calculus for the knot surgery manifolds `E(n)_K`.
//!
//! Words in the fundamental group of a fiber surface, Dehn twist actions on
//! them, the monodromy factorizations of the two Lefschetz fibration halves,
//! and a schedule of handle slides and cancellations that leaves no 1- or
//! 3-handles.

pub mod error;
pub mod factorization;
pub mod handle;
pub mod knot;
pub mod schedule;
pub mod surface;
pub mod twist;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use factorization::{
    build_pieces, build_w, conjugate_factorization, hurwitz_move, inverse_hurwitz_move, CycleLabel,
    Factorization, Framing, LFPiece, Piece, VanishingCycle,
};
pub use handle::{assemble, eliminate_letter, replay, slide, HandleComplex, HandleCounts, Move, MoveTrace, TwoHandle};
pub use knot::{ConwayForm, DForm, FiberedKnot, KnotFraction, KnotSpec, StallingsKnot};
pub use schedule::{run_schedule, ScheduleRun, TraceDocument, TRACE_SCHEMA};
pub use surface::{CurveId, FiberSurface};
pub use twist::{
    apply_monodromy, apply_twist, outer_first_chain, stallings_monodromy, two_bridge_monodromy, MonodromySource,
    MonodromySpec, Twist, TwistRule,
};
pub use verify::{full_report, Check, VerificationReport};
pub use word::{alpha, Gen, Letter, Word};
