use handlecalc::schedule::initial_complex;
use handlecalc::{run_schedule, CurveId, CycleLabel, FiberedKnot, Move, Piece};

fn all_knots() -> Vec<FiberedKnot> {
    (1..=4).flat_map(FiberedKnot::all_two_bridge).collect()
}

#[test]
fn every_cancellation_is_isolated() {
    for k in all_knots() {
        for n in 1..=3 {
            for which in [Piece::X1, Piece::X2] {
                let run = run_schedule(&k, n, which).unwrap();
                assert!(run.trace.warnings.is_empty(), "{k} n={n}: {:?}", run.trace.warnings);
                let cancels = run.trace.moves.iter().filter(|m| matches!(m, Move::Cancel { isolated: true, .. })).count();
                assert_eq!(cancels as u32, run.initial.fiber.num_handles());
            }
        }
    }
}

#[test]
fn euler_characteristic_is_invariant() {
    for k in [FiberedKnot::TwoBridge(vec![1, -1, -1, 1]), FiberedKnot::Stallings(-3)] {
        for n in 1..=2 {
            let run = run_schedule(&k, n, Piece::X1).unwrap();
            let mut cx = run.initial.clone();
            let chi = 6 * n as i64;
            assert_eq!(cx.euler_characteristic(), chi);
            for mv in &run.trace.moves {
                let before = cx.counts();
                cx.apply(mv).unwrap();
                let after = cx.counts();
                assert_eq!(cx.euler_characteristic(), chi);
                if let Move::Cancel { .. } = mv {
                    assert_eq!((before.h1 - after.h1, before.h2 - after.h2), (1, 1));
                }
            }
            assert_eq!(cx, run.complex);
        }
    }
}

#[test]
fn opaque_handles_are_conserved() {
    for k in [FiberedKnot::TwoBridge(vec![1, 1]), FiberedKnot::Stallings(1)] {
        for n in 1..=3 {
            let run = run_schedule(&k, n, Piece::X2).unwrap();
            let opaque = |cx: &handlecalc::HandleComplex| {
                cx.two_handles.iter().filter(|h| h.word.is_none()).map(|h| h.id).collect::<Vec<_>>()
            };
            assert_eq!(opaque(&run.initial), opaque(&run.complex));
            let expected = match (n, &k) {
                (1, _) => 3,
                (_, FiberedKnot::Stallings(_)) => 2,
                _ => 1,
            };
            assert_eq!(opaque(&run.initial).len(), expected, "{k} n={n}");
        }
    }
}

#[test]
fn leftover_handles_for_e1() {
    let run = run_schedule(&FiberedKnot::TwoBridge(vec![1, 1]), 1, Piece::X1).unwrap();
    let mut left: Vec<String> = run.complex.two_handles.iter().map(|h| h.label.to_string()).collect();
    left.sort();
    assert_eq!(left, ["B0", "c1", "dF", "phi^-1(B2)", "phi^-1(c1)"]);
}

#[test]
fn initial_piece_shape() {
    let cx = initial_complex(&FiberedKnot::Stallings(3), 1, Piece::X1).unwrap();
    assert_eq!(cx.counts().h2, 13);
    assert_eq!(cx.counts().h1, 8);
    assert_eq!(cx.two_handles[0].label, CycleLabel::Curve(CurveId::B(0)).phi());
    let cx = initial_complex(&FiberedKnot::TwoBridge(vec![1, 1]), 1, Piece::X1).unwrap();
    // conjugated: W comes first
    assert_eq!(cx.two_handles[0].label, CycleLabel::Curve(CurveId::B(0)));
}
