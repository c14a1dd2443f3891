//! Handle complexes of the Lefschetz fibration halves and the moves on them:
//! handle slides, letter elimination and 1-/2-handle cancellation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{CycleLabel, Factorization, LFPiece, Piece};
use crate::surface::{CurveId, FiberSurface};
use crate::word::{fnv1a64, Gen, Letter, Word};

pub fn hex(d: u64) -> String {
    format!("{d:016x}")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlideOutcome {
    pub word: Word,
    /// Length of the cancelled common segment.
    pub common: usize,
    pub productive: bool,
}

/// Slides the attaching circle `target` over `over`, realised as the band
/// sum `target . over^-1` taken along the best cyclic alignment.
///
/// Every pair of rotations is scored by the number of non-connector letters
/// in the longest common suffix. Ties go to a result starting with `a0'`,
/// then to the first pair found. The matched suffixes cancel.
pub fn slide(target: &Word, over: &Word) -> SlideOutcome {
    let t = target.reduce();
    let o = over.reduce();
    let (lt, lo) = (t.len(), o.len());
    let tg = t.gens();
    let og = o.gens();
    let lead = Gen::new(Letter::Connector, true);
    let mut best: Option<((usize, bool), usize, Word)> = None;
    for rt in 0..lt.max(1) {
        for ro in 0..lo.max(1) {
            let mut k = 0;
            let mut score = 0;
            while k < lt && k < lo {
                let a = tg[(rt + lt - 1 - k) % lt];
                if a != og[(ro + lo - 1 - k) % lo] {
                    break;
                }
                if a.letter != Letter::Connector {
                    score += 1;
                }
                k += 1;
            }
            if let Some(((bs, lead_found), _, _)) = &best {
                if score < *bs || (score == *bs && *lead_found) {
                    continue;
                }
            }
            let mut gens: Vec<Gen> = (0..lt - k).map(|x| tg[(rt + x) % lt]).collect();
            gens.extend((0..lo - k).rev().map(|x| og[(ro + x) % lo].inverse()));
            let word = Word::from_gens(gens).reduce();
            let key = (score, word.gens().first() == Some(&lead));
            if best.as_ref().is_none_or(|(bk, _, _)| key > *bk) {
                best = Some((key, k, word));
            }
        }
    }
    let (_, common, word) = best.expect("at least one alignment");
    SlideOutcome { word, common, productive: common > 0 }
}

/// Solves the relation `helper = 1` for `a_j`: with the cyclic reduction
/// `u a_j^e v` this is `a_j^e = u' v'`. Returns the image of `a_j`.
pub fn solve_for(helper: &Word, j: u32) -> Result<Word> {
    let c = helper.cyclic_reduce();
    let count = c.handle_occurrences(j);
    if count != 1 {
        return Err(Error::HelperNotSingle { word: helper.clone(), letter: j, count });
    }
    let p = c.gens().iter().position(|g| g.letter == Letter::Handle(j)).unwrap();
    let u = Word::from_gens(c.gens()[..p].to_vec());
    let v = Word::from_gens(c.gens()[p + 1..].to_vec());
    let img = Word::product([&u.invert(), &v.invert()]);
    Ok(if c.gens()[p].inverted { img.invert() } else { img })
}

/// Rewrites `target` in the quotient by `helper = 1`, removing `a_j`.
pub fn eliminate_letter(target: &Word, helper: &Word, j: u32) -> Result<Word> {
    let img = solve_for(helper, j)?;
    Ok(target.substitute(j, 1, &img))
}

/// `a_i` occurs exactly once after cyclic reduction.
pub fn is_cancelling(word: &Word, i: u32) -> bool {
    word.cyclic_reduce().handle_occurrences(i) == 1
}

/// Cancelling, and no other handle letter survives cyclic reduction.
pub fn is_isolated(word: &Word, i: u32) -> bool {
    let c = word.cyclic_reduce();
    c.handle_occurrences(i) == 1 && c.handle_support() == [i]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoHandle {
    pub id: usize,
    pub label: CycleLabel,
    /// `None` for opaque attaching circles.
    pub word: Option<Word>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleCounts {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub h3: usize,
    pub h4: usize,
}

impl HandleCounts {
    pub fn euler_characteristic(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64 - self.h3 as i64 + self.h4 as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleComplex {
    pub fiber: FiberSurface,
    pub zero_handles: usize,
    pub one_handles: BTreeSet<u32>,
    pub two_handles: Vec<TwoHandle>,
    /// Cancelling word recorded for every cancelled 1-handle.
    pub relators: BTreeMap<u32, Word>,
    /// The 4-handle closing the piece is only added on assembly.
    pub four_handle_pending: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    Slide { target: usize, over: usize, before: String, after: String, productive: bool },
    Eliminate { target: usize, letter: u32, before: String, after: String },
    Cancel { one_handle: u32, two_handle: usize, word: String, isolated: bool },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub moves: Vec<Move>,
    pub warnings: Vec<String>,
}

impl HandleComplex {
    /// One 0-handle, the fiber's 1-handles, a 2-handle per vanishing cycle
    /// and the boundary-framed fiber handle.
    pub fn from_factorization(f: &Factorization) -> Self {
        let mut two_handles: Vec<TwoHandle> = f
            .cycles
            .iter()
            .enumerate()
            .map(|(id, c)| TwoHandle { id, label: c.curve.clone(), word: c.word.clone() })
            .collect();
        two_handles.push(TwoHandle {
            id: two_handles.len(),
            label: CycleLabel::Curve(CurveId::Boundary),
            word: None,
        });
        HandleComplex {
            fiber: f.fiber,
            zero_handles: 1,
            one_handles: (1..=f.fiber.num_handles()).collect(),
            two_handles,
            relators: BTreeMap::new(),
            four_handle_pending: true,
        }
    }

    pub fn from_piece(p: &LFPiece) -> Self {
        Self::from_factorization(&p.factorization)
    }

    pub fn counts(&self) -> HandleCounts {
        HandleCounts { h0: self.zero_handles, h1: self.one_handles.len(), h2: self.two_handles.len(), h3: 0, h4: 0 }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().euler_characteristic()
    }

    pub fn digest(&self) -> u64 {
        fnv1a64(&serde_json::to_vec(self).expect("complex serializes"))
    }

    fn index(&self, id: usize) -> Result<usize> {
        self.two_handles.iter().position(|h| h.id == id).ok_or(Error::UnknownHandle(id))
    }

    pub fn handle(&self, id: usize) -> Result<&TwoHandle> {
        Ok(&self.two_handles[self.index(id)?])
    }

    pub fn word(&self, id: usize) -> Result<&Word> {
        self.handle(id)?.word.as_ref().ok_or(Error::OpaqueHandle { id })
    }

    fn set_word(&mut self, id: usize, w: Word) -> Result<()> {
        let k = self.index(id)?;
        self.two_handles[k].word = Some(w);
        Ok(())
    }

    /// First handle whose label satisfies `pred`.
    pub fn find(&self, pred: impl Fn(&CycleLabel) -> bool) -> Option<usize> {
        self.two_handles.iter().find(|h| pred(&h.label)).map(|h| h.id)
    }

    /// Replaces the word of `target` by its slide over `over`.
    pub fn slide(&mut self, target: usize, over: usize) -> Result<Move> {
        let t = self.word(target)?.clone();
        let o = self.word(over)?.clone();
        let out = slide(&t, &o);
        let mv = Move::Slide {
            target,
            over,
            before: hex(t.digest()),
            after: hex(out.word.digest()),
            productive: out.productive,
        };
        self.set_word(target, out.word)?;
        Ok(mv)
    }

    /// Removes the cancelled letter `a_letter` from `target` using the
    /// stored relator.
    pub fn eliminate(&mut self, target: usize, letter: u32) -> Result<Move> {
        let rel = self.relators.get(&letter).ok_or(Error::DeadOneHandle(letter))?.clone();
        let before = self.word(target)?.clone();
        let after = eliminate_letter(&before, &rel, letter)?;
        let mv = Move::Eliminate { target, letter, before: hex(before.digest()), after: hex(after.digest()) };
        self.set_word(target, after)?;
        Ok(mv)
    }

    /// Removes the pair (1-handle `a_i`, 2-handle `id`) without touching the
    /// other words.
    pub fn cancel_pair(&mut self, i: u32, id: usize) -> Result<Move> {
        if !self.one_handles.contains(&i) {
            return Err(Error::DeadOneHandle(i));
        }
        let word = self.word(id)?.clone();
        if !is_cancelling(&word, i) {
            return Err(Error::HelperNotSingle { count: word.cyclic_reduce().handle_occurrences(i), word, letter: i });
        }
        let k = self.index(id)?;
        self.two_handles.remove(k);
        self.one_handles.remove(&i);
        self.relators.insert(i, word.cyclic_reduce());
        Ok(Move::Cancel { one_handle: i, two_handle: id, word: hex(word.digest()), isolated: is_isolated(&word, i) })
    }

    /// Cancels the pair and rewrites every other word still meeting `a_i`.
    pub fn cancel(&mut self, i: u32, id: usize) -> Result<Vec<Move>> {
        let mut moves = vec![self.cancel_pair(i, id)?];
        let hit: Vec<usize> = self
            .two_handles
            .iter()
            .filter(|h| h.word.as_ref().is_some_and(|w| w.handle_occurrences(i) > 0))
            .map(|h| h.id)
            .collect();
        for t in hit {
            moves.push(self.eliminate(t, i)?);
        }
        Ok(moves)
    }

    /// Applies one recorded move, checking the recorded digests.
    pub fn apply(&mut self, mv: &Move) -> Result<()> {
        let check = |what: &str, want: &str, got: &Word| -> Result<()> {
            if hex(got.digest()) == want {
                Ok(())
            } else {
                Err(Error::Replay { index: 0, reason: format!("{what} digest mismatch on `{got}`") })
            }
        };
        match mv {
            Move::Slide { target, over, before, after, .. } => {
                check("before", before, self.word(*target)?)?;
                self.slide(*target, *over)?;
                check("after", after, self.word(*target)?)
            }
            Move::Eliminate { target, letter, before, after } => {
                check("before", before, self.word(*target)?)?;
                self.eliminate(*target, *letter)?;
                check("after", after, self.word(*target)?)
            }
            Move::Cancel { one_handle, two_handle, word, .. } => {
                check("cancelling", word, self.word(*two_handle)?)?;
                self.cancel_pair(*one_handle, *two_handle).map(|_| ())
            }
        }
    }
}

/// Replays `moves` from `initial`.
pub fn replay(initial: &HandleComplex, moves: &[Move]) -> Result<HandleComplex> {
    let mut cx = initial.clone();
    for (index, mv) in moves.iter().enumerate() {
        cx.apply(mv).map_err(|e| match e {
            Error::Replay { reason, .. } => Error::Replay { index, reason },
            other => Error::Replay { index, reason: other.to_string() },
        })?;
    }
    Ok(cx)
}

/// Glues `X_1` to `X_2` turned upside down: the 0- and 1-handles of `X_2`
/// become its 4- and 3-handles.
pub fn assemble(x1: &HandleComplex, x2: &HandleComplex) -> Result<HandleCounts> {
    let live = x1.one_handles.len() + x2.one_handles.len();
    if live > 0 {
        return Err(Error::LiveOneHandles(live));
    }
    Ok(HandleCounts {
        h0: x1.zero_handles,
        h1: 0,
        h2: x1.two_handles.len() + x2.two_handles.len(),
        h3: x2.one_handles.len(),
        h4: x2.zero_handles,
    })
}

pub fn piece_name(p: Piece) -> &'static str {
    match p {
        Piece::X1 => "X1",
        Piece::X2 => "X2",
    }
}
