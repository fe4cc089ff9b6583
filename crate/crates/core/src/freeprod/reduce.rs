use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// All three words start with the same letter; strip it.
    R1,
    /// Exactly two words start with `x`; multiply the triple by `x⁻¹`.
    R2,
    /// Exactly one word starts with `x` and is longer; cut it back to `x`.
    R3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    /// The letter `x`, as a one-letter word.
    pub letter: Element,
    /// Which word R3 truncated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    pub before: [Element; 3],
    pub after: [Element; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReductionTrace {
    pub steps: Vec<Step>,
    /// Entries are the identity or one-letter words.
    pub minimal: [Element; 3],
}

/// A reduction that can be applied to a triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub rule: Rule,
    pub letter: (Side, Element),
    pub position: Option<usize>,
}

fn letters(w: &Element) -> &[(Side, Element)] {
    w.as_word().expect("checked word")
}

fn length_sum(t: &[Element; 3]) -> usize {
    t.iter().map(|w| letters(w).len()).sum()
}

/// Every reduction applicable to `t`, in the order the default strategy
/// prefers them.
pub fn applicable_moves(t: &[Element; 3]) -> Vec<Move> {
    let heads: Vec<Option<&(Side, Element)>> = t.iter().map(|w| letters(w).first()).collect();
    let mut moves = Vec::new();
    if let (Some(a), Some(b), Some(c)) = (heads[0], heads[1], heads[2]) {
        if a == b && b == c {
            moves.push(Move {
                rule: Rule::R1,
                letter: a.clone(),
                position: None,
            });
            return moves;
        }
    }
    let mut shared: Vec<&(Side, Element)> = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            if let (Some(x), Some(y)) = (heads[i], heads[j]) {
                if x == y && !shared.contains(&x) {
                    shared.push(x);
                }
            }
        }
    }
    shared.sort();
    for x in shared {
        moves.push(Move {
            rule: Rule::R2,
            letter: x.clone(),
            position: None,
        });
    }
    for i in 0..3 {
        let Some(x) = heads[i] else { continue };
        let unique = (0..3).filter(|&j| heads[j] == Some(x)).count() == 1;
        if unique && letters(&t[i]).len() >= 2 {
            moves.push(Move {
                rule: Rule::R3,
                letter: x.clone(),
                position: Some(i),
            });
        }
    }
    moves
}

/// Applies one move.
pub fn apply_move(group: &GroupDescriptor, t: &[Element; 3], mv: &Move) -> Result<[Element; 3]> {
    let GroupDescriptor::FreeProduct { left, right } = group else {
        return Err(Error::Unsupported(format!("triple reduction in {group}")));
    };
    Ok(match mv.rule {
        Rule::R1 => t.clone().map(|w| Element::word(letters(&w)[1..].to_vec())),
        Rule::R2 => {
            let (side, x) = &mv.letter;
            let factor = if *side == Side::Left { left } else { right };
            let xinv = Element::word(vec![(*side, factor.inverse(x)?)]);
            [
                group.multiply(&xinv, &t[0])?,
                group.multiply(&xinv, &t[1])?,
                group.multiply(&xinv, &t[2])?,
            ]
        }
        Rule::R3 => {
            let i = mv.position.expect("R3 names a word");
            let mut out = t.clone();
            out[i] = Element::word(vec![mv.letter.clone()]);
            out
        }
    })
}

/// Reduces `t` to its minimal triple, choosing moves with `pick` (given
/// the nonempty list of applicable moves, returns an index into it).
pub fn reduce_triple_with(
    group: &GroupDescriptor,
    t: &[Element; 3],
    mut pick: impl FnMut(&[Move]) -> usize,
) -> Result<TripleReductionTrace> {
    for w in t {
        group.check(w)?;
        if w.as_word().is_none() {
            return Err(Error::Mismatch {
                element: w.to_string(),
                group: group.to_string(),
            });
        }
    }
    let mut cur = t.clone();
    let mut steps = Vec::new();
    loop {
        let moves = applicable_moves(&cur);
        if moves.is_empty() {
            return Ok(TripleReductionTrace {
                steps,
                minimal: cur,
            });
        }
        let mv = &moves[pick(&moves)];
        let next = apply_move(group, &cur, mv)?;
        debug_assert!(length_sum(&next) < length_sum(&cur));
        steps.push(Step {
            rule: mv.rule,
            letter: Element::word(vec![mv.letter.clone()]),
            position: mv.position,
            before: cur,
            after: next.clone(),
        });
        cur = next;
    }
}

/// Reduces with the fixed strategy: R1 if possible, else R2 on the least
/// shared letter, else R3 on the first eligible word.
pub fn reduce_triple(group: &GroupDescriptor, t: &[Element; 3]) -> Result<TripleReductionTrace> {
    reduce_triple_with(group, t, |_| 0)
}
