//! Gathering algorithm for robots with visibility range 2.
//!
//! Each robot picks a base node (the rightmost robot node it can see) and
//! walks toward it. The movement rules are a fixed, ordered guard chain
//! keyed on the base node's label. The chain is stored as data in
//! [`GUARD_TABLE`] so it can be printed and audited line by line; the line
//! numbers refer to the 33-line pseudocode listing the table transcribes.

use std::fmt::{self, Write as _};

use crate::engine::{Action, Decide, View, VisibilityRange};
use crate::grid::{Direction, Label, RANGE1_LABELS, RANGE2_RING_LABELS};

pub const ALGORITHM_ID: &str = "gather2-v1";

macro_rules! l {
    ($x:expr, $y:expr) => {
        Label::lit($x, $y)
    };
}

/// A conjunction of occupancy requirements on the view.
#[derive(Debug)]
pub struct Term {
    pub occupied: &'static [Label],
    pub empty: &'static [Label],
}

impl Term {
    pub fn holds(&self, v: &View) -> bool {
        self.occupied.iter().all(|&l| v.occupied(l)) && self.empty.iter().all(|&l| v.is_empty_at(l))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn set(f: &mut fmt::Formatter<'_>, name: &str, ls: &[Label]) -> fmt::Result {
            write!(f, "{name}{{")?;
            for (i, l) in ls.iter().enumerate() {
                if i > 0 {
                    f.write_char(',')?;
                }
                write!(f, "{l}")?;
            }
            f.write_char('}')
        }
        if !self.occupied.is_empty() {
            set(f, "occupied", self.occupied)?;
        }
        if !self.empty.is_empty() {
            if !self.occupied.is_empty() {
                f.write_char(' ')?;
            }
            set(f, "empty", self.empty)?;
        }
        Ok(())
    }
}

/// One action line of the listing: fires when any of its terms holds.
#[derive(Debug)]
pub struct Guard {
    pub line: u8,
    pub action: Action,
    pub any_of: &'static [Term],
    /// Transcription remark, printed by the guard dump.
    pub note: Option<&'static str>,
}

impl Guard {
    pub fn fires(&self, v: &View) -> bool {
        self.any_of.iter().any(|t| t.holds(v))
    }
}

/// Which robots enter a branch.
#[derive(Debug)]
pub struct Selector {
    /// Base-node labels that select the branch.
    pub bases: &'static [Label],
    /// Also selected when no base node is determined.
    pub undetermined: bool,
    /// Alternative occupancy condition, or'ed with the base test.
    pub or_term: Option<Term>,
}

#[derive(Debug)]
pub struct Branch {
    pub line: u8,
    pub select: Selector,
    pub guards: &'static [Guard],
    pub note: Option<&'static str>,
}

impl Branch {
    fn selects(&self, v: &View, base: BaseNode) -> bool {
        let by_base = match base.label() {
            Some(b) => self.select.bases.contains(&b),
            None => self.select.undetermined,
        };
        by_base || self.select.or_term.as_ref().is_some_and(|t| t.holds(v))
    }
}

const E: Action = Action::Move(Direction::E);
const NE: Action = Action::Move(Direction::NE);
const NW: Action = Action::Move(Direction::NW);
const SW: Action = Action::Move(Direction::SW);
const SE: Action = Action::Move(Direction::SE);

/// The guard chain, in listing order.
pub static GUARD_TABLE: &[Branch] = &[
    // Base node (2,0) but empty: (1,1),(1,-1) are the rightmost robot nodes.
    Branch {
        line: 1,
        select: Selector {
            bases: &[],
            undetermined: false,
            or_term: Some(Term {
                occupied: &[l!(1, 1), l!(1, -1)],
                empty: &[l!(2, 0), l!(4, 0), l!(3, 1), l!(3, -1), l!(2, 2), l!(2, -2)],
            }),
        },
        guards: &[Guard {
            line: 3,
            action: E,
            any_of: &[
                Term { occupied: &[], empty: &[l!(-2, 0)] },
                Term { occupied: &[l!(-2, 0), l!(-1, 1)], empty: &[] },
                Term { occupied: &[l!(-2, 0), l!(-1, -1)], empty: &[] },
            ],
            note: None,
        }],
        note: Some("\"other robot nodes have x at most 0\" expanded to the five labels with x >= 2 other than (2,0)"),
    },
    Branch {
        line: 5,
        select: Selector {
            bases: &[l!(4, 0)],
            undetermined: false,
            or_term: Some(Term {
                occupied: &[l!(3, 1), l!(3, -1)],
                empty: &[l!(4, 0)],
            }),
        },
        guards: &[
            Guard {
                line: 7,
                action: E,
                any_of: &[
                    Term { occupied: &[], empty: &[l!(2, 0), l!(-1, 1), l!(-2, 0), l!(-1, -1)] },
                    Term { occupied: &[l!(1, -1)], empty: &[l!(2, 0), l!(-2, 0), l!(-1, 1)] },
                    Term { occupied: &[l!(1, 1)], empty: &[l!(2, 0), l!(-2, 0), l!(-1, -1)] },
                    Term { occupied: &[l!(1, -1), l!(-1, -1), l!(-2, 0)], empty: &[l!(2, 0), l!(-1, 1)] },
                    Term { occupied: &[l!(-2, 0), l!(-1, 1), l!(1, 1)], empty: &[l!(2, 0), l!(-1, -1)] },
                ],
                note: None,
            },
            Guard {
                line: 8,
                action: NE,
                any_of: &[
                    Term {
                        occupied: &[l!(2, 0)],
                        empty: &[l!(1, 1), l!(-2, 0), l!(-1, 1), l!(-1, -1), l!(2, 2)],
                    },
                    Term {
                        occupied: &[l!(2, 0), l!(2, 2), l!(3, 1), l!(3, -1), l!(-2, -2)],
                        empty: &[l!(1, 1), l!(-2, 0), l!(-1, 1)],
                    },
                ],
                note: Some("action \"move to the northeast robot node (1,1)\" read as the empty NE neighbor (1,1)"),
            },
            Guard {
                line: 9,
                action: SE,
                any_of: &[
                    Term {
                        occupied: &[l!(2, 0), l!(1, 1), l!(1, 1)],
                        empty: &[l!(1, -1), l!(-1, -1), l!(-2, 0), l!(-1, 1), l!(2, -2)],
                    },
                    Term {
                        occupied: &[l!(2, 0), l!(1, 1), l!(2, 2)],
                        empty: &[l!(1, -1), l!(-1, -1), l!(-2, 0), l!(-1, 1), l!(2, -2)],
                    },
                ],
                note: Some("\"nodes (1,-1) is\" normalized; trailing disjunct kept as written, (1,1) repeats in the first term"),
            },
        ],
        note: None,
    },
    Branch {
        line: 11,
        select: Selector { bases: &[l!(3, -1)], undetermined: false, or_term: None },
        guards: &[
            Guard {
                line: 13,
                action: SE,
                any_of: &[
                    Term { occupied: &[], empty: &[l!(1, -1), l!(-1, -1), l!(0, -2), l!(-2, 0), l!(-1, 1)] },
                    Term {
                        occupied: &[l!(-1, 1), l!(1, 1)],
                        empty: &[l!(1, -1), l!(-1, -1), l!(0, -2), l!(0, 2)],
                    },
                ],
                note: None,
            },
            Guard {
                line: 14,
                action: E,
                any_of: &[
                    Term { occupied: &[l!(1, -1)], empty: &[l!(2, 0), l!(-1, 1), l!(-2, 0)] },
                    Term { occupied: &[l!(1, -1), l!(-2, 0), l!(-1, -1)], empty: &[l!(2, 0), l!(-1, 1)] },
                ],
                note: None,
            },
            Guard {
                line: 15,
                action: SW,
                any_of: &[Term {
                    occupied: &[l!(1, -1), l!(2, 0), l!(1, 1)],
                    empty: &[l!(-1, -1), l!(-2, 0), l!(-2, -2)],
                }],
                note: Some("\"are empty node\" normalized"),
            },
        ],
        note: None,
    },
    Branch {
        line: 17,
        select: Selector { bases: &[l!(2, -2)], undetermined: false, or_term: None },
        guards: &[Guard {
            line: 19,
            action: SW,
            any_of: &[Term { occupied: &[], empty: &[l!(-1, -1), l!(-2, 0), l!(-3, -1), l!(-1, 1)] }],
            note: None,
        }],
        note: None,
    },
    Branch {
        line: 21,
        select: Selector { bases: &[l!(3, 1)], undetermined: false, or_term: None },
        guards: &[
            Guard {
                line: 23,
                action: NE,
                any_of: &[
                    Term { occupied: &[], empty: &[l!(1, 1), l!(-1, 1), l!(-2, 0), l!(-1, -1)] },
                    Term {
                        occupied: &[l!(1, -1), l!(-1, -1)],
                        empty: &[l!(1, 1), l!(0, -2), l!(-1, 1)],
                    },
                ],
                note: Some("\"are empty node\" normalized"),
            },
            Guard {
                line: 24,
                action: E,
                any_of: &[
                    Term { occupied: &[l!(1, 1)], empty: &[l!(2, 0), l!(-2, 0), l!(-1, -1)] },
                    Term { occupied: &[l!(1, 1), l!(-2, 0), l!(-1, 1)], empty: &[l!(2, 0), l!(-1, -1)] },
                ],
                note: None,
            },
            Guard {
                line: 25,
                action: NW,
                any_of: &[Term {
                    occupied: &[l!(1, 1), l!(2, 0), l!(1, -1)],
                    empty: &[l!(-1, 1), l!(-2, 0), l!(-2, 2)],
                }],
                note: Some("contradictory \"(1,-1) is an empty node\" resolved to (-1,1), the NW move target; \"nodes (-2,0), and\" normalized"),
            },
        ],
        note: None,
    },
    Branch {
        line: 27,
        select: Selector { bases: &[l!(2, 2)], undetermined: false, or_term: None },
        guards: &[Guard {
            line: 29,
            action: NW,
            any_of: &[Term { occupied: &[], empty: &[l!(-1, 1), l!(-3, 1), l!(-2, 0), l!(-1, -1)] }],
            note: None,
        }],
        note: Some("commented-out SE alternative in the listing is not part of the algorithm"),
    },
    Branch {
        line: 31,
        select: Selector {
            bases: &[l!(0, 0), l!(2, 0), l!(1, -1), l!(1, 1)],
            undetermined: true,
            or_term: None,
        },
        guards: &[Guard { line: 33, action: Action::Stay, any_of: &[Term { occupied: &[], empty: &[] }], note: None }],
        note: None,
    },
];

/// The base node as seen from the observing robot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseNode {
    /// A robot node with the unique largest x-element (possibly self).
    Robot(Label),
    /// An empty node adopted as base: (4,0) between robots at (3,1) and
    /// (3,-1), or (2,0) when (1,1) and (1,-1) are the rightmost robots.
    Vacant(Label),
    /// Several robot nodes tie for the largest x-element.
    Undetermined,
}

impl BaseNode {
    pub fn label(self) -> Option<Label> {
        match self {
            BaseNode::Robot(l) | BaseNode::Vacant(l) => Some(l),
            BaseNode::Undetermined => None,
        }
    }
}

/// Determines the base node of a range-2 view.
pub fn base_label(v: &View) -> BaseNode {
    assert_eq!(v.range(), VisibilityRange::Two, "base node needs a range-2 view");
    let (n40, n31, n3m1) = (l!(4, 0), l!(3, 1), l!(3, -1));
    if v.is_empty_at(n40) && v.occupied(n31) && v.occupied(n3m1) {
        return BaseNode::Vacant(n40);
    }
    let max_x = v.occupied_labels().map(|l| l.x).max().unwrap_or(0).max(0);
    let mut top = v.occupied_labels().chain([Label::SELF]).filter(|l| l.x == max_x);
    let first = top.next().expect("self or an occupied label attains the maximum");
    match top.next() {
        None => BaseNode::Robot(first),
        Some(_) if max_x == 1 && v.is_empty_at(l!(2, 0)) => {
            // Exactly (1,1) and (1,-1) tie; they are the only labels with x = 1.
            BaseNode::Vacant(l!(2, 0))
        }
        Some(_) => BaseNode::Undetermined,
    }
}

/// The branch that handles `v`, if any.
pub fn select_branch(v: &View) -> Option<&'static Branch> {
    let base = base_label(v);
    GUARD_TABLE.iter().find(|b| b.selects(v, base))
}

/// The guard that fires for `v` together with its action.
pub fn firing_guard(v: &View) -> Option<&'static Guard> {
    select_branch(v)?.guards.iter().find(|g| g.fires(v))
}

pub fn decide_move(v: &View) -> Action {
    firing_guard(v).map_or(Action::Stay, |g| g.action)
}

/// Line numbers of every guard in the selected branch that fires for `v`.
/// More than one entry means the chain order decided the outcome.
pub fn audit_guards(v: &View) -> Vec<u8> {
    select_branch(v)
        .map(|b| b.guards.iter().filter(|g| g.fires(v)).map(|g| g.line).collect())
        .unwrap_or_default()
}

/// Human-readable listing of the compiled guard chain.
pub fn dump_guards() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {ALGORITHM_ID} guard table");
    for (i, branch) in GUARD_TABLE.iter().enumerate() {
        let keyword = if i == 0 { "IF" } else { "ELSIF" };
        let mut alts = Vec::new();
        if !branch.select.bases.is_empty() {
            let labels: Vec<String> = branch.select.bases.iter().map(Label::to_string).collect();
            alts.push(format!("base in {{{}}}", labels.join(",")));
        }
        if branch.select.undetermined {
            alts.push("no base".to_string());
        }
        if let Some(t) = &branch.select.or_term {
            alts.push(t.to_string());
        }
        let _ = writeln!(out, "L{:02} {keyword} {}", branch.line, alts.join(" | "));
        if let Some(n) = branch.note {
            let _ = writeln!(out, "    # note: {n}");
        }
        for g in branch.guards {
            for (k, t) in g.any_of.iter().enumerate() {
                let text = if t.occupied.is_empty() && t.empty.is_empty() {
                    "always".to_string()
                } else {
                    t.to_string()
                };
                if k == 0 {
                    let _ = writeln!(out, "L{:02}   {:<4} <- {text}", g.line, g.action.name());
                } else {
                    let _ = writeln!(out, "            |  {text}");
                }
            }
            if let Some(n) = g.note {
                let _ = writeln!(out, "    # note: {n}");
            }
        }
    }
    let _ = writeln!(out, "DEFAULT stay");
    out
}

/// Every label a guard or selector of the table mentions.
pub fn referenced_labels() -> Vec<Label> {
    let mut ls = Vec::new();
    let mut term = |t: &Term| ls.extend(t.occupied.iter().chain(t.empty).copied());
    for b in GUARD_TABLE {
        if let Some(t) = &b.select.or_term {
            term(t);
        }
        for g in b.guards {
            g.any_of.iter().for_each(&mut term);
        }
    }
    for b in GUARD_TABLE {
        ls.extend(b.select.bases.iter().copied());
    }
    ls.sort();
    ls.dedup();
    ls
}

/// The range-2 gathering algorithm as a [`Decide`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Gather2;

impl Decide for Gather2 {
    fn range(&self) -> VisibilityRange {
        VisibilityRange::Two
    }
    fn decide(&self, view: &View) -> Action {
        decide_move(view)
    }
    fn id(&self) -> &str {
        ALGORITHM_ID
    }
}

/// All 2^18 range-2 views.
pub fn all_views() -> impl Iterator<Item = View> {
    let labels: Vec<Label> = RANGE1_LABELS.iter().chain(RANGE2_RING_LABELS.iter()).copied().collect();
    (0u32..1 << 18).map(move |bits| {
        let occ: Vec<Label> = (0..18).filter(|i| bits & (1 << i) != 0).map(|i| labels[i]).collect();
        View::from_occupied(VisibilityRange::Two, &occ).expect("range-2 labels")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Configuration;
    use crate::engine::{self, StepOutcome};
    use crate::grid::TriCoord;

    fn view(occ: &[(i32, i32)]) -> View {
        let ls: Vec<Label> = occ.iter().map(|&(x, y)| Label::lit(x, y)).collect();
        View::from_occupied(VisibilityRange::Two, &ls).unwrap()
    }

    #[test]
    fn base_examples() {
        assert_eq!(base_label(&view(&[(3, 1), (3, -1)])), BaseNode::Vacant(l!(4, 0)));
        assert_eq!(base_label(&view(&[(2, 2), (2, -2)])), BaseNode::Undetermined);
        assert_eq!(base_label(&view(&[(2, 0)])), BaseNode::Robot(l!(2, 0)));
        assert_eq!(base_label(&view(&[])), BaseNode::Robot(Label::SELF));
        assert_eq!(base_label(&view(&[(0, 2)])), BaseNode::Undetermined);
        assert_eq!(base_label(&view(&[(1, 1), (1, -1)])), BaseNode::Vacant(l!(2, 0)));
        assert_eq!(
            base_label(&view(&[(1, 1), (1, -1), (-3, 1)])),
            BaseNode::Vacant(l!(2, 0))
        );
    }

    #[test]
    fn decide_examples() {
        assert_eq!(decide_move(&view(&[(1, 1), (1, -1)])), E);
        let center: Vec<_> = RANGE1_LABELS.iter().map(|l| (l.x, l.y)).collect();
        assert_eq!(decide_move(&view(&center)), Action::Stay);
        let west_rim = [(2, 0), (1, 1), (1, -1), (4, 0), (3, 1), (3, -1)];
        assert_eq!(decide_move(&view(&west_rim)), Action::Stay);
        // Standstill avoidance.
        let v = view(&[(3, 1), (1, 1), (2, 0), (1, -1)]);
        assert_eq!(base_label(&v), BaseNode::Robot(l!(3, 1)));
        assert_eq!(decide_move(&v), NW);
        assert_eq!(firing_guard(&v).unwrap().line, 25);
    }

    #[test]
    fn gathered_configuration_is_quiescent() {
        let hex = Configuration::hexagon(TriCoord::new(4, -2));
        let acts = engine::decisions(&hex, &Gather2);
        assert!(acts.iter().all(|a| a.is_stay()));
        assert_eq!(engine::step(&hex, &Gather2), StepOutcome::Next(hex));
    }

    #[test]
    fn table_labels_are_well_formed_range2_labels() {
        for l in referenced_labels() {
            assert!(Label::new(l.x, l.y).is_ok(), "{l}");
            assert!(l.radius() <= 2, "{l}");
        }
    }

    #[test]
    fn exhaustive_view_properties() {
        for v in all_views() {
            let act = decide_move(&v);
            if let Action::Move(d) = act {
                assert!(v.is_empty_at(d.label()), "move onto occupied label in {v:?}");
            }
            assert!(audit_guards(&v).len() <= 1, "overlapping guards for {v:?}");
        }
    }

    #[test]
    fn every_view_selects_a_branch() {
        for v in all_views() {
            assert!(select_branch(&v).is_some(), "no branch for {v:?}");
        }
    }

    #[test]
    fn table_line_numbers_are_increasing() {
        let mut lines = Vec::new();
        for b in GUARD_TABLE {
            lines.push(b.line);
            lines.extend(b.guards.iter().map(|g| g.line));
        }
        assert!(lines.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(lines.last(), Some(&33));
    }
}
