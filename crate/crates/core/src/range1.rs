//! Visibility-range-1 algorithms as rule tables, and the machinery to
//! replay them on small configurations and search for tables that survive
//! a given configuration set.
//!
//! A range-1 view is a 6-bit mask over the neighbor labels in direction
//! order E, NE, NW, W, SW, SE (bit 0 = E). A [`RuleTable`] assigns an
//! action to each of the 64 masks; the empty mask always maps to stay.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU8, Ordering};

use crate::config::Configuration;
use crate::engine::{self, Action, Decide, Outcome, Trace, View, VisibilityRange};
use crate::error::Error;
use crate::grid::{Direction, TriCoord};

pub const TABLE_ALGORITHM_ID: &str = "range1-table";
const NO_VIEW: u8 = u8::MAX;

/// Mask with exactly the given neighbor directions occupied.
pub fn mask_of(dirs: &[Direction]) -> u8 {
    dirs.iter().fold(0, |m, d| m | 1 << d.index())
}

pub fn mask_directions(mask: u8) -> Vec<Direction> {
    Direction::ALL
        .into_iter()
        .filter(|d| mask & (1 << d.index()) != 0)
        .collect()
}

/// Structural constraints on range-1 tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    /// A robot whose only neighbors are an opposite pair stays.
    pub opposite_pair_stays: bool,
    /// A robot with a single neighbor in direction d stays or moves to one
    /// of the two directions flanking d.
    pub single_neighbor_flanks: bool,
    /// A robot whose only neighbors are d and d rotated by 120° stays or
    /// moves to the direction between them.
    pub split_pair_bisects: bool,
}

impl Constraints {
    pub const NONE: Constraints = Constraints {
        opposite_pair_stays: false,
        single_neighbor_flanks: false,
        split_pair_bisects: false,
    };

    pub const ALL: Constraints = Constraints {
        opposite_pair_stays: true,
        single_neighbor_flanks: true,
        split_pair_bisects: true,
    };

    /// Actions permitted for `mask`, in [`Action::ALL`] order.
    pub fn allowed(&self, mask: u8) -> Vec<Action> {
        if mask == 0 {
            return vec![Action::Stay];
        }
        let dirs = mask_directions(mask);
        let restrict: Option<Vec<Direction>> = match dirs.as_slice() {
            [d] if self.single_neighbor_flanks => Some(vec![d.rotate(1), d.rotate(5)]),
            &[d1, d2] if d2 == d1.opposite() && self.opposite_pair_stays => Some(vec![]),
            &[d1, d2] if self.split_pair_bisects && (d2 == d1.rotate(2) || d1 == d2.rotate(2)) => {
                let low = if d2 == d1.rotate(2) { d1 } else { d2 };
                Some(vec![low.rotate(1)])
            }
            _ => None,
        };
        Action::ALL
            .into_iter()
            .filter(|a| match (a, &restrict) {
                (Action::Stay, _) | (_, None) => true,
                (Action::Move(d), Some(ok)) => ok.contains(d),
            })
            .collect()
    }

    pub fn permits(&self, mask: u8, action: Action) -> bool {
        self.allowed(mask).contains(&action)
    }
}

/// A total map from range-1 views to actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTable {
    actions: [Action; 64],
}

impl RuleTable {
    pub fn new(actions: [Action; 64]) -> Result<Self, Error> {
        if actions[0] != Action::Stay {
            return Err(Error::RuleTable {
                line: 1,
                msg: "the empty view must map to stay".into(),
            });
        }
        Ok(RuleTable { actions })
    }

    pub fn all_stay() -> Self {
        RuleTable {
            actions: [Action::Stay; 64],
        }
    }

    /// All-stay except for the listed `(mask, action)` rules.
    pub fn with_rules(rules: &[(u8, Action)]) -> Result<Self, Error> {
        let mut actions = [Action::Stay; 64];
        for &(mask, a) in rules {
            actions[usize::from(mask & 0x3f)] = a;
        }
        RuleTable::new(actions)
    }

    pub fn action(&self, mask: u8) -> Action {
        self.actions[usize::from(mask & 0x3f)]
    }

    pub fn set(&mut self, mask: u8, action: Action) -> Result<(), Error> {
        if mask == 0 && action != Action::Stay {
            return Err(Error::InvalidArgument("the empty view must map to stay".into()));
        }
        self.actions[usize::from(mask & 0x3f)] = action;
        Ok(())
    }

    pub fn satisfies(&self, c: &Constraints) -> bool {
        (0u8..64).all(|m| c.permits(m, self.action(m)))
    }

    /// Sixty-four `mask action` lines, mask in decimal, ascending.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in 0u8..64 {
            let _ = writeln!(out, "{m} {}", self.action(m).name());
        }
        out
    }

    /// Parses the text format. Blank lines and `#` comments are ignored;
    /// every mask 0..=63 must appear exactly once.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut actions: [Option<Action>; 64] = [None; 64];
        let err = |line: usize, msg: String| Error::RuleTable { line, msg };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut parts = body.split_whitespace();
            let (Some(m), Some(a), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(line, format!("expected `mask action`, got `{body}`")));
            };
            let mask: u8 = m
                .parse()
                .ok()
                .filter(|&m: &u8| m < 64)
                .ok_or_else(|| err(line, format!("mask `{m}` is not in 0..=63")))?;
            let action = Action::from_name(a).ok_or_else(|| err(line, format!("unknown action `{a}`")))?;
            if actions[usize::from(mask)].replace(action).is_some() {
                return Err(err(line, format!("mask {mask} listed twice")));
            }
        }
        let missing: Vec<String> = (0..64)
            .filter(|&m| actions[m].is_none())
            .map(|m| m.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(err(
                text.lines().count(),
                format!("table ends with masks missing: {}", missing.join(",")),
            ));
        }
        RuleTable::new(actions.map(|a| a.expect("all present")))
    }
}

/// A rule table used as a range-1 decision function.
#[derive(Clone, Copy, Debug)]
pub struct TableDecision<'a>(&'a RuleTable);

pub fn table_to_decision(t: &RuleTable) -> TableDecision<'_> {
    TableDecision(t)
}

impl Decide for TableDecision<'_> {
    fn range(&self) -> VisibilityRange {
        VisibilityRange::One
    }
    fn decide(&self, view: &View) -> Action {
        self.0.action(view.range1_mask())
    }
    fn id(&self) -> &str {
        TABLE_ALGORITHM_ID
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub trace: Trace,
}

/// Replays `t` from `cfg` under range-1 visibility.
pub fn check_table(t: &RuleTable, cfg: &Configuration, max_steps: usize) -> Result<Verdict, Error> {
    let trace = engine::run(cfg, &table_to_decision(t), max_steps)?;
    Ok(Verdict {
        outcome: trace.outcome.clone(),
        trace,
    })
}

/// Whether a configuration in the built-in library is stated outright or
/// reconstructed from the surrounding argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Stated,
    Reconstructed,
}

#[derive(Clone, Debug)]
pub struct LibraryConfig {
    pub name: &'static str,
    pub provenance: Provenance,
    pub note: &'static str,
    pub config: Configuration,
}

fn cfg(pairs: &[(i32, i32)]) -> Configuration {
    Configuration::new(pairs.iter().map(|&p| TriCoord::from(p))).expect("library configs are distinct")
}

/// Configurations from the range-1 impossibility argument whose geometry is
/// fully determined by the text.
pub fn library() -> Vec<LibraryConfig> {
    vec![
        LibraryConfig {
            name: "fig5a-diagonal",
            provenance: Provenance::Stated,
            note: "seven robots on a NW-SE line; endpoints see one neighbor (SE or NW), interior robots see NW and SE",
            config: Configuration::line(TriCoord::ORIGIN, Direction::SE, 7),
        },
        LibraryConfig {
            name: "fig5b-diagonal",
            provenance: Provenance::Reconstructed,
            note: "seven robots on a SW-NE line; endpoints see one neighbor (NE or SW), interior robots see SW and NE",
            config: Configuration::line(TriCoord::ORIGIN, Direction::NE, 7),
        },
        LibraryConfig {
            name: "prop1a-geometry",
            provenance: Provenance::Reconstructed,
            note: "SE-view robot moving SW and NE-view robot moving NW share target (0,-1)",
            config: cfg(&[(0, 0), (1, -1), (1, -2)]),
        },
        LibraryConfig {
            name: "prop1b-geometry",
            provenance: Provenance::Reconstructed,
            note: "SE-view robot moving SW and NW+SW-view robot moving W share target (-1,0)",
            config: cfg(&[(0, 0), (-1, 1), (0, -1)]),
        },
        LibraryConfig {
            name: "prop1c-geometry",
            provenance: Provenance::Reconstructed,
            note: "SE-view robot moving SW and E-view robot moving NE share target (0,1)",
            config: cfg(&[(0, 0), (1, 0), (1, 1), (0, 2)]),
        },
        LibraryConfig {
            name: "prop1d-geometry",
            provenance: Provenance::Reconstructed,
            note: "SE-view robot moving SW and NW+E-view robot moving NE share target (0,1)",
            config: cfg(&[(0, 0), (-1, 1), (1, 0), (1, 1), (0, 2)]),
        },
    ]
}

pub fn library_config(name: &str) -> Option<LibraryConfig> {
    library().into_iter().find(|c| c.name == name)
}

/// A table with some views left open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTable {
    actions: [Option<Action>; 64],
}

impl Default for PartialTable {
    fn default() -> Self {
        let mut actions = [None; 64];
        actions[0] = Some(Action::Stay);
        PartialTable { actions }
    }
}

impl PartialTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, mask: u8, action: Action) -> Self {
        self.actions[usize::from(mask & 0x3f)] = Some(action);
        self
    }

    pub fn get(&self, mask: u8) -> Option<Action> {
        self.actions[usize::from(mask & 0x3f)]
    }

    pub fn free_views(&self) -> usize {
        self.actions.iter().filter(|a| a.is_none()).count()
    }

    pub fn from_table(t: &RuleTable) -> Self {
        PartialTable {
            actions: t.actions.map(Some),
        }
    }

    /// Fixed `(mask, action)` pairs, ascending by mask.
    pub fn assigned(&self) -> Vec<(u8, Action)> {
        (0u8..64).filter_map(|m| self.get(m).map(|a| (m, a))).collect()
    }
}

/// Decision function over a partial table; records the first open view it
/// is asked about and answers stay from then on.
struct PartialDecision<'a> {
    table: &'a PartialTable,
    missing: AtomicU8,
}

impl Decide for PartialDecision<'_> {
    fn range(&self) -> VisibilityRange {
        VisibilityRange::One
    }
    fn decide(&self, view: &View) -> Action {
        let mask = view.range1_mask();
        self.table.get(mask).unwrap_or_else(|| {
            let _ = self
                .missing
                .compare_exchange(NO_VIEW, mask, Ordering::Relaxed, Ordering::Relaxed);
            Action::Stay
        })
    }
    fn id(&self) -> &str {
        TABLE_ALGORITHM_ID
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    /// Every completion fails on `configs[config_index]`.
    Refuted { config_index: usize, outcome: Outcome },
    /// Every completion gathers from every configuration in the set. This
    /// is a statement about the set only.
    NotRefuted,
}

/// A set of completions sharing the fixed entries of `table`; the remaining
/// open views never influence any run in the configuration set.
#[derive(Clone, Debug)]
pub struct ClassResult {
    pub table: PartialTable,
    pub verdict: ClassVerdict,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub classes: Vec<ClassResult>,
    /// False when the budget ran out before the search tree was exhausted.
    pub complete: bool,
}

impl SearchReport {
    pub fn refuted(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| matches!(c.verdict, ClassVerdict::Refuted { .. }))
            .count()
    }

    pub fn surviving(&self) -> usize {
        self.classes.len() - self.refuted()
    }
}

enum Evaluation {
    Verdict(ClassVerdict),
    Branch(u8),
}

fn evaluate(table: &PartialTable, configs: &[Configuration], max_steps: usize) -> Result<Evaluation, Error> {
    for (i, c) in configs.iter().enumerate() {
        let f = PartialDecision {
            table,
            missing: AtomicU8::new(NO_VIEW),
        };
        let trace = engine::run(c, &f, max_steps)?;
        let missing = f.missing.load(Ordering::Relaxed);
        if missing != NO_VIEW {
            return Ok(Evaluation::Branch(missing));
        }
        if !trace.outcome.is_gathered() {
            return Ok(Evaluation::Verdict(ClassVerdict::Refuted {
                config_index: i,
                outcome: trace.outcome,
            }));
        }
    }
    Ok(Evaluation::Verdict(ClassVerdict::NotRefuted))
}

/// Depth-first search over completions of `fixed` that respect
/// `constraints`.
///
/// Views are only assigned when a run actually consults them, so each
/// reported class stands for every completion that agrees on its fixed
/// entries. Children are tried in [`Action::ALL`] order. `budget` caps the
/// number of classes evaluated.
pub fn search_tables(
    fixed: &PartialTable,
    constraints: Constraints,
    configs: &[Configuration],
    max_steps: usize,
    budget: usize,
) -> Result<SearchReport, Error> {
    for (m, a) in fixed.assigned() {
        if !constraints.permits(m, a) {
            return Err(Error::InvalidArgument(format!(
                "fixed entry {m} -> {a} violates the constraints"
            )));
        }
    }
    for c in configs {
        if !c.is_connected() {
            return Err(Error::Disconnected);
        }
    }
    let mut classes = Vec::new();
    let mut stack = vec![fixed.clone()];
    let mut evaluated = 0;
    while let Some(table) = stack.pop() {
        if evaluated == budget {
            stack.push(table);
            break;
        }
        evaluated += 1;
        match evaluate(&table, configs, max_steps)? {
            Evaluation::Verdict(verdict) => classes.push(ClassResult { table, verdict }),
            Evaluation::Branch(mask) => {
                for a in constraints.allowed(mask).into_iter().rev() {
                    stack.push(table.clone().with(mask, a));
                }
            }
        }
    }
    Ok(SearchReport {
        classes,
        complete: stack.is_empty(),
    })
}
