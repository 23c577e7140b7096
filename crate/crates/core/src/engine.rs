//! Fully synchronous Look-Compute-Move execution.
//!
//! Every robot observes the same configuration, decides, and all moves are
//! applied at once. A step that would collide has no successor; the
//! collision is reported instead.

use std::collections::HashMap;
use std::fmt;

use crate::config::{CanonicalConfiguration, Configuration};
use crate::error::Error;
use crate::grid::{Direction, Label, TriCoord, RANGE1_LABELS, RANGE2_RING_LABELS};

/// Default step budget for a single run.
pub const DEFAULT_MAX_STEPS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VisibilityRange {
    One,
    Two,
}

impl VisibilityRange {
    pub fn as_u32(self) -> u32 {
        match self {
            VisibilityRange::One => 1,
            VisibilityRange::Two => 2,
        }
    }

    pub fn from_u32(r: u32) -> Option<Self> {
        match r {
            1 => Some(VisibilityRange::One),
            2 => Some(VisibilityRange::Two),
            _ => None,
        }
    }

    /// Number of labels a view of this range covers (excluding self).
    pub fn label_count(self) -> usize {
        match self {
            VisibilityRange::One => 6,
            VisibilityRange::Two => 18,
        }
    }
}

/// Index of a label in the view bitmask: range-1 labels occupy bits 0..6 in
/// direction order, the distance-2 ring bits 6..18.
fn label_index(label: Label) -> Option<usize> {
    RANGE1_LABELS
        .iter()
        .chain(RANGE2_RING_LABELS.iter())
        .position(|&l| l == label)
}

fn label_at(index: usize) -> Label {
    if index < 6 {
        RANGE1_LABELS[index]
    } else {
        RANGE2_RING_LABELS[index - 6]
    }
}

/// Occupancy of the labels within a robot's visibility range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct View {
    range: VisibilityRange,
    bits: u32,
}

impl View {
    pub fn observe(cfg: &Configuration, robot: TriCoord, range: VisibilityRange) -> Result<View, Error> {
        if !cfg.contains(robot) {
            return Err(Error::NotARobot(robot.a, robot.b));
        }
        Ok(View::observe_unchecked(cfg, robot, range))
    }

    fn observe_unchecked(cfg: &Configuration, robot: TriCoord, range: VisibilityRange) -> View {
        let mut bits = 0;
        for i in 0..range.label_count() {
            if cfg.contains(robot.offset_by(label_at(i))) {
                bits |= 1 << i;
            }
        }
        View { range, bits }
    }

    /// Builds a view from the labels that are occupied; every other label in
    /// range is empty.
    pub fn from_occupied(range: VisibilityRange, occupied: &[Label]) -> Result<View, Error> {
        let mut bits = 0;
        for &l in occupied {
            match label_index(l) {
                Some(i) if i < range.label_count() => bits |= 1 << i,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "label {l} is outside visibility range {}",
                        range.as_u32()
                    )))
                }
            }
        }
        Ok(View { range, bits })
    }

    /// Range-1 view from a six-bit mask ordered E, NE, NW, W, SW, SE.
    pub fn from_range1_mask(mask: u8) -> View {
        View {
            range: VisibilityRange::One,
            bits: u32::from(mask & 0x3f),
        }
    }

    pub fn range(&self) -> VisibilityRange {
        self.range
    }

    /// Occupancy of `label`, or `None` when it lies outside the range.
    /// The observer's own node `(0,0)` is always occupied.
    pub fn get(&self, label: Label) -> Option<bool> {
        if label == Label::SELF {
            return Some(true);
        }
        let i = label_index(label).filter(|&i| i < self.range.label_count())?;
        Some(self.bits & (1 << i) != 0)
    }

    /// # Panics
    /// If `label` is outside the view's range.
    pub fn occupied(&self, label: Label) -> bool {
        self.get(label)
            .unwrap_or_else(|| panic!("label {label} outside visibility range {}", self.range.as_u32()))
    }

    pub fn is_empty_at(&self, label: Label) -> bool {
        !self.occupied(label)
    }

    /// The six range-1 bits, E..SE.
    pub fn range1_mask(&self) -> u8 {
        (self.bits & 0x3f) as u8
    }

    pub fn occupied_labels(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.range.label_count())
            .filter(|i| self.bits & (1 << i) != 0)
            .map(label_at)
    }

    /// The same neighborhood restricted to range 1.
    pub fn to_range1(&self) -> View {
        View::from_range1_mask(self.range1_mask())
    }
}

/// What a robot does in one cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Stay,
    Move(Direction),
}

impl Action {
    /// Stay first, then directions in index order.
    pub const ALL: [Action; 7] = [
        Action::Stay,
        Action::Move(Direction::E),
        Action::Move(Direction::NE),
        Action::Move(Direction::NW),
        Action::Move(Direction::W),
        Action::Move(Direction::SW),
        Action::Move(Direction::SE),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Action::Stay => "stay",
            Action::Move(d) => d.name(),
        }
    }

    pub fn from_name(s: &str) -> Option<Action> {
        if s.eq_ignore_ascii_case("stay") {
            Some(Action::Stay)
        } else {
            Direction::from_name(s).map(Action::Move)
        }
    }

    pub fn is_stay(self) -> bool {
        self == Action::Stay
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A deterministic, oblivious robot algorithm: the decision depends on the
/// view alone.
pub trait Decide: Sync {
    fn range(&self) -> VisibilityRange;
    fn decide(&self, view: &View) -> Action;
    /// Stable identifier recorded in trace headers.
    fn id(&self) -> &str;
}

impl<T: Decide + ?Sized> Decide for &T {
    fn range(&self) -> VisibilityRange {
        (**self).range()
    }
    fn decide(&self, view: &View) -> Action {
        (**self).decide(view)
    }
    fn id(&self) -> &str {
        (**self).id()
    }
}

/// The algorithm where nobody ever moves.
#[derive(Clone, Copy, Debug)]
pub struct AllStay(pub VisibilityRange);

impl Decide for AllStay {
    fn range(&self) -> VisibilityRange {
        self.0
    }
    fn decide(&self, _: &View) -> Action {
        Action::Stay
    }
    fn id(&self) -> &str {
        "all-stay"
    }
}

/// Adapts a closure into a [`Decide`].
pub struct FnDecision<F> {
    pub range: VisibilityRange,
    pub id: String,
    pub f: F,
}

impl<F: Fn(&View) -> Action + Sync> Decide for FnDecision<F> {
    fn range(&self) -> VisibilityRange {
        self.range
    }
    fn decide(&self, view: &View) -> Action {
        (self.f)(view)
    }
    fn id(&self) -> &str {
        &self.id
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CollisionKind {
    /// Two robots traverse one edge in opposite directions.
    Swap,
    /// A mover's target is occupied by a robot that stays.
    MoveOntoStationary,
    /// Several movers share one target.
    SameTarget,
}

impl CollisionKind {
    pub fn name(self) -> &'static str {
        match self {
            CollisionKind::Swap => "swap",
            CollisionKind::MoveOntoStationary => "move-onto-stationary",
            CollisionKind::SameTarget => "same-target",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::Swap, Self::MoveOntoStationary, Self::SameTarget]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionReport {
    pub kind: CollisionKind,
    /// The contested node (for a swap, the first robot's target).
    pub node: TriCoord,
    /// Robots involved and what they decided, in canonical robot order.
    pub participants: Vec<(TriCoord, Action)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Next(Configuration),
    Collision(CollisionReport),
}

/// Applies one decision per robot (in `cfg.robots()` order) simultaneously.
///
/// Collision modes are checked in the order swap, move onto a stationary
/// robot, shared target; the first hit in robot order is reported. A robot
/// entering a node that its occupant vacates in the same step is legal.
pub fn apply_moves(cfg: &Configuration, decisions: &[Action]) -> StepOutcome {
    assert_eq!(cfg.len(), decisions.len(), "one decision per robot");
    let robots = cfg.robots();
    let target = |i: usize| match decisions[i] {
        Action::Stay => robots[i],
        Action::Move(d) => robots[i].neighbor(d),
    };
    let occupant = |c: TriCoord| robots.binary_search(&c).ok();

    for (i, &act) in decisions.iter().enumerate() {
        let Action::Move(d) = act else { continue };
        if let Some(j) = occupant(target(i)) {
            if decisions[j] == Action::Move(d.opposite()) {
                return StepOutcome::Collision(CollisionReport {
                    kind: CollisionKind::Swap,
                    node: target(i),
                    participants: vec![(robots[i], act), (robots[j], decisions[j])],
                });
            }
        }
    }
    for (i, &act) in decisions.iter().enumerate() {
        if act.is_stay() {
            continue;
        }
        if let Some(j) = occupant(target(i)) {
            if decisions[j].is_stay() {
                let mut participants = vec![(robots[i], act), (robots[j], Action::Stay)];
                participants.sort();
                return StepOutcome::Collision(CollisionReport {
                    kind: CollisionKind::MoveOntoStationary,
                    node: target(i),
                    participants,
                });
            }
        }
    }
    let mut by_target: HashMap<TriCoord, Vec<usize>> = HashMap::new();
    for (i, act) in decisions.iter().enumerate() {
        if !act.is_stay() {
            by_target.entry(target(i)).or_default().push(i);
        }
    }
    for (i, act) in decisions.iter().enumerate() {
        if act.is_stay() {
            continue;
        }
        let movers = &by_target[&target(i)];
        if movers.len() > 1 {
            return StepOutcome::Collision(CollisionReport {
                kind: CollisionKind::SameTarget,
                node: target(i),
                participants: movers.iter().map(|&k| (robots[k], decisions[k])).collect(),
            });
        }
    }

    let mut next: Vec<TriCoord> = (0..robots.len()).map(target).collect();
    next.sort_unstable();
    StepOutcome::Next(Configuration::from_sorted_unchecked(next))
}

/// Every robot's decision, in canonical robot order.
pub fn decisions<D: Decide + ?Sized>(cfg: &Configuration, f: &D) -> Vec<Action> {
    cfg.robots()
        .iter()
        .map(|&r| f.decide(&View::observe_unchecked(cfg, r, f.range())))
        .collect()
}

/// One synchronous round.
pub fn step<D: Decide + ?Sized>(cfg: &Configuration, f: &D) -> StepOutcome {
    apply_moves(cfg, &decisions(cfg, f))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Decisions in the canonical order of the configuration before the step.
    pub decisions: Vec<Action>,
    pub next: Configuration,
    pub connected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Gathered and quiescent.
    Gathered,
    Collision(CollisionReport),
    Disconnected,
    /// The configuration after step `start` recurs (up to translation) every
    /// `cycle` steps. Quiescence without gathering is a cycle of length 1.
    Livelock {
        start: usize,
        cycle: usize,
    },
    StepLimit,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Gathered => "gathered",
            Outcome::Collision(_) => "collision",
            Outcome::Disconnected => "disconnected",
            Outcome::Livelock { .. } => "livelock",
            Outcome::StepLimit => "step-limit",
        }
    }

    pub fn is_gathered(&self) -> bool {
        matches!(self, Outcome::Gathered)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Collision(r) => write!(f, "collision({})", r.kind.name()),
            Outcome::Livelock { cycle, .. } => write!(f, "livelock({cycle})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub initial: Configuration,
    pub range: VisibilityRange,
    pub algorithm: String,
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
}

impl Trace {
    /// The configuration after the last recorded step.
    pub fn final_config(&self) -> &Configuration {
        self.steps.last().map_or(&self.initial, |s| &s.next)
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// Configuration after `i` steps (`0` is the initial one).
    pub fn config_at(&self, i: usize) -> &Configuration {
        if i == 0 {
            &self.initial
        } else {
            &self.steps[i - 1].next
        }
    }

    /// Connectivity held at every recorded configuration.
    pub fn always_connected(&self) -> bool {
        self.steps.iter().all(|s| s.connected)
    }

    pub fn translate(&self, by: TriCoord) -> Trace {
        let shift = |c: &Configuration| c.translate(by);
        let outcome = match &self.outcome {
            Outcome::Collision(r) => Outcome::Collision(CollisionReport {
                kind: r.kind,
                node: r.node + by,
                participants: r.participants.iter().map(|&(c, a)| (c + by, a)).collect(),
            }),
            o => o.clone(),
        };
        Trace {
            initial: shift(&self.initial),
            range: self.range,
            algorithm: self.algorithm.clone(),
            steps: self
                .steps
                .iter()
                .map(|s| TraceStep {
                    decisions: s.decisions.clone(),
                    next: shift(&s.next),
                    connected: s.connected,
                })
                .collect(),
            outcome,
        }
    }
}

/// Runs `f` from `cfg` until gathering, failure, a repeated configuration or
/// `max_steps` moving rounds.
pub fn run<D: Decide + ?Sized>(cfg: &Configuration, f: &D, max_steps: usize) -> Result<Trace, Error> {
    if !cfg.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut seen: HashMap<CanonicalConfiguration, usize> = HashMap::new();
    seen.insert(cfg.canonicalize(), 0);
    let mut steps = Vec::new();
    let mut current = cfg.clone();
    let outcome = loop {
        let acts = decisions(&current, f);
        if acts.iter().all(|a| a.is_stay()) {
            break if current.is_gathered() {
                Outcome::Gathered
            } else {
                Outcome::Livelock {
                    start: steps.len(),
                    cycle: 1,
                }
            };
        }
        if steps.len() >= max_steps {
            break Outcome::StepLimit;
        }
        let next = match apply_moves(&current, &acts) {
            StepOutcome::Collision(report) => break Outcome::Collision(report),
            StepOutcome::Next(next) => next,
        };
        let connected = next.is_connected();
        steps.push(TraceStep {
            decisions: acts,
            next: next.clone(),
            connected,
        });
        if !connected {
            break Outcome::Disconnected;
        }
        let index = steps.len();
        if let Some(&first) = seen.get(&next.canonicalize()) {
            break Outcome::Livelock {
                start: first,
                cycle: index - first,
            };
        }
        seen.insert(next.canonicalize(), index);
        current = next;
    };
    Ok(Trace {
        initial: cfg.clone(),
        range: f.range(),
        algorithm: f.id().to_string(),
        steps,
        outcome,
    })
}
