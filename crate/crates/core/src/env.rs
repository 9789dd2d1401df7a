//! One slot of the stochastic cascade.

use crate::model::{ArmParams, Ordering};
use crate::rng::RngStream;

/// The arm that served a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selection {
    pub arm: usize,
    pub position: usize,
}

/// Everything that happened in a slot. Only the harness sees this; policies
/// get an [`Observation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotOutcome {
    /// Realized trigger bit of every arm, by arm index.
    pub triggers: Vec<bool>,
    /// First triggering arm in ordering position; `None` when nothing fired.
    pub selected: Option<Selection>,
    /// User feedback for the selected arm (`true` = relevant).
    pub feedback: Option<bool>,
}

impl SlotOutcome {
    pub fn reward(&self) -> u8 {
        u8::from(self.feedback == Some(true))
    }
}

/// The censored view handed to a policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Observation {
    selected: Option<(usize, bool)>,
}

impl Observation {
    pub const NONE: Observation = Observation { selected: None };

    pub fn new(arm: usize, feedback: bool) -> Self {
        Observation {
            selected: Some((arm, feedback)),
        }
    }

    pub fn selected_arm(&self) -> Option<usize> {
        self.selected.map(|(arm, _)| arm)
    }

    pub fn feedback(&self) -> Option<bool> {
        self.selected.map(|(_, y)| y)
    }

    /// `(arm, feedback)` when an arm served the slot.
    pub fn get(&self) -> Option<(usize, bool)> {
        self.selected
    }
}

/// Realizes one slot, consuming exactly `K + 1` uniforms: one trigger draw
/// per arm in arm-index order, then one feedback draw that is spent even
/// when no arm fires. The draw schedule is independent of `ordering`, so two
/// policies on the same stream face identical triggers.
pub fn step(params: &ArmParams, ordering: &Ordering, rng: &mut RngStream) -> SlotOutcome {
    debug_assert_eq!(ordering.len(), params.num_arms());
    let triggers: Vec<bool> = params.mu().iter().map(|&mu| rng.uniform() < mu).collect();
    let feedback_draw = rng.uniform();
    let selected = ordering
        .slots()
        .iter()
        .enumerate()
        .find(|&(_, &arm)| triggers[arm])
        .map(|(position, &arm)| Selection { arm, position });
    let feedback = selected.map(|s| feedback_draw < 1.0 - params.p()[s.arm]);
    SlotOutcome {
        triggers,
        selected,
        feedback,
    }
}

/// Drops everything but the selected arm and its feedback.
pub fn censor(outcome: &SlotOutcome) -> Observation {
    match (outcome.selected, outcome.feedback) {
        (Some(s), Some(y)) => Observation::new(s.arm, y),
        _ => Observation::NONE,
    }
}
