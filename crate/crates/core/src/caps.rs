use serde::{Deserialize, Serialize};

/// Size limits for materialized state spaces. Each can be overridden by an
/// environment variable (`LGDMS_BALL_CAP`, `LGDMS_STATE_CAP`, `LGDMS_POINT_CAP`,
/// `LGDMS_LOOP_CAP`, `LGDMS_LENGTH_CAP`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Group elements in a materialized ball.
    pub ball: usize,
    /// `(letter, element)` states in a skew operator or walk DP.
    pub states: usize,
    /// Points in a rendered cloud.
    pub points: usize,
    /// First-return loops in an induced system.
    pub loops: usize,
    /// Word length for partial Poincaré sums.
    pub length: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { ball: 2_000_000, states: 12_000_000, points: 4_000_000, loops: 2_000_000, length: 4096 }
    }
}

impl Caps {
    /// Applies environment overrides on top of `self`.
    pub fn with_env_overrides(mut self) -> Self {
        let read = |name: &str| std::env::var(name).ok().and_then(|v| v.trim().parse::<usize>().ok());
        if let Some(v) = read("LGDMS_BALL_CAP") {
            self.ball = v;
        }
        if let Some(v) = read("LGDMS_STATE_CAP") {
            self.states = v;
        }
        if let Some(v) = read("LGDMS_POINT_CAP") {
            self.points = v;
        }
        if let Some(v) = read("LGDMS_LOOP_CAP") {
            self.loops = v;
        }
        if let Some(v) = read("LGDMS_LENGTH_CAP") {
            self.length = v;
        }
        self
    }

    /// Ball size allowed when each element carries `2d` letter states.
    pub fn ball_for_states(&self, alphabet: usize) -> usize {
        self.ball.min(self.states / alphabet.max(1))
    }
}
