//! Operation counters recorded by a solve run. Counters, not wall time,
//! are what the budget checks assert against.

use std::time::Duration;

use serde::{Deserialize, Serialize};

/// Measured complexity budget of one all-pairs run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RunCounters {
    /// Cursor increments along neighbor path lists during reloads.
    pub cursor_advances: u64,
    /// List entries inspected for viability (including the one stopped on).
    pub viability_checks: u64,
    /// Invocations of the single-source engine; at most `n - 1`.
    pub psi_calls: u64,
    /// Largest arc count ever held by the auxiliary graph.
    pub peak_aux_arcs: u64,
    /// Largest number of live cursors at any point of the run.
    pub peak_active_cursors: u64,
    /// Wall-clock time of the run; informational only.
    #[serde(rename = "wall_ms", with = "duration_ms")]
    pub wall_time: Duration,
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Ok(Duration::from_secs_f64((ms / 1e3).max(0.0)))
    }
}
