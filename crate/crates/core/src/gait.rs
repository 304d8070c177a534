//! Gait phases, the 4-bit leg+phase state encoding, and the
//! percent-of-cycle windows that segment one stride.
//!
//! A leg passes through eight sub-phases per cycle. Each sub-phase carries a
//! 3-bit ordinal; prefixing the leg bit (0 left, 1 right) gives the 4-bit
//! state code used by the automaton. The 3-bit ordinal doubles as the binary
//! motion pattern of the hip/knee/ankle triple (1 = joint in motion).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The eight gait sub-phases, in cycle order.
///
/// Ordinals 0..=3 are stance (foot on ground), 4..=7 are swing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum GaitPhase {
    /// Initial contact.
    IC = 0,
    /// Loading response.
    LR = 1,
    /// Mid stance.
    MS = 2,
    /// Terminal stance.
    TST = 3,
    /// Pre-swing.
    PSw = 4,
    /// Initial swing.
    ISw = 5,
    /// Mid swing.
    MSw = 6,
    /// Terminal swing.
    TSw = 7,
}

impl GaitPhase {
    /// All phases in ordinal order.
    pub const ALL: [GaitPhase; 8] = [
        GaitPhase::IC,
        GaitPhase::LR,
        GaitPhase::MS,
        GaitPhase::TST,
        GaitPhase::PSw,
        GaitPhase::ISw,
        GaitPhase::MSw,
        GaitPhase::TSw,
    ];

    /// 3-bit ordinal code, 0..=7.
    pub const fn ordinal(self) -> u8 {
        self as u8
    }

    pub const fn from_ordinal(ord: u8) -> Option<GaitPhase> {
        match ord {
            0 => Some(GaitPhase::IC),
            1 => Some(GaitPhase::LR),
            2 => Some(GaitPhase::MS),
            3 => Some(GaitPhase::TST),
            4 => Some(GaitPhase::PSw),
            5 => Some(GaitPhase::ISw),
            6 => Some(GaitPhase::MSw),
            7 => Some(GaitPhase::TSw),
            _ => None,
        }
    }

    /// Foot on ground: IC, LR, MS, TST.
    pub const fn is_stance(self) -> bool {
        (self as u8) < 4
    }

    /// Foot in the air: PSw, ISw, MSw, TSw.
    pub const fn is_swing(self) -> bool {
        !self.is_stance()
    }

    /// Next phase in cycle order, wrapping TSw back to IC.
    pub const fn cyclic_successor(self) -> GaitPhase {
        match GaitPhase::from_ordinal((self as u8 + 1) % 8) {
            Some(p) => p,
            None => unreachable!(),
        }
    }

    /// Fixed serialization token (`IC`, `LR`, ... `TSW`).
    pub const fn token(self) -> &'static str {
        match self {
            GaitPhase::IC => "IC",
            GaitPhase::LR => "LR",
            GaitPhase::MS => "MS",
            GaitPhase::TST => "TST",
            GaitPhase::PSw => "PSW",
            GaitPhase::ISw => "ISW",
            GaitPhase::MSw => "MSW",
            GaitPhase::TSw => "TSW",
        }
    }

    /// Long name, for diagnostics.
    pub const fn name(self) -> &'static str {
        match self {
            GaitPhase::IC => "initial contact",
            GaitPhase::LR => "loading response",
            GaitPhase::MS => "mid stance",
            GaitPhase::TST => "terminal stance",
            GaitPhase::PSw => "pre-swing",
            GaitPhase::ISw => "initial swing",
            GaitPhase::MSw => "mid swing",
            GaitPhase::TSw => "terminal swing",
        }
    }

    /// Per-joint motion/rest bits for this phase.
    pub const fn motion_bits(self) -> JointMotionTriple {
        let ord = self as u8;
        JointMotionTriple {
            hip: ord & 0b100 != 0,
            knee: ord & 0b010 != 0,
            ankle: ord & 0b001 != 0,
        }
    }
}

impl fmt::Display for GaitPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for GaitPhase {
    type Err = Error;

    fn from_str(s: &str) -> Result<GaitPhase> {
        GaitPhase::ALL
            .into_iter()
            .find(|p| p.token() == s)
            .ok_or_else(|| Error::Domain(format!("unknown phase token {s:?}")))
    }
}

/// Which leg a state code belongs to. The leg bit is the most significant
/// bit of the 4-bit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LegId {
    Left,
    Right,
}

impl LegId {
    pub const fn bit(self) -> u8 {
        match self {
            LegId::Left => 0,
            LegId::Right => 1,
        }
    }

    pub const fn opposite(self) -> LegId {
        match self {
            LegId::Left => LegId::Right,
            LegId::Right => LegId::Left,
        }
    }
}

impl fmt::Display for LegId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LegId::Left => "left",
            LegId::Right => "right",
        })
    }
}

/// 4-bit leg state: leg bit followed by the 3-bit phase ordinal.
///
/// Displays as a 4-character binary string (`"1000"` = right leg, initial
/// contact), the fixed wire format for all CSV files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegStateCode(u8);

impl LegStateCode {
    /// Wrap a raw code, rejecting anything above 15.
    pub fn new(code: u8) -> Result<LegStateCode> {
        if code <= 0b1111 {
            Ok(LegStateCode(code))
        } else {
            Err(Error::InvalidCode(format!("{code} is not a 4-bit value")))
        }
    }

    /// Build the code `(leg bit << 3) | phase ordinal`.
    pub const fn encode(leg: LegId, phase: GaitPhase) -> LegStateCode {
        LegStateCode((leg.bit() << 3) | phase.ordinal())
    }

    /// Split the code back into its leg and phase.
    pub const fn decode(self) -> (LegId, GaitPhase) {
        (self.leg(), self.phase())
    }

    pub const fn leg(self) -> LegId {
        if self.0 & 0b1000 != 0 {
            LegId::Right
        } else {
            LegId::Left
        }
    }

    pub const fn phase(self) -> GaitPhase {
        match GaitPhase::from_ordinal(self.0 & 0b0111) {
            Some(p) => p,
            None => unreachable!(),
        }
    }

    pub const fn raw(self) -> u8 {
        self.0
    }

    /// All 16 codes in ascending order.
    pub fn all() -> impl Iterator<Item = LegStateCode> {
        (0u8..16).map(LegStateCode)
    }

    /// Same leg, next phase in cycle order.
    pub const fn advance(self) -> LegStateCode {
        LegStateCode::encode(self.leg(), self.phase().cyclic_successor())
    }

    /// Parse a 4-character binary token such as `"0111"`.
    pub fn from_binary_str(s: &str) -> Result<LegStateCode> {
        if s.len() != 4 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidCode(format!(
                "{s:?} is not a 4-character binary code"
            )));
        }
        let code = u8::from_str_radix(s, 2).expect("validated binary digits");
        LegStateCode::new(code)
    }
}

impl fmt::Display for LegStateCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

impl FromStr for LegStateCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<LegStateCode> {
        LegStateCode::from_binary_str(s)
    }
}

/// Half-open percent window of one phase within the cycle.
///
/// `lo` is inclusive, `hi` exclusive, except the final window which also
/// contains 100.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseWindow {
    pub phase: GaitPhase,
    pub lo: f64,
    pub hi: f64,
}

impl PhaseWindow {
    pub fn contains(&self, pct: f64) -> bool {
        if self.phase == GaitPhase::TSw {
            pct >= self.lo && pct <= self.hi
        } else {
            pct >= self.lo && pct < self.hi
        }
    }

    /// Window width in percent of cycle.
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// The eight windows, partitioning [0, 100] in phase order.
pub const WINDOWS: [PhaseWindow; 8] = [
    PhaseWindow { phase: GaitPhase::IC, lo: 0.0, hi: 2.0 },
    PhaseWindow { phase: GaitPhase::LR, lo: 2.0, hi: 10.0 },
    PhaseWindow { phase: GaitPhase::MS, lo: 10.0, hi: 30.0 },
    PhaseWindow { phase: GaitPhase::TST, lo: 30.0, hi: 50.0 },
    PhaseWindow { phase: GaitPhase::PSw, lo: 50.0, hi: 60.0 },
    PhaseWindow { phase: GaitPhase::ISw, lo: 60.0, hi: 73.0 },
    PhaseWindow { phase: GaitPhase::MSw, lo: 73.0, hi: 87.0 },
    PhaseWindow { phase: GaitPhase::TSw, lo: 87.0, hi: 100.0 },
];

/// Percent position at which `phase`'s window begins.
pub const fn window_start(phase: GaitPhase) -> f64 {
    WINDOWS[phase.ordinal() as usize].lo
}

/// Map a percent-of-cycle position to its phase.
pub fn phase_from_percent(pct: f64) -> Result<GaitPhase> {
    if !(0.0..=100.0).contains(&pct) {
        return Err(Error::Domain(format!(
            "cycle position {pct} outside [0, 100]"
        )));
    }
    WINDOWS
        .iter()
        .find(|w| w.contains(pct))
        .map(|w| w.phase)
        .ok_or_else(|| Error::Domain(format!("no window contains {pct}")))
}

/// Binary motion state of the three leg joints (1 = in motion, 0 = at rest).
///
/// Concatenating hip, knee, ankle as bits (hip most significant) recovers
/// the phase ordinal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JointMotionTriple {
    pub hip: bool,
    pub knee: bool,
    pub ankle: bool,
}

impl JointMotionTriple {
    /// Reassemble the 3-bit ordinal.
    pub const fn to_ordinal(self) -> u8 {
        ((self.hip as u8) << 2) | ((self.knee as u8) << 1) | (self.ankle as u8)
    }

    pub const fn phase(self) -> GaitPhase {
        match GaitPhase::from_ordinal(self.to_ordinal()) {
            Some(p) => p,
            None => unreachable!(),
        }
    }
}
