//! The two-cell gait automaton: rule tables mapping one leg's state to the
//! opposite leg's, the two-history next-state function, and multi-step
//! simulation with synchronization checking.
//!
//! Two tables ship. The `standard` table is `neighbor XOR 1100`: flip the
//! leg bit and the stance/swing bit. It is an involution and keeps the two
//! legs in opposite cycle halves at every step. The `physiological` table
//! follows the stated cross-leg phase relations (IC opposite PSw, TSw
//! opposite IC, and so on); those relations leave LR without an image, so
//! the table is completed with LR -> ISw, the only unused swing phase, and
//! the completion is flagged in [`RuleTable::diagnostics`].

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gait::{GaitPhase, LegId, LegStateCode};

/// Total map from each of the 16 leg-state codes to the opposite leg's code.
#[derive(Debug, Clone)]
pub struct RuleTable {
    name: &'static str,
    entries: [LegStateCode; 16],
    /// Neighbors whose image was filled by completion rather than stated.
    completed: Vec<LegStateCode>,
}

/// Row order for table dumps: left-leg block then right-leg block, each in
/// the published column order.
const DUMP_ORDER: [u8; 16] = [
    0b0111, 0b0110, 0b0101, 0b0100, 0b0011, 0b0010, 0b0001, 0b0000,
    0b1011, 0b1010, 0b1001, 0b1000, 0b1111, 0b1110, 0b1101, 0b1100,
];

impl RuleTable {
    /// The standard table: `result = neighbor XOR 1100`.
    pub fn standard() -> RuleTable {
        let mut entries = [LegStateCode::new(0).unwrap(); 16];
        for code in LegStateCode::all() {
            entries[code.raw() as usize] = LegStateCode::new(code.raw() ^ 0b1100).unwrap();
        }
        RuleTable {
            name: "standard",
            entries,
            completed: Vec::new(),
        }
    }

    /// The physiological table built from the stated cross-leg relations,
    /// mirrored for the right leg, with the LR gap completed bijectively.
    pub fn physiological() -> RuleTable {
        use GaitPhase::*;
        // Stated relations give every left phase except LR an opposite-leg
        // image; ISw is the only swing phase left unused, so LR -> ISw is
        // the unique completion that keeps the table total and bijective.
        let image = |phase: GaitPhase| -> GaitPhase {
            match phase {
                IC => PSw,
                LR => ISw,
                MS => MSw,
                TST => TSw,
                PSw => LR,
                ISw => MS,
                MSw => TST,
                TSw => IC,
            }
        };
        let mut entries = [LegStateCode::new(0).unwrap(); 16];
        for code in LegStateCode::all() {
            let (leg, phase) = code.decode();
            entries[code.raw() as usize] = LegStateCode::encode(leg.opposite(), image(phase));
        }
        RuleTable {
            name: "physiological",
            entries,
            completed: vec![
                LegStateCode::encode(LegId::Left, LR),
                LegStateCode::encode(LegId::Right, LR),
            ],
        }
    }

    /// Look a table up by its CLI name.
    pub fn by_name(name: &str) -> Result<RuleTable> {
        match name {
            "standard" => Ok(RuleTable::standard()),
            "physiological" => Ok(RuleTable::physiological()),
            other => Err(Error::Domain(format!(
                "unknown rule table {other:?} (expected \"standard\" or \"physiological\")"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// The opposite leg's state implied by `code`.
    pub fn contralateral(&self, code: LegStateCode) -> LegStateCode {
        self.entries[code.raw() as usize]
    }

    /// Human-readable notes about non-stated entries. Empty for the
    /// standard table.
    pub fn diagnostics(&self) -> Vec<String> {
        self.completed
            .iter()
            .map(|code| {
                let (leg, phase) = code.decode();
                let img = self.contralateral(*code);
                format!(
                    "entry {code} -> {img} filled by completion: {leg} {} has no stated \
                     cross-leg image; {} is the only unused swing phase",
                    phase.name(),
                    img.phase().name(),
                )
            })
            .collect()
    }

    /// All 16 (neighbor, result) pairs in dump row order.
    pub fn rows(&self) -> Vec<(LegStateCode, LegStateCode)> {
        DUMP_ORDER
            .iter()
            .map(|&raw| {
                let code = LegStateCode::new(raw).unwrap();
                (code, self.contralateral(code))
            })
            .collect()
    }

    /// CSV dump: header `neighbor,result`, 16 rows of binary codes.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("neighbor,result\n");
        for (neighbor, result) in self.rows() {
            writeln!(out, "{neighbor},{result}").unwrap();
        }
        out
    }
}

/// Joint state of both legs at one tick. `left` always carries leg bit 0
/// and `right` leg bit 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AutomatonState {
    left: LegStateCode,
    right: LegStateCode,
}

impl AutomatonState {
    pub fn new(left: LegStateCode, right: LegStateCode) -> Result<AutomatonState> {
        if left.leg() != LegId::Left {
            return Err(Error::InvalidCode(format!(
                "left slot holds {left}, which has the right-leg bit set"
            )));
        }
        if right.leg() != LegId::Right {
            return Err(Error::InvalidCode(format!(
                "right slot holds {right}, which has the left-leg bit clear"
            )));
        }
        Ok(AutomatonState { left, right })
    }

    pub fn from_phases(left: GaitPhase, right: GaitPhase) -> AutomatonState {
        AutomatonState {
            left: LegStateCode::encode(LegId::Left, left),
            right: LegStateCode::encode(LegId::Right, right),
        }
    }

    pub fn left(&self) -> LegStateCode {
        self.left
    }

    pub fn right(&self) -> LegStateCode {
        self.right
    }

    /// Both legs advanced one phase.
    pub fn advance(&self) -> AutomatonState {
        AutomatonState {
            left: self.left.advance(),
            right: self.right.advance(),
        }
    }
}

/// One tick of a simulation trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRecord {
    pub tick: usize,
    pub state: AutomatonState,
    pub sync_ok: bool,
}

/// Result of checking a state against a rule table.
#[derive(Debug, Clone)]
pub struct SyncCheck {
    pub ok: bool,
    /// Names the satisfied or violated relation.
    pub detail: String,
}

/// True iff the right leg is exactly the table's image of the left leg.
///
/// The diagnostic names the stance/swing complementarity relation when both
/// legs sit in the same cycle half, and the offending table entry otherwise.
pub fn validate_sync(state: AutomatonState, table: &RuleTable) -> SyncCheck {
    let expected = table.contralateral(state.left());
    if state.right() == expected {
        return SyncCheck {
            ok: true,
            detail: format!(
                "consistent under {} table: left {} maps to right {}",
                table.name(),
                state.left(),
                state.right()
            ),
        };
    }
    let (_, lp) = state.left().decode();
    let (_, rp) = state.right().decode();
    let detail = if lp.is_stance() == rp.is_stance() {
        let half = if lp.is_stance() { "stance" } else { "swing" };
        format!(
            "stance/swing complementarity violated: left {} and right {} are both in {half}; \
             one leg in stance requires the other in swing",
            lp.name(),
            rp.name()
        )
    } else {
        format!(
            "{} table violated: left {} requires right {} ({}), found {} ({})",
            table.name(),
            state.left(),
            expected,
            expected.phase().name(),
            state.right(),
            rp.name()
        )
    };
    SyncCheck { ok: false, detail }
}

/// Advance one tick from `current`, validating the `(previous, current)`
/// history first.
///
/// A valid history has both legs advanced by exactly one phase between
/// `previous` and `current`, or `previous == current` for the initial tick.
/// Returns the new state and its sync flag under `table`. Advancing both
/// legs together preserves consistency under the standard table; under the
/// physiological table the flag reports each tick honestly and may drop.
pub fn next_state(
    current: AutomatonState,
    previous: AutomatonState,
    table: &RuleTable,
) -> Result<(AutomatonState, bool)> {
    let valid_history = previous == current || previous.advance() == current;
    if !valid_history {
        return Err(Error::History(format!(
            "({} , {}) does not follow ({} , {}) by one phase step",
            current.left(),
            current.right(),
            previous.left(),
            previous.right(),
        )));
    }
    let next = current.advance();
    let sync = validate_sync(next, table);
    Ok((next, sync.ok))
}

/// Run `steps` ticks from `start`, producing a trace of `steps + 1` records.
///
/// `start` must be consistent under `table`; both legs walk their cycles in
/// lockstep, one phase per tick, with the sync flag recorded at every tick.
pub fn simulate(start: AutomatonState, steps: usize, table: &RuleTable) -> Result<Vec<TraceRecord>> {
    if steps < 1 {
        return Err(Error::Domain("steps must be at least 1".into()));
    }
    let check = validate_sync(start, table);
    if !check.ok {
        return Err(Error::Sync(format!("inconsistent start state: {}", check.detail)));
    }
    let mut trace = Vec::with_capacity(steps + 1);
    trace.push(TraceRecord {
        tick: 0,
        state: start,
        sync_ok: true,
    });
    for tick in 1..=steps {
        let current = trace[tick - 1].state;
        let previous = if tick >= 2 { trace[tick - 2].state } else { current };
        let (state, sync_ok) = next_state(current, previous, table)?;
        trace.push(TraceRecord { tick, state, sync_ok });
    }
    Ok(trace)
}

/// CSV dump of a trace: header `tick,left,right,sync_ok`.
pub fn trace_to_csv(trace: &[TraceRecord]) -> String {
    let mut out = String::from("tick,left,right,sync_ok\n");
    for rec in trace {
        writeln!(
            out,
            "{},{},{},{}",
            rec.tick,
            rec.state.left(),
            rec.state.right(),
            rec.sync_ok
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(raw: u8) -> LegStateCode {
        LegStateCode::new(raw).unwrap()
    }

    #[test]
    fn standard_table_examples() {
        let table = RuleTable::standard();
        assert_eq!(table.contralateral(code(0b0000)), code(0b1100));
        assert_eq!(table.contralateral(code(0b0011)), code(0b1111));
        assert_eq!(table.contralateral(code(0b1100)), code(0b0000));
        assert_eq!(table.contralateral(code(0b0101)), code(0b1001));
        assert_eq!(table.contralateral(code(0b1111)), code(0b0011));
    }

    #[test]
    fn standard_table_is_xor_1100() {
        let table = RuleTable::standard();
        for c in LegStateCode::all() {
            assert_eq!(table.contralateral(c).raw(), c.raw() ^ 0b1100);
        }
    }

    #[test]
    fn standard_table_is_involution() {
        let table = RuleTable::standard();
        for c in LegStateCode::all() {
            assert_eq!(table.contralateral(table.contralateral(c)), c);
        }
    }

    #[test]
    fn stance_swing_complementarity_all_16() {
        let table = RuleTable::standard();
        for c in LegStateCode::all() {
            let img = table.contralateral(c);
            assert_eq!(c.phase().is_stance(), img.phase().is_swing(), "code {c}");
            assert_eq!(c.leg(), img.leg().opposite(), "code {c}");
        }
    }

    #[test]
    fn physiological_table_stated_relations() {
        use GaitPhase::*;
        let table = RuleTable::physiological();
        // The seven stated left-to-right relations.
        for (from, to) in [
            (IC, PSw),
            (MS, MSw),
            (TST, TSw),
            (PSw, LR),
            (ISw, MS),
            (MSw, TST),
            (TSw, IC),
        ] {
            let neighbor = LegStateCode::encode(LegId::Left, from);
            let expected = LegStateCode::encode(LegId::Right, to);
            assert_eq!(table.contralateral(neighbor), expected, "{from} -> {to}");
            // Mirror image for right-leg neighbors.
            let neighbor = LegStateCode::encode(LegId::Right, from);
            let expected = LegStateCode::encode(LegId::Left, to);
            assert_eq!(table.contralateral(neighbor), expected, "mirror {from} -> {to}");
        }
    }

    #[test]
    fn physiological_table_spec_codes() {
        let table = RuleTable::physiological();
        assert_eq!(table.contralateral(code(0b0100)), code(0b1001)); // PSw -> LR
        assert_eq!(table.contralateral(code(0b0111)), code(0b1000)); // TSw -> IC
        assert_eq!(table.contralateral(code(0b0010)), code(0b1110)); // MS -> MSw
        assert_eq!(table.contralateral(code(0b0001)), code(0b1101)); // LR -> ISw (completion)
    }

    #[test]
    fn physiological_completion_is_flagged() {
        let table = RuleTable::physiological();
        let diags = table.diagnostics();
        assert_eq!(diags.len(), 2);
        assert!(diags[0].contains("0001 -> 1101"), "{}", diags[0]);
        assert!(diags[0].contains("completion"), "{}", diags[0]);
        assert!(diags[1].contains("1001 -> 0101"), "{}", diags[1]);
        assert!(RuleTable::standard().diagnostics().is_empty());
    }

    #[test]
    fn both_tables_are_bijections() {
        for table in [RuleTable::standard(), RuleTable::physiological()] {
            for leg in [LegId::Left, LegId::Right] {
                let mut images: Vec<u8> = GaitPhase::ALL
                    .iter()
                    .map(|&p| table.contralateral(LegStateCode::encode(leg, p)).raw())
                    .collect();
                images.sort_unstable();
                images.dedup();
                assert_eq!(images.len(), 8, "{} table, {leg} leg", table.name());
                // Every image is on the opposite leg.
                for &raw in &images {
                    assert_eq!(code(raw).leg(), leg.opposite());
                }
            }
        }
    }

    #[test]
    fn by_name_lookup() {
        assert_eq!(RuleTable::by_name("standard").unwrap().name(), "standard");
        assert_eq!(
            RuleTable::by_name("physiological").unwrap().name(),
            "physiological"
        );
        assert!(RuleTable::by_name("mirror").is_err());
    }

    #[test]
    fn csv_dump_matches_published_row_order() {
        let csv = RuleTable::standard().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[0], "neighbor,result");
        assert_eq!(lines[1], "0111,1011");
        assert_eq!(lines[8], "0000,1100");
        assert_eq!(lines[9], "1011,0111");
        assert_eq!(lines[16], "1100,0000");
    }

    #[test]
    fn automaton_state_checks_leg_bits() {
        assert!(AutomatonState::new(code(0b0000), code(0b1100)).is_ok());
        assert!(AutomatonState::new(code(0b1000), code(0b1100)).is_err());
        assert!(AutomatonState::new(code(0b0000), code(0b0100)).is_err());
    }

    #[test]
    fn validate_sync_examples() {
        let table = RuleTable::standard();
        let ok = AutomatonState::new(code(0b0000), code(0b1100)).unwrap();
        assert!(validate_sync(ok, &table).ok);
        let ok2 = AutomatonState::new(code(0b0011), code(0b1111)).unwrap();
        assert!(validate_sync(ok2, &table).ok);

        let both_stance = AutomatonState::new(code(0b0000), code(0b1000)).unwrap();
        let check = validate_sync(both_stance, &table);
        assert!(!check.ok);
        assert!(check.detail.contains("complementarity"), "{}", check.detail);
    }

    #[test]
    fn validate_sync_names_table_entry_when_halves_differ() {
        let table = RuleTable::standard();
        // Left IC expects right PSw (1100); right ISw (1101) is in the right
        // half but the wrong phase.
        let state = AutomatonState::new(code(0b0000), code(0b1101)).unwrap();
        let check = validate_sync(state, &table);
        assert!(!check.ok);
        assert!(check.detail.contains("1100"), "{}", check.detail);
    }

    #[test]
    fn next_state_advances_both_legs() {
        use GaitPhase::*;
        let table = RuleTable::standard();
        let current = AutomatonState::from_phases(IC, PSw);
        let previous = AutomatonState::from_phases(TSw, TST);
        let (next, sync) = next_state(current, previous, &table).unwrap();
        assert_eq!(next, AutomatonState::from_phases(LR, ISw));
        assert!(sync);

        let current = AutomatonState::from_phases(MSw, MS);
        let previous = AutomatonState::from_phases(ISw, LR);
        let (next, _) = next_state(current, previous, &table).unwrap();
        assert_eq!(next, AutomatonState::from_phases(TSw, TST));
    }

    #[test]
    fn next_state_rejects_bad_history() {
        use GaitPhase::*;
        let table = RuleTable::standard();
        let current = AutomatonState::from_phases(IC, PSw);
        let previous = AutomatonState::from_phases(IC, IC);
        let err = next_state(current, previous, &table).unwrap_err();
        assert!(matches!(err, Error::History(_)), "{err}");
    }

    #[test]
    fn next_state_accepts_initial_tick_history() {
        use GaitPhase::*;
        let table = RuleTable::standard();
        let start = AutomatonState::from_phases(IC, PSw);
        let (next, sync) = next_state(start, start, &table).unwrap();
        assert_eq!(next, AutomatonState::from_phases(LR, ISw));
        assert!(sync);
    }

    #[test]
    fn simulate_period_is_8() {
        let table = RuleTable::standard();
        let start = AutomatonState::new(code(0b0000), code(0b1100)).unwrap();
        let trace = simulate(start, 8, &table).unwrap();
        assert_eq!(trace.len(), 9);
        assert_eq!(trace[8].state, trace[0].state);
        assert!(trace.iter().all(|r| r.sync_ok));
        // One step lands on the successor pair, which is also the table
        // image relation.
        let one = simulate(start, 1, &table).unwrap();
        assert_eq!(one[1].state.left(), code(0b0001));
        assert_eq!(one[1].state.right(), code(0b1101));
        assert_eq!(
            table.contralateral(code(0b0001)),
            code(0b1101),
            "cross-check against the table image"
        );
    }

    #[test]
    fn simulate_rejects_inconsistent_start() {
        let table = RuleTable::standard();
        let start = AutomatonState::new(code(0b0000), code(0b1000)).unwrap();
        let err = simulate(start, 4, &table).unwrap_err();
        assert!(matches!(err, Error::Sync(_)), "{err}");
    }

    #[test]
    fn simulate_rejects_zero_steps() {
        let table = RuleTable::standard();
        let start = AutomatonState::new(code(0b0000), code(0b1100)).unwrap();
        assert!(simulate(start, 0, &table).is_err());
    }

    #[test]
    fn simulate_any_consistent_start_stays_in_sync() {
        let table = RuleTable::standard();
        for left in GaitPhase::ALL {
            let l = LegStateCode::encode(LegId::Left, left);
            let start = AutomatonState::new(l, table.contralateral(l)).unwrap();
            let trace = simulate(start, 24, &table).unwrap();
            assert!(trace.iter().all(|r| r.sync_ok));
            for (i, rec) in trace.iter().enumerate() {
                assert_eq!(rec.state, trace[i % 8].state);
                assert_eq!(rec.tick, i);
            }
        }
    }

    #[test]
    fn physiological_sync_flag_reports_honestly() {
        use GaitPhase::*;
        let table = RuleTable::physiological();
        let start = AutomatonState::from_phases(IC, PSw);
        let trace = simulate(start, 8, &table).unwrap();
        // Lockstep advancing matches the stated relations for the first
        // four ticks, then the offset structure of the relations breaks.
        let flags: Vec<bool> = trace.iter().map(|r| r.sync_ok).collect();
        assert_eq!(flags[..4], [true, true, true, true]);
        assert!(!flags[4]);
        assert_eq!(trace[8].state, trace[0].state);
    }

    #[test]
    fn trace_csv_format() {
        let table = RuleTable::standard();
        let start = AutomatonState::new(code(0b0000), code(0b1100)).unwrap();
        let trace = simulate(start, 2, &table).unwrap();
        let csv = trace_to_csv(&trace);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "tick,left,right,sync_ok");
        assert_eq!(lines[1], "0,0000,1100,true");
        assert_eq!(lines[2], "1,0001,1101,true");
    }
}
