//! Synthetic joint-angle trajectories: periodic interpolation through
//! per-phase keyframes, labeled multi-cycle dataset generation with
//! Gaussian angle noise, angular velocities, and limit-cycle extraction.
//!
//! Angles are sagittal-plane degrees, flexion positive; the hip angle is
//! measured from the vertical and knee/ankle are relative inter-segment
//! angles. The left leg is the reference: the right leg follows the same
//! curve shifted by half a cycle. One cycle defaults to 1.0 s.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::gait::{phase_from_percent, window_start, GaitPhase};

/// Default cycle duration in seconds.
pub const DEFAULT_CYCLE_DURATION_S: f64 = 1.0;

/// Joint-angle keyframe for one phase, placed at the phase window start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Keyframe {
    pub phase: GaitPhase,
    pub hip_deg: f64,
    pub knee_deg: f64,
    pub ankle_deg: f64,
}

/// Eight keyframes, one per phase, anchoring the left leg's cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyframeTable {
    rows: [Keyframe; 8],
}

impl KeyframeTable {
    /// Build a table from rows in any order. Requires exactly one row per
    /// phase with finite angles no larger than 180 degrees in magnitude.
    pub fn new(rows: Vec<Keyframe>) -> Result<KeyframeTable> {
        let mut slots: [Option<Keyframe>; 8] = [None; 8];
        for row in rows {
            for (joint, angle) in [
                ("hip_deg", row.hip_deg),
                ("knee_deg", row.knee_deg),
                ("ankle_deg", row.ankle_deg),
            ] {
                if !angle.is_finite() || angle.abs() > 180.0 {
                    return Err(Error::Domain(format!(
                        "keyframe {} {joint} = {angle} is outside [-180, 180]",
                        row.phase
                    )));
                }
            }
            let slot = &mut slots[row.phase.ordinal() as usize];
            if slot.is_some() {
                return Err(Error::Domain(format!(
                    "duplicate keyframe row for phase {}",
                    row.phase
                )));
            }
            *slot = Some(row);
        }
        for (i, slot) in slots.iter().enumerate() {
            if slot.is_none() {
                return Err(Error::Domain(format!(
                    "missing keyframe row for phase {}",
                    GaitPhase::from_ordinal(i as u8).unwrap()
                )));
            }
        }
        Ok(KeyframeTable {
            rows: slots.map(|s| s.unwrap()),
        })
    }

    /// Demo keyframes with typical normal-walk sagittal angles. Intended
    /// for smoke runs; real studies should supply their own table.
    pub fn demo() -> KeyframeTable {
        let rows = [
            (GaitPhase::IC, 30.0, 5.0, 0.0),
            (GaitPhase::LR, 25.0, 15.0, -5.0),
            (GaitPhase::MS, 5.0, 10.0, 5.0),
            (GaitPhase::TST, -10.0, 5.0, 10.0),
            (GaitPhase::PSw, -5.0, 35.0, -15.0),
            (GaitPhase::ISw, 15.0, 60.0, -5.0),
            (GaitPhase::MSw, 25.0, 30.0, 0.0),
            (GaitPhase::TSw, 30.0, 5.0, 0.0),
        ]
        .map(|(phase, hip_deg, knee_deg, ankle_deg)| Keyframe {
            phase,
            hip_deg,
            knee_deg,
            ankle_deg,
        });
        KeyframeTable { rows }
    }

    pub fn rows(&self) -> &[Keyframe; 8] {
        &self.rows
    }

    pub fn row(&self, phase: GaitPhase) -> &Keyframe {
        &self.rows[phase.ordinal() as usize]
    }

    /// CSV dump: header `phase,hip_deg,knee_deg,ankle_deg`, 8 rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("phase,hip_deg,knee_deg,ankle_deg\n");
        for row in &self.rows {
            writeln!(
                out,
                "{},{:.6},{:.6},{:.6}",
                row.phase, row.hip_deg, row.knee_deg, row.ankle_deg
            )
            .unwrap();
        }
        out
    }

    /// Parse the CSV format written by [`KeyframeTable::to_csv`]. `path`
    /// is used for diagnostics only.
    pub fn from_csv(text: &str, path: &str) -> Result<KeyframeTable> {
        let parse = |line: usize, msg: String| Error::Parse {
            path: path.to_string(),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            !l.trim().is_empty() && !l.trim_start().starts_with('#')
        });
        let (line, header) = lines
            .next()
            .ok_or_else(|| parse(1, "empty keyframe file".into()))?;
        if header.trim() != "phase,hip_deg,knee_deg,ankle_deg" {
            return Err(parse(
                line + 1,
                format!("expected header \"phase,hip_deg,knee_deg,ankle_deg\", found {header:?}"),
            ));
        }
        let mut rows = Vec::new();
        for (idx, raw) in lines {
            let line = idx + 1;
            let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(parse(
                    line,
                    format!("expected 4 columns, found {}", fields.len()),
                ));
            }
            let phase: GaitPhase = fields[0]
                .parse()
                .map_err(|e| parse(line, format!("column phase: {e}")))?;
            let mut angles = [0.0f64; 3];
            for (k, col) in ["hip_deg", "knee_deg", "ankle_deg"].iter().enumerate() {
                angles[k] = fields[k + 1]
                    .parse()
                    .map_err(|_| parse(line, format!("column {col}: invalid number {:?}", fields[k + 1])))?;
            }
            rows.push(Keyframe {
                phase,
                hip_deg: angles[0],
                knee_deg: angles[1],
                ankle_deg: angles[2],
            });
        }
        KeyframeTable::new(rows)
    }

    fn curves(&self) -> LegCurves {
        let xs: Vec<f64> = self.rows.iter().map(|r| window_start(r.phase)).collect();
        let spline = |ys: Vec<f64>| PeriodicSpline::new(&xs, &ys, 100.0);
        LegCurves {
            hip: spline(self.rows.iter().map(|r| r.hip_deg).collect()),
            knee: spline(self.rows.iter().map(|r| r.knee_deg).collect()),
            ankle: spline(self.rows.iter().map(|r| r.ankle_deg).collect()),
        }
    }
}

struct LegCurves {
    hip: PeriodicSpline,
    knee: PeriodicSpline,
    ankle: PeriodicSpline,
}

impl LegCurves {
    fn eval(&self, t: f64) -> (f64, f64, f64) {
        (self.hip.eval(t), self.knee.eval(t), self.ankle.eval(t))
    }
}

/// Periodic piecewise-cubic Hermite interpolant with Catmull-Rom tangents
/// on a non-uniform knot grid.
#[derive(Debug, Clone)]
pub struct PeriodicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    tangents: Vec<f64>,
    period: f64,
}

impl PeriodicSpline {
    /// Knots must be strictly increasing and span less than one period.
    pub fn new(xs: &[f64], ys: &[f64], period: f64) -> PeriodicSpline {
        assert!(xs.len() >= 2 && xs.len() == ys.len());
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!(xs[xs.len() - 1] - xs[0] < period);
        let n = xs.len();
        let mut tangents = Vec::with_capacity(n);
        for i in 0..n {
            let (x_prev, y_prev) = if i == 0 {
                (xs[n - 1] - period, ys[n - 1])
            } else {
                (xs[i - 1], ys[i - 1])
            };
            let (x_next, y_next) = if i == n - 1 {
                (xs[0] + period, ys[0])
            } else {
                (xs[i + 1], ys[i + 1])
            };
            tangents.push((y_next - y_prev) / (x_next - x_prev));
        }
        PeriodicSpline {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            tangents,
            period,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.xs.len();
        let x0 = self.xs[0];
        let t = x0 + (t - x0).rem_euclid(self.period);
        // Segment index: last knot at or below t; the final segment wraps
        // to the first knot.
        let i = match self.xs.iter().rposition(|&x| x <= t) {
            Some(i) => i,
            None => n - 1, // t in the wrap segment below xs[0] + period
        };
        if self.xs[i] == t {
            return self.ys[i];
        }
        let (x1, y1, m1) = (self.xs[i], self.ys[i], self.tangents[i]);
        let (x2, y2, m2) = if i + 1 < n {
            (self.xs[i + 1], self.ys[i + 1], self.tangents[i + 1])
        } else {
            (self.xs[0] + self.period, self.ys[0], self.tangents[0])
        };
        let h = x2 - x1;
        let s = (t - x1) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * y1 + h10 * h * m1 + h01 * y2 + h11 * h * m2
    }
}

/// Selects one of the six joint-angle series of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JointSelector {
    HipL,
    KneeL,
    AnkleL,
    HipR,
    KneeR,
    AnkleR,
}

impl JointSelector {
    pub const ALL: [JointSelector; 6] = [
        JointSelector::HipL,
        JointSelector::KneeL,
        JointSelector::AnkleL,
        JointSelector::HipR,
        JointSelector::KneeR,
        JointSelector::AnkleR,
    ];

    pub const fn token(self) -> &'static str {
        match self {
            JointSelector::HipL => "hip_l",
            JointSelector::KneeL => "knee_l",
            JointSelector::AnkleL => "ankle_l",
            JointSelector::HipR => "hip_r",
            JointSelector::KneeR => "knee_r",
            JointSelector::AnkleR => "ankle_r",
        }
    }
}

impl std::fmt::Display for JointSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

impl std::str::FromStr for JointSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<JointSelector> {
        JointSelector::ALL
            .into_iter()
            .find(|j| j.token() == s)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown joint selector {s:?} (expected one of hip_l, knee_l, ankle_l, \
                     hip_r, knee_r, ankle_r)"
                ))
            })
    }
}

/// One labeled instant of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    /// Left leg's cycle position in percent; resets at each cycle start.
    pub t_pct: f64,
    pub hip_l: f64,
    pub knee_l: f64,
    pub ankle_l: f64,
    pub hip_r: f64,
    pub knee_r: f64,
    pub ankle_r: f64,
    pub label_l: GaitPhase,
    pub label_r: GaitPhase,
}

impl TrajectorySample {
    pub fn angle(&self, joint: JointSelector) -> f64 {
        match joint {
            JointSelector::HipL => self.hip_l,
            JointSelector::KneeL => self.knee_l,
            JointSelector::AnkleL => self.ankle_l,
            JointSelector::HipR => self.hip_r,
            JointSelector::KneeR => self.knee_r,
            JointSelector::AnkleR => self.ankle_r,
        }
    }
}

/// A sampled, labeled joint-angle time series covering one or more cycles.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub cycle_duration_s: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn joint_series(&self, joint: JointSelector) -> Vec<f64> {
        self.samples.iter().map(|s| s.angle(joint)).collect()
    }

    /// CSV dump. A `# seed=...` provenance comment precedes the header
    /// when the trajectory came from a seeded generator.
    pub fn to_csv(&self, seed: Option<u64>) -> String {
        let mut out = String::new();
        if let Some(seed) = seed {
            writeln!(out, "# seed={seed}").unwrap();
        }
        out.push_str("t_pct,hip_l,knee_l,ankle_l,hip_r,knee_r,ankle_r,label_l,label_r\n");
        for s in &self.samples {
            writeln!(
                out,
                "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{},{}",
                s.t_pct, s.hip_l, s.knee_l, s.ankle_l, s.hip_r, s.knee_r, s.ankle_r,
                s.label_l, s.label_r
            )
            .unwrap();
        }
        out
    }

    /// Parse the CSV format written by [`Trajectory::to_csv`], skipping
    /// `#` comment lines. `path` is used for diagnostics only.
    pub fn from_csv(text: &str, path: &str) -> Result<Trajectory> {
        let parse = |line: usize, msg: String| Error::Parse {
            path: path.to_string(),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            !l.trim().is_empty() && !l.trim_start().starts_with('#')
        });
        let (line, header) = lines
            .next()
            .ok_or_else(|| parse(1, "empty dataset file".into()))?;
        let expected = "t_pct,hip_l,knee_l,ankle_l,hip_r,knee_r,ankle_r,label_l,label_r";
        if header.trim() != expected {
            return Err(parse(
                line + 1,
                format!("expected header {expected:?}, found {header:?}"),
            ));
        }
        let mut samples = Vec::new();
        for (idx, raw) in lines {
            let line = idx + 1;
            let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
            if fields.len() != 9 {
                return Err(parse(
                    line,
                    format!("expected 9 columns, found {}", fields.len()),
                ));
            }
            let mut nums = [0.0f64; 7];
            let cols = ["t_pct", "hip_l", "knee_l", "ankle_l", "hip_r", "knee_r", "ankle_r"];
            for (k, col) in cols.iter().enumerate() {
                nums[k] = fields[k]
                    .parse()
                    .map_err(|_| parse(line, format!("column {col}: invalid number {:?}", fields[k])))?;
            }
            let label_l: GaitPhase = fields[7]
                .parse()
                .map_err(|e| parse(line, format!("column label_l: {e}")))?;
            let label_r: GaitPhase = fields[8]
                .parse()
                .map_err(|e| parse(line, format!("column label_r: {e}")))?;
            samples.push(TrajectorySample {
                t_pct: nums[0],
                hip_l: nums[1],
                knee_l: nums[2],
                ankle_l: nums[3],
                hip_r: nums[4],
                knee_r: nums[5],
                ankle_r: nums[6],
                label_l,
                label_r,
            });
        }
        if samples.is_empty() {
            return Err(parse(1, "dataset has no data rows".into()));
        }
        Ok(Trajectory {
            samples,
            cycle_duration_s: DEFAULT_CYCLE_DURATION_S,
        })
    }
}

/// Cycle position of sample `i` of `n`, in half-percent integer units to
/// keep the half-cycle shift between the legs exact in float arithmetic.
fn grid_pct(i: usize, n: usize) -> f64 {
    ((i % (2 * n)) * 50) as f64 / n as f64
}

/// Sample one noise-free cycle of the keyframe curve.
///
/// Samples sit at `i * 100 / samples_per_cycle` percent; the right leg is
/// the left curve evaluated half a cycle ahead; labels come from each
/// leg's own window.
pub fn interpolate_cycle(keys: &KeyframeTable, samples_per_cycle: usize) -> Result<Trajectory> {
    if samples_per_cycle < 8 {
        return Err(Error::Domain(format!(
            "samples_per_cycle must be at least 8, got {samples_per_cycle}"
        )));
    }
    let curves = keys.curves();
    let n = samples_per_cycle;
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let t = grid_pct(2 * i, 2 * n);
        let t_right = grid_pct(2 * i + n, 2 * n);
        let (hip_l, knee_l, ankle_l) = curves.eval(t);
        let (hip_r, knee_r, ankle_r) = curves.eval(t_right);
        samples.push(TrajectorySample {
            t_pct: t,
            hip_l,
            knee_l,
            ankle_l,
            hip_r,
            knee_r,
            ankle_r,
            label_l: phase_from_percent(t)?,
            label_r: phase_from_percent(t_right)?,
        });
    }
    Ok(Trajectory {
        samples,
        cycle_duration_s: DEFAULT_CYCLE_DURATION_S,
    })
}

/// Tile `cycles` copies of the noise-free cycle and add independent
/// Gaussian noise (standard deviation `noise_sigma_deg`) to every angle.
///
/// Labels and time stamps stay noise-free. Noise is drawn serially from a
/// ChaCha8 stream seeded with `seed`, six draws per sample in column order
/// (hip_l through ankle_r), so fixed arguments reproduce the output
/// bit-for-bit. With `noise_sigma_deg = 0` the result is the exact tiling.
pub fn generate_dataset(
    keys: &KeyframeTable,
    cycles: usize,
    samples_per_cycle: usize,
    noise_sigma_deg: f64,
    seed: u64,
) -> Result<Trajectory> {
    if cycles < 1 {
        return Err(Error::Domain("cycles must be at least 1".into()));
    }
    if !noise_sigma_deg.is_finite() || noise_sigma_deg < 0.0 {
        return Err(Error::Domain(format!(
            "noise_sigma_deg must be finite and non-negative, got {noise_sigma_deg}"
        )));
    }
    let base = interpolate_cycle(keys, samples_per_cycle)?;
    let mut samples = Vec::with_capacity(cycles * samples_per_cycle);
    for _ in 0..cycles {
        samples.extend_from_slice(&base.samples);
    }
    if noise_sigma_deg > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, noise_sigma_deg)
            .map_err(|e| Error::Domain(format!("bad noise sigma: {e}")))?;
        for s in &mut samples {
            s.hip_l += normal.sample(&mut rng);
            s.knee_l += normal.sample(&mut rng);
            s.ankle_l += normal.sample(&mut rng);
            s.hip_r += normal.sample(&mut rng);
            s.knee_r += normal.sample(&mut rng);
            s.ankle_r += normal.sample(&mut rng);
        }
    }
    Ok(Trajectory {
        samples,
        cycle_duration_s: base.cycle_duration_s,
    })
}

/// Seconds-from-start of every sample, accumulating across cycle resets.
fn sample_times_s(traj: &Trajectory) -> Vec<f64> {
    let per_pct = traj.cycle_duration_s / 100.0;
    let mut times = Vec::with_capacity(traj.len());
    let mut cycle = 0usize;
    let mut prev = f64::NEG_INFINITY;
    for s in &traj.samples {
        if s.t_pct <= prev {
            cycle += 1;
        }
        prev = s.t_pct;
        times.push((cycle as f64 * 100.0 + s.t_pct) * per_pct);
    }
    times
}

/// Angular velocity of one joint in degrees per second, by central finite
/// differences with periodic wraparound across the series ends.
pub fn angular_velocity(traj: &Trajectory, joint: JointSelector) -> Result<Vec<f64>> {
    let n = traj.len();
    if n < 3 {
        return Err(Error::Domain(format!(
            "angular velocity needs at least 3 samples, got {n}"
        )));
    }
    let angles = traj.joint_series(joint);
    let times = sample_times_s(traj);
    // Wrap gap estimated from the mean spacing; exact on uniform grids.
    let total = (times[n - 1] - times[0]) * n as f64 / (n - 1) as f64;
    let mut velocity = Vec::with_capacity(n);
    for i in 0..n {
        let (t_prev, a_prev) = if i == 0 {
            (times[n - 1] - total, angles[n - 1])
        } else {
            (times[i - 1], angles[i - 1])
        };
        let (t_next, a_next) = if i == n - 1 {
            (times[0] + total, angles[0])
        } else {
            (times[i + 1], angles[i + 1])
        };
        velocity.push((a_next - a_prev) / (t_next - t_prev));
    }
    Ok(velocity)
}

/// One point of a phase-plane orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitCyclePoint {
    pub angle_deg: f64,
    pub velocity_dps: f64,
}

/// Phase-plane orbit of one joint over one cycle, and how far it misses
/// closing on itself.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitCycleResult {
    pub points: Vec<LimitCyclePoint>,
    /// Euclidean distance between the first point and the point one full
    /// cycle later, in the (degrees, degrees/second) plane.
    pub closure_error: f64,
}

impl LimitCycleResult {
    /// CSV dump: header `angle_deg,velocity_dps`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("angle_deg,velocity_dps\n");
        for p in &self.points {
            writeln!(out, "{:.6},{:.6}", p.angle_deg, p.velocity_dps).unwrap();
        }
        out
    }
}

/// Extract the (angle, velocity) orbit of the first full cycle.
///
/// The orbit's closing point is the sample one full cycle after the first
/// when the trajectory extends that far, and the first sample itself when
/// the trajectory holds exactly one cycle (exact wraparound). The
/// trajectory must cover a whole cycle.
pub fn limit_cycle(traj: &Trajectory, joint: JointSelector) -> Result<LimitCycleResult> {
    let n = traj.len();
    if n < 3 {
        return Err(Error::Domain(format!(
            "limit cycle needs at least 3 samples, got {n}"
        )));
    }
    // First cycle = samples before the first t_pct reset.
    let cycle_len = traj
        .samples
        .windows(2)
        .position(|w| w[1].t_pct <= w[0].t_pct)
        .map(|i| i + 1)
        .unwrap_or(n);
    let first = &traj.samples[0];
    let last = &traj.samples[cycle_len - 1];
    let span = last.t_pct - first.t_pct;
    let step = span / (cycle_len.max(2) - 1) as f64;
    if span + step < 100.0 - 1e-6 {
        return Err(Error::Domain(format!(
            "trajectory covers only {:.3}% of a cycle",
            span + step
        )));
    }
    let angles = traj.joint_series(joint);
    let velocity = angular_velocity(traj, joint)?;
    let mut points: Vec<LimitCyclePoint> = (0..cycle_len)
        .map(|i| LimitCyclePoint {
            angle_deg: angles[i],
            velocity_dps: velocity[i],
        })
        .collect();
    let closing = if cycle_len < n { cycle_len } else { 0 };
    points.push(LimitCyclePoint {
        angle_deg: angles[closing],
        velocity_dps: velocity[closing],
    });
    let first_pt = points[0];
    let last_pt = points[points.len() - 1];
    let closure_error = ((last_pt.angle_deg - first_pt.angle_deg).powi(2)
        + (last_pt.velocity_dps - first_pt.velocity_dps).powi(2))
    .sqrt();
    Ok(LimitCycleResult {
        points,
        closure_error,
    })
}
