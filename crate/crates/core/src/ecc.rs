//! Error-correction cost model.
//!
//! Two concatenated codes are modeled, each at recursion levels 1 and 2:
//! the Steane `[[7,1,3]]` code and the Bacon-Shor `[[9,1,3]]` code. The
//! catalog carries the per-(code, level) metrics used everywhere else —
//! error-correction time, transversal gate time, tile area, and the qubit
//! composition of a logical tile — together with the physical technology
//! parameters they were derived from.
//!
//! Level-1 EC time is recomputed from the syndrome cycle count (two syndrome
//! extractions, one for bit flips and one for phase flips, at
//! `ec_cycles_per_syndrome` fundamental cycles each). Level-2 EC time is a
//! calibrated catalog constant; no level-2 movement schedule is modeled.

use crate::error::{Error, Result};
use crate::fmath;

/// Physical operation times and failure rates for the ion-trap technology,
/// plus trap geometry. Times are seconds; failure rates are probabilities
/// per operation (movement is per micrometer).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TechnologyParams {
    pub single_gate_time: f64,
    pub double_gate_time: f64,
    pub measure_time: f64,
    pub move_time: f64,
    pub split_time: f64,
    pub cool_time: f64,
    pub single_gate_fail: f64,
    pub double_gate_fail: f64,
    pub measure_fail: f64,
    pub move_fail_per_um: f64,
    /// Trapping-region pitch (including the junction), micrometers.
    pub trap_pitch_um: f64,
    /// Fundamental clock cycle: one unencoded gate, move, or measurement.
    pub cycle_time: f64,
}

impl TechnologyParams {
    /// Projected ("future") ion-trap parameters used throughout the models.
    pub fn projected() -> Self {
        TechnologyParams {
            single_gate_time: 1e-6,
            double_gate_time: 10e-6,
            measure_time: 10e-6,
            move_time: 10e-6,
            split_time: 0.1e-6,
            cool_time: 0.1e-6,
            single_gate_fail: 1e-8,
            double_gate_fail: 1e-7,
            measure_fail: 1e-8,
            move_fail_per_um: 5e-8,
            trap_pitch_um: 50.0,
            cycle_time: 1e-5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let times = [
            ("single_gate_time", self.single_gate_time),
            ("double_gate_time", self.double_gate_time),
            ("measure_time", self.measure_time),
            ("move_time", self.move_time),
            ("split_time", self.split_time),
            ("cool_time", self.cool_time),
            ("trap_pitch_um", self.trap_pitch_um),
            ("cycle_time", self.cycle_time),
        ];
        for (name, t) in times {
            if !(t > 0.0) {
                return Err(Error::InvalidParameter {
                    what: alloc::format!("{name} must be positive, got {t}"),
                });
            }
        }
        let fails = [
            ("single_gate_fail", self.single_gate_fail),
            ("double_gate_fail", self.double_gate_fail),
            ("measure_fail", self.measure_fail),
            ("move_fail_per_um", self.move_fail_per_um),
        ];
        for (name, p) in fails {
            if !(0.0..1.0).contains(&p) {
                return Err(Error::InvalidParameter {
                    what: alloc::format!("{name} must lie in [0,1), got {p}"),
                });
            }
        }
        Ok(())
    }

    /// Average physical failure probability feeding the recursion estimate:
    /// the unweighted mean of the gate and measurement failure rates and the
    /// per-move failure over one trap pitch.
    pub fn average_failure(&self) -> f64 {
        let move_fail = self.move_fail_per_um * self.trap_pitch_um;
        (self.single_gate_fail + self.double_gate_fail + self.measure_fail + move_fail) / 4.0
    }
}

/// The two error-correcting codes the architecture is analyzed with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CodeId {
    /// Steane `[[7,1,3]]`.
    Steane713,
    /// Bacon-Shor `[[9,1,3]]`.
    BaconShor913,
}

impl CodeId {
    pub const ALL: [CodeId; 2] = [CodeId::Steane713, CodeId::BaconShor913];

    pub fn name(&self) -> &'static str {
        match self {
            CodeId::Steane713 => "steane713",
            CodeId::BaconShor913 => "baconshor913",
        }
    }
}

impl core::fmt::Display for CodeId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for CodeId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "steane713" | "steane" | "7" => Ok(CodeId::Steane713),
            "baconshor913" | "baconshor" | "bacon-shor" | "9" => Ok(CodeId::BaconShor913),
            other => Err(Error::InvalidParameter {
                what: alloc::format!("unknown code id `{other}`"),
            }),
        }
    }
}

/// A (code, recursion level) pair; the unit the transfer network and the
/// metrics catalog are keyed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CodeLevel {
    pub code: CodeId,
    pub level: u8,
}

impl CodeLevel {
    pub const fn new(code: CodeId, level: u8) -> Self {
        CodeLevel { code, level }
    }
}

impl core::fmt::Display for CodeLevel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let n = match self.code {
            CodeId::Steane713 => 7,
            CodeId::BaconShor913 => 9,
        };
        write!(f, "{}-L{}", n, self.level)
    }
}

/// Catalog entry for one code at one recursion level.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CodeMetrics {
    pub code: CodeId,
    pub level: u8,
    /// Full error-correction step (both syndromes), seconds.
    pub ec_time: f64,
    /// Transversal logical gate, seconds.
    pub transversal_gate_time: f64,
    /// Area of one logical-qubit tile, mm².
    pub tile_area_mm2: f64,
    /// Data qubits making up the logical qubit, in next-lower-level units.
    pub data_qubit_count: u32,
    /// Error-correction ancilla accompanying the logical qubit.
    pub ancilla_qubit_count: u32,
    /// Cycles for one syndrome extraction (level 1 only).
    pub ec_cycles_per_syndrome: Option<u32>,
}

impl CodeMetrics {
    pub fn validate(&self) -> Result<()> {
        if !(self.ec_time > 0.0 && self.transversal_gate_time > 0.0 && self.tile_area_mm2 > 0.0) {
            return Err(Error::InvalidParameter {
                what: alloc::format!("non-positive metric for {}", CodeLevel::new(self.code, self.level)),
            });
        }
        if self.data_qubit_count == 0 || self.ancilla_qubit_count == 0 {
            return Err(Error::InvalidParameter {
                what: alloc::format!("zero qubit count for {}", CodeLevel::new(self.code, self.level)),
            });
        }
        Ok(())
    }
}

/// Gate classes priced by the cost model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GateClass {
    OneQubit,
    Cnot,
    Toffoli,
    Measure,
}

/// A fault-tolerant Toffoli costs fifteen two-qubit gate rounds, each
/// followed by error correction.
pub const TOFFOLI_CNOT_ROUNDS: u32 = 15;

/// Per-code, per-level metrics plus the technology profile they assume.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CodeCatalog {
    pub params: TechnologyParams,
    pub entries: alloc::vec::Vec<CodeMetrics>,
}

impl CodeCatalog {
    /// The default catalog: Steane and Bacon-Shor at levels 1 and 2.
    pub fn default_catalog() -> Self {
        let entries = alloc::vec![
            CodeMetrics {
                code: CodeId::Steane713,
                level: 1,
                ec_time: 3.1e-3,
                transversal_gate_time: 6.2e-3,
                tile_area_mm2: 0.2,
                data_qubit_count: 7,
                ancilla_qubit_count: 21,
                ec_cycles_per_syndrome: Some(154),
            },
            CodeMetrics {
                code: CodeId::Steane713,
                level: 2,
                ec_time: 0.3,
                transversal_gate_time: 0.5,
                tile_area_mm2: 3.4,
                data_qubit_count: 49,
                ancilla_qubit_count: 441,
                ec_cycles_per_syndrome: None,
            },
            CodeMetrics {
                code: CodeId::BaconShor913,
                level: 1,
                ec_time: 1.2e-3,
                transversal_gate_time: 2.4e-3,
                tile_area_mm2: 0.1,
                data_qubit_count: 9,
                ancilla_qubit_count: 12,
                ec_cycles_per_syndrome: Some(60),
            },
            CodeMetrics {
                code: CodeId::BaconShor913,
                level: 2,
                ec_time: 0.1,
                transversal_gate_time: 0.2,
                tile_area_mm2: 2.4,
                data_qubit_count: 81,
                ancilla_qubit_count: 298,
                ec_cycles_per_syndrome: None,
            },
        ];
        CodeCatalog {
            params: TechnologyParams::projected(),
            entries,
        }
    }

    pub fn get(&self, code: CodeId, level: u8) -> Result<&CodeMetrics> {
        self.entries
            .iter()
            .find(|m| m.code == code && m.level == level)
            .ok_or_else(|| Error::MissingMetrics {
                what: alloc::format!("{}", CodeLevel::new(code, level)),
            })
    }

    /// Error-correction time for one logical qubit at the given level.
    ///
    /// Level 0 is an unencoded qubit and needs no EC step. Level 1 is
    /// recomputed from the syndrome schedule: two syndrome extractions at
    /// `ec_cycles_per_syndrome` fundamental cycles each. Level 2 is the
    /// calibrated catalog value.
    pub fn ec_time(&self, code: CodeId, level: u8) -> Result<f64> {
        match level {
            0 => Ok(0.0),
            1 => {
                let m = self.get(code, 1)?;
                let cycles = m.ec_cycles_per_syndrome.ok_or_else(|| Error::MissingMetrics {
                    what: alloc::format!("ec_cycles_per_syndrome for {}", CodeLevel::new(code, 1)),
                })?;
                Ok(2.0 * cycles as f64 * self.params.cycle_time)
            }
            2 => Ok(self.get(code, 2)?.ec_time),
            other => Err(Error::UnknownLevel { level: other }),
        }
    }

    /// Time for one fault-tolerant logical gate, including the error
    /// correction that follows it. One-qubit gates, CNOTs, and measurements
    /// cost one transversal round plus one EC step; a Toffoli costs
    /// [`TOFFOLI_CNOT_ROUNDS`] CNOT rounds.
    pub fn logical_gate_time(&self, code: CodeId, level: u8, gate: GateClass) -> Result<f64> {
        if level == 0 {
            // Unencoded physical operation.
            let p = &self.params;
            return Ok(match gate {
                GateClass::OneQubit => p.single_gate_time,
                GateClass::Cnot => p.double_gate_time,
                GateClass::Toffoli => TOFFOLI_CNOT_ROUNDS as f64 * p.double_gate_time,
                GateClass::Measure => p.measure_time,
            });
        }
        let m = self.get(code, level)?;
        let round = m.transversal_gate_time + self.ec_time(code, level)?;
        Ok(match gate {
            GateClass::OneQubit | GateClass::Cnot | GateClass::Measure => round,
            GateClass::Toffoli => TOFFOLI_CNOT_ROUNDS as f64 * round,
        })
    }
}

/// Logical failure probability of a component encoded at recursion level
/// `level`, for physical failure rate `p0`, threshold `p_th`, and
/// communication distance `r` cells between level-1 blocks:
///
/// `P_f = (p_th / r^L) * (p0 / p_th)^(2^L)`
///
/// Level 0 returns `p0` exactly; results saturate at 1.
pub fn failure_prob(level: u8, p0: f64, p_th: f64, r: f64) -> f64 {
    if level == 0 {
        return p0;
    }
    let l = level as i32;
    let doublings = 1i32 << level.min(30);
    let value = p_th / fmath::powi(r, l) * fmath::powi(p0 / p_th, doublings);
    if value > 1.0 {
        1.0
    } else {
        value
    }
}

/// Inputs to the level-1 time budget: threshold, geometry, physical failure
/// rate, and the application size `K * Q` (time-steps times logical qubits)
/// whose inverse is the tolerable per-operation failure.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FidelityBudget {
    pub p_th: f64,
    /// Communication distance between level-1 blocks, cells.
    pub r_cells: f64,
    /// Average physical failure probability.
    pub p0: f64,
    /// Application time-steps.
    pub time_steps: f64,
    /// Application logical qubits.
    pub logical_qubits: f64,
}

impl FidelityBudget {
    pub fn app_size(&self) -> f64 {
        self.time_steps * self.logical_qubits
    }
}

/// Outcome of the budget computation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BudgetStatus {
    /// A nonzero level-1 share is affordable.
    Ok,
    /// `p0 >= p_th`: concatenation does not converge, budget is zero.
    AboveThreshold,
    /// Even an all-level-2 schedule misses the failure target.
    InfeasibleAtLevel2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BudgetOutcome {
    /// Maximum fraction of total execution time spendable at level 1.
    pub l1_time_fraction: f64,
    pub status: BudgetStatus,
    pub p_fail_l1: f64,
    pub p_fail_l2: f64,
}

/// Maximum fraction of execution time that may be spent at level 1 while
/// the whole computation stays below one expected failure.
///
/// The application performs `K * Q` operations split between levels; an
/// operation takes `t_l1` seconds at level 1 and `t_l2` at level 2. With
/// `n1` level-1 operations out of `N = K * Q`, the expected failure count is
/// `n1 * P_f(1) + (N - n1) * P_f(2) <= 1`; the returned fraction converts the
/// largest feasible `n1` into a share of wall-clock time,
/// `n1 * t_l1 / (n1 * t_l1 + (N - n1) * t_l2)`.
pub fn l1_time_budget(budget: &FidelityBudget, t_l1: f64, t_l2: f64) -> BudgetOutcome {
    let p1 = failure_prob(1, budget.p0, budget.p_th, budget.r_cells);
    let p2 = failure_prob(2, budget.p0, budget.p_th, budget.r_cells);
    if budget.p0 >= budget.p_th {
        return BudgetOutcome {
            l1_time_fraction: 0.0,
            status: BudgetStatus::AboveThreshold,
            p_fail_l1: p1,
            p_fail_l2: p2,
        };
    }
    let n = budget.app_size();
    if n * p2 > 1.0 {
        return BudgetOutcome {
            l1_time_fraction: 0.0,
            status: BudgetStatus::InfeasibleAtLevel2,
            p_fail_l1: p1,
            p_fail_l2: p2,
        };
    }
    // Largest n1 with n1*p1 + (N-n1)*p2 <= 1.
    let n1 = if n * p1 <= 1.0 {
        n // level 1 alone already meets the target
    } else {
        (1.0 - n * p2) / (p1 - p2)
    };
    let n1 = n1.clamp(0.0, n);
    let t_total = n1 * t_l1 + (n - n1) * t_l2;
    let fraction = if t_total > 0.0 { n1 * t_l1 / t_total } else { 0.0 };
    BudgetOutcome {
        l1_time_fraction: fraction,
        status: BudgetStatus::Ok,
        p_fail_l1: p1,
        p_fail_l2: p2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const STEANE_THRESHOLD: f64 = 7.5e-5;

    fn catalog() -> CodeCatalog {
        CodeCatalog::default_catalog()
    }

    #[test]
    fn default_params_validate() {
        TechnologyParams::projected().validate().unwrap();
        for entry in &catalog().entries {
            entry.validate().unwrap();
        }
    }

    #[test]
    fn catalog_echoes_reference_metrics() {
        let cat = catalog();
        let checks = [
            (CodeId::Steane713, 1, 3.1e-3, 6.2e-3, 0.2, 7, 21),
            (CodeId::Steane713, 2, 0.3, 0.5, 3.4, 49, 441),
            (CodeId::BaconShor913, 1, 1.2e-3, 2.4e-3, 0.1, 9, 12),
            (CodeId::BaconShor913, 2, 0.1, 0.2, 2.4, 81, 298),
        ];
        for (code, level, ec, gate, area, data, anc) in checks {
            let m = cat.get(code, level).unwrap();
            assert_eq!(m.ec_time, ec);
            assert_eq!(m.transversal_gate_time, gate);
            assert_eq!(m.tile_area_mm2, area);
            assert_eq!(m.data_qubit_count, data);
            assert_eq!(m.ancilla_qubit_count, anc);
        }
    }

    #[test]
    fn ec_time_levels() {
        let cat = catalog();
        // Unencoded qubits need no EC step.
        assert_eq!(cat.ec_time(CodeId::Steane713, 0).unwrap(), 0.0);
        // Level 1 rebuilt from the cycle schedule: 2 syndromes x 154 cycles x 10us.
        let l1 = cat.ec_time(CodeId::Steane713, 1).unwrap();
        assert!((l1 - 3.08e-3).abs() < 1e-12);
        // Agrees with the catalog value to one significant digit.
        assert_eq!(round_1sig(l1), round_1sig(3.1e-3));
        // Level 2 is the calibrated constant.
        assert_eq!(cat.ec_time(CodeId::BaconShor913, 2).unwrap(), 0.1);
        assert_eq!(cat.ec_time(CodeId::Steane713, 2).unwrap(), 0.3);
        assert!(matches!(
            cat.ec_time(CodeId::Steane713, 3),
            Err(Error::UnknownLevel { level: 3 })
        ));
    }

    fn round_1sig(x: f64) -> f64 {
        let mag = 10f64.powf(x.abs().log10().floor());
        (x / mag).round() * mag
    }

    #[test]
    fn level_ratio_is_two_orders_of_magnitude() {
        let cat = catalog();
        for code in CodeId::ALL {
            let r = cat.ec_time(code, 2).unwrap() / cat.ec_time(code, 1).unwrap();
            assert!((50.0..=300.0).contains(&r), "{code}: ratio {r}");
        }
        // Level-1 EC is roughly one percent of the level-2 step for Steane.
        let frac = cat.ec_time(CodeId::Steane713, 1).unwrap()
            / cat.ec_time(CodeId::Steane713, 2).unwrap();
        assert!((0.005..=0.02).contains(&frac), "fraction {frac}");
    }

    #[test]
    fn gate_times_follow_catalog() {
        let cat = catalog();
        let cnot = cat
            .logical_gate_time(CodeId::Steane713, 2, GateClass::Cnot)
            .unwrap();
        assert!((cnot - 0.8).abs() < 1e-12);
        let toffoli = cat
            .logical_gate_time(CodeId::Steane713, 2, GateClass::Toffoli)
            .unwrap();
        assert!((toffoli - 12.0).abs() < 1e-9);
        // Toffoli is exactly fifteen CNOT rounds, by construction.
        assert_eq!(toffoli, 15.0 * cnot);
        let one = cat
            .logical_gate_time(CodeId::BaconShor913, 1, GateClass::OneQubit)
            .unwrap();
        assert!((one - 3.6e-3).abs() < 1e-12);
    }

    #[test]
    fn failure_prob_anchors() {
        // Level 0 collapses to p0, bit-exactly.
        assert_eq!(failure_prob(0, 3.3e-6, STEANE_THRESHOLD, 12.0), 3.3e-6);
        // At p0 = p_th the level-1 value is p_th / r.
        let p = failure_prob(1, STEANE_THRESHOLD, STEANE_THRESHOLD, 12.0);
        assert!((p - STEANE_THRESHOLD / 12.0).abs() < 1e-18);
        // Direct evaluation at level 2.
        let p = failure_prob(2, 1e-7, STEANE_THRESHOLD, 12.0);
        let want = STEANE_THRESHOLD / 144.0 * (1e-7f64 / STEANE_THRESHOLD).powi(4);
        assert!((p - want).abs() <= want * 1e-12);
        // Saturation.
        assert_eq!(failure_prob(1, 0.9, 1e-5, 1.0), 1.0);
    }

    #[test]
    fn failure_prob_monotone() {
        // Strictly decreasing in level below threshold, increasing in p0.
        for &p0 in &[1e-8, 1e-7, 1e-6, 7e-5] {
            let mut prev = failure_prob(0, p0, STEANE_THRESHOLD, 12.0);
            for level in 1..=3 {
                let cur = failure_prob(level, p0, STEANE_THRESHOLD, 12.0);
                assert!(cur < prev, "p0={p0} level={level}: {cur} !< {prev}");
                prev = cur;
            }
        }
        for level in 0..=3u8 {
            let lo = failure_prob(level, 1e-7, STEANE_THRESHOLD, 12.0);
            let hi = failure_prob(level, 2e-7, STEANE_THRESHOLD, 12.0);
            assert!(hi > lo);
        }
    }

    fn default_budget() -> FidelityBudget {
        FidelityBudget {
            p_th: STEANE_THRESHOLD,
            r_cells: 12.0,
            p0: TechnologyParams::projected().average_failure(),
            time_steps: 3.15e9 / 558.13,
            logical_qubits: 558.13,
        }
    }

    #[test]
    fn average_failure_composition() {
        // Gate, measure, and one-pitch movement failures, unweighted.
        let p = TechnologyParams::projected().average_failure();
        let want = (1e-8 + 1e-7 + 1e-8 + 5e-8 * 50.0) / 4.0;
        assert_eq!(p, want);
        assert!((p - 6.55e-7).abs() < 1e-12);
    }

    #[test]
    fn budget_default_profile_is_about_two_percent() {
        let cat = catalog();
        let out = l1_time_budget(
            &default_budget(),
            cat.ec_time(CodeId::Steane713, 1).unwrap(),
            cat.ec_time(CodeId::Steane713, 2).unwrap(),
        );
        assert_eq!(out.status, BudgetStatus::Ok);
        assert!(
            (out.l1_time_fraction - 0.02).abs() <= 0.01,
            "budget {}",
            out.l1_time_fraction
        );
    }

    #[test]
    fn budget_edge_cases() {
        let mut b = default_budget();
        // At threshold there is no concatenation gain: budget 0.
        b.p0 = b.p_th;
        let out = l1_time_budget(&b, 3.08e-3, 0.3);
        assert_eq!(out.l1_time_fraction, 0.0);
        assert_eq!(out.status, BudgetStatus::AboveThreshold);

        // A small enough application runs entirely at level 1.
        let mut b = default_budget();
        b.time_steps = 10.0;
        b.logical_qubits = 10.0;
        let out = l1_time_budget(&b, 3.08e-3, 0.3);
        assert_eq!(out.l1_time_fraction, 1.0);

        // An absurdly large application is infeasible even at level 2.
        let mut b = default_budget();
        b.time_steps = 1e30;
        let out = l1_time_budget(&b, 3.08e-3, 0.3);
        assert_eq!(out.status, BudgetStatus::InfeasibleAtLevel2);
        assert_eq!(out.l1_time_fraction, 0.0);
    }
}
