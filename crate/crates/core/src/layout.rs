//! Area and bandwidth models for the specialized architecture.
//!
//! The area model compares a homogeneous baseline — every logical data qubit
//! carried at a (1:2) data:ancilla ratio with a heavy per-qubit interconnect
//! share — against the specialized layout, where memory runs at (8:1) and
//! computation is confined to 27-tile compute blocks (9 data + 18 ancilla).
//!
//! Baseline interconnect weight, effective tile areas, and the effective
//! logical capacity per problem size are calibration inputs carried by
//! [`AreaModel`]; reports built from them are flagged as calibrated by the
//! crate's consumers.

use alloc::vec::Vec;

use crate::ecc::{CodeId, CodeLevel};
use crate::error::{Error, Result};
use crate::fmath;

/// Data qubits per compute block.
pub const BLOCK_DATA: u32 = 9;
/// Error-correction ancilla qubits per compute block.
pub const BLOCK_ANCILLA: u32 = 18;
/// Tiles in one compute block.
pub const BLOCK_TILES: u32 = BLOCK_DATA + BLOCK_ANCILLA;
/// Memory data:ancilla ratio is 8:1.
pub const MEMORY_ANCILLA_PER_DATA: f64 = 1.0 / 8.0;
/// Baseline (homogeneous) data:ancilla ratio is 1:2.
pub const QLA_ANCILLA_PER_DATA: f64 = 2.0;

/// Geometry of one memory/compute configuration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegionLayout {
    /// Effective logical data capacity held in memory (calibrated; may be
    /// fractional because it absorbs the interconnect share per qubit).
    pub memory_data_qubits: f64,
    /// Ancilla tiles per data tile in memory.
    pub memory_ancilla_per_data: f64,
    pub compute_blocks: u32,
    pub block_data: u32,
    pub block_ancilla: u32,
    pub channels_per_block_edge: u32,
    pub memory_code: CodeLevel,
    pub compute_code: CodeLevel,
}

impl RegionLayout {
    /// The specialized layout: dense memory, `blocks` compute blocks, both
    /// regions encoded with `code` at level 2.
    pub fn specialized(memory_data_qubits: f64, blocks: u32, code: CodeId) -> RegionLayout {
        RegionLayout {
            memory_data_qubits,
            memory_ancilla_per_data: MEMORY_ANCILLA_PER_DATA,
            compute_blocks: blocks,
            block_data: BLOCK_DATA,
            block_ancilla: BLOCK_ANCILLA,
            channels_per_block_edge: 2,
            memory_code: CodeLevel::new(code, 2),
            compute_code: CodeLevel::new(code, 2),
        }
    }
}

/// Calibrated constants behind the area accounting.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AreaModel {
    /// Per-qubit interconnect and ancilla-factory weight of the baseline.
    pub qla_interconnect_mult: f64,
    /// Baseline tile area (Steane level-2), mm².
    pub qla_tile_area_mm2: f64,
    /// Effective tile areas used by the area accounting, per (code, level).
    pub effective_tile_area: Vec<(CodeLevel, f64)>,
    /// Relative channel/interconnect overhead added to the specialized area.
    pub channel_overhead: f64,
    /// Interconnect weight of the specialized layout (1.0 unless the layout
    /// degenerates to the baseline).
    pub cqla_interconnect_mult: f64,
    /// Final multiplicative adjustment on the area factor (1.0 by default).
    pub factor_adjust: f64,
}

impl AreaModel {
    pub fn calibrated_default() -> AreaModel {
        AreaModel {
            qla_interconnect_mult: 54.5 / 3.0,
            qla_tile_area_mm2: 3.4,
            effective_tile_area: alloc::vec![
                (CodeLevel::new(CodeId::Steane713, 1), 0.2),
                (CodeLevel::new(CodeId::Steane713, 2), 3.4),
                (CodeLevel::new(CodeId::BaconShor913, 1), 0.1),
                (CodeLevel::new(CodeId::BaconShor913, 2), 2.3203),
            ],
            channel_overhead: 0.0,
            cqla_interconnect_mult: 1.0,
            factor_adjust: 1.0,
        }
    }

    pub fn tile_area(&self, code_level: CodeLevel) -> Result<f64> {
        self.effective_tile_area
            .iter()
            .find(|(cl, _)| *cl == code_level)
            .map(|(_, a)| *a)
            .ok_or_else(|| Error::MissingMetrics {
                what: alloc::format!("effective tile area for {code_level}"),
            })
    }
}

/// Area accounting for one layout.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AreaReport {
    pub qla_area_mm2: f64,
    pub cqla_area_mm2: f64,
    pub memory_area_mm2: f64,
    pub compute_area_mm2: f64,
    /// `qla_area / cqla_area`, after any calibrated adjustment.
    pub area_factor: f64,
}

/// Computes baseline and specialized areas and their ratio.
///
/// Specialized: memory data tiles carry a `memory_ancilla_per_data` ancilla
/// share; each compute block adds `block_data + block_ancilla` tiles; the sum
/// is scaled by the channel overhead and interconnect weight. Baseline:
/// every data qubit costs `1 + QLA_ANCILLA_PER_DATA` tiles at the baseline
/// tile area, times the baseline interconnect weight.
pub fn area(layout: &RegionLayout, model: &AreaModel) -> Result<AreaReport> {
    if layout.memory_data_qubits <= 0.0 {
        return Err(Error::InvalidParameter {
            what: alloc::format!(
                "memory capacity must be positive, got {}",
                layout.memory_data_qubits
            ),
        });
    }
    let mem_tile = model.tile_area(layout.memory_code)?;
    let compute_tile = model.tile_area(layout.compute_code)?;
    let memory_area =
        layout.memory_data_qubits * (1.0 + layout.memory_ancilla_per_data) * mem_tile;
    let block_tiles = (layout.block_data + layout.block_ancilla) as f64;
    let compute_area = layout.compute_blocks as f64 * block_tiles * compute_tile;
    let cqla_area = (memory_area + compute_area)
        * (1.0 + model.channel_overhead)
        * model.cqla_interconnect_mult;
    let qla_area = layout.memory_data_qubits
        * (1.0 + QLA_ANCILLA_PER_DATA)
        * model.qla_tile_area_mm2
        * model.qla_interconnect_mult;
    Ok(AreaReport {
        qla_area_mm2: qla_area,
        cqla_area_mm2: cqla_area,
        memory_area_mm2: memory_area,
        compute_area_mm2: compute_area,
        area_factor: qla_area / cqla_area * model.factor_adjust,
    })
}

/// Perimeter bandwidth supply versus demand for compute superblocks.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandwidthPoint {
    /// Superblock size, in compute blocks.
    pub size: u32,
    /// Channels available on the superblock perimeter: `4 * sqrt(B) * c`.
    pub available: f64,
    /// Channels required by steady traffic: `B * d`.
    pub required: f64,
    /// Worst case: every data qubit in every block in flight at once.
    pub worst_case_required: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandwidthCurves {
    pub points: Vec<BandwidthPoint>,
    /// Smallest size at which required traffic meets or exceeds the
    /// perimeter supply; growth past this point stops paying off.
    pub crossover: Option<u32>,
}

/// Evaluates supply and demand over `sizes` superblock sizes. Supply grows
/// with the perimeter (square root of size), demand with the volume, so the
/// curves cross at `B* = (4c/d)^2`; the crossover is located with exact
/// squared-comparison arithmetic so integer calibrations land exactly.
pub fn bandwidth_curves(
    demand_per_block: f64,
    channels_per_edge: f64,
    sizes: impl Iterator<Item = u32>,
) -> Result<BandwidthCurves> {
    if demand_per_block < 0.0 || channels_per_edge <= 0.0 {
        return Err(Error::InvalidParameter {
            what: alloc::format!(
                "bad bandwidth parameters: demand {demand_per_block}, channels {channels_per_edge}"
            ),
        });
    }
    let mut points = Vec::new();
    let mut crossover = None;
    for size in sizes {
        let b = size as f64;
        let available = 4.0 * fmath::sqrt(b) * channels_per_edge;
        let required = b * demand_per_block;
        let worst = b * BLOCK_DATA as f64;
        // required >= available  <=>  (B d)^2 >= 16 c^2 B, exactly.
        let crossed = demand_per_block > 0.0
            && (b * demand_per_block) * (b * demand_per_block)
                >= 16.0 * channels_per_edge * channels_per_edge * b;
        if crossed && crossover.is_none() {
            crossover = Some(size);
        }
        points.push(BandwidthPoint {
            size,
            available,
            required,
            worst_case_required: worst,
        });
    }
    Ok(BandwidthCurves { points, crossover })
}

/// Perimeter channels needed to overlap a compute block's Toffoli traffic
/// with its error correction. The Bacon-Shor code moves more data qubits per
/// teleport and leaves a shorter EC window to hide them in, so it needs
/// three channels where Steane needs one.
pub fn toffoli_bandwidth(code: CodeId) -> u32 {
    match code {
        CodeId::Steane713 => 1,
        CodeId::BaconShor913 => 3,
    }
}
