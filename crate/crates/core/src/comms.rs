//! Communication-versus-computation accounting on the compute-block mesh.
//!
//! Both models are analytic. Toffoli traffic during repeated addition moves
//! three qubits to and from memory per Toffoli over the block's perimeter
//! channels. The all-to-all personalized exchange of the QFT is priced with
//! a bisection-limited mesh model: inter-block messages cross the mesh's
//! narrowest cut at one teleport per channel per hop time, plus the latency
//! of the farthest pair.

use alloc::string::String;
use alloc::vec::Vec;

use crate::circuit::{Circuit, GateKind};
use crate::ecc::{CodeCatalog, CodeId};
use crate::error::{Error, Result};
use crate::generators::ModexpSchedule;
use crate::layout::BLOCK_DATA;

/// Compute-block mesh geometry and its teleportation channel timing.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeshSpec {
    pub rows: u32,
    pub cols: u32,
    pub channels_per_edge: u32,
    /// Seconds to teleport one logical qubit one hop; channel operation is
    /// EC-dominated, so this defaults to one level-2 EC time.
    pub teleport_time: f64,
}

impl MeshSpec {
    pub fn new(rows: u32, cols: u32, channels_per_edge: u32, teleport_time: f64) -> Result<MeshSpec> {
        if rows < 1 || cols < 1 {
            return Err(Error::InvalidParameter {
                what: String::from("mesh must have at least one row and column"),
            });
        }
        if teleport_time < 0.0 {
            return Err(Error::InvalidParameter {
                what: String::from("teleport time must be non-negative"),
            });
        }
        Ok(MeshSpec {
            rows,
            cols,
            channels_per_edge,
            teleport_time,
        })
    }

    pub fn blocks(&self) -> u64 {
        self.rows as u64 * self.cols as u64
    }

    /// Channels crossing the narrowest bisection of the mesh.
    pub fn bisection_channels(&self) -> u64 {
        self.rows.min(self.cols) as u64 * self.channels_per_edge as u64
    }

    /// Hop count between the farthest block pair.
    pub fn max_hops(&self) -> u64 {
        (self.rows - 1) as u64 + (self.cols - 1) as u64
    }
}

/// Totals for one application phase.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CommReport {
    pub total_comm_time: f64,
    pub total_comp_time: f64,
    /// Named contributions to the communication total.
    pub phases: Vec<(String, f64)>,
}

/// Communication and computation totals for the repeated-addition stream of
/// one modular exponentiation.
///
/// Computation: `adder_count` times the adder's slot-weighted compute time
/// at level 2. Communication: each Toffoli stages three qubits in and three
/// out over the block's `perimeter_channels`; transfers serialize per
/// channel, so halving the channels doubles the transfer time.
pub fn modexp_comm_vs_comp(
    adder: &Circuit,
    schedule_slots: u64,
    modexp: &ModexpSchedule,
    code: CodeId,
    perimeter_channels: u32,
    catalog: &CodeCatalog,
    teleport_time: f64,
) -> Result<CommReport> {
    if perimeter_channels < 1 {
        return Err(Error::InvalidParameter {
            what: String::from("perimeter needs at least one channel"),
        });
    }
    let metrics = catalog.get(code, 2)?;
    let slot_time = metrics.transversal_gate_time + catalog.ec_time(code, 2)?;
    let comp_per_adder = schedule_slots as f64 * slot_time;
    let toffolis = adder.count_kind(GateKind::Toffoli) as u64;
    // Three qubits to memory and three back, per Toffoli.
    let teleports_per_adder = (toffolis * 6) as f64;
    let comm_per_adder = teleports_per_adder * teleport_time / perimeter_channels as f64;
    let adders = modexp.adder_count as f64;
    let comm = adders * comm_per_adder;
    let comp = adders * comp_per_adder;
    Ok(CommReport {
        total_comm_time: comm,
        total_comp_time: comp,
        phases: alloc::vec![
            (String::from("toffoli-staging"), comm),
        ],
    })
}

/// Communication and computation totals for an `n`-qubit QFT on the mesh.
///
/// Computation is the `n(n-1)/2` two-qubit gates, each followed by error
/// correction. Communication replaces a routed all-to-all personalized
/// exchange with its analytic lower-bound shape: the share of pair
/// exchanges that leave their block is throughput-limited by the bisection
/// channels, plus the latency of the farthest pair. On a one-block mesh
/// every qubit is co-located and communication vanishes.
pub fn qft_comm_vs_comp(
    n: u32,
    mesh: &MeshSpec,
    code: CodeId,
    catalog: &CodeCatalog,
) -> Result<CommReport> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            what: String::from("qft comparison needs at least two qubits"),
        });
    }
    let metrics = catalog.get(code, 2)?;
    let gate_time = metrics.transversal_gate_time + catalog.ec_time(code, 2)?;
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    let comp = pairs * gate_time;
    let blocks = mesh.blocks() as f64;
    let inter_block = pairs * (1.0 - 1.0 / blocks);
    // Half of the inter-block exchanges cross the central cut.
    let bisection = inter_block / 2.0 * mesh.teleport_time / mesh.bisection_channels() as f64;
    let latency = mesh.max_hops() as f64 * mesh.teleport_time;
    Ok(CommReport {
        total_comm_time: bisection + latency,
        total_comp_time: comp,
        phases: alloc::vec![
            (String::from("bisection"), bisection),
            (String::from("farthest-pair latency"), latency),
        ],
    })
}

/// Worst-case simultaneous traffic out of one compute block: all of its
/// data qubits at once.
pub fn worst_case_block_traffic(_code: CodeId) -> u32 {
    BLOCK_DATA
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecc::CodeCatalog;
    use crate::generators::{gen_cla_adder, gen_modexp_schedule};
    use crate::schedule::schedule;

    fn report(channels: u32, teleport: f64) -> CommReport {
        let (adder, _) = gen_cla_adder(16).unwrap();
        let slots = schedule(&adder, None).makespan;
        let modexp = gen_modexp_schedule(16).unwrap();
        modexp_comm_vs_comp(
            &adder,
            slots,
            &modexp,
            CodeId::BaconShor913,
            channels,
            &CodeCatalog::default_catalog(),
            teleport,
        )
        .unwrap()
    }

    #[test]
    fn modexp_communication_overlaps() {
        let r = report(2, 0.1);
        assert!(r.total_comm_time < r.total_comp_time);
    }

    #[test]
    fn zero_teleport_time_means_zero_comm() {
        let r = report(2, 0.0);
        assert_eq!(r.total_comm_time, 0.0);
    }

    #[test]
    fn halving_channels_doubles_transfer_time() {
        let two = report(2, 0.1);
        let one = report(1, 0.1);
        assert!((one.total_comm_time - 2.0 * two.total_comm_time).abs() < 1e-9);
    }

    #[test]
    fn qft_trivial_mesh_is_local() {
        let mesh = MeshSpec::new(1, 1, 2, 0.1).unwrap();
        let r = qft_comm_vs_comp(2, &mesh, CodeId::BaconShor913, &CodeCatalog::default_catalog())
            .unwrap();
        assert_eq!(r.total_comm_time, 0.0);
        assert!(r.total_comp_time > 0.0);
    }

    #[test]
    fn qft_ratio_stays_in_band() {
        let mesh = MeshSpec::new(10, 10, 2, 0.1).unwrap();
        let catalog = CodeCatalog::default_catalog();
        let mut ratios = alloc::vec::Vec::new();
        for n in [64u32, 128, 256, 512, 1024] {
            let r = qft_comm_vs_comp(n, &mesh, CodeId::BaconShor913, &catalog).unwrap();
            assert!(r.total_comm_time < r.total_comp_time, "n={n}");
            ratios.push(r.total_comm_time / r.total_comp_time);
        }
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let var = ratios.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / ratios.len() as f64;
        let sd = var.sqrt();
        assert!(sd <= 0.25 * mean, "sd {sd} vs mean {mean}");
    }

    #[test]
    fn block_capacity_is_worst_case_traffic() {
        for code in CodeId::ALL {
            assert_eq!(worst_case_block_traffic(code), 9);
            assert_eq!(worst_case_block_traffic(code), BLOCK_DATA);
        }
    }

    #[test]
    fn channel_occupancy_is_conserved() {
        // Total transfer work is channel-count invariant.
        let w1 = report(1, 0.1).total_comm_time * 1.0;
        let w4 = report(4, 0.1).total_comm_time * 4.0;
        assert!((w1 - w4).abs() < 1e-6);
    }
}
