//! Resource-constrained list scheduling.
//!
//! Time is measured in logical gate slots: a one- or two-qubit gate (and a
//! measurement) takes one slot, a Toffoli occupies its executor for
//! [`TOFFOLI_CNOT_ROUNDS`](crate::ecc::TOFFOLI_CNOT_ROUNDS) consecutive
//! slots, matching the fifteen-CNOT decomposition the cost model prices it
//! at.
//!
//! Two resource views are provided:
//!
//! - [`schedule`] limits how many gates may *start* per slot (issue
//!   bandwidth). Each slot packs up to `limit` ready gates, lowest gate
//!   index first; a gate is ready when all of its predecessors in the
//!   dependency graph have completed.
//! - [`utilization`] assigns gates to a fixed set of compute blocks, each
//!   executing one gate at a time (greedy earliest-available block), and
//!   reports how busy the blocks are.
//!
//! Both are deterministic: ties always break toward the lowest gate index,
//! then the lowest block id.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::circuit::{Circuit, DependencyGraph, GateKind};
use crate::ecc::TOFFOLI_CNOT_ROUNDS;

/// Duration of one logical gate in scheduler slots.
pub fn gate_duration_slots(kind: GateKind) -> u64 {
    match kind {
        GateKind::Toffoli => TOFFOLI_CNOT_ROUNDS as u64,
        _ => 1,
    }
}

/// Sum of all gate durations: the serial-execution makespan.
pub fn total_work_slots(circuit: &Circuit) -> u64 {
    circuit
        .gates
        .iter()
        .map(|g| gate_duration_slots(g.kind))
        .sum()
}

/// A computed schedule: per-gate start slots plus block assignments.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Schedule {
    /// Gates that may start per slot; `None` means unlimited.
    pub resource_limit: Option<u32>,
    pub start_slot: Vec<u64>,
    pub makespan: u64,
    /// Compute location executing each gate.
    pub block_assignment: Vec<u32>,
    /// Number of distinct locations the schedule occupied.
    pub blocks_used: u32,
}

impl Schedule {
    pub fn finish_slot(&self, circuit: &Circuit, gate: usize) -> u64 {
        self.start_slot[gate] + gate_duration_slots(circuit.gates[gate].kind)
    }

    /// Gate indices grouped by start slot, in slot order — the cycle view.
    pub fn cycles(&self) -> Vec<(u64, Vec<u32>)> {
        let mut by_slot: Vec<(u64, u32)> = self
            .start_slot
            .iter()
            .enumerate()
            .map(|(g, &s)| (s, g as u32))
            .collect();
        by_slot.sort_unstable();
        let mut out: Vec<(u64, Vec<u32>)> = Vec::new();
        for (slot, gate) in by_slot {
            match out.last_mut() {
                Some((s, gates)) if *s == slot => gates.push(gate),
                _ => out.push((slot, alloc::vec![gate])),
            }
        }
        out
    }
}

/// Greedy issue-limited list schedule. Each slot starts up to `limit` ready
/// gates (every predecessor finished), lowest index first. Running gates
/// occupy their location until their duration elapses; the makespan is the
/// slot at which the last gate completes. For circuits of unit-duration
/// gates, `limit = 1` serializes fully and the makespan equals the gate
/// count.
pub fn schedule(circuit: &Circuit, limit: Option<u32>) -> Schedule {
    let dag = DependencyGraph::build(circuit);
    schedule_with_dag(circuit, &dag, limit)
}

pub fn schedule_with_dag(circuit: &Circuit, dag: &DependencyGraph, limit: Option<u32>) -> Schedule {
    let n = circuit.gates.len();
    let limit = limit.unwrap_or(u32::MAX).max(1);
    let mut pending = alloc::vec![0u32; n];
    let mut ready: BTreeSet<u32> = BTreeSet::new();
    for g in 0..n {
        pending[g] = dag.predecessor_count(g);
        if pending[g] == 0 {
            ready.insert(g as u32);
        }
    }
    let mut start_slot = alloc::vec![0u64; n];
    let mut block_assignment = alloc::vec![0u32; n];
    // (finish slot, gate) min-heap of running gates.
    let mut running: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
    let mut free_blocks: BTreeSet<u32> = BTreeSet::new();
    let mut next_block = 0u32;
    let mut slot = 0u64;
    let mut done = 0usize;
    let mut makespan = 0u64;

    while done < n {
        // Retire gates finishing at or before this slot.
        while let Some(&Reverse((finish, gate))) = running.peek() {
            if finish > slot {
                break;
            }
            running.pop();
            done += 1;
            free_blocks.insert(block_assignment[gate as usize]);
            for &succ in dag.successors(gate as usize) {
                pending[succ as usize] -= 1;
                if pending[succ as usize] == 0 {
                    ready.insert(succ);
                }
            }
        }
        // Issue up to `limit` ready gates this slot.
        let mut issued = 0u32;
        while issued < limit {
            let Some(&gate) = ready.iter().next() else { break };
            ready.remove(&gate);
            let block = match free_blocks.iter().next() {
                Some(&b) => {
                    free_blocks.remove(&b);
                    b
                }
                None => {
                    let b = next_block;
                    next_block += 1;
                    b
                }
            };
            let dur = gate_duration_slots(circuit.gates[gate as usize].kind);
            start_slot[gate as usize] = slot;
            block_assignment[gate as usize] = block;
            makespan = makespan.max(slot + dur);
            running.push(Reverse((slot + dur, gate)));
            issued += 1;
        }
        if done == n {
            break;
        }
        // Advance: one slot if issue bandwidth was the binding constraint,
        // otherwise jump to the next completion.
        if !ready.is_empty() {
            slot += 1;
        } else if let Some(&Reverse((finish, _))) = running.peek() {
            slot = finish;
        } else {
            break; // unreachable for valid DAGs
        }
    }
    Schedule {
        resource_limit: if limit == u32::MAX { None } else { Some(limit) },
        start_slot,
        makespan,
        block_assignment,
        blocks_used: next_block,
    }
}

/// Makespan as a function of the issue limit, evaluated from 1 upward until
/// it reaches the unlimited-resource makespan.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParallelismProfile {
    /// (limit, makespan) pairs for limits `1..=saturation_limit`.
    pub entries: Vec<(u32, u64)>,
    /// Smallest limit whose makespan equals the unlimited makespan.
    pub saturation_limit: u32,
    pub unlimited_makespan: u64,
}

pub fn parallelism_profile(circuit: &Circuit) -> ParallelismProfile {
    let dag = DependencyGraph::build(circuit);
    let unlimited = schedule_with_dag(circuit, &dag, None).makespan;
    let mut entries = Vec::new();
    let mut saturation = circuit.gate_count().max(1) as u32;
    for limit in 1..=saturation {
        let makespan = schedule_with_dag(circuit, &dag, Some(limit)).makespan;
        entries.push((limit, makespan));
        if makespan == unlimited {
            saturation = limit;
            break;
        }
    }
    ParallelismProfile {
        entries,
        saturation_limit: saturation,
        unlimited_makespan: unlimited,
    }
}

/// One point of the block-utilization curve.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UtilizationPoint {
    pub blocks: u32,
    pub utilization: f64,
    pub makespan: u64,
    pub busy_block_slots: u64,
}

/// Utilization as the number of compute blocks grows.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UtilizationProfile {
    pub points: Vec<UtilizationPoint>,
}

/// Schedules the circuit onto `blocks` compute blocks, each executing one
/// gate at a time, and reports busy-time utilization:
/// `busy block-slots / (blocks x makespan)`. A block is busy for the full
/// duration of each gate it executes. `block_capacity` is the block's data
/// qubit capacity and must admit a three-operand gate.
pub fn utilization(circuit: &Circuit, blocks: u32, block_capacity: u32) -> UtilizationPoint {
    assert!(blocks >= 1, "need at least one compute block");
    assert!(block_capacity >= 3, "blocks must hold a three-operand gate");
    let dag = DependencyGraph::build(circuit);
    utilization_with_dag(circuit, &dag, blocks)
}

fn utilization_with_dag(circuit: &Circuit, dag: &DependencyGraph, blocks: u32) -> UtilizationPoint {
    let n = circuit.gates.len();
    let mut pending = alloc::vec![0u32; n];
    let mut ready: BTreeSet<u32> = BTreeSet::new();
    for g in 0..n {
        pending[g] = dag.predecessor_count(g);
        if pending[g] == 0 {
            ready.insert(g as u32);
        }
    }
    let mut running: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
    let mut free: BTreeSet<u32> = (0..blocks).collect();
    let mut busy_block_slots = 0u64;
    let mut makespan = 0u64;
    let mut time = 0u64;
    let mut done = 0usize;
    let mut block_of = alloc::vec![0u32; n];

    while done < n {
        while let Some(&Reverse((finish, gate))) = running.peek() {
            if finish > time {
                break;
            }
            running.pop();
            done += 1;
            free.insert(block_of[gate as usize]);
            for &succ in dag.successors(gate as usize) {
                pending[succ as usize] -= 1;
                if pending[succ as usize] == 0 {
                    ready.insert(succ);
                }
            }
        }
        while !free.is_empty() {
            let Some(&gate) = ready.iter().next() else { break };
            ready.remove(&gate);
            let &block = free.iter().next().unwrap();
            free.remove(&block);
            block_of[gate as usize] = block;
            let dur = gate_duration_slots(circuit.gates[gate as usize].kind);
            busy_block_slots += dur;
            makespan = makespan.max(time + dur);
            running.push(Reverse((time + dur, gate)));
        }
        if done == n {
            break;
        }
        match running.peek() {
            Some(&Reverse((finish, _))) => time = finish,
            None => break,
        }
    }
    let utilization = if makespan == 0 {
        0.0
    } else {
        busy_block_slots as f64 / (blocks as f64 * makespan as f64)
    };
    UtilizationPoint {
        blocks,
        utilization,
        makespan,
        busy_block_slots,
    }
}

pub fn utilization_profile(
    circuit: &Circuit,
    block_counts: &[u32],
    block_capacity: u32,
) -> UtilizationProfile {
    assert!(block_capacity >= 3, "blocks must hold a three-operand gate");
    let dag = DependencyGraph::build(circuit);
    UtilizationProfile {
        points: block_counts
            .iter()
            .map(|&b| {
                assert!(b >= 1);
                utilization_with_dag(circuit, &dag, b)
            })
            .collect(),
    }
}

/// Checks a schedule against the circuit it was built from: precedence
/// respected, no two concurrently running gates share an operand or a
/// block, and per-slot issue counts stay within the limit. Used by tests
/// and the trace tooling.
pub fn verify_schedule(circuit: &Circuit, sched: &Schedule) -> Result<(), alloc::string::String> {
    let dag = DependencyGraph::build(circuit);
    for (from, to) in dag.edges() {
        let finish = sched.finish_slot(circuit, from as usize);
        if sched.start_slot[to as usize] < finish {
            return Err(alloc::format!(
                "gate {to} starts at {} before predecessor {from} finishes at {finish}",
                sched.start_slot[to as usize]
            ));
        }
    }
    // Issue-limit accounting.
    if let Some(limit) = sched.resource_limit {
        let mut counts: alloc::collections::BTreeMap<u64, u32> = alloc::collections::BTreeMap::new();
        for &s in &sched.start_slot {
            *counts.entry(s).or_insert(0) += 1;
        }
        if let Some((slot, c)) = counts.iter().find(|&(_, &c)| c > limit) {
            return Err(alloc::format!("slot {slot} issues {c} gates, limit {limit}"));
        }
    }
    // Block exclusivity implies operand exclusivity here, but check both.
    let mut intervals: Vec<(u32, u64, u64, usize)> = Vec::new();
    for g in 0..circuit.gates.len() {
        intervals.push((
            sched.block_assignment[g],
            sched.start_slot[g],
            sched.finish_slot(circuit, g),
            g,
        ));
    }
    intervals.sort_unstable();
    for w in intervals.windows(2) {
        let (b0, _, f0, g0) = w[0];
        let (b1, s1, _, g1) = w[1];
        if b0 == b1 && s1 < f0 {
            return Err(alloc::format!("gates {g0} and {g1} overlap on block {b0}"));
        }
    }
    Ok(())
}

/// Linearizes a schedule back into program order (by start slot, then block)
/// — used to confirm a schedule is a valid execution of its circuit.
pub fn replay_order(sched: &Schedule) -> Vec<u32> {
    let mut order: Vec<u32> = (0..sched.start_slot.len() as u32).collect();
    order.sort_by_key(|&g| (sched.start_slot[g as usize], sched.block_assignment[g as usize]));
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{simulate_classical, Gate};

    fn chain(n: u32) -> Circuit {
        // n dependent CNOTs threaded through shared qubits.
        let mut c = Circuit::new(n + 1, "chain");
        for i in 0..n {
            c.push(Gate::cnot(i, i + 1));
        }
        c
    }

    #[test]
    fn serial_limit_makespan_is_gate_count() {
        // Unit-duration circuit: full serialization costs one slot per gate.
        let mut c = Circuit::new(8, "pairs");
        for i in 0..4 {
            c.push(Gate::cnot(2 * i, 2 * i + 1));
        }
        let s = schedule(&c, Some(1));
        assert_eq!(s.makespan, c.gate_count() as u64);
        verify_schedule(&c, &s).unwrap();
    }

    #[test]
    fn independent_gates_run_together() {
        let mut c = Circuit::new(4, "two");
        c.push(Gate::cnot(0, 1));
        c.push(Gate::cnot(2, 3));
        let s = schedule(&c, None);
        assert_eq!(s.makespan, 1);
        assert_eq!(s.blocks_used, 2);
        verify_schedule(&c, &s).unwrap();
    }

    #[test]
    fn chain_has_no_parallelism() {
        let c = chain(10);
        let profile = parallelism_profile(&c);
        assert_eq!(profile.saturation_limit, 1);
        for (_, makespan) in &profile.entries {
            assert_eq!(*makespan, 10);
        }
    }

    #[test]
    fn toffoli_occupies_fifteen_slots() {
        let mut c = Circuit::new(3, "t");
        c.push(Gate::toffoli(0, 1, 2));
        c.push(Gate::x(2));
        let s = schedule(&c, None);
        assert_eq!(s.start_slot[1], 15);
        assert_eq!(s.makespan, 16);
    }

    #[test]
    fn single_block_utilization_is_one() {
        let mut c = Circuit::new(6, "u");
        c.push(Gate::toffoli(0, 1, 2));
        c.push(Gate::cnot(3, 4));
        c.push(Gate::x(5));
        let p = utilization(&c, 1, 9);
        assert_eq!(p.utilization, 1.0);
        assert_eq!(p.makespan, total_work_slots(&c));
        // Accounting identity: utilization x blocks x makespan = busy slots.
        assert_eq!(
            (p.utilization * 1.0 * p.makespan as f64).round() as u64,
            p.busy_block_slots
        );
    }

    #[test]
    fn replay_preserves_semantics() {
        let (c, layout) = crate::generators::gen_cla_adder(5).unwrap();
        let s = schedule(&c, Some(4));
        verify_schedule(&c, &s).unwrap();
        let order = replay_order(&s);
        let mut permuted = Circuit::new(c.qubit_count, "replay");
        for &g in &order {
            permuted.push(c.gates[g as usize]);
        }
        let mut input = alloc::vec![false; c.qubit_count as usize];
        // 13 + 9 = 22 mod 32
        for i in 0..5 {
            input[layout.a(i) as usize] = (13u64 >> i) & 1 == 1;
            input[layout.b(i) as usize] = (9u64 >> i) & 1 == 1;
        }
        let a = simulate_classical(&c, &input).unwrap();
        let b = simulate_classical(&permuted, &input).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn makespan_monotone_in_resources() {
        let (c, _) = crate::generators::gen_cla_adder(16).unwrap();
        let mut prev = u64::MAX;
        for limit in 1..=20 {
            let m = schedule(&c, Some(limit)).makespan;
            assert!(m <= prev, "limit {limit}: {m} > {prev}");
            prev = m;
        }
        let mut prev = u64::MAX;
        for blocks in 1..=12 {
            let m = utilization(&c, blocks, 9).makespan;
            assert!(m <= prev, "blocks {blocks}: {m} > {prev}");
            prev = m;
        }
    }
}
