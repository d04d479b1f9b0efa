//! Quantum memory hierarchy: code-transfer latencies, an LRU cache simulator
//! with naive and lookahead instruction fetch, the level-1 adder speedup
//! model, and mixed-level execution timing under a fidelity budget.
//!
//! The cache simulator models a level-2 memory feeding a level-1 cache and
//! compute region. Operands must be cache-resident for a gate to execute; a
//! gate whose operands are all resident is a hit, anything else is a miss
//! and triggers memory-to-cache transfers over a bounded pool of transfer
//! channels (`par_xfer`), with least-recently-used eviction and write-back
//! of the victim on eviction. The compute region executes one gate at a
//! time; transfers overlap compute. Everything is deterministic: ties break
//! by gate index, then channel id.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::circuit::{Circuit, DependencyGraph, GateKind};
use crate::ecc::{CodeCatalog, CodeId, CodeLevel, GateClass};
use crate::error::{Error, Result};

/// Transfer-network latency between encodings, seconds. Moving a logical
/// qubit between codes or levels teleports it through an encoded ancilla
/// pair; the latency depends on both endpoints and is not symmetric.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransferTable {
    codes: [CodeLevel; 4],
    /// `latency[src][dst]`, seconds.
    latency: [[f64; 4]; 4],
}

impl TransferTable {
    /// The calibrated transfer network for both codes at levels 1 and 2.
    pub fn default_table() -> TransferTable {
        TransferTable {
            codes: [
                CodeLevel::new(CodeId::Steane713, 1),
                CodeLevel::new(CodeId::Steane713, 2),
                CodeLevel::new(CodeId::BaconShor913, 1),
                CodeLevel::new(CodeId::BaconShor913, 2),
            ],
            latency: [
                [0.0, 0.6, 0.02, 0.2],
                [1.3, 0.0, 1.3, 1.5],
                [0.01, 0.5, 0.0, 0.1],
                [0.4, 0.9, 0.4, 0.0],
            ],
        }
    }

    pub fn from_entries(entries: &[(CodeLevel, CodeLevel, f64)]) -> Result<TransferTable> {
        let mut table = TransferTable::default_table();
        for &(src, dst, secs) in entries {
            let i = table.index(src)?;
            let j = table.index(dst)?;
            table.latency[i][j] = secs;
        }
        table.validate()?;
        Ok(table)
    }

    fn index(&self, cl: CodeLevel) -> Result<usize> {
        self.codes
            .iter()
            .position(|&c| c == cl)
            .ok_or_else(|| Error::MissingMetrics {
                what: alloc::format!("transfer endpoint {cl}"),
            })
    }

    pub fn latency(&self, src: CodeLevel, dst: CodeLevel) -> Result<f64> {
        Ok(self.latency[self.index(src)?][self.index(dst)?])
    }

    /// Fetch-plus-writeback latency between two encodings.
    pub fn round_trip(&self, from: CodeLevel, to: CodeLevel) -> Result<f64> {
        Ok(self.latency(from, to)? + self.latency(to, from)?)
    }

    pub fn endpoints(&self) -> &[CodeLevel; 4] {
        &self.codes
    }

    pub fn validate(&self) -> Result<()> {
        for i in 0..4 {
            if self.latency[i][i] != 0.0 {
                return Err(Error::InvalidParameter {
                    what: alloc::format!("transfer {} -> itself must be 0", self.codes[i]),
                });
            }
            for j in 0..4 {
                if i != j && self.latency[i][j] <= 0.0 {
                    return Err(Error::InvalidParameter {
                        what: alloc::format!(
                            "transfer {} -> {} must be positive",
                            self.codes[i],
                            self.codes[j]
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Shorthand for [`TransferTable::latency`].
pub fn transfer_latency(table: &TransferTable, src: CodeLevel, dst: CodeLevel) -> Result<f64> {
    table.latency(src, dst)
}

/// Instruction fetch policy for the cache simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FetchPolicy {
    /// Issue gates in program order.
    Naive,
    /// Among ready gates, pick the one most of whose operands are already
    /// resident; break ties by fewest transfers needed, then gate index.
    /// The fetch window is the whole program.
    Optimized,
}

impl core::fmt::Display for FetchPolicy {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            FetchPolicy::Naive => "naive",
            FetchPolicy::Optimized => "optimized",
        })
    }
}

impl core::str::FromStr for FetchPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(FetchPolicy::Naive),
            "optimized" => Ok(FetchPolicy::Optimized),
            other => Err(Error::InvalidParameter {
                what: alloc::format!("unknown fetch policy `{other}`"),
            }),
        }
    }
}

/// LRU-managed set of cache-resident qubits.
#[derive(Debug, Clone)]
pub struct CacheState {
    pub capacity: u32,
    /// Resident qubits with their last-use stamps.
    resident: BTreeMap<u32, u64>,
    clock: u64,
}

impl CacheState {
    pub fn new(capacity: u32) -> CacheState {
        CacheState {
            capacity,
            resident: BTreeMap::new(),
            clock: 0,
        }
    }

    pub fn contains(&self, qubit: u32) -> bool {
        self.resident.contains_key(&qubit)
    }

    pub fn len(&self) -> usize {
        self.resident.len()
    }

    pub fn is_empty(&self) -> bool {
        self.resident.is_empty()
    }

    pub fn touch(&mut self, qubit: u32) {
        self.clock += 1;
        self.resident.insert(qubit, self.clock);
    }

    /// Least-recently-used resident qubit outside `pinned`; lowest qubit id
    /// on stamp ties.
    pub fn lru_victim(&self, pinned: &[u32]) -> Option<u32> {
        self.resident
            .iter()
            .filter(|(q, _)| !pinned.contains(q))
            .min_by_key(|(q, stamp)| (**stamp, **q))
            .map(|(q, _)| *q)
    }

    pub fn evict(&mut self, qubit: u32) {
        self.resident.remove(&qubit);
    }
}

/// Cache simulator configuration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CacheConfig {
    /// Logical qubits the cache can hold.
    pub cache_capacity: u32,
    /// Logical qubits in the compute region (reference for cache sizing).
    pub compute_capacity: u32,
    pub policy: FetchPolicy,
    /// Concurrent memory<->cache transfer channels.
    pub par_xfer: u32,
    /// Memory encoding (slow, reliable).
    pub memory: CodeLevel,
    /// Cache and compute encoding (fast).
    pub cache: CodeLevel,
}

impl CacheConfig {
    /// Default hierarchy: memory at level 2, cache and compute at level 1,
    /// cache sized at twice the compute region.
    pub fn hierarchy(code: CodeId, compute_capacity: u32, policy: FetchPolicy) -> CacheConfig {
        CacheConfig {
            cache_capacity: 2 * compute_capacity,
            compute_capacity,
            policy,
            par_xfer: 10,
            memory: CodeLevel::new(code, 2),
            cache: CodeLevel::new(code, 1),
        }
    }
}

/// What happened during one cache-simulation run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HierarchyRun {
    pub hit_rate: f64,
    pub hits: u64,
    pub misses: u64,
    /// Fetch plus write-back transfers.
    pub transfers: u64,
    /// Compute idle time waiting on transfers, seconds.
    pub stall_time: f64,
    /// Completion time of the last gate, seconds.
    pub exec_time: f64,
    /// Sum of gate execution times alone: the no-stall lower bound.
    pub compute_time: f64,
    pub fetch_policy: FetchPolicy,
    pub par_xfer: u32,
}

/// One entry of the transfer trace, for debugging and occupancy validation.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransferEvent {
    /// Channel the transfer occupied.
    pub channel: u32,
    pub start: f64,
    pub end: f64,
    pub qubit: u32,
    /// True for cache-to-memory write-backs, false for fetches.
    pub writeback: bool,
    /// Gate that triggered the transfer.
    pub gate: u32,
}

/// Picks the next gate under the lookahead policy: most resident operands,
/// then fewest transfers needed, then lowest index. `ready` must be sorted
/// ascending (it is scanned in order, so index ties resolve to the lowest).
pub fn optimized_fetch(circuit: &Circuit, cache: &CacheState, ready: &[u32]) -> Option<u32> {
    let mut best: Option<(usize, usize, u32)> = None; // (resident, -missing via cmp, gate)
    for &g in ready {
        let ops = circuit.gates[g as usize].operands();
        let resident = ops.iter().filter(|&&q| cache.contains(q)).count();
        let missing = ops.len() - resident;
        let better = match best {
            None => true,
            Some((r, m, _)) => resident > r || (resident == r && missing < m),
        };
        if better {
            best = Some((resident, missing, g));
        }
    }
    best.map(|(_, _, g)| g)
}

/// Runs a circuit through the memory hierarchy.
///
/// Operands are staged into the cache before their gate executes. The cache
/// starts empty, so first touches are compulsory misses. On a full cache the
/// least-recently-used qubit not needed by the current gate is evicted and
/// written back to memory; both fetches and write-backs occupy one of
/// `par_xfer` transfer channels for the full table latency. Gate times come
/// from the cache-level encoding. Returns the run summary and the transfer
/// trace.
pub fn simulate_cache(
    circuit: &Circuit,
    config: &CacheConfig,
    catalog: &CodeCatalog,
    table: &TransferTable,
) -> Result<(HierarchyRun, Vec<TransferEvent>)> {
    if config.cache_capacity < 3 || config.compute_capacity < 3 {
        return Err(Error::CapacityTooSmall {
            capacity: config.cache_capacity.min(config.compute_capacity),
            minimum: 3,
        });
    }
    if config.par_xfer < 1 {
        return Err(Error::InvalidParameter {
            what: String::from("par_xfer must be at least 1"),
        });
    }
    circuit.validate()?;
    let fetch_latency = table.latency(config.memory, config.cache)?;
    let writeback_latency = table.latency(config.cache, config.memory)?;
    let gate_time = |kind: GateKind| -> Result<f64> {
        let class = match kind {
            GateKind::Cnot => GateClass::Cnot,
            GateKind::Toffoli => GateClass::Toffoli,
            GateKind::Measure => GateClass::Measure,
            _ => GateClass::OneQubit,
        };
        catalog.logical_gate_time(config.cache.code, config.cache.level, class)
    };

    let dag = DependencyGraph::build(circuit);
    let n = circuit.gates.len();
    let mut pending: Vec<u32> = (0..n).map(|g| dag.predecessor_count(g)).collect();
    let mut ready: Vec<u32> = (0..n as u32).filter(|&g| pending[g as usize] == 0).collect();
    ready.sort_unstable();

    let mut cache = CacheState::new(config.cache_capacity);
    // Transfer channels as next-free times; index = channel id.
    let mut channel_free: Vec<f64> = alloc::vec![0.0; config.par_xfer as usize];
    let mut compute_free = 0.0f64;
    let mut hits = 0u64;
    let mut misses = 0u64;
    let mut transfers = 0u64;
    let mut stall = 0.0f64;
    let mut compute_time = 0.0f64;
    let mut trace: Vec<TransferEvent> = Vec::new();
    let mut next_program = 0u32; // naive cursor

    for _ in 0..n {
        let gate = match config.policy {
            FetchPolicy::Naive => {
                // Program order; earlier gates have all dependencies earlier.
                let g = next_program;
                debug_assert!(pending[g as usize] == 0, "program order broke readiness");
                next_program += 1;
                g
            }
            FetchPolicy::Optimized => {
                let g = optimized_fetch(circuit, &cache, &ready).expect("ready set exhausted");
                g
            }
        };
        let pos = ready.binary_search(&gate).expect("chosen gate not ready");
        ready.remove(pos);

        let ops = circuit.gates[gate as usize].operands();
        let missing: Vec<u32> = ops.iter().copied().filter(|&q| !cache.contains(q)).collect();
        let mut operands_ready = 0.0f64;
        if missing.is_empty() {
            hits += 1;
        } else {
            misses += 1;
            for &q in &missing {
                // Make room, writing the victim back through a channel.
                if cache.len() as u32 >= config.cache_capacity {
                    let victim = cache.lru_victim(ops).expect("cache capacity below arity");
                    cache.evict(victim);
                    let ch = earliest_channel(&channel_free);
                    let start = channel_free[ch];
                    channel_free[ch] = start + writeback_latency;
                    transfers += 1;
                    trace.push(TransferEvent {
                        channel: ch as u32,
                        start,
                        end: start + writeback_latency,
                        qubit: victim,
                        writeback: true,
                        gate,
                    });
                }
                let ch = earliest_channel(&channel_free);
                let start = channel_free[ch];
                let end = start + fetch_latency;
                channel_free[ch] = end;
                transfers += 1;
                trace.push(TransferEvent {
                    channel: ch as u32,
                    start,
                    end,
                    qubit: q,
                    writeback: false,
                    gate,
                });
                cache.touch(q);
                operands_ready = operands_ready.max(end);
            }
        }
        for &q in ops {
            cache.touch(q);
        }
        let start = compute_free.max(operands_ready);
        stall += start - compute_free;
        let dur = gate_time(circuit.gates[gate as usize].kind)?;
        compute_time += dur;
        compute_free = start + dur;
        for &succ in dag.successors(gate as usize) {
            pending[succ as usize] -= 1;
            if pending[succ as usize] == 0 {
                let at = ready.binary_search(&succ).unwrap_err();
                ready.insert(at, succ);
            }
        }
    }
    let total = hits + misses;
    let run = HierarchyRun {
        hit_rate: if total == 0 { 0.0 } else { hits as f64 / total as f64 },
        hits,
        misses,
        transfers,
        stall_time: stall,
        exec_time: compute_free,
        compute_time,
        fetch_policy: config.policy,
        par_xfer: config.par_xfer,
    };
    Ok((run, trace))
}

fn earliest_channel(free: &[f64]) -> usize {
    let mut best = 0;
    for (i, &t) in free.iter().enumerate().skip(1) {
        if t < free[best] {
            best = i;
        }
    }
    best
}

/// Validates a transfer trace: per channel, occupancy intervals must not
/// overlap, and the number of concurrently active transfers must never
/// exceed `par_xfer`.
pub fn validate_trace(trace: &[TransferEvent], par_xfer: u32) -> core::result::Result<(), String> {
    let mut by_channel: BTreeMap<u32, Vec<(f64, f64)>> = BTreeMap::new();
    for ev in trace {
        if ev.channel >= par_xfer {
            return Err(alloc::format!("channel {} out of range", ev.channel));
        }
        by_channel.entry(ev.channel).or_default().push((ev.start, ev.end));
    }
    for (ch, intervals) in &mut by_channel {
        intervals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in intervals.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(alloc::format!("channel {ch} intervals overlap"));
            }
        }
    }
    // Sweep for global concurrency.
    let mut edges: Vec<(f64, i32)> = Vec::with_capacity(trace.len() * 2);
    for ev in trace {
        if ev.end > ev.start {
            edges.push((ev.start, 1));
            edges.push((ev.end, -1));
        }
    }
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut active = 0i32;
    for (_, d) in edges {
        active += d;
        if active > par_xfer as i32 {
            return Err(alloc::format!("{active} concurrent transfers, limit {par_xfer}"));
        }
    }
    Ok(())
}

/// Calibration constants for the level-1 adder speedup model.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct L1Calibration {
    /// Memory round trips staged per addition (fitted per code and size).
    pub transfers_per_adder: f64,
    /// Multiplier on the level-1 per-slot time covering staging stalls the
    /// slot model does not see (fitted per code).
    pub l1_stall_factor: f64,
}

/// Level-1 speedup accounting for one adder.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpeedupReport {
    /// `t_compute_l2 / (t_compute_l1 + transfer_time / par_xfer)`.
    pub l1_speedup: f64,
    pub t_compute_l1: f64,
    pub t_compute_l2: f64,
    /// Serialized transfer work for one adder, seconds.
    pub transfer_time: f64,
    /// Round-trip latency per staged qubit.
    pub round_trip: f64,
    /// Supremum of the speedup as transfer channels grow without bound.
    pub channel_limit_bound: f64,
}

/// Speedup of running one adder in the level-1 compute region against the
/// same adder at level 2.
///
/// Per-adder compute time at each level is the scheduled slot count times
/// the per-slot (transversal gate + EC) time of that level; the level-1 side
/// additionally pays `transfers_per_adder` memory round trips spread over
/// `par_xfer` channels, and carries the calibrated stall factor on its slot
/// time. `1/speedup` is affine in `1/par_xfer`; the intercept is the
/// level-1:level-2 compute-time ratio.
pub fn l1_adder_speedup(
    adder_slots: u64,
    code: CodeId,
    par_xfer: u32,
    catalog: &CodeCatalog,
    table: &TransferTable,
    calib: &L1Calibration,
) -> Result<SpeedupReport> {
    if par_xfer < 1 {
        return Err(Error::InvalidParameter {
            what: String::from("par_xfer must be at least 1"),
        });
    }
    let slot1 = catalog.get(code, 1)?.transversal_gate_time + catalog.ec_time(code, 1)?;
    let slot2 = catalog.get(code, 2)?.transversal_gate_time + catalog.ec_time(code, 2)?;
    let t_c1 = adder_slots as f64 * slot1 * calib.l1_stall_factor;
    let t_c2 = adder_slots as f64 * slot2;
    let round_trip = table.round_trip(CodeLevel::new(code, 2), CodeLevel::new(code, 1))?;
    let transfer_time = calib.transfers_per_adder * round_trip;
    let t_l1_total = t_c1 + transfer_time / par_xfer as f64;
    Ok(SpeedupReport {
        l1_speedup: t_c2 / t_l1_total,
        t_compute_l1: t_c1,
        t_compute_l2: t_c2,
        transfer_time,
        round_trip,
        channel_limit_bound: t_c2 / t_c1,
    })
}

/// Throughput of two concurrent compute pipelines sharing an addition
/// stream: a share `l1_work_share` of the additions runs in the level-1
/// region, the rest at level 2. Speedups are relative to the same baseline
/// adder time; the busier pipeline sets the pace.
pub fn pipelined_adder_speedup(l2_speedup: f64, l1_speedup: f64, l1_work_share: f64) -> f64 {
    let t2 = 1.0 / l2_speedup;
    let t1 = t2 / l1_speedup;
    let per_adder = (l1_work_share * t1).max((1.0 - l1_work_share) * t2);
    1.0 / per_adder
}

/// Mixed-level execution request: how many additions, how they are split
/// across levels, and the per-level adder times.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MixSpec {
    pub adds: u64,
    /// Additions run at level 1 per `l2_adds` at level 2 (the default
    /// schedule is one level-1 addition for every two at level 2).
    pub l1_adds: u32,
    pub l2_adds: u32,
    /// Per-addition time at level 1, including its staging stalls.
    pub t_adder_l1: f64,
    pub t_adder_l2: f64,
}

impl MixSpec {
    pub fn one_in_three(adds: u64, t_adder_l1: f64, t_adder_l2: f64) -> MixSpec {
        MixSpec {
            adds,
            l1_adds: 1,
            l2_adds: 2,
            t_adder_l1,
            t_adder_l2,
        }
    }

    pub fn l1_share(&self) -> f64 {
        self.l1_adds as f64 / (self.l1_adds + self.l2_adds) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MixedTime {
    pub total_time: f64,
    pub l1_time_fraction: f64,
    pub l1_adds: f64,
    pub l2_adds: f64,
}

/// Total serial time of a mixed-level addition schedule, gated by the
/// fidelity budget: a mix whose level-1 time share exceeds
/// `l1_budget_fraction` is rejected, never silently accepted.
pub fn mixed_level_time(spec: &MixSpec, l1_budget_fraction: f64) -> Result<MixedTime> {
    if spec.l1_adds + spec.l2_adds == 0 {
        return Err(Error::InvalidParameter {
            what: String::from("empty mix rule"),
        });
    }
    let share = spec.l1_share();
    let n1 = spec.adds as f64 * share;
    let n2 = spec.adds as f64 - n1;
    let t1 = n1 * spec.t_adder_l1;
    let total = t1 + n2 * spec.t_adder_l2;
    let fraction = if total > 0.0 { t1 / total } else { 0.0 };
    if fraction > l1_budget_fraction {
        return Err(Error::FidelityViolation {
            fraction,
            budget: l1_budget_fraction,
        });
    }
    Ok(MixedTime {
        total_time: total,
        l1_time_fraction: fraction,
        l1_adds: n1,
        l2_adds: n2,
    })
}
