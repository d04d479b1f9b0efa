//! Workload generators: the in-place carry-lookahead adder, the
//! repeated-addition schedule behind modular exponentiation, and the QFT.

use alloc::string::String;
use alloc::vec::Vec;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Bits per lookahead segment. Carries ripple serially inside a segment;
/// the lookahead tree works across segments, so depth stays logarithmic
/// while no more than one gate per segment is ever ready at once inside
/// the segment phases. A 64-bit adder therefore saturates about a dozen
/// concurrent compute locations.
pub const SEGMENT_BITS: u32 = 5;

/// Register map of a generated carry-lookahead adder.
///
/// Layout over the circuit's qubits, in order:
///
/// - `a`: qubits `[0, n)` — first addend, unchanged by the circuit.
/// - `b`: qubits `[n, 2n)` — second addend, becomes the sum `a + b mod 2^n`.
/// - ancillas from `carry_start` up: interior carry wires, per-segment
///   local-carry and propagate-product chains, and the lookahead tree's
///   dyadic propagate nodes (`tree_start` up). All ancillas are restored
///   to zero.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AdderLayout {
    pub bits: u32,
    pub a_start: u32,
    pub b_start: u32,
    pub carry_start: u32,
    pub tree_start: u32,
    pub qubit_count: u32,
}

impl AdderLayout {
    pub fn a(&self, i: u32) -> u32 {
        self.a_start + i
    }
    pub fn b(&self, i: u32) -> u32 {
        self.b_start + i
    }
}

const NO_WIRE: u32 = u32::MAX;

/// Dyadic propagate-tree bookkeeping over `m` leaves.
///
/// Node `(t, j)` covers leaf interval `[j * 2^t, (j+1) * 2^t)` and exists
/// when the interval fits inside `[0, m)`. Level-0 nodes are the leaf
/// propagate wires; higher levels live in tree ancillas. Node `(t, 0)` is
/// never read by the carry sweeps for `t >= 1`, so it is neither allocated
/// nor computed.
struct PropagateTree {
    m: u32,
    levels: u32,
    /// Ancilla qubit for node (t, j), or NO_WIRE.
    slot: Vec<Vec<u32>>,
}

impl PropagateTree {
    fn plan(m: u32, first_free_qubit: u32) -> (PropagateTree, u32) {
        let mut levels = 0u32;
        while m > 0 && (1u64 << (levels + 1)) <= m as u64 {
            levels += 1;
        }
        let mut next = first_free_qubit;
        let mut slot: Vec<Vec<u32>> = Vec::new();
        for t in 1..=levels {
            let width = m >> t;
            let mut row = Vec::with_capacity(width as usize);
            for j in 0..width {
                if j == 0 {
                    row.push(NO_WIRE);
                } else {
                    row.push(next);
                    next += 1;
                }
            }
            slot.push(row);
        }
        (PropagateTree { m, levels, slot }, next)
    }

    /// Wire holding node (t, j); level 0 maps to the leaf propagates.
    fn node(&self, leaves: &[u32], t: u32, j: u32) -> u32 {
        if t == 0 {
            leaves[j as usize]
        } else {
            self.slot[(t - 1) as usize][j as usize]
        }
    }

    fn width(&self, t: u32) -> u32 {
        self.m >> t
    }

    /// Tree build rounds: one Toffoli per internal node, level by level.
    fn push_build(&self, leaves: &[u32], into: &mut Vec<Gate>) {
        for t in 1..=self.levels {
            for j in 1..self.width(t) {
                let left = self.node(leaves, t - 1, 2 * j);
                let right = self.node(leaves, t - 1, 2 * j + 1);
                into.push(Gate::toffoli(left, right, self.node(leaves, t, j)));
            }
        }
    }

    /// Carry sweeps over the prefix targets `z(1..=m)`: an up-sweep
    /// accumulating dyadic-interval generates, then a down-sweep completing
    /// every prefix. After both, `z(e)` holds the carry into position `e`.
    fn push_sweeps(&self, leaves: &[u32], z: &dyn Fn(u32) -> u32, into: &mut Vec<Gate>) {
        let m = self.m;
        for t in 1..=self.levels {
            let span = 1u32 << t;
            let half = span >> 1;
            for j in 0.. {
                let e = (j + 1) * span;
                if e > m {
                    break;
                }
                let right_p = self.node(leaves, t - 1, 2 * j + 1);
                into.push(Gate::toffoli(z(e - half), right_p, z(e)));
            }
        }
        for t in (1..=self.levels).rev() {
            let span = 1u32 << t;
            let half = span >> 1;
            for j in 1.. {
                let e = j * span + half;
                if e > m {
                    break;
                }
                let left_p = self.node(leaves, t - 1, 2 * j);
                into.push(Gate::toffoli(z(j * span), left_p, z(e)));
            }
        }
    }
}

/// One segment of the adder: its bit range and ancilla wires.
///
/// The local-carry chain of the generate computation reuses the segment's
/// interior true-carry wires (they are dead during phase A and cleared
/// before phase B rewrites them), so a segment's working set stays small.
struct Segment {
    i0: u32,
    i1: u32,
    /// Segment-generate wire; holds the carry into the next segment after
    /// the lookahead sweeps.
    gen: u32,
    /// Propagate-product chain, `pi[j]` for the product through bit
    /// `i0 + 1 + j`; the last entry is the segment propagate.
    pi: Vec<u32>,
    /// Whether the segment feeds the lookahead tree (all but the last).
    in_tree: bool,
}

impl Segment {
    fn width(&self) -> u32 {
        self.i1 - self.i0
    }
    /// Leaf propagate: the product wire, or the propagate bit itself for
    /// one-bit segments.
    fn propagate_wire(&self, b_start: u32) -> u32 {
        if self.width() == 1 {
            b_start + self.i0
        } else {
            *self.pi.last().unwrap()
        }
    }
}

/// Per-segment gate streams, already grouped into emission turns.
type Turns = Vec<Vec<Gate>>;

/// Round-robins one turn per segment until every stream is exhausted —
/// the program-order interleaving that exposes the segments' parallelism.
fn rotate_streams(streams: Vec<Turns>, into: &mut Vec<Gate>) {
    let mut cursors = alloc::vec![0usize; streams.len()];
    loop {
        let mut emitted = false;
        for (s, stream) in streams.iter().enumerate() {
            if cursors[s] < stream.len() {
                into.extend(stream[cursors[s]].iter().copied());
                cursors[s] += 1;
                emitted = true;
            }
        }
        if !emitted {
            break;
        }
    }
}

/// Generates an in-place carry-lookahead adder: `(a, b) -> (a, a + b mod 2^n)`
/// with every ancilla restored to zero. Toffoli gates dominate the
/// multi-qubit gate count and logical depth is logarithmic in `n`.
///
/// Bits are grouped into [`SEGMENT_BITS`]-wide segments. Each segment
/// serially ripples a local carry chain to produce its generate and
/// propagate; a dyadic lookahead tree combines these across segments to
/// produce every segment's carry-in; each segment then ripples true
/// carries and sums back through its bits. The carry wires are erased by a
/// mirrored second pass over `(a, ~sum)` — the borrows of `sum - a` equal
/// the carries of `a + b`, so the mirror returns every ancilla to zero.
pub fn gen_cla_adder(n: u32) -> Result<(Circuit, AdderLayout)> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            what: String::from("adder width must be at least one bit"),
        });
    }
    let s = SEGMENT_BITS;
    let a = |i: u32| i;
    let b = |i: u32| n + i;
    if n == 1 {
        let layout = AdderLayout {
            bits: 1,
            a_start: 0,
            b_start: 1,
            carry_start: 2,
            tree_start: 2,
            qubit_count: 2,
        };
        let mut c = Circuit::new(2, "cla-adder-1");
        c.push(Gate::cnot(a(0), b(0)));
        return Ok((c, layout));
    }

    let seg_count = n.div_ceil(s);
    let mut next_wire = 2 * n;
    // Interior carry wires z_i for 1 <= i <= n-1 off segment boundaries;
    // boundary carries live on the segment-generate wires after the tree.
    let mut z_wire = alloc::vec![NO_WIRE; n as usize];
    for i in 1..n {
        if i % s != 0 {
            z_wire[i as usize] = next_wire;
            next_wire += 1;
        }
    }
    let mut segments: Vec<Segment> = Vec::with_capacity(seg_count as usize);
    for k in 0..seg_count {
        let i0 = k * s;
        let i1 = (i0 + s).min(n);
        let w = i1 - i0;
        let in_tree = k + 1 < seg_count;
        let mut gen = NO_WIRE;
        let mut pi = Vec::new();
        if in_tree {
            gen = next_wire;
            next_wire += 1;
            for _ in 1..w {
                pi.push(next_wire);
                next_wire += 1;
            }
        }
        segments.push(Segment { i0, i1, gen, pi, in_tree });
    }
    let m_tree = seg_count - 1;
    let (tree, qubit_count) = PropagateTree::plan(m_tree, next_wire);
    let tree_start = next_wire;
    let layout = AdderLayout {
        bits: n,
        a_start: 0,
        b_start: n,
        carry_start: 2 * n,
        tree_start,
        qubit_count,
    };

    // True-carry wire for position i (1 <= i <= n-1): interior wire, or the
    // producing segment's generate wire at segment boundaries.
    let carry = |i: u32| -> u32 {
        if i % s == 0 {
            segments[(i / s - 1) as usize].gen
        } else {
            z_wire[i as usize]
        }
    };
    // Phase A per tree-feeding segment: a majority-gate ripple whose carry
    // rides on the a-register, producing the segment generate with zero
    // carry-in; propagate products are taken off the b-register while it
    // transiently holds the propagate bits; the inverse sweep then restores
    // a and b. Every gate after the first touches the previous gate's
    // wires, so each segment exposes exactly one ready gate at a time and a
    // dozen segments never crowd the issue slots.
    let mut a_streams: Vec<Turns> = Vec::new();
    for seg in segments.iter().filter(|s| s.in_tree) {
        let mut turns: Turns = Vec::new();
        let sigma = z_wire[(seg.i0 + 1) as usize]; // borrowed seed wire
        let c_wire = |i: u32| if i == seg.i0 + 1 { sigma } else { a(i - 1) };
        // Seed: sigma takes the carry out of the first bit; b goes to p.
        turns.push(alloc::vec![
            Gate::toffoli(a(seg.i0), b(seg.i0), sigma),
            Gate::cnot(a(seg.i0), b(seg.i0)),
        ]);
        for i in seg.i0 + 1..seg.i1 {
            let j = (i - seg.i0) as usize;
            // Majority: a_i becomes the carry past bit i, b_i its propagate.
            turns.push(alloc::vec![
                Gate::cnot(a(i), c_wire(i)),
                Gate::cnot(a(i), b(i)),
                Gate::toffoli(c_wire(i), b(i), a(i)),
            ]);
            let prev_p = if j == 1 { b(seg.i0) } else { seg.pi[j - 2] };
            turns.push(alloc::vec![Gate::toffoli(prev_p, b(i), seg.pi[j - 1])]);
        }
        turns.push(alloc::vec![Gate::cnot(a(seg.i1 - 1), seg.gen)]);
        // Inverse sweep restores a, b, and the seed wire.
        for i in (seg.i0 + 1..seg.i1).rev() {
            turns.push(alloc::vec![
                Gate::toffoli(c_wire(i), b(i), a(i)),
                Gate::cnot(a(i), b(i)),
                Gate::cnot(a(i), c_wire(i)),
            ]);
        }
        turns.push(alloc::vec![
            Gate::cnot(a(seg.i0), b(seg.i0)),
            Gate::toffoli(a(seg.i0), b(seg.i0), sigma),
        ]);
        a_streams.push(turns);
    }

    // Phase B per segment: ripple true carries from the segment carry-in
    // against the original register values, leaving b as the propagate.
    let mut b_streams: Vec<Turns> = Vec::new();
    for seg in &segments {
        let mut turns: Turns = Vec::new();
        for i in seg.i0..seg.i1 {
            let writes_carry = i + 1 < n && (i + 1) % s != 0;
            let mut turn = Vec::new();
            if writes_carry {
                turn.push(Gate::toffoli(a(i), b(i), z_wire[(i + 1) as usize]));
            }
            turn.push(Gate::cnot(a(i), b(i)));
            turns.push(turn);
            if writes_carry && i > 0 {
                turns.push(alloc::vec![Gate::toffoli(carry(i), b(i), z_wire[(i + 1) as usize])]);
            }
        }
        b_streams.push(turns);
    }

    // Unwind the propagate products (descending, keeping lower links
    // intact) once the tree no longer needs them; runs after phase B, while
    // b holds the propagate bits again.
    let mut pi_clear_streams: Vec<Turns> = Vec::new();
    for seg in segments.iter().filter(|s| s.in_tree) {
        let mut turns: Turns = Vec::new();
        for i in (seg.i0 + 1..seg.i1).rev() {
            let j = (i - seg.i0) as usize;
            let prev_p = if j == 1 { b(seg.i0) } else { seg.pi[j - 2] };
            turns.push(alloc::vec![Gate::toffoli(prev_p, b(i), seg.pi[j - 1])]);
        }
        pi_clear_streams.push(turns);
    }

    // The carry network: everything that turns (a, b, 0) into
    // (a, p, carries). Mirrored verbatim by the erasure pass.
    let mut net: Vec<Gate> = Vec::new();
    rotate_streams(a_streams, &mut net);
    if m_tree >= 1 {
        let leaves: Vec<u32> = segments
            .iter()
            .filter(|s| s.in_tree)
            .map(|s| s.propagate_wire(n))
            .collect();
        let gen_wires: Vec<u32> = segments
            .iter()
            .filter(|s| s.in_tree)
            .map(|s| s.gen)
            .collect();
        let z = move |e: u32| gen_wires[(e - 1) as usize];
        let mut tree_gates: Vec<Gate> = Vec::new();
        tree.push_build(&leaves, &mut tree_gates);
        tree.push_sweeps(&leaves, &z, &mut tree_gates);
        let mut unbuild: Vec<Gate> = Vec::new();
        tree.push_build(&leaves, &mut unbuild);
        tree_gates.extend(unbuild.iter().rev().copied());
        net.extend(tree_gates);
    }
    rotate_streams(b_streams, &mut net);
    rotate_streams(pi_clear_streams, &mut net);

    let mut c = Circuit::new(qubit_count, &alloc::format!("cla-adder-{n}"));
    c.gates.extend(net.iter().copied());
    // Sums: b_i = p_i ^ c_i; bit 0 is already p_0.
    for i in 1..n {
        c.push(Gate::cnot(carry(i), b(i)));
    }
    // Erasure pass: present (a, ~sum) to the mirrored network. The borrow
    // chain of (sum - a) equals the carry chain of (a + b), so the mirror
    // cancels every carry wire. The top bit feeds no carry; it only gets
    // its propagate toggle undone by the mirror.
    for i in 0..n - 1 {
        c.push(Gate::x(b(i)));
        c.push(Gate::cnot(a(i), b(i)));
    }
    c.push(Gate::cnot(a(n - 1), b(n - 1)));
    c.gates.extend(net.iter().rev().copied());
    for i in 0..n - 1 {
        c.push(Gate::x(b(i)));
    }
    debug_assert!(c.validate().is_ok());
    Ok((c, layout))
}

/// The repeated-addition schedule for one modular exponentiation: every
/// invocation is an `n`-bit carry-lookahead addition, and the count grows
/// quadratically with the input size (each exponent bit drives a controlled
/// modular multiplication, itself a sequence of shifted additions with their
/// modular reductions).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModexpSchedule {
    pub bits: u32,
    pub adder_count: u64,
}

/// Default quadratic coefficient: `adder_count = 2 * n^2`.
pub const MODEXP_ADDERS_PER_BIT_SQ: u64 = 2;

pub fn gen_modexp_schedule(n: u32) -> Result<ModexpSchedule> {
    gen_modexp_schedule_with(n, MODEXP_ADDERS_PER_BIT_SQ)
}

pub fn gen_modexp_schedule_with(n: u32, adders_per_bit_sq: u64) -> Result<ModexpSchedule> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            what: String::from("modular exponentiation needs at least 2 bits"),
        });
    }
    Ok(ModexpSchedule {
        bits: n,
        adder_count: adders_per_bit_sq * (n as u64) * (n as u64),
    })
}

impl ModexpSchedule {
    /// Total time given the average time per addition.
    pub fn total_time(&self, avg_adder_time: f64) -> f64 {
        self.adder_count as f64 * avg_adder_time
    }
}

/// Generates the quantum Fourier transform over `n` qubits: one Hadamard per
/// qubit and `n(n-1)/2` controlled rotations. Rotation angles are not
/// modeled; each controlled rotation is emitted as a generic two-qubit gate
/// (CNOT kind) since only its cost matters here. No Toffoli gates appear.
pub fn gen_qft(n: u32) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            what: String::from("qft needs at least one qubit"),
        });
    }
    let mut c = Circuit::new(n, &alloc::format!("qft-{n}"));
    for i in 0..n {
        c.push(Gate::new(GateKind::H, &[i]).unwrap());
        for j in (i + 1)..n {
            c.push(Gate::cnot(j, i));
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::simulate_classical;

    fn from_bits(bits: &[bool]) -> u64 {
        bits.iter()
            .enumerate()
            .map(|(i, &b)| (b as u64) << i)
            .sum()
    }

    fn run_adder(n: u32, a: u64, b: u64) -> (u64, u64, bool) {
        let (circuit, layout) = gen_cla_adder(n).unwrap();
        let mut input = alloc::vec![false; layout.qubit_count as usize];
        for i in 0..n {
            input[layout.a(i) as usize] = (a >> i) & 1 == 1;
            input[layout.b(i) as usize] = (b >> i) & 1 == 1;
        }
        let out = simulate_classical(&circuit, &input).unwrap();
        let a_out = from_bits(&out[layout.a_start as usize..(layout.a_start + n) as usize]);
        let sum = from_bits(&out[layout.b_start as usize..(layout.b_start + n) as usize]);
        let ancilla_clear = out[(2 * n) as usize..].iter().all(|&x| !x);
        (a_out, sum, ancilla_clear)
    }

    #[test]
    fn one_bit_adder_is_a_cnot() {
        let (c, _) = gen_cla_adder(1).unwrap();
        assert_eq!(c.gate_count(), 1);
        assert_eq!(c.gates[0].kind, GateKind::Cnot);
        for a in 0..2u64 {
            for b in 0..2u64 {
                let (a_out, sum, clear) = run_adder(1, a, b);
                assert_eq!(a_out, a);
                assert_eq!(sum, (a + b) & 1);
                assert!(clear);
            }
        }
    }

    #[test]
    fn four_bit_adder_exhaustive() {
        for a in 0..16u64 {
            for b in 0..16u64 {
                let (a_out, sum, clear) = run_adder(4, a, b);
                assert_eq!(a_out, a, "a register changed for {a}+{b}");
                assert_eq!(sum, (a + b) % 16, "wrong sum for {a}+{b}");
                assert!(clear, "ancilla not restored for {a}+{b}");
            }
        }
    }

    #[test]
    fn seven_bit_adder_exhaustive() {
        // Crosses a segment boundary.
        for a in 0..128u64 {
            for b in 0..128u64 {
                let (a_out, sum, clear) = run_adder(7, a, b);
                assert_eq!(a_out, a);
                assert_eq!(sum, (a + b) % 128, "wrong sum for {a}+{b}");
                assert!(clear, "ancilla not restored for {a}+{b}");
            }
        }
    }

    #[test]
    fn adder_is_toffoli_dominated() {
        let (c, _) = gen_cla_adder(64).unwrap();
        let toffolis = c.count_kind(GateKind::Toffoli);
        let cnots = c.count_kind(GateKind::Cnot);
        let xs = c.count_kind(GateKind::X);
        assert!(toffolis > cnots && toffolis > xs, "{toffolis} {cnots} {xs}");
        assert_eq!(toffolis + cnots + xs, c.gate_count());
    }

    #[test]
    fn adder_depth_is_logarithmic() {
        // Unit-depth of the dependency graph grows like log n, not n.
        fn unit_depth(c: &Circuit) -> u32 {
            let dag = crate::circuit::DependencyGraph::build(c);
            let order = dag.topological_order().unwrap();
            let mut depth = alloc::vec![1u32; c.gate_count()];
            let mut max = 0;
            for &g in &order {
                let d = depth[g as usize];
                max = max.max(d);
                for &s in dag.successors(g as usize) {
                    depth[s as usize] = depth[s as usize].max(d + 1);
                }
            }
            max
        }
        let (c64, _) = gen_cla_adder(64).unwrap();
        let (c256, _) = gen_cla_adder(256).unwrap();
        let d64 = unit_depth(&c64);
        let d256 = unit_depth(&c256);
        // Quadrupling the width adds a bounded number of tree levels.
        assert!(d256 <= d64 + 16, "depth grew too fast: {d64} -> {d256}");
    }

    #[test]
    fn modexp_schedule_shape() {
        let sch = gen_modexp_schedule(2).unwrap();
        assert!(sch.adder_count > 0);
        assert_eq!(sch.bits, 2);
        let s32 = gen_modexp_schedule(32).unwrap();
        let s64 = gen_modexp_schedule(64).unwrap();
        assert!(s64.adder_count > s32.adder_count);
        // Arithmetic identity used by the report accounting.
        let t = s64.total_time(2.5);
        assert_eq!(t, s64.adder_count as f64 * 2.5);
        assert!(gen_modexp_schedule(1).is_err());
    }

    #[test]
    fn qft_gate_counts() {
        let q1 = gen_qft(1).unwrap();
        assert_eq!(q1.gate_count(), 1);
        assert_eq!(q1.count_kind(GateKind::H), 1);
        let q4 = gen_qft(4).unwrap();
        assert_eq!(q4.count_kind(GateKind::H), 4);
        assert_eq!(q4.count_kind(GateKind::Cnot), 6);
        for n in [2u32, 8, 16, 64] {
            let q = gen_qft(n).unwrap();
            assert_eq!(q.count_kind(GateKind::Toffoli), 0);
            assert_eq!(
                q.count_kind(GateKind::Cnot) as u64,
                (n as u64) * (n as u64 - 1) / 2
            );
        }
    }
}
