//! Delay attribution for the limit-15 schedule of the 64-bit adder.

use cqla_core::circuit::DependencyGraph;
use cqla_core::generators::gen_cla_adder;
use cqla_core::schedule::schedule;

fn main() {
    let (c, _) = gen_cla_adder(64).unwrap();
    let dag = DependencyGraph::build(&c);
    let s_inf = schedule(&c, None);
    let s_15 = schedule(&c, Some(15));
    println!(
        "makespan inf={} lim15={}",
        s_inf.makespan, s_15.makespan
    );
    // Distribution of delay over gate index ranges.
    let n = c.gate_count();
    let chunk = n / 12;
    for lo in (0..n).step_by(chunk.max(1)) {
        let hi = (lo + chunk).min(n);
        let max_delay = (lo..hi)
            .map(|g| s_15.start_slot[g] as i64 - s_inf.start_slot[g] as i64)
            .max()
            .unwrap();
        println!("gates {lo:5}..{hi:5}: max delay {max_delay}");
    }
    // Where does each extra slot of delay first appear?
    for k in 1..=8i64 {
        let first = (0..n)
            .filter(|&g| s_15.start_slot[g] as i64 - s_inf.start_slot[g] as i64 >= k)
            .min_by_key(|&g| s_inf.start_slot[g]);
        match first {
            Some(g) => println!(
                "delay >= {k}: first at gate {g} ({:?}) start_inf={} start_15={}",
                c.gates[g].kind, s_inf.start_slot[g], s_15.start_slot[g]
            ),
            None => println!("delay >= {k}: never"),
        }
    }
    // Walk the critical chain of the limit-15 schedule backwards.
    let last = (0..n)
        .max_by_key(|&g| s_15.finish_slot(&c, g))
        .unwrap();
    let mut g = last;
    let mut chain = vec![g];
    loop {
        // Find a predecessor whose finish equals our start (tight edge).
        let start = s_15.start_slot[g];
        let mut tight = None;
        for p in 0..n {
            if dag.successors(p).contains(&(g as u32)) && s_15.finish_slot(&c, p) == start {
                tight = Some(p);
                break;
            }
        }
        match tight {
            Some(p) => {
                chain.push(p);
                g = p;
            }
            None => break,
        }
    }
    chain.reverse();
    println!("tight chain (gate: kind start15 startinf):");
    for &g in chain.iter() {
        println!(
            "  g{:5} {:8?} s15={:4} sinf={:4} delay={}",
            g,
            c.gates[g].kind,
            s_15.start_slot[g],
            s_inf.start_slot[g],
            s_15.start_slot[g] as i64 - s_inf.start_slot[g] as i64
        );
    }
}
