//! Miss attribution for the optimized fetch policy.

use cqla_core::ecc::{CodeCatalog, CodeId, CodeLevel};
use cqla_core::generators::gen_cla_adder;
use cqla_core::memhier::{simulate_cache, CacheConfig, FetchPolicy, TransferTable};

fn main() {
    let bits = 256u32;
    let (c, _) = gen_cla_adder(bits).unwrap();
    let catalog = CodeCatalog::default_catalog();
    let table = TransferTable::default_table();
    for cache in [27u32, 54] {
        let config = CacheConfig {
            cache_capacity: cache,
            compute_capacity: 27,
            policy: FetchPolicy::Optimized,
            par_xfer: 10,
            memory: CodeLevel::new(CodeId::Steane713, 2),
            cache: CodeLevel::new(CodeId::Steane713, 1),
        };
        let (run, trace) = simulate_cache(&c, &config, &catalog, &table).unwrap();
        println!(
            "bits={bits} cache={cache}: hit={:.3} misses={} transfers={}",
            run.hit_rate, run.misses, run.transfers
        );
        // Misses by gate-index decile.
        let n = c.gate_count();
        let mut fetches_per_gate = vec![0u32; n];
        for ev in &trace {
            if !ev.writeback {
                fetches_per_gate[ev.gate as usize] += 1;
            }
        }
        let chunk = n / 10;
        for lo in (0..n).step_by(chunk.max(1)) {
            let hi = (lo + chunk).min(n);
            let miss_gates = (lo..hi).filter(|&g| fetches_per_gate[g] > 0).count();
            let fetches: u32 = (lo..hi).map(|g| fetches_per_gate[g]).sum();
            println!(
                "  gates {lo:5}..{hi:5}: miss gates {miss_gates:4} fetches {fetches:5}"
            );
        }
    }
}
