//! Scratch probe for calibration numbers (not part of the test suite).

use cqla_core::ecc::{CodeCatalog, CodeId, CodeLevel};
use cqla_core::generators::gen_cla_adder;
use cqla_core::memhier::{simulate_cache, CacheConfig, FetchPolicy, TransferTable};
use cqla_core::schedule::{parallelism_profile, schedule, total_work_slots};

fn main() {
    let catalog = CodeCatalog::default_catalog();
    let table = TransferTable::default_table();

    println!("== adder structure ==");
    for bits in [16u32, 32, 64, 128, 256, 512, 1024] {
        let (c, _) = gen_cla_adder(bits).unwrap();
        let toffolis = c.count_kind(cqla_core::GateKind::Toffoli);
        let slots_inf = schedule(&c, None).makespan;
        let slots_15 = schedule(&c, Some(15)).makespan;
        println!(
            "n={bits:5} qubits={:5} gates={:6} toffolis={:6} work={:7} makespan_inf={:6} makespan_15={:6}",
            c.qubit_count,
            c.gate_count(),
            toffolis,
            total_work_slots(&c),
            slots_inf,
            slots_15,
        );
    }

    println!("== 64-bit parallelism profile ==");
    let (c64, _) = gen_cla_adder(64).unwrap();
    let prof = parallelism_profile(&c64);
    println!(
        "saturation={} unlimited={}",
        prof.saturation_limit, prof.unlimited_makespan
    );
    for (l, m) in &prof.entries {
        if *l <= 20 || *l == prof.saturation_limit {
            println!("  limit {l:3} -> {m}");
        }
    }

    println!("== cache hit rates (compute=27) ==");
    for bits in [64u32, 128, 256, 512] {
        let (c, _) = gen_cla_adder(bits).unwrap();
        for cache_mult in [1.0f64, 1.5, 2.0] {
            let compute = 27u32;
            let cache = (compute as f64 * cache_mult) as u32;
            let mut line = format!("n={bits:4} cache={cache:3}: ");
            for policy in [FetchPolicy::Naive, FetchPolicy::Optimized] {
                let config = CacheConfig {
                    cache_capacity: cache,
                    compute_capacity: compute,
                    policy,
                    par_xfer: 10,
                    memory: CodeLevel::new(CodeId::Steane713, 2),
                    cache: CodeLevel::new(CodeId::Steane713, 1),
                };
                let (run, _) = simulate_cache(&c, &config, &catalog, &table).unwrap();
                line.push_str(&format!("{policy}={:.3}  ", run.hit_rate));
            }
            println!("{line}");
        }
    }
}
