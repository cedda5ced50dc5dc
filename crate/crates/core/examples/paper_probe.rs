use std::time::Instant;

use rmnk_core::{enumerate_plo, landscape::Instance, seed, walk_campaign};

// Mean PLO counts for the four reference cells, 10 instances each, plus
// wall-clock timings for budgeting the acceptance suite.
fn main() {
    let cells = [
        (2usize, 0.9f64, 2usize, 192.0f64),
        (2, 0.9, 10, 6048.0),
        (2, -0.9, 4, 82_093.0),
        (2, 0.9, 4, 672.0),
    ];
    for &(m, rho, k, paper) in &cells {
        let started = Instant::now();
        let mut total_plo = 0.0;
        let mut total_pareto = 0.0;
        let mut total_walk = 0.0;
        let instances = 10;
        for id in 0..instances as u64 {
            let inst_seed = seed::child_seed(42, &[18, k as u64, m as u64, rho.to_bits(), id]);
            let inst = Instance::<f64>::generate(18, k, m, rho, inst_seed).unwrap();
            let summary = enumerate_plo(&inst, false).unwrap();
            total_plo += summary.n_plo as f64;
            total_pareto += summary.n_pareto as f64;
            let stats =
                walk_campaign(&inst, 1000, seed::child_seed(inst_seed, &[seed::WALK_STREAM]))
                    .unwrap();
            total_walk += stats.mean_length;
        }
        let mean_plo = total_plo / instances as f64;
        let mean_pareto = total_pareto / instances as f64;
        let mean_walk = total_walk / instances as f64;
        println!(
            "m={m} rho={rho:+.1} k={k:2}: mean_plo={mean_plo:9.1} (paper {paper:8.0}, ratio {:.3})  mean_pareto={mean_pareto:7.1}  mean_walk={mean_walk:6.2}  [{:?}/cell]",
            mean_plo / paper,
            started.elapsed()
        );
    }
}
