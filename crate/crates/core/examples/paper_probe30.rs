use std::time::Instant;

use rmnk_core::{enumerate_plo, landscape::Instance, seed, walk_campaign};

fn main() {
    for master in [42u64, 14, 7] {
        println!("master seed {master}:");
        let cells = [
            (2usize, 0.9f64, 2usize, 192.0f64, 144.0, 240.0),
            (2, 0.9, 10, 6048.0, 4536.0, 7560.0),
            (2, -0.9, 4, 82_093.0, 61_570.0, 102_616.0),
            (2, 0.9, 4, 672.0, 470.0, 874.0),
        ];
        let started = Instant::now();
        for &(m, rho, k, paper, lo, hi) in &cells {
            let mut total_plo = 0.0;
            let instances = 30;
            for id in 0..instances as u64 {
                let inst_seed = seed::child_seed(master, &[18, k as u64, m as u64, rho.to_bits(), id]);
                let inst = Instance::<f64>::generate(18, k, m, rho, inst_seed).unwrap();
                let summary = enumerate_plo(&inst, false).unwrap();
                total_plo += summary.n_plo as f64;
                let _ = walk_campaign(&inst, 1000, seed::child_seed(inst_seed, &[seed::WALK_STREAM])).unwrap();
            }
            let mean_plo = total_plo / instances as f64;
            let ok = mean_plo >= lo && mean_plo <= hi;
            println!("  m={m} rho={rho:+.1} k={k:2}: mean_plo={mean_plo:9.1} (paper {paper:8.0})  in [{lo},{hi}]: {ok}");
        }
        println!("  elapsed {:?}", started.elapsed());
    }
}
