use std::time::Instant;

use rmnk_core::{fit_linlog, fit_loglog, pearson, run_grid, spearman, summarize_cells, GridConfig};

fn main() {
    let started = Instant::now();
    let config = GridConfig::<f64> {
        master_seed: 42,
        ..GridConfig::default()
    };
    let rows = run_grid(&config);
    println!("grid: {} rows in {:?}", rows.len(), started.elapsed());
    let cells = summarize_cells(&rows);
    println!("cells: {}", cells.len());

    // monotonicity: n_plo increasing in k, decreasing in rho, increasing in m
    let mut violations = 0;
    let value = |n: usize, k: usize, m: usize, rho: f64| -> Option<f64> {
        cells
            .iter()
            .find(|c| c.n == n && c.k == k && c.m == m && (c.rho - rho).abs() < 1e-9)
            .and_then(|c| c.mean_n_plo)
    };
    let ks = [2usize, 4, 6, 8, 10];
    let ms = [2usize, 3, 5];
    let rhos = [-0.9f64, -0.7, -0.4, -0.2, 0.0, 0.2, 0.4, 0.7, 0.9];
    for &m in &ms {
        for &rho in &rhos {
            for w in ks.windows(2) {
                if let (Some(a), Some(b)) = (value(18, w[0], m, rho), value(18, w[1], m, rho)) {
                    if !(b > a) {
                        violations += 1;
                        println!("K violation: m={m} rho={rho} k {}->{}: {a} -> {b}", w[0], w[1]);
                    }
                }
            }
        }
    }
    for &m in &ms {
        for &k in &ks {
            let series: Vec<f64> = rhos
                .iter()
                .filter_map(|&rho| value(18, k, m, rho))
                .collect();
            for w in series.windows(2) {
                if !(w[1] < w[0]) {
                    violations += 1;
                    println!("rho violation: m={m} k={k}: {} -> {}", w[0], w[1]);
                }
            }
        }
    }
    for &k in &ks {
        for &rho in &rhos {
            let series: Vec<f64> = ms
                .iter()
                .filter_map(|&m| value(18, k, m, rho))
                .collect();
            for w in series.windows(2) {
                if !(w[1] > w[0]) {
                    violations += 1;
                    println!("M violation: k={k} rho={rho}: {} -> {}", w[0], w[1]);
                }
            }
        }
    }
    println!("monotonicity violations: {violations}");

    // regressions over the 110 cell means
    let plo: Vec<f64> = cells.iter().map(|c| c.mean_n_plo.unwrap()).collect();
    let pareto: Vec<f64> = cells.iter().map(|c| c.mean_n_pareto.unwrap()).collect();
    let walk: Vec<f64> = cells.iter().map(|c| c.mean_walk).collect();
    let loglog = fit_loglog(&plo, &pareto).unwrap();
    println!(
        "pareto vs plo (log-log): slope={:.3} intercept={:.3} r={:.3} spearman={:.3}",
        loglog.slope,
        loglog.intercept,
        loglog.r,
        spearman(&plo, &pareto).unwrap()
    );
    let linlog = fit_linlog(&walk, &plo).unwrap();
    let ln_plo: Vec<f64> = plo.iter().map(|v| v.ln()).collect();
    println!(
        "plo vs walk (lin-log): slope={:.3} intercept={:.3} r={:.3} pearson(walk, ln plo)={:.3}",
        linlog.slope,
        linlog.intercept,
        linlog.r,
        pearson(&walk, &ln_plo).unwrap()
    );
    println!("total {:?}", started.elapsed());
}
