//! Report generation: cell means, regression summary and gnuplot scripts.
//!
//! Consumes a results CSV only; nothing is recomputed from instances.

use std::fmt::Write as _;

use rmnk_core::{
    fit_linear, fit_linlog, fit_loglog, pearson, spearman, summarize_cells, CellSummary, Error,
    GridRow, Result,
};

const CELL_MEANS_FILE: &str = "cell_means.csv";

/// Everything `report` produces: a human-readable summary plus files to
/// write next to it.
pub struct ReportOutputs {
    pub summary: String,
    /// `(file name, content)` pairs.
    pub files: Vec<(String, String)>,
}

pub fn build_report(rows: &[GridRow<f64>]) -> Result<ReportOutputs> {
    if rows.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let cells = summarize_cells(rows);
    let mut summary = String::new();
    let mut files = Vec::new();

    writeln!(summary, "rows: {}, cells: {}", rows.len(), cells.len()).unwrap();

    files.push((CELL_MEANS_FILE.to_string(), cell_means_csv(&cells)));

    let mut n_values: Vec<usize> = cells.iter().map(|c| c.n).collect();
    n_values.sort_unstable();
    n_values.dedup();

    for &n in &n_values {
        let enumerated: Vec<&CellSummary> = cells
            .iter()
            .filter(|c| c.n == n && c.mean_n_plo.is_some() && c.mean_n_pareto.is_some())
            .collect();
        if enumerated.len() < 3 {
            continue;
        }
        let space = (1u64 << n) as f64;
        let plo: Vec<f64> = enumerated.iter().map(|c| c.mean_n_plo.unwrap()).collect();
        let pareto: Vec<f64> = enumerated.iter().map(|c| c.mean_n_pareto.unwrap()).collect();
        let walk: Vec<f64> = enumerated.iter().map(|c| c.mean_walk).collect();

        writeln!(summary, "\nN = {n} ({} enumerated cells)", enumerated.len()).unwrap();

        match fit_loglog(&plo, &pareto) {
            Ok(fit) => {
                let rank = spearman(&plo, &pareto).unwrap_or(f64::NAN);
                writeln!(
                    summary,
                    "  pareto-set size vs PLO count, ln y = a ln x + b: a = {:.4}, b = {:.4}, pearson(log) = {:.4}, spearman = {:.4}",
                    fit.slope, fit.intercept, fit.r, rank
                )
                .unwrap();
                let fractions: Vec<f64> = plo.iter().map(|v| v / space).collect();
                let pareto_fractions: Vec<f64> = pareto.iter().map(|v| v / space).collect();
                if let Ok(frac_fit) = fit_loglog(&fractions, &pareto_fractions) {
                    files.push((
                        format!("fig2_pareto_vs_plo_n{n}.gp"),
                        fig2_script(n, frac_fit.slope, frac_fit.intercept),
                    ));
                }
            }
            Err(e) => writeln!(summary, "  pareto/PLO regression skipped: {e}").unwrap(),
        }

        match fit_linlog(&walk, &plo) {
            Ok(fit) => {
                let ln_plo: Vec<f64> = plo.iter().map(|v| v.ln()).collect();
                let r = pearson(&walk, &ln_plo).unwrap_or(f64::NAN);
                writeln!(
                    summary,
                    "  PLO count vs mean walk length, ln y = a x + b: a = {:.4}, b = {:.4} (counts), r = {:.4}",
                    fit.slope, fit.intercept, r
                )
                .unwrap();
                // the same fit with PLO counts normalized by the space size:
                // identical slope, intercept shifted by -ln 2^n
                let fractions: Vec<f64> = plo.iter().map(|v| v / space).collect();
                if let Ok(frac_fit) = fit_linlog(&walk, &fractions) {
                    writeln!(
                        summary,
                        "    fraction encoding: a = {:.4}, b = {:.4} (b_counts - ln 2^{n} = {:.4})",
                        frac_fit.slope,
                        frac_fit.intercept,
                        fit.intercept - space.ln()
                    )
                    .unwrap();
                }
                files.push((
                    format!("fig4_plo_vs_walk_n{n}.gp"),
                    fig4_script(n, fit.slope, fit.intercept),
                ));
            }
            Err(e) => writeln!(summary, "  walk-length regression skipped: {e}").unwrap(),
        }

        files.push((format!("fig1_plo_vs_params_n{n}.gp"), fig1_script(n)));
        files.push((format!("fig3_walk_vs_params_n{n}.gp"), fig3_script(n)));
    }

    if n_values.len() >= 2 {
        writeln!(summary, "\nwalk length vs N (per K, M, rho series)").unwrap();
        let mut series_keys: Vec<(usize, usize, u64)> = cells
            .iter()
            .map(|c| (c.k, c.m, c.rho.to_bits()))
            .collect();
        series_keys.sort_unstable();
        series_keys.dedup();
        for (k, m, rho_bits) in series_keys {
            let rho = f64::from_bits(rho_bits);
            let mut points: Vec<(f64, f64)> = cells
                .iter()
                .filter(|c| c.k == k && c.m == m && c.rho.to_bits() == rho_bits)
                .map(|c| (c.n as f64, c.mean_walk))
                .collect();
            points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            if points.len() < 3 {
                continue;
            }
            let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
            let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
            if let Ok(fit) = fit_linear(&xs, &ys) {
                writeln!(
                    summary,
                    "  K={k} M={m} rho={rho}: slope = {:.4}, intercept = {:.4}, R^2 = {:.4}",
                    fit.slope,
                    fit.intercept,
                    fit.r_squared()
                )
                .unwrap();
            }
        }
        let k_for_plot = cells.iter().map(|c| c.k).min().unwrap();
        files.push(("fig5_walk_vs_n.gp".to_string(), fig5_script(k_for_plot)));
    }

    Ok(ReportOutputs { summary, files })
}

fn format_opt(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

fn cell_means_csv(cells: &[CellSummary]) -> String {
    let mut out = String::from(
        "N,K,M,rho,instances,mean_n_plo,mean_plo_fraction,mean_n_pareto,mean_pareto_fraction,mean_walk,mean_empirical_rho\n",
    );
    for cell in cells {
        let space = (1u64 << cell.n) as f64;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            cell.n,
            cell.k,
            cell.m,
            cell.rho,
            cell.instances,
            format_opt(cell.mean_n_plo),
            format_opt(cell.mean_plo_fraction),
            format_opt(cell.mean_n_pareto),
            format_opt(cell.mean_n_pareto.map(|v| v / space)),
            cell.mean_walk,
            cell.mean_empirical_rho,
        )
        .unwrap();
    }
    out
}

fn panel_header(title: &str, logy: bool) -> String {
    format!(
        "set title \"{title}\"\n{}set key outside\n",
        if logy { "set logscale y\n" } else { "" }
    )
}

fn fig1_script(n: usize) -> String {
    let mut s = String::from("# PLO fraction against rho and K\n");
    s.push_str("set datafile separator \",\"\n");
    s.push_str("set terminal pngcairo size 1200,900\n");
    s.push_str(&format!("set output \"fig1_n{n}.png\"\n"));
    s.push_str("set multiplot layout 2,2\n");
    for (m, title) in [(2, "M = 2"), (5, "M = 5")] {
        s.push_str(&panel_header(&format!("PLO fraction vs rho, {title}"), true));
        s.push_str("set xlabel \"rho\"\nset ylabel \"PLO fraction\"\n");
        s.push_str(&format!(
            "plot for [kk in \"2 4 6 8 10\"] \"{CELL_MEANS_FILE}\" \
             using (($1=={n} && $3=={m} && $2==kk+0) ? $4 : 1/0):7 \
             with linespoints title sprintf(\"K=%s\", kk)\n"
        ));
    }
    for rho in ["-0.2", "0.9"] {
        s.push_str(&panel_header(&format!("PLO fraction vs K, rho = {rho}"), true));
        s.push_str("set xlabel \"K\"\nset ylabel \"PLO fraction\"\n");
        s.push_str(&format!(
            "plot for [mm in \"2 3 5\"] \"{CELL_MEANS_FILE}\" \
             using (($1=={n} && $3==mm+0 && abs($4-({rho}))<1e-9) ? $2 : 1/0):7 \
             with linespoints title sprintf(\"M=%s\", mm)\n"
        ));
    }
    s.push_str("unset multiplot\n");
    s
}

fn fig2_script(n: usize, slope: f64, intercept: f64) -> String {
    format!(
        "# Pareto-set fraction vs PLO fraction (log-log) with fitted line\n\
         set datafile separator \",\"\n\
         set terminal pngcairo size 800,600\n\
         set output \"fig2_n{n}.png\"\n\
         set logscale xy\n\
         set xlabel \"PLO fraction of the space\"\n\
         set ylabel \"Pareto-set fraction of the space\"\n\
         f(x) = exp({intercept}) * x**({slope})\n\
         plot \"{CELL_MEANS_FILE}\" using (($1=={n}) ? $7 : 1/0):9 with points title \"cells\", \\\n\
              f(x) with lines title \"fit\"\n"
    )
}

fn fig3_script(n: usize) -> String {
    let mut s = String::from("# mean adaptive-walk length against rho and K\n");
    s.push_str("set datafile separator \",\"\n");
    s.push_str("set terminal pngcairo size 1200,900\n");
    s.push_str(&format!("set output \"fig3_n{n}.png\"\n"));
    s.push_str("set multiplot layout 2,2\n");
    for (m, title) in [(2, "M = 2"), (5, "M = 5")] {
        s.push_str(&panel_header(&format!("walk length vs rho, {title}"), false));
        s.push_str("set xlabel \"rho\"\nset ylabel \"mean walk length\"\n");
        s.push_str(&format!(
            "plot for [kk in \"2 4 6 8 10\"] \"{CELL_MEANS_FILE}\" \
             using (($1=={n} && $3=={m} && $2==kk+0) ? $4 : 1/0):10 \
             with linespoints title sprintf(\"K=%s\", kk)\n"
        ));
    }
    for rho in ["-0.2", "0.9"] {
        s.push_str(&panel_header(&format!("walk length vs K, rho = {rho}"), false));
        s.push_str("set xlabel \"K\"\nset ylabel \"mean walk length\"\n");
        s.push_str(&format!(
            "plot for [mm in \"2 3 5\"] \"{CELL_MEANS_FILE}\" \
             using (($1=={n} && $3==mm+0 && abs($4-({rho}))<1e-9) ? $2 : 1/0):10 \
             with linespoints title sprintf(\"M=%s\", mm)\n"
        ));
    }
    s.push_str("unset multiplot\n");
    s
}

fn fig4_script(n: usize, slope: f64, intercept: f64) -> String {
    format!(
        "# PLO count (log) vs mean adaptive-walk length with fitted line\n\
         set datafile separator \",\"\n\
         set terminal pngcairo size 800,600\n\
         set output \"fig4_n{n}.png\"\n\
         set logscale y\n\
         set xlabel \"mean walk length\"\n\
         set ylabel \"PLO count\"\n\
         g(x) = exp({intercept} + ({slope}) * x)\n\
         plot \"{CELL_MEANS_FILE}\" using (($1=={n}) ? $10 : 1/0):6 with points title \"cells\", \\\n\
              g(x) with lines title \"fit\"\n"
    )
}

fn fig5_script(k: usize) -> String {
    format!(
        "# mean adaptive-walk length vs problem size N (K = {k})\n\
         set datafile separator \",\"\n\
         set terminal pngcairo size 800,600\n\
         set output \"fig5.png\"\n\
         set xlabel \"N\"\n\
         set ylabel \"mean walk length\"\n\
         set key outside\n\
         plot for [mm in \"2 3 5\"] \"{CELL_MEANS_FILE}\" \
         using (($2=={k} && $3==mm+0) ? $1 : 1/0):10 \
         with points title sprintf(\"M=%s\", mm)\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rmnk_core::{run_grid, GridConfig};

    #[test]
    fn report_contains_regressions_and_scripts() {
        let config = GridConfig::<f64> {
            n_values: vec![8],
            k_values: vec![1, 2],
            m_values: vec![2],
            rho_values: vec![-0.4, 0.0, 0.4],
            instances_per_cell: 3,
            walks_per_instance: 30,
            correlation_samples: 100,
            master_seed: 5,
            ..GridConfig::default()
        };
        let rows = run_grid(&config);
        let outputs = build_report(&rows).unwrap();
        assert!(outputs.summary.contains("N = 8"));
        assert!(outputs.summary.contains("pareto-set size vs PLO count"));
        assert!(outputs.summary.contains("fraction encoding"));
        let names: Vec<&str> = outputs.files.iter().map(|(n, _)| n.as_str()).collect();
        assert!(names.contains(&"cell_means.csv"));
        assert!(names.contains(&"fig1_plo_vs_params_n8.gp"));
        assert!(names.contains(&"fig2_pareto_vs_plo_n8.gp"));
        assert!(names.contains(&"fig4_plo_vs_walk_n8.gp"));
        let cell_means = &outputs.files.iter().find(|(n, _)| n == "cell_means.csv").unwrap().1;
        assert_eq!(cell_means.lines().count(), 1 + 6);
    }

    #[test]
    fn report_rejects_empty_input() {
        assert!(build_report(&[]).is_err());
    }

    #[test]
    fn multi_n_report_includes_linear_fits() {
        let config = GridConfig::<f64> {
            n_values: vec![6, 8, 10, 12],
            k_values: vec![2],
            m_values: vec![2],
            rho_values: vec![0.0],
            instances_per_cell: 2,
            walks_per_instance: 50,
            enumerate: false,
            correlation_samples: 100,
            master_seed: 6,
            ..GridConfig::default()
        };
        let rows = run_grid(&config);
        let outputs = build_report(&rows).unwrap();
        assert!(outputs.summary.contains("walk length vs N"));
        assert!(outputs.summary.contains("R^2"));
        assert!(outputs.files.iter().any(|(n, _)| n == "fig5_walk_vs_n.gp"));
    }
}
