//! Monte-Carlo view of partial-sequence inversion: how often does the
//! length-M prefix already capture the full-sequence rank, and how often is
//! the recovered prefix element the true one?
//!
//! Run with: cargo run --example conjecture_harness

use seqinv::experiments::{run_experiment, ExperimentConfig};

fn main() {
    let config = ExperimentConfig::parse(
        "generator = fsr:m=5\n\
         N = 96\n\
         M = 48\n\
         d = 2\n\
         trials = 60\n\
         seed = 11\n\
         exact_cap = 2000\n",
    )
    .unwrap();

    let (records, report) = run_experiment(&config);

    println!("{} register trials, N=96, M=48, d=2", report.trials);
    println!(
        "rank captured:    {:.3} [{:.3}, {:.3}]",
        report.p0_estimate.value, report.p0_estimate.lo, report.p0_estimate.hi
    );
    println!(
        "inverse correct:  {:.3} [{:.3}, {:.3}]",
        report.p_inv_estimate.value, report.p_inv_estimate.lo, report.p_inv_estimate.hi
    );
    println!(
        "mean 1/subsets:   {:.6} -> conjectured correct rate {:.3}",
        report.p_exp_estimate.value, report.conjectured_p_inv
    );
    println!(
        "mean maximal-rank subset count: {:.1} (all exact: {})",
        report.maximal_rank_subset_count, report.subset_counts_all_exact
    );
    for stat in &report.moc_stats {
        println!(
            "MOC at N={}: mean {:.2} +- {:.2}  (2*log2 N = {:.2})",
            stat.n, stat.mean, stat.stddev, stat.two_log2_n
        );
    }

    let wrong: Vec<u64> = records
        .iter()
        .filter(|r| r.rank_captured && !r.inverse_correct)
        .map(|r| r.trial)
        .collect();
    println!("captured-but-wrong trials: {wrong:?}");
}
