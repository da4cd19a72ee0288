//! CSV and structured-text exports for batches, series and sweeps.
//!
//! Everything here renders to a `String`; writing files is left to the
//! caller. Reals use shortest round-trip formatting unless noted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arena::{BatchRun, BatchStats, MatchSeries, Stakes, SweepMatrix};
use crate::shaping::ShapingParams;
use crate::stats::TTestResult;

fn histogram_csv(header: &str, hist: &BTreeMap<u32, u64>) -> String {
    let mut out = format!("{header},count\n");
    for (k, v) in hist {
        let _ = writeln!(out, "{k},{v}");
    }
    out
}

/// `discards,count`, one row per distinct discard count among wins.
pub fn discard_histogram_csv(stats: &BatchStats) -> String {
    histogram_csv("discards", &stats.discard_histogram)
}

/// `multiplier,count`, one row per multiplier observed.
pub fn score_histogram_csv(stats: &BatchStats) -> String {
    histogram_csv("multiplier", &stats.score_histogram)
}

/// One row per game of a batch.
pub fn batch_games_csv(run: &BatchRun) -> String {
    let mut out = String::from("game,seed,outcome,discards,multiplier\n");
    for g in &run.games {
        let outcome = if g.won { "won" } else { "exhausted" };
        let m = g.multiplier.map(|m| m.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{outcome},{},{m}", g.index, g.seed, g.discards);
    }
    out
}

/// `key: value` summary of a batch.
pub fn batch_report(stats: &BatchStats, params: &ShapingParams, master_seed: u64) -> String {
    let mut out = String::from("report batch v1\n");
    let _ = writeln!(out, "seed: {master_seed}");
    let _ = writeln!(out, "weight: {}", params.weight);
    let _ = writeln!(out, "base_payoff: {}", params.base_payoff);
    let _ = writeln!(out, "games: {}", stats.games);
    let _ = writeln!(out, "completed: {}", stats.completed);
    let _ = writeln!(out, "completion_rate: {:.4}", stats.completion_rate);
    if let Some(d) = &stats.discards {
        let _ = writeln!(out, "discards_mean: {:.4}", d.mean);
        let _ = writeln!(out, "discards_std: {:.4}", d.std);
        let _ = writeln!(out, "discards_min: {}", d.min);
        let _ = writeln!(out, "discards_max: {}", d.max);
    }
    for (m, count) in &stats.score_histogram {
        let _ = writeln!(
            out,
            "score_{m}: {count} ({:.3}%)",
            100.0 * *count as f64 / stats.completed as f64
        );
    }
    out
}

/// One row per match, player 2's view.
pub fn series_csv(series: &MatchSeries) -> String {
    let mut out = String::from("match,seed1,seed2,winner,rounds,multiplier,transfer,cumulative\n");
    for (i, (d, cum)) in series.per_match.iter().zip(&series.cumulative).enumerate() {
        let m = d.multiplier.map(|m| m.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{m},{},{cum}",
            i + 1,
            d.seeds.0,
            d.seeds.1,
            d.winner.label(),
            d.winning_turns,
            d.transfer
        );
    }
    out
}

/// `match,cumulative`: player 2's earnings curve.
pub fn cumulative_csv(series: &MatchSeries) -> String {
    let mut out = String::from("match,cumulative\n");
    for (i, c) in series.cumulative.iter().enumerate() {
        let _ = writeln!(out, "{},{c}", i + 1);
    }
    out
}

/// `key: value` summary of a series with its one-tailed test.
pub fn series_report(
    series: &MatchSeries,
    params1: &ShapingParams,
    params2: &ShapingParams,
    stakes: &Stakes,
    master_seed: u64,
    test: Option<&TTestResult>,
) -> String {
    let count = |w| series.per_match.iter().filter(|d| d.winner == w).count();
    let mut out = String::from("report duel v1\n");
    let _ = writeln!(out, "seed: {master_seed}");
    let _ = writeln!(out, "w1: {}", params1.weight);
    let _ = writeln!(out, "w2: {}", params2.weight);
    let _ = writeln!(out, "base_payoff: {}", stakes.base_payoff);
    let _ = writeln!(out, "transfer_factor: {}", stakes.transfer_factor);
    let _ = writeln!(out, "matches: {}", series.per_match.len());
    let _ = writeln!(
        out,
        "player1_wins: {}",
        count(crate::arena::Winner::Player1)
    );
    let _ = writeln!(
        out,
        "player2_wins: {}",
        count(crate::arena::Winner::Player2)
    );
    let _ = writeln!(out, "draws: {}", count(crate::arena::Winner::Draw));
    let _ = writeln!(out, "player1_total: {}", series.player1_total());
    let _ = writeln!(out, "player2_total: {}", series.total);
    match test {
        Some(t) => {
            let _ = writeln!(out, "ttest_mean: {:.6}", t.mean);
            let _ = writeln!(out, "ttest_std: {:.6}", t.std);
            let _ = writeln!(out, "ttest_mu0: {}", t.mu0);
            let _ = writeln!(out, "ttest_t: {:.6}", t.t_statistic);
            let _ = writeln!(out, "ttest_critical: {}", t.critical);
            let _ = writeln!(out, "ttest_reject: {}", t.reject);
        }
        None => {
            let _ = writeln!(out, "ttest: unavailable");
        }
    }
    out
}

/// Matrix with player-1 weights down the rows and player-2 weights across.
pub fn sweep_csv(m: &SweepMatrix) -> String {
    let mut out = String::from("w1\\w2");
    for w in &m.weights2 {
        let _ = write!(out, ",{w}");
    }
    out.push('\n');
    for (w1, row) in m.weights1.iter().zip(&m.totals) {
        let _ = write!(out, "{w1}");
        for v in row {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{run_batch, run_match_series, Pairing};

    #[test]
    fn histogram_rows_match_distinct_counts() {
        let run = run_batch(30, &ShapingParams::default(), 11).unwrap();
        let csv = discard_histogram_csv(&run.stats);
        assert_eq!(csv.lines().count() - 1, run.stats.discard_histogram.len());
        assert!(csv.starts_with("discards,count\n"));
        assert_eq!(batch_games_csv(&run).lines().count(), 31);
        let report = batch_report(&run.stats, &ShapingParams::default(), 11);
        assert!(report.contains("games: 30\n"));
    }

    #[test]
    fn sweep_csv_orientation() {
        let m = SweepMatrix {
            weights1: vec![0.75, 1.0, 1.2],
            weights2: vec![1.0, 1.2],
            matches_per_cell: 0,
            totals: vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, -6.0]],
        };
        assert_eq!(sweep_csv(&m), "w1\\w2,1,1.2\n0.75,1,2\n1,3,4\n1.2,5,-6\n");
    }

    #[test]
    fn series_exports() {
        let p = ShapingParams::default();
        let s = run_match_series(
            6,
            &p,
            &ShapingParams::with_weight(1.2),
            &Stakes::default(),
            1,
            Pairing::Independent,
        )
        .unwrap();
        assert_eq!(series_csv(&s).lines().count(), 7);
        assert_eq!(cumulative_csv(&s).lines().count(), 7);
        let r = series_report(&s, &p, &p, &Stakes::default(), 1, None);
        assert!(r.contains("ttest: unavailable"));
    }
}
