use mahjong_core::arena::{
    duel_with_seeds, match_seeds, run_batch, run_match_series, Pairing, Stakes, Winner,
};
use mahjong_core::engine::play_game;
use mahjong_core::rng::{split_seed, streams};
use mahjong_core::ShapingParams;

#[test]
fn single_game_batch_is_that_game() {
    let params = ShapingParams::with_weight(1.2);
    let run = run_batch(1, &params, 99).unwrap();
    let log = play_game(split_seed(99, streams::BATCH_GAME, 0), &params).unwrap();
    assert_eq!(run.games[0].discards, log.outcome.discards());
    assert_eq!(run.games[0].multiplier, log.outcome.multiplier());
    assert_eq!(run.stats.completed, usize::from(log.outcome.is_win()));
}

#[test]
fn histograms_total_completed_games() {
    let run = run_batch(200, &ShapingParams::default(), 3).unwrap();
    let s = &run.stats;
    assert_eq!(
        s.discard_histogram.values().sum::<u64>() as usize,
        s.completed
    );
    assert_eq!(
        s.score_histogram.values().sum::<u64>() as usize,
        s.completed
    );
    let d = s.discards.unwrap();
    assert!(d.min <= d.mean && d.mean <= d.max);
}

#[test]
fn series_is_zero_sum_and_reorderable() {
    let p1 = ShapingParams::default();
    let p2 = ShapingParams::with_weight(1.2);
    let stakes = Stakes::default();
    let series = run_match_series(40, &p1, &p2, &stakes, 5, Pairing::Independent).unwrap();
    assert_eq!(series.player1_total() + series.total, 0.0);
    // Matches depend only on their own seeds, so replaying them in reverse
    // gives the same results.
    for i in (0..40u64).rev() {
        let seeds = match_seeds(5, i, Pairing::Independent);
        let d = duel_with_seeds(seeds.0, seeds.1, &p1, &p2, &stakes).unwrap();
        assert_eq!(d, series.per_match[i as usize]);
    }
    for d in &series.per_match {
        match d.winner {
            Winner::Draw => assert_eq!(d.transfer, 0.0),
            _ => assert_eq!(
                d.transfer.abs(),
                stakes.transfer(d.multiplier.unwrap()).unwrap()
            ),
        }
    }
}

#[test]
fn transfer_factor_one_scales_transfers() {
    let p1 = ShapingParams::default();
    let p2 = ShapingParams::with_weight(0.75);
    let three = run_match_series(10, &p1, &p2, &Stakes::default(), 8, Pairing::Mirrored).unwrap();
    let one = Stakes {
        transfer_factor: 1,
        ..Stakes::default()
    };
    let single = run_match_series(10, &p1, &p2, &one, 8, Pairing::Mirrored).unwrap();
    assert_eq!(three.total, 3.0 * single.total);
    assert!(Stakes {
        transfer_factor: 2,
        ..Stakes::default()
    }
    .validate()
    .is_err());
}
