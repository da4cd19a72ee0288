//! Exact winning-hand detection, decomposition and scoring.
//!
//! A winning hand is 14 tiles split into four sets (triplets or runs) and one
//! pair. Detection is a backtracking search: choose the pair, then repeatedly
//! take the lowest remaining tile and try to close it as a triplet or as the
//! start of a run. The lowest tile can only belong to a set that starts at
//! it, and sets on one tile are taken triplets first, so every decomposition
//! is enumerated exactly once.

use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::tileset::{HandCounts, Suit, TileKind, HAND_SIZE, NUM_KINDS};

/// Amount of money, in units of the agreed base payoff currency.
pub type Money = f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Set {
    Triplet(TileKind),
    /// Run of three consecutive ranks starting at the given kind.
    Run(TileKind),
}

impl Set {
    pub fn first(self) -> TileKind {
        match self {
            Set::Triplet(k) | Set::Run(k) => k,
        }
    }

    pub fn is_triplet(self) -> bool {
        matches!(self, Set::Triplet(_))
    }

    fn sort_key(self) -> (usize, u8) {
        match self {
            Set::Triplet(k) => (k.index(), 0),
            Set::Run(k) => (k.index(), 1),
        }
    }
}

impl PartialOrd for Set {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Set {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Set::Triplet(k) => write!(f, "{k}{k}{k}"),
            Set::Run(k) => {
                let next = |d| TileKind::new(k.index() + d).expect("run stays in suit");
                write!(f, "{k}{}{}", next(1), next(2))
            }
        }
    }
}

/// Four sets and a pair covering a 14-tile hand exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    /// Sorted by starting tile, triplets before runs on the same tile.
    pub sets: [Set; 4],
    pub pair: TileKind,
}

impl Decomposition {
    /// Multiset union of the sets and the pair.
    pub fn tiles(&self) -> HandCounts {
        let mut counts = HandCounts::empty();
        counts.add(self.pair);
        counts.add(self.pair);
        for set in self.sets {
            match set {
                Set::Triplet(k) => (0..3).for_each(|_| counts.add(k)),
                Set::Run(k) => {
                    (0..3).for_each(|d| counts.add(TileKind::new(k.index() + d).unwrap()))
                }
            }
        }
        counts
    }

    pub fn triplets(&self) -> impl Iterator<Item = TileKind> + '_ {
        self.sets.iter().filter_map(|s| match *s {
            Set::Triplet(k) => Some(k),
            Set::Run(_) => None,
        })
    }
}

pub(crate) fn check_size(hand: &HandCounts) -> Result<()> {
    let found = hand.total();
    if found != HAND_SIZE {
        return Err(Error::HandSize {
            expected: HAND_SIZE,
            found,
        });
    }
    Ok(())
}

#[inline]
fn run_starts_at(index: usize) -> bool {
    // Suited kinds with rank 1..=7.
    index < 27 && index % 9 <= 6
}

/// Visits set lists covering `counts` in lexicographic order. The visitor
/// returns `true` to stop the search.
fn search_sets(
    counts: &mut [u8; NUM_KINDS],
    from: usize,
    sets: &mut Vec<Set>,
    visit: &mut dyn FnMut(&[Set]) -> bool,
) -> bool {
    let Some(i) = (from..NUM_KINDS).find(|&i| counts[i] > 0) else {
        return visit(sets);
    };
    let kind = TileKind::new(i).unwrap();
    // Once a run starts at `i`, a triplet of `i` would only repeat an
    // ordering already visited.
    let after_run = sets.last() == Some(&Set::Run(kind));
    if counts[i] >= 3 && !after_run {
        counts[i] -= 3;
        sets.push(Set::Triplet(kind));
        let stop = search_sets(counts, i, sets, visit);
        sets.pop();
        counts[i] += 3;
        if stop {
            return true;
        }
    }
    if run_starts_at(i) && counts[i + 1] > 0 && counts[i + 2] > 0 {
        counts[i] -= 1;
        counts[i + 1] -= 1;
        counts[i + 2] -= 1;
        sets.push(Set::Run(kind));
        let stop = search_sets(counts, i, sets, visit);
        sets.pop();
        counts[i] += 1;
        counts[i + 1] += 1;
        counts[i + 2] += 1;
        if stop {
            return true;
        }
    }
    false
}

/// Visits every decomposition, lowest pair first, sets in lexicographic
/// order. Assumes 14 tiles.
fn for_each_decomposition(hand: &HandCounts, mut visit: impl FnMut(Decomposition) -> bool) {
    let mut counts = *hand.as_array();
    let mut sets = Vec::with_capacity(4);
    for p in 0..NUM_KINDS {
        if counts[p] < 2 {
            continue;
        }
        let pair = TileKind::new(p).unwrap();
        counts[p] -= 2;
        let stop = search_sets(&mut counts, 0, &mut sets, &mut |found| {
            let sets: [Set; 4] = found.try_into().expect("12 tiles form four sets");
            visit(Decomposition { sets, pair })
        });
        counts[p] += 2;
        if stop {
            return;
        }
    }
}

/// Fast path used by the planner; the caller guarantees 14 tiles.
pub(crate) fn is_winning_unchecked(hand: &HandCounts) -> bool {
    let a = hand.as_array();
    // Every suit must hold 0 or 2 mod 3 tiles, with exactly one suit at 2.
    let mut twos = 0;
    for suit in [Suit::Man, Suit::Pin, Suit::Sou] {
        let o = suit.offset();
        match a[o..o + 9].iter().map(|&c| c as u32).sum::<u32>() % 3 {
            0 => {}
            2 => twos += 1,
            _ => return false,
        }
    }
    for &c in &a[27..] {
        match c {
            0 | 3 => {}
            2 => twos += 1,
            _ => return false,
        }
    }
    if twos != 1 {
        return false;
    }
    let mut found = false;
    for_each_decomposition(hand, |_| {
        found = true;
        true
    });
    found
}

/// True iff the 14-tile hand splits into four sets and a pair.
pub fn is_winning(hand: &HandCounts) -> Result<bool> {
    check_size(hand)?;
    Ok(is_winning_unchecked(hand))
}

/// The canonical decomposition: lowest pair kind, then the lexicographically
/// smallest set list.
pub fn decompose(hand: &HandCounts) -> Result<Option<Decomposition>> {
    check_size(hand)?;
    let mut first = None;
    for_each_decomposition(hand, |d| {
        first = Some(d);
        true
    });
    Ok(first)
}

/// Every decomposition of the hand, in canonical order.
pub fn all_decompositions(hand: &HandCounts) -> Result<Vec<Decomposition>> {
    check_size(hand)?;
    let mut all = Vec::new();
    for_each_decomposition(hand, |d| {
        all.push(d);
        false
    });
    Ok(all)
}

/// Multiplier contributions of the scoring rules.
///
/// Loadable from a key-value file such as:
///
/// ```text
/// base = 1
/// dragon_triplet = 1
/// wind_triplet = 1
/// all_triplets = 2
/// half_flush = 2
/// full_flush = 4
/// all_honors = 3
/// ```
///
/// Missing keys keep their default; unknown keys are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoreRules {
    pub base: u32,
    /// Per triplet of a dragon.
    pub dragon_triplet: u32,
    /// Per triplet of a wind.
    pub wind_triplet: u32,
    /// Four triplets, no runs.
    pub all_triplets: u32,
    /// One numbered suit plus honors.
    pub half_flush: u32,
    /// One numbered suit, no honors.
    pub full_flush: u32,
    /// Honors only.
    pub all_honors: u32,
}

impl Default for ScoreRules {
    fn default() -> Self {
        Self {
            base: 1,
            dragon_triplet: 1,
            wind_triplet: 1,
            all_triplets: 2,
            half_flush: 2,
            full_flush: 4,
            all_honors: 3,
        }
    }
}

impl ScoreRules {
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let rules: Self = toml::from_str(text).map_err(|e| Error::ScoreTable(e.to_string()))?;
        if rules.base == 0 {
            return Err(Error::ScoreTable(
                "base multiplier must be at least 1".into(),
            ));
        }
        Ok(rules)
    }

    /// Renders the table in the same key-value form it is loaded from.
    pub fn to_kv_string(&self) -> String {
        self.entries()
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }

    pub fn entries(&self) -> [(&'static str, u32); 7] {
        [
            ("base", self.base),
            ("dragon_triplet", self.dragon_triplet),
            ("wind_triplet", self.wind_triplet),
            ("all_triplets", self.all_triplets),
            ("half_flush", self.half_flush),
            ("full_flush", self.full_flush),
            ("all_honors", self.all_honors),
        ]
    }

    /// Itemized contributions (excluding the base) for one reading.
    fn items(&self, hand: &HandCounts, d: &Decomposition) -> Vec<(&'static str, u32)> {
        let mut items = Vec::new();
        let dragons = d.triplets().filter(|k| k.suit() == Suit::Dragon).count() as u32;
        let winds = d.triplets().filter(|k| k.suit() == Suit::Wind).count() as u32;
        if dragons > 0 {
            items.push(("dragon_triplet", dragons * self.dragon_triplet));
        }
        if winds > 0 {
            items.push(("wind_triplet", winds * self.wind_triplet));
        }
        if d.sets.iter().all(|s| s.is_triplet()) {
            items.push(("all_triplets", self.all_triplets));
        }
        let suits_used = Suit::NUMBERED
            .iter()
            .filter(|s| hand.kinds().any(|k| k.suit() == **s))
            .count();
        let has_honors = hand.kinds().any(|k| k.is_honor());
        match (suits_used, has_honors) {
            (0, _) => items.push(("all_honors", self.all_honors)),
            (1, true) => items.push(("half_flush", self.half_flush)),
            (1, false) => items.push(("full_flush", self.full_flush)),
            _ => {}
        }
        items.retain(|&(_, v)| v > 0);
        items
    }
}

/// Individual and total payoff of a win.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Payoff {
    /// What each loser pays: `2^m · b`.
    pub individual: Money,
    /// What the winner receives from three losers: `3 · 2^m · b`.
    pub total: Money,
}

pub fn payoff(multiplier: u32, base_payoff: Money) -> Result<Payoff> {
    if multiplier < 1 {
        return Err(Error::InvalidParameter(format!(
            "multiplier must be at least 1, got {multiplier}"
        )));
    }
    if !(base_payoff > 0.0 && base_payoff.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "base payoff must be positive, got {base_payoff}"
        )));
    }
    let individual = 2f64.powi(multiplier as i32) * base_payoff;
    Ok(Payoff {
        individual,
        total: 3.0 * individual,
    })
}

/// Multiplier and payoff of a winning hand.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreBreakdown {
    pub multiplier: u32,
    /// Rule name and its contribution; `multiplier = base + Σ items`.
    pub items: Vec<(String, u32)>,
    pub individual_payoff: Money,
    pub total_payoff: Money,
}

/// Scores a winning hand, taking the best reading over all decompositions.
pub fn score_hand(
    hand: &HandCounts,
    base_payoff: Money,
    rules: &ScoreRules,
) -> Result<ScoreBreakdown> {
    check_size(hand)?;
    let mut best: Option<(u32, Vec<(&'static str, u32)>)> = None;
    for_each_decomposition(hand, |d| {
        let items = rules.items(hand, &d);
        let m = rules.base + items.iter().map(|&(_, v)| v).sum::<u32>();
        if best.as_ref().is_none_or(|(bm, _)| m > *bm) {
            best = Some((m, items));
        }
        false
    });
    let (multiplier, items) = best.ok_or(Error::NotWinning)?;
    let pay = payoff(multiplier, base_payoff)?;
    Ok(ScoreBreakdown {
        multiplier,
        items: items.into_iter().map(|(n, v)| (n.to_string(), v)).collect(),
        individual_payoff: pay.individual,
        total_payoff: pay.total,
    })
}

/// Exhaustive ShangTing: the best score over every disjoint extraction of
/// triplets and runs, plus 2 if a pair is left over, minus 14.
///
/// This is a reference for the greedy procedure in `shaping`, not used in
/// play.
pub fn exact_shangting_oracle(hand: &HandCounts) -> Result<i32> {
    check_size(hand)?;
    fn best(counts: &mut [u8; NUM_KINDS], from: usize, sets: i32, pair: bool) -> i32 {
        let Some(i) = (from..NUM_KINDS).find(|&i| counts[i] > 0) else {
            return 3 * sets + if pair { 2 } else { 0 };
        };
        // Leave every copy of `i` unused.
        let held = counts[i];
        counts[i] = 0;
        let mut score = best(counts, i + 1, sets, pair || held >= 2);
        counts[i] = held;
        if held >= 3 {
            counts[i] -= 3;
            score = score.max(best(counts, i, sets + 1, pair));
            counts[i] += 3;
        }
        if run_starts_at(i) && counts[i + 1] > 0 && counts[i + 2] > 0 {
            counts[i] -= 1;
            counts[i + 1] -= 1;
            counts[i + 2] -= 1;
            score = score.max(best(counts, i, sets + 1, pair));
            counts[i] += 1;
            counts[i + 1] += 1;
            counts[i + 2] += 1;
        }
        score
    }
    let mut counts = *hand.as_array();
    Ok(best(&mut counts, 0, 0, false) - HAND_SIZE as i32)
}
