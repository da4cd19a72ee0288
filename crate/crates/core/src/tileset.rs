//! Tile identities, count vectors and the zone-tracking game state.
//!
//! Copies of a tile kind are interchangeable, so a state is three 34-entry
//! count vectors (wall, hand, discard) rather than a per-copy array. The
//! per-copy 34×4 mark view is still available through
//! [`GameState::mark_array`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::GameRng;

pub const NUM_KINDS: usize = 34;
pub const COPIES_PER_KIND: u8 = 4;
pub const TOTAL_TILES: usize = 136;
pub const HAND_SIZE: usize = 14;
/// Tiles left in the wall right after the deal.
pub const WALL_AFTER_DEAL: usize = TOTAL_TILES - HAND_SIZE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suit {
    Man,
    Pin,
    Sou,
    Wind,
    Dragon,
}

impl Suit {
    pub const NUMBERED: [Suit; 3] = [Suit::Man, Suit::Pin, Suit::Sou];

    pub fn is_numbered(self) -> bool {
        matches!(self, Suit::Man | Suit::Pin | Suit::Sou)
    }

    /// Index of the first kind of this suit.
    pub fn offset(self) -> usize {
        match self {
            Suit::Man => 0,
            Suit::Pin => 9,
            Suit::Sou => 18,
            Suit::Wind => 27,
            Suit::Dragon => 31,
        }
    }

    pub fn kind_count(self) -> usize {
        match self {
            Suit::Man | Suit::Pin | Suit::Sou => 9,
            Suit::Wind => 4,
            Suit::Dragon => 3,
        }
    }

    fn suffix(self) -> char {
        match self {
            Suit::Man => 'm',
            Suit::Pin => 'p',
            Suit::Sou => 's',
            Suit::Wind | Suit::Dragon => unreachable!("honors have no suffix"),
        }
    }
}

/// One of the 34 tile identities.
///
/// Indices 0–8 are Man 1–9, 9–17 Pin, 18–26 Sou, 27–30 the winds E/S/W/N
/// and 31–33 the dragons Red/Green/White.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileKind(u8);

const WIND_NAMES: [&str; 4] = ["E", "S", "W", "N"];
const DRAGON_NAMES: [&str; 3] = ["RD", "GD", "WD"];

impl TileKind {
    pub fn new(index: usize) -> Option<Self> {
        (index < NUM_KINDS).then_some(Self(index as u8))
    }

    /// Builds a kind from its suit and 1-based rank.
    pub fn from_suit_rank(suit: Suit, rank: u8) -> Option<Self> {
        if rank == 0 || rank as usize > suit.kind_count() {
            return None;
        }
        Self::new(suit.offset() + rank as usize - 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn suit(self) -> Suit {
        match self.0 {
            0..=8 => Suit::Man,
            9..=17 => Suit::Pin,
            18..=26 => Suit::Sou,
            27..=30 => Suit::Wind,
            _ => Suit::Dragon,
        }
    }

    pub fn rank(self) -> u8 {
        (self.index() - self.suit().offset() + 1) as u8
    }

    pub fn is_honor(self) -> bool {
        !self.suit().is_numbered()
    }

    /// All 34 kinds in index order.
    pub fn all() -> impl Iterator<Item = TileKind> {
        (0..NUM_KINDS as u8).map(TileKind)
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.suit() {
            Suit::Wind => f.write_str(WIND_NAMES[self.rank() as usize - 1]),
            Suit::Dragon => f.write_str(DRAGON_NAMES[self.rank() as usize - 1]),
            suit => write!(f, "{}{}", self.rank(), suit.suffix()),
        }
    }
}

impl fmt::Debug for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TileKind {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        parse_tile(token)
    }
}

/// Parses one token of the tile notation: `1m`..`9m`, `1p`..`9p`,
/// `1s`..`9s`, `E` `S` `W` `N`, `RD` `GD` `WD`.
pub fn parse_tile(token: &str) -> Result<TileKind> {
    let err = || Error::ParseTile(token.to_string());
    if let Some(i) = WIND_NAMES.iter().position(|&n| n == token) {
        return Ok(TileKind((27 + i) as u8));
    }
    if let Some(i) = DRAGON_NAMES.iter().position(|&n| n == token) {
        return Ok(TileKind((31 + i) as u8));
    }
    let bytes = token.as_bytes();
    if bytes.len() != 2 || !(b'1'..=b'9').contains(&bytes[0]) {
        return Err(err());
    }
    let suit = match bytes[1] {
        b'm' => Suit::Man,
        b'p' => Suit::Pin,
        b's' => Suit::Sou,
        _ => return Err(err()),
    };
    TileKind::from_suit_rank(suit, bytes[0] - b'0').ok_or_else(err)
}

/// A multiset of tiles stored as one count per kind.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TileCounts([u8; NUM_KINDS]);

/// The player's tiles (13 or 14 of them).
pub type HandCounts = TileCounts;

impl Default for TileCounts {
    fn default() -> Self {
        Self::empty()
    }
}

impl TileCounts {
    pub const fn empty() -> Self {
        Self([0; NUM_KINDS])
    }

    /// Four copies of every kind.
    pub const fn full_set() -> Self {
        Self([COPIES_PER_KIND; NUM_KINDS])
    }

    pub fn from_array(counts: [u8; NUM_KINDS]) -> Self {
        Self(counts)
    }

    pub fn from_kinds<I: IntoIterator<Item = TileKind>>(kinds: I) -> Self {
        let mut counts = Self::empty();
        for k in kinds {
            counts.0[k.index()] += 1;
        }
        counts
    }

    /// Parses space-separated tile tokens, e.g. `"1m 1m 2p E RD"`.
    pub fn parse(text: &str) -> Result<Self> {
        let kinds = text
            .split_whitespace()
            .map(parse_tile)
            .collect::<Result<Vec<_>>>()?;
        let counts = Self::from_kinds(kinds);
        if let Some(k) = TileKind::all().find(|&k| counts.get(k) > COPIES_PER_KIND) {
            return Err(Error::InvalidState(format!(
                "more than {COPIES_PER_KIND} copies of {k}"
            )));
        }
        Ok(counts)
    }

    #[inline]
    pub fn get(&self, kind: TileKind) -> u8 {
        self.0[kind.index()]
    }

    #[inline]
    pub fn as_array(&self) -> &[u8; NUM_KINDS] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn add(&mut self, kind: TileKind) {
        self.0[kind.index()] += 1;
    }

    /// Removes one copy; returns false if none was present.
    pub fn remove(&mut self, kind: TileKind) -> bool {
        let slot = &mut self.0[kind.index()];
        if *slot == 0 {
            return false;
        }
        *slot -= 1;
        true
    }

    /// Kinds with a nonzero count, in index order.
    pub fn kinds(&self) -> impl Iterator<Item = TileKind> + '_ {
        TileKind::all().filter(move |&k| self.get(k) > 0)
    }

    /// Every copy in index order (duplicates repeated).
    pub fn tiles(&self) -> impl Iterator<Item = TileKind> + '_ {
        TileKind::all().flat_map(move |k| std::iter::repeat_n(k, self.get(k) as usize))
    }

    /// Relabels the numbered suits: `perm[i]` is the new suit of suit `i`
    /// (0 = Man, 1 = Pin, 2 = Sou). Honors are untouched.
    pub fn permute_suits(&self, perm: [usize; 3]) -> Self {
        let mut out = *self;
        for (from, &to) in perm.iter().enumerate() {
            out.0[to * 9..to * 9 + 9].copy_from_slice(&self.0[from * 9..from * 9 + 9]);
        }
        out
    }
}

impl fmt::Display for TileCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.tiles().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TileCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for TileCounts {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Zone of one physical copy in the mark-array view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    Wall = 0,
    Hand = 1,
    Discard = 2,
}

/// Full game state of single-player Mahjong.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GameState {
    wall: TileCounts,
    hand: TileCounts,
    discard: TileCounts,
    turn: u32,
}

impl GameState {
    /// Builds a state from a 14-tile hand, everything else in the wall.
    pub fn from_hand(hand: HandCounts) -> Result<Self> {
        let mut wall = TileCounts::full_set();
        for k in hand.tiles() {
            if !wall.remove(k) {
                return Err(Error::InvalidState(format!("too many copies of {k}")));
            }
        }
        let state = Self {
            wall,
            hand,
            discard: TileCounts::empty(),
            turn: 0,
        };
        state.validate()?;
        Ok(state)
    }

    /// Builds a state from explicit zones. The turn counter is set to the
    /// number of discards.
    pub fn from_zones(wall: TileCounts, hand: TileCounts, discard: TileCounts) -> Result<Self> {
        let state = Self {
            wall,
            hand,
            discard,
            turn: discard.total() as u32,
        };
        state.validate()?;
        Ok(state)
    }

    /// Deals a fresh game from `seed`.
    pub fn deal(seed: u64) -> Self {
        Self::deal_with(&mut GameRng::from_seed(seed))
    }

    /// Deals 14 tiles by drawing uniformly, one physical copy at a time,
    /// from the full set. This is uniform over 14-subsets of the 136 tiles.
    pub fn deal_with(rng: &mut GameRng) -> Self {
        let mut state = Self {
            wall: TileCounts::full_set(),
            hand: TileCounts::empty(),
            discard: TileCounts::empty(),
            turn: 0,
        };
        for _ in 0..HAND_SIZE {
            let k = state.sample_wall(rng).expect("full set is nonempty");
            state.wall.remove(k);
            state.hand.add(k);
        }
        state
    }

    pub fn wall(&self) -> &TileCounts {
        &self.wall
    }

    pub fn hand(&self) -> &HandCounts {
        &self.hand
    }

    pub fn discards(&self) -> &TileCounts {
        &self.discard
    }

    pub fn turn(&self) -> u32 {
        self.turn
    }

    pub fn wall_size(&self) -> usize {
        self.wall.total()
    }

    /// Checks conservation and hand-size invariants.
    pub fn validate(&self) -> Result<()> {
        for k in TileKind::all() {
            let sum = self.wall.get(k) + self.hand.get(k) + self.discard.get(k);
            if sum != COPIES_PER_KIND {
                return Err(Error::InvalidState(format!(
                    "kind {k} has {sum} copies across zones"
                )));
            }
        }
        let hand = self.hand.total();
        if hand != HAND_SIZE && hand != HAND_SIZE - 1 {
            return Err(Error::InvalidState(format!("hand holds {hand} tiles")));
        }
        Ok(())
    }

    /// Moves one copy of `kind` from hand to discard pile (14 → 13 tiles).
    pub fn discard_tile(&self, kind: TileKind) -> Result<Self> {
        if self.hand.total() != HAND_SIZE {
            return Err(Error::HandSize {
                expected: HAND_SIZE,
                found: self.hand.total(),
            });
        }
        let mut next = *self;
        if !next.hand.remove(kind) {
            return Err(Error::NotInHand(kind));
        }
        next.discard.add(kind);
        next.turn += 1;
        Ok(next)
    }

    /// Moves one copy of `kind` from wall to hand (13 → 14 tiles).
    pub fn draw_tile(&self, kind: TileKind) -> Result<Self> {
        if self.hand.total() != HAND_SIZE - 1 {
            return Err(Error::HandSize {
                expected: HAND_SIZE - 1,
                found: self.hand.total(),
            });
        }
        let mut next = *self;
        if !next.wall.remove(kind) {
            return Err(Error::NotInWall(kind));
        }
        next.hand.add(kind);
        Ok(next)
    }

    /// One full action: discard `discard`, then draw `drawn`.
    pub fn apply(&self, discard: TileKind, drawn: TileKind) -> Result<Self> {
        self.discard_tile(discard)?.draw_tile(drawn)
    }

    /// Exact distribution of the next drawn kind. Expects the post-discard
    /// 13-tile hand.
    pub fn draw_distribution(&self) -> Result<DrawDistribution> {
        if self.hand.total() != HAND_SIZE - 1 {
            return Err(Error::HandSize {
                expected: HAND_SIZE - 1,
                found: self.hand.total(),
            });
        }
        DrawDistribution::from_wall(&self.wall)
    }

    /// Picks a uniformly random physical copy from the wall.
    pub fn sample_wall(&self, rng: &mut GameRng) -> Option<TileKind> {
        let total = self.wall.total() as u32;
        if total == 0 {
            return None;
        }
        let mut pick = rng.below(total);
        for k in TileKind::all() {
            let c = self.wall.get(k) as u32;
            if pick < c {
                return Some(k);
            }
            pick -= c;
        }
        unreachable!("pick is below the wall total")
    }

    /// The 34×4 per-copy view: `marks[k][c]` is the zone of copy `c` of kind
    /// `k`. Copies are listed hand first, then discard, then wall.
    pub fn mark_array(&self) -> [[Zone; COPIES_PER_KIND as usize]; NUM_KINDS] {
        let mut marks = [[Zone::Wall; COPIES_PER_KIND as usize]; NUM_KINDS];
        for k in TileKind::all() {
            let row = &mut marks[k.index()];
            let h = self.hand.get(k) as usize;
            let d = self.discard.get(k) as usize;
            row[..h].fill(Zone::Hand);
            row[h..h + d].fill(Zone::Discard);
        }
        marks
    }
}

/// One kind's share of the next draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrawEntry {
    pub kind: TileKind,
    /// Physical copies of `kind` left in the wall.
    pub copies: u8,
    pub probability: f64,
}

/// Draw probabilities grouped by kind; only kinds present in the wall appear.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawDistribution {
    pub entries: Vec<DrawEntry>,
    /// Physical tiles left in the wall.
    pub wall_total: u32,
}

impl DrawDistribution {
    pub fn from_wall(wall: &TileCounts) -> Result<Self> {
        let wall_total = wall.total() as u32;
        if wall_total == 0 {
            return Err(Error::WallExhausted);
        }
        let entries = wall
            .kinds()
            .map(|kind| {
                let copies = wall.get(kind);
                DrawEntry {
                    kind,
                    copies,
                    probability: copies as f64 / wall_total as f64,
                }
            })
            .collect();
        Ok(Self {
            entries,
            wall_total,
        })
    }
}

#[cfg(test)]
pub(crate) fn hand(text: &str) -> HandCounts {
    // Test shorthand: "1m*3 2m*3 E*2" expands repeated tokens.
    let mut kinds = Vec::new();
    for tok in text.split_whitespace() {
        let (t, n) = match tok.split_once('*') {
            Some((t, n)) => (t, n.parse::<usize>().unwrap()),
            None => (tok, 1),
        };
        let k = parse_tile(t).unwrap();
        kinds.extend(std::iter::repeat_n(k, n));
    }
    TileCounts::from_kinds(kinds)
}
