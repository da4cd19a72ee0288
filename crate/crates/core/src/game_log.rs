//! Line-oriented text format for [`GameLog`].
//!
//! ```text
//! mahjong-game-log v1
//! seed 42
//! weight 0
//! base_payoff 2
//! rules base=1 dragon_triplet=1 wind_triplet=1 all_triplets=2 half_flush=2 full_flush=4 all_honors=3
//! turn 1 | hand 1m 1m 2m ... | discard 9p | draw 3s | q 1m=-0.0246 2m=... 9p=0.0164
//! turn 2 | hand ... | discard E | draw 4s
//! outcome won | discards 2 | multiplier 1 | items - | individual 4 | total 12
//! ```
//!
//! One turn per line; the `q` field is present only when Q-values were
//! recorded. Reals use Rust's shortest round-trip formatting, so parsing a
//! rendered log gives back the identical value. An exhausted game ends with
//! `outcome exhausted | discards 122`.

use std::fmt::Write as _;

use crate::engine::{GameLog, Outcome, TurnRecord};
use crate::error::{Error, Result};
use crate::hand_eval::{ScoreBreakdown, ScoreRules};
use crate::planner::{argmax_first, QReport};
use crate::shaping::ShapingParams;
use crate::tileset::{parse_tile, TileCounts};

pub const HEADER: &str = "mahjong-game-log v1";

impl GameLog {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "weight {}", p.weight);
        let _ = writeln!(out, "base_payoff {}", p.base_payoff);
        let rules: Vec<String> = p
            .rules
            .entries()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(out, "rules {}", rules.join(" "));
        for (i, t) in self.turns.iter().enumerate() {
            let _ = write!(
                out,
                "turn {} | hand {} | discard {} | draw {}",
                i + 1,
                t.hand,
                t.discard,
                t.drawn
            );
            if let Some(q) = &t.q_report {
                let qs: Vec<String> = q.actions.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = write!(out, " | q {}", qs.join(" "));
            }
            out.push('\n');
        }
        match &self.outcome {
            Outcome::Won { score, discards } => {
                let items = if score.items.is_empty() {
                    "-".to_string()
                } else {
                    score
                        .items
                        .iter()
                        .map(|(n, v)| format!("{n}={v}"))
                        .collect::<Vec<_>>()
                        .join(",")
                };
                let _ = writeln!(
                    out,
                    "outcome won | discards {discards} | multiplier {} | items {items} | individual {} | total {}",
                    score.multiplier, score.individual_payoff, score.total_payoff
                );
            }
            Outcome::Exhausted { discards } => {
                let _ = writeln!(out, "outcome exhausted | discards {discards}");
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let lines = &mut lines;

        let (n, header) = next_line(lines, "header")?;
        if header != HEADER {
            return Err(bad(n, format!("unsupported header `{header}`")));
        }
        let (n, l) = next_line(lines, "seed")?;
        let seed = parse_num(n, keyed(n, l, "seed")?)?;
        let (n, l) = next_line(lines, "weight")?;
        let weight = parse_num(n, keyed(n, l, "weight")?)?;
        let (n, l) = next_line(lines, "base_payoff")?;
        let base_payoff = parse_num(n, keyed(n, l, "base_payoff")?)?;
        let (n, l) = next_line(lines, "rules")?;
        let kv = keyed(n, l, "rules")?
            .split_whitespace()
            .map(|pair| pair.replacen('=', " = ", 1))
            .collect::<Vec<_>>()
            .join("\n");
        let rules = ScoreRules::from_kv_str(&kv).map_err(|e| bad(n, e.to_string()))?;
        let params = ShapingParams {
            weight,
            base_payoff,
            rules,
        };

        let mut turns = Vec::new();
        loop {
            let (n, l) = next_line(lines, "outcome")?;
            if l.starts_with("turn ") {
                turns.push(parse_turn(n, l, turns.len() + 1)?);
                continue;
            }
            let outcome = parse_outcome(n, l)?;
            if let Some((n, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
                return Err(bad(n, format!("unexpected trailing line `{extra}`")));
            }
            return Ok(GameLog {
                seed,
                params,
                turns,
                outcome,
            });
        }
    }
}

fn next_line<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    what: &str,
) -> Result<(usize, &'a str)> {
    lines
        .next()
        .ok_or_else(|| bad(0, format!("missing {what}")))
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::LogFormat {
        line,
        message: message.into(),
    }
}

fn keyed<'a>(n: usize, line: &'a str, key: &str) -> Result<&'a str> {
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| bad(n, format!("expected `{key} ...`")))
}

fn parse_num<T: std::str::FromStr>(n: usize, text: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| bad(n, format!("invalid number `{text}`")))
}

fn parse_turn(n: usize, line: &str, expected: usize) -> Result<TurnRecord> {
    let fields: Vec<&str> = line.split(" | ").collect();
    if !(4..=5).contains(&fields.len()) {
        return Err(bad(n, "turn needs 4 or 5 fields"));
    }
    let index: usize = parse_num(n, keyed(n, fields[0], "turn")?)?;
    if index != expected {
        return Err(bad(
            n,
            format!("turn {index} out of sequence, expected {expected}"),
        ));
    }
    let hand =
        TileCounts::parse(keyed(n, fields[1], "hand")?).map_err(|e| bad(n, e.to_string()))?;
    let tile = |field: &str, key: &str| {
        parse_tile(keyed(n, field, key)?).map_err(|e| bad(n, e.to_string()))
    };
    let discard = tile(fields[2], "discard")?;
    let drawn = tile(fields[3], "draw")?;
    let q_report = match fields.get(4) {
        None => None,
        Some(field) => {
            let actions = keyed(n, field, "q")?
                .split_whitespace()
                .map(|pair| {
                    let (k, v) = pair
                        .split_once('=')
                        .ok_or_else(|| bad(n, format!("bad q entry `{pair}`")))?;
                    Ok((
                        parse_tile(k).map_err(|e| bad(n, e.to_string()))?,
                        parse_num::<f64>(n, v)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let best = argmax_first(actions.iter().map(|&(_, q)| q))
                .map(|i| actions[i].0)
                .ok_or_else(|| bad(n, "empty q field"))?;
            Some(QReport { actions, best })
        }
    };
    Ok(TurnRecord {
        hand,
        q_report,
        discard,
        drawn,
    })
}

fn parse_outcome(n: usize, line: &str) -> Result<Outcome> {
    let fields: Vec<&str> = line.split(" | ").collect();
    match keyed(n, fields[0], "outcome")? {
        "exhausted" if fields.len() == 2 => Ok(Outcome::Exhausted {
            discards: parse_num(n, keyed(n, fields[1], "discards")?)?,
        }),
        "won" if fields.len() == 6 => {
            let discards = parse_num(n, keyed(n, fields[1], "discards")?)?;
            let multiplier = parse_num(n, keyed(n, fields[2], "multiplier")?)?;
            let items = match keyed(n, fields[3], "items")? {
                "-" => Vec::new(),
                list => list
                    .split(',')
                    .map(|item| {
                        let (name, v) = item
                            .split_once('=')
                            .ok_or_else(|| bad(n, format!("bad item `{item}`")))?;
                        Ok((name.to_string(), parse_num(n, v)?))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            let individual_payoff = parse_num(n, keyed(n, fields[4], "individual")?)?;
            let total_payoff = parse_num(n, keyed(n, fields[5], "total")?)?;
            Ok(Outcome::Won {
                score: ScoreBreakdown {
                    multiplier,
                    items,
                    individual_payoff,
                    total_payoff,
                },
                discards,
            })
        }
        _ => Err(bad(n, format!("unrecognized outcome `{line}`"))),
    }
}
