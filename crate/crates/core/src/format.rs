//! JSON documents for games and rescaling rows.
//!
//! ```json
//! {"n": 4, "model": "standard",
//!  "representation": {"type": "minimal_winning", "coalitions": [[0], [1, 2]]}}
//! ```
//!
//! Rationals are written as `"p/q"` strings; integers are also accepted.
//! TU tables map comma-joined player indices (`""` for the empty set) to
//! worths; coalitions left out are worth 0.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coalition::{all_coalitions, Coalition};
use crate::error::{Error, Result};
use crate::game::{Model, Representation, SimpleGame};
use crate::rational::Rational;
use crate::rescaling::{RescalingFamily, RescalingRow};
use crate::tu::TuGame;

/// A rational carried as `"p/q"` text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Num(#[serde(with = "crate::rational::serde_rational")] pub Rational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RepresentationDoc {
    MinimalWinning { coalitions: Vec<Vec<usize>> },
    ExplicitWinning { coalitions: Vec<Vec<usize>> },
    Weighted { weights: Vec<Num>, quota: Num },
    Unanimity { coalition: Vec<usize> },
    Empty,
    Trivial,
    TuTable { values: BTreeMap<String, Num> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub n: usize,
    #[serde(default)]
    pub model: Model,
    pub representation: RepresentationDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A parsed game file: simple or TU.
#[derive(Clone, Debug)]
pub enum LoadedGame {
    Simple(SimpleGame),
    Tu(TuGame),
}

impl LoadedGame {
    pub fn n(&self) -> usize {
        match self {
            LoadedGame::Simple(g) => g.n(),
            LoadedGame::Tu(g) => g.n(),
        }
    }

    pub fn as_simple(&self) -> Option<&SimpleGame> {
        match self {
            LoadedGame::Simple(g) => Some(g),
            LoadedGame::Tu(_) => None,
        }
    }
}

fn coalition(players: &[usize], n: usize) -> Result<Coalition> {
    let s = Coalition::try_from_players(players.iter().copied(), n)?;
    if s.len() != players.len() {
        return Err(Error::Parse(format!(
            "repeated player in coalition {players:?}"
        )));
    }
    Ok(s)
}

fn coalition_key(s: Coalition) -> String {
    s.players()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_key(key: &str, n: usize) -> Result<Coalition> {
    if key.trim().is_empty() {
        return Ok(Coalition::EMPTY);
    }
    let players = key
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad coalition key `{key}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    coalition(&players, n)
}

impl GameDocument {
    pub fn into_game(self) -> Result<LoadedGame> {
        let GameDocument {
            n,
            model,
            representation,
            labels,
        } = self;
        let coalitions = |list: &[Vec<usize>]| {
            list.iter()
                .map(|c| coalition(c, n))
                .collect::<Result<Vec<_>>>()
        };
        let game = match representation {
            RepresentationDoc::MinimalWinning { coalitions: c } => {
                SimpleGame::minimal_winning(n, model, coalitions(&c)?)?
            }
            RepresentationDoc::ExplicitWinning { coalitions: c } => {
                SimpleGame::explicit_winning(n, model, coalitions(&c)?)?
            }
            RepresentationDoc::Weighted { weights, quota } => SimpleGame::weighted(
                n,
                model,
                weights.into_iter().map(|w| w.0).collect(),
                quota.0,
            )?,
            RepresentationDoc::Unanimity { coalition: c } => {
                SimpleGame::unanimity(n, model, coalition(&c, n)?)?
            }
            RepresentationDoc::Empty => SimpleGame::empty(n, model)?,
            RepresentationDoc::Trivial => SimpleGame::trivial(n, model)?,
            RepresentationDoc::TuTable { values } => {
                if labels.is_some() {
                    return Err(Error::Parse(
                        "labels are only supported on simple games".into(),
                    ));
                }
                let mut table: BTreeMap<u64, Rational> = BTreeMap::new();
                for (key, v) in values {
                    let s = parse_key(&key, n)?;
                    if table.insert(s.bits(), v.0).is_some() {
                        return Err(Error::Parse(format!("coalition `{key}` listed twice")));
                    }
                }
                let tu = TuGame::from_fn(n, model, |s| {
                    table.get(&s.bits()).cloned().unwrap_or_default()
                })?;
                return Ok(LoadedGame::Tu(tu));
            }
        };
        Ok(LoadedGame::Simple(match labels {
            Some(l) => game.with_labels(l)?,
            None => game,
        }))
    }

    /// Document preserving the game's representation.
    pub fn from_simple(game: &SimpleGame) -> Self {
        let n = game.n();
        let list = |cs: Vec<Coalition>| cs.into_iter().map(|s| s.players().collect()).collect();
        let representation = match game.representation() {
            Representation::MinimalWinning(m) => RepresentationDoc::MinimalWinning {
                coalitions: list(m.clone()),
            },
            Representation::ExplicitWinning(_) => RepresentationDoc::ExplicitWinning {
                coalitions: list(all_coalitions(n).filter(|&s| game.is_winning(s)).collect()),
            },
            Representation::Weighted { weights, quota, .. } => RepresentationDoc::Weighted {
                weights: weights.iter().cloned().map(Num).collect(),
                quota: Num(quota.clone()),
            },
            Representation::Unanimity(s) => RepresentationDoc::Unanimity {
                coalition: s.players().collect(),
            },
            Representation::Empty => RepresentationDoc::Empty,
            Representation::Trivial => RepresentationDoc::Trivial,
        };
        GameDocument {
            n,
            model: game.model(),
            representation,
            labels: game.labels().map(<[String]>::to_vec),
        }
    }

    /// Full table including zero entries.
    pub fn from_tu(game: &TuGame) -> Self {
        let values = all_coalitions(game.n())
            .map(|s| (coalition_key(s), Num(game.value(s).clone())))
            .collect();
        GameDocument {
            n: game.n(),
            model: game.model(),
            representation: RepresentationDoc::TuTable { values },
            labels: None,
        }
    }
}

pub fn parse_game(text: &str) -> Result<LoadedGame> {
    let doc: GameDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_game()
}

pub fn game_to_json(game: &SimpleGame) -> String {
    serde_json::to_string_pretty(&GameDocument::from_simple(game))
        .expect("game documents always serialize")
}

pub fn tu_game_to_json(game: &TuGame) -> String {
    serde_json::to_string_pretty(&GameDocument::from_tu(game))
        .expect("game documents always serialize")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RescalingDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Num>>,
    #[serde(default, rename = "F", skip_serializing_if = "Option::is_none")]
    pub tail: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

/// Either a whole family or a single row for one `n`.
#[derive(Clone, Debug)]
pub enum RescalingSpec {
    Family(RescalingFamily),
    Row(RescalingRow),
}

impl RescalingSpec {
    /// The row for an `n`-player game.
    pub fn row(&self, n: usize) -> Result<RescalingRow> {
        match self {
            RescalingSpec::Family(f) => f.row(n),
            RescalingSpec::Row(r) if r.n() == n => Ok(r.clone()),
            RescalingSpec::Row(r) => Err(Error::DimensionMismatch {
                expected: n,
                found: r.n(),
            }),
        }
    }

    pub fn family(&self) -> Option<&RescalingFamily> {
        match self {
            RescalingSpec::Family(f) => Some(f),
            RescalingSpec::Row(_) => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            RescalingSpec::Family(f) => f.name().to_string(),
            RescalingSpec::Row(r) => format!("row(n={})", r.n()),
        }
    }
}

impl RescalingDocument {
    pub fn into_spec(self) -> Result<RescalingSpec> {
        let unwrap = |v: Vec<Num>| v.into_iter().map(|x| x.0).collect::<Vec<_>>();
        let given = [
            self.mu.is_some(),
            self.f.is_some(),
            self.tail.is_some(),
            self.family.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(Error::Parse(
                "a rescaling document needs exactly one of `mu`, `f`, `F`, `family`".into(),
            ));
        }
        if let Some(name) = self.family {
            return Ok(RescalingSpec::Family(RescalingFamily::by_name(&name)?));
        }
        let n = self
            .n
            .ok_or_else(|| Error::Parse("a rescaling row needs `n`".into()))?;
        let row = match (self.mu, self.f, self.tail) {
            (Some(mu), _, _) => RescalingRow::from_mu(n, unwrap(mu))?,
            (_, Some(f), _) => RescalingRow::from_f(n, unwrap(f))?,
            (_, _, Some(t)) => RescalingRow::from_tail(n, unwrap(t))?,
            _ => unreachable!("exactly one field is present"),
        };
        Ok(RescalingSpec::Row(row))
    }

    pub fn from_row(row: &RescalingRow) -> Self {
        RescalingDocument {
            n: Some(row.n()),
            mu: Some(row.mu_values().iter().cloned().map(Num).collect()),
            ..Default::default()
        }
    }
}

pub fn parse_rescaling(text: &str) -> Result<RescalingSpec> {
    let doc: RescalingDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_spec()
}
