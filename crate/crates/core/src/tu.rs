//! Transferable-utility games stored as a dense table of exact worths.

use num_traits::Zero;

use crate::coalition::{all_coalitions, ensure_enumerable, Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::game::{check_permutation, check_player, Game, Model, SimpleGame};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuGame {
    n: usize,
    model: Model,
    values: Vec<Rational>,
}

impl TuGame {
    /// `values[s.bits()]` is the worth of coalition `s`.
    pub fn new(n: usize, model: Model, values: Vec<Rational>) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::InvalidPlayerCount(n));
        }
        ensure_enumerable(n)?;
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        if model == Model::Standard && !values[0].is_zero() {
            return Err(Error::NonzeroEmptyWorth);
        }
        Ok(TuGame { n, model, values })
    }

    pub fn from_fn(n: usize, model: Model, worth: impl Fn(Coalition) -> Rational) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::InvalidPlayerCount(n));
        }
        ensure_enumerable(n)?;
        Self::new(n, model, all_coalitions(n).map(worth).collect())
    }

    /// Additive game `v(S) = sum of weights of members`.
    pub fn additive(weights: &[Rational]) -> Result<Self> {
        Self::from_fn(weights.len(), Model::Standard, |s| {
            s.players()
                .fold(Rational::zero(), |acc, i| acc + &weights[i])
        })
    }

    pub fn from_simple(game: &SimpleGame) -> Result<Self> {
        Self::from_fn(game.n(), game.model(), |s| int(game.is_winning(s) as i64))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn value(&self, s: Coalition) -> &Rational {
        &self.values[s.bits() as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn grand_value(&self) -> &Rational {
        self.value(Coalition::grand(self.n))
    }

    /// `a * u + b * w`, pointwise.
    pub fn linear_combination(a: &Rational, u: &TuGame, b: &Rational, w: &TuGame) -> Result<Self> {
        if u.n != w.n {
            return Err(Error::DimensionMismatch {
                expected: u.n,
                found: w.n,
            });
        }
        let model = if u.model == Model::Extended || w.model == Model::Extended {
            Model::Extended
        } else {
            Model::Standard
        };
        let values = u
            .values
            .iter()
            .zip(&w.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Self::new(u.n, model, values)
    }

    /// `v*(S) = v(X) - v(X \ S)`.
    pub fn dual(&self) -> TuGame {
        let n = self.n;
        let grand = self.grand_value().clone();
        let values = all_coalitions(n)
            .map(|s| &grand - self.value(s.complement(n)))
            .collect();
        TuGame {
            n,
            model: self.model,
            values,
        }
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    /// Deletes player `i`; see [`SimpleGame::restrict`] for the index map.
    pub fn restrict(&self, i: usize) -> Result<(TuGame, Vec<usize>)> {
        check_player(i, self.n)?;
        if self.n < 2 {
            return Err(Error::TooFewPlayers {
                n: self.n,
                required: 2,
            });
        }
        let kept: Vec<usize> = (0..self.n).filter(|&j| j != i).collect();
        let values = all_coalitions(self.n - 1)
            .map(|s| {
                self.value(Coalition::from_players(s.players().map(|j| kept[j])))
                    .clone()
            })
            .collect();
        Ok((
            TuGame {
                n: self.n - 1,
                model: self.model,
                values,
            },
            kept,
        ))
    }

    /// Renames player `j` to `perm[j]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<TuGame> {
        check_permutation(perm, self.n)?;
        let mut values = vec![Rational::zero(); self.values.len()];
        for s in all_coalitions(self.n) {
            values[s.permute(perm).bits() as usize] = self.value(s).clone();
        }
        Ok(TuGame {
            n: self.n,
            model: self.model,
            values,
        })
    }
}

impl Game for TuGame {
    fn player_count(&self) -> usize {
        self.n
    }

    fn model(&self) -> Model {
        self.model
    }

    fn worth(&self, s: Coalition) -> Rational {
        self.value(s).clone()
    }
}
