//! Exhaustive generation of monotone simple games for small `n`.

use crate::coalition::{all_coalitions, Coalition};
use crate::error::{Error, Result};
use crate::game::{Model, SimpleGame};

/// Largest `n` for which [`monotone_truth_tables`] is offered; the count of
/// monotone Boolean functions on seven variables is already 2.4e12.
pub const MAX_MONOTONE_N: usize = 6;

/// Truth tables (bit `s` set iff coalition `s` wins) of every monotone
/// family of coalitions on `n` players, including the empty and the trivial
/// family. Counts follow the Dedekind numbers 2, 3, 6, 20, 168, 7581, ...
pub fn monotone_truth_tables(n: usize) -> Result<Vec<u64>> {
    if n > MAX_MONOTONE_N {
        return Err(Error::Capacity {
            n,
            limit: MAX_MONOTONE_N,
        });
    }
    let mut level: Vec<u64> = vec![0, 1];
    for m in 1..=n {
        let half = 1u32 << (m - 1);
        let mut next = Vec::new();
        for &low in &level {
            for &high in &level {
                // Adding player m-1 may only turn losing coalitions into winning ones.
                if low & !high == 0 {
                    next.push(low | high << half);
                }
            }
        }
        next.sort_unstable();
        level = next;
    }
    Ok(level)
}

/// Every monotone simple game on `n` players legal in `model`: the trivial
/// game is excluded from the standard model.
pub fn all_monotone_games(n: usize, model: Model) -> Result<Vec<SimpleGame>> {
    monotone_truth_tables(n)?
        .into_iter()
        .filter(|t| model == Model::Extended || t & 1 == 0)
        .map(|t| SimpleGame::from_predicate(n, model, |s: Coalition| t >> s.bits() & 1 == 1))
        .collect()
}

/// Truth table of `game` in the encoding used by [`monotone_truth_tables`].
pub fn truth_table(game: &SimpleGame) -> Result<u64> {
    if game.n() > MAX_MONOTONE_N {
        return Err(Error::Capacity {
            n: game.n(),
            limit: MAX_MONOTONE_N,
        });
    }
    Ok(all_coalitions(game.n())
        .filter(|&s| game.is_winning(s))
        .fold(0u64, |acc, s| acc | 1 << s.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedekind_numbers() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| monotone_truth_tables(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![2, 3, 6, 20, 168, 7581]);
    }

    #[test]
    fn every_table_is_monotone() {
        for game in all_monotone_games(4, Model::Extended).unwrap() {
            assert!(game
                .monotone_closure()
                .unwrap()
                .same_winning_sets(&game)
                .unwrap());
            assert!(game.is_monotone());
        }
    }

    #[test]
    fn standard_model_drops_trivial() {
        assert_eq!(all_monotone_games(3, Model::Standard).unwrap().len(), 19);
        let d = SimpleGame::dictator(3, 1).unwrap();
        let t = truth_table(&d).unwrap();
        assert!(monotone_truth_tables(3).unwrap().contains(&t));
    }
}
