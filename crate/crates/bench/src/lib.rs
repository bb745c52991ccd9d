//! Fixtures shared by the benchmarks.

use qpower::{Coalition, Model, SimpleGame};

/// Simple majority on `n` players.
pub fn majority(n: usize) -> SimpleGame {
    SimpleGame::quota_majority(n, n / 2 + 1).expect("valid majority game")
}

/// Weighted game with weights `1..=n` and quota just above half the total.
pub fn ladder(n: usize) -> SimpleGame {
    let weights = (1..=n as i64).map(qpower::rational::int).collect();
    let total = (n * (n + 1) / 2) as i64;
    SimpleGame::weighted(
        n,
        Model::Standard,
        weights,
        qpower::rational::int(total / 2 + 1),
    )
    .expect("valid weighted game")
}

/// Explicit table of the same winning sets, to benchmark dense lookups.
pub fn explicit(game: &SimpleGame) -> SimpleGame {
    SimpleGame::from_predicate(game.n(), game.model(), |s: Coalition| game.is_winning(s))
        .expect("enumerable game")
}
