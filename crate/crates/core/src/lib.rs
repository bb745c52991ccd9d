//! Decisiveness and power measures for simple and TU cooperative games.
//!
//! The central quantity is the expected stop time of the *query process*:
//! players are queried in uniformly random order until the queried set
//! contains a winning coalition. Rescaling the stop time by an admissible
//! function of coalition size gives a family of collective measures whose
//! player-deletion differences are exactly the weighted semivalues.
//!
//! ```
//! use qpower::{q_star, qbar, RescalingFamily, SimpleGame};
//!
//! let game = SimpleGame::from_digits(4, "12;13;23").unwrap();
//! let uniform = RescalingFamily::uniform().row(4).unwrap();
//! assert_eq!(q_star(&game, &uniform).unwrap(), qpower::rational::ratio(1, 2));
//! assert_eq!(qbar(&game).unwrap(), qpower::rational::ratio(5, 2));
//! ```

pub mod allocation;
pub mod coalition;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod game;
pub mod manipulation;
pub mod measures;
pub mod rational;
pub mod report;
pub mod rescaling;
pub mod simulate;
pub mod table;
pub mod tu;

pub use allocation::Allocation;
pub use coalition::{all_coalitions, coalitions_of_size, Coalition, MAX_PLAYERS, N_MAX};
pub use error::{Error, Result};
pub use format::{parse_game, parse_rescaling, LoadedGame, RescalingSpec};
pub use game::{Classification, Game, Model, Representation, SimpleGame, SizeProfile, TypeCounts};
pub use manipulation::{
    build_manipulation_game, can_manipulate, sincere_outcome, Candidate, OutcomeLottery, Profile,
    Ranking, ScoringRule,
};
pub use measures::{
    banzhaf, coalition_formation, measure_report, q_star, q_star_allocation, q_star_individual,
    q_star_marginal, qbar, semivalue, shapley, CoalitionDistribution, MeasureReport,
};
pub use rational::Rational;
pub use report::{Report, ReportValue};
pub use rescaling::{
    check_recursion, Builtin, Normalized, RecursionForm, RecursionReport, RescalingFamily,
    RescalingRow, SizeWeights,
};
pub use simulate::{
    bargaining, bargaining_exact, bargaining_montecarlo, enumerate_query_distribution,
    estimate_awards, estimate_qbar, exact_query_cdf, run_query, BargainMode, SimConfig,
};
pub use table::{table4, Table4Row};
pub use tu::TuGame;
