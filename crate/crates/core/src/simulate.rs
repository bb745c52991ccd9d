//! Monte Carlo and exact-enumeration engines for the random query process,
//! the sequential award scheme and the bargaining proposer protocol.
//!
//! Every trial draws from its own ChaCha8 stream selected by the trial
//! index, and trials only ever add into integer tallies. A run is therefore
//! a pure function of `(seed, trials)`, whatever the worker count.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::allocation::Allocation;
use crate::coalition::{ensure_enumerable, Coalition};
use crate::error::{Error, Result};
use crate::game::{check_permutation, SimpleGame};
use crate::rational::{binomial, int, to_f64, Rational};
use crate::rescaling::RescalingRow;

/// Largest `n` for [`enumerate_query_distribution`].
pub const MAX_PERMUTATION_N: usize = 9;

/// Default cap on proposer rounds per bargaining trial.
pub const DEFAULT_MAX_ROUNDS: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryOutcome {
    /// Number of queries made; `n + 1` when nothing wins, `0` when the empty
    /// coalition already wins.
    pub stop_time: usize,
    /// The last player queried, when the process stopped on a player.
    pub pivot: Option<usize>,
}

/// Runs the query process along `order`. Stops as soon as the queried set
/// contains a winning coalition.
pub fn run_query(game: &SimpleGame, order: &[usize]) -> Result<QueryOutcome> {
    check_permutation(order, game.n())?;
    Ok(query_with(order, |s| game.contains_winning(s)))
}

fn query_with(order: &[usize], wins: impl Fn(Coalition) -> bool) -> QueryOutcome {
    if wins(Coalition::EMPTY) {
        return QueryOutcome {
            stop_time: 0,
            pivot: None,
        };
    }
    let mut seen = Coalition::EMPTY;
    for (pos, &player) in order.iter().enumerate() {
        seen = seen.with(player);
        if wins(seen) {
            return QueryOutcome {
                stop_time: pos + 1,
                pivot: Some(player),
            };
        }
    }
    QueryOutcome {
        stop_time: order.len() + 1,
        pivot: None,
    }
}

/// `Pr(Q <= k) = |W_k| / C(n, k)` for `k = 0..=n`, and `1` at `k = n + 1`,
/// evaluated on the monotone closure.
pub fn exact_query_cdf(game: &SimpleGame) -> Result<Vec<Rational>> {
    let n = game.n();
    let profile = game.monotone_closure()?.size_profile()?;
    let mut cdf: Vec<Rational> = profile
        .winning_counts
        .iter()
        .enumerate()
        .map(|(k, &w)| Rational::new(BigInt::from(w), binomial(n, k)))
        .collect();
    cdf.push(int(1));
    Ok(cdf)
}

/// `Pr(Q = t)` for `t = 0..=n+1`, by running the query process along every
/// one of the `n!` orders.
pub fn enumerate_query_distribution(game: &SimpleGame) -> Result<Vec<Rational>> {
    let n = game.n();
    if n > MAX_PERMUTATION_N {
        return Err(Error::Capacity {
            n,
            limit: MAX_PERMUTATION_N,
        });
    }
    let closed = game.monotone_closure()?;
    let mut counts = vec![0u64; n + 2];
    let mut order: Vec<usize> = (0..n).collect();
    let mut total = 0u64;
    for_each_permutation(&mut order, 0, &mut |perm| {
        counts[query_with(perm, |s| closed.is_winning(s)).stop_time] += 1;
        total += 1;
    });
    Ok(counts
        .into_iter()
        .map(|c| Rational::new(c.into(), total.into()))
        .collect())
}

fn for_each_permutation(items: &mut [usize], start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for j in start..items.len() {
        items.swap(start, j);
        for_each_permutation(items, start + 1, visit);
        items.swap(start, j);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `0` or `1` runs on the calling thread. Does not
    /// affect results.
    pub workers: usize,
    /// Cap on bargaining rounds per trial.
    pub max_rounds: u64,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        SimConfig {
            trials,
            seed,
            workers: 1,
            max_rounds: DEFAULT_MAX_ROUNDS,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_max_rounds(mut self, max_rounds: u64) -> Self {
        self.max_rounds = max_rounds;
        self
    }
}

/// The generator for one trial: stream `trial` of the ChaCha8 key derived
/// from `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn run_trials<A, Z, T, M>(cfg: &SimConfig, zero: Z, trial: T, merge: M) -> Result<A>
where
    A: Send,
    Z: Fn() -> A + Sync + Send,
    T: Fn(&mut A, &mut ChaCha8Rng) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    if cfg.workers <= 1 {
        let mut acc = zero();
        for t in 0..cfg.trials {
            trial(&mut acc, &mut trial_rng(cfg.seed, t));
        }
        return Ok(acc);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Parse(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .fold(&zero, |mut acc, t| {
                trial(&mut acc, &mut trial_rng(cfg.seed, t));
                acc
            })
            .reduce(&zero, &merge)
    }))
}

fn add_into(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// A sample mean with its standard error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    /// Exact sample mean.
    #[serde(with = "crate::rational::serde_rational")]
    pub mean: Rational,
    pub value: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub std_error: f64,
}

impl Estimate {
    /// From `(outcome value, count)` tallies; outcomes not listed count as 0.
    pub fn from_tallies(tallies: &[(Rational, u64)], trials: u64) -> Self {
        if trials == 0 {
            return Estimate {
                mean: Rational::zero(),
                value: 0.0,
                std_error: f64::NAN,
            };
        }
        let n = int(trials as i64);
        let sum: Rational = tallies.iter().map(|(x, c)| x * int(*c as i64)).sum();
        let sum_sq: Rational = tallies.iter().map(|(x, c)| x * x * int(*c as i64)).sum();
        let mean = &sum / &n;
        let std_error = if trials > 1 {
            let var = (sum_sq - &mean * &sum) / (&n - int(1));
            (to_f64(&var).max(0.0) / trials as f64).sqrt()
        } else {
            0.0
        };
        Estimate {
            value: to_f64(&mean),
            mean,
            std_error,
        }
    }

    /// `|value - target|` measured in standard errors; zero-variance
    /// estimates must hit the target exactly.
    pub fn z_score(&self, target: &Rational) -> f64 {
        let diff = (self.value - to_f64(target)).abs();
        if self.std_error == 0.0 {
            if self.mean == *target {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / self.std_error
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub trials: u64,
    pub seed: u64,
    /// One entry for scalar estimates, one per player otherwise.
    pub estimates: Vec<Estimate>,
    /// `counts[t]` = trials whose query process stopped after `t` queries.
    pub stop_time_counts: Option<Vec<u64>>,
    /// Trials abandoned after hitting the round cap.
    pub capped_trials: u64,
}

/// Samples uniformly random query orders and averages the stop time.
pub fn estimate_qbar(game: &SimpleGame, cfg: &SimConfig) -> Result<EstimateReport> {
    let closed = game.monotone_closure()?;
    let n = closed.n();
    let counts = run_trials(
        cfg,
        || vec![0u64; n + 2],
        |acc, rng| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            acc[query_with(&order, |s| closed.is_winning(s)).stop_time] += 1;
        },
        add_into,
    )?;
    let tallies: Vec<(Rational, u64)> = counts
        .iter()
        .enumerate()
        .map(|(t, &c)| (int(t as i64), c))
        .collect();
    Ok(EstimateReport {
        trials: cfg.trials,
        seed: cfg.seed,
        estimates: vec![Estimate::from_tallies(&tallies, cfg.trials)],
        stop_time_counts: Some(counts),
        capped_trials: 0,
    })
}

/// Runs the query process and awards `k · mu_n(k)` to the pivot when it
/// stops after `k` queries; reports each player's mean award.
pub fn estimate_awards(
    game: &SimpleGame,
    row: &RescalingRow,
    cfg: &SimConfig,
) -> Result<EstimateReport> {
    let closed = game.monotone_closure()?;
    let n = closed.n();
    if row.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: row.n(),
        });
    }
    // Layout: (n + 2) stop-time slots, then n * (n + 1) pivot-by-size slots.
    let width = n + 2 + n * (n + 1);
    let counts = run_trials(
        cfg,
        || vec![0u64; width],
        |acc, rng| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let out = query_with(&order, |s| closed.is_winning(s));
            acc[out.stop_time] += 1;
            if let Some(p) = out.pivot {
                acc[n + 2 + p * (n + 1) + out.stop_time] += 1;
            }
        },
        add_into,
    )?;
    let award: Vec<Rational> = (0..=n).map(|k| int(k as i64) * row.mu(k)).collect();
    let estimates = (0..n)
        .map(|p| {
            let base = n + 2 + p * (n + 1);
            let tallies: Vec<(Rational, u64)> = (1..=n)
                .map(|k| (award[k].clone(), counts[base + k]))
                .collect();
            Estimate::from_tallies(&tallies, cfg.trials)
        })
        .collect();
    Ok(EstimateReport {
        trials: cfg.trials,
        seed: cfg.seed,
        estimates,
        stop_time_counts: Some(counts[..n + 2].to_vec()),
        capped_trials: 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BargainMode {
    Exact,
    MonteCarlo,
}

/// First-round proposer probabilities `r` and eventual proposer
/// probabilities `pi = r / sum(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bargaining {
    pub r: Allocation,
    pub pi: Allocation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BargainingEstimate {
    pub r: EstimateReport,
    pub pi: EstimateReport,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BargainingResult {
    Exact(Bargaining),
    MonteCarlo(BargainingEstimate),
}

/// `r_i = sum_{k>=1} f(n,k)/k · (swings of i among coalitions of size k)`.
pub fn bargaining_exact(game: &SimpleGame, row: &RescalingRow) -> Result<Bargaining> {
    let n = game.n();
    if row.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: row.n(),
        });
    }
    let r: Allocation = (0..n)
        .map(|i| {
            let swings = game.swing_counts(i)?;
            Ok((1..=n)
                .filter(|&k| swings[k] != 0)
                .map(|k| row.f(k) / int(k as i64) * int(swings[k]))
                .sum())
        })
        .collect::<Result<_>>()?;
    let total = r.total();
    if total.is_zero() {
        return Err(Error::AllZero);
    }
    let pi = r.scaled_by(&total.recip());
    Ok(Bargaining { r, pi })
}

/// Sampler for a coalition size drawn from `mu_n`.
enum SizeSampler {
    Integer { cumulative: Vec<u64>, total: u64 },
    Float { cumulative: Vec<f64> },
}

impl SizeSampler {
    fn new(row: &RescalingRow) -> Self {
        let lcm = row.mu_values().iter().fold(BigInt::from(1), |acc, m| {
            num_integer::lcm(acc, m.denom().clone())
        });
        let scaled: Option<Vec<u64>> = row
            .mu_values()
            .iter()
            .map(|m| {
                (m * Rational::from_integer(lcm.clone()))
                    .to_integer()
                    .to_u64()
            })
            .collect();
        match (scaled, lcm.to_u64()) {
            (Some(weights), Some(total)) => {
                let cumulative = weights
                    .iter()
                    .scan(0u64, |acc, w| {
                        *acc += w;
                        Some(*acc)
                    })
                    .collect();
                SizeSampler::Integer { cumulative, total }
            }
            _ => {
                let cumulative = row
                    .mu_values()
                    .iter()
                    .scan(0.0, |acc, m| {
                        *acc += to_f64(m);
                        Some(*acc)
                    })
                    .collect();
                SizeSampler::Float { cumulative }
            }
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        match self {
            SizeSampler::Integer { cumulative, total } => {
                let u = rng.random_range(0..*total);
                cumulative.partition_point(|&c| c <= u)
            }
            SizeSampler::Float { cumulative } => {
                let u: f64 = rng.random::<f64>() * cumulative.last().copied().unwrap_or(1.0);
                cumulative
                    .partition_point(|&c| c <= u)
                    .min(cumulative.len() - 1)
            }
        }
    }
}

/// Simulates the nonsequential proposer protocol: draw a size from `mu_n`,
/// a coalition of that size uniformly, a member uniformly; the member
/// becomes proposer if it swings the coalition, otherwise repeat.
pub fn bargaining_montecarlo(
    game: &SimpleGame,
    row: &RescalingRow,
    cfg: &SimConfig,
) -> Result<BargainingEstimate> {
    let n = game.n();
    if row.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: row.n(),
        });
    }
    ensure_enumerable(n)?;
    let any_swing = (0..n).any(|i| {
        game.swing_counts(i)
            .map(|c| c.iter().any(|&x| x > 0))
            .unwrap_or(false)
    });
    if !any_swing {
        return Err(Error::AllZero);
    }
    let sampler = SizeSampler::new(row);
    let max_rounds = cfg.max_rounds.max(1);
    // Layout: first-round proposer counts, eventual proposer counts, capped.
    let counts = run_trials(
        cfg,
        || vec![0u64; 2 * n + 1],
        |acc, rng| {
            for round in 0..max_rounds {
                let k = sampler.sample(rng);
                if k == 0 {
                    continue;
                }
                let members = rand::seq::index::sample(rng, n, k);
                let s = Coalition::from_players(members.iter());
                let i = members.index(rng.random_range(0..k));
                if game.is_winning(s) && !game.is_winning(s.without(i)) {
                    if round == 0 {
                        acc[i] += 1;
                    }
                    acc[n + i] += 1;
                    return;
                }
            }
            acc[2 * n] += 1;
        },
        add_into,
    )?;
    let capped = counts[2 * n];
    let settled = cfg.trials - capped;
    let indicator = |c: u64, of: u64| Estimate::from_tallies(&[(int(1), c)], of);
    let r = EstimateReport {
        trials: cfg.trials,
        seed: cfg.seed,
        estimates: (0..n).map(|i| indicator(counts[i], cfg.trials)).collect(),
        stop_time_counts: None,
        capped_trials: capped,
    };
    let pi = EstimateReport {
        trials: settled,
        seed: cfg.seed,
        estimates: (0..n).map(|i| indicator(counts[n + i], settled)).collect(),
        stop_time_counts: None,
        capped_trials: capped,
    };
    Ok(BargainingEstimate { r, pi })
}

pub fn bargaining(
    game: &SimpleGame,
    row: &RescalingRow,
    mode: BargainMode,
    cfg: &SimConfig,
) -> Result<BargainingResult> {
    match mode {
        BargainMode::Exact => bargaining_exact(game, row).map(BargainingResult::Exact),
        BargainMode::MonteCarlo => {
            bargaining_montecarlo(game, row, cfg).map(BargainingResult::MonteCarlo)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Model;
    use crate::rational::ratio;
    use crate::rescaling::RescalingFamily;

    fn manipulation_game() -> SimpleGame {
        SimpleGame::from_digits(4, "3;4").unwrap()
    }

    #[test]
    fn query_examples() {
        let g = manipulation_game();
        assert_eq!(
            run_query(&g, &[2, 0, 1, 3]).unwrap(),
            QueryOutcome {
                stop_time: 1,
                pivot: Some(2)
            }
        );
        assert_eq!(
            run_query(&g, &[0, 1, 3, 2]).unwrap(),
            QueryOutcome {
                stop_time: 3,
                pivot: Some(3)
            }
        );
        let e = SimpleGame::empty(4, Model::Standard).unwrap();
        assert_eq!(
            run_query(&e, &[3, 1, 0, 2]).unwrap(),
            QueryOutcome {
                stop_time: 5,
                pivot: None
            }
        );
        let t = SimpleGame::trivial(4, Model::Extended).unwrap();
        assert_eq!(
            run_query(&t, &[0, 1, 2, 3]).unwrap(),
            QueryOutcome {
                stop_time: 0,
                pivot: None
            }
        );
        assert!(run_query(&g, &[0, 0, 1, 2]).is_err());
        assert!(run_query(&g, &[0, 1, 2]).is_err());
    }

    #[test]
    fn nonmonotone_query_uses_containment() {
        let g = SimpleGame::explicit_winning(3, Model::Standard, vec![Coalition::singleton(1)])
            .unwrap();
        assert_eq!(run_query(&g, &[1, 0, 2]).unwrap().stop_time, 1);
        assert_eq!(
            run_query(&g, &[0, 1, 2]).unwrap(),
            QueryOutcome {
                stop_time: 2,
                pivot: Some(1)
            }
        );
    }

    #[test]
    fn cdf_examples() {
        let u = SimpleGame::unanimity(4, Model::Standard, Coalition::grand(4)).unwrap();
        let expected: Vec<_> = [0, 0, 0, 0, 1, 1].into_iter().map(int).collect();
        assert_eq!(exact_query_cdf(&u).unwrap(), expected);
        let d = SimpleGame::dictator(4, 0).unwrap();
        let expected: Vec<_> = (0..=4).map(|k| ratio(k, 4)).chain([int(1)]).collect();
        assert_eq!(exact_query_cdf(&d).unwrap(), expected);
        let cdf = exact_query_cdf(&manipulation_game()).unwrap();
        assert_eq!(&cdf[1..4], &[ratio(2, 4), ratio(5, 6), int(1)]);
    }

    #[test]
    fn permutation_enumeration_matches_cdf() {
        let g = manipulation_game();
        let dist = enumerate_query_distribution(&g).unwrap();
        // 12 orders stop at 1, 8 at 2, 4 at 3
        assert_eq!(dist[1..4], [ratio(12, 24), ratio(8, 24), ratio(4, 24)]);
    }

    #[test]
    fn empty_game_estimate_is_exact() {
        let e = SimpleGame::empty(4, Model::Standard).unwrap();
        let rep = estimate_qbar(&e, &SimConfig::new(1000, 1)).unwrap();
        assert_eq!(rep.estimates[0].mean, int(5));
        assert_eq!(rep.estimates[0].std_error, 0.0);
    }

    #[test]
    fn qbar_estimate_is_close() {
        let rep = estimate_qbar(&manipulation_game(), &SimConfig::new(20_000, 7)).unwrap();
        assert!(rep.estimates[0].z_score(&ratio(5, 3)) < 4.0);
    }

    #[test]
    fn dummy_never_awarded() {
        let g = SimpleGame::from_digits(4, "123").unwrap();
        let row = RescalingFamily::uniform().row(4).unwrap();
        let rep = estimate_awards(&g, &row, &SimConfig::new(5_000, 3)).unwrap();
        assert_eq!(rep.estimates[3].mean, int(0));
        assert_eq!(rep.estimates[3].std_error, 0.0);
    }

    #[test]
    fn awards_track_dictator() {
        let d = SimpleGame::dictator(4, 0).unwrap();
        let row = RescalingFamily::uniform().row(4).unwrap();
        let rep = estimate_awards(&d, &row, &SimConfig::new(20_000, 11)).unwrap();
        assert!(rep.estimates[0].z_score(&ratio(1, 2)) < 4.0);
        for i in 1..4 {
            assert_eq!(rep.estimates[i].mean, int(0));
        }
    }

    #[test]
    fn bargaining_exact_examples() {
        let row3 = RescalingFamily::uniform().row(3).unwrap();
        let g =
            SimpleGame::weighted(3, Model::Standard, vec![int(2), int(1), int(1)], int(3)).unwrap();
        let b = bargaining_exact(&g, &row3).unwrap();
        assert_eq!(b.pi.values(), &[ratio(2, 3), ratio(1, 6), ratio(1, 6)]);
        assert_eq!(b.r.total(), ratio(1, 4));
        let d = SimpleGame::dictator(4, 0).unwrap();
        let b = bargaining_exact(&d, &RescalingFamily::uniform().row(4).unwrap()).unwrap();
        assert_eq!(b.r.total(), ratio(1, 5));
        let b = bargaining_exact(&d, &RescalingFamily::coleman().row(4).unwrap()).unwrap();
        assert_eq!(b.pi.values(), &[int(1), int(0), int(0), int(0)]);
        let e = SimpleGame::empty(3, Model::Standard).unwrap();
        assert_eq!(bargaining_exact(&e, &row3).unwrap_err(), Error::AllZero);
        assert_eq!(
            bargaining_montecarlo(&e, &row3, &SimConfig::new(10, 0)).unwrap_err(),
            Error::AllZero
        );
    }

    #[test]
    fn bargaining_montecarlo_agrees() {
        let row = RescalingFamily::uniform().row(3).unwrap();
        let g =
            SimpleGame::weighted(3, Model::Standard, vec![int(2), int(1), int(1)], int(3)).unwrap();
        let exact = bargaining_exact(&g, &row).unwrap();
        let mc = bargaining_montecarlo(&g, &row, &SimConfig::new(20_000, 5)).unwrap();
        assert_eq!(mc.pi.capped_trials, 0);
        for i in 0..3 {
            assert!(mc.pi.estimates[i].z_score(&exact.pi[i]) < 4.0);
            assert!(mc.r.estimates[i].z_score(&exact.r[i]) < 4.0);
        }
    }

    #[test]
    fn round_cap_is_reported() {
        // Only {0,1,2,3,4,5,6,7} wins and the Coleman row rarely draws size 8.
        let g = SimpleGame::unanimity(8, Model::Standard, Coalition::grand(8)).unwrap();
        let row = RescalingFamily::coleman().row(8).unwrap();
        let mc =
            bargaining_montecarlo(&g, &row, &SimConfig::new(50, 2).with_max_rounds(1)).unwrap();
        assert!(mc.r.capped_trials > 0);
        assert_eq!(mc.r.capped_trials + mc.pi.trials, 50);
    }

    #[test]
    fn parallelism_does_not_change_results() {
        let g = manipulation_game();
        let a = estimate_qbar(&g, &SimConfig::new(3_000, 9)).unwrap();
        let b = estimate_qbar(&g, &SimConfig::new(3_000, 9).with_workers(4)).unwrap();
        assert_eq!(a, b);
    }
}
