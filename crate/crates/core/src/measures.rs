//! Closed-form collective and individual measures.
//!
//! Collective: the expected stop time `Q̄` of the query process and the
//! decisiveness index `Q*_F(G) = sum_S f(n,|S|) v(S)`. Individual: the
//! weighted semivalue `q*_F,i = sum_{S ∋ i} f(n,|S|) D_i(S)`, its
//! normalization by `c_n`, and the classic Shapley and Banzhaf values.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::allocation::Allocation;
use crate::coalition::{all_coalitions, ensure_enumerable, Coalition};
use crate::error::{Error, Result};
use crate::game::{check_player, Classification, Game, SimpleGame};
use crate::rational::{binomial, factorial, int, Rational};
use crate::rescaling::{RescalingRow, SizeWeights};
use crate::tu::TuGame;

/// Games that can drop a player; needed for potential differences.
pub trait Restrict: Game + Sized {
    fn restrict_player(&self, i: usize) -> Result<Self>;
}

impl Restrict for SimpleGame {
    fn restrict_player(&self, i: usize) -> Result<Self> {
        Ok(self.restrict(i)?.0)
    }
}

impl Restrict for TuGame {
    fn restrict_player(&self, i: usize) -> Result<Self> {
        Ok(self.restrict(i)?.0)
    }
}

fn check_row(n: usize, row: &RescalingRow) -> Result<()> {
    if row.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: row.n(),
        });
    }
    Ok(())
}

fn dot(weights: &[Rational], sums: &[Rational]) -> Rational {
    weights
        .iter()
        .zip(sums)
        .filter(|(_, s)| !s.is_zero())
        .map(|(w, s)| w * s)
        .sum()
}

/// Expected number of queries until the queried set contains a winning
/// coalition: `n + 1 - sum_k |W_k| / C(n,k)`, over the monotone closure
/// when the game is not monotone.
pub fn qbar(game: &SimpleGame) -> Result<Rational> {
    let closed = game.monotone_closure()?;
    let n = game.n();
    let profile = closed.size_profile()?;
    let hits: Rational = profile
        .winning_counts
        .iter()
        .enumerate()
        .map(|(k, &w)| Rational::new(BigInt::from(w), binomial(n, k)))
        .sum();
    Ok(int(n as i64 + 1) - hits)
}

/// `Q*_F(G) = sum_S f(n, |S|) v(S)`, the `k = 0` term included.
///
/// Nonmonotone simple games are summed as given, without closure.
pub fn q_star<G: Game + ?Sized>(game: &G, row: &RescalingRow) -> Result<Rational> {
    check_row(game.player_count(), row)?;
    Ok(dot(row.f_values(), &game.size_sums()?))
}

/// `q*_F,i(G) = sum_{S ∋ i} f(n, |S|) [v(S) - v(S \ {i})]`.
pub fn q_star_individual<G: Game + ?Sized>(
    game: &G,
    row: &RescalingRow,
    i: usize,
) -> Result<Rational> {
    check_row(game.player_count(), row)?;
    Ok(dot(row.f_values(), &game.marginal_size_sums(i)?))
}

/// All players' `q*_F,i`.
pub fn q_star_allocation<G: Game + ?Sized>(game: &G, row: &RescalingRow) -> Result<Allocation> {
    (0..game.player_count())
        .map(|i| q_star_individual(game, row, i))
        .collect()
}

/// Potential difference `Q*(G) - Q*(G without i)`, with size weights taken at
/// `n` and `n - 1` respectively. Agrees with [`q_star_individual`] exactly
/// when the weights satisfy `w(n-1,k) = w(n,k) + w(n,k+1)`. With one
/// player the reduced game has no players and weight 1 on the empty set.
pub fn q_star_marginal<G: Restrict>(
    game: &G,
    weights: &dyn SizeWeights,
    i: usize,
) -> Result<Rational> {
    let n = game.player_count();
    check_player(i, n)?;
    if n == 1 {
        return Ok(dot(&weights.weights(1)?, &game.size_sums()?) - game.worth(Coalition::EMPTY));
    }
    let reduced = game.restrict_player(i)?;
    let whole = dot(&weights.weights(n)?, &game.size_sums()?);
    let part = dot(&weights.weights(n - 1)?, &reduced.size_sums()?);
    Ok(whole - part)
}

/// `q*_F / c_n`, a semivalue for every admissible row with `c_n > 0`.
pub fn semivalue<G: Game + ?Sized>(game: &G, row: &RescalingRow) -> Result<Allocation> {
    let c = row.c_norm();
    if c.is_zero() {
        return Err(Error::NormalizationUndefined);
    }
    let inverse = c.recip();
    Ok(q_star_allocation(game, row)?.scaled_by(&inverse))
}

/// Classic Shapley value, `sum_{S ∋ i} (|S|-1)! (n-|S|)! / n! · D_i(S)`,
/// summed coalition by coalition.
pub fn shapley<G: Game + ?Sized>(game: &G) -> Result<Allocation> {
    let n = game.player_count();
    ensure_enumerable(n)?;
    let total = factorial(n);
    let weight: Vec<Rational> = (0..=n)
        .map(|s| {
            if s == 0 {
                Rational::zero()
            } else {
                Rational::new(factorial(s - 1) * factorial(n - s), total.clone())
            }
        })
        .collect();
    let mut out = vec![Rational::zero(); n];
    for s in all_coalitions(n) {
        let worth = game.worth(s);
        for i in s.players() {
            let d = &worth - game.worth(s.without(i));
            if !d.is_zero() {
                out[i] += &weight[s.len()] * d;
            }
        }
    }
    Ok(Allocation::new(out))
}

/// Banzhaf value: net swings of `i` divided by `2^(n-1)`.
pub fn banzhaf<G: Game + ?Sized>(game: &G) -> Result<Allocation> {
    let n = game.player_count();
    let denom = Rational::from_integer(BigInt::one() << (n - 1));
    (0..n)
        .map(|i| Ok(game.marginal_size_sums(i)?.iter().sum::<Rational>() / &denom))
        .collect()
}

/// Probability distribution over the coalitions of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalitionDistribution {
    n: usize,
    p: BTreeMap<Coalition, Rational>,
}

impl CoalitionDistribution {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (Coalition, Rational)>) -> Result<Self> {
        let mut p = BTreeMap::new();
        for (s, prob) in entries {
            s.validate(n)?;
            if prob.is_negative() {
                return Err(Error::InvalidDistribution(format!("p({s}) is negative")));
            }
            if p.insert(s, prob).is_some() {
                return Err(Error::InvalidDistribution(format!("{s} listed twice")));
            }
        }
        let total: Rational = p.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(CoalitionDistribution { n, p })
    }

    /// `p(S) = f(n, |S|)` for the given row; a distribution because
    /// `sum_k C(n,k) f(n,k) = 1`.
    pub fn from_row(row: &RescalingRow) -> Result<Self> {
        let n = row.n();
        ensure_enumerable(n)?;
        Self::new(n, all_coalitions(n).map(|s| (s, row.f(s.len()))))
    }

    pub fn point_mass(n: usize, s: Coalition) -> Result<Self> {
        Self::new(n, [(s, Rational::one())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probability(&self, s: Coalition) -> Rational {
        self.p.get(&s).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Expected marginal contribution of `i` to the coalition that forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormationValues {
    pub ex_ante: Rational,
    /// Conditional on `i` belonging to the coalition.
    pub ex_interim: Rational,
}

pub fn coalition_formation<G: Game + ?Sized>(
    game: &G,
    dist: &CoalitionDistribution,
    i: usize,
) -> Result<FormationValues> {
    let n = game.player_count();
    if dist.n != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: dist.n,
        });
    }
    check_player(i, n)?;
    let mut ex_ante = Rational::zero();
    let mut membership = Rational::zero();
    for (s, p) in dist.p.iter().filter(|(s, _)| s.contains(i)) {
        membership += p;
        ex_ante += p * (game.worth(*s) - game.worth(s.without(i)));
    }
    if membership.is_zero() {
        return Err(Error::ConditionalUndefined { player: i });
    }
    let ex_interim = &ex_ante / membership;
    Ok(FormationValues {
        ex_ante,
        ex_interim,
    })
}

/// Everything the crate computes in closed form for one simple game and row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub qbar: Rational,
    pub qstar: Rational,
    pub individual: Allocation,
    /// `None` when `c_n = 0`.
    pub semivalue: Option<Allocation>,
    pub shapley: Allocation,
    pub banzhaf: Allocation,
    pub classification: Classification,
}

pub fn measure_report(game: &SimpleGame, row: &RescalingRow) -> Result<MeasureReport> {
    let semivalue = match semivalue(game, row) {
        Ok(a) => Some(a),
        Err(Error::NormalizationUndefined) => None,
        Err(e) => return Err(e),
    };
    Ok(MeasureReport {
        qbar: qbar(game)?,
        qstar: q_star(game, row)?,
        individual: q_star_allocation(game, row)?,
        semivalue,
        shapley: shapley(game)?,
        banzhaf: banzhaf(game)?,
        classification: game.classify()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Model;
    use crate::rational::ratio;
    use crate::rescaling::{Normalized, RescalingFamily};

    fn uniform(n: usize) -> RescalingRow {
        RescalingFamily::uniform().row(n).unwrap()
    }

    fn coleman(n: usize) -> RescalingRow {
        RescalingFamily::coleman().row(n).unwrap()
    }

    fn manipulation_game() -> SimpleGame {
        SimpleGame::from_digits(4, "3;4").unwrap()
    }

    #[test]
    fn qbar_examples() {
        assert_eq!(qbar(&manipulation_game()).unwrap(), ratio(40, 24));
        assert_eq!(
            qbar(&SimpleGame::dictator(4, 0).unwrap()).unwrap(),
            ratio(60, 24)
        );
        assert_eq!(
            qbar(&SimpleGame::empty(4, Model::Standard).unwrap()).unwrap(),
            int(5)
        );
        assert_eq!(
            qbar(&SimpleGame::trivial(4, Model::Extended).unwrap()).unwrap(),
            int(0)
        );
    }

    #[test]
    fn q_star_examples() {
        let g = SimpleGame::from_digits(4, "1;2;3;4").unwrap();
        assert_eq!(q_star(&g, &uniform(4)).unwrap(), ratio(4, 5));
        let g = SimpleGame::from_digits(4, "12").unwrap();
        assert_eq!(q_star(&g, &coleman(4)).unwrap(), ratio(1, 4));
        let maj = SimpleGame::quota_majority(5, 3).unwrap();
        let row = uniform(5);
        assert_eq!(q_star(&maj, &row).unwrap(), row.tail(3));
        assert_eq!(q_star(&maj, &row).unwrap(), ratio(1, 2));
        assert!(q_star(&maj, &uniform(4)).is_err());
    }

    #[test]
    fn q_star_includes_empty_coalition_term_in_extended_model() {
        let t = SimpleGame::trivial(3, Model::Extended).unwrap();
        assert_eq!(q_star(&t, &uniform(3)).unwrap(), int(1));
    }

    #[test]
    fn individual_examples() {
        let d = SimpleGame::dictator(4, 0).unwrap();
        assert_eq!(q_star_individual(&d, &uniform(4), 0).unwrap(), ratio(1, 2));
        let g = SimpleGame::from_digits(4, "123").unwrap();
        for row in [uniform(4), coleman(4)] {
            assert_eq!(q_star_individual(&g, &row, 3).unwrap(), int(0));
        }
        // swings of voter 3: {3}, {0,3}, {1,3}, {0,1,3}
        let expected = ratio(1, 20) + ratio(1, 30) + ratio(1, 30) + ratio(1, 20);
        assert_eq!(expected, ratio(1, 6));
        assert_eq!(
            q_star_individual(&manipulation_game(), &uniform(4), 3).unwrap(),
            expected
        );
    }

    #[test]
    fn potential_difference_examples() {
        let family = RescalingFamily::uniform();
        let g = manipulation_game();
        assert_eq!(q_star(&g, &uniform(4)).unwrap(), ratio(2, 3));
        assert_eq!(
            q_star(&g.restrict(3).unwrap().0, &uniform(3)).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(q_star_marginal(&g, &family, 3).unwrap(), ratio(1, 6));
        let d = SimpleGame::dictator(4, 0).unwrap();
        assert_eq!(q_star_marginal(&d, &family, 0).unwrap(), ratio(1, 2));
        let normalized = Normalized(RescalingFamily::shapley());
        let sh = shapley(&g).unwrap();
        for i in 0..4 {
            assert_eq!(q_star_marginal(&g, &normalized, i).unwrap(), sh[i]);
        }
    }

    #[test]
    fn semivalue_examples() {
        let d = SimpleGame::dictator(4, 2).unwrap();
        for family in [
            RescalingFamily::uniform(),
            RescalingFamily::coleman(),
            RescalingFamily::shapley(),
        ] {
            assert_eq!(semivalue(&d, &family.row(4).unwrap()).unwrap()[2], int(1));
        }
        let maj = SimpleGame::quota_majority(3, 2).unwrap();
        assert_eq!(
            q_star_individual(&maj, &uniform(3), 0).unwrap(),
            ratio(1, 6)
        );
        assert_eq!(
            semivalue(&maj, &uniform(3)).unwrap().values(),
            vec![ratio(1, 3); 3].as_slice()
        );
        assert_eq!(
            semivalue(&maj, &coleman(3)).unwrap().values(),
            vec![ratio(1, 2); 3].as_slice()
        );
        let degenerate = RescalingRow::from_mu(3, vec![int(1), int(0), int(0), int(0)]).unwrap();
        assert_eq!(
            semivalue(&maj, &degenerate).unwrap_err(),
            Error::NormalizationUndefined
        );
    }

    #[test]
    fn shapley_examples() {
        let g =
            SimpleGame::weighted(3, Model::Standard, vec![int(2), int(1), int(1)], int(3)).unwrap();
        assert_eq!(
            shapley(&g).unwrap().values(),
            &[ratio(2, 3), ratio(1, 6), ratio(1, 6)]
        );
        let d = SimpleGame::dictator(3, 1).unwrap();
        assert_eq!(shapley(&d).unwrap().values(), &[int(0), int(1), int(0)]);
        let maj = SimpleGame::quota_majority(3, 2).unwrap();
        assert_eq!(
            shapley(&maj).unwrap().values(),
            vec![ratio(1, 3); 3].as_slice()
        );
    }

    #[test]
    fn banzhaf_examples() {
        let maj = SimpleGame::quota_majority(3, 2).unwrap();
        assert_eq!(
            banzhaf(&maj).unwrap().values(),
            vec![ratio(1, 2); 3].as_slice()
        );
        let d = SimpleGame::dictator(3, 0).unwrap();
        assert_eq!(banzhaf(&d).unwrap().values(), &[int(1), int(0), int(0)]);
    }

    #[test]
    fn formation_examples() {
        let row = uniform(4);
        let dist = CoalitionDistribution::from_row(&row).unwrap();
        let v = coalition_formation(&manipulation_game(), &dist, 3).unwrap();
        assert_eq!(v.ex_ante, ratio(1, 6));
        assert_eq!(v.ex_interim, ratio(1, 3));

        let swing = Coalition::from_players([0, 3]);
        let point = CoalitionDistribution::point_mass(4, swing).unwrap();
        let v = coalition_formation(&manipulation_game(), &point, 3).unwrap();
        assert_eq!((v.ex_ante, v.ex_interim), (int(1), int(1)));
        assert_eq!(
            coalition_formation(&manipulation_game(), &point, 1).unwrap_err(),
            Error::ConditionalUndefined { player: 1 }
        );

        let d = SimpleGame::dictator(4, 0).unwrap();
        assert_eq!(
            coalition_formation(&d, &dist, 0).unwrap().ex_interim,
            int(1)
        );
    }

    #[test]
    fn distribution_validation() {
        let s = Coalition::singleton(0);
        assert!(CoalitionDistribution::new(2, [(s, ratio(1, 2))]).is_err());
        assert!(CoalitionDistribution::new(2, [(s, int(2)), (Coalition::EMPTY, int(-1))]).is_err());
        assert!(CoalitionDistribution::new(2, [(Coalition::singleton(2), int(1))]).is_err());
    }

    #[test]
    fn report_bundles_everything() {
        let r = measure_report(&SimpleGame::dictator(4, 0).unwrap(), &uniform(4)).unwrap();
        assert_eq!(r.qbar, ratio(5, 2));
        assert_eq!(r.qstar, ratio(1, 2));
        assert_eq!(r.semivalue.unwrap()[0], int(1));
        assert!(r.classification.proper && r.classification.strong);
    }
}
