//! Simple games: representations, constructions and structural predicates.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coalition::{all_coalitions, ensure_enumerable, Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::rational::{binomial_u64, int, Rational};

/// Whether the empty coalition may win (extended) or never does (standard).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    #[default]
    Standard,
    Extended,
}

/// Anything with a characteristic function over coalitions of `0..n`.
///
/// The provided sums enumerate all `2^n` coalitions; simple games override
/// them with integer counting.
pub trait Game {
    fn player_count(&self) -> usize;

    fn model(&self) -> Model;

    fn worth(&self, s: Coalition) -> Rational;

    /// `sums[k]` = total worth of all coalitions of size `k`, for `k = 0..=n`.
    fn size_sums(&self) -> Result<Vec<Rational>> {
        let n = self.player_count();
        ensure_enumerable(n)?;
        let mut sums = vec![Rational::zero(); n + 1];
        for s in all_coalitions(n) {
            sums[s.len()] += self.worth(s);
        }
        Ok(sums)
    }

    /// `sums[k]` = total marginal contribution `v(S) - v(S \ {i})` of player
    /// `i` over coalitions `S` of size `k` containing `i`.
    fn marginal_size_sums(&self, i: usize) -> Result<Vec<Rational>> {
        let n = self.player_count();
        check_player(i, n)?;
        ensure_enumerable(n)?;
        let mut sums = vec![Rational::zero(); n + 1];
        for s in all_coalitions(n).filter(|s| s.contains(i)) {
            sums[s.len()] += self.worth(s) - self.worth(s.without(i));
        }
        Ok(sums)
    }
}

pub(crate) fn check_player(i: usize, n: usize) -> Result<()> {
    if i >= n {
        Err(Error::PlayerOutOfRange { player: i, n })
    } else {
        Ok(())
    }
}

/// `D_i(S) = v(S) - v(S \ {i})`, defined for `i` in `S`.
pub fn marginal<G: Game + ?Sized>(game: &G, s: Coalition, i: usize) -> Result<Rational> {
    let n = game.player_count();
    check_player(i, n)?;
    s.validate(n)?;
    if !s.contains(i) {
        return Err(Error::NotAMember { player: i });
    }
    Ok(game.worth(s) - game.worth(s.without(i)))
}

/// Dense membership table over all `2^n` coalitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningTable {
    words: Vec<u64>,
}

impl WinningTable {
    fn new(n: usize) -> Self {
        let bits = 1usize << n;
        WinningTable {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    fn set(&mut self, s: Coalition) {
        let b = s.bits() as usize;
        self.words[b / 64] |= 1 << (b % 64);
    }

    fn get(&self, s: Coalition) -> bool {
        let b = s.bits() as usize;
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Weights and quota rescaled to a common integer denominator.
#[derive(Clone, Debug)]
enum ScaledWeights {
    Small { weights: Vec<i128>, quota: i128 },
    Big { weights: Vec<BigInt>, quota: BigInt },
}

impl ScaledWeights {
    fn new(weights: &[Rational], quota: &Rational) -> Self {
        let lcm = weights
            .iter()
            .chain(std::iter::once(quota))
            .fold(BigInt::from(1), |acc, w| {
                num_integer::lcm(acc, w.denom().clone())
            });
        let scale = |w: &Rational| (w * Rational::from_integer(lcm.clone())).to_integer();
        let big_w: Vec<BigInt> = weights.iter().map(scale).collect();
        let big_q = scale(quota);
        let small_w: Option<Vec<i128>> = big_w.iter().map(|w| w.to_i64().map(i128::from)).collect();
        match (small_w, big_q.to_i64()) {
            (Some(weights), Some(q)) => ScaledWeights::Small {
                weights,
                quota: q.into(),
            },
            _ => ScaledWeights::Big {
                weights: big_w,
                quota: big_q,
            },
        }
    }

    fn wins(&self, s: Coalition) -> bool {
        match self {
            ScaledWeights::Small { weights, quota } => {
                s.players().map(|i| weights[i]).sum::<i128>() >= *quota
            }
            ScaledWeights::Big { weights, quota } => {
                s.players().fold(BigInt::zero(), |acc, i| acc + &weights[i]) >= *quota
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Representation {
    /// Antichain of minimal winning coalitions; winning means containing one.
    MinimalWinning(Vec<Coalition>),
    /// Every winning coalition listed explicitly; need not be monotone.
    ExplicitWinning(WinningTable),
    /// Winning iff total weight reaches the quota.
    Weighted {
        weights: Vec<Rational>,
        quota: Rational,
        scaled: ScaledWeightsHandle,
    },
    /// Winning iff the coalition contains the given set.
    Unanimity(Coalition),
    Empty,
    /// Every coalition wins, the empty one included. Extended model only.
    Trivial,
}

/// Opaque cache of integer-scaled weights.
#[derive(Clone, Debug)]
pub struct ScaledWeightsHandle(ScaledWeights);

/// A simple game on players `0..n`.
#[derive(Clone, Debug)]
pub struct SimpleGame {
    n: usize,
    model: Model,
    repr: Representation,
    labels: Option<Vec<String>>,
    monotone: OnceLock<bool>,
}

/// Number of winning coalitions of each size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeProfile {
    pub winning_counts: Vec<u64>,
}

impl SizeProfile {
    pub fn player_count(&self) -> usize {
        self.winning_counts.len() - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub monotone: bool,
    pub proper: bool,
    pub strong: bool,
    pub self_dual: bool,
    pub empty: bool,
    pub trivial: bool,
}

/// Per-size counts of the four complement types of coalition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts {
    /// Winning, complement losing.
    pub d: u64,
    /// Winning, complement winning.
    pub c: u64,
    /// Losing, complement losing.
    pub q: u64,
    /// Losing, complement winning.
    pub p: u64,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PLAYERS {
        Err(Error::InvalidPlayerCount(n))
    } else {
        Ok(())
    }
}

impl SimpleGame {
    fn from_parts(n: usize, model: Model, repr: Representation) -> Self {
        SimpleGame {
            n,
            model,
            repr,
            labels: None,
            monotone: OnceLock::new(),
        }
    }

    /// Game whose winning coalitions are the supersets of `minimal`.
    /// Dominated entries and duplicates are dropped.
    pub fn minimal_winning(n: usize, model: Model, minimal: Vec<Coalition>) -> Result<Self> {
        check_n(n)?;
        for s in &minimal {
            s.validate(n)?;
            if s.is_empty() && model == Model::Standard {
                return Err(Error::EmptyCoalitionWins);
            }
        }
        let mut sorted = minimal;
        sorted.sort_by_key(|s| (s.len(), s.bits()));
        sorted.dedup();
        let mut antichain: Vec<Coalition> = Vec::with_capacity(sorted.len());
        for s in sorted {
            if !antichain.iter().any(|m| m.is_subset_of(s)) {
                antichain.push(s);
            }
        }
        Ok(Self::from_parts(
            n,
            model,
            Representation::MinimalWinning(antichain),
        ))
    }

    pub fn explicit_winning(n: usize, model: Model, winning: Vec<Coalition>) -> Result<Self> {
        check_n(n)?;
        ensure_enumerable(n)?;
        let mut table = WinningTable::new(n);
        for s in winning {
            s.validate(n)?;
            if s.is_empty() && model == Model::Standard {
                return Err(Error::EmptyCoalitionWins);
            }
            table.set(s);
        }
        Ok(Self::from_parts(
            n,
            model,
            Representation::ExplicitWinning(table),
        ))
    }

    /// Explicit game whose winning coalitions are those satisfying `wins`.
    pub fn from_predicate(
        n: usize,
        model: Model,
        wins: impl Fn(Coalition) -> bool,
    ) -> Result<Self> {
        check_n(n)?;
        ensure_enumerable(n)?;
        let mut table = WinningTable::new(n);
        for s in all_coalitions(n).filter(|&s| wins(s)) {
            if s.is_empty() && model == Model::Standard {
                return Err(Error::EmptyCoalitionWins);
            }
            table.set(s);
        }
        Ok(Self::from_parts(
            n,
            model,
            Representation::ExplicitWinning(table),
        ))
    }

    pub fn weighted(
        n: usize,
        model: Model,
        weights: Vec<Rational>,
        quota: Rational,
    ) -> Result<Self> {
        check_n(n)?;
        if weights.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: weights.len(),
            });
        }
        if let Some(player) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::NegativeWeight { player });
        }
        if model == Model::Standard && !quota.is_positive() {
            return Err(Error::EmptyCoalitionWins);
        }
        let scaled = ScaledWeightsHandle(ScaledWeights::new(&weights, &quota));
        Ok(Self::from_parts(
            n,
            model,
            Representation::Weighted {
                weights,
                quota,
                scaled,
            },
        ))
    }

    pub fn unanimity(n: usize, model: Model, s: Coalition) -> Result<Self> {
        check_n(n)?;
        s.validate(n)?;
        if s.is_empty() && model == Model::Standard {
            return Err(Error::EmptyCoalitionWins);
        }
        Ok(Self::from_parts(n, model, Representation::Unanimity(s)))
    }

    pub fn dictator(n: usize, player: usize) -> Result<Self> {
        check_n(n)?;
        check_player(player, n)?;
        Self::unanimity(n, Model::Standard, Coalition::singleton(player))
    }

    pub fn empty(n: usize, model: Model) -> Result<Self> {
        check_n(n)?;
        Ok(Self::from_parts(n, model, Representation::Empty))
    }

    pub fn trivial(n: usize, model: Model) -> Result<Self> {
        check_n(n)?;
        if model == Model::Standard {
            return Err(Error::TrivialInStandardModel);
        }
        Ok(Self::from_parts(n, model, Representation::Trivial))
    }

    /// Qualified majority: winning iff at least `k0` players.
    pub fn quota_majority(n: usize, k0: usize) -> Result<Self> {
        Self::weighted(n, Model::Standard, vec![int(1); n], int(k0 as i64))
    }

    /// Minimal winning coalitions in 1-based digit notation, e.g. `"1;23"`.
    /// An empty label is the empty game.
    pub fn from_digits(n: usize, label: &str) -> Result<Self> {
        let mut minimal = Vec::new();
        for part in label.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let players = part
                .chars()
                .map(|c| match c.to_digit(36) {
                    Some(d) if d >= 1 => Ok(d as usize - 1),
                    _ => Err(Error::Parse(format!("bad player digit `{c}` in `{label}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            minimal.push(Coalition::try_from_players(players, n)?);
        }
        if minimal.is_empty() {
            return Self::empty(n, Model::Standard);
        }
        Self::minimal_winning(n, Model::Standard, minimal)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn player_index(&self, name: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == name)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n)
    }

    pub fn is_winning(&self, s: Coalition) -> bool {
        debug_assert!(s.validate(self.n).is_ok());
        match &self.repr {
            Representation::MinimalWinning(min) => min.iter().any(|m| m.is_subset_of(s)),
            Representation::ExplicitWinning(table) => table.get(s),
            Representation::Weighted { scaled, .. } => scaled.0.wins(s),
            Representation::Unanimity(u) => u.is_subset_of(s),
            Representation::Empty => false,
            Representation::Trivial => true,
        }
    }

    /// Whether `s` contains some winning coalition. Equals [`is_winning`]
    /// for monotone games.
    ///
    /// [`is_winning`]: SimpleGame::is_winning
    pub fn contains_winning(&self, s: Coalition) -> bool {
        if self.is_monotone() {
            self.is_winning(s)
        } else {
            s.subsets().any(|t| self.is_winning(t))
        }
    }

    pub fn is_monotone(&self) -> bool {
        *self.monotone.get_or_init(|| match &self.repr {
            Representation::ExplicitWinning(table) => {
                let n = self.n;
                all_coalitions(n).filter(|&s| table.get(s)).all(|s| {
                    (0..n)
                        .filter(|&i| !s.contains(i))
                        .all(|i| table.get(s.with(i)))
                })
            }
            _ => true,
        })
    }

    /// Upward closure of the winning family; a clone when already monotone.
    pub fn monotone_closure(&self) -> Result<SimpleGame> {
        if self.is_monotone() {
            return Ok(self.clone());
        }
        ensure_enumerable(self.n)?;
        let n = self.n;
        let mut closed = WinningTable::new(n);
        for s in all_coalitions(n) {
            if self.is_winning(s) || s.players().any(|i| closed.get(s.without(i))) {
                closed.set(s);
            }
        }
        let mut game = Self::from_parts(n, self.model, Representation::ExplicitWinning(closed));
        game.labels = self.labels.clone();
        Ok(game)
    }

    /// Winning coalitions none of whose proper subsets win, ordered by size
    /// and then bit pattern.
    pub fn minimal_winning_coalitions(&self) -> Result<Vec<Coalition>> {
        if let Representation::MinimalWinning(min) = &self.repr {
            return Ok(min.clone());
        }
        if let Representation::Unanimity(u) = &self.repr {
            return Ok(vec![*u]);
        }
        ensure_enumerable(self.n)?;
        let mut out: Vec<Coalition> = all_coalitions(self.n)
            .filter(|&s| self.is_winning(s))
            .filter(|&s| !s.subsets().any(|t| t != s && self.is_winning(t)))
            .collect();
        out.sort_by_key(|s| (s.len(), s.bits()));
        Ok(out)
    }

    /// Minimal winning coalitions as 1-based digit strings joined by `;`,
    /// sorted lexicographically.
    pub fn digits_label(&self) -> Result<String> {
        let mut parts: Vec<String> = self
            .minimal_winning_coalitions()?
            .into_iter()
            .map(Coalition::digits_label)
            .collect();
        parts.sort();
        Ok(parts.join(";"))
    }

    pub fn size_profile(&self) -> Result<SizeProfile> {
        let n = self.n;
        let mut w = vec![0u64; n + 1];
        match &self.repr {
            Representation::Empty => {}
            Representation::Trivial => {
                for (k, slot) in w.iter_mut().enumerate() {
                    *slot = binomial_u64(n, k);
                }
            }
            Representation::Unanimity(u) => {
                let m = u.len();
                for (k, slot) in w.iter_mut().enumerate().skip(m) {
                    *slot = binomial_u64(n - m, k - m);
                }
            }
            Representation::ExplicitWinning(table) => {
                for s in all_coalitions(n).filter(|&s| table.get(s)) {
                    w[s.len()] += 1;
                }
            }
            _ => {
                ensure_enumerable(n)?;
                for s in all_coalitions(n).filter(|&s| self.is_winning(s)) {
                    w[s.len()] += 1;
                }
            }
        }
        Ok(SizeProfile { winning_counts: w })
    }

    pub fn winning_count(&self) -> Result<u64> {
        if let Representation::ExplicitWinning(table) = &self.repr {
            return Ok(table.count() as u64);
        }
        Ok(self.size_profile()?.winning_counts.iter().sum())
    }

    /// Net swing counts of player `i` by coalition size: the number of `S`
    /// containing `i` with `S` winning and `S \ {i}` losing, minus the number
    /// with the reverse (the latter only occurs in nonmonotone games).
    pub fn swing_counts(&self, i: usize) -> Result<Vec<i64>> {
        check_player(i, self.n)?;
        ensure_enumerable(self.n)?;
        let mut counts = vec![0i64; self.n + 1];
        for s in all_coalitions(self.n).filter(|s| s.contains(i)) {
            let d = self.is_winning(s) as i64 - self.is_winning(s.without(i)) as i64;
            counts[s.len()] += d;
        }
        Ok(counts)
    }

    /// Dual game: `S` wins iff its complement loses.
    pub fn dual(&self) -> Result<SimpleGame> {
        let grand_wins = self.is_winning(self.grand());
        match (&self.repr, self.model) {
            (_, Model::Standard) if !grand_wins => Err(Error::DualUndefined),
            (Representation::Empty, Model::Extended) => Self::trivial(self.n, Model::Extended),
            (Representation::Trivial, _) => Self::empty(self.n, Model::Extended),
            _ => {
                let n = self.n;
                let mut game =
                    Self::from_predicate(n, self.model, |s| !self.is_winning(s.complement(n)))?;
                game.labels = self.labels.clone();
                Ok(game)
            }
        }
    }

    /// Deletes player `i`. Remaining players keep their relative order; the
    /// returned map sends each new index to its old one.
    pub fn restrict(&self, i: usize) -> Result<(SimpleGame, Vec<usize>)> {
        check_player(i, self.n)?;
        if self.n < 2 {
            return Err(Error::TooFewPlayers {
                n: self.n,
                required: 2,
            });
        }
        let n = self.n - 1;
        let kept: Vec<usize> = (0..self.n).filter(|&j| j != i).collect();
        let mut game = match &self.repr {
            Representation::MinimalWinning(min) => {
                let survivors: Vec<_> = min
                    .iter()
                    .filter(|m| !m.contains(i))
                    .map(|m| m.remove_index(i))
                    .collect();
                if survivors.is_empty() {
                    Self::empty(n, self.model)?
                } else {
                    Self::minimal_winning(n, self.model, survivors)?
                }
            }
            Representation::ExplicitWinning(table) => {
                let mut out = WinningTable::new(n);
                for s in all_coalitions(self.n).filter(|s| !s.contains(i) && table.get(*s)) {
                    out.set(s.remove_index(i));
                }
                Self::from_parts(n, self.model, Representation::ExplicitWinning(out))
            }
            Representation::Weighted { weights, quota, .. } => {
                let w = kept.iter().map(|&j| weights[j].clone()).collect();
                Self::weighted(n, self.model, w, quota.clone())?
            }
            Representation::Unanimity(u) if u.contains(i) => Self::empty(n, self.model)?,
            Representation::Unanimity(u) => Self::unanimity(n, self.model, u.remove_index(i))?,
            Representation::Empty => Self::empty(n, self.model)?,
            Representation::Trivial => Self::trivial(n, self.model)?,
        };
        if let Some(labels) = &self.labels {
            game.labels = Some(kept.iter().map(|&j| labels[j].clone()).collect());
        }
        Ok((game, kept))
    }

    /// Renames player `j` to `perm[j]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimpleGame> {
        check_permutation(perm, self.n)?;
        let n = self.n;
        let mut game = match &self.repr {
            Representation::MinimalWinning(min) => {
                Self::minimal_winning(n, self.model, min.iter().map(|m| m.permute(perm)).collect())?
            }
            Representation::ExplicitWinning(table) => {
                let mut out = WinningTable::new(n);
                for s in all_coalitions(n).filter(|&s| table.get(s)) {
                    out.set(s.permute(perm));
                }
                Self::from_parts(n, self.model, Representation::ExplicitWinning(out))
            }
            Representation::Weighted { weights, quota, .. } => {
                let mut w = vec![Rational::zero(); n];
                for (j, weight) in weights.iter().enumerate() {
                    w[perm[j]] = weight.clone();
                }
                Self::weighted(n, self.model, w, quota.clone())?
            }
            Representation::Unanimity(u) => Self::unanimity(n, self.model, u.permute(perm))?,
            Representation::Empty => Self::empty(n, self.model)?,
            Representation::Trivial => Self::trivial(n, self.model)?,
        };
        if let Some(labels) = &self.labels {
            let mut moved = labels.clone();
            for (j, label) in labels.iter().enumerate() {
                moved[perm[j]] = label.clone();
            }
            game.labels = Some(moved);
        }
        Ok(game)
    }

    /// Same player count and the same winning family.
    pub fn same_winning_sets(&self, other: &SimpleGame) -> Result<bool> {
        if self.n != other.n {
            return Ok(false);
        }
        ensure_enumerable(self.n)?;
        Ok(all_coalitions(self.n).all(|s| self.is_winning(s) == other.is_winning(s)))
    }

    pub fn classify(&self) -> Result<Classification> {
        ensure_enumerable(self.n)?;
        let n = self.n;
        let (mut proper, mut strong, mut self_dual, mut empty, mut trivial) =
            (true, true, true, true, true);
        for s in all_coalitions(n) {
            let wins = self.is_winning(s);
            let complement_wins = self.is_winning(s.complement(n));
            proper &= !(wins && complement_wins);
            strong &= wins || complement_wins;
            self_dual &= wins != complement_wins;
            empty &= !wins;
            trivial &= wins;
        }
        Ok(Classification {
            monotone: self.is_monotone(),
            proper,
            strong,
            self_dual,
            empty,
            trivial,
        })
    }

    /// `counts[k]` splits the `C(n, k)` coalitions of size `k` by whether
    /// they and their complements win.
    pub fn coalition_type_counts(&self) -> Result<Vec<TypeCounts>> {
        ensure_enumerable(self.n)?;
        let n = self.n;
        let mut counts = vec![TypeCounts::default(); n + 1];
        for s in all_coalitions(n) {
            let slot = &mut counts[s.len()];
            match (self.is_winning(s), self.is_winning(s.complement(n))) {
                (true, false) => slot.d += 1,
                (true, true) => slot.c += 1,
                (false, false) => slot.q += 1,
                (false, true) => slot.p += 1,
            }
        }
        Ok(counts)
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::MalformedPermutation { n });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::MalformedPermutation { n });
        }
    }
    Ok(())
}

impl Game for SimpleGame {
    fn player_count(&self) -> usize {
        self.n
    }

    fn model(&self) -> Model {
        self.model
    }

    fn worth(&self, s: Coalition) -> Rational {
        int(self.is_winning(s) as i64)
    }

    fn size_sums(&self) -> Result<Vec<Rational>> {
        Ok(self
            .size_profile()?
            .winning_counts
            .into_iter()
            .map(|w| int(w as i64))
            .collect())
    }

    fn marginal_size_sums(&self, i: usize) -> Result<Vec<Rational>> {
        Ok(self.swing_counts(i)?.into_iter().map(int).collect())
    }
}
