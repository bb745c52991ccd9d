//! Coalitional manipulation of three-candidate positional scoring rules.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::coalition::{coalitions_of_size, ensure_enumerable, Coalition};
use crate::error::{Error, Result};
use crate::game::{Model, SimpleGame};
use crate::rational::{format_rational, parse_rational, Rational};

/// Largest coalition whose `6^|T|` joint deviations are searched by default.
pub const DEFAULT_DEVIATION_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Candidate {
    A,
    B,
    C,
}

impl Candidate {
    pub const ALL: [Candidate; 3] = [Candidate::A, Candidate::B, Candidate::C];

    fn index(self) -> usize {
        self as usize
    }

    fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_lowercase() {
            'a' => Some(Candidate::A),
            'b' => Some(Candidate::B),
            'c' => Some(Candidate::C),
            _ => None,
        }
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Candidate::A => 'a',
            Candidate::B => 'b',
            Candidate::C => 'c',
        };
        write!(f, "{c}")
    }
}

/// A strict order over the three candidates, best first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ranking([Candidate; 3]);

impl Ranking {
    pub const ALL: [Ranking; 6] = {
        use Candidate::*;
        [
            Ranking([A, B, C]),
            Ranking([A, C, B]),
            Ranking([B, A, C]),
            Ranking([B, C, A]),
            Ranking([C, A, B]),
            Ranking([C, B, A]),
        ]
    };

    pub fn new(order: [Candidate; 3]) -> Result<Self> {
        let distinct = order[0] != order[1] && order[1] != order[2] && order[0] != order[2];
        if !distinct {
            return Err(Error::Parse(
                "a ranking must list each candidate once".into(),
            ));
        }
        Ok(Ranking(order))
    }

    pub fn order(&self) -> [Candidate; 3] {
        self.0
    }

    pub fn first(&self) -> Candidate {
        self.0[0]
    }

    pub fn second(&self) -> Candidate {
        self.0[1]
    }

    /// Strict first-order stochastic dominance of `better` over `worse`
    /// with respect to this ranking, excluding equal lotteries.
    pub fn prefers(&self, better: &OutcomeLottery, worse: &OutcomeLottery) -> bool {
        if better == worse {
            return false;
        }
        // Compare Pr(top j) as |prefix ∩ support| / |support| by cross-multiplying.
        (1..=2).all(|j| {
            let top = &self.0[..j];
            let hits = |l: &OutcomeLottery| l.support.iter().filter(|c| top.contains(c)).count();
            hits(better) * worse.support.len() >= hits(worse) * better.support.len()
        })
    }
}

impl FromStr for Ranking {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cs: Vec<Candidate> = s
            .trim()
            .chars()
            .map(|c| {
                Candidate::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("unknown candidate `{c}` in `{s}`")))
            })
            .collect::<Result<_>>()?;
        let order: [Candidate; 3] = cs
            .try_into()
            .map_err(|_| Error::Parse(format!("`{s}` must rank exactly three candidates")))?;
        Ranking::new(order)
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// One sincere ballot per voter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile(Vec<Ranking>);

impl Profile {
    pub fn new(voters: Vec<Ranking>) -> Result<Self> {
        if voters.is_empty() {
            return Err(Error::InvalidPlayerCount(0));
        }
        ensure_enumerable(voters.len())?;
        Ok(Profile(voters))
    }

    pub fn voters(&self) -> &[Ranking] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let voters = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Ranking>>>()?;
        Profile::new(voters)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Ranking::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Scores 1, alpha, 0 for first, second and third place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoringRule {
    alpha: Rational,
    // alpha = p / q, kept small so scores fit in machine integers
    p: i128,
    q: i128,
}

impl ScoringRule {
    pub fn new(alpha: Rational) -> Result<Self> {
        if alpha.is_negative() || alpha > Rational::one() {
            return Err(Error::InvalidAlpha);
        }
        let (p, q) = match (alpha.numer().to_i64(), alpha.denom().to_i64()) {
            (Some(p), Some(q)) => (p.into(), q.into()),
            _ => return Err(Error::InvalidAlpha),
        };
        Ok(ScoringRule { alpha, p, q })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// Scaled scores `q · (firsts + alpha · seconds)` per candidate.
    fn scores(&self, tally: &Tally) -> [i128; 3] {
        std::array::from_fn(|c| self.q * tally.first[c] + self.p * tally.second[c])
    }
}

impl FromStr for ScoringRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScoringRule::new(parse_rational(s)?)
    }
}

impl fmt::Display for ScoringRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.alpha))
    }
}

/// Uniform lottery over the tied top scorers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutcomeLottery {
    support: Vec<Candidate>,
}

impl OutcomeLottery {
    pub fn new(mut support: Vec<Candidate>) -> Result<Self> {
        support.sort();
        support.dedup();
        if support.is_empty() {
            return Err(Error::InvalidDistribution(
                "a lottery needs at least one candidate".into(),
            ));
        }
        Ok(OutcomeLottery { support })
    }

    pub fn support(&self) -> &[Candidate] {
        &self.support
    }

    pub fn probability(&self, c: Candidate) -> Rational {
        if self.support.contains(&c) {
            Rational::new(1.into(), self.support.len().into())
        } else {
            Rational::default()
        }
    }
}

impl fmt::Display for OutcomeLottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(Candidate::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    first: [i128; 3],
    second: [i128; 3],
}

impl Tally {
    fn add(&mut self, r: Ranking) {
        self.first[r.first().index()] += 1;
        self.second[r.second().index()] += 1;
    }

    fn outcome(&self, rule: &ScoringRule) -> OutcomeLottery {
        let scores = rule.scores(self);
        let best = scores.iter().copied().max().unwrap_or(0);
        let support = Candidate::ALL
            .into_iter()
            .filter(|c| scores[c.index()] == best)
            .collect();
        OutcomeLottery { support }
    }
}

/// Outcome when every voter casts the listed ballot.
pub fn outcome(ballots: &[Ranking], rule: &ScoringRule) -> OutcomeLottery {
    let mut tally = Tally::default();
    ballots.iter().for_each(|&b| tally.add(b));
    tally.outcome(rule)
}

pub fn sincere_outcome(profile: &Profile, rule: &ScoringRule) -> OutcomeLottery {
    outcome(profile.voters(), rule)
}

/// A joint deviation by a coalition together with the outcome it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manipulation {
    pub coalition: Coalition,
    /// Ballots cast by the members, in increasing voter order.
    pub ballots: Vec<Ranking>,
    pub outcome: OutcomeLottery,
}

fn search_deviations(
    profile: &Profile,
    rule: &ScoringRule,
    t: Coalition,
    limit: usize,
    visit: &mut dyn FnMut(Manipulation) -> bool,
) -> Result<()> {
    let n = profile.len();
    t.validate(n)?;
    if t.is_empty() {
        return Err(Error::EmptyDeviation);
    }
    if t.len() > limit {
        return Err(Error::DeviationCapacity {
            size: t.len(),
            limit,
        });
    }
    let sincere = sincere_outcome(profile, rule);
    let members: Vec<usize> = t.players().collect();
    let mut base = Tally::default();
    (0..n)
        .filter(|&v| !t.contains(v))
        .for_each(|v| base.add(profile.voters()[v]));
    let mut digits = vec![0usize; members.len()];
    loop {
        let mut tally = base;
        digits.iter().for_each(|&d| tally.add(Ranking::ALL[d]));
        let result = tally.outcome(rule);
        let all_gain = members
            .iter()
            .all(|&v| profile.voters()[v].prefers(&result, &sincere));
        if all_gain {
            let ballots = digits.iter().map(|&d| Ranking::ALL[d]).collect();
            if !visit(Manipulation {
                coalition: t,
                ballots,
                outcome: result,
            }) {
                return Ok(());
            }
        }
        // mixed-radix increment over 6^|T| assignments
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(());
            }
            digits[pos] += 1;
            if digits[pos] < Ranking::ALL.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// The first successful joint deviation by `t`, if any.
pub fn find_manipulation(
    profile: &Profile,
    rule: &ScoringRule,
    t: Coalition,
) -> Result<Option<Manipulation>> {
    find_manipulation_with_limit(profile, rule, t, DEFAULT_DEVIATION_LIMIT)
}

pub fn find_manipulation_with_limit(
    profile: &Profile,
    rule: &ScoringRule,
    t: Coalition,
    limit: usize,
) -> Result<Option<Manipulation>> {
    let mut found = None;
    search_deviations(profile, rule, t, limit, &mut |m| {
        found = Some(m);
        false
    })?;
    Ok(found)
}

/// Every successful joint deviation by `t`.
pub fn all_manipulations(
    profile: &Profile,
    rule: &ScoringRule,
    t: Coalition,
) -> Result<Vec<Manipulation>> {
    let mut found = Vec::new();
    search_deviations(profile, rule, t, DEFAULT_DEVIATION_LIMIT, &mut |m| {
        found.push(m);
        true
    })?;
    Ok(found)
}

pub fn can_manipulate(profile: &Profile, rule: &ScoringRule, t: Coalition) -> Result<bool> {
    Ok(find_manipulation(profile, rule, t)?.is_some())
}

/// Winning coalitions are those containing a manipulating subset.
pub fn build_manipulation_game(profile: &Profile, rule: &ScoringRule) -> Result<SimpleGame> {
    build_manipulation_game_with_limit(profile, rule, DEFAULT_DEVIATION_LIMIT)
}

pub fn build_manipulation_game_with_limit(
    profile: &Profile,
    rule: &ScoringRule,
    limit: usize,
) -> Result<SimpleGame> {
    let n = profile.len();
    ensure_enumerable(n)?;
    let mut minimal: Vec<Coalition> = Vec::new();
    for k in 1..=n {
        for t in coalitions_of_size(n, k) {
            if minimal.iter().any(|m| m.is_subset_of(t)) {
                continue;
            }
            if find_manipulation_with_limit(profile, rule, t, limit)?.is_some() {
                minimal.push(t);
            }
        }
    }
    if minimal.is_empty() {
        return SimpleGame::empty(n, Model::Standard);
    }
    SimpleGame::minimal_winning(n, Model::Standard, minimal)
}
