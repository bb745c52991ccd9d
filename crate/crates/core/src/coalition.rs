//! Coalitions as bit patterns over player indices, plus the enumeration
//! primitives every exhaustive computation in the crate is built on.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest player count any representation accepts.
pub const MAX_PLAYERS: usize = 63;

/// Default bound on `n` for operations that walk all `2^n` coalitions.
pub const N_MAX: usize = 26;

/// Environment variable overriding [`N_MAX`].
pub const CAPACITY_ENV: &str = "QPOWER_MAX_PLAYERS";

/// Hard ceiling for the override; beyond this a dense table no longer fits.
const CAPACITY_CEILING: usize = 34;

/// Effective enumeration bound: [`N_MAX`] unless overridden through
/// [`CAPACITY_ENV`]. Read once per process.
pub fn enumeration_limit() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(CAPACITY_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|v| v.clamp(1, CAPACITY_CEILING))
            .unwrap_or(N_MAX)
    })
}

pub fn ensure_enumerable(n: usize) -> Result<()> {
    let limit = enumeration_limit();
    if n > limit {
        Err(Error::Capacity { n, limit })
    } else {
        Ok(())
    }
}

/// A set of players; bit `i` is set iff player `i` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The grand coalition `{0, .., n-1}`.
    pub fn grand(n: usize) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        Coalition((1u64 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        Coalition(1 << i)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        Coalition(players.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    /// Builds a coalition after checking every index against `n`.
    pub fn try_from_players<I: IntoIterator<Item = usize>>(players: I, n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for player in players {
            if player >= n {
                return Err(Error::PlayerOutOfRange { player, n });
            }
            bits |= 1 << player;
        }
        Ok(Coalition(bits))
    }

    pub fn validate(self, n: usize) -> Result<()> {
        if self.0 >> n != 0 {
            let player = 63 - self.0.leading_zeros() as usize;
            return Err(Error::PlayerOutOfRange { player, n });
        }
        Ok(())
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Coalition(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Coalition(self.0 & !(1 << i))
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Coalition(!self.0 & Self::grand(n).0)
    }

    /// Deletes player `i` and shifts every higher index down by one.
    pub fn remove_index(self, i: usize) -> Self {
        let low = self.0 & ((1u64 << i) - 1);
        let high = (self.0 >> (i + 1)) << i;
        Coalition(low | high)
    }

    /// Maps each member `j` to `perm[j]`.
    pub fn permute(self, perm: &[usize]) -> Self {
        Coalition::from_players(self.players().map(|j| perm[j]))
    }

    pub fn players(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Coalition> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Coalition(cur))
        })
    }

    /// Members written as 1-based digits, e.g. `{0, 1, 3}` becomes `"124"`.
    /// Only meaningful for fewer than ten players.
    pub fn digits_label(self) -> String {
        self.players()
            .map(|i| char::from_digit(i as u32 + 1, 36).unwrap_or('?'))
            .collect()
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.players().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// All `2^n` coalitions in increasing bit order.
pub fn all_coalitions(n: usize) -> impl Iterator<Item = Coalition> {
    (0..1u64 << n).map(Coalition)
}

/// All coalitions of exactly `k` players out of `n`, in increasing bit order.
pub fn coalitions_of_size(n: usize, k: usize) -> impl Iterator<Item = Coalition> {
    let limit = 1u64 << n;
    let mut next = if k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack: next integer with the same popcount.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let candidate = (((r ^ cur) >> 2) / c) | r;
            (candidate < limit).then_some(candidate)
        };
        Some(Coalition(cur))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binomial_u64;

    #[test]
    fn size_classes_partition_the_power_set() {
        for n in 0..=10 {
            let mut seen = vec![false; 1 << n];
            for k in 0..=n {
                let members: Vec<_> = coalitions_of_size(n, k).collect();
                assert_eq!(members.len() as u64, binomial_u64(n, k));
                for s in members {
                    assert_eq!(s.len(), k);
                    assert!(!seen[s.bits() as usize]);
                    seen[s.bits() as usize] = true;
                }
            }
            assert!(seen.into_iter().all(|b| b));
        }
    }

    #[test]
    fn remove_index_compacts() {
        let s = Coalition::from_players([0, 2, 3]);
        assert_eq!(s.remove_index(2), Coalition::from_players([0, 2]));
        assert_eq!(s.remove_index(1), Coalition::from_players([0, 1, 2]));
        assert_eq!(s.remove_index(0), Coalition::from_players([1, 2]));
    }

    #[test]
    fn subsets_are_exhaustive() {
        let s = Coalition::from_players([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(Coalition::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn validation_reports_offending_player() {
        assert_eq!(
            Coalition::from_players([1, 5]).validate(4),
            Err(Error::PlayerOutOfRange { player: 5, n: 4 })
        );
        assert!(Coalition::try_from_players([0, 4], 4).is_err());
    }

    #[test]
    fn display_and_label() {
        let s = Coalition::from_players([0, 1, 3]);
        assert_eq!(s.to_string(), "{0,1,3}");
        assert_eq!(s.digits_label(), "124");
        assert_eq!(s.complement(5), Coalition::from_players([2, 4]));
    }
}
