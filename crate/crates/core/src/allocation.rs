use std::ops::Index;

use crate::rational::{format_rational, sum, Rational};

/// Exact per-player values, indexed by player `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Allocation(Vec<Rational>);

impl Allocation {
    pub fn new(values: Vec<Rational>) -> Self {
        Allocation(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.0.get(i)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    pub fn total(&self) -> Rational {
        sum(&self.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().enumerate()
    }

    /// Value moved to `perm[i]` for every player `i`.
    pub fn permute(&self, perm: &[usize]) -> Allocation {
        let mut out = self.0.clone();
        for (i, v) in self.0.iter().enumerate() {
            out[perm[i]] = v.clone();
        }
        Allocation(out)
    }

    pub fn scaled_by(&self, factor: &Rational) -> Allocation {
        Allocation(self.0.iter().map(|v| v * factor).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl Index<usize> for Allocation {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl FromIterator<Rational> for Allocation {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        Allocation(iter.into_iter().collect())
    }
}
