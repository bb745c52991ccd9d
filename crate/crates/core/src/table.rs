//! The 29 four-player games of the reference table, with their printed
//! Coleman and `Q*_0` values, recomputed exactly.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::SimpleGame;
use crate::measures::q_star;
use crate::rational::{render_decimal, Rational};
use crate::rescaling::RescalingFamily;

/// Minimal winning coalitions (1-based digits), printed C, printed `Q*_0`.
pub const TABLE_ROWS: [(&str, &str, &str); 29] = [
    ("1;2;3;4", "0.9375", "0.8000"),
    ("1;2;3", "0.8750", "0.7500"),
    ("1;2;34", "0.8125", "0.7000"),
    ("1;2", "0.7500", "0.6667"),
    ("1;23;24;34", "0.7500", "0.6500"),
    ("1;23;24", "0.6875", "0.6067"),
    ("12;13;14;23;24;34", "0.6875", "0.6000"),
    ("12;13;14;23;24", "0.6250", "0.5833"),
    ("1;23", "0.6250", "0.5500"),
    ("1;234", "0.5625", "0.5500"),
    ("12;13;14;23", "0.5625", "0.5333"),
    ("12;13;24;34", "0.5625", "0.5333"),
    ("1", "0.5000", "0.5000"),
    ("12;13;23", "0.5000", "0.5000"),
    ("12;13;24", "0.5000", "0.5000"),
    ("12;13;14;234", "0.5000", "0.5000"),
    ("12;34", "0.4375", "0.4667"),
    ("12;13;234", "0.4375", "0.4667"),
    ("12;13;14", "0.4375", "0.4500"),
    ("12;13", "0.3750", "0.4167"),
    ("12;134;234", "0.3750", "0.4033"),
    ("123;124;134;234", "0.3125", "0.4000"),
    ("12;134", "0.3125", "0.3833"),
    ("123;124;134", "0.2500", "0.3500"),
    ("12", "0.2500", "0.3333"),
    ("123;124", "0.1875", "0.3000"),
    ("123", "0.1250", "0.2500"),
    ("1234", "0.0625", "0.2000"),
    ("", "0.0000", "0.0000"),
];

pub const TABLE_PLAYERS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table4Row {
    pub label: String,
    #[serde(with = "crate::rational::serde_rational")]
    pub coleman: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub qstar0: Rational,
    pub coleman_decimal: String,
    pub qstar0_decimal: String,
    pub printed_coleman: String,
    pub printed_qstar0: String,
    pub coleman_agrees: bool,
    pub qstar0_agrees: bool,
}

pub fn table_games() -> Result<Vec<SimpleGame>> {
    TABLE_ROWS
        .iter()
        .map(|(label, _, _)| SimpleGame::from_digits(TABLE_PLAYERS, label))
        .collect()
}

pub fn table4() -> Result<Vec<Table4Row>> {
    let coleman = RescalingFamily::coleman().row(TABLE_PLAYERS)?;
    let uniform = RescalingFamily::uniform().row(TABLE_PLAYERS)?;
    TABLE_ROWS
        .iter()
        .map(|&(label, printed_c, printed_q)| {
            let game = SimpleGame::from_digits(TABLE_PLAYERS, label)?;
            let c = q_star(&game, &coleman)?;
            let q = q_star(&game, &uniform)?;
            let coleman_decimal = render_decimal(&c, 4);
            let qstar0_decimal = render_decimal(&q, 4);
            Ok(Table4Row {
                label: label.to_string(),
                coleman_agrees: coleman_decimal == printed_c,
                qstar0_agrees: qstar0_decimal == printed_q,
                coleman: c,
                qstar0: q,
                coleman_decimal,
                qstar0_decimal,
                printed_coleman: printed_c.to_string(),
                printed_qstar0: printed_q.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use num_bigint::BigInt;

    #[test]
    fn labels_match_games() {
        for (game, (label, _, _)) in table_games().unwrap().iter().zip(TABLE_ROWS) {
            assert_eq!(game.digits_label().unwrap(), label);
        }
    }

    #[test]
    fn examples() {
        let rows = table4().unwrap();
        let find = |l: &str| rows.iter().find(|r| r.label == l).unwrap();
        let r = find("1234");
        assert_eq!(
            (r.coleman.clone(), r.qstar0.clone()),
            (ratio(1, 16), ratio(1, 5))
        );
        assert!(r.coleman_agrees && r.qstar0_agrees);
        let r = find("12;13;23");
        assert_eq!(r.coleman_decimal, "0.5000");
        assert!(r.coleman_agrees && r.qstar0_agrees);
        let r = find("1;23");
        assert_eq!(r.qstar0, ratio(7, 12));
        assert!(!r.qstar0_agrees);
    }

    #[test]
    fn denominators_divide_sixty() {
        for r in table4().unwrap() {
            assert!(
                (BigInt::from(60) % r.qstar0.denom()) == BigInt::from(0),
                "{}",
                r.label
            );
        }
    }
}
