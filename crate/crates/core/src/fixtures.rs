//! Built-in fields: the two small tables, the uniform eight-point space, and
//! a few synthetic fields with known conditional structure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::event::Event;
use crate::field::{BuildOptions, FieldSpec, JointField, RowSpec, SiteSpec};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureId {
    /// Sites X, Y, Z; four equally likely rows.
    Table1,
    /// Sites X, Y; three equally likely rows, `(X=1, Y=0)` impossible.
    Table2,
    /// One site with labels 1..8, uniform, plus events A, B, C1, C2.
    Uniform8,
    /// X2 copies X1; X3 agrees with X1 with probability 3/4.
    Copy,
    /// Binary chain X1 -> X2 -> X3, each link flips with probability 1/4.
    Chain,
    /// `k` independent fair coins.
    Coins(usize),
}

impl FixtureId {
    pub const ALL: [FixtureId; 6] = [
        FixtureId::Table1,
        FixtureId::Table2,
        FixtureId::Uniform8,
        FixtureId::Copy,
        FixtureId::Chain,
        FixtureId::Coins(2),
    ];
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::Table1 => f.write_str("TABLE1"),
            FixtureId::Table2 => f.write_str("TABLE2"),
            FixtureId::Uniform8 => f.write_str("UNIFORM8"),
            FixtureId::Copy => f.write_str("COPY"),
            FixtureId::Chain => f.write_str("CHAIN"),
            FixtureId::Coins(k) => write!(f, "COINS:{k}"),
        }
    }
}

impl FromStr for FixtureId {
    type Err = Error;

    /// Accepts `COINS` (two coins), `COINS:k` and `COINSk`.
    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        let id = match up.as_str() {
            "TABLE1" => FixtureId::Table1,
            "TABLE2" => FixtureId::Table2,
            "UNIFORM8" => FixtureId::Uniform8,
            "COPY" => FixtureId::Copy,
            "CHAIN" => FixtureId::Chain,
            "COINS" => FixtureId::Coins(2),
            other => {
                let k = other
                    .strip_prefix("COINS")
                    .map(|r| r.trim_start_matches(':'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&k| (1..=16).contains(&k))
                    .ok_or_else(|| Error::UnknownFixture(s.to_string()))?;
                FixtureId::Coins(k)
            }
        };
        Ok(id)
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: FixtureId,
    pub field: JointField,
    /// Named events, only populated for `Uniform8`.
    pub events: Vec<(String, Event)>,
}

impl Fixture {
    pub fn event(&self, name: &str) -> Option<&Event> {
        self.events.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }
}

fn table(sites: &[&str], rows: &[&[&str]]) -> JointField {
    let mut alphabets: Vec<Vec<String>> = vec![Vec::new(); sites.len()];
    for row in rows {
        for (k, l) in row.iter().enumerate() {
            if !alphabets[k].iter().any(|a| a == l) {
                alphabets[k].push(l.to_string());
            }
        }
    }
    let spec = FieldSpec {
        sites: sites
            .iter()
            .zip(alphabets)
            .map(|(n, alphabet)| SiteSpec {
                name: n.to_string(),
                alphabet,
            })
            .collect(),
        rows: rows
            .iter()
            .map(|r| RowSpec {
                assignment: r.iter().map(|s| s.to_string()).collect(),
                weight: Rational::from_integer(1.into()),
            })
            .collect(),
    };
    JointField::build(&spec, BuildOptions::default()).expect("fixture table is valid")
}

fn grid(sizes: &[usize], weights: &[u32]) -> JointField {
    let w: Vec<BigUint> = weights.iter().map(|&x| BigUint::from(x)).collect();
    JointField::from_grid(sizes, &w).expect("fixture grid is valid")
}

pub fn builtin(id: FixtureId) -> Fixture {
    let mut events = Vec::new();
    let field = match id {
        FixtureId::Table1 => table(
            &["X", "Y", "Z"],
            &[&["1", "1", "1"], &["1", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]],
        ),
        FixtureId::Table2 => table(&["X", "Y"], &[&["1", "1"], &["0", "1"], &["0", "0"]]),
        FixtureId::Uniform8 => {
            let labels: Vec<String> = (1..=8).map(|k| k.to_string()).collect();
            let rows: Vec<Vec<&str>> = labels.iter().map(|l| vec![l.as_str()]).collect();
            let rows: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
            let field = table(&["W"], &rows);
            let ev = |members: &[usize]| {
                let ids: Vec<Vec<String>> = members.iter().map(|m| vec![m.to_string()]).collect();
                Event::from_labels(&field, &ids).expect("labels exist")
            };
            events.push(("A".to_string(), ev(&[1, 2, 3, 4])));
            events.push(("B".to_string(), Event::omega(&field)));
            events.push(("C1".to_string(), ev(&[2, 4, 6, 8])));
            events.push(("C2".to_string(), ev(&[1, 3, 5, 8])));
            field
        }
        // (x1, x2, x3) in eighths: 000 -> 3, 001 -> 1, 110 -> 1, 111 -> 3.
        FixtureId::Copy => grid(&[2, 2, 2], &[3, 1, 0, 0, 0, 0, 1, 3]),
        FixtureId::Chain => {
            let link = |a: usize, b: usize| if a == b { 3 } else { 1 };
            let mut w = Vec::with_capacity(8);
            for x1 in 0..2 {
                for x2 in 0..2 {
                    for x3 in 0..2 {
                        w.push(link(x1, x2) * link(x2, x3));
                    }
                }
            }
            grid(&[2, 2, 2], &w)
        }
        FixtureId::Coins(k) => grid(&vec![2; k], &vec![1; 1 << k]),
    };
    Fixture { id, field, events }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parse_names() {
        assert_eq!("table1".parse::<FixtureId>().unwrap(), FixtureId::Table1);
        assert_eq!("COINS".parse::<FixtureId>().unwrap(), FixtureId::Coins(2));
        assert_eq!("COINS:3".parse::<FixtureId>().unwrap(), FixtureId::Coins(3));
        assert_eq!("COINS4".parse::<FixtureId>().unwrap(), FixtureId::Coins(4));
        assert!("TABLE3".parse::<FixtureId>().is_err());
        for id in FixtureId::ALL {
            assert_eq!(id.to_string().parse::<FixtureId>().unwrap(), id);
        }
    }

    #[test]
    fn copy_masses() {
        let f = builtin(FixtureId::Copy).field;
        let total: Rational = (0..f.outcome_count()).map(|o| f.mass(o)).sum();
        assert!(total.is_one());
        assert_eq!(f.support().count(), 4);
        let idx = f.outcome_of_labels(&["0", "0", "0"]).unwrap();
        assert_eq!(f.mass(idx), Rational::new(3.into(), 8.into()));
    }

    #[test]
    fn positivity_of_fixtures() {
        assert!(!builtin(FixtureId::Table2).field.is_positive());
        assert!(!builtin(FixtureId::Table1).field.is_positive());
        assert!(builtin(FixtureId::Chain).field.is_positive());
        let coins = builtin(FixtureId::Coins(2)).field;
        assert!(coins.is_positive());
        let quarter = Rational::new(1.into(), 4.into());
        assert!((0..4).all(|o| coins.mass(o) == quarter));
    }

    #[test]
    fn chain_masses() {
        let f = builtin(FixtureId::Chain).field;
        let idx = f.outcome_of_labels(&["0", "0", "0"]).unwrap();
        assert_eq!(f.mass(idx), Rational::new(9.into(), 32.into()));
        let idx = f.outcome_of_labels(&["0", "1", "0"]).unwrap();
        assert_eq!(f.mass(idx), Rational::new(1.into(), 32.into()));
    }
}
