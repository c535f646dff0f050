use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which leaf of the foliation: `Plus` lives in s, `Minus` in ŝ = −s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Leaf {
    Plus,
    Minus,
}

impl Leaf {
    /// Drift sign σ: +1 for the plus leaf, −1 for the minus leaf.
    pub fn sigma(self) -> i64 {
        match self {
            Leaf::Plus => 1,
            Leaf::Minus => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Leaf::Plus => "plus",
            Leaf::Minus => "minus",
        }
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Leaf {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "plus" | "plus_leaf" | "+" => Ok(Leaf::Plus),
            "minus" | "minus_leaf" | "-" => Ok(Leaf::Minus),
            _ => Err(Error::Parse(format!("unknown leaf {s:?}"))),
        }
    }
}
