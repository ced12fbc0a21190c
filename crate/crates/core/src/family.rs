use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LrcError;

/// Every code family the crate can build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Base,
    ExtendOne,
    ExtendAll,
    #[serde(rename = "RLOne")]
    RlOne,
    #[serde(rename = "RLAll")]
    RlAll,
    ModExtendOne,
    ModExtendAll,
    EBase,
    EExtendOne,
    EExtendAll,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Base,
        Family::ExtendOne,
        Family::ExtendAll,
        Family::RlOne,
        Family::RlAll,
        Family::ModExtendOne,
        Family::ModExtendAll,
        Family::EBase,
        Family::EExtendOne,
        Family::EExtendAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Base => "Base",
            Family::ExtendOne => "ExtendOne",
            Family::ExtendAll => "ExtendAll",
            Family::RlOne => "RLOne",
            Family::RlAll => "RLAll",
            Family::ModExtendOne => "ModExtendOne",
            Family::ModExtendAll => "ModExtendAll",
            Family::EBase => "EBase",
            Family::EExtendOne => "EExtendOne",
            Family::EExtendAll => "EExtendAll",
        }
    }

    pub fn is_modified(self) -> bool {
        matches!(self, Family::ModExtendOne | Family::ModExtendAll)
    }

    pub fn is_elliptic(self) -> bool {
        matches!(self, Family::EBase | Family::EExtendOne | Family::EExtendAll)
    }

    /// Families whose repair groups tolerate two erasures.
    pub fn delta(self) -> usize {
        match self {
            Family::ExtendAll | Family::ModExtendAll | Family::RlAll | Family::EExtendAll => 3,
            _ => 2,
        }
    }

    /// Families whose basis vanishes on the first block.
    pub fn uses_vanishing_block(self) -> bool {
        matches!(self, Family::ExtendOne | Family::RlOne)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = LrcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| LrcError::Parse(format!("unknown family {s}")))
    }
}
