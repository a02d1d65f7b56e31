use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A positive voter weight of arbitrary size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(BigUint);

impl Weight {
    pub fn new(value: BigUint) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Validation("voter weight must be at least 1".into()));
        }
        Ok(Weight(value))
    }

    pub fn one() -> Self {
        Weight(BigUint::from(1u32))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn scaled(&self, factor: u64) -> Self {
        assert!(factor > 0, "weights stay positive");
        Weight(&self.0 * factor)
    }
}

impl From<u32> for Weight {
    fn from(value: u32) -> Self {
        assert!(value > 0, "voter weight must be at least 1");
        Weight(BigUint::from(value))
    }
}

impl From<u64> for Weight {
    fn from(value: u64) -> Self {
        assert!(value > 0, "voter weight must be at least 1");
        Weight(BigUint::from(value))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value = BigUint::from_str(s.trim())
            .map_err(|_| Error::Validation(format!("invalid weight {s:?}")))?;
        Weight::new(value)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(&self.0 + &rhs.0)
    }
}

impl Mul for &Weight {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight(&self.0 * &rhs.0)
    }
}

pub(crate) mod serde_number {
    //! Weights travel as plain JSON integers of any length.
    use super::Weight;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(weight: &Weight, serializer: S) -> Result<S::Ok, S::Error> {
        let number: Number = weight
            .0
            .to_string()
            .parse()
            .map_err(serde::ser::Error::custom)?;
        number.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Weight, D::Error> {
        let number = Number::deserialize(deserializer)?;
        number.to_string().parse().map_err(D::Error::custom)
    }
}
