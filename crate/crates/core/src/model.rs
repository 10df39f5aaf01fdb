//! Items, instances, and the JSON wire format.
//!
//! An instance is an ordered item sequence plus the buffer capacity `R` and
//! the variant flags. Sizes and values are exact rationals; the parser
//! enforces `0 < size ≤ 1`, `value ≥ 0`, and `value = size` in proportional
//! mode.

use crate::exact::{format_rat, parse_rat, Rat};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Proportional,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Removability {
    Removable,
    #[serde(rename = "non-removable", alias = "nonremovable")]
    NonRemovable,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Proportional => write!(f, "proportional"),
            Mode::General => write!(f, "general"),
        }
    }
}

impl fmt::Display for Removability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Removability::Removable => write!(f, "removable"),
            Removability::NonRemovable => write!(f, "non-removable"),
        }
    }
}

/// A `(size, value)` pair with its 1-based position in the arrival sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub size: Rat,
    pub value: Rat,
    pub arrival_index: u32,
}

impl Item {
    pub fn new(size: Rat, value: Rat, arrival_index: u32) -> Result<Self, ModelError> {
        if !size.is_positive() || size > Rat::one() {
            return Err(ModelError::SizeOutOfRange { index: arrival_index, size: format_rat(&size) });
        }
        if value.is_negative() {
            return Err(ModelError::NegativeValue { index: arrival_index, value: format_rat(&value) });
        }
        Ok(Self { size, value, arrival_index })
    }

    pub fn density(&self) -> Rat {
        &self.value / &self.size
    }
}

/// An ordered item sequence with buffer capacity and variant flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub items: Vec<Item>,
    pub capacity_r: Rat,
    pub mode: Mode,
    pub removability: Removability,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("item {index}: size {size} outside (0, 1]")]
    SizeOutOfRange { index: u32, size: String },
    #[error("item {index}: negative value {value}")]
    NegativeValue { index: u32, value: String },
    #[error("item {index}: proportional instance with value {value} != size {size}")]
    NotProportional { index: u32, size: String, value: String },
    #[error("buffer capacity R = {0} is below 1")]
    CapacityBelowOne(String),
    #[error("bad rational: {0}")]
    BadRational(String),
    #[error("bad instance JSON: {0}")]
    BadJson(String),
}

impl Instance {
    pub fn new(
        items: Vec<Item>,
        capacity_r: Rat,
        mode: Mode,
        removability: Removability,
    ) -> Result<Self, ModelError> {
        if capacity_r < Rat::one() {
            return Err(ModelError::CapacityBelowOne(format_rat(&capacity_r)));
        }
        for (pos, item) in items.iter().enumerate() {
            debug_assert_eq!(item.arrival_index as usize, pos + 1, "arrival indices must be 1..n");
            if mode == Mode::Proportional && item.value != item.size {
                return Err(ModelError::NotProportional {
                    index: item.arrival_index,
                    size: format_rat(&item.size),
                    value: format_rat(&item.value),
                });
            }
        }
        Ok(Self { items, capacity_r, mode, removability })
    }

    /// Builds a proportional instance from bare sizes.
    pub fn proportional(
        sizes: Vec<Rat>,
        capacity_r: Rat,
        removability: Removability,
    ) -> Result<Self, ModelError> {
        let items = sizes
            .into_iter()
            .enumerate()
            .map(|(i, s)| Item::new(s.clone(), s, i as u32 + 1))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(items, capacity_r, Mode::Proportional, removability)
    }

    /// Builds a general instance from `(size, value)` pairs.
    pub fn general(
        pairs: Vec<(Rat, Rat)>,
        capacity_r: Rat,
        removability: Removability,
    ) -> Result<Self, ModelError> {
        let items = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (s, v))| Item::new(s, v, i as u32 + 1))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(items, capacity_r, Mode::General, removability)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Total size of all items (the buffer overflows iff this exceeds R).
    pub fn total_size(&self) -> Rat {
        self.items.iter().map(|e| e.size.clone()).sum()
    }

    pub fn to_json(&self) -> String {
        let wire = InstanceWire {
            r: format_rat(&self.capacity_r),
            mode: self.mode,
            removability: self.removability,
            items: self
                .items
                .iter()
                .map(|e| ItemWire { size: format_rat(&e.size), value: format_rat(&e.value) })
                .collect(),
        };
        serde_json::to_string_pretty(&wire).expect("instance serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let wire: InstanceWire =
            serde_json::from_str(text).map_err(|e| ModelError::BadJson(e.to_string()))?;
        let capacity_r = parse_rat(&wire.r).map_err(ModelError::BadRational)?;
        let items = wire
            .items
            .iter()
            .enumerate()
            .map(|(i, it)| {
                let size = parse_rat(&it.size).map_err(ModelError::BadRational)?;
                let value = parse_rat(&it.value).map_err(ModelError::BadRational)?;
                Item::new(size, value, i as u32 + 1)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(items, capacity_r, wire.mode, wire.removability)
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceWire {
    #[serde(rename = "R")]
    r: String,
    mode: Mode,
    removability: Removability,
    items: Vec<ItemWire>,
}

#[derive(Serialize, Deserialize)]
struct ItemWire {
    size: String,
    value: String,
}

/// Zero-size placeholder never exists: sums over an empty set are plain zero.
pub fn sum_sizes<'a>(items: impl IntoIterator<Item = &'a Item>) -> Rat {
    items.into_iter().fold(Rat::zero(), |acc, e| acc + &e.size)
}

pub fn sum_values<'a>(items: impl IntoIterator<Item = &'a Item>) -> Rat {
    items.into_iter().fold(Rat::zero(), |acc, e| acc + &e.value)
}
