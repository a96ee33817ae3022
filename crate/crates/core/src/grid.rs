use core::f64::consts::PI;

use crate::error::{Error, Result};

/// Fourier frequencies `λ_j = 2πj/N`, `j = 0..N`, on `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "usize", into = "usize"))]
pub struct FrequencyGrid {
    size: usize,
}

impl FrequencyGrid {
    /// Reference resolution used throughout the crate.
    pub const DEFAULT_SIZE: usize = 8192;

    pub fn new(size: usize) -> Result<Self> {
        if size < 4 || !size.is_multiple_of(2) {
            return Err(Error::InvalidGrid(size));
        }
        Ok(Self { size })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn frequency(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.size as f64
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.size).map(move |j| self.frequency(j))
    }

    /// Index of the mirrored frequency `2π − λ_j`.
    pub fn mirror(&self, j: usize) -> usize {
        (self.size - j) % self.size
    }

    /// Largest MA/AR truncation the grid supports, `N/2 − 1`.
    pub fn max_order(&self) -> usize {
        self.size / 2 - 1
    }
}

impl TryFrom<usize> for FrequencyGrid {
    type Error = Error;

    fn try_from(size: usize) -> Result<Self> {
        Self::new(size)
    }
}

impl From<FrequencyGrid> for usize {
    fn from(grid: FrequencyGrid) -> usize {
        grid.size
    }
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self { size: Self::DEFAULT_SIZE }
    }
}
