//! Table types: the unchecked 256-entry octet table and the bijective S-box.

use thiserror::Error;

/// Number of entries in an 8-bit table.
pub const TABLE_SIZE: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table must hold exactly 256 values, got {0}")]
    WrongLength(usize),
    #[error("table is not bijective: {missing} value(s) never appear")]
    NotBijective { missing: usize },
}

/// A 256-entry octet table with no bijectivity guarantee — the shape of
/// ingested files and freshly drawn tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable([u8; TABLE_SIZE]);

impl RawTable {
    pub fn new(values: [u8; TABLE_SIZE]) -> Self {
        Self(values)
    }

    pub fn from_slice(values: &[u8]) -> Result<Self, TableError> {
        let arr: [u8; TABLE_SIZE] = values
            .try_into()
            .map_err(|_| TableError::WrongLength(values.len()))?;
        Ok(Self(arr))
    }

    pub fn values(&self) -> &[u8; TABLE_SIZE] {
        &self.0
    }

    pub fn get(&self, x: u8) -> u8 {
        self.0[x as usize]
    }

    /// True iff every value 0–255 appears exactly once.
    pub fn is_bijective(&self) -> bool {
        let mut seen = [false; TABLE_SIZE];
        for &v in &self.0 {
            if seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    /// Indices `i` with `S[i] = i`.
    pub fn fixed_points(&self) -> Vec<u8> {
        (0..TABLE_SIZE)
            .filter(|&i| self.0[i] as usize == i)
            .map(|i| i as u8)
            .collect()
    }

    /// Number of positions at which two tables agree.
    pub fn agreement(&self, other: &RawTable) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .filter(|(a, b)| a == b)
            .count()
    }
}

impl From<SBox> for RawTable {
    fn from(sbox: SBox) -> Self {
        sbox.0
    }
}

/// A bijective substitution box: a permutation of 0–255.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SBox(RawTable);

impl SBox {
    /// Validates bijectivity.
    pub fn from_table(table: RawTable) -> Result<Self, TableError> {
        if !table.is_bijective() {
            let mut seen = [false; TABLE_SIZE];
            for &v in table.values() {
                seen[v as usize] = true;
            }
            let missing = seen.iter().filter(|&&s| !s).count();
            return Err(TableError::NotBijective { missing });
        }
        Ok(Self(table))
    }

    pub fn from_slice(values: &[u8]) -> Result<Self, TableError> {
        Self::from_table(RawTable::from_slice(values)?)
    }

    /// The identity permutation.
    pub fn identity() -> Self {
        let mut arr = [0u8; TABLE_SIZE];
        for (i, v) in arr.iter_mut().enumerate() {
            *v = i as u8;
        }
        Self(RawTable(arr))
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.0.get(x)
    }

    pub fn as_raw(&self) -> &RawTable {
        &self.0
    }

    pub fn values(&self) -> &[u8; TABLE_SIZE] {
        self.0.values()
    }

    /// Swaps the values at two positions; transpositions preserve
    /// bijectivity exactly.
    pub(crate) fn swap_positions(&mut self, i: u8, j: u8) {
        self.0 .0.swap(i as usize, j as usize);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_bijective_with_all_fixed_points() {
        let id = SBox::identity();
        assert!(id.as_raw().is_bijective());
        assert_eq!(id.as_raw().fixed_points().len(), 256);
    }

    #[test]
    fn constant_table_is_not_bijective() {
        let t = RawTable::new([0u8; 256]);
        assert!(!t.is_bijective());
        assert!(matches!(
            SBox::from_table(t),
            Err(TableError::NotBijective { missing: 255 })
        ));
    }

    #[test]
    fn from_slice_checks_length() {
        assert!(matches!(
            RawTable::from_slice(&[0u8; 255]),
            Err(TableError::WrongLength(255))
        ));
        assert!(RawTable::from_slice(&[7u8; 256]).is_ok());
    }

    #[test]
    fn agreement_counts_matching_positions() {
        let id = SBox::identity();
        let mut other = id.clone();
        other.swap_positions(0, 1);
        assert_eq!(id.as_raw().agreement(other.as_raw()), 254);
    }
}
