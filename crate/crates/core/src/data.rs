use crate::error::{Error, Result};

/// Row-major data set. Every row (observation) has the same arity.
///
/// Scalar models use arity 1. Logistic rows hold the covariates followed by
/// the 0/1 label.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    values: Vec<f64>,
    arity: usize,
}

impl DataMatrix {
    pub fn from_flat(values: Vec<f64>, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArgument("row arity must be at least 1".into()));
        }
        if values.is_empty() || !values.len().is_multiple_of(arity) {
            return Err(Error::InvalidArgument(format!(
                "{} values cannot form rows of arity {arity}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::DegenerateData(format!(
                "non-finite entry in row {}",
                i / arity
            )));
        }
        Ok(Self { values, arity })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let arity = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut values = Vec::with_capacity(rows.len() * arity);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != arity {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {arity}",
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Self::from_flat(values, arity)
    }

    /// Convenience for scalar data.
    pub fn from_scalars(xs: &[f64]) -> Result<Self> {
        Self::from_flat(xs.to_vec(), 1)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.values.len() / self.arity
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.arity..(i + 1) * self.arity]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.values.chunks_exact(self.arity)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.values
    }

    /// Reorders rows; `perm[k]` is the source row of the new row `k`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut values = Vec::with_capacity(self.values.len());
        for &i in perm {
            values.extend_from_slice(self.row(i));
        }
        Self {
            values,
            arity: self.arity,
        }
    }
}
