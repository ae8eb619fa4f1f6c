use crate::error::{Error, Result};
use crate::set::ConstraintSet;

/// All rearrangements of a fixed multiset of reals `c_1, ..., c_n`.
///
/// A nearest arrangement puts the i-th largest value at the index of the
/// i-th largest coordinate of the input (rearrangement inequality). Ties in
/// the input are broken by a stable sort: the lower index ranks higher.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationSet {
    /// Ascending.
    values: Vec<f64>,
}

impl PermutationSet {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("permutation set needs at least one value".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("permutation values must be finite".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(PermutationSet { values })
    }

    /// Permutations of `1, 2, ..., n`.
    pub fn of_range(n: usize) -> Result<Self> {
        PermutationSet::new((1..=n).map(|v| v as f64).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl ConstraintSet for PermutationSet {
    fn dim(&self) -> usize {
        self.values.len()
    }

    fn is_convex(&self) -> bool {
        self.values.first() == self.values.last()
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        // Pair each coordinate with its index and order the pairs by
        // non-increasing coordinate; the k-th pair receives the k-th largest value.
        let mut order: Vec<usize> = (0..x.len()).collect();
        order.sort_by(|&i, &j| x[j].total_cmp(&x[i]).then(i.cmp(&j)));
        for (rank, &idx) in order.iter().enumerate() {
            out[idx] = self.values[self.values.len() - 1 - rank];
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        let mut sorted = x.to_vec();
        sorted.sort_by(f64::total_cmp);
        sorted.iter().zip(&self.values).all(|(a, b)| (a - b).abs() <= tol)
    }
}
