use crate::error::{Error, Result};
use crate::set::{check_len, ConstraintSet};

/// Largest placement count a line may enumerate.
pub const MAX_PLACEMENTS: usize = 1_000_000;

/// Lengths of the maximal runs of ones, in order.
pub fn run_lengths(line: &[f64]) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut cur = 0;
    for &v in line {
        if v == 1.0 {
            cur += 1;
        } else if cur > 0 {
            runs.push(cur);
            cur = 0;
        }
    }
    if cur > 0 {
        runs.push(cur);
    }
    runs
}

/// Free whites `L - Σs - (k - 1)`, or an error when the clues do not fit.
fn slack(len: usize, clusters: &[usize]) -> Result<usize> {
    let need = clusters.iter().sum::<usize>() + clusters.len().saturating_sub(1);
    if clusters.contains(&0) || need > len {
        return Err(Error::InfeasibleLine { len, clusters: clusters.to_vec() });
    }
    Ok(len - need)
}

/// `C(f + k, k)` without overflow for any realistic line.
pub fn placement_count(len: usize, clusters: &[usize]) -> Result<u128> {
    let f = slack(len, clusters)? as u128;
    let k = clusters.len() as u128;
    let mut c: u128 = 1;
    for i in 1..=k {
        c = c * (f + i) / i;
    }
    Ok(c)
}

/// Every 0/1 vector of length `len` whose runs are exactly `clusters`.
///
/// The `f` free whites are spread over the `k + 1` gaps; placements come
/// out in lexicographic order of the gap vector (leading gap first).
pub fn enumerate_line(len: usize, clusters: &[usize]) -> Result<Vec<Vec<u8>>> {
    let flat = enumerate_flat(len, clusters)?;
    Ok(if len == 0 { vec![Vec::new(); flat.1] } else { flat.0.chunks(len).map(<[u8]>::to_vec).collect() })
}

fn enumerate_flat(len: usize, clusters: &[usize]) -> Result<(Vec<u8>, usize)> {
    let count = placement_count(len, clusters)?;
    if count > MAX_PLACEMENTS as u128 {
        return Err(Error::EnumerationTooLarge { count, limit: MAX_PLACEMENTS });
    }
    let free = slack(len, clusters)?;
    let mut out = Vec::with_capacity(count as usize * len);
    let mut gaps = vec![0usize; clusters.len()];
    fill(&mut out, &mut gaps, 0, free, len, clusters);
    Ok((out, count as usize))
}

/// Chooses the extra whites before each cluster; the trailing gap takes
/// whatever is left.
fn fill(out: &mut Vec<u8>, gaps: &mut [usize], at: usize, left: usize, len: usize, clusters: &[usize]) {
    if at == clusters.len() {
        let start = out.len();
        out.resize(start + len, 0);
        let line = &mut out[start..];
        let mut pos = 0;
        for (i, (&g, &c)) in gaps.iter().zip(clusters).enumerate() {
            pos += g + usize::from(i > 0);
            line[pos..pos + c].fill(1);
            pos += c;
        }
        return;
    }
    for g in 0..=left {
        gaps[at] = g;
        fill(out, gaps, at + 1, left - g, len, clusters);
    }
}

/// Lines of a fixed length matching a clue sequence, stored as the full
/// list of placements. Projection scans the list for the nearest one.
#[derive(Debug, Clone, PartialEq)]
pub struct LineFeasibleSet {
    len: usize,
    clusters: Vec<usize>,
    placements: Vec<u8>,
    count: usize,
}

impl LineFeasibleSet {
    pub fn new(len: usize, clusters: Vec<usize>) -> Result<Self> {
        let (placements, count) = enumerate_flat(len, &clusters)?;
        Ok(LineFeasibleSet { len, clusters, placements, count })
    }

    pub fn clusters(&self) -> &[usize] {
        &self.clusters
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn placement(&self, i: usize) -> &[u8] {
        &self.placements[i * self.len..(i + 1) * self.len]
    }

    /// Index of the nearest placement; the earliest wins ties.
    pub fn nearest(&self, x: &[f64]) -> usize {
        let mut best = (0, f64::INFINITY);
        for i in 0..self.count {
            let d: f64 = self
                .placement(i)
                .iter()
                .zip(x)
                .map(|(&b, &v)| {
                    let e = v - b as f64;
                    e * e
                })
                .sum();
            if d < best.1 {
                best = (i, d);
            }
        }
        best.0
    }
}

impl ConstraintSet for LineFeasibleSet {
    fn dim(&self) -> usize {
        self.len
    }

    fn is_convex(&self) -> bool {
        self.count <= 1
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        check_len(self.len, x.len())?;
        if self.len == 0 {
            return Ok(());
        }
        let p = self.placement(self.nearest(x));
        for (o, &b) in out.iter_mut().zip(p) {
            *o = b as f64;
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.len {
            return false;
        }
        let snapped: Option<Vec<f64>> = x
            .iter()
            .map(|&v| {
                if v.abs() <= tol {
                    Some(0.0)
                } else if (v - 1.0).abs() <= tol {
                    Some(1.0)
                } else {
                    None
                }
            })
            .collect();
        snapped.is_some_and(|s| run_lengths(&s) == self.clusters)
    }
}
