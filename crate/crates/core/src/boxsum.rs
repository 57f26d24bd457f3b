//! Subset sums of integer vectors landing in a target box.
//!
//! Vectors are split into halves `A` and `B`. Each subset of `B` stores
//! `(Σ_B, -Σ_B)`; each subset of `A` queries `(hi - Σ_A, Σ_A - lo)`. A query
//! dominates a stored point exactly when `lo <= Σ_A + Σ_B <= hi`.

use crate::error::SolveError;
use crate::index::{DominanceIndex, IndexParams, PointSet, Vectors};

/// Halves are enumerated as bitmasks.
pub const BOX_SUM_MAX_VECTORS: usize = 60;

#[derive(Clone, Copy, Debug)]
pub struct BoxSumOptions {
    /// Whether the empty subset counts as a solution.
    pub allow_empty: bool,
    pub index: IndexParams,
}

impl Default for BoxSumOptions {
    fn default() -> Self {
        BoxSumOptions { allow_empty: true, index: IndexParams::default() }
    }
}

/// Indices of some subset of `vectors` whose sum lies in `[lo, hi]`
/// coordinate-wise, in increasing order.
pub fn solve_vector_box_sum(
    vectors: &[Vec<i64>],
    lo: &[i64],
    hi: &[i64],
    opts: BoxSumOptions,
) -> Result<Option<Vec<usize>>, SolveError> {
    let d = lo.len();
    if hi.len() != d {
        return Err(SolveError::BoxDimension { expected: d, found: hi.len() });
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != d) {
        return Err(SolveError::BoxDimension { expected: d, found: v.len() });
    }
    if let Some(coord) = (0..d).find(|&i| lo[i] > hi[i]) {
        return Err(SolveError::EmptyBox { coord, lo: lo[coord], hi: hi[coord] });
    }
    if vectors.len() > BOX_SUM_MAX_VECTORS {
        return Err(SolveError::TooLarge { n: vectors.len(), limit: BOX_SUM_MAX_VECTORS });
    }
    if d == 0 {
        // Every sum is the empty vector, which lies in the empty-product box.
        return Ok(match (opts.allow_empty, vectors.is_empty()) {
            (true, _) => Some(Vec::new()),
            (false, true) => None,
            (false, false) => Some(vec![0]),
        });
    }

    let k = vectors.len();
    let half = k / 2;
    let (a, b) = vectors.split_at(half);

    let sums = |part: &[Vec<i64>]| -> Vec<Vec<i128>> {
        (0u64..1 << part.len())
            .map(|mask| {
                let mut s = vec![0i128; d];
                for (j, v) in part.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        for (x, y) in s.iter_mut().zip(v) {
                            *x += *y as i128;
                        }
                    }
                }
                s
            })
            .collect()
    };
    let (sums_a, sums_b) = (sums(a), sums(b));

    let mut points = PointSet::with_capacity(2 * d, sums_b.len())?;
    let mut points_nonempty = PointSet::with_capacity(2 * d, sums_b.len())?;
    for (mask, s) in sums_b.iter().enumerate() {
        let row: Vec<i128> = s.iter().copied().chain(s.iter().map(|x| -x)).collect();
        points.push(mask as u64, &row)?;
        if mask != 0 {
            points_nonempty.push(mask as u64, &row)?;
        }
    }
    let query = |s: &[i128]| -> Vec<i128> {
        (0..d).map(|i| hi[i] as i128 - s[i]).chain((0..d).map(|i| s[i] - lo[i] as i128)).collect()
    };

    let assemble = |amask: u64, bmask: u64| -> Vec<usize> {
        (0..half)
            .filter(|j| amask >> j & 1 == 1)
            .chain((0..k - half).filter(|j| bmask >> j & 1 == 1).map(|j| j + half))
            .collect()
    };

    // The empty A-subset is answered separately so it can skip the empty B-subset.
    let index = DominanceIndex::build(points, opts.index)?;
    let first_points = if opts.allow_empty {
        index.clone()
    } else {
        DominanceIndex::build(points_nonempty, opts.index)?
    };
    if let Some(id) = first_points.find_dominated(&query(&sums_a[0]))? {
        return Ok(Some(assemble(0, id)));
    }
    if sums_a.len() > 1 {
        let mut batch = Vectors::with_capacity(2 * d, sums_a.len() - 1)?;
        for s in &sums_a[1..] {
            batch.push(&query(s))?;
        }
        if let Some((qi, id)) = index.find_any(&batch)? {
            return Ok(Some(assemble(qi as u64 + 1, id)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_unique_sum() {
        let vs = vec![vec![1, 0], vec![0, 1]];
        let got = solve_vector_box_sum(&vs, &[1, 1], &[1, 1], BoxSumOptions::default()).unwrap();
        assert_eq!(got, Some(vec![0, 1]));
    }

    #[test]
    fn unreachable_box() {
        let got = solve_vector_box_sum(&[vec![2]], &[1], &[1], BoxSumOptions::default()).unwrap();
        assert_eq!(got, None);
    }

    #[test]
    fn empty_subset_flag() {
        let vs = vec![vec![5], vec![7]];
        assert_eq!(solve_vector_box_sum(&vs, &[0], &[0], BoxSumOptions::default()).unwrap(), Some(vec![]));
        let strict = BoxSumOptions { allow_empty: false, ..Default::default() };
        assert_eq!(solve_vector_box_sum(&vs, &[0], &[0], strict).unwrap(), None);
        assert_eq!(solve_vector_box_sum(&vs, &[7], &[7], strict).unwrap(), Some(vec![1]));
        assert_eq!(solve_vector_box_sum(&[], &[0], &[0], strict).unwrap(), None);
    }

    #[test]
    fn input_errors() {
        assert!(matches!(
            solve_vector_box_sum(&[vec![1, 2]], &[0], &[1], BoxSumOptions::default()),
            Err(SolveError::BoxDimension { .. })
        ));
        assert!(matches!(
            solve_vector_box_sum(&[vec![1]], &[2], &[1], BoxSumOptions::default()),
            Err(SolveError::EmptyBox { coord: 0, .. })
        ));
        assert!(matches!(
            solve_vector_box_sum(&[vec![1]], &[0, 0], &[1], BoxSumOptions::default()),
            Err(SolveError::BoxDimension { .. })
        ));
    }

    #[test]
    fn extreme_values_do_not_overflow() {
        let vs = vec![vec![i64::MAX], vec![i64::MAX], vec![i64::MIN]];
        let got = solve_vector_box_sum(&vs, &[-1], &[-1], BoxSumOptions::default()).unwrap().unwrap();
        let sum: i128 = got.iter().map(|&i| vs[i][0] as i128).sum();
        assert_eq!(sum, -1);
    }
}
