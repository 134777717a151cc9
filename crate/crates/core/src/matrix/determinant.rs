use std::collections::HashMap;

use super::RingMatrix;
use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Determinant by cofactor expansion along the first column,
/// `det = Σᵢ (−1)ⁱ · a_{i,0} · det(minor_{i,0})`, recursively.
///
/// For a noncommutative entry ring this fixed order (entry before minor) is the definition.
/// Zero entries are skipped and minors are memoized by their row set, so banded matrices
/// stay cheap.
pub fn generic_determinant<S: Ring>(mat: &RingMatrix<S>) -> Result<S> {
    if !mat.is_square() {
        return Err(Error::NonSquare { rows: mat.rows(), cols: mat.cols() });
    }
    let n = mat.rows();
    if n > 31 {
        return Err(Error::ShapeMismatch(format!("{n}x{n} is too large for cofactor expansion")));
    }
    let mut memo = HashMap::new();
    let all_rows = (1u32 << n) - 1;
    Ok(expand(mat, all_rows, 0, &mut memo))
}

fn expand<S: Ring>(mat: &RingMatrix<S>, rows: u32, col: usize, memo: &mut HashMap<u32, S>) -> S {
    if col == mat.cols() {
        return mat.get(0, 0).one_like();
    }
    if let Some(hit) = memo.get(&rows) {
        return hit.clone();
    }
    let mut acc = mat.get(0, 0).zero_like();
    let mut position = 0usize;
    for r in 0..mat.rows() {
        if rows & (1 << r) == 0 {
            continue;
        }
        let entry = mat.get(r, col);
        if !entry.is_zero() {
            let sub = expand(mat, rows & !(1 << r), col + 1, memo);
            let term = entry.clone() * &sub;
            acc = if position % 2 == 0 { acc + term } else { acc - term };
        }
        position += 1;
    }
    memo.insert(rows, acc.clone());
    acc
}
