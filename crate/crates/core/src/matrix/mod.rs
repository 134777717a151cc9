//! Dense matrices over exact rings, the companion-matrix representation of the hybrid
//! sequence, and bordered tridiagonal determinant representations.

mod cereceda;
mod determinant;

use serde::{Serialize, Serializer};

pub use cereceda::{cereceda_matrix, hybrid_tridiagonal_matrix, CerecedaParams, TridiagonalReading};
pub use determinant::generic_determinant;

use crate::error::{Error, Result};
use crate::hybrid::Hybrid;
use crate::hybrid_sequence::HybridSequence;
use crate::scalar::{CommutativeRing, Rational, Ring};
use crate::sequence::SeqParams;

/// Row-major matrix. Products multiply `lhs_entry · rhs_entry` in that order, so the
/// entry ring may be noncommutative.
#[derive(Debug, Clone, PartialEq)]
pub struct RingMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Ring> RingMatrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RingMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        RingMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn filled(rows: usize, cols: usize, value: S) -> Self {
        RingMatrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn identity(n: usize, like: &S) -> Self {
        let mut m = RingMatrix::filled(n, n, like.zero_like());
        for i in 0..n {
            m.set(i, i, like.one_like());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Ring>(&self, f: impl FnMut(&S) -> T) -> RingMatrix<T> {
        RingMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn mul(&self, rhs: &RingMatrix<S>) -> Result<RingMatrix<S>> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.get(i, 0).clone() * rhs.get(0, j);
                for k in 1..self.cols {
                    acc = acc + self.get(i, k).clone() * rhs.get(k, j);
                }
                data.push(acc);
            }
        }
        Ok(RingMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn add(&self, rhs: &RingMatrix<S>) -> Result<RingMatrix<S>> {
        self.zip(rhs, |x, y| x.clone() + y)
    }

    pub fn sub(&self, rhs: &RingMatrix<S>) -> Result<RingMatrix<S>> {
        self.zip(rhs, |x, y| x.clone() - y)
    }

    fn zip(&self, rhs: &RingMatrix<S>, f: impl Fn(&S, &S) -> S) -> Result<RingMatrix<S>> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch("elementwise operation on different shapes".into()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(x, y)| f(x, y)).collect();
        Ok(RingMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, k: &Rational) -> RingMatrix<S> {
        self.map(|x| x.scale(k))
    }

    pub fn pow(&self, exp: u32) -> Result<RingMatrix<S>> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = RingMatrix::identity(self.rows, self.get(0, 0));
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Submatrix without row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> RingMatrix<S> {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self.get(i, j).clone());
            }
        }
        RingMatrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }
}

impl<S: CommutativeRing> RingMatrix<Hybrid<S>> {
    /// Product with a scalar-entry matrix on the right, using `h·s = s·h` directly instead of
    /// embedding `s` as a hybrid.
    pub fn mul_scalar_right(&self, rhs: &RingMatrix<S>) -> Result<RingMatrix<Hybrid<S>>> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch("hybrid times scalar matrix".into()));
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.get(i, 0).scale_by(rhs.get(0, j));
                for k in 1..self.cols {
                    acc = acc + self.get(i, k).scale_by(rhs.get(k, j));
                }
                data.push(acc);
            }
        }
        Ok(RingMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    /// Componentwise projection onto the real (`1`) coefficient.
    pub fn re_part(&self) -> RingMatrix<S> {
        self.map(|h| h.re.clone())
    }
}

impl<S: CommutativeRing> RingMatrix<S> {
    pub fn embed_hybrid(&self) -> RingMatrix<Hybrid<S>> {
        self.map(|s| Hybrid::scalar(s.clone()))
    }
}

impl<S: Serialize> Serialize for RingMatrix<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let rows: Vec<&[S]> = (0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]).collect();
        rows.serialize(serializer)
    }
}

/// `Q = [[1+p, q−p, −q], [1, 0, 0], [0, 1, 0]]`.
pub fn companion_matrix(params: &SeqParams) -> RingMatrix<Rational> {
    let z = Rational::zero;
    let o = Rational::one;
    RingMatrix::from_rows(vec![
        vec![Rational::one() + &params.p, &params.q - &params.p, -&params.q],
        vec![o(), z(), z()],
        vec![z(), o(), z()],
    ])
    .expect("3x3")
}

/// `Q³ − (1+p)Q² − (q−p)Q + qI`, which vanishes by Cayley-Hamilton.
pub fn cubic_at_companion(params: &SeqParams) -> RingMatrix<Rational> {
    let q_mat = companion_matrix(params);
    let q2 = q_mat.mul(&q_mat).expect("square");
    let q3 = q2.mul(&q_mat).expect("square");
    let id = RingMatrix::identity(3, &Rational::zero());
    let c2 = Rational::one() + &params.p;
    let c1 = &params.q - &params.p;
    q3.sub(&q2.scale(&c2))
        .and_then(|m| m.sub(&q_mat.scale(&c1)))
        .and_then(|m| m.add(&id.scale(&params.q)))
        .expect("3x3")
}

/// `(La𝓗_{m+3}, La𝓗_{m+2}, La𝓗_{m+1})ᵀ` and `Q·(La𝓗_{m+2}, La𝓗_{m+1}, La𝓗_m)ᵀ`.
pub fn column_vector_sides(
    seq: &mut HybridSequence,
    m: usize,
) -> Result<(RingMatrix<Hybrid<Rational>>, RingMatrix<Hybrid<Rational>>)> {
    let q_mat = companion_matrix(seq.params()).embed_hybrid();
    let col = |seq: &mut HybridSequence, top: usize| {
        RingMatrix::new(3, 1, vec![seq.lah(top), seq.lah(top - 1), seq.lah(top - 2)])
    };
    let lhs = col(seq, m + 3)?;
    let rhs = q_mat.mul(&col(seq, m + 2)?)?;
    Ok((lhs, rhs))
}

/// `La𝒢_k = La𝓗_k − (1+p)·La𝓗_{k-1}` for `k ≥ 1`.
pub fn lag(seq: &mut HybridSequence, k: usize) -> Hybrid<Rational> {
    assert!(k >= 1, "La𝒢 starts at index 1");
    let u = Rational::one() + &seq.params().p;
    seq.lah(k) - &seq.lah(k - 1).scale(&u)
}

/// The 3×3 hybrid matrix
/// `[[La𝓗_{m+3}, La𝒢_{m+4}, −qLa𝓗_{m+2}], [La𝓗_{m+2}, La𝒢_{m+3}, −qLa𝓗_{m+1}],
///   [La𝓗_{m+1}, La𝒢_{m+2}, −qLa𝓗_m]]`.
pub fn matrix_power_block(seq: &mut HybridSequence, m: usize) -> RingMatrix<Hybrid<Rational>> {
    let neg_q = -&seq.params().q;
    let mut data = Vec::with_capacity(9);
    for row in 0..3 {
        let top = m + 3 - row;
        data.push(seq.lah(top));
        data.push(lag(seq, top + 1));
        data.push(seq.lah(top - 1).scale(&neg_q));
    }
    RingMatrix::new(3, 3, data).expect("3x3")
}

/// Both sides of the matrix-power identity at `m`: the block at `m`, and the block at 0
/// times `Q^m`.
pub fn matrix_power_sides(
    seq: &mut HybridSequence,
    m: usize,
) -> Result<(RingMatrix<Hybrid<Rational>>, RingMatrix<Hybrid<Rational>>)> {
    let lhs = matrix_power_block(seq, m);
    let q_pow = companion_matrix(seq.params()).pow(m as u32)?;
    let rhs = matrix_power_block(seq, 0).mul_scalar_right(&q_pow)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid_sequence::lah_terms;

    fn ri(rows: Vec<Vec<i64>>) -> RingMatrix<Rational> {
        RingMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Rational::integer).collect()).collect())
            .unwrap()
    }

    #[test]
    fn leonardo_companion() {
        let q = companion_matrix(&SeqParams::leonardo());
        assert_eq!(q, ri(vec![vec![2, 0, -1], vec![1, 0, 0], vec![0, 1, 0]]));
        assert_eq!(q.pow(0).unwrap(), RingMatrix::identity(3, &Rational::zero()));
    }

    #[test]
    fn companion_shifts_window() {
        let leo = SeqParams::leonardo();
        let mut seq = HybridSequence::new(&leo).unwrap();
        let (lhs, rhs) = column_vector_sides(&mut seq, 0).unwrap();
        assert_eq!(lhs, rhs);
        let t = lah_terms(&leo, 4).unwrap();
        assert_eq!(lhs.to_rows(), vec![vec![t[3].clone()], vec![t[2].clone()], vec![t[1].clone()]]);
    }

    #[test]
    fn cayley_hamilton() {
        assert!(cubic_at_companion(&SeqParams::from_ints(3, -2, 1, 0, 0)).is_zero());
        assert!(cubic_at_companion(&SeqParams::leonardo()).is_zero());
    }

    #[test]
    fn companion_determinant() {
        let p = SeqParams::from_ints(2, 5, 0, 0, 0);
        assert_eq!(generic_determinant(&companion_matrix(&p)).unwrap(), Rational::integer(-5));
    }

    #[test]
    fn power_identity_small_m() {
        let mut seq = HybridSequence::new(&SeqParams::leonardo()).unwrap();
        for m in 0..=3 {
            let (lhs, rhs) = matrix_power_sides(&mut seq, m).unwrap();
            assert_eq!(lhs, rhs, "m = {m}");
        }
        let g = lag(&mut seq, 3);
        assert_eq!(g, seq.lah(3) - &seq.lah(2).scale(&Rational::integer(2)));
    }

    #[test]
    fn scalar_right_product_matches_embedding() {
        let mut seq = HybridSequence::new(&SeqParams::from_ints(-2, 3, 1, 2, -1)).unwrap();
        let block = matrix_power_block(&mut seq, 1);
        let q = companion_matrix(seq.params());
        assert_eq!(block.mul_scalar_right(&q).unwrap(), block.mul(&q.embed_hybrid()).unwrap());
    }

    #[test]
    fn shape_errors() {
        let a = ri(vec![vec![1, 2]]);
        assert!(matches!(a.mul(&a), Err(Error::ShapeMismatch(_))));
        assert!(matches!(RingMatrix::from_rows(vec![vec![Rational::one()], vec![]]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn json_is_nested_arrays() {
        let v = serde_json::to_value(ri(vec![vec![1, 2], vec![3, 4]])).unwrap();
        assert_eq!(v, serde_json::json!([["1", "2"], ["3", "4"]]));
    }
}
