use serde::{Deserialize, Serialize};

use super::field::Field;
use super::matrix::RatMatrix;
use super::rat::{sign, Rat};
use super::LinAlgError;

/// Sylvester inertia of a real symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0
    }

    pub fn swapped(&self) -> Signature {
        Signature { positive: self.negative, negative: self.positive, zero: self.zero }
    }
}

/// Congruence-diagonalizes `gram` and counts pivot signs.
///
/// The pivot is the first nonzero diagonal entry of the remaining block. When the whole
/// remaining diagonal vanishes but an off-diagonal entry `g[i][j]` does not, row/column `i`
/// is replaced by row/column `i + j`, which puts `2·g[i][j]` on the diagonal.
pub fn signature(gram: &RatMatrix) -> Result<Signature, LinAlgError> {
    if !gram.is_square() {
        return Err(LinAlgError::NotSquare(gram.shape()));
    }
    if !gram.is_symmetric() {
        return Err(LinAlgError::NotSymmetric);
    }
    let n = gram.rows();
    let mut m = gram.clone();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !m[(i, i)].is_zero()) {
            Some(p) => p,
            None => {
                let off = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[(i, j)].is_zero());
                let Some((i, j)) = off else { break };
                add_congruent(&mut m, i, j);
                i
            }
        };
        m.swap_rows(k, pivot);
        m.swap_cols(k, pivot);
        let p = m[(k, k)].clone();
        match sign(&p) {
            1 => pos += 1,
            _ => neg += 1,
        }
        let inv = p.inv();
        for i in k + 1..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            let f: Rat = &m[(i, k)] * &inv;
            for j in k..n {
                let v = &m[(k, j)] * &f;
                m[(i, j)] = &m[(i, j)] - v;
            }
            for r in k..n {
                let v = &m[(r, k)] * &f;
                m[(r, i)] = &m[(r, i)] - v;
            }
        }
    }
    Ok(Signature { positive: pos, negative: neg, zero: n - pos - neg })
}

/// Row and column `i` += row and column `j` (a congruence transform).
fn add_congruent(m: &mut RatMatrix, i: usize, j: usize) {
    let n = m.rows();
    for c in 0..n {
        let v = m[(j, c)].clone();
        m[(i, c)] = &m[(i, c)] + v;
    }
    for r in 0..n {
        let v = m[(r, j)].clone();
        m[(r, i)] = &m[(r, i)] + v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::{int, rat};
    use proptest::prelude::*;

    fn sig(p: usize, n: usize, z: usize) -> Signature {
        Signature { positive: p, negative: n, zero: z }
    }

    #[test]
    fn diagonal() {
        let m = RatMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
        assert_eq!(signature(&m).unwrap(), sig(1, 1, 0));
    }

    #[test]
    fn trace_form_on_2x2_matrices() {
        // b -> tr(b b^T) on M_2(Q) in the basis E11, E12, E21, E22 is the identity Gram.
        let m = RatMatrix::identity(4);
        assert_eq!(signature(&m).unwrap(), sig(4, 0, 0));
    }

    #[test]
    fn hyperbolic_plane_needs_the_off_diagonal_fixup() {
        let m = RatMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&m).unwrap(), sig(1, 1, 0));
        let m = RatMatrix::from_i64_rows(&[&[0, 0, 3], &[0, 0, 0], &[3, 0, 0]]);
        assert_eq!(signature(&m).unwrap(), sig(1, 1, 1));
    }

    #[test]
    fn modular_curve_positivity_form() {
        let pairing = RatMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        let j = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let g = pairing.mul(&j).unwrap();
        assert_eq!(signature(&g).unwrap(), sig(2, 0, 0));
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert!(matches!(signature(&m), Err(LinAlgError::NotSymmetric)));
        assert_eq!(signature(&RatMatrix::zeros(0, 0)).unwrap(), sig(0, 0, 0));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-3i64..=3, n * n)
    }

    proptest! {
        #[test]
        fn congruence_invariance(a in small_matrix(4), p in small_matrix(4)) {
            let a = RatMatrix::from_vec(4, 4, a.into_iter().map(int).collect()).unwrap();
            let sym = a.add(&a.transpose()).unwrap();
            let mut p = RatMatrix::from_vec(4, 4, p.into_iter().map(int).collect()).unwrap();
            if p.det().unwrap() == int(0) {
                p = p.add(&RatMatrix::identity(4).scale(&int(7))).unwrap();
            }
            prop_assume!(p.det().unwrap() != int(0));
            let moved = p.transpose().mul(&sym).unwrap().mul(&p).unwrap();
            prop_assert_eq!(signature(&moved).unwrap(), signature(&sym).unwrap());
        }

        #[test]
        fn negation_swaps_counts(a in small_matrix(5)) {
            let a = RatMatrix::from_vec(5, 5, a.into_iter().map(|x| rat(x, 2)).collect()).unwrap();
            let sym = a.add(&a.transpose()).unwrap();
            let s = signature(&sym).unwrap();
            prop_assert_eq!(signature(&sym.neg()).unwrap(), s.swapped());
            prop_assert_eq!(s.dim(), 5);
            prop_assert_eq!(s.zero, 5 - sym.rank());
        }
    }
}
