use super::field::{Field, GaussRat};
use super::matrix::{GaussMatrix, RatMatrix};
use super::LinAlgError;

/// Bases over ℚ(i) of the four joint eigenspaces of two commuting complex structures.
#[derive(Clone, Debug)]
pub struct EigenSplit {
    /// a = +i, b = +i
    pub plus_plus: Vec<Vec<GaussRat>>,
    /// a = +i, b = -i
    pub plus_minus: Vec<Vec<GaussRat>>,
    /// a = -i, b = +i
    pub minus_plus: Vec<Vec<GaussRat>>,
    /// a = -i, b = -i
    pub minus_minus: Vec<Vec<GaussRat>>,
}

impl EigenSplit {
    /// `(++, +-, -+, --)`
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (
            self.plus_plus.len(),
            self.plus_minus.len(),
            self.minus_plus.len(),
            self.minus_minus.len(),
        )
    }
}

pub fn is_complex_structure(a: &RatMatrix) -> bool {
    a.is_square()
        && a.mul(a).map(|sq| sq == RatMatrix::identity(a.rows()).neg()).unwrap_or(false)
}

/// Splits `V ⊗ ℚ(i)` into the simultaneous ±i eigenspaces of `a` and `b`.
pub fn simult_eigensplit(a: &RatMatrix, b: &RatMatrix) -> Result<EigenSplit, LinAlgError> {
    if a.shape() != b.shape() {
        return Err(LinAlgError::ShapeMismatch { op: "eigensplit", left: a.shape(), right: b.shape() });
    }
    if !is_complex_structure(a) || !is_complex_structure(b) {
        return Err(LinAlgError::NotComplexStructure);
    }
    if a.mul(b)? != b.mul(a)? {
        return Err(LinAlgError::NotCommuting);
    }
    let ga = a.to_gauss();
    let gb = b.to_gauss();
    let space = |sa: bool, sb: bool| joint_kernel(&ga, sa, &gb, sb);
    Ok(EigenSplit {
        plus_plus: space(true, true),
        plus_minus: space(true, false),
        minus_plus: space(false, true),
        minus_minus: space(false, false),
    })
}

fn joint_kernel(a: &GaussMatrix, a_plus: bool, b: &GaussMatrix, b_plus: bool) -> Vec<Vec<GaussRat>> {
    let n = a.rows();
    let shift = |m: &GaussMatrix, plus: bool| {
        let ev = if plus { GaussRat::i() } else { GaussRat::i().neg() };
        m.sub(&GaussMatrix::identity(n).scale(&ev)).expect("square")
    };
    let stacked = GaussMatrix::from_rows(
        shift(a, a_plus).to_rows().into_iter().chain(shift(b, b_plus).to_rows()).collect(),
    )
    .expect("rectangular");
    stacked.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j2() -> RatMatrix {
        RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]])
    }

    #[test]
    fn equal_structures_agree() {
        let s = simult_eigensplit(&j2(), &j2()).unwrap();
        assert_eq!(s.dims(), (1, 0, 0, 1));
    }

    #[test]
    fn opposite_structures_disagree() {
        let s = simult_eigensplit(&j2(), &j2().neg()).unwrap();
        assert_eq!(s.dims(), (0, 1, 1, 0));
    }

    #[test]
    fn eigenvectors_are_correct() {
        let a = j2().block_diag(&j2());
        let b = j2().block_diag(&j2().neg());
        let s = simult_eigensplit(&a, &b).unwrap();
        assert_eq!(s.dims(), (1, 1, 1, 1));
        let ga = a.to_gauss();
        for v in &s.plus_minus {
            let av = ga.mul_vec(v).unwrap();
            let iv: Vec<GaussRat> = v.iter().map(|x| x.mul(&GaussRat::i())).collect();
            assert_eq!(av, iv);
        }
    }

    #[test]
    fn errors() {
        let id = RatMatrix::identity(2);
        assert!(matches!(simult_eigensplit(&id, &j2()), Err(LinAlgError::NotComplexStructure)));
        // A conjugate of a complex structure is one, but need not commute with the original.
        let a = j2().block_diag(&j2());
        let p = RatMatrix::from_i64_rows(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let b = p.mul(&a).unwrap().mul(&p.inverse().unwrap()).unwrap();
        assert!(is_complex_structure(&b));
        assert!(a.mul(&b).unwrap() != b.mul(&a).unwrap());
        assert!(matches!(simult_eigensplit(&a, &b), Err(LinAlgError::NotCommuting)));
    }
}
