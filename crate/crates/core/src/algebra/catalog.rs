//! The three catalog families of simple ℚ-algebras with positive involution and their
//! standard matrix presentations.

use serde::{Deserialize, Serialize};

use super::{AlgebraError, FactorBlock, Generator};
use crate::exactlin::{int, RatMatrix};

/// A simple factor of `B` in one of the supported shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CatalogKind {
    /// `M_n(ℚ)` with transpose.
    MatQ { n: usize },
    /// `M_n(ℚ(√d))` with conjugate transpose, `d < 0` squarefree.
    MatImagQuad { n: usize, d: i64 },
    /// `M_n(H)` for the definite quaternion algebra `H = (a, b)_ℚ`, `a, b < 0`, with
    /// quaternion conjugate transpose.
    MatDefQuat { n: usize, a: i64, b: i64 },
}

/// Real type of a simple factor after extending scalars to ℝ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealFactorType {
    Symplectic,
    Linear,
    Orthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CatalogFactor {
    pub kind: CatalogKind,
    pub multiplicity_in_v: usize,
}

fn is_squarefree(m: u64) -> bool {
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl CatalogKind {
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let bad = |why: String| Err(AlgebraError::InvalidFactor(why));
        match *self {
            CatalogKind::MatQ { n } | CatalogKind::MatImagQuad { n, .. } | CatalogKind::MatDefQuat { n, .. }
                if n == 0 =>
            {
                bad("matrix size n must be at least 1".into())
            }
            CatalogKind::MatImagQuad { d, .. } if d >= 0 || !is_squarefree(d.unsigned_abs()) => {
                bad(format!("d = {d} must be a negative squarefree integer"))
            }
            CatalogKind::MatDefQuat { a, b, .. } if a >= 0 || b >= 0 => {
                bad(format!("quaternion parameters ({a}, {b}) must both be negative"))
            }
            _ => Ok(()),
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            CatalogKind::MatQ { n } | CatalogKind::MatImagQuad { n, .. } | CatalogKind::MatDefQuat { n, .. } => n,
        }
    }

    /// ℚ-dimension of the simple module `D^n`.
    pub fn simple_module_dim(&self) -> usize {
        match *self {
            CatalogKind::MatQ { n } => n,
            CatalogKind::MatImagQuad { n, .. } => 2 * n,
            CatalogKind::MatDefQuat { n, .. } => 4 * n,
        }
    }

    /// Generators beyond the `n²` matrix units: the center generator `√d`, or `i, j`.
    pub fn extra_generators(&self) -> usize {
        match self {
            CatalogKind::MatQ { .. } => 0,
            CatalogKind::MatImagQuad { .. } => 1,
            CatalogKind::MatDefQuat { .. } => 2,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.n() * self.n() + self.extra_generators()
    }

    /// ℚ-dimension of the algebra itself.
    pub fn algebra_dim(&self) -> usize {
        let n2 = self.n() * self.n();
        match self {
            CatalogKind::MatQ { .. } => n2,
            CatalogKind::MatImagQuad { .. } => 2 * n2,
            CatalogKind::MatDefQuat { .. } => 4 * n2,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            CatalogKind::MatQ { n } => format!("M_{n}(Q)"),
            CatalogKind::MatImagQuad { n, d } => format!("M_{n}(Q(sqrt({d})))"),
            CatalogKind::MatDefQuat { n, a, b } => format!("M_{n}(({a},{b})_Q)"),
        }
    }

    /// The standard presentation acting on `(D^n)^mult`, with the canonical involution.
    ///
    /// Generator order: matrix units `E_11, E_12, …, E_nn` row-major, then `√d` or
    /// the quaternion units `i, j`.
    pub fn standard_block(&self, multiplicity: usize) -> FactorBlock {
        let n = self.n();
        let (inner, extras): (usize, Vec<(RatMatrix, RatMatrix)>) = match *self {
            CatalogKind::MatQ { .. } => (1, vec![]),
            CatalogKind::MatImagQuad { d, .. } => {
                // basis (1, √d): 1 -> √d, √d -> d
                let s = RatMatrix::from_i64_rows(&[&[0, d], &[1, 0]]);
                (2, vec![(s.clone(), s.neg())])
            }
            CatalogKind::MatDefQuat { a, b, .. } => {
                // left multiplication on the basis (1, i, j, ij)
                let li = RatMatrix::from_i64_rows(&[&[0, a, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, a], &[0, 0, 1, 0]]);
                let lj = RatMatrix::from_i64_rows(&[&[0, 0, b, 0], &[0, 0, 0, -b], &[1, 0, 0, 0], &[0, -1, 0, 0]]);
                (4, vec![(li.clone(), li.neg()), (lj.clone(), lj.neg())])
            }
        };
        let copies = |m: &RatMatrix| kron(&RatMatrix::identity(multiplicity), m);
        let mut generators = Vec::with_capacity(self.generator_count());
        for r in 0..n {
            for c in 0..n {
                let e = kron(&unit(n, r, c), &RatMatrix::identity(inner));
                let et = kron(&unit(n, c, r), &RatMatrix::identity(inner));
                generators.push(Generator { action: copies(&e), star: copies(&et) });
            }
        }
        for (x, xs) in extras {
            let on_simple = kron(&RatMatrix::identity(n), &x);
            let star_on_simple = kron(&RatMatrix::identity(n), &xs);
            generators.push(Generator { action: copies(&on_simple), star: copies(&star_on_simple) });
        }
        FactorBlock {
            factor: CatalogFactor { kind: *self, multiplicity_in_v: multiplicity },
            generators,
        }
    }
}

/// Maps each catalog family to its real type.
pub fn classify_factor(f: &CatalogFactor) -> RealFactorType {
    match f.kind {
        CatalogKind::MatQ { .. } => RealFactorType::Symplectic,
        CatalogKind::MatImagQuad { .. } => RealFactorType::Linear,
        CatalogKind::MatDefQuat { .. } => RealFactorType::Orthogonal,
    }
}

pub(crate) fn unit(n: usize, r: usize, c: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    m[(r, c)] = int(1);
    m
}

/// Kronecker product.
pub fn kron(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = RatMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            if num_traits::Zero::is_zero(&a[(i, j)]) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_of_worked_examples() {
        let f = |kind| CatalogFactor { kind, multiplicity_in_v: 1 };
        assert_eq!(classify_factor(&f(CatalogKind::MatQ { n: 1 })), RealFactorType::Symplectic);
        assert_eq!(classify_factor(&f(CatalogKind::MatImagQuad { n: 1, d: -1 })), RealFactorType::Linear);
        assert_eq!(
            classify_factor(&f(CatalogKind::MatDefQuat { n: 1, a: -1, b: -1 })),
            RealFactorType::Orthogonal
        );
    }

    #[test]
    fn parameter_validation() {
        assert!(CatalogKind::MatImagQuad { n: 1, d: -4 }.validate().is_err());
        assert!(CatalogKind::MatImagQuad { n: 1, d: 3 }.validate().is_err());
        assert!(CatalogKind::MatImagQuad { n: 2, d: -7 }.validate().is_ok());
        assert!(CatalogKind::MatDefQuat { n: 1, a: -1, b: 2 }.validate().is_err());
        assert!(CatalogKind::MatQ { n: 0 }.validate().is_err());
    }

    #[test]
    fn quaternion_relations() {
        let block = CatalogKind::MatDefQuat { n: 1, a: -2, b: -3 }.standard_block(1);
        let (qi, qj) = (&block.generators[1].action, &block.generators[2].action);
        let id = RatMatrix::identity(4);
        assert_eq!(qi.mul(qi).unwrap(), id.scale(&int(-2)));
        assert_eq!(qj.mul(qj).unwrap(), id.scale(&int(-3)));
        assert_eq!(qi.mul(qj).unwrap(), qj.mul(qi).unwrap().neg());
    }
}
