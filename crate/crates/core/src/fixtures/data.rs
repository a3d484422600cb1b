//! Worked PEL data.

use crate::admit::{MorphismSpec, SideSpec};
use crate::algebra::{kron, AlgebraPresentation, CatalogKind};
use crate::exactlin::{int, RatMatrix};
use crate::pelcheck::PelDatum;
use crate::repcalc::TorusMap;

fn j2() -> RatMatrix {
    RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]])
}

/// `B = ℚ` acting on `ℚ²`, standard symplectic pairing, `h(a+bi)` the rotation matrix.
pub fn modular_curve_datum() -> PelDatum {
    let algebra = AlgebraPresentation::from_catalog(&[(CatalogKind::MatQ { n: 1 }, 2)]).expect("catalog");
    PelDatum::new(algebra, j2().neg(), j2())
}

/// `B = M₂(ℚ)` acting diagonally on `ℚ⁴ = ℚ² ⊕ ℚ²`.
pub fn morita_datum() -> PelDatum {
    let algebra = AlgebraPresentation::from_catalog(&[(CatalogKind::MatQ { n: 2 }, 2)]).expect("catalog");
    let i2 = RatMatrix::identity(2);
    let z = RatMatrix::zeros(2, 2);
    let pairing = block2(&z, &i2, &i2.neg(), &z);
    let j = block2(&z, &i2.neg(), &i2, &z);
    PelDatum::new(algebra, pairing, j)
}

/// `B = ℚ` acting on `ℚ^{2g}` with the standard symplectic form.
pub fn symplectic_datum(g: usize) -> PelDatum {
    let algebra = AlgebraPresentation::from_catalog(&[(CatalogKind::MatQ { n: 1 }, 2 * g)]).expect("catalog");
    let i = RatMatrix::identity(g);
    let z = RatMatrix::zeros(g, g);
    PelDatum::new(algebra, block2(&z, &i, &i.neg(), &z), block2(&z, &i.neg(), &i, &z))
}

/// `B = ℚ(i)` acting on `ℚ(i)²`, basis `(e₁, i·e₁, e₂, i·e₂)`, with `h(z)` multiplication by
/// `(z, z̄)`. The pairing is `tr(x i ȳ)` on the first line and its negative on the second.
pub fn gu11_datum() -> PelDatum {
    let algebra =
        AlgebraPresentation::from_catalog(&[(CatalogKind::MatImagQuad { n: 1, d: -1 }, 2)]).expect("catalog");
    let t = RatMatrix::from_i64_rows(&[&[0, 2], &[-2, 0]]);
    PelDatum::new(algebra, t.block_diag(&t.neg()), j2().block_diag(&j2().neg()))
}

/// `B = ℚ(i)` on `ℚ(i)^{a+b}` with `h` agreeing with the `ℚ(i)`-structure on the first `a` lines.
pub fn unitary_datum(d: i64, a: usize, b: usize) -> PelDatum {
    assert_eq!(d, -1, "a rational h with an unbalanced signature needs d = -1");
    let m = a + b;
    let algebra = AlgebraPresentation::from_catalog(&[(CatalogKind::MatImagQuad { n: 1, d }, m)]).expect("catalog");
    let mut pairing = RatMatrix::zeros(0, 0);
    let mut j = RatMatrix::zeros(0, 0);
    for k in 0..m {
        let sign = if k < a { int(1) } else { int(-1) };
        pairing = pairing.block_diag(&j2().scale(&-sign.clone()));
        j = j.block_diag(&j2().scale(&sign));
    }
    PelDatum::new(algebra, pairing, j)
}

/// `B = ℚ(√d)` on `ℚ(√d)²` with `h(i)` swapping the two lines; signature `(1,1)`.
pub fn quadratic_pair_datum(d: i64) -> PelDatum {
    let algebra = AlgebraPresentation::from_catalog(&[(CatalogKind::MatImagQuad { n: 1, d }, 2)]).expect("catalog");
    let gram = RatMatrix::from_i64_rows(&[&[1, 0], &[0, -d]]);
    PelDatum::new(algebra, kron(&j2().neg(), &gram), kron(&j2(), &RatMatrix::identity(2)))
}

/// Hamilton quaternions acting on themselves by left multiplication, `h(i)` right
/// multiplication by `i`, pairing `trd(x · i · ȳ)`.
pub fn quaternion_datum() -> PelDatum {
    let algebra =
        AlgebraPresentation::from_catalog(&[(CatalogKind::MatDefQuat { n: 1, a: -1, b: -1 }, 1)]).expect("catalog");
    let basis = |k: usize| {
        let mut q = [0i64; 4];
        q[k] = 1;
        q
    };
    let i = basis(1);
    let mut right_i = RatMatrix::zeros(4, 4);
    let mut pairing = RatMatrix::zeros(4, 4);
    for c in 0..4 {
        let img = hamilton(basis(c), i);
        for r in 0..4 {
            right_i[(r, c)] = int(img[r]);
            let x = hamilton(hamilton(basis(r), i), conj(basis(c)));
            pairing[(r, c)] = int(2 * x[0]);
        }
    }
    PelDatum::new(algebra, pairing, right_i)
}

/// The identity of `GL₂` between the two PEL-data: from the `ℚ²` datum to the `ℚ⁴` datum, or
/// the other way round when `reverse` is set.
pub fn modular_identity(reverse: bool) -> MorphismSpec {
    let small = SideSpec::Datum { datum: Box::new(modular_curve_datum()) };
    let big = SideSpec::Datum { datum: Box::new(morita_datum()) };
    let (source, target) = if reverse { (big, small) } else { (small, big) };
    MorphismSpec { source, target, torus_map: TorusMap::identity(2) }
}

/// `GU(1,1) → GSp(V' ⊗ ℚ(i))`, the action on `V'` tensored with the character `χ`.
///
/// Source coordinates are `(x₁, x₂; z)`, with `V'` of weights `(±e_k; 1)` and `χ` of weights
/// `±(2, 2; 0)`. The eight weights `(±e_k; 1) + (±(2,2); 0)` of `V' ⊗ χ` are matched with the
/// target weights `(±e_k; 1)` of `GSp₈`.
pub fn gu11_morphism() -> MorphismSpec {
    let rows = vec![vec![3, 2, 0], vec![2, 3, 0], vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]];
    MorphismSpec {
        source: SideSpec::Datum { datum: Box::new(gu11_datum()) },
        target: SideSpec::Datum { datum: Box::new(symplectic_datum(4)) },
        torus_map: TorusMap::new(rows).expect("rectangular"),
    }
}

/// A datum with one axiom broken on purpose, and the diagnostic code it must produce.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub name: &'static str,
    pub datum: PelDatum,
    pub expected: &'static str,
}

/// Adds `e₀e₂ᵀ − e₂e₀ᵀ` to the pairing: still alternating and (here) nondegenerate, but no
/// longer compatible with the involution.
fn couple_first_and_third(d: &PelDatum) -> PelDatum {
    let mut p = d.pairing.clone();
    p[(0, 2)] = &p[(0, 2)] + int(1);
    p[(2, 0)] = &p[(2, 0)] - int(1);
    d.with_pairing(p)
}

/// Six single-axiom mutations of the worked data.
pub fn mutations() -> Vec<Mutation> {
    let (modular, morita, gu11) = (modular_curve_datum(), morita_datum(), gu11_datum());
    let negate_pairing = |d: &PelDatum| d.with_pairing(d.pairing.neg());
    let negate_j = |d: &PelDatum| d.with_j(d.j.neg());
    vec![
        Mutation { name: "modular_curve/negated_pairing", datum: negate_pairing(&modular), expected: "not_positive" },
        Mutation { name: "modular_curve/negated_j", datum: negate_j(&modular), expected: "not_positive" },
        Mutation { name: "morita/negated_pairing", datum: negate_pairing(&morita), expected: "not_positive" },
        Mutation { name: "morita/broken_adjointness", datum: couple_first_and_third(&morita), expected: "star_adjointness" },
        Mutation { name: "gu11/negated_j", datum: negate_j(&gu11), expected: "not_positive" },
        Mutation { name: "gu11/broken_adjointness", datum: couple_first_and_third(&gu11), expected: "star_adjointness" },
    ]
}

fn hamilton(p: [i64; 4], q: [i64; 4]) -> [i64; 4] {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

fn conj(p: [i64; 4]) -> [i64; 4] {
    [p[0], -p[1], -p[2], -p[3]]
}

fn block2(a: &RatMatrix, b: &RatMatrix, c: &RatMatrix, d: &RatMatrix) -> RatMatrix {
    let n = a.rows();
    let mut out = RatMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for s in 0..n {
            out[(r, s)] = a[(r, s)].clone();
            out[(r, n + s)] = b[(r, s)].clone();
            out[(n + r, s)] = c[(r, s)].clone();
            out[(n + r, n + s)] = d[(r, s)].clone();
        }
    }
    out
}
