//! Lattice-decorated vector spaces and `1/n`-normalized arrows between them.
//!
//! An arrow `(V, L) → (W, L')` with underlying rational map `f` is stored as the integral
//! composite `n·f` (it sends `L` into `L'`) together with the scale `1/n`. The canonical form
//! uses the least such `n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{is_integer, lcm_denominators, rat, same_lattice, LinAlgError, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("lattice basis must be square and invertible")]
    NotABasis,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("multiplier {0} does not make the map integral on the lattices")]
    NotIntegral(BigInt),
    #[error("lattices do not match at the composition point")]
    LatticeMismatch,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A full-rank lattice in `ℚ^dim`, spanned by the columns of `basis`.
#[derive(Clone, Debug)]
pub struct LatticeObject {
    basis: RatMatrix,
    basis_inv: RatMatrix,
}

impl LatticeObject {
    pub fn new(basis: RatMatrix) -> Result<Self, IsoError> {
        if !basis.is_square() {
            return Err(IsoError::NotABasis);
        }
        let basis_inv = basis.inverse().map_err(|_| IsoError::NotABasis)?;
        Ok(LatticeObject { basis, basis_inv })
    }

    /// `ℤ^dim`.
    pub fn standard(dim: usize) -> Self {
        Self::new(RatMatrix::identity(dim)).expect("identity")
    }

    /// `k·ℤ^dim`.
    pub fn scaled(dim: usize, k: i64) -> Self {
        Self::new(RatMatrix::identity(dim).scale(&rat(k, 1))).expect("nonzero scale")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// Same sublattice of `ℚ^dim`, whatever the chosen bases.
    pub fn same_as(&self, other: &LatticeObject) -> bool {
        self.dim() == other.dim() && same_lattice(&self.basis, &other.basis)
    }

    pub fn direct_sum(&self, other: &LatticeObject) -> LatticeObject {
        LatticeObject::new(self.basis.block_diag(&other.basis)).expect("block of bases")
    }
}

/// Matrix of `f` in lattice coordinates: `B'⁻¹ f B`.
fn in_lattice_coords(f: &RatMatrix, src: &LatticeObject, dst: &LatticeObject) -> Result<RatMatrix, IsoError> {
    if f.shape() != (dst.dim(), src.dim()) {
        return Err(IsoError::ShapeMismatch(format!(
            "map is {:?}, lattices need ({}, {})",
            f.shape(),
            dst.dim(),
            src.dim()
        )));
    }
    Ok(dst.basis_inv.mul(f)?.mul(&src.basis)?)
}

/// Least `n ≥ 1` with `f(n·L) ⊆ L'`.
pub fn minimal_n(f: &RatMatrix, src: &LatticeObject, dst: &LatticeObject) -> Result<BigInt, IsoError> {
    Ok(lcm_denominators(in_lattice_coords(f, src, dst)?.entries()))
}

#[derive(Clone, Debug)]
pub struct IsoMorphism {
    pub src: LatticeObject,
    pub dst: LatticeObject,
    /// `n·f`, an integral map `L → L'`.
    pub raw: RatMatrix,
    pub n_used: BigInt,
}

impl PartialEq for IsoMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.src.same_as(&other.src) && self.dst.same_as(&other.dst) && self.raw == other.raw && self.n_used == other.n_used
    }
}

impl IsoMorphism {
    /// The normalized arrow with underlying map `f`.
    pub fn from_map(f: &RatMatrix, src: &LatticeObject, dst: &LatticeObject) -> Result<Self, IsoError> {
        let n = minimal_n(f, src, dst)?;
        Self::with_multiplier(f, src, dst, n)
    }

    /// The arrow `(1/n)·(n f)` for a given admissible `n`, not normalized.
    pub fn with_multiplier(f: &RatMatrix, src: &LatticeObject, dst: &LatticeObject, n: BigInt) -> Result<Self, IsoError> {
        let nr = Rat::from_integer(n.clone());
        if !n.is_positive() || !in_lattice_coords(&f.scale(&nr), src, dst)?.entries().iter().all(is_integer) {
            return Err(IsoError::NotIntegral(n));
        }
        Ok(IsoMorphism { src: src.clone(), dst: dst.clone(), raw: f.scale(&nr), n_used: n })
    }

    pub fn identity(obj: &LatticeObject) -> Self {
        IsoMorphism { src: obj.clone(), dst: obj.clone(), raw: RatMatrix::identity(obj.dim()), n_used: BigInt::one() }
    }

    pub fn scale(&self) -> Rat {
        Rat::new(BigInt::one(), self.n_used.clone())
    }

    /// The rational map `scale · raw`.
    pub fn underlying(&self) -> RatMatrix {
        self.raw.scale(&self.scale())
    }

    /// `raw` written in the lattice bases; an integer matrix.
    pub fn lattice_matrix(&self) -> RatMatrix {
        in_lattice_coords(&self.raw, &self.src, &self.dst).expect("shapes fixed at construction")
    }

    /// Divides out the largest common factor of `n` and the content of `raw`.
    pub fn normalize(&self) -> Self {
        Self::from_map(&self.underlying(), &self.src, &self.dst).expect("shapes fixed at construction")
    }

    pub fn is_normalized(&self) -> bool {
        let content = self
            .lattice_matrix()
            .entries()
            .iter()
            .fold(BigInt::from(0), |g, x| g.gcd(&x.to_integer()));
        content.gcd(&self.n_used).is_one()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &IsoMorphism) -> Result<IsoMorphism, IsoError> {
        if !first.dst.same_as(&self.src) {
            return Err(IsoError::LatticeMismatch);
        }
        let raw = self.raw.mul(&first.raw)?;
        let n = &self.n_used * &first.n_used;
        Ok(IsoMorphism { src: first.src.clone(), dst: self.dst.clone(), raw, n_used: n }.normalize())
    }

    /// Block arrow on direct sums, over the common multiplier `lcm(n₁, n₂)`.
    pub fn direct_sum(&self, other: &IsoMorphism) -> IsoMorphism {
        let n = self.n_used.lcm(&other.n_used);
        let lift = |a: &IsoMorphism| a.raw.scale(&Rat::from_integer(&n / &a.n_used));
        IsoMorphism {
            src: self.src.direct_sum(&other.src),
            dst: self.dst.direct_sum(&other.dst),
            raw: lift(self).block_diag(&lift(other)),
            n_used: n,
        }
    }
}

/// `ψ: (V, a) → (V, b)`, the identity of `V` read between two lattices, with its inverse.
pub fn lattice_change_iso(a: &LatticeObject, b: &LatticeObject) -> Result<(IsoMorphism, IsoMorphism), IsoError> {
    if a.dim() != b.dim() {
        return Err(IsoError::ShapeMismatch(format!("dimensions {} and {}", a.dim(), b.dim())));
    }
    let id = RatMatrix::identity(a.dim());
    Ok((IsoMorphism::from_map(&id, a, b)?, IsoMorphism::from_map(&id, b, a)?))
}

// ---------------------------------------------------------------------------
// Law suite

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: &'static str,
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub seed: u64,
    pub passed: bool,
    pub laws: Vec<LawResult>,
}

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn dim(&mut self) -> usize {
        self.rng.random_range(1..=3)
    }

    fn rat(&mut self, num: i64, den: i64) -> Rat {
        rat(self.rng.random_range(-num..=num), self.rng.random_range(1..=den))
    }

    fn matrix(&mut self, rows: usize, cols: usize, num: i64, den: i64) -> RatMatrix {
        let data = (0..rows * cols).map(|_| self.rat(num, den)).collect();
        RatMatrix::from_vec(rows, cols, data).expect("sized")
    }

    fn lattice(&mut self, dim: usize) -> LatticeObject {
        loop {
            let scale = rat(1, self.rng.random_range(1..=3));
            let m = self.matrix(dim, dim, 3, 1).scale(&scale);
            if let Ok(l) = LatticeObject::new(m) {
                return l;
            }
        }
    }

    fn map(&mut self, rows: usize, cols: usize) -> RatMatrix {
        self.matrix(rows, cols, 5, 4)
    }
}

type Check = fn(&mut Gen) -> Result<(), String>;

fn arrow(f: &RatMatrix, a: &LatticeObject, b: &LatticeObject) -> Result<IsoMorphism, String> {
    IsoMorphism::from_map(f, a, b).map_err(|e| e.to_string())
}

fn expect(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn law_independence_of_n(g: &mut Gen) -> Result<(), String> {
    let (d, e) = (g.dim(), g.dim());
    let (a, b) = (g.lattice(d), g.lattice(e));
    let f = g.map(e, d);
    let canon = arrow(&f, &a, &b)?;
    let m = BigInt::from(g.rng.random_range(1..=10));
    let other = IsoMorphism::with_multiplier(&f, &a, &b, &canon.n_used * m).map_err(|e| e.to_string())?;
    expect(other.underlying() == f, "rescaled arrow changed the underlying map")?;
    expect(other.normalize() == canon, "normalizing a larger multiplier gave a different arrow")?;
    expect(canon.is_normalized(), "canonical arrow is not reduced")
}

fn law_composition(g: &mut Gen) -> Result<(), String> {
    let dims = [g.dim(), g.dim(), g.dim(), g.dim()];
    let lats: Vec<LatticeObject> = dims.iter().map(|&d| g.lattice(d)).collect();
    let f = g.map(dims[1], dims[0]);
    let h = g.map(dims[2], dims[1]);
    let k = g.map(dims[3], dims[2]);
    let (af, ah, ak) = (arrow(&f, &lats[0], &lats[1])?, arrow(&h, &lats[1], &lats[2])?, arrow(&k, &lats[2], &lats[3])?);
    let composite = ah.compose(&af).map_err(|e| e.to_string())?;
    let direct = arrow(&h.mul(&f).map_err(|e| e.to_string())?, &lats[0], &lats[2])?;
    expect(composite == direct, "μ(h∘f) differs from μ(h)∘μ(f)")?;
    let left = ak.compose(&ah).and_then(|x| x.compose(&af)).map_err(|e| e.to_string())?;
    let right = ak.compose(&composite).map_err(|e| e.to_string())?;
    expect(left == right, "composition is not associative")
}

fn law_identity(g: &mut Gen) -> Result<(), String> {
    let (d, e) = (g.dim(), g.dim());
    let (a, b) = (g.lattice(d), g.lattice(e));
    let f = arrow(&g.map(e, d), &a, &b)?;
    let left = IsoMorphism::identity(&b).compose(&f).map_err(|e| e.to_string())?;
    let right = f.compose(&IsoMorphism::identity(&a)).map_err(|e| e.to_string())?;
    expect(left == f && right == f, "identity law fails")?;
    expect(arrow(&RatMatrix::identity(d), &a, &a)? == IsoMorphism::identity(&a), "μ(id) is not the identity")
}

fn law_psi_iso(g: &mut Gen) -> Result<(), String> {
    let d = g.dim();
    let (a, b) = (g.lattice(d), g.lattice(d));
    let (psi, inv) = lattice_change_iso(&a, &b).map_err(|e| e.to_string())?;
    let there_back = inv.compose(&psi).map_err(|e| e.to_string())?;
    let back_there = psi.compose(&inv).map_err(|e| e.to_string())?;
    expect(there_back == IsoMorphism::identity(&a), "ψ⁻¹∘ψ is not the identity")?;
    expect(back_there == IsoMorphism::identity(&b), "ψ∘ψ⁻¹ is not the identity")
}

fn law_psi_naturality(g: &mut Gen) -> Result<(), String> {
    let (d, e) = (g.dim(), g.dim());
    let (a, a2, c, c2) = (g.lattice(d), g.lattice(d), g.lattice(e), g.lattice(e));
    let f = g.map(e, d);
    let (psi_src, _) = lattice_change_iso(&a, &a2).map_err(|e| e.to_string())?;
    let (psi_dst, _) = lattice_change_iso(&c, &c2).map_err(|e| e.to_string())?;
    let top = psi_dst.compose(&arrow(&f, &a, &c)?).map_err(|e| e.to_string())?;
    let bottom = arrow(&f, &a2, &c2)?.compose(&psi_src).map_err(|e| e.to_string())?;
    expect(top == bottom, "naturality square does not commute")
}

fn law_direct_sum(g: &mut Gen) -> Result<(), String> {
    let dims: Vec<usize> = (0..6).map(|_| g.dim()).collect();
    let lats: Vec<LatticeObject> = dims.iter().map(|&d| g.lattice(d)).collect();
    // f: 0 → 1, h: 1 → 2 and f': 3 → 4, h': 4 → 5
    let f = arrow(&g.map(dims[1], dims[0]), &lats[0], &lats[1])?;
    let h = arrow(&g.map(dims[2], dims[1]), &lats[1], &lats[2])?;
    let f2 = arrow(&g.map(dims[4], dims[3]), &lats[3], &lats[4])?;
    let h2 = arrow(&g.map(dims[5], dims[4]), &lats[4], &lats[5])?;
    let sum_first = h.direct_sum(&h2).compose(&f.direct_sum(&f2)).map_err(|e| e.to_string())?;
    let compose_first = h.compose(&f).and_then(|x| Ok(x.direct_sum(&h2.compose(&f2)?))).map_err(|e| e.to_string())?;
    expect(sum_first == compose_first.normalize(), "(h⊕h')∘(f⊕f') differs from (h∘f)⊕(h'∘f')")?;
    let block = f.direct_sum(&f2);
    expect(block.n_used == f.n_used.lcm(&f2.n_used), "block arrow multiplier is not the lcm")?;
    expect(block.normalize() == block, "block of normalized arrows is not normalized")
}

const LAWS: [(&str, Check); 6] = [
    ("independence_of_n", law_independence_of_n),
    ("composition", law_composition),
    ("identity", law_identity),
    ("psi_isomorphism", law_psi_iso),
    ("psi_naturality", law_psi_naturality),
    ("direct_sum_functoriality", law_direct_sum),
];

pub fn law_names() -> Vec<&'static str> {
    LAWS.iter().map(|(n, _)| *n).collect()
}

/// Runs every law `trials` times from a fixed seed.
pub fn run_law_suite(trials: usize, seed: u64) -> LawReport {
    let laws: Vec<LawResult> = LAWS
        .iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64)) };
            let mut failures = 0;
            let mut first_failure = None;
            for t in 0..trials {
                if let Err(msg) = check(&mut g) {
                    failures += 1;
                    first_failure.get_or_insert(format!("trial {t}: {msg}"));
                }
            }
            LawResult { law: name, trials, failures, first_failure }
        })
        .collect();
    LawReport { seed, passed: laws.iter().all(|l| l.failures == 0), laws }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(rows)
    }

    #[test]
    fn minimal_n_examples() {
        let id2 = RatMatrix::identity(2);
        assert_eq!(minimal_n(&id2, &LatticeObject::standard(2), &LatticeObject::scaled(2, 3)).unwrap(), 3.into());
        let z = LatticeObject::standard(1);
        assert_eq!(minimal_n(&m(&[&[2]]), &z, &z).unwrap(), 1.into());
        let mut f = RatMatrix::zeros(2, 2);
        f[(0, 0)] = rat(1, 2);
        f[(1, 1)] = rat(1, 3);
        let z2 = LatticeObject::standard(2);
        assert_eq!(minimal_n(&f, &z2, &z2).unwrap(), 6.into());
    }

    #[test]
    fn chain_of_lattice_changes() {
        let (z, z2, z6) = (LatticeObject::standard(1), LatticeObject::scaled(1, 2), LatticeObject::scaled(1, 6));
        let (a, _) = lattice_change_iso(&z, &z2).unwrap();
        let (b, _) = lattice_change_iso(&z2, &z6).unwrap();
        let (direct, _) = lattice_change_iso(&z, &z6).unwrap();
        assert_eq!(b.compose(&a).unwrap(), direct);
        assert_eq!(direct.n_used, 6.into());
    }

    #[test]
    fn psi_for_five() {
        let (z, z5) = (LatticeObject::standard(1), LatticeObject::scaled(1, 5));
        let (psi, inv) = lattice_change_iso(&z, &z5).unwrap();
        assert_eq!(psi.n_used, 5.into());
        assert_eq!(inv.n_used, 1.into());
        assert_eq!(inv.lattice_matrix(), m(&[&[5]]));
        assert_eq!(inv.compose(&psi).unwrap(), IsoMorphism::identity(&z));
        let (same, _) = lattice_change_iso(&z5, &z5).unwrap();
        assert_eq!(same, IsoMorphism::identity(&z5));
    }

    #[test]
    fn direct_sum_examples() {
        let z = LatticeObject::standard(1);
        assert!(z.direct_sum(&z).same_as(&LatticeObject::standard(2)));
        let target = z.direct_sum(&LatticeObject::scaled(1, 3));
        let arrow = IsoMorphism::from_map(&RatMatrix::identity(2), &LatticeObject::standard(2), &target).unwrap();
        assert_eq!(arrow.n_used, 3.into());
        let zero = LatticeObject::standard(0);
        let f = IsoMorphism::from_map(&m(&[&[1, 2], &[0, 1]]), &target, &target).unwrap();
        let padded = f.direct_sum(&IsoMorphism::identity(&zero));
        assert_eq!(padded, f);
    }

    #[test]
    fn multiplier_must_be_admissible() {
        let z = LatticeObject::standard(1);
        let f = m(&[&[1]]).scale(&rat(1, 4));
        assert!(IsoMorphism::with_multiplier(&f, &z, &z, 2.into()).is_err());
        let a = IsoMorphism::with_multiplier(&f, &z, &z, 8.into()).unwrap();
        assert!(!a.is_normalized());
        assert_eq!(a.normalize().n_used, 4.into());
    }

    #[test]
    fn composition_checks_lattices() {
        let (z, z2) = (LatticeObject::standard(1), LatticeObject::scaled(1, 2));
        let f = IsoMorphism::identity(&z);
        let g = IsoMorphism::identity(&z2);
        assert_eq!(g.compose(&f), Err(IsoError::LatticeMismatch));
    }

    #[test]
    fn small_law_suite() {
        let report = run_law_suite(40, 7);
        assert!(report.passed, "{report:?}");
        assert_eq!(report, run_law_suite(40, 7));
    }
}
