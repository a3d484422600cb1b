//! Finite-dimensional ℚ-algebras with involution, presented by matrices acting on `V`.
//!
//! An algebra is given by generators, each carrying the matrix of its action on `V` and the
//! matrix of the action of its image under the involution. In *structured* mode the
//! generators are grouped per catalog factor in a fixed order (see
//! [`CatalogKind::standard_block`]), which is what the group classification needs. In *raw*
//! mode only the involution axioms can be checked.

mod catalog;
mod involution;

pub use catalog::{classify_factor, kron, CatalogFactor, CatalogKind, RealFactorType};
pub use involution::{
    algebra_basis, check_anti_involution, check_positive, AntiInvolutionReport, InvolutionFailure,
    PositivityReport,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{int, LinAlgError, RatMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("generator {index}: {which} matrix is {shape:?}, expected {dim}x{dim}")]
    Shape { index: usize, which: &'static str, shape: (usize, usize), dim: usize },
    #[error("invalid catalog factor: {0}")]
    InvalidFactor(String),
    #[error("factor {factor}: {reason}")]
    Relation { factor: usize, reason: String },
    #[error("multiplicative closure did not stabilize within {bound} steps")]
    ClosureOverflow { bound: usize },
    #[error("star is not an anti-involution")]
    NotAnInvolution,
    #[error("operation needs a structured presentation")]
    NotStructured,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub action: RatMatrix,
    pub star: RatMatrix,
}

/// The generators belonging to one catalog factor.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorBlock {
    pub factor: CatalogFactor,
    pub generators: Vec<Generator>,
}

impl FactorBlock {
    pub fn matrix_unit(&self, r: usize, c: usize) -> &Generator {
        &self.generators[r * self.factor.kind.n() + c]
    }

    /// Action of the factor's identity element on `V`.
    pub fn unit_action(&self) -> RatMatrix {
        let n = self.factor.kind.n();
        (0..n).fold(RatMatrix::zeros(self.dim_v(), self.dim_v()), |acc, r| {
            acc.add(&self.matrix_unit(r, r).action).expect("square")
        })
    }

    /// The `√d` generator of an imaginary quadratic factor.
    pub fn center_generator(&self) -> Option<&Generator> {
        match self.factor.kind {
            CatalogKind::MatImagQuad { n, .. } => Some(&self.generators[n * n]),
            _ => None,
        }
    }

    fn dim_v(&self) -> usize {
        self.generators[0].action.rows()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraMode {
    Raw,
    Structured(Vec<FactorBlock>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    dim_v: usize,
    generators: Vec<Generator>,
    mode: AlgebraMode,
}

impl AlgebraPresentation {
    pub fn raw(dim_v: usize, generators: Vec<Generator>) -> Result<Self, AlgebraError> {
        check_shapes(dim_v, &generators)?;
        Ok(AlgebraPresentation { dim_v, generators, mode: AlgebraMode::Raw })
    }

    /// Builds a structured presentation and checks the catalog relations among the
    /// generators of each block (matrix units multiply like matrix units, the extra
    /// generators commute with them and satisfy their defining equations, distinct
    /// blocks annihilate each other).
    pub fn structured(dim_v: usize, mut blocks: Vec<FactorBlock>) -> Result<Self, AlgebraError> {
        for block in &blocks {
            block.factor.kind.validate()?;
        }
        let generators: Vec<Generator> = blocks.iter().flat_map(|b| b.generators.clone()).collect();
        check_shapes(dim_v, &generators)?;
        for (i, block) in blocks.iter_mut().enumerate() {
            let want = block.factor.kind.generator_count();
            if block.generators.len() != want {
                return Err(AlgebraError::Relation {
                    factor: i,
                    reason: format!("expected {want} generators, got {}", block.generators.len()),
                });
            }
            check_relations(i, block)?;
            let rank = block.unit_action().rank();
            let simple = block.factor.kind.simple_module_dim();
            if rank == 0 || rank % simple != 0 {
                return Err(AlgebraError::Relation {
                    factor: i,
                    reason: format!("unit acts with rank {rank}, not a positive multiple of {simple}"),
                });
            }
            block.factor.multiplicity_in_v = rank / simple;
        }
        for i in 0..blocks.len() {
            for j in 0..blocks.len() {
                if i != j && !blocks[i].unit_action().mul(&blocks[j].unit_action())?.is_zero() {
                    return Err(AlgebraError::Relation {
                        factor: i,
                        reason: format!("unit is not orthogonal to the unit of factor {j}"),
                    });
                }
            }
        }
        Ok(AlgebraPresentation { dim_v, generators, mode: AlgebraMode::Structured(blocks) })
    }

    /// Standard presentations of the given factors acting block-diagonally on
    /// `⊕ (D_f^n)^{mult_f}`.
    pub fn from_catalog(factors: &[(CatalogKind, usize)]) -> Result<Self, AlgebraError> {
        let dims: Vec<usize> = factors.iter().map(|(k, m)| k.simple_module_dim() * m).collect();
        let dim_v: usize = dims.iter().sum();
        let mut offset = 0;
        let mut blocks = Vec::new();
        for ((kind, mult), d) in factors.iter().zip(&dims) {
            kind.validate()?;
            let local = kind.standard_block(*mult);
            let embed = |m: &RatMatrix| {
                RatMatrix::zeros(offset, offset)
                    .block_diag(m)
                    .block_diag(&RatMatrix::zeros(dim_v - offset - d, dim_v - offset - d))
            };
            blocks.push(FactorBlock {
                factor: local.factor,
                generators: local
                    .generators
                    .iter()
                    .map(|g| Generator { action: embed(&g.action), star: embed(&g.star) })
                    .collect(),
            });
            offset += d;
        }
        Self::structured(dim_v, blocks)
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn mode(&self) -> &AlgebraMode {
        &self.mode
    }

    pub fn blocks(&self) -> Option<&[FactorBlock]> {
        match &self.mode {
            AlgebraMode::Structured(b) => Some(b),
            AlgebraMode::Raw => None,
        }
    }

    /// Applies `f` to every action and star matrix, keeping the mode.
    pub fn map_matrices(&self, f: impl Fn(&RatMatrix) -> RatMatrix) -> Self {
        let g = |x: &Generator| Generator { action: f(&x.action), star: f(&x.star) };
        AlgebraPresentation {
            dim_v: self.dim_v,
            generators: self.generators.iter().map(g).collect(),
            mode: match &self.mode {
                AlgebraMode::Raw => AlgebraMode::Raw,
                AlgebraMode::Structured(bs) => AlgebraMode::Structured(
                    bs.iter()
                        .map(|b| FactorBlock { factor: b.factor, generators: b.generators.iter().map(g).collect() })
                        .collect(),
                ),
            },
        }
    }

    /// Replaces the star matrix of generator `index` (flat numbering), keeping the mode.
    pub fn with_star(&self, index: usize, star: RatMatrix) -> Self {
        let mut out = self.clone();
        out.generators[index].star = star.clone();
        if let AlgebraMode::Structured(bs) = &mut out.mode {
            let mut k = index;
            for b in bs.iter_mut() {
                if k < b.generators.len() {
                    b.generators[k].star = star;
                    break;
                }
                k -= b.generators.len();
            }
        }
        out
    }
}

fn check_shapes(dim_v: usize, generators: &[Generator]) -> Result<(), AlgebraError> {
    for (index, g) in generators.iter().enumerate() {
        for (which, m) in [("action", &g.action), ("star", &g.star)] {
            if m.shape() != (dim_v, dim_v) {
                return Err(AlgebraError::Shape { index, which, shape: m.shape(), dim: dim_v });
            }
        }
    }
    Ok(())
}

fn check_relations(index: usize, block: &FactorBlock) -> Result<(), AlgebraError> {
    let fail = |reason: String| Err(AlgebraError::Relation { factor: index, reason });
    let n = block.factor.kind.n();
    let e = |r: usize, c: usize| &block.matrix_unit(r, c).action;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let prod = e(i, j).mul(e(k, l))?;
                    let want = if j == k { e(i, l).clone() } else { RatMatrix::zeros(prod.rows(), prod.cols()) };
                    if prod != want {
                        return fail(format!("E{}{}·E{}{} breaks the matrix unit relations", i + 1, j + 1, k + 1, l + 1));
                    }
                }
            }
        }
    }
    let unit = block.unit_action();
    let extras = &block.generators[n * n..];
    for (x, g) in extras.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                if g.action.mul(e(r, c))? != e(r, c).mul(&g.action)? {
                    return fail(format!("extra generator {x} does not commute with the matrix units"));
                }
            }
        }
    }
    let square_is = |g: &Generator, k: i64| -> Result<bool, AlgebraError> {
        Ok(g.action.mul(&g.action)? == unit.scale(&int(k)))
    };
    match block.factor.kind {
        CatalogKind::MatQ { .. } => {}
        CatalogKind::MatImagQuad { d, .. } => {
            if !square_is(&extras[0], d)? {
                return fail(format!("center generator does not square to {d}"));
            }
        }
        CatalogKind::MatDefQuat { a, b, .. } => {
            let (qi, qj) = (&extras[0], &extras[1]);
            if !square_is(qi, a)? || !square_is(qj, b)? {
                return fail(format!("quaternion units do not square to ({a}, {b})"));
            }
            if qi.action.mul(&qj.action)? != qj.action.mul(&qi.action)?.neg() {
                return fail("quaternion units do not anticommute".into());
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// JSON wire format

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum WireMode {
    Structured,
    Raw,
}

#[derive(Serialize, Deserialize)]
struct WireFactor {
    #[serde(flatten)]
    kind: CatalogKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multiplicity: Option<usize>,
    generators: Vec<Generator>,
}

#[derive(Serialize, Deserialize)]
struct WireAlgebra {
    dim_v: usize,
    mode: WireMode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    factors: Vec<WireFactor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<Generator>,
}

impl Serialize for AlgebraPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = match &self.mode {
            AlgebraMode::Raw => WireAlgebra {
                dim_v: self.dim_v,
                mode: WireMode::Raw,
                factors: vec![],
                generators: self.generators.clone(),
            },
            AlgebraMode::Structured(blocks) => WireAlgebra {
                dim_v: self.dim_v,
                mode: WireMode::Structured,
                factors: blocks
                    .iter()
                    .map(|b| WireFactor {
                        kind: b.factor.kind,
                        multiplicity: Some(b.factor.multiplicity_in_v),
                        generators: b.generators.clone(),
                    })
                    .collect(),
                generators: vec![],
            },
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = WireAlgebra::deserialize(d)?;
        match wire.mode {
            WireMode::Raw => {
                if !wire.factors.is_empty() {
                    return Err(D::Error::custom("raw mode takes `generators`, not `factors`"));
                }
                AlgebraPresentation::raw(wire.dim_v, wire.generators).map_err(D::Error::custom)
            }
            WireMode::Structured => {
                if wire.factors.is_empty() {
                    return Err(D::Error::custom("structured mode needs a nonempty `factors` list"));
                }
                let declared: Vec<Option<usize>> = wire.factors.iter().map(|f| f.multiplicity).collect();
                let blocks = wire
                    .factors
                    .into_iter()
                    .map(|f| FactorBlock {
                        factor: CatalogFactor { kind: f.kind, multiplicity_in_v: 0 },
                        generators: f.generators,
                    })
                    .collect();
                let alg = AlgebraPresentation::structured(wire.dim_v, blocks).map_err(D::Error::custom)?;
                if !wire.generators.is_empty() && wire.generators != alg.generators {
                    return Err(D::Error::custom(
                        "top-level `generators` disagree with the per-factor generators",
                    ));
                }
                for (i, (want, block)) in declared.iter().zip(alg.blocks().unwrap_or(&[])).enumerate() {
                    if let Some(m) = want {
                        if *m != block.factor.multiplicity_in_v {
                            return Err(D::Error::custom(format!(
                                "factors[{i}].multiplicity is {m} but the unit acts with multiplicity {}",
                                block.factor.multiplicity_in_v
                            )));
                        }
                    }
                }
                Ok(alg)
            }
        }
    }
}
