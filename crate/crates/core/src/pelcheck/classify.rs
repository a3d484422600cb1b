use serde::Serialize;

use super::{validate, PelDatum, PelError};
use crate::algebra::{CatalogKind, FactorBlock};
use crate::exactlin::{signature, simult_eigensplit, RatMatrix};

/// Agreement/disagreement data behind a unitary signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitarySplit {
    /// `"eigensplit"` (d = -1) or `"hermitian_form"` (other d).
    pub method: &'static str,
    /// Complex (or, for the hermitian route, real) dimension where the center and `j` agree.
    pub agree: usize,
    pub disagree: usize,
}

/// One simple factor of `G_1` over ℝ, in the order symplectic, unitary, orthogonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RealFactor {
    Symplectic { g: usize, n: usize, isotypic_dim: usize },
    Unitary { a: usize, b: usize, n: usize, d: i64, isotypic_dim: usize, split: UnitarySplit },
    Orthogonal { r: usize, n: usize, isotypic_dim: usize },
}

impl RealFactor {
    pub fn label(&self) -> String {
        match self {
            RealFactor::Symplectic { g, .. } => format!("Sp_{}", 2 * g),
            RealFactor::Unitary { a, b, .. } => format!("U({a},{b})"),
            RealFactor::Orthogonal { r, .. } => format!("O*_{}", 2 * r),
        }
    }

    pub fn isotypic_dim(&self) -> usize {
        match *self {
            RealFactor::Symplectic { isotypic_dim, .. }
            | RealFactor::Unitary { isotypic_dim, .. }
            | RealFactor::Orthogonal { isotypic_dim, .. } => isotypic_dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFactorization {
    pub symplectic: Vec<usize>,
    pub unitary: Vec<(usize, usize)>,
    pub orthogonal: Vec<usize>,
    /// `G` carries the similitude character, so there is always one extra central coordinate.
    pub similitude: bool,
    pub factors: Vec<RealFactor>,
}

impl GroupFactorization {
    pub fn from_factors(mut factors: Vec<RealFactor>) -> Self {
        factors.sort_by_key(|f| match f {
            RealFactor::Symplectic { .. } => 0,
            RealFactor::Unitary { .. } => 1,
            RealFactor::Orthogonal { .. } => 2,
        });
        let mut out = GroupFactorization {
            symplectic: vec![],
            unitary: vec![],
            orthogonal: vec![],
            similitude: true,
            factors: factors.clone(),
        };
        for f in factors {
            match f {
                RealFactor::Symplectic { g, .. } => out.symplectic.push(g),
                RealFactor::Unitary { a, b, .. } => out.unitary.push((a, b)),
                RealFactor::Orthogonal { r, .. } => out.orthogonal.push(r),
            }
        }
        out
    }

    pub fn labels(&self) -> Vec<String> {
        self.factors.iter().map(RealFactor::label).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShimuraReport {
    pub is_shimura_datum_for_g0: bool,
    pub g_connected: bool,
    pub center_condition: bool,
    pub center_reasons: Vec<String>,
    pub offending_factors: Vec<String>,
}

/// Columns spanning the image of `unit`, and the matrices of `ops` restricted to it.
fn restrict(unit: &RatMatrix, ops: &[&RatMatrix]) -> Result<(usize, Vec<RatMatrix>), PelError> {
    let basis = unit.column_space();
    let mut out = vec![];
    for op in ops {
        let image = op.mul(&basis)?;
        let m = basis
            .solve(&image)?
            .ok_or_else(|| PelError::DimensionMismatch("operator does not preserve the isotypic part".into()))?;
        out.push(m);
    }
    Ok((basis.cols(), out))
}

fn divide(what: &str, total: usize, by: usize) -> Result<usize, PelError> {
    if total == 0 || !total.is_multiple_of(by) {
        return Err(PelError::DimensionMismatch(format!("{what}: {total} is not a positive multiple of {by}")));
    }
    Ok(total / by)
}

fn classify_block(datum: &PelDatum, block: &FactorBlock) -> Result<RealFactor, PelError> {
    let unit = block.unit_action();
    let iso = unit.rank();
    Ok(match block.factor.kind {
        CatalogKind::MatQ { n } => RealFactor::Symplectic { g: divide("symplectic part", iso, 2 * n)?, n, isotypic_dim: iso },
        CatalogKind::MatDefQuat { n, .. } => {
            RealFactor::Orthogonal { r: divide("quaternionic part", iso, 4 * n)?, n, isotypic_dim: iso }
        }
        CatalogKind::MatImagQuad { n, d } => {
            let center = &block.center_generator().expect("imaginary quadratic block").action;
            let split = unitary_split(datum, &unit, center, d)?;
            // the eigensplit counts complex dimensions, the hermitian form real ones
            let step = if split.method == "eigensplit" { n } else { 2 * n };
            if split.agree % step != 0 || split.disagree % step != 0 || split.agree + split.disagree == 0 {
                return Err(PelError::DimensionMismatch(format!(
                    "unitary split ({}, {}) is not divisible by {step}",
                    split.agree, split.disagree
                )));
            }
            let (a, b) = (split.agree / step, split.disagree / step);
            RealFactor::Unitary { a, b, n, d, isotypic_dim: iso, split }
        }
    })
}

/// Unitary signature of an imaginary quadratic factor.
///
/// For `d = -1` the center acts by a complex structure and the ±i eigenspaces of the center
/// and `j` are split directly over ℚ(i). For other `d`, the real dimensions where `√d` acts as a
/// positive or negative multiple of `j` are read off the symmetric form `⟨u, √d·v⟩`.
pub fn unitary_split(datum: &PelDatum, unit: &RatMatrix, center: &RatMatrix, d: i64) -> Result<UnitarySplit, PelError> {
    if d == -1 {
        eigensplit_route(unit, center, &datum.j)
    } else {
        hermitian_route(datum, unit, center)
    }
}

pub(crate) fn eigensplit_route(unit: &RatMatrix, center: &RatMatrix, j: &RatMatrix) -> Result<UnitarySplit, PelError> {
    let (_, ops) = restrict(unit, &[center, j])?;
    let (pp, pm, _, _) = simult_eigensplit(&ops[0], &ops[1])?.dims();
    Ok(UnitarySplit { method: "eigensplit", agree: pp, disagree: pm })
}

pub(crate) fn hermitian_route(datum: &PelDatum, unit: &RatMatrix, center: &RatMatrix) -> Result<UnitarySplit, PelError> {
    let basis = unit.column_space();
    let form = basis.transpose().mul(&datum.pairing)?.mul(center)?.mul(&basis)?;
    let sig = signature(&form)?;
    if sig.zero != 0 {
        return Err(PelError::DimensionMismatch("hermitian form is degenerate on the isotypic part".into()));
    }
    Ok(UnitarySplit { method: "hermitian_form", agree: sig.positive, disagree: sig.negative })
}

/// Real group factorization of a valid datum with a structured algebra.
pub fn factorize(datum: &PelDatum) -> Result<GroupFactorization, PelError> {
    let report = validate(datum);
    if let Some(d) = report.diagnostic {
        return Err(PelError::Invalid(d));
    }
    let blocks = datum.algebra.blocks().ok_or(PelError::NotStructured)?;
    let n = datum.dim_v();
    let total = blocks
        .iter()
        .try_fold(RatMatrix::zeros(n, n), |acc, b| acc.add(&b.unit_action()))?;
    if total != RatMatrix::identity(n) {
        return Err(PelError::DimensionMismatch("the factor units do not sum to the identity on V".into()));
    }
    let factors = blocks.iter().map(|b| classify_block(datum, b)).collect::<Result<Vec<_>, _>>()?;
    let covered: usize = factors.iter().map(RealFactor::isotypic_dim).sum();
    if covered != n {
        return Err(PelError::DimensionMismatch(format!("isotypic parts cover {covered} of {n} dimensions")));
    }
    Ok(GroupFactorization::from_factors(factors))
}

/// Shimura-datum conditions for the identity component of `G`.
pub fn shimura_report(fact: &GroupFactorization) -> ShimuraReport {
    let offending_factors: Vec<String> = fact
        .unitary
        .iter()
        .filter(|&&(a, b)| (a == 0 && b >= 2) || (b == 0 && a >= 2))
        .map(|&(a, b)| format!("U({a},{b})"))
        .collect();
    let mut center_reasons = vec![];
    for g in &fact.symplectic {
        center_reasons.push(format!("Sp_{}: center is finite", 2 * g));
    }
    for (a, b) in &fact.unitary {
        center_reasons.push(format!("U({a},{b}): center is U_1, compact"));
    }
    for r in &fact.orthogonal {
        center_reasons.push(format!("O*_{}: center is finite", 2 * r));
    }
    center_reasons.push("similitude: split central G_m".into());
    ShimuraReport {
        is_shimura_datum_for_g0: offending_factors.is_empty(),
        g_connected: fact.orthogonal.is_empty(),
        center_condition: true,
        center_reasons,
        offending_factors,
    }
}
