//! PEL data: validation of the axioms and classification of the real group.

mod classify;

pub use classify::{factorize, shimura_report, GroupFactorization, RealFactor, ShimuraReport, UnitarySplit};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    check_anti_involution, check_positive, AlgebraError, AlgebraPresentation, InvolutionFailure,
};
use crate::exactlin::{is_complex_structure, signature, LinAlgError, RatMatrix, Signature};

/// `(B, *, V, ⟨,⟩, h)` with `h` given by `j = h(i)`; `⟨u, v⟩ = uᵀ · pairing · v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PelDatum {
    pub algebra: AlgebraPresentation,
    pub pairing: RatMatrix,
    pub j: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PelError {
    #[error("datum is invalid: {0}")]
    Invalid(Diagnostic),
    #[error("classification needs a structured algebra presentation")]
    NotStructured,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// The first axiom a datum violates.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Diagnostic {
    ShapeMismatch { detail: String },
    PairingNotAlternating,
    PairingDegenerate,
    StarAdjointness { generator: usize },
    JNotComplexStructure,
    JNotCommuting { generator: usize },
    HNotCompatible,
    NotPositive { signature: Signature },
    InvolutionInvalid { failure: InvolutionFailure },
    InvolutionNotPositive { signature: Signature },
    AlgebraFailure { detail: String },
}

impl Diagnostic {
    pub fn code(&self) -> &'static str {
        match self {
            Diagnostic::ShapeMismatch { .. } => "shape_mismatch",
            Diagnostic::PairingNotAlternating => "pairing_not_alternating",
            Diagnostic::PairingDegenerate => "pairing_degenerate",
            Diagnostic::StarAdjointness { .. } => "star_adjointness",
            Diagnostic::JNotComplexStructure => "j_not_complex_structure",
            Diagnostic::JNotCommuting { .. } => "j_not_commuting",
            Diagnostic::HNotCompatible => "h_not_compatible",
            Diagnostic::NotPositive { .. } => "not_positive",
            Diagnostic::InvolutionInvalid { .. } => "involution_invalid",
            Diagnostic::InvolutionNotPositive { .. } => "involution_not_positive",
            Diagnostic::AlgebraFailure { .. } => "algebra_failure",
        }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::ShapeMismatch { detail } | Diagnostic::AlgebraFailure { detail } => {
                write!(f, "{}: {detail}", self.code())
            }
            Diagnostic::StarAdjointness { generator } | Diagnostic::JNotCommuting { generator } => {
                write!(f, "{} (generator {generator})", self.code())
            }
            Diagnostic::NotPositive { signature } | Diagnostic::InvolutionNotPositive { signature } => write!(
                f,
                "{} (signature {}, {}, {})",
                self.code(),
                signature.positive,
                signature.negative,
                signature.zero
            ),
            _ => f.write_str(self.code()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<Diagnostic>,
    /// Signature of `(u, v) ↦ ⟨u, j v⟩` when it was reached.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polarization_signature: Option<Signature>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_dim: Option<usize>,
}

impl PelDatum {
    pub fn new(algebra: AlgebraPresentation, pairing: RatMatrix, j: RatMatrix) -> Self {
        PelDatum { algebra, pairing, j }
    }

    pub fn dim_v(&self) -> usize {
        self.algebra.dim_v()
    }

    /// The same datum written in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &RatMatrix) -> Result<PelDatum, LinAlgError> {
        let pinv = p.inverse()?;
        let conj = |m: &RatMatrix| pinv.mul(m).and_then(|x| x.mul(p)).expect("shapes checked");
        Ok(PelDatum {
            algebra: self.algebra.map_matrices(conj),
            pairing: p.transpose().mul(&self.pairing)?.mul(p)?,
            j: conj(&self.j),
        })
    }

    /// Gram matrix of `(u, v) ↦ ⟨u, j v⟩`.
    pub fn polarization_form(&self) -> Result<RatMatrix, LinAlgError> {
        self.pairing.mul(&self.j)
    }

    pub fn with_pairing(&self, pairing: RatMatrix) -> Self {
        PelDatum { pairing, ..self.clone() }
    }

    pub fn with_j(&self, j: RatMatrix) -> Self {
        PelDatum { j, ..self.clone() }
    }
}

/// Checks the PEL axioms in a fixed order and reports the first failure.
pub fn validate(datum: &PelDatum) -> ValidationReport {
    let mut report = ValidationReport { valid: false, diagnostic: None, polarization_signature: None, algebra_dim: None };
    match validate_inner(datum, &mut report) {
        Ok(()) => report.valid = true,
        Err(d) => report.diagnostic = Some(d),
    }
    report
}

fn validate_inner(datum: &PelDatum, report: &mut ValidationReport) -> Result<(), Diagnostic> {
    let n = datum.dim_v();
    let shape_err = |what: &str, m: &RatMatrix| Diagnostic::ShapeMismatch {
        detail: format!("{what} is {:?}, expected ({n}, {n})", m.shape()),
    };
    if datum.pairing.shape() != (n, n) {
        return Err(shape_err("pairing", &datum.pairing));
    }
    if datum.j.shape() != (n, n) {
        return Err(shape_err("j", &datum.j));
    }
    let la = |e: LinAlgError| Diagnostic::AlgebraFailure { detail: e.to_string() };
    let p = &datum.pairing;
    if p.transpose() != p.neg() {
        return Err(Diagnostic::PairingNotAlternating);
    }
    if n % 2 == 1 || num_traits::Zero::is_zero(&p.det().map_err(la)?) {
        return Err(Diagnostic::PairingDegenerate);
    }
    for (i, g) in datum.algebra.generators().iter().enumerate() {
        if g.action.transpose().mul(p).map_err(la)? != p.mul(&g.star).map_err(la)? {
            return Err(Diagnostic::StarAdjointness { generator: i });
        }
    }
    if !is_complex_structure(&datum.j) {
        return Err(Diagnostic::JNotComplexStructure);
    }
    for (i, g) in datum.algebra.generators().iter().enumerate() {
        if g.action.mul(&datum.j).map_err(la)? != datum.j.mul(&g.action).map_err(la)? {
            return Err(Diagnostic::JNotCommuting { generator: i });
        }
    }
    if datum.j.transpose().mul(p).map_err(la)? != p.mul(&datum.j).map_err(la)?.neg() {
        return Err(Diagnostic::HNotCompatible);
    }
    let sig = signature(&datum.polarization_form().map_err(la)?).map_err(la)?;
    report.polarization_signature = Some(sig);
    if !sig.is_positive_definite() {
        return Err(Diagnostic::NotPositive { signature: sig });
    }
    let alg_err = |e: AlgebraError| Diagnostic::AlgebraFailure { detail: e.to_string() };
    let inv = check_anti_involution(&datum.algebra).map_err(alg_err)?;
    if let Some(failure) = inv.failure {
        return Err(Diagnostic::InvolutionInvalid { failure });
    }
    report.algebra_dim = Some(inv.algebra_dim);
    let pos = check_positive(&datum.algebra).map_err(alg_err)?;
    if !pos.positive {
        return Err(Diagnostic::InvolutionNotPositive { signature: pos.trace_form_signature });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::fixtures;

    #[test]
    fn worked_data_are_valid() {
        for d in [fixtures::modular_curve_datum(), fixtures::morita_datum(), fixtures::gu11_datum()] {
            let r = validate(&d);
            assert!(r.valid, "{r:?}");
            assert_eq!(r.polarization_signature.unwrap().positive, d.dim_v());
        }
    }

    #[test]
    fn negated_pairing_fails_positivity() {
        let d = fixtures::modular_curve_datum();
        let r = validate(&d.with_pairing(d.pairing.neg()));
        assert_eq!(r.diagnostic.as_ref().map(Diagnostic::code), Some("not_positive"));
        // oracle: the form becomes negative definite
        let sig = signature(&d.pairing.neg().mul(&d.j).unwrap()).unwrap();
        assert_eq!((sig.positive, sig.negative), (0, 2));
    }

    #[test]
    fn negated_j_fails_positivity() {
        let d = fixtures::modular_curve_datum();
        let r = validate(&d.with_j(d.j.neg()));
        assert_eq!(r.diagnostic.unwrap().code(), "not_positive");
    }

    #[test]
    fn failure_order() {
        let d = fixtures::modular_curve_datum();
        let sym = RatMatrix::identity(2);
        assert_eq!(validate(&d.with_pairing(sym)).diagnostic.unwrap(), Diagnostic::PairingNotAlternating);
        assert_eq!(
            validate(&d.with_pairing(RatMatrix::zeros(2, 2))).diagnostic.unwrap(),
            Diagnostic::PairingDegenerate
        );
        assert_eq!(validate(&d.with_j(RatMatrix::identity(2))).diagnostic.unwrap(), Diagnostic::JNotComplexStructure);
        // ℚ(i)-linear, squares to -1, but not skew-adjoint for the pairing
        let g = fixtures::gu11_datum();
        let j = RatMatrix::from_i64_rows(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let r = validate(&g.with_j(j));
        assert_eq!(r.diagnostic.unwrap(), Diagnostic::HNotCompatible);
        let m = fixtures::morita_datum();
        let broken = m.algebra.with_star(1, m.algebra.generators()[1].action.clone());
        let r = validate(&PelDatum { algebra: broken, ..m.clone() });
        assert_eq!(r.diagnostic.unwrap(), Diagnostic::StarAdjointness { generator: 1 });
    }

    #[test]
    fn j_must_commute_with_b() {
        // B = ℚ × ℚ acting on two hyperbolic planes; a j mixing the planes does not commute
        let e1 = RatMatrix::identity(2).block_diag(&RatMatrix::zeros(2, 2));
        let e2 = RatMatrix::zeros(2, 2).block_diag(&RatMatrix::identity(2));
        let alg = AlgebraPresentation::raw(
            4,
            vec![Generator { action: e1.clone(), star: e1 }, Generator { action: e2.clone(), star: e2 }],
        )
        .unwrap();
        let jp = RatMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        let pairing = jp.block_diag(&jp);
        let j = RatMatrix::from_i64_rows(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let r = validate(&PelDatum::new(alg, pairing, j));
        assert_eq!(r.diagnostic.unwrap(), Diagnostic::JNotCommuting { generator: 0 });
    }

    #[test]
    fn json_round_trip() {
        let d = fixtures::gu11_datum();
        let s = serde_json::to_string(&d).unwrap();
        let back: PelDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
