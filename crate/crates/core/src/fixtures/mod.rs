//! Built-in worked examples and the conformance table behind `pel fixtures`.

mod data;
mod runner;

pub use data::{
    gu11_datum, gu11_morphism, modular_curve_datum, modular_identity, morita_datum, mutations, quadratic_pair_datum,
    quaternion_datum, symplectic_datum, unitary_datum, Mutation,
};
pub use runner::{run_fixtures, FixtureReport, FixtureRow, FIXTURE_LAW_TRIALS};

/// File name and pretty JSON of every example shipped under `docs/examples/`.
pub fn doc_examples() -> Vec<(&'static str, String)> {
    use crate::cli::pretty_json as pretty;
    vec![
        ("modular_curve.json", pretty(&modular_curve_datum())),
        ("morita.json", pretty(&morita_datum())),
        ("gu11.json", pretty(&gu11_datum())),
        ("quaternion.json", pretty(&quaternion_datum())),
        ("identity_modular_to_morita.json", pretty(&modular_identity(false))),
        ("identity_morita_to_modular.json", pretty(&modular_identity(true))),
        ("gu11_to_gsp8.json", pretty(&gu11_morphism())),
    ]
}
