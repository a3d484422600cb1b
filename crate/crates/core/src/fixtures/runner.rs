use serde::Serialize;

use super::data::{gu11_datum, gu11_morphism, modular_curve_datum, modular_identity, morita_datum, mutations};
use crate::admit::{decide, MorphismSpec};
use crate::hodge::{enumerate_av_irreducibles, hodge_type, HodgeCochar};
use crate::isofun::run_law_suite;
use crate::pelcheck::{factorize, validate, PelDatum};
use crate::repcalc::{decompose, irr_char, parse_tensor, RootDatum};

pub const FIXTURE_LAW_TRIALS: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureRow {
    pub section: &'static str,
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub seed: u64,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub rows: Vec<FixtureRow>,
}

fn row(section: &'static str, name: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) -> FixtureRow {
    let (expected, got) = (expected.into(), got.into());
    FixtureRow { section, name: name.into(), pass: expected == got, expected, got }
}

fn fmt_weights(ws: &[Vec<i64>]) -> String {
    let parts: Vec<String> = ws.iter().map(|w| format!("{w:?}")).collect();
    format!("[{}]", parts.join(" "))
}

fn named_data() -> [(&'static str, PelDatum, &'static str); 3] {
    [
        ("modular_curve", modular_curve_datum(), "[Sp_2]"),
        ("morita", morita_datum(), "[Sp_2]"),
        ("gu11", gu11_datum(), "[U(1,1)]"),
    ]
}

fn validation_rows() -> Vec<FixtureRow> {
    let mut rows = vec![];
    for (name, d, _) in named_data() {
        let r = validate(&d);
        let got = r.diagnostic.map_or("valid".to_string(), |x| x.code().to_string());
        rows.push(row("validate", name, "valid", got));
    }
    for m in mutations() {
        let got = validate(&m.datum).diagnostic.map_or("valid".to_string(), |x| x.code().to_string());
        rows.push(row("mutation", m.name, m.expected, got));
    }
    rows
}

fn classification_rows() -> Vec<FixtureRow> {
    named_data()
        .into_iter()
        .map(|(name, d, want)| {
            let got = match factorize(&d) {
                Ok(f) => format!("[{}]", f.labels().join(", ")),
                Err(e) => format!("error: {e}"),
            };
            row("classify", name, want, got)
        })
        .collect()
}

fn verdict(spec: &MorphismSpec) -> String {
    match spec.resolve().and_then(|m| decide(&m)) {
        Ok(v) if v.admissible => format!("admissible n={}", v.witness_n.unwrap_or(0)),
        Ok(v) => format!("not admissible, missing {}", fmt_weights(&v.missing_constituents)),
        Err(e) => format!("error: {e}"),
    }
}

fn admissibility_rows() -> Vec<FixtureRow> {
    let mut rows = vec![
        row("admissible", "identity modular_curve->morita", "admissible n=2", verdict(&modular_identity(false))),
        row("admissible", "identity morita->modular_curve", "admissible n=1", verdict(&modular_identity(true))),
    ];
    // V' ⊗ χ: both halves of the standard representation twisted by χ^{±1}
    let expected = "not admissible, missing [[3, 2, 1] [2, 1, 1] [-1, -2, 1] [-2, -3, 1]]";
    rows.push(row("admissible", "gu11 -> GSp_8", expected, verdict(&gu11_morphism())));
    rows
}

fn hodge_rows() -> Vec<FixtureRow> {
    let mut rows = vec![];
    let rd = RootDatum::parse("C1", 1).expect("C1");
    let got = HodgeCochar::standard(&rd)
        .map_err(|e| e.to_string())
        .and_then(|hc| hodge_type(&rd.standard_char(), &hc).map_err(|e| e.to_string()));
    let got = match got {
        Ok(t) => format!("{:?}", t.into_iter().collect::<Vec<_>>()),
        Err(e) => format!("error: {e}"),
    };
    rows.push(row("hodge", "standard GSp_2", "[(-1, 0), (0, -1)]", got));
    for n in 1..=3 {
        let rd = RootDatum::parse(&format!("C{n}"), 1).expect("Cn");
        let mut l1 = vec![0; n + 1];
        l1[0] = 1;
        l1[n] = 1;
        let got = match HodgeCochar::standard(&rd).map_err(|e| e.to_string()).and_then(|hc| {
            enumerate_av_irreducibles(&rd, &hc, 4).map_err(|e| e.to_string())
        }) {
            Ok(ws) => fmt_weights(&ws),
            Err(e) => format!("error: {e}"),
        };
        rows.push(row("enumerate", format!("C{n} bound 4"), fmt_weights(&[l1]), got));
    }
    rows
}

fn decomposition_rows() -> Vec<FixtureRow> {
    let rd = RootDatum::parse("C2", 0).expect("C2");
    let got = parse_tensor(&rd, "std,std").and_then(|x| {
        let parts = decompose(&rd, &x, true)?;
        let mut dims = vec![];
        for c in &parts {
            dims.push(format!("{:?}x{}:{}", c.highest, c.mult, irr_char(&rd, &c.highest)?.dim()));
        }
        Ok(dims.join(" + "))
    });
    let got = got.unwrap_or_else(|e| format!("error: {e}"));
    vec![row("rep", "C2 std(x)std", "[2, 0]x1:10 + [1, 1]x1:5 + [0, 0]x1:1", got)]
}

fn law_rows(seed: u64) -> Vec<FixtureRow> {
    run_law_suite(FIXTURE_LAW_TRIALS, seed)
        .laws
        .into_iter()
        .map(|l| {
            let got = match &l.first_failure {
                None => format!("{}/{} ok", l.trials, l.trials),
                Some(f) => format!("{} failures, {f}", l.failures),
            };
            row("isofun", l.law, format!("{0}/{0} ok", FIXTURE_LAW_TRIALS), got)
        })
        .collect()
}

/// Runs every built-in worked example. The output depends only on `seed`.
pub fn run_fixtures(seed: u64) -> FixtureReport {
    let mut rows = vec![];
    rows.extend(classification_rows());
    rows.extend(validation_rows());
    rows.extend(admissibility_rows());
    rows.extend(hodge_rows());
    rows.extend(decomposition_rows());
    rows.extend(law_rows(seed));
    let failed = rows.iter().filter(|r| !r.pass).count();
    FixtureReport { seed, passed: failed == 0, total: rows.len(), failed, rows }
}

impl FixtureReport {
    /// Fixed-width text table.
    pub fn render_table(&self) -> String {
        let headers = ["section", "fixture", "expected", "got", "status"];
        let cells: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                let status = if r.pass { "PASS" } else { "FAIL" };
                [r.section.to_string(), r.name.clone(), r.expected.clone(), r.got.clone(), status.to_string()]
            })
            .collect();
        let mut widths = headers.map(|h| h.chars().count());
        for c in &cells {
            for (w, s) in widths.iter_mut().zip(c) {
                *w = (*w).max(s.chars().count());
            }
        }
        let line = |fields: &[String]| {
            let padded: Vec<String> = fields
                .iter()
                .zip(widths)
                .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&headers.map(String::from));
        out += &line(&widths.map(|w| "-".repeat(w)));
        for c in &cells {
            out += &line(c);
        }
        out += &format!("\n{} of {} fixtures passed (seed {})\n", self.total - self.failed, self.total, self.seed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutations_fail_as_expected() {
        for r in validation_rows() {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn non_law_fixtures_pass() {
        for r in classification_rows().into_iter().chain(admissibility_rows()).chain(hodge_rows()).chain(decomposition_rows()) {
            assert!(r.pass, "{r:?}");
        }
    }
}
