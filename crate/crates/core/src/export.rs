//! Serialization of essential sets, verification reports, and module
//! realizations.
//!
//! Sets are emitted as JSON lines: one object per signature (highest weight
//! in fundamental coordinates, exponents in root-numeration order), sorted
//! by the signature order so output is deterministic.  File exports carry a
//! leading header object recording the layout version, the algebra, the
//! order direction, and the full numbered root list, so a consumer can
//! interpret exponent positions without access to this crate; plain stream
//! output omits the header and is exactly one line per signature.
//!
//! Roots and weights serialize in ε-coordinates as `(numerator,
//! denominator)` integer pairs (weights of spin modules are half-integral).

use std::io::Write;

use serde::Serialize;

use crate::essential_oracle::EssentialSet;
use crate::rep_modules::ModuleRealization;
use crate::root_system::{positive_roots, AlgebraType, LexDirection, Root, Signature, Weight};
use crate::Result;

/// Version tag for the exponent-tuple layout (the root numeration).
pub const LAYOUT_VERSION: u32 = 1;

fn root_pairs(root: &Root) -> Vec<(i64, i64)> {
    root.coords.iter().map(|&c| (c, 1)).collect()
}

fn weight_pairs(weight: &Weight) -> Vec<(i64, i64)> {
    weight
        .halves
        .iter()
        .map(|&h| if h % 2 == 0 { (h / 2, 1) } else { (h, 2) })
        .collect()
}

/// Header object for file exports of essential sets.
#[derive(Debug, Serialize)]
pub struct SetHeader {
    pub layout_version: u32,
    pub algebra: String,
    pub rank: usize,
    pub lex_direction: LexDirection,
    /// All positive roots in numeration order, each as ε-coordinate
    /// `(numerator, denominator)` pairs.
    pub positive_roots: Vec<Vec<(i64, i64)>>,
    pub highest_weight: Vec<i64>,
    pub highest_weight_eps: Vec<(i64, i64)>,
    pub count: usize,
}

/// One data line of an essential-set export.
#[derive(Debug, Serialize)]
pub struct SignatureLine {
    /// Highest weight in fundamental coordinates.
    pub weight: Vec<i64>,
    /// Exponents in root-numeration order.
    pub exponents: Vec<u32>,
}

/// Serialize one signature to its JSON line.
pub fn signature_line(alg: &AlgebraType, sigma: &Signature) -> Result<String> {
    let line = SignatureLine {
        weight: sigma.highest_weight.fund(alg)?,
        exponents: sigma.exponents.clone(),
    };
    Ok(serde_json::to_string(&line)?)
}

/// Write an essential set as JSON lines.  With `with_header` a header
/// object precedes the data lines; without it the output is exactly one
/// line per signature.
pub fn write_essential_set(
    out: &mut dyn Write,
    set: &EssentialSet,
    direction: LexDirection,
    with_header: bool,
) -> Result<()> {
    if with_header {
        let header = SetHeader {
            layout_version: LAYOUT_VERSION,
            algebra: set.alg.kind.to_string(),
            rank: set.alg.rank,
            lex_direction: direction,
            positive_roots: positive_roots(&set.alg).iter().map(root_pairs).collect(),
            highest_weight: set.highest_weight.fund(&set.alg)?,
            highest_weight_eps: weight_pairs(&set.highest_weight),
            count: set.signatures.len(),
        };
        writeln!(out, "{}", serde_json::to_string(&header)?)?;
    }
    for sigma in &set.signatures {
        writeln!(out, "{}", signature_line(&set.alg, sigma)?)?;
    }
    Ok(())
}

/// A machine-readable verification report: one document per `verify` run,
/// with per-check results.
#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub wall_ms: u128,
}

/// One named sub-check inside a report.
#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Named counts (sets compared, points enumerated, ...).
    pub counts: serde_json::Map<String, serde_json::Value>,
    /// First failing item, if any, as a serialized signature or tuple.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<serde_json::Value>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, passed: bool) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed,
            counts: serde_json::Map::new(),
            first_counterexample: None,
        }
    }

    pub fn count(mut self, key: &str, value: impl Into<u64>) -> CheckResult {
        self.counts
            .insert(key.to_string(), serde_json::Value::from(value.into()));
        self
    }

    pub fn counterexample(mut self, value: impl Serialize) -> CheckResult {
        self.first_counterexample = serde_json::to_value(value).ok();
        self
    }
}

impl VerifyReport {
    pub fn new(check: impl Into<String>, checks: Vec<CheckResult>, wall_ms: u128) -> VerifyReport {
        VerifyReport {
            check: check.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
            wall_ms,
        }
    }
}

/// JSON dump of a module realization for external audit: basis labels,
/// weights, and the action of every lowering and raising operator as
/// sparse `(column, row, value)` entries with rational values as strings.
#[derive(Debug, Serialize)]
pub struct ModuleDump {
    pub algebra: String,
    pub rank: usize,
    pub dim: usize,
    pub highest_weight: Vec<i64>,
    pub highest_vector: usize,
    pub basis: Vec<String>,
    pub weights: Vec<Vec<(i64, i64)>>,
    pub roots: Vec<Vec<(i64, i64)>>,
    pub lowering: Vec<Vec<(usize, usize, String)>>,
    pub raising: Vec<Vec<(usize, usize, String)>>,
}

/// Build the dump object for a realization.
pub fn module_dump(module: &ModuleRealization) -> Result<ModuleDump> {
    let alg = module.alg;
    let sparse = |ops: &[crate::rep_modules::SparseMat]| -> Vec<Vec<(usize, usize, String)>> {
        ops.iter()
            .map(|m| {
                let mut entries = Vec::new();
                for (col, rows) in m.cols.iter().enumerate() {
                    for (row, v) in rows {
                        entries.push((col, *row, v.to_string()));
                    }
                }
                entries
            })
            .collect()
    };
    Ok(ModuleDump {
        algebra: alg.kind.to_string(),
        rank: alg.rank,
        dim: module.dim(),
        highest_weight: module.highest_weight.fund(&alg)?,
        highest_vector: module.highest_vector,
        basis: module.basis_labels.iter().map(|l| l.to_string()).collect(),
        weights: module.weights.iter().map(weight_pairs).collect(),
        roots: positive_roots(&alg).iter().map(root_pairs).collect(),
        lowering: sparse(&module.lowering_ops),
        raising: sparse(&module.raising_ops),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::essential_oracle::essential_set;
    use crate::rep_modules::realize;

    #[test]
    fn set_export_shapes() {
        let alg = AlgebraType::d(2).unwrap();
        let module = realize(&alg, &[1, 0]).unwrap();
        let set = essential_set(&module).unwrap();

        let mut plain = Vec::new();
        write_essential_set(&mut plain, &set, LexDirection::Standard, false).unwrap();
        let text = String::from_utf8(plain).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first["weight"], serde_json::json!([1, 0]));
        assert_eq!(first["exponents"], serde_json::json!([0, 0]));

        let mut with_header = Vec::new();
        write_essential_set(&mut with_header, &set, LexDirection::Standard, true).unwrap();
        let text = String::from_utf8(with_header).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        let header: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(header["layout_version"], serde_json::json!(LAYOUT_VERSION));
        assert_eq!(header["algebra"], serde_json::json!("D"));
        assert_eq!(header["count"], serde_json::json!(2));
        // ε_1 − ε_2 then ε_1 + ε_2.
        assert_eq!(
            header["positive_roots"],
            serde_json::json!([[[1, 1], [-1, 1]], [[1, 1], [1, 1]]])
        );
    }

    #[test]
    fn half_integral_weights_as_pairs() {
        let alg = AlgebraType::b(2).unwrap();
        let module = realize(&alg, &[0, 1]).unwrap();
        let set = essential_set(&module).unwrap();
        let mut out = Vec::new();
        write_essential_set(&mut out, &set, LexDirection::Standard, true).unwrap();
        let text = String::from_utf8(out).unwrap();
        let header: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        // The spin weight is (1/2, 1/2).
        assert_eq!(
            header["highest_weight_eps"],
            serde_json::json!([[1, 2], [1, 2]])
        );
    }

    #[test]
    fn report_document() {
        let checks = vec![
            CheckResult::new("first", true).count("items", 5u32),
            CheckResult::new("second", false).counterexample(vec![1, 2, 3]),
        ];
        let report = VerifyReport::new("demo", checks, 12);
        assert!(!report.passed);
        let value = serde_json::to_value(&report).unwrap();
        assert_eq!(value["checks"][0]["counts"]["items"], serde_json::json!(5));
        assert_eq!(
            value["checks"][1]["first_counterexample"],
            serde_json::json!([1, 2, 3])
        );
        assert!(value["checks"][0].get("first_counterexample").is_none());
    }

    #[test]
    fn module_dump_roundtrip() {
        let alg = AlgebraType::b(2).unwrap();
        let module = realize(&alg, &[1, 0]).unwrap();
        let dump = module_dump(&module).unwrap();
        assert_eq!(dump.dim, 5);
        assert_eq!(dump.basis.len(), 5);
        assert_eq!(dump.lowering.len(), 4);
        let text = serde_json::to_string(&dump).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["dim"], serde_json::json!(5));
    }
}
