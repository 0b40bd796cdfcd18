//! Deterministic JSON reports. `serde_json`'s default map is ordered by
//! key, so serialisation is byte-stable for fixed inputs and tolerances.

use serde_json::{json, Map, Value};

/// Conventions echoed into every report so numbers can be interpreted
/// without the source.
fn conventions() -> Value {
    json!({
        "l_basis": "L_n is the glue of n+1 single-critical-value section classes, left to right",
        "pairing_signs": "reference chords through the origin oriented away from e^{2 pi i mu/p}; <l_mu, l_nu> = +1 for mu != nu",
        "pd_mod2": "PD(aV + bL) = b s_V + a s_L (intersection form V.L = 1)",
    })
}

/// Assembles the stable report envelope.
pub fn report(command: &str, inputs: Value, results: Value, tol_tau: f64) -> Value {
    let mut metadata = Map::new();
    metadata.insert("conventions".into(), conventions());
    metadata.insert("eps_crit".into(), json!(milnorkit_core::tol::EPS_CRIT));
    metadata.insert("tol_slag".into(), json!(milnorkit_core::tol::TOL_SLAG));
    metadata.insert("tol_tau".into(), json!(tol_tau));
    metadata.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    json!({
        "command": command,
        "inputs": inputs,
        "results": results,
        "metadata": Value::Object(metadata),
    })
}

/// Same envelope with extra metadata entries (sorted on output regardless).
pub fn report_with_meta(
    command: &str,
    inputs: Value,
    results: Value,
    tol_tau: f64,
    extra_meta: &[(&str, Value)],
) -> Value {
    let mut value = report(command, inputs, results, tol_tau);
    if let Value::Object(obj) = &mut value {
        if let Some(Value::Object(meta)) = obj.get_mut("metadata") {
            for (k, v) in extra_meta {
                meta.insert((*k).into(), v.clone());
            }
        }
    }
    value
}

/// Renders the report to the exact bytes written to stdout.
pub fn to_stdout_string(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialisation");
    text.push('\n');
    text
}
