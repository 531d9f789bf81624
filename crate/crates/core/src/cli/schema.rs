//! Structural check of the JSON the CLI emits.
//!
//! | command | shape |
//! |---|---|
//! | `drag`, `asym` | `command`, `model`, `params`, then the estimate fields `value`, `method`, `regime`, `err_estimate`, `out_of_regime` |
//! | `drag --model corrugated` | `command`, `model`, `params`, `lower`, `upper`, `shifted` (estimates; `shifted` may be null) |
//! | `sweep` | `command`, `model`, `rows`: array of flat objects keyed by CSV column |
//! | `oracle` | `command`, `model`, `bc`, `n`, `oracle_energy`, `closed_form_energy`, `energy_gap`, `continuum_gap`, `max_abs_gap`, `boundary_slopes` |
//! | `simulate` | `command`, `model`, `params`, `h0`, `v0`, `t_max`, `tol`, `outcome`, `samples` |
//! | `constants` | `command`, `alpha`, `lambda_alpha`, `mu_alpha`; or `command`, `rows` without `--alpha` |
//! | any failure | `{"error": {"kind", "message"}}` |
//!
//! Floats that are not finite serialize as `null`, so every numeric field
//! also admits `null`.

use serde_json::{Map, Value};

type Check = Result<(), String>;

static NULL: Value = Value::Null;

fn at<'a>(m: &'a Map<String, Value>, key: &str) -> &'a Value {
    m.get(key).unwrap_or(&NULL)
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, String> {
    v.as_object().ok_or_else(|| format!("{what}: expected an object"))
}

fn exact_keys(m: &Map<String, Value>, keys: &[&str], what: &str) -> Check {
    for k in keys {
        if !m.contains_key(*k) {
            return Err(format!("{what}: missing `{k}`"));
        }
    }
    if let Some(extra) = m.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(format!("{what}: unexpected `{extra}`"));
    }
    Ok(())
}

fn number(v: &Value, what: &str) -> Check {
    if v.is_number() || v.is_null() {
        Ok(())
    } else {
        Err(format!("{what}: expected a number"))
    }
}

fn one_of(v: &Value, allowed: &[&str], what: &str) -> Check {
    match v.as_str() {
        Some(s) if allowed.contains(&s) => Ok(()),
        _ => Err(format!("{what}: expected one of {allowed:?}, got {v}")),
    }
}

const MODELS: [&str; 3] = ["noslip", "slip", "corrugated"];
const METHODS: [&str; 4] = ["exact_integral", "asymptotic", "lower_bound", "upper_bound"];
const BRANCHES: [&str; 5] = [
    "small_beta",
    "large_beta_power",
    "large_beta_log",
    "hocking",
    "shifted_wall",
];
const PARAMS: [&str; 8] = ["h", "eps", "alpha", "beta_s", "beta_p", "lambda", "beta_eff", "r0"];

fn params(v: &Value) -> Check {
    let m = obj(v, "params")?;
    if !m.contains_key("r0") {
        return Err("params: missing `r0`".into());
    }
    for (k, x) in m {
        if !PARAMS.contains(&k.as_str()) {
            return Err(format!("params: unexpected `{k}`"));
        }
        number(x, k)?;
    }
    Ok(())
}

const ESTIMATE_KEYS: [&str; 5] = ["value", "method", "regime", "err_estimate", "out_of_regime"];

fn estimate_fields(m: &Map<String, Value>, what: &str) -> Check {
    number(at(m, "value"), "value")?;
    one_of(at(m, "method"), &METHODS, "method")?;
    match at(m, "regime") {
        Value::Null => {}
        r => {
            let rm = obj(r, "regime")?;
            exact_keys(rm, &["beta", "branch"], "regime")?;
            number(at(rm, "beta"), "regime.beta")?;
            one_of(at(rm, "branch"), &BRANCHES, "regime.branch")?;
        }
    }
    number(at(m, "err_estimate"), "err_estimate")?;
    if !at(m, "out_of_regime").is_boolean() {
        return Err(format!("{what}.out_of_regime: expected a boolean"));
    }
    Ok(())
}

fn estimate(v: &Value, what: &str) -> Check {
    let m = obj(v, what)?;
    exact_keys(m, &ESTIMATE_KEYS, what)?;
    estimate_fields(m, what)
}

fn scalar_rows(v: &Value, what: &str) -> Check {
    let rows = v.as_array().ok_or_else(|| format!("{what}: expected an array"))?;
    for row in rows {
        for (k, x) in obj(row, what)? {
            if !(x.is_number() || x.is_string() || x.is_boolean() || x.is_null()) {
                return Err(format!("{what}.{k}: expected a scalar"));
            }
        }
    }
    Ok(())
}

/// Checks `v` against the documented output shape of its `command`, or the
/// error payload.
pub fn validate(v: &Value) -> Check {
    let m = obj(v, "output")?;
    if let Some(err) = m.get("error") {
        exact_keys(m, &["error"], "output")?;
        let e = obj(err, "error")?;
        exact_keys(e, &["kind", "message"], "error")?;
        if !(at(e, "kind").is_string() && at(e, "message").is_string()) {
            return Err("error: kind and message must be strings".into());
        }
        return Ok(());
    }
    let command = m
        .get("command")
        .and_then(Value::as_str)
        .ok_or("output: missing `command`")?;
    match command {
        "drag" | "asym" => {
            one_of(at(m, "model"), &MODELS, "model")?;
            params(at(m, "params"))?;
            if m.contains_key("lower") {
                exact_keys(m, &["command", "model", "params", "lower", "upper", "shifted"], command)?;
                estimate(at(m, "lower"), "lower")?;
                estimate(at(m, "upper"), "upper")?;
                if !at(m, "shifted").is_null() {
                    estimate(at(m, "shifted"), "shifted")?;
                }
                Ok(())
            } else {
                let mut keys = vec!["command", "model", "params"];
                keys.extend(ESTIMATE_KEYS);
                exact_keys(m, &keys, command)?;
                estimate_fields(m, command)
            }
        }
        "sweep" => {
            exact_keys(m, &["command", "model", "rows"], command)?;
            one_of(at(m, "model"), &MODELS, "model")?;
            scalar_rows(at(m, "rows"), "rows")
        }
        "oracle" => {
            let keys = [
                "command",
                "model",
                "bc",
                "n",
                "oracle_energy",
                "closed_form_energy",
                "energy_gap",
                "continuum_gap",
                "max_abs_gap",
                "boundary_slopes",
            ];
            exact_keys(m, &keys, command)?;
            one_of(at(m, "model"), &MODELS, "model")?;
            let bc = obj(at(m, "bc"), "bc")?;
            match bc.get("kind").and_then(Value::as_str) {
                Some("clamped") => exact_keys(bc, &["kind"], "bc")?,
                Some("robin") => {
                    exact_keys(bc, &["kind", "alpha_s", "alpha_p"], "bc")?;
                    number(at(bc, "alpha_s"), "bc.alpha_s")?;
                    number(at(bc, "alpha_p"), "bc.alpha_p")?;
                }
                _ => return Err("bc.kind: expected clamped or robin".into()),
            }
            if !at(m, "n").is_u64() {
                return Err("n: expected a nonnegative integer".into());
            }
            for k in &keys[4..9] {
                number(at(m, k), k)?;
            }
            match at(m, "boundary_slopes").as_array() {
                Some(a) if a.len() == 2 => a.iter().try_for_each(|x| number(x, "boundary_slopes")),
                _ => Err("boundary_slopes: expected two numbers".into()),
            }
        }
        "simulate" => {
            let keys = [
                "command", "model", "params", "h0", "v0", "t_max", "tol", "outcome", "samples",
            ];
            exact_keys(m, &keys, command)?;
            one_of(at(m, "model"), &MODELS, "model")?;
            params(at(m, "params"))?;
            for k in ["h0", "v0", "t_max", "tol"] {
                number(at(m, k), k)?;
            }
            let o = obj(at(m, "outcome"), "outcome")?;
            match o.get("kind").and_then(Value::as_str) {
                Some("contact_at") => exact_keys(o, &["kind", "t", "v"], "outcome")?,
                Some("asymptotic_rest") => exact_keys(o, &["kind", "h_star"], "outcome")?,
                Some("truncated") => exact_keys(o, &["kind", "t_max"], "outcome")?,
                _ => return Err("outcome.kind: unknown".into()),
            }
            let samples = at(m, "samples").as_array().ok_or("samples: expected an array")?;
            for s in samples {
                let sm = obj(s, "sample")?;
                exact_keys(sm, &["t", "h", "v"], "sample")?;
                for k in ["t", "h", "v"] {
                    number(at(sm, k), k)?;
                }
            }
            Ok(())
        }
        "constants" => {
            let entry = |e: &Map<String, Value>| -> Check {
                number(at(e, "alpha"), "alpha")?;
                number(at(e, "lambda_alpha"), "lambda_alpha")?;
                number(at(e, "mu_alpha"), "mu_alpha")
            };
            if m.contains_key("rows") {
                exact_keys(m, &["command", "rows"], command)?;
                let rows = at(m, "rows").as_array().ok_or("rows: expected an array")?;
                for r in rows {
                    let e = obj(r, "row")?;
                    exact_keys(e, &["alpha", "lambda_alpha", "mu_alpha"], "row")?;
                    entry(e)?;
                }
                Ok(())
            } else {
                exact_keys(m, &["command", "alpha", "lambda_alpha", "mu_alpha"], command)?;
                entry(m)
            }
        }
        other => Err(format!("command: unknown `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn accepts_error_payload() {
        assert!(validate(&json!({"error": {"kind": "domain", "message": "x"}})).is_ok());
        assert!(validate(&json!({"error": {"kind": "domain"}})).is_err());
    }

    #[test]
    fn rejects_unknown_and_extra() {
        assert!(validate(&json!({"command": "nope"})).is_err());
        assert!(validate(&json!({"command": "drag"})).is_err());
        assert!(validate(&json!({"command": "simulate", "model": "slip"})).is_err());
        assert!(
            validate(&json!({"command": "constants", "alpha": 0.0, "lambda_alpha": 1.0, "mu_alpha": 1.0, "x": 1}))
                .is_err()
        );
        assert!(
            validate(&json!({"command": "constants", "alpha": 0.0, "lambda_alpha": 1.0, "mu_alpha": null})).is_ok()
        );
    }
}
