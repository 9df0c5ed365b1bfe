//! JSON reports and their canonical text form.
//!
//! Object keys are sorted and floats are written with 17 significant digits,
//! so identical inputs give byte-identical output.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::certificates::{sweep_cut_pair, Certificate, CERTIFICATE_TOL};
use crate::error::Result;
use crate::exact::fraction_string;
use crate::expansion::{
    min_beta_dir, min_phi, min_phi_dir, min_phi_k_dir, vertex_expansion, CutPair, ExpansionProfile, Limits,
    PartitionFamily,
};
use crate::graph::{Digraph, DEFAULT_EULERIAN_TOL};
use crate::harness::{pair_json, set_json, SPECTRAL_TOL};
use crate::spectra::{singular_values, Spectrum};

/// Writes `v` with sorted keys and `{:.16e}` floats.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, &mut out);
    out
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => out.push_str(&i.to_string()),
            (_, Some(u), _) => out.push_str(&u.to_string()),
            (_, _, Some(f)) if f.is_finite() => out.push_str(&format!("{f:.16e}")),
            _ => out.push_str("null"),
        },
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(x, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(&map[k], out);
            }
            out.push('}');
        }
    }
}

fn exact(x: &BigRational) -> Value {
    json!({"exact": fraction_string(x), "approx": x.to_f64()})
}

pub fn spectrum_json(s: &Spectrum) -> Value {
    json!({"sigmas": s.sigmas, "mus": s.mus, "residual": s.residual, "tol": SPECTRAL_TOL})
}

pub fn certificate_json(c: &Certificate) -> Value {
    json!({
        "S": set_json(&c.cut.s),
        "T": set_json(&c.cut.t),
        "value": fraction_string(&c.cut.value),
        "value_approx": c.cut.value.to_f64(),
        "sigma2": c.sigma2,
        "bound": c.bound,
        "tol": CERTIFICATE_TOL,
        "satisfied": c.satisfied,
    })
}

pub fn profile_json(p: &ExpansionProfile) -> Value {
    json!({
        "bound": p.bound,
        "degree": fraction_string(&p.degree),
        "delta": exact(&p.delta),
        "profile": p.profile.iter().enumerate().map(|(j, m)| json!({
            "max_size": j + 1,
            "value": fraction_string(&m.value),
            "S": set_json(&m.set),
        })).collect::<Vec<_>>(),
        "magnifier": {"value": fraction_string(&p.magnifier.value), "S": set_json(&p.magnifier.set)},
        "sets_visited": p.sets_visited,
    })
}

fn family_json(f: &PartitionFamily) -> Value {
    json!({
        "k": f.k,
        "value": exact(&f.value),
        "pairs": (0..f.k).map(|i| json!({
            "S": set_json(&f.s[i]),
            "T": set_json(&f.t[i]),
            "value": fraction_string(&f.values[i]),
        })).collect::<Vec<_>>(),
    })
}

/// Sets `fields[name]` to the rendered value, or to null with the error text
/// recorded under `null_reasons[name]`.
fn put<T>(fields: &mut Map<String, Value>, reasons: &mut Map<String, Value>, name: &str, r: Result<T>, f: impl FnOnce(&T) -> Value) {
    match r {
        Ok(x) => {
            fields.insert(name.to_string(), f(&x));
        }
        Err(e) => {
            fields.insert(name.to_string(), Value::Null);
            reasons.insert(name.to_string(), Value::String(e.to_string()));
        }
    }
}

fn put_pair(fields: &mut Map<String, Value>, reasons: &mut Map<String, Value>, name: &str, r: Result<CutPair>) {
    match &r {
        Ok(p) => {
            fields.insert(format!("{name}_approx"), json!(p.value.to_f64()));
            fields.insert(format!("{name}_witness"), pair_json(p));
        }
        Err(_) => {
            fields.insert(format!("{name}_approx"), Value::Null);
            fields.insert(format!("{name}_witness"), Value::Null);
        }
    }
    put(fields, reasons, name, r, |p| json!(fraction_string(&p.value)));
}

/// Everything computable for one graph within `limits`.
pub fn analyze(g: &Digraph, limits: &Limits, k: Option<usize>) -> Value {
    let mut fields = Map::new();
    let mut reasons = Map::new();
    fields.insert(
        "graph".into(),
        json!({
            "n": g.n(),
            "directed": !g.is_undirected(),
            "edges": g.edges().filter(|&(u, v, _)| !g.is_undirected() || u <= v).count(),
            "eulerian": g.is_eulerian(DEFAULT_EULERIAN_TOL),
            "regular_degree": g.regular_degree().map(|d| fraction_string(&d)),
        }),
    );
    put(&mut fields, &mut reasons, "spectrum", singular_values(g), spectrum_json);
    put(&mut fields, &mut reasons, "certificate", sweep_cut_pair(g), certificate_json);
    let phi = min_phi(g, limits);
    match &phi {
        Ok(s) => {
            fields.insert("min_phi_approx".into(), json!(s.value.to_f64()));
            fields.insert("min_phi_witness".into(), json!({"S": set_json(&s.set)}));
        }
        Err(_) => {
            fields.insert("min_phi_approx".into(), Value::Null);
            fields.insert("min_phi_witness".into(), Value::Null);
        }
    }
    put(&mut fields, &mut reasons, "min_phi", phi, |s| json!(fraction_string(&s.value)));
    put_pair(&mut fields, &mut reasons, "min_phi_dir", min_phi_dir(g, limits));
    put_pair(&mut fields, &mut reasons, "min_beta_dir", min_beta_dir(g, limits));
    put(
        &mut fields,
        &mut reasons,
        "vertex_expansion",
        vertex_expansion(g, (g.n() / 2).max(1), limits),
        profile_json,
    );
    if let Some(k) = k {
        put(&mut fields, &mut reasons, "phi_k_dir", min_phi_k_dir(g, k, limits), family_json);
    }
    fields.insert("null_reasons".into(), Value::Object(reasons));
    Value::Object(fields)
}

pub fn certify(g: &Digraph) -> Result<Value> {
    Ok(certificate_json(&sweep_cut_pair(g)?))
}
