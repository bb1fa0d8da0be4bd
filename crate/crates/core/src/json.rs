//! Fixed float formatting for JSON output: 17 significant digits, so that
//! reports are byte-reproducible and round-trip exactly.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn raw(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("valid JSON number")
}

pub fn f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(format_f64(*x)).serialize(s)
}

pub fn opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => f64(v, s),
        None => s.serialize_none(),
    }
}

pub fn vec_f64<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let body: Vec<String> = xs.iter().map(|&x| format_f64(x)).collect();
    raw(format!("[{}]", body.join(","))).serialize(s)
}
