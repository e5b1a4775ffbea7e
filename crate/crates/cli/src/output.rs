//! Output encodings: CSV with 17-significant-digit decimals (bit-exact
//! round trips) on stdout, JSON scalars with an attached metadata object,
//! run metadata on stderr for CSV so pipes stay clean.

use serde::Serialize;

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One CSV value: 17 significant digits, which parses back to the exact
/// same f64 bits.
pub fn csv_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn emit_csv(
    header: &[&str],
    rows: impl Iterator<Item = Vec<f64>>,
    meta: &[(String, String)],
) {
    println!("{}", header.join(","));
    for row in rows {
        let line: Vec<String> = row.into_iter().map(csv_value).collect();
        println!("{}", line.join(","));
    }
    eprintln!("{}", meta_json(meta));
}

pub fn emit_json<T: Serialize>(result: &T, meta: &[(String, String)]) {
    let mut value = serde_json::to_value(result).expect("serializable result");
    if !value.is_object() {
        value = serde_json::json!({ "value": value });
    }
    let map = value.as_object_mut().expect("object result");
    map.insert(
        "meta".to_string(),
        serde_json::from_str(&meta_json(meta)).expect("valid meta"),
    );
    println!("{}", serde_json::Value::Object(map.clone()));
}

fn meta_json(meta: &[(String, String)]) -> String {
    let map: serde_json::Map<String, serde_json::Value> = meta
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    serde_json::Value::Object(map).to_string()
}
