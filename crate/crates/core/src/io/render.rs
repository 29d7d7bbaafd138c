//! Plain-text rendering of output documents.

use serde_json::Value;

use super::cli::Command;

pub const NO_LEVELS: &str = "no boundary levels";

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|j| rows.iter().map(|r| r[j].chars().count()).chain([header[j].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header);
    out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn object_table(items: &[Value]) -> String {
    let header: Vec<String> = match items.first() {
        Some(Value::Object(o)) => o.keys().cloned().collect(),
        _ => return items.iter().map(|v| format!("  {}\n", cell(v))).collect(),
    };
    let rows: Vec<Vec<String>> = items.iter().map(|it| header.iter().map(|k| cell(&it[k])).collect()).collect();
    table(&header, &rows)
}

fn generic(v: &Value) -> String {
    let Value::Object(map) = v else {
        return format!("{}\n", cell(v));
    };
    let mut out = String::new();
    for (k, val) in map {
        match val {
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                out.push_str(&format!("{k}:\n"));
                out.push_str(&object_table(items));
            }
            _ => out.push_str(&format!("{k}: {}\n", cell(val))),
        }
    }
    out
}

fn boundary(v: &Value) -> String {
    let mut out = format!("center: {}\nnilpotency k: {}\n", cell(&v["center"]), cell(&v["nilpotency_k"]));
    let levels = v["levels"].as_array().cloned().unwrap_or_default();
    if levels.is_empty() {
        out.push_str(NO_LEVELS);
        out.push('\n');
    } else {
        let header: Vec<String> =
            ["l", "weight", "dim Gr", "dim P", "parity", "F", "h", "polarized", "signature", "dim D_l"].iter().map(|s| s.to_string()).collect();
        let rows: Vec<Vec<String>> = levels
            .iter()
            .map(|lv| {
                let f = lv["f"]
                    .as_object()
                    .map(|o| o.iter().map(|(p, d)| format!("f^{p}={d}")).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default();
                let sig = match &lv["signature"] {
                    Value::Array(a) if a.len() == 2 => format!("({},{})", a[0], a[1]),
                    _ => "-".into(),
                };
                vec![
                    cell(&lv["l"]),
                    cell(&lv["weight"]),
                    cell(&lv["gr_dim"]),
                    cell(&lv["primitive_dim"]),
                    cell(&lv["parity"]),
                    f,
                    cell(&lv["hodge_numbers"]),
                    cell(&lv["polarized"]),
                    sig,
                    cell(&lv["domain_dim"]),
                ]
            })
            .collect();
        out.push_str(&table(&header, &rows));
    }
    out.push_str(&format!("lefschetz: {}\n", cell(&v["lefschetz"])));
    if let Value::Object(fib) = &v["fibration"] {
        for (k, d) in fib {
            out.push_str(&format!("{k}: {}\n", cell(d)));
        }
    }
    out.push_str(&format!(
        "g_inf moves basepoint: {}\ng_inf trivial on Gr: {}\n",
        cell(&v["g_inf_moves_basepoint"]),
        cell(&v["g_inf_trivial_on_gr"])
    ));
    out
}

/// Renders the JSON output of `command` as text.
pub fn render_text(command: Command, json: &str) -> String {
    let v: Value = serde_json::from_str(json).expect("output is valid JSON");
    match command {
        Command::BoundaryReport => boundary(&v),
        _ => generic(&v),
    }
}
