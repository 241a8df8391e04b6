//! Matrix files and number formatting.
//!
//! A matrix file is a JSON document
//! `{"field": "real"|"complex", "rows": n, "cols": m, "data": [...]}` where
//! `data` lists the entries row by row, either flat or as nested rows. Real
//! entries are numbers; complex entries are `[re, im]` pairs.

use std::path::Path;

use normbound::{Complex64, Field, Matrix};
use serde_json::Value;

use crate::CliError;

/// `%.17g`: 17 significant digits, enough to read back the same double.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        trim_zeros(format!("{:.*}", (16 - exp) as usize, x))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// A complex number as `re+imi` (or just `re` when `field` is real).
pub fn fmt_scalar(z: Complex64, field: Field) -> String {
    match field {
        Field::Real => fmt_g17(z.re),
        Field::Complex => {
            let im = fmt_g17(z.im);
            let sep = if im.starts_with('-') { "" } else { "+" };
            format!("{}{sep}{im}i", fmt_g17(z.re))
        }
    }
}

pub fn fmt_vector(x: &[Complex64], field: Field) -> String {
    let parts: Vec<String> = x.iter().map(|z| fmt_scalar(*z, field)).collect();
    format!("[{}]", parts.join(", "))
}

/// Entries as JSON: numbers for a real field, `[re, im]` pairs otherwise.
pub fn vector_json(x: &[Complex64], field: Field) -> Value {
    Value::Array(
        x.iter()
            .map(|z| match field {
                Field::Real => Value::from(z.re),
                Field::Complex => Value::from(vec![z.re, z.im]),
            })
            .collect(),
    )
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn dimension(doc: &Value, key: &str) -> Result<usize, CliError> {
    let v = doc.get(key).ok_or_else(|| bad(format!("missing \"{key}\"")))?;
    match v.as_u64() {
        Some(k) if k > 0 => Ok(k as usize),
        _ => Err(bad(format!("\"{key}\" must be a positive integer"))),
    }
}

fn number(v: &Value) -> Result<f64, CliError> {
    let x = v.as_f64().ok_or_else(|| bad(format!("expected a number, got {v}")))?;
    if !x.is_finite() {
        return Err(bad("entries must be finite"));
    }
    Ok(x)
}

fn entry(v: &Value, field: Field) -> Result<Complex64, CliError> {
    match field {
        Field::Real => Ok(Complex64::new(number(v)?, 0.0)),
        Field::Complex => match v.as_array().map(Vec::as_slice) {
            Some([re, im]) => Ok(Complex64::new(number(re)?, number(im)?)),
            _ => Err(bad(format!("complex entries must be [re, im] pairs, got {v}"))),
        },
    }
}

/// Whether `v` is one entry (as opposed to a row of entries).
fn is_entry(v: &Value, field: Field) -> bool {
    match field {
        Field::Real => v.is_number(),
        Field::Complex => v.as_array().is_some_and(|a| a.first().is_some_and(Value::is_number)),
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(format!("not valid JSON: {e}")))?;
    let field = match doc.get("field").and_then(Value::as_str) {
        Some("real") => Field::Real,
        Some("complex") => Field::Complex,
        _ => return Err(bad("\"field\" must be \"real\" or \"complex\"")),
    };
    let (n, m) = (dimension(&doc, "rows")?, dimension(&doc, "cols")?);
    let data = doc.get("data").and_then(Value::as_array).ok_or_else(|| bad("\"data\" must be an array"))?;
    let flat: Vec<&Value> = if data.first().is_some_and(|v| is_entry(v, field)) {
        data.iter().collect()
    } else {
        if data.len() != n {
            return Err(bad(format!("expected {n} rows, got {}", data.len())));
        }
        let mut out = Vec::with_capacity(n * m);
        for row in data {
            let row = row.as_array().ok_or_else(|| bad("rows must be arrays"))?;
            if row.len() != m {
                return Err(bad(format!("expected {m} entries per row, got {}", row.len())));
            }
            out.extend(row);
        }
        out
    };
    if flat.len() != n * m {
        return Err(bad(format!("expected {} entries, got {}", n * m, flat.len())));
    }
    let entries = flat.into_iter().map(|v| entry(v, field)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::new(n, m, entries, field)?)
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    parse_matrix(&text)
}

/// The matrix file for `a`, flat row-major data, numbers to 17 digits.
pub fn matrix_json(a: &Matrix) -> String {
    let entries: Vec<String> = a
        .data()
        .iter()
        .map(|z| match a.field() {
            Field::Real => fmt_g17(z.re),
            Field::Complex => format!("[{}, {}]", fmt_g17(z.re), fmt_g17(z.im)),
        })
        .collect();
    format!(
        "{{\"field\": \"{}\", \"rows\": {}, \"cols\": {}, \"data\": [{}]}}\n",
        a.field().as_str(),
        a.rows(),
        a.cols(),
        entries.join(", ")
    )
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}
