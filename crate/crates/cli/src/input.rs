use num_bigint::BigInt;
use serde_json::Value;

use concord_core::SeifertMatrix;

use crate::CliError;

/// Parses `{"seifert": [[...], ...]}` or a bare `[[...], ...]`. Entries may be
/// JSON integers of any size or decimal strings.
pub fn parse_seifert(text: &str) -> Result<(Value, SeifertMatrix), CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::InvalidInput(format!("input is not valid JSON: {e}")))?;
    let rows = match &value {
        Value::Object(map) => map
            .get("seifert")
            .ok_or_else(|| CliError::InvalidInput("missing \"seifert\" field".into()))?,
        Value::Array(_) => &value,
        _ => {
            return Err(CliError::InvalidInput(
                "expected an object with \"seifert\" or an array of rows".into(),
            ))
        }
    };
    let rows = rows
        .as_array()
        .ok_or_else(|| CliError::InvalidInput("\"seifert\" must be an array of rows".into()))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::InvalidInput(format!("row {i} is not an array")))?;
        let entries = row
            .iter()
            .enumerate()
            .map(|(j, x)| {
                parse_integer(x).ok_or_else(|| {
                    CliError::InvalidInput(format!("entry ({i}, {j}) = {x} is not an integer"))
                })
            })
            .collect::<Result<Vec<BigInt>, _>>()?;
        parsed.push(entries);
    }
    let v = SeifertMatrix::from_rows(parsed).map_err(|e| CliError::InvalidInput(e.to_string()))?;
    Ok((value, v))
}

fn parse_integer(x: &Value) -> Option<BigInt> {
    match x {
        Value::Number(n) => n.to_string().parse().ok(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}
