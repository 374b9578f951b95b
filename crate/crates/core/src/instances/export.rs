use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::netcore::BreakpointFunction;

/// `vertex,breakpoint` with 1-based vertex ids and `inf` for vertices that
/// never leave the sink side.
pub fn export_breakpoints_csv(beta: &BreakpointFunction) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["vertex", "breakpoint"]).expect("write to memory");
    for (v, &b) in beta.beta.iter().enumerate() {
        let value = if b == f64::INFINITY { "inf".to_string() } else { b.to_string() };
        writer.write_record([(v + 1).to_string(), value]).expect("write to memory");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("ascii output")
}

/// Reads a breakpoint CSV. Rows must list vertices `1..=n` in order.
pub fn parse_breakpoints_csv(text: &str, lambda_min: f64) -> Result<BreakpointFunction, FormatError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| FormatError::Invalid(e.to_string()))?;
    if headers.len() != 2 || &headers[0] != "vertex" || &headers[1] != "breakpoint" {
        return Err(FormatError::Invalid("expected header `vertex,breakpoint`".into()));
    }
    let mut beta = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let line = row + 2;
        let record = record.map_err(|e| FormatError::Invalid(format!("line {line}: {e}")))?;
        if record.len() != 2 {
            return Err(FormatError::Invalid(format!("line {line}: expected two fields")));
        }
        let v: usize = record[0]
            .parse()
            .map_err(|_| FormatError::Invalid(format!("line {line}: invalid vertex `{}`", &record[0])))?;
        if v != beta.len() + 1 {
            return Err(FormatError::Invalid(format!("line {line}: expected vertex {}", beta.len() + 1)));
        }
        let value = match &record[1] {
            "inf" => f64::INFINITY,
            other => other
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| FormatError::Invalid(format!("line {line}: invalid breakpoint `{other}`")))?,
        };
        beta.push(value);
    }
    Ok(BreakpointFunction::new(lambda_min, beta))
}

/// The flat stats object written next to a solution. Counters an algorithm
/// does not produce are zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub breakpoints: usize,
    pub adoptions: usize,
    pub bottleneck_edges: usize,
    pub init_ms: f64,
    pub loop_ms: f64,
    pub contracted_vertices: usize,
    pub contraction_ms: f64,
}

impl RunStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }
}
