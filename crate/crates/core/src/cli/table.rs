use clap::ValueEnum;
use serde_json::{json, Value};

use crate::bigpoly::MPoly;
use crate::error::{invalid, Result};
use crate::qkernel::{galois, galois_general, qbinomial};
use crate::rogers_szego::rs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Qbinom,
    Galois,
    Gengal,
    Rs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Qbinom => "qbinom",
            TableKind::Galois => "galois",
            TableKind::Gengal => "gengal",
            TableKind::Rs => "rs",
        }
    }

    /// Largest accepted `(max_n, max_m)`.
    pub fn hard_caps(self) -> (usize, usize) {
        match self {
            TableKind::Qbinom | TableKind::Galois => (40, 0),
            TableKind::Gengal => (16, 8),
            TableKind::Rs => (10, 5),
        }
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

fn render(p: &MPoly, q: Option<i64>) -> Result<Value> {
    Ok(match q {
        Some(q) => json!(p.eval_q(q)?.to_string()),
        None => json!(p.to_string()),
    })
}

/// Values over the grid, rows in lexicographic parameter order.
/// `gengal` and `rs` run over `0 <= n <= max_n`, `2 <= m <= max_m`.
pub fn build_table(kind: TableKind, max_n: usize, max_m: usize, q: Option<i64>) -> Result<Table> {
    let (cap_n, cap_m) = kind.hard_caps();
    if max_n > cap_n {
        return Err(invalid(format!("{} table: max-n = {max_n} exceeds the cap {cap_n}", kind.name())));
    }
    if cap_m > 0 && max_m > cap_m {
        return Err(invalid(format!("{} table: max-m = {max_m} exceeds the cap {cap_m}", kind.name())));
    }
    if kind == TableKind::Rs && q.is_some() {
        return Err(invalid("rs values are multivariate; --q is not supported"));
    }
    let mut rows = Vec::new();
    let columns = match kind {
        TableKind::Qbinom => {
            for n in 0..=max_n {
                for k in 0..=n {
                    rows.push(vec![json!(n), json!(k), render(&qbinomial(n, k)?, q)?]);
                }
            }
            vec!["n", "k", "value"]
        }
        TableKind::Galois => {
            for n in 0..=max_n {
                rows.push(vec![json!(n), render(&galois(n), q)?]);
            }
            vec!["n", "value"]
        }
        TableKind::Gengal => {
            for n in 0..=max_n {
                for m in 2..=max_m {
                    rows.push(vec![json!(n), json!(m), render(&galois_general(n, m)?, q)?]);
                }
            }
            vec!["n", "m", "value"]
        }
        TableKind::Rs => {
            for n in 0..=max_n {
                for m in 2..=max_m {
                    rows.push(vec![json!(n), json!(m), render(rs(n, m)?.value(), None)?]);
                }
            }
            vec!["n", "m", "value"]
        }
    };
    Ok(Table { columns, rows })
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, kind: TableKind, inputs: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(r.iter().cloned())
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "schema": super::record::SCHEMA_VERSION,
            "kind": "table",
            "table": kind.name(),
            "inputs": inputs,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("tables serialize");
        s.push('\n');
        s
    }
}
