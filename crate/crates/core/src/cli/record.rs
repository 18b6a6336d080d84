use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
}

/// One line of JSON output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: u32,
    pub kind: String,
    pub inputs: BTreeMap<String, Value>,
    pub value: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<Value>,
}

impl OutputRecord {
    pub fn new(kind: &str, inputs: BTreeMap<String, Value>, value: Value) -> Self {
        OutputRecord {
            schema: SCHEMA_VERSION,
            kind: kind.to_string(),
            inputs,
            value,
            status: None,
            flags: None,
        }
    }

    pub fn with_status(mut self, ok: bool) -> Self {
        self.status = Some(if ok { Status::Ok } else { Status::Failed });
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Builds an `inputs` map from key/value pairs.
macro_rules! inputs {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut map = std::collections::BTreeMap::<String, serde_json::Value>::new();
        $(map.insert($k.to_string(), serde_json::json!($v));)*
        map
    }};
}
pub(crate) use inputs;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let rec = OutputRecord::new("qbinom", inputs!("n" => 4, "k" => 2), Value::from("1 + q"))
            .with_status(true);
        let line = rec.to_json_line();
        assert_eq!(
            line,
            r#"{"schema":1,"kind":"qbinom","inputs":{"k":2,"n":4},"value":"1 + q","status":"ok"}"#
        );
        let back: OutputRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rec);
    }
}
