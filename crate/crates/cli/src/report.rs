use serde_json::{Map, Value};

/// An ordered list of `key: value` entries.
#[derive(Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.into(), value.into()));
        self
    }

    pub fn list<I, S>(&mut self, key: impl Into<String>, items: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Value>,
    {
        let v: Vec<Value> = items.into_iter().map(Into::into).collect();
        self.put(key, Value::Array(v))
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&scalar(v));
            out.push('\n');
        }
        out
    }

    /// Keys keep their order; repeated keys collect into an array.
    pub fn json(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.entries {
            let repeated = self.entries.iter().filter(|(j, _)| j == k).count() > 1;
            if repeated {
                let slot = map.entry(k.clone()).or_insert_with(|| Value::Array(Vec::new()));
                if let Value::Array(a) = slot {
                    a.push(v.clone());
                }
            } else {
                map.insert(k.clone(), v.clone());
            }
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json");
        s.push('\n');
        s
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.is_empty() => "none".into(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}
