//! Input documents: `{"x": {...}}` or `{"matrix": [[[re, im]; 8]; 8]}`,
//! optionally with a `label`. Single JSON values, NDJSON streams and
//! top-level arrays of documents are accepted.

use std::fs;
use std::io::{self, Read};
use std::path::Path;

use serde_json::Value;
use xcone::{Complex64, Hermitian64, Tolerance64, XMatrix64};

/// What a document holds once validated.
#[derive(Clone, Debug)]
pub enum Subject {
    X(XMatrix64),
    /// A self-adjoint matrix with entries off the X pattern.
    General(Box<Hermitian64>),
}

#[derive(Clone, Debug)]
pub struct Document {
    /// Source name and 1-based position, e.g. `state.json#2`.
    pub origin: String,
    pub label: Option<String>,
    pub subject: Subject,
}

impl Document {
    pub fn x_part(&self) -> XMatrix64 {
        match &self.subject {
            Subject::X(x) => *x,
            Subject::General(h) => h.x_part(),
        }
    }

    pub fn is_x(&self) -> bool {
        matches!(self.subject, Subject::X(_))
    }

    pub fn name(&self) -> &str {
        self.label.as_deref().unwrap_or(&self.origin)
    }
}

fn read_source(path: &Path) -> Result<(String, String), String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("stdin: {e}"))?;
        return Ok(("stdin".to_string(), text));
    }
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((path.display().to_string(), text))
}

/// Reads every document from `paths` (stdin when empty), in order.
pub fn load(paths: &[std::path::PathBuf], tol: &Tolerance64) -> Result<Vec<Document>, String> {
    let stdin = [std::path::PathBuf::from("-")];
    let paths = if paths.is_empty() { &stdin[..] } else { paths };
    let mut docs = Vec::new();
    for path in paths {
        let (source, text) = read_source(path)?;
        let mut values = Vec::new();
        for value in serde_json::Deserializer::from_str(&text).into_iter::<Value>() {
            match value.map_err(|e| format!("{source}: malformed JSON: {e}"))? {
                Value::Array(items) => values.extend(items),
                v => values.push(v),
            }
        }
        if values.is_empty() {
            return Err(format!("{source}: no documents"));
        }
        for (k, value) in values.into_iter().enumerate() {
            let origin = format!("{source}#{}", k + 1);
            let doc = parse_document(value, origin.clone(), tol).map_err(|e| format!("{origin}: {e}"))?;
            docs.push(doc);
        }
    }
    Ok(docs)
}

pub fn parse_document(value: Value, origin: String, tol: &Tolerance64) -> Result<Document, String> {
    let Value::Object(mut map) = value else {
        return Err("expected a JSON object".to_string());
    };
    let label = match map.remove("label") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s),
        Some(other) => Some(other.to_string()),
    };
    let subject = match (map.remove("x"), map.remove("matrix")) {
        (Some(x), None) => Subject::X(parse_x(x)?),
        (None, Some(m)) => parse_matrix(m, tol)?,
        (Some(_), Some(_)) => return Err("document has both \"x\" and \"matrix\"; give exactly one".to_string()),
        (None, None) => return Err("document needs an \"x\" or a \"matrix\" field".to_string()),
    };
    Ok(Document { origin, label, subject })
}

fn parse_x(value: Value) -> Result<XMatrix64, String> {
    let x: XMatrix64 = serde_json::from_value(value).map_err(|e| format!("bad \"x\": {e}"))?;
    XMatrix64::new(x.a, x.b, x.z).map_err(|e| e.to_string())
}

fn parse_matrix(value: Value, tol: &Tolerance64) -> Result<Subject, String> {
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_value(value).map_err(|e| format!("bad \"matrix\": {e}"))?;
    if rows.len() != 8 {
        return Err(format!("\"matrix\" must have 8 rows, found {}", rows.len()));
    }
    let mut entries = [[Complex64::new(0.0, 0.0); 8]; 8];
    for (i, row) in rows.iter().enumerate() {
        if row.len() != 8 {
            return Err(format!(
                "\"matrix\" row {} must have 8 entries, found {}",
                i + 1,
                row.len()
            ));
        }
        for (j, [re, im]) in row.iter().enumerate() {
            entries[i][j] = Complex64::new(*re, *im);
        }
    }
    let h = Hermitian64::new(entries, tol).map_err(|e| e.to_string())?;
    Ok(if h.is_x_shaped(tol) {
        Subject::X(h.x_part())
    } else {
        Subject::General(Box::new(h))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn tol() -> Tolerance64 {
        Tolerance64::default()
    }

    #[test]
    fn x_form() {
        let v =
            json!({"x": {"a": [1, 0, 0, 0], "b": [1, 0, 0, 0], "z": [[1, 0], [0, 0], [0, 0], [0, 0]]}, "label": "ghz"});
        let d = parse_document(v, "t#1".into(), &tol()).unwrap();
        assert_eq!(d.name(), "ghz");
        assert_eq!(d.x_part(), XMatrix64::ghz());
    }

    #[test]
    fn matrix_form_x_shaped_is_x() {
        let m = XMatrix64::ghz().embed();
        let rows: Vec<Vec<[f64; 2]>> = m
            .entries()
            .iter()
            .map(|r| r.iter().map(|c| [c.re, c.im]).collect())
            .collect();
        let d = parse_document(json!({ "matrix": rows }), "t#1".into(), &tol()).unwrap();
        assert!(d.is_x());
    }

    #[test]
    fn rejects_both_or_neither() {
        let x = json!({"a": [0, 0, 0, 0], "b": [0, 0, 0, 0], "z": [[0, 0], [0, 0], [0, 0], [0, 0]]});
        assert!(parse_document(json!({"x": x.clone(), "matrix": []}), "t".into(), &tol()).is_err());
        assert!(parse_document(json!({"label": "nothing"}), "t".into(), &tol()).is_err());
        assert!(parse_document(json!([1, 2]), "t".into(), &tol()).is_err());
    }

    #[test]
    fn shape_errors() {
        let e = parse_document(json!({ "matrix": vec![vec![[0.0, 0.0]; 8]; 7] }), "t".into(), &tol()).unwrap_err();
        assert!(e.contains("8 rows"), "{e}");
        let e = parse_document(
            json!({"x": {"a": [0, 0, 0], "b": [0, 0, 0, 0], "z": [[0, 0], [0, 0], [0, 0], [0, 0]]}}),
            "t".into(),
            &tol(),
        )
        .unwrap_err();
        assert!(e.contains("bad \"x\""), "{e}");
    }

    #[test]
    fn non_self_adjoint_names_entries() {
        let mut rows = vec![vec![[0.0, 0.0]; 8]; 8];
        rows[1][4] = [1.0, 0.0];
        let e = parse_document(json!({ "matrix": rows }), "t".into(), &tol()).unwrap_err();
        assert!(e.contains("(2, 5)") && e.contains("(5, 2)"), "{e}");
    }
}
