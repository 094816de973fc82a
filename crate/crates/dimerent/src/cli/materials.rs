//! Material parameter registry: built-in compounds plus an optional
//! user-supplied JSON file whose entries shadow built-ins by name.

use std::path::Path;

use serde::{Deserialize, Serialize};

/// One named parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialRecord {
    pub name: String,
    /// Exchange coupling in Kelvin units; negative is antiferromagnetic.
    pub j_kelvin: f64,
    pub g_factor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum RegistryError {
    #[error("cannot read registry {path}: {source}")]
    Unreadable {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed registry {path}: {detail}")]
    Malformed { path: String, detail: String },
}

/// Compounds shipped with the tool.
pub fn builtin() -> Vec<MaterialRecord> {
    vec![MaterialRecord {
        name: "nitrosyl-iron-complex".to_string(),
        j_kelvin: -136.0,
        g_factor: 2.0,
        note: Some(
            "binuclear iron nitrosyl complex Fe2(SC3H5N2)2(NO)4, \
             an antiferromagnetic spin-1/2 dimer"
                .to_string(),
        ),
    }]
}

/// Built-ins merged with an optional user file (JSON array of records).
/// A user entry with a built-in's name replaces it in place; new names are
/// appended in file order.
pub fn load_registry(path: Option<&Path>) -> Result<Vec<MaterialRecord>, RegistryError> {
    let mut registry = builtin();
    let Some(path) = path else {
        return Ok(registry);
    };
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Unreadable {
        path: shown.clone(),
        source,
    })?;
    let user: Vec<MaterialRecord> =
        serde_json::from_str(&text).map_err(|e| RegistryError::Malformed {
            path: shown.clone(),
            detail: e.to_string(),
        })?;
    for (k, record) in user.iter().enumerate() {
        validate(record).map_err(|detail| RegistryError::Malformed {
            path: shown.clone(),
            detail: format!("entry {}: {detail}", k + 1),
        })?;
        if let Some(earlier) = user[..k].iter().position(|r| r.name == record.name) {
            return Err(RegistryError::Malformed {
                path: shown,
                detail: format!(
                    "entry {} repeats name {:?} (first used by entry {})",
                    k + 1,
                    record.name,
                    earlier + 1
                ),
            });
        }
    }
    for record in user {
        match registry.iter_mut().find(|r| r.name == record.name) {
            Some(slot) => *slot = record,
            None => registry.push(record),
        }
    }
    Ok(registry)
}

fn validate(record: &MaterialRecord) -> Result<(), String> {
    if record.name.trim().is_empty() {
        return Err("field \"name\" must be non-empty".to_string());
    }
    if !record.j_kelvin.is_finite() {
        return Err(format!(
            "field \"j_kelvin\" must be finite, got {}",
            record.j_kelvin
        ));
    }
    if !(record.g_factor.is_finite() && record.g_factor > 0.0) {
        return Err(format!(
            "field \"g_factor\" must be a positive finite number, got {}",
            record.g_factor
        ));
    }
    Ok(())
}

/// Exact-name lookup.
pub fn find<'a>(registry: &'a [MaterialRecord], name: &str) -> Option<&'a MaterialRecord> {
    registry.iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn registry_file(json: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().expect("temp file");
        file.write_all(json.as_bytes()).expect("write");
        file
    }

    #[test]
    fn builtin_has_the_reference_compound() {
        let registry = builtin();
        let rec = find(&registry, "nitrosyl-iron-complex").expect("present");
        assert_eq!(rec.j_kelvin, -136.0);
        assert_eq!(rec.g_factor, 2.0);
        assert!(rec.note.is_some());
    }

    #[test]
    fn no_file_yields_builtins() {
        assert_eq!(load_registry(None).unwrap(), builtin());
    }

    #[test]
    fn user_entries_shadow_builtins_by_name() {
        let file = registry_file(
            r#"[
                {"name": "nitrosyl-iron-complex", "j_kelvin": -100.0, "g_factor": 2.2},
                {"name": "lab-sample-7", "j_kelvin": -5.0, "g_factor": 2.0, "note": "test rig"}
            ]"#,
        );
        let registry = load_registry(Some(file.path())).unwrap();
        assert_eq!(registry.len(), 2);
        assert_eq!(registry[0].name, "nitrosyl-iron-complex");
        assert_eq!(registry[0].j_kelvin, -100.0);
        assert_eq!(registry[0].g_factor, 2.2);
        assert_eq!(registry[0].note, None);
        assert_eq!(registry[1].name, "lab-sample-7");
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let err = load_registry(Some(Path::new("/nonexistent/registry.json"))).unwrap_err();
        assert!(matches!(err, RegistryError::Unreadable { .. }));
    }

    #[test]
    fn truncated_json_reports_the_position() {
        let file = registry_file(r#"[{"name": "x", "j_kelvin": -1"#);
        let err = load_registry(Some(file.path())).unwrap_err();
        let RegistryError::Malformed { detail, .. } = err else {
            panic!("expected a malformed-registry error");
        };
        assert!(detail.contains("line"), "no position in {detail:?}");
    }

    #[test]
    fn missing_field_is_named() {
        let file = registry_file(r#"[{"name": "x", "g_factor": 2.0}]"#);
        let err = load_registry(Some(file.path())).unwrap_err().to_string();
        assert!(err.contains("j_kelvin"), "field not named in {err:?}");
    }

    #[test]
    fn unknown_field_is_named() {
        let file =
            registry_file(r#"[{"name": "x", "j_kelvin": -1.0, "g_factor": 2.0, "jkelvin": 3}]"#);
        let err = load_registry(Some(file.path())).unwrap_err().to_string();
        assert!(err.contains("jkelvin"), "field not named in {err:?}");
    }

    #[test]
    fn nonpositive_g_factor_is_rejected() {
        let file = registry_file(r#"[{"name": "x", "j_kelvin": -1.0, "g_factor": 0.0}]"#);
        let err = load_registry(Some(file.path())).unwrap_err().to_string();
        assert!(err.contains("g_factor"), "field not named in {err:?}");
        assert!(err.contains("entry 1"), "entry not named in {err:?}");
    }

    #[test]
    fn blank_name_is_rejected() {
        let file = registry_file(r#"[{"name": "  ", "j_kelvin": -1.0, "g_factor": 2.0}]"#);
        let err = load_registry(Some(file.path())).unwrap_err().to_string();
        assert!(err.contains("name"), "field not named in {err:?}");
    }

    #[test]
    fn repeated_names_are_rejected() {
        let file = registry_file(
            r#"[
                {"name": "x", "j_kelvin": -1.0, "g_factor": 2.0},
                {"name": "x", "j_kelvin": -2.0, "g_factor": 2.0}
            ]"#,
        );
        let err = load_registry(Some(file.path())).unwrap_err().to_string();
        assert!(err.contains("repeats"), "duplicate not reported in {err:?}");
    }

    #[test]
    fn lookup_is_exact() {
        let registry = builtin();
        assert!(find(&registry, "nitrosyl-iron-complex").is_some());
        assert!(find(&registry, "Nitrosyl-Iron-Complex").is_none());
        assert!(find(&registry, "nitrosyl").is_none());
    }
}
