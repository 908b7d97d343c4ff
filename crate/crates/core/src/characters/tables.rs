//! Character tables as shipped, validated data files.
//!
//! The tables for the built-in groups live under `data/char_tables/` and are
//! parsed and fully validated on every load (class partition, trace-likeness,
//! degree bookkeeping, orthogonality). Nothing downstream trusts the file
//! contents beyond what the validator proves. A regeneration test (ignored by
//! default) rewrites the files from first-principles builders, and a normal
//! test pins the committed bytes to those builders.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::{by_name, FiniteGroup};

use super::{CharRow, CharTable, ClassFunction};

#[derive(Serialize, Deserialize)]
struct CharTableFile {
    group: String,
    classes: Vec<Vec<usize>>,
    chars: Vec<CharRowFile>,
}

#[derive(Serialize, Deserialize)]
struct CharRowFile {
    degree: usize,
    values: Vec<Cyclo>,
}

pub fn builtin_table_names() -> &'static [&'static str] {
    &[
        "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "S3", "D4", "Q8", "S4",
    ]
}

fn builtin_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "Z1" => include_str!("../../data/char_tables/z1.json"),
        "Z2" => include_str!("../../data/char_tables/z2.json"),
        "Z3" => include_str!("../../data/char_tables/z3.json"),
        "Z4" => include_str!("../../data/char_tables/z4.json"),
        "Z5" => include_str!("../../data/char_tables/z5.json"),
        "Z6" => include_str!("../../data/char_tables/z6.json"),
        "Z7" => include_str!("../../data/char_tables/z7.json"),
        "Z8" => include_str!("../../data/char_tables/z8.json"),
        "Z2xZ2" => include_str!("../../data/char_tables/z2xz2.json"),
        "S3" => include_str!("../../data/char_tables/s3.json"),
        "D4" => include_str!("../../data/char_tables/d4.json"),
        "Q8" => include_str!("../../data/char_tables/q8.json"),
        "S4" => include_str!("../../data/char_tables/s4.json"),
        _ => return None,
    })
}

fn normalize_name(name: &str) -> String {
    let upper = name.trim().to_ascii_uppercase();
    match upper.as_str() {
        "V4" | "Z2XZ2" => "Z2xZ2".to_string(),
        other => other.to_string(),
    }
}

/// Load and validate the shipped table for a built-in group.
pub fn builtin_char_table(name: &str) -> Result<CharTable> {
    let norm = normalize_name(name);
    let source = builtin_source(&norm).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "no built-in character table for {name}; supply one with a table file"
        ))
    })?;
    let group = Arc::new(by_name(&norm)?);
    parse_char_table(source, group)
}

/// Load a table from disk; the group is resolved from the file's "group"
/// field against the built-in constructors.
pub fn load_char_table(path: impl AsRef<Path>) -> Result<CharTable> {
    let text = std::fs::read_to_string(path)?;
    let file: CharTableFile = serde_json::from_str(&text)?;
    let group = Arc::new(by_name(&file.group)?);
    parse_char_table(&text, group)
}

/// Parse and validate a character-table file against a concrete group.
pub fn parse_char_table(text: &str, group: Arc<FiniteGroup>) -> Result<CharTable> {
    let file: CharTableFile = serde_json::from_str(text)?;
    let n = group.order();
    let computed = group.conjugacy_classes();
    if file.classes != computed.classes {
        return Err(Error::validation(
            "classes",
            format!(
                "file classes {:?} do not match the computed partition {:?}",
                file.classes, computed.classes
            ),
        ));
    }
    let mut rows = Vec::with_capacity(file.chars.len());
    for (i, row) in file.chars.into_iter().enumerate() {
        if row.values.len() != n {
            return Err(Error::validation(
                "values",
                format!("row {i} has {} values for order {n}", row.values.len()),
            ));
        }
        for class in &computed.classes {
            let first = &row.values[class[0]];
            if class.iter().any(|&g| &row.values[g] != first) {
                return Err(Error::validation(
                    "class constancy",
                    format!("row {i} is not constant on class {class:?}"),
                ));
            }
        }
        let chi = ClassFunction::new(group.clone(), row.values)?;
        rows.push(CharRow {
            degree: row.degree,
            chi,
        });
    }
    CharTable::new(group, rows)
}


#[cfg(test)]
mod tests {
    use super::*;

    /// Rewrites the shipped table files from the builders.
    /// cargo test -p mff-core regen_builtin_tables -- --ignored
    #[test]
    #[ignore]
    fn regen_builtin_tables() {
        for name in builtin_table_names() {
            let text = gen::build(name);
            std::fs::write(gen::file_path(name), text).unwrap();
        }
    }

    #[test]
    fn committed_files_match_builders() {
        for name in builtin_table_names() {
            let expect = gen::build(name);
            let got = builtin_source(&normalize_name(name)).unwrap();
            assert_eq!(
                got, expect,
                "data file for {name} is out of sync; run the regen test"
            );
        }
    }

    #[test]
    fn all_builtin_tables_validate() {
        for name in builtin_table_names() {
            let table = builtin_char_table(name).unwrap();
            let n = table.group().order();
            let degree_sq: usize = table.rows().iter().map(|r| r.degree * r.degree).sum();
            assert_eq!(degree_sq, n, "{name}");
        }
    }

    #[test]
    fn z3_table_is_the_root_of_unity_grid() {
        let table = builtin_char_table("Z3").unwrap();
        for (j, row) in table.rows().iter().enumerate() {
            for g in 0..3 {
                assert_eq!(
                    row.chi.value(g),
                    &Cyclo::zeta(3, (j * g) as i64).unwrap(),
                    "chi_{j}({g})"
                );
            }
        }
    }

    #[test]
    fn s3_degrees() {
        let table = builtin_char_table("S3").unwrap();
        let degrees: Vec<usize> = table.rows().iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
    }

    #[test]
    fn unknown_table_name_rejected() {
        assert!(builtin_char_table("Z9").is_err());
        assert!(builtin_char_table("E8").is_err());
    }

    #[test]
    fn q8_and_d4_tables_coincide_under_canonical_matching() {
        // canonical form: rows sorted by (degree, per-class values as text)
        // with classes sorted by (size, values down the rows)
        let canon = |name: &str| -> Vec<Vec<(usize, String)>> {
            let table = builtin_char_table(name).unwrap();
            let classes = table.group().conjugacy_classes().classes;
            let mut rows: Vec<Vec<(usize, String)>> = table
                .rows()
                .iter()
                .map(|row| {
                    let mut cells: Vec<(usize, String)> = classes
                        .iter()
                        .map(|c| (c.len(), row.chi.value(c[0]).to_string()))
                        .collect();
                    cells.sort();
                    cells
                })
                .collect();
            rows.sort();
            rows
        };
        assert_eq!(canon("Q8"), canon("D4"));
    }

    #[test]
    fn loading_from_disk_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s3.json");
        std::fs::write(&path, builtin_source("S3").unwrap()).unwrap();
        let table = load_char_table(&path).unwrap();
        assert_eq!(table.rows().len(), 3);
    }

    #[test]
    fn corrupted_table_rejected_with_named_axiom() {
        // break one value of the S3 sign character: class constancy fails
        let text = builtin_source("S3").unwrap();
        let mut file: serde_json::Value = serde_json::from_str(text).unwrap();
        file["chars"][1]["values"][1]["coeffs"][0][0] = serde_json::Value::String("7".into());
        let broken = serde_json::to_string(&file).unwrap();
        let group = Arc::new(by_name("S3").unwrap());
        match parse_char_table(&broken, group) {
            Err(Error::Validation { axiom, .. }) => {
                assert_eq!(axiom, "class constancy");
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }
}
