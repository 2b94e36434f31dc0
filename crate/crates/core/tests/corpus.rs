//! Replays the fuzz corpus seeds through the same checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use hcmc_core::export::formats::{read_profile_csv, read_profile_json, same_float, write_profile_csv};
use hcmc_core::export::grid::{parse_grid, MAX_GRID_POINTS};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn grid_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("grid_spec") {
        let text = std::str::from_utf8(&data).unwrap();
        if let Ok(grid) = parse_grid(text) {
            accepted += 1;
            assert!(grid.len() <= MAX_GRID_POINTS, "{name}");
            assert_eq!(grid.points().len(), grid.len(), "{name}");
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn csv_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("csv_profile") {
        let Ok(rows) = read_profile_csv(data.as_slice()) else { continue };
        accepted += 1;
        let mut buf = Vec::new();
        write_profile_csv(&mut buf, &rows).unwrap();
        let again = read_profile_csv(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), again.len(), "{name}");
        for (a, b) in rows.iter().zip(&again) {
            assert!(same_float(a.lambda_ddot, b.lambda_ddot) && same_float(a.k_tan, b.k_tan), "{name}");
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn json_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("json_profile") {
        let Ok(doc) = read_profile_json(std::str::from_utf8(&data).unwrap()) else { continue };
        accepted += 1;
        let again = read_profile_json(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc.samples.len(), again.samples.len(), "{name}");
        for (a, b) in doc.samples.iter().zip(&again.samples) {
            assert!(same_float(a.k_tan, b.k_tan) && same_float(a.lambda, b.lambda), "{name}");
        }
    }
    assert_eq!(accepted, 3);
}
