//! End-to-end tests against the compiled binary: output schemas, exit
//! codes, and the CSV round-trip contract.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn kspectral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kspectral"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited")
}

/// Parses CSV text into (header, rows) for schema checks.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .expect("csv header")
        .iter()
        .map(str::to_string)
        .collect();
    let rows = reader
        .records()
        .map(|record| {
            record
                .expect("csv row")
                .iter()
                .map(str::to_string)
                .collect()
        })
        .collect();
    (header, rows)
}

fn scratch_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("kspectral-cli-{}-{tag}", std::process::id()))
}

#[test]
fn certify_csv_matches_the_certificate_oracle() {
    let out = kspectral(&["certify", "--R", "2", "--n", "2", "--m", "10", "--format", "csv"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(
        header,
        [
            "R",
            "n",
            "m",
            "h_norm",
            "image_norm",
            "ratio",
            "closed_form",
            "paper_chain_value",
            "window_lo",
            "window_hi"
        ]
    );
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert_eq!(row[0], "2.0000000000000000e0");
    assert_eq!(row[1], "2");
    assert_eq!(row[2], "10");
    let ratio: f64 = row[5].parse().unwrap();
    assert!((ratio - 1.8776878709530627).abs() < 1e-12);
    let h_norm: f64 = row[3].parse().unwrap();
    assert!((h_norm - 101f64.sqrt() / 10.0).abs() < 1e-14);
    assert_eq!(row[8], "-2");
    assert_eq!(row[9], "402");
}

#[test]
fn certify_json_carries_the_same_keys_as_csv() {
    let out = kspectral(&["certify", "--R", "2", "--n", "2", "--m", "10", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let object = value.as_object().expect("single record is one object");
    let mut keys: Vec<&str> = object.keys().map(String::as_str).collect();
    keys.sort_unstable();
    let mut expected = vec![
        "R",
        "n",
        "m",
        "h_norm",
        "image_norm",
        "ratio",
        "closed_form",
        "paper_chain_value",
        "window_lo",
        "window_hi",
    ];
    expected.sort_unstable();
    assert_eq!(keys, expected);
    assert!((object["ratio"].as_f64().unwrap() - 1.8776878709530627).abs() < 1e-12);
    assert_eq!(object["n"].as_u64(), Some(2));
    assert_eq!(object["window_lo"].as_i64(), Some(-2));
}

#[test]
fn certify_rejects_each_bad_parameter_with_exit_2() {
    let out = kspectral(&["certify", "--R", "1", "--n", "2", "--m", "10"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("R must exceed 1"));

    let out = kspectral(&["certify", "--R", "2", "--n", "1", "--m", "10"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("n must be >= 2"));

    let out = kspectral(&["certify", "--R", "2", "--n", "2", "--m", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("m must be >= 3"));

    let out = kspectral(&["certify", "--R", "zebra", "--n", "2", "--m", "10"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_integer_range_is_inclusive_and_ratio_increases() {
    let out = kspectral(&["sweep", "--R", "2", "--n", "2..10", "--m", "100"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header.last().map(String::as_str), Some("error"));
    assert_eq!(rows.len(), 9);
    let ratios: Vec<f64> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    for pair in ratios.windows(2) {
        assert!(pair[1] > pair[0], "ratio must increase: {pair:?}");
    }
    assert!(rows.iter().all(|r| r[10].is_empty()));
}

#[test]
fn sweep_real_range_includes_both_endpoints() {
    let out = kspectral(&["sweep", "--R", "1.5:3:0.5", "--n", "4", "--m", "10"]);
    assert_eq!(code(&out), 0);
    let (_, rows) = parse_csv(&stdout(&out));
    let radii: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(radii, [1.5, 2.0, 2.5, 3.0]);
}

#[test]
fn sweep_rows_come_in_lexicographic_order() {
    let out = kspectral(&["sweep", "--R", "2,1.5", "--n", "3,2", "--m", "10,3"]);
    assert_eq!(code(&out), 0);
    let (_, rows) = parse_csv(&stdout(&out));
    let triples: Vec<(f64, u32, u32)> = rows
        .iter()
        .map(|r| {
            (
                r[0].parse().unwrap(),
                r[1].parse().unwrap(),
                r[2].parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        triples,
        [
            (1.5, 2, 3),
            (1.5, 2, 10),
            (1.5, 3, 3),
            (1.5, 3, 10),
            (2.0, 2, 3),
            (2.0, 2, 10),
            (2.0, 3, 3),
            (2.0, 3, 10),
        ]
    );
}

#[test]
fn sweep_empty_specs_exit_2() {
    for args in [
        ["sweep", "--R", "", "--n", "2", "--m", "10"],
        ["sweep", "--R", "2", "--n", "", "--m", "10"],
        ["sweep", "--R", "2", "--n", "2", "--m", ""],
    ] {
        let out = kspectral(&args);
        assert_eq!(code(&out), 2);
        assert!(stderr(&out).contains("empty value list"));
    }
}

#[test]
fn sweep_records_cell_failures_in_the_error_column() {
    let out = kspectral(&["sweep", "--R", "0.5,2", "--n", "2", "--m", "10"]);
    assert_eq!(code(&out), 0, "one cell succeeded");
    let (_, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 2);
    assert!(rows[0][10].contains("R must exceed 1"));
    assert!(rows[0][5].is_empty());
    assert!(rows[1][10].is_empty());
    assert!(rows[1][5].parse::<f64>().is_ok());

    let out = kspectral(&["sweep", "--R", "0.5", "--n", "2", "--m", "10"]);
    assert_eq!(code(&out), 2, "every cell failed");
    let (_, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert!(stderr(&out).contains("all 1 sweep cells failed"));
}

#[test]
fn sweep_out_file_matches_stdout_and_json_agrees() {
    let args = ["sweep", "--R", "1.5:3:0.5", "--n", "4", "--m", "10"];
    let streamed = stdout(&kspectral(&args));

    let path = scratch_path("grid.csv");
    let out = kspectral(&[
        "sweep", "--R", "1.5:3:0.5", "--n", "4", "--m", "10", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty(), "file mode keeps stdout quiet");
    let written = fs::read_to_string(&path).unwrap();
    fs::remove_file(&path).unwrap();
    assert_eq!(written, streamed);

    let out = kspectral(&[
        "sweep", "--R", "1.5:3:0.5", "--n", "4", "--m", "10", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = value.as_array().expect("multi-row command emits an array");
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["R"].as_f64(), Some(2.0));
    assert_eq!(rows[1]["error"].as_str(), Some(""));
    let csv_ratio: f64 = parse_csv(&streamed).1[1][5].parse().unwrap();
    assert_eq!(rows[1]["ratio"].as_f64(), Some(csv_ratio));
}

#[test]
fn bounds_catalog_lists_six_bounds_with_verdict() {
    let out = kspectral(&["bounds", "--R", "2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(
        header,
        [
            "R",
            "name",
            "kind",
            "value",
            "truncation_terms",
            "flags",
            "ordering_ok"
        ]
    );
    let names: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(
        names,
        [
            "badea_lower",
            "bbc_gamma_lower",
            "bbc_upper",
            "cg_upper",
            "shields_upper",
            "tsikalas_lower"
        ]
    );
    for row in &rows {
        assert_eq!(row[6], "true");
    }
    let by_name = |name: &str| -> f64 {
        rows.iter()
            .find(|r| r[1] == name)
            .map(|r| r[3].parse().unwrap())
            .unwrap()
    };
    assert!((by_name("cg_upper") - (1.0 + std::f64::consts::SQRT_2)).abs() < 1e-15);
    assert_eq!(by_name("tsikalas_lower"), 2.0);
    assert!((by_name("badea_lower") - 14.0 / 9.0).abs() < 1e-15);
    let gamma_row = rows.iter().find(|r| r[1] == "bbc_gamma_lower").unwrap();
    let terms: usize = gamma_row[4].parse().expect("γ reports truncation terms");
    assert!(terms > 0);
}

#[test]
fn bounds_gamma_approaches_two_for_large_radius() {
    let out = kspectral(&["bounds", "--R", "1000", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let gamma = value
        .as_array()
        .unwrap()
        .iter()
        .find(|row| row["name"] == "bbc_gamma_lower")
        .expect("γ row present");
    assert!((gamma["value"].as_f64().unwrap() - 2.0).abs() < 5e-6);
    assert!(gamma["truncation_terms"].as_u64().is_some());
}

#[test]
fn bounds_respects_the_gamma_tolerance_flag() {
    let strict = kspectral(&["bounds", "--R", "2", "--format", "csv"]);
    let loose = kspectral(&["bounds", "--R", "2", "--gamma-tol", "1e-3", "--format", "csv"]);
    let terms_of = |out: &Output| -> usize {
        parse_csv(&stdout(out))
            .1
            .iter()
            .find(|r| r[1] == "bbc_gamma_lower")
            .unwrap()[4]
            .parse()
            .unwrap()
    };
    let (strict_terms, loose_terms) = (terms_of(&strict), terms_of(&loose));
    assert!(loose_terms <= strict_terms);
    let value_of = |out: &Output| -> f64 {
        parse_csv(&stdout(out))
            .1
            .iter()
            .find(|r| r[1] == "bbc_gamma_lower")
            .unwrap()[3]
            .parse()
            .unwrap()
    };
    let (strict_value, loose_value) = (value_of(&strict), value_of(&loose));
    assert!((strict_value - loose_value).abs() / strict_value < 1e-3);

    let out = kspectral(&["bounds", "--R", "2", "--gamma-tol", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("tolerance must be positive"));

    let out = kspectral(&["bounds", "--R", "0.5"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("R must exceed 1"));
}

#[test]
fn supnorm_peaks_match_closed_forms() {
    let out = kspectral(&[
        "supnorm", "--coeffs", "-2:0.25,2:0.25", "--R", "2", "--samples", "4096",
        "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(
        header,
        ["R", "samples_per_circle", "value", "argmax_radius", "argmax_angle"]
    );
    let row = &rows[0];
    assert_eq!(row[1], "4096");
    assert_eq!(row[2], "1.0625000000000000e0");
    assert_eq!(row[3].parse::<f64>().unwrap(), 2.0);
    assert_eq!(row[4].parse::<f64>().unwrap(), 0.0);

    let out = kspectral(&["supnorm", "--coeffs", "0:3", "--R", "5", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["value"].as_f64(), Some(3.0));
}

#[test]
fn supnorm_rejects_bad_input_with_exit_2() {
    let out = kspectral(&["supnorm", "--coeffs", "1:1", "--R", "2", "--samples", "15"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("samples must be even and >= 16"));

    let out = kspectral(&["supnorm", "--coeffs", "1", "--R", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("degree:coefficient"));

    let out = kspectral(&["supnorm", "--coeffs", "", "--R", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("empty coefficient list"));
}

#[test]
fn emitted_csv_round_trips_byte_identically() {
    // Includes a failed cell so the error column is exercised too.
    for args in [
        vec!["sweep", "--R", "0.5,1.5,2,3", "--n", "2..4", "--m", "3,10"],
        vec!["certify", "--R", "2", "--n", "2", "--m", "10", "--format", "csv"],
        vec!["bounds", "--R", "1.01", "--format", "csv"],
    ] {
        let original = stdout(&kspectral(&args));
        let mut reader = csv::Reader::from_reader(original.as_bytes());
        let mut writer = csv::Writer::from_writer(Vec::new());
        let header = reader.headers().unwrap().clone();
        writer.write_record(&header).unwrap();
        for record in reader.records() {
            writer.write_record(&record.unwrap()).unwrap();
        }
        let rewritten = String::from_utf8(writer.into_inner().unwrap()).unwrap();
        assert_eq!(rewritten, original, "round trip for {args:?}");
    }
}

#[test]
fn bad_flags_and_missing_subcommands_exit_2() {
    let out = kspectral(&["certify", "--R", "2", "--n", "2", "--m", "10", "--bogus"]);
    assert_eq!(code(&out), 2);

    let out = kspectral(&[]);
    assert_eq!(code(&out), 2);

    let out = kspectral(&["certify", "--R", "2", "--n", "2", "--m", "10", "--format", "yaml"]);
    assert_eq!(code(&out), 2);
}
