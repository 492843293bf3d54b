use std::process::{Command, Output};

use mathieu::config::{Command as RunCommand, EvalSpec, Format, Method, PointInput, RunConfig, TruncationArg};
use proptest::prelude::*;
use serde_json::Value;

fn mathieu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mathieu"))
        .args(args)
        .env_remove("MATHIEU_PREC")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = mathieu(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn both_methods_agree_on_the_coth_sum() {
    let v = json(&[
        "eval", "--mu", "1", "--gamma", "0", "--lambda", "2", "--a", "1", "--method", "both",
    ]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!(row["re"].as_str().unwrap().starts_with("1.0766740474"));
    }
    let diff: f64 = v["meta"]["abs_difference"].as_str().unwrap().parse().unwrap();
    assert!(diff < 1e-40);
    assert!(v["meta"]["remainder_estimate"].is_string());
}

#[test]
fn sector_boundary_exit_codes() {
    let ok = mathieu(&["eval", "--mu", "1.25", "--lambda", "4", "--a", "5@40"]);
    assert_eq!(ok.status.code(), Some(0));
    let out = mathieu(&["eval", "--mu", "1.25", "--lambda", "4", "--a", "5@50"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sector"));
}

#[test]
fn validation_failures_exit_with_two() {
    for args in [
        &["eval", "--mu", "0.5", "--a", "1"][..],
        &["eval", "--mu", "x", "--a", "1"],
        &["eval", "--mu", "1", "--lambda", "3", "--a", "1"],
        &["eval", "--mu", "1.5", "--a", "3", "--method", "closed"],
        &["--prec", "10", "eval", "--mu", "1", "--a", "1"],
        &["eval", "--mu", "1", "--a", "1", "--M", "0"],
    ] {
        assert_eq!(mathieu(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_carries_precision_and_provenance() {
    let v = json(&["eval", "--mu", "1.25", "--lambda", "4", "--a", "5"]);
    assert_eq!(v["meta"]["digits"], "50");
    assert!(v["meta"]["working_digits"].is_string());
    let row = &v["rows"][0];
    assert_eq!(row["method"], "asymptotic-real");
    assert_eq!(row["coeff_method"], "generic-matching");
    assert!(row["m_used"].as_str().unwrap().parse::<usize>().unwrap() > 0);
    assert!(row["remainder_estimate"].as_str().unwrap().parse::<f64>().unwrap() > 0.0);
    let config = v["meta"]["config"].as_str().unwrap();
    assert_eq!(RunConfig::parse_canonical(config).unwrap().format, Format::Json);
}

#[test]
fn formats_encode_the_same_values() {
    let args = [
        "eval", "--mu", "0.75", "--gamma", "2", "--lambda", "6", "--a", "4+1i", "--method", "both",
    ];
    let v = json(&args);
    let mut csv_args = vec!["--format", "csv"];
    csv_args.extend_from_slice(&args);
    let csv = stdout(&mathieu(&csv_args));
    let text = stdout(&mathieu(&args));
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let records: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 2);
    for (i, rec) in records.iter().enumerate() {
        let row = &v["rows"][i];
        assert_eq!(&rec[2], row["re"].as_str().unwrap());
        assert_eq!(&rec[3], row["im"].as_str().unwrap());
        assert!(text.contains(&rec[2]) && text.contains(&rec[3]));
    }
}

#[test]
fn closed_alternating_matches_oracle() {
    let value = |method| {
        let v = json(&["eval", "--mu", "2", "--a", "2.5", "--alternating", "--method", method]);
        v["rows"][0]["re"].as_str().unwrap().to_string()
    };
    assert_eq!(value("closed")[..40], value("oracle")[..40]);
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mathieu"))
        .args([
            "--format", "json", "eval", "--mu", "1", "--a", "2", "--method", "oracle",
        ])
        .env("MATHIEU_PREC", "30")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["meta"]["digits"], "30");
    let o = Command::new(env!("CARGO_BIN_EXE_mathieu"))
        .args([
            "--prec", "40", "--format", "json", "eval", "--mu", "1", "--a", "2", "--method", "oracle",
        ])
        .env("MATHIEU_PREC", "30")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["meta"]["digits"], "40");
}

#[test]
fn output_file_receives_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table1.csv");
    let o = mathieu(&["--format", "csv", "-o", path.to_str().unwrap(), "table1"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("gamma,j,computed,printed,agrees\n"));
    assert!(body.contains("0,2,-3.5888671875"));
    assert!(body.contains("2,5,-9.0884858742"));
    assert!(body.contains("-2,1,-9.6875000000000000000000000000000000000000000000000e-1,-2.1250000000e0,NO"));
}

#[test]
fn table2_lists_every_cell() {
    let v = json(&["table2"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 27);
    assert!(v["meta"]["s_hat[gamma=0]"].as_str().unwrap().starts_with("-1.54766"));
    let cell = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["gamma"] == "0" && r["j"] == "4")
        .unwrap();
    assert_eq!(cell["rel_error"], "2.697e-8");
}

#[test]
fn verify_passes() {
    let o = mathieu(&["--format", "csv", "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

fn decimal() -> impl Strategy<Value = String> {
    (-99_999i64..99_999, 0u32..6).prop_map(|(n, s)| {
        let v = n as f64 / 10f64.powi(s as i32);
        format!("{v}")
    })
}

fn point() -> impl Strategy<Value = PointInput> {
    prop_oneof![
        (decimal(), decimal()).prop_map(|(re, im)| PointInput::Cartesian { re, im }),
        (decimal(), decimal()).prop_map(|(modulus, arg_deg)| PointInput::Polar { modulus, arg_deg }),
    ]
}

fn run_config() -> impl Strategy<Value = RunConfig> {
    let eval = (
        decimal(),
        -4i64..5,
        1i64..5,
        point(),
        prop_oneof![Just(TruncationArg::Auto), (1usize..60).prop_map(TruncationArg::Fixed)],
        prop_oneof![
            Just(Method::Asymptotic),
            Just(Method::Oracle),
            Just(Method::Closed),
            Just(Method::Both)
        ],
        any::<bool>(),
    )
        .prop_map(|(mu, m, p, a, truncation, method, alternating)| {
            RunCommand::Eval(EvalSpec {
                mu,
                gamma: 2 * m,
                lambda: 2 * p,
                a,
                truncation,
                method,
                alternating,
            })
        });
    let command = prop_oneof![
        eval,
        Just(RunCommand::Table1),
        Just(RunCommand::Table2),
        Just(RunCommand::Verify)
    ];
    let output = prop_oneof![
        Just(None),
        "[a-z]{1,6}( [a-z]{1,4})?'?\\.csv".prop_map(|s| Some(s.into())),
    ];
    (
        command,
        20u32..200,
        prop_oneof![Just(Format::Text), Just(Format::Csv), Just(Format::Json)],
        output,
    )
        .prop_map(|(command, precision, format, output)| RunConfig {
            command,
            precision,
            format,
            output,
        })
}

proptest! {
    #[test]
    fn canonical_string_round_trips(config in run_config()) {
        let s = config.canonical();
        prop_assert_eq!(RunConfig::parse_canonical(&s).unwrap(), config.clone());
        let args = config.to_args();
        let parsed = RunConfig::from_args(args).unwrap();
        prop_assert_eq!(parsed, config);
    }
}
