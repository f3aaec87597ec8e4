use std::process::{Command, Output};

fn gtn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtn"))
        .args(args)
        .env_remove("GTN_RESTARTS")
        .output()
        .expect("run gtn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses CSV into a header and numeric rows, skipping `#` comments.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i]).collect()
}

#[test]
fn sweep_emits_one_row_per_step() {
    let o = gtn(&["sweep", "--alpha-sq", "0.5", "--t-min", "0.001", "--t-max", "3", "--steps", "300"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 301);
    let (header, rows) = parse_csv(&text);
    assert_eq!(&header[..3], &["temperature", "alpha_sq", "omega"]);
    assert!(rows.iter().all(|r| r.len() == header.len()));
    let c = column(&header, &rows, "C_A_BI_CI");
    // below T ≈ 0.05 the decrease is lost to nine-digit rendering
    let resolvable: Vec<f64> = rows
        .iter()
        .zip(&c)
        .filter(|(r, _)| r[0] >= 0.05)
        .map(|(_, &v)| v)
        .collect();
    assert!(resolvable.windows(2).all(|w| w[1] < w[0]));
    assert!(c.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn sweep_value_at_unit_temperature() {
    let o = gtn(&["sweep", "--t-min", "1", "--t-max", "1", "--steps", "1"]);
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert_eq!(column(&header, &rows, "C_A_BI_CI")[0], 0.731058579);
    assert!(stdout(&o).contains(",0.731058579,"));
}

#[test]
fn zero_steps_is_a_usage_error() {
    let o = gtn(&["sweep", "--steps", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--steps"));
    assert!(o.stdout.is_empty());
}

#[test]
fn invalid_parameters_exit_one() {
    assert_eq!(gtn(&["sweep", "--alpha-sq", "1.5"]).status.code(), Some(1));
    assert_eq!(gtn(&["sweep", "--omega", "-1"]).status.code(), Some(1));
    assert_eq!(gtn(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gtn(&["reproduce", "5"]).status.code(), Some(1));
    assert_eq!(gtn(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_two() {
    let o = gtn(&["sweep", "--steps", "2", "-o", "/nonexistent-dir/out.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let args = ["sweep", "--steps", "5", "--log-scale", "--t-max", "100"];
    let mut with_file = args.to_vec();
    with_file.extend(["-o", path.to_str().unwrap()]);
    assert_eq!(gtn(&with_file).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&gtn(&args)));
}

#[test]
fn csv_is_byte_stable() {
    let args = ["sweep", "--steps", "4", "--with-bruteforce", "--restarts", "8", "--seed", "3"];
    let first = gtn(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, gtn(&args).stdout);
    let (header, rows) = parse_csv(&stdout(&first));
    assert!(header.contains(&"SBF_A_BI_CI".to_owned()));
    assert_eq!(rows.len(), 4);
}

#[test]
fn restart_override_is_echoed() {
    let o = Command::new(env!("CARGO_BIN_EXE_gtn"))
        .args(["sweep", "--steps", "2", "--with-bruteforce"])
        .env("GTN_RESTARTS", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# restarts=8"));
    assert!(!stdout(&gtn(&["sweep", "--steps", "2"])).starts_with('#'));

    let bad = Command::new(env!("CARGO_BIN_EXE_gtn"))
        .args(["sweep", "--steps", "2"])
        .env("GTN_RESTARTS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn critical_temperatures() {
    let o = gtn(&["critical", "--alpha-sq", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let value: f64 = text.lines().next().unwrap().split('=').nth(1).unwrap().parse().unwrap();
    assert!((value - 1.134_592_657).abs() < 1e-6);
    assert!(text.contains("bisection=1.1345926"));

    let none = gtn(&["critical", "--alpha-sq", "0.1"]);
    assert_eq!(none.status.code(), Some(0));
    assert_eq!(stdout(&none).trim(), "critical_temperature=none");

    assert_eq!(gtn(&["critical", "--alpha-sq", "0"]).status.code(), Some(1));
}

#[test]
fn critical_scan_is_symmetric_about_half() {
    let o = gtn(&["critical", "--scan", "--a2-min", "0.1", "--a2-max", "0.9", "--steps", "17"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(lines.len(), 17);
    let tc: Vec<&str> = lines.iter().map(|l| l.split(',').nth(1).unwrap()).collect();
    for i in 0..17 {
        let (a, b) = (tc[i], tc[16 - i]);
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(x), Ok(y)) => assert!((x - y).abs() <= 1e-6 * x.max(1.0), "{a} vs {b}"),
            _ => assert_eq!(a, b),
        }
    }
    assert_eq!(tc[0], "none");
    assert_ne!(tc[8], "none");
}

#[test]
fn verify_passes_by_default() {
    let o = gtn(&["verify"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 15);
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_reports_forced_failures() {
    let o = gtn(&["verify", "--tolerance-override", "1e-20"]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    let fail = text.lines().find(|l| l.starts_with("FAIL")).unwrap();
    assert!(fail.contains("residual=") && fail.contains("tolerance=1e-20"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--restarts", "8", "--seed", "7"];
    let first = gtn(&args);
    assert_eq!(first.stdout, gtn(&args).stdout);
}

#[test]
fn reproduce_plot_columns() {
    let one = stdout(&gtn(&["reproduce", "1", "--steps", "10"]));
    let (header, rows) = parse_csv(&one);
    assert_eq!(header, ["alpha_sq", "temperature", "S_A_BI_CI", "C_A_BI_CI"]);
    assert_eq!(rows.len(), 20);
    let alphas = column(&header, &rows, "alpha_sq");
    assert_eq!(alphas[0], 0.5);
    assert!((alphas[19] - 1.0 / 6.0).abs() < 1e-9);

    let four = stdout(&gtn(&["reproduce", "4", "--steps", "10"]));
    let (header, _) = parse_csv(&four);
    assert!(header.contains(&"B_BI_BII".to_owned()) && header.contains(&"C_BI_BII".to_owned()));
}

#[test]
fn inaccessible_plots_stay_local() {
    for fig in ["2", "3"] {
        let (header, rows) = parse_csv(&stdout(&gtn(&["reproduce", fig, "--steps", "200"])));
        let s_col = header.iter().find(|h| h.starts_with("S_")).unwrap().clone();
        let temps = column(&header, &rows, "temperature");
        for (t, s) in temps.iter().zip(column(&header, &rows, &s_col)) {
            assert!(s <= 4.0, "{s_col} = {s} at T = {t}");
            // the deficit below 4 is 16α²pq, unresolvable in f64 at the coldest points
            if *t >= 0.03 {
                assert!(s < 4.0, "{s_col} = {s} at T = {t}");
            }
        }
    }
}
