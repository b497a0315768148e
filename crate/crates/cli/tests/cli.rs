use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qram_core::ir::parse_circuit;

fn qram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qram"))
        .args(args)
        .env_remove("QRAM_CONFIG")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let o = qram(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn fails(args: &[&str], code: i32) -> String {
    let o = qram(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stdout));
    String::from_utf8(o.stderr).unwrap()
}

/// Field of a `name  value` table line.
fn field<'a>(table: &'a str, name: &str) -> &'a str {
    table
        .lines()
        .find_map(|l| l.strip_prefix(name).filter(|r| r.starts_with(' ')).map(str::trim))
        .unwrap_or_else(|| panic!("no {name} in\n{table}"))
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes()).records().map(Result::unwrap).collect()
}

fn col(name: &str) -> usize {
    qram_cli::HEADER.iter().position(|h| *h == name).unwrap_or_else(|| panic!("{name}"))
}

#[test]
fn count_hybrid() {
    let t = ok(&["count", "--family", "hybrid", "-n", "9", "-q", "5", "-k", "4"]);
    for (k, v) in [("NQ", "31"), ("D", "5120"), ("Tc", "2560"), ("Td", "768"), ("Hc", "896"), ("CNOTc", "5120")] {
        assert_eq!(field(&t, k), v, "{k}");
    }
}

#[test]
fn count_rejects_small_large_depth() {
    let e = fails(&["count", "--family", "large-depth", "-n", "3", "-q", "1"], 1);
    assert!(e.contains("n ≥ 4 required"), "{e}");
}

#[test]
fn count_selectswap_model() {
    let t = ok(&["count", "--family", "selectswap-clean", "-n", "10", "--lambda", "1", "-b", "1"]);
    assert_eq!(field(&t, "NQ"), "21");
    assert_eq!(field(&t, "Tc"), "4104");
    assert!(t.contains("asymptotic model"), "{t}");
}

#[test]
fn count_csv_leaves_unmodeled_empty() {
    let t = ok(&["count", "--family", "selectswap-dirty", "-n", "10", "--lambda", "4", "--csv"]);
    assert_eq!(t.lines().next().unwrap(), qram_cli::HEADER.join(","));
    let rows = csv_rows(&t);
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][col("D")], "");
    assert_eq!(&rows[0][col("lambda")], "4");
}

#[test]
fn count_builder_matches_formula() {
    let args = ["count", "--family", "large-width", "-n", "5", "-q", "2", "--csv"];
    let f = csv_rows(&ok(&args));
    let b = csv_rows(&ok(&[&args[..], &["--source", "builder", "--seed", "3"]].concat()));
    for m in ["NQ", "Tc", "Hc", "CNOTc"] {
        let c = col(m);
        assert_eq!(f[0][c], b[0][c], "{m}");
    }
}

#[test]
fn count_bad_combinations() {
    let e = fails(&["count", "--family", "hybrid", "-n", "9", "-q", "5", "-k", "8"], 1);
    assert!(e.contains("4 ≤ k ≤ n − 3"), "{e}");
    let e = fails(&["count", "--family", "nope", "-n", "9"], 1);
    assert!(e.contains("unknown family"), "{e}");
    fails(&["count", "--family", "hybrid"], 1);
    fails(&["frobnicate"], 1);
}

#[test]
fn generate_from_memory_file() {
    let dir = tempfile::tempdir().unwrap();
    let mem = dir.path().join("mem.txt");
    fs::write(&mem, "n=4\n0001\n0110\n1011\n1111\n").unwrap();
    let text = ok(&["generate", "--family", "large-depth", "-n", "4", "--addresses", mem.to_str().unwrap()]);
    let c = parse_circuit(&text).unwrap();
    let mpmct = text.lines().filter(|l| l.starts_with("mpmct")).count();
    assert_eq!(mpmct, 4);
    assert!(c.num_qubits() > 4);
}

#[test]
fn generate_memory_file_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let mem = dir.path().join("mem.txt");
    fs::write(&mem, "n=4\n0001\n01x0\n").unwrap();
    let e = fails(&["generate", "--family", "large-depth", "-n", "4", "--addresses", mem.to_str().unwrap()], 1);
    assert!(e.contains("line 3"), "{e}");
    fs::write(&mem, "n=3\n001\n").unwrap();
    let e = fails(&["generate", "--family", "large-depth", "-n", "4", "--addresses", mem.to_str().unwrap()], 1);
    assert!(e.contains("3-bit"), "{e}");
}

#[test]
fn generate_bb_serial_toffolis() {
    let text = ok(&["generate", "--family", "bb-serial", "-n", "3", "--seed", "7"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("tof ")).count(), 20);
    let c = parse_circuit(&text).unwrap();
    assert_eq!(qram_core::ir::write_circuit(&c), text);
}

#[test]
fn generate_lowered_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.txt");
    ok(&["generate", "--family", "large-width", "-n", "4", "-q", "2", "--lower", "-o", out.to_str().unwrap()]);
    let text = fs::read_to_string(&out).unwrap();
    let c = parse_circuit(&text).unwrap();
    assert!(c.gates().iter().all(|g| !matches!(g, qram_core::Gate::Toffoli { .. } | qram_core::Gate::Mpmct { .. })));
}

fn within_10x(got: f64, want: f64) -> bool {
    got / want < 10.0 && want / got < 10.0
}

#[test]
fn estimate_table_rows() {
    let t = ok(&["estimate", "--family", "bb-parallel", "-n", "15"]);
    let secs: f64 = field(&t, "seconds").parse().unwrap();
    let phys: f64 = field(&t, "physical_qubits").split_whitespace().next().unwrap().parse().unwrap();
    assert!(within_10x(secs, 3.48e-4) && within_10x(phys, 2.89e8), "{t}");

    let c = ok(&["estimate", "--family", "large-width", "-n", "36", "-q", "35", "--csv"]);
    let r = &csv_rows(&c)[0];
    let secs: f64 = r[col("seconds")].parse().unwrap();
    let phys: f64 = r[col("physical_qubits")].parse().unwrap();
    assert!(within_10x(secs, 4.35e-3) && within_10x(phys, 7.06e15), "{c}");
}

#[test]
fn estimate_errors() {
    let e = fails(&["estimate", "--family", "bb-parallel", "-n", "15", "--pg", "0.5"], 1);
    assert!(e.contains("below threshold"), "{e}");
    let e = fails(&["estimate", "--family", "selectswap-clean", "-n", "10"], 1);
    assert!(e.contains("no physical estimate"), "{e}");
}

#[test]
fn estimate_onoff() {
    let t = ok(&["estimate", "--family", "large-depth", "-n", "8", "-q", "3", "--ca", "10", "--ci", "4", "--ct", "6"]);
    assert_eq!(field(&t, "on/off"), "keep on");
}

#[test]
fn sweep_degenerate_pair() {
    let t = ok(&["sweep", "--families", "large-depth,large-width", "-n", "15..36", "--q-mode", "half-full"]);
    let rows = csv_rows(&t);
    assert_eq!(rows.len(), 44);
    let rc = col("rough_cost");
    for n in 15..=36 {
        let pick = |f: &str| -> f64 {
            let r = rows.iter().find(|r| &r[0] == f && r[1] == *n.to_string()).unwrap();
            r[rc].parse().unwrap()
        };
        assert!((pick("large-depth") - pick("large-width")).abs() < 0.01, "n = {n}");
    }
}

#[test]
fn sweep_best_split() {
    let t = ok(&["sweep", "--families", "hybrid-parallel", "-n", "36", "-q", "35", "-k", "4..32"]);
    let rows = csv_rows(&t);
    assert_eq!(rows.len(), 29);
    let rc = col("rough_cost");
    let best = rows.iter().min_by(|a, b| a[rc].parse::<f64>().unwrap().total_cmp(&b[rc].parse().unwrap())).unwrap();
    let k: u32 = best[col("k")].parse().unwrap();
    assert!((30..=32).contains(&k), "{k}");
}

#[test]
fn sweep_crossover() {
    let t = ok(&["sweep", "--families", "bb-parallel,large-width", "-n", "36", "-q", "0..35"]);
    let rows = csv_rows(&t);
    let rc = col("rough_cost");
    let cost = |f: &str, q: u32| -> f64 {
        let r = rows.iter().find(|r| &r[0] == f && r[2] == *q.to_string()).unwrap();
        r[rc].parse().unwrap()
    };
    let cross = (0..36).filter(|&q| cost("large-width", q) < cost("bb-parallel", q)).max();
    assert_eq!(cross, Some(31));
}

#[test]
fn sweep_order_and_determinism() {
    let args = ["sweep", "--families", "large-width,hybrid,bb-serial", "-n", "8,7", "--seed", "4"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let rows = csv_rows(&a);
    let key = |r: &csv::StringRecord| {
        let num = |i: usize| r[i].parse::<u64>().ok();
        (r[0].to_string(), num(1), num(2), num(3), num(4))
    };
    assert!(rows.windows(2).all(|w| key(&w[0]) < key(&w[1])));
    assert!(rows.iter().any(|r| &r[0] == "hybrid"));
}

#[test]
fn sweep_builder_source() {
    let args = ["sweep", "--families", "hybrid", "-n", "7", "-q", "5"];
    let f = csv_rows(&ok(&args));
    let b = csv_rows(&ok(&[&args[..], &["--source", "builder"]].concat()));
    assert_eq!(b.len(), 1);
    for m in ["NQ", "Tc", "Hc", "CNOTc"] {
        assert_eq!(f[0][col(m)], b[0][col(m)], "{m}");
    }
    let d = |r: &csv::StringRecord| r[col("D")].parse::<u64>().unwrap();
    assert!(d(&b[0]) <= d(&f[0]));
}

#[test]
fn empty_sweep_warns() {
    let o = qram(&["sweep", "--families", "hybrid", "-n", "5"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim_end(), qram_cli::HEADER.join(","));
    assert!(String::from_utf8(o.stderr).unwrap().contains("warning"));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn plot_series_polylines() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("q.csv");
    ok(&["sweep", "-n", "20", "-o", csv.to_str().unwrap()]);
    let svg = ok(&["plot", "--in", csv.to_str().unwrap(), "--x", "q", "--y", "cost", "--series", "family", "--logy"]);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 3);
    for f in ["bb-parallel", "large-depth", "large-width"] {
        assert!(svg.contains(&format!(">{f}</text>")), "{f}");
    }
}

#[test]
fn plot_empty_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "e.csv", &format!("{}\n", qram_cli::HEADER.join(",")));
    let svg = ok(&["plot", "--in", &empty, "--x", "q", "--y", "cost"]);
    assert!(svg.contains("no data") && svg.contains("<rect"));

    let e = fails(&["plot", "--in", &empty, "--x", "q", "--y", "price"], 1);
    assert!(e.contains("available") && e.contains("rough_cost"), "{e}");

    let neg = write(dir.path(), "n.csv", "x,y\n1,2\n2,0\n");
    let e = fails(&["plot", "--in", &neg, "--x", "x", "--y", "y", "--logy"], 1);
    assert!(e.contains("log scale requires positive values"), "{e}");
    ok(&["plot", "--in", &neg, "--x", "x", "--y", "y"]);
}

#[test]
fn verify_small() {
    let t = ok(&["verify", "--max-n", "3", "--seeds", "1"]);
    assert!(t.contains("SKIP") && t.contains("n ≥ 4 required"), "{t}");
    assert!(!t.contains("FAIL"));
}

#[test]
fn verify_planted_fault() {
    let o = qram(&["verify", "--max-n", "3", "--seeds", "1", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(2));
    let t = String::from_utf8(o.stdout).unwrap();
    let fail = t.lines().find(|l| l.starts_with("FAIL")).expect("a failure");
    assert!(fail.contains("address"), "{fail}");
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write(dir.path(), "c.conf", "# shared\nfamily = hybrid\nn = 9\nq = 5\nk = 4\nsweep.n = 20\n");
    let t = ok(&["--config", &conf, "count"]);
    assert_eq!(field(&t, "NQ"), "31");
    let t = ok(&["count", "--config", &conf, "-k", "5"]);
    assert_eq!(field(&t, "k"), "5");

    let env = Command::new(env!("CARGO_BIN_EXE_qram")).args(["count"]).env("QRAM_CONFIG", &conf).output().unwrap();
    assert!(env.status.success());
    assert_eq!(field(&String::from_utf8(env.stdout).unwrap(), "Tc"), "2560");

    let bad = write(dir.path(), "b.conf", "colour = red\n");
    let e = fails(&["--config", &bad, "count"], 1);
    assert!(e.contains("unknown key 'colour'"), "{e}");
}

#[test]
fn help_exits_zero() {
    assert!(ok(&["--help"]).contains("sweep"));
    assert!(ok(&["sweep", "--help"]).contains("--q-mode"));
}
