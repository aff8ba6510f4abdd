use std::fs;
use std::path::Path;
use std::process::Command;

use maxdist_cli::pointfile::{read_point_file, write_point_file};
use maxdist_cli::run_from;
use maxdist_cli::verify::{verify_with, VerifyOptions};
use maxdist_core::fast::{collect_extremes, initial_estimate, partition_filter};
use maxdist_core::{max_distance, squared_distance, BoundingBox, DiameterResult, PointSet, PruneConfig};

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("maxdist").chain(args.iter().copied());
    let status = run_from(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn field<'a>(stdout: &'a str, key: &str) -> &'a str {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {stdout}"))
}

fn square_file(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("square.txt");
    fs::write(&path, "# maxdist v1 dim=2 n=4 seed=0 dist=square\n0 0\n1 0\n1 1\n0 1\n").unwrap();
    path
}

#[test]
fn gen_writes_requested_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.txt");
    let (status, stdout, _) = run(&["gen", "--dist", "uniform", "--n", "100", "--seed", "1", "--dim", "2", "--out", p(&out)]);
    assert_eq!(status, 0);
    assert!(stdout.contains("100"), "{stdout}");
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# maxdist v1 dim=2 n=100 seed=1 dist=uniform");
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), 100);
    assert!(body.iter().all(|l| l.split_whitespace().count() == 2));
}

#[test]
fn gen_zero_points_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("empty.txt");
    let (status, _, _) = run(&["gen", "--n", "0", "--out", p(&out)]);
    assert_eq!(status, 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), "# maxdist v1 dim=2 n=0 seed=0 dist=uniform\n");
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for dist in ["uniform", "gaussian", "clusters", "circle", "collinear", "duplicated"] {
        let a = dir.path().join("a.txt");
        let b = dir.path().join("b.txt");
        for f in [&a, &b] {
            let (status, _, err) = run(&["gen", "--dist", dist, "--n", "300", "--seed", "42", "--dim", "3", "--out", p(f)]);
            assert_eq!(status, 0, "{err}");
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{dist}");
    }
}

#[test]
fn gen_rejects_bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.txt");
    for args in [
        vec!["gen", "--n", "10", "--dim", "4", "--out", p(&out)],
        vec!["gen", "--n", "10", "--dist", "spiral", "--out", p(&out)],
        vec!["gen", "--n", "10", "--aspect", "0.5", "--out", p(&out)],
        vec!["gen", "--n", "10", "--dist", "clusters", "--clusters", "0", "--out", p(&out)],
        vec!["gen", "--n", "-3", "--out", p(&out)],
        vec!["gen", "--out", p(&out)],
    ] {
        let (status, _, err) = run(&args);
        assert_eq!(status, 1, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn square_corners_diameter() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square_file(dir.path());
    let (status, fast, _) = run(&["diameter", "--algo", "fast", "--in", p(&sq)]);
    assert_eq!(status, 0);
    assert_eq!(field(&fast, "diameter"), "1.4142135623730951");
    let (status, brute, _) = run(&["diameter", "--algo", "brute", "--in", p(&sq)]);
    assert_eq!(status, 0);
    assert_eq!(field(&brute, "diameter"), "1.4142135623730951");
    assert_eq!(field(&brute, "distance_evals"), "6");
    let pair = field(&fast, "pair");
    assert!(pair == "0 2" || pair == "1 3", "{pair}");
}

#[test]
fn json_output_is_the_result() {
    let dir = tempfile::tempdir().unwrap();
    let sq = square_file(dir.path());
    let (status, stdout, _) = run(&["diameter", "--algo", "hull_calipers", "--in", p(&sq), "--json"]);
    assert_eq!(status, 0);
    let res: DiameterResult = serde_json::from_str(&stdout).unwrap();
    assert_eq!(res.dist_sq, 2.0);
    assert_eq!(res.stats.hull_size, 4);
}

#[test]
fn linear_and_circular_filters_agree() {
    let dir = tempfile::tempdir().unwrap();
    for (seed, dim) in [("3", "2"), ("4", "3"), ("5", "2")] {
        let f = dir.path().join(format!("u{seed}.txt"));
        run(&["gen", "--n", "20000", "--seed", seed, "--dim", dim, "--out", p(&f)]);
        let (s1, circ, _) = run(&["diameter", "--in", p(&f), "--filter", "circular"]);
        let (s2, lin, _) = run(&["diameter", "--in", p(&f), "--filter", "linear"]);
        let (s3, brute, _) = run(&["diameter", "--in", p(&f), "--algo", "brute"]);
        assert_eq!((s1, s2, s3), (0, 0, 0));
        assert_eq!(field(&circ, "algo"), "fast_circular");
        assert_eq!(field(&lin, "algo"), "fast_linear");
        assert_eq!(field(&circ, "dist_sq"), field(&lin, "dist_sq"));
        assert_eq!(field(&circ, "dist_sq"), field(&brute, "dist_sq"));
    }
}

#[test]
fn diameter_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.txt");
    fs::write(&one, "# maxdist v1 dim=2 n=1\n1 2\n").unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "# maxdist v1 dim=2 n=3\n1 2\n").unwrap();
    let sq = square_file(dir.path());
    let missing = dir.path().join("missing.txt");
    for args in [
        vec!["diameter", "--in", p(&one)],
        vec!["diameter", "--in", p(&bad)],
        vec!["diameter", "--in", p(&missing)],
        vec!["diameter", "--algo", "quick", "--in", p(&sq)],
        vec!["diameter", "--algo", "brute", "--filter", "linear", "--in", p(&sq)],
    ] {
        let (status, _, err) = run(&args);
        assert_eq!(status, 1, "{args:?}");
        assert!(err.starts_with("error"), "{err}");
    }
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    rdr.records().map(|r| r.unwrap().iter().map(str::to_owned).collect()).collect()
}

#[test]
fn bench_writes_records_and_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let run_once = |sub: &str| {
        let out = dir.path().join(sub);
        let (status, _, err) = run(&[
            "bench", "--sizes", "1000", "--dists", "uniform,gaussian", "--algos", "brute,fast", "--seeds", "1,2",
            "--reps", "3", "--out", p(&out),
        ]);
        assert_eq!(status, 0, "{err}");
        (csv_rows(&out.join("records.csv")), csv_rows(&out.join("ratios.csv")))
    };
    let (records, ratios) = run_once("a");
    assert_eq!(records.len(), 2 * 2 * 2);
    assert_eq!(ratios.len(), 2);
    for r in &ratios {
        assert_eq!(r[0], "1000");
        assert!(r[3].parse::<f64>().unwrap() > 0.0);
    }
    let (again, _) = run_once("b");
    let evals = |rows: &[Vec<String>]| rows.iter().map(|r| (r[0].clone(), r[9].clone())).collect::<Vec<_>>();
    assert_eq!(evals(&records), evals(&again));
}

#[test]
fn bench_json_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (status, _, _) = run(&["bench", "--sizes", "500", "--reps", "1", "--json", "--out", p(dir.path())]);
    assert_eq!(status, 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 2);

    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let (status, _, _) = run(&["bench", "--sizes", "500", "--reps", "1", "--out", p(&blocker.join("sub"))]);
    assert_eq!(status, 1);
    let (status, _, _) = run(&["bench", "--sizes", "500", "--reps", "0", "--out", p(dir.path())]);
    assert_eq!(status, 1);
}

#[test]
fn verify_trivial_and_default_scale() {
    let dir = tempfile::tempdir().unwrap();
    let (status, stdout, _) = run(&["verify", "--trials", "1", "--max-n", "2", "--dump-dir", p(dir.path())]);
    assert_eq!(status, 0);
    assert!(stdout.contains("0 mismatches"));
    let (status, _, _) = run(&["verify", "--trials", "1000", "--max-n", "256", "--dump-dir", p(dir.path())]);
    assert_eq!(status, 0);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    let (status, _, _) = run(&["verify", "--trials", "0"]);
    assert_eq!(status, 1);
}

/// Pruned search with two planted bugs: points exactly at the threshold are
/// discarded, and the last member of each region is skipped.
fn mutant(ps: &PointSet, cfg: &PruneConfig) -> maxdist_core::Result<DiameterResult> {
    let mut res = max_distance(ps, cfg)?;
    let points = ps.as_points::<2>().expect("mutant runs in 2D");
    let bbox = BoundingBox::from_points(points)?;
    let ext = collect_extremes(points, &bbox)?;
    let est = initial_estimate(&ext, points);
    let part = partition_filter(points, &bbox, est.dist_sq);
    let mut kept: Vec<usize> = ext.pool();
    for region in &part.regions {
        for &i in region.members.iter().take(region.members.len().saturating_sub(1)) {
            let cd = bbox.corner_distance_sq(&points[i]);
            if cd > est.dist_sq {
                kept.push(i);
            }
        }
    }
    kept.sort_unstable();
    kept.dedup();
    let mut best = 0.0f64;
    for (a, &i) in kept.iter().enumerate() {
        for &j in &kept[a + 1..] {
            best = best.max(squared_distance(&points[i], &points[j]));
        }
    }
    res.dist_sq = best;
    res.dist = best.sqrt();
    Ok(res)
}

#[test]
fn verify_catches_injected_bug() {
    let dir = tempfile::tempdir().unwrap();
    let opts = VerifyOptions { trials: 200, max_n: 64, seed: 11, dim: Some(2), dump_dir: dir.path().to_owned() };
    let mut log = Vec::new();
    let outcome = verify_with(&opts, mutant, &mut log).unwrap();
    assert_eq!(outcome.exit_status(), 2);
    let log = String::from_utf8(log).unwrap();
    assert!(log.contains("MISMATCH"));
    let m = &outcome.mismatches[0];
    let file = m.file.as_ref().expect("mismatch dumped");
    let (header, ps) = read_point_file(fs::read(file).unwrap().as_slice()).unwrap();
    assert_eq!((header.n, header.dim), (m.spec.n, 2));
    let replay = maxdist_core::brute_force_diameter(&ps).unwrap();
    assert_eq!(replay.dist_sq, m.expected_sq);

    let clean = verify_with(&opts, max_distance, &mut Vec::new()).unwrap();
    assert_eq!(clean.exit_status(), 0);
}

#[test]
fn erroring_candidate_counts_as_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let opts = VerifyOptions { trials: 3, max_n: 10, seed: 1, dim: None, dump_dir: dir.path().to_owned() };
    let fail = |_: &PointSet, _: &PruneConfig| Err(maxdist_core::Error::EmptyInput);
    let outcome = verify_with(&opts, fail, &mut Vec::new()).unwrap();
    assert_eq!(outcome.mismatches.len(), 6);
    assert!(outcome.mismatches.iter().all(|m| m.got_sq.is_none()));
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_maxdist");
    let dir = tempfile::tempdir().unwrap();
    let sq = square_file(dir.path());
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let ok = status(&["diameter", "--in", p(&sq)]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("diameter=1.4142135623730951"));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
    assert_eq!(status(&["--version"]).status.code(), Some(0));
    assert_eq!(status(&[]).status.code(), Some(1));
    assert_eq!(status(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(status(&["verify", "--trials", "1", "--max-n", "2"]).status.code(), Some(0));
}

#[test]
fn written_files_roundtrip() {
    let ps = PointSet::from_points(&[[1e308, -5e-324, 0.1], [3.0, 2.5, -0.0]]).unwrap();
    let mut first = Vec::new();
    write_point_file(&mut first, &ps, 1, "x").unwrap();
    let (_, back) = read_point_file(first.as_slice()).unwrap();
    let mut second = Vec::new();
    write_point_file(&mut second, &back, 1, "x").unwrap();
    assert_eq!(first, second);
    let bits = |s: &PointSet| s.coords().iter().map(|c| c.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&ps), bits(&back));
}
