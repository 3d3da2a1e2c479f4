use std::path::Path;

use slantix::cli::{run_with, EXIT_CHECK_FAILED, EXIT_DOMAIN, EXIT_INVALID, EXIT_IO, EXIT_OK};
use slantix::io::read_csv_path;
use slantix::profiles::SlantParameters;
use slantix::synthesis::{linspace, salkowski_sampled};
use slantix::verify::VerificationReport;
use tempfile::tempdir;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(std::iter::once("slantix").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn reports(path: &Path) -> Vec<VerificationReport> {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_salkowski_round_trips_bit_exact() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let (code, _, err) = cli(&["generate", "--family", "salkowski", "--n", "1/3", "--t", "-1.2:1.2:2001", "--out", p(&out)]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(err.contains("2001 samples"), "{err}");
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 2002);
    assert!(text.starts_with("s,t,theta,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau"));

    let loaded = read_csv_path(&out).unwrap();
    let direct = salkowski_sampled(&SlantParameters::with_n(1.0 / 3.0).unwrap(), &linspace(-1.2, 1.2, 2001)).unwrap();
    assert_eq!(loaded.len(), direct.len());
    for (a, b) in loaded.samples.iter().zip(&direct.samples) {
        assert_eq!(a.position, b.position);
        assert_eq!((a.s, a.t, a.theta, a.kappa, a.tau), (b.s, b.t, b.theta, b.kappa, b.tau));
        assert_eq!(a.frame, b.frame);
    }
}

#[test]
fn precession_row_at_zero() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("prec.csv");
    let (code, _, err) = cli(&["generate", "--family", "precession", "--mu-eq-m", "--n", "1/2", "--s", "-3:3:3001", "--out", p(&out)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let curve = read_csv_path(&out).unwrap();
    assert_eq!(curve.len(), 3001);
    let mid = curve.samples[1500];
    assert_eq!(mid.s, 0.0);
    let expect = [-1.443376, 0.0, -1.5];
    for (got, want) in mid.position.iter().zip(expect) {
        assert!((got - want).abs() < 1e-6, "{:?}", mid.position);
    }
}

#[test]
fn half_is_singular_for_closed_forms() {
    for family in ["salkowski", "anti-salkowski"] {
        let (code, _, err) = cli(&["generate", "--family", family, "--n", "1/2"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("2n - 1"), "{err}");
    }
}

#[test]
fn verify_salkowski_passes_with_sigma_m() {
    let dir = tempdir().unwrap();
    let json = dir.path().join("r.json");
    let (code, _, err) = cli(&["verify", "--family", "salkowski", "--n", "1/3", "--out", p(&json)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let rs = reports(&json);
    assert!(rs.iter().all(|r| r.pass != Some(false)));
    let sigma = rs.iter().find(|r| r.check == "sigma-constancy").unwrap();
    assert!(sigma.notes.iter().any(|n| n.contains("0.35355")), "{:?}", sigma.notes);
}

#[test]
fn negative_control_fails() {
    let dir = tempdir().unwrap();
    let json = dir.path().join("r.json");
    let (code, _, err) = cli(&["verify", "--family", "control-s2", "--out", p(&json)]);
    assert_eq!(code, EXIT_CHECK_FAILED, "{err}");
    let rs = reports(&json);
    for name in ["sigma-constancy", "slant-angle"] {
        assert_eq!(rs.iter().find(|r| r.check == name).unwrap().pass, Some(false), "{name}");
    }
}

#[test]
fn helix_control_slant_angle_not_asserted() {
    let dir = tempdir().unwrap();
    let json = dir.path().join("r.json");
    let (code, _, err) = cli(&["verify", "--family", "helix", "--kappa0", "2", "--tau0", "3", "--out", p(&json)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let rs = reports(&json);
    assert_eq!(rs.iter().find(|r| r.check == "slant-angle").unwrap().pass, None);
    let sigma = rs.iter().find(|r| r.check == "sigma-constancy").unwrap();
    assert_eq!(sigma.pass, Some(true));
}

#[test]
fn compare_routes() {
    let dir = tempdir().unwrap();
    let json = dir.path().join("c.json");
    let (code, _, err) = cli(&["compare", "--family", "salkowski", "--n", "1/3", "--step", "1e-4", "--tol", "1e-6", "--out", p(&json)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (code, _, err) = cli(&["compare", "--family", "anti-salkowski", "--n", "2/3", "--out", p(&json)]);
    assert_eq!(code, EXIT_OK, "{err}");

    let (code, _, _) = cli(&["compare", "--family", "salkowski", "--n", "1/3", "--step", "1e-1", "--out", p(&json)]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    let r = &reports(&json)[0];
    assert!(r.max > 1e-6);
    assert!(r.notes.iter().any(|n| n.contains("too coarse")), "{:?}", r.notes);
}

#[test]
fn figure_two_files_verify() {
    let dir = tempdir().unwrap();
    let (code, _, err) = cli(&["figure", "--which", "2", "--out-dir", p(dir.path())]);
    assert_eq!(code, EXIT_OK, "{err}");
    let dat = std::fs::read_to_string(dir.path().join("fig2.dat")).unwrap();
    assert_eq!(dat.split("\n\n").filter(|b| !b.trim().is_empty()).count(), 3);
    for (label, n) in [("n1_5", "1/5"), ("n1_13", "1/13"), ("n2_3", "2/3")] {
        let csv = dir.path().join(format!("fig2-anti-salkowski-{label}.csv"));
        let json = dir.path().join(format!("{label}.json"));
        let (code, _, err) = cli(&["verify", "--input", p(&csv), "--n", n, "--out", p(&json)]);
        assert_eq!(code, EXIT_OK, "{label}: {err}");
    }
}

#[test]
fn figure_captions() {
    let dir = tempdir().unwrap();
    for which in ["1", "3"] {
        assert_eq!(cli(&["figure", "--which", which, "--out-dir", p(dir.path())]).0, EXIT_OK);
    }
    for name in ["fig1-salkowski-n1_3", "fig1-salkowski-n1_8", "fig1-salkowski-n10_11", "fig3-precession-n1_2"] {
        assert!(dir.path().join(format!("{name}.csv")).exists(), "{name}");
    }
    assert_eq!(cli(&["figure", "--which", "4", "--out-dir", p(dir.path())]).0, EXIT_INVALID);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# salkowski run\nfamily = salkowski\nn = 1/8\nt = -1:1:101\n").unwrap();
    let out = dir.path().join("c.csv");
    let (code, _, err) = cli(&["generate", "--config", p(&cfg), "--n", "1/3", "--out", p(&out)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let curve = read_csv_path(&out).unwrap();
    assert_eq!(curve.len(), 101);
    let last = curve.samples[100];
    // θ = sin(nt)/m with the flag's n = 1/3, not the file's 1/8.
    let m3 = SlantParameters::with_n(1.0 / 3.0).unwrap().m();
    assert!((last.theta.unwrap() - (1.0f64 / 3.0).sin() / m3).abs() < 1e-15);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["generate", "--family", "salkowski", "--n", "2"]).0, EXIT_INVALID);
    assert_eq!(cli(&["generate", "--family", "salkowski", "--n", "abc"]).0, EXIT_INVALID);
    assert_eq!(cli(&["generate", "--family", "salkowski", "--n", "1/3", "--t", "1:0:5"]).0, EXIT_INVALID);
    assert_eq!(cli(&["verify", "--input", "/nonexistent/curve.csv"]).0, EXIT_IO);
    assert_eq!(cli(&["generate", "--config", "/nonexistent/run.conf"]).0, EXIT_IO);
    let (code, out, _) = cli(&["list-families"]);
    assert_eq!(code, EXIT_OK);
    for name in ["salkowski", "anti-salkowski", "precession", "control-s2"] {
        assert!(out.contains(name), "{out}");
    }
}

#[test]
fn obj_export() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("c.obj");
    let (code, _, err) =
        cli(&["generate", "--family", "salkowski", "--n", "1/3", "--t", "-1:1:51", "--format", "obj", "--out", p(&out)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 51);
    assert_eq!(text.lines().filter(|l| l.starts_with("l ")).count(), 1);
    assert!(!text.lines().any(|l| l.starts_with("f ")));
}
