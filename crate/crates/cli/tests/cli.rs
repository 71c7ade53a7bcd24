use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squeezelink")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn network_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("net.csv");
    let res = run(&["network", "--set", "n=1", "--set", "ideal=true", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let text = read(&out);
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,epsilon,ideal,fidelity,entropy_a_bc,entropy_ab_c,outcome,probability,eof_ac");
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().any(|l| l.contains("psi+,0.222222222222,1")), "{text}");
}

#[test]
fn config_file_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# single point\nepsilon = 0.1\nn = 0.6\n").unwrap();
    let res = run(&["steady", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    let text = String::from_utf8(res.stdout).unwrap();
    assert!(text.starts_with("model,epsilon,N,"));
    assert!(text.lines().nth(1).unwrap().starts_with("effective,0.1,0.6,"));
}

#[test]
fn invalid_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "epsilon = 0.1\ncolour = blue\n").unwrap();
    let res = run(&["steady", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&res), 1);
    assert!(String::from_utf8_lossy(&res.stderr).contains("line 2"));
    assert_eq!(code(&run(&["steady", "--model", "bogus"])), 1);
    assert_eq!(code(&run(&["steady", "--set", "m=5", "--set", "n=0.1"])), 1);
    assert_eq!(code(&run(&["sweep-eps", "--model", "full"])), 1);
    assert_eq!(code(&run(&["no-such-command"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn non_convergence_exits_two() {
    let res = run(&["steady", "--model", "full", "--n-max", "3", "--set", "max_steps=5", "--set", "n=0.3"]);
    assert_eq!(code(&res), 2, "{}", String::from_utf8_lossy(&res.stderr));
}

#[test]
fn truncation_tail_exits_three() {
    let res = run(&["steady", "--model", "full", "--n-max", "3", "--set", "n=0.3", "--set", "epsilon=0", "--tol", "1e-8"]);
    assert_eq!(code(&res), 3, "{}", String::from_utf8_lossy(&res.stderr));
}

#[test]
fn sweep_is_reproducible_and_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, summary) = (dir.path().join("a.csv"), dir.path().join("b.csv"), dir.path().join("opt.csv"));
    let args = |out: &Path| {
        vec![
            "sweep-eps".to_string(),
            "--set".into(),
            "epsilon=0,0.1".into(),
            "--set".into(),
            "n=0.4:0.8:0.1".into(),
            "--set".into(),
            format!("summary_out={}", summary.display()),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    for path in [&a, &b] {
        let owned = args(path);
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        assert_eq!(code(&run(&refs)), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(read(&a).lines().count(), 1 + 2 * 5);
    let opt = read(&summary);
    assert!(opt.starts_with("epsilon,n_best,"));
    assert!(opt.lines().nth(2).unwrap().starts_with("0.1,0.6,"), "{opt}");
}

#[test]
fn transfer_and_position_run() {
    let res = run(&["transfer", "--set", "epsilon=0", "--set", "n=1"]);
    assert_eq!(code(&res), 0);
    assert!(String::from_utf8(res.stdout).unwrap().contains(",1,2,0.918"));
    let res = run(&["position-avg", "--set", "s=0,0.2", "--set", "n=0.5", "--set", "epsilon=0.1", "--set", "quad_order=5"]);
    assert_eq!(code(&res), 0);
    assert_eq!(String::from_utf8(res.stdout).unwrap().lines().count(), 3);
}
