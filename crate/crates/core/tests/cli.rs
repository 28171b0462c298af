use chaotic_roots::cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("chaotic-roots").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn classify_newton_third() {
    let (code, out, _) = run(&["classify", "--method", "newton", "--theta", "1/3"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("eventually periodic, preperiod 0, period 2"),
        "{out}"
    );
    assert!(out.contains("0.(01)"), "{out}");
}

#[test]
fn classify_halley_ninth_blows_up() {
    let (code, out, _) = run(&["classify", "--method", "halley", "--theta", "1/9"]);
    assert_eq!(code, 0);
    assert!(out.contains("blows up at step 2"), "{out}");
    assert!(out.contains("base 3: 0.01"), "{out}");
}

#[test]
fn classify_halley_seventh_side_by_side() {
    let (_, out, _) = run(&["classify", "--method", "halley", "--theta", "1/7"]);
    let line = out.lines().next().unwrap();
    assert!(
        line.contains("period 6") && line.contains("0.(010212)"),
        "{line}"
    );
}

#[test]
fn classify_secant_and_zero_visit() {
    let (code, out, _) = run(&[
        "classify", "--method", "secant", "--theta", "1/8", "--theta1", "1/2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("period 12"), "{out}");
    let (_, out, _) = run(&["classify", "--method", "halley", "--theta", "1/6"]);
    assert!(
        out.contains("preperiod 1, period 1") && out.contains("x = 0"),
        "{out}"
    );
}

#[test]
fn disguise_schroeder() {
    let (code, out, err) = run(&["disguise", "--map", "schroeder3"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("(x^2 + 1)^(1) · (5x^2 + 1)^(-1/5)"), "{out}");
    let residual: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("residual: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual < 1e-25);
}

#[test]
fn verify_prints_small_error() {
    let (code, out, _) = run(&[
        "verify",
        "--method",
        "householder:4",
        "--theta",
        "3/11",
        "--steps",
        "12",
        "--digits",
        "60",
    ]);
    assert_eq!(code, 0);
    let err: f64 = out.trim().rsplit(' ').next().unwrap().parse().unwrap();
    assert!(err < 1e-30, "{out}");
}

#[test]
fn expand_in_any_base() {
    let (_, out, _) = run(&["expand", "--theta", "1/12", "--base", "3"]);
    assert_eq!(out.trim(), "0.0(02)");
    let (code, _, _) = run(&["expand", "--theta", "0.25"]);
    assert_eq!(code, 2);
}

#[test]
fn drift_summary_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("drift.csv");
    let path = path.to_str().unwrap();
    let args = [
        "drift", "--method", "newton", "--theta", "1/3", "--digits", "16", "--steps", "120",
        "--csv", path,
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert!(out.contains("first period failure: "), "{out}");
    assert!(!out.contains("first period failure: none"), "{out}");
    let first = std::fs::read(path).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("n,float_value,oracle_value,abs_error")
    );
    assert_eq!(text.lines().count(), 121);
    run(&args);
    assert_eq!(std::fs::read(path).unwrap(), first);
}

#[test]
fn iterate_prints_and_writes_csv() {
    let (code, out, _) = run(&[
        "iterate", "--method", "newton", "--theta", "sqrt2/2", "--steps", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    let (code, _, _) = run(&[
        "iterate",
        "--method",
        "secant",
        "--theta",
        "1/8",
        "--theta1",
        "1/2",
        "--steps",
        "5",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 6);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let render = |name: &str| {
        let path = dir.path().join(name);
        let args = [
            "render",
            "--map",
            "schroeder3",
            "--center",
            "-0.5,0.25",
            "--width",
            "2",
            "--height",
            "2",
            "--cols",
            "32",
            "--rows",
            "24",
            "--max-iter",
            "40",
            "--tol",
            "1e-8",
            "--shade",
            "--out",
            path.to_str().unwrap(),
        ];
        assert_eq!(run(&args).0, 0);
        std::fs::read(path).unwrap()
    };
    let a = render("a.ppm");
    assert!(a.starts_with(b"P6\n32 24\n255\n"));
    assert_eq!(a.len(), "P6\n32 24\n255\n".len() + 32 * 24 * 3);
    assert_eq!(a, render("b.ppm"));
}

#[test]
fn flag_errors_exit_two() {
    let (code, _, err) = run(&[
        "classify",
        "--method",
        "newton",
        "--theta",
        "1/3",
        "--frobnicate",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"), "{err}");
    assert_eq!(
        run(&["classify", "--method", "newtonish", "--theta", "1/3"]).0,
        2
    );
    assert_eq!(
        run(&["classify", "--method", "newton", "--theta", "1/0"]).0,
        2
    );
    assert_eq!(
        run(&["--digits", "4", "classify", "--method", "newton", "--theta", "1/3"]).0,
        2
    );
    assert_eq!(
        run(&["iterate", "--method", "secant", "--theta", "1/3"]).0,
        2
    );
    assert_eq!(
        run(&["iterate", "--method", "newton", "--theta", "1/3", "--theta1", "1/5"]).0,
        2
    );
    assert_eq!(run(&["render", "--cols", "0", "--out", "/dev/null"]).0, 2);
}

#[test]
fn computational_errors_exit_one() {
    // 1/4 blows up at step 2 under Newton, inside the requested horizon.
    let (code, _, err) = run(&["verify", "--method", "newton", "--theta", "1/4"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(
        run(&["drift", "--method", "schroeder3", "--theta", "1/3"]).0,
        1
    );
}
