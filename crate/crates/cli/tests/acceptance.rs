//! CLI acceptance: byte-determinism of every output (criterion 12), the
//! documented exit codes, and clean JSON error behavior.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_algk")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

struct Fixtures {
    _dir: TempDir,
    pub z2ex: PathBuf,
    pub kx4: PathBuf,
    pub line_a: PathBuf,
    pub line_c: PathBuf,
    pub proj_map: PathBuf,
    pub zero_map: PathBuf,
}

fn fixtures() -> Fixtures {
    let dir = TempDir::new().unwrap();
    let write = |name: &str, content: &str| -> PathBuf {
        let path = dir.path().join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    };
    let z2ex = write("z2ex.alg", "field GF(2)\nbasis x y\nx * x = y\n");
    let kx4 = write(
        "kx4.alg",
        "field Q\nbasis x1 x2 x3 x4\n\
         x1 * x1 = x2\nx1 * x2 = x3\nx2 * x1 = x3\n\
         x1 * x3 = x4\nx3 * x1 = x4\nx2 * x2 = x4\n",
    );
    let line_a = write("a.alg", "field Q\nbasis a\n");
    let line_c = write("c.alg", "field Q\nbasis c\n");
    // projection of the char-2 example onto its quotient by span{y}:
    // x -> x, y -> 0 into the 1-dim abelian GF(2) algebra
    let quot = write("q1.alg", "field GF(2)\nbasis x\n");
    let proj_map = write("proj.map", "map x -> x\n");
    let zero_map = write("zero.map", "# zero morphism\n");
    let _ = quot;
    Fixtures {
        _dir: dir,
        z2ex,
        kx4,
        line_a,
        line_c,
        proj_map,
        zero_map,
    }
}

fn assert_deterministic(args: &[&str], expect_code: i32) -> Vec<u8> {
    let first = run(args);
    let second = run(args);
    assert_eq!(
        first.status.code(),
        Some(expect_code),
        "exit code for {args:?}: stderr {}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert_eq!(second.status.code(), Some(expect_code));
    assert_eq!(
        first.stdout, second.stdout,
        "stdout must be byte-identical across runs for {args:?}"
    );
    assert_eq!(first.stderr, second.stderr);
    first.stdout
}

/// Criterion 12: every golden invocation is byte-identical across two
/// consecutive runs, in text and JSON mode.
#[test]
fn criterion_12_byte_determinism() {
    let fx = fixtures();
    let z2 = fx.z2ex.to_str().unwrap();
    let kx4 = fx.kx4.to_str().unwrap();
    let a = fx.line_a.to_str().unwrap();
    let c = fx.line_c.to_str().unwrap();
    let dq = fx._dir.path().join("q1.alg");
    let q1 = dq.to_str().unwrap();
    let proj = fx.proj_map.to_str().unwrap();
    let zero = fx.zero_map.to_str().unwrap();

    // a failing identity exits 1 and prints the witness x -> x
    let out = assert_deterministic(&["check-identity", "--algebra", z2, "--poly", "xx"], 1);
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("holds: false"));
    assert!(text.contains("witness: x -> x"));

    assert_deterministic(&["check-identity", "--algebra", z2, "--poly", "xy + yx"], 0);
    for format in ["text", "json"] {
        assert_deterministic(
            &[
                "free",
                "--variety",
                "lie",
                "--letters",
                "x,y",
                "--degree",
                "2",
                "--format",
                format,
            ],
            0,
        );
        assert_deterministic(
            &["homog", "--poly", "xy - yx + (xy)z", "--format", format],
            0,
        );
        assert_deterministic(
            &[
                "kernel",
                "--algebra",
                z2,
                "--algebra",
                q1,
                "--map",
                proj,
                "--format",
                format,
            ],
            0,
        );
    }
    assert_deterministic(
        &[
            "orzech",
            "--variety",
            "qlie",
            "--lambda",
            "-1,-1,0,0,0,0,0,0,1,1,0,0,0,0,0,0",
            "--degree",
            "3",
        ],
        0,
    );
    assert_deterministic(
        &[
            "quotient",
            "--algebra",
            kx4,
            "--poly",
            "x2",
            "--poly",
            "x3",
            "--poly",
            "x4",
        ],
        0,
    );
    assert_deterministic(
        &["ideal", "--algebra", kx4, "--poly", "x2", "--poly", "x4"],
        0,
    );
    assert_deterministic(&["subalgebra", "--algebra", kx4, "--poly", "x2"], 0);
    assert_deterministic(
        &[
            "coproduct",
            "--algebra",
            a,
            "--algebra",
            c,
            "--variety",
            "alg",
            "--degree",
            "2",
        ],
        0,
    );
    assert_deterministic(
        &[
            "flat",
            "--algebra",
            a,
            "--algebra",
            c,
            "--variety",
            "alg",
            "--degree",
            "2",
        ],
        0,
    );
    assert_deterministic(&["derivations", "--algebra", q1], 0);
    assert_deterministic(&["commutator", "--algebra", kx4], 0);
    assert_deterministic(&["reflect", "--algebra", kx4, "--variety", "abelian"], 0);
    assert_deterministic(
        &[
            "implied",
            "--variety",
            "alternating",
            "--poly",
            "xy + yx",
            "--degree",
            "2",
        ],
        0,
    );
    // cokernel of the zero map into the char-2 example
    assert_deterministic(
        &["cokernel", "--algebra", q1, "--algebra", z2, "--map", zero],
        0,
    );
    assert_deterministic(&["product", "--algebra", a, "--algebra", c], 0);
    assert_deterministic(
        &["image", "--algebra", z2, "--algebra", q1, "--map", proj],
        0,
    );
    assert_deterministic(
        &[
            "coequalize",
            "--algebra",
            q1,
            "--algebra",
            z2,
            "--map",
            zero,
            "--map",
            zero,
        ],
        0,
    );
    assert_deterministic(
        &[
            "coherent",
            "--algebra",
            a,
            "--algebra",
            c,
            "--algebra",
            c,
            "--variety",
            "assoc",
            "--degree",
            "3",
        ],
        0,
    );
    println!("[criterion 12] CLI byte-determinism: PASS");
}

/// split-five and pullback on a product-shaped diagram, driven purely
/// through files.
#[test]
fn split_five_and_pullback_through_files() {
    let dir = TempDir::new().unwrap();
    let write = |name: &str, content: &str| -> String {
        let path = dir.path().join(name);
        std::fs::write(&path, content).unwrap();
        path.to_str().unwrap().to_string()
    };
    // all abelian, so every linear map is a morphism; B = A x C
    let a = write("a.alg", "field Q\nbasis a\n");
    let c = write("c.alg", "field Q\nbasis c\n");
    let b = write("b.alg", "field Q\nbasis p1 p2\n");
    let f = write("f.map", "map a -> p1\n");
    let g = write("g.map", "map p2 -> c\n");
    let s = write("s.map", "map c -> p2\n");
    let id_a = write("id_a.map", "map a -> a\n");
    let id_b = write("id_b.map", "map p1 -> p1\nmap p2 -> p2\n");
    let id_c = write("id_c.map", "map c -> c\n");

    let out = run(&[
        "split-five",
        "--algebra",
        &a,
        "--algebra",
        &b,
        "--algebra",
        &c,
        "--algebra",
        &a,
        "--algebra",
        &b,
        "--algebra",
        &c,
        "--map",
        &f,
        "--map",
        &g,
        "--map",
        &s,
        "--map",
        &f,
        "--map",
        &g,
        "--map",
        &s,
        "--map",
        &id_a,
        "--map",
        &id_b,
        "--map",
        &id_c,
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("beta_is_isomorphism: true"));

    // a broken diagram (s not a section of g) is rejected as input error
    let bad_s = write("bad_s.map", "# zero\n");
    let out = run(&[
        "split-five",
        "--algebra",
        &a,
        "--algebra",
        &b,
        "--algebra",
        &c,
        "--algebra",
        &a,
        "--algebra",
        &b,
        "--algebra",
        &c,
        "--map",
        &f,
        "--map",
        &g,
        "--map",
        &bad_s,
        "--map",
        &f,
        "--map",
        &g,
        "--map",
        &bad_s,
        "--map",
        &id_a,
        "--map",
        &id_b,
        "--map",
        &id_c,
    ]);
    assert_eq!(out.status.code(), Some(2));

    // pullback of g: B -> C along the identity of C is B itself
    let out = run(&[
        "pullback",
        "--algebra",
        &b,
        "--algebra",
        &c,
        "--algebra",
        &c,
        "--map",
        &g,
        "--map",
        &id_c,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pullback_dim: 2"));

    println!("[cli diagram verbs] split-five / pullback via files: PASS");
}

/// Exit code contract: 1 for property-false, 2 for input errors, 3 for
/// budget exhaustion; JSON mode writes nothing to stdout on failure.
#[test]
fn exit_codes_and_json_error_behavior() {
    let fx = fixtures();
    let z2 = fx.z2ex.to_str().unwrap();

    // property false
    let out = run(&["check-identity", "--algebra", z2, "--poly", "xx"]);
    assert_eq!(out.status.code(), Some(1));

    // implied false over GF(2)
    let out = run(&[
        "implied",
        "--variety",
        "anticomm",
        "--field",
        "GF(2)",
        "--poly",
        "xx",
        "--degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // parse error in the polynomial
    let out = run(&["check-identity", "--algebra", z2, "--poly", "xyz"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    // missing file
    let out = run(&[
        "check-identity",
        "--algebra",
        "/nonexistent.alg",
        "--poly",
        "xx",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // budget exceeded
    let out = run(&[
        "free",
        "--variety",
        "alg",
        "--letters",
        "x,y",
        "--degree",
        "6",
        "--max-basis",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // JSON mode: no partial output on error
    let out = run(&[
        "check-identity",
        "--algebra",
        z2,
        "--poly",
        "x(",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "no partial JSON on stdout");
    assert!(!out.stderr.is_empty());

    // quotient by a non-ideal is an input error (NotAnIdeal)
    let fx2 = fixtures();
    let kx4 = fx2.kx4.to_str().unwrap();
    let out = run(&["quotient", "--algebra", kx4, "--poly", "x2", "--poly", "x4"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("ideal"), "{msg}");

    // forcing symbolic mode over a finite field is inconclusive when the
    // generic polynomial is nonzero: flagged as an input/mode error
    let idem = fx2._dir.path().join("idem.alg");
    std::fs::write(&idem, "field GF(2)\nbasis e\ne * e = e\n").unwrap();
    let out = run(&[
        "check-identity",
        "--algebra",
        idem.to_str().unwrap(),
        "--poly",
        "xx - x",
        "--mode",
        "symbolic",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inconclusive"));
    // exhaustive mode settles it
    let out = run(&[
        "check-identity",
        "--algebra",
        idem.to_str().unwrap(),
        "--poly",
        "xx - x",
        "--mode",
        "exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(0));

    println!("[criterion 12 companion] exit codes + JSON error hygiene: PASS");
}

/// A handful of pinned end-to-end invocations.
#[test]
fn cli_shape_examples() {
    // free lie on two letters at degree 2 reports dimension 3
    let out = run(&[
        "free",
        "--variety",
        "lie",
        "--letters",
        "x,y",
        "--degree",
        "2",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dim: 3"));

    // orzech with the completed quasi-Lie assignment holds
    let out = run(&[
        "orzech",
        "--variety",
        "qlie",
        "--lambda",
        "-1,-1,0,0,0,0,0,0,1,1,0,0,0,0,0,0",
        "--degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("holds: true"));

    // homog split lists both components with type vectors
    let out = run(&["homog", "--poly", "xy - yx + (xy)z"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("type (x:1,y:1): xy - yx"));
    assert!(text.contains("type (x:1,y:1,z:1): (xy)z"));

    // exact: 0 -> K -> A -> A/I -> 0 via files
    let dir = TempDir::new().unwrap();
    let write = |name: &str, content: &str| -> String {
        let path = dir.path().join(name);
        std::fs::write(&path, content).unwrap();
        path.to_str().unwrap().to_string()
    };
    // A = K<x>/(deg>2) = span{x1, x2}, I = span{x2}, A/I 1-dim abelian
    let a = write("a.alg", "field Q\nbasis x1 x2\nx1 * x1 = x2\n");
    let i = write("i.alg", "field Q\nbasis k1\n");
    let qq = write("q.alg", "field Q\nbasis x1\n");
    let incl = write("incl.map", "map k1 -> x2\n");
    let proj = write("proj.map", "map x1 -> x1\n");
    let out = run(&[
        "exact",
        "--ses",
        "--algebra",
        &i,
        "--algebra",
        &a,
        "--algebra",
        &qq,
        "--map",
        &incl,
        "--map",
        &proj,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("exact: true"));

    println!("[cli examples] pinned invocations behave: PASS");
}
