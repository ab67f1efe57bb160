use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::io::Write;

use planedraw::cli::run;
use planedraw::io::parse_document;
use planedraw::verify;

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    path.to_string_lossy().into_owned()
}

/// Runs the CLI in-process with `stdin` as input.
fn cli(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["planedraw"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn gen_draw_verify_pipeline() {
    let (code, k4, _) = cli(&["gen", "k4"], "");
    assert_eq!(code, 0);
    let (code, drawn, _) = cli(&["draw", "--strategy", "footnote"], &k4);
    assert_eq!(code, 0);
    let (code, out, _) = cli(&["verify"], &drawn);
    assert_eq!((code, out.as_str()), (0, "PASS\n"));
}

#[test]
fn binary_pipes_through_stdio() {
    let bin = env!("CARGO_BIN_EXE_planedraw");
    let spawn = |args: &[&str], input: &[u8]| {
        let mut child = Command::new(bin)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(input).unwrap();
        child.wait_with_output().unwrap()
    };
    let g = spawn(&["gen", "random", "15", "--seed", "4"], b"");
    assert!(g.status.success());
    let d = spawn(&["draw", "-"], &g.stdout);
    assert!(d.status.success());
    let v = spawn(&["verify"], &d.stdout);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn exit_codes_on_fixture_corpus() {
    let cases = [
        (vec!["verify", "bowtie.pg"], 1),
        (vec!["verify", "k4.pg"], 0),
        (vec!["verify", "k4-thirds.pg"], 0),
        (vec!["verify", "triangle.pg"], 0),
        (vec!["verify", "octahedron.pg"], 0),
        (vec!["verify", "k4-graph.pg"], 2),
        (vec!["verify", "disconnected.pg"], 2),
        (vec!["draw", "disconnected.pg"], 2),
        (vec!["draw", "k4-graph.pg"], 0),
        (vec!["draw", "wheel7.pg"], 0),
        (vec!["draw", "cycle5.pg", "--kernel", "float"], 0),
        (vec!["triangulate", "cycle5.pg"], 0),
        (vec!["stats", "octahedron.pg"], 0),
        (vec!["stats", "disconnected.pg"], 2),
    ];
    for (args, expected) in cases {
        let mut argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        argv[1] = fixture(&argv[1]);
        let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
        let (code, _, err) = cli(&refs, "");
        assert_eq!(code, expected, "{args:?}: {err}");
    }
}

#[test]
fn bowtie_reports_one_crossing_as_json() {
    let (code, out, _) = cli(&["--json", "verify", &fixture("bowtie.pg")], "");
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["passed"], false);
    let violations = report["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 1);
    assert_eq!(violations[0]["kind"], "crossing");
}

#[test]
fn disconnected_draw_is_a_structural_error() {
    let (code, out, err) = cli(&["--json", "draw", &fixture("disconnected.pg")], "");
    assert_eq!(code, 2);
    assert!(err.contains("[connected]"), "{err}");
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["error"]["kind"], "structure");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&[], "").0, 2);
    assert_eq!(cli(&["draw", "--strategy", "sideways"], "").0, 2);
    assert_eq!(cli(&["gen", "wheel"], "").0, 2);
    assert_eq!(cli(&["gen", "wheel", "3"], "").0, 2);
    assert_eq!(cli(&["verify", "/nonexistent/file.pg"], "").0, 2);
    assert_eq!(cli(&["verify"], "not a graph").0, 2);
    assert_eq!(cli(&["--help"], "").0, 0);
}

#[test]
fn draw_writes_files_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("oct.pg");
    let svg = dir.path().join("oct.svg");
    let (code, stdout, _) = cli(
        &[
            "draw",
            &fixture("octahedron.pg"),
            "-o",
            out.to_str().unwrap(),
            "--svg",
            svg.to_str().unwrap(),
            "--seed",
            "9",
        ],
        "",
    );
    assert_eq!((code, stdout.as_str()), (0, ""));
    let doc = parse_document(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(verify(&doc.graph, doc.drawing.as_ref().unwrap()).unwrap().passed);
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches("<circle ").count(), 6);
    assert_eq!(svg.matches("<line ").count(), 12);
}

#[test]
fn verify_svg_highlights_violations() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("bowtie.svg");
    let (code, _, _) = cli(&["verify", &fixture("bowtie.pg"), "--svg", svg.to_str().unwrap()], "");
    assert_eq!(code, 1);
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches(r#"class="violation""#).count(), 2);
}

#[test]
fn stats_reports_census() {
    let (_, graph, _) = cli(&["gen", "stacked", "2"], "");
    let (code, out, _) = cli(&["--json", "stats"], &graph);
    assert_eq!(code, 0);
    let stats: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(stats["vertices"], 6);
    assert_eq!(stats["edges"], 12);
    assert_eq!(stats["faces"], 8);
    assert_eq!(stats["separating_triangles"].as_array().unwrap().len(), 2);
    let (_, text, _) = cli(&["stats", &fixture("cycle5.pg")], "");
    assert!(text.contains("faces: 2"), "{text}");
}

#[test]
fn triangulate_outputs_a_triangulation() {
    let (code, out, err) = cli(&["triangulate", &fixture("wheel7.pg")], "");
    assert_eq!(code, 0);
    assert!(err.contains("added 3 edge(s)"), "{err}");
    let g = parse_document(&out).unwrap().graph;
    assert!(g.is_triangulation());
}
