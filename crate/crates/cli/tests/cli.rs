use std::io::Write;
use std::process::{Command, Output};

use bz_cli::run::Outcome;
use bz_cli::Record;

fn bz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn multiplicity_examples() {
    let o = bz(&["multiplicity", "su3", "1,1", "1,1", "1,1"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "2\n"));
    let o = bz(&["multiplicity", "su3", "0,0", "0,0", "0,0"]);
    assert_eq!(stdout(&o), "1\n");
    let o = bz(&[
        "multiplicity",
        "su4",
        "1,0,1",
        "1,0,1",
        "1,0,1",
        "--oracle",
        "--order-check",
    ]);
    assert_eq!(stdout(&o), "2\noracle: 2\n");
}

#[test]
fn polytope_has_nine_rows_in_eta_1() {
    let o = bz(&["polytope", "su3", "1,1", "1,1", "1,1"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# variables: eta_1"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    // n_1 − η_1 ≥ 0, N_1 + η_1 ≥ 0 and N'_1 − η_1 ≥ 0 close the last triangle
    assert_eq!(
        &rows[6..],
        ["-1*eta_1 >= -1", "-1*eta_1 >= -1", "1*eta_1 >= 0"]
    );
}

#[test]
fn emitted_polytope_counts_back() {
    let o = bz(&["polytope", "su4", "1,0,1", "1,1,0", "2,0,1"]);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(&o.stdout).unwrap();
    let counted = bz(&["count", file.path().to_str().unwrap()]);
    let direct = bz(&["multiplicity", "su4", "1,0,1", "1,1,0", "2,0,1"]);
    assert_eq!(stdout(&counted), stdout(&direct));
    let with = bz(&[
        "multiplicity",
        "su4",
        "1,0,1",
        "1,1,0",
        "2,0,1",
        "--emit-polytope",
    ]);
    assert_eq!(stdout(&with), format!("{}{}", stdout(&direct), stdout(&o)));
}

#[test]
fn planar_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "x >= 1\n-x >= -4\ny >= 6\nx + y >= 8\n-x - y >= -14\ny - x >= 4\nx - y >= -8"
    )
    .unwrap();
    let o = bz(&["count", file.path().to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "16\n"));
    writeln!(file, "y >= y + 1 >= 2").unwrap();
    assert_eq!(
        bz(&["count", file.path().to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["multiplicity", "su3", "1,1", "1,1"][..],
        &["multiplicity", "su3", "1,1", "1,1", "1,1,1"],
        &["multiplicity", "su3", "1,x", "1,1", "1,1"],
        &["threshold", "su4", "1,0,0", "1,0,0", "0,1,0", "1"],
        &["nonvanishing", "su5", "0,0,0,0", "0,0,0,0", "0,0,0,0"],
        &["frobnicate"],
        &["count", "/nonexistent/polytope.txt"],
    ] {
        let o = bz(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(bz(&["--help"]).status.code(), Some(0));
}

#[test]
fn decisions_and_explanations() {
    let o = bz(&["nonvanishing", "su3", "1,1", "1,1", "1,1"]);
    assert_eq!(stdout(&o), "true\n");
    let o = bz(&["threshold", "su3", "2,2", "2,2", "2,2", "2"]);
    assert_eq!(stdout(&o), "true\n");
    let o = bz(&["threshold", "su3", "2,2", "2,2", "2,2", "3", "--oracle"]);
    let text = stdout(&o);
    assert!(
        text.starts_with("false\n  violated #1: K <= lambda_1  (3 > 2)\n"),
        "{text}"
    );
    assert!(text.ends_with("oracle: T = 3\n"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn decomposition_json_round_trips() {
    let o = bz(&["decompose", "su3", "2,1", "1,1", "--json", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let record: Record = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&record).unwrap() + "\n", text);
    let Outcome::Decomposition { terms, dimension } = &record.result else {
        panic!("{text}")
    };
    assert_eq!(*dimension, 15 * 8);
    assert_eq!(
        terms
            .iter()
            .map(|t| t.multiplicity * t.dimension)
            .sum::<u128>(),
        120
    );
    assert!(terms.iter().all(|t| t.oracle == Some(t.multiplicity)));
}

#[test]
fn decompose_text_is_sorted_and_balanced() {
    let o = bz(&["decompose", "su4", "1,0,0", "0,0,1"]);
    assert_eq!(
        stdout(&o),
        "(0,0,0)  1  dim 1\n(1,0,1)  1  dim 15\n# dimension 16, sum of multiplicity x dim 16\n"
    );
}

#[test]
fn crosscheck_reports_and_is_deterministic() {
    let a = bz(&[
        "crosscheck",
        "su4",
        "--max-label",
        "1",
        "--oracle",
        "--json",
    ]);
    let b = bz(&[
        "crosscheck",
        "su4",
        "--max-label",
        "1",
        "--oracle",
        "--json",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let record: Record = serde_json::from_slice(&a.stdout).unwrap();
    let Outcome::Crosscheck {
        checked,
        discrepancies,
        triples,
        ..
    } = record.result
    else {
        panic!()
    };
    assert_eq!((discrepancies, triples.len()), (0, checked));
    assert!(triples.windows(2).all(|w| w[0].weights < w[1].weights));
    assert!(triples
        .iter()
        .all(|t| t.closed_form.is_some() && t.oracle.is_some()));
    let text = bz(&["crosscheck", "su3", "--max-label", "2"]);
    assert!(stdout(&text).ends_with("with labels <= 2: 0 discrepancies\n"));
}

#[test]
fn triangles_listing() {
    let o = bz(&["triangles", "su3", "1,1", "1,1", "1,1", "--json"]);
    let record: Record = serde_json::from_slice(&o.stdout).unwrap();
    let Outcome::Triangles { triangles } = record.result else {
        panic!()
    };
    assert_eq!(triangles.len(), 2);
    let o = bz(&["triangles", "su3", "1,0", "1,0", "0,0"]);
    assert_eq!(stdout(&o), "# 0 true triangles\n");
}
