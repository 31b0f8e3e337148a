use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ageprofile"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
        .unwrap_or_else(|| panic!("no row {key} in\n{out}"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn profile_of_builtins() {
    let o = run(&["profile", "builtin:T3", "--max-n", "11"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let values: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    assert_eq!(
        values,
        ["1", "1", "1", "2", "2", "3", "5", "6", "8", "11", "13", "16"]
    );

    let o = run(&[
        "profile",
        "builtin:colored-chain:2",
        "--max-n",
        "5",
        "--format",
        "record",
    ]);
    let record: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(record["values"], serde_json::json!([1, 2, 4, 8, 16, 32]));
    assert_eq!(record["pass"], serde_json::json!(true));
}

#[test]
fn empty_structure_has_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "empty.toml", "kind = \"structure\"\nsize = 0\n");
    let o = run(&["profile", &f]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n\tphi\n0\t1\n");
}

#[test]
fn series_fits_and_failures() {
    let o = run(&["series", "builtin:two-cliques", "--denominator", "1,2"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "numerator"), "1");

    let o = run(&["series", "builtin:T2", "--denominator", "1,1"]);
    assert_eq!(value(&stdout(&o), "numerator"), "1 - x + x^3 - x^4 + x^5");

    let o = run(&["series", "builtin:T2", "--denominator", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(value(&out, "result"), "FAIL");
    assert!(value(&out, "residuals").split(',').any(|r| r != "0"));

    let o = run(&[
        "series",
        "builtin:C3omega",
        "--max-n",
        "9",
        "--denominator-poly",
        "1,-1,0,-1",
    ]);
    assert_eq!(value(&stdout(&o), "numerator"), "1");
}

#[test]
fn decompositions() {
    let o = run(&["decompose", "builtin:T2"]);
    let out = stdout(&o);
    assert_eq!(value(&out, "blocks"), "3");
    assert_eq!(value(&out, "infinite_blocks"), "2");
    assert_eq!(value(&out, "finite_total"), "1");

    let o = run(&["decompose", "builtin:clique:4"]);
    assert_eq!(value(&stdout(&o), "blocks"), "1");

    let dir = tempfile::tempdir().unwrap();
    let mut edges = Vec::new();
    for a in 0..6 {
        for b in 0..6 {
            if a != b {
                edges.push(format!("[{a}, {b}]"));
            }
        }
    }
    let text = format!(
        "kind = \"structure\"\nsize = 12\n[[symbols]]\nname = \"E\"\narity = 2\ntuples = [{}]\n",
        edges.join(", ")
    );
    let f = write(dir.path(), "k6i6.toml", &text);
    let o = run(&["decompose", &f]);
    assert_eq!(value(&stdout(&o), "blocks"), "2");
}

#[test]
fn algebra_checks() {
    let o = run(&[
        "algebra",
        "builtin:colored-chain:2",
        "--check",
        "e-regular",
        "--max-degree",
        "6",
    ]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "result"), "PASS");

    let o = run(&[
        "algebra",
        "builtin:colored-chain:2",
        "--check",
        "zero-divisors",
        "--max-degree",
        "3",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("result\tnone found"));

    for name in ["omega", "T1", "T2", "T3", "C3omega"] {
        let b = format!("builtin:{name}");
        let o = run(&[
            "algebra",
            &b,
            "--check",
            "tournament-identity",
            "--max-degree",
            "5",
        ]);
        assert!(o.status.success(), "{name}");
        assert!(stdout(&o).ends_with("result\tPASS\n"), "{name}");
    }

    let o = run(&[
        "algebra",
        "builtin:two-cliques",
        "--check",
        "tournament-identity",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn incidence_reports() {
    let o = run(&["incidence", "--m", "5", "--n", "2", "--k", "1"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "m\tn\tk\trank\trows\tstatus\n5\t2\t1\t10\t10\tFULL\n"
    );

    let o = run(&["incidence", "--m", "2", "--n", "1", "--k", "1", "--dump"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("2\t1\t1\t1\t2\tDEFICIENT (hypothesis 2n+k<=m unmet)"));
    assert!(out.ends_with("2 1 1 2 1\n1\n1\n"));

    let o = run(&["incidence", "--sweep", "12"]);
    assert!(o.status.success());
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 252);
    assert!(rows.iter().all(|r| r.ends_with("\tFULL")));
}

#[test]
fn tournament_reports() {
    let o = run(&["tournament", "builtin:T3"]);
    assert_eq!(value(&stdout(&o), "regime"), "polynomial (degree 2)");
    let o = run(&["tournament", "builtin:C3omega"]);
    assert_eq!(value(&stdout(&o), "regime"), "at least exponential");
    let o = run(&["tournament", "builtin:omega"]);
    assert_eq!(value(&stdout(&o), "regime"), "polynomial (degree 0)");
    let o = run(&["tournament", "builtin:c3"]);
    let out = stdout(&o);
    assert_eq!(value(&out, "regime"), "finite");
    assert_eq!(value(&out, "components"), "{0} {1} {2}");
    let o = run(&["tournament", "builtin:path:4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn presentation_files_match_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let lexsum = write(
        dir.path(),
        "t2.toml",
        r#"
kind = "lexsum"
index_size = 3
index_arcs = [[0, 1], [1, 2], [2, 0]]

[[blocks]]
kind = "acyclic-tournament"
size = "omega"

[[blocks]]
kind = "acyclic-tournament"
size = "omega"

[[blocks]]
kind = "clique"
size = 1
"#,
    );
    let from_file = stdout(&run(&["profile", &lexsum, "--max-n", "7"]));
    let builtin = stdout(&run(&["profile", "builtin:T2", "--max-n", "7"]));
    assert_eq!(from_file, builtin);

    let chain = write(
        dir.path(),
        "chain2.toml",
        r#"
kind = "multichain"
slices = 2

[[symbols]]
name = "red"
arity = 1
slices = [0]

[[symbols]]
name = "blue"
arity = 1
slices = [1]

[[symbols]]
name = "order"
arity = 2
less = [[0, 0], [0, 1], [1, 0], [1, 1]]
equal = [[0, 1]]
"#,
    );
    let from_file = stdout(&run(&["profile", &chain, "--max-n", "6"]));
    let builtin = stdout(&run(&[
        "profile",
        "builtin:colored-chain:2",
        "--max-n",
        "6",
    ]));
    assert_eq!(from_file, builtin);

    let by_name = write(
        dir.path(),
        "named.toml",
        "kind = \"builtin\"\nname = \"T3\"\n",
    );
    assert_eq!(
        stdout(&run(&["profile", &by_name, "--max-n", "9"])),
        stdout(&run(&["profile", "builtin:T3", "--max-n", "9"]))
    );
}

#[test]
fn dumped_structures_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for input in [
        "builtin:path:6",
        "builtin:c3",
        "builtin:T2",
        "builtin:colored-chain:2",
    ] {
        let first = stdout(&run(&["dump", input]));
        let path = write(dir.path(), "dumped.toml", &first);
        let second = stdout(&run(&["dump", &path]));
        assert_eq!(first, second, "{input}");
        assert_eq!(
            stdout(&run(&["profile", &path])),
            stdout(&run(&["profile", &path])),
            "deterministic output"
        );
    }
}

#[test]
fn input_errors_exit_2_with_locations() {
    let dir = tempfile::tempdir().unwrap();
    let bad_toml = write(dir.path(), "bad.toml", "kind = \"structure\"\nsize = \n");
    let o = run(&["profile", &bad_toml]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let unknown_key = write(
        dir.path(),
        "key.toml",
        "kind = \"structure\"\nsize = 2\ncolour = 1\n",
    );
    assert_eq!(run(&["profile", &unknown_key]).status.code(), Some(2));

    let out_of_range = write(
        dir.path(),
        "range.toml",
        "kind = \"structure\"\nsize = 2\n[[symbols]]\nname = \"E\"\narity = 2\ntuples = [[0, 5]]\n",
    );
    assert_eq!(run(&["profile", &out_of_range]).status.code(), Some(2));

    let bad_block = write(
        dir.path(),
        "block.toml",
        "kind = \"lexsum\"\nindex_size = 1\n[[blocks]]\nkind = \"wheel\"\nsize = 2\n",
    );
    let o = run(&["profile", &bad_block]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("wheel"));

    assert_eq!(
        run(&["profile", "builtin:nonexistent"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["incidence", "--m", "3"]).status.code(), Some(2));
}
