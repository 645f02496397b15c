use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_listchroma"))
        .args(args)
        .env_remove("LISTCHROMA_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn header(text: &str) -> &str {
    text.lines().find(|l| l.starts_with('p')).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const K33: &str = "p mwlcp 6 9 3
e 1 4
e 1 5
e 1 6
e 2 4
e 2 5
e 2 6
e 3 4
e 3 5
e 3 6
w 1 1
w 2 1
w 3 1
l 1 2 1 2
l 2 2 1 3
l 3 2 2 3
l 4 2 1 2
l 5 2 1 3
l 6 2 2 3
";

#[test]
fn generate_flags() {
    let o = run(&["generate", "--n", "50", "--p", "0.5", "--c", "1.0", "--q", "0.5", "--seed", "1"]);
    assert!(o.status.success());
    assert_eq!(header(&stdout(&o)).split(' ').nth(4), Some("50"));
    assert!(stdout(&o).contains("c weights=unit seed=1 prng=chacha8"));

    let o = run(&["generate", "--c", "0.5", "--n", "50"]);
    assert_eq!(header(&stdout(&o)).split(' ').nth(4), Some("25"));

    let o = run(&["generate", "--n", "10", "--p", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn seed_falls_back_to_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_listchroma"))
        .args(["generate", "--n", "12"])
        .env("LISTCHROMA_SEED", "5")
        .output()
        .unwrap();
    let explicit = run(&["generate", "--n", "12", "--seed", "5"]);
    assert_eq!(stdout(&with_env), stdout(&explicit));
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let single = write(dir.path(), "one.txt", "p mwlcp 1 0 2\nw 1 4\nw 2 3\nl 1 2 1 2\n");
    let o = run(&["solve", "--kv", &single]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("weight=3\n") && stdout(&o).contains("v.1=2\n"));

    let k33 = write(dir.path(), "k33.txt", K33);
    assert_eq!(run(&["solve", &k33]).status.code(), Some(2));

    let gen = run(&["generate", "--n", "30", "--seed", "2"]);
    let big = write(dir.path(), "big.txt", &stdout(&gen));
    let o = run(&["solve", "--kv", "--time-limit", "0", &big]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("status=time_limit") && !stdout(&o).contains("v.1="));

    let broken = write(dir.path(), "broken.txt", "p mwlcp 2 1 1\ne 1 9\n");
    let o = run(&["solve", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn check_modes() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(&["generate", "--n", "8", "--seed", "11"]);
    let inst = write(dir.path(), "i.txt", &stdout(&gen));
    let record = dir.path().join("r.txt");
    let o = run(&["solve", &inst, "--out", record.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", &inst, record.to_str().unwrap(), "--oracle"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("oracle: match"));

    let tri = write(dir.path(), "t.txt", "p mwlcp 2 1 2\ne 1 2\nw 1 1\nw 2 1\nl 1 2 1 2\nl 2 2 1 2\n");
    let bad = write(dir.path(), "bad.txt", "v 1 1\nv 2 1\n");
    let o = run(&["check", &tri, &bad]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("edge"));
}

#[test]
fn bench_table() {
    let o = run(&["bench", "--n", "20", "--p", "0.5", "--c", "1.0", "--q", "0.5", "--instances", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("nodes") && lines[0].contains("time"));
    assert!(!lines[1].contains('(') && !lines[1].contains("--"));

    let o = run(&["bench", "--n", "20", "--instances", "2", "--time-limit", "0"]);
    assert!(stdout(&o).lines().nth(1).unwrap().contains("--"));
}
