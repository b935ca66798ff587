use std::process::Command;

fn ecdlp(args: &[&str], threads: &str) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_ecdlp"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn experiment_csv_is_independent_of_thread_count() {
    let args = ["experiment", "--n", "11", "--m", "3", "--t", "3", "--k", "4", "--B", "random", "--trials", "12", "--seed", "9"];
    let one = ecdlp(&args, "1");
    let four = ecdlp(&args, "4");
    assert_eq!(one, four);
    let mut rdr = csv::Reader::from_reader(one.as_bytes());
    assert!(rdr.headers().unwrap().iter().any(|h| h == "d_max"));
    assert_eq!(rdr.records().count(), 1);
}

#[test]
fn table3_first_row() {
    let out = ecdlp(&["table3"], "1");
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,2^(n/2),m,stage1,stage2"));
    assert_eq!(lines.next(), Some("100,1.13e15,6,7.49e31,1.08e10"));
    assert_eq!(out.lines().count(), 13);
}

#[test]
fn sumpoly_prints_s3() {
    let out = ecdlp(&["sumpoly", "--m", "3", "--B", "one", "--n", "5"], "1");
    assert!(out.contains("x1*x2*x3"));
    assert!(out.contains("5 terms"));
}

#[test]
fn solve_finishes_with_a_checked_log() {
    let out = ecdlp(&["solve", "--n", "11", "--seed", "3", "--check-pollard"], "2");
    assert!(out.contains("zP = Q holds"), "{out}");
}
