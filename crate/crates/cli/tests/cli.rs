use std::io::Write;
use std::process::{Command, Output, Stdio};

use recon_core::graph::families::*;
use recon_core::graph6::encode_string;
use recon_core::{certificate, Deck};

fn recon(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_recon"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn recon");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn check_lists_witnesses() {
    let wheel = encode_string(&isolated_plus_wheel5());
    let out = recon(&["check", &wheel], None);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("v1=0 others={1} k=2"), "{text}");
    assert!(text.contains("v1=1 others={0} k=2"), "{text}");

    let out = recon(&["--porcelain", "check", &wheel], None);
    assert_eq!(stdout(&out), "v1=0 others={1} k=2\nv1=1 others={0} k=2\n");

    let out = recon(&["check", &encode_string(&two_stars_3_5())], None);
    assert_eq!(code(&out), 0);
}

#[test]
fn check_rejects_non_members_and_garbage() {
    let out = recon(&["check", &encode_string(&cycle(4))], None);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "not a class member\n");

    let out = recon(&["check", "%%garbage"], None);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 0"));
}

#[test]
fn check_reads_stdin() {
    let wheel = encode_string(&isolated_plus_wheel5());
    let out = recon(&["check", "-"], Some(&format!("{wheel}\n")));
    assert_eq!(code(&out), 0);
}

#[test]
fn deck_output() {
    let out = recon(&["deck", "Bw"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "A_\nA_\nA_\n");

    let out = recon(&["deck", "Bg"], None);
    assert_eq!(stdout(&out), "A?\nA_\nA_\n");

    assert_eq!(code(&recon(&["deck", "@"], None)), 2);
}

#[test]
fn reconstruct_member_deck() {
    let g = isolated_plus_wheel5();
    let deck = Deck::of(&g).unwrap().to_text();
    let out = recon(&["reconstruct", "-"], Some(&deck));
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("survivors: 1\n"), "{text}");
    assert!(text.contains(&format!("survivor: {}\n", certificate(&g))));

    let out = recon(&["--porcelain", "reconstruct", "-"], Some(&deck));
    let text = stdout(&out);
    assert!(text.contains("unique\ttrue\n"), "{text}");
}

#[test]
fn reconstruct_from_file() {
    let g = two_stars_3_5();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(Deck::of(&g).unwrap().to_text().as_bytes())
        .unwrap();
    let out = recon(&["reconstruct", file.path().to_str().unwrap()], None);
    assert_eq!(code(&out), 0);
}

#[test]
fn reconstruct_non_member_deck() {
    let deck = Deck::of(&cycle(4)).unwrap().to_text();
    let out = recon(&["reconstruct", "-"], Some(&deck));
    // no gap-isolated degrees, so nothing is attempted
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("unique: false"));
}

#[test]
fn reconstruct_rejects_bad_decks() {
    let out = recon(&["reconstruct", "-"], Some("A_\nA_\nBw\n"));
    assert_eq!(code(&out), 1);
    let out = recon(&["reconstruct", "-"], Some("Bw\nBw\nBw\nB?\n"));
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("illegitimate"));
    let out = recon(&["reconstruct", "-"], Some("A_\nA_\n!!\n"));
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_bounds_and_output() {
    let out = recon(&["verify", "3"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "n: 3\ngraphs_scanned: 4\nclass_members_found: 0\nmembers_with_unique_mate: 0\ncounterexamples: 0\n"
    );
    let out = recon(&["verify", "7"], None);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("counterexamples: 0\n"));
    assert_eq!(code(&recon(&["verify", "9"], None)), 2);
    assert_eq!(code(&recon(&["verify", "2"], None)), 2);
}

#[test]
fn verify_shards_add_up() {
    let field = |text: &str, key: &str| -> usize {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .trim()
            .parse()
            .unwrap()
    };
    let mut scanned = 0;
    let mut members = 0;
    for i in 0..3 {
        let shard = format!("{i}/3");
        let out = recon(&["verify", "6", "--shard", &shard], None);
        assert_eq!(code(&out), 0);
        scanned += field(&stdout(&out), "graphs_scanned:");
        members += field(&stdout(&out), "class_members_found:");
    }
    assert_eq!(scanned, 156);
    assert_eq!(members, 1);
    assert_eq!(code(&recon(&["verify", "6", "--shard", "3/3"], None)), 2);
}

#[test]
fn lemmas_suite() {
    let wheel = encode_string(&isolated_plus_wheel5());
    let out = recon(&["lemmas", &wheel, "--trials", "100", "--seed", "1"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "lemma1: pass (200 checks, 0 failures)\n\
         lemma2: pass (200 checks, 0 failures)\n\
         extension: pass (200 checks, 0 failures)\n"
    );

    let out = recon(&["lemmas", &encode_string(&cycle(4))], None);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not in class"));

    let out = recon(&["lemmas", &wheel, "--trials", "0"], None);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn generate_is_deterministic() {
    let a = recon(&["generate", "9", "--count", "3", "--seed", "42"], None);
    let b = recon(&["generate", "9", "--count", "3", "--seed", "42"], None);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    for line in stdout(&a).lines() {
        assert_eq!(code(&recon(&["check", line], None)), 0);
    }
    assert_eq!(code(&recon(&["generate", "4"], None)), 2);
}

#[test]
fn jobs_flag_is_accepted() {
    let out = recon(&["--jobs", "2", "verify", "5"], None);
    assert_eq!(code(&out), 0);
}
