use std::path::Path;

use g3pencil::io::{sample_grid, write_obj, Figure};

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn fig1b_obj(workers: usize) -> String {
    let pencil = Figure::Fig1b.config(false).pencil().unwrap();
    let mesh = sample_grid(&pencil, 40, 10, Some(workers)).unwrap();
    let mut out = Vec::new();
    write_obj(&mesh, &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

#[test]
fn fig1b_matches_frozen_obj() {
    let expected = fixture("fig1b_40x10.obj");
    for workers in [1, 2, 8] {
        let got = fig1b_obj(workers);
        if got != expected {
            let first = got
                .lines()
                .zip(expected.lines())
                .position(|(a, b)| a != b)
                .unwrap_or(0);
            panic!(
                "workers={workers}: first differing line {}: {:?} vs {:?}",
                first + 1,
                got.lines().nth(first),
                expected.lines().nth(first)
            );
        }
    }
}

#[test]
fn fixture_shape() {
    let text = fixture("fig1b_40x10.obj");
    let count = |tag: &str| text.lines().filter(|l| l.starts_with(tag)).count();
    assert_eq!((count("v "), count("vn "), count("f ")), (400, 400, 2 * 39 * 9));
}
