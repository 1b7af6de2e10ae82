//! Acceptance gate: runs every criterion in the verification suite and
//! prints one pass/fail line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use oshyper::verification::criteria;

#[test]
fn acceptance() {
    let mut failures = vec![];
    for c in criteria() {
        let start = Instant::now();
        let result = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        match &result {
            Ok(()) => println!("PASS  {:<22} ({secs:7.2}s)  {}", c.name, c.summary),
            Err(msg) => {
                println!("FAIL  {:<22} ({secs:7.2}s)  {msg}", c.name);
                failures.push((c.name, msg.clone()));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
