use endspace::catalog;
use endspace::oracle::{query_matrix, run_matrix, DEFAULT_MAX_DEPTH, DEFAULT_WINDOW};

#[test]
fn engine_agrees_with_truncations_on_the_matrix() {
    let ps = catalog::all();
    let entries = query_matrix(&ps);
    assert!(entries.len() >= 300, "{} queries", entries.len());
    let rows = run_matrix(&entries, &ps, DEFAULT_MAX_DEPTH, DEFAULT_WINDOW).unwrap();
    let bad: Vec<_> = rows.iter().filter(|r| !r.agree).collect();
    eprintln!("{} queries", rows.len());
    for r in &bad {
        eprintln!(
            "{} | {} | symbolic {:?} oracle {:?} {:?}",
            r.presentation, r.query, r.symbolic, r.oracle, r.error
        );
    }
    assert!(bad.is_empty(), "{} of {} disagree", bad.len(), rows.len());
}
