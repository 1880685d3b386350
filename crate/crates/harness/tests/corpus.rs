use hypercx_harness::{run_corpus, CorpusSpec, EntryOutcome, Status};

#[test]
fn default_corpus_passes() {
    let spec = CorpusSpec::default();
    let start = std::time::Instant::now();
    let report = run_corpus(&spec);
    let elapsed = start.elapsed();
    let verified: Vec<_> = report.reports().collect();
    let skipped: Vec<_> = report
        .entries
        .iter()
        .filter_map(|e| match e {
            EntryOutcome::Skipped { name, reason } => Some(format!("{name}: {reason}")),
            EntryOutcome::Verified(_) => None,
        })
        .collect();
    for r in &verified {
        for c in r.failures() {
            eprintln!("{} {} {}", r.subject, c.id, c.witness);
        }
    }
    assert!(skipped.is_empty(), "{skipped:?}");
    assert!(verified.len() >= 50, "{} graphs", verified.len());
    let with_cut = verified
        .iter()
        .filter(|r| r.check("c.whole.relcont-model").is_some_and(|c| c.status == Status::Skipped))
        .count();
    assert!(with_cut >= 10, "{with_cut} graphs with cut vertices");
    assert!(report.passed(), "{} failures", report.failure_count());
    eprintln!("{} graphs in {elapsed:?}", verified.len());
    let largest = verified.iter().map(|r| r.wall_time).max().unwrap();
    eprintln!("slowest entry {largest:?}");
}
