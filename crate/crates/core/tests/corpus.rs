use fibercone::corpus::{run_corpus, Corpus, Status};
use fibercone::Budget;

#[test]
fn bundled_corpus_passes() {
    let corpus = Corpus::bundled();
    assert!(corpus.case.len() >= 30);
    let report = run_corpus(&corpus, &Budget::default(), 0).unwrap();
    for case in &report.cases {
        if case.status != Status::Pass {
            panic!(
                "{} failed: {:?} {:?}",
                case.name,
                case.message,
                case.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>()
            );
        }
    }
    assert!(report.all_passed());
}

#[test]
fn reruns_are_identical() {
    let corpus = Corpus::bundled();
    let strip = |r: fibercone::corpus::RunReport| {
        r.cases
            .into_iter()
            .map(|c| (c.name, c.status, c.checks))
            .collect::<Vec<_>>()
    };
    let b = Budget::default();
    let small = Corpus {
        case: corpus.case.into_iter().take(8).collect(),
    };
    assert_eq!(
        strip(run_corpus(&small, &b, 2).unwrap()),
        strip(run_corpus(&small, &b, 1).unwrap())
    );
}

#[test]
#[ignore]
fn timing() {
    let corpus = Corpus::bundled();
    let report = run_corpus(&corpus, &Budget::default(), 1).unwrap();
    for c in &report.cases {
        println!("{:>8} {}", c.wall_ms, c.name);
    }
}
