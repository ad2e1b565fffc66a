use std::time::Instant;

use wrmc::bicat::check_axioms;
use wrmc::bimod::Bim;
use wrmc::corpus::random::bim_samples;
use wrmc::exactla::Field;

#[test]
fn random_tuples_satisfy_all_axioms() {
    let field = Field::Prime(101);
    let start = Instant::now();
    let samples = bim_samples(field, 11, 20, 3).unwrap();
    let report = check_axioms(&Bim::new(field), &samples);
    for c in report.failures() {
        eprintln!("{}: {:?}", c.name, c.outcome);
    }
    assert!(report.ok());
    eprintln!("{} checks in {:?}", report.len(), start.elapsed());
}
