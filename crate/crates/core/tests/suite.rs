use std::time::Instant;

use artinloc::checks::{run_all, Status};
use artinloc::{fixtures, Options};

#[test]
fn invariant_suite_on_every_fixture() {
    let opts = Options::default();
    let mut failures = Vec::new();
    for a in fixtures::all() {
        let t = Instant::now();
        for o in run_all(&a, &opts) {
            eprintln!("{:6} {:28} {:8} {}", a.label(), o.name, o.status.to_string(), o.detail);
            if o.status == Status::Fail {
                failures.push(format!("{}: {} {}", a.label(), o.name, o.detail));
            }
        }
        eprintln!("{} took {:?}", a.label(), t.elapsed());
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn sequential_and_parallel_agree() {
    use artinloc::localization::{localization_report, two_sided_report};
    use artinloc::oracle::{brute_idempotents, brute_radical};
    use artinloc::{Exec, Side};

    let seq = Options::default().with_exec(Exec::Sequential);
    let par = Options::default().with_exec(Exec::Parallel);
    for a in fixtures::all() {
        for side in [Side::Left, Side::Right] {
            let x = format!("{:?}", localization_report(&a, side, &seq).unwrap());
            let y = format!("{:?}", localization_report(&a, side, &par).unwrap());
            assert_eq!(x, y, "{}", a.label());
        }
        assert_eq!(format!("{:?}", two_sided_report(&a, &seq)), format!("{:?}", two_sided_report(&a, &par)));
        if a.element_count() <= 20_000 {
            assert_eq!(brute_radical(&a, &seq).unwrap(), brute_radical(&a, &par).unwrap());
            assert_eq!(brute_idempotents(&a, &seq).unwrap().members, brute_idempotents(&a, &par).unwrap().members);
        }
        let xs: Vec<String> = run_all(&a, &seq).iter().map(|o| format!("{o:?}")).collect();
        let ys: Vec<String> = run_all(&a, &par).iter().map(|o| format!("{o:?}")).collect();
        assert_eq!(xs, ys, "{}", a.label());
    }
}
