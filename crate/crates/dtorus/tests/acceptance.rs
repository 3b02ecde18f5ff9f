use dtorus::acceptance::{run, CRITERIA};

fn main() {
    let mut failed = 0;
    for id in 1..=CRITERIA.len() {
        let c = run(id);
        let mark = if c.passed { "PASS" } else { "FAIL" };
        println!(
            "[{mark}] {:>2}. {} ({:.1}s): {}",
            c.id, c.name, c.seconds, c.detail
        );
        failed += usize::from(!c.passed);
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
