use digitnet::acceptance::criteria;

fn main() {
    let mut failures = Vec::new();
    for c in criteria() {
        let r = c.run();
        println!("{r}");
        if !r.passed {
            failures.push(r.id);
        }
    }
    if failures.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failing criteria {failures:?}");
        std::process::exit(1);
    }
}
