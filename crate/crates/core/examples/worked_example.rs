//! Closures, join and box product of the two small hypergraphs
//! `H = {{v0}, {v0,v1}}` and `H′ = {{v′0,v′1}, {v′0,v′1,v′2}}`, compared
//! against the stored fixtures.

use hypermap::verify::{example_h, example_h_prime, example_outcomes};

fn main() -> hypermap::Result<()> {
    print!("H:\n{}", example_h());
    print!("H':\n{}", example_h_prime());
    for o in example_outcomes()? {
        let status = if o.identical() { "matches" } else { "differs from" };
        println!("== {} = {} ({} edges, {status} fixture)", o.name, o.expr, o.computed.len());
        print!("{}", o.computed);
        if !o.identical() {
            print!("-- fixture:\n{}", o.expected_text);
        }
    }
    Ok(())
}
