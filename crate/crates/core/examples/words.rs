//! Generator words acting on a configuration.
use packinglab::catalog::get_builtin;
use packinglab::groupwords::{eval_word, parse_word};

fn main() {
    let e = get_builtin("d3n3").unwrap();
    for w in ["1", "2.1", "(2.1).3", "2.1.2.3", "~4"] {
        let word = parse_word(w).unwrap();
        println!("{:10} -> {}", w, eval_word(&word, &e.config).unwrap());
    }
}
