//! Doubling a configuration about one of its walls.
use packinglab::catalog::get_builtin;
use packinglab::groupwords::double;

fn main() {
    let base = get_builtin("d1n3-base").unwrap();
    let d = double(&base.config, base.config.index_of("3").unwrap(), true).unwrap();
    for (l, r) in d.config.labels().iter().zip(d.config.rows()) {
        println!("{:5} {}", l, r);
    }
    let g = d.config.gram();
    for i in 0..g.nrows() {
        println!("{}", g.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t"));
    }
}
