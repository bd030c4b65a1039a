//! Gram matrix, Coxeter diagram and cluster search for a stored configuration.
use packinglab::catalog::get_builtin;
use packinglab::coxeter::{diagram, enumerate_clusters, export_dot, ClusterOptions, DEFAULT_MAX_ORDER};

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "d3n11".into());
    let e = get_builtin(&id).unwrap();
    let g = e.config.gram();
    for i in 0..g.nrows() {
        let row: Vec<String> = g.row(i).iter().map(|x| x.to_string()).collect();
        println!("{}", row.join("\t"));
    }
    let d = diagram(&g, DEFAULT_MAX_ORDER).unwrap();
    println!("{}", export_dot(&d, Some(e.config.labels())));
    for c in enumerate_clusters(&g, ClusterOptions::default()).unwrap() {
        let ls: Vec<&str> = c.iter().map(|&i| e.config.labels()[i].as_str()).collect();
        println!("cluster {{{}}}", ls.join(","));
    }
}
