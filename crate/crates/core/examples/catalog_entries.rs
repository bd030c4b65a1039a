//! Lists and validates the bundled configurations.
use packinglab::catalog::{get_builtin, list_builtin, validate};

fn main() {
    for id in list_builtin() {
        let e = get_builtin(id).unwrap();
        let rep = validate(&e);
        println!(
            "{:16} dim {} rows {:2} gram {:5} clusters {} {}",
            id,
            e.config.dim(),
            e.config.len(),
            rep.gram_checked,
            rep.clusters_checked,
            rep.cluster_findings.join("; ")
        );
    }
}
