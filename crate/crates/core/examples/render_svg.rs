//! Writes an SVG of a planar packing to stdout.
use packinglab::catalog::get_builtin;
use packinglab::orbit::{generate_packing, split, Limits};
use packinglab::render::{items_from_orbit, render_svg, LabelMode, RenderOptions};
use packinglab::q;

fn main() {
    let e = get_builtin("bi1").unwrap();
    let (c, co) = split(&e.config, &[e.config.index_of("3").unwrap()]).unwrap();
    let orbit = generate_packing(&c, &co, &Limits::generations(12)).unwrap();
    let opts = RenderOptions {
        viewport: Some((q("-1/2"), q("-1/2"), q("3/2"), q("3/2"))),
        labels: LabelMode::Bends,
        ..Default::default()
    };
    print!("{}", render_svg(&items_from_orbit(&orbit, &co), &opts).unwrap());
}
