//! Turning angles, arc windows and inner offsets of the built-in boundaries.

use std::f64::consts::{SQRT_2, TAU};

use otlab::criterion::min_arc_turning;
use otlab::examples::{make_disk, make_half_annulus, make_rectangle, make_squareman};
use otlab::geometry::{eps_max, offset_curve, Domain};

fn main() -> otlab::Result<()> {
    let domains: Vec<(&str, Domain)> = vec![
        ("disk", make_disk(1.0)?),
        ("square", make_rectangle(1.0, 1.0)?),
        ("half-annulus", make_half_annulus(1.0, SQRT_2)?),
        ("squareman", make_squareman(1.0, 1.0, 0.6, 0.3)?),
    ];
    println!("{:<14} {:>8} {:>12} {:>12} {:>10}", "domain", "vertices", "total-2pi", "min arc", "eps max");
    for (name, d) in &domains {
        let db = d.discrete();
        let (value, window) = min_arc_turning(db);
        println!(
            "{name:<14} {:>8} {:>12.2e} {:>12.6} {:>10.4}  witness {window:?}",
            db.len(),
            db.total_turning() - TAU,
            value,
            eps_max(d)
        );
    }

    let squareman = &domains[3].1;
    for eps in [0.05, 0.1] {
        let off = offset_curve(squareman, eps)?;
        let (value, _) = min_arc_turning(&off.curve);
        println!("squareman offset eps={eps}: area {:.6}, min arc {value:.6}", off.curve.area());
    }
    Ok(())
}
