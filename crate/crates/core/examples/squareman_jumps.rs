//! Jump set of the discrete map onto the squareman, its boundary trace and
//! an SVG overlay.

use otlab::analysis::{jumps_svg, study_squareman, SquaremanConfig};

fn main() -> otlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4000);
    let svg_path = args.next().unwrap_or_else(|| "squareman_jumps.svg".into());
    let s = study_squareman(SquaremanConfig {
        dims: (1.0, 1.0, 0.6, 0.3),
        n,
        seed: 3,
        h: None,
        threshold: None,
    })?;
    println!(
        "n={n}, h={:.4}: {} probes flagged above {:.4}, largest jump {:.4}, |EE'| = {:.4}",
        s.h(),
        s.jumps.flagged.len(),
        s.threshold(),
        s.max_flagged_jump(),
        s.ee_prime()
    );
    println!("E1 = {:?}, E' = {:?}", s.e1, s.e_prime);
    for t in &s.trace {
        let nearest = t.hausdorff.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("four sides");
        println!("{:<4} {:>4} targets, closest side {} at {:.4}", t.label, t.band_targets, nearest.0, nearest.1);
    }
    for c in s.checks() {
        println!("{:<5} {:<28} {:>10.4}  {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.value, c.detail);
    }
    std::fs::write(&svg_path, jumps_svg(&s.omega, &s.jumps, &s.clusters))?;
    println!("wrote {svg_path}");
    Ok(())
}
