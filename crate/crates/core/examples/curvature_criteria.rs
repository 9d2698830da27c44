//! Both curvature criteria on every registry example, or on two domain
//! files given as arguments.

use otlab::criterion::{check_discontinuity, check_wolfson_urbas};
use otlab::examples::{example, REGISTRY};
use otlab::geometry::Domain;

fn show(name: &str, omega: &Domain, lambda: &Domain) {
    let d = check_discontinuity(omega, lambda);
    let w = check_wolfson_urbas(omega, lambda);
    println!(
        "{name:<20} min arc {:>9.5}  discontinuity {:?} (margin {:+.4})  diffeomorphism {:?} (margin {:+.4})",
        d.min_arc_value, d.verdict, d.margin, w.verdict, w.margin
    );
}

fn main() -> otlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [omega, lambda] = args.as_slice() {
        show("files", &Domain::load(omega)?, &Domain::load(lambda)?);
        return Ok(());
    }
    for entry in REGISTRY {
        match example(entry.name) {
            Ok(ex) => show(ex.name, &ex.omega, &ex.lambda),
            Err(e) => println!("{:<20} {e}", entry.name),
        }
    }
    Ok(())
}
