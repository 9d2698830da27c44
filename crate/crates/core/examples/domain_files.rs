//! Writes the built-in domains as JSON domain files for the command line.

use std::path::PathBuf;

use otlab::examples::{
    make_deep_notch_dumbbell, make_disk, make_dumbbell, make_half_annulus, make_half_disk, make_rectangle,
    make_squareman, DEEP_NOTCH_DEFAULT, DUMBBELL_DEFAULT,
};

fn main() -> otlab::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "domains".into()));
    std::fs::create_dir_all(&dir)?;
    let (r, w, l) = DUMBBELL_DEFAULT;
    let (dr, dw, dl, t, g) = DEEP_NOTCH_DEFAULT;
    let files = [
        ("square.json", make_rectangle(2.0, 2.0)?),
        ("unit_square.json", make_rectangle(1.0, 1.0)?),
        ("disk.json", make_disk(1.0)?),
        ("half_annulus.json", make_half_annulus(1.0, std::f64::consts::SQRT_2)?),
        ("half_disk.json", make_half_disk(1.0)?),
        ("squareman.json", make_squareman(1.0, 1.0, 0.6, 0.3)?),
        ("dumbbell.json", make_deep_notch_dumbbell(dr, dw, dl, t, g)?),
        ("plain_dumbbell.json", make_dumbbell(r, w, l)?),
    ];
    for (name, domain) in files {
        let path = dir.join(name);
        std::fs::write(&path, domain.boundary().to_json() + "\n")?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
