use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{CloudPair, Pairing};
use crate::error::Result;

/// One row of the pairing CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairingRow {
    pub i: usize,
    pub x1: f64,
    pub x2: f64,
    pub y1: f64,
    pub y2: f64,
    pub u: f64,
    pub v: f64,
}

/// Writes `i,x1,x2,y1,y2,u,v`, one row per source point, where `v` is the
/// dual potential of the assigned target.
pub fn write_pairing_csv<W: Write>(out: W, pair: &CloudPair, pairing: &Pairing) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (i, &s) in pairing.sigma.iter().enumerate() {
        w.serialize(PairingRow {
            i,
            x1: pair.source[i].x,
            x2: pair.source[i].y,
            y1: pair.target[s].x,
            y2: pair.target[s].y,
            u: pairing.dual_u[i],
            v: pairing.dual_v[s],
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_pairing_csv<R: Read>(input: R) -> Result<Vec<PairingRow>> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for row in r.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}
