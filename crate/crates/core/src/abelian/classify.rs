use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice;
use crate::order::CircularOrderSpec;

/// Which component of the space of circular orders on `Z^n × Z/m` an order
/// lies in. Kernels are reported by their Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// Finite orbit: the kernel has full rank and finite index.
    Fin { kernel: Vec<Vec<i64>>, index: u64 },
    /// Minimal: a rotation order.
    Min,
    /// The kernel has rank below `n`; the quotient carries a minimal order.
    Blowdown { kernel: Vec<Vec<i64>> },
}

pub fn classify(spec: &CircularOrderSpec) -> Result<Classification> {
    match spec {
        CircularOrderSpec::Rotation(_) => Ok(Classification::Min),
        CircularOrderSpec::Intertwined(d) => {
            let big_n = d.n() + (d.m() > 0) as usize;
            let kernel = lattice::hermite_normal_form(d.kernel(), big_n);
            if d.kernel().len() == d.n() {
                let index = d.quotient_group().finite_order().unwrap_or(0);
                Ok(Classification::Fin { kernel, index })
            } else {
                Ok(Classification::Blowdown { kernel })
            }
        }
        other => Err(Error::Unsupported(format!(
            "classifying a {} order",
            other.kind()
        ))),
    }
}
