//! Circular orders on finitely generated abelian groups with cyclic
//! torsion: rotation orders, intertwined orders over a blowdown kernel, and
//! the finite cyclic case.

mod archimedean;
mod classify;
mod density;
mod intertwined;
mod rotation;

use num_integer::Integer;

pub use archimedean::{archimedean_witness, common_root_free, Archimedean};
pub use classify::{classify, Classification};
pub use density::{density_search, fresh_primes, nearby_rotation};
pub use intertwined::BlowdownData;
pub use rotation::{make_rotation_params, RotationParams};

use crate::order::FiniteRotation;
use crate::AlgebraicReal;

/// Exact sign of an algebraic real.
pub fn algebraic_sign(x: &AlgebraicReal) -> i8 {
    x.signum()
}

/// All circular orders on `Z/m`: one rotation per unit `k`, or the single
/// vacuous order when `m ≤ 2`.
pub fn enumerate_cyclic_orders(m: u64) -> Vec<FiniteRotation> {
    match m {
        0 => Vec::new(),
        1 => vec![FiniteRotation::new(1, 0).expect("valid")],
        _ => (1..m)
            .filter(|k| k.gcd(&m) == 1)
            .map(|k| FiniteRotation::new(m, k).expect("coprime"))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_orders() {
        let ks: Vec<u64> = enumerate_cyclic_orders(4).iter().map(|f| f.k()).collect();
        assert_eq!(ks, vec![1, 3]);
        assert_eq!(enumerate_cyclic_orders(1).len(), 1);
        assert_eq!(enumerate_cyclic_orders(2).len(), 1);
    }

    #[test]
    fn sign_examples() {
        let x = AlgebraicReal::sqrt(2) - AlgebraicReal::fraction(7, 5);
        assert_eq!(algebraic_sign(&x), 1);
        assert_eq!(algebraic_sign(&AlgebraicReal::zero()), 0);
    }
}
