//! Exact arithmetic in Euclidean domains and exact matrix algebra.

mod matrix;
mod normal_form;
mod poly;
mod ring;

pub use matrix::Matrix;
pub use normal_form::{hnf, kernel_basis, snf, solve_linear, solve_matrix, Hermite, Smith};
pub use ring::{Elem, Ring};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A principal ideal `(g)` with `g` nonzero, a non-unit, and normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ideal {
    generator: Elem,
}

impl Ideal {
    pub fn new(ring: &Ring, generator: Elem) -> Result<Ideal> {
        if !ring.owns(&generator) {
            return Err(Error::InvalidIdeal(format!("{generator:?} is not an element of {ring}")));
        }
        if ring.is_zero(&generator) {
            return Err(Error::InvalidIdeal("generator is zero".into()));
        }
        if ring.is_unit(&generator) {
            return Err(Error::InvalidIdeal(format!(
                "generator {} is a unit",
                ring.format(&generator)
            )));
        }
        Ok(Ideal { generator: ring.normal(&generator) })
    }

    pub fn generator(&self) -> &Elem {
        &self.generator
    }

    pub fn contains(&self, ring: &Ring, a: &Elem) -> bool {
        ring.divides(&self.generator, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_rejects_units_and_zero() {
        let r = Ring::Integers;
        assert!(Ideal::new(&r, Elem::from(0)).is_err());
        assert!(Ideal::new(&r, Elem::from(-1)).is_err());
        assert_eq!(Ideal::new(&r, Elem::from(-6)).unwrap().generator(), &Elem::from(6));
        let f = Ring::polynomials(3).unwrap();
        assert!(Ideal::new(&f, f.from_i64(2)).is_err());
        assert_eq!(Ideal::new(&f, f.poly(&[2, 2])).unwrap().generator(), &f.poly(&[1, 1]));
    }
}
