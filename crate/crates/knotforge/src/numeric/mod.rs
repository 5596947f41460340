//! Floating-point verification helpers. Everything here serves residual
//! checks of exact results; no algebraic output is derived from floats.

pub mod aberth;
pub mod dd;

pub use aberth::{max_residual, roots, roots_dd};
pub use dd::{ComplexDD, DD};

/// 2x2 complex matrix at double-double precision.
#[derive(Clone, Copy, Debug)]
pub struct Mat2DD {
    pub a: ComplexDD,
    pub b: ComplexDD,
    pub c: ComplexDD,
    pub d: ComplexDD,
}

impl Mat2DD {
    pub fn identity() -> Self {
        Mat2DD { a: ComplexDD::ONE, b: ComplexDD::ZERO, c: ComplexDD::ZERO, d: ComplexDD::ONE }
    }

    pub fn mul(&self, o: &Mat2DD) -> Mat2DD {
        Mat2DD {
            a: self.a.mul(o.a).add(self.b.mul(o.c)),
            b: self.a.mul(o.b).add(self.b.mul(o.d)),
            c: self.c.mul(o.a).add(self.d.mul(o.c)),
            d: self.c.mul(o.b).add(self.d.mul(o.d)),
        }
    }

    pub fn sub(&self, o: &Mat2DD) -> Mat2DD {
        Mat2DD {
            a: self.a.sub(o.a),
            b: self.b.sub(o.b),
            c: self.c.sub(o.c),
            d: self.d.sub(o.d),
        }
    }

    /// Entrywise max modulus.
    pub fn max_norm(&self) -> f64 {
        self.a
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max(self.d.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_identity_law() {
        let m = Mat2DD {
            a: ComplexDD::new(1.0, 2.0),
            b: ComplexDD::new(0.5, -1.0),
            c: ComplexDD::new(3.0, 0.0),
            d: ComplexDD::new(-2.0, 1.0),
        };
        let i = Mat2DD::identity();
        let p = m.mul(&i).sub(&m);
        assert!(p.max_norm() < 1e-30);
    }
}
