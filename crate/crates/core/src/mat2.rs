//! Exact 2x2 matrices over cyclotomic fields.

use crate::cyclotomic::{CycNum, Rat};
use crate::{Error, Result};

/// Row-major 2x2 matrix `[[a, b], [c, d]]` with cyclotomic entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: CycNum,
    pub b: CycNum,
    pub c: CycNum,
    pub d: CycNum,
}

impl Mat2 {
    pub fn new(a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(CycNum::one(), CycNum::zero(), CycNum::zero(), CycNum::one())
    }

    pub fn diag(x: CycNum, y: CycNum) -> Self {
        Mat2::new(x, CycNum::zero(), CycNum::zero(), y)
    }

    pub fn anti_diag(x: CycNum, y: CycNum) -> Self {
        Mat2::new(CycNum::zero(), x, y, CycNum::zero())
    }

    pub fn scalar(x: &CycNum) -> Self {
        Mat2::diag(x.clone(), x.clone())
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }

    pub fn scale(&self, s: &CycNum) -> Mat2 {
        Mat2::new(
            self.a.mul(s),
            self.b.mul(s),
            self.c.mul(s),
            self.d.mul(s),
        )
    }

    pub fn det(&self) -> CycNum {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> CycNum {
        self.a.add(&self.d)
    }

    pub fn inv(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::invalid("singular matrix"));
        }
        let di = det.inv()?;
        Ok(Mat2::new(
            self.d.mul(&di),
            self.b.neg().mul(&di),
            self.c.neg().mul(&di),
            self.a.mul(&di),
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    /// Eigenvalues are {1, xi} with xi != 1 exactly when the matrix fixes a
    /// line pointwise and is not the identity: char(1) = 1 - tr + det = 0 and
    /// det != 1 (the other eigenvalue is det).
    pub fn is_pseudo_reflection(&self) -> bool {
        if self.is_identity() {
            return false;
        }
        let char_at_one = CycNum::one().sub(&self.trace()).add(&self.det());
        char_at_one.is_zero() && !self.det().is_one()
    }

    /// A nonzero vector spanning the fixed line of a pseudo-reflection
    /// (kernel of self - I).
    pub fn fixed_line(&self) -> Option<(CycNum, CycNum)> {
        let a1 = self.a.sub(&CycNum::one());
        let d1 = self.d.sub(&CycNum::one());
        // rows of (M - I): (a1, b), (c, d1)
        if !a1.is_zero() || !self.b.is_zero() {
            // a1*x + b*y = 0
            Some((self.b.clone(), a1.neg()))
        } else if !self.c.is_zero() || !d1.is_zero() {
            Some((d1.clone(), self.c.neg()))
        } else {
            None // identity
        }
    }

    pub fn apply(&self, v: &(CycNum, CycNum)) -> (CycNum, CycNum) {
        (
            self.a.mul(&v.0).add(&self.b.mul(&v.1)),
            self.c.mul(&v.0).add(&self.d.mul(&v.1)),
        )
    }

    /// Rewrite every entry at its minimal cyclotomic level.
    pub fn min_level(&self) -> Mat2 {
        Mat2::new(
            self.a.min_level_form(),
            self.b.min_level_form(),
            self.c.min_level_form(),
            self.d.min_level_form(),
        )
    }

    /// Least common level of the four entries.
    pub fn level(&self) -> u32 {
        use num_integer::Integer;
        let mut l = 1u64;
        for e in [&self.a, &self.b, &self.c, &self.d] {
            l = l.lcm(&(e.level() as u64));
        }
        l as u32
    }

    /// Canonical key at a fixed ambient level.
    pub fn key_at(&self, level: u32) -> Vec<u8> {
        let mut out = Vec::new();
        for e in [&self.a, &self.b, &self.c, &self.d] {
            e.key_bytes_at(level, &mut out);
        }
        out
    }

    pub fn entries(&self) -> [&CycNum; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// Projective key for a line spanned by (x, y): scale so the first nonzero
/// coordinate is 1.
pub fn line_key(v: &(CycNum, CycNum), level: u32) -> Vec<u8> {
    let mut out = Vec::new();
    if !v.0.is_zero() {
        let inv = v.0.inv().unwrap();
        out.push(0u8);
        v.1.mul(&inv).key_bytes_at(level, &mut out);
    } else {
        out.push(1u8);
        // line (0 : 1)
    }
    out
}

/// Exact rational used by callers building matrices.
pub fn half() -> Rat {
    crate::cyclotomic::rat(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_inverse() {
        let i4 = CycNum::root(4).unwrap();
        let m = Mat2::diag(i4.clone(), i4.inv().unwrap());
        let mi = m.inv().unwrap();
        assert!(m.mul(&mi).is_identity());
        assert!(m.det().is_one());
    }

    #[test]
    fn pseudo_reflection_detection() {
        // diag(zeta3, 1) fixes the second axis pointwise
        let z3 = CycNum::root(3).unwrap();
        let m = Mat2::diag(z3, CycNum::one());
        assert!(m.is_pseudo_reflection());
        // -I is not a pseudo-reflection
        let neg = Mat2::scalar(&CycNum::from_int(-1));
        assert!(!neg.is_pseudo_reflection());
        // swap has eigenvalues 1, -1
        let swap = Mat2::anti_diag(CycNum::one(), CycNum::one());
        assert!(swap.is_pseudo_reflection());
        // a determinant-one element cannot be a pseudo-reflection
        let i4 = CycNum::root(4).unwrap();
        let s = Mat2::diag(i4.clone(), i4.inv().unwrap());
        assert!(s.det().is_one() && !s.is_pseudo_reflection());
    }

    #[test]
    fn fixed_line_of_swap() {
        let swap = Mat2::anti_diag(CycNum::one(), CycNum::one());
        let v = swap.fixed_line().unwrap();
        let w = swap.apply(&v);
        assert_eq!(w, v);
    }
}
