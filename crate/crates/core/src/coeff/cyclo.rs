use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CoeffError;

/// An element `r0 + r1·j` of the cyclotomic field Q(j), where `j` is a
/// primitive cube root of unity (`j² = −1 − j`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycloQ3 {
    pub r0: BigRational,
    pub r1: BigRational,
}

impl CycloQ3 {
    pub fn new(r0: BigRational, r1: BigRational) -> Self {
        CycloQ3 { r0, r1 }
    }

    pub fn from_ints(r0: i64, r1: i64) -> Self {
        CycloQ3::new(
            BigRational::from_integer(r0.into()),
            BigRational::from_integer(r1.into()),
        )
    }

    pub fn rational(r: BigRational) -> Self {
        CycloQ3::new(r, BigRational::zero())
    }

    pub fn j() -> Self {
        CycloQ3::from_ints(0, 1)
    }

    /// `j²`, reduced to `−1 − j`.
    pub fn j2() -> Self {
        CycloQ3::from_ints(-1, -1)
    }

    pub fn zero() -> Self {
        CycloQ3::default()
    }

    pub fn one() -> Self {
        CycloQ3::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.r0.is_zero() && self.r1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.r0.is_one() && self.r1.is_zero()
    }

    /// Field norm `N(r0 + r1 j) = r0² − r0 r1 + r1²`; zero only at zero.
    pub fn norm(&self) -> BigRational {
        &self.r0 * &self.r0 - &self.r0 * &self.r1 + &self.r1 * &self.r1
    }

    /// Complex conjugate (the Galois automorphism `j ↦ j²`).
    pub fn conj(&self) -> Self {
        CycloQ3::new(&self.r0 - &self.r1, -&self.r1)
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(CycloQ3::new(c.r0 / &n, c.r1 / &n))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        CycloQ3::new(&self.r0 * k, &self.r1 * k)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = CycloQ3::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Add<&CycloQ3> for &CycloQ3 {
    type Output = CycloQ3;
    fn add(self, rhs: &CycloQ3) -> CycloQ3 {
        CycloQ3::new(&self.r0 + &rhs.r0, &self.r1 + &rhs.r1)
    }
}

impl Sub<&CycloQ3> for &CycloQ3 {
    type Output = CycloQ3;
    fn sub(self, rhs: &CycloQ3) -> CycloQ3 {
        CycloQ3::new(&self.r0 - &rhs.r0, &self.r1 - &rhs.r1)
    }
}

impl Mul<&CycloQ3> for &CycloQ3 {
    type Output = CycloQ3;
    /// `(a + bj)(c + dj) = (ac − bd) + (ad + bc − bd) j`
    fn mul(self, rhs: &CycloQ3) -> CycloQ3 {
        let bd = &self.r1 * &rhs.r1;
        let r0 = &self.r0 * &rhs.r0 - &bd;
        let r1 = &self.r0 * &rhs.r1 + &self.r1 * &rhs.r0 - bd;
        CycloQ3::new(r0, r1)
    }
}

impl Div<&CycloQ3> for &CycloQ3 {
    type Output = CycloQ3;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &CycloQ3) -> CycloQ3 {
        self * &rhs.inv().expect("division by zero in Q(j)")
    }
}

impl Neg for &CycloQ3 {
    type Output = CycloQ3;
    fn neg(self) -> CycloQ3 {
        CycloQ3::new(-&self.r0, -&self.r1)
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for CycloQ3 {
            type Output = CycloQ3;
            fn $method(self, rhs: CycloQ3) -> CycloQ3 {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for CycloQ3 {
    type Output = CycloQ3;
    fn neg(self) -> CycloQ3 {
        -&self
    }
}

impl fmt::Display for CycloQ3 {
    /// `3`, `-j`, `2/3 - 1/3*j`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r0.is_zero(), self.r1.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.r0),
            (r0_zero, false) => {
                if !r0_zero {
                    write!(f, "{}", self.r0)?;
                    write!(f, "{}", if self.r1.is_negative() { " - " } else { " + " })?;
                } else if self.r1.is_negative() {
                    write!(f, "-")?;
                }
                let abs = self.r1.abs();
                if abs.is_one() {
                    write!(f, "j")
                } else {
                    write!(f, "{abs}*j")
                }
            }
        }
    }
}

impl fmt::Debug for CycloQ3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloQ3({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_root_identities() {
        let j = CycloQ3::j();
        assert!((&(&j * &j) * &j).is_one());
        assert_eq!(&j * &j, CycloQ3::from_ints(-1, -1));
        let sum = &(&CycloQ3::one() + &j) + &(&j * &j);
        assert!(sum.is_zero());
    }

    #[test]
    fn reduces_two_j_plus_j_squared() {
        // 2j + j² = 2j − 1 − j = −1 + j
        let j = CycloQ3::j();
        let v = &j.scale(&BigRational::from_integer(2.into())) + &j.pow(2);
        assert_eq!(v, CycloQ3::from_ints(-1, 1));
    }

    #[test]
    fn inverse() {
        let u = CycloQ3::from_ints(3, -7);
        assert!((&u * &u.inv().unwrap()).is_one());
        assert!(matches!(
            CycloQ3::zero().inv(),
            Err(CoeffError::DivisionByZero)
        ));
    }

    #[test]
    fn display() {
        assert_eq!(CycloQ3::from_ints(0, -1).to_string(), "-j");
        assert_eq!(CycloQ3::from_ints(2, -3).to_string(), "2 - 3*j");
        assert_eq!(CycloQ3::from_ints(0, 0).to_string(), "0");
    }
}
