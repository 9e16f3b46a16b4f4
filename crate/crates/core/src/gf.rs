//! Arithmetic over GF(2^8).
//!
//! Elements are bytes; the field is built with the reduction polynomial
//! x^8 + x^4 + x^3 + x + 1 (0x11B). Addition is XOR. Multiplication goes
//! through log/antilog tables generated at compile time from the primitive
//! element 0x03 (0x02 is not primitive for this polynomial).

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Sub, SubAssign};

use crate::error::Error;

/// Full reduction polynomial, including the x^8 term.
pub const POLY: u16 = 0x11B;

/// Primitive element used to generate the log tables.
pub const GENERATOR: u8 = 0x03;

/// An element of GF(2^8).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Gf256(pub u8);

impl Gf256 {
    pub const ZERO: Gf256 = Gf256(0);
    pub const ONE: Gf256 = Gf256(1);

    #[inline]
    pub const fn new(v: u8) -> Self {
        Gf256(v)
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; zero has none.
    #[inline]
    pub fn inv(self) -> Result<Gf256, Error> {
        inv(self)
    }

    /// `self^e` by table lookup.
    pub fn pow(self, e: u32) -> Gf256 {
        if e == 0 {
            return Gf256::ONE;
        }
        if self.0 == 0 {
            return Gf256::ZERO;
        }
        let l = (TABLES.log[self.0 as usize] as u64 * e as u64) % 255;
        Gf256(TABLES.exp[l as usize])
    }
}

impl fmt::Debug for Gf256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf256({:#04x})", self.0)
    }
}

impl From<u8> for Gf256 {
    fn from(v: u8) -> Self {
        Gf256(v)
    }
}

impl From<Gf256> for u8 {
    fn from(v: Gf256) -> Self {
        v.0
    }
}

struct Tables {
    // exp is doubled so exp[log a + log b] needs no reduction.
    exp: [u8; 512],
    log: [u8; 256],
}

const fn mul_by_generator(x: u8) -> u8 {
    // x * 0x03 = (x * 0x02) ^ x
    let doubled = (x as u16) << 1;
    let reduced = if doubled & 0x100 != 0 { doubled ^ POLY } else { doubled };
    (reduced as u8) ^ x
}

const fn build_tables() -> Tables {
    let mut exp = [0u8; 512];
    let mut log = [0u8; 256];
    let mut x: u8 = 1;
    let mut i = 0;
    while i < 255 {
        exp[i] = x;
        exp[i + 255] = x;
        log[x as usize] = i as u8;
        x = mul_by_generator(x);
        i += 1;
    }
    exp[510] = exp[0];
    exp[511] = exp[1];
    Tables { exp, log }
}

static TABLES: Tables = build_tables();

/// Product in GF(2^8).
#[inline]
pub fn mul(a: Gf256, b: Gf256) -> Gf256 {
    if a.0 == 0 || b.0 == 0 {
        return Gf256::ZERO;
    }
    let l = TABLES.log[a.0 as usize] as usize + TABLES.log[b.0 as usize] as usize;
    Gf256(TABLES.exp[l])
}

/// Multiplicative inverse. Zero is a domain error.
#[inline]
pub fn inv(a: Gf256) -> Result<Gf256, Error> {
    if a.0 == 0 {
        return Err(Error::ZeroInverse);
    }
    let l = 255 - TABLES.log[a.0 as usize] as usize;
    Ok(Gf256(TABLES.exp[l]))
}

impl Add for Gf256 {
    type Output = Gf256;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf256) -> Gf256 {
        Gf256(self.0 ^ rhs.0)
    }
}

impl Sub for Gf256 {
    type Output = Gf256;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf256) -> Gf256 {
        Gf256(self.0 ^ rhs.0)
    }
}

// Addition in characteristic 2 is XOR.
#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Gf256 {
    #[inline]
    fn add_assign(&mut self, rhs: Gf256) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl SubAssign for Gf256 {
    #[inline]
    fn sub_assign(&mut self, rhs: Gf256) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Gf256 {
    type Output = Gf256;
    #[inline]
    fn mul(self, rhs: Gf256) -> Gf256 {
        mul(self, rhs)
    }
}

impl MulAssign for Gf256 {
    #[inline]
    fn mul_assign(&mut self, rhs: Gf256) {
        *self = mul(*self, rhs);
    }
}

impl Div for Gf256 {
    type Output = Gf256;
    /// Panics on division by zero; use [`inv`] for a fallible path.
    #[inline]
    fn div(self, rhs: Gf256) -> Gf256 {
        mul(self, inv(rhs).expect("division by zero in GF(2^8)"))
    }
}

/// `dst[i] += c * src[i]` over byte symbols.
pub fn mul_add_assign(dst: &mut [u8], src: &[u8], c: Gf256) {
    debug_assert_eq!(dst.len(), src.len());
    if c.0 == 0 {
        return;
    }
    if c.0 == 1 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d ^= *s;
        }
        return;
    }
    let lc = TABLES.log[c.0 as usize] as usize;
    for (d, s) in dst.iter_mut().zip(src) {
        if *s != 0 {
            *d ^= TABLES.exp[lc + TABLES.log[*s as usize] as usize];
        }
    }
}

/// Same as [`mul_add_assign`] for coefficient vectors.
pub fn mul_add_assign_elems(dst: &mut [Gf256], src: &[Gf256], c: Gf256) {
    debug_assert_eq!(dst.len(), src.len());
    if c.0 == 0 {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d += mul(c, *s);
    }
}

/// `dst[i] *= c`.
pub fn scale_assign(dst: &mut [u8], c: Gf256) {
    for d in dst.iter_mut() {
        *d = mul(Gf256(*d), c).0;
    }
}

pub fn scale_assign_elems(dst: &mut [Gf256], c: Gf256) {
    for d in dst.iter_mut() {
        *d = mul(*d, c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Carry-less shift-and-add multiply, independent of the tables.
    fn slow_mul(a: u8, b: u8) -> u8 {
        let mut acc: u16 = 0;
        let mut a = a as u16;
        let mut b = b;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            a <<= 1;
            if a & 0x100 != 0 {
                a ^= POLY;
            }
            b >>= 1;
        }
        acc as u8
    }

    #[test]
    fn table_mul_matches_shift_and_add_exhaustively() {
        for a in 0..=255u8 {
            for b in 0..=255u8 {
                assert_eq!(mul(Gf256(a), Gf256(b)).0, slow_mul(a, b), "{a} * {b}");
            }
        }
    }

    #[test]
    fn generator_cycles_through_all_nonzero_elements() {
        let mut seen = [false; 256];
        let mut x = 1u8;
        for _ in 0..255 {
            assert!(!seen[x as usize]);
            seen[x as usize] = true;
            x = slow_mul(x, GENERATOR);
        }
        assert_eq!(x, 1);
        assert!(!seen[0]);
    }

    #[test]
    fn known_products_and_inverses() {
        assert_eq!(mul(Gf256(0x53), Gf256(0xCA)), Gf256::ONE);
        assert_eq!(inv(Gf256(0x53)).unwrap(), Gf256(0xCA));
        assert_eq!(inv(Gf256::ONE).unwrap(), Gf256::ONE);
        for x in 0..=255u8 {
            assert_eq!(mul(Gf256(x), Gf256::ONE), Gf256(x));
            assert_eq!(mul(Gf256(x), Gf256::ZERO), Gf256::ZERO);
        }
    }

    #[test]
    fn every_nonzero_element_has_an_inverse() {
        for a in 1..=255u8 {
            let i = inv(Gf256(a)).unwrap();
            assert_eq!(slow_mul(a, i.0), 1);
        }
        assert_eq!(inv(Gf256::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn pow_agrees_with_repeated_multiplication() {
        let g = Gf256(GENERATOR);
        let mut acc = Gf256::ONE;
        for e in 0..600u32 {
            assert_eq!(g.pow(e), acc);
            acc *= g;
        }
        assert_eq!(Gf256::ZERO.pow(0), Gf256::ONE);
        assert_eq!(Gf256::ZERO.pow(3), Gf256::ZERO);
    }

    #[test]
    fn slice_helpers() {
        let src = [1u8, 2, 3, 0, 0xff];
        let mut dst = [0u8; 5];
        mul_add_assign(&mut dst, &src, Gf256(7));
        for i in 0..5 {
            assert_eq!(dst[i], slow_mul(src[i], 7));
        }
        mul_add_assign(&mut dst, &src, Gf256(7));
        assert_eq!(dst, [0u8; 5]);
        let mut s = src;
        scale_assign(&mut s, Gf256(0x53));
        scale_assign(&mut s, Gf256(0xCA));
        assert_eq!(s, src);
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(a: u8, b: u8, c: u8) {
            let (a, b, c) = (Gf256(a), Gf256(b), Gf256(c));
            proptest::prop_assert_eq!(a * b, b * a);
            proptest::prop_assert_eq!((a * b) * c, a * (b * c));
            proptest::prop_assert_eq!(a * (b + c), a * b + a * c);
            proptest::prop_assert_eq!((a + b) + c, a + (b + c));
            proptest::prop_assert_eq!(a + a, Gf256::ZERO);
        }
    }
}
