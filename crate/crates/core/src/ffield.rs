//! Prime fields `F_p` for `2 <= p <= 61`.
//!
//! Residues are stored as `u8`. The hot loops elsewhere in the crate work on
//! raw residues through the `*_raw` helpers on [`FieldCtx`]; the checked
//! [`Fp`] API carries its modulus so that mixing fields is caught.

use std::fmt;

use thiserror::Error;

/// Largest supported modulus.
pub const MAX_MODULUS: u32 = 61;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is outside the supported range 2..=61")]
    OutOfRange(u32),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("elements from different fields: F_{left} and F_{right}")]
    ContextMismatch { left: u32, right: u32 },
    #[error("value {value} is not a residue mod {p}")]
    NotReduced { value: u64, p: u32 },
}

/// An element of `F_p`, tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u8,
    p: u8,
}

impl Fp {
    pub fn value(self) -> u32 {
        self.value as u32
    }

    pub fn modulus(self) -> u32 {
        self.p as u32
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Immutable context for arithmetic in `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u8,
    inv: [u8; 64],
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx").field("p", &self.p).finish()
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FieldCtx {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !(2..=MAX_MODULUS).contains(&p) {
            return Err(FieldError::OutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let mut inv = [0u8; 64];
        for a in 1..p {
            let b = (1..p).find(|b| a * b % p == 1).expect("prime field");
            inv[a as usize] = b as u8;
        }
        Ok(Self { p: p as u8, inv })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p as u32
    }

    /// Wraps `value` as an element, rejecting unreduced input.
    pub fn elem(&self, value: u64) -> Result<Fp, FieldError> {
        if value >= self.p as u64 {
            return Err(FieldError::NotReduced { value, p: self.p() });
        }
        Ok(Fp { value: value as u8, p: self.p })
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn reduce(&self, value: i64) -> Fp {
        Fp {
            value: value.rem_euclid(self.p as i64) as u8,
            p: self.p,
        }
    }

    pub fn zero(&self) -> Fp {
        Fp { value: 0, p: self.p }
    }

    pub fn one(&self) -> Fp {
        Fp { value: 1, p: self.p }
    }

    /// All elements `0..p` in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |value| Fp { value, p: self.p })
    }

    fn check(&self, a: Fp) -> Result<u8, FieldError> {
        if a.p != self.p {
            return Err(FieldError::ContextMismatch {
                left: self.p(),
                right: a.modulus(),
            });
        }
        Ok(a.value)
    }

    fn wrap(&self, value: u8) -> Fp {
        Fp { value, p: self.p }
    }

    pub fn add(&self, a: Fp, b: Fp) -> Result<Fp, FieldError> {
        Ok(self.wrap(self.add_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn sub(&self, a: Fp, b: Fp) -> Result<Fp, FieldError> {
        Ok(self.wrap(self.sub_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn mul(&self, a: Fp, b: Fp) -> Result<Fp, FieldError> {
        Ok(self.wrap(self.mul_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn neg(&self, a: Fp) -> Result<Fp, FieldError> {
        Ok(self.wrap(self.neg_raw(self.check(a)?)))
    }

    pub fn inv(&self, a: Fp) -> Result<Fp, FieldError> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.wrap(self.inv[a as usize]))
    }

    pub fn pow(&self, a: Fp, exp: u64) -> Result<Fp, FieldError> {
        let mut base = self.check(a)?;
        let mut e = exp;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        Ok(self.wrap(acc))
    }

    #[inline]
    pub fn add_raw(&self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_raw(&self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul_raw(&self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p as u32) as u8
    }

    /// Inverse of a nonzero residue. Returns 0 for 0.
    #[inline]
    pub fn inv_raw(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Reduces a non-negative accumulator.
    #[inline]
    pub fn reduce_u32(&self, a: u32) -> u8 {
        (a % self.p as u32) as u8
    }
}

/// Seven residues packed one per byte into the low 56 bits of a `u64`.
///
/// Residues are `< 61`, so a bytewise sum stays below 128 and the conditional
/// subtraction never borrows across lanes.
pub mod packed {
    const LANES: u64 = 0x00FF_FFFF_FFFF_FFFF;
    const ONES: u64 = 0x0001_0101_0101_0101;

    /// Per-lane constant used by [`add`].
    #[inline]
    pub fn bias(p: u32) -> u64 {
        ONES * (128 - p as u64)
    }

    /// Lanewise `a + b mod p`; `bias` must come from [`bias`] for the same `p`.
    #[inline(always)]
    pub fn add(a: u64, b: u64, p: u64, bias: u64) -> u64 {
        let s = a + b;
        let ge = ((s + bias) >> 7) & ONES;
        s - ge * p
    }

    pub fn pack(v: &[u8; 7]) -> u64 {
        v.iter()
            .enumerate()
            .fold(0u64, |acc, (i, &x)| acc | ((x as u64) << (8 * i)))
    }

    pub fn unpack(x: u64) -> [u8; 7] {
        debug_assert_eq!(x & !LANES, 0);
        std::array::from_fn(|i| (x >> (8 * i)) as u8)
    }
}
