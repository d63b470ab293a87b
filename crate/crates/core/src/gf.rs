//! Table-driven arithmetic over GF(2^m), 3 <= m <= 12.
//!
//! Elements are stored as `u16` bit patterns of polynomials in `α` over
//! GF(2). Addition is exclusive-or; multiplication and inversion go through
//! log/antilog tables built from a primitive polynomial.

use thiserror::Error;

/// A field element. Only the low `m` bits are meaningful.
pub type Element = u16;

pub const MIN_BITS: u32 = 3;
pub const MAX_BITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("symbol width m = {0} outside supported range {MIN_BITS}..={MAX_BITS}")]
    UnsupportedWidth(u32),
    #[error("polynomial {poly:#x} does not have degree {m}")]
    WrongDegree { m: u32, poly: u32 },
    #[error("polynomial {poly:#x} is not primitive over GF(2) (order of x is {order})")]
    NotPrimitive { poly: u32, order: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// Conventional minimum-weight primitive polynomials, indexed by `m`.
pub fn default_primitive_poly(m: u32) -> Option<u32> {
    Some(match m {
        3 => 0b1011,
        4 => 0b1_0011,
        5 => 0b10_0101,
        6 => 0b100_0011,
        7 => 0b1000_1001,
        8 => 0x11D,
        9 => 0x211,
        10 => 0x409,
        11 => 0x805,
        12 => 0x1053,
        _ => return None,
    })
}

/// GF(2^m) arithmetic context. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    m: u32,
    poly: u32,
    /// `exp[i] = α^i`, doubled in length so products of two logs never wrap.
    exp: Vec<Element>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u16>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("m", &self.m)
            .field("poly", &format_args!("{:#x}", self.poly))
            .finish()
    }
}

impl Field {
    /// Builds the tables for GF(2^m) defined by `primitive_poly`.
    ///
    /// The polynomial is given with its leading term included, e.g.
    /// `0b1011` for x³ + x + 1. Non-primitive polynomials are rejected when
    /// successive powers of `x` revisit a value early.
    pub fn new(m: u32, primitive_poly: u32) -> Result<Self, GfError> {
        if !(MIN_BITS..=MAX_BITS).contains(&m) {
            return Err(GfError::UnsupportedWidth(m));
        }
        if primitive_poly >> m != 1 {
            return Err(GfError::WrongDegree {
                m,
                poly: primitive_poly,
            });
        }
        let size = 1usize << m;
        let order = size - 1;
        let mut exp = vec![0 as Element; 2 * order];
        let mut log = vec![0u16; size];
        let mut seen = vec![false; size];

        let mut x: u32 = 1;
        for i in 0..order {
            if seen[x as usize] {
                return Err(GfError::NotPrimitive {
                    poly: primitive_poly,
                    order: i,
                });
            }
            seen[x as usize] = true;
            exp[i] = x as Element;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= primitive_poly;
            }
        }
        // A primitive poly brings α^(2^m - 1) back to 1.
        if x != 1 {
            return Err(GfError::NotPrimitive {
                poly: primitive_poly,
                order,
            });
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }

        Ok(Self {
            m,
            poly: primitive_poly,
            exp,
            log,
        })
    }

    /// Field built with [`default_primitive_poly`].
    pub fn with_default_poly(m: u32) -> Result<Self, GfError> {
        let poly = default_primitive_poly(m).ok_or(GfError::UnsupportedWidth(m))?;
        Self::new(m, poly)
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn primitive_poly(&self) -> u32 {
        self.poly
    }

    /// Number of field elements, `2^m`.
    #[inline]
    pub fn size(&self) -> usize {
        1 << self.m
    }

    /// Order of the multiplicative group, `2^m - 1`.
    #[inline]
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    /// The first `2^m - 1` powers of α.
    pub fn exp_table(&self) -> &[Element] {
        &self.exp[..self.order()]
    }

    #[inline]
    pub fn contains(&self, a: Element) -> bool {
        (a as usize) < self.size()
    }

    /// `α^e` for any (possibly negative) exponent.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> Element {
        let q = self.order() as i64;
        self.exp[e.rem_euclid(q) as usize]
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn log(&self, a: Element) -> Option<usize> {
        (a != 0).then(|| self.log[a as usize] as usize)
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    pub fn inv(&self, a: Element) -> Result<Element, GfError> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        let q = self.order();
        Ok(self.exp[(q - self.log[a as usize] as usize) % q])
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element, GfError> {
        let b_inv = self.inv(b)?;
        Ok(self.mul(a, b_inv))
    }

    pub fn pow(&self, a: Element, e: u64) -> Element {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let q = self.order() as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % q)) % q) as usize]
    }
}
