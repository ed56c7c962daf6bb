//! Arithmetic in the quotient rings `Z_n[T]/(h)` that carry Alexander quandles.
//!
//! Elements are coefficient vectors of length `deg(h)`, constant term first.
//! They are numbered `0..n^deg(h)` by reading the vector as base-`n` digits
//! with the constant term least significant, so index 0 is the ring zero.

use std::fmt;

use crate::error::{Error, Result};

/// A monic polynomial over `Z_n`, coefficients stored constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    modulus: u32,
    coeffs: Vec<u32>,
}

impl MonicPoly {
    /// Builds `h` from coefficients listed constant term first. Coefficients
    /// are reduced into `[0, n)`; the leading one must reduce to 1.
    pub fn new(modulus: u32, coeffs: &[i64]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidParameter(format!(
                "coefficient modulus must be at least 2, got {modulus}"
            )));
        }
        let m = i64::from(modulus);
        let mut reduced: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(m) as u32).collect();
        while reduced.len() > 1 && reduced.last() == Some(&0) {
            reduced.pop();
        }
        if reduced.len() < 2 {
            return Err(Error::InvalidParameter(
                "polynomial must have degree at least 1".into(),
            ));
        }
        if reduced.last() != Some(&1) {
            return Err(Error::InvalidParameter(format!(
                "polynomial is not monic over Z_{modulus}"
            )));
        }
        Ok(MonicPoly {
            modulus,
            coeffs: reduced,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients, constant term first, leading 1 included.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let var = match power {
                0 => String::new(),
                1 => "T".to_string(),
                p => format!("T^{p}"),
            };
            match (c, power) {
                (_, 0) => write!(f, "{c}")?,
                (1, _) => f.write_str(&var)?,
                _ => write!(f, "{c}{var}")?,
            }
        }
        Ok(())
    }
}

/// An element of `Z_n[T]/(h)`: a polynomial of degree below `deg(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderElement {
    coeffs: Vec<u32>,
}

impl AlexanderElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

#[derive(Clone, Debug)]
pub struct QuotientRing {
    poly: MonicPoly,
    size: usize,
}

impl QuotientRing {
    pub fn new(poly: MonicPoly) -> Result<Self> {
        let size = (poly.modulus() as usize)
            .checked_pow(poly.degree() as u32)
            .filter(|&s| s <= u16::MAX as usize)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "quotient ring Z_{}[T]/({}) is too large",
                    poly.modulus(),
                    poly
                ))
            })?;
        Ok(QuotientRing { poly, size })
    }

    pub fn poly(&self) -> &MonicPoly {
        &self.poly
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn n(&self) -> u32 {
        self.poly.modulus()
    }

    fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Builds an element from coefficients (constant first), reducing each
    /// into `[0, n)`. Fails when the vector is not exactly `deg(h)` long.
    pub fn element(&self, coeffs: &[i64]) -> Result<AlexanderElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::InvalidParameter(format!(
                "element needs {} coefficients, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        let n = i64::from(self.n());
        Ok(AlexanderElement {
            coeffs: coeffs.iter().map(|c| c.rem_euclid(n) as u32).collect(),
        })
    }

    pub fn zero(&self) -> AlexanderElement {
        AlexanderElement {
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> AlexanderElement {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    /// The class of `T`. For linear `h = T + c` that is the constant `-c`.
    pub fn t(&self) -> AlexanderElement {
        if self.degree() == 1 {
            let c = self.poly.coeffs()[0];
            AlexanderElement {
                coeffs: vec![(self.n() - c) % self.n()],
            }
        } else {
            let mut e = self.zero();
            e.coeffs[1] = 1;
            e
        }
    }

    pub fn encode(&self, e: &AlexanderElement) -> usize {
        let n = self.n() as usize;
        e.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * n + c as usize)
    }

    pub fn decode(&self, mut index: usize) -> AlexanderElement {
        debug_assert!(index < self.size);
        let n = self.n() as usize;
        let coeffs = (0..self.degree())
            .map(|_| {
                let c = index % n;
                index /= n;
                c as u32
            })
            .collect();
        AlexanderElement { coeffs }
    }

    pub fn add(&self, a: &AlexanderElement, b: &AlexanderElement) -> AlexanderElement {
        let n = self.n();
        AlexanderElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y) % n)
                .collect(),
        }
    }

    pub fn neg(&self, a: &AlexanderElement) -> AlexanderElement {
        let n = self.n();
        AlexanderElement {
            coeffs: a.coeffs.iter().map(|x| (n - x) % n).collect(),
        }
    }

    pub fn sub(&self, a: &AlexanderElement, b: &AlexanderElement) -> AlexanderElement {
        self.add(a, &self.neg(b))
    }

    /// Schoolbook product followed by reduction modulo the monic `h`.
    pub fn mul(&self, a: &AlexanderElement, b: &AlexanderElement) -> AlexanderElement {
        let n = u64::from(self.n());
        let d = self.degree();
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % n;
            }
        }
        let h = self.poly.coeffs();
        for top in (d..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            // subtract lead * T^(top-d) * h
            for (k, &hk) in h.iter().enumerate() {
                let slot = top - d + k;
                prod[slot] = (prod[slot] + n * n - lead * u64::from(hk) % n) % n;
            }
        }
        AlexanderElement {
            coeffs: prod[..d].iter().map(|&c| c as u32).collect(),
        }
    }

    /// Index-level operation tables, or `None` when the ring has zero divisors.
    pub fn field(&self) -> Option<FiniteField> {
        FiniteField::from_ring(self)
    }
}

/// A finite field given by index tables over `0..size`, with 0 the zero and
/// 1 the unit (true for every ring built by [`QuotientRing`]).
#[derive(Clone, Debug)]
pub struct FiniteField {
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl FiniteField {
    fn from_ring(ring: &QuotientRing) -> Option<Self> {
        let s = ring.size();
        let elems: Vec<AlexanderElement> = (0..s).map(|i| ring.decode(i)).collect();
        let mut add = vec![0u16; s * s];
        let mut mul = vec![0u16; s * s];
        for a in 0..s {
            for b in 0..s {
                add[a * s + b] = ring.encode(&ring.add(&elems[a], &elems[b])) as u16;
                mul[a * s + b] = ring.encode(&ring.mul(&elems[a], &elems[b])) as u16;
            }
        }
        let neg = (0..s)
            .map(|a| ring.encode(&ring.neg(&elems[a])) as u16)
            .collect();
        let one = ring.encode(&ring.one());
        debug_assert_eq!(one, 1);
        let mut inv = vec![0u16; s];
        for a in 1..s {
            inv[a] = (1..s).find(|&b| mul[a * s + b] as usize == one)? as u16;
        }
        Some(FiniteField {
            size: s,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        debug_assert!(a != 0);
        self.inv[a] as usize
    }
}
