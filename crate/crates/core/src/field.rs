//! Arithmetic in small finite fields.
//!
//! Elements are integers `0..q`. For `q = p^m` with `m > 1` an element
//! `sum c_i p^i` stands for the polynomial `sum c_i x^i`, reduced modulo a
//! fixed irreducible polynomial.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Prime,
    Table { add: Vec<u32>, mul: Vec<u32>, neg: Vec<u32>, inv: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    repr: Repr,
}

/// Irreducible polynomials as low-to-high coefficient lists, monic.
fn irreducible(p: u32, m: u32) -> Option<&'static [u32]> {
    match (p, m) {
        (2, 2) => Some(&[1, 1, 1]),
        (2, 3) => Some(&[1, 1, 0, 1]),
        (3, 2) => Some(&[1, 0, 1]),
        (2, 4) => Some(&[1, 1, 0, 0, 1]),
        _ => None,
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn to_poly(mut a: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let c = a % p;
            a /= p;
            c
        })
        .collect()
}

fn from_poly(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c != 0 {
            for (i, &mc) in modulus.iter().enumerate() {
                let at = deg - m + i;
                prod[at] = (prod[at] + p * p - c * mc % p) % p;
            }
        }
    }
    prod.truncate(m);
    prod
}

impl FiniteField {
    /// `F_{p^m}`. Prime fields of any size are supported; extension fields
    /// only for `q` in {4, 8, 9, 16}.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("characteristic {p} is not prime")));
        }
        if m == 0 {
            return Err(Error::invalid("field degree must be at least 1"));
        }
        if m == 1 {
            if p > 1 << 16 {
                return Err(Error::Unsupported(format!("prime field of order {p} is too large")));
            }
            return Ok(FiniteField { p, m, q: p, repr: Repr::Prime });
        }
        let modulus = irreducible(p, m)
            .ok_or_else(|| Error::Unsupported(format!("no field table for {p}^{m}")))?;
        let q = p.pow(m);
        let polys: Vec<Vec<u32>> = (0..q).map(|a| to_poly(a, p, m)).collect();
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let s: Vec<u32> = polys[a].iter().zip(&polys[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = from_poly(&s, p);
                mul[a * qs + b] = from_poly(&poly_mul(&polys[a], &polys[b], modulus, p), p);
            }
        }
        let neg = (0..qs).map(|a| (0..q).find(|&b| add[a * qs + b as usize] == 0).expect("additive inverse")).collect();
        let mut inv = vec![0; qs];
        for a in 1..qs {
            inv[a] = (1..q).find(|&b| mul[a * qs + b as usize] == 1).ok_or_else(|| {
                Error::Internal(format!("element {a} of F_{q} has no inverse; modulus is reducible"))
            })?;
        }
        Ok(FiniteField { p, m, q, repr: Repr::Table { add, mul, neg, inv } })
    }

    /// The field of order `q`, which must be a prime power.
    pub fn of_order(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("no field of order {q}")));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2 has a prime factor");
        let mut m = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::invalid(format!("{q} is not a prime power")));
        }
        Self::new(p, m)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.repr {
            Repr::Prime => (a + b) % self.p,
            Repr::Table { add, .. } => add[(a * self.q + b) as usize],
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match &self.repr {
            Repr::Prime => (self.p - a % self.p) % self.p,
            Repr::Table { neg, .. } => neg[a as usize],
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.repr {
            Repr::Prime => ((a as u64 * b as u64) % self.p as u64) as u32,
            Repr::Table { mul, .. } => mul[(a * self.q + b) as usize],
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::invalid("zero has no multiplicative inverse"));
        }
        Ok(match &self.repr {
            Repr::Prime => self.pow(a, self.p - 2),
            Repr::Table { inv, .. } => inv[a as usize],
        })
    }

    pub fn pow(&self, a: u32, mut e: u32) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }
}
