//! Small finite fields GF(p^k), p ∈ {2,3,5,7}, k ∈ {1,2}, by lookup table.
//!
//! An element `a0 + a1·t` is encoded as the integer `a0 + a1·p`, where `t` is
//! a root of the shipped degree-2 modulus.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("unsupported field GF({p}^{k}); use p in {{2,3,5,7}} and k in {{1,2}}")]
    Unsupported { p: u32, k: u32 },
    #[error("unsupported field order {0}; use one of 2, 3, 4, 5, 7, 9, 25, 49")]
    UnsupportedOrder(usize),
}

/// Element of a [`FiniteField`], by its table index.
pub type Elem = u8;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u8,
    k: u8,
    q: usize,
    /// `t^2 = -c1·t - c0` for the modulus `t^2 + c1·t + c0`.
    modulus: (u8, u8),
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FiniteField {
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        let modulus = match (p, k) {
            (2 | 3 | 5 | 7, 1) => (0, 0),
            (2, 2) => (1, 1), // t^2 + t + 1
            (3, 2) => (1, 0), // t^2 + 1
            (5, 2) => (2, 1), // t^2 + t + 2
            (7, 2) => (1, 0), // t^2 + 1
            _ => return Err(FieldError::Unsupported { p, k }),
        };
        let (p8, k8) = (p as u8, k as u8);
        let q = (p as usize).pow(k);
        let split = |x: usize| ((x % p as usize) as u32, (x / p as usize) as u32);
        let join = |a0: u32, a1: u32| ((a0 % p) + (a1 % p) * p) as Elem;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        let (c0, c1) = (modulus.0 as u32, modulus.1 as u32);
        for x in 0..q {
            let (a0, a1) = split(x);
            for y in 0..q {
                let (b0, b1) = split(y);
                add[x * q + y] = join(a0 + b0, a1 + b1);
                // (a0 + a1 t)(b0 + b1 t) with t^2 = -c1 t - c0
                let hi = a1 * b1;
                let r0 = a0 * b0 + (p - c0 % p) * hi;
                let r1 = a0 * b1 + a1 * b0 + (p - c1 % p) * hi;
                mul[x * q + y] = join(r0, r1);
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for x in 0..q {
            neg[x] = (0..q).find(|&y| add[x * q + y] == 0).expect("additive inverse") as Elem;
            if x != 0 {
                inv[x] = (0..q).find(|&y| mul[x * q + y] == 1).expect("the modulus is irreducible") as Elem;
            }
        }
        Ok(FiniteField { p: p8, k: k8, q, modulus, add, mul, neg, inv })
    }

    /// The field with `q` elements.
    pub fn gf(q: usize) -> Result<Self, FieldError> {
        match q {
            2 | 3 | 5 | 7 => Self::new(q as u32, 1),
            4 => Self::new(2, 2),
            9 => Self::new(3, 2),
            25 => Self::new(5, 2),
            49 => Self::new(7, 2),
            _ => Err(FieldError::UnsupportedOrder(q)),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.k as u32
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn name(&self) -> String {
        format!("GF({})", self.q)
    }

    /// `(c0, c1)` of the modulus `t^2 + c1·t + c0`; zero for prime fields.
    pub fn modulus(&self) -> (u8, u8) {
        self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|x| x as Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(|x| x as Elem)
    }

    /// Image of an integer under `Z → GF(p)`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    /// The element `t` (for k = 2), e.g. a primitive cube root of unity in GF(4).
    pub fn t(&self) -> Option<Elem> {
        (self.k == 2).then_some(self.p)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let (mut base, mut e, mut acc) = (a, e, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Human-readable element, `a0 + a1·t`.
    pub fn show(&self, a: Elem) -> String {
        let (a0, a1) = (a % self.p, a / self.p);
        match (self.k, a1) {
            (1, _) | (_, 0) => a0.to_string(),
            (_, _) if a0 == 0 => if a1 == 1 { "t".into() } else { format!("{a1}t") },
            _ => if a1 == 1 { format!("t+{a0}") } else { format!("{a1}t+{a0}") },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [usize; 8] = [2, 3, 4, 5, 7, 9, 25, 49];

    #[test]
    fn field_axioms_hold() {
        for q in ORDERS {
            let f = FiniteField::gf(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in ORDERS {
            let f = FiniteField::gf(q).unwrap();
            assert!(f.nonzero().any(|a| f.mult_order(a) == Some(q - 1)), "GF({q})");
        }
    }

    #[test]
    fn gf4_cube_root_of_unity() {
        let f = FiniteField::gf(4).unwrap();
        let w = f.t().unwrap();
        assert_eq!(f.mult_order(w), Some(3));
        // w^2 = w + 1
        assert_eq!(f.mul(w, w), f.add(w, 1));
    }

    #[test]
    fn rejects_unsupported_fields() {
        assert!(FiniteField::gf(8).is_err());
        assert!(FiniteField::new(11, 1).is_err());
    }

    #[test]
    fn show_elements() {
        let f = FiniteField::gf(9).unwrap();
        assert_eq!(f.show(0), "0");
        assert_eq!(f.show(3), "t");
        assert_eq!(f.show(7), "2t+1");
    }
}
