use std::fmt;

use num_integer::Integer;

use super::InvariantError;

/// An element of `(Z/N)²`, the abstract model of `N`-torsion on a cubic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionClass {
    n: u64,
    a: u64,
    b: u64,
}

impl TorsionClass {
    pub fn new(n: u64, a: i64, b: i64) -> TorsionClass {
        assert!(n > 0, "modulus must be positive");
        let r = |v: i64| v.rem_euclid(n as i64) as u64;
        TorsionClass { n, a: r(a), b: r(b) }
    }

    pub fn zero(n: u64) -> TorsionClass {
        TorsionClass::new(n, 0, 0)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn coords(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn order(&self) -> u64 {
        self.n / self.a.gcd(&self.b).gcd(&self.n)
    }

    pub fn scale(&self, k: i64) -> TorsionClass {
        let n = self.n as i128;
        let k = (k as i128).rem_euclid(n);
        TorsionClass {
            n: self.n,
            a: ((self.a as i128 * k) % n) as u64,
            b: ((self.b as i128 * k) % n) as u64,
        }
    }

    pub fn add(&self, o: &TorsionClass) -> Result<TorsionClass, InvariantError> {
        self.check(o)?;
        Ok(TorsionClass { n: self.n, a: (self.a + o.a) % self.n, b: (self.b + o.b) % self.n })
    }

    pub fn neg(&self) -> TorsionClass {
        self.scale(-1)
    }

    /// The same class inside `(Z/M)²` for a multiple `M` of the modulus.
    pub fn embed(&self, m: u64) -> Result<TorsionClass, InvariantError> {
        if m % self.n != 0 {
            return Err(InvariantError::ModulusMismatch(self.n, m));
        }
        let f = m / self.n;
        Ok(TorsionClass { n: m, a: self.a * f, b: self.b * f })
    }

    fn check(&self, o: &TorsionClass) -> Result<(), InvariantError> {
        if self.n != o.n {
            return Err(InvariantError::ModulusMismatch(self.n, o.n));
        }
        Ok(())
    }
}

impl fmt::Debug for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) mod {}", self.a, self.b, self.n)
    }
}

impl fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Determinant pairing `ad - bc mod N`; the standard basis pairs to 1.
pub fn weil_exponent(u: &TorsionClass, v: &TorsionClass) -> Result<u64, InvariantError> {
    u.check(v)?;
    let n = u.n as i128;
    let det = u.a as i128 * v.b as i128 - u.b as i128 * v.a as i128;
    Ok(det.rem_euclid(n) as u64)
}

/// Isomorphism type `Z/a ⊕ Z/b` (`a | b`) of a finite subgroup of `(Z/N)²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupType {
    pub invariants: (u64, u64),
    pub size: u64,
}

impl GroupType {
    pub fn is_cyclic(&self) -> bool {
        self.invariants.0 == 1
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.invariants {
            (1, 1) => write!(f, "0"),
            (1, b) => write!(f, "Z/{b}"),
            (a, b) if a == b => write!(f, "(Z/{a})^2"),
            (a, b) => write!(f, "Z/{a} + Z/{b}"),
        }
    }
}

/// Every element of the subgroup generated by `gens`.
pub fn span(n: u64, gens: &[TorsionClass]) -> Result<Vec<TorsionClass>, InvariantError> {
    let mut seen = vec![false; (n * n) as usize];
    let idx = |c: &TorsionClass| (c.a * n + c.b) as usize;
    let zero = TorsionClass::zero(n);
    seen[idx(&zero)] = true;
    let mut out = vec![zero];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for g in gens {
            let y = x.add(g)?;
            if !seen[idx(&y)] {
                seen[idx(&y)] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort();
    Ok(out)
}

/// Isomorphism type of the subgroup generated by `gens`: the exponent is the
/// largest cyclic factor, the size fixes the other.
pub fn group_type(n: u64, gens: &[TorsionClass]) -> Result<GroupType, InvariantError> {
    let elems = span(n, gens)?;
    let size = elems.len() as u64;
    let exponent = elems.iter().map(TorsionClass::order).fold(1, |acc: u64, o| acc.lcm(&o));
    Ok(GroupType { invariants: (size / exponent, exponent), size })
}
