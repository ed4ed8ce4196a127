//! Factorization of rational univariate polynomials (Zassenhaus: modular
//! factorization, Hensel lifting, recombination).

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::UniPoly;
use super::tower::{FieldTower, Rational};

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients.
pub fn factor_rational(coeffs: &[Rational], seed: u64) -> Vec<(Vec<Rational>, usize)> {
    let q = FieldTower::rationals();
    let f = UniPoly::from_rationals(&q, coeffs);
    let mut out: Vec<(Vec<Rational>, usize)> = Vec::new();
    for (part, mult) in f.squarefree_decomposition().expect("rationals form a field") {
        // linear factors first: they cost nothing and each one removed
        // shrinks the recombination search
        let mut rest = part;
        for r in rational_roots(&rest.rational_coeffs().unwrap()) {
            let lin = UniPoly::from_rationals(&q, &[-r.clone(), Rational::one()]);
            rest = rest.div_exact(&lin).expect("root divides");
            out.push((vec![-r, Rational::one()], mult));
        }
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        let ints = primitive_integer(&rest.rational_coeffs().unwrap());
        for g in factor_squarefree_integer(&ints, seed) {
            let lc = Rational::from_integer(g.last().unwrap().clone());
            out.push((g.iter().map(|c| Rational::from_integer(c.clone()) / &lc).collect(), mult));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    out
}

/// Rational roots of a polynomial, sorted, without multiplicity. Roots are
/// found modulo a prime and Hensel-lifted one at a time, so no factor
/// recombination is needed.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let q = FieldTower::rationals();
    let f = UniPoly::from_rationals(&q, coeffs);
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = f.squarefree_part().expect("rationals form a field");
    let mut f = primitive_integer(&sf.rational_coeffs().unwrap());
    let mut out = Vec::new();
    if f[0].is_zero() {
        out.push(Rational::zero());
        f.remove(0);
    }
    let n = f.len() - 1;
    if n == 0 {
        return out;
    }
    let lc = f.last().unwrap().clone();
    let p = small_primes()
        .find(|&p| {
            if (&lc % BigInt::from(p)).is_zero() {
                return false;
            }
            let fp = fp_monic(&reduce_mod_p(&f, p), p);
            fp_gcd(&fp, &fp_deriv(&fp, p), p).len() == 1
        })
        .unwrap();
    let fp = fp_monic(&reduce_mod_p(&f, p), p);
    let x = vec![0, 1];
    let h = fp_powmod(&fp_divrem(&x, &fp, p).1, &BigUint::from(p), &fp, p);
    let g = fp_gcd(&fp, &fp_sub(&h, &x, p), p);
    if g.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut facs = Vec::new();
        edf(&g, 1, p, &mut rng, &mut facs);
        let cof = fp_divrem(&fp, &g, p).0;
        let linear = facs.len();
        if cof.len() > 1 {
            facs.push(cof);
        }
        let maxc = f.iter().map(|c| c.abs()).max().unwrap();
        let bound = BigInt::from(2) * lc.abs() * maxc + 1;
        let pb = BigInt::from(p);
        let mut m = pb.clone();
        while m <= bound {
            m *= &pb;
        }
        let lifted = hensel_multi(&f, &facs, p, &m);
        for l in lifted.iter().take(linear) {
            let num = symmetric(&[(-&l[0] * &lc).mod_floor(&m)], &m);
            let num = num.first().cloned().unwrap_or_else(BigInt::zero);
            let r = Rational::new(num, lc.clone());
            let val = f.iter().rev().fold(Rational::zero(), |acc, c| acc * &r + Rational::from_integer(c.clone()));
            if val.is_zero() {
                out.push(r);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Integer polynomial with coprime coefficients and positive leading term.
pub fn primitive_integer(coeffs: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in coeffs {
        den = den.lcm(c.denom());
    }
    let mut v: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    primitive_part(&v)
}

/// Primitive gcd of two integer polynomials by the primitive remainder
/// sequence.
pub(crate) fn integer_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive_part(a);
    let mut b = primitive_part(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    a
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        let g = lr.gcd(lb);
        let (ma, mb) = (lb / &g, &lr / &g);
        for x in r.iter_mut() {
            *x *= &ma;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &mb * c;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.len() > 1 {
            let g = r.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            if !g.is_one() && !g.is_zero() {
                for x in r.iter_mut() {
                    *x /= &g;
                }
            }
        }
    }
    r
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return Vec::new();
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

// ---------------------------------------------------------------------------
// polynomials over Z/p, p < 2^31

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let (g, x, _) = egcd(a as i64, p as i64);
    debug_assert_eq!(g, 1);
    x.rem_euclid(p as i64) as u64
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    fp_trim(out)
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let inv = fp_inv(*b.last().unwrap(), p);
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = r.last().unwrap() * inv % p;
        let k = r.len() - b.len();
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * bi % p) % p;
        }
        r = fp_trim(r);
    }
    (fp_trim(q), r)
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    let inv = fp_inv(*a.last().unwrap(), p);
    a.iter().map(|c| c * inv % p).collect()
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = std::mem::replace(&mut y, r);
    }
    if x.is_empty() {
        x
    } else {
        fp_monic(&x, p)
    }
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
fn fp_xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = fp_inv(*r0.last().unwrap(), p);
    let sc = |v: &Fp| fp_trim(v.iter().map(|c| c * inv % p).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc = vec![1u64];
    let b = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = fp_divrem(&fp_mul(&acc, &b, p), m, p).1;
        }
    }
    acc
}

fn fp_deriv(a: &Fp, p: u64) -> Fp {
    fp_trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

fn reduce_mod_p(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut f = f.clone();
    let x = vec![0, 1];
    let mut h = fp_divrem(&x, &f, p).1;
    let mut out = Vec::new();
    let mut d = 0;
    let pe = BigUint::from(p);
    while f.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = fp_powmod(&h, &pe, &f, p);
        let g = fp_gcd(&f, &fp_sub(&h, &x, p), p);
        if g.len() > 1 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus), `p` odd.
fn edf(g: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.clone());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = fp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, g, p), &vec![1], p);
        let u = fp_gcd(g, &b, p);
        if u.len() > 1 && u.len() < g.len() {
            let v = fp_divrem(g, &u, p).0;
            edf(&u, d, p, rng, out);
            edf(&fp_monic(&v, p), d, p, rng, out);
            return;
        }
    }
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

// ---------------------------------------------------------------------------
// integer polynomials modulo m

type Zp = Vec<BigInt>;

fn zm_trim(mut a: Zp) -> Zp {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zm_reduce(a: &[BigInt], m: &BigInt) -> Zp {
    zm_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_trim((0..n).map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_trim((0..n).map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_reduce(&out, m)
}

/// Division by a monic polynomial modulo `m`.
fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Zp, Zp) {
    let mut r = zm_reduce(a, m);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = r.last().unwrap().clone();
        let k = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = (&r[k + i] - &c * bi).mod_floor(m);
        }
        q[k] = c;
        r = zm_trim(r);
    }
    (zm_trim(q), r)
}

fn fp_to_z(a: &Fp) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lift `f = g h (mod p)` with `h` monic to modulus `target`, a power of `p`.
fn hensel_pair(f: &[BigInt], g: &Fp, h: &Fp, p: u64, target: &BigInt) -> (Zp, Zp) {
    let (_, s, t) = fp_xgcd(g, h, p);
    let (mut g, mut h, mut s, mut t) = (fp_to_z(g), fp_to_z(h), fp_to_z(&s), fp_to_z(&t));
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = (&m * &m).min(target.clone());
        let e = zm_sub(f, &zm_mul(&g, &h, &m2), &m2);
        let (q, r) = zm_divrem_monic(&zm_mul(&s, &e, &m2), &h, &m2);
        let g2 = zm_add(&zm_add(&g, &zm_mul(&t, &e, &m2), &m2), &zm_mul(&q, &g, &m2), &m2);
        let h2 = zm_add(&h, &r, &m2);
        let b = zm_sub(&zm_add(&zm_mul(&s, &g2, &m2), &zm_mul(&t, &h2, &m2), &m2), &[BigInt::one()], &m2);
        let (c, d) = zm_divrem_monic(&zm_mul(&s, &b, &m2), &h2, &m2);
        s = zm_sub(&s, &d, &m2);
        t = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &m2), &m2), &zm_mul(&c, &g2, &m2), &m2);
        g = g2;
        h = h2;
        m = m2;
    }
    (g, h)
}

/// Monic lifts modulo `target` of the monic modular factors of `f`.
fn hensel_multi(f: &[BigInt], facs: &[Fp], p: u64, target: &BigInt) -> Vec<Zp> {
    if facs.len() == 1 {
        let inv = modinv(f.last().unwrap(), target);
        return vec![zm_reduce(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), target)];
    }
    let (a, b) = facs.split_at(facs.len() / 2);
    let lc = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let mut g0 = vec![lc];
    for x in a {
        g0 = fp_mul(&g0, x, p);
    }
    let mut h0 = vec![1u64];
    for x in b {
        h0 = fp_mul(&h0, x, p);
    }
    let (g, h) = hensel_pair(f, &g0, &h0, p, target);
    let mut out = hensel_multi(&g, a, p, target);
    out.extend(hensel_multi(&h, b, p, target));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Zp {
    let half = m / 2;
    zm_trim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Zp> {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let (c, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let k = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
        r = zm_trim(r);
    }
    if r.is_empty() {
        Some(zm_trim(q))
    } else {
        None
    }
}

/// Irreducible factors over the integers of a squarefree primitive polynomial.
pub fn factor_squarefree_integer(f: &[BigInt], seed: u64) -> Vec<Zp> {
    let f = primitive_part(f);
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // pick the prime with the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<(Fp, usize)>, usize)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = fp_monic(&reduce_mod_p(&f, p), p);
        if fp.len() != n + 1 || fp_gcd(&fp, &fp_deriv(&fp, p), p).len() != 1 {
            continue;
        }
        let d = ddf(&fp, p);
        let count: usize = d.iter().map(|(g, k)| (g.len() - 1) / k).sum();
        if count == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|b| count < b.2) {
            best = Some((p, d, count));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, d, _) = best.unwrap();
    let mut facs = Vec::new();
    for (g, k) in d {
        edf(&g, k, p, &mut rng, &mut facs);
    }
    facs.sort();

    // Mignotte-style bound on factor coefficients
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2;
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
    }
    let lifted = hensel_multi(&f, &facs, p, &m);

    let mut rest = f.clone();
    let mut pool: Vec<usize> = (0..lifted.len()).collect();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= pool.len() {
        for combo in pool.iter().copied().combinations(s) {
            let mut g = vec![rest.last().unwrap().clone()];
            for &i in &combo {
                g = zm_mul(&g, &lifted[i], &m);
            }
            let g = primitive_part(&symmetric(&g, &m));
            if let Some(q) = int_div_exact(&rest, &g) {
                out.push(g);
                rest = primitive_part(&q);
                pool.retain(|i| !combo.contains(i));
                continue 'outer;
            }
        }
        s += 1;
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}
