//! Arithmetic in `GF(p^k)` with an explicit irreducible modulus.
//!
//! Elements are length-`k` coefficient vectors over `Z_p` (constant term
//! first). Every "least element" tie-break uses the canonical index
//! `c_0 + c_1·p + … + c_{k−1}·p^{k−1}`, which also indexes the dense
//! discrete-log tables. Fields are built deterministically: the modulus is
//! the irreducible monic polynomial of degree `k` with the smallest
//! canonical index, so repeated runs agree across platforms.

use crate::bounds::is_prime;
use crate::error::{Error, Result};

/// Largest supported field size; beyond it [`make_field`] refuses rather
/// than building multi-hundred-megabyte log tables.
pub const FIELD_SIZE_CAP: u64 = 1 << 24;

/// A finite field `GF(p^k)` with its modulus polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    q: u64,
    /// Monic irreducible of degree `k` over `Z_p`, constant term first.
    modulus: Vec<u64>,
}

/// Field element as a little-endian coefficient vector of length `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// Dense exponent/logarithm tables for the multiplicative group.
#[derive(Debug, Clone)]
pub struct LogTable {
    generator: FieldElement,
    /// `exp[i]` = canonical index of `g^i`, `0 ≤ i < q−1`.
    exp: Vec<u32>,
    /// `log[index(x)] = i` with `g^i = x`; `log[0]` is a sentinel.
    log: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

impl LogTable {
    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn group_order(&self) -> u64 {
        self.exp.len() as u64
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, spec: &FieldSpec, x: &FieldElement) -> Result<u64> {
        let idx = spec.index_of(x);
        if idx == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[idx as usize];
        debug_assert_ne!(l, NO_LOG);
        Ok(l as u64)
    }

    /// `g^i` for `0 ≤ i < q−1`.
    pub fn exp(&self, spec: &FieldSpec, i: u64) -> FieldElement {
        spec.element_at(self.exp[(i % self.group_order()) as usize] as u64)
    }
}

// --- polynomial helpers over Z_p (dense, little-endian, no leading zeros) ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let deg_m = m.len() - 1;
    while r.len() > deg_m {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - deg_m;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + (p - 1) * lead % p * mi) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // Make b monic before reducing: scale by the inverse of its lead.
        let inv = mod_inv(b[b.len() - 1], p);
        let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        let r = poly_rem(&a, &monic, p);
        a = b;
        b = r;
    }
    a
}

fn mod_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// `x^(p^d) mod m` by repeated exponentiation by `p`.
fn poly_frobenius(m: &[u64], p: u64, d: u32) -> Vec<u64> {
    let mut x = vec![0, 1]; // the polynomial x
    for _ in 0..d {
        x = poly_powmod(&x, p, m, p);
    }
    x
}

fn poly_powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &base, p), m, p);
        }
        base = poly_rem(&poly_mul(&base, &base, p), m, p);
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + p - c) % p;
    }
    poly_trim(&mut out);
    out
}

/// Irreducibility over `Z_p`: `x^(p^k) ≡ x (mod f)` and
/// `gcd(x^(p^(k/r)) − x, f) = 1` for every prime `r | k`. The subtrahend
/// `x` is reduced mod `f` too, which matters for degree-1 moduli.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    if k == 0 {
        return false;
    }
    let x_mod_f = poly_rem(&[0, 1], f, p);
    let xq = poly_frobenius(f, p, k);
    if !poly_sub(&xq, &x_mod_f, p).is_empty() {
        return false;
    }
    for r in prime_factors(k as u64) {
        let d = k / r as u32;
        let g = poly_sub(&poly_frobenius(f, p, d), &x_mod_f, p);
        let gcd = poly_gcd(f, &g, p);
        if gcd.len() != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Build `GF(p^k)` with the canonically smallest monic irreducible modulus.
pub fn make_field(p: u64, k: usize) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::Domain("extension degree must be >= 1".into()));
    }
    let q = p
        .checked_pow(k as u32)
        .filter(|&q| q <= FIELD_SIZE_CAP)
        .ok_or(Error::FieldTooLarge(p.saturating_pow(k as u32)))?;
    // Enumerate the non-leading coefficients in canonical index order.
    for v in 0..q {
        let mut f = Vec::with_capacity(k + 1);
        let mut rest = v;
        for _ in 0..k {
            f.push(rest % p);
            rest /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return Ok(FieldSpec { p, k, q, modulus: f });
        }
    }
    Err(Error::Internal(format!(
        "no irreducible polynomial of degree {k} over Z_{p}"
    )))
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.k] }
    }

    pub fn one(&self) -> FieldElement {
        self.element_at(1)
    }

    /// Canonical index `c_0 + c_1·p + … + c_{k−1}·p^{k−1}`.
    pub fn index_of(&self, x: &FieldElement) -> u64 {
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Element with the given canonical index in `[0, q)`.
    pub fn element_at(&self, index: u64) -> FieldElement {
        debug_assert!(index < self.q);
        let mut coeffs = Vec::with_capacity(self.k);
        let mut rest = index;
        for _ in 0..self.k {
            coeffs.push(rest % self.p);
            rest /= self.p;
        }
        FieldElement { coeffs }
    }

    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.k || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Domain(format!(
                "coefficient vector must have length {} over Z_{}",
                self.k, self.p
            )));
        }
        Ok(FieldElement { coeffs: coeffs.to_vec() })
    }

    pub fn is_zero(&self, x: &FieldElement) -> bool {
        x.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        let mut rem = poly_rem(&prod, &self.modulus, self.p);
        rem.resize(self.k, 0);
        FieldElement { coeffs: rem }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^(q−2)`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }
}

/// Least element (by canonical index) of multiplicative order `q − 1`.
pub fn find_primitive(spec: &FieldSpec) -> FieldElement {
    let group = spec.order() - 1;
    let factors = prime_factors(group);
    for idx in 1..spec.order() {
        let cand = spec.element_at(idx);
        let primitive = factors
            .iter()
            .all(|&r| spec.pow(&cand, group / r) != spec.one());
        if primitive {
            return cand;
        }
    }
    unreachable!("every finite field has a primitive element")
}

/// Dense log/exp tables for the cyclic group generated by `g`.
pub fn build_log_table(spec: &FieldSpec, g: &FieldElement) -> LogTable {
    let group = (spec.order() - 1) as usize;
    let mut exp = Vec::with_capacity(group);
    let mut log = vec![NO_LOG; spec.order() as usize];
    let mut acc = spec.one();
    for i in 0..group {
        let idx = spec.index_of(&acc);
        debug_assert_eq!(log[idx as usize], NO_LOG, "generator is not primitive");
        exp.push(idx as u32);
        log[idx as usize] = i as u32;
        acc = spec.mul(&acc, g);
    }
    debug_assert_eq!(acc, spec.one());
    LogTable { generator: g.clone(), exp, log }
}

/// The subfield of order `q_sub = p^d`, `d | k`: exactly the solutions of
/// `x^{q_sub} = x`, realized as `{0} ∪ {g^{j·(q−1)/(q_sub−1)}}`.
pub fn subfield_elements(spec: &FieldSpec, q_sub: u64) -> Result<Vec<FieldElement>> {
    let mut d = 0usize;
    let mut acc = 1u64;
    while acc < q_sub {
        acc *= spec.p();
        d += 1;
    }
    if acc != q_sub || d == 0 || spec.degree() % d != 0 {
        return Err(Error::Domain(format!(
            "{q_sub} is not a subfield order of GF({})",
            spec.order()
        )));
    }
    let g = find_primitive(spec);
    let step = (spec.order() - 1) / (q_sub - 1);
    let root = spec.pow(&g, step);
    let mut out = vec![spec.zero(), spec.one()];
    let mut cur = root.clone();
    while cur != spec.one() {
        out.push(cur.clone());
        cur = spec.mul(&cur, &root);
    }
    debug_assert_eq!(out.len() as u64, q_sub);
    debug_assert!(out.iter().all(|x| spec.pow(x, q_sub) == *x));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducible_moduli() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]); // x²+x+1
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]); // x³+x+1
        assert_eq!(make_field(3, 1).unwrap().modulus(), &[0, 1]); // x
        // Hand enumeration over Z_3: x³+2x+1 is the first cubic without a
        // root (degree 3, so root-freeness is enough).
        assert_eq!(make_field(3, 3).unwrap().modulus(), &[1, 2, 0, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]); // x²+1
    }

    #[test]
    fn make_field_is_deterministic() {
        for (p, k) in [(2, 8), (3, 4), (5, 3), (7, 2)] {
            assert_eq!(make_field(p, k).unwrap(), make_field(p, k).unwrap());
        }
    }

    #[test]
    fn make_field_rejects_bad_input() {
        assert!(matches!(make_field(4, 2), Err(Error::NotPrime(4))));
        assert!(matches!(make_field(2, 25), Err(Error::FieldTooLarge(_))));
        assert!(make_field(2, 0).is_err());
    }

    #[test]
    fn gf4_multiplication() {
        let f = make_field(2, 2).unwrap();
        let x = f.element_from_coeffs(&[0, 1]).unwrap();
        let x_plus_1 = f.element_from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(&x, &x), x_plus_1); // x² ≡ x+1 mod x²+x+1
    }

    #[test]
    fn gf7_inverse() {
        let f = make_field(7, 1).unwrap();
        let three = f.element_at(3);
        assert_eq!(f.inv(&three).unwrap(), f.element_at(5)); // 3·5 = 15 ≡ 1
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn inverses_exhaustive_small_fields() {
        for (p, k) in [(2, 1), (2, 4), (3, 2), (5, 2), (7, 1), (61, 1), (2, 6)] {
            let f = make_field(p, k).unwrap();
            for idx in 1..f.order() {
                let a = f.element_at(idx);
                let inv = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &inv), f.one(), "GF({}) idx {idx}", f.order());
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, k) in [(2, 3), (3, 2), (5, 1)] {
            let f = make_field(p, k).unwrap();
            let els: Vec<FieldElement> = (0..f.order()).map(|i| f.element_at(i)).collect();
            for a in &els {
                for b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in &els {
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, &f.add(b, c)),
                            f.add(&f.mul(a, b), &f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_elements() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(find_primitive(&f7), f7.element_at(3));
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(find_primitive(&f2), f2.one());
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(find_primitive(&f4), f4.element_from_coeffs(&[0, 1]).unwrap());
    }

    #[test]
    fn log_exp_round_trip() {
        for (p, k) in [(2, 4), (3, 3), (5, 2), (13, 1)] {
            let f = make_field(p, k).unwrap();
            let g = find_primitive(&f);
            let table = build_log_table(&f, &g);
            assert_eq!(table.exp(&f, 0), f.one());
            for idx in 1..f.order() {
                let x = f.element_at(idx);
                let l = table.log(&f, &x).unwrap();
                assert_eq!(table.exp(&f, l), x);
            }
        }
    }

    #[test]
    fn subfields() {
        // GF(4) inside GF(64): 4 elements, closed under + and ·, x⁴ = x.
        let f64 = make_field(2, 6).unwrap();
        let sub = subfield_elements(&f64, 4).unwrap();
        assert_eq!(sub.len(), 4);
        for a in &sub {
            assert_eq!(f64.pow(a, 4), *a);
            for b in &sub {
                assert!(sub.contains(&f64.add(a, b)));
                assert!(sub.contains(&f64.mul(a, b)));
            }
        }
        // GF(3) inside GF(9): the constants.
        let f9 = make_field(3, 2).unwrap();
        let sub = subfield_elements(&f9, 3).unwrap();
        let mut idxs: Vec<u64> = sub.iter().map(|x| f9.index_of(x)).collect();
        idxs.sort_unstable();
        assert_eq!(idxs, vec![0, 1, 2]);
        // GF(p) inside GF(p): the whole field.
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(subfield_elements(&f5, 5).unwrap().len(), 5);
        // GF(32) has degree 5 over GF(2), and 5 does not divide 6.
        assert!(subfield_elements(&f64, 32).is_err());
        assert!(subfield_elements(&f64, 6).is_err());
    }
}
