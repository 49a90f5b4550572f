//! Algebraic constructions of difference bases, each oracle-verified.
//!
//! * [`singer`] — the perfect difference set of size `q+1` in `Z_{q²+q+1}`
//!   from the projective plane over `GF(q)`.
//! * [`bose_chowla`] — the `q`-element Sidon set in `Z_{q²−1}` whose
//!   differences cover everything outside the order-`(q−1)` subgroup, and
//!   [`bose_full`] which completes it to a basis of the full group.
//! * [`ruzsa`] — the diagonal `{(x,x)}` of `Z_p × Z_p^*`, covering all
//!   pairs off the two axis subgroups, with [`ruzsa_full`] for the full
//!   group `Z_{p²−p}`.
//! * [`interval_from_cyclic`] — splices a ruler for `[−n,n]` with a cyclic
//!   basis that avoids a prefix `[0, δ_k)` into a ruler for
//!   `[0, n·m + δ_k − 1]`.
//! * [`cyclic_from_interval`] — projects a ruler for `[0, ⌈(n−1)/2⌉]` onto
//!   `Z_n`.

use crate::bounds::prime_power_decompose;
use crate::bounds::is_prime;
use crate::error::{Error, Result};
use crate::field::{build_log_table, find_primitive, make_field, subfield_elements};
use crate::search::DeltaKWitness;
use crate::zmod::{self, Certificate, Target, Verified};

/// A perfect difference set of cardinality `q+1` in `Z_m`, `m = q²+q+1`.
#[derive(Debug, Clone)]
pub struct SingerSet {
    pub q: u64,
    pub m: u64,
    pub certificate: Certificate,
}

impl SingerSet {
    pub fn residues(&self) -> &[i64] {
        self.certificate.elements()
    }
}

/// Difference set from the lines of the projective plane over `GF(q)`:
/// with `g` primitive in `GF(q³)`, the logs of the plane `{a + b·g}` over
/// the subfield `GF(q)` collapse, mod `m = q²+q+1`, to exactly `q+1`
/// residues whose differences hit every nonzero residue once.
///
/// `g` itself serves as the second basis vector of the plane: a primitive
/// element of `GF(q³)` never lies in `GF(q)` (for `q³ > q`), so `{1, g}`
/// is independent over the subfield.
pub fn singer(q: u64) -> Result<SingerSet> {
    let (p, e) = prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
    let field = make_field(p, 3 * e as usize)?;
    let m = q * q + q + 1;
    let g = find_primitive(&field);
    let table = build_log_table(&field, &g);
    let sub = subfield_elements(&field, q)?;
    let mut residues: Vec<i64> = Vec::new();
    for a in &sub {
        for b in &sub {
            let x = field.add(a, &field.mul(b, &g));
            if field.is_zero(&x) {
                continue;
            }
            residues.push((table.log(&field, &x)? % m) as i64);
        }
    }
    residues.sort_unstable();
    residues.dedup();
    if residues.len() as u64 != q + 1 {
        return Err(Error::Internal(format!(
            "plane logs collapsed to {} residues, expected {}",
            residues.len(),
            q + 1
        )));
    }
    let cert = zmod::verify(&Certificate::new(Target::cyclic(m)?, residues, "singer")?)?;
    if cert.verified() != Verified::Pass
        || !zmod::is_difference_set(cert.elements(), m)?
    {
        return Err(Error::Internal("singer set failed the oracle".into()));
    }
    Ok(SingerSet { q, m, certificate: cert })
}

/// A `q`-element Sidon set in `Z_{q²−1}` covering `Z_{q²−1}` minus the
/// order-`(q−1)` subgroup.
#[derive(Debug, Clone)]
pub struct BoseChowlaSet {
    pub q: u64,
    pub n: u64,
    pub certificate: Certificate,
}

impl BoseChowlaSet {
    pub fn residues(&self) -> &[i64] {
        self.certificate.elements()
    }
}

/// Bose–Chowla set `{log_g(g + a) : a ∈ GF(q)}` in `Z_{q²−1}`.
///
/// Differences cover exactly the residues not divisible by `q+1` (the
/// complement of the subgroup of order `q−1`), each exactly once.
pub fn bose_chowla(q: u64) -> Result<BoseChowlaSet> {
    let (p, e) = prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
    let field = make_field(p, 2 * e as usize)?;
    let n = q * q - 1;
    let g = find_primitive(&field);
    let table = build_log_table(&field, &g);
    let sub = subfield_elements(&field, q)?;
    let mut residues: Vec<i64> = Vec::with_capacity(q as usize);
    for a in &sub {
        let x = field.add(&g, a);
        residues.push(table.log(&field, &x)? as i64);
    }
    residues.sort_unstable();
    residues.dedup();
    if residues.len() as u64 != q {
        return Err(Error::Internal("bose-chowla logs not distinct".into()));
    }
    let target = Target::cyclic_minus(n, vec![q - 1])?;
    let cert = zmod::verify(&Certificate::new(target, residues, "bose")?)?;
    if cert.verified() != Verified::Pass {
        return Err(Error::Internal("bose-chowla set failed the oracle".into()));
    }
    // Exactness: q(q−1) distinct nonzero differences covering a set of the
    // same size means nothing lands inside the forbidden subgroup.
    if !zmod::is_sidon(cert.elements(), n) {
        return Err(Error::Internal("bose-chowla set is not Sidon".into()));
    }
    Ok(BoseChowlaSet { q, n, certificate: cert })
}

/// Completes [`bose_chowla`] to a basis of the full group `Z_{q²−1}` by
/// embedding a basis of `Z_{q−1}` into the subgroup generated by `q+1`:
/// `Δ[Z_{q²−1}] ≤ q − 1 + Δ[Z_{q−1}]`.
pub fn bose_full(q: u64, sub_basis: &Certificate) -> Result<Certificate> {
    if sub_basis.target() != &Target::cyclic(q - 1)? {
        return Err(Error::InvalidCertificate(format!(
            "sub-basis must target Z_{}",
            q - 1
        )));
    }
    if sub_basis.verified() != Verified::Pass {
        return Err(Error::InvalidCertificate("sub-basis must be verified".into()));
    }
    let bc = bose_chowla(q)?;
    let n = q * q - 1;
    let embedded: Vec<i64> = sub_basis
        .elements()
        .iter()
        .map(|&e| e * (q as i64 + 1))
        .collect();
    let elements = zmod::union_elements(bc.certificate.elements(), &embedded, n);
    let cert = zmod::verify(&Certificate::new(Target::cyclic(n)?, elements, "bose_full")?)?;
    if cert.verified() != Verified::Pass {
        return Err(Error::Internal("bose_full failed the oracle".into()));
    }
    debug_assert!(cert.size() as u64 <= q - 1 + sub_basis.size() as u64);
    Ok(cert)
}

/// The diagonal basis of `Z_p × Z_p^*` transported to `Z_{p(p−1)}`.
#[derive(Debug, Clone)]
pub struct RuzsaBasis {
    pub p: u64,
    /// The diagonal pairs `(x, x)`, `x ∈ Z_p^*`.
    pub pairs: Vec<(u64, u64)>,
    /// The transported certificate for `Z_{p²−p}` minus the two axis
    /// subgroups (orders `p` and `p−1`).
    pub certificate: Certificate,
}

fn least_primitive_root(p: u64) -> u64 {
    let group = p - 1;
    let mut factors = Vec::new();
    let mut rest = group;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            factors.push(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }
    let pow = |mut b: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow(g, group / r) != 1))
        .expect("primitive root exists mod every prime")
}

/// Diagonal difference basis for `A = {(a,b) : a ≠ 0, b ≠ 1}` in
/// `Z_p × Z_p^*`: for `(a,b) ∈ A` take `x = b(b−1)⁻¹a`, `y = (b−1)⁻¹a`;
/// then `(x,x) − (y,y) = (x−y, xy⁻¹) = (a,b)`.
///
/// The product group is cyclic of order `p(p−1)` since `gcd(p, p−1) = 1`;
/// the transport fixes the least primitive root `g` mod `p` and maps
/// `t ↦ (t mod p, g^(t mod (p−1)))`.
pub fn ruzsa(p: u64) -> Result<RuzsaBasis> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 {
        return Err(Error::Domain("ruzsa construction needs p >= 3".into()));
    }
    let g = least_primitive_root(p);
    // Discrete logs base g by one sweep of the cycle.
    let mut dlog = vec![0u64; p as usize];
    let mut acc = 1u64;
    for i in 0..p - 1 {
        dlog[acc as usize] = i;
        acc = acc * g % p;
    }
    let n = p * (p - 1);
    let pairs: Vec<(u64, u64)> = (1..p).map(|x| (x, x)).collect();
    // Invert t ↦ (t mod p, g^t): t ≡ x (mod p), t ≡ dlog(x) (mod p−1).
    // With M1 = p−1 ≡ −1 (mod p) and M2 = p ≡ 1 (mod p−1) the CRT mix is
    // t = x·(p−1)² + dlog(x)·p (mod p(p−1)).
    let transported: Vec<i64> = pairs
        .iter()
        .map(|&(x, _)| {
            let t = (x * (p - 1) % n * (p - 1) + dlog[x as usize] * p) % n;
            t as i64
        })
        .collect();
    let target = Target::cyclic_minus(n, vec![p - 1, p])?;
    let cert = zmod::verify(&Certificate::new(target, transported, "ruzsa")?)?;
    if cert.verified() != Verified::Pass {
        return Err(Error::Internal("ruzsa basis failed the oracle".into()));
    }
    Ok(RuzsaBasis { p, pairs, certificate: cert })
}

/// Completes [`ruzsa`] to a basis of `Z_{p²−p}` with bases of the two axis
/// subgroups: `Δ[Z_{p²−p}] ≤ p − 3 + Δ[Z_p] + Δ[Z_{p−1}]`.
pub fn ruzsa_full(
    p: u64,
    basis_p: &Certificate,
    basis_p1: &Certificate,
) -> Result<Certificate> {
    if basis_p.target() != &Target::cyclic(p)? {
        return Err(Error::InvalidCertificate(format!("axis basis must target Z_{p}")));
    }
    if basis_p1.target() != &Target::cyclic(p - 1)? {
        return Err(Error::InvalidCertificate(format!(
            "axis basis must target Z_{}",
            p - 1
        )));
    }
    if basis_p.verified() != Verified::Pass || basis_p1.verified() != Verified::Pass {
        return Err(Error::InvalidCertificate("axis bases must be verified".into()));
    }
    let rz = ruzsa(p)?;
    let n = p * (p - 1);
    // The order-p subgroup is generated by p−1, the order-(p−1) one by p.
    let emb_p: Vec<i64> = basis_p.elements().iter().map(|&e| e * (p as i64 - 1)).collect();
    let emb_p1: Vec<i64> = basis_p1.elements().iter().map(|&e| e * p as i64).collect();
    let elements = zmod::union_elements(
        &zmod::union_elements(rz.certificate.elements(), &emb_p, n),
        &emb_p1,
        n,
    );
    let cert =
        zmod::verify(&Certificate::new(Target::cyclic(n)?, elements, "ruzsa_full")?)?;
    if cert.verified() != Verified::Pass {
        return Err(Error::Internal("ruzsa_full failed the oracle".into()));
    }
    debug_assert!(
        cert.size() as u64
            <= p - 3 + basis_p.size() as u64 + basis_p1.size() as u64
    );
    Ok(cert)
}

/// Splice a ruler `D` for `[−n, n]` with a δ_k witness `A` for `Z_m` into a
/// ruler for `[0, n·m + δ_k − 1]`:
/// `B = {a + m·d} ∪ {a + m(λ+1) : a ∈ A ∩ [0, δ_k)}`, where `λ − l = n`
/// picks the pair in `D` with minimal `λ`. Size at most `|D|·|A| + k`.
pub fn interval_from_cyclic(
    ruler: &Certificate,
    witness: &DeltaKWitness,
) -> Result<Certificate> {
    let n = match ruler.target() {
        Target::Interval { n } => *n,
        _ => {
            return Err(Error::InvalidCertificate(
                "splice needs an interval certificate".into(),
            ))
        }
    };
    if ruler.verified() != Verified::Pass {
        return Err(Error::InvalidCertificate("ruler must be verified".into()));
    }
    witness.validate()?;
    let m = witness.m as i64;
    let d_gap = witness.d as i64;
    // λ, l ∈ D with λ − l = n, minimal λ; D covers [−n, n] so a pair exists.
    let lambda = ruler
        .elements()
        .iter()
        .filter(|&&x| ruler.elements().binary_search(&(x - n as i64)).is_ok())
        .min()
        .copied()
        .ok_or_else(|| Error::Internal("verified ruler realizes its length".into()))?;
    let mut elements = Vec::new();
    for &a in &witness.elements {
        for &dd in ruler.elements() {
            elements.push(a + m * dd);
        }
    }
    for &a in &witness.elements {
        if a < d_gap {
            elements.push(a + m * (lambda + 1));
        }
    }
    let len = n * witness.m + witness.d - 1;
    let cert = zmod::verify(&Certificate::new(
        Target::interval(len)?,
        elements,
        "thm4.7",
    )?)?;
    if cert.verified() != Verified::Pass {
        return Err(Error::Internal("splice failed the interval oracle".into()));
    }
    debug_assert!(
        cert.size() <= ruler.size() * witness.elements.len() + witness.k as usize
    );
    Ok(cert)
}

/// Project a ruler for `[0, k]`, `k ≥ ⌈(n−1)/2⌉`, onto `Z_n`:
/// `Δ[C_n] ≤ Δ[⌈(n−1)/2⌉]`.
pub fn cyclic_from_interval(n: u64, ruler: &Certificate) -> Result<Certificate> {
    let k = match ruler.target() {
        Target::Interval { n } => *n,
        _ => {
            return Err(Error::InvalidCertificate(
                "projection needs an interval certificate".into(),
            ))
        }
    };
    if ruler.verified() != Verified::Pass {
        return Err(Error::InvalidCertificate("ruler must be verified".into()));
    }
    if n == 0 {
        return Err(Error::Domain("cyclic order must be >= 1".into()));
    }
    if 2 * k + 1 < n {
        return Err(Error::Domain(format!(
            "interval [−{k}, {k}] does not wrap around Z_{n}"
        )));
    }
    let elements: Vec<i64> = ruler
        .elements()
        .iter()
        .map(|&e| e.rem_euclid(n as i64))
        .collect();
    let cert = zmod::verify(&Certificate::new(Target::cyclic(n)?, elements, "prop4.4")?)?;
    if cert.verified() != Verified::Pass {
        return Err(Error::Internal("projection failed the oracle".into()));
    }
    Ok(cert)
}
