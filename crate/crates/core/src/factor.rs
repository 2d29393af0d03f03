//! Univariate factorization over the supported coefficient fields.
//!
//! Three engines, dispatched on the field:
//! - finite fields and their towers: squarefree split, distinct-degree, then
//!   Cantor-Zassenhaus equal-degree splitting (trace construction in
//!   characteristic 2);
//! - the rationals: Zassenhaus — factor mod a good prime, Hensel lift to a
//!   coefficient bound, recombine subsets;
//! - towers over the rationals: Trager's norm reduction to the level below.
//!
//! Randomness in equal-degree splitting is seeded from a stable hash of the
//! input so identical queries factor identically.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{BaseField, CoeffField, Scalar};
use crate::error::{Error, Result};
use crate::poly::Poly1;

/// Stable 64-bit FNV-1a, used only to seed deterministic RNG.
pub fn fnv64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Monic irreducible factors with multiplicities, canonically sorted.
pub fn factor(poly: &Poly1) -> Result<Vec<(Poly1, usize)>> {
    if poly.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if poly.is_constant() {
        return Ok(vec![]);
    }
    let field = poly.field.clone();
    let sf = poly.squarefree_part()?;
    let irreducibles = match field.base() {
        BaseField::Prime(_) => factor_squarefree_finite(&sf)?,
        BaseField::Rationals => {
            if field.tower().is_empty() {
                factor_squarefree_rationals(&sf)?
            } else {
                factor_squarefree_trager(&sf)?
            }
        }
    };
    let mut out = Vec::new();
    for g in irreducibles {
        let mut m = 0usize;
        let mut rest = poly.monic()?;
        loop {
            let (q, r) = rest.divmod(&g)?;
            if r.is_zero() && !q.is_zero() {
                m += 1;
                rest = q;
            } else {
                break;
            }
        }
        debug_assert!(m >= 1);
        out.push((g, m));
    }
    out.sort_by(|a, b| poly_sort_key(&a.0).cmp(&poly_sort_key(&b.0)));
    Ok(out)
}

fn poly_sort_key(p: &Poly1) -> (usize, String) {
    (p.coeffs.len(), p.to_string_in("x"))
}

/// `None` when irreducible over its field, else a proper monic factor.
pub fn irreducible_witness(field: &CoeffField, coeffs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let p = Poly1::new(field.clone(), coeffs.to_vec());
    let deg = match p.degree() {
        Some(d) => d,
        None => return Ok(Some(vec![])),
    };
    let factors = factor(&p)?;
    if factors.len() == 1 && factors[0].1 == 1 && factors[0].0.degree() == Some(deg) {
        return Ok(None);
    }
    Ok(Some(factors[0].0.coeffs.clone()))
}

/// Roots of `poly` lying in its own coefficient field.
pub fn roots_in_field(poly: &Poly1) -> Result<Vec<Scalar>> {
    let field = &poly.field;
    let mut out = Vec::new();
    for (g, _) in factor(poly)? {
        if g.degree() == Some(1) {
            out.push(field.neg(&g.coeff(0)));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// finite fields
// ---------------------------------------------------------------------------

fn factor_squarefree_finite(sf: &Poly1) -> Result<Vec<Poly1>> {
    let field = &sf.field;
    let f = sf.monic()?;
    if f.degree().unwrap_or(0) <= 1 {
        return Ok(if f.is_constant() { vec![] } else { vec![f] });
    }
    let q = field.order().expect("finite field");
    let seed = fnv64(format!("{}|{}", field.spec_string(), f.to_string_in("x")).as_bytes());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut out = Vec::new();
    let mut rest = f;
    // distinct-degree: h = x^(q^d) mod rest
    let x = Poly1::var(field.clone());
    let mut h = x.clone();
    let mut d = 0usize;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push(rest.clone());
            break;
        }
        h = h.pow_mod(&q, &rest)?;
        let g = h.sub(&x).gcd(&rest)?;
        if let Some(gd) = g.degree() {
            if gd > 0 {
                equal_degree_split(&g, d, &q, &mut rng, &mut out)?;
                rest = rest.div_exact(&g)?;
                let (_, hr) = h.divmod(&rest)?;
                h = hr;
            }
        }
    }
    Ok(out)
}

fn equal_degree_split(
    g: &Poly1,
    d: usize,
    q: &BigInt,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly1>,
) -> Result<()> {
    let field = &g.field;
    let deg = g.degree().unwrap();
    if deg == d {
        out.push(g.monic()?);
        return Ok(());
    }
    let p = field.characteristic();
    let split = loop {
        let rand_poly = Poly1::new(
            field.clone(),
            (0..deg).map(|_| field.random(rng)).collect(),
        );
        if rand_poly.is_constant() {
            continue;
        }
        let cand = if p == 2 {
            // trace map over F_2: r + r^2 + ... + r^(2^(m*d - 1))
            let m = field.degree_over_base();
            let mut acc = rand_poly.clone();
            let mut cur = rand_poly.clone();
            for _ in 1..(m * d) {
                cur = cur.mul(&cur).divmod(g)?.1;
                acc = acc.add(&cur);
            }
            acc.gcd(g)?
        } else {
            let e = (q.pow(d as u32) - BigInt::one()) / BigInt::from(2);
            let s = rand_poly.pow_mod(&e, g)?;
            let one = Poly1::constant(field.clone(), field.one());
            s.sub(&one).gcd(g)?
        };
        match cand.degree() {
            Some(cd) if cd > 0 && cd < deg => break cand,
            _ => continue,
        }
    };
    equal_degree_split(&split, d, q, rng, out)?;
    let other = g.div_exact(&split)?;
    equal_degree_split(&other, d, q, rng, out)
}

// ---------------------------------------------------------------------------
// rationals (Zassenhaus)
// ---------------------------------------------------------------------------

/// Integer polynomial helpers modulo `m`, constant-first coefficients.
mod zmod {
    use super::*;

    pub fn reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor_big(m)).collect();
        while out.last().map_or(false, |c| c.is_zero()) {
            out.pop();
        }
        out
    }

    pub trait ModFloor {
        fn mod_floor_big(&self, m: &BigInt) -> BigInt;
    }
    impl ModFloor for BigInt {
        fn mod_floor_big(&self, m: &BigInt) -> BigInt {
            let r = self % m;
            if r.is_negative() {
                r + m
            } else {
                r
            }
        }
    }

    pub fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        reduce(&out, m)
    }

    pub fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] += y;
        }
        reduce(&out, m)
    }

    pub fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let neg: Vec<BigInt> = b.iter().map(|c| -c).collect();
        add(a, &neg, m)
    }

    /// Division with remainder by a monic divisor.
    pub fn divmod_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
        assert!(b.last().map_or(false, |c| c.is_one()), "divisor must be monic");
        let db = b.len() - 1;
        let mut rem: Vec<BigInt> = a.to_vec();
        if rem.len() <= db {
            return (vec![], reduce(&rem, m));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let q = rem[i].mod_floor_big(m);
            if q.is_zero() {
                continue;
            }
            quot[i - db] = q.clone();
            for (j, bc) in b.iter().enumerate() {
                let t = &q * bc;
                rem[i - db + j] -= t;
            }
            rem[i] = BigInt::zero();
        }
        (reduce(&quot, m), reduce(&rem, m))
    }
}

/// One quadratic Hensel step: from mod `m` to mod `m^2`.
/// Preconditions: `f = g*h mod m`, `s*g + t*h = 1 mod m`, `h` monic,
/// `deg s < deg h`, `deg t < deg g`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let e = zmod::sub(f, &zmod::mul(g, h, &m2), &m2);
    let se = zmod::mul(s, &e, &m2);
    let (q, r) = zmod::divmod_monic(&se, h, &m2);
    let g_new = zmod::add(
        g,
        &zmod::add(&zmod::mul(t, &e, &m2), &zmod::mul(&q, g, &m2), &m2),
        &m2,
    );
    let h_new = zmod::add(h, &r, &m2);
    let b = zmod::sub(
        &zmod::add(
            &zmod::mul(s, &g_new, &m2),
            &zmod::mul(t, &h_new, &m2),
            &m2,
        ),
        &[BigInt::one()],
        &m2,
    );
    let sb = zmod::mul(s, &b, &m2);
    let (c, d) = zmod::divmod_monic(&sb, &h_new, &m2);
    let s_new = zmod::sub(s, &d, &m2);
    let t_new = zmod::sub(
        t,
        &zmod::add(&zmod::mul(t, &b, &m2), &zmod::mul(&c, &g_new, &m2), &m2),
        &m2,
    );
    (g_new, h_new, s_new, t_new)
}

/// Lifts a factorization `f = lc * prod(monic factors)` from mod `p` to
/// mod `p^(2^levels) >= target`, by a balanced tree of pair liftings.
fn hensel_tree(
    f: &[BigInt],
    factors_mod_p: &[Vec<BigInt>],
    p: &BigInt,
    target: &BigInt,
) -> Result<Vec<Vec<BigInt>>> {
    if factors_mod_p.len() == 1 {
        // single factor: f = lc * g; lift is just f made monic mod target
        let mut m = p.clone();
        while &m < target {
            m = &m * &m;
        }
        let lc = f.last().unwrap();
        let lc_inv = modinv_big(lc, &m)?;
        let g: Vec<BigInt> = f.iter().map(|c| c * &lc_inv).collect();
        return Ok(vec![zmod::reduce(&g, &m)]);
    }
    let mid = factors_mod_p.len() / 2;
    let (left, right) = factors_mod_p.split_at(mid);
    let lc = f.last().unwrap().mod_floor(p);
    let mut g: Vec<BigInt> = vec![lc];
    for fac in left {
        g = zmod::mul(&g, fac, p);
    }
    let mut h: Vec<BigInt> = vec![BigInt::one()];
    for fac in right {
        h = zmod::mul(&h, fac, p);
    }
    // Bezout s*g + t*h = 1 mod p via extended Euclid over F_p
    let (s, t) = bezout_mod_p(&g, &h, p)?;
    let (mut gg, mut hh, mut ss, mut tt) = (g, h, s, t);
    let mut m = p.clone();
    while &m < target {
        let (g2, h2, s2, t2) = hensel_step(f, &gg, &hh, &ss, &tt, &m);
        gg = g2;
        hh = h2;
        ss = s2;
        tt = t2;
        m = &m * &m;
    }
    let mut out = hensel_tree(&gg, left, p, target)?;
    out.extend(hensel_tree(&hh, right, p, target)?);
    Ok(out)
}

trait ModFloorExt {
    fn mod_floor(&self, m: &BigInt) -> BigInt;
}
impl ModFloorExt for BigInt {
    fn mod_floor(&self, m: &BigInt) -> BigInt {
        use zmod::ModFloor;
        self.mod_floor_big(m)
    }
}

fn modinv_big(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let (mut t, mut new_t) = (BigInt::zero(), BigInt::one());
    let (mut r, mut new_r) = (m.clone(), a.mod_floor(m));
    while !new_r.is_zero() {
        let q = &r / &new_r;
        let tmp_t = &t - &q * &new_t;
        t = std::mem::replace(&mut new_t, tmp_t);
        let tmp_r = &r - &q * &new_r;
        r = std::mem::replace(&mut new_r, tmp_r);
    }
    if !r.is_one() {
        return Err(Error::Internal("modinv: not invertible".into()));
    }
    Ok(t.mod_floor(m))
}

fn bezout_mod_p(g: &[BigInt], h: &[BigInt], p: &BigInt) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    // extended Euclid over F_p on integer coefficient vectors
    let digits = p.to_u64_digits().1;
    let pf = crate::coeff::make_prime_field(digits[0])?;
    let to_poly = |v: &[BigInt]| {
        Poly1::new(
            pf.clone(),
            v.iter().map(|c| pf.from_bigint(c)).collect(),
        )
    };
    let a = to_poly(g);
    let b = to_poly(h);
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let one = Poly1::constant(pf.clone(), pf.one());
    let zero = Poly1::zero(pf.clone());
    let (mut s0, mut s1) = (one.clone(), zero.clone());
    let (mut t0, mut t1) = (zero, one);
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if r0.degree() != Some(0) {
        return Err(Error::Internal("bezout: factors not coprime mod p".into()));
    }
    let inv = pf.inv(r0.leading())?;
    let s_final = s0.scale(&inv);
    let t_final = t0.scale(&inv);
    let back = |p1: &Poly1| -> Vec<BigInt> {
        p1.coeffs
            .iter()
            .map(|c| match c {
                Scalar::Fp(n) => BigInt::from(*n),
                _ => unreachable!(),
            })
            .collect()
    };
    Ok((back(&s_final), back(&t_final)))
}

fn factor_squarefree_rationals(sf: &Poly1) -> Result<Vec<Poly1>> {
    let field = sf.field.clone();
    let deg = sf.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(if deg == 1 { vec![sf.monic()?] } else { vec![] });
    }
    // clear denominators, primitive integer polynomial
    let mut zpoly: Vec<BigInt> = integer_coeffs(sf);
    // strip x^k
    let mut out = Vec::new();
    let mut shift = 0usize;
    while zpoly.first().map_or(false, |c| c.is_zero()) {
        zpoly.remove(0);
        shift += 1;
    }
    if shift > 0 {
        out.push(Poly1::var(field.clone()));
    }
    if zpoly.len() <= 1 {
        return Ok(out);
    }
    if zpoly.len() == 2 {
        out.push(from_integer_coeffs(&field, &zpoly).monic()?);
        return Ok(out);
    }

    // choose a prime keeping lc a unit and the reduction squarefree
    let primes: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    let mut chosen = None;
    for &pr in &primes {
        let pb = BigInt::from(pr);
        if (zpoly.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let pf = crate::coeff::make_prime_field(pr)?;
        let fp = Poly1::new(
            pf.clone(),
            zpoly.iter().map(|c| pf.from_bigint(c)).collect(),
        );
        let d = fp.derivative();
        if d.is_zero() {
            continue;
        }
        if fp.gcd(&d)?.is_constant() {
            chosen = Some((pr, fp));
            break;
        }
    }
    let (pr, fp) = chosen.ok_or_else(|| {
        Error::Internal("no small prime gives a squarefree reduction".into())
    })?;
    let p = BigInt::from(pr);

    let modular = factor_squarefree_finite(&fp.monic()?)?;
    if modular.len() == 1 {
        out.push(from_integer_coeffs(&field, &zpoly).monic()?);
        return Ok(out);
    }
    let modular_z: Vec<Vec<BigInt>> = modular
        .iter()
        .map(|g| {
            g.coeffs
                .iter()
                .map(|c| match c {
                    Scalar::Fp(n) => BigInt::from(*n),
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect();

    // Landau-Mignotte style bound on factor coefficients
    let n = zpoly.len() - 1;
    let height: BigInt = zpoly.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt =
        (BigInt::from(n as i64 + 1)) * (BigInt::one() << n) * &height * zpoly.last().unwrap().abs();
    let target = &bound * BigInt::from(2) + BigInt::one();

    let lifted = hensel_tree(&zpoly, &modular_z, &p, &target)?;
    let mut modulus = p.clone();
    while modulus < target {
        modulus = &modulus * &modulus;
    }

    // subset recombination
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = zpoly;
    'outer: loop {
        let r = remaining.len();
        if r == 0 {
            break;
        }
        if r == 1 {
            out.push(from_integer_coeffs(&field, &current).monic()?);
            break;
        }
        for size in 1..=r / 2 {
            for subset in subsets_of_size(r, size) {
                let mut cand = vec![current.last().unwrap().clone()];
                for &i in &subset {
                    cand = zmod::mul(&cand, &remaining[i], &modulus);
                }
                let cand = balanced(&cand, &modulus);
                let cand = primitive_z(&cand);
                if cand.len() <= 1 {
                    continue;
                }
                if let Some(quot) = divide_z(&current, &cand) {
                    out.push(from_integer_coeffs(&field, &cand).monic()?);
                    current = quot;
                    let keep: Vec<Vec<BigInt>> = remaining
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !subset.contains(i))
                        .map(|(_, v)| v.clone())
                        .collect();
                    remaining = keep;
                    continue 'outer;
                }
            }
        }
        // nothing recombined: the rest is irreducible
        out.push(from_integer_coeffs(&field, &current).monic()?);
        break;
    }
    Ok(out)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn balanced(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / BigInt::from(2);
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn primitive_z(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in v {
        g = gcd_big(&g, c);
    }
    if g.is_zero() || g.is_one() {
        let mut out = v.to_vec();
        normalize_sign(&mut out);
        return out;
    }
    let mut out: Vec<BigInt> = v.iter().map(|c| c / &g).collect();
    normalize_sign(&mut out);
    out
}

fn normalize_sign(v: &mut [BigInt]) {
    if v.last().map_or(false, |c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -c.clone();
        }
    }
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = &x % &y;
        x = std::mem::replace(&mut y, r);
    }
    x
}

/// Exact division over the integers; `None` when not divisible.
fn divide_z(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.is_empty() {
        return None;
    }
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        if !(&rem[i] % b.last().unwrap()).is_zero() {
            return None;
        }
        let q = &rem[i] / b.last().unwrap();
        quot[i - db] = q.clone();
        for (j, bc) in b.iter().enumerate() {
            let t = &q * bc;
            rem[i - db + j] -= t;
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

/// Clears denominators and content; result is primitive with positive lc.
fn integer_coeffs(p: &Poly1) -> Vec<BigInt> {
    let mut denom_lcm = BigInt::one();
    for c in &p.coeffs {
        if let Scalar::Q(q) = c {
            let d = q.denom();
            denom_lcm = &denom_lcm / gcd_big(&denom_lcm, d) * d;
        }
    }
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| match c {
            Scalar::Q(q) => q.numer() * (&denom_lcm / q.denom()),
            _ => unreachable!("integer_coeffs expects rationals"),
        })
        .collect();
    primitive_z(&ints)
}

fn from_integer_coeffs(field: &CoeffField, v: &[BigInt]) -> Poly1 {
    Poly1::new(field.clone(), v.iter().map(|c| field.from_bigint(c)).collect())
}

// ---------------------------------------------------------------------------
// towers over Q (Trager)
// ---------------------------------------------------------------------------

fn factor_squarefree_trager(sf: &Poly1) -> Result<Vec<Poly1>> {
    let field = sf.field.clone();
    let sub = field.subfield();
    let alpha = field.generator();
    let top_deg = field.tower().last().unwrap().degree();
    if top_deg == 1 {
        // trivial step: coefficients already live in the subfield
        let down = Poly1::new(
            sub.clone(),
            sf.coeffs
                .iter()
                .map(|c| match c {
                    Scalar::Ext(v) => v[0].clone(),
                    _ => unreachable!(),
                })
                .collect(),
        );
        let facs = factor(&down)?;
        return Ok(facs
            .into_iter()
            .map(|(g, _)| {
                Poly1::new(
                    field.clone(),
                    g.coeffs
                        .iter()
                        .map(|c| lift_one(&field, c.clone()))
                        .collect(),
                )
            })
            .collect());
    }
    let f = sf.monic()?;
    for shift_c in 0..40i64 {
        let c = if shift_c % 2 == 0 {
            shift_c / 2
        } else {
            -(shift_c / 2 + 1)
        };
        let c_alpha = field.mul(&field.from_i64(c), &alpha);
        // g(x) = f(x - c*alpha)
        let g = f.shift(&field.neg(&c_alpha));
        // norm via resultant over the subfield
        let norm = trager_norm(&field, &sub, &g)?;
        let d = norm.derivative();
        if d.is_zero() || !norm.gcd(&d)?.is_constant() {
            continue;
        }
        let norm_factors = factor(&norm)?;
        let mut out = Vec::new();
        let mut rest = f.clone();
        for (ni, _) in norm_factors {
            // lift N_i to the tower and substitute x + c*alpha
            let ni_up = Poly1::new(
                field.clone(),
                ni.coeffs.iter().map(|cc| lift_one(&field, cc.clone())).collect(),
            );
            let ni_shift = ni_up.shift(&c_alpha);
            let fi = rest.gcd(&ni_shift)?;
            if let Some(dg) = fi.degree() {
                if dg > 0 {
                    rest = rest.div_exact(&fi)?;
                    out.push(fi.monic()?);
                }
            }
        }
        if !rest.is_constant() {
            return Err(Error::Internal("trager: factors do not exhaust input".into()));
        }
        return Ok(out);
    }
    Err(Error::Internal("trager: no squarefree norm found".into()))
}

fn lift_one(field: &CoeffField, c: Scalar) -> Scalar {
    let d = field.tower().last().unwrap().degree();
    let sub = field.subfield();
    let mut v = vec![sub.zero(); d];
    v[0] = c;
    Scalar::Ext(v)
}

/// `Res_z(minpoly(z), g(z, x))` where `g`'s coefficients are rewritten as
/// polynomials in the tower generator `z` over the subfield.
fn trager_norm(field: &CoeffField, sub: &CoeffField, g: &Poly1) -> Result<Poly1> {
    let d = field.tower().last().unwrap().degree();
    // z-coefficient lists: for each power of z, a Poly1 in x over subfield
    let mut z_coeffs: Vec<Vec<Scalar>> = vec![vec![]; d];
    for (i, c) in g.coeffs.iter().enumerate() {
        let v = match c {
            Scalar::Ext(v) => v.clone(),
            _ => unreachable!(),
        };
        for (j, vj) in v.into_iter().enumerate() {
            let col = &mut z_coeffs[j];
            if col.len() <= i {
                col.resize(i + 1, sub.zero());
            }
            col[i] = vj;
        }
    }
    let g_z: Vec<Poly1> = z_coeffs
        .into_iter()
        .map(|v| Poly1::new(sub.clone(), v))
        .collect();
    // trim trailing zero polys in z
    let mut g_z = g_z;
    while g_z.last().map_or(false, |p| p.is_zero()) {
        g_z.pop();
    }
    let minpoly = field.tower().last().unwrap().minpoly.clone();
    let m_z: Vec<Poly1> = minpoly
        .into_iter()
        .map(|c| Poly1::constant(sub.clone(), c))
        .collect();
    crate::poly::resultant_poly1_coeffs(sub, &m_z, &g_z)
}
