//! Exact arithmetic in the ground field `k` and finite extension towers `k'`.
//!
//! A [`CoeffField`] is either `Q` or `F_p`, extended by a tower of monic
//! irreducible polynomials, each over the previous level. The degree
//! `[k':k]` is the product of the tower degrees; it is the weight that
//! multiplies symbols and lattice indices everywhere else in the crate.
//!
//! Elements ([`Scalar`]) are plain data; all arithmetic goes through the
//! field handle so that reduction happens against the right tower. Values
//! are immutable after construction and safe to share across threads.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Ground field at the bottom of a tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

/// One extension step: a monic irreducible polynomial over the level below.
/// `minpoly` holds `deg + 1` coefficients, constant term first, each a
/// scalar of the level below; the leading coefficient is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    pub minpoly: Vec<Scalar>,
}

impl TowerLevel {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

#[derive(Debug, PartialEq, Eq)]
struct FieldRepr {
    base: BaseField,
    tower: Vec<TowerLevel>,
    degree: usize,
}

/// An exact coefficient field: `Q` or `F_p`, with a tower of extensions.
#[derive(Debug, Clone)]
pub struct CoeffField(Arc<FieldRepr>);

impl PartialEq for CoeffField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for CoeffField {}

/// Raw element data relative to some [`CoeffField`].
///
/// Level 0 is a rational or a reduced residue mod p; an `Ext` node holds
/// exactly `deg` coordinates over the level below (power basis).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64),
    Ext(Vec<Scalar>),
}

/// An element bundled with its field, for the checked public interface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffElem {
    pub field: CoeffField,
    pub value: Scalar,
}

/// The four checked field operations of [`CoeffField::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Builds `F_p` after a primality check. Moduli are capped below `2^31`
/// so products fit in `u64`.
pub fn make_prime_field(p: u64) -> Result<CoeffField> {
    if !is_prime_u64(p) || p >= (1 << 31) {
        return Err(Error::NotPrime(p));
    }
    Ok(CoeffField(Arc::new(FieldRepr {
        base: BaseField::Prime(p),
        tower: Vec::new(),
        degree: 1,
    })))
}

pub fn rationals() -> CoeffField {
    CoeffField(Arc::new(FieldRepr {
        base: BaseField::Rationals,
        tower: Vec::new(),
        degree: 1,
    }))
}

impl CoeffField {
    pub fn base(&self) -> &BaseField {
        &self.0.base
    }

    pub fn tower(&self) -> &[TowerLevel] {
        &self.0.tower
    }

    /// `[k':k]`, the degree over the ground field.
    pub fn degree_over_base(&self) -> usize {
        self.0.degree
    }

    /// Field characteristic; zero for towers over `Q`.
    pub fn characteristic(&self) -> u64 {
        match self.0.base {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => p,
        }
    }

    /// The field this tower sits on (one level down). Panics on a bare base
    /// field; callers check `tower().is_empty()` first.
    pub fn subfield(&self) -> CoeffField {
        assert!(!self.0.tower.is_empty());
        CoeffField(Arc::new(FieldRepr {
            base: self.0.base.clone(),
            tower: self.0.tower[..self.0.tower.len() - 1].to_vec(),
            degree: self.0.degree / self.0.tower.last().unwrap().degree(),
        }))
    }

    /// Extends the field by a monic polynomial, verifying irreducibility.
    /// `minpoly` is constant-first with scalars of `self`. A reducible input
    /// is rejected with a witness factor.
    pub fn make_extension(&self, minpoly: Vec<Scalar>) -> Result<CoeffField> {
        if minpoly.len() < 2 {
            return Err(Error::Reducible {
                poly: self.poly_to_string(&minpoly, "x"),
                witness: "constant".into(),
            });
        }
        if minpoly.last().unwrap() != &self.one() {
            return Err(Error::Reducible {
                poly: self.poly_to_string(&minpoly, "x"),
                witness: "not monic".into(),
            });
        }
        if minpoly.len() > 2 {
            if let Some(w) = crate::factor::irreducible_witness(self, &minpoly)? {
                return Err(Error::Reducible {
                    poly: self.poly_to_string(&minpoly, "x"),
                    witness: self.poly_to_string(&w, "x"),
                });
            }
        }
        let deg = minpoly.len() - 1;
        let mut tower = self.0.tower.clone();
        tower.push(TowerLevel { minpoly });
        Ok(CoeffField(Arc::new(FieldRepr {
            base: self.0.base.clone(),
            tower,
            degree: self.0.degree * deg,
        })))
    }

    fn levels(&self) -> usize {
        self.0.tower.len()
    }

    pub fn zero(&self) -> Scalar {
        self.zero_at(self.levels())
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    fn zero_at(&self, level: usize) -> Scalar {
        if level == 0 {
            match self.0.base {
                BaseField::Rationals => Scalar::Q(BigRational::zero()),
                BaseField::Prime(_) => Scalar::Fp(0),
            }
        } else {
            let d = self.0.tower[level - 1].degree();
            Scalar::Ext(vec![self.zero_at(level - 1); d])
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.lift_to(self.levels(), self.base_from_i64(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        let b = match self.0.base {
            BaseField::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                let m = n % BigInt::from(p);
                let m = if m.is_negative() { m + BigInt::from(p) } else { m };
                let digits = m.to_u64_digits().1;
                Scalar::Fp(digits.first().copied().unwrap_or(0))
            }
        };
        self.lift_to(self.levels(), b)
    }

    pub fn from_rational(&self, num: i64, den: i64) -> Result<Scalar> {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        self.div(&n, &d)
    }

    fn base_from_i64(&self, n: i64) -> Scalar {
        match self.0.base {
            BaseField::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            BaseField::Prime(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Fp(m)
            }
        }
    }

    /// Wraps a lower-level scalar into `Ext` nodes up to `level`.
    fn lift_to(&self, level: usize, s: Scalar) -> Scalar {
        let mut cur = s;
        let from = self.scalar_level(&cur);
        for l in from..level {
            let d = self.0.tower[l].degree();
            let mut v = vec![self.zero_at(l); d];
            v[0] = cur;
            cur = Scalar::Ext(v);
        }
        cur
    }

    fn scalar_level(&self, s: &Scalar) -> usize {
        match s {
            Scalar::Q(_) | Scalar::Fp(_) => 0,
            Scalar::Ext(v) => self.scalar_level(&v[0]) + 1,
        }
    }

    /// Embeds a scalar of a lower tower stage into this field (the towers
    /// must agree up to the scalar's level, which holds for towers built by
    /// extension).
    pub fn embed_subfield(&self, s: &Scalar) -> Scalar {
        self.lift_to(self.levels(), s.clone())
    }

    /// The generator of the top tower level (panics on a base field).
    pub fn generator(&self) -> Scalar {
        let lv = self.levels();
        assert!(lv > 0, "base field has no generator");
        let d = self.0.tower[lv - 1].degree();
        let mut v = vec![self.zero_at(lv - 1); d.max(1)];
        if d == 1 {
            // degree-1 step: generator is the (negated) constant term
            v[0] = self.neg_at(lv - 1, &self.0.tower[lv - 1].minpoly[0]);
            return if v.len() == 1 {
                Scalar::Ext(v)
            } else {
                unreachable!()
            };
        }
        v[1] = self.one_at(lv - 1);
        Scalar::Ext(v)
    }

    fn one_at(&self, level: usize) -> Scalar {
        self.lift_to(level, self.base_from_i64(1))
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(n) => *n == 0,
            Scalar::Ext(v) => v.iter().all(|c| self.is_zero(c)),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.characteristic();
                Scalar::Fp((x + y) % p)
            }
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y).map(|(u, v)| self.add(u, v)).collect())
            }
            _ => panic!("scalar level mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Q(x) => Scalar::Q(-x),
            Scalar::Fp(x) => {
                let p = self.characteristic();
                Scalar::Fp((p - x) % p)
            }
            Scalar::Ext(v) => Scalar::Ext(v.iter().map(|c| self.neg(c)).collect()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul_at(self.scalar_level(a), a, b)
    }

    fn neg_at(&self, _level: usize, a: &Scalar) -> Scalar {
        self.neg(a)
    }

    fn mul_at(&self, level: usize, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.characteristic();
                Scalar::Fp(x * y % p)
            }
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                let d = self.0.tower[level - 1].degree();
                // schoolbook product, then reduce by the monic minpoly
                let mut prod = vec![self.zero_at(level - 1); 2 * d - 1];
                for (i, xi) in x.iter().enumerate() {
                    if self.is_zero(xi) {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        let t = self.mul_at(level - 1, xi, yj);
                        prod[i + j] = self.add(&prod[i + j], &t);
                    }
                }
                let mp = &self.0.tower[level - 1].minpoly;
                for i in (d..prod.len()).rev() {
                    if self.is_zero(&prod[i]) {
                        continue;
                    }
                    let c = prod[i].clone();
                    for (j, mj) in mp.iter().take(d).enumerate() {
                        let t = self.mul_at(level - 1, &c, mj);
                        prod[i - d + j] = self.sub(&prod[i - d + j], &t);
                    }
                    prod[i] = self.zero_at(level - 1);
                }
                prod.truncate(d);
                Scalar::Ext(prod)
            }
            _ => panic!("scalar level mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Q(x) => Scalar::Q(x.recip()),
            Scalar::Fp(x) => Scalar::Fp(inv_mod_u64(*x, self.characteristic())),
            Scalar::Ext(_) => {
                let level = self.scalar_level(a);
                self.inv_ext(level, a)?
            }
        })
    }

    /// Extended Euclid against the minpoly, one level down.
    fn inv_ext(&self, level: usize, a: &Scalar) -> Result<Scalar> {
        let coeffs = match a {
            Scalar::Ext(v) => v.clone(),
            _ => unreachable!(),
        };
        let lower = level - 1;
        let mp = self.0.tower[lower].minpoly.clone();
        // r0 = minpoly, r1 = a; s-coefficients track Bezout factors of a
        let mut r0 = mp;
        let mut r1 = trim(self, coeffs);
        let mut s0: Vec<Scalar> = vec![];
        let mut s1: Vec<Scalar> = vec![self.one_at(lower)];
        while !r1.is_empty() {
            let (q, r) = self.poly_divmod_at(lower, &r0, &r1)?;
            let s = self.poly_sub_at(lower, &s0, &self.poly_mul_at(lower, &q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return Err(Error::Internal(
                "tower minpoly not irreducible: gcd has positive degree".into(),
            ));
        }
        let lead_inv = self.inv(&r0[0])?;
        let d = self.0.tower[lower].degree();
        let mut out = vec![self.zero_at(lower); d];
        for (i, c) in s0.iter().enumerate() {
            out[i] = self.mul_at(lower, c, &lead_inv);
        }
        Ok(Scalar::Ext(out))
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Scalar, n: i64) -> Result<Scalar> {
        if n < 0 {
            let ai = self.inv(a)?;
            return self.pow(&ai, -n);
        }
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(result)
    }

    pub fn pow_big(&self, a: &Scalar, n: &BigInt) -> Result<Scalar> {
        assert!(!n.is_negative());
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = n.clone();
        let two = BigInt::from(2);
        while e.is_positive() {
            if (&e % &two).is_one() {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e /= &two;
        }
        Ok(result)
    }

    /// Checked arithmetic on field-tagged elements.
    pub fn arith(a: &CoeffElem, b: &CoeffElem, op: FieldOp) -> Result<CoeffElem> {
        if a.field != b.field {
            return Err(Error::FieldMismatch);
        }
        let f = &a.field;
        let v = match op {
            FieldOp::Add => f.add(&a.value, &b.value),
            FieldOp::Sub => f.sub(&a.value, &b.value),
            FieldOp::Mul => f.mul(&a.value, &b.value),
            FieldOp::Div => f.div(&a.value, &b.value)?,
        };
        Ok(CoeffElem {
            field: f.clone(),
            value: v,
        })
    }

    /// Coordinates of `s` over the ground field, length `degree_over_base`.
    pub fn coords_over_base(&self, s: &Scalar) -> Vec<Scalar> {
        match s {
            Scalar::Q(_) | Scalar::Fp(_) => vec![s.clone()],
            Scalar::Ext(v) => {
                let sub = self.subfield();
                v.iter().flat_map(|c| sub.coords_over_base(c)).collect()
            }
        }
    }

    pub fn from_coords_over_base(&self, coords: &[Scalar]) -> Scalar {
        assert_eq!(coords.len(), self.0.degree);
        if self.levels() == 0 {
            return coords[0].clone();
        }
        let sub = self.subfield();
        let step = sub.degree_over_base();
        let chunks: Vec<Scalar> = coords
            .chunks(step)
            .map(|c| sub.from_coords_over_base(c))
            .collect();
        Scalar::Ext(chunks)
    }

    /// Number of elements for finite fields, as a big integer.
    pub fn order(&self) -> Option<BigInt> {
        match self.0.base {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(BigInt::from(p).pow(self.0.degree as u32)),
        }
    }

    pub fn random(&self, rng: &mut impl rand::Rng) -> Scalar {
        self.random_at(self.levels(), rng)
    }

    fn random_at(&self, level: usize, rng: &mut impl rand::Rng) -> Scalar {
        if level == 0 {
            match self.0.base {
                BaseField::Rationals => {
                    let n = rng.gen_range(-9i64..=9);
                    let d = rng.gen_range(1i64..=4);
                    Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
                }
                BaseField::Prime(p) => Scalar::Fp(rng.gen_range(0..p)),
            }
        } else {
            let d = self.0.tower[level - 1].degree();
            Scalar::Ext((0..d).map(|_| self.random_at(level - 1, rng)).collect())
        }
    }

    /// Canonical printing; extension elements as nested `[c0,c1,...]`.
    pub fn scalar_to_string(&self, s: &Scalar) -> String {
        match s {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    format!("{}", q.numer())
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp(n) => format!("{}", n),
            Scalar::Ext(v) => {
                let sub = self.subfield();
                let parts: Vec<String> = v.iter().map(|c| sub.scalar_to_string(c)).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }

    pub fn poly_to_string(&self, coeffs: &[Scalar], var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if self.is_zero(c) {
                continue;
            }
            let cs = self.scalar_to_string(c);
            let part = match i {
                0 => cs,
                1 if cs == "1" => var.to_string(),
                1 => format!("{}*{}", cs, var),
                _ if cs == "1" => format!("{}^{}", var, i),
                _ => format!("{}*{}^{}", cs, var, i),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Canonical spec string: `Q`, `Fp:7`, `Fp:2/x^2+x+1`, steps joined by `/`.
    pub fn spec_string(&self) -> String {
        let mut s = match self.0.base {
            BaseField::Rationals => "Q".to_string(),
            BaseField::Prime(p) => format!("Fp:{}", p),
        };
        let mut below = Vec::new();
        let mut cur = self.clone();
        for _ in 0..self.levels() {
            below.push(cur.clone());
            cur = cur.subfield();
        }
        below.reverse();
        for f in below {
            s.push('/');
            s.push_str(&compact_poly(&f.subfield(), &f.0.tower.last().unwrap().minpoly));
        }
        s
    }

    // ---- univariate polynomial helpers at a given tower level ----
    // Coefficient vectors are constant-first and trimmed.

    fn poly_mul_at(&self, level: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![self.zero_at(level); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.mul_at(level, x, y);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        trim(self, out)
    }

    fn poly_sub_at(&self, level: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = a.len().max(b.len());
        let mut out = vec![self.zero_at(level); n];
        for (i, x) in a.iter().enumerate() {
            out[i] = x.clone();
        }
        for (i, y) in b.iter().enumerate() {
            out[i] = self.sub(&out[i], y);
        }
        trim(self, out)
    }

    fn poly_divmod_at(&self, level: usize, a: &[Scalar], b: &[Scalar]) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
        if b.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let lead_inv = self.inv(b.last().unwrap())?;
        let mut rem: Vec<Scalar> = a.to_vec();
        let db = b.len() - 1;
        if rem.len() <= db {
            return Ok((vec![], trim(self, rem)));
        }
        let mut quot = vec![self.zero_at(level); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if self.is_zero(&rem[i]) {
                continue;
            }
            let q = self.mul_at(level, &rem[i], &lead_inv);
            quot[i - db] = q.clone();
            for (j, bc) in b.iter().enumerate() {
                let t = self.mul_at(level, &q, bc);
                rem[i - db + j] = self.sub(&rem[i - db + j], &t);
            }
        }
        Ok((trim(self, quot), trim(self, rem)))
    }
}

fn trim(field: &CoeffField, mut v: Vec<Scalar>) -> Vec<Scalar> {
    while let Some(last) = v.last() {
        if field.is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
    v
}

fn compact_poly(field: &CoeffField, coeffs: &[Scalar]) -> String {
    // highest power first, `x^2+x+1` style, for field spec strings
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if field.is_zero(c) {
            continue;
        }
        let mut cs = field.scalar_to_string(c);
        if !out.is_empty() {
            if let Some(stripped) = cs.strip_prefix('-') {
                out.push('-');
                cs = stripped.to_string();
            } else {
                out.push('+');
            }
        }
        let part = match i {
            0 => cs,
            1 if cs == "1" => "x".to_string(),
            1 => format!("{}*x", cs),
            _ if cs == "1" => format!("x^{}", i),
            _ => format!("{}*x^{}", cs, i),
        };
        out.push_str(&part);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn inv_mod_u64(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    (t.rem_euclid(p as i128)) as u64
}

impl fmt::Display for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.scalar_to_string(&self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_construction() {
        let f7 = make_prime_field(7).unwrap();
        assert_eq!(f7.degree_over_base(), 1);
        assert_eq!(f7.characteristic(), 7);
        let q = rationals();
        assert_eq!(q.degree_over_base(), 1);
        assert_eq!(q.characteristic(), 0);
        assert_eq!(make_prime_field(6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn extension_degrees_multiply() {
        let f2 = make_prime_field(2).unwrap();
        // x^2 + x + 1 over F_2
        let f4 = f2
            .make_extension(vec![f2.one(), f2.one(), f2.one()])
            .unwrap();
        assert_eq!(f4.degree_over_base(), 2);

        let q = rationals();
        // x^2 - 2
        let q2 = q
            .make_extension(vec![q.from_i64(-2), q.zero(), q.one()])
            .unwrap();
        assert_eq!(q2.degree_over_base(), 2);

        // second step: y^2 - alpha over F_4 (irreducible since alpha has no
        // square root in F_4's squares... actually every element of F_4 is a
        // square; use y^2 + y + alpha which is irreducible over F_4)
        let alpha = f4.generator();
        let f16 = f4
            .make_extension(vec![alpha.clone(), f4.one(), f4.one()])
            .unwrap();
        assert_eq!(f16.degree_over_base(), 4);
    }

    #[test]
    fn reducible_rejected_with_witness() {
        let f3 = make_prime_field(3).unwrap();
        // x^2 - 1 = (x-1)(x+1)
        let err = f3
            .make_extension(vec![f3.from_i64(-1), f3.zero(), f3.one()])
            .unwrap_err();
        match err {
            Error::Reducible { witness, .. } => {
                assert!(witness.contains('x'), "witness should be a linear factor: {}", witness);
            }
            other => panic!("expected Reducible, got {:?}", other),
        }
    }

    #[test]
    fn f4_generator_relation() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2
            .make_extension(vec![f2.one(), f2.one(), f2.one()])
            .unwrap();
        let a = f4.generator();
        // alpha^2 = alpha + 1
        let sq = f4.mul(&a, &a);
        let expected = f4.add(&a, &f4.one());
        assert_eq!(sq, expected);
    }

    #[test]
    fn rational_arithmetic() {
        let q = rationals();
        let third = q.from_rational(1, 3).unwrap();
        let sixth = q.from_rational(1, 6).unwrap();
        let half = q.from_rational(1, 2).unwrap();
        assert_eq!(q.add(&third, &sixth), half);
        let a = q.from_rational(-7, 5).unwrap();
        assert!(q.is_zero(&q.sub(&a, &a)));
    }

    #[test]
    fn checked_ops_catch_mismatch_and_zero() {
        let f5 = make_prime_field(5).unwrap();
        let f7 = make_prime_field(7).unwrap();
        let a = CoeffElem {
            field: f5.clone(),
            value: f5.from_i64(2),
        };
        let b = CoeffElem {
            field: f7.clone(),
            value: f7.from_i64(2),
        };
        assert_eq!(CoeffField::arith(&a, &b, FieldOp::Add), Err(Error::FieldMismatch));
        let z = CoeffElem {
            field: f5.clone(),
            value: f5.zero(),
        };
        let a5 = CoeffElem {
            field: f5.clone(),
            value: f5.from_i64(2),
        };
        assert_eq!(
            CoeffField::arith(&a5, &z, FieldOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    fn axiom_check(field: &CoeffField, rng: &mut ChaCha8Rng) {
        for _ in 0..40 {
            let a = field.random(rng);
            let b = field.random(rng);
            let c = field.random(rng);
            // associativity and distributivity
            let ab_c = field.mul(&field.mul(&a, &b), &c);
            let a_bc = field.mul(&a, &field.mul(&b, &c));
            assert_eq!(ab_c, a_bc);
            let lhs = field.mul(&a, &field.add(&b, &c));
            let rhs = field.add(&field.mul(&a, &b), &field.mul(&a, &c));
            assert_eq!(lhs, rhs);
            // inverses
            if !field.is_zero(&a) {
                let ai = field.inv(&a).unwrap();
                assert_eq!(field.mul(&a, &ai), field.one());
            }
            assert!(field.is_zero(&field.sub(&a, &a)));
        }
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let q = rationals();
        axiom_check(&q, &mut rng);
        let f7 = make_prime_field(7).unwrap();
        axiom_check(&f7, &mut rng);
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2
            .make_extension(vec![f2.one(), f2.one(), f2.one()])
            .unwrap();
        axiom_check(&f4, &mut rng);
        let q0 = rationals();
        let q2 = q0
            .make_extension(vec![q0.from_i64(-2), q0.zero(), q0.one()])
            .unwrap();
        axiom_check(&q2, &mut rng);
        // nested tower over F_5: F_25 then F_625
        let f5 = make_prime_field(5).unwrap();
        let f25 = f5
            .make_extension(vec![f5.from_i64(2), f5.zero(), f5.one()])
            .unwrap();
        axiom_check(&f25, &mut rng);
    }

    #[test]
    fn coords_round_trip() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2
            .make_extension(vec![f2.one(), f2.one(), f2.one()])
            .unwrap();
        let alpha = f4.generator();
        let f16 = f4
            .make_extension(vec![alpha, f4.one(), f4.one()])
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let s = f16.random(&mut rng);
            let coords = f16.coords_over_base(&s);
            assert_eq!(coords.len(), 4);
            assert_eq!(f16.from_coords_over_base(&coords), s);
        }
    }

    #[test]
    fn spec_string_round() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2
            .make_extension(vec![f2.one(), f2.one(), f2.one()])
            .unwrap();
        assert_eq!(f4.spec_string(), "Fp:2/x^2+x+1");
        assert_eq!(rationals().spec_string(), "Q");
        assert_eq!(make_prime_field(7).unwrap().spec_string(), "Fp:7");
    }
}
