//! Dense univariate and sparse bivariate polynomials over a [`CoeffField`].
//!
//! Everything here is exact plumbing for the rest of the crate: gcds,
//! squarefree tests, resultants (fraction-free Bareiss on the Sylvester
//! matrix), Taylor shifts and chart dehomogenization.

use std::collections::BTreeMap;

use crate::coeff::{CoeffField, Scalar};
use crate::error::{Error, Result};

/// Univariate polynomial, constant-first coefficients, always trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly1 {
    pub field: CoeffField,
    pub coeffs: Vec<Scalar>,
}

impl Poly1 {
    pub fn new(field: CoeffField, coeffs: Vec<Scalar>) -> Self {
        let mut p = Poly1 { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: CoeffField) -> Self {
        Poly1 {
            field,
            coeffs: vec![],
        }
    }

    pub fn constant(field: CoeffField, c: Scalar) -> Self {
        Poly1::new(field, vec![c])
    }

    pub fn monomial(field: CoeffField, c: Scalar, deg: usize) -> Self {
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Poly1::new(field, coeffs)
    }

    /// `x`
    pub fn var(field: CoeffField) -> Self {
        let one = field.one();
        Poly1::monomial(field, one, 1)
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> &Scalar {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![f.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = f.add(&out[i], c);
        }
        Poly1::new(f.clone(), out)
    }

    pub fn sub(&self, other: &Poly1) -> Poly1 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly1 {
        Poly1 {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly1::zero(f.clone());
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = f.mul(a, b);
                out[i + j] = f.add(&out[i + j], &t);
            }
        }
        Poly1::new(f.clone(), out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly1 {
        Poly1::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn divmod(&self, other: &Poly1) -> Result<(Poly1, Poly1)> {
        let f = &self.field;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lead_inv = f.inv(other.leading())?;
        let db = other.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly1::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if f.is_zero(&rem[i]) {
                continue;
            }
            let q = f.mul(&rem[i], &lead_inv);
            quot[i - db] = q.clone();
            for (j, bc) in other.coeffs.iter().enumerate() {
                let t = f.mul(&q, bc);
                rem[i - db + j] = f.sub(&rem[i - db + j], &t);
            }
        }
        Ok((Poly1::new(f.clone(), quot), Poly1::new(f.clone(), rem)))
    }

    /// Exact division; errors internally if the remainder is nonzero.
    pub fn div_exact(&self, other: &Poly1) -> Result<Poly1> {
        let (q, r) = self.divmod(other)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Result<Poly1> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.field.inv(self.leading())?;
        Ok(self.scale(&inv))
    }

    pub fn gcd(&self, other: &Poly1) -> Result<Poly1> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly1 {
        let f = &self.field;
        if self.coeffs.len() <= 1 {
            return Poly1::zero(f.clone());
        }
        let out: Vec<Scalar> = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| f.mul(c, &f.from_i64((i + 1) as i64)))
            .collect();
        Poly1::new(f.clone(), out)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Taylor shift: `p(x + c)`.
    pub fn shift(&self, c: &Scalar) -> Poly1 {
        let f = &self.field;
        let mut acc = Poly1::zero(f.clone());
        let xc = Poly1::new(f.clone(), vec![c.clone(), f.one()]);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&xc).add(&Poly1::constant(f.clone(), coeff.clone()));
        }
        acc
    }

    pub fn pow(&self, n: usize) -> Poly1 {
        let mut out = Poly1::constant(self.field.clone(), self.field.one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// `self^e mod m` by square-and-multiply; exponent as a big integer.
    pub fn pow_mod(&self, e: &num_bigint::BigInt, m: &Poly1) -> Result<Poly1> {
        use num_traits::{One, Signed, Zero};
        assert!(!e.is_negative());
        let mut result = Poly1::constant(self.field.clone(), self.field.one());
        let (_, mut base) = self.divmod(m)?;
        let mut exp = e.clone();
        let two = num_bigint::BigInt::from(2);
        while exp.is_positive() && !exp.is_zero() {
            if (&exp % &two).is_one() {
                result = result.mul(&base).divmod(m)?.1;
            }
            base = base.mul(&base).divmod(m)?.1;
            exp /= &two;
        }
        Ok(result)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        self.field.poly_to_string(&self.coeffs, var)
    }

    /// Squarefree part (handles inseparable polynomials over `F_q`).
    pub fn squarefree_part(&self) -> Result<Poly1> {
        if self.is_constant() {
            return self.monic();
        }
        let d = self.derivative();
        if d.is_zero() {
            // p-th power: take the p-th root coefficientwise and recurse
            let root = self.pth_root()?;
            return root.squarefree_part();
        }
        let g = self.gcd(&d)?;
        if g.is_constant() {
            return self.monic();
        }
        let sf = self.div_exact(&g)?;
        // factors killed in sf because their multiplicity is divisible by p
        // still live inside g; merge their squarefree parts
        let gsf = g.squarefree_part()?;
        let extra = gsf.div_exact(&gsf.gcd(&sf)?)?;
        sf.mul(&extra).monic()
    }

    /// For `f` with zero derivative over `F_q`: `g` with `g(x)^p = f(x)`.
    fn pth_root(&self) -> Result<Poly1> {
        let f = &self.field;
        let p = f.characteristic();
        if p == 0 {
            return Err(Error::Internal("zero derivative in characteristic 0".into()));
        }
        let q = f.order().ok_or_else(|| Error::Internal("infinite field".into()))?;
        let e = q / num_bigint::BigInt::from(p);
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % (p as usize) == 0 {
                out.push(f.pow_big(c, &e)?);
            } else if !f.is_zero(c) {
                return Err(Error::Internal("pth_root: bad support".into()));
            }
        }
        Ok(Poly1::new(f.clone(), out))
    }
}

/// Sparse bivariate polynomial; keys are `(x_exp, y_exp)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly2 {
    pub field: CoeffField,
    pub terms: BTreeMap<(u32, u32), Scalar>,
}

impl Poly2 {
    pub fn zero(field: CoeffField) -> Self {
        Poly2 {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(field: CoeffField, terms: Vec<((u32, u32), Scalar)>) -> Self {
        let mut p = Poly2::zero(field);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn constant(field: CoeffField, c: Scalar) -> Self {
        Poly2::from_terms(field, vec![((0, 0), c)])
    }

    pub fn add_term(&mut self, key: (u32, u32), c: Scalar) {
        if self.field.is_zero(&c) {
            return;
        }
        let f = self.field.clone();
        let entry = self.terms.entry(key).or_insert_with(|| f.zero());
        *entry = f.add(entry, &c);
        if f.is_zero(entry) {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, self.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero(self.field.clone());
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly2 {
        let mut out = Poly2::zero(self.field.clone());
        for (k, a) in &self.terms {
            out.add_term(*k, self.field.mul(a, c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        let mut out = Poly2::constant(self.field.clone(), self.field.one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn dx(&self) -> Poly2 {
        let f = &self.field;
        let mut out = Poly2::zero(f.clone());
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), f.mul(c, &f.from_i64(i as i64)));
            }
        }
        out
    }

    pub fn dy(&self) -> Poly2 {
        let f = &self.field;
        let mut out = Poly2::zero(f.clone());
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term((i, j - 1), f.mul(c, &f.from_i64(j as i64)));
            }
        }
        out
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for (&(i, j), c) in &self.terms {
            let t = f.mul(
                c,
                &f.mul(&f.pow(x, i as i64).unwrap(), &f.pow(y, j as i64).unwrap()),
            );
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Coefficients of powers of `y`, each a `Poly1` in `x`.
    pub fn y_coeffs(&self) -> Vec<Poly1> {
        let dy = self.deg_y() as usize;
        let mut out = vec![Poly1::zero(self.field.clone()); dy + 1];
        for (&(i, j), c) in &self.terms {
            let poly = &mut out[j as usize];
            let mut coeffs = std::mem::take(&mut poly.coeffs);
            if coeffs.len() <= i as usize {
                coeffs.resize(i as usize + 1, self.field.zero());
            }
            coeffs[i as usize] = c.clone();
            *poly = Poly1::new(self.field.clone(), coeffs);
        }
        out
    }

    pub fn from_y_coeffs(field: CoeffField, coeffs: &[Poly1]) -> Poly2 {
        let mut out = Poly2::zero(field);
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.coeffs.iter().enumerate() {
                out.add_term((i as u32, j as u32), c.clone());
            }
        }
        out
    }

    pub fn x_coeffs(&self) -> Vec<Poly1> {
        self.swap_vars().y_coeffs()
    }

    pub fn swap_vars(&self) -> Poly2 {
        Poly2 {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Substitute univariate polynomials for both variables.
    pub fn compose(&self, x_sub: &Poly1, y_sub: &Poly1) -> Poly1 {
        let f = &self.field;
        let mut acc = Poly1::zero(f.clone());
        for (&(i, j), c) in &self.terms {
            let t = x_sub
                .pow(i as usize)
                .mul(&y_sub.pow(j as usize))
                .scale(c);
            acc = acc.add(&t);
        }
        acc
    }

    /// Taylor shift in both variables: `q(x + a, y + b)`.
    pub fn shift_xy(&self, a: &Scalar, b: &Scalar) -> Poly2 {
        let f = self.field.clone();
        // shift x inside each y-coefficient, then swap and shift the other
        let shifted_x: Vec<Poly1> = self.y_coeffs().iter().map(|p| p.shift(a)).collect();
        let p1 = Poly2::from_y_coeffs(f.clone(), &shifted_x);
        let swapped = p1.swap_vars();
        let shifted_y: Vec<Poly1> = swapped.y_coeffs().iter().map(|p| p.shift(b)).collect();
        Poly2::from_y_coeffs(f, &shifted_y).swap_vars()
    }

    /// Content with respect to `y`: gcd in `k[x]` of the `y`-coefficients.
    pub fn content_y(&self) -> Result<Poly1> {
        let mut g = Poly1::zero(self.field.clone());
        for c in self.y_coeffs() {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.monic()? } else { g.gcd(&c)? };
            if g.is_constant() {
                break;
            }
        }
        Ok(g)
    }

    pub fn div_exact_poly1_in_x(&self, d: &Poly1) -> Result<Poly2> {
        let coeffs = self.y_coeffs();
        let mut out = Vec::new();
        for c in coeffs {
            out.push(if c.is_zero() {
                c
            } else {
                c.div_exact(d)?
            });
        }
        Ok(Poly2::from_y_coeffs(self.field.clone(), &out))
    }

    /// Canonical normalization: leading term (grlex, y before x) scaled to 1.
    pub fn normalize(&self) -> Poly2 {
        if self.is_zero() {
            return self.clone();
        }
        let key = self
            .terms
            .keys()
            .max_by_key(|&&(i, j)| (i + j, j))
            .copied()
            .unwrap();
        let inv = self.field.inv(&self.terms[&key]).unwrap();
        self.scale(&inv)
    }

    /// Pseudo-remainder of `self` by `other` as polynomials in `y` over `k[x]`.
    fn prem_y(&self, other: &Poly2) -> Poly2 {
        let f = self.field.clone();
        let db = other.deg_y();
        let lc_b = other.y_coeffs()[db as usize].clone();
        let mut r = self.clone();
        let mut guard = 0;
        while !r.is_zero() && r.deg_y() >= db && (r.deg_y() > 0 || db > 0) {
            let dr = r.deg_y();
            if dr < db {
                break;
            }
            let lc_r = r.y_coeffs()[dr as usize].clone();
            // r = lc_b * r - lc_r * y^(dr-db) * other
            let lcb2 = Poly2::from_y_coeffs(f.clone(), &[lc_b.clone()]);
            let lcr2 = Poly2::from_y_coeffs(f.clone(), &[lc_r]);
            let mut shift = Poly2::zero(f.clone());
            shift.add_term((0, dr - db), f.one());
            r = lcb2.mul(&r).sub(&lcr2.mul(&shift).mul(other));
            guard += 1;
            if guard > 4096 {
                panic!("prem_y failed to terminate");
            }
            if db == 0 {
                break;
            }
        }
        r
    }

    /// Primitive part with respect to `y` (content in `k[x]` divided out).
    pub fn primitive_y(&self) -> Result<Poly2> {
        let c = self.content_y()?;
        if c.is_constant() {
            return Ok(self.clone());
        }
        self.div_exact_poly1_in_x(&c)
    }

    /// Bivariate gcd by a primitive pseudo-remainder sequence in `y`.
    pub fn gcd(&self, other: &Poly2) -> Result<Poly2> {
        if self.is_zero() {
            return Ok(other.normalize());
        }
        if other.is_zero() {
            return Ok(self.normalize());
        }
        // pure k[x] polynomials reduce to a univariate gcd
        if self.deg_y() == 0 && other.deg_y() == 0 {
            let g = self.y_coeffs()[0].gcd(&other.y_coeffs()[0])?;
            return Ok(Poly2::from_y_coeffs(self.field.clone(), &[g]).normalize());
        }
        let cont_gcd = {
            let ca = self.content_y()?;
            let cb = other.content_y()?;
            if ca.is_zero() {
                cb
            } else if cb.is_zero() {
                ca
            } else {
                ca.gcd(&cb)?
            }
        };
        let mut a = self.primitive_y()?;
        let mut b = other.primitive_y()?;
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() && b.deg_y() > 0 {
            let r = a.prem_y(&b).primitive_y()?;
            a = b;
            b = r;
        }
        let prim = if b.is_zero() {
            a
        } else {
            // nonzero remainder of y-degree 0: primitive parts are coprime in y
            Poly2::constant(self.field.clone(), self.field.one())
        };
        let cont2 = Poly2::from_y_coeffs(self.field.clone(), &[cont_gcd]);
        Ok(prim.mul(&cont2).normalize())
    }

    /// Squarefree over a perfect field: `gcd(q, q_x, q_y)` is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(false);
        }
        let g1 = self.gcd(&self.dx())?;
        let g = g1.gcd(&self.dy())?;
        Ok(g.is_constant())
    }

    /// Divides by `x^k`; requires every term to have `x`-exponent at least `k`.
    pub fn div_x_power(&self, k: u32) -> Result<Poly2> {
        let mut out = Poly2::zero(self.field.clone());
        for (&(i, j), c) in &self.terms {
            if i < k {
                return Err(Error::Internal("div_x_power: not divisible".into()));
            }
            out.add_term((i - k, j), c.clone());
        }
        Ok(out)
    }

    pub fn div_y_power(&self, k: u32) -> Result<Poly2> {
        Ok(self.swap_vars().div_x_power(k)?.swap_vars())
    }

    /// Re-tags coefficients into an extension field of the current one.
    pub fn lift_to_field(&self, target: &CoeffField) -> Poly2 {
        Poly2 {
            field: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, target.embed_subfield(c)))
                .collect(),
        }
    }

    /// Grlex-canonical printing with `*` and `^`.
    pub fn to_string_xy(&self, xv: &str, yv: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (i + j, j, i));
        let mut parts = Vec::new();
        for k in keys {
            let (i, j) = k;
            let cs = f.scalar_to_string(&self.terms[&k]);
            let mut vars = String::new();
            if i > 0 {
                vars.push_str(xv);
                if i > 1 {
                    vars.push_str(&format!("^{}", i));
                }
            }
            if j > 0 {
                if !vars.is_empty() {
                    vars.push('*');
                }
                vars.push_str(yv);
                if j > 1 {
                    vars.push_str(&format!("^{}", j));
                }
            }
            let part = if vars.is_empty() {
                cs
            } else if cs == "1" {
                vars
            } else {
                format!("{}*{}", cs, vars)
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// Resultant of two polynomials in an outer variable whose coefficients are
/// `Poly1`s, via fraction-free Bareiss elimination of the Sylvester matrix.
/// `a` and `b` are coefficient lists, constant-first, not both empty.
pub fn resultant_poly1_coeffs(field: &CoeffField, a: &[Poly1], b: &[Poly1]) -> Result<Poly1> {
    let da = a.len().checked_sub(1).ok_or(Error::DivisionByZero)?;
    let db = b.len().checked_sub(1).ok_or(Error::DivisionByZero)?;
    if da == 0 && db == 0 {
        return Ok(Poly1::constant(field.clone(), field.one()));
    }
    let n = da + db;
    let zero = Poly1::zero(field.clone());
    let mut m = vec![vec![zero.clone(); n]; n];
    for row in 0..db {
        for (k, c) in a.iter().enumerate() {
            m[row][row + (da - k)] = c.clone();
        }
    }
    for row in 0..da {
        for (k, c) in b.iter().enumerate() {
            m[db + row][row + (db - k)] = c.clone();
        }
    }
    // Bareiss
    let mut sign = 1i64;
    let mut prev = Poly1::constant(field.clone(), field.one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let mut found = None;
            for r in k + 1..n {
                if !m[r][k].is_zero() {
                    found = Some(r);
                    break;
                }
            }
            match found {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Poly1::zero(field.clone())),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = m[k][k].mul(&m[i][j]);
                let t2 = m[i][k].mul(&m[k][j]);
                let num = t1.sub(&t2);
                m[i][j] = if prev.is_constant() && !prev.is_zero() {
                    let inv = field.inv(prev.leading())?;
                    num.scale(&inv)
                } else {
                    num.div_exact(&prev)?
                };
            }
            m[i][k] = Poly1::zero(field.clone());
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = det.neg();
    }
    Ok(det)
}

/// Resultant of `p` and `q` with respect to `y`; result is a `Poly1` in `x`.
pub fn resultant_y(p: &Poly2, q: &Poly2) -> Result<Poly1> {
    resultant_poly1_coeffs(&p.field, &p.y_coeffs(), &q.y_coeffs())
}

/// Resultant with respect to `x`; result in `y`.
pub fn resultant_x(p: &Poly2, q: &Poly2) -> Result<Poly1> {
    resultant_poly1_coeffs(&p.field, &p.x_coeffs(), &q.x_coeffs())
}
