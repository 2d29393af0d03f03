//! Truncated exact Laurent series in one variable, iterated series in two
//! variables (elements of `L = k'((t))((u))`), rank-2 valuations, unit
//! decomposition, the symbol `nu_L`, and the tame-symbol composition.
//!
//! Storage convention for a series with window `(low, coeffs, prec)`:
//! exponents below `low` are known zero; `[low, low+coeffs.len())` are
//! stored; `[low+coeffs.len(), prec)` are known zero (sparse tail, used by
//! exact polynomial inputs); exponents at or beyond `prec` are unknown.
//! Exactly-zero values use the `EXACT` precision sentinel, so ordinary
//! window propagation treats them as zero to any depth.

use crate::coeff::{CoeffField, Scalar};
use crate::error::{Error, Result};

/// Precision sentinel for "known to unbounded depth"; large enough that
/// window arithmetic cannot wrap.
pub const EXACT: i64 = 1 << 40;

/// Relative precision used when inverting an exact (polynomial) series;
/// the result is marked with the matching finite window, so downstream
/// precision accounting stays honest.
const EXACT_INVERSE_REL: i64 = 64;

fn cap(p: i64) -> i64 {
    p.min(EXACT)
}

/// Truncated Laurent series over a coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    pub field: CoeffField,
    pub low: i64,
    pub coeffs: Vec<Scalar>,
    pub prec: i64,
}

impl LaurentSeries {
    pub fn new(field: CoeffField, low: i64, coeffs: Vec<Scalar>, prec: i64) -> Self {
        let mut s = LaurentSeries {
            field,
            low,
            coeffs,
            prec: cap(prec),
        };
        s.normalize();
        s
    }

    /// `0 + O(t^prec)`: nothing known except vanishing below `prec`.
    pub fn zero_to(field: CoeffField, prec: i64) -> Self {
        LaurentSeries {
            field,
            low: cap(prec),
            coeffs: vec![],
            prec: cap(prec),
        }
    }

    /// The exact zero series.
    pub fn exact_zero(field: CoeffField) -> Self {
        LaurentSeries {
            field,
            low: EXACT,
            coeffs: vec![],
            prec: EXACT,
        }
    }

    /// Exact polynomial input from `(exponent, coefficient)` terms; known
    /// at least to `prec` (and in any case through its own support).
    pub fn from_terms(field: CoeffField, terms: &[(i64, Scalar)], prec: i64) -> Self {
        let live: Vec<&(i64, Scalar)> =
            terms.iter().filter(|(_, c)| !field.is_zero(c)).collect();
        if live.is_empty() {
            return LaurentSeries::exact_zero(field);
        }
        let low = live.iter().map(|(e, _)| *e).min().unwrap();
        let high = live.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![field.zero(); (high - low + 1) as usize];
        for (e, c) in live {
            let idx = (*e - low) as usize;
            coeffs[idx] = field.add(&coeffs[idx], c);
        }
        if coeffs.iter().all(|c| field.is_zero(c)) {
            // the polynomial cancelled to exactly zero
            return LaurentSeries::exact_zero(field);
        }
        LaurentSeries::new(field, low, coeffs, cap(prec.max(high + 1)))
    }

    pub fn one(field: CoeffField) -> Self {
        let c = field.one();
        LaurentSeries::from_terms(field, &[(0, c)], EXACT)
    }

    pub fn constant(field: CoeffField, c: Scalar) -> Self {
        LaurentSeries::from_terms(field, &[(0, c)], EXACT)
    }

    pub fn monomial(field: CoeffField, c: Scalar, exp: i64) -> Self {
        LaurentSeries::from_terms(field, &[(exp, c)], EXACT)
    }

    fn normalize(&mut self) {
        self.prec = cap(self.prec);
        if self.low > self.prec {
            self.low = self.prec;
        }
        let window = (self.prec - self.low).max(0) as usize;
        if self.coeffs.len() > window {
            self.coeffs.truncate(window);
        }
        while let Some(c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        let mut skip = 0;
        for c in &self.coeffs {
            if self.field.is_zero(c) {
                skip += 1;
            } else {
                break;
            }
        }
        if skip > 0 {
            self.coeffs.drain(..skip);
            self.low += skip as i64;
        }
        if self.coeffs.is_empty() {
            self.low = self.prec;
        }
    }

    fn stored_end(&self) -> i64 {
        self.low + self.coeffs.len() as i64
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec >= EXACT
    }

    /// Exponent of the least nonzero coefficient.
    pub fn valuation(&self) -> Result<i64> {
        match self.coeffs.first() {
            Some(_) => Ok(self.low),
            None => Err(Error::IndeterminateAtPrecision),
        }
    }

    /// Coefficient at `e`; only meaningful for `e < prec`.
    pub fn coeff_at(&self, e: i64) -> Scalar {
        if e < self.low || e >= self.stored_end() {
            return self.field.zero();
        }
        self.coeffs[(e - self.low) as usize].clone()
    }

    pub fn truncate_to(&self, prec: i64) -> LaurentSeries {
        LaurentSeries::new(
            self.field.clone(),
            self.low,
            self.coeffs.clone(),
            self.prec.min(cap(prec)),
        )
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let f = self.field.clone();
        let prec = self.prec.min(other.prec);
        let lo = self.low.min(other.low).min(prec);
        let se_a = if self.coeffs.is_empty() { lo } else { self.stored_end() };
        let se_b = if other.coeffs.is_empty() { lo } else { other.stored_end() };
        let hi = se_a.max(se_b).min(prec).max(lo);
        let mut coeffs = vec![f.zero(); (hi - lo) as usize];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let e = lo + i as i64;
            *c = f.add(&self.coeff_at(e), &other.coeff_at(e));
        }
        LaurentSeries::new(f, lo, coeffs, prec)
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            field: self.field.clone(),
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let f = self.field.clone();
        if self.is_exact_zero() || other.is_exact_zero() {
            return LaurentSeries::exact_zero(f);
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            // zero to precision times anything: window arithmetic only
            let prec = cap((self.low + other.prec).min(other.low + self.prec));
            return LaurentSeries::zero_to(f, prec);
        }
        let lo = self.low + other.low;
        let prec = cap((self.low + other.prec).min(other.low + self.prec));
        let support = self.coeffs.len() + other.coeffs.len() - 1;
        let len = ((prec - lo).max(0) as usize).min(support);
        let mut coeffs = vec![f.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                let t = f.mul(a, b);
                coeffs[i + j] = f.add(&coeffs[i + j], &t);
            }
        }
        LaurentSeries::new(f, lo, coeffs, prec)
    }

    pub fn scale(&self, c: &Scalar) -> LaurentSeries {
        LaurentSeries::new(
            self.field.clone(),
            self.low,
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
            self.prec,
        )
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            field: self.field.clone(),
            low: cap(self.low + k),
            coeffs: self.coeffs.clone(),
            prec: cap(self.prec.saturating_add(k)),
        }
    }

    /// Inverse by geometric-series recursion. The relative precision is the
    /// operand's; exact inputs are inverted to a fixed finite window (their
    /// inverses are genuinely independent of any requested budget).
    pub fn inverse(&self) -> Result<LaurentSeries> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field.clone();
        let v = self.valuation()?;
        let lead_inv = f.inv(&self.coeff_at(v))?;
        if self.coeffs.len() == 1 && self.prec >= EXACT {
            return Ok(LaurentSeries::monomial(f, lead_inv, -v));
        }
        let rel = if self.prec >= EXACT {
            (self.stored_end() - v).max(EXACT_INVERSE_REL)
        } else {
            (self.prec - v).max(1)
        };
        // self = lead * t^v * (1 + r)
        let r = LaurentSeries::new(
            f.clone(),
            1,
            (1..rel.min(1 << 20))
                .map(|i| f.mul(&self.coeff_at(v + i), &lead_inv))
                .collect(),
            rel,
        );
        let one = LaurentSeries::one(f.clone()).truncate_to(rel);
        let mut acc = one.clone();
        let mut pow = one;
        let neg_r = r.neg();
        loop {
            pow = pow.mul(&neg_r).truncate_to(rel);
            if pow.coeffs.is_empty() {
                break;
            }
            acc = acc.add(&pow);
        }
        Ok(acc.scale(&lead_inv).shift(-v))
    }

    pub fn div(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, n: i64) -> Result<LaurentSeries> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = LaurentSeries::one(self.field.clone());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Substitute this series for the variable of `p` (Horner).
    pub fn substitute_into(&self, p: &crate::poly::Poly1) -> LaurentSeries {
        let f = self.field.clone();
        let mut acc = LaurentSeries::exact_zero(f.clone());
        for c in p.coeffs.iter().rev() {
            acc = acc.mul(self);
            acc = acc.add(&LaurentSeries::constant(f.clone(), c.clone()));
        }
        acc
    }

    /// Replace `t` by `t^k` (`k >= 1`).
    pub fn inflate(&self, k: i64) -> LaurentSeries {
        assert!(k >= 1);
        if self.coeffs.is_empty() {
            return LaurentSeries {
                field: self.field.clone(),
                low: cap(self.low.saturating_mul(k)),
                coeffs: vec![],
                prec: cap(self.prec.saturating_mul(k)),
            };
        }
        let f = self.field.clone();
        let lo = self.low * k;
        let len = (self.coeffs.len() - 1) * k as usize + 1;
        let mut coeffs = vec![f.zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        LaurentSeries::new(f, lo, coeffs, cap(self.prec.saturating_mul(k)))
    }
}

/// A rank-2 value `(nu1, nu2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rank2Val {
    pub nu1: i64,
    pub nu2: i64,
}

/// Truncated element of `L = k'((t))((u))`; `ucoeffs[i]` is the coefficient
/// of `u^(ulow + i)`, each with its own `t`-precision. The same sparse-tail
/// convention as `LaurentSeries` applies to the `u`-window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem2D {
    pub field: CoeffField,
    pub ulow: i64,
    pub ucoeffs: Vec<LaurentSeries>,
    pub uprec: i64,
}

impl Elem2D {
    pub fn new(field: CoeffField, ulow: i64, ucoeffs: Vec<LaurentSeries>, uprec: i64) -> Self {
        let mut e = Elem2D {
            field,
            ulow,
            ucoeffs,
            uprec: cap(uprec),
        };
        e.normalize();
        e
    }

    pub fn zero_to(field: CoeffField, uprec: i64) -> Self {
        Elem2D {
            field,
            ulow: cap(uprec),
            ucoeffs: vec![],
            uprec: cap(uprec),
        }
    }

    pub fn exact_zero(field: CoeffField) -> Self {
        Elem2D {
            field,
            ulow: EXACT,
            ucoeffs: vec![],
            uprec: EXACT,
        }
    }

    /// Exact constructor from monomial terms `(t_exp, u_exp, coeff)`.
    pub fn from_terms(
        field: CoeffField,
        terms: &[(i64, i64, Scalar)],
        tprec: i64,
        uprec: i64,
    ) -> Self {
        let live: Vec<&(i64, i64, Scalar)> =
            terms.iter().filter(|(_, _, c)| !field.is_zero(c)).collect();
        if live.is_empty() {
            return Elem2D::exact_zero(field);
        }
        let ulow = live.iter().map(|(_, j, _)| *j).min().unwrap();
        let uhigh = live.iter().map(|(_, j, _)| *j).max().unwrap();
        let mut levels = Vec::new();
        for j in ulow..=uhigh {
            let tt: Vec<(i64, Scalar)> = live
                .iter()
                .filter(|(_, jj, _)| *jj == j)
                .map(|(i, _, c)| (*i, c.clone()))
                .collect();
            if tt.is_empty() {
                levels.push(LaurentSeries::exact_zero(field.clone()));
            } else {
                levels.push(LaurentSeries::from_terms(field.clone(), &tt, tprec));
            }
        }
        Elem2D::new(field, ulow, levels, cap(uprec.max(uhigh + 1)))
    }

    pub fn from_t_series(s: LaurentSeries, uprec: i64) -> Self {
        Elem2D::new(s.field.clone(), 0, vec![s], cap(uprec.max(1)))
    }

    pub fn one(field: CoeffField) -> Self {
        let c = field.one();
        Elem2D::from_terms(field, &[(0, 0, c)], EXACT, EXACT)
    }

    pub fn monomial(field: CoeffField, c: Scalar, texp: i64, uexp: i64) -> Self {
        Elem2D::from_terms(field, &[(texp, uexp, c)], EXACT, EXACT)
    }

    fn normalize(&mut self) {
        self.uprec = cap(self.uprec);
        if self.ulow > self.uprec {
            self.ulow = self.uprec;
        }
        let window = (self.uprec - self.ulow).max(0) as usize;
        if self.ucoeffs.len() > window {
            self.ucoeffs.truncate(window);
        }
        while let Some(c) = self.ucoeffs.last() {
            if c.is_exact_zero() {
                self.ucoeffs.pop();
            } else {
                break;
            }
        }
        let mut skip = 0;
        for c in &self.ucoeffs {
            if c.is_exact_zero() {
                skip += 1;
            } else {
                break;
            }
        }
        if skip > 0 {
            self.ucoeffs.drain(..skip);
            self.ulow += skip as i64;
        }
        if self.ucoeffs.is_empty() {
            self.ulow = self.uprec;
        }
    }

    fn stored_end(&self) -> i64 {
        self.ulow + self.ucoeffs.len() as i64
    }

    /// Level coefficient; only meaningful for `j < uprec`.
    pub fn u_coeff(&self, j: i64) -> LaurentSeries {
        if j < self.ulow || j >= self.stored_end() {
            return LaurentSeries::exact_zero(self.field.clone());
        }
        self.ucoeffs[(j - self.ulow) as usize].clone()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.ucoeffs.is_empty() && self.uprec >= EXACT
    }

    pub fn add(&self, other: &Elem2D) -> Elem2D {
        let f = self.field.clone();
        let uprec = self.uprec.min(other.uprec);
        let lo = self.ulow.min(other.ulow).min(uprec);
        let se_a = if self.ucoeffs.is_empty() { lo } else { self.stored_end() };
        let se_b = if other.ucoeffs.is_empty() { lo } else { other.stored_end() };
        let hi = se_a.max(se_b).min(uprec).max(lo);
        let mut levels = Vec::new();
        for j in lo..hi {
            levels.push(self.u_coeff(j).add(&other.u_coeff(j)));
        }
        Elem2D::new(f, lo, levels, uprec)
    }

    pub fn neg(&self) -> Elem2D {
        Elem2D {
            field: self.field.clone(),
            ulow: self.ulow,
            ucoeffs: self.ucoeffs.iter().map(|c| c.neg()).collect(),
            uprec: self.uprec,
        }
    }

    pub fn sub(&self, other: &Elem2D) -> Elem2D {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Elem2D) -> Elem2D {
        let f = self.field.clone();
        if self.is_exact_zero() || other.is_exact_zero() {
            return Elem2D::exact_zero(f);
        }
        if self.ucoeffs.is_empty() || other.ucoeffs.is_empty() {
            let uprec = cap((self.ulow + other.uprec).min(other.ulow + self.uprec));
            return Elem2D::zero_to(f, uprec);
        }
        let lo = self.ulow + other.ulow;
        let uprec = cap((self.ulow + other.uprec).min(other.ulow + self.uprec));
        let support = self.ucoeffs.len() + other.ucoeffs.len() - 1;
        let len = ((uprec - lo).max(0) as usize).min(support);
        let mut levels = vec![LaurentSeries::exact_zero(f.clone()); len];
        for (i, a) in self.ucoeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.ucoeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_exact_zero() {
                    continue;
                }
                levels[i + j] = levels[i + j].add(&a.mul(b));
            }
        }
        Elem2D::new(f, lo, levels, uprec)
    }

    pub fn truncate_u(&self, uprec: i64) -> Elem2D {
        Elem2D::new(
            self.field.clone(),
            self.ulow,
            self.ucoeffs.clone(),
            self.uprec.min(cap(uprec)),
        )
    }

    /// The u-adic valuation; requires the leading level to be certified.
    pub fn nu2(&self) -> Result<i64> {
        for (i, c) in self.ucoeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            if c.coeffs.is_empty() {
                // zero through a finite t-precision: cannot certify
                return Err(Error::IndeterminateAtPrecision);
            }
            return Ok(self.ulow + i as i64);
        }
        Err(Error::IndeterminateAtPrecision)
    }

    pub fn rank2_valuation(&self) -> Result<Rank2Val> {
        let nu2 = self.nu2()?;
        let nu1 = self.u_coeff(nu2).valuation()?;
        Ok(Rank2Val { nu1, nu2 })
    }

    /// Multiplicative decomposition `a = lbar * u^e * principal` with
    /// `principal` in `1 + u k'((t))[[u]]`, exact within the windows.
    pub fn unit_decompose(&self) -> Result<(LaurentSeries, i64, Elem2D)> {
        let v = self.nu2()?;
        let lbar = self.u_coeff(v);
        let lbar_inv = lbar.inverse()?;
        let mut levels = Vec::new();
        for j in v..self.stored_end() {
            if j == v {
                // lbar / lbar is exactly one
                levels.push(LaurentSeries::one(self.field.clone()));
            } else {
                levels.push(self.u_coeff(j).mul(&lbar_inv));
            }
        }
        let principal = Elem2D::new(self.field.clone(), 0, levels, self.uprec - v);
        Ok((lbar, v, principal))
    }

    pub fn inverse(&self) -> Result<Elem2D> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field.clone();
        let v = self.nu2()?;
        if self.ucoeffs.len() == 1 && self.uprec >= EXACT {
            // single u-level: a t-series times a u-power, exact in u
            let inv0 = self.ucoeffs[0].inverse()?;
            return Ok(Elem2D::new(f, -v, vec![inv0], EXACT));
        }
        let (lbar, _, principal) = self.unit_decompose()?;
        let rel = if self.uprec >= EXACT {
            (self.stored_end() - v).max(EXACT_INVERSE_REL.min(16))
        } else {
            (self.uprec - v).max(1)
        };
        let one = Elem2D::one(f.clone()).truncate_u(rel);
        let r = principal.sub(&one);
        let mut acc = one.clone();
        let mut pow = one;
        let neg_r = r.neg();
        loop {
            pow = pow.mul(&neg_r).truncate_u(rel);
            if pow.ucoeffs.is_empty() {
                break;
            }
            acc = acc.add(&pow);
        }
        let lbar_inv = lbar.inverse()?;
        let levels: Vec<LaurentSeries> = acc.ucoeffs.iter().map(|c| c.mul(&lbar_inv)).collect();
        Ok(Elem2D::new(f, acc.ulow - v, levels, acc.uprec - v))
    }

    pub fn div(&self, other: &Elem2D) -> Result<Elem2D> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, n: i64) -> Result<Elem2D> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = Elem2D::one(self.field.clone());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }
}

/// Checked arithmetic dispatch on one-variable series.
pub fn series_arith(
    a: &LaurentSeries,
    b: &LaurentSeries,
    op: crate::coeff::FieldOp,
) -> Result<LaurentSeries> {
    use crate::coeff::FieldOp;
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b)?,
    })
}

/// Checked arithmetic dispatch on two-variable elements.
pub fn elem_arith(a: &Elem2D, b: &Elem2D, op: crate::coeff::FieldOp) -> Result<Elem2D> {
    use crate::coeff::FieldOp;
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b)?,
    })
}

/// The symbol `nu_L(f, g)`: determinant of the rank-2 valuations.
pub fn nu_symbol(f: &Elem2D, g: &Elem2D) -> Result<i64> {
    let vf = f.rank2_valuation()?;
    let vg = g.rank2_valuation()?;
    Ok(vf.nu1 * vg.nu2 - vg.nu1 * vf.nu2)
}

/// The composition route: tame symbol at `nu2` into the first residue field,
/// then the residue-field valuation. Sign convention
/// `(-1)^(nu2(f) nu2(g)) f^(nu2(g)) g^(-nu2(f))`, reduced mod `u`.
pub fn tame_then_residue(f: &Elem2D, g: &Elem2D) -> Result<i64> {
    let a = f.nu2()?;
    let b = g.nu2()?;
    let ff = f.pow(b)?;
    let gg = g.pow(-a)?;
    let mut h = ff.mul(&gg);
    if (a * b) % 2 != 0 {
        h = h.neg();
    }
    let v = h.nu2()?;
    if v != 0 {
        return Err(Error::Internal(format!(
            "tame symbol residue has u-valuation {} instead of 0",
            v
        )));
    }
    h.u_coeff(0).valuation()
}
