//! Newton-Puiseux expansion of a plane-curve germ at the origin.
//!
//! Each germ branch is produced once over its minimal coefficient field,
//! with a rational parametrization `x = lambda * s^e`, `y = y(s)`: the edge
//! step solves `c^e = w0 * lambda^m` with `lambda = w0^tau`, `c = w0^sigma`,
//! `sigma*e - tau*m = 1`, so no Kummer extension is introduced beyond the
//! residue extension by the edge-polynomial root `w0` itself. Once an edge
//! root is simple the remaining coefficients come from Newton iteration.
//!
//! Characteristic `p` is supported only in the tame range: an edge with
//! `p | e` aborts with `WildRamification`.

use crate::coeff::{CoeffField, Scalar};
use crate::error::{Error, Result};
use crate::poly::{Poly1, Poly2};
use crate::series::LaurentSeries;

/// One branch of a germ: `x(s) = lambda * s^ram` (or identically zero for
/// the vertical branch `x = 0`, which is parametrized by `y = s`), `y(s)` a
/// series over `field`, certified to the series' precision.
#[derive(Debug, Clone)]
pub struct RawBranch {
    pub field: CoeffField,
    pub lambda: Scalar,
    pub ram: i64,
    pub y: LaurentSeries,
    pub vertical: bool,
}

impl RawBranch {
    pub fn x_series(&self) -> LaurentSeries {
        if self.vertical {
            LaurentSeries::exact_zero(self.field.clone())
        } else {
            LaurentSeries::monomial(self.field.clone(), self.lambda.clone(), self.ram)
        }
    }

    pub fn y_series(&self) -> LaurentSeries {
        if self.vertical {
            LaurentSeries::monomial(self.field.clone(), self.field.one(), 1)
        } else {
            self.y.clone()
        }
    }
}

/// All branches of the germ of `q` at the origin, to `s`-precision
/// `precision`. `q` must be squarefree; the germ may be empty (no vanishing
/// at the origin), in which case the list is empty.
pub fn expand_germ(q: &Poly2, precision: i64) -> Result<Vec<RawBranch>> {
    let field = q.field.clone();
    let zero = field.zero();
    if q.is_zero() {
        return Err(Error::Internal("expand_germ: zero polynomial".into()));
    }
    if !field.is_zero(&q.eval(&zero, &zero)) {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut work = q.clone();
    // split off the vertical component x = 0 (squarefree: at most once)
    let min_x = work.terms.keys().map(|&(i, _)| i).min().unwrap_or(0);
    if min_x >= 1 {
        out.push(RawBranch {
            field: field.clone(),
            lambda: field.one(),
            ram: 1,
            y: LaurentSeries::exact_zero(field.clone()),
            vertical: true,
        });
        work = work.div_x_power(min_x)?;
    }
    if work.is_constant() {
        return Ok(out);
    }
    if !field.is_zero(&work.eval(&zero, &zero)) {
        return Ok(out);
    }
    let depth = ((work.deg_x() + work.deg_y() + 2) * (work.deg_x() + work.deg_y() + 2) + 16) as usize;
    out.extend(expand_inner(&work, precision, depth)?);
    Ok(out)
}

fn expand_inner(q: &Poly2, precision: i64, depth: usize) -> Result<Vec<RawBranch>> {
    if depth == 0 {
        return Err(Error::Internal("puiseux recursion guard exceeded".into()));
    }
    let field = q.field.clone();
    let zero = field.zero();
    debug_assert!(field.is_zero(&q.eval(&zero, &zero)));

    let mut out = Vec::new();
    let mut work = q.clone();

    // exact polynomial solution y = 0 of the current stage
    let min_y = work.terms.keys().map(|&(_, j)| j).min().unwrap_or(0);
    if min_y >= 1 {
        out.push(RawBranch {
            field: field.clone(),
            lambda: field.one(),
            ram: 1,
            y: LaurentSeries::exact_zero(field.clone()),
            vertical: false,
        });
        work = work.div_y_power(min_y)?;
        if work.is_constant() || !field.is_zero(&work.eval(&zero, &zero)) {
            return Ok(out);
        }
    }

    // simple germ: Newton iteration supplies the tail
    let dy0 = work.dy().eval(&zero, &zero);
    if !field.is_zero(&dy0) {
        out.push(RawBranch {
            field: field.clone(),
            lambda: field.one(),
            ram: 1,
            y: hensel_series(&work, precision)?,
            vertical: false,
        });
        return Ok(out);
    }

    for edge in newton_edges(&work)? {
        let p = field.characteristic();
        if p != 0 && edge.e % (p as i64) == 0 {
            return Err(Error::WildRamification {
                index: edge.e as u64,
                characteristic: p,
            });
        }
        let epoly = Poly1::new(field.clone(), edge.coeffs.clone());
        for (fac, _mult) in crate::factor::factor(&epoly)? {
            // root w0 of the edge polynomial, in an extension if needed
            let (k1, w0) = match fac.degree() {
                Some(1) => (field.clone(), field.neg(&fac.coeff(0))),
                Some(_) => {
                    let ext = field.make_extension(fac.coeffs.clone())?;
                    let gen = ext.generator();
                    (ext, gen)
                }
                None => continue,
            };
            // lambda = w0^tau, c = w0^sigma with sigma*e - tau*m = 1
            let (sigma, tau) = bezout(edge.e, edge.m);
            let lambda = k1.pow(&w0, tau)?;
            let c = k1.pow(&w0, sigma)?;
            let q1 = edge_substitute(&work, &k1, edge.e, edge.m, &lambda, &c, edge.d)?;
            let children = expand_inner(&q1, precision, depth - 1)?;
            for child in children {
                let kc = child.field.clone();
                let lam_e = kc.embed_subfield(&lambda);
                let c_e = kc.embed_subfield(&c);
                let lam_child_pow = kc.pow(&child.lambda, edge.e)?;
                let new_lambda = kc.mul(&lam_e, &lam_child_pow);
                let e_new = edge.e * child.ram;
                // y = x1^m (c + y1) with x1 = lambda_child s^(ram_child)
                let lam_child_m = kc.pow(&child.lambda, edge.m)?;
                let head = LaurentSeries::monomial(kc.clone(), lam_child_m, edge.m * child.ram);
                let c_series = LaurentSeries::constant(kc.clone(), c_e);
                let y_new = head.mul(&c_series.add(&child.y));
                out.push(RawBranch {
                    field: kc,
                    lambda: new_lambda,
                    ram: e_new,
                    y: y_new,
                    vertical: false,
                });
            }
        }
    }
    Ok(out)
}

/// `(sigma, tau)` with `sigma*e - tau*m = 1`, normalized so `tau` lies in
/// `[0, e)` (hence `tau = 0` and no twist at all when `e = 1`). Requires
/// `gcd(e, m) = 1`.
fn bezout(e: i64, m: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (e, m);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qq = r0 / r1;
        (r0, r1) = (r1, r0 - qq * r1);
        (s0, s1) = (s1, s0 - qq * s1);
        (t0, t1) = (t1, t0 - qq * t1);
    }
    debug_assert_eq!(r0, 1, "edge parameters must be coprime");
    // s0*e + t0*m = 1 -> sigma = s0, tau = -t0; shift tau into [0, e)
    let tau = (-t0).rem_euclid(e);
    let sigma = (1 + tau * m) / e;
    debug_assert_eq!(sigma * e - tau * m, 1);
    (sigma, tau)
}

struct Edge {
    e: i64,
    m: i64,
    d: i64,
    /// edge polynomial coefficients, constant-first
    coeffs: Vec<Scalar>,
}

/// Lower Newton-polygon edges with positive slope `m/e` (branches with
/// `y -> 0`), walking from the lowest `(i, 0)` point to the lowest `(0, j)`
/// point.
fn newton_edges(q: &Poly2) -> Result<Vec<Edge>> {
    let field = q.field.clone();
    let support: Vec<(i64, i64)> = q
        .terms
        .keys()
        .map(|&(i, j)| (i as i64, j as i64))
        .collect();
    let i0 = support
        .iter()
        .filter(|&&(_, j)| j == 0)
        .map(|&(i, _)| i)
        .min()
        .ok_or_else(|| Error::Internal("newton_edges: y divides input".into()))?;
    let jstar = support
        .iter()
        .filter(|&&(i, _)| i == 0)
        .map(|&(_, j)| j)
        .min()
        .ok_or_else(|| Error::Internal("newton_edges: x divides input".into()))?;
    let mut edges = Vec::new();
    let mut cur = (i0, 0i64);
    while cur.1 < jstar {
        // next hull vertex: steepest drop in i per unit j, then longest
        let mut best: Option<((i64, i64), (i64, i64))> = None; // (slope num, den), point
        let mut best_pt = cur;
        for &(i, j) in &support {
            if j <= cur.1 || i > cur.0 {
                continue;
            }
            let num = cur.0 - i;
            let den = j - cur.1;
            let better = match best {
                None => true,
                Some(((bn, bd), _)) => {
                    // num/den > bn/bd ?
                    let cmp = num * bd - bn * den;
                    cmp > 0 || (cmp == 0 && j > best_pt.1)
                }
            };
            if better {
                best = Some(((num, den), (i, j)));
                best_pt = (i, j);
            }
        }
        let ((num, den), nxt) = best.ok_or_else(|| {
            Error::Internal("newton_edges: no next vertex".into())
        })?;
        let g = gcd_i64(num, den);
        let (m, e) = (num / g, den / g);
        let d = e * cur.0 + m * cur.1;
        // collect points on the edge line e*i + m*j = d between cur and nxt
        let mut coeffs = vec![field.zero(); ((nxt.1 - cur.1) / e + 1) as usize];
        for &(i, j) in &support {
            if j >= cur.1 && j <= nxt.1 && e * i + m * j == d {
                let l = (j - cur.1) / e;
                coeffs[l as usize] = q.terms[&(i as u32, j as u32)].clone();
            }
        }
        edges.push(Edge { e, m, d, coeffs });
        cur = nxt;
    }
    Ok(edges)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a.abs(), b.abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// `q1(x1, y1) = q(lambda x1^e, x1^m (c + y1)) / x1^D` over `k1`.
fn edge_substitute(
    q: &Poly2,
    k1: &CoeffField,
    e: i64,
    m: i64,
    lambda: &Scalar,
    c: &Scalar,
    d: i64,
) -> Result<Poly2> {
    let mut out = Poly2::zero(k1.clone());
    for (&(i, j), coeff) in &q.terms {
        let coeff1 = k1.embed_subfield(coeff);
        let lam_i = k1.pow(lambda, i as i64)?;
        let base = k1.mul(&coeff1, &lam_i);
        // (c + y1)^j expanded by the binomial theorem
        let mut binom = k1.one();
        for l in 0..=j {
            // binom = C(j, l) computed incrementally below
            let c_pow = k1.pow(c, (j - l) as i64)?;
            let term = k1.mul(&base, &k1.mul(&binom, &c_pow));
            let xexp = e * i as i64 + m * j as i64 - d;
            if xexp < 0 {
                return Err(Error::Internal("edge_substitute: negative exponent".into()));
            }
            out.add_term((xexp as u32, l), term);
            // update binomial coefficient C(j, l+1) = C(j, l)*(j-l)/(l+1)
            if l < j {
                let num = k1.from_i64((j - l) as i64);
                let den = k1.from_i64((l + 1) as i64);
                binom = k1.div(&k1.mul(&binom, &num), &den)?;
            }
        }
    }
    Ok(out)
}

/// Newton iteration for a simple germ: the unique `y(x)` with `y(0) = 0`,
/// `q(x, y(x)) = 0`, to `x`-precision `prec`.
fn hensel_series(q: &Poly2, prec: i64) -> Result<LaurentSeries> {
    let field = q.field.clone();
    let qy = q.dy();
    let mut y = LaurentSeries::exact_zero(field.clone());
    let steps = (64 - (prec.max(2) as u64).leading_zeros()) as usize + 2;
    let xs = LaurentSeries::monomial(field.clone(), field.one(), 1).truncate_to(prec);
    for _ in 0..steps {
        let val = eval_series(q, &xs, &y);
        let der = eval_series(&qy, &xs, &y);
        if val.is_zero_to_prec() && val.prec >= prec {
            break;
        }
        let corr = val.div(&der)?;
        y = y.sub(&corr).truncate_to(prec);
    }
    // certificate: the defining equation vanishes through the window
    let check = eval_series(q, &xs, &y);
    if !check.is_zero_to_prec() {
        return Err(Error::Internal(
            "hensel_series: iteration did not converge".into(),
        ));
    }
    Ok(y)
}

/// `q(xs, ys)` for series arguments (Horner in `y`).
pub fn eval_series(q: &Poly2, xs: &LaurentSeries, ys: &LaurentSeries) -> LaurentSeries {
    let field = q.field.clone();
    let mut acc = LaurentSeries::exact_zero(field.clone());
    for cj in q.y_coeffs().iter().rev() {
        acc = acc.mul(ys);
        acc = acc.add(&xs.substitute_into(cj));
    }
    acc
}
