//! Plane geometry: the three standard charts of the projective plane,
//! closed points with residue towers, branch decomposition of curve germs,
//! branch multiplicities (`nu2` along a prime), and the symbol at a branch.
//!
//! The primary symbol computation perturbs the Puiseux parametrization:
//! with `a = nu2(f)`, `b = nu2(g)` along the branch and
//! `phi_eps(s) = (x(s), y(s) + s^M)` (the perturbation moves to the `x`
//! coordinate for the vertical branch), the symbol is
//! `b * ord_s(f . phi_eps) - a * ord_s(g . phi_eps)`; the common offset
//! `ord_s(h_B . phi_eps)` cancels in the determinant, so it is never needed
//! explicitly. A Weierstrass-division route (dividing out the conjugate
//! product local equation) is kept as an independent cross-check, and local
//! intersection multiplicities have a separate resultant oracle.

use std::collections::BTreeMap;

use crate::coeff::{CoeffField, Scalar};
use crate::error::{Error, Result};
use crate::poly::{resultant_y, Poly1, Poly2};
use crate::puiseux::{eval_series, expand_germ, RawBranch};
use crate::series::LaurentSeries;

/// The three standard charts of `P^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Chart {
    /// `Z = 1`, coordinates `(x, y) = (X/Z, Y/Z)`.
    Affine,
    /// `Y = 1`, coordinates `(a, c) = (X/Y, Z/Y)`.
    XZ,
    /// `X = 1`, coordinates `(b, c) = (Y/X, Z/X)`.
    YZ,
}

impl Chart {
    pub fn name(&self) -> &'static str {
        match self {
            Chart::Affine => "affine",
            Chart::XZ => "chart-XZ",
            Chart::YZ => "chart-YZ",
        }
    }
}

/// Homogeneous polynomial in `X, Y, Z`; keys are `(i, j)` for
/// `X^i Y^j Z^(degree-i-j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomPoly {
    pub field: CoeffField,
    pub degree: u32,
    pub terms: BTreeMap<(u32, u32), Scalar>,
}

impl HomPoly {
    pub fn homogenize(q: &Poly2) -> HomPoly {
        let degree = q.total_degree();
        HomPoly {
            field: q.field.clone(),
            degree,
            terms: q.terms.clone(),
        }
    }

    /// The coordinate line at infinity of a chart, as a homogeneous linear
    /// polynomial: `Z` for affine, `Y` for XZ, `X` for YZ.
    pub fn infinity_line(field: &CoeffField, chart: Chart) -> HomPoly {
        let mut terms = BTreeMap::new();
        match chart {
            Chart::Affine => terms.insert((0, 0), field.one()),
            Chart::XZ => terms.insert((0, 1), field.one()),
            Chart::YZ => terms.insert((1, 0), field.one()),
        };
        HomPoly {
            field: field.clone(),
            degree: 1,
            terms,
        }
    }

    pub fn dehomogenize(&self, chart: Chart) -> Poly2 {
        let mut out = Poly2::zero(self.field.clone());
        for (&(i, j), c) in &self.terms {
            let k = self.degree - i - j;
            let key = match chart {
                Chart::Affine => (i, j),
                Chart::XZ => (i, k),
                Chart::YZ => (j, k),
            };
            out.add_term(key, c.clone());
        }
        out
    }

    pub fn eval_proj(&self, x: &Scalar, y: &Scalar, z: &Scalar) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for (&(i, j), c) in &self.terms {
            let k = self.degree - i - j;
            let t = f.mul(
                c,
                &f.mul(
                    &f.pow(x, i as i64).unwrap(),
                    &f.mul(&f.pow(y, j as i64).unwrap(), &f.pow(z, k as i64).unwrap()),
                ),
            );
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn to_string_xyz(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (&(i, j), c) in &self.terms {
            let k = self.degree - i - j;
            let cs = f.scalar_to_string(c);
            let mut vars = String::new();
            for (sym, e) in [("X", i), ("Y", j), ("Z", k)] {
                if e > 0 {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push_str(sym);
                    if e > 1 {
                        vars.push_str(&format!("^{}", e));
                    }
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

/// A closed point of the plane in one chart, with its residue tower.
/// `field` is a tower over the ground field containing the coordinates;
/// the residue degree is the tower degree.
#[derive(Debug, Clone)]
pub struct PlanePoint {
    pub chart: Chart,
    pub base: CoeffField,
    pub field: CoeffField,
    pub x: Scalar,
    pub y: Scalar,
    pub id: String,
}

impl PlanePoint {
    pub fn rational(chart: Chart, base: &CoeffField, x: Scalar, y: Scalar) -> PlanePoint {
        let id = format!(
            "{}({},{})",
            chart.name(),
            base.scalar_to_string(&x),
            base.scalar_to_string(&y)
        );
        PlanePoint {
            chart,
            base: base.clone(),
            field: base.clone(),
            x,
            y,
            id,
        }
    }

    pub fn with_tower(
        chart: Chart,
        base: &CoeffField,
        field: CoeffField,
        x: Scalar,
        y: Scalar,
        id: String,
    ) -> PlanePoint {
        PlanePoint {
            chart,
            base: base.clone(),
            field,
            x,
            y,
            id,
        }
    }

    pub fn residue_degree(&self) -> usize {
        self.field.degree_over_base()
    }
}

/// A branch of a plane-curve germ at a point: the Puiseux data plus the
/// polynomial whose germ it came from.
#[derive(Debug, Clone)]
pub struct Branch {
    pub point: PlanePoint,
    pub raw: RawBranch,
    pub source: Poly2,
    pub prec: i64,
}

impl Branch {
    /// `[k_i : k]`, with the point's residue degree already folded in
    /// (branch towers extend the point tower).
    pub fn residue_degree_total(&self) -> usize {
        self.raw.field.degree_over_base()
    }

    pub fn ram_index(&self) -> i64 {
        self.raw.ram
    }

    fn source_degree(&self) -> i64 {
        self.source.total_degree() as i64
    }

    /// A stable identifier used for report ordering.
    pub fn key(&self) -> String {
        format!(
            "{}|{}|{}|{}",
            self.source.to_string_xy("x", "y"),
            self.raw.vertical,
            self.raw.ram,
            self.raw
                .field
                .poly_to_string(&self.raw.y.coeffs, "s")
        )
    }
}

/// A rational function on a chart as a factor-exponent list over the ground
/// field. Factors are squarefree and pairwise coprime.
#[derive(Debug, Clone)]
pub struct FactoredFunction {
    pub field: CoeffField,
    pub chart: Chart,
    pub factors: Vec<(Poly2, i64)>,
}

impl FactoredFunction {
    pub fn one(field: &CoeffField, chart: Chart) -> FactoredFunction {
        FactoredFunction {
            field: field.clone(),
            chart,
            factors: Vec::new(),
        }
    }

    pub fn new(field: &CoeffField, chart: Chart, factors: Vec<(Poly2, i64)>) -> Result<Self> {
        let f = FactoredFunction {
            field: field.clone(),
            chart,
            factors,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        for (q, _) in &self.factors {
            if q.is_zero() || q.is_constant() {
                return Err(Error::NotSquarefreeCoprime {
                    witness: q.to_string_xy("x", "y"),
                });
            }
            if !q.is_squarefree()? {
                let w = q.gcd(&q.dx())?.gcd(&q.dy())?;
                return Err(Error::NotSquarefreeCoprime {
                    witness: w.to_string_xy("x", "y"),
                });
            }
        }
        for i in 0..self.factors.len() {
            for j in i + 1..self.factors.len() {
                let g = self.factors[i].0.gcd(&self.factors[j].0)?;
                if !g.is_constant() {
                    return Err(Error::NotSquarefreeCoprime {
                        witness: g.to_string_xy("x", "y"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Splits monomial content and repeated gcds so the factor list becomes
    /// squarefree and pairwise coprime where possible (exponents combine);
    /// a genuinely non-squarefree factor is still rejected by `validate`.
    pub fn refine(field: &CoeffField, chart: Chart, raw: Vec<(Poly2, i64)>) -> Result<Self> {
        let mut work: Vec<(Poly2, i64)> = Vec::new();
        for (q, e) in raw {
            if q.is_zero() {
                return Err(Error::NotSquarefreeCoprime { witness: "0".into() });
            }
            if e == 0 || q.is_constant() {
                continue;
            }
            // split off x- and y-monomial content
            let mut q = q.normalize();
            let min_x = q.terms.keys().map(|&(i, _)| i).min().unwrap_or(0);
            if min_x > 0 {
                work.push((Poly2::from_terms(field.clone(), vec![((1, 0), field.one())]), e * min_x as i64));
                q = q.div_x_power(min_x)?;
            }
            let min_y = q.terms.keys().map(|&(_, j)| j).min().unwrap_or(0);
            if min_y > 0 {
                work.push((Poly2::from_terms(field.clone(), vec![((0, 1), field.one())]), e * min_y as i64));
                q = q.div_y_power(min_y)?;
            }
            if !q.is_constant() {
                work.push((q, e));
            }
        }
        // gcd refinement until pairwise coprime
        'outer: loop {
            for i in 0..work.len() {
                for j in i + 1..work.len() {
                    if work[i].0 == work[j].0 {
                        let e = work[j].1;
                        work[i].1 += e;
                        work.remove(j);
                        work.retain(|(_, e)| *e != 0);
                        continue 'outer;
                    }
                    let g = work[i].0.gcd(&work[j].0)?;
                    if !g.is_constant() {
                        let (qi, ei) = work[i].clone();
                        let (qj, ej) = work[j].clone();
                        let ri = qi.div_exact_by(&g)?;
                        let rj = qj.div_exact_by(&g)?;
                        work.remove(j);
                        work.remove(i);
                        work.push((g.normalize(), ei + ej));
                        if !ri.is_constant() {
                            work.push((ri.normalize(), ei));
                        }
                        if !rj.is_constant() {
                            work.push((rj.normalize(), ej));
                        }
                        work.retain(|(_, e)| *e != 0);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        work.sort_by_key(|(q, _)| q.to_string_xy("x", "y"));
        FactoredFunction::new(field, chart, work)
    }

    pub fn to_string_canonical(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(q, e)| {
                if *e == 1 {
                    format!("({})", q.to_string_xy("x", "y"))
                } else {
                    format!("({})^{}", q.to_string_xy("x", "y"), e)
                }
            })
            .collect();
        parts.join(" * ")
    }
}

impl Poly2 {
    /// Exact division by another bivariate polynomial (via the `y`-coeff
    /// pseudo-structure); errors if not exactly divisible.
    pub fn div_exact_by(&self, d: &Poly2) -> Result<Poly2> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // polynomial long division in y over k(x) realized with exact
        // Poly1 arithmetic: multiply through by the leading coefficient
        let dy = d.deg_y();
        if dy == 0 {
            // divisor is a Poly1 in x
            return self.div_exact_poly1_in_x(&d.y_coeffs()[0]);
        }
        let d_lead = d.y_coeffs()[dy as usize].clone();
        let mut rem = self.clone();
        let mut quot = Poly2::zero(self.field.clone());
        let mut guard = 0;
        while !rem.is_zero() && rem.deg_y() >= dy {
            let ry = rem.deg_y();
            let r_lead = rem.y_coeffs()[ry as usize].clone();
            let (ql, rl) = r_lead.divmod(&d_lead)?;
            if !rl.is_zero() {
                return Err(Error::Internal("div_exact_by: inexact".into()));
            }
            let mut shift = Poly2::zero(self.field.clone());
            for (i, c) in ql.coeffs.iter().enumerate() {
                shift.add_term((i as u32, ry - dy), c.clone());
            }
            quot = quot.add(&shift);
            rem = rem.sub(&shift.mul(d));
            guard += 1;
            if guard > 10000 {
                return Err(Error::Internal("div_exact_by: no progress".into()));
            }
        }
        if !rem.is_zero() {
            return Err(Error::Internal("div_exact_by: nonzero remainder".into()));
        }
        Ok(quot)
    }
}

/// Germ of `q` at `point`: shifted to the origin over the point's tower.
pub fn germ_at(point: &PlanePoint, q: &Poly2) -> Poly2 {
    let lifted = q.lift_to_field(&point.field);
    lifted.shift_xy(&point.x, &point.y)
}

/// All branches of `q` through `point`, to the given `s`-precision.
pub fn branches_at_point(q: &Poly2, point: &PlanePoint, precision: i64) -> Result<Vec<Branch>> {
    let germ = germ_at(point, q);
    let mut raws = expand_germ(&germ, precision)?;
    // canonical deterministic order
    raws.sort_by_key(|r| {
        (
            !r.vertical,
            r.ram,
            r.field.degree_over_base(),
            r.field.poly_to_string(&r.y.coeffs, "s"),
        )
    });
    Ok(raws
        .into_iter()
        .map(|raw| Branch {
            point: point.clone(),
            raw,
            source: q.clone(),
            prec: precision,
        })
        .collect())
}

/// Evaluates the germ of `q` (a chart polynomial over the ground field) on
/// the branch parametrization, optionally perturbed by `s^M` transverse to
/// the branch.
fn eval_factor_on_branch(q: &Poly2, b: &Branch, perturb: Option<i64>) -> LaurentSeries {
    let bf = b.raw.field.clone();
    let germ = germ_at(&b.point, q).lift_to_field(&bf);
    let prec = b.prec;
    let (xs, ys) = match perturb {
        None => (
            b.raw.x_series().truncate_to(prec * b.raw.ram.max(1)),
            b.raw.y_series().truncate_to(prec),
        ),
        Some(m) => {
            let sm = LaurentSeries::monomial(bf.clone(), bf.one(), m);
            if b.raw.vertical {
                (sm.truncate_to(prec), b.raw.y_series().truncate_to(prec))
            } else {
                (
                    b.raw.x_series().truncate_to(prec * b.raw.ram.max(1)),
                    b.raw.y_series().add(&sm).truncate_to(prec),
                )
            }
        }
    };
    eval_series(&germ, &xs, &ys)
}

/// Decides whether the zero set of `q` contains the branch, by the Bezout
/// bound: a contact order beyond `deg(q) * deg(source)` certifies
/// containment.
pub fn branch_contains(q: &Poly2, b: &Branch) -> Result<bool> {
    if q.normalize() == b.source.normalize() {
        return Ok(true);
    }
    let bound = (q.total_degree() as i64) * b.source_degree();
    let val = eval_factor_on_branch(q, b, None);
    match val.valuation() {
        Ok(v) => {
            if v > bound {
                // cannot happen for a non-contained factor
                return Err(Error::Internal(format!(
                    "containment bound violated: ord {} > bound {}",
                    v, bound
                )));
            }
            Ok(false)
        }
        Err(_) => {
            if val.prec > bound + 1 {
                Ok(true)
            } else {
                Err(Error::IndeterminateAtPrecision)
            }
        }
    }
}

/// `nu2(f)` along the branch: the sum of factor exponents over factors whose
/// zero set contains the branch.
pub fn branch_multiplicity(f: &FactoredFunction, b: &Branch) -> Result<i64> {
    let mut total = 0i64;
    for (q, e) in &f.factors {
        if branch_contains(q, b)? {
            total += e;
        }
    }
    Ok(total)
}

/// Perturbation order for a symbol computation involving `f` and `g` at `b`.
fn perturbation_order(f: &FactoredFunction, g: &FactoredFunction, b: &Branch) -> i64 {
    let d_src = b.source_degree();
    let weight: i64 = f
        .factors
        .iter()
        .chain(g.factors.iter())
        .map(|(q, e)| e.abs() * q.total_degree() as i64)
        .sum();
    2 + d_src * (d_src + weight)
}

fn required_precision(f: &FactoredFunction, g: &FactoredFunction, b: &Branch, m: i64) -> i64 {
    let d_src = b.source_degree();
    let maxdeg = f
        .factors
        .iter()
        .chain(g.factors.iter())
        .map(|(q, _)| q.total_degree() as i64)
        .max()
        .unwrap_or(1);
    m + d_src * d_src + maxdeg * d_src + 4
}

/// Order of `h . phi_eps` summed over the factors of `h`.
fn perturbed_order(h: &FactoredFunction, b: &Branch, m: i64) -> Result<i64> {
    let mut total = 0i64;
    for (q, e) in &h.factors {
        let val = eval_factor_on_branch(q, b, Some(m));
        let v = val.valuation()?;
        total += e * v;
    }
    Ok(total)
}

/// `nu_L(f, g)` at the branch via the perturbed parametrization:
/// `nu2(g) * ord(f . phi_eps) - nu2(f) * ord(g . phi_eps)`.
pub fn symbol_at_branch(f: &FactoredFunction, g: &FactoredFunction, b: &Branch) -> Result<i64> {
    let m = perturbation_order(f, g, b);
    symbol_at_branch_with_m(f, g, b, m)
}

/// Same with an explicit perturbation order (exposed so tests can assert
/// independence of admissible `M`).
pub fn symbol_at_branch_with_m(
    f: &FactoredFunction,
    g: &FactoredFunction,
    b: &Branch,
    m: i64,
) -> Result<i64> {
    let a_mult = branch_multiplicity(f, b)?;
    let b_mult = branch_multiplicity(g, b)?;
    if a_mult == 0 && b_mult == 0 {
        return Ok(0);
    }
    if b.prec < required_precision(f, g, b, m) {
        return Err(Error::IndeterminateAtPrecision);
    }
    let of = perturbed_order(f, b, m)?;
    let og = perturbed_order(g, b, m)?;
    Ok(b_mult * of - a_mult * og)
}

/// `nu_(x,C)(f, g)`: branch symbols of `C` at the point, weighted by
/// residue degrees.
pub fn symbol_at_point_curve(
    f: &FactoredFunction,
    g: &FactoredFunction,
    point: &PlanePoint,
    c: &Poly2,
    precision: i64,
) -> Result<i64> {
    let branches = branches_at_point(c, point, precision)?;
    let mut total = 0i64;
    for b in &branches {
        total += b.residue_degree_total() as i64 * symbol_at_branch(f, g, b)?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// resultant oracle for local intersection multiplicities
// ---------------------------------------------------------------------------

/// Substitute `x -> x + lam * y^pow` (a triangular shear).
fn shear(q: &Poly2, lam: &Scalar, pow: u32) -> Poly2 {
    let f = q.field.clone();
    let mut sub = Poly2::zero(f.clone());
    sub.add_term((1, 0), f.one());
    sub.add_term((0, pow), lam.clone());
    // substitute via y-coeff expansion of powers of x
    let mut out = Poly2::zero(f.clone());
    for (&(i, j), c) in &q.terms {
        let xi = sub.pow(i);
        let mut shift = Poly2::zero(f.clone());
        shift.add_term((0, j), c.clone());
        out = out.add(&xi.mul(&shift));
    }
    out
}

/// Local intersection multiplicity of `p` and `q` at `point` via a sheared
/// resultant. The inputs must not share a component through the point.
pub fn intersection_multiplicity_oracle(
    p: &Poly2,
    q: &Poly2,
    point: &PlanePoint,
) -> Result<i64> {
    let field = point.field.clone();
    let pg = germ_at(point, p);
    let qg = germ_at(point, q);
    let zero = field.zero();
    if !field.is_zero(&pg.eval(&zero, &zero)) || !field.is_zero(&qg.eval(&zero, &zero)) {
        return Ok(0);
    }
    let g = pg.gcd(&qg)?;
    if !g.is_constant() && field.is_zero(&g.eval(&zero, &zero)) {
        return Err(Error::SharedComponent {
            witness: g.to_string_xy("x", "y"),
        });
    }
    for pow in [1u32, 2] {
        for lam_i in 0..64i64 {
            let lam = field.from_i64(lam_i);
            let ps = shear(&pg, &lam, pow);
            let qs = shear(&qg, &lam, pow);
            // leading y-coefficients must be nonzero constants
            let ok = |r: &Poly2| -> bool {
                let yc = r.y_coeffs();
                match yc.last() {
                    Some(c) => c.is_constant() && !c.is_zero(),
                    None => false,
                }
            };
            if !ok(&ps) || !ok(&qs) {
                continue;
            }
            // the only common root on the line x = 0 must be y = 0
            let p0 = Poly1::new(
                field.clone(),
                ps.y_coeffs().iter().map(|c| c.coeff(0)).collect(),
            );
            let q0 = Poly1::new(
                field.clone(),
                qs.y_coeffs().iter().map(|c| c.coeff(0)).collect(),
            );
            let g0 = p0.gcd(&q0)?;
            let monomial_gcd = !g0.is_zero()
                && g0
                    .coeffs
                    .iter()
                    .take(g0.coeffs.len().saturating_sub(1))
                    .all(|c| field.is_zero(c));
            if !monomial_gcd {
                continue;
            }
            let res = resultant_y(&ps, &qs)?;
            if res.is_zero() {
                continue;
            }
            let v = res
                .coeffs
                .iter()
                .position(|c| !field.is_zero(c))
                .unwrap_or(0);
            return Ok(v as i64);
        }
    }
    Err(Error::Internal(
        "intersection oracle: no admissible shear found".into(),
    ))
}

// ---------------------------------------------------------------------------
// Weierstrass-division oracle for branch symbols
// ---------------------------------------------------------------------------

/// Cyclotomic polynomial `Phi_e` over `field` (characteristic prime to `e`).
fn cyclotomic(field: &CoeffField, e: i64) -> Result<Poly1> {
    let mut num = vec![field.neg(&field.one())];
    num.resize(e as usize, field.zero());
    num.push(field.one());
    let mut phi = Poly1::new(field.clone(), num); // x^e - 1
    for d in 1..e {
        if e % d == 0 {
            let sub = cyclotomic(field, d)?;
            phi = phi.div_exact(&sub)?;
        }
    }
    Ok(phi)
}

/// A field containing a primitive `e`-th root of unity over `field`, and
/// the root.
fn with_root_of_unity(field: &CoeffField, e: i64) -> Result<(CoeffField, Scalar)> {
    if e == 1 {
        return Ok((field.clone(), field.one()));
    }
    let phi = cyclotomic(field, e)?;
    let factors = crate::factor::factor(&phi)?;
    let fac = &factors[0].0;
    match fac.degree() {
        Some(1) => Ok((field.clone(), field.neg(&fac.coeff(0)))),
        Some(_) => {
            let ext = field.make_extension(fac.coeffs.clone())?;
            let z = ext.generator();
            Ok((ext, z))
        }
        None => Err(Error::Internal("cyclotomic factor is constant".into())),
    }
}

/// Scales the series parameter: `y(zeta * s)`.
fn conjugate_series(y: &LaurentSeries, field: &CoeffField, zeta: &Scalar) -> LaurentSeries {
    let coeffs: Vec<Scalar> = y
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let e = y.low + i as i64;
            field.mul(
                &field.embed_subfield(c),
                &field.pow(zeta, e).unwrap(),
            )
        })
        .collect();
    LaurentSeries::new(field.clone(), y.low, coeffs, y.prec)
}

/// Local equation of the branch as a monic polynomial in `Y` with series
/// coefficients in `s` (supported on multiples of `ram`), over a root-of-
/// unity extension: the conjugate product `prod (Y - y(zeta^j s))`.
fn branch_local_equation(b: &Branch) -> Result<(CoeffField, Vec<LaurentSeries>)> {
    let e = b.raw.ram;
    let (kz, zeta) = with_root_of_unity(&b.raw.field, e)?;
    let mut coeffs: Vec<LaurentSeries> = vec![LaurentSeries::one(kz.clone())];
    for j in 0..e {
        let zj = kz.pow(&zeta, j)?;
        let yj = conjugate_series(&b.raw.y.truncate_to(b.prec), &kz, &zj);
        // multiply (Y - yj) into the coefficient list
        let mut next = vec![LaurentSeries::exact_zero(kz.clone()); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(&yj));
        }
        coeffs = next;
    }
    // support check: every coefficient lives on exponents divisible by e
    for c in &coeffs {
        for (i, s) in c.coeffs.iter().enumerate() {
            let exp = c.low + i as i64;
            if !kz.is_zero(s) && exp % e != 0 {
                return Err(Error::Internal(
                    "conjugate product has off-lattice support".into(),
                ));
            }
        }
    }
    Ok((kz, coeffs))
}

/// Division with remainder by a monic-in-`Y` polynomial with series
/// coefficients; returns the quotient, verifying the remainder vanishes
/// through the working precision.
fn weierstrass_divide(
    num: &[LaurentSeries],
    den: &[LaurentSeries],
    kz: &CoeffField,
) -> Result<Vec<LaurentSeries>> {
    let dd = den.len() - 1;
    let mut rem: Vec<LaurentSeries> = num.to_vec();
    if rem.len() <= dd {
        return Err(Error::Internal("weierstrass_divide: degree too small".into()));
    }
    let mut quot = vec![LaurentSeries::exact_zero(kz.clone()); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let q = rem[i].clone();
        quot[i - dd] = q.clone();
        for (j, dc) in den.iter().enumerate() {
            let t = q.mul(dc);
            rem[i - dd + j] = rem[i - dd + j].sub(&t);
        }
    }
    for r in rem.iter().take(dd) {
        if !r.is_zero_to_prec() {
            return Err(Error::Internal(
                "weierstrass_divide: nonzero remainder".into(),
            ));
        }
    }
    Ok(quot)
}

/// Independent route to the branch symbol: true `nu1` values by dividing
/// the branch local equation out of each containing factor, then the
/// determinant. Used as a cross-check oracle for `symbol_at_branch`.
pub fn weierstrass_symbol(
    f: &FactoredFunction,
    g: &FactoredFunction,
    b: &Branch,
) -> Result<i64> {
    let a_mult = branch_multiplicity(f, b)?;
    let b_mult = branch_multiplicity(g, b)?;
    if b.raw.vertical {
        // local equation is x itself: divide exactly in the polynomial ring
        let nu1 = |h: &FactoredFunction| -> Result<i64> {
            let mut total = 0i64;
            for (q, e) in &h.factors {
                let germ = germ_at(&b.point, q);
                let reduced = if branch_contains(q, b)? {
                    germ.div_x_power(1)?
                } else {
                    germ
                };
                let val = eval_series(
                    &reduced.lift_to_field(&b.raw.field),
                    &b.raw.x_series().truncate_to(b.prec),
                    &b.raw.y_series().truncate_to(b.prec),
                );
                total += e * val.valuation()?;
            }
            Ok(total)
        };
        let n1f = nu1(f)?;
        let n1g = nu1(g)?;
        return Ok(n1f * b_mult - n1g * a_mult);
    }
    let (kz, local_eq) = branch_local_equation(b)?;
    let xs = b.raw.x_series().truncate_to(b.prec * b.raw.ram.max(1));
    let xs_kz = LaurentSeries::new(
        kz.clone(),
        xs.low,
        xs.coeffs.iter().map(|c| kz.embed_subfield(c)).collect(),
        xs.prec,
    );
    let ys_kz = conjugate_series(&b.raw.y.truncate_to(b.prec), &kz, &kz.one());
    let nu1 = |h: &FactoredFunction| -> Result<i64> {
        let mut total = 0i64;
        for (q, e) in &h.factors {
            let germ = germ_at(&b.point, q).lift_to_field(&kz);
            // coefficients of powers of Y, evaluated at x = x(s)
            let mut coeffs: Vec<LaurentSeries> = germ
                .y_coeffs()
                .iter()
                .map(|c| xs_kz.substitute_into(c))
                .collect();
            if branch_contains(q, b)? {
                coeffs = weierstrass_divide(&coeffs, &local_eq, &kz)?;
            }
            // evaluate at Y = y(s)
            let mut acc = LaurentSeries::exact_zero(kz.clone());
            for c in coeffs.iter().rev() {
                acc = acc.mul(&ys_kz);
                acc = acc.add(c);
            }
            total += e * acc.valuation()?;
        }
        Ok(total)
    };
    let n1f = nu1(f)?;
    let n1g = nu1(g)?;
    Ok(n1f * b_mult - n1g * a_mult)
}
