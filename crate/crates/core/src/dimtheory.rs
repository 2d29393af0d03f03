//! Lattice index calculus, dimension theories and Z-torsors.
//!
//! The index `[A|B]_1 = dim_k B/(A cap B) - dim_k A/(A cap B)` is computed
//! for graded lattices (a `t`-level per slot, finitely many perturbed slots
//! given by coefficient-space bases over the ground field). A dimension
//! theory is a base lattice plus an integer offset; `Dim(V)` is a Z-torsor.
//!
//! Torsor elements between standard lattices `O_m` are pinned to integers
//! against canonical bases, so Hom-torsor composition is integer addition
//! with endpoint checking. The group action transports a pinned element by
//! two index corrections, each the index of a multiplicatively warped
//! canonical base against a straight one; those indices are computed by
//! exact finite elimination over the coefficient field (see
//! [`index_g_image`]). The central extension itself lives in
//! [`crate::central`].

use std::collections::BTreeMap;

use crate::coeff::{CoeffField, Scalar};
use crate::error::{Error, Result};
use crate::series::Elem2D;

/// A 1-D lattice in `k'((t))`: the tail `t^level k'[[t]]` together with
/// finitely many perturbed slots below `level`. A perturbed slot replaces
/// the full coefficient line at that exponent by the `k`-span of the given
/// coordinate vectors (coordinates over the ground field, length `[k':k]`).
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeLine {
    pub level: i64,
    pub perturbs: Vec<(i64, Vec<Vec<Scalar>>)>,
}

impl LatticeLine {
    pub fn pure(level: i64) -> Self {
        LatticeLine {
            level,
            perturbs: Vec::new(),
        }
    }

    fn check(&self) -> Result<()> {
        for (e, _) in &self.perturbs {
            if *e >= self.level {
                return Err(Error::Internal(
                    "lattice perturbation at or above the tail level".into(),
                ));
            }
        }
        Ok(())
    }

    /// Dimension over the ground field of the slot at exponent `e`.
    fn slot_dim(&self, field: &CoeffField, e: i64) -> usize {
        for (pe, basis) in &self.perturbs {
            if *pe == e {
                return rank_over_base(field, basis);
            }
        }
        if e >= self.level {
            field.degree_over_base()
        } else {
            0
        }
    }

    fn min_slot(&self) -> i64 {
        self.perturbs
            .iter()
            .map(|(e, _)| *e)
            .min()
            .unwrap_or(self.level)
            .min(self.level)
    }
}

/// A lattice: 1-D, or a vector of lines across the `u`-window of a
/// truncated quotient `O_lo / O_hi`.
#[derive(Debug, Clone, PartialEq)]
pub enum Lattice {
    One(LatticeLine),
    Two {
        ulo: i64,
        uhi: i64,
        lines: Vec<LatticeLine>,
    },
}

impl Lattice {
    pub fn pure_line(level: i64) -> Self {
        Lattice::One(LatticeLine::pure(level))
    }

    /// Canonical base of the quotient window `[ulo, uhi)`: `t`-level zero
    /// at every `u`-level.
    pub fn canonical_window(ulo: i64, uhi: i64) -> Self {
        Lattice::Two {
            ulo,
            uhi,
            lines: (ulo..uhi).map(|_| LatticeLine::pure(0)).collect(),
        }
    }

    pub fn window_lines(ulo: i64, uhi: i64, lines: Vec<LatticeLine>) -> Result<Self> {
        if lines.len() != (uhi - ulo).max(0) as usize {
            return Err(Error::Internal("window/line count mismatch".into()));
        }
        Ok(Lattice::Two { ulo, uhi, lines })
    }
}

fn rank_over_base(field: &CoeffField, basis: &[Vec<Scalar>]) -> usize {
    let base = if field.tower().is_empty() {
        field.clone()
    } else {
        // scalars in coordinate vectors live at the ground level
        let mut f = field.clone();
        while !f.tower().is_empty() {
            f = f.subfield();
        }
        f
    };
    let mut pivots: Vec<Vec<Scalar>> = Vec::new();
    for v in basis {
        let mut row = v.clone();
        for p in &pivots {
            let lead = p.iter().position(|c| !base.is_zero(c)).unwrap();
            if !base.is_zero(&row[lead]) {
                let factor = base.div(&row[lead], &p[lead]).unwrap();
                for (r, pc) in row.iter_mut().zip(p.iter()) {
                    let t = base.mul(&factor, pc);
                    *r = base.sub(r, &t);
                }
            }
        }
        if row.iter().any(|c| !base.is_zero(c)) {
            pivots.push(row);
        }
    }
    pivots.len()
}

/// The index `[A|B]_1`, counted over the ground field `k`.
pub fn index1(field: &CoeffField, a: &Lattice, b: &Lattice) -> Result<i64> {
    match (a, b) {
        (Lattice::One(la), Lattice::One(lb)) => index1_lines(field, la, lb),
        (
            Lattice::Two {
                ulo: alo,
                uhi: ahi,
                lines: al,
            },
            Lattice::Two {
                ulo: blo,
                uhi: bhi,
                lines: bl,
            },
        ) => {
            if alo != blo || ahi != bhi {
                return Err(Error::NonCommensurable);
            }
            let mut total = 0i64;
            for (la, lb) in al.iter().zip(bl.iter()) {
                total += index1_lines(field, la, lb)?;
            }
            Ok(total)
        }
        _ => Err(Error::NonCommensurable),
    }
}

fn index1_lines(field: &CoeffField, a: &LatticeLine, b: &LatticeLine) -> Result<i64> {
    a.check()?;
    b.check()?;
    let lo = a.min_slot().min(b.min_slot());
    let hi = a.level.max(b.level);
    let mut total = 0i64;
    for e in lo..hi {
        let da = a.slot_dim(field, e) as i64;
        let db = b.slot_dim(field, e) as i64;
        total += db - da;
    }
    Ok(total)
}

/// A dimension theory `d` with `d(base) = offset`; evaluation extends by
/// `d(U) = offset + [base|U]_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimTheory {
    pub field: CoeffField,
    pub base: Lattice,
    pub offset: i64,
}

impl DimTheory {
    pub fn of_lattice(field: CoeffField, base: Lattice) -> Self {
        DimTheory {
            field,
            base,
            offset: 0,
        }
    }

    pub fn eval(&self, u: &Lattice) -> Result<i64> {
        Ok(self.offset + index1(&self.field, &self.base, u)?)
    }

    pub fn add_offset(&self, n: i64) -> DimTheory {
        DimTheory {
            field: self.field.clone(),
            base: self.base.clone(),
            offset: self.offset + n,
        }
    }
}

/// A torsor element between the standard lattices `O_from` and `O_to`,
/// pinned to an integer against the canonical window bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsorElem {
    pub from_level: i64,
    pub to_level: i64,
    pub value: i64,
}

impl TorsorElem {
    pub fn new(from_level: i64, to_level: i64, value: i64) -> Self {
        TorsorElem {
            from_level,
            to_level,
            value,
        }
    }

    /// Composition with endpoint checking; pinned values add.
    pub fn compose(&self, next: &TorsorElem) -> Result<TorsorElem> {
        if self.to_level != next.from_level {
            return Err(Error::Internal(format!(
                "torsor endpoints do not chain: {} vs {}",
                self.to_level, next.from_level
            )));
        }
        Ok(TorsorElem::new(
            self.from_level,
            next.to_level,
            self.value + next.value,
        ))
    }

    pub fn add(&self, n: i64) -> TorsorElem {
        TorsorElem::new(self.from_level, self.to_level, self.value + n)
    }
}

/// Data needed to transport pinned torsor elements by multiplication by `g`.
pub struct Transport {
    pub g: Elem2D,
    pub g_inv: Elem2D,
    pub nu2: i64,
}

impl Transport {
    pub fn new(g: &Elem2D) -> Result<Self> {
        let nu2 = g.nu2()?;
        let g_inv = g.inverse()?;
        Ok(Transport {
            g: g.clone(),
            g_inv,
            nu2,
        })
    }

    /// Transports `d` to `[g O_from | g O_to]`, adjusting the pin by the two
    /// index corrections of the moved canonical bases.
    pub fn act(&self, d: &TorsorElem) -> Result<TorsorElem> {
        self.act_with_margin(d, 2)
    }

    /// Same with an explicit window margin; the result is margin-independent
    /// (deepening invariance), which the tests assert.
    pub fn act_with_margin(&self, d: &TorsorElem, margin: i64) -> Result<TorsorElem> {
        let a = self.nu2;
        let m1 = d.from_level;
        let m2 = d.to_level;
        let deep = [m1, m2, m1 + a, m2 + a]
            .iter()
            .copied()
            .max()
            .unwrap()
            + margin;
        let corr_to = index_g_image(&self.g_inv, &self.g, m2 + a, deep + a)?;
        let corr_from = index_g_image(&self.g, &self.g_inv, m1, deep)?;
        Ok(TorsorElem::new(
            m1 + a,
            m2 + a,
            d.value + corr_to + corr_from,
        ))
    }
}

/// `[ g * B(m, N) | B(m + nu2(g), N + nu2(g)) ]_1` inside the quotient
/// `O_(m+nu2) / O_(N+nu2)`, over the ground field.
///
/// `B(lo, hi)` is the canonical window base (t-level zero per u-level).
/// The computation reduces to exact linear algebra over `k'`: generator
/// images `g t^i u^j` are certified to lie inside the target base for `i`
/// past a cutoff derived from the component valuations of `g`, deep pure
/// vectors are certified to lie inside the image via `g^-1`, and the index
/// is `[k':k] * (dim pi(B) - rank pi(A))` on the finite window between the
/// cutoffs.
pub fn index_g_image(g: &Elem2D, g_inv: &Elem2D, m: i64, n_deep: i64) -> Result<i64> {
    let field = g.field.clone();
    let r = field.degree_over_base() as i64;
    let a = g.nu2()?;
    let lw = n_deep - m;
    if lw <= 0 {
        return Ok(0);
    }
    // relevant components of g: levels l with some j in [m, n_deep) and
    // j + l < n_deep + a, i.e. l in [a, a + lw)
    let comp_ords = component_ords(g, a, lw)?;
    let inv_ords = component_ords(g_inv, -a, lw)?;

    let min_ord = comp_ords.iter().filter_map(|o| *o).min().unwrap_or(0).min(0);
    let i1 = inv_ords
        .iter()
        .filter_map(|o| o.map(|v| -v))
        .max()
        .unwrap_or(0)
        .max(0);
    let i2 = (i1 - min_ord).max(0);
    let e_lo = min_ord.min(0);

    // every used component must be known through t-exponent i1
    for (idx, o) in comp_ords.iter().enumerate() {
        if o.is_some() {
            let c = g.u_coeff(a + idx as i64);
            if c.prec < i1 {
                return Err(Error::IndeterminateAtPrecision);
            }
        }
    }

    // coordinates: (u-level offset in [0, lw)) x (t-exponent in [e_lo, i1))
    let tw = (i1 - e_lo).max(0);
    let coord = |lvl_off: i64, e: i64| -> u32 { (lvl_off * tw + (e - e_lo)) as u32 };

    let mut elim = Elimination::new(field.clone());
    for j in m..n_deep {
        for i in 0..i2 {
            // generator g * t^i u^j, image in the window
            let mut vec: Vec<(u32, Scalar)> = Vec::new();
            for (idx, o) in comp_ords.iter().enumerate() {
                if o.is_none() {
                    continue;
                }
                let l = a + idx as i64;
                let lvl = j + l;
                if lvl >= n_deep + a {
                    continue;
                }
                let comp = g.u_coeff(l);
                let lvl_off = lvl - (m + a);
                for e in comp.low.max(e_lo - i)..(i1 - i).min(comp.low + comp.coeffs.len() as i64) {
                    let c = comp.coeff_at(e);
                    if field.is_zero(&c) {
                        continue;
                    }
                    let te = e + i;
                    if te < e_lo || te >= i1 {
                        continue;
                    }
                    vec.push((coord(lvl_off, te), c));
                }
            }
            elim.insert(vec);
        }
    }
    let rank_a = elim.rank() as i64;
    let dim_b = lw * i1;
    Ok(r * (dim_b - rank_a))
}

/// For each component level `l = nu2 + idx`, `idx < lw`: `Some(lower bound
/// on the order)`, or `None` when exactly zero. A component that is zero
/// through its finite precision contributes its precision as the bound
/// (sound: its unknown tail starts there). Errors when the window outruns
/// the stored `u`-precision.
fn component_ords(g: &Elem2D, nu2: i64, lw: i64) -> Result<Vec<Option<i64>>> {
    if g.uprec < nu2 + lw {
        return Err(Error::WindowTooSmall);
    }
    let mut out = Vec::new();
    for idx in 0..lw {
        let c = g.u_coeff(nu2 + idx);
        if c.is_exact_zero() {
            out.push(None);
        } else if c.coeffs.is_empty() {
            // zero through precision: the true order is at least c.prec
            out.push(Some(c.prec));
        } else {
            out.push(Some(c.valuation()?));
        }
    }
    Ok(out)
}

/// Sparse Gaussian elimination over `k'`, insertion-with-reduction.
struct Elimination {
    field: CoeffField,
    pivots: BTreeMap<u32, Vec<(u32, Scalar)>>,
}

impl Elimination {
    fn new(field: CoeffField) -> Self {
        Elimination {
            field,
            pivots: BTreeMap::new(),
        }
    }

    fn insert(&mut self, mut vec: Vec<(u32, Scalar)>) {
        vec.sort_by_key(|(c, _)| *c);
        // merge duplicate coordinates
        let f = self.field.clone();
        let mut merged: Vec<(u32, Scalar)> = Vec::with_capacity(vec.len());
        for (c, s) in vec {
            if let Some(last) = merged.last_mut() {
                if last.0 == c {
                    last.1 = f.add(&last.1, &s);
                    continue;
                }
            }
            merged.push((c, s));
        }
        merged.retain(|(_, s)| !f.is_zero(s));
        let mut row = merged;
        loop {
            let (lead_coord, lead_val) = match row.first() {
                Some((c, s)) => (*c, s.clone()),
                None => return,
            };
            match self.pivots.get(&lead_coord) {
                Some(p) => {
                    let factor = f.div(&lead_val, &p[0].1).unwrap();
                    row = sparse_sub_scaled(&f, &row, p, &factor);
                }
                None => {
                    self.pivots.insert(lead_coord, row);
                    return;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn sparse_sub_scaled(
    f: &CoeffField,
    a: &[(u32, Scalar)],
    b: &[(u32, Scalar)],
    factor: &Scalar,
) -> Vec<(u32, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let t = f.mul(factor, &b[j].1);
            let nv = f.neg(&t);
            if !f.is_zero(&nv) {
                out.push((b[j].0, nv));
            }
            j += 1;
        } else {
            let t = f.mul(factor, &b[j].1);
            let nv = f.sub(&a[i].1, &t);
            if !f.is_zero(&nv) {
                out.push((a[i].0, nv));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Brute-force dimension counting, independent of the closed-form index.
    //! Enumerates slot bases over the ground field on a finite window and
    //! computes `dim B/U - dim A/U` for a deep common sublattice `U`.

    use super::*;

    fn slot_basis(field: &CoeffField, line: &LatticeLine, e: i64) -> Vec<Vec<Scalar>> {
        for (pe, basis) in &line.perturbs {
            if *pe == e {
                return basis.clone();
            }
        }
        if e >= line.level {
            let r = field.degree_over_base();
            let base = {
                let mut f = field.clone();
                while !f.tower().is_empty() {
                    f = f.subfield();
                }
                f
            };
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| if i == j { base.one() } else { base.zero() })
                        .collect()
                })
                .collect()
        } else {
            vec![]
        }
    }

    /// `[A|B]_1` for 1-D lattices by enumeration on `[lo, deep)`.
    pub fn index1_lines_enumerated(
        field: &CoeffField,
        a: &LatticeLine,
        b: &LatticeLine,
    ) -> i64 {
        let lo = a.min_slot().min(b.min_slot());
        let deep = a.level.max(b.level); // beyond: slots equal (full)
        let r = field.degree_over_base();
        // coordinates: (e - lo) * r + base coordinate
        let dim_mod_u = |line: &LatticeLine| -> usize {
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            let base = {
                let mut f = field.clone();
                while !f.tower().is_empty() {
                    f = f.subfield();
                }
                f
            };
            for e in lo..deep {
                for v in slot_basis(field, line, e) {
                    let mut row = vec![base.zero(); ((deep - lo) as usize) * r];
                    for (j, c) in v.iter().enumerate() {
                        row[((e - lo) as usize) * r + j] = c.clone();
                    }
                    rows.push(row);
                }
            }
            rank_over_base(field, &rows)
        };
        dim_mod_u(b) as i64 - dim_mod_u(a) as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_prime_field, rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn index_examples() {
        let q = rationals();
        // A = t^2 k[[t]], B = k[[t]] -> 2
        let a = Lattice::pure_line(2);
        let b = Lattice::pure_line(0);
        assert_eq!(index1(&q, &a, &b).unwrap(), 2);
        assert_eq!(index1(&q, &a, &a).unwrap(), 0);
        // over k' = F_4, k = F_2: A = t k'[[t]], B = k'[[t]] -> [k':k] = 2
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2
            .make_extension(vec![f2.one(), f2.one(), f2.one()])
            .unwrap();
        let a4 = Lattice::pure_line(1);
        let b4 = Lattice::pure_line(0);
        assert_eq!(index1(&f4, &a4, &b4).unwrap(), 2);
        // enumeration oracle agrees
        assert_eq!(
            oracle::index1_lines_enumerated(&f4, &LatticeLine::pure(1), &LatticeLine::pure(0)),
            2
        );
    }

    fn random_line(field: &CoeffField, rng: &mut ChaCha8Rng) -> LatticeLine {
        let level = rng.gen_range(-3i64..=3);
        let r = field.degree_over_base();
        let base = {
            let mut f = field.clone();
            while !f.tower().is_empty() {
                f = f.subfield();
            }
            f
        };
        let mut perturbs = Vec::new();
        for _ in 0..rng.gen_range(0..3) {
            let e = level - rng.gen_range(1i64..=3);
            if perturbs.iter().any(|(pe, _)| *pe == e) {
                continue;
            }
            let nvec = rng.gen_range(0..=r);
            let basis: Vec<Vec<Scalar>> = (0..nvec)
                .map(|_| (0..r).map(|_| base.random(rng)).collect())
                .collect();
            perturbs.push((e, basis));
        }
        LatticeLine { level, perturbs }
    }

    #[test]
    fn cocycle_identity_randomized() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2
            .make_extension(vec![f2.one(), f2.one(), f2.one()])
            .unwrap();
        let q = rationals();
        let q2 = q
            .make_extension(vec![q.from_i64(-2), q.zero(), q.one()])
            .unwrap();
        for field in [f4, q2, make_prime_field(5).unwrap()] {
            let mut rng = ChaCha8Rng::seed_from_u64(97);
            for _ in 0..50 {
                let a = Lattice::One(random_line(&field, &mut rng));
                let b = Lattice::One(random_line(&field, &mut rng));
                let c = Lattice::One(random_line(&field, &mut rng));
                let ab = index1(&field, &a, &b).unwrap();
                let bc = index1(&field, &b, &c).unwrap();
                let ac = index1(&field, &a, &c).unwrap();
                assert_eq!(ab + bc, ac);
            }
        }
    }

    #[test]
    fn closed_form_matches_enumeration() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = f2
            .make_extension(vec![f2.one(), f2.one(), f2.one()])
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let a = random_line(&f4, &mut rng);
            let b = random_line(&f4, &mut rng);
            let fast = index1(&f4, &Lattice::One(a.clone()), &Lattice::One(b.clone())).unwrap();
            let slow = oracle::index1_lines_enumerated(&f4, &a, &b);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn dim_eval_examples() {
        let q = rationals();
        // d_W with W = k[[t]]: d(t^-1 k[[t]]) = [W|U]_1 = 1
        let d = DimTheory::of_lattice(q.clone(), Lattice::pure_line(0));
        assert_eq!(d.eval(&Lattice::pure_line(-1)).unwrap(), 1);
        assert_eq!(d.eval(&Lattice::pure_line(0)).unwrap(), 0);
        let d5 = d.add_offset(5);
        assert_eq!(d5.eval(&Lattice::pure_line(0)).unwrap(), 5);
    }

    #[test]
    fn torsor_offset_commutes_with_eval() {
        // Dim(V) is a Z-torsor: adding n to the offset then evaluating
        // equals evaluating then adding n
        let q = rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let base = Lattice::One(random_line(&q, &mut rng));
            let u = Lattice::One(random_line(&q, &mut rng));
            let d = DimTheory::of_lattice(q.clone(), base);
            let n = rng.gen_range(-5i64..=5);
            assert_eq!(d.add_offset(n).eval(&u).unwrap(), d.eval(&u).unwrap() + n);
        }
    }

    #[test]
    fn transport_examples() {
        use crate::series::Elem2D;
        let q = rationals();
        // identity action fixes every pinned element
        let one = Elem2D::one(q.clone());
        let t1 = Transport::new(&one).unwrap();
        let d = TorsorElem::new(0, -1, 5);
        assert_eq!(t1.act(&d).unwrap(), d);
        // u shifts the endpoint lattices, value preserved
        let u = Elem2D::monomial(q.clone(), q.one(), 0, 1);
        let tu = Transport::new(&u).unwrap();
        let d0 = TorsorElem::new(0, 0, 0);
        assert_eq!(tu.act(&d0).unwrap(), TorsorElem::new(1, 1, 0));
        // t^-1 on [O_0 | O_-1]: the pin moves by +[k':k] under this
        // pinning convention (the commutator values it feeds are the
        // invariant content and are pinned by the central tests)
        let tinv = Elem2D::monomial(q.clone(), q.one(), -1, 0);
        let tt = Transport::new(&tinv).unwrap();
        let d1 = TorsorElem::new(0, -1, 4);
        assert_eq!(tt.act(&d1).unwrap(), TorsorElem::new(0, -1, 5));
    }

    #[test]
    fn two_dim_index_and_commensurability() {
        let q = rationals();
        let a = Lattice::canonical_window(0, 3);
        let b = Lattice::window_lines(
            0,
            3,
            vec![
                LatticeLine::pure(-1),
                LatticeLine::pure(2),
                LatticeLine::pure(0),
            ],
        )
        .unwrap();
        // per level: r*(a_level - b_level) = (0-(-1)) + (0-2) + 0 = -1
        assert_eq!(index1(&q, &a, &b).unwrap(), -1);
        // mismatched windows are rejected
        let c = Lattice::canonical_window(0, 2);
        assert_eq!(index1(&q, &a, &c), Err(Error::NonCommensurable));
        let one = Lattice::pure_line(0);
        assert_eq!(index1(&q, &a, &one), Err(Error::NonCommensurable));
    }
}
