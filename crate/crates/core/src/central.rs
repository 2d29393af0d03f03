//! The central extension of multiplication operators by `Z`, its group law,
//! and the commutator of commuting lifts.
//!
//! A lifted element is a pair `(g, d)` with `g` an invertible series acting
//! by multiplication and `d` a pinned torsor element from the base lattice
//! `O_w` to `g O_w`. Multiplication follows
//! `(g1, d1)(g2, d2) = (g1 g2, d1 . g1(d2))`; the commutator of two lifts of
//! commuting elements is the integer difference of the two product pins and
//! is independent of the chosen lifts, of the base lattice, and of the
//! window depth. For multiplication operators it recovers
//! `[k':k] * nu_L(f, g)`.

use crate::dimtheory::{Transport, TorsorElem};
use crate::error::{Error, Result};
use crate::series::Elem2D;

/// A lift `(g, d)` of a multiplication operator into the extension over the
/// base lattice `O_(d.from_level)`.
#[derive(Debug, Clone)]
pub struct LiftedElem {
    pub g: Elem2D,
    pub d: TorsorElem,
}

impl LiftedElem {
    /// The pinned-zero lift of `g` over the base `O_w`; the canonical
    /// section used by the cocycle tests.
    pub fn canonical(g: &Elem2D, w: i64) -> Result<Self> {
        let nu2 = g.nu2()?;
        Ok(LiftedElem {
            g: g.clone(),
            d: TorsorElem::new(w, w + nu2, 0),
        })
    }

    pub fn with_pin(g: &Elem2D, w: i64, pin: i64) -> Result<Self> {
        let nu2 = g.nu2()?;
        Ok(LiftedElem {
            g: g.clone(),
            d: TorsorElem::new(w, w + nu2, pin),
        })
    }

    /// Group law `(g1, d1)(g2, d2) = (g1 g2, d1 . g1(d2))`.
    pub fn mul(&self, other: &LiftedElem) -> Result<LiftedElem> {
        let t = Transport::new(&self.g)?;
        let moved = t.act(&other.d)?;
        Ok(LiftedElem {
            g: self.g.mul(&other.g),
            d: self.d.compose(&moved)?,
        })
    }
}

/// The commutator `<f, g>` over the base lattice `O_w`: pins of `f'g'` and
/// `g'f'` for any lifts, subtracted. Equals `[k':k] * nu_L(f, g)`.
pub fn commutator(f: &Elem2D, g: &Elem2D, w: i64) -> Result<i64> {
    if f.is_exact_zero() || g.is_exact_zero() {
        return Err(Error::DivisionByZero);
    }
    let fl = LiftedElem::canonical(f, w)?;
    let gl = LiftedElem::canonical(g, w)?;
    let fg = fl.mul(&gl)?;
    let gf = gl.mul(&fl)?;
    if fg.d.from_level != gf.d.from_level || fg.d.to_level != gf.d.to_level {
        return Err(Error::Internal("commutator endpoints differ".into()));
    }
    Ok(fg.d.value - gf.d.value)
}

/// The cocycle of the canonical pinned-zero section: `c(a, b)` is the pin of
/// `sigma(a) sigma(b)`. For any section, `c(a,b) - c(b,a)` is the
/// commutator.
pub fn section_cocycle(a: &Elem2D, b: &Elem2D, w: i64) -> Result<i64> {
    let al = LiftedElem::canonical(a, w)?;
    let bl = LiftedElem::canonical(b, w)?;
    Ok(al.mul(&bl)?.d.value)
}

/// One factor of a finite product of two-dimensional local fields: the
/// component of each element in that factor, and the factor's base lattice.
#[derive(Debug, Clone)]
pub struct ProductFactor {
    pub f: Elem2D,
    pub g: Elem2D,
    pub w: i64,
}

/// A lifted element over a finite product `M = prod L_i` with base
/// `W = prod W_i`: per-factor group components sharing a single integer pin.
#[derive(Debug, Clone)]
pub struct ProductLifted {
    pub parts: Vec<Elem2D>,
    pub endpoints: Vec<(i64, i64)>,
    pub value: i64,
}

impl ProductLifted {
    pub fn canonical(parts: &[Elem2D], ws: &[i64]) -> Result<Self> {
        let mut endpoints = Vec::new();
        for (p, w) in parts.iter().zip(ws) {
            endpoints.push((*w, *w + p.nu2()?));
        }
        Ok(ProductLifted {
            parts: parts.to_vec(),
            endpoints,
            value: 0,
        })
    }

    /// Product group law: transports act factorwise, pins add across the
    /// whole product (the kernels `Z + Z -> Z` are summed).
    pub fn mul(&self, other: &ProductLifted) -> Result<ProductLifted> {
        if self.parts.len() != other.parts.len() {
            return Err(Error::Internal("product arity mismatch".into()));
        }
        let mut parts = Vec::new();
        let mut endpoints = Vec::new();
        let mut value = self.value + other.value;
        for i in 0..self.parts.len() {
            let t = Transport::new(&self.parts[i])?;
            let d2 = TorsorElem::new(other.endpoints[i].0, other.endpoints[i].1, 0);
            let moved = t.act(&d2)?;
            if self.endpoints[i].1 != moved.from_level {
                return Err(Error::Internal("product endpoints do not chain".into()));
            }
            value += moved.value;
            parts.push(self.parts[i].mul(&other.parts[i]));
            endpoints.push((self.endpoints[i].0, moved.to_level));
        }
        Ok(ProductLifted {
            parts,
            endpoints,
            value,
        })
    }
}

/// Commutator over a finite product, computed through the product group law
/// with a single shared pin.
pub fn commutator_product(factors: &[ProductFactor]) -> Result<i64> {
    if factors.is_empty() {
        return Ok(0);
    }
    let fs: Vec<Elem2D> = factors.iter().map(|x| x.f.clone()).collect();
    let gs: Vec<Elem2D> = factors.iter().map(|x| x.g.clone()).collect();
    let ws: Vec<i64> = factors.iter().map(|x| x.w).collect();
    let fl = ProductLifted::canonical(&fs, &ws)?;
    let gl = ProductLifted::canonical(&gs, &ws)?;
    let fg = fl.mul(&gl)?;
    let gf = gl.mul(&fl)?;
    Ok(fg.value - gf.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_prime_field, rationals, CoeffField};
    use crate::series::{nu_symbol, Elem2D};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn el(field: &CoeffField, terms: &[(i64, i64, i64)], tprec: i64, uprec: i64) -> Elem2D {
        let tt: Vec<(i64, i64, crate::coeff::Scalar)> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, field.from_i64(c)))
            .collect();
        Elem2D::from_terms(field.clone(), &tt, tprec, uprec)
    }

    #[test]
    fn commutator_t_u_is_one() {
        let q = rationals();
        let t = el(&q, &[(1, 0, 1)], 16, 16);
        let u = el(&q, &[(0, 1, 1)], 16, 16);
        assert_eq!(commutator(&t, &u, 0).unwrap(), 1);
        // degree shift against the residue valuation: (t, u^-1) -> -1
        let uinv = el(&q, &[(0, -1, 1)], 16, 16);
        assert_eq!(commutator(&t, &uinv, 0).unwrap(), -1);
    }

    #[test]
    fn commutator_splits_on_unit_stabilizers() {
        // f, g in Lbar^* x U^1_L stabilize O_L; the extension splits there
        let q = rationals();
        let f = el(&q, &[(0, 0, 2), (1, 0, 1), (1, 1, 3)], 16, 16);
        let g = el(&q, &[(0, 0, 1), (-2, 1, 5)], 16, 16);
        assert_eq!(commutator(&f, &g, 0).unwrap(), 0);
    }

    #[test]
    fn commutator_matches_symbol_with_units() {
        let q = rationals();
        // f = t^-1 + u = t^-1(1 + tu): nu = (-1, 0)
        let f = el(&q, &[(-1, 0, 1), (0, 1, 1)], 16, 16);
        let u = el(&q, &[(0, 1, 1)], 16, 16);
        assert_eq!(commutator(&f, &u, 0).unwrap(), -1);
        assert_eq!(nu_symbol(&f, &u).unwrap(), -1);
        // mixed monomials
        let a = el(&q, &[(2, -1, 1)], 16, 16);
        let b = el(&q, &[(1, 1, 3)], 16, 16);
        assert_eq!(
            commutator(&a, &b, 0).unwrap(),
            nu_symbol(&a, &b).unwrap()
        );
    }

    fn random_supported(field: &CoeffField, rng: &mut ChaCha8Rng, prec: i64) -> Elem2D {
        // t^c * (nonzero constant + higher unit terms) * u^a
        let c = rng.gen_range(-2i64..=2);
        let a = rng.gen_range(-2i64..=2);
        let mut c0 = field.random(rng);
        while field.is_zero(&c0) {
            c0 = field.random(rng);
        }
        let mut terms = vec![(0i64, 0i64, c0)];
        for _ in 0..rng.gen_range(0..3) {
            let i = rng.gen_range(-2i64..=2);
            let j = rng.gen_range(1i64..=2);
            terms.push((i, j, field.random(rng)));
        }
        let unit = Elem2D::from_terms(field.clone(), &terms, prec, prec);
        unit.mul(&Elem2D::monomial(field.clone(), field.one(), c, a))
    }

    #[test]
    fn commutator_equals_symbol_randomized_f5() {
        let f5 = make_prime_field(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..25 {
            let f = random_supported(&f5, &mut rng, 64);
            let g = random_supported(&f5, &mut rng, 64);
            let c = commutator(&f, &g, 0).unwrap();
            let s = nu_symbol(&f, &g).unwrap();
            assert_eq!(c, s, "commutator vs symbol over F_5");
        }
    }

    #[test]
    fn commutator_equals_weighted_symbol_f25() {
        // k' = F_25 over k = F_5: weight [k':k] = 2 must appear
        let f5 = make_prime_field(5).unwrap();
        let f25 = f5
            .make_extension(vec![f5.from_i64(2), f5.zero(), f5.one()])
            .unwrap();
        let t = el(&f25, &[(1, 0, 1)], 16, 16);
        let u = el(&f25, &[(0, 1, 1)], 16, 16);
        assert_eq!(commutator(&t, &u, 0).unwrap(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        for _ in 0..10 {
            let f = random_supported(&f25, &mut rng, 64);
            let g = random_supported(&f25, &mut rng, 64);
            assert_eq!(
                commutator(&f, &g, 0).unwrap(),
                2 * nu_symbol(&f, &g).unwrap()
            );
        }
    }

    #[test]
    fn commutator_over_rational_tower() {
        // k' = Q(sqrt 2): the elimination runs over a characteristic-zero
        // tower and the weight [k':k] = 2 shows up
        let q = rationals();
        let q2 = q
            .make_extension(vec![q.from_i64(-2), q.zero(), q.one()])
            .unwrap();
        let t = el(&q2, &[(1, 0, 1)], 16, 16);
        let u = el(&q2, &[(0, 1, 1)], 16, 16);
        assert_eq!(commutator(&t, &u, 0).unwrap(), 2);
        let s2 = q2.generator();
        let f = Elem2D::from_terms(
            q2.clone(),
            &[(-1, 0, s2.clone()), (1, 1, q2.one())],
            32,
            32,
        );
        assert_eq!(
            commutator(&f, &u, 0).unwrap(),
            2 * nu_symbol(&f, &u).unwrap()
        );
    }

    #[test]
    fn base_lattice_independence() {
        let q = rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..10 {
            let f = random_supported(&q, &mut rng, 64);
            let g = random_supported(&q, &mut rng, 64);
            let c0 = commutator(&f, &g, 0).unwrap();
            let c2 = commutator(&f, &g, 2).unwrap();
            assert_eq!(c0, c2);
        }
    }

    #[test]
    fn lift_pin_independence() {
        // nonzero pins on both lifts cancel in the commutator
        let q = rationals();
        let t = el(&q, &[(1, 0, 1)], 16, 16);
        let u = el(&q, &[(0, 1, 1)], 16, 16);
        let fl = LiftedElem::with_pin(&t, 0, 7).unwrap();
        let gl = LiftedElem::with_pin(&u, 0, -3).unwrap();
        let fg = fl.mul(&gl).unwrap();
        let gf = gl.mul(&fl).unwrap();
        assert_eq!(fg.d.value - gf.d.value, 1);
    }

    #[test]
    fn window_margin_independence() {
        use crate::dimtheory::Transport;
        let q = rationals();
        let f = el(&q, &[(-1, 0, 1), (0, 1, 1)], 24, 24);
        let tr = Transport::new(&f).unwrap();
        let d = TorsorElem::new(0, 1, 0);
        let a2 = tr.act_with_margin(&d, 2).unwrap();
        let a5 = tr.act_with_margin(&d, 5).unwrap();
        assert_eq!(a2, a5);
    }

    #[test]
    fn cocycle_identity() {
        let q = rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(75);
        for _ in 0..10 {
            let a = random_supported(&q, &mut rng, 64);
            let b = random_supported(&q, &mut rng, 64);
            let cab = section_cocycle(&a, &b, 0).unwrap();
            let cba = section_cocycle(&b, &a, 0).unwrap();
            assert_eq!(cab - cba, commutator(&a, &b, 0).unwrap());
        }
    }

    #[test]
    fn bimultiplicative_and_skew() {
        let f7 = make_prime_field(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(76);
        for _ in 0..10 {
            let f = random_supported(&f7, &mut rng, 64);
            let h = random_supported(&f7, &mut rng, 64);
            let g = random_supported(&f7, &mut rng, 64);
            let lhs = commutator(&f.mul(&h), &g, 0).unwrap();
            let rhs = commutator(&f, &g, 0).unwrap() + commutator(&h, &g, 0).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(
                commutator(&f, &g, 0).unwrap(),
                -commutator(&g, &f, 0).unwrap()
            );
        }
    }

    #[test]
    fn product_additivity() {
        let q = rationals();
        // two copies of k((t))((u)): f = (t, t), g = (u, u) -> 1 + 1
        let t = el(&q, &[(1, 0, 1)], 16, 16);
        let u = el(&q, &[(0, 1, 1)], 16, 16);
        let factors = vec![
            ProductFactor {
                f: t.clone(),
                g: u.clone(),
                w: 0,
            },
            ProductFactor {
                f: t.clone(),
                g: u.clone(),
                w: 0,
            },
        ];
        assert_eq!(commutator_product(&factors).unwrap(), 2);
        // trivial component on factor 2
        let one = Elem2D::one(q.clone());
        let factors2 = vec![
            ProductFactor {
                f: t.clone(),
                g: u.clone(),
                w: 0,
            },
            ProductFactor {
                f: one.clone(),
                g: one.clone(),
                w: 0,
            },
        ];
        assert_eq!(commutator_product(&factors2).unwrap(), 1);
        // empty product
        assert_eq!(commutator_product(&[]).unwrap(), 0);
    }

    #[test]
    fn product_equals_sum_of_factors() {
        let f5 = make_prime_field(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10 {
            let n = rng.gen_range(2usize..=3);
            let mut factors = Vec::new();
            let mut expected = 0i64;
            for _ in 0..n {
                let f = random_supported(&f5, &mut rng, 64);
                let g = random_supported(&f5, &mut rng, 64);
                expected += commutator(&f, &g, 0).unwrap();
                factors.push(ProductFactor { f, g, w: 0 });
            }
            assert_eq!(commutator_product(&factors).unwrap(), expected);
        }
    }
}
