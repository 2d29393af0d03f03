//! Property tests for the series layer and the text surface.

use parshin::coeff::{make_prime_field, rationals, Scalar};
use parshin::parse::{parse_elem2d, parse_series, print_elem2d, print_series};
use parshin::series::{Elem2D, LaurentSeries};
use proptest::prelude::*;

fn term_strategy() -> impl Strategy<Value = (i64, i64)> {
    (-5i64..7, -9i64..10)
}

proptest! {
    #[test]
    fn series_print_parse_round_trip(
        terms in proptest::collection::vec(term_strategy(), 0..6),
        prec in 4i64..16,
        over_q in any::<bool>(),
    ) {
        let field = if over_q { rationals() } else { make_prime_field(7).unwrap() };
        let tt: Vec<(i64, Scalar)> = terms
            .iter()
            .map(|&(e, c)| (e, field.from_i64(c)))
            .collect();
        let s = LaurentSeries::from_terms(field.clone(), &tt, prec).truncate_to(prec);
        let txt = print_series(&s);
        let back = parse_series(&txt, &field).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(print_series(&back), txt);
    }

    #[test]
    fn elem2d_print_parse_round_trip(
        terms in proptest::collection::vec(((-4i64..5), (-3i64..4), (-9i64..10)), 1..5),
        tprec in 4i64..12,
        uprec in 4i64..12,
    ) {
        let field = make_prime_field(11).unwrap();
        let tt: Vec<(i64, i64, Scalar)> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, field.from_i64(c)))
            .collect();
        let x = Elem2D::from_terms(field.clone(), &tt, tprec, uprec);
        let txt = print_elem2d(&x);
        let back = parse_elem2d(&txt, &field).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(print_elem2d(&back), txt);
    }

    #[test]
    fn series_ring_laws(
        a in proptest::collection::vec(term_strategy(), 0..5),
        b in proptest::collection::vec(term_strategy(), 0..5),
        c in proptest::collection::vec(term_strategy(), 0..5),
        prec in 6i64..14,
    ) {
        let field = make_prime_field(5).unwrap();
        let mk = |ts: &[(i64, i64)]| {
            let tt: Vec<(i64, Scalar)> = ts.iter().map(|&(e, cc)| (e, field.from_i64(cc))).collect();
            LaurentSeries::from_terms(field.clone(), &tt, prec).truncate_to(prec)
        };
        let (x, y, z) = (mk(&a), mk(&b), mk(&c));
        // commutativity and distributivity within the common window
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        let lhs = x.mul(&y.add(&z));
        let rhs = x.mul(&y).add(&x.mul(&z));
        prop_assert_eq!(lhs.truncate_to(rhs.prec), rhs.truncate_to(lhs.prec));
    }

    #[test]
    fn inverse_is_two_sided(
        terms in proptest::collection::vec(term_strategy(), 1..5),
        prec in 6i64..14,
    ) {
        let field = make_prime_field(5).unwrap();
        let tt: Vec<(i64, Scalar)> = terms.iter().map(|&(e, c)| (e, field.from_i64(c))).collect();
        let s = LaurentSeries::from_terms(field.clone(), &tt, prec).truncate_to(prec);
        prop_assume!(s.valuation().is_ok());
        let inv = s.inverse().unwrap();
        let prod = s.mul(&inv);
        // 1 + O(t^rel): the constant term is 1 and nothing else is stored
        prop_assert_eq!(prod.coeff_at(0), field.one());
        for e in prod.low..prod.low + prod.coeffs.len() as i64 {
            if e != 0 {
                prop_assert!(field.is_zero(&prod.coeff_at(e)));
            }
        }
    }
}
