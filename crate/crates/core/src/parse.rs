//! Text surface: field specifications, polynomial and factored-function
//! grammars, and the canonical series forms with bit-exact round-trips.
//!
//! Grammar sketch (whitespace free between tokens):
//!   fieldspec := "Q" | "Fp:" nat ( "/" poly )*
//!   expr      := term ( "*" term )*
//!   term      := "(" poly ")" [ "^" int ]
//!   poly      := [ "-" ] monos ( ("+"|"-") monos )*
//!   monos     := factor ( "*" factor )*
//!   factor    := atom [ "^" nat ]
//!   atom      := var | literal | "(" poly ")"
//!   literal   := int | int "/" nat | "[" literal ("," literal)* "]"
//!
//! Series print as ascending sparse terms with an explicit precision
//! marker: `t^-1 + 2 + 3*t (O(t^5))`; two-dimensional elements are u-major
//! nested lists of parenthesized coefficient series. `inf` marks exact
//! values.

use crate::coeff::{CoeffField, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{Chart, FactoredFunction, HomPoly};
use crate::poly::Poly2;
use crate::series::{Elem2D, LaurentSeries, EXACT};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", b as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| Error::Syntax {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    /// Scalar literal over `field`.
    fn literal(&mut self, field: &CoeffField) -> Result<Scalar> {
        self.skip_ws();
        if self.peek() == Some(b'[') {
            self.expect(b'[')?;
            if field.tower().is_empty() {
                return self.err("bracket literal over a base field");
            }
            let sub = field.subfield();
            let mut coords = vec![self.literal(&sub)?];
            while self.eat(b',') {
                coords.push(self.literal(&sub)?);
            }
            self.expect(b']')?;
            let deg = field.tower().last().unwrap().degree();
            if coords.len() > deg {
                return self.err("too many coordinates for the extension degree");
            }
            coords.resize(deg, sub.zero());
            return Ok(Scalar::Ext(coords));
        }
        let n = self.integer()?;
        // rational only over the plain rationals
        if field.tower().is_empty()
            && field.characteristic() == 0
            && self.peek() == Some(b'/')
        {
            let save = self.pos;
            self.pos += 1;
            match self.integer() {
                Ok(d) if d != 0 => return field.from_rational(n, d),
                _ => {
                    self.pos = save;
                }
            }
        }
        Ok(field.from_i64(n))
    }
}

/// Parses a field specification: `Q`, `Fp:7`, `Fp:2/x^2+x+1`, with tower
/// steps separated by `/` (tower coefficients are written over the previous
/// level; rational literals with `/` are not accepted inside specs).
pub fn parse_field_spec(text: &str) -> Result<CoeffField> {
    let parts: Vec<&str> = text.split('/').collect();
    let base = parts[0].trim();
    let mut field = if base == "Q" {
        crate::coeff::rationals()
    } else if let Some(p) = base.strip_prefix("Fp:") {
        let p: u64 = p.trim().parse().map_err(|_| Error::Syntax {
            pos: 0,
            msg: format!("bad prime in field spec: {}", base),
        })?;
        crate::coeff::make_prime_field(p)?
    } else {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("bad field spec: {}", base),
        });
    };
    for step in &parts[1..] {
        let coeffs = parse_poly1_coeffs(step, &field)?;
        field = field.make_extension(coeffs)?;
    }
    Ok(field)
}

/// Univariate polynomial in `x` over `field`, as a coefficient vector.
pub fn parse_poly1_coeffs(text: &str, field: &CoeffField) -> Result<Vec<Scalar>> {
    let terms = parse_poly_multi(text, field, &["x"])?;
    let deg = terms.iter().map(|(e, _)| e[0]).max().unwrap_or(0);
    let mut coeffs = vec![field.zero(); deg as usize + 1];
    for (e, c) in terms {
        let idx = e[0] as usize;
        coeffs[idx] = field.add(&coeffs[idx], &c);
    }
    while coeffs.len() > 1 && field.is_zero(coeffs.last().unwrap()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Parses a polynomial in the given variables; returns raw terms.
pub fn parse_poly_multi(
    text: &str,
    field: &CoeffField,
    vars: &[&str],
) -> Result<Vec<(Vec<u32>, Scalar)>> {
    let mut cur = Cursor::new(text);
    let terms = poly_expr(&mut cur, field, vars)?;
    if !cur.at_end() {
        return cur.err("trailing input after polynomial");
    }
    Ok(terms)
}

type Terms = Vec<(Vec<u32>, Scalar)>;

fn poly_expr(cur: &mut Cursor, field: &CoeffField, vars: &[&str]) -> Result<Terms> {
    let mut total: Terms = Vec::new();
    let mut sign = if cur.eat(b'-') { -1i64 } else { 1 };
    loop {
        let term = mono_product(cur, field, vars)?;
        for (e, c) in term {
            let c = if sign < 0 { field.neg(&c) } else { c };
            total.push((e, c));
        }
        match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
                sign = 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -1;
            }
            _ => break,
        }
    }
    Ok(total)
}

fn mono_product(cur: &mut Cursor, field: &CoeffField, vars: &[&str]) -> Result<Terms> {
    let mut acc = atom_power(cur, field, vars)?;
    while cur.peek() == Some(b'*') {
        cur.pos += 1;
        let rhs = atom_power(cur, field, vars)?;
        acc = multiply_terms(field, &acc, &rhs);
    }
    Ok(acc)
}

fn multiply_terms(field: &CoeffField, a: &Terms, b: &Terms) -> Terms {
    let mut out = Vec::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.push((e, field.mul(ca, cb)));
        }
    }
    out
}

fn atom_power(cur: &mut Cursor, field: &CoeffField, vars: &[&str]) -> Result<Terms> {
    let base = atom(cur, field, vars)?;
    if cur.peek() == Some(b'^') {
        cur.pos += 1;
        let e = cur.integer()?;
        if e < 0 {
            return cur.err("negative exponent inside a polynomial");
        }
        let mut acc: Terms = vec![(vec![0; vars.len()], field.one())];
        for _ in 0..e {
            acc = multiply_terms(field, &acc, &base);
        }
        return Ok(acc);
    }
    Ok(base)
}

fn atom(cur: &mut Cursor, field: &CoeffField, vars: &[&str]) -> Result<Terms> {
    match cur.peek() {
        Some(b'(') => {
            cur.expect(b'(')?;
            let inner = poly_expr(cur, field, vars)?;
            cur.expect(b')')?;
            Ok(inner)
        }
        Some(c) if c.is_ascii_alphabetic() => {
            let start = cur.pos;
            while cur.pos < cur.text.len() && cur.text[cur.pos].is_ascii_alphanumeric() {
                cur.pos += 1;
            }
            let name = std::str::from_utf8(&cur.text[start..cur.pos]).unwrap();
            match vars.iter().position(|v| *v == name) {
                Some(i) => {
                    let mut e = vec![0u32; vars.len()];
                    e[i] = 1;
                    Ok(vec![(e, field.one())])
                }
                None => {
                    cur.pos = start;
                    cur.err(&format!("unknown variable '{}'", name))
                }
            }
        }
        Some(c) if c.is_ascii_digit() || c == b'[' || c == b'-' => {
            let lit = cur.literal(field)?;
            Ok(vec![(vec![0; vars.len()], lit)])
        }
        _ => cur.err("expected a polynomial atom"),
    }
}

fn terms_to_poly2(field: &CoeffField, terms: Terms) -> Poly2 {
    let mut p = Poly2::zero(field.clone());
    for (e, c) in terms {
        p.add_term((e[0], e[1]), c);
    }
    p
}

/// Polynomial in `x, y` over `field`.
pub fn parse_poly2(text: &str, field: &CoeffField) -> Result<Poly2> {
    Ok(terms_to_poly2(
        field,
        parse_poly_multi(text, field, &["x", "y"])?,
    ))
}

/// Homogeneous curve equation in `X, Y, Z`.
pub fn parse_curve(text: &str, field: &CoeffField) -> Result<HomPoly> {
    let terms = parse_poly_multi(text, field, &["X", "Y", "Z"])?;
    let mut degree = None;
    let mut map = std::collections::BTreeMap::new();
    for (e, c) in terms {
        if field.is_zero(&c) {
            continue;
        }
        let d = e[0] + e[1] + e[2];
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: "curve equation is not homogeneous".into(),
                })
            }
            _ => {}
        }
        let key = (e[0], e[1]);
        let entry = map.entry(key).or_insert_with(|| field.zero());
        *entry = field.add(entry, &c);
    }
    map.retain(|_, c: &mut Scalar| !field.is_zero(c));
    let degree = degree.ok_or(Error::Syntax {
        pos: 0,
        msg: "zero curve equation".into(),
    })?;
    Ok(HomPoly {
        field: field.clone(),
        degree,
        terms: map,
    })
}

/// Factored rational function in `x, y`: `(poly)^e * (poly)^e * ...`;
/// factors are refined to a squarefree pairwise-coprime list, and genuine
/// violations are rejected with a gcd witness.
pub fn parse_function_expr(text: &str, field: &CoeffField) -> Result<FactoredFunction> {
    let raw = parse_factor_list(text, field, &["x", "y"])?;
    let factors: Vec<(Poly2, i64)> = raw
        .into_iter()
        .map(|(t, e)| (terms_to_poly2(field, t), e))
        .collect();
    FactoredFunction::refine(field, Chart::Affine, factors)
}

fn parse_factor_list(
    text: &str,
    field: &CoeffField,
    vars: &[&str],
) -> Result<Vec<(Terms, i64)>> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    loop {
        cur.skip_ws();
        cur.expect(b'(')?;
        let inner = poly_expr(&mut cur, field, vars)?;
        cur.expect(b')')?;
        let e = if cur.peek() == Some(b'^') {
            cur.pos += 1;
            cur.integer()?
        } else {
            1
        };
        out.push((inner, e));
        if cur.eat(b'*') {
            continue;
        }
        break;
    }
    if !cur.at_end() {
        return cur.err("trailing input after factor list");
    }
    Ok(out)
}

/// Factored element of `L = k'((t))((u))`, built at the given precisions.
pub fn parse_element_expr(
    text: &str,
    field: &CoeffField,
    tprec: i64,
    uprec: i64,
) -> Result<Elem2D> {
    let raw = parse_factor_list(text, field, &["t", "u"])?;
    let mut acc = Elem2D::one(field.clone());
    for (terms, e) in raw {
        let el_terms: Vec<(i64, i64, Scalar)> = terms
            .into_iter()
            .map(|(ex, c)| (ex[0] as i64, ex[1] as i64, c))
            .collect();
        let factor = Elem2D::from_terms(field.clone(), &el_terms, tprec, uprec);
        acc = acc.mul(&factor.pow(e)?);
    }
    Ok(acc)
}

/// Point coordinates `x,y` over `field`.
pub fn parse_point(text: &str, field: &CoeffField) -> Result<(Scalar, Scalar)> {
    let mut cur = Cursor::new(text);
    let x = cur.literal(field)?;
    cur.expect(b',')?;
    let y = cur.literal(field)?;
    if !cur.at_end() {
        return cur.err("trailing input after point");
    }
    Ok((x, y))
}

// ---------------------------------------------------------------------------
// series printing and parsing
// ---------------------------------------------------------------------------

fn prec_string(p: i64) -> String {
    if p >= EXACT {
        "inf".into()
    } else {
        format!("{}", p)
    }
}

fn term_string(field: &CoeffField, c: &Scalar, var: &str, e: i64) -> String {
    let cs = field.scalar_to_string(c);
    if e == 0 {
        return cs;
    }
    let v = if e == 1 {
        var.to_string()
    } else {
        format!("{}^{}", var, e)
    };
    if cs == "1" {
        v
    } else {
        format!("{}*{}", cs, v)
    }
}

/// Canonical textual form: ascending sparse terms plus a precision marker.
pub fn print_series(s: &LaurentSeries) -> String {
    print_series_in(s, "t")
}

/// Same with a chosen variable letter (branch parametrizations print in `s`).
pub fn print_series_in(s: &LaurentSeries, var: &str) -> String {
    let f = &s.field;
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (i, c) in s.coeffs.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let e = s.low + i as i64;
        // pull a leading minus into the join when printing over Q
        let neg = f.neg(c);
        let cs = f.scalar_to_string(c);
        if cs.starts_with('-') {
            parts.push((true, term_string(f, &neg, var, e)));
        } else {
            parts.push((false, term_string(f, c, var, e)));
        }
    }
    let mut body = String::new();
    if parts.is_empty() {
        body.push('0');
    } else {
        for (i, (neg, txt)) in parts.iter().enumerate() {
            if i == 0 {
                if *neg {
                    body.push_str("- ");
                }
            } else if *neg {
                body.push_str(" - ");
            } else {
                body.push_str(" + ");
            }
            body.push_str(txt);
        }
    }
    format!("{} (O({}^{}))", body, var, prec_string(s.prec))
}

pub fn parse_series(text: &str, field: &CoeffField) -> Result<LaurentSeries> {
    let mut cur = Cursor::new(text);
    let s = series_body(&mut cur, field)?;
    if !cur.at_end() {
        return cur.err("trailing input after series");
    }
    Ok(s)
}

fn series_body(cur: &mut Cursor, field: &CoeffField) -> Result<LaurentSeries> {
    let mut terms: Vec<(i64, Scalar)> = Vec::new();
    let mut sign = if cur.eat(b'-') { -1 } else { 1 };
    loop {
        cur.skip_ws();
        if cur.peek() == Some(b'(') {
            break; // precision marker
        }
        let (e, c) = series_term(cur, field)?;
        let c = if sign < 0 { field.neg(&c) } else { c };
        terms.push((e, c));
        match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
                sign = 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -1;
            }
            _ => break,
        }
    }
    // (O(t^P))
    cur.expect(b'(')?;
    for b in *b"O(t^" {
        if !cur.eat(b) {
            return cur.err("expected precision marker O(t^..)");
        }
    }
    cur.skip_ws();
    let prec = if cur.peek() == Some(b'i') {
        for b in *b"inf" {
            if !cur.eat(b) {
                return cur.err("expected 'inf'");
            }
        }
        EXACT
    } else {
        cur.integer()?
    };
    cur.expect(b')')?;
    cur.expect(b')')?;
    // drop the explicit zero body
    let live: Vec<(i64, Scalar)> = terms
        .into_iter()
        .filter(|(_, c)| !field.is_zero(c))
        .collect();
    if live.is_empty() {
        if prec >= EXACT {
            return Ok(LaurentSeries::exact_zero(field.clone()));
        }
        return Ok(LaurentSeries::zero_to(field.clone(), prec));
    }
    Ok(LaurentSeries::from_terms(field.clone(), &live, prec).truncate_to(prec))
}

fn series_term(cur: &mut Cursor, field: &CoeffField) -> Result<(i64, Scalar)> {
    cur.skip_ws();
    let c = cur.peek();
    let coeff = match c {
        Some(b't') => field.one(),
        _ => {
            let lit = cur.literal(field)?;
            if cur.peek() == Some(b'*') {
                cur.pos += 1;
            } else {
                return Ok((0, lit));
            }
            lit
        }
    };
    if cur.peek() != Some(b't') {
        return cur.err("expected 't'");
    }
    cur.pos += 1;
    let e = if cur.peek() == Some(b'^') {
        cur.pos += 1;
        cur.integer()?
    } else {
        1
    };
    Ok((e, coeff))
}

/// Canonical u-major nested form for 2-D elements.
pub fn print_elem2d(x: &Elem2D) -> String {
    let mut parts = Vec::new();
    for (i, c) in x.ucoeffs.iter().enumerate() {
        let e = x.ulow + i as i64;
        parts.push(format!("({})*u^{}", print_series(c), e));
    }
    let body = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    };
    format!("{} (O(u^{}))", body, prec_string(x.uprec))
}

pub fn parse_elem2d(text: &str, field: &CoeffField) -> Result<Elem2D> {
    let mut cur = Cursor::new(text);
    let mut levels: Vec<(i64, LaurentSeries)> = Vec::new();
    loop {
        cur.skip_ws();
        let save = cur.pos;
        if cur.peek() != Some(b'(') {
            break;
        }
        // try "(series)*u^e" -- distinguish from the final "(O(u^P))"
        cur.pos += 1;
        if cur.peek() == Some(b'O') {
            cur.pos = save;
            break;
        }
        let s = series_body(&mut cur, field)?;
        cur.expect(b')')?;
        cur.expect(b'*')?;
        cur.expect(b'u')?;
        cur.expect(b'^')?;
        let e = cur.integer()?;
        levels.push((e, s));
        if cur.eat(b'+') {
            continue;
        }
        break;
    }
    if levels.is_empty() {
        // allow "0 (O(u^P))"
        cur.skip_ws();
        if cur.peek() == Some(b'0') {
            cur.pos += 1;
        }
    }
    for b in *b"(O(u^" {
        if !cur.eat(b) {
            return cur.err("expected precision marker O(u^..)");
        }
    }
    cur.skip_ws();
    let uprec = if cur.peek() == Some(b'i') {
        for b in *b"inf" {
            if !cur.eat(b) {
                return cur.err("expected 'inf'");
            }
        }
        EXACT
    } else {
        cur.integer()?
    };
    cur.expect(b')')?;
    cur.expect(b')')?;
    if !cur.at_end() {
        return cur.err("trailing input after element");
    }
    if levels.is_empty() {
        if uprec >= EXACT {
            return Ok(Elem2D::exact_zero(field.clone()));
        }
        return Ok(Elem2D::zero_to(field.clone(), uprec));
    }
    let ulow = levels.iter().map(|(e, _)| *e).min().unwrap();
    let uhigh = levels.iter().map(|(e, _)| *e).max().unwrap();
    let mut coeffs = vec![LaurentSeries::exact_zero(field.clone()); (uhigh - ulow + 1) as usize];
    for (e, s) in levels {
        coeffs[(e - ulow) as usize] = s;
    }
    Ok(Elem2D::new(field.clone(), ulow, coeffs, uprec))
}
