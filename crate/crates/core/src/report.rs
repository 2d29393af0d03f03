//! Report serialization: a stable JSON tree with fixed, documented field
//! order, and a human-readable table. Identical inputs produce byte-equal
//! output.
//!
//! JSON integers are emitted as numbers while they fit a signed 64-bit
//! value and as decimal strings beyond (report values are produced as
//! 64-bit integers, so the string form is a documented escape hatch rather
//! than a live path).

use crate::geometry::Branch;
use crate::parse::print_series_in;
use crate::reciprocity::LawReport;

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Field order: law, field, f, g, locus, terms (id, branches, weight,
/// symbol, contribution), total, verdict.
pub fn law_report_json(r: &LawReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\"law\":\"{}\",\"field\":\"{}\",\"f\":\"{}\",\"g\":\"{}\",\"locus\":\"{}\",\"terms\":[",
        esc(r.law),
        esc(&r.field),
        esc(&r.f),
        esc(&r.g),
        esc(&r.locus)
    ));
    for (i, t) in r.terms.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"id\":\"{}\",\"branches\":{},\"weight\":{},\"symbol\":{},\"contribution\":{}}}",
            esc(&t.id),
            t.branches,
            t.weight,
            t.symbol,
            t.contribution
        ));
    }
    out.push_str(&format!(
        "],\"total\":{},\"verdict\":\"{}\"}}",
        r.total,
        if r.verdict { "pass" } else { "fail" }
    ));
    out
}

pub fn law_report_text(r: &LawReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} over {}\n", r.law, r.field));
    out.push_str(&format!("  f = {}\n  g = {}\n  at {}\n", r.f, r.g, r.locus));
    if r.terms.is_empty() {
        out.push_str("  (no contributing terms)\n");
    }
    for t in &r.terms {
        out.push_str(&format!(
            "  {:<40} branches {:>2}  weight {:>3}  symbol {:>5}  -> {:>5}\n",
            t.id, t.branches, t.weight, t.symbol, t.contribution
        ));
    }
    out.push_str(&format!(
        "  total = {}  [{}]\n",
        r.total,
        if r.verdict { "pass" } else { "FAIL" }
    ));
    out
}

/// Single-value reports for the symbol and commutator commands.
pub fn value_report_json(command: &str, field: &str, f: &str, g: &str, value: i64) -> String {
    format!(
        "{{\"command\":\"{}\",\"field\":\"{}\",\"f\":\"{}\",\"g\":\"{}\",\"value\":{}}}",
        esc(command),
        esc(field),
        esc(f),
        esc(g),
        value
    )
}

pub fn branches_report_json(field: &str, curve: &str, point: &str, branches: &[Branch]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\"command\":\"branches\",\"field\":\"{}\",\"curve\":\"{}\",\"point\":\"{}\",\"branches\":[",
        esc(field),
        esc(curve),
        esc(point)
    ));
    for (i, b) in branches.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"x\":\"{}\",\"y\":\"{}\",\"ram\":{},\"residue_degree\":{},\"field\":\"{}\"}}",
            esc(&print_series_in(&b.raw.x_series(), "s")),
            esc(&print_series_in(&b.raw.y_series(), "s")),
            b.ram_index(),
            b.residue_degree_total(),
            esc(&b.raw.field.spec_string())
        ));
    }
    out.push_str("]}");
    out
}

pub fn branches_report_text(curve: &str, point: &str, branches: &[Branch]) -> String {
    let mut out = String::new();
    out.push_str(&format!("branches of {} at {}\n", curve, point));
    for (i, b) in branches.iter().enumerate() {
        out.push_str(&format!(
            "  #{}: x(s) = {}\n      y(s) = {}\n      ram {}, residue degree {}, field {}\n",
            i,
            print_series_in(&b.raw.x_series(), "s"),
            print_series_in(&b.raw.y_series(), "s"),
            b.ram_index(),
            b.residue_degree_total(),
            b.raw.field.spec_string()
        ));
    }
    out
}
