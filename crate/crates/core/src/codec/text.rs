//! `.magtxt`: a two-line text form of a MAG.
//!
//! ```text
//! tau: 2 1 2
//! edges: 0 3
//! ```
//!
//! Edge indices are written in ascending order, separated by single spaces,
//! and each line ends with `\n`. An empty edge set is written as `edges:`.

use crate::error::{MagError, Result};
use crate::mag::{make_mag_with_cap, CompanionTuple, SimpleMag, SizeCap};

pub fn write_magtxt(mag: &SimpleMag) -> String {
    let mut out = String::from("tau:");
    for s in mag.tau().sizes() {
        out.push(' ');
        out.push_str(&s.to_string());
    }
    out.push_str("\nedges:");
    for e in mag.edge_indices() {
        out.push(' ');
        out.push_str(&e.0.to_string());
    }
    out.push('\n');
    out
}

pub fn parse_magtxt(text: &str) -> Result<SimpleMag> {
    parse_magtxt_with_cap(text, SizeCap::default())
}

pub fn parse_magtxt_with_cap(text: &str, cap: SizeCap) -> Result<SimpleMag> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (tau_line, tau_text) = lines.next().ok_or(MagError::Parse {
        line: 1,
        msg: "missing `tau:` line".into(),
    })?;
    let sizes = parse_field(tau_line + 1, tau_text, "tau:")?;
    let (edge_line, edge_text) = lines.next().ok_or(MagError::Parse {
        line: tau_line + 2,
        msg: "missing `edges:` line".into(),
    })?;
    let edges = parse_field(edge_line + 1, edge_text, "edges:")?;
    if let Some((extra, _)) = lines.next() {
        return Err(MagError::Parse {
            line: extra + 1,
            msg: "unexpected content after `edges:`".into(),
        });
    }
    make_mag_with_cap(CompanionTuple::new(sizes)?, &edges, cap)
}

fn parse_field(line: usize, text: &str, key: &str) -> Result<Vec<u64>> {
    let rest = text.trim().strip_prefix(key).ok_or_else(|| MagError::Parse {
        line,
        msg: format!("expected a line starting with `{key}`"),
    })?;
    rest.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| MagError::Parse {
                line,
                msg: format!("`{tok}` is not a non-negative integer"),
            })
        })
        .collect()
}
