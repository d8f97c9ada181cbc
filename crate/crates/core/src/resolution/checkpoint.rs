//! Line-oriented text snapshots of a resolution.
//!
//! ```text
//! motivic-resolution-checkpoint
//! version 1
//! algebra A2
//! stem_max 14
//! f_max 8
//! hash <sha256 of everything after this line>
//! map f=1
//! gen 0 s=1 w=0
//! entry 0 0 dual(t0)
//! ```
//!
//! `gen` lines give the generators of `F_f` at internal degree `(s, w)`;
//! `entry <row> <col> <element>` is the coefficient of `d(col)` on the
//! generator `row` of `F_(f-1)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::algebra::{AlgebraKind, BiDegree};

use super::ground::GroundAlgebra;
use super::minimal::{ModuleElement, Resolution};
use super::ResolutionError;

const MAGIC: &str = "motivic-resolution-checkpoint";
const VERSION: u32 = 1;

fn digest(body: &str) -> String {
    format!("{:x}", Sha256::digest(body.as_bytes()))
}

pub fn write_checkpoint(r: &Resolution) -> String {
    let ground = r.ground();
    let mut body = String::new();
    for f in 1..=r.maps_built() {
        writeln!(body, "map f={f}").unwrap();
        for (id, d) in r.generators(f).iter().enumerate() {
            writeln!(body, "gen {id} s={} w={}", d.stem, d.weight).unwrap();
        }
        for (col, hd) in r.generators(f).iter().enumerate() {
            let mut by_row: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &(g, m) in r.differential(f, col) {
                by_row.entry(g).or_default().push(m);
            }
            for (row, terms) in by_row {
                let gd = r.generators(f - 1)[row];
                writeln!(body, "entry {row} {col} {}", ground.format(&terms, *hd - gd)).unwrap();
            }
        }
    }
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "version {VERSION}").unwrap();
    writeln!(out, "algebra {}", r.kind().tag()).unwrap();
    writeln!(out, "stem_max {}", r.stem_max()).unwrap();
    writeln!(out, "f_max {}", r.f_max()).unwrap();
    writeln!(out, "hash {}", digest(&body)).unwrap();
    out.push_str(&body);
    out
}

fn header_value<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str, ResolutionError> {
    line.and_then(|l| l.strip_prefix(key))
        .and_then(|l| l.strip_prefix(' '))
        .ok_or_else(|| ResolutionError::Checkpoint(format!("missing `{key}` header")))
}

fn parse_field<T: std::str::FromStr>(token: Option<&str>, key: &str, line: &str) -> Result<T, ResolutionError> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ResolutionError::Checkpoint(format!("bad line `{line}`")))
}

/// Restores a resolution, checking the hash, the algebra and the stem bound.
/// The result keeps the requested `f_max`.
pub fn read_checkpoint(
    text: &str,
    kind: AlgebraKind,
    stem_max: i32,
    f_max: u32,
) -> Result<Resolution, ResolutionError> {
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(ResolutionError::Checkpoint("not a resolution checkpoint".into()));
    }
    let version: u32 = header_value(lines.next(), "version")?
        .parse()
        .map_err(|_| ResolutionError::Checkpoint("bad version".into()))?;
    if version != VERSION {
        return Err(ResolutionError::Checkpoint(format!("unsupported version {version}")));
    }
    let algebra = header_value(lines.next(), "algebra")?;
    if algebra != kind.tag() {
        return Err(ResolutionError::Checkpoint(format!(
            "checkpoint is for {algebra}, not {}",
            kind.tag()
        )));
    }
    let saved_stem: i32 = header_value(lines.next(), "stem_max")?
        .parse()
        .map_err(|_| ResolutionError::Checkpoint("bad stem_max".into()))?;
    if saved_stem != stem_max {
        return Err(ResolutionError::Checkpoint(format!(
            "checkpoint covers stem {saved_stem}, requested {stem_max}"
        )));
    }
    header_value(lines.next(), "f_max")?;
    let hash = header_value(lines.next(), "hash")?.to_string();
    let header_len: usize = text.lines().take(6).map(|l| l.len() + 1).sum();
    let body = text.get(header_len..).unwrap_or("");
    if digest(body) != hash {
        return Err(ResolutionError::Checkpoint("hash mismatch".into()));
    }

    let ground = Arc::new(GroundAlgebra::new(kind)?);
    let mut generators: Vec<Vec<BiDegree>> = vec![vec![BiDegree::ZERO]];
    let mut differentials: Vec<Vec<ModuleElement>> = vec![Vec::new()];
    for line in body.lines() {
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("map") => {
                let f: usize = parse_field(tok.next(), "f=", line)?;
                if f != generators.len() {
                    return Err(ResolutionError::Checkpoint(format!("maps out of order at `{line}`")));
                }
                generators.push(Vec::new());
                differentials.push(Vec::new());
            }
            Some("gen") => {
                let f = generators.len() - 1;
                let id: usize = parse_field(tok.next(), "", line)?;
                let s: i32 = parse_field(tok.next(), "s=", line)?;
                let w: i32 = parse_field(tok.next(), "w=", line)?;
                if f == 0 || id != generators[f].len() {
                    return Err(ResolutionError::Checkpoint(format!("bad generator line `{line}`")));
                }
                generators[f].push(BiDegree::new(s, w));
                differentials[f].push(Vec::new());
            }
            Some("entry") => {
                let f = generators.len() - 1;
                let row: usize = parse_field(tok.next(), "", line)?;
                let col: usize = parse_field(tok.next(), "", line)?;
                let rest: Vec<&str> = tok.collect();
                let (Some(hd), Some(gd)) = (
                    generators[f].get(col).copied(),
                    generators.get(f.wrapping_sub(1)).and_then(|g| g.get(row)).copied(),
                ) else {
                    return Err(ResolutionError::Checkpoint(format!("entry out of range `{line}`")));
                };
                for m in ground.parse(&rest.join(" "), hd - gd)? {
                    differentials[f][col].push((row, m));
                }
            }
            _ => return Err(ResolutionError::Checkpoint(format!("unexpected line `{line}`"))),
        }
    }
    for diffs in &mut differentials {
        for d in diffs.iter_mut() {
            d.sort();
        }
    }
    Ok(Resolution::from_parts(
        ground,
        stem_max,
        f_max,
        generators,
        differentials,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{ext_chart, minimal_resolution};

    #[test]
    fn round_trip() {
        let r = minimal_resolution(AlgebraKind::A(1), 10, 4).unwrap();
        let text = write_checkpoint(&r);
        let back = read_checkpoint(&text, AlgebraKind::A(1), 10, 4).unwrap();
        assert_eq!(write_checkpoint(&back), text);
        assert_eq!(ext_chart(&back), ext_chart(&r));
    }

    #[test]
    fn resume_matches_fresh_run() {
        let mut partial = Resolution::new(AlgebraKind::A(1), 10, 5).unwrap();
        partial.step();
        partial.step();
        let text = write_checkpoint(&partial);
        let mut resumed = read_checkpoint(&text, AlgebraKind::A(1), 10, 5).unwrap();
        resumed.run::<()>(|_| Ok(())).unwrap();
        let fresh = minimal_resolution(AlgebraKind::A(1), 10, 5).unwrap();
        assert_eq!(write_checkpoint(&resumed), write_checkpoint(&fresh));
    }

    #[test]
    fn tampering_is_detected() {
        let r = minimal_resolution(AlgebraKind::E(1), 6, 2).unwrap();
        let text = write_checkpoint(&r).replace("gen 0 s=1 w=0", "gen 0 s=1 w=1");
        assert!(matches!(
            read_checkpoint(&text, AlgebraKind::E(1), 6, 2),
            Err(ResolutionError::Checkpoint(_))
        ));
        let good = write_checkpoint(&r);
        assert!(read_checkpoint(&good, AlgebraKind::E(2), 6, 2).is_err());
        assert!(read_checkpoint(&good, AlgebraKind::E(1), 7, 2).is_err());
    }
}
