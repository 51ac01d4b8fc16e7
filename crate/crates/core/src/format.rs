//! Plain-text facet-list formats.
//!
//! A complex file:
//!
//! ```text
//! scx 1
//! dim 1
//! vertices 3
//! 1 2
//! 1 3
//! 2 3
//! ```
//!
//! An optional `sigma antipodal` line after the header declares `σ(k) = -k`.
//! Facets are ascending signed labels, one per line, sorted
//! lexicographically. `#` starts a comment line. The empty face is `{}`.
//!
//! A tower file is `scx-tower 1`, `levels <L>`, then for each level `i` a
//! `level i` line, a complex file, `ball_B i` and `ball_D i` facet sections,
//! and `apex i <label>`.

use std::fmt::Write as _;

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::cs::CsComplex;
use crate::error::{Error, Result};
use crate::tower::{Certificate, Tower, TowerLevel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFile {
    pub complex: SimplicialComplex,
    pub antipodal: bool,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn write_facets(out: &mut String, complex: &SimplicialComplex) {
    for f in complex.facets() {
        if f.is_empty() {
            out.push_str("{}\n");
            continue;
        }
        let labels: Vec<String> = f.labels().iter().map(i32::to_string).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
}

/// Canonical text for a complex.
pub fn write_complex(complex: &SimplicialComplex, antipodal: bool) -> String {
    let mut out = String::new();
    writeln!(out, "scx 1").unwrap();
    writeln!(out, "dim {}", complex.dim()).unwrap();
    writeln!(out, "vertices {}", complex.num_vertices()).unwrap();
    if antipodal {
        out.push_str("sigma antipodal\n");
    }
    write_facets(&mut out, complex);
    out
}

fn parse_facet(line: usize, text: &str) -> Result<Face> {
    if text == "{}" {
        return Ok(Face::empty());
    }
    let labels: Vec<i32> = text
        .split_whitespace()
        .map(|t| {
            t.parse::<i32>()
                .map_err(|e| perr(line, format!("bad label {t:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(perr(line, "facet labels must be strictly ascending"));
    }
    Face::from_labels(&labels).map_err(|e| perr(line, e.to_string()))
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        self.pos += 1;
        item
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(0, |x| x.0)
    }

    fn expect_kv(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, l) = self.next().ok_or_else(|| {
            perr(
                self.last_line(),
                format!("expected {key:?}, found end of file"),
            )
        })?;
        match l.split_once(' ') {
            Some((k, v)) if k == key => Ok((n, v.trim())),
            _ => Err(perr(n, format!("expected {key:?}, found {l:?}"))),
        }
    }

    fn facets(&mut self) -> Result<Vec<Face>> {
        let mut out = Vec::new();
        while let Some((n, l)) = self.peek() {
            if !(l == "{}" || l.starts_with(|c: char| c == '-' || c.is_ascii_digit())) {
                break;
            }
            out.push(parse_facet(n, l)?);
            self.pos += 1;
        }
        Ok(out)
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| perr(line, format!("bad number {s:?}")))
}

fn complex_body(lines: &mut Lines<'_>) -> Result<ComplexFile> {
    let (n, v) = lines.expect_kv("scx")?;
    if v != "1" {
        return Err(perr(n, format!("unsupported version {v:?}")));
    }
    let (dn, dim) = lines.expect_kv("dim")?;
    let dim: isize = parse_num(dn, dim)?;
    let (vn, verts) = lines.expect_kv("vertices")?;
    let verts: usize = parse_num(vn, verts)?;
    let antipodal = matches!(lines.peek(), Some((_, "sigma antipodal")));
    if antipodal {
        lines.pos += 1;
    }
    let facets = lines.facets()?;
    let complex = SimplicialComplex::from_facets(facets);
    if complex.dim() != dim {
        return Err(perr(
            dn,
            format!("declared dim {dim}, facets give {}", complex.dim()),
        ));
    }
    if complex.num_vertices() != verts {
        return Err(perr(
            vn,
            format!(
                "declared {verts} vertices, facets use {}",
                complex.num_vertices()
            ),
        ));
    }
    Ok(ComplexFile { complex, antipodal })
}

pub fn parse_complex(text: &str) -> Result<ComplexFile> {
    let mut lines = Lines::new(text);
    let file = complex_body(&mut lines)?;
    if let Some((n, l)) = lines.next() {
        return Err(perr(n, format!("unexpected line {l:?}")));
    }
    Ok(file)
}

pub fn write_tower(tower: &Tower) -> String {
    let mut out = String::new();
    writeln!(out, "scx-tower 1").unwrap();
    writeln!(out, "levels {}", tower.levels().len()).unwrap();
    for (i, level) in tower.levels().iter().enumerate() {
        writeln!(out, "level {i}").unwrap();
        out.push_str(&write_complex(level.sphere.complex(), true));
        writeln!(out, "ball_B {i}").unwrap();
        write_facets(&mut out, &level.cert.ball_b);
        writeln!(out, "ball_D {i}").unwrap();
        write_facets(&mut out, &level.cert.ball_d);
        writeln!(out, "apex {i} {}", level.cert.apex).unwrap();
    }
    out
}

pub fn parse_tower(text: &str) -> Result<Tower> {
    let mut lines = Lines::new(text);
    let (n, v) = lines.expect_kv("scx-tower")?;
    if v != "1" {
        return Err(perr(n, format!("unsupported version {v:?}")));
    }
    let (ln, count) = lines.expect_kv("levels")?;
    let count: usize = parse_num(ln, count)?;
    if count == 0 {
        return Err(perr(ln, "a tower needs at least one level"));
    }
    let mut levels = Vec::with_capacity(count);
    for i in 0..count {
        let index = |lines: &mut Lines<'_>, key: &str| -> Result<(usize, String)> {
            let (n, rest) = lines.expect_kv(key)?;
            let mut parts = rest.splitn(2, ' ');
            let got: usize = parse_num(n, parts.next().unwrap_or(""))?;
            if got != i {
                return Err(perr(n, format!("expected {key} {i}, found {key} {got}")));
            }
            Ok((n, parts.next().unwrap_or("").trim().to_string()))
        };
        index(&mut lines, "level")?;
        let (sn, _) = lines.peek().unwrap_or((lines.last_line(), ""));
        let file = complex_body(&mut lines)?;
        let sphere = CsComplex::new(file.complex).map_err(|e| perr(sn, e.to_string()))?;
        index(&mut lines, "ball_B")?;
        let ball_b = SimplicialComplex::from_facets(lines.facets()?);
        index(&mut lines, "ball_D")?;
        let ball_d = SimplicialComplex::from_facets(lines.facets()?);
        let (an, apex) = index(&mut lines, "apex")?;
        let apex = VertexId::new(parse_num(an, &apex)?).map_err(|e| perr(an, e.to_string()))?;
        levels.push(TowerLevel {
            sphere,
            cert: Certificate {
                ball_b,
                ball_d,
                apex,
            },
        });
    }
    if let Some((n, l)) = lines.next() {
        return Err(perr(n, format!("unexpected line {l:?}")));
    }
    Ok(Tower::from_levels(levels))
}
