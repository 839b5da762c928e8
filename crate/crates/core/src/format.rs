//! Plain-text instance files.
//!
//! ```text
//! # comment
//! field sqrt 15
//! name L6_4
//! dim 6
//! bracket 1 2 = 5:1
//! bracket 1 3 = 6:1
//! g 1 6 = 1
//! g 2 3 = 1
//! mu = 0
//! b0 = 1,0,0,0,0,0
//! xi 1 2 = 1
//! D 1 2 = 1
//! frame e1 = 0,0,0,0,0,1
//! ```
//!
//! Indices are 1-based. `bracket i j = k:c, ...` sets `[x_i, x_j] = Σ c x_k`;
//! `g i j` sets the symmetric Gram entry. `mu`, `b0`, `xi` and `D` describe
//! an extension of the algebra; `frame` lines name vectors. The `field`
//! header is required when any scalar involves `sqrt(d)`. Printing is
//! canonical: brackets and entries ordered by `(i, j)`, zeros omitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::catalog::Frame62;
use crate::doubleext::{AdaptedBasis, ExtensionStage};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::{zero_vector, Matrix, Vector};
use crate::metric::{BilinearForm, MetricLieAlgebra};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Instance {
    pub name: Option<String>,
    pub metric: MetricLieAlgebra,
    pub stage: Option<ExtensionStage>,
    pub frame: Vec<(String, Vector)>,
}

impl Instance {
    pub fn new(metric: MetricLieAlgebra) -> Self {
        Self {
            name: metric.algebra().name().map(str::to_string),
            metric,
            stage: None,
            frame: Vec::new(),
        }
    }

    pub fn with_stage(mut self, stage: ExtensionStage) -> Self {
        self.stage = Some(stage);
        self
    }

    pub fn with_frame62(mut self, f: &Frame62) -> Self {
        let mut named = vec![
            ("e1".to_string(), f.e1.clone()),
            ("ebar1".to_string(), f.ebar1.clone()),
            ("e2".to_string(), f.e2.clone()),
            ("ebar2".to_string(), f.ebar2.clone()),
        ];
        named.extend(f.z.iter().map(|v| ("z".to_string(), v.clone())));
        named.extend(f.b.iter().map(|v| ("b".to_string(), v.clone())));
        self.frame = named;
        self
    }

    pub fn with_adapted_basis(mut self, a: &AdaptedBasis) -> Self {
        let mut named = vec![("e".to_string(), a.e.clone()), ("ebar".to_string(), a.ebar.clone())];
        named.extend(a.b.iter().map(|v| ("b".to_string(), v.clone())));
        self.frame = named;
        self
    }

    fn frame_vectors(&self, label: &str) -> Vec<Vector> {
        self.frame
            .iter()
            .filter(|(l, _)| l == label)
            .map(|(_, v)| v.clone())
            .collect()
    }

    fn single(&self, label: &str) -> Option<Vector> {
        match self.frame_vectors(label).as_slice() {
            [v] => Some(v.clone()),
            _ => None,
        }
    }

    /// Frame lines `e1`, `ebar1`, `e2`, `ebar2`, `z`..., `b`..., if present.
    pub fn frame62(&self) -> Option<Frame62> {
        Some(Frame62 {
            e1: self.single("e1")?,
            ebar1: self.single("ebar1")?,
            e2: self.single("e2")?,
            ebar2: self.single("ebar2")?,
            z: self.frame_vectors("z"),
            b: self.frame_vectors("b"),
        })
    }

    /// Frame lines `e`, `ebar`, `b`..., if present.
    pub fn adapted_basis(&self) -> Option<AdaptedBasis> {
        Some(AdaptedBasis {
            e: self.single("e")?,
            ebar: self.single("ebar")?,
            b: self.frame_vectors("b"),
        })
    }

    pub fn to_text(&self) -> String {
        print(self)
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Parser {
    radicand: Option<u32>,
    field_line: usize,
}

impl Parser {
    fn scalar(&self, s: &str, line: usize) -> Result<Scalar> {
        let v: Scalar = s.parse().map_err(|e: String| perr(line, e))?;
        if let Some(d) = v.radicand() {
            match self.radicand {
                None => {
                    return Err(perr(line, format!("`{s}` needs a `field sqrt {d}` header")));
                }
                Some(f) if f != d => {
                    return Err(perr(
                        line,
                        format!("`{s}` lies outside the field declared on line {}", self.field_line),
                    ));
                }
                _ => {}
            }
        }
        Ok(v)
    }

    fn vector(&self, s: &str, n: usize, line: usize) -> Result<Vector> {
        let v: Vector = s
            .split(',')
            .map(|t| self.scalar(t, line))
            .collect::<Result<_>>()?;
        if v.len() != n {
            return Err(perr(line, format!("expected {n} entries, found {}", v.len())));
        }
        Ok(v)
    }
}

fn index(s: &str, n: usize, line: usize) -> Result<usize> {
    let i: usize = s
        .parse()
        .map_err(|_| perr(line, format!("`{s}` is not an index")))?;
    if i == 0 || i > n {
        return Err(perr(line, format!("index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn two_indices(words: &[&str], n: usize, line: usize) -> Result<(usize, usize)> {
    match words {
        [a, b] => Ok((index(a, n, line)?, index(b, n, line)?)),
        _ => Err(perr(line, "expected two indices")),
    }
}

/// Parses and validates an instance file.
pub fn parse(text: &str) -> Result<Instance> {
    let mut p = Parser {
        radicand: None,
        field_line: 0,
    };
    let mut name = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut brackets: BTreeMap<(usize, usize), (Vector, usize)> = BTreeMap::new();
    let mut gram: BTreeMap<(usize, usize), (Scalar, usize)> = BTreeMap::new();
    let mut mu: Option<Scalar> = None;
    let mut b0: Option<Vector> = None;
    let mut xi: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    let mut d: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    let mut stage_line = None;
    let mut frame = Vec::new();
    let mut seen_content = false;

    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, value) = match content.split_once('=') {
            Some((h, v)) => (h.trim(), Some(v.trim())),
            None => (content, None),
        };
        let words: Vec<&str> = head.split_whitespace().collect();
        if words.is_empty() {
            return Err(perr(line, "missing keyword"));
        }
        let need_dim = || dim.map(|(n, _)| n).ok_or_else(|| perr(line, "`dim` must come first"));
        let need_value = || value.ok_or_else(|| perr(line, "missing `=`"));
        match words[0] {
            "field" => {
                if seen_content {
                    return Err(perr(line, "`field` must be the first line"));
                }
                let d = match (words.as_slice(), value) {
                    (["field", "sqrt", d], None) => d
                        .parse::<u32>()
                        .map_err(|_| perr(line, format!("`{d}` is not a radicand")))?,
                    _ => return Err(perr(line, "expected `field sqrt d`")),
                };
                if d < 2 || !crate::scalar::is_square_free(d) {
                    return Err(perr(line, format!("radicand {d} is not a square-free integer > 1")));
                }
                p.radicand = Some(d);
                p.field_line = line;
            }
            "name" => {
                let rest = content["name".len()..].trim();
                if rest.is_empty() {
                    return Err(perr(line, "empty name"));
                }
                name = Some(rest.to_string());
            }
            "dim" => {
                if dim.is_some() {
                    return Err(perr(line, "repeated `dim`"));
                }
                let n = match (words.as_slice(), value) {
                    (["dim", n], None) => n
                        .parse::<usize>()
                        .ok()
                        .filter(|&n| n > 0)
                        .ok_or_else(|| perr(line, format!("`{n}` is not a positive dimension")))?,
                    _ => return Err(perr(line, "expected `dim n`")),
                };
                dim = Some((n, line));
            }
            "bracket" => {
                let n = need_dim()?;
                let (i, j) = two_indices(&words[1..], n, line)?;
                if i == j {
                    return Err(perr(line, "a bracket needs two distinct indices"));
                }
                let mut v = zero_vector(n);
                for term in need_value()?.split(',') {
                    let (k, c) = term
                        .split_once(':')
                        .ok_or_else(|| perr(line, format!("expected `k:c`, found `{}`", term.trim())))?;
                    let k = index(k.trim(), n, line)?;
                    v[k] += p.scalar(c, line)?;
                }
                let (key, v) = if i < j { ((i, j), v) } else { ((j, i), v.iter().map(|x| -x).collect()) };
                if brackets.insert(key, (v, line)).is_some() {
                    return Err(perr(line, format!("bracket ({}, {}) given twice", key.0 + 1, key.1 + 1)));
                }
            }
            "g" => {
                let n = need_dim()?;
                let (i, j) = two_indices(&words[1..], n, line)?;
                let key = (i.min(j), i.max(j));
                let s = p.scalar(need_value()?, line)?;
                if gram.insert(key, (s, line)).is_some() {
                    return Err(perr(line, format!("entry ({}, {}) given twice", key.0 + 1, key.1 + 1)));
                }
            }
            "mu" if words.len() == 1 => {
                need_dim()?;
                mu = Some(p.scalar(need_value()?, line)?);
                stage_line.get_or_insert(line);
            }
            "b0" if words.len() == 1 => {
                let n = need_dim()?;
                b0 = Some(p.vector(need_value()?, n, line)?);
                stage_line.get_or_insert(line);
            }
            "xi" | "D" => {
                let n = need_dim()?;
                let (i, j) = two_indices(&words[1..], n, line)?;
                let s = p.scalar(need_value()?, line)?;
                let target = if words[0] == "xi" { &mut xi } else { &mut d };
                if target.insert((i, j), s).is_some() {
                    return Err(perr(line, format!("{} ({}, {}) given twice", words[0], i + 1, j + 1)));
                }
                stage_line.get_or_insert(line);
            }
            "frame" => {
                let n = need_dim()?;
                let label = match words.as_slice() {
                    ["frame", label] => label.to_string(),
                    _ => return Err(perr(line, "expected `frame <label> = v1,...`")),
                };
                frame.push((label, p.vector(need_value()?, n, line)?));
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
        seen_content = true;
    }

    let (n, dim_line) = dim.ok_or_else(|| perr(0, "missing `dim`"))?;
    let first_bracket = brackets.values().map(|(_, l)| *l).min().unwrap_or(dim_line);
    let algebra = LieAlgebra::new(n, brackets.into_iter().map(|((i, j), (v, _))| (i, j, v)))
        .map_err(|e| perr(first_bracket, e.to_string()))?;
    let algebra = match &name {
        Some(s) => algebra.with_name(s.clone()),
        None => algebra,
    };
    let first_g = gram.values().map(|(_, l)| *l).min().unwrap_or(dim_line);
    let mut g = Matrix::zeros(n, n);
    for ((i, j), (s, _)) in gram {
        g.set(i, j, s.clone());
        g.set(j, i, s);
    }
    let form = BilinearForm::new(g).map_err(|e| perr(first_g, e.to_string()))?;
    let metric = MetricLieAlgebra::new(algebra, form).map_err(|e| perr(first_g, e.to_string()))?;

    let stage = stage_line.map(|_| {
        let fill = |m: BTreeMap<(usize, usize), Scalar>| {
            let mut out = Matrix::zeros(n, n);
            for ((i, j), s) in m {
                out.set(i, j, s);
            }
            out
        };
        ExtensionStage {
            xi: fill(xi),
            d: fill(d),
            mu: mu.unwrap_or_else(Scalar::zero),
            b0: b0.unwrap_or_else(|| zero_vector(n)),
        }
    });
    Ok(Instance {
        name,
        metric,
        stage,
        frame,
    })
}

/// Parses a file holding only extension lines (`mu`, `b0`, `xi`, `D`) for
/// a base of dimension `dim`. Full instance files are accepted as well.
pub fn parse_stage(text: &str, dim: usize) -> Result<ExtensionStage> {
    let has_dim = text
        .lines()
        .any(|l| l.split('#').next().unwrap_or("").split_whitespace().next() == Some("dim"));
    if has_dim {
        let inst = parse(text)?;
        if inst.metric.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: inst.metric.dim(),
            });
        }
        return inst
            .stage
            .ok_or_else(|| perr(0, "file has no `mu`, `b0`, `xi` or `D` lines"));
    }
    // Reuse the full parser with a synthetic header; line numbers shift by
    // the header length, so undo that in errors.
    let (field, rest): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| l.trim_start().starts_with("field"));
    let mut full = String::new();
    for f in &field {
        full.push_str(f);
        full.push('\n');
    }
    let _ = writeln!(full, "dim {dim}");
    for i in 1..=dim {
        let _ = writeln!(full, "g {i} {i} = 1");
    }
    let header = full.lines().count();
    for l in &rest {
        full.push_str(l);
        full.push('\n');
    }
    match parse(&full) {
        Ok(inst) => Ok(inst.stage.unwrap_or_else(|| ExtensionStage::zero(dim))),
        Err(Error::Parse { line, message }) if line > header => Err(Error::Parse {
            line: line - header + field.len(),
            message,
        }),
        Err(e) => Err(e),
    }
}

fn radicand_of<'a>(scalars: impl Iterator<Item = &'a Scalar>) -> Option<u32> {
    scalars.filter_map(Scalar::radicand).next()
}

fn format_list(v: &[Scalar]) -> String {
    v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(",")
}

/// Canonical text for an instance.
pub fn print(inst: &Instance) -> String {
    let mg = &inst.metric;
    let n = mg.dim();
    let g = mg.algebra();
    let gram = mg.form().gram();
    let mut all: Vec<&Scalar> = gram.entries().iter().collect();
    let brackets: Vec<(usize, usize, &Vector)> = g.nonzero_brackets().collect();
    for (_, _, v) in &brackets {
        all.extend(v.iter());
    }
    if let Some(s) = &inst.stage {
        all.extend(s.xi.entries());
        all.extend(s.d.entries());
        all.push(&s.mu);
        all.extend(s.b0.iter());
    }
    for (_, v) in &inst.frame {
        all.extend(v.iter());
    }

    let mut out = String::new();
    if let Some(d) = radicand_of(all.into_iter()) {
        let _ = writeln!(out, "field sqrt {d}");
    }
    if let Some(name) = &inst.name {
        let _ = writeln!(out, "name {name}");
    }
    let _ = writeln!(out, "dim {n}");
    for (i, j, v) in brackets {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{}:{c}", k + 1))
            .collect();
        let _ = writeln!(out, "bracket {} {} = {}", i + 1, j + 1, terms.join(", "));
    }
    for i in 0..n {
        for j in i..n {
            let s = gram.get(i, j);
            if !s.is_zero() {
                let _ = writeln!(out, "g {} {} = {s}", i + 1, j + 1);
            }
        }
    }
    if let Some(s) = &inst.stage {
        let _ = writeln!(out, "mu = {}", s.mu);
        let _ = writeln!(out, "b0 = {}", format_list(&s.b0));
        for (label, m) in [("xi", &s.xi), ("D", &s.d)] {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let x = m.get(i, j);
                    if !x.is_zero() {
                        let _ = writeln!(out, "{label} {} {} = {x}", i + 1, j + 1);
                    }
                }
            }
        }
    }
    for (label, v) in &inst.frame {
        let _ = writeln!(out, "frame {label} = {}", format_list(v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::q;

    const L64: &str = "\
# the L6_4 example
name L6_4
dim 6
bracket 1 2 = 5:1
bracket 1 3 = 6:1
bracket 2 4 = 6:1
g 1 6 = 1
g 2 3 = 1
g 4 4 = 1
g 5 5 = 1/3
";

    #[test]
    fn parses_and_prints_canonically() {
        let inst = parse(L64).unwrap();
        let expected = catalog::l64_metric(&q(0, 1), &q(1, 1), &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(inst.metric, expected);
        let text = print(&inst);
        assert_eq!(text, L64.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
        assert_eq!(parse(&text).unwrap(), inst);
    }

    #[test]
    fn line_numbered_errors() {
        let bad = "dim 3\nbracket 1 2 = 3:1\nbracket 1 x = 3:1\n";
        assert_eq!(parse(bad).unwrap_err(), Error::Parse { line: 3, message: "`x` is not an index".into() });
        let missing = "bracket 1 2 = 3:1\n";
        assert!(matches!(parse(missing), Err(Error::Parse { line: 1, .. })));
        let degenerate = "dim 2\ng 1 1 = 1\n";
        assert!(matches!(parse(degenerate), Err(Error::Parse { line: 2, .. })));
        let jacobi = "dim 3\nbracket 1 2 = 3:1\nbracket 1 3 = 1:1\ng 1 1 = 1\ng 2 2 = 1\ng 3 3 = 1\n";
        assert!(matches!(parse(jacobi), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn field_header_required() {
        let body = "dim 1\ng 1 1 = 1+sqrt(15)\n";
        assert!(matches!(parse(body), Err(Error::Parse { line: 2, .. })));
        let ok = format!("field sqrt 15\n{body}");
        let inst = parse(&ok).unwrap();
        assert_eq!(print(&inst), ok);
        let wrong = "field sqrt 2\ndim 1\ng 1 1 = sqrt(3)\n";
        assert!(matches!(parse(wrong), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn stage_lines() {
        let text = "dim 2\ng 1 1 = -1\ng 2 2 = 1\nmu = 0\nb0 = 1,0\nxi 1 2 = 1\nD 1 2 = 1\n";
        let inst = parse(text).unwrap();
        let s = inst.stage.clone().unwrap();
        assert_eq!(s.xi, Matrix::from_ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(s.d, s.xi);
        assert_eq!(print(&inst), text);
        let only = "# quadruple\nb0 = 1,0\nxi 1 3 = 1\n";
        assert_eq!(parse_stage(only, 2).unwrap_err(), Error::Parse { line: 3, message: "index 3 outside 1..=2".into() });
    }
}
