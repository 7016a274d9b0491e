//! Projector sets and the line-oriented vector file format.
//!
//! ```text
//! # comment
//! 3                 <- dimension
//! 1 0 0             <- one vector per line, d entries
//! 1/2 1/2+1/3 i 0   <- exact entries: p/q or p/q+r/s i
//! ```
//!
//! Numeric files use decimal floats (`0.5`, `-1e-3`, `0.5+0.25 i`).

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::CertifyError;
use crate::exact::{parse_rational, to_f64, ExactMatrix, GaussianRational, PqComplex, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Vectors {
    Exact(Vec<Vec<GaussianRational>>),
    Numeric(Vec<Vec<Complex64>>),
}

/// Rank-one projectors `Π_i = v_i v_i† / ⟨v_i, v_i⟩` in dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSet {
    d: usize,
    vectors: Vectors,
}

fn norm_sqr_exact(v: &[GaussianRational]) -> Rational {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `⟨a, b⟩ = Σ conj(a_k) b_k`.
pub fn inner_exact(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    a.iter()
        .zip(b)
        .fold(GaussianRational::zero(), |s, (x, y)| s + x.conj() * y)
}

pub fn inner_f64(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .fold(Complex64::new(0.0, 0.0), |s, (x, y)| s + x.conj() * y)
}

impl ProjectorSet {
    pub fn exact(d: usize, vectors: Vec<Vec<GaussianRational>>) -> Result<Self, CertifyError> {
        Self::validate(
            d,
            vectors
                .iter()
                .map(|v| (v.len(), norm_sqr_exact(v).is_zero())),
        )?;
        Ok(ProjectorSet {
            d,
            vectors: Vectors::Exact(vectors),
        })
    }

    /// Exact set from integer coordinates.
    pub fn from_integers(d: usize, vectors: &[Vec<i64>]) -> Result<Self, CertifyError> {
        let vs = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&x| GaussianRational::from(Rational::from_integer(x.into())))
                    .collect()
            })
            .collect();
        Self::exact(d, vs)
    }

    pub fn numeric(d: usize, vectors: Vec<Vec<Complex64>>) -> Result<Self, CertifyError> {
        Self::validate(
            d,
            vectors
                .iter()
                .map(|v| (v.len(), v.iter().map(|z| z.norm_sqr()).sum::<f64>() == 0.0)),
        )?;
        Ok(ProjectorSet {
            d,
            vectors: Vectors::Numeric(vectors),
        })
    }

    fn validate(d: usize, shape: impl Iterator<Item = (usize, bool)>) -> Result<(), CertifyError> {
        if d < 2 {
            return Err(CertifyError::Input(format!("dimension {d} < 2")));
        }
        let mut count = 0;
        for (i, (len, zero)) in shape.enumerate() {
            if len != d {
                return Err(CertifyError::Input(format!(
                    "vector {i} has {len} entries, expected {d}"
                )));
            }
            if zero {
                return Err(CertifyError::Input(format!("vector {i} is zero")));
            }
            count += 1;
        }
        if count == 0 {
            return Err(CertifyError::Input("no vectors".into()));
        }
        if count > crate::graph::MAX_VERTICES {
            return Err(CertifyError::Input(format!(
                "{count} vectors exceed the limit of {}",
                crate::graph::MAX_VERTICES
            )));
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        match &self.vectors {
            Vectors::Exact(v) => v.len(),
            Vectors::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> Mode {
        match self.vectors {
            Vectors::Exact(_) => Mode::Exact,
            Vectors::Numeric(_) => Mode::Numeric,
        }
    }

    pub fn vectors(&self) -> &Vectors {
        &self.vectors
    }

    /// Exact projector `v v† / ⟨v, v⟩`; `None` in numeric mode.
    pub fn projector_exact(&self, i: usize) -> Option<ExactMatrix> {
        let Vectors::Exact(vs) = &self.vectors else {
            return None;
        };
        let v = &vs[i];
        let inv = GaussianRational::from(Rational::one() / norm_sqr_exact(v));
        Some(
            (0..self.d)
                .map(|r| (0..self.d).map(|c| &v[r] * v[c].conj() * &inv).collect())
                .collect(),
        )
    }

    /// Unit vector along `v_i`, in floating point.
    pub fn unit_vector(&self, i: usize) -> Vec<Complex64> {
        let v: Vec<Complex64> = match &self.vectors {
            Vectors::Exact(vs) => vs[i]
                .iter()
                .map(|z| Complex64::new(to_f64(&z.re), to_f64(&z.im)))
                .collect(),
            Vectors::Numeric(vs) => vs[i].clone(),
        };
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.into_iter().map(|z| z / norm).collect()
    }

    pub fn projector_f64(&self, i: usize) -> DMatrix<Complex64> {
        let u = self.unit_vector(i);
        DMatrix::from_fn(self.d, self.d, |r, c| u[r] * u[c].conj())
    }

    /// `Σ w_i Π_i` in floating point.
    pub fn weighted_sum_f64(&self, w: &[f64]) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.d, self.d);
        for (i, &wi) in w.iter().enumerate() {
            if wi != 0.0 {
                m += self.projector_f64(i) * Complex64::new(wi, 0.0);
            }
        }
        m
    }

    /// `Σ w_i Π_i` exactly; `None` in numeric mode.
    pub fn weighted_sum_exact(&self, w: &[Rational]) -> Option<ExactMatrix> {
        let mut m = vec![vec![GaussianRational::zero(); self.d]; self.d];
        for (i, wi) in w.iter().enumerate() {
            if wi.is_zero() {
                continue;
            }
            let p = self.projector_exact(i)?;
            let wi = GaussianRational::from(wi.clone());
            for r in 0..self.d {
                for c in 0..self.d {
                    m[r][c] += &p[r][c] * &wi;
                }
            }
        }
        Some(m)
    }

    /// Copy with every vector padded by zeros to dimension `d`.
    pub fn embed(&self, d: usize) -> Result<ProjectorSet, CertifyError> {
        if d < self.d {
            return Err(CertifyError::Input(format!(
                "cannot embed dimension {} into {d}",
                self.d
            )));
        }
        match &self.vectors {
            Vectors::Exact(vs) => ProjectorSet::exact(
                d,
                vs.iter()
                    .map(|v| {
                        let mut v = v.clone();
                        v.resize(d, GaussianRational::zero());
                        v
                    })
                    .collect(),
            ),
            Vectors::Numeric(vs) => ProjectorSet::numeric(
                d,
                vs.iter()
                    .map(|v| {
                        let mut v = v.clone();
                        v.resize(d, Complex64::new(0.0, 0.0));
                        v
                    })
                    .collect(),
            ),
        }
    }

    /// Appends one vector of matching mode.
    pub fn with_vector(&self, v: Vectors) -> Result<ProjectorSet, CertifyError> {
        match (&self.vectors, v) {
            (Vectors::Exact(vs), Vectors::Exact(mut extra)) => {
                let mut all = vs.clone();
                all.append(&mut extra);
                ProjectorSet::exact(self.d, all)
            }
            (Vectors::Numeric(vs), Vectors::Numeric(mut extra)) => {
                let mut all = vs.clone();
                all.append(&mut extra);
                ProjectorSet::numeric(self.d, all)
            }
            _ => Err(CertifyError::Input(
                "mixed exact and numeric vectors".into(),
            )),
        }
    }
}

/// Splits `a+b i`-style entries into real and imaginary text.
fn split_complex(tok: &str) -> (Option<&str>, Option<&str>) {
    let Some(body) = tok.strip_suffix('i') else {
        return (Some(tok), None);
    };
    let body = body.trim_end();
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => (Some(&body[..k]), Some(&body[k..])),
        None => (None, Some(body)),
    }
}

fn parse_exact_entry(tok: &str) -> Result<GaussianRational, String> {
    let (re, im) = split_complex(tok);
    let part = |s: Option<&str>| -> Result<Rational, String> {
        match s {
            None => Ok(Rational::zero()),
            Some("+") | Some("") => Ok(Rational::one()),
            Some("-") => Ok(-Rational::one()),
            Some(s) => parse_rational(s.trim_start_matches('+')).map_err(|e| e.to_string()),
        }
    };
    Ok(GaussianRational::new(part(re)?, part(im)?))
}

fn parse_numeric_entry(tok: &str) -> Result<Complex64, String> {
    let (re, im) = split_complex(tok);
    let part = |s: Option<&str>| -> Result<f64, String> {
        match s {
            None => Ok(0.0),
            Some("+") | Some("") => Ok(1.0),
            Some("-") => Ok(-1.0),
            Some(s) => {
                let t = s.trim_start_matches('+');
                if let Some((p, q)) = t.split_once('/') {
                    let p: f64 = p.parse().map_err(|_| format!("bad number {s:?}"))?;
                    let q: f64 = q.parse().map_err(|_| format!("bad number {s:?}"))?;
                    return Ok(p / q);
                }
                t.parse().map_err(|_| format!("bad number {s:?}"))
            }
        }
    };
    Ok(Complex64::new(part(re)?, part(im)?))
}

/// Joins a stray `i` token onto the entry before it.
fn tokens(line: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for t in line.split_whitespace() {
        if t == "i" {
            if let Some(last) = out.last_mut() {
                last.push('i');
                continue;
            }
        }
        out.push(t.to_string());
    }
    out
}

/// Parses a vector file. Without an explicit mode, files containing a
/// decimal point or exponent are numeric, all others exact.
pub fn parse_vector_file(text: &str, mode: Option<Mode>) -> Result<ProjectorSet, CertifyError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (dline, dtext) = lines.next().ok_or_else(|| CertifyError::Parse {
        line: 0,
        reason: "empty file".into(),
    })?;
    let d: usize = dtext.parse().map_err(|_| CertifyError::Parse {
        line: dline,
        reason: format!("expected dimension, found {dtext:?}"),
    })?;
    let rows: Vec<(usize, Vec<String>)> = lines.map(|(k, l)| (k, tokens(l))).collect();
    let mode = mode.unwrap_or_else(|| {
        let numeric = rows
            .iter()
            .flat_map(|(_, t)| t)
            .any(|t| t.contains('.') || t.trim_end_matches('i').contains(['e', 'E']));
        if numeric {
            Mode::Numeric
        } else {
            Mode::Exact
        }
    });
    for (line, toks) in &rows {
        if toks.len() != d {
            return Err(CertifyError::Parse {
                line: *line,
                reason: format!("expected {d} entries, found {}", toks.len()),
            });
        }
    }
    let wrap = |line: usize| move |reason: String| CertifyError::Parse { line, reason };
    match mode {
        Mode::Exact => {
            let vs = rows
                .iter()
                .map(|(line, toks)| {
                    toks.iter()
                        .map(|t| parse_exact_entry(t).map_err(wrap(*line)))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            ProjectorSet::exact(d, vs)
        }
        Mode::Numeric => {
            let vs = rows
                .iter()
                .map(|(line, toks)| {
                    toks.iter()
                        .map(|t| parse_numeric_entry(t).map_err(wrap(*line)))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            ProjectorSet::numeric(d, vs)
        }
    }
}

fn format_f64(x: f64) -> String {
    format!("{x:.17}")
}

pub fn write_vector_file(set: &ProjectorSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", set.d);
    match &set.vectors {
        Vectors::Exact(vs) => {
            for v in vs {
                let line: Vec<String> = v.iter().map(|z| PqComplex(z).to_string()).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
        Vectors::Numeric(vs) => {
            for v in vs {
                let line: Vec<String> = v
                    .iter()
                    .map(|z| {
                        if z.im == 0.0 {
                            format_f64(z.re)
                        } else {
                            let sign = if z.im < 0.0 { '-' } else { '+' };
                            format!("{}{}{} i", format_f64(z.re), sign, format_f64(z.im.abs()))
                        }
                    })
                    .collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gauss, int, rat};

    #[test]
    fn parses_exact_file_with_comments_and_complex_entries() {
        let text = "# two vectors\n2\n1 0   # e1\n1/2+1/3 i  -2/5i\n";
        let s = parse_vector_file(text, None).unwrap();
        assert_eq!(s.mode(), Mode::Exact);
        let Vectors::Exact(vs) = s.vectors() else {
            unreachable!()
        };
        assert_eq!(vs[1][0], gauss(rat(1, 2), rat(1, 3)));
        assert_eq!(vs[1][1], gauss(int(0), rat(-2, 5)));
        assert_eq!(parse_vector_file(&write_vector_file(&s), None).unwrap(), s);
    }

    #[test]
    fn parses_numeric_file() {
        let text = "3\n0.5 0.5 1e-3\n1.0 0-1.5 i 0\n";
        let s = parse_vector_file(text, None).unwrap();
        assert_eq!(s.mode(), Mode::Numeric);
        let Vectors::Numeric(vs) = s.vectors() else {
            unreachable!()
        };
        assert_eq!(vs[0][2], Complex64::new(1e-3, 0.0));
        assert_eq!(vs[1][1], Complex64::new(0.0, -1.5));
        let again = parse_vector_file(&write_vector_file(&s), None).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn forced_numeric_mode_accepts_integers() {
        let s = parse_vector_file("2\n1 0\n0 1\n", Some(Mode::Numeric)).unwrap();
        assert_eq!(s.mode(), Mode::Numeric);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            parse_vector_file("3\n1 0\n", None),
            Err(CertifyError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_vector_file("x\n", None),
            Err(CertifyError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_vector_file("2\n1 0\n1/0 1\n", None),
            Err(CertifyError::Parse { line: 3, .. })
        ));
        assert!(parse_vector_file("", None).is_err());
        assert!(matches!(
            parse_vector_file("2\n0 0\n", None),
            Err(CertifyError::Input(_))
        ));
        assert!(parse_vector_file("1\n1\n", None).is_err());
    }

    #[test]
    fn exact_projector_is_idempotent() {
        let s = ProjectorSet::from_integers(3, &[vec![1, -1, 1]]).unwrap();
        let p = s.projector_exact(0).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                let sq = (0..3).fold(GaussianRational::zero(), |acc, k| acc + &p[r][k] * &p[k][c]);
                assert_eq!(sq, p[r][c]);
            }
        }
        let trace: GaussianRational = (0..3).map(|k| p[k][k].clone()).sum();
        assert_eq!(trace, GaussianRational::from(int(1)));
    }
}
