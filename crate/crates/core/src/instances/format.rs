use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use super::{generate_weights, InstanceFile, ProblemData, ProblemKind, WeightScheme, WeightSpec};
use crate::error::{Result, SkpError};
use crate::oracle::{
    Coverage, Domination, FacilityLocation, Influence, InfluenceEdge, SubmodularOracle,
};
use crate::problem::Instance;

/// Parses and validates instance text.
pub fn parse_instance(text: &str) -> Result<Instance> {
    InstanceFile::parse(text)?.build()
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| SkpError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_instance(&text)
}

fn syntax(line: usize, message: impl Into<String>) -> SkpError {
    SkpError::Syntax {
        line,
        message: message.into(),
    }
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .map(|(i, l)| (i, l.split_whitespace().collect()))
            .collect();
        Lines { lines, at: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.at)
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let last = self.lines.last().map_or(0, |l| l.0);
        let line = self.lines.get(self.at).cloned().ok_or_else(|| {
            syntax(
                last + 1,
                format!("unexpected end of input, expected {what}"),
            )
        })?;
        self.at += 1;
        Ok(line)
    }

    fn at_trailer(&self) -> bool {
        self.peek()
            .is_none_or(|(_, t)| matches!(t.first(), Some(&"WEIGHTS") | Some(&"BUDGET")))
    }
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{token}`")))
}

/// Converts a 1-based id to zero-based, checking `1..=limit`.
fn one_based(line: usize, token: &str, limit: usize, what: &str) -> Result<usize> {
    let id: usize = number(line, token, what)?;
    if id == 0 || id > limit {
        return Err(syntax(line, format!("{what} {id} outside 1..={limit}")));
    }
    Ok(id - 1)
}

fn expect_len(line: usize, tokens: &[&str], n: usize, what: &str) -> Result<()> {
    if tokens.len() != n {
        return Err(syntax(
            line,
            format!("expected {n} fields for {what}, found {}", tokens.len()),
        ));
    }
    Ok(())
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let (hl, header) = lines.next("header")?;
        expect_len(hl, &header, 4, "header `SKP <KIND> <n> <aux>`")?;
        if header[0] != "SKP" {
            return Err(syntax(hl, "header must start with `SKP`"));
        }
        let kind: ProblemKind = header[1]
            .parse()
            .map_err(|_| syntax(hl, format!("unknown problem kind `{}`", header[1])))?;
        let n: usize = number(hl, header[2], "element count")?;
        let aux: usize = number(hl, header[3], "auxiliary count")?;

        let data = match kind {
            ProblemKind::Cov => {
                let item_values = if aux == 0 {
                    Vec::new()
                } else {
                    let (l, t) = lines.next("item values")?;
                    expect_len(l, &t, aux, "item values")?;
                    t.iter()
                        .map(|v| number(l, v, "item value"))
                        .collect::<Result<_>>()?
                };
                let mut sets = Vec::with_capacity(n);
                for _ in 0..n {
                    let (l, t) = lines.next("set line")?;
                    let k: usize = number(l, t[0], "set size")?;
                    expect_len(l, &t, k + 1, "set line")?;
                    let items = t[1..]
                        .iter()
                        .map(|tok| one_based(l, tok, aux, "item"))
                        .collect::<Result<Vec<_>>>()?;
                    sets.push(items);
                }
                ProblemData::Cov { item_values, sets }
            }
            ProblemKind::Inf => {
                let mut edges = Vec::new();
                while !lines.at_trailer() {
                    let (l, t) = lines.next("edge")?;
                    expect_len(l, &t, 3, "influence edge")?;
                    edges.push(InfluenceEdge {
                        source: one_based(l, t[0], n, "source")?,
                        target: one_based(l, t[1], aux, "target")?,
                        p: number(l, t[2], "probability")?,
                    });
                }
                ProblemData::Inf {
                    sources: n,
                    targets: aux,
                    edges,
                }
            }
            ProblemKind::Loc => {
                let mut profits = Vec::with_capacity(aux);
                for _ in 0..aux {
                    if n == 0 {
                        profits.push(Vec::new());
                        continue;
                    }
                    let (l, t) = lines.next("customer profits")?;
                    expect_len(l, &t, n, "customer profits")?;
                    profits.push(
                        t.iter()
                            .map(|v| number(l, v, "profit"))
                            .collect::<Result<_>>()?,
                    );
                }
                ProblemData::Loc {
                    facilities: n,
                    profits,
                }
            }
            ProblemKind::Dom => {
                let mut edges = Vec::with_capacity(aux);
                for _ in 0..aux {
                    let (l, t) = lines.next("edge")?;
                    expect_len(l, &t, 2, "edge")?;
                    edges.push((
                        one_based(l, t[0], n, "vertex")?,
                        one_based(l, t[1], n, "vertex")?,
                    ));
                }
                ProblemData::Dom { vertices: n, edges }
            }
        };

        let mut weights = None;
        let mut budget = None;
        while let Some((l, t)) = lines.peek().cloned() {
            lines.at += 1;
            match t[0] {
                "WEIGHTS" if weights.is_none() => {
                    weights = Some(match t.get(1) {
                        Some(&"EXPLICIT") => {
                            expect_len(l, &t, n + 2, "explicit weights")?;
                            WeightSpec::Explicit(
                                t[2..]
                                    .iter()
                                    .map(|v| number(l, v, "weight"))
                                    .collect::<Result<_>>()?,
                            )
                        }
                        Some(&"SCHEME") => {
                            expect_len(l, &t, 4, "weight scheme")?;
                            let scheme: WeightScheme = t[2].parse().map_err(|_| {
                                syntax(l, format!("unknown weight scheme `{}`", t[2]))
                            })?;
                            WeightSpec::Scheme {
                                scheme,
                                seed: number(l, t[3], "seed")?,
                            }
                        }
                        _ => {
                            return Err(syntax(
                                l,
                                "expected `WEIGHTS EXPLICIT` or `WEIGHTS SCHEME`",
                            ))
                        }
                    });
                }
                "BUDGET" if budget.is_none() => {
                    expect_len(l, &t, 2, "budget")?;
                    budget = Some(number(l, t[1], "budget")?);
                }
                other => return Err(syntax(l, format!("unexpected `{other}`"))),
            }
        }
        let end = text.lines().count() + 1;
        Ok(InstanceFile {
            data,
            weights: weights.ok_or_else(|| syntax(end, "missing WEIGHTS line"))?,
            budget: budget.ok_or_else(|| syntax(end, "missing BUDGET line"))?,
        })
    }

    /// Canonical text; `parse(to_text(x)) == x`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(" ");
        match &self.data {
            ProblemData::Cov { item_values, sets } => {
                let _ = writeln!(out, "SKP COV {} {}", sets.len(), item_values.len());
                let _ = writeln!(
                    out,
                    "{}",
                    join(&mut item_values.iter().map(|v| v.to_string()))
                );
                for set in sets {
                    let _ = write!(out, "{}", set.len());
                    for i in set {
                        let _ = write!(out, " {}", i + 1);
                    }
                    out.push('\n');
                }
            }
            ProblemData::Inf {
                sources,
                targets,
                edges,
            } => {
                let _ = writeln!(out, "SKP INF {sources} {targets}");
                for e in edges {
                    let _ = writeln!(out, "{} {} {}", e.source + 1, e.target + 1, e.p);
                }
            }
            ProblemData::Loc {
                facilities,
                profits,
            } => {
                let _ = writeln!(out, "SKP LOC {facilities} {}", profits.len());
                for row in profits {
                    let _ = writeln!(out, "{}", join(&mut row.iter().map(|v| v.to_string())));
                }
            }
            ProblemData::Dom { vertices, edges } => {
                let _ = writeln!(out, "SKP DOM {vertices} {}", edges.len());
                for (u, v) in edges {
                    let _ = writeln!(out, "{} {}", u + 1, v + 1);
                }
            }
        }
        match &self.weights {
            WeightSpec::Explicit(w) => {
                let _ = write!(out, "WEIGHTS EXPLICIT");
                for x in w {
                    let _ = write!(out, " {x}");
                }
                out.push('\n');
            }
            WeightSpec::Scheme { scheme, seed } => {
                let _ = writeln!(out, "WEIGHTS SCHEME {scheme} {seed}");
            }
        }
        let _ = writeln!(out, "BUDGET {}", self.budget);
        out
    }

    /// Constructs the oracle and weights, validating every value.
    pub fn build(&self) -> Result<Instance> {
        let oracle: Arc<dyn SubmodularOracle> = match &self.data {
            ProblemData::Cov { item_values, sets } => {
                Arc::new(Coverage::new(item_values.clone(), sets.clone())?)
            }
            ProblemData::Inf {
                sources,
                targets,
                edges,
            } => Arc::new(Influence::new(*sources, *targets, edges)?),
            ProblemData::Loc {
                facilities,
                profits,
            } => Arc::new(FacilityLocation::new(*facilities, profits.clone())?),
            ProblemData::Dom { vertices, edges } => Arc::new(Domination::new(*vertices, edges)?),
        };
        let weights = match &self.weights {
            WeightSpec::Explicit(w) => w.clone(),
            WeightSpec::Scheme { scheme, seed } => generate_weights(self.len(), *scheme, *seed),
        };
        Ok(Instance::new(oracle, weights, self.budget)?.with_source(self.clone()))
    }
}
