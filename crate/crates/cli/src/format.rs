//! The `.gcm` structure-description format.
//!
//! ```text
//! # α = dx + θ dθ
//! chart
//!   x even
//!   th odd
//! oneform
//!   d_x: 1
//!   d_th: th
//! ```
//!
//! A block starts with its keyword alone on a line; entries are
//! `key: value` lines (chart entries are `name parity [weights] [invertible]`
//! or `pair a b`). `#` starts a comment.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use gcm_core::brackets::CanonicalBracket;
use gcm_core::charts::{Chart, Generator};
use gcm_core::cohomology::Subspace;
use gcm_core::contact::carrier_for;
use gcm_core::courant::wade::Section;
use gcm_core::courant::{base_chart, CourantSpec};
use gcm_core::{parse_poly, JacobiTriple, OneForm, Poly, Rational};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown symbol `{name}`")]
    Unknown { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {msg}")]
    Inconsistent { line: usize, col: usize, msg: String },
    #[error("missing `{0}` block")]
    Missing(&'static str),
    #[error("{0}")]
    Io(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
}

impl InputError {
    pub fn code(&self) -> &'static str {
        match self {
            InputError::Syntax { .. } => "E001",
            InputError::Unknown { .. } => "E002",
            InputError::Inconsistent { .. } => "E003",
            InputError::Missing(_) => "E004",
            InputError::Io(_) => "E005",
            InputError::Invalid(_) => "E006",
        }
    }
}

type Res<T> = std::result::Result<T, InputError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    /// The chart itself carries Darboux pairs.
    None,
    /// `T*`, momenta `p_<x>`.
    Cotangent,
    /// `ΠT*`, momenta `xi_<x>`.
    ParityReversed,
}

impl Lift {
    fn name(self) -> &'static str {
        match self {
            Lift::None => "none",
            Lift::Cotangent => "T*",
            Lift::ParityReversed => "PiT*",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HamiltonianBlock {
    pub lift: Lift,
    pub carrier: CanonicalBracket,
    pub h: Poly,
    /// Present when `allowed`, `fixed` and `degree` are all given.
    pub subspace: Option<Subspace>,
}

impl PartialEq for HamiltonianBlock {
    fn eq(&self, o: &Self) -> bool {
        self.lift == o.lift && self.carrier.chart() == o.carrier.chart() && self.h == o.h && self.subspace == o.subspace
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WadeBlock {
    pub m: usize,
    pub u: Option<Section<Rational>>,
    pub v: Option<Section<Rational>>,
}

#[derive(Clone, Debug)]
pub struct StructureFile {
    pub chart: Option<Arc<Chart>>,
    pub oneform: Option<OneForm<Rational>>,
    pub jacobi: Option<JacobiTriple<Rational>>,
    pub hamiltonian: Option<HamiltonianBlock>,
    pub courant: Option<CourantSpec<Rational>>,
    pub wade: Option<WadeBlock>,
}

impl PartialEq for StructureFile {
    fn eq(&self, o: &Self) -> bool {
        let jac = |j: &Option<JacobiTriple<Rational>>| {
            j.as_ref()
                .map(|j| (j.parity(), j.lambda().clone(), j.gamma().clone(), j.f().clone()))
        };
        self.chart == o.chart
            && self.oneform.as_ref().map(|a| a.coeffs().to_vec()) == o.oneform.as_ref().map(|a| a.coeffs().to_vec())
            && jac(&self.jacobi) == jac(&o.jacobi)
            && self.hamiltonian == o.hamiltonian
            && self.courant == o.courant
            && self.wade == o.wade
    }
}

impl StructureFile {
    pub fn chart(&self) -> Res<&Arc<Chart>> {
        self.chart.as_ref().ok_or(InputError::Missing("chart"))
    }

    pub fn oneform(&self) -> Res<&OneForm<Rational>> {
        self.oneform.as_ref().ok_or(InputError::Missing("oneform"))
    }

    pub fn jacobi(&self) -> Res<&JacobiTriple<Rational>> {
        self.jacobi.as_ref().ok_or(InputError::Missing("jacobi"))
    }

    pub fn hamiltonian(&self) -> Res<&HamiltonianBlock> {
        self.hamiltonian.as_ref().ok_or(InputError::Missing("hamiltonian"))
    }

    pub fn courant(&self) -> Res<&CourantSpec<Rational>> {
        self.courant.as_ref().ok_or(InputError::Missing("courant"))
    }

    pub fn wade(&self) -> Res<&WadeBlock> {
        self.wade.as_ref().ok_or(InputError::Missing("wade"))
    }
}

const BLOCKS: [&str; 6] = ["chart", "oneform", "jacobi", "hamiltonian", "courant", "wade"];

/// A `key: value` entry with the position of the value.
#[derive(Clone, Debug)]
struct Entry {
    line: usize,
    key_col: usize,
    key: String,
    col: usize,
    value: String,
}

impl Entry {
    fn syntax<T>(&self, msg: impl Into<String>) -> Res<T> {
        Err(InputError::Syntax {
            line: self.line,
            col: self.key_col,
            msg: msg.into(),
        })
    }

    fn inconsistent<T>(&self, msg: impl Into<String>) -> Res<T> {
        Err(InputError::Inconsistent {
            line: self.line,
            col: self.key_col,
            msg: msg.into(),
        })
    }

    fn poly(&self, chart: &Arc<Chart>) -> Res<Poly> {
        parse_poly(chart, &self.value).map_err(|e| self.poly_error(e))
    }

    fn poly_error(&self, e: gcm_core::Error) -> InputError {
        use gcm_core::Error as E;
        match e {
            E::Syntax { offset, msg } => InputError::Syntax {
                line: self.line,
                col: self.col + offset,
                msg,
            },
            E::UnknownSymbol { offset, name } => InputError::Unknown {
                line: self.line,
                col: self.col + offset,
                name,
            },
            other => InputError::Inconsistent {
                line: self.line,
                col: self.col,
                msg: other.to_string(),
            },
        }
    }

    fn usize(&self) -> Res<usize> {
        self.value
            .trim()
            .parse()
            .or_else(|_| self.syntax(format!("expected a non-negative integer, found `{}`", self.value)))
    }

    /// Whitespace-separated words of the key after its first one, as 1-based indices.
    fn indices(&self, n: usize) -> Res<Vec<usize>> {
        let words: Vec<&str> = self.key.split_whitespace().skip(1).collect();
        if words.len() != n {
            return self.syntax(format!(
                "`{}` expects {n} indices",
                self.key.split_whitespace().next().unwrap_or("")
            ));
        }
        words
            .iter()
            .map(|w| match w.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => self.syntax(format!("bad index `{w}`")),
            })
            .collect()
    }
}

#[derive(Default)]
struct Raw {
    blocks: Vec<(&'static str, usize, Vec<Entry>)>,
}

fn lex(text: &str) -> Res<Raw> {
    let mut raw = Raw::default();
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let body = full.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        if let Some(&b) = BLOCKS.iter().find(|&&b| b == trimmed) {
            if raw.blocks.iter().any(|(n, _, _)| *n == b) {
                return Err(InputError::Syntax {
                    line,
                    col: indent + 1,
                    msg: format!("duplicate `{b}` block"),
                });
            }
            raw.blocks.push((b, line, Vec::new()));
            continue;
        }
        let Some(block) = raw.blocks.last_mut() else {
            return Err(InputError::Syntax {
                line,
                col: indent + 1,
                msg: format!("expected a block keyword, found `{trimmed}`"),
            });
        };
        let entry = if block.0 == "chart" {
            Entry {
                line,
                key_col: indent + 1,
                key: trimmed.to_string(),
                col: indent + 1,
                value: String::new(),
            }
        } else {
            let Some(colon) = body.find(':') else {
                return Err(InputError::Syntax {
                    line,
                    col: indent + 1,
                    msg: "expected `key: value`".into(),
                });
            };
            let after = &body[colon + 1..];
            let lead = after.len() - after.trim_start().len();
            Entry {
                line,
                key_col: indent + 1,
                key: body[..colon].trim().to_string(),
                col: colon + 2 + lead,
                value: after.trim().to_string(),
            }
        };
        block.2.push(entry);
    }
    Ok(raw)
}

fn parse_chart(entries: &[Entry]) -> Res<Arc<Chart>> {
    let mut gens = Vec::new();
    let mut pairs = Vec::new();
    let mut dim = None;
    for e in entries {
        let words: Vec<&str> = e.key.split_whitespace().collect();
        if words[0] == "pair" {
            if words.len() != 3 {
                return e.syntax("`pair` takes two generator names");
            }
            pairs.push((words[1].to_string(), words[2].to_string(), e.clone()));
            continue;
        }
        if words.len() < 2 {
            return e.syntax("expected `name even|odd [weights...] [invertible]`");
        }
        let parity = match words[1] {
            "even" => 0,
            "odd" => 1,
            other => return e.syntax(format!("parity must be `even` or `odd`, found `{other}`")),
        };
        let mut rest = &words[2..];
        let invertible = rest.last() == Some(&"invertible");
        if invertible {
            rest = &rest[..rest.len() - 1];
        }
        let weight = rest
            .iter()
            .map(|w| w.parse::<i64>().or_else(|_| e.syntax(format!("bad weight `{w}`"))))
            .collect::<Res<Vec<i64>>>()?;
        match dim {
            None => dim = Some(weight.len()),
            Some(d) if d != weight.len() => {
                return e.inconsistent(format!("`{}` has {} weight components, expected {d}", words[0], weight.len()))
            }
            _ => {}
        }
        if invertible && parity == 1 {
            return e.inconsistent(format!("odd generator `{}` cannot be invertible", words[0]));
        }
        let g = Generator::new(words[0], parity, weight);
        gens.push((if invertible { g.invertible() } else { g }, e.clone()));
    }
    let first = entries.first();
    let names: Vec<Generator> = gens.iter().map(|(g, _)| g.clone()).collect();
    let chart = Chart::with_grading(names, dim.unwrap_or(0)).map_err(|err| {
        let e = first.expect("a failing chart has entries");
        InputError::Inconsistent {
            line: e.line,
            col: e.key_col,
            msg: err.to_string(),
        }
    })?;
    for (a, b, e) in &pairs {
        for n in [a, b] {
            if chart.index_of(n).is_none() {
                return Err(InputError::Unknown {
                    line: e.line,
                    col: e.key_col,
                    name: n.clone(),
                });
            }
        }
    }
    let chart = if pairs.is_empty() {
        chart
    } else {
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b, _)| (a.as_str(), b.as_str())).collect();
        chart.with_pairs(&refs).map_err(|err| {
            let e = &pairs[0].2;
            InputError::Inconsistent {
                line: e.line,
                col: e.key_col,
                msg: err.to_string(),
            }
        })?
    };
    Ok(Arc::new(chart))
}

fn unknown_key<T>(e: &Entry, block: &str) -> Res<T> {
    e.syntax(format!("unknown key `{}` in `{block}` block", e.key))
}

fn parse_oneform(chart: &Arc<Chart>, entries: &[Entry]) -> Res<OneForm<Rational>> {
    let mut coeffs = vec![Poly::zero(chart); chart.len()];
    for e in entries {
        let Some(name) = e.key.strip_prefix("d_") else {
            return e.syntax(format!("one-form keys are `d_<generator>`, found `{}`", e.key));
        };
        let i = chart.index_of(name).ok_or(InputError::Unknown {
            line: e.line,
            col: e.key_col + 2,
            name: name.into(),
        })?;
        coeffs[i] = &coeffs[i] + &e.poly(chart)?;
    }
    OneForm::new(chart, coeffs).map_err(|err| InputError::Invalid(err.to_string()))
}

fn parity_word(e: &Entry) -> Res<u8> {
    match e.value.as_str() {
        "even" => Ok(0),
        "odd" => Ok(1),
        _ => e.syntax("expected `even` or `odd`"),
    }
}

fn parse_jacobi(chart: &Arc<Chart>, entries: &[Entry]) -> Res<JacobiTriple<Rational>> {
    let parity = match entries.iter().find(|e| e.key == "parity") {
        Some(e) => parity_word(e)?,
        None => return Err(InputError::Missing("jacobi parity")),
    };
    let carrier = carrier_for(chart, parity).map_err(|e| InputError::Invalid(e.to_string()))?;
    let cc = carrier.chart().clone();
    let (mut l, mut g, mut f) = (Poly::zero(&cc), Poly::zero(&cc), Poly::zero(&cc));
    for e in entries {
        match e.key.as_str() {
            "parity" => {}
            "lambda" => l = e.poly(&cc)?,
            "gamma" => g = e.poly(&cc)?,
            "f" => f = e.poly(&cc)?,
            _ => return unknown_key(e, "jacobi"),
        }
    }
    JacobiTriple::new(chart, parity, l, g, f).map_err(|err| InputError::Invalid(err.to_string()))
}

fn parse_hamiltonian(chart: &Arc<Chart>, entries: &[Entry]) -> Res<HamiltonianBlock> {
    let lift = match entries.iter().find(|e| e.key == "lift") {
        None => Lift::None,
        Some(e) => match e.value.as_str() {
            "none" => Lift::None,
            "T*" => Lift::Cotangent,
            "PiT*" => Lift::ParityReversed,
            _ => return e.syntax("lift is one of `none`, `T*`, `PiT*`"),
        },
    };
    let carrier = match lift {
        Lift::None => CanonicalBracket::new(chart.clone()),
        Lift::Cotangent => carrier_for(chart, 1),
        Lift::ParityReversed => carrier_for(chart, 0),
    }
    .map_err(|e| InputError::Invalid(format!("carrier: {e}")))?;
    let cc = carrier.chart().clone();
    let mut h = None;
    let (mut allowed, mut fixed, mut degree) = (None, None, None);
    for e in entries {
        match e.key.as_str() {
            "lift" => {}
            "H" => h = Some(e.poly(&cc)?),
            "allowed" => {
                let mut idx = Vec::new();
                for w in e.value.split_whitespace() {
                    idx.push(cc.index_of(w).ok_or(InputError::Unknown {
                        line: e.line,
                        col: e.col,
                        name: w.into(),
                    })?);
                }
                idx.sort();
                allowed = Some(idx);
            }
            "fixed" => {
                let mut fx = Vec::new();
                for w in e.value.split_whitespace() {
                    let parsed = w
                        .split_once('=')
                        .and_then(|(c, v)| Some((c.parse::<usize>().ok()?, v.parse::<i64>().ok()?)));
                    match parsed {
                        Some((c, _)) if c >= cc.grading_dim() => return e.inconsistent(format!("no weight component {c}")),
                        Some(p) => fx.push(p),
                        None => return e.syntax(format!("expected `component=value`, found `{w}`")),
                    }
                }
                fixed = Some(fx);
            }
            "degree" => {
                let d = e.usize()?;
                if d >= cc.grading_dim() {
                    return e.inconsistent(format!("no weight component {d}"));
                }
                degree = Some(d);
            }
            _ => return unknown_key(e, "hamiltonian"),
        }
    }
    let subspace = match (allowed, fixed, degree) {
        (Some(allowed), Some(fixed), Some(degree_component)) => Some(Subspace {
            allowed,
            fixed,
            degree_component,
            truncation: 3,
        }),
        (None, None, None) => None,
        _ => return Err(InputError::Missing("hamiltonian allowed/fixed/degree")),
    };
    Ok(HamiltonianBlock {
        lift,
        carrier,
        h: h.ok_or(InputError::Missing("hamiltonian H"))?,
        subspace,
    })
}

fn find_usize(entries: &[Entry], key: &'static str) -> Res<usize> {
    entries.iter().find(|e| e.key == key).ok_or(InputError::Missing(key))?.usize()
}

fn parse_courant(entries: &[Entry]) -> Res<CourantSpec<Rational>> {
    let (m, q) = (find_usize(entries, "m")?, find_usize(entries, "q")?);
    let mut g = Vec::new();
    for e in entries.iter().filter(|e| e.key == "g") {
        let row = e
            .value
            .split_whitespace()
            .map(|w| Rational::from_str(w).or_else(|_| e.syntax(format!("bad rational `{w}`"))))
            .collect::<Res<Vec<_>>>()?;
        if row.len() != q {
            return e.inconsistent(format!("g rows have {q} entries"));
        }
        g.push(row);
    }
    if g.len() != q {
        return Err(InputError::Invalid(format!("g needs {q} rows, found {}", g.len())));
    }
    let mut spec = CourantSpec::trivial(m, g).map_err(|e| InputError::Invalid(e.to_string()))?;
    let base = spec.base().map_err(|e| InputError::Invalid(e.to_string()))?;
    let bound = |e: &Entry, idx: &[usize], lims: &[usize]| -> Res<()> {
        if idx.iter().zip(lims).any(|(i, l)| i >= l) {
            return e.inconsistent("index out of range");
        }
        Ok(())
    };
    for e in entries {
        let head = e.key.split_whitespace().next().unwrap_or("");
        match head {
            "m" | "q" | "g" => {}
            "r" => {
                let ix = e.indices(2)?;
                bound(e, &ix, &[q, m])?;
                spec.r_coef[ix[0]][ix[1]] = e.poly(&base)?;
            }
            "rt" => {
                let ix = e.indices(1)?;
                bound(e, &ix, &[q])?;
                spec.r_scalar[ix[0]] = e.poly(&base)?;
            }
            "A" => {
                let ix = e.indices(3)?;
                bound(e, &ix, &[q, q, q])?;
                if ix[0] == ix[1] || ix[1] == ix[2] || ix[0] == ix[2] {
                    return e.inconsistent("A is totally antisymmetric; indices must differ");
                }
                spec.set_a(ix[0], ix[1], ix[2], e.poly(&base)?);
            }
            _ => return unknown_key(e, "courant"),
        }
    }
    spec.validate().map_err(|e| InputError::Invalid(e.to_string()))?;
    Ok(spec)
}

fn parse_wade(entries: &[Entry]) -> Res<WadeBlock> {
    let m = find_usize(entries, "m")?;
    let base = base_chart(m).map_err(|e| InputError::Invalid(e.to_string()))?;
    let (mut u, mut v): (Option<Section<Rational>>, Option<Section<Rational>>) = (None, None);
    for e in entries {
        if e.key == "m" {
            continue;
        }
        let Some((who, comp)) = e.key.split_once('.') else {
            return unknown_key(e, "wade");
        };
        let slot = match who {
            "u" => &mut u,
            "v" => &mut v,
            _ => return unknown_key(e, "wade"),
        };
        let s = slot.get_or_insert_with(|| Section::zero(&base));
        let p = e.poly(&base)?;
        let index = |prefix: &str| -> Option<usize> { comp.strip_prefix(prefix)?.parse::<usize>().ok().filter(|&a| a >= 1 && a <= m) };
        match comp {
            "f" => s.f = p,
            "g" => s.g = p,
            _ => match (index("X"), index("alpha")) {
                (Some(a), _) => s.x[a - 1] = p,
                (_, Some(a)) => s.alpha[a - 1] = p,
                _ => return e.syntax(format!("section components are f, g, X1..X{m}, alpha1..alpha{m}")),
            },
        }
    }
    Ok(WadeBlock { m, u, v })
}

pub fn parse(text: &str) -> Res<StructureFile> {
    let raw = lex(text)?;
    let block = |n: &str| raw.blocks.iter().find(|b| b.0 == n).map(|b| &b.2);
    let chart = block("chart").map(|e| parse_chart(e)).transpose()?;
    let need_chart = || chart.clone().ok_or(InputError::Missing("chart"));
    Ok(StructureFile {
        oneform: block("oneform").map(|e| parse_oneform(&need_chart()?, e)).transpose()?,
        jacobi: block("jacobi").map(|e| parse_jacobi(&need_chart()?, e)).transpose()?,
        hamiltonian: block("hamiltonian").map(|e| parse_hamiltonian(&need_chart()?, e)).transpose()?,
        courant: block("courant").map(|e| parse_courant(e)).transpose()?,
        wade: block("wade").map(|e| parse_wade(e)).transpose()?,
        chart,
    })
}

pub fn read(path: &std::path::Path) -> Res<(String, StructureFile)> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
    let s = parse(&text)?;
    Ok((text, s))
}

fn write_section(f: &mut fmt::Formatter<'_>, name: &str, s: &Section<Rational>) -> fmt::Result {
    for (a, x) in s.x.iter().enumerate() {
        if !x.is_zero() {
            writeln!(f, "  {name}.X{}: {x}", a + 1)?;
        }
    }
    if !s.f.is_zero() {
        writeln!(f, "  {name}.f: {}", s.f)?;
    }
    for (a, x) in s.alpha.iter().enumerate() {
        if !x.is_zero() {
            writeln!(f, "  {name}.alpha{}: {x}", a + 1)?;
        }
    }
    if !s.g.is_zero() {
        writeln!(f, "  {name}.g: {}", s.g)?;
    }
    Ok(())
}

/// Canonical text; parsing it gives back an equal structure.
impl fmt::Display for StructureFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.chart {
            writeln!(f, "chart")?;
            for g in c.gens() {
                write!(f, "  {} {}", g.name, if g.is_odd() { "odd" } else { "even" })?;
                for w in &g.weight {
                    write!(f, " {w}")?;
                }
                writeln!(f, "{}", if g.invertible { " invertible" } else { "" })?;
            }
            for &(a, b) in c.pairs() {
                writeln!(f, "  pair {} {}", c.gen(a).name, c.gen(b).name)?;
            }
        }
        if let Some(a) = &self.oneform {
            writeln!(f, "oneform")?;
            for (i, p) in a.coeffs().iter().enumerate() {
                if !p.is_zero() {
                    writeln!(f, "  d_{}: {p}", a.chart().gen(i).name)?;
                }
            }
        }
        if let Some(j) = &self.jacobi {
            writeln!(f, "jacobi")?;
            writeln!(f, "  parity: {}", if j.parity() == 0 { "even" } else { "odd" })?;
            writeln!(f, "  lambda: {}", j.lambda())?;
            writeln!(f, "  gamma: {}", j.gamma())?;
            writeln!(f, "  f: {}", j.f())?;
        }
        if let Some(h) = &self.hamiltonian {
            writeln!(f, "hamiltonian")?;
            writeln!(f, "  lift: {}", h.lift.name())?;
            writeln!(f, "  H: {}", h.h)?;
            if let Some(s) = &h.subspace {
                let cc = h.carrier.chart();
                let names: Vec<&str> = s.allowed.iter().map(|&i| cc.gen(i).name.as_str()).collect();
                writeln!(f, "  allowed: {}", names.join(" "))?;
                let fx: Vec<String> = s.fixed.iter().map(|(c, v)| format!("{c}={v}")).collect();
                writeln!(f, "  fixed: {}", fx.join(" "))?;
                writeln!(f, "  degree: {}", s.degree_component)?;
            }
        }
        if let Some(s) = &self.courant {
            writeln!(f, "courant")?;
            writeln!(f, "  m: {}", s.m)?;
            writeln!(f, "  q: {}", s.q)?;
            for row in &s.g {
                let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(f, "  g: {}", r.join(" "))?;
            }
            for i in 0..s.q {
                for a in 0..s.m {
                    if !s.r_coef[i][a].is_zero() {
                        writeln!(f, "  r {} {}: {}", i + 1, a + 1, s.r_coef[i][a])?;
                    }
                }
                if !s.r_scalar[i].is_zero() {
                    writeln!(f, "  rt {}: {}", i + 1, s.r_scalar[i])?;
                }
            }
            for i in 0..s.q {
                for j in i + 1..s.q {
                    for k in j + 1..s.q {
                        if !s.a[i][j][k].is_zero() {
                            writeln!(f, "  A {} {} {}: {}", i + 1, j + 1, k + 1, s.a[i][j][k])?;
                        }
                    }
                }
            }
        }
        if let Some(w) = &self.wade {
            writeln!(f, "wade")?;
            writeln!(f, "  m: {}", w.m)?;
            if let Some(u) = &w.u {
                write_section(f, "u", u)?;
            }
            if let Some(v) = &w.v {
                write_section(f, "v", v)?;
            }
        }
        Ok(())
    }
}
