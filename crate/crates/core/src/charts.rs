//! Graded coordinate charts and the lifts built from them.
//!
//! Every lift prepends one grading component. Generators of the source chart
//! keep their name, parity and invertibility and get a leading `0` weight.

use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub parity: u8,
    pub weight: Vec<i64>,
    pub invertible: bool,
}

impl Generator {
    pub fn new(name: impl Into<String>, parity: u8, weight: Vec<i64>) -> Self {
        Generator {
            name: name.into(),
            parity: parity & 1,
            weight,
            invertible: false,
        }
    }

    pub fn even(name: impl Into<String>, weight: Vec<i64>) -> Self {
        Self::new(name, 0, weight)
    }

    pub fn odd(name: impl Into<String>, weight: Vec<i64>) -> Self {
        Self::new(name, 1, weight)
    }

    pub fn invertible(mut self) -> Self {
        self.invertible = true;
        self
    }

    pub fn is_odd(&self) -> bool {
        self.parity == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    gens: Vec<Generator>,
    grading_dim: usize,
    /// (base, momentum) index pairs.
    pairs: Vec<(usize, usize)>,
    fiber: Option<usize>,
}

impl Chart {
    pub fn new(gens: Vec<Generator>) -> Result<Chart> {
        let grading_dim = gens.first().map_or(0, |g| g.weight.len());
        let mut seen = HashSet::new();
        for g in &gens {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::DuplicateName(g.name.clone()));
            }
            if g.weight.len() != grading_dim {
                return Err(Error::WeightLength {
                    name: g.name.clone(),
                    got: g.weight.len(),
                    expected: grading_dim,
                });
            }
            if g.invertible && g.parity == 1 {
                return Err(Error::Domain(format!("odd generator `{}` cannot be invertible", g.name)));
            }
            if g.parity > 1 {
                return Err(Error::Domain(format!("parity of `{}` must be 0 or 1", g.name)));
            }
        }
        Ok(Chart {
            gens,
            grading_dim,
            pairs: Vec::new(),
            fiber: None,
        })
    }

    /// Chart with an explicit grading dimension; needed for zero generators.
    pub fn with_grading(gens: Vec<Generator>, grading_dim: usize) -> Result<Chart> {
        if gens.is_empty() {
            return Ok(Chart {
                gens,
                grading_dim,
                pairs: Vec::new(),
                fiber: None,
            });
        }
        let c = Chart::new(gens)?;
        if c.grading_dim != grading_dim {
            return Err(Error::WeightLength {
                name: c.gens[0].name.clone(),
                got: c.grading_dim,
                expected: grading_dim,
            });
        }
        Ok(c)
    }

    /// Declares Darboux pairs by name, replacing any existing ones.
    pub fn with_pairs<S: AsRef<str>>(mut self, pairs: &[(S, S)]) -> Result<Chart> {
        let mut idx = Vec::with_capacity(pairs.len());
        for (b, m) in pairs {
            idx.push((self.require(b.as_ref())?, self.require(m.as_ref())?));
        }
        self.set_pairs(idx)?;
        Ok(self)
    }

    fn set_pairs(&mut self, pairs: Vec<(usize, usize)>) -> Result<()> {
        let mut used = HashSet::new();
        for &(b, m) in &pairs {
            if b == m || !used.insert(b) || !used.insert(m) {
                return Err(Error::Domain("a generator appears in more than one Darboux pair".into()));
            }
        }
        self.pairs = pairs;
        Ok(())
    }

    /// Marks `name` as the principal fiber coordinate.
    pub fn with_fiber(mut self, name: &str) -> Result<Chart> {
        if self.fiber.is_some() {
            return Err(Error::AlreadyExtended);
        }
        let i = self.require(name)?;
        let g = &self.gens[i];
        if !g.invertible || g.parity != 0 {
            return Err(Error::Domain(format!("fiber coordinate `{name}` must be even and invertible")));
        }
        self.fiber = Some(i);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn grading_dim(&self) -> usize {
        self.grading_dim
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn fiber(&self) -> Option<usize> {
        self.fiber
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.gens[i].parity
    }

    /// Momentum paired with base generator `i`.
    pub fn momentum_of(&self, i: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == i).map(|p| p.1)
    }

    pub fn base_of(&self, i: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.1 == i).map(|p| p.0)
    }

    /// True when parity equals total weight mod 2 for every generator.
    pub fn is_k_manifold(&self) -> bool {
        self.gens
            .iter()
            .all(|g| g.weight.iter().sum::<i64>().rem_euclid(2) as u8 == g.parity)
    }
}

fn prefixed(w: &[i64], lead: i64) -> Vec<i64> {
    let mut v = Vec::with_capacity(w.len() + 1);
    v.push(lead);
    v.extend_from_slice(w);
    v
}

/// The r-phase cotangent lift `T*(r)M`, or `T*[r]M`/`ΠT*M` when
/// `reverse` flips the momentum parity. Momenta are named `p_<x>`, or
/// `xi_<x>` when reversed.
pub fn cotangent_lift(c: &Chart, r: i64, reverse: bool) -> Result<Chart> {
    if r < 0 {
        return Err(Error::Domain("phase-lift degree must be non-negative".into()));
    }
    let prefix = if reverse { "xi_" } else { "p_" };
    let n = c.len();
    let mut gens: Vec<Generator> = c
        .gens
        .iter()
        .map(|g| Generator {
            weight: prefixed(&g.weight, 0),
            ..g.clone()
        })
        .collect();
    for g in &c.gens {
        let w: Vec<i64> = g.weight.iter().map(|w| r - w).collect();
        gens.push(Generator::new(
            format!("{prefix}{}", g.name),
            g.parity ^ reverse as u8,
            prefixed(&w, r),
        ));
    }
    let mut out = Chart::with_grading(gens, c.grading_dim + 1)?;
    out.set_pairs((0..n).map(|i| (i, n + i)).collect())?;
    out.fiber = c.fiber;
    Ok(out)
}

/// Tangent lift with velocities `d_<x>` of weight `(1, w)`; with `reverse`
/// the velocities get flipped parity and polynomials are differential forms.
pub fn tangent_lift(c: &Chart, reverse: bool) -> Result<Chart> {
    let mut gens: Vec<Generator> = c
        .gens
        .iter()
        .map(|g| Generator {
            weight: prefixed(&g.weight, 0),
            ..g.clone()
        })
        .collect();
    for g in &c.gens {
        gens.push(Generator::new(
            format!("d_{}", g.name),
            g.parity ^ reverse as u8,
            prefixed(&g.weight, 1),
        ));
    }
    let mut out = Chart::with_grading(gens, c.grading_dim + 1)?;
    out.fiber = c.fiber;
    Ok(out)
}

/// Adjoins the invertible even fiber coordinate `t` in front, with weight 1
/// in a new leading (ℝ^×-degree) component.
pub fn extend_with_fiber(c: &Chart) -> Result<Chart> {
    if c.fiber.is_some() {
        return Err(Error::AlreadyExtended);
    }
    let mut zero = vec![0; c.grading_dim];
    zero.insert(0, 1);
    let mut gens = vec![Generator::even("t", zero).invertible()];
    gens.extend(c.gens.iter().map(|g| Generator {
        weight: prefixed(&g.weight, 0),
        ..g.clone()
    }));
    let mut out = Chart::with_grading(gens, c.grading_dim + 1)?;
    out.set_pairs(c.pairs.iter().map(|&(a, b)| (a + 1, b + 1)).collect())?;
    out.fiber = Some(0);
    Ok(out)
}
