//! Supercommutative Laurent polynomials over a chart.
//!
//! A monomial is a dense exponent vector. Odd generators carry exponent 0 or
//! 1 and are understood to be multiplied in ascending chart order; any sign
//! from reordering lives in the coefficient.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::charts::Chart;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use crate::charts::Generator;
pub use parse::parse_poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn from_exps(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn parity(&self, chart: &Chart) -> u8 {
        let mut p = 0;
        for (i, &e) in self.0.iter().enumerate() {
            if chart.parity(i) == 1 {
                p ^= (e & 1) as u8;
            }
        }
        p
    }

    pub fn weight(&self, chart: &Chart) -> Vec<i64> {
        let mut w = vec![0; chart.grading_dim()];
        for (i, &e) in self.0.iter().enumerate() {
            if e != 0 {
                for (ws, gw) in w.iter_mut().zip(&chart.gen(i).weight) {
                    *ws += e as i64 * gw;
                }
            }
        }
        w
    }

    pub fn has_odd(&self, chart: &Chart) -> bool {
        self.0.iter().enumerate().any(|(i, &e)| e != 0 && chart.parity(i) == 1)
    }

    fn validate(&self, chart: &Chart) -> Result<()> {
        if self.0.len() != chart.len() {
            return Err(Error::ChartMismatch);
        }
        for (i, &e) in self.0.iter().enumerate() {
            let g = chart.gen(i);
            if e < 0 && !g.invertible {
                return Err(Error::Domain(format!("negative exponent on non-invertible `{}`", g.name)));
            }
            if g.parity == 1 && e > 1 {
                return Err(Error::Domain(format!("odd generator `{}` with exponent {e}", g.name)));
            }
        }
        Ok(())
    }
}

/// Graded lexicographic: total degree first, then exponents by chart index.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Product of two normalized monomials: `None` if an odd factor repeats,
/// otherwise the result and whether the Koszul sign is negative.
fn mul_monomials(chart: &Chart, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
    let mut neg = false;
    let mut a_odd_after = 0usize;
    // walk from the right so `a_odd_after` counts odd factors of `a` beyond j
    for j in (0..a.0.len()).rev() {
        if chart.parity(j) == 1 {
            if a.0[j] == 1 && b.0[j] == 1 {
                return None;
            }
            if b.0[j] == 1 && a_odd_after % 2 == 1 {
                neg = !neg;
            }
            if a.0[j] == 1 {
                a_odd_after += 1;
            }
        }
    }
    let exps = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
    Some((Monomial(exps), neg))
}

fn odd_count(chart: &Chart, m: &Monomial, range: std::ops::Range<usize>) -> usize {
    range.filter(|&i| chart.parity(i) == 1 && m.0[i] == 1).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityGrade {
    Even,
    Odd,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightGrade {
    /// The zero polynomial lies in every weight space.
    Zero,
    Homogeneous(Vec<i64>),
    Inhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grade {
    pub parity: ParityGrade,
    pub weight: WeightGrade,
}

#[derive(Clone)]
pub struct SuperPoly<C> {
    chart: Arc<Chart>,
    terms: BTreeMap<Monomial, C>,
}

fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<C: Scalar> SuperPoly<C> {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        SuperPoly {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Arc<Chart>, c: C) -> Self {
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(chart.len()), c);
        }
        p
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Self::constant(chart, C::one())
    }

    pub fn from_int(chart: &Arc<Chart>, n: i64) -> Self {
        Self::constant(chart, C::from_i64(n))
    }

    /// The generator with index `i`.
    pub fn gen(chart: &Arc<Chart>, i: usize) -> Self {
        let mut e = vec![0; chart.len()];
        e[i] = 1;
        Self::zero(chart).with_term(Monomial(e), C::one())
    }

    pub fn var(chart: &Arc<Chart>, name: &str) -> Result<Self> {
        Ok(Self::gen(chart, chart.require(name)?))
    }

    /// `g^k` for a generator; negative `k` only for invertible generators.
    pub fn gen_pow(chart: &Arc<Chart>, i: usize, k: i32) -> Result<Self> {
        let mut e = vec![0; chart.len()];
        e[i] = k;
        Self::monomial(chart, Monomial(e), C::one())
    }

    pub fn monomial(chart: &Arc<Chart>, m: Monomial, c: C) -> Result<Self> {
        m.validate(chart)?;
        if chart.parity_check_zero(&m) {
            return Ok(Self::zero(chart));
        }
        Ok(Self::zero(chart).with_term(m, c))
    }

    fn with_term(mut self, m: Monomial, c: C) -> Self {
        self.add_term(m, c);
        self
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.chart.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !same_chart(&self.chart, &other.chart) {
            return Err(Error::ChartMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !same_chart(&self.chart, &other.chart) {
            return Err(Error::ChartMismatch);
        }
        let mut out = Self::zero(&self.chart);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, neg)) = mul_monomials(&self.chart, a, b) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        SuperPoly {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(&self.chart);
        }
        SuperPoly {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.chart);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Left graded derivative with respect to generator `v`.
    pub fn deriv(&self, v: usize) -> Self {
        self.derivative(v, false)
    }

    /// Right graded derivative `F ∂←_v`: the sign counts odd factors after `v`.
    pub fn deriv_right(&self, v: usize) -> Self {
        self.derivative(v, true)
    }

    pub fn deriv_by(&self, name: &str) -> Result<Self> {
        Ok(self.deriv(self.chart.require(name)?))
    }

    fn derivative(&self, v: usize, right: bool) -> Self {
        let chart = &self.chart;
        let mut out = Self::zero(chart);
        let odd = chart.parity(v) == 1;
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[v] -= 1;
            let c = if odd {
                let k = if right {
                    odd_count(chart, m, v + 1..m.0.len())
                } else {
                    odd_count(chart, m, 0..v)
                };
                if k % 2 == 1 {
                    -c.clone()
                } else {
                    c.clone()
                }
            } else {
                c.clone() * C::from_i64(e as i64)
            };
            out.add_term(nm, c);
        }
        out
    }

    /// Parity of a homogeneous polynomial; zero counts as even, `None` if mixed.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity(&self.chart));
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    pub fn weight(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|m| m.weight(&self.chart));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn grade(&self) -> Grade {
        let parity = match self.parity() {
            Some(0) => ParityGrade::Even,
            Some(_) => ParityGrade::Odd,
            None => ParityGrade::Mixed,
        };
        let weight = if self.is_zero() {
            WeightGrade::Zero
        } else {
            match self.weight() {
                Some(w) => WeightGrade::Homogeneous(w),
                None => WeightGrade::Inhomogeneous,
            }
        };
        Grade { parity, weight }
    }

    /// Splits into (even part, odd part).
    pub fn parity_parts(&self) -> (Self, Self) {
        let mut even = Self::zero(&self.chart);
        let mut odd = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let target = if m.parity(&self.chart) == 0 { &mut even } else { &mut odd };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    /// The parity automorphism: negates odd terms.
    pub fn parity_map(&self) -> Self {
        let (e, o) = self.parity_parts();
        &e - &o
    }

    /// Drops every term containing an odd factor.
    pub fn body(&self) -> Self {
        self.filter(|m| !m.has_odd(&self.chart))
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        SuperPoly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Generators that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.chart.len()).filter(|&i| self.terms.keys().any(|m| m.0[i] != 0)).collect()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] != 0)
    }

    /// Rewrites the polynomial on another chart, matching generators by name.
    pub fn transport(&self, target: &Arc<Chart>) -> Result<Self> {
        if same_chart(&self.chart, target) {
            let mut p = self.clone();
            p.chart = target.clone();
            return Ok(p);
        }
        let mut map = vec![usize::MAX; self.chart.len()];
        for i in self.support() {
            let g = self.chart.gen(i);
            let j = target.require(&g.name)?;
            let h = target.gen(j);
            if h.parity != g.parity {
                return Err(Error::Domain(format!("`{}` changes parity between charts", g.name)));
            }
            map[i] = j;
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            // odd factors in source order, listed by target index
            let mut odd_seq = Vec::new();
            for (i, &k) in m.0.iter().enumerate() {
                if k != 0 {
                    e[map[i]] = k;
                    if self.chart.parity(i) == 1 {
                        odd_seq.push(map[i]);
                    }
                }
            }
            let nm = Monomial(e);
            nm.validate(target)?;
            let mut inv = 0;
            for a in 0..odd_seq.len() {
                for b in a + 1..odd_seq.len() {
                    if odd_seq[a] > odd_seq[b] {
                        inv += 1;
                    }
                }
            }
            out.add_term(nm, if inv % 2 == 1 { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Divides by a monomial with invertible support (e.g. a power of `t`).
    pub fn div_unit_monomial(&self, m: &Monomial, c: &C) -> Result<Self> {
        for (i, &e) in m.0.iter().enumerate() {
            if e != 0 && !self.chart.gen(i).invertible {
                return Err(Error::Domain(format!("`{}` is not invertible", self.chart.gen(i).name)));
            }
        }
        let inv = Monomial(m.0.iter().map(|e| -e).collect());
        let unit = Self::monomial(&self.chart, inv, C::one() / c.clone())?;
        Ok(&unit * self)
    }

    /// Substitutes generator `v` by `s * v` (only meaningful for even `v`).
    pub fn rescale_gen(&self, v: usize, s: &C) -> Self {
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut f = C::one();
            for _ in 0..e.unsigned_abs() {
                f = f * s.clone();
            }
            if e < 0 {
                f = C::one() / f;
            }
            out.add_term(m.clone(), c.clone() * f);
        }
        out
    }

    /// Degree in the generators listed in `vars`.
    pub fn degree_in(&self, vars: &[usize]) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| vars.iter().map(|&i| m.0[i] as i64).sum::<i64>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl Chart {
    fn parity_check_zero(&self, m: &Monomial) -> bool {
        m.0.iter().enumerate().any(|(i, &e)| self.parity(i) == 1 && e > 1)
    }
}

impl<C: Scalar> PartialEq for SuperPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart) && self.terms == other.terms
    }
}

impl<C: Scalar> fmt::Debug for SuperPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPoly({self})")
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, chart: &Chart, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&chart.gen(i).name)?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms in descending graded-lex order, `p/q` coefficients.
impl<C: Scalar> fmt::Display for SuperPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.chart, m)?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, C: Scalar> $tr<&'a SuperPoly<C>> for &'a SuperPoly<C> {
            type Output = SuperPoly<C>;
            fn $method(self, rhs: &'a SuperPoly<C>) -> SuperPoly<C> {
                self.$checked(rhs).expect("polynomials on different charts")
            }
        }
        impl<C: Scalar> $tr<SuperPoly<C>> for SuperPoly<C> {
            type Output = SuperPoly<C>;
            fn $method(self, rhs: SuperPoly<C>) -> SuperPoly<C> {
                self.$checked(&rhs).expect("polynomials on different charts")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<C: Scalar> Neg for &SuperPoly<C> {
    type Output = SuperPoly<C>;
    fn neg(self) -> SuperPoly<C> {
        self.neg_ref()
    }
}

impl<C: Scalar> Neg for SuperPoly<C> {
    type Output = SuperPoly<C>;
    fn neg(self) -> SuperPoly<C> {
        self.neg_ref()
    }
}
