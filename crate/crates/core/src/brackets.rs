//! Canonical (Schouten / symmetric Schouten / even symplectic) brackets on
//! Darboux charts, brackets given by a Poisson tensor, and derived brackets.
//!
//! Convention: `{p_a, x^b} = δ_a^b`, and for bracket parity `k`
//!
//! ```text
//! {F,G} = Σ_a (F ∂←_{p_a})(∂_{x_a} G) − s_a (F ∂←_{x_a})(∂_{p_a} G),   s_a = (−1)^{g(x_a)(1+k)}
//! ```
//!
//! which is graded antisymmetric, Leibniz and Jacobi for `k = g(p_a) − g(x_a)`.

use std::sync::Arc;

use crate::algebra::SuperPoly;
use crate::charts::{cotangent_lift, Chart};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub trait Bracket<C: Scalar> {
    fn chart(&self) -> &Arc<Chart>;

    /// Parity `k` of the bracket.
    fn parity(&self) -> u8;

    fn bracket(&self, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>>;

    /// `{{F, H}, G}`.
    fn derived_bracket(&self, h: &SuperPoly<C>, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        let fh = self.bracket(f, h)?;
        self.bracket(&fh, g)
    }

    fn is_homological(&self, h: &SuperPoly<C>) -> Result<bool> {
        Ok(self.bracket(h, h)?.is_zero())
    }
}

fn on_chart<C: Scalar>(chart: &Arc<Chart>, f: &SuperPoly<C>) -> Result<()> {
    if Arc::ptr_eq(chart, f.chart()) || **chart == **f.chart() {
        Ok(())
    } else {
        Err(Error::ChartMismatch)
    }
}

fn sign<C: Scalar>(neg: bool, p: SuperPoly<C>) -> SuperPoly<C> {
    if neg {
        -p
    } else {
        p
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalBracket {
    chart: Arc<Chart>,
    k: u8,
}

impl CanonicalBracket {
    /// Every generator must sit in a Darboux pair, and all pairs must shift
    /// parity by the same amount.
    pub fn new(chart: Arc<Chart>) -> Result<Self> {
        let pairs = chart.pairs();
        if pairs.is_empty() {
            return Err(Error::NoDarbouxPairs);
        }
        let k = chart.parity(pairs[0].0) ^ chart.parity(pairs[0].1);
        for &(b, m) in pairs {
            if chart.parity(b) ^ chart.parity(m) != k {
                return Err(Error::Domain("Darboux pairs with different parity shifts".into()));
            }
        }
        if 2 * pairs.len() != chart.len() {
            return Err(Error::Domain("every generator must belong to a Darboux pair".into()));
        }
        Ok(CanonicalBracket { chart, k })
    }

    /// Carrier for base chart `base`: `ΠT*` (Schouten, odd) when `odd` is
    /// true, otherwise `T*` (even symplectic).
    pub fn cotangent(base: &Chart, odd: bool) -> Result<Self> {
        Self::new(Arc::new(cotangent_lift(base, 1, odd)?))
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn parity(&self) -> u8 {
        self.k
    }

    pub fn s(&self, base: usize) -> bool {
        // true means s_a = −1
        self.chart.parity(base) * (1 + self.k) % 2 == 1
    }
}

impl<C: Scalar> Bracket<C> for CanonicalBracket {
    fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    fn parity(&self) -> u8 {
        self.k
    }

    fn bracket(&self, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        on_chart(&self.chart, f)?;
        on_chart(&self.chart, g)?;
        let mut out = SuperPoly::zero(&self.chart);
        for &(x, p) in self.chart.pairs() {
            if f.involves(p) && g.involves(x) {
                out = &out + &(&f.deriv_right(p) * &g.deriv(x));
            }
            if f.involves(x) && g.involves(p) {
                let t = &f.deriv_right(x) * &g.deriv(p);
                out = if self.s(x) { &out + &t } else { &out - &t };
            }
        }
        Ok(out)
    }
}

/// A bracket on a chart given by the matrix `P^{ab} = {y^a, y^b}`:
/// `{F,G} = Σ (F ∂←_a) P^{ab} (∂_b G)`.
#[derive(Clone, Debug)]
pub struct PoissonTensor<C: Scalar> {
    chart: Arc<Chart>,
    k: u8,
    p: Vec<Vec<SuperPoly<C>>>,
}

impl<C: Scalar> PoissonTensor<C> {
    pub fn new(chart: Arc<Chart>, k: u8, p: Vec<Vec<SuperPoly<C>>>) -> Result<Self> {
        let n = chart.len();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("Poisson tensor must be {n}×{n}")));
        }
        for row in &p {
            for e in row {
                on_chart(&chart, e)?;
            }
        }
        Ok(PoissonTensor { chart, k: k & 1, p })
    }

    /// Reads off `P^{ab} = {{y^a, J}, y^b}` from a Hamiltonian on a carrier
    /// whose base generators are those of `base` (matched by name).
    pub fn from_hamiltonian(carrier: &CanonicalBracket, base: &Arc<Chart>, j: &SuperPoly<C>) -> Result<Self> {
        let k = j
            .parity()
            .ok_or_else(|| Error::Domain("Hamiltonian must have homogeneous parity".into()))?;
        let ys: Vec<SuperPoly<C>> = (0..base.len())
            .map(|a| SuperPoly::gen(base, a).transport(carrier.chart()))
            .collect::<Result<_>>()?;
        let mut p = Vec::with_capacity(ys.len());
        for ya in &ys {
            let yj = carrier.bracket(ya, j)?;
            let mut row = Vec::with_capacity(ys.len());
            for yb in &ys {
                row.push(carrier.bracket(&yj, yb)?.transport(base)?);
            }
            p.push(row);
        }
        Self::new(base.clone(), k, p)
    }

    /// The quadratic Hamiltonian on `carrier` whose derived bracket is this
    /// tensor. Inverse of [`PoissonTensor::from_hamiltonian`].
    pub fn to_hamiltonian(&self, carrier: &CanonicalBracket) -> Result<SuperPoly<C>> {
        let cc = carrier.chart();
        let n = self.chart.len();
        let mut mom = Vec::with_capacity(n);
        for a in 0..n {
            let base = cc.require(&self.chart.gen(a).name)?;
            let m = cc.momentum_of(base).ok_or(Error::NoDarbouxPairs)?;
            mom.push((base, m));
        }
        let mut out = SuperPoly::zero(cc);
        for a in 0..n {
            let (ya, xa) = mom[a];
            let sa = carrier.s(ya);
            let ga = cc.parity(xa);
            for b in a..n {
                let pab = &self.p[a][b];
                if pab.is_zero() {
                    continue;
                }
                let gp = pab
                    .parity()
                    .ok_or_else(|| Error::Domain("tensor entries must have homogeneous parity".into()))?;
                let c = pab.transport(cc)?;
                let xi_a = SuperPoly::gen(cc, xa);
                let term = if a == b {
                    if ga == 1 {
                        return Err(Error::Domain(format!(
                            "nonzero diagonal entry for `{}` has no quadratic carrier term",
                            self.chart.gen(a).name
                        )));
                    }
                    &c.scale(&C::ratio(1, 2)) * &(&xi_a * &xi_a)
                } else {
                    let neg = (gp * ga) % 2 == 1;
                    &sign(neg, c) * &(&xi_a * &SuperPoly::gen(cc, mom[b].1))
                };
                out = if sa { &out + &term } else { &out - &term };
            }
        }
        Ok(out)
    }

    pub fn entry(&self, a: usize, b: usize) -> &SuperPoly<C> {
        &self.p[a][b]
    }

    pub fn matrix(&self) -> &[Vec<SuperPoly<C>>] {
        &self.p
    }
}

impl<C: Scalar> PartialEq for PoissonTensor<C> {
    fn eq(&self, other: &Self) -> bool {
        *self.chart == *other.chart && self.k == other.k && self.p == other.p
    }
}

impl<C: Scalar> Bracket<C> for PoissonTensor<C> {
    fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    fn parity(&self) -> u8 {
        self.k
    }

    fn bracket(&self, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        on_chart(&self.chart, f)?;
        on_chart(&self.chart, g)?;
        let n = self.chart.len();
        let df: Vec<Option<SuperPoly<C>>> = (0..n).map(|a| f.involves(a).then(|| f.deriv_right(a))).collect();
        let dg: Vec<Option<SuperPoly<C>>> = (0..n).map(|b| g.involves(b).then(|| g.deriv(b))).collect();
        let mut out = SuperPoly::zero(&self.chart);
        for a in 0..n {
            let Some(fa) = &df[a] else { continue };
            for b in 0..n {
                let Some(gb) = &dg[b] else { continue };
                if self.p[a][b].is_zero() {
                    continue;
                }
                out = &out + &(&(fa * &self.p[a][b]) * gb);
            }
        }
        Ok(out)
    }
}
