//! The contact Courant algebroid `ℰ = (ℝ × TM) ⊕ (ℝ* × T*M)` and its
//! Dorfman bracket, both directly and as the derived bracket of the de Rham
//! Hamiltonian on `T*[2]T[1](ℝ^× × ℝ^m)`.

use std::sync::Arc;

use super::base_chart;
use crate::algebra::SuperPoly;
use crate::brackets::{Bracket, CanonicalBracket};
use crate::charts::{Chart, Generator};
use crate::error::{Error, Result};
use crate::forms::FormChart;
use crate::scalar::Scalar;

/// `(X, f) + (α, g)` with polynomial components on `ℝ^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section<C: Scalar> {
    pub x: Vec<SuperPoly<C>>,
    pub f: SuperPoly<C>,
    pub alpha: Vec<SuperPoly<C>>,
    pub g: SuperPoly<C>,
}

impl<C: Scalar> Section<C> {
    pub fn zero(base: &Arc<Chart>) -> Self {
        let z = SuperPoly::zero(base);
        Section {
            x: vec![z.clone(); base.len()],
            f: z.clone(),
            alpha: vec![z.clone(); base.len()],
            g: z,
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    fn check(&self, m: usize) -> Result<()> {
        if self.x.len() != m || self.alpha.len() != m {
            return Err(Error::Dimension(format!("section components must have length {m}")));
        }
        Ok(())
    }
}

impl<C: Scalar> std::fmt::Display for Section<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |v: &[SuperPoly<C>]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "([{}], {}) + ([{}], {})", list(&self.x), self.f, list(&self.alpha), self.g)
    }
}

fn forms_of<C: Scalar>(u: &Section<C>) -> Result<FormChart> {
    FormChart::new(&base_chart(u.dim())?)
}

/// ```text
/// {(X₁,f₁)+(α₁,g₁), (X₂,f₂)+(α₂,g₂)} = ([X₁,X₂], X₁(f₂) − X₂(f₁))
///   + (L_{X₁}α₂ − i_{X₂}dα₁ + f₁α₂ − f₂α₁ + f₂dg₁ + g₂df₁,
///      X₁(g₂) − X₂(g₁) + i_{X₂}α₁ + f₁g₂)
/// ```
pub fn wade_bracket<C: Scalar>(u: &Section<C>, v: &Section<C>) -> Result<Section<C>> {
    let m = u.dim();
    u.check(m)?;
    v.check(m)?;
    let fc = forms_of(u)?;
    let base = fc.base().clone();
    let (a1, a2) = (fc.one_form(&u.alpha)?, fc.one_form(&v.alpha)?);
    let lift = |p: &SuperPoly<C>| fc.lift(p);
    let (f1, f2, g1, g2) = (lift(&u.f)?, lift(&v.f)?, lift(&u.g)?, lift(&v.g)?);

    let x = fc.vector_bracket(&u.x, &v.x)?;
    let f = &fc.apply(&u.x, &v.f)? - &fc.apply(&v.x, &u.f)?;
    let mut alpha = &fc.lie(&u.x, &a2)? - &fc.interior(&v.x, &fc.d(&a1))?;
    alpha = &alpha + &(&(&f1 * &a2) - &(&f2 * &a1));
    alpha = &alpha + &(&(&f2 * &fc.d(&g1)) + &(&g2 * &fc.d(&f1)));
    let g = &(&(&fc.apply(&u.x, &v.g)? - &fc.apply(&v.x, &u.g)?) + &fc.lower(&fc.interior(&v.x, &a1)?)?) + &(&u.f * &v.g);
    let x = x.iter().map(|p| p.transport(&base)).collect::<Result<Vec<_>>>()?;
    Ok(Section {
        x,
        f,
        alpha: fc.one_form_coeffs(&alpha)?,
        g,
    })
}

/// `⟨u, v⟩ = ½(⟨X₁,α₂⟩ + ⟨X₂,α₁⟩ + f₁g₂ + f₂g₁)`.
pub fn wade_pairing<C: Scalar>(u: &Section<C>, v: &Section<C>) -> Result<SuperPoly<C>> {
    u.check(v.dim())?;
    let mut s = &(&u.f * &v.g) + &(&v.f * &u.g);
    for a in 0..u.dim() {
        s = &s + &(&(&u.x[a] * &v.alpha[a]) + &(&v.x[a] * &u.alpha[a]));
    }
    Ok(s.scale(&C::ratio(1, 2)))
}

/// `ρ(u)(φ) = X(φ) + fφ`.
pub fn wade_anchor<C: Scalar>(u: &Section<C>, phi: &SuperPoly<C>) -> Result<SuperPoly<C>> {
    let fc = forms_of(u)?;
    Ok(&fc.apply(&u.x, phi)? + &(&u.f * phi))
}

/// `T*[2]T[1](ℝ^× × ℝ^m)` with coordinates `t, x^a`, velocities `dt, dx^a`
/// and momenta `p_*` of `t, x^a`, `pi_*` of the velocities. Gradings are
/// (weight, ℝ^×-degree); every Darboux pair has total degree 1.
#[derive(Clone, Debug)]
pub struct DeRhamModel<C: Scalar> {
    m: usize,
    base: Arc<Chart>,
    bracket: CanonicalBracket,
    hamiltonian: SuperPoly<C>,
}

impl<C: Scalar> DeRhamModel<C> {
    pub fn new(m: usize) -> Result<Self> {
        let xs: Vec<String> = (1..=m).map(|a| format!("x{a}")).collect();
        let mut gens = vec![Generator::even("t", vec![0, 1]).invertible()];
        gens.extend(xs.iter().map(|x| Generator::even(x.clone(), vec![0, 0])));
        gens.push(Generator::odd("dt", vec![1, 1]));
        gens.extend(xs.iter().map(|x| Generator::odd(format!("d{x}"), vec![1, 0])));
        gens.push(Generator::even("p_t", vec![2, 0]));
        gens.extend(xs.iter().map(|x| Generator::even(format!("p_{x}"), vec![2, 1])));
        gens.push(Generator::odd("pi_t", vec![1, 0]));
        gens.extend(xs.iter().map(|x| Generator::odd(format!("pi_{x}"), vec![1, 1])));
        let mut pairs = vec![("t".to_string(), "p_t".to_string()), ("dt".to_string(), "pi_t".to_string())];
        for x in &xs {
            pairs.push((x.clone(), format!("p_{x}")));
            pairs.push((format!("d{x}"), format!("pi_{x}")));
        }
        let chart = Arc::new(Chart::with_grading(gens, 2)?.with_pairs(&pairs)?);
        let bracket = CanonicalBracket::new(chart.clone())?;
        let v = |n: &str| SuperPoly::<C>::var(&chart, n);
        let mut h = &v("dt")? * &v("p_t")?;
        for x in &xs {
            h = &h + &(&v(&format!("d{x}"))? * &v(&format!("p_{x}"))?);
        }
        Ok(DeRhamModel {
            m,
            base: base_chart(m)?,
            bracket,
            hamiltonian: h,
        })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.bracket.chart()
    }

    pub fn hamiltonian(&self) -> &SuperPoly<C> {
        &self.hamiltonian
    }

    pub fn is_homological(&self) -> bool {
        self.bracket
            .bracket(&self.hamiltonian, &self.hamiltonian)
            .map(|r| r.is_zero())
            .unwrap_or(false)
    }

    fn var(&self, n: &str) -> SuperPoly<C> {
        SuperPoly::var(self.chart(), n).expect("de Rham chart coordinate")
    }

    /// `X^a π_a + f tπ_t + t α_a dx^a + g dt`.
    pub fn embed(&self, u: &Section<C>) -> Result<SuperPoly<C>> {
        u.check(self.m)?;
        let c = self.chart();
        let t = self.var("t");
        let mut out = &(&(&u.f.transport(c)? * &t) * &self.var("pi_t")) + &(&u.g.transport(c)? * &self.var("dt"));
        for a in 0..self.m {
            let x = format!("x{}", a + 1);
            out = &out + &(&u.x[a].transport(c)? * &self.var(&format!("pi_{x}")));
            out = &out + &(&(&t * &u.alpha[a].transport(c)?) * &self.var(&format!("d{x}")));
        }
        Ok(out)
    }

    /// Inverse of [`DeRhamModel::embed`] on functions of its form.
    pub fn extract(&self, e: &SuperPoly<C>) -> Result<Section<C>> {
        let c = self.chart();
        let t_inv = SuperPoly::gen_pow(c, c.require("t")?, -1)?;
        let coeff = |name: &str, scale_t: bool| -> Result<SuperPoly<C>> {
            let d = e.deriv_by(name)?;
            let d = if scale_t { &d * &t_inv } else { d };
            d.transport(&self.base)
                .map_err(|_| Error::Closure(format!("`{e}` is not a homogeneous section")))
        };
        let mut u = Section {
            x: Vec::with_capacity(self.m),
            f: coeff("pi_t", true)?,
            alpha: Vec::with_capacity(self.m),
            g: coeff("dt", false)?,
        };
        for a in 1..=self.m {
            u.x.push(coeff(&format!("pi_x{a}"), false)?);
            u.alpha.push(coeff(&format!("dx{a}"), true)?);
        }
        if self.embed(&u)? != *e {
            return Err(Error::Closure(format!("`{e}` is not a homogeneous section")));
        }
        Ok(u)
    }

    /// `{u, v} = {{{{u, H}}, v}}` on embedded sections.
    pub fn derived(&self, u: &Section<C>, v: &Section<C>) -> Result<Section<C>> {
        let b = self.bracket.derived_bracket(&self.hamiltonian, &self.embed(u)?, &self.embed(v)?)?;
        self.extract(&b)
    }

    /// `½ {{u, v}} / t`.
    pub fn pairing(&self, u: &Section<C>, v: &Section<C>) -> Result<SuperPoly<C>> {
        let c = self.chart();
        let b = self.bracket.bracket(&self.embed(u)?, &self.embed(v)?)?;
        let t_inv = SuperPoly::gen_pow(c, c.require("t")?, -1)?;
        (&b * &t_inv).scale(&C::ratio(1, 2)).transport(&self.base)
    }

    /// `{u, tφ} / t`.
    pub fn anchor(&self, u: &Section<C>, phi: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        let c = self.chart();
        let tphi = &self.var("t") * &phi.transport(c)?;
        let b = self.bracket.derived_bracket(&self.hamiltonian, &self.embed(u)?, &tphi)?;
        let t_inv = SuperPoly::gen_pow(c, c.require("t")?, -1)?;
        (&b * &t_inv).transport(&self.base)
    }
}

/// All sections with exactly one nonzero component, that component a
/// monomial of degree `≤ max_deg` (coefficient 1).
pub fn monomial_sections<C: Scalar>(m: usize, max_deg: u32) -> Result<Vec<Section<C>>> {
    let base = base_chart(m)?;
    let mut monos = vec![SuperPoly::one(&base)];
    let mut frontier = monos.clone();
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for p in &frontier {
            for a in 0..m {
                let q = p * &SuperPoly::gen(&base, a);
                if !monos.contains(&q) && !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        monos.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for mono in &monos {
        for slot in 0..2 * m + 2 {
            let mut s = Section::zero(&base);
            match slot {
                0 => s.f = mono.clone(),
                1 => s.g = mono.clone(),
                k if k < m + 2 => s.x[k - 2] = mono.clone(),
                k => s.alpha[k - m - 2] = mono.clone(),
            }
            out.push(s);
        }
    }
    Ok(out)
}
