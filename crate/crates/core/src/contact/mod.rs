//! Contact forms through their symplectization `ω = d(t·α)`.
//!
//! The two-form matrix `K_{ab} = (∂_{dy^a} ω) ∂←_{dy^b}` and the Poisson
//! tensor `P^{ab} = {y^a, y^b}` are related by `P = S K⁻¹` with
//! `S = diag((−1)^{g(y^c)})`. With this orientation `dt·dz` gives
//! `{z, t} = 1`, which is what the coordinate bracket tables of the normal
//! forms require.

pub mod normal_forms;

use std::sync::Arc;

use crate::algebra::SuperPoly;
use crate::brackets::{Bracket, CanonicalBracket, PoissonTensor};
use crate::charts::{extend_with_fiber, Chart};
use crate::error::{Error, Result};
use crate::forms::FormChart;
use crate::jacobi::HomogeneousBracket;
use crate::linalg::{invert, Inverse, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct OneForm<C: Scalar> {
    chart: Arc<Chart>,
    coeffs: Vec<SuperPoly<C>>,
}

impl<C: Scalar> OneForm<C> {
    pub fn new(chart: &Arc<Chart>, coeffs: Vec<SuperPoly<C>>) -> Result<Self> {
        if coeffs.len() != chart.len() {
            return Err(Error::Dimension(format!("expected {} coefficients", chart.len())));
        }
        let coeffs = coeffs.iter().map(|c| c.transport(chart)).collect::<Result<_>>()?;
        Ok(OneForm {
            chart: chart.clone(),
            coeffs,
        })
    }

    /// From `(generator, coefficient)` entries; the rest are zero.
    pub fn from_entries(chart: &Arc<Chart>, entries: &[(&str, SuperPoly<C>)]) -> Result<Self> {
        let mut coeffs = vec![SuperPoly::zero(chart); chart.len()];
        for (name, c) in entries {
            let i = chart.require(name)?;
            coeffs[i] = &coeffs[i] + &c.transport(chart)?;
        }
        Ok(OneForm {
            chart: chart.clone(),
            coeffs,
        })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn coeffs(&self) -> &[SuperPoly<C>] {
        &self.coeffs
    }

    /// Total parity with `g(dx^a) = g(x^a)`; `None` if inhomogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut out: Option<u8> = None;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = c.parity()? ^ self.chart.parity(a);
            match out {
                None => out = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or(0))
    }

    /// `ψ·α`.
    pub fn scaled(&self, psi: &SuperPoly<C>) -> Result<Self> {
        let psi = psi.transport(&self.chart)?;
        Ok(OneForm {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().map(|c| &psi * c).collect(),
        })
    }

    pub fn as_form(&self, fc: &FormChart) -> Result<SuperPoly<C>> {
        let lifted: Vec<SuperPoly<C>> = self.coeffs.iter().map(|c| c.transport(fc.base())).collect::<Result<_>>()?;
        let mut all = vec![SuperPoly::zero(fc.base()); fc.dim()];
        for (a, c) in lifted.into_iter().enumerate() {
            let i = fc.base().require(&self.chart.gen(a).name)?;
            all[i] = c;
        }
        fc.one_form(&all)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm<C: Scalar> {
    forms: FormChart,
    poly: SuperPoly<C>,
    matrix: Matrix<C>,
}

impl<C: Scalar> TwoForm<C> {
    pub fn from_poly(forms: FormChart, poly: SuperPoly<C>) -> Result<Self> {
        let poly = poly.transport(forms.chart())?;
        if !poly.is_zero() && forms.form_degree(&poly) != Some(2) {
            return Err(Error::Domain("not a homogeneous two-form".into()));
        }
        let matrix = forms.two_form_matrix(&poly);
        Ok(TwoForm { forms, poly, matrix })
    }

    /// Parses a two-form written in the differentials `d_<x>` of `base`.
    pub fn parse(base: &Arc<Chart>, text: &str) -> Result<Self> {
        let forms = FormChart::new(base)?;
        let poly = crate::algebra::parse_poly(forms.chart(), text)?;
        Self::from_poly(forms, poly)
    }

    pub fn forms(&self) -> &FormChart {
        &self.forms
    }

    pub fn poly(&self) -> &SuperPoly<C> {
        &self.poly
    }

    pub fn matrix(&self) -> &Matrix<C> {
        &self.matrix
    }

    pub fn base(&self) -> &Arc<Chart> {
        self.forms.base()
    }

    pub fn parity(&self) -> Option<u8> {
        self.forms.form_parity(&self.poly)
    }

    pub fn is_closed(&self) -> bool {
        self.forms.d(&self.poly).is_zero()
    }
}

/// `ω = d(t·α) = dt·α + t·dα` on `ℝ^× × M`.
pub fn symplectize<C: Scalar>(alpha: &OneForm<C>) -> Result<TwoForm<C>> {
    let ext = Arc::new(extend_with_fiber(alpha.chart())?);
    let forms = FormChart::new(&ext)?;
    let t = forms.coord::<C>(0);
    let a = alpha.as_form(&forms)?;
    let w = forms.d(&(&t * &a));
    TwoForm::from_poly(forms, w)
}

fn s_sign(base: &Chart, c: usize) -> bool {
    base.parity(c) == 1
}

/// Result of inverting a two-form.
#[derive(Clone, Debug)]
pub enum Inversion<C: Scalar> {
    Symplectic {
        tensor: PoissonTensor<C>,
        carrier: CanonicalBracket,
        hamiltonian: SuperPoly<C>,
    },
    Degenerate {
        body_det: SuperPoly<C>,
    },
}

impl<C: Scalar> Inversion<C> {
    pub fn is_symplectic(&self) -> bool {
        matches!(self, Inversion::Symplectic { .. })
    }
}

/// Carrier for a Poisson tensor of parity `k`: `ΠT*M` for even tensors
/// (Schouten bracket), `T*M` for odd ones.
pub fn carrier_for(base: &Chart, k: u8) -> Result<CanonicalBracket> {
    CanonicalBracket::cotangent(base, k == 0)
}

pub fn invert_two_form<C: Scalar>(w: &TwoForm<C>) -> Result<Inversion<C>> {
    let base = w.base().clone();
    let k = w
        .parity()
        .ok_or_else(|| Error::Domain("two-form has inhomogeneous parity".into()))?;
    let kinv = match invert(w.matrix()) {
        Inverse::Invertible(m) => m,
        Inverse::Degenerate(d) => {
            return Ok(Inversion::Degenerate {
                body_det: d.transport(&base)?,
            })
        }
    };
    let n = base.len();
    let mut p = Vec::with_capacity(n);
    for (a, row) in kinv.iter().enumerate() {
        let neg = s_sign(&base, a);
        let r = row
            .iter()
            .map(|e| {
                let e = w.forms().lower(e)?;
                Ok(if neg { -e } else { e })
            })
            .collect::<Result<Vec<_>>>()?;
        p.push(r);
    }
    let tensor = PoissonTensor::new(base.clone(), k, p)?;
    let carrier = carrier_for(&base, k)?;
    let hamiltonian = tensor.to_hamiltonian(&carrier)?;
    Ok(Inversion::Symplectic {
        tensor,
        carrier,
        hamiltonian,
    })
}

/// Inverse direction: the symplectic form of a nondegenerate tensor.
pub fn tensor_to_form<C: Scalar>(tensor: &PoissonTensor<C>) -> Result<TwoForm<C>> {
    let base = Bracket::chart(tensor).clone();
    let forms = FormChart::new(&base)?;
    let sp: Matrix<C> = tensor
        .matrix()
        .iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .map(|e| {
                    let e = forms.lift(e)?;
                    Ok(if s_sign(&base, a) { -e } else { e })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let kmat = match invert(&sp) {
        Inverse::Invertible(m) => m,
        Inverse::Degenerate(_) => return Err(Error::Domain("Poisson tensor is degenerate".into())),
    };
    let poly = forms.two_form_from_matrix(&kmat)?;
    TwoForm::from_poly(forms, poly)
}

/// The Poisson tensor read back from a quadratic Hamiltonian on the
/// carrier matching its parity.
pub fn hamiltonian_to_tensor<C: Scalar>(base: &Arc<Chart>, j: &SuperPoly<C>) -> Result<PoissonTensor<C>> {
    let k = j
        .parity()
        .ok_or_else(|| Error::Domain("Hamiltonian must have homogeneous parity".into()))?;
    let carrier = carrier_for(base, k)?;
    PoissonTensor::from_hamiltonian(&carrier, base, &j.transport(carrier.chart())?)
}

/// Contact iff `α` is parity-homogeneous and `d(t·α)` is symplectic.
pub fn check_contact<C: Scalar>(alpha: &OneForm<C>) -> bool {
    if alpha.parity().is_none() {
        return false;
    }
    let Ok(w) = symplectize(alpha) else { return false };
    if !w.is_closed() {
        return false;
    }
    matches!(invert_two_form(&w), Ok(Inversion::Symplectic { .. }))
}

/// The Legendre bracket `{F, G} = {tF, tG}_ω / t` of a contact form.
#[derive(Clone, Debug)]
pub struct Legendre<C: Scalar> {
    inner: HomogeneousBracket<C>,
}

impl<C: Scalar> Legendre<C> {
    pub fn new(alpha: &OneForm<C>) -> Result<Self> {
        let parity = alpha.parity().ok_or(Error::NotContact)?;
        let w = symplectize(alpha)?;
        match invert_two_form(&w)? {
            Inversion::Symplectic { carrier, hamiltonian, .. } => Ok(Legendre {
                inner: HomogeneousBracket::new(alpha.chart(), carrier, hamiltonian, parity)?,
            }),
            Inversion::Degenerate { .. } => Err(Error::NotContact),
        }
    }

    /// Parity of the Legendre bracket (that of `α`).
    pub fn parity(&self) -> u8 {
        self.inner.parity()
    }

    pub fn hamiltonian(&self) -> &SuperPoly<C> {
        self.inner.hamiltonian()
    }

    pub fn as_homogeneous(&self) -> &HomogeneousBracket<C> {
        &self.inner
    }

    pub fn bracket(&self, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        self.inner.bracket(f, g)
    }
}

pub fn legendre_bracket<C: Scalar>(alpha: &OneForm<C>, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
    Legendre::new(alpha)?.bracket(f, g)
}
