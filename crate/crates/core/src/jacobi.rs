//! Jacobi structures `(Λ, Γ, f)`, their poissonization
//! `𝒥 = t⁻¹Λ + Γ·∂_t + t f ∂_t·∂_t` on `ℝ^× × M`, and the induced bracket
//! `{F, G} = {tF, tG}_𝒥 / t`.
//!
//! Multivector fields live on the carrier of [`carrier_for`]: `ΠT*M` for
//! even structures, `T*M` for odd ones.

use std::sync::Arc;

use crate::algebra::{Monomial, SuperPoly};
use crate::brackets::{Bracket, CanonicalBracket};
use crate::charts::{extend_with_fiber, Chart};
use crate::contact::carrier_for;
use crate::error::{Error, Result};
use crate::sampling::Sampler;
use crate::scalar::Scalar;

/// A bracket on `M` obtained from a Hamiltonian on the carrier over
/// `ℝ^× × M` by restricting to 1-homogeneous functions `tF`.
#[derive(Clone, Debug)]
pub struct HomogeneousBracket<C: Scalar> {
    base: Arc<Chart>,
    carrier: CanonicalBracket,
    hamiltonian: SuperPoly<C>,
    t: SuperPoly<C>,
    t_index: usize,
    parity: u8,
}

impl<C: Scalar> HomogeneousBracket<C> {
    pub fn new(base: &Arc<Chart>, carrier: CanonicalBracket, hamiltonian: SuperPoly<C>, parity: u8) -> Result<Self> {
        let t_index = carrier.chart().require("t")?;
        Ok(HomogeneousBracket {
            base: base.clone(),
            t: SuperPoly::gen(carrier.chart(), t_index),
            hamiltonian: hamiltonian.transport(carrier.chart())?,
            carrier,
            t_index,
            parity,
        })
    }

    pub fn base(&self) -> &Arc<Chart> {
        &self.base
    }

    pub fn carrier(&self) -> &CanonicalBracket {
        &self.carrier
    }

    pub fn hamiltonian(&self) -> &SuperPoly<C> {
        &self.hamiltonian
    }

    /// Parity `k` of the bracket on `M`.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn bracket(&self, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        let cc = self.carrier.chart();
        let tf = &self.t * &f.transport(cc)?;
        let tg = &self.t * &g.transport(cc)?;
        let b = self.carrier.derived_bracket(&self.hamiltonian, &tf, &tg)?;
        let mut unit = vec![0; cc.len()];
        unit[self.t_index] = 1;
        let q = b.div_unit_monomial(&Monomial::from_exps(unit), &C::one())?;
        if q.involves(self.t_index) {
            return Err(Error::Internal("bracket of basic functions retained the fiber coordinate".into()));
        }
        q.transport(&self.base)
    }
}

#[derive(Clone, Debug)]
pub struct JacobiTriple<C: Scalar> {
    base: Arc<Chart>,
    parity: u8,
    carrier: CanonicalBracket,
    lambda: SuperPoly<C>,
    gamma: SuperPoly<C>,
    f: SuperPoly<C>,
}

fn fiber_vars(carrier: &CanonicalBracket) -> Vec<usize> {
    carrier.chart().pairs().iter().map(|p| p.1).collect()
}

impl<C: Scalar> JacobiTriple<C> {
    /// `parity` 0 is an even structure (Λ, Γ on `ΠT*M`, `f = 0`), 1 an odd
    /// one (Λ, Γ, f odd on `T*M`).
    pub fn new(base: &Arc<Chart>, parity: u8, lambda: SuperPoly<C>, gamma: SuperPoly<C>, f: SuperPoly<C>) -> Result<Self> {
        let carrier = carrier_for(base, parity)?;
        let cc = carrier.chart().clone();
        let (lambda, gamma, f) = (lambda.transport(&cc)?, gamma.transport(&cc)?, f.transport(&cc)?);
        let fib = fiber_vars(&carrier);
        for (name, p, deg) in [("Λ", &lambda, 2), ("Γ", &gamma, 1), ("f", &f, 0)] {
            if p.is_zero() {
                continue;
            }
            if p.degree_in(&fib) != Some(deg) {
                return Err(Error::InvalidTriple(format!("{name} must have fiber degree {deg}")));
            }
            // tensor parity: momenta of ΠT* count as shifted
            let shift = if parity == 0 { deg as u8 % 2 } else { 0 };
            if p.parity().map(|q| q ^ shift) != Some(parity) {
                let kind = if parity == 0 { "even" } else { "odd" };
                return Err(Error::InvalidTriple(format!("{name} must be {kind}")));
            }
        }
        if parity == 0 && !f.is_zero() {
            return Err(Error::InvalidTriple("an even structure has no f-term".into()));
        }
        Ok(JacobiTriple {
            base: base.clone(),
            parity,
            carrier,
            lambda,
            gamma,
            f,
        })
    }

    /// Parses the three components on the carrier chart of `base`.
    pub fn parse(base: &Arc<Chart>, parity: u8, lambda: &str, gamma: &str, f: &str) -> Result<Self> {
        let carrier = carrier_for(base, parity)?;
        let p = |s: &str| crate::algebra::parse_poly::<C>(carrier.chart(), s);
        Self::new(base, parity, p(lambda)?, p(gamma)?, p(f)?)
    }

    pub fn base(&self) -> &Arc<Chart> {
        &self.base
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn carrier(&self) -> &CanonicalBracket {
        &self.carrier
    }

    pub fn lambda(&self) -> &SuperPoly<C> {
        &self.lambda
    }

    pub fn gamma(&self) -> &SuperPoly<C> {
        &self.gamma
    }

    pub fn f(&self) -> &SuperPoly<C> {
        &self.f
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport<C: Scalar> {
    pub residuals: Vec<(&'static str, SuperPoly<C>)>,
}

impl<C: Scalar> JacobiReport<C> {
    pub fn pass(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

/// Residuals of the structure equations. Odd:
/// `{Λ,Λ} − 2ΓΛ`, `{Γ,Λ} − 2fΛ`, `{Γ,Γ} − 2(fΓ − {f,Λ})`, `Γ(f)`.
/// Even (Schouten bracket): `{Λ,Λ} + 2ΓΛ`, `{Γ,Λ}`.
pub fn check_jacobi<C: Scalar>(j: &JacobiTriple<C>) -> Result<JacobiReport<C>> {
    let b = &j.carrier;
    let br = |x: &SuperPoly<C>, y: &SuperPoly<C>| b.bracket(x, y);
    let two = C::from_i64(2);
    let (l, g, f) = (&j.lambda, &j.gamma, &j.f);
    let residuals = if j.parity == 0 {
        vec![("{Λ,Λ} + 2Γ·Λ", &br(l, l)? + &(g * l).scale(&two)), ("{Γ,Λ}", br(g, l)?)]
    } else {
        vec![
            ("{Λ,Λ} − 2Γ·Λ", &br(l, l)? - &(g * l).scale(&two)),
            ("{Γ,Λ} − 2f·Λ", &br(g, l)? - &(f * l).scale(&two)),
            ("{Γ,Γ} − 2(f·Γ − {f,Λ})", &br(g, g)? - &(&(f * g) - &br(f, l)?).scale(&two)),
            ("Γ(f)", br(g, f)?),
        ]
    };
    Ok(JacobiReport { residuals })
}

/// The poissonization `𝒥` on the carrier over `ℝ^× × M`.
pub fn poissonize<C: Scalar>(j: &JacobiTriple<C>) -> Result<(CanonicalBracket, SuperPoly<C>)> {
    let ext = extend_with_fiber(&j.base)?;
    let carrier = carrier_for(&ext, j.parity)?;
    let cc = carrier.chart().clone();
    let t_index = cc.require("t")?;
    let pt = SuperPoly::gen(&cc, cc.momentum_of(t_index).ok_or(Error::NoDarbouxPairs)?);
    let t = SuperPoly::gen(&cc, t_index);
    let tinv = SuperPoly::gen_pow(&cc, t_index, -1)?;
    let mut h = &(&tinv * &j.lambda.transport(&cc)?) + &(&j.gamma.transport(&cc)? * &pt);
    if j.parity == 1 {
        h = &h + &(&(&t * &j.f.transport(&cc)?) * &(&pt * &pt));
    }
    Ok((carrier, h))
}

pub fn homogeneous_bracket<C: Scalar>(j: &JacobiTriple<C>) -> Result<HomogeneousBracket<C>> {
    let (carrier, h) = poissonize(j)?;
    HomogeneousBracket::new(&j.base, carrier, h, j.parity)
}

pub fn jacobi_bracket<C: Scalar>(j: &JacobiTriple<C>, f: &SuperPoly<C>, g: &SuperPoly<C>) -> Result<SuperPoly<C>> {
    homogeneous_bracket(j)?.bracket(f, g)
}

/// Outcome of randomized checks of the Jacobi-bracket axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    pub parity: usize,
    pub antisymmetry: usize,
    pub jacobi: usize,
    pub leibniz: usize,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.parity + self.antisymmetry + self.jacobi + self.leibniz == 0
    }
}

fn sgn<C: Scalar>(neg: bool, p: SuperPoly<C>) -> SuperPoly<C> {
    if neg {
        -p
    } else {
        p
    }
}

/// Checks the parity rule, graded antisymmetry, graded Jacobi identity and
/// the generalized Leibniz rule on `samples` random triples of
/// parity-homogeneous polynomials of degree `≤ max_deg`; counts failures.
pub fn verify_axioms<C, B>(base: &Arc<Chart>, k: u8, bracket: B, samples: usize, max_deg: i64, seed: u64) -> Result<AxiomReport>
where
    C: Scalar,
    B: Fn(&SuperPoly<C>, &SuperPoly<C>) -> Result<SuperPoly<C>>,
{
    let mut rng = Sampler::new(seed);
    let mut rep = AxiomReport {
        samples,
        ..Default::default()
    };
    let one = SuperPoly::one(base);
    for _ in 0..samples {
        let a: SuperPoly<C> = rng.any_homogeneous(base, max_deg);
        let b: SuperPoly<C> = rng.any_homogeneous(base, max_deg);
        let c: SuperPoly<C> = rng.any_homogeneous(base, max_deg);
        let (ga, gb) = (a.parity().unwrap_or(0), b.parity().unwrap_or(0));
        let s_ab = (ga + k) * (gb + k) % 2 == 1;

        let ab = bracket(&a, &b)?;
        if !ab.is_zero() && ab.parity() != Some((ga + gb + k) % 2) {
            rep.parity += 1;
        }
        let ba = bracket(&b, &a)?;
        if ab != -sgn(s_ab, ba) {
            rep.antisymmetry += 1;
        }
        let lhs = bracket(&ab, &c)?;
        let rhs = &bracket(&a, &bracket(&b, &c)?)? - &sgn(s_ab, bracket(&b, &bracket(&a, &c)?)?);
        if lhs != rhs {
            rep.jacobi += 1;
        }
        let lhs = bracket(&a, &(&b * &c))?;
        let rhs = &(&(&ab * &c) + &sgn((ga + k) * gb % 2 == 1, &b * &bracket(&a, &c)?)) - &(&bracket(&a, &one)? * &(&b * &c));
        if lhs != rhs {
            rep.leibniz += 1;
        }
    }
    Ok(rep)
}

pub fn verify_jacobi_axioms<C: Scalar>(j: &JacobiTriple<C>, samples: usize, seed: u64) -> Result<AxiomReport> {
    let hb = homogeneous_bracket(j)?;
    verify_axioms(&j.base, j.parity, |f, g| hb.bracket(f, g), samples, 2, seed)
}
