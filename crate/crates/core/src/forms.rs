//! Polynomial Cartan calculus on `ΠTM`: differential forms are polynomials
//! in the base coordinates and their parity-reversed differentials `d_<x>`.

use std::sync::Arc;

use crate::algebra::SuperPoly;
use crate::charts::{tangent_lift, Chart};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct FormChart {
    base: Arc<Chart>,
    chart: Arc<Chart>,
}

impl FormChart {
    pub fn new(base: &Arc<Chart>) -> Result<Self> {
        Ok(FormChart {
            base: base.clone(),
            chart: Arc::new(tangent_lift(base, true)?),
        })
    }

    pub fn base(&self) -> &Arc<Chart> {
        &self.base
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    fn dy_index(&self, a: usize) -> usize {
        self.base.len() + a
    }

    pub fn coord<C: Scalar>(&self, a: usize) -> SuperPoly<C> {
        SuperPoly::gen(&self.chart, a)
    }

    pub fn dy<C: Scalar>(&self, a: usize) -> SuperPoly<C> {
        SuperPoly::gen(&self.chart, self.dy_index(a))
    }

    pub fn lift<C: Scalar>(&self, f: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        f.transport(&self.chart)
    }

    /// Back to the base chart; fails if any differential remains.
    pub fn lower<C: Scalar>(&self, f: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        f.transport(&self.base)
    }

    /// de Rham differential `Σ dy^c ∂_c`.
    pub fn d<C: Scalar>(&self, f: &SuperPoly<C>) -> SuperPoly<C> {
        let mut out = SuperPoly::zero(&self.chart);
        for c in 0..self.base.len() {
            if f.involves(c) {
                out = &out + &(&self.dy(c) * &f.deriv(c));
            }
        }
        out
    }

    /// `Σ α_a dy^a` with coefficients on the left.
    pub fn one_form<C: Scalar>(&self, coeffs: &[SuperPoly<C>]) -> Result<SuperPoly<C>> {
        if coeffs.len() != self.base.len() {
            return Err(Error::Dimension(format!("expected {} one-form coefficients", self.base.len())));
        }
        let mut out = SuperPoly::zero(&self.chart);
        for (a, c) in coeffs.iter().enumerate() {
            out = &out + &(&c.transport(&self.chart)? * &self.dy(a));
        }
        Ok(out)
    }

    /// Coefficients `α_a = ∂_{dy^a} α` of a one-form (left contraction).
    pub fn one_form_coeffs<C: Scalar>(&self, alpha: &SuperPoly<C>) -> Result<Vec<SuperPoly<C>>> {
        (0..self.base.len()).map(|a| self.lower(&alpha.deriv(self.dy_index(a)))).collect()
    }

    /// Interior product with a vector field `X = Σ X^a ∂_a`.
    pub fn interior<C: Scalar>(&self, x: &[SuperPoly<C>], w: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        let mut out = SuperPoly::zero(&self.chart);
        for (a, xa) in x.iter().enumerate() {
            out = &out + &(&xa.transport(&self.chart)? * &w.deriv(self.dy_index(a)));
        }
        Ok(out)
    }

    /// Vector field acting on a function or form coefficientwise.
    pub fn apply<C: Scalar>(&self, x: &[SuperPoly<C>], f: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        let mut out = SuperPoly::zero(f.chart());
        for (a, xa) in x.iter().enumerate() {
            let i = f.chart().require(&self.base.gen(a).name)?;
            out = &out + &(&xa.transport(f.chart())? * &f.deriv(i));
        }
        Ok(out)
    }

    /// `L_X = i_X d + d i_X` (even `X`).
    pub fn lie<C: Scalar>(&self, x: &[SuperPoly<C>], w: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        Ok(&self.interior(x, &self.d(w))? + &self.d(&self.interior(x, w)?))
    }

    /// Commutator of even vector fields with coefficients on the base chart.
    pub fn vector_bracket<C: Scalar>(&self, x: &[SuperPoly<C>], y: &[SuperPoly<C>]) -> Result<Vec<SuperPoly<C>>> {
        (0..self.base.len())
            .map(|b| Ok(&self.apply(x, &y[b])? - &self.apply(y, &x[b])?))
            .collect()
    }

    /// `K_{ab} = (∂_{dy^a} ω) ∂←_{dy^b}` for a two-form ω.
    pub fn two_form_matrix<C: Scalar>(&self, w: &SuperPoly<C>) -> Matrix<C> {
        let n = self.base.len();
        (0..n)
            .map(|a| {
                let da = w.deriv(self.dy_index(a));
                (0..n).map(|b| da.deriv_right(self.dy_index(b))).collect()
            })
            .collect()
    }

    /// Rebuilds `ω` from its matrix using the upper triangle and diagonal.
    pub fn two_form_from_matrix<C: Scalar>(&self, k: &Matrix<C>) -> Result<SuperPoly<C>> {
        let n = self.base.len();
        let mut out = SuperPoly::zero(&self.chart);
        for a in 0..n {
            let ga = self.chart.parity(self.dy_index(a));
            for b in a..n {
                let kab = &k[a][b];
                if kab.is_zero() {
                    continue;
                }
                let gk = kab
                    .parity()
                    .ok_or_else(|| Error::Domain("two-form entries must have homogeneous parity".into()))?;
                let c = kab.transport(&self.chart)?;
                let term = if a == b {
                    if ga == 1 {
                        return Err(Error::Domain("nonzero diagonal entry on an odd differential".into()));
                    }
                    &c.scale(&C::ratio(1, 2)) * &(&self.dy(a) * &self.dy(a))
                } else {
                    let c = if gk * ga % 2 == 1 { -c } else { c };
                    &c * &(&self.dy(a) * &self.dy(b))
                };
                out = &out + &term;
            }
        }
        Ok(out)
    }

    /// Form degree (number of differentials) of a homogeneous form.
    pub fn form_degree<C: Scalar>(&self, w: &SuperPoly<C>) -> Option<i64> {
        let dys: Vec<usize> = (0..self.base.len()).map(|a| self.dy_index(a)).collect();
        w.degree_in(&dys)
    }

    /// Parity with the cotangent convention `g(dy) = g(y)`: the polynomial
    /// parity shifted by the form degree.
    pub fn form_parity<C: Scalar>(&self, w: &SuperPoly<C>) -> Option<u8> {
        let mut out = None;
        for (m, _) in w.terms() {
            let deg: i64 = (0..self.base.len()).map(|a| m.exp(self.dy_index(a)) as i64).sum();
            let p = (m.parity(&self.chart) as i64 + deg).rem_euclid(2) as u8;
            match out {
                None => out = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::charts::Generator;
    use num_rational::BigRational;

    fn fc() -> FormChart {
        let base = Chart::new(vec![
            Generator::even("x", vec![]),
            Generator::even("y", vec![]),
            Generator::odd("th", vec![]),
        ])
        .unwrap();
        FormChart::new(&Arc::new(base)).unwrap()
    }

    #[test]
    fn d_squares_to_zero() {
        let f = fc();
        let w: SuperPoly<BigRational> = parse_poly(f.chart(), "x^2*y*th + th*d_x*y + x*d_th^2 + y^3*d_y*d_th").unwrap();
        assert!(f.d(&f.d(&w)).is_zero());
    }

    #[test]
    fn cartan_identities() {
        let f = fc();
        let q = |s: &str| -> SuperPoly<BigRational> { parse_poly(f.chart(), s).unwrap() };
        let x = vec![q("y"), q("x^2"), q("0")];
        let w = q("x*d_y + y^2*d_x*d_y");
        // L_X d = d L_X
        assert_eq!(f.lie(&x, &f.d(&w)).unwrap(), f.d(&f.lie(&x, &w).unwrap()));
        // i_X df = X(f)
        let g = q("x^3*y");
        assert_eq!(f.interior(&x, &f.d(&g)).unwrap(), f.apply(&x, &g).unwrap());
    }

    #[test]
    fn matrix_roundtrip() {
        let f = fc();
        let w: SuperPoly<BigRational> = parse_poly(f.chart(), "x*d_x*d_y + 3*d_th^2 + th*d_y*d_th").unwrap();
        let k = f.two_form_matrix(&w);
        assert_eq!(f.two_form_from_matrix(&k).unwrap(), w);
    }
}
