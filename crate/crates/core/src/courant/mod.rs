//! Contact Courant algebroids in Darboux coordinates `(t, x^a, θ^i, z, p_a)`:
//! the cubic Hamiltonian of structure data `(g, r, A)`, the master
//! equation, and the classical data read back through derived brackets.
//!
//! Sections are the functions `e = t c_i(x) θ^i`, with `e_i = t g_ij θ^j`;
//! basic functions are `f(t, x)`.

pub mod wade;

use std::sync::Arc;

use crate::algebra::{parse_poly, SuperPoly};
use crate::brackets::{Bracket, CanonicalBracket, PoissonTensor};
use crate::charts::{Chart, Generator};
use crate::contact::{carrier_for, invert_two_form, Inversion, TwoForm};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::sampling::Sampler;
use crate::scalar::Scalar;

/// The base `ℝ^m` with coordinates `x1..xm`, on which the structure
/// functions live.
pub fn base_chart(m: usize) -> Result<Arc<Chart>> {
    Ok(Arc::new(Chart::new(
        (1..=m).map(|a| Generator::even(format!("x{a}"), vec![])).collect(),
    )?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CourantSpec<C: Scalar> {
    pub m: usize,
    pub q: usize,
    /// Constant symmetric nondegenerate `g_ij`.
    pub g: Vec<Vec<C>>,
    /// `r_i^a(x)`, indexed `[i][a]`.
    pub r_coef: Vec<Vec<SuperPoly<C>>>,
    /// `r_i(x)`.
    pub r_scalar: Vec<SuperPoly<C>>,
    /// Totally antisymmetric `A_ijk(x)`.
    pub a: Vec<Vec<Vec<SuperPoly<C>>>>,
}

impl<C: Scalar> CourantSpec<C> {
    /// `r = 0`, `A = 0`.
    pub fn trivial(m: usize, g: Vec<Vec<C>>) -> Result<Self> {
        let base = base_chart(m)?;
        let q = g.len();
        let z = SuperPoly::zero(&base);
        Ok(CourantSpec {
            m,
            q,
            g,
            r_coef: vec![vec![z.clone(); m]; q],
            r_scalar: vec![z.clone(); q],
            a: vec![vec![vec![z; q]; q]; q],
        })
    }

    pub fn base(&self) -> Result<Arc<Chart>> {
        base_chart(self.m)
    }

    /// Sets `A_ijk` and its antisymmetric images.
    pub fn set_a(&mut self, i: usize, j: usize, k: usize, v: SuperPoly<C>) {
        let perms = [
            (i, j, k, false),
            (j, k, i, false),
            (k, i, j, false),
            (j, i, k, true),
            (i, k, j, true),
            (k, j, i, true),
        ];
        for (a, b, c, neg) in perms {
            self.a[a][b][c] = if neg { -v.clone() } else { v.clone() };
        }
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.q;
        if self.g.len() != q || self.g.iter().any(|r| r.len() != q) {
            return Err(Error::InvalidSpec(format!("g must be {q}×{q}")));
        }
        if self.r_coef.len() != q || self.r_coef.iter().any(|r| r.len() != self.m) || self.r_scalar.len() != q {
            return Err(Error::InvalidSpec("anchor data has the wrong shape".into()));
        }
        if self.a.len() != q || self.a.iter().any(|r| r.len() != q || r.iter().any(|s| s.len() != q)) {
            return Err(Error::InvalidSpec(format!("A must be {q}×{q}×{q}")));
        }
        for i in 0..q {
            for j in 0..q {
                if self.g[i][j] != self.g[j][i] {
                    return Err(Error::InvalidSpec("g is not symmetric".into()));
                }
            }
        }
        if q > 0 && rank(&self.g) < q {
            return Err(Error::InvalidSpec("g is degenerate".into()));
        }
        let base = self.base()?;
        for i in 0..q {
            for j in 0..q {
                for k in 0..q {
                    let a = &self.a[i][j][k];
                    if a.transport(&base).is_err() {
                        return Err(Error::InvalidSpec("A must depend on x only".into()));
                    }
                    if *a != -self.a[j][i][k].clone() || *a != -self.a[i][k][j].clone() {
                        return Err(Error::InvalidSpec("A is not totally antisymmetric".into()));
                    }
                }
            }
        }
        for p in self.r_coef.iter().flatten().chain(&self.r_scalar) {
            if p.transport(&base).is_err() {
                return Err(Error::InvalidSpec("anchor coefficients must depend on x only".into()));
            }
        }
        Ok(())
    }

    /// `(g^{ij}) = (g_{ij})⁻¹` by Gauss–Jordan elimination.
    pub fn g_inverse(&self) -> Result<Vec<Vec<C>>> {
        let q = self.q;
        let mut a: Vec<Vec<C>> = self.g.clone();
        let mut inv: Vec<Vec<C>> = (0..q)
            .map(|i| (0..q).map(|j| if i == j { C::one() } else { C::zero() }).collect())
            .collect();
        for c in 0..q {
            let piv = (c..q)
                .find(|&r| !a[r][c].is_zero())
                .ok_or_else(|| Error::InvalidSpec("g is degenerate".into()))?;
            a.swap(c, piv);
            inv.swap(c, piv);
            let p = a[c][c].clone();
            for j in 0..q {
                a[c][j] = a[c][j].clone() / p.clone();
                inv[c][j] = inv[c][j].clone() / p.clone();
            }
            for r in 0..q {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..q {
                        a[r][j] = a[r][j].clone() - f.clone() * a[c][j].clone();
                        inv[r][j] = inv[r][j].clone() - f.clone() * inv[c][j].clone();
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Random spec with small integer data and coefficients of degree `≤ deg`.
    pub fn random(m: usize, q: usize, deg: i64, seed: u64) -> Result<Self> {
        use rand::Rng;
        let mut rng = Sampler::new(seed);
        let base = base_chart(m)?;
        let g = loop {
            let mut g = vec![vec![C::zero(); q]; q];
            for i in 0..q {
                for j in i..q {
                    let v = C::from_i64(rng.rng().gen_range(-2..=2));
                    g[i][j] = v.clone();
                    g[j][i] = v;
                }
            }
            if q == 0 || rank(&g) == q {
                break g;
            }
        };
        let mut s = Self::trivial(m, g)?;
        for i in 0..q {
            for a in 0..m {
                s.r_coef[i][a] = rng.poly(&base, deg);
            }
            s.r_scalar[i] = rng.poly(&base, deg);
        }
        for i in 0..q {
            for j in i + 1..q {
                for k in j + 1..q {
                    let v = rng.poly(&base, deg);
                    s.set_a(i, j, k, v);
                }
            }
        }
        Ok(s)
    }
}

/// The chart `(t, x^a, θ^i, z, p_a)`; weights `(0, 0, 1, 2, 2)` and
/// ℝ^×-degrees `(1, 0, 0, 0, 1)`.
pub fn courant_chart(m: usize, q: usize) -> Result<Arc<Chart>> {
    let mut gens = vec![Generator::even("t", vec![0, 1]).invertible()];
    gens.extend((1..=m).map(|a| Generator::even(format!("x{a}"), vec![0, 0])));
    gens.extend((1..=q).map(|i| Generator::odd(format!("th{i}"), vec![1, 0])));
    gens.push(Generator::even("z", vec![2, 0]));
    gens.extend((1..=m).map(|a| Generator::even(format!("p{a}"), vec![2, 1])));
    Ok(Arc::new(Chart::with_grading(gens, 2)?))
}

/// `ω = dt·dz + dx^a·dp_a − (t/2) g_ij dθ^i dθ^j`, oriented so that
/// `{θ^i, θ^j} = g^{ij}/t`. Not closed: its inverse fails the Jacobi
/// identity on `(z, θ, θ)`.
pub fn naive_symplectic_form<C: Scalar>(m: usize, g: &[Vec<C>]) -> Result<TwoForm<C>> {
    form_from(m, g, false)
}

/// `ω = d(t dz + x^a dp_a − (t/2) g_ij θ^i dθ^j)`: the closed completion of
/// [`naive_symplectic_form`] by `−½ g_ij dt θ^i dθ^j`.
pub fn symplectic_form<C: Scalar>(m: usize, g: &[Vec<C>]) -> Result<TwoForm<C>> {
    form_from(m, g, true)
}

fn form_from<C: Scalar>(m: usize, g: &[Vec<C>], closed: bool) -> Result<TwoForm<C>> {
    let chart = courant_chart(m, g.len())?;
    let forms = crate::forms::FormChart::new(&chart)?;
    let fc = forms.chart().clone();
    let mut lambda: SuperPoly<C> = parse_poly(&fc, "t*d_z")?;
    for a in 1..=m {
        lambda = &lambda + &parse_poly(&fc, &format!("x{a}*d_p{a}"))?;
    }
    let t = SuperPoly::var(&fc, "t")?;
    for (i, row) in g.iter().enumerate() {
        for (j, gij) in row.iter().enumerate() {
            if !gij.is_zero() {
                let th = SuperPoly::var(&fc, &format!("th{}", i + 1))?;
                let dj = SuperPoly::var(&fc, &format!("d_th{}", j + 1))?;
                lambda = &lambda + &(&t * &(&th * &dj)).scale(&(gij.clone() * C::ratio(-1, 2)));
            }
        }
    }
    let mut w = forms.d(&lambda);
    if !closed {
        w = w.filter(|m| m.exp(fc.require("d_t").expect("d_t")) == 0 || m.exp(fc.require("d_z").expect("d_z")) == 1);
    }
    TwoForm::from_poly(forms, w)
}

/// `{z, t} = 1`, `{p_a, x^a} = 1`, `{θ^i, θ^j} = g^{ij}/t`; as a Hamiltonian
/// on `ΠT*`: `∂_t∂_z + ∂_{x^a}∂_{p_a} − (1/2t) g^{ij}∂_{θ^i}∂_{θ^j}`. With
/// `closed`, adds `(1/2t) ∂_z θ^i∂_{θ^i}`, i.e. `{θ^i, z} = θ^i/2t`, the
/// inverse of [`symplectic_form`]; without it, the inverse of
/// [`naive_symplectic_form`].
pub fn expected_hamiltonian<C: Scalar>(m: usize, ginv: &[Vec<C>], closed: bool) -> Result<(CanonicalBracket, SuperPoly<C>)> {
    let carrier = carrier_for(&*courant_chart(m, ginv.len())?, 0)?;
    let cc = carrier.chart().clone();
    let mut text = String::from("xi_t*xi_z");
    for a in 1..=m {
        text += &format!(" + xi_x{a}*xi_p{a}");
    }
    if closed {
        for i in 1..=ginv.len() {
            text += &format!(" + 1/2*t^-1*xi_z*th{i}*xi_th{i}");
        }
    }
    let mut h: SuperPoly<C> = parse_poly(&cc, &text)?;
    let half_tinv = SuperPoly::gen_pow(&cc, cc.require("t")?, -1)?.scale(&C::ratio(-1, 2));
    for (i, row) in ginv.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                let xx = &SuperPoly::var(&cc, &format!("xi_th{}", i + 1))? * &SuperPoly::var(&cc, &format!("xi_th{}", j + 1))?;
                h = &h + &(&half_tinv * &xx).scale(v);
            }
        }
    }
    Ok((carrier, h))
}

#[derive(Clone, Debug)]
pub struct CourantModel<C: Scalar> {
    pub spec: CourantSpec<C>,
    pub chart: Arc<Chart>,
    pub tensor: PoissonTensor<C>,
    pub hamiltonian: SuperPoly<C>,
}

/// `H = θ^i(r_i^a p_a + r_i t z) − (t/6) A_ijk θ^iθ^jθ^k`, with the Poisson
/// structure obtained by inverting the symplectic form.
pub fn build<C: Scalar>(spec: &CourantSpec<C>) -> Result<CourantModel<C>> {
    spec.validate()?;
    let w = symplectic_form(spec.m, &spec.g)?;
    let tensor = match invert_two_form(&w)? {
        Inversion::Symplectic { tensor, .. } => tensor,
        Inversion::Degenerate { .. } => return Err(Error::InvalidSpec("degenerate symplectic form".into())),
    };
    let chart = Bracket::chart(&tensor).clone();
    let v = |n: &str| SuperPoly::<C>::var(&chart, n);
    let (t, z) = (v("t")?, v("z")?);
    let mut h = SuperPoly::zero(&chart);
    for i in 0..spec.q {
        let th = v(&format!("th{}", i + 1))?;
        let mut inner = &(&spec.r_scalar[i].transport(&chart)? * &t) * &z;
        for a in 0..spec.m {
            inner = &inner + &(&spec.r_coef[i][a].transport(&chart)? * &v(&format!("p{}", a + 1))?);
        }
        h = &h + &(&th * &inner);
    }
    let sixth = C::ratio(-1, 6);
    for i in 0..spec.q {
        for j in 0..spec.q {
            for k in 0..spec.q {
                let a = &spec.a[i][j][k];
                if a.is_zero() {
                    continue;
                }
                let thth = &(&v(&format!("th{}", i + 1))? * &v(&format!("th{}", j + 1))?) * &v(&format!("th{}", k + 1))?;
                h = &h + &(&(&t * &a.transport(&chart)?) * &thth).scale(&sixth);
            }
        }
    }
    Ok(CourantModel {
        spec: spec.clone(),
        chart,
        tensor,
        hamiltonian: h,
    })
}

impl<C: Scalar> CourantModel<C> {
    pub fn var(&self, name: &str) -> SuperPoly<C> {
        SuperPoly::var(&self.chart, name).expect("Courant chart coordinate")
    }

    /// `{{F, G}}`.
    pub fn pb(&self, f: &SuperPoly<C>, g: &SuperPoly<C>) -> SuperPoly<C> {
        self.tensor.bracket(f, g).expect("operands on the Courant chart")
    }

    /// `{F, G} = {{{{F, H}}, G}}`.
    pub fn derived(&self, f: &SuperPoly<C>, g: &SuperPoly<C>) -> SuperPoly<C> {
        self.pb(&self.pb(f, &self.hamiltonian), g)
    }

    /// `{{H, H}}`.
    pub fn master_residual(&self) -> SuperPoly<C> {
        self.pb(&self.hamiltonian, &self.hamiltonian)
    }

    /// `e_i = t g_ij θ^j`.
    pub fn basis_section(&self, i: usize) -> SuperPoly<C> {
        let mut out = SuperPoly::zero(&self.chart);
        for (j, gij) in self.spec.g[i].iter().enumerate() {
            out = &out + &self.var(&format!("th{}", j + 1)).scale(gij);
        }
        &self.var("t") * &out
    }

    /// `t c_i(x) θ^i` from coefficients on the base chart.
    pub fn section(&self, coeffs: &[SuperPoly<C>]) -> Result<SuperPoly<C>> {
        let mut out = SuperPoly::zero(&self.chart);
        for (i, c) in coeffs.iter().enumerate() {
            out = &out + &(&c.transport(&self.chart)? * &self.var(&format!("th{}", i + 1)));
        }
        Ok(&self.var("t") * &out)
    }

    pub fn pairing(&self, e: &SuperPoly<C>, f: &SuperPoly<C>) -> SuperPoly<C> {
        self.pb(e, f)
    }

    /// `ρ(e)(f) = {e, f}`.
    pub fn anchor(&self, e: &SuperPoly<C>, f: &SuperPoly<C>) -> SuperPoly<C> {
        self.derived(e, f)
    }

    /// `D(f) = ρ(e_i)(f) θ^i`, so that `⟨D(f), e⟩ = ρ(e)(f)`.
    pub fn derivation(&self, f: &SuperPoly<C>) -> SuperPoly<C> {
        let mut out = SuperPoly::zero(&self.chart);
        for i in 0..self.spec.q {
            out = &out + &(&self.anchor(&self.basis_section(i), f) * &self.var(&format!("th{}", i + 1)));
        }
        out
    }
}

/// Pairing, bracket and anchor tables on the basis, and the structure data
/// read back from them.
#[derive(Clone, Debug, PartialEq)]
pub struct CourantData<C: Scalar> {
    /// `⟨e_i, e_j⟩`.
    pub pairing: Vec<Vec<SuperPoly<C>>>,
    /// `⟨{e_i, e_j}, e_k⟩`.
    pub brackets: Vec<Vec<Vec<SuperPoly<C>>>>,
    /// `ρ(e_i)(x^a)`.
    pub anchor_x: Vec<Vec<SuperPoly<C>>>,
    /// `ρ(e_i)(t)`.
    pub anchor_t: Vec<SuperPoly<C>>,
    pub recovered: CourantSpec<C>,
}

fn over_t<C: Scalar>(p: &SuperPoly<C>, base: &Arc<Chart>) -> Result<SuperPoly<C>> {
    let chart = p.chart();
    let t = chart.require("t")?;
    let mut unit = vec![0; chart.len()];
    unit[t] = 1;
    p.div_unit_monomial(&crate::algebra::Monomial::from_exps(unit), &C::one())?
        .transport(base)
        .map_err(|_| Error::Internal(format!("`{p}` is not t times a function of x")))
}

pub fn courant_data<C: Scalar>(model: &CourantModel<C>) -> Result<CourantData<C>> {
    let (q, m) = (model.spec.q, model.spec.m);
    let base = model.spec.base()?;
    let e: Vec<SuperPoly<C>> = (0..q).map(|i| model.basis_section(i)).collect();
    let pairing: Vec<Vec<SuperPoly<C>>> = e.iter().map(|a| e.iter().map(|b| model.pairing(a, b)).collect()).collect();
    let mut brackets = vec![vec![Vec::with_capacity(q); q]; q];
    for i in 0..q {
        for j in 0..q {
            let b = model.derived(&e[i], &e[j]);
            brackets[i][j] = e.iter().map(|ek| model.pairing(&b, ek)).collect();
        }
    }
    let anchor_x: Vec<Vec<SuperPoly<C>>> = e
        .iter()
        .map(|ei| (1..=m).map(|a| model.anchor(ei, &model.var(&format!("x{a}")))).collect())
        .collect();
    let anchor_t: Vec<SuperPoly<C>> = e.iter().map(|ei| model.anchor(ei, &model.var("t"))).collect();

    let mut g = vec![vec![C::zero(); q]; q];
    for i in 0..q {
        for j in 0..q {
            let gij = over_t(&pairing[i][j], &base)?;
            if !gij.is_constant() {
                return Err(Error::Internal("pairing is not t times a constant".into()));
            }
            g[i][j] = gij.constant_term();
        }
    }
    let mut rec = CourantSpec::trivial(m, g)?;
    for i in 0..q {
        for a in 0..m {
            rec.r_coef[i][a] = anchor_x[i][a].transport(&base)?;
        }
        rec.r_scalar[i] = over_t(&anchor_t[i], &base)?;
    }
    // A is read off as the totally antisymmetric part of the bracket table
    for i in 0..q {
        for j in 0..q {
            for k in 0..q {
                let perms = [
                    (&brackets[i][j][k], 1),
                    (&brackets[j][k][i], 1),
                    (&brackets[k][i][j], 1),
                    (&brackets[j][i][k], -1),
                    (&brackets[i][k][j], -1),
                    (&brackets[k][j][i], -1),
                ];
                let mut s = SuperPoly::zero(&model.chart);
                for (p, sg) in perms {
                    s = if sg > 0 { &s + p } else { &s - p };
                }
                rec.a[i][j][k] = over_t(&s.scale(&C::ratio(1, 6)), &base)?;
            }
        }
    }
    Ok(CourantData {
        pairing,
        brackets,
        anchor_x,
        anchor_t,
        recovered: rec,
    })
}

/// One identity checked on a family of inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck<C: Scalar> {
    pub name: &'static str,
    pub checked: usize,
    /// Nonzero residuals (at most a few are kept).
    pub failures: Vec<SuperPoly<C>>,
    pub failed: usize,
}

impl<C: Scalar> AxiomCheck<C> {
    fn new(name: &'static str) -> Self {
        AxiomCheck {
            name,
            checked: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn record(&mut self, r: SuperPoly<C>) {
        self.checked += 1;
        if !r.is_zero() {
            self.failed += 1;
            if self.failures.len() < 3 {
                self.failures.push(r);
            }
        }
    }

    pub fn pass(&self) -> bool {
        self.failed == 0
    }
}

/// Residuals of the Courant identities on the basis sections, `extra`
/// random sections with coefficients of degree `≤ 1`, and random basic
/// functions `f(t, x)`.
pub fn courant_axioms<C: Scalar>(model: &CourantModel<C>, extra: usize, seed: u64) -> Result<Vec<AxiomCheck<C>>> {
    if !model.master_residual().is_zero() {
        return Err(Error::Precondition("the master equation fails".into()));
    }
    let (q, m) = (model.spec.q, model.spec.m);
    let base = model.spec.base()?;
    let mut rng = Sampler::new(seed);
    let mut secs: Vec<SuperPoly<C>> = (0..q).map(|i| model.basis_section(i)).collect();
    for _ in 0..extra {
        let coeffs: Vec<SuperPoly<C>> = (0..q).map(|_| rng.poly(&base, 1)).collect();
        secs.push(model.section(&coeffs)?);
    }
    let tx: Vec<usize> = std::iter::once(0).chain(1..=m).collect();
    let mut funs: Vec<SuperPoly<C>> = vec![model.var("t")];
    funs.extend((1..=m).map(|a| model.var(&format!("x{a}"))));
    for _ in 0..extra.max(1) {
        funs.push(rng.poly_in(&model.chart, &tx, 2));
    }

    let mut c4 = AxiomCheck::new("<{e,e'},e'> = <e,{e',e'}>");
    let mut c5 = AxiomCheck::new("rho(e)<e',e'> = 2<{e,e'},e'>");
    let mut c6 = AxiomCheck::new("{e,fe'} = f{e,e'} + rho(e)(f)e'");
    let mut c7 = AxiomCheck::new("rho(e)<e',e''> = <{e,e'},e''> + <{e,e''},e'>");
    let mut c8 = AxiomCheck::new("rho({e,e'}) = [rho(e),rho(e')]");
    let mut c9 = AxiomCheck::new("rho(e)<e',e''> = <e,{e',e''} + {e'',e'}>");
    let mut c11 = AxiomCheck::new("{e',e''} + {e'',e'} = D<e',e''>");
    let mut c12 = AxiomCheck::new("{fe',e''} = f{e',e''} - rho(e'')(f)e' + <e',e''>D(f)");
    let mut c24 = AxiomCheck::new("rho(e_k)<e_i,e_j> = <e_k,{e_i,e_j} + {e_j,e_i}>");

    let two = C::from_i64(2);
    let n = secs.len();
    for a in 0..n {
        for b in 0..n {
            let (e, e1) = (&secs[a], &secs[b]);
            let ee1 = model.derived(e, e1);
            c4.record(&model.pairing(&ee1, e1) - &model.pairing(e, &model.derived(e1, e1)));
            c5.record(&model.anchor(e, &model.pairing(e1, e1)) - &model.pairing(&ee1, e1).scale(&two));
            for f in &funs {
                let lhs = model.derived(e, &(f * e1));
                let rhs = &(f * &ee1) + &(&model.anchor(e, f) * e1);
                c6.record(&lhs - &rhs);
                let lhs = &model.anchor(&ee1, f) - &(&model.anchor(e, &model.anchor(e1, f)) - &model.anchor(e1, &model.anchor(e, f)));
                c8.record(lhs);
            }
            for c in 0..n {
                let e2 = &secs[c];
                let lhs = model.anchor(e, &model.pairing(e1, e2));
                c7.record(&(&lhs - &model.pairing(&ee1, e2)) - &model.pairing(&model.derived(e, e2), e1));
                let sym = &model.derived(e1, e2) + &model.derived(e2, e1);
                let r9 = &lhs - &model.pairing(e, &sym);
                if a < q && b < q && c < q {
                    // the basis case, with the ordering of the indices swapped
                    c24.record(r9.clone());
                }
                c9.record(r9);
            }
            c11.record(&(&model.derived(e, e1) + &model.derived(e1, e)) - &model.derivation(&model.pairing(e, e1)));
            for f in &funs {
                let lhs = model.derived(&(f * e), e1);
                let rhs = &(&(f * &ee1) - &(&model.anchor(e1, f) * e)) + &(&model.pairing(e, e1) * &model.derivation(f));
                c12.record(&lhs - &rhs);
            }
        }
    }
    Ok(vec![c4, c5, c6, c7, c8, c9, c11, c12, c24])
}

/// Generators `t, x^a, e_i, tz, p_a` used for the Jacobi identity check.
pub fn jacobi_generators<C: Scalar>(model: &CourantModel<C>) -> Vec<SuperPoly<C>> {
    let mut out = vec![model.var("t")];
    out.extend((1..=model.spec.m).map(|a| model.var(&format!("x{a}"))));
    out.extend((0..model.spec.q).map(|i| model.basis_section(i)));
    out.push(&model.var("t") * &model.var("z"));
    out.extend((1..=model.spec.m).map(|a| model.var(&format!("p{a}"))));
    out
}

/// `{{a,b},c} − {a,{b,c}} + (−1)^{(g(a)+1)(g(b)+1)}{b,{a,c}}` for the odd
/// derived bracket.
pub fn loday_residual<C: Scalar>(model: &CourantModel<C>, a: &SuperPoly<C>, b: &SuperPoly<C>, c: &SuperPoly<C>) -> SuperPoly<C> {
    let k = model.hamiltonian.parity().unwrap_or(1);
    let (ga, gb) = (a.parity().unwrap_or(0), b.parity().unwrap_or(0));
    let lhs = model.derived(&model.derived(a, b), c);
    let first = model.derived(a, &model.derived(b, c));
    let second = model.derived(b, &model.derived(a, c));
    let sign_neg = (ga + k) * (gb + k) % 2 == 1;
    let rhs = if sign_neg { &first + &second } else { &first - &second };
    &lhs - &rhs
}

/// Number of generator triples violating the Loday identity.
pub fn jacobi_failures<C: Scalar>(model: &CourantModel<C>) -> usize {
    let gens = jacobi_generators(model);
    let mut bad = 0;
    for a in &gens {
        for b in &gens {
            for c in &gens {
                if !loday_residual(model, a, b, c).is_zero() {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// Exact Courant algebroid of `ℝ^m` in the basis `(∂_a, dx^a)`:
/// `q = 2m`, `g` off-diagonal, `ρ(e_a) = ∂_{x^a}`.
pub fn exact_spec<C: Scalar>(m: usize) -> Result<CourantSpec<C>> {
    let q = 2 * m;
    let mut g = vec![vec![C::zero(); q]; q];
    for a in 0..m {
        g[a][m + a] = C::one();
        g[m + a][a] = C::one();
    }
    let mut s = CourantSpec::trivial(m, g)?;
    let base = s.base()?;
    for a in 0..m {
        s.r_coef[a][a] = SuperPoly::one(&base);
    }
    Ok(s)
}

/// `so(3)` with `g = I` and `A = ε`.
pub fn so3_spec<C: Scalar>() -> Result<CourantSpec<C>> {
    let mut s = CourantSpec::trivial(0, identity(3))?;
    let one = SuperPoly::one(&s.base()?);
    s.set_a(0, 1, 2, one);
    Ok(s)
}

fn identity<C: Scalar>(q: usize) -> Vec<Vec<C>> {
    (0..q)
        .map(|i| (0..q).map(|j| if i == j { C::one() } else { C::zero() }).collect())
        .collect()
}

/// `q = 4`, `g = I`, `A_123 = A_134 = 1`. The 3-form `θ¹θ³(θ⁴ − θ²)` is
/// decomposable, so this is `so(3) ⊕ ℝ` and the master equation holds.
pub fn decomposable_spec<C: Scalar>() -> Result<CourantSpec<C>> {
    let mut s = CourantSpec::trivial(0, identity(4))?;
    let one = SuperPoly::one(&s.base()?);
    s.set_a(0, 1, 2, one.clone());
    s.set_a(0, 2, 3, one);
    Ok(s)
}

/// `q = 5`, `g = I`, `A_123 = A_145 = 1`: `{{H, H}} = ±2t θ²θ³θ⁴θ⁵`-type
/// obstruction, the master equation fails.
pub fn failing_spec<C: Scalar>() -> Result<CourantSpec<C>> {
    let mut s = CourantSpec::trivial(0, identity(5))?;
    let one = SuperPoly::one(&s.base()?);
    s.set_a(0, 1, 2, one.clone());
    s.set_a(0, 3, 4, one);
    Ok(s)
}
