//! Truncated cochain complexes `(A, {𝒥, ·})` of a homological Hamiltonian
//! and their cohomology by exact rank computation.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{Monomial, SuperPoly};
use crate::brackets::{Bracket, CanonicalBracket};
use crate::charts::{Chart, Generator};
use crate::error::{Error, Result};
use crate::forms::FormChart;
use crate::linalg::rank;
use crate::scalar::Scalar;

/// Which monomials span the cochain spaces: products of `allowed`
/// generators with the `fixed` weight components, graded by
/// `degree_component`. Non-invertible even generators have total degree
/// `≤ truncation`; invertible ones have exponents in `[−truncation, truncation]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub allowed: Vec<usize>,
    pub fixed: Vec<(usize, i64)>,
    pub degree_component: usize,
    pub truncation: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedComplex<C: Scalar> {
    pub chart: Arc<Chart>,
    /// `(degree, basis)` in increasing degree.
    pub spaces: Vec<(i64, Vec<Monomial>)>,
    /// `maps[i]` sends `spaces[i]` to `spaces[i + 1]`; rows index the target.
    pub maps: Vec<Vec<Vec<C>>>,
}

fn enumerate(chart: &Chart, sub: &Subspace) -> Vec<Monomial> {
    let n = chart.len();
    let mut out = Vec::new();
    let mut exps = vec![0i32; n];
    fn rec(chart: &Chart, sub: &Subspace, k: usize, budget: i64, exps: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if k == sub.allowed.len() {
            let m = Monomial::from_exps(exps.clone());
            let w = m.weight(chart);
            if sub.fixed.iter().all(|&(c, v)| w[c] == v) {
                out.push(m);
            }
            return;
        }
        let g = &chart.gens()[sub.allowed[k]];
        let range: Vec<i64> = if g.is_odd() {
            vec![0, 1]
        } else if g.invertible {
            (-sub.truncation..=sub.truncation).collect()
        } else {
            (0..=budget).collect()
        };
        for e in range {
            exps[sub.allowed[k]] = e as i32;
            let left = if !g.is_odd() && !g.invertible { budget - e } else { budget };
            rec(chart, sub, k + 1, left, exps, out);
        }
        exps[sub.allowed[k]] = 0;
    }
    rec(chart, sub, 0, sub.truncation, &mut exps, &mut out);
    out.sort();
    out
}

fn coords<C: Scalar>(p: &SuperPoly<C>, index: &HashMap<Monomial, usize>, len: usize) -> Option<Vec<C>> {
    let mut v = vec![C::zero(); len];
    for (m, c) in p.terms() {
        v[*index.get(m)?] = c.clone();
    }
    Some(v)
}

impl<C: Scalar> GradedComplex<C> {
    /// Matrices of `{𝒥, ·}` on the selected monomial bases.
    pub fn from_hamiltonian(carrier: &CanonicalBracket, j: &SuperPoly<C>, sub: &Subspace) -> Result<Self> {
        let chart = carrier.chart().clone();
        let j = j.transport(&chart)?;
        if !carrier.is_homological(&j)? {
            return Err(Error::Precondition("the Hamiltonian is not homological".into()));
        }
        let d = |m: &Monomial| -> Result<SuperPoly<C>> {
            let x = SuperPoly::monomial(&chart, m.clone(), C::one())?;
            carrier.bracket(&j, &x)
        };
        Self::from_operator(&chart, sub, d)
    }

    /// Matrices of an arbitrary operator raising the degree by one.
    pub fn from_operator<F>(chart: &Arc<Chart>, sub: &Subspace, d: F) -> Result<Self>
    where
        F: Fn(&Monomial) -> Result<SuperPoly<C>>,
    {
        let mut groups: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for m in enumerate(chart, sub) {
            groups.entry(m.weight(chart)[sub.degree_component]).or_default().push(m);
        }
        let spaces: Vec<(i64, Vec<Monomial>)> = match (groups.keys().next(), groups.keys().last()) {
            (Some(&lo), Some(&hi)) => (lo..=hi).map(|r| (r, groups.remove(&r).unwrap_or_default())).collect(),
            _ => Vec::new(),
        };
        let mut maps = Vec::new();
        for w in spaces.windows(2) {
            let (src, dst) = (&w[0].1, &w[1].1);
            let index: HashMap<Monomial, usize> = dst.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut mat = vec![vec![C::zero(); src.len()]; dst.len()];
            for (col, m) in src.iter().enumerate() {
                let img = d(m)?.transport(chart)?;
                let v = coords(&img, &index, dst.len())
                    .ok_or_else(|| Error::Closure(format!("image of a degree-{} basis element leaves the subspace", w[0].0)))?;
                for (row, c) in v.into_iter().enumerate() {
                    mat[row][col] = c;
                }
            }
            maps.push(mat);
        }
        // the top space still has to map into zero
        if let Some((r, top)) = spaces.last() {
            for m in top {
                let img = d(m)?;
                if !img.is_zero() {
                    return Err(Error::Closure(format!("degree-{r} image leaves the truncated complex")));
                }
            }
        }
        Ok(GradedComplex {
            chart: chart.clone(),
            spaces,
            maps,
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.1.len()).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(|m| if m.is_empty() { 0 } else { rank(m) }).collect()
    }
}

fn compose<C: Scalar>(b: &[Vec<C>], a: &[Vec<C>], inner: usize) -> Vec<Vec<C>> {
    let cols = a.first().map_or(0, |r| r.len());
    b.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(C::zero(), |acc, k| acc + row[k].clone() * a[k][j].clone()))
                .collect()
        })
        .collect()
}

/// `d ∘ d = 0` on every pair of consecutive maps.
pub fn check_complex<C: Scalar>(c: &GradedComplex<C>) -> bool {
    c.maps.windows(2).enumerate().all(|(i, w)| {
        let inner = c.spaces[i + 1].1.len();
        compose(&w[1], &w[0], inner).iter().all(|r| r.iter().all(|x| x.is_zero()))
    })
}

/// `dim ker d_r − rank d_{r−1}` for every degree `r`.
pub fn cohomology_dims<C: Scalar>(c: &GradedComplex<C>) -> Vec<usize> {
    let ranks = c.ranks();
    c.dims()
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let out = ranks.get(i).copied().unwrap_or(0);
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            n - out - inc
        })
        .collect()
}

/// The chart `(t, x^a, z, p_a, ż, ṗ_a, ṫ, ẋ^a)` of `ΠT*T*(ℝ^× × ℝ^m)` with
/// tri-degrees and the Darboux pairs `(t, ż)`, `(x^a, ṗ_a)`, `(z, ṫ)`,
/// `(p_a, ẋ^a)`; dotted coordinates are odd.
pub fn kirillov_chart(m: usize) -> Result<Arc<Chart>> {
    let w = |a: i64, b: i64, c: i64| vec![a, b, c];
    let mut gens = vec![Generator::even("t", w(1, 0, 0)).invertible()];
    gens.extend((1..=m).map(|a| Generator::even(format!("x{a}"), w(0, 0, 0))));
    gens.push(Generator::even("z", w(0, 1, 0)));
    gens.extend((1..=m).map(|a| Generator::even(format!("p{a}"), w(1, 1, 0))));
    gens.push(Generator::odd("zdot", w(0, 1, 1)));
    gens.extend((1..=m).map(|a| Generator::odd(format!("pdot{a}"), w(1, 1, 1))));
    gens.push(Generator::odd("tdot", w(1, 0, 1)));
    gens.extend((1..=m).map(|a| Generator::odd(format!("xdot{a}"), w(0, 0, 1))));
    let mut pairs = vec![("t".to_string(), "zdot".to_string()), ("z".into(), "tdot".into())];
    for a in 1..=m {
        pairs.push((format!("x{a}"), format!("pdot{a}")));
        pairs.push((format!("p{a}"), format!("xdot{a}")));
    }
    Ok(Arc::new(Chart::with_grading(gens, 3)?.with_pairs(&pairs)?))
}

/// Hamiltonian `ṫ ż + ẋ^a ṗ_a` of the canonical tensor `∂_t∂_z + ∂_{x^a}∂_{p_a}`,
/// its carrier, and the subspace `A^{(1,0,•)}` in functions of `(t, x, ṫ, ẋ)`.
pub fn kirillov_example<C: Scalar>(m: usize, truncation: i64) -> Result<(CanonicalBracket, SuperPoly<C>, Subspace)> {
    let chart = kirillov_chart(m)?;
    let carrier = CanonicalBracket::new(chart.clone())?;
    let mut text = String::from("tdot*zdot");
    for a in 1..=m {
        text += &format!(" + xdot{a}*pdot{a}");
    }
    let j = crate::algebra::parse_poly(&chart, &text)?;
    let mut allowed = vec![chart.require("t")?, chart.require("tdot")?];
    for a in 1..=m {
        allowed.push(chart.require(&format!("x{a}"))?);
        allowed.push(chart.require(&format!("xdot{a}"))?);
    }
    allowed.sort();
    let sub = Subspace {
        allowed,
        fixed: vec![(0, 1), (1, 0)],
        degree_component: 2,
        truncation,
    };
    Ok((carrier, j, sub))
}

/// `(μ, ν) ↦ (dμ, μ − dν)`, the differential of `t(μ + Φ∧ν)` with
/// `Φ = ṫ/t`, on polynomial forms of `ℝ^m` written in `x^a` and `ẋ^a`.
#[derive(Clone, Debug)]
pub struct TwistedDeRham {
    forms: FormChart,
}

impl TwistedDeRham {
    pub fn new(m: usize) -> Result<Self> {
        let base = Chart::new((1..=m).map(|a| Generator::even(format!("x{a}"), vec![])).collect())?;
        Ok(TwistedDeRham {
            forms: FormChart::new(&Arc::new(base))?,
        })
    }

    /// The form chart; differentials are named `d_x<a>`.
    pub fn chart(&self) -> &Arc<Chart> {
        self.forms.chart()
    }

    pub fn apply<C: Scalar>(&self, mu: &SuperPoly<C>, nu: &SuperPoly<C>) -> (SuperPoly<C>, SuperPoly<C>) {
        (self.forms.d(mu), mu - &self.forms.d(nu))
    }

    fn renamer(&self, target: &Arc<Chart>) -> Result<Vec<usize>> {
        let c = self.chart();
        (0..c.len())
            .map(|i| {
                let name = &c.gen(i).name;
                let mapped = match name.strip_prefix("d_") {
                    Some(x) => format!("xdot{}", &x[1..]),
                    None => name.clone(),
                };
                target.require(&mapped)
            })
            .collect()
    }

    fn rename<C: Scalar>(p: &SuperPoly<C>, map: &[usize], target: &Arc<Chart>) -> Result<SuperPoly<C>> {
        // the order of generators is preserved, so no Koszul signs arise
        let mut out = SuperPoly::zero(target);
        for (m, c) in p.terms() {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.exps().iter().enumerate() {
                e[map[i]] = k;
            }
            out = &out + &SuperPoly::monomial(target, Monomial::from_exps(e), c.clone())?;
        }
        Ok(out)
    }

    /// `tμ + ṫν` on the chart of [`kirillov_chart`].
    pub fn to_function<C: Scalar>(&self, target: &Arc<Chart>, mu: &SuperPoly<C>, nu: &SuperPoly<C>) -> Result<SuperPoly<C>> {
        let map = self.renamer(target)?;
        let t = SuperPoly::var(target, "t")?;
        let td = SuperPoly::var(target, "tdot")?;
        Ok(&(&t * &Self::rename(mu, &map, target)?) + &(&td * &Self::rename(nu, &map, target)?))
    }

    /// Inverse of [`TwistedDeRham::to_function`].
    pub fn from_function<C: Scalar>(&self, f: &SuperPoly<C>) -> Result<(SuperPoly<C>, SuperPoly<C>)> {
        let src = f.chart();
        let map = self.renamer(src)?;
        let mut back = vec![usize::MAX; src.len()];
        for (i, &j) in map.iter().enumerate() {
            back[j] = i;
        }
        let (ti, tdi) = (src.require("t")?, src.require("tdot")?);
        let c = self.chart().clone();
        let (mut mu, mut nu) = (SuperPoly::zero(&c), SuperPoly::zero(&c));
        for (m, coef) in f.terms() {
            let mut e = vec![0; c.len()];
            for (i, &k) in m.exps().iter().enumerate() {
                if k == 0 || i == ti || i == tdi {
                    continue;
                }
                if back[i] == usize::MAX {
                    return Err(Error::Domain(format!("`{}` is not a form coordinate", src.gen(i).name)));
                }
                e[back[i]] = k;
            }
            let term = SuperPoly::monomial(&c, Monomial::from_exps(e), coef.clone())?;
            match (m.exp(ti), m.exp(tdi)) {
                (1, 0) => mu = &mu + &term,
                (0, 1) => nu = &nu + &term,
                _ => return Err(Error::Domain("not of the form tμ + ṫν".into())),
            }
        }
        Ok((mu, nu))
    }

    /// The operator as a complex on the basis of the Hamiltonian complex.
    pub fn complex<C: Scalar>(&self, target: &Arc<Chart>, sub: &Subspace) -> Result<GradedComplex<C>> {
        GradedComplex::from_operator(target, sub, |m| {
            let f = SuperPoly::monomial(target, m.clone(), C::one())?;
            let (mu, nu) = self.from_function(&f)?;
            let (a, b) = self.apply(&mu, &nu);
            self.to_function(target, &a, &b)
        })
    }
}
