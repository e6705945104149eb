//! Darboux normal forms of even and odd contact forms, their coordinate
//! bracket tables and Poisson tensors, and the closed-form Legendre brackets.
//!
//! Even: `α = dz − p_a dx^a + (ε_j/2) θ^j dθ^j` on `(z, x_a, p_a, th_j)`.
//! Odd:  `α = dξ − θ^a dx^a` on `(xi, x_a, th_a)`.

use std::sync::Arc;

use super::OneForm;
use crate::algebra::{parse_poly, SuperPoly};
use crate::charts::{Chart, Generator};
use crate::error::Result;
use crate::linalg::{zeros, Matrix};
use crate::scalar::Scalar;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn even_chart(pairs: usize, odd: usize) -> Result<Arc<Chart>> {
    let mut gens = vec![Generator::even("z", vec![])];
    gens.extend(names("x", pairs).into_iter().map(|n| Generator::even(n, vec![])));
    gens.extend(names("p", pairs).into_iter().map(|n| Generator::even(n, vec![])));
    gens.extend(names("th", odd).into_iter().map(|n| Generator::odd(n, vec![])));
    Ok(Arc::new(Chart::new(gens)?))
}

pub fn odd_chart(pairs: usize) -> Result<Arc<Chart>> {
    let mut gens = vec![Generator::odd("xi", vec![])];
    gens.extend(names("x", pairs).into_iter().map(|n| Generator::even(n, vec![])));
    gens.extend(names("th", pairs).into_iter().map(|n| Generator::odd(n, vec![])));
    Ok(Arc::new(Chart::new(gens)?))
}

pub fn even_form<C: Scalar>(pairs: usize, eps: &[i64]) -> Result<OneForm<C>> {
    let c = even_chart(pairs, eps.len())?;
    let mut entries = vec![("z".to_string(), SuperPoly::one(&c))];
    for a in 1..=pairs {
        entries.push((format!("x{a}"), -SuperPoly::var(&c, &format!("p{a}"))?));
    }
    for (j, e) in eps.iter().enumerate() {
        let th = SuperPoly::var(&c, &format!("th{}", j + 1))?;
        entries.push((format!("th{}", j + 1), th.scale(&C::ratio(*e, 2))));
    }
    let entries: Vec<(&str, SuperPoly<C>)> = entries.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    OneForm::from_entries(&c, &entries)
}

pub fn odd_form<C: Scalar>(pairs: usize) -> Result<OneForm<C>> {
    let c = odd_chart(pairs)?;
    let mut entries = vec![("xi".to_string(), SuperPoly::one(&c))];
    for a in 1..=pairs {
        entries.push((format!("x{a}"), -SuperPoly::var(&c, &format!("th{a}"))?));
    }
    let entries: Vec<(&str, SuperPoly<C>)> = entries.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    OneForm::from_entries(&c, &entries)
}

/// Fills a bracket matrix from listed entries and their graded-antisymmetric
/// partners; everything else is zero.
pub fn table_from_entries<C: Scalar>(chart: &Arc<Chart>, k: u8, entries: &[(&str, &str, &str)]) -> Result<Matrix<C>> {
    let mut m = zeros(chart, chart.len(), chart.len());
    for (a, b, v) in entries {
        let (i, j) = (chart.require(a)?, chart.require(b)?);
        let v: SuperPoly<C> = parse_poly(chart, v)?;
        let e = (chart.parity(i) + k) * (chart.parity(j) + k) % 2;
        m[j][i] = if e == 1 { v.clone() } else { -v.clone() };
        m[i][j] = v;
    }
    Ok(m)
}

/// Coordinate brackets of the symplectized even normal form. The odd
/// coordinates have weight ½ under the Euler field, hence `{θ, z} = θ/2t`;
/// `{θ^j, θ^j} = −ε_j/t` in the orientation fixed by `{z, t} = 1`.
pub fn even_table<C: Scalar>(ext: &Arc<Chart>, pairs: usize, eps: &[i64]) -> Result<Matrix<C>> {
    let mut rows: Vec<(String, String, String)> = vec![("z".into(), "t".into(), "1".into())];
    for a in 1..=pairs {
        rows.push((format!("p{a}"), "z".into(), format!("p{a}*t^-1")));
        rows.push((format!("p{a}"), format!("x{a}"), "t^-1".into()));
    }
    for (j, e) in eps.iter().enumerate() {
        let th = format!("th{}", j + 1);
        rows.push((th.clone(), "z".into(), format!("1/2*{th}*t^-1")));
        rows.push((th.clone(), th, format!("{}*t^-1", -e)));
    }
    let refs: Vec<(&str, &str, &str)> = rows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    table_from_entries(ext, 0, &refs)
}

/// Coordinate brackets of the symplectized odd normal form.
pub fn odd_table<C: Scalar>(ext: &Arc<Chart>, pairs: usize) -> Result<Matrix<C>> {
    let mut rows: Vec<(String, String, String)> = vec![("t".into(), "xi".into(), "1".into())];
    for a in 1..=pairs {
        rows.push((format!("th{a}"), "xi".into(), format!("-th{a}*t^-1")));
        rows.push((format!("x{a}"), format!("th{a}"), "-t^-1".into()));
    }
    let refs: Vec<(&str, &str, &str)> = rows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    table_from_entries(ext, 1, &refs)
}

/// `J = ∂_t∂_z + t⁻¹[∂_z(p_a∂_{p_a} + ½θ^j∂_{θ^j}) + ∂_{x^a}∂_{p_a} + (ε_j/2)∂_{θ^j}∂_{θ^j}]`
/// on `ΠT*(ℝ^× × M)`, derivatives written as `xi_<y>`.
pub fn even_hamiltonian_text(pairs: usize, eps: &[i64]) -> String {
    let mut s = String::from("xi_t*xi_z");
    for a in 1..=pairs {
        s += &format!(" + t^-1*xi_z*p{a}*xi_p{a} + t^-1*xi_x{a}*xi_p{a}");
    }
    for (j, e) in eps.iter().enumerate() {
        let j = j + 1;
        let sign = if *e > 0 { '+' } else { '-' };
        s += &format!(" + 1/2*t^-1*xi_z*th{j}*xi_th{j} {sign} {}/2*t^-1*xi_th{j}*xi_th{j}", e.abs());
    }
    s
}

/// `J = −∂_t∂_ξ + t⁻¹[∂_{x^a}∂_{θ^a} − ∂_{θ^a} θ^a ∂_ξ]` on `T*(ℝ^× × M)`.
pub fn odd_hamiltonian_text(pairs: usize) -> String {
    let mut s = String::from("-p_t*p_xi");
    for a in 1..=pairs {
        s += &format!(" + t^-1*p_x{a}*p_th{a} - t^-1*p_th{a}*th{a}*p_xi");
    }
    s
}

fn d<C: Scalar>(f: &SuperPoly<C>, name: &str) -> SuperPoly<C> {
    f.deriv_by(name).expect("normal-form coordinate")
}

fn dr<C: Scalar>(f: &SuperPoly<C>, name: &str) -> SuperPoly<C> {
    f.deriv_right(f.chart().require(name).expect("normal-form coordinate"))
}

fn v<C: Scalar>(c: &Arc<Chart>, name: &str) -> SuperPoly<C> {
    SuperPoly::var(c, name).expect("normal-form coordinate")
}

/// The even Legendre bracket in closed form; `F` is differentiated from the
/// right and `G` from the left.
pub fn even_explicit<C: Scalar>(pairs: usize, eps: &[i64], f: &SuperPoly<C>, g: &SuperPoly<C>) -> SuperPoly<C> {
    let c = f.chart().clone();
    let (fz, gz) = (dr(f, "z"), d(g, "z"));
    let mut out = &(&fz * g) - &(f * &gz);
    for a in 1..=pairs {
        let (x, p) = (format!("x{a}"), format!("p{a}"));
        let pa = v(&c, &p);
        out = &out + &(&(&dr(f, &p) * &pa) * &gz);
        out = &out - &(&(&fz * &pa) * &d(g, &p));
        out = &out + &(&dr(f, &p) * &d(g, &x));
        out = &out - &(&dr(f, &x) * &d(g, &p));
    }
    for (j, e) in eps.iter().enumerate() {
        let th = format!("th{}", j + 1);
        let tj = v::<C>(&c, &th).scale(&C::ratio(1, 2));
        out = &out + &(&(&dr(f, &th) * &tj) * &gz);
        out = &out - &(&(&fz * &tj) * &d(g, &th));
        out = &out - &(&dr(f, &th) * &d(g, &th)).scale(&C::from_i64(*e));
    }
    out
}

/// The odd Legendre bracket in closed form, read off from the coordinate
/// table:
///
/// ```text
/// {F,G} = F ∂_ξG − (F∂←_ξ) G + (F∂←_ξ) θ^a ∂_{θ^a}G − (F∂←_{θ^a}) θ^a ∂_ξG
///       − (F∂←_{x^a}) ∂_{θ^a}G + (F∂←_{θ^a}) ∂_{x^a}G
/// ```
pub fn odd_explicit<C: Scalar>(pairs: usize, f: &SuperPoly<C>, g: &SuperPoly<C>) -> SuperPoly<C> {
    let c = f.chart().clone();
    let (gxi, fxi) = (d(g, "xi"), dr(f, "xi"));
    let mut out = &(f * &gxi) - &(&fxi * g);
    for a in 1..=pairs {
        let (x, th) = (format!("x{a}"), format!("th{a}"));
        let ta = v::<C>(&c, &th);
        out = &out + &(&(&fxi * &ta) * &d(g, &th));
        out = &out - &(&(&dr(f, &th) * &ta) * &gxi);
        out = &out - &(&dr(f, &x) * &d(g, &th));
        out = &out + &(&dr(f, &th) * &d(g, &x));
    }
    out
}
