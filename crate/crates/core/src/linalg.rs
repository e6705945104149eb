//! Matrices with polynomial entries (ordered products, so odd entries are
//! fine) and exact rank over the scalars.

use std::sync::Arc;

use crate::algebra::{Monomial, SuperPoly};
use crate::charts::Chart;
use crate::scalar::Scalar;

pub type Matrix<C> = Vec<Vec<SuperPoly<C>>>;

pub fn zeros<C: Scalar>(chart: &Arc<Chart>, r: usize, c: usize) -> Matrix<C> {
    vec![vec![SuperPoly::zero(chart); c]; r]
}

pub fn identity<C: Scalar>(chart: &Arc<Chart>, n: usize) -> Matrix<C> {
    let mut m = zeros(chart, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = SuperPoly::one(chart);
    }
    m
}

pub fn mat_mul<C: Scalar>(a: &Matrix<C>, b: &Matrix<C>) -> Matrix<C> {
    let chart = a[0][0].chart().clone();
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = zeros(&chart, n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn mat_add<C: Scalar>(a: &Matrix<C>, b: &Matrix<C>) -> Matrix<C> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mat_neg<C: Scalar>(a: &Matrix<C>) -> Matrix<C> {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

pub fn is_zero<C: Scalar>(a: &Matrix<C>) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Determinant and adjugate by Faddeev–LeVerrier. Entries must commute
/// (e.g. a body matrix); only ring operations and division by integers.
pub fn det_adj<C: Scalar>(b: &Matrix<C>) -> (SuperPoly<C>, Matrix<C>) {
    let n = b.len();
    let chart = b[0][0].chart().clone();
    let id = identity::<C>(&chart, n);
    let mut m = zeros(&chart, n, n);
    let mut c = SuperPoly::one(&chart);
    for k in 1..=n {
        // M_k = B M_{k-1} + c_{n-k+1} I
        let bm = mat_mul(b, &m);
        m = mat_add(&bm, &id.iter().map(|r| r.iter().map(|x| x * &c).collect()).collect());
        let bmk = mat_mul(b, &m);
        let mut tr = SuperPoly::zero(&chart);
        for (i, row) in bmk.iter().enumerate() {
            tr = &tr + &row[i];
        }
        c = tr.scale(&C::ratio(-1, k as i64));
    }
    // c is now c_0; det = (−1)^n c_0, adj = (−1)^{n−1} M_n
    let det = if n % 2 == 0 { c } else { -c };
    let adj = if n % 2 == 1 { m } else { mat_neg(&m) };
    (det, adj)
}

/// Inverse of a single-term polynomial supported on invertible generators.
pub fn unit_inverse<C: Scalar>(p: &SuperPoly<C>) -> Option<SuperPoly<C>> {
    if p.num_terms() != 1 {
        return None;
    }
    let (m, c) = p.terms().next()?;
    let chart = p.chart();
    for (i, &e) in m.exps().iter().enumerate() {
        if e != 0 && !chart.gen(i).invertible {
            return None;
        }
    }
    let inv = Monomial::from_exps(m.exps().iter().map(|e| -e).collect());
    SuperPoly::monomial(chart, inv, C::one() / c.clone()).ok()
}

pub enum Inverse<C: Scalar> {
    Invertible(Matrix<C>),
    /// The body determinant is not a unit of the Laurent ring.
    Degenerate(SuperPoly<C>),
}

/// Inverse over the super-ring: invert the body, then sum the finite
/// Neumann series `Σ (−B⁻¹N)^j B⁻¹` for the nilpotent part `N`.
pub fn invert<C: Scalar>(k: &Matrix<C>) -> Inverse<C> {
    let n = k.len();
    if n == 0 {
        return Inverse::Invertible(Vec::new());
    }
    let body: Matrix<C> = k.iter().map(|r| r.iter().map(|x| x.body()).collect()).collect();
    let (det, adj) = det_adj(&body);
    let Some(dinv) = unit_inverse(&det) else {
        return Inverse::Degenerate(det);
    };
    let binv: Matrix<C> = adj.iter().map(|r| r.iter().map(|x| x * &dinv).collect()).collect();
    let nil = mat_add(k, &mat_neg(&body));
    let step = mat_neg(&mat_mul(&binv, &nil));
    let mut term = binv.clone();
    let mut sum = binv;
    loop {
        term = mat_mul(&step, &term);
        if is_zero(&term) {
            break;
        }
        sum = mat_add(&sum, &term);
    }
    Inverse::Invertible(sum)
}

/// Rank of a scalar matrix by fraction-free (Bareiss) elimination.
pub fn rank<C: Scalar>(m: &[Vec<C>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<C>> = m.to_vec();
    let mut prev = C::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                a[i][j] = (a[r][c].clone() * a[i][j].clone() - a[i][c].clone() * a[r][j].clone()) / prev.clone();
            }
            a[i][c] = C::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::charts::Generator;
    use num_rational::BigRational;

    fn chart() -> Arc<Chart> {
        Arc::new(
            Chart::new(vec![
                Generator::even("t", vec![]).invertible(),
                Generator::even("x", vec![]),
                Generator::odd("a", vec![]),
                Generator::odd("b", vec![]),
            ])
            .unwrap(),
        )
    }

    fn m(c: &Arc<Chart>, rows: &[&[&str]]) -> Matrix<BigRational> {
        rows.iter().map(|r| r.iter().map(|s| parse_poly(c, s).unwrap()).collect()).collect()
    }

    #[test]
    fn det_of_laurent_matrix() {
        let c = chart();
        let (d, adj) = det_adj(&m(&c, &[&["0", "t"], &["-t", "x"]]));
        assert_eq!(d, parse_poly(&c, "t^2").unwrap());
        assert_eq!(adj, m(&c, &[&["x", "-t"], &["t", "0"]]));
    }

    #[test]
    fn super_inverse() {
        let c = chart();
        let k = m(&c, &[&["t", "a"], &["b", "1"]]);
        let Inverse::Invertible(inv) = invert(&k) else {
            panic!("degenerate")
        };
        assert_eq!(mat_mul(&k, &inv), identity(&c, 2));
        assert_eq!(mat_mul(&inv, &k), identity(&c, 2));
        assert!(matches!(invert(&m(&c, &[&["x"]])), Inverse::Degenerate(_)));
        assert!(matches!(invert(&m(&c, &[&["1 + t"]])), Inverse::Degenerate(_)));
    }

    #[test]
    fn bareiss_rank() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&a), 2);
        assert_eq!(rank::<BigRational>(&[vec![q(0)]]), 0);
    }
}
