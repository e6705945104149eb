//! Seeded random polynomials for randomized identity checks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Monomial, SuperPoly};
use crate::charts::Chart;
use crate::scalar::Scalar;

pub struct Sampler {
    rng: ChaCha8Rng,
    pub max_terms: usize,
    pub coeff_bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_terms: 3,
            coeff_bound: 3,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn monomial(&mut self, chart: &Chart, vars: &[usize], max_deg: i64) -> Monomial {
        let mut exps = vec![0; chart.len()];
        let deg = self.rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            let v = vars[self.rng.gen_range(0..vars.len())];
            if chart.parity(v) == 1 && exps[v] == 1 {
                continue;
            }
            exps[v] += 1;
        }
        Monomial::from_exps(exps)
    }

    /// Up to `max_terms` monomials of degree `≤ max_deg` in `vars`, with
    /// nonzero integer coefficients.
    pub fn poly_in<C: Scalar>(&mut self, chart: &Arc<Chart>, vars: &[usize], max_deg: i64) -> SuperPoly<C> {
        let mut out = SuperPoly::zero(chart);
        if vars.is_empty() {
            return SuperPoly::from_int(chart, self.coeff());
        }
        let n = self.rng.gen_range(1..=self.max_terms);
        for _ in 0..n {
            let m = self.monomial(chart, vars, max_deg);
            let c = C::from_i64(self.coeff());
            out = &out + &SuperPoly::monomial(chart, m, c).expect("sampled monomial fits its chart");
        }
        out
    }

    pub fn poly<C: Scalar>(&mut self, chart: &Arc<Chart>, max_deg: i64) -> SuperPoly<C> {
        let vars: Vec<usize> = (0..chart.len()).collect();
        self.poly_in(chart, &vars, max_deg)
    }

    /// Like [`Sampler::poly`], restricted to the given parity.
    pub fn homogeneous<C: Scalar>(&mut self, chart: &Arc<Chart>, max_deg: i64, parity: u8) -> SuperPoly<C> {
        let vars: Vec<usize> = (0..chart.len()).collect();
        loop {
            let p = self.poly_in::<C>(chart, &vars, max_deg);
            let (e, o) = p.parity_parts();
            let part = if parity == 0 { e } else { o };
            if !part.is_zero() || parity == 0 {
                return part;
            }
        }
    }

    /// A parity-homogeneous polynomial of random parity.
    pub fn any_homogeneous<C: Scalar>(&mut self, chart: &Arc<Chart>, max_deg: i64) -> SuperPoly<C> {
        let has_odd = chart.gens().iter().any(|g| g.is_odd());
        let parity = if has_odd { self.rng.gen_range(0..2) } else { 0 };
        self.homogeneous(chart, max_deg, parity)
    }

    fn coeff(&mut self) -> i64 {
        let b = self.coeff_bound;
        loop {
            let c = self.rng.gen_range(-b..=b);
            if c != 0 {
                return c;
            }
        }
    }
}
