use gcm_core::algebra::Monomial;
use gcm_core::brackets::Bracket;
use gcm_core::cohomology::*;
use gcm_core::sampling::Sampler;
use gcm_core::{parse_poly, Poly, Rational};

#[test]
fn hamiltonian_and_twisted_operator_agree() {
    for m in 0..=2 {
        let (carrier, j, sub) = kirillov_example::<Rational>(m, 2).unwrap();
        let c = GradedComplex::from_hamiltonian(&carrier, &j, &sub).unwrap();
        let tw = TwistedDeRham::new(m).unwrap();
        let c2 = tw.complex::<Rational>(carrier.chart(), &sub).unwrap();
        assert_eq!(c, c2, "m = {m}");
    }
}

#[test]
fn differential_on_examples() {
    let (carrier, j, _) = kirillov_example::<Rational>(1, 2).unwrap();
    let cc = carrier.chart();
    let q = |s: &str| parse_poly::<Rational>(cc, s).unwrap();
    // d_𝒥 = ṫ∂_t + ẋ∂_x
    assert_eq!(carrier.bracket(&j, &q("t")).unwrap(), q("tdot"));
    assert_eq!(carrier.bracket(&j, &q("t*x1^2")).unwrap(), q("tdot*x1^2 + 2*t*x1*xdot1"));
    let tw = TwistedDeRham::new(1).unwrap();
    let one = Poly::one(tw.chart());
    let (a, b) = tw.apply(&one, &Poly::zero(tw.chart()));
    assert!(a.is_zero());
    assert_eq!(b, one);
}

#[test]
fn twisted_operator_squares_to_zero() {
    let tw = TwistedDeRham::new(2).unwrap();
    let mut rng = Sampler::new(5);
    for _ in 0..50 {
        let mu: Poly = rng.poly(tw.chart(), 3);
        let nu: Poly = rng.poly(tw.chart(), 3);
        let (a, b) = tw.apply(&mu, &nu);
        let (a2, b2) = tw.apply(&a, &b);
        assert!(a2.is_zero() && b2.is_zero());
    }
}

#[test]
fn truncated_cohomology() {
    let (carrier, j, sub) = kirillov_example::<Rational>(0, 3).unwrap();
    let c = GradedComplex::from_hamiltonian(&carrier, &j, &sub).unwrap();
    assert_eq!(c.dims(), vec![1, 1]);
    assert_eq!(cohomology_dims(&c), vec![0, 0]);
    for m in 1..=2 {
        let (carrier, j, sub) = kirillov_example::<Rational>(m, 3).unwrap();
        let c = GradedComplex::from_hamiltonian(&carrier, &j, &sub).unwrap();
        assert!(check_complex(&c));
        let h = cohomology_dims(&c);
        assert!(h.iter().all(|&d| d == 0), "m = {m}: {h:?}");
        // Euler characteristic
        let chi = |v: &[usize]| {
            v.iter()
                .enumerate()
                .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum::<i64>()
        };
        assert_eq!(chi(&h), chi(&c.dims()));
    }
}

#[test]
fn zero_differential_and_corruption() {
    let (carrier, _, sub) = kirillov_example::<Rational>(1, 2).unwrap();
    let zero = Poly::zero(carrier.chart());
    let c = GradedComplex::from_hamiltonian(&carrier, &zero, &sub).unwrap();
    assert!(check_complex(&c));
    assert_eq!(cohomology_dims(&c), c.dims());
    let one = Rational::from_integer(1.into());
    let basis = |i: i32| vec![Monomial::from_exps(vec![i])];
    let bad = GradedComplex {
        chart: c.chart.clone(),
        spaces: vec![(0, basis(0)), (1, basis(1)), (2, basis(2))],
        maps: vec![vec![vec![one.clone()]], vec![vec![one]]],
    };
    assert!(!check_complex(&bad));
}

#[test]
fn non_homological_rejected() {
    let (carrier, _, sub) = kirillov_example::<Rational>(1, 2).unwrap();
    let h = parse_poly::<Rational>(carrier.chart(), "x1*tdot*zdot + z*tdot*pdot1").unwrap();
    assert!(!carrier.is_homological(&h).unwrap());
    assert!(GradedComplex::from_hamiltonian(&carrier, &h, &sub).is_err());
}
