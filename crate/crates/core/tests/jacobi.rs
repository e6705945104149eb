use std::sync::Arc;

use gcm_core::brackets::Bracket;
use gcm_core::charts::{Chart, Generator};
use gcm_core::jacobi::*;
use gcm_core::{parse_poly, Poly, Rational};

fn chart(gens: &[(&str, u8)]) -> Arc<Chart> {
    Arc::new(Chart::new(gens.iter().map(|(n, p)| Generator::new(*n, *p, vec![])).collect()).unwrap())
}

fn ex71() -> JacobiTriple<Rational> {
    let base = chart(&[("x", 0), ("th", 1)]);
    JacobiTriple::parse(&base, 1, "th*p_x^2", "th*p_x", "th").unwrap()
}

fn failing() -> JacobiTriple<Rational> {
    let base = chart(&[("x", 0), ("y", 0), ("z", 0)]);
    JacobiTriple::parse(&base, 0, "y*xi_x*xi_y + xi_y*xi_z", "0", "0").unwrap()
}

#[test]
fn example_structure_passes() {
    let j = ex71();
    let rep = check_jacobi(&j).unwrap();
    assert_eq!(rep.residuals.len(), 4);
    assert!(rep.pass(), "{:?}", rep);
    let (carrier, h) = poissonize(&j).unwrap();
    let cc = carrier.chart();
    assert_eq!(h, parse_poly::<Rational>(cc, "t^-1*th*p_x^2 + th*p_x*p_t + t*th*p_t^2").unwrap());
    assert!(carrier.is_homological(&h).unwrap());
    let ax = verify_jacobi_axioms(&j, 100, 7).unwrap();
    assert!(ax.pass(), "{ax:?}");
}

#[test]
fn failing_structure() {
    let j = failing();
    let rep = check_jacobi(&j).unwrap();
    assert!(!rep.pass());
    let r = &rep.residuals[0].1;
    let cc = j.carrier().chart();
    // proportional to ∂x∧∂y∧∂z
    assert_eq!(r.num_terms(), 1);
    assert!(r.involves(cc.require("xi_x").unwrap()) && r.involves(cc.require("xi_y").unwrap()) && r.involves(cc.require("xi_z").unwrap()));
    let (carrier, h) = poissonize(&j).unwrap();
    assert!(!carrier.is_homological(&h).unwrap());
    let ax = verify_jacobi_axioms(&j, 100, 3).unwrap();
    assert!(ax.jacobi > 0, "{ax:?}");
}

#[test]
fn hamiltonian_square_decomposes() {
    // {𝒥,𝒥} = t⁻²R₁ + 2t⁻¹π_t R₂ + π_t² R₃ + 2tπ_t³ R₄ (odd), t⁻²R₁ + 2t⁻¹R₂ ξ_t (even)
    for j in [ex71(), failing()] {
        let (carrier, h) = poissonize(&j).unwrap();
        let cc = carrier.chart().clone();
        let jj = carrier.bracket(&h, &h).unwrap();
        let rep = check_jacobi(&j).unwrap();
        let r: Vec<Poly> = rep.residuals.iter().map(|(_, r)| r.transport(&cc).unwrap()).collect();
        let q = |s: &str| parse_poly::<Rational>(&cc, s).unwrap();
        let want = if j.parity() == 1 {
            &(&(&(&q("t^-2") * &r[0]) + &(&q("2*t^-1*p_t") * &r[1])) + &(&q("p_t^2") * &r[2])) + &(&q("2*t*p_t^3") * &r[3])
        } else {
            &(&q("t^-2") * &r[0]) + &(&(&q("2*t^-1") * &r[1]) * &q("xi_t"))
        };
        assert_eq!(jj, want);
    }
}

#[test]
fn brackets_of_basic_functions() {
    let j = ex71();
    let c = j.base().clone();
    let q = |s: &str| parse_poly::<Rational>(&c, s).unwrap();
    let one = jacobi_bracket(&j, &q("1"), &q("1")).unwrap();
    assert!(!one.is_zero());
    let base = chart(&[("x", 0), ("y", 0)]);
    let p = JacobiTriple::<Rational>::parse(&base, 0, "xi_x*xi_y", "0", "0").unwrap();
    let q = |s: &str| parse_poly::<Rational>(&base, s).unwrap();
    assert!(jacobi_bracket(&p, &q("1"), &q("x*y")).unwrap().is_zero());
    assert!(jacobi_bracket(&p, &q("x"), &q("y")).unwrap().is_constant());
    assert!(verify_jacobi_axioms(&p, 50, 1).unwrap().pass());
}

#[test]
fn invalid_triples() {
    let base = chart(&[("x", 0), ("th", 1)]);
    assert!(JacobiTriple::<Rational>::parse(&base, 1, "p_x^2", "0", "0").is_err());
    assert!(JacobiTriple::<Rational>::parse(&base, 1, "th*p_x", "0", "0").is_err());
    assert!(JacobiTriple::<Rational>::parse(&base, 0, "0", "xi_x", "1").is_err());
    assert!(JacobiTriple::<Rational>::parse(&base, 0, "0", "x*xi_x", "0").is_ok());
}
