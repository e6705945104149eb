use std::sync::Arc;

use gcm_core::brackets::{Bracket, PoissonTensor};
use gcm_core::charts::{extend_with_fiber, Chart, Generator};
use gcm_core::contact::normal_forms::*;
use gcm_core::contact::*;
use gcm_core::{parse_poly, Poly, Rational};

fn q(c: &Arc<Chart>, s: &str) -> Poly {
    parse_poly(c, s).unwrap()
}

fn symplectic(alpha: &OneForm<Rational>) -> (PoissonTensor<Rational>, Poly) {
    match invert_two_form(&symplectize(alpha).unwrap()).unwrap() {
        Inversion::Symplectic { tensor, hamiltonian, .. } => (tensor, hamiltonian),
        Inversion::Degenerate { body_det } => panic!("degenerate: {body_det}"),
    }
}

fn show(t: &PoissonTensor<Rational>) -> String {
    let c = Bracket::chart(t).clone();
    let mut s = String::new();
    for a in 0..c.len() {
        for b in 0..c.len() {
            if !t.entry(a, b).is_zero() {
                s += &format!("{{{},{}}} = {}\n", c.gen(a).name, c.gen(b).name, t.entry(a, b));
            }
        }
    }
    s
}

#[test]
fn even_normal_form_table() {
    let eps = [1, -1];
    let alpha = even_form::<Rational>(1, &eps).unwrap();
    let (tensor, ham) = symplectic(&alpha);
    let ext = Bracket::chart(&tensor).clone();
    let want = even_table::<Rational>(&ext, 1, &eps).unwrap();
    assert_eq!(tensor.matrix(), &want[..], "got\n{}", show(&tensor));
    let carrier = carrier_for(&ext, 0).unwrap();
    assert_eq!(ham, q(carrier.chart(), &even_hamiltonian_text(1, &eps)));
}

#[test]
fn odd_normal_form_table() {
    let alpha = odd_form::<Rational>(2).unwrap();
    let (tensor, ham) = symplectic(&alpha);
    let ext = Bracket::chart(&tensor).clone();
    let want = odd_table::<Rational>(&ext, 2).unwrap();
    assert_eq!(tensor.matrix(), &want[..], "got\n{}", show(&tensor));
    let carrier = carrier_for(&ext, 1).unwrap();
    assert_eq!(ham, q(carrier.chart(), &odd_hamiltonian_text(2)));
}

#[test]
fn tensor_form_roundtrip() {
    for alpha in [even_form::<Rational>(2, &[1, -1, 1]).unwrap(), odd_form::<Rational>(2).unwrap()] {
        let w = symplectize(&alpha).unwrap();
        let (tensor, ham) = symplectic(&alpha);
        assert_eq!(tensor_to_form(&tensor).unwrap().poly(), w.poly());
        let back = hamiltonian_to_tensor(Bracket::chart(&tensor), &ham).unwrap();
        assert_eq!(back, tensor);
    }
}

#[test]
fn explicit_formulas_agree() {
    let eps = [1, -1];
    let alpha = even_form::<Rational>(1, &eps).unwrap();
    let c = alpha.chart().clone();
    let l = Legendre::new(&alpha).unwrap();
    let fs = [
        "z",
        "x1",
        "p1",
        "th1",
        "th2",
        "z*x1 + p1^2",
        "th1*th2*z",
        "x1*th1 + p1*th2",
        "1",
        "z^2*th1",
    ];
    for f in fs {
        for g in fs {
            let (f, g) = (q(&c, f), q(&c, g));
            assert_eq!(l.bracket(&f, &g).unwrap(), even_explicit(1, &eps, &f, &g), "even {{{f}, {g}}}");
        }
    }
    let alpha = odd_form::<Rational>(2).unwrap();
    let c = alpha.chart().clone();
    let l = Legendre::new(&alpha).unwrap();
    let fs = [
        "xi",
        "x1",
        "x2",
        "th1",
        "th2",
        "xi*x1 + th2",
        "th1*th2*x2",
        "x1*xi*th1",
        "1",
        "x2^2",
    ];
    for f in fs {
        for g in fs {
            let (f, g) = (q(&c, f), q(&c, g));
            assert_eq!(l.bracket(&f, &g).unwrap(), odd_explicit(2, &f, &g), "odd {{{f}, {g}}}");
        }
    }
}

#[test]
fn contact_examples() {
    let c = Arc::new(
        Chart::new(vec![
            Generator::even("x", vec![]),
            Generator::even("z", vec![]),
            Generator::even("p", vec![]),
        ])
        .unwrap(),
    );
    let alpha = OneForm::from_entries(&c, &[("z", q(&c, "1")), ("x", q(&c, "-p"))]).unwrap();
    assert!(check_contact(&alpha));
    let l = Legendre::new(&alpha).unwrap();
    assert_eq!(l.bracket(&q(&c, "z"), &q(&c, "x")).unwrap(), q(&c, "x"));
    assert_eq!(l.bracket(&q(&c, "p"), &q(&c, "x")).unwrap(), q(&c, "1"));
    assert_eq!(l.bracket(&q(&c, "1"), &q(&c, "z")).unwrap(), q(&c, "-1"));

    // a form mixing an even and an odd coefficient is rejected
    let c = Arc::new(Chart::new(vec![Generator::even("x", vec![]), Generator::odd("th", vec![])]).unwrap());
    let alpha = OneForm::from_entries(&c, &[("x", q(&c, "1")), ("th", q(&c, "1"))]).unwrap();
    assert!(!check_contact(&alpha));

    let c = Arc::new(Chart::new(vec![Generator::even("x", vec![]), Generator::even("y", vec![])]).unwrap());
    let alpha = OneForm::from_entries(&c, &[("x", q(&c, "1"))]).unwrap();
    assert!(!check_contact(&alpha));
}

#[test]
fn extended_chart_has_invertible_fiber() {
    let c = even_chart(1, 0).unwrap();
    let e = extend_with_fiber(&c).unwrap();
    assert_eq!(e.gen(0).name, "t");
    assert!(e.gen(0).invertible);
}

#[test]
fn random_pairs_match_closed_forms() {
    use gcm_core::sampling::Sampler;
    let mut rng = Sampler::new(2024);
    let eps = [1, -1];
    let even = even_form::<Rational>(2, &eps).unwrap();
    let odd = odd_form::<Rational>(2).unwrap();
    let (le, lo) = (Legendre::new(&even).unwrap(), Legendre::new(&odd).unwrap());
    for i in 0..200 {
        let (alpha, l) = if i % 2 == 0 { (&even, &le) } else { (&odd, &lo) };
        let c = alpha.chart();
        let f: Poly = rng.poly(c, 2);
        let g: Poly = rng.poly(c, 2);
        let want = if i % 2 == 0 {
            even_explicit(2, &eps, &f, &g)
        } else {
            odd_explicit(2, &f, &g)
        };
        assert_eq!(l.bracket(&f, &g).unwrap(), want, "{{{f}, {g}}}");
    }
}

#[test]
fn legendre_axioms() {
    use gcm_core::jacobi::verify_axioms;
    for (alpha, seed) in [
        (even_form::<Rational>(1, &[1, -1]).unwrap(), 11),
        (odd_form::<Rational>(2).unwrap(), 12),
    ] {
        let l = Legendre::new(&alpha).unwrap();
        let rep = verify_axioms(alpha.chart(), l.parity(), |f, g| l.bracket(f, g), 50, 2, seed).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }
}

#[test]
fn super_contact_examples() {
    let c = Arc::new(Chart::new(vec![Generator::even("x", vec![]), Generator::odd("th", vec![])]).unwrap());
    let alpha = OneForm::from_entries(&c, &[("x", q(&c, "1")), ("th", q(&c, "th"))]).unwrap();
    assert!(check_contact(&alpha));
    let w = symplectize(&alpha).unwrap();
    assert!(w.is_closed());
    // rescaling by 1 + θ breaks homogeneity of the parity
    let bad = alpha.scaled(&q(&c, "1 + th")).unwrap();
    assert!(!check_contact(&bad));
    // even invertible rescalings preserve the contact property
    for psi in ["3", "-1/2"] {
        assert!(check_contact(&alpha.scaled(&q(&c, psi)).unwrap()));
    }
}

#[test]
fn normal_forms_are_contact() {
    for pairs in 0..=2 {
        for odd in 0..=2usize {
            let eps: Vec<i64> = (0..odd).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
            assert!(check_contact(&even_form::<Rational>(pairs, &eps).unwrap()), "even {pairs} {odd}");
        }
        assert!(check_contact(&odd_form::<Rational>(pairs).unwrap()), "odd {pairs}");
    }
    let alpha = even_form::<Rational>(1, &[1, 1]).unwrap();
    let c = alpha.chart().clone();
    let psi = q(&c, "2 + th1*th2");
    assert!(check_contact(&alpha.scaled(&psi).unwrap()));
}

#[test]
fn constant_block_inversion() {
    let c = Arc::new(Chart::new(vec![Generator::even("x", vec![]), Generator::even("p", vec![])]).unwrap());
    let w = TwoForm::<Rational>::parse(&c, "d_x*d_p").unwrap();
    let Inversion::Symplectic {
        tensor,
        carrier,
        hamiltonian,
    } = invert_two_form(&w).unwrap()
    else {
        panic!()
    };
    assert_eq!(hamiltonian, q(carrier.chart(), "xi_x*xi_p"));
    assert_eq!(tensor_to_form(&tensor).unwrap().poly(), w.poly());
    let w = TwoForm::<Rational>::parse(&c, "d_p*d_x").unwrap();
    let Inversion::Symplectic { tensor, .. } = invert_two_form(&w).unwrap() else {
        panic!()
    };
    assert_eq!(tensor.entry(1, 0), &q(&c, "-1"));
    let w = TwoForm::<Rational>::parse(&c, "x*d_x*d_p").unwrap();
    assert!(!invert_two_form(&w).unwrap().is_symplectic());
}
