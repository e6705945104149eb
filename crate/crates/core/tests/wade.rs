use gcm_core::courant::wade::*;
use gcm_core::Rational;

type Q = Rational;

#[test]
fn derived_bracket_is_wade_bracket() {
    for m in 1..=2 {
        let model = DeRhamModel::<Q>::new(m).unwrap();
        assert!(model.is_homological());
        let secs = monomial_sections::<Q>(m, 2).unwrap();
        let mut bad = 0;
        for u in &secs {
            for v in &secs {
                let direct = wade_bracket(u, v).unwrap();
                let derived = model.derived(u, v).unwrap();
                if direct != derived {
                    if bad < 8 {
                        println!("u={u}\nv={v}\n  wade   {direct}\n  derived {derived}");
                    }
                    bad += 1;
                }
            }
        }
        assert_eq!(bad, 0, "m={m}, {} sections", secs.len());
    }
}

fn base(m: usize) -> std::sync::Arc<gcm_core::Chart> {
    gcm_core::courant::base_chart(m).unwrap()
}

fn p(m: usize, s: &str) -> gcm_core::Poly {
    gcm_core::parse_poly(&base(m), s).unwrap()
}

#[test]
fn brackets_are_mostly_nontrivial() {
    let model = DeRhamModel::<Q>::new(2).unwrap();
    let secs = monomial_sections::<Q>(2, 2).unwrap();
    assert_eq!(secs.len(), 6 * 6);
    let zero = Section::zero(&base(2));
    let nonzero = secs
        .iter()
        .flat_map(|u| secs.iter().map(move |v| (u, v)))
        .filter(|(u, v)| model.derived(u, v).unwrap() != zero)
        .count();
    assert!(nonzero > 300, "{nonzero}");
}

#[test]
fn worked_examples() {
    let z = Section::<Q>::zero(&base(1));
    let mut u = z.clone();
    u.x[0] = p(1, "1");
    let mut v = z.clone();
    v.alpha[0] = p(1, "x1");
    let mut want = z.clone();
    want.alpha[0] = p(1, "1");
    assert_eq!(wade_bracket(&u, &v).unwrap(), want);

    let mut u = z.clone();
    u.f = p(1, "1");
    let mut v = z.clone();
    v.alpha[0] = p(1, "x1^2 + 3");
    assert_eq!(wade_bracket(&u, &v).unwrap(), v);

    let model = DeRhamModel::<Q>::new(1).unwrap();
    assert_eq!(model.derived(&u, &v).unwrap(), v);
}

#[test]
fn pairing_and_anchor_agree() {
    let model = DeRhamModel::<Q>::new(2).unwrap();
    let secs = monomial_sections::<Q>(2, 1).unwrap();
    let phi = p(2, "x1^2*x2 + 5*x2");
    for u in &secs {
        for v in &secs {
            assert_eq!(model.pairing(u, v).unwrap(), wade_pairing(u, v).unwrap());
        }
        assert_eq!(model.anchor(u, &phi).unwrap(), wade_anchor(u, &phi).unwrap());
    }
    let mut u = Section::<Q>::zero(&base(2));
    u.x = vec![p(2, "x2"), p(2, "1")];
    u.f = p(2, "x1");
    u.alpha = vec![p(2, "x1"), p(2, "0")];
    u.g = p(2, "3");
    // ⟨u, u⟩ = ⟨X, α⟩ + fg
    assert_eq!(wade_pairing(&u, &u).unwrap(), p(2, "x1*x2 + 3*x1"));
}

#[test]
fn dimension_mismatch() {
    let u = Section::<Q>::zero(&base(1));
    let v = Section::<Q>::zero(&base(2));
    assert!(matches!(wade_bracket(&u, &v), Err(gcm_core::Error::Dimension(_))));
}
