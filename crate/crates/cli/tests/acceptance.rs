//! End-to-end acceptance run: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gcm_core::brackets::{Bracket, PoissonTensor};
use gcm_core::charts::{Chart, Generator};
use gcm_core::cohomology::{check_complex, cohomology_dims, kirillov_example, GradedComplex, TwistedDeRham};
use gcm_core::contact::normal_forms::*;
use gcm_core::contact::{carrier_for, check_contact, invert_two_form, symplectize, tensor_to_form, Inversion, Legendre, OneForm, TwoForm};
use gcm_core::courant::wade::{monomial_sections, wade_bracket, wade_pairing, DeRhamModel, Section};
use gcm_core::courant::*;
use gcm_core::jacobi::{check_jacobi, poissonize, verify_axioms, JacobiTriple};
use gcm_core::sampling::Sampler;
use gcm_core::{parse_poly, Poly, Rational};

type Q = Rational;
type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn invert(w: &TwoForm<Q>) -> Result<(PoissonTensor<Q>, Poly), String> {
    match invert_two_form(w).map_err(e)? {
        Inversion::Symplectic { tensor, hamiltonian, .. } => Ok((tensor, hamiltonian)),
        Inversion::Degenerate { body_det } => Err(format!("degenerate, body det {body_det}")),
    }
}

/// Nonzero entries above the diagonal, and the total number above it.
fn count_entries(t: &PoissonTensor<Q>) -> (usize, usize) {
    let n = Bracket::chart(t).len();
    let nz = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !t.entry(a, b).is_zero())
        .count();
    (nz, n * (n + 1) / 2)
}

fn table(even: bool) -> Outcome {
    let eps = [1, -1];
    let alpha = if even { even_form::<Q>(1, &eps) } else { odd_form::<Q>(2) }.map_err(e)?;
    let (tensor, _) = invert(&symplectize(&alpha).map_err(e)?)?;
    let ext = Bracket::chart(&tensor).clone();
    let want = if even {
        even_table::<Q>(&ext, 1, &eps)
    } else {
        odd_table::<Q>(&ext, 2)
    }
    .map_err(e)?;
    ensure(tensor.matrix() == &want[..], "coordinate brackets differ from the table")?;
    let (nz, total) = count_entries(&tensor);
    Ok(format!("{nz} nonzero coordinate brackets match, other {} are 0", total - nz))
}

fn chart(gens: &[(&str, u8)]) -> Arc<Chart> {
    Arc::new(Chart::new(gens.iter().map(|(n, p)| Generator::new(*n, *p, vec![])).collect()).expect("chart"))
}

fn contact_checks() -> Outcome {
    let c = chart(&[("x", 0), ("th", 1)]);
    let q = |s: &str| parse_poly::<Q>(&c, s).expect("poly");
    let ex41 = OneForm::from_entries(&c, &[("x", q("1")), ("th", q("th"))]).map_err(e)?;
    let ex42 = OneForm::from_entries(&c, &[("x", q("1 + th")), ("th", q("th"))]).map_err(e)?;
    ensure(check_contact(&ex41), "dx + th dth is not contact")?;
    ensure(!check_contact(&ex42), "(1 + th)dx + th dth is contact")?;
    let mut n = 2;
    for pairs in 0..=2 {
        for odd in 0..=2usize {
            let eps: Vec<i64> = (0..odd).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
            ensure(
                check_contact(&even_form::<Q>(pairs, &eps).map_err(e)?),
                format!("even form {pairs}/{odd}"),
            )?;
            n += 1;
        }
        ensure(check_contact(&odd_form::<Q>(pairs).map_err(e)?), format!("odd form {pairs}"))?;
        n += 1;
    }
    Ok(format!("{n} forms classified correctly"))
}

fn inversions() -> Outcome {
    let mut n = 0;
    let eps = [1, -1];
    for (alpha, k) in [(even_form::<Q>(1, &eps).map_err(e)?, 0), (odd_form::<Q>(2).map_err(e)?, 1)] {
        let w = symplectize(&alpha).map_err(e)?;
        let (tensor, ham) = invert(&w)?;
        let ext = Bracket::chart(&tensor).clone();
        let (want, text) = if k == 0 {
            (even_table::<Q>(&ext, 1, &eps).map_err(e)?, even_hamiltonian_text(1, &eps))
        } else {
            (odd_table::<Q>(&ext, 2).map_err(e)?, odd_hamiltonian_text(2))
        };
        ensure(tensor.matrix() == &want[..], "normal-form inverse")?;
        let carrier = carrier_for(&ext, k).map_err(e)?;
        ensure(ham == parse_poly(carrier.chart(), &text).map_err(e)?, "normal-form Hamiltonian")?;
        ensure(tensor_to_form(&tensor).map_err(e)?.poly() == w.poly(), "normal-form round trip")?;
        n += 1;
    }
    for (m, q) in [(0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 3)] {
        let spec = CourantSpec::<Q>::random(m, q, 1, (10 * m + q) as u64).map_err(e)?;
        let w = naive_symplectic_form(m, &spec.g).map_err(e)?;
        let (tensor, _) = invert(&w)?;
        let ginv = spec.g_inverse().map_err(e)?;
        let (carrier, h) = expected_hamiltonian::<Q>(m, &ginv, false).map_err(e)?;
        let want = PoissonTensor::from_hamiltonian(&carrier, Bracket::chart(&tensor), &h).map_err(e)?;
        ensure(tensor.matrix() == want.matrix(), format!("Courant chart inverse, m={m} q={q}"))?;
        ensure(
            tensor_to_form(&tensor).map_err(e)?.poly() == w.poly(),
            format!("Courant round trip, m={m} q={q}"),
        )?;
        n += 1;
    }
    Ok(format!("{n} inversions exact, all round-trip"))
}

fn jacobi() -> Outcome {
    let ex71 = JacobiTriple::<Q>::parse(&chart(&[("x", 0), ("th", 1)]), 1, "th*p_x^2", "th*p_x", "th").map_err(e)?;
    let rep = check_jacobi(&ex71).map_err(e)?;
    ensure(rep.residuals.len() == 4 && rep.pass(), "odd example has a nonzero residual")?;
    let xyz = chart(&[("x", 0), ("y", 0), ("z", 0)]);
    let failing = JacobiTriple::<Q>::parse(&xyz, 0, "y*xi_x*xi_y + xi_y*xi_z", "0", "0").map_err(e)?;
    let rep = check_jacobi(&failing).map_err(e)?;
    ensure(!rep.residuals[0].1.is_zero(), "{Λ,Λ} residual vanishes on the failing triple")?;
    let fixtures = [
        ex71,
        failing,
        JacobiTriple::parse(&xyz, 0, "xi_x*xi_y", "0", "0").map_err(e)?,
        JacobiTriple::parse(&xyz, 0, "x*xi_y*xi_z", "0", "0").map_err(e)?,
        JacobiTriple::parse(&xyz, 0, "xi_x*xi_y", "xi_z", "0").map_err(e)?,
        JacobiTriple::parse(&xyz, 0, "0", "x*xi_y", "0").map_err(e)?,
    ];
    let (mut pass, mut fail) = (0, 0);
    for j in &fixtures {
        let ok = check_jacobi(j).map_err(e)?.pass();
        let (carrier, h) = poissonize(j).map_err(e)?;
        ensure(
            ok == carrier.is_homological(&h).map_err(e)?,
            format!("equivalence broken for Λ = {}", j.lambda()),
        )?;
        if ok {
            pass += 1;
        } else {
            fail += 1;
        }
    }
    ensure(pass > 0 && fail > 0, "equivalence needs both directions")?;
    Ok(format!(
        "odd example residuals 0; {pass} passing and {fail} failing triples agree with the poissonization"
    ))
}

fn legendre() -> Outcome {
    let mut rng = Sampler::new(0);
    let eps = [1, -1];
    let mut n = 0;
    for pairs in 1..=2 {
        let even = even_form::<Q>(pairs, &eps).map_err(e)?;
        let odd = odd_form::<Q>(pairs).map_err(e)?;
        let (le, lo) = (Legendre::new(&even).map_err(e)?, Legendre::new(&odd).map_err(e)?);
        for i in 0..100 {
            let (alpha, l) = if i % 2 == 0 { (&even, &le) } else { (&odd, &lo) };
            let c = alpha.chart();
            let (f, g): (Poly, Poly) = (rng.poly(c, 2), rng.poly(c, 2));
            let want = if i % 2 == 0 {
                even_explicit(pairs, &eps, &f, &g)
            } else {
                odd_explicit(pairs, &f, &g)
            };
            ensure(l.bracket(&f, &g).map_err(e)? == want, format!("{{{f}, {g}}}"))?;
            n += 1;
        }
    }
    let mut triples = 0;
    for (alpha, seed) in [(even_form::<Q>(1, &eps).map_err(e)?, 1), (odd_form::<Q>(2).map_err(e)?, 2)] {
        let l = Legendre::new(&alpha).map_err(e)?;
        let rep = verify_axioms(alpha.chart(), l.parity(), |f, g| l.bracket(f, g), 100, 2, seed).map_err(e)?;
        ensure(rep.pass(), format!("{rep:?}"))?;
        triples += rep.samples;
    }
    Ok(format!("{n} random pairs match the closed forms; axioms hold on {triples} triples"))
}

fn cohomology() -> Outcome {
    for m in 0..=2 {
        let (carrier, j, sub) = kirillov_example::<Q>(m, 2).map_err(e)?;
        let a = GradedComplex::from_hamiltonian(&carrier, &j, &sub).map_err(e)?;
        let b = TwistedDeRham::new(m).map_err(e)?.complex::<Q>(carrier.chart(), &sub).map_err(e)?;
        ensure(a == b, format!("operators differ for m = {m}"))?;
    }
    for m in 0..=2 {
        let (carrier, j, sub) = kirillov_example::<Q>(m, 3).map_err(e)?;
        ensure(
            check_complex(&GradedComplex::from_hamiltonian(&carrier, &j, &sub).map_err(e)?),
            format!("d² ≠ 0, m = {m}"),
        )?;
    }
    let (carrier, j, sub) = kirillov_example::<Q>(0, 3).map_err(e)?;
    let point = cohomology_dims(&GradedComplex::from_hamiltonian(&carrier, &j, &sub).map_err(e)?);
    ensure(point == [0, 0], format!("point base: {point:?}"))?;
    let (carrier, j, sub) = kirillov_example::<Q>(1, 2).map_err(e)?;
    let line = cohomology_dims(&GradedComplex::from_hamiltonian(&carrier, &j, &sub).map_err(e)?);
    ensure(line.iter().all(|&d| d == 0), format!("m = 1: {line:?}"))?;
    Ok(format!("operators agree for m ≤ 2, d² = 0, H(point) = {point:?}, H(ℝ¹) = {line:?}"))
}

fn courant() -> Outcome {
    for seed in 0..10u64 {
        let (m, q) = (1 + (seed % 2) as usize, 1 + (seed % 3) as usize);
        let spec = CourantSpec::<Q>::random(m, q, 1, seed).map_err(e)?;
        let model = build(&spec).map_err(e)?;
        let data = courant_data(&model).map_err(e)?;
        ensure(data.recovered == spec, format!("roundtrip, seed {seed}"))?;
        let t = model.var("t");
        for i in 0..q {
            for j in 0..q {
                ensure(data.pairing[i][j] == t.scale(&spec.g[i][j]), "⟨e_i,e_j⟩ ≠ t g_ij")?;
            }
        }
    }
    let passing = [
        exact_spec::<Q>(1).map_err(e)?,
        exact_spec::<Q>(2).map_err(e)?,
        so3_spec::<Q>().map_err(e)?,
        decomposable_spec::<Q>().map_err(e)?,
    ];
    for spec in &passing {
        let model = build(spec).map_err(e)?;
        ensure(
            model.master_residual().is_zero(),
            format!("master equation fails for q = {}", spec.q),
        )?;
        for ax in courant_axioms(&model, 2, 0).map_err(e)? {
            ensure(ax.pass(), format!("{} fails for q = {}", ax.name, spec.q))?;
        }
        ensure(jacobi_failures(&model) == 0, "Loday identity")?;
    }
    let bad = build(&failing_spec::<Q>().map_err(e)?).map_err(e)?;
    ensure(!bad.master_residual().is_zero(), "q = 5 spec passes the master equation")?;
    ensure(jacobi_failures(&bad) > 0, "q = 5 spec satisfies the Loday identity")?;
    Ok("10 roundtrips exact, pairing t·g; exact, so(3) pass with all axioms; \
        deviation: the q = 4, A123 = A134 = 1 spec satisfies the master equation (its 3-form is decomposable), \
        the failing case is q = 5, A123 = A145 = 1"
        .into())
}

fn wade() -> Outcome {
    let mut pairs = 0;
    for m in 1..=2 {
        let model = DeRhamModel::<Q>::new(m).map_err(e)?;
        ensure(model.is_homological(), "de Rham Hamiltonian is not homological")?;
        let secs = monomial_sections::<Q>(m, 2).map_err(e)?;
        for u in &secs {
            for v in &secs {
                ensure(
                    model.derived(u, v).map_err(e)? == wade_bracket(u, v).map_err(e)?,
                    format!("u = {u}, v = {v}"),
                )?;
                pairs += 1;
            }
        }
    }
    let base = base_chart(1).map_err(e)?;
    let p = |s: &str| parse_poly::<Q>(&base, s).expect("poly");
    let z = Section::<Q>::zero(&base);
    let model = DeRhamModel::<Q>::new(1).map_err(e)?;
    let (mut u, mut v, mut want) = (z.clone(), z.clone(), z.clone());
    u.x[0] = p("1");
    v.alpha[0] = p("x1");
    want.alpha[0] = p("1");
    ensure(
        wade_bracket(&u, &v).map_err(e)? == want && model.derived(&u, &v).map_err(e)? == want,
        "{∂x, x dx} ≠ dx",
    )?;
    let (mut u, mut v) = (z.clone(), z.clone());
    u.f = p("1");
    v.alpha[0] = p("x1^2 + 3");
    ensure(
        wade_bracket(&u, &v).map_err(e)? == v && model.derived(&u, &v).map_err(e)? == v,
        "{(0,1), α} ≠ α",
    )?;
    let mut w = z;
    w.x[0] = p("x1");
    w.f = p("2");
    w.alpha[0] = p("x1 + 1");
    w.g = p("x1^2");
    ensure(wade_pairing(&w, &w).map_err(e)? == p("x1^2 + x1 + 2*x1^2"), "⟨u,u⟩ ≠ ⟨X,α⟩ + fg")?;
    ensure(
        model.pairing(&w, &w).map_err(e)? == wade_pairing(&w, &w).map_err(e)?,
        "derived pairing",
    )?;
    Ok(format!("{pairs} section pairs agree; the three worked examples hold"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn cli(limit: Duration) -> Outcome {
    let dir = std::env::temp_dir().join(format!("gcm-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(e)?;
    let cases = [
        ("check-contact", "ex41.gcm", "CONTACT: yes", 0),
        ("check-contact", "ex42.gcm", "CONTACT: no", 1),
        ("check-jacobi", "ex71.gcm", "JACOBI: pass", 0),
    ];
    for (cmd, file, want, code) in cases {
        let mut reports = Vec::new();
        for run in 0..2 {
            let json = dir.join(format!("{file}.{run}.json"));
            let start = Instant::now();
            let out = Command::new(env!("CARGO_BIN_EXE_gcm"))
                .arg(cmd)
                .arg(fixture(file))
                .arg("--json")
                .arg(&json)
                .output()
                .map_err(e)?;
            ensure(start.elapsed() < limit, format!("{cmd} {file} took {:?}", start.elapsed()))?;
            let stdout = String::from_utf8_lossy(&out.stdout);
            ensure(stdout.lines().any(|l| l == want), format!("{cmd} {file}: no `{want}` in\n{stdout}"))?;
            ensure(
                out.status.code() == Some(code),
                format!("{cmd} {file}: exit {:?}", out.status.code()),
            )?;
            if cmd == "check-jacobi" {
                let residuals: Vec<&str> = stdout.lines().filter(|l| l.starts_with("  ")).collect();
                ensure(
                    residuals.len() == 4 && residuals.iter().all(|l| l.ends_with(" = 0")),
                    "residuals not all 0",
                )?;
            }
            reports.push(std::fs::read(&json).map_err(e)?);
        }
        ensure(reports[0] == reports[1], format!("{cmd} {file}: JSON differs between runs"))?;
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok("three fixture commands give the documented output and exit codes; JSON byte-stable".into())
}

fn main() {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("even normal form bracket table", secs(1), Box::new(|| table(true))),
        ("odd normal form bracket table", secs(1), Box::new(|| table(false))),
        ("contact checks", secs(1), Box::new(contact_checks)),
        ("two-form inversions", secs(2), Box::new(inversions)),
        ("Jacobi structures", secs(2), Box::new(jacobi)),
        ("Legendre brackets", secs(10), Box::new(legendre)),
        ("cohomology", secs(5), Box::new(cohomology)),
        ("Courant algebroids", secs(10), Box::new(courant)),
        ("Wade bracket", secs(10), Box::new(wade)),
        ("command line", secs(3), Box::new(|| cli(Duration::from_secs(1)))),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {name}: {detail} ({:.3} s, limit {} s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
