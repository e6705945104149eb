use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gcm_core::brackets::Bracket;
use gcm_core::cohomology::{check_complex, cohomology_dims, GradedComplex};
use gcm_core::contact::{invert_two_form, symplectize, Inversion};
use gcm_core::courant::wade::{monomial_sections, wade_anchor, wade_bracket, wade_pairing, DeRhamModel, Section};
use gcm_core::courant::{build, courant_axioms, courant_data, jacobi_failures};
use gcm_core::jacobi::verify_jacobi_axioms;
use gcm_core::sampling::Sampler;
use gcm_core::{check_contact, check_jacobi, parse_poly, poissonize, Chart, Legendre, Monomial, OneForm, Poly, Rational, SuperPoly};
use num_traits::{One, Zero};
use rand::Rng;

use crate::format::{self, InputError, StructureFile};
use crate::report::{digest, Report};

#[derive(Debug, Parser)]
#[command(name = "gcm", version, about = "Check and compute with graded contact and Jacobi structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write a JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Include wall-clock time in the JSON report (makes it run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is the `oneform` block a contact form?
    CheckContact { file: PathBuf },
    /// Structure equations of the `jacobi` block, plus sampled bracket axioms.
    CheckJacobi {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Poissonization of the `jacobi` block and its homological check.
    Poissonize { file: PathBuf },
    /// Canonical bracket `{f, g}` on the `hamiltonian` carrier, or the derived `{{f, H}, g}`.
    Bracket {
        file: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        derived: bool,
    },
    /// Legendre bracket of two basic functions for the `oneform` block.
    Legendre {
        file: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Truncated cohomology of the `hamiltonian` block on its subspace.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        truncate: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Master equation, tables and axioms of the `courant` block.
    CheckCourant {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random sections added to the basis for the axiom checks.
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
    /// Dorfman bracket against the derived bracket of the de Rham Hamiltonian.
    Wade {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        max_degree: u32,
    },
    /// Print the file in canonical form.
    Format { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckContact { .. } => "check-contact",
            Command::CheckJacobi { .. } => "check-jacobi",
            Command::Poissonize { .. } => "poissonize",
            Command::Bracket { .. } => "bracket",
            Command::Legendre { .. } => "legendre",
            Command::Cohomology { .. } => "cohomology",
            Command::CheckCourant { .. } => "check-courant",
            Command::Wade { .. } => "wade",
            Command::Format { .. } => "format",
        }
    }

    fn file(&self) -> &Path {
        match self {
            Command::CheckContact { file }
            | Command::CheckJacobi { file, .. }
            | Command::Poissonize { file }
            | Command::Bracket { file, .. }
            | Command::Legendre { file, .. }
            | Command::Cohomology { file, .. }
            | Command::CheckCourant { file, .. }
            | Command::Wade { file, .. }
            | Command::Format { file } => file,
        }
    }

    fn flags(&self) -> Vec<(&'static str, String)> {
        match self {
            Command::CheckJacobi { seed, samples, .. } | Command::CheckCourant { seed, samples, .. } => {
                vec![("seed", seed.to_string()), ("samples", samples.to_string())]
            }
            Command::Bracket { f, g, derived, .. } => vec![("f", f.clone()), ("g", g.clone()), ("derived", derived.to_string())],
            Command::Legendre { f, g, .. } => vec![("f", f.clone()), ("g", g.clone())],
            Command::Cohomology { truncate, seed, .. } => vec![("truncate", truncate.to_string()), ("seed", seed.to_string())],
            Command::Wade { max_degree, .. } => vec![("max-degree", max_degree.to_string())],
            _ => Vec::new(),
        }
    }
}

/// An input error and where it came from (a file or a flag).
struct Failure {
    origin: String,
    err: InputError,
}

type Run<T> = std::result::Result<T, Failure>;

trait Origin<T> {
    fn at(self, origin: &str) -> Run<T>;
}

impl<T> Origin<T> for std::result::Result<T, InputError> {
    fn at(self, origin: &str) -> Run<T> {
        self.map_err(|err| Failure {
            origin: origin.to_string(),
            err,
        })
    }
}

impl<T> Origin<T> for gcm_core::Result<T> {
    fn at(self, origin: &str) -> Run<T> {
        self.map_err(|e| Failure {
            origin: origin.to_string(),
            err: InputError::Invalid(e.to_string()),
        })
    }
}

fn flag_poly(chart: &Arc<Chart>, flag: &str, text: &str) -> Run<Poly> {
    use gcm_core::Error as E;
    let origin = format!("--{flag}");
    parse_poly(chart, text)
        .map_err(|e| match e {
            E::Syntax { offset, msg } => InputError::Syntax {
                line: 1,
                col: offset + 1,
                msg,
            },
            E::UnknownSymbol { offset, name } => InputError::Unknown {
                line: 1,
                col: offset + 1,
                name,
            },
            other => InputError::Inconsistent {
                line: 1,
                col: 1,
                msg: other.to_string(),
            },
        })
        .at(&origin)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs one command; never panics on bad input.
pub fn run(cli: &Cli) -> Report {
    let cmd = &cli.command;
    let start = Instant::now();
    let path = cmd.file();
    let origin = path.display().to_string();
    let bytes = std::fs::read(path);
    let mut report = Report::new(cmd.name(), digest(cmd.name(), &cmd.flags(), bytes.as_deref().unwrap_or_default()));
    let result = bytes
        .map_err(|e| InputError::Io(format!("cannot read: {e}")))
        .and_then(|b| String::from_utf8(b).map_err(|_| InputError::Io("input is not UTF-8".into())))
        .and_then(|text| format::parse(&text))
        .at(&origin)
        .and_then(|s| dispatch(cmd, &s, &origin, &mut report));
    if let Err(Failure { origin, err }) = result {
        report.input_error(&err);
        let sep = match err {
            InputError::Syntax { .. } | InputError::Unknown { .. } | InputError::Inconsistent { .. } => ":",
            _ => ": ",
        };
        report.text = format!("error[{}]: {origin}{sep}{err}\n", err.code());
    }
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    report
}

fn dispatch(cmd: &Command, s: &StructureFile, origin: &str, r: &mut Report) -> Run<()> {
    match cmd {
        Command::CheckContact { .. } => contact(s.oneform().at(origin)?, r),
        Command::CheckJacobi { seed, samples, .. } => jacobi(s, origin, *seed, *samples, r),
        Command::Poissonize { .. } => poissonization(s, origin, r),
        Command::Bracket { f, g, derived, .. } => bracket(s, origin, f, g, *derived, r),
        Command::Legendre { f, g, .. } => legendre(s.oneform().at(origin)?, origin, f, g, r),
        Command::Cohomology { truncate, seed, .. } => cohomology(s, origin, *truncate, *seed, r),
        Command::CheckCourant { seed, samples, .. } => courant(s, origin, *seed, *samples, r),
        Command::Wade { max_degree, .. } => wade(s, origin, *max_degree, r),
        Command::Format { .. } => {
            r.text = s.to_string();
            Ok(())
        }
    }
}

fn show_form(a: &OneForm<Rational>) -> String {
    let mut out = String::new();
    for (i, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = format!("d{}", a.chart().gen(i).name);
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if c.num_terms() == 1 => (true, rest.to_string()),
            _ => (false, s),
        };
        let term = match body.as_str() {
            "1" => d,
            b if c.num_terms() == 1 => format!("{b}*{d}"),
            b => format!("({b})*{d}"),
        };
        out += match (out.is_empty(), neg) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        out += &term;
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn contact(a: &OneForm<Rational>, r: &mut Report) -> Run<()> {
    r.line(format!("alpha = {}", show_form(a)));
    match a.parity() {
        None => r.line("parity: inhomogeneous"),
        Some(p) => {
            r.line(format!("parity: {}", if p == 0 { "even" } else { "odd" }));
            if let Ok(w) = symplectize(a) {
                let nondeg = matches!(invert_two_form(&w), Ok(Inversion::Symplectic { .. }));
                r.line(format!("d(t*alpha) closed: {}", yes(w.is_closed())));
                r.line(format!("d(t*alpha) nondegenerate: {}", yes(nondeg)));
            }
        }
    }
    let ok = check_contact(a);
    r.line(format!("CONTACT: {}", yes(ok)));
    if !ok {
        r.fail();
    }
    Ok(())
}

fn jacobi(s: &StructureFile, origin: &str, seed: u64, samples: usize, r: &mut Report) -> Run<()> {
    let j = s.jacobi().at(origin)?;
    r.line(format!("parity: {}", if j.parity() == 0 { "even" } else { "odd" }));
    r.line(format!("Lambda = {}", j.lambda()));
    r.line(format!("Gamma = {}", j.gamma()));
    r.line(format!("f = {}", j.f()));
    let rep = check_jacobi(j).at(origin)?;
    for (name, res) in &rep.residuals {
        r.line(format!("  {name} = {res}"));
        r.residual(*name, res);
    }
    let (carrier, h) = poissonize(j).at(origin)?;
    let homological = carrier.is_homological(&h).at(origin)?;
    r.line(format!("poissonization homological: {}", yes(homological)));
    if rep.pass() {
        let ax = verify_jacobi_axioms(j, samples, seed).at(origin)?;
        r.line(format!(
            "sampled axioms (seed {seed}, {} triples): parity {}, antisymmetry {}, Jacobi {}, Leibniz {} failures",
            ax.samples, ax.parity, ax.antisymmetry, ax.jacobi, ax.leibniz
        ));
        if !ax.pass() {
            r.fail();
        }
    }
    if !rep.pass() || homological != rep.pass() {
        r.fail();
    }
    r.line(format!("JACOBI: {}", if r.pass { "pass" } else { "fail" }));
    Ok(())
}

fn show_chart(c: &Chart) -> String {
    let gens: Vec<String> = c
        .gens()
        .iter()
        .map(|g| {
            let w: Vec<String> = g.weight.iter().map(|x| x.to_string()).collect();
            let mut s = format!("{}:{}", g.name, if g.is_odd() { "odd" } else { "even" });
            if !w.is_empty() {
                s += &format!("[{}]", w.join(","));
            }
            s
        })
        .collect();
    gens.join(" ")
}

fn poissonization(s: &StructureFile, origin: &str, r: &mut Report) -> Run<()> {
    let j = s.jacobi().at(origin)?;
    let (carrier, h) = poissonize(j).at(origin)?;
    r.line(format!("carrier: {}", show_chart(carrier.chart())));
    r.line(format!("J = {h}"));
    let hh = carrier.bracket(&h, &h).at(origin)?;
    r.line(format!("{{J,J}} = {hh}"));
    r.residual("{J,J}", &hh);
    r.line(format!("HOMOLOGICAL: {}", yes(hh.is_zero())));
    if !hh.is_zero() {
        r.fail();
    }
    Ok(())
}

fn bracket(s: &StructureFile, origin: &str, f: &str, g: &str, derived: bool, r: &mut Report) -> Run<()> {
    let (carrier, h) = match &s.hamiltonian {
        Some(hb) => (hb.carrier.clone(), Some(hb.h.clone())),
        None => (gcm_core::CanonicalBracket::new(s.chart().at(origin)?.clone()).at(origin)?, None),
    };
    let cc = carrier.chart().clone();
    let (f, g) = (flag_poly(&cc, "f", f)?, flag_poly(&cc, "g", g)?);
    if derived {
        let h = h.ok_or(InputError::Missing("hamiltonian")).at(origin)?;
        let homological = carrier.is_homological(&h).at(origin)?;
        r.line(format!("H = {h}"));
        r.line(format!("H homological: {}", yes(homological)));
        let b = carrier.derived_bracket(&h, &f, &g).at(origin)?;
        r.line(format!("{{{{f, H}}, g}} = {b}"));
        r.residual("{{f,H},g}", &b);
    } else {
        let b = carrier.bracket(&f, &g).at(origin)?;
        r.line(format!("{{f, g}} = {b}"));
        r.residual("{f,g}", &b);
    }
    Ok(())
}

fn legendre(a: &OneForm<Rational>, origin: &str, f: &str, g: &str, r: &mut Report) -> Run<()> {
    let base = a.chart().clone();
    let (f, g) = (flag_poly(&base, "f", f)?, flag_poly(&base, "g", g)?);
    r.line(format!("alpha = {}", show_form(a)));
    match Legendre::new(a) {
        Ok(l) => {
            r.line(format!("Hamiltonian = {}", l.hamiltonian()));
            let b = l.bracket(&f, &g).at(origin)?;
            r.line(format!("{{f, g}} = {b}"));
            r.residual("{f,g}", &b);
        }
        Err(gcm_core::Error::NotContact) => {
            r.line("CONTACT: no");
            r.fail();
        }
        Err(e) => return Err(e).at(origin),
    }
    Ok(())
}

fn cohomology(s: &StructureFile, origin: &str, truncate: i64, seed: u64, r: &mut Report) -> Run<()> {
    let hb = s.hamiltonian().at(origin)?;
    let mut sub = hb
        .subspace
        .clone()
        .ok_or(InputError::Missing("hamiltonian allowed/fixed/degree"))
        .at(origin)?;
    sub.truncation = truncate;
    let cc = hb.carrier.chart().clone();
    r.line(format!("J = {}", hb.h));
    let complex = match GradedComplex::from_hamiltonian(&hb.carrier, &hb.h, &sub) {
        Ok(c) => c,
        Err(gcm_core::Error::Precondition(m)) => {
            r.line(format!("COHOMOLOGY: {m}"));
            r.fail();
            return Ok(());
        }
        Err(e) => return Err(e).at(origin),
    };
    let (dims, ranks, h) = (complex.dims(), complex.ranks(), cohomology_dims(&complex));
    r.line(format!("truncation: {truncate}"));
    r.line("degree  dim  rank  H");
    for (i, (deg, _)) in complex.spaces.iter().enumerate() {
        r.line(format!(
            "{deg:>6}  {:>3}  {:>4}  {}",
            dims[i],
            ranks.get(i).copied().unwrap_or(0),
            h[i]
        ));
    }
    let dd = check_complex(&complex);
    r.line(format!("d^2 = 0: {}", yes(dd)));

    // spot-check the matrices against {J, ·} on seeded random cochains
    let mut rng = Sampler::new(seed);
    let mut mismatches = 0;
    for (i, map) in complex.maps.iter().enumerate() {
        let (src, dst) = (&complex.spaces[i].1, &complex.spaces[i + 1].1);
        let v: Vec<i64> = src.iter().map(|_| rng.rng().gen_range(-3..=3)).collect();
        let cochain = |basis: &[Monomial], coeffs: &[Rational]| -> Run<Poly> {
            let mut p = SuperPoly::zero(&cc);
            for (m, c) in basis.iter().zip(coeffs) {
                p = &p + &SuperPoly::monomial(&cc, m.clone(), c.clone()).at(origin)?;
            }
            Ok(p)
        };
        let x = cochain(src, &v.iter().map(|&k| Rational::from_integer(k.into())).collect::<Vec<_>>())?;
        let image: Vec<Rational> = map
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v)
                    .fold(Rational::zero(), |acc, (a, &k)| acc + a * Rational::from_integer(k.into()))
            })
            .collect();
        if hb.carrier.bracket(&hb.h, &x).at(origin)? != cochain(dst, &image)? {
            mismatches += 1;
        }
    }
    r.line(format!(
        "matrix vs {{J,.}} on seeded cochains (seed {seed}): {mismatches} mismatches"
    ));
    let hs: Vec<String> = h.iter().map(|d| d.to_string()).collect();
    r.line(format!("COHOMOLOGY: [{}]", hs.join(", ")));
    if !dd || mismatches > 0 {
        r.fail();
    }
    Ok(())
}

fn courant(s: &StructureFile, origin: &str, seed: u64, samples: usize, r: &mut Report) -> Run<()> {
    let spec = s.courant().at(origin)?;
    let model = build(spec).at(origin)?;
    r.line(format!("m = {}, q = {}", spec.m, spec.q));
    r.line(format!("H = {}", model.hamiltonian));
    let master = model.master_residual();
    r.line(format!("{{H,H}} = {master}"));
    r.residual("{H,H}", &master);
    let data = courant_data(&model).at(origin)?;
    r.line("pairing <e_i,e_j>:");
    for row in &data.pairing {
        let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
        r.line(format!("  [{}]", cells.join(", ")));
    }
    r.line("bracket table <{e_i,e_j},e_k> (nonzero):");
    for (i, rows) in data.brackets.iter().enumerate() {
        for (j, row) in rows.iter().enumerate() {
            for (k, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    r.line(format!("  ({} {} {}) {p}", i + 1, j + 1, k + 1));
                }
            }
        }
    }
    r.line("anchor rho(e_i)(x^a), rho(e_i)(t):");
    for i in 0..spec.q {
        let xs: Vec<String> = data.anchor_x[i].iter().map(|p| p.to_string()).collect();
        r.line(format!("  e{}: [{}], {}", i + 1, xs.join(", "), data.anchor_t[i]));
    }
    let roundtrip = data.recovered == *spec;
    r.line(format!("recovered (g, r, A): {}", yes(roundtrip)));
    if !roundtrip {
        r.fail();
    }
    if master.is_zero() {
        for ax in courant_axioms(&model, samples, seed).at(origin)? {
            r.line(format!("  {}: {} of {} nonzero", ax.name, ax.failed, ax.checked));
            for f in &ax.failures {
                r.residual(ax.name, f);
            }
            if !ax.pass() {
                r.fail();
            }
        }
    } else {
        r.line("axioms: skipped, the master equation fails");
        r.fail();
    }
    let loday = jacobi_failures(&model);
    r.line(format!("Loday identity on generators: {loday} failures"));
    if loday > 0 {
        r.fail();
    }
    r.line(format!("COURANT: {}", if r.pass { "pass" } else { "fail" }));
    Ok(())
}

fn wade(s: &StructureFile, origin: &str, max_degree: u32, r: &mut Report) -> Run<()> {
    let w = s.wade().at(origin)?;
    let model = DeRhamModel::<Rational>::new(w.m).at(origin)?;
    r.line(format!("m = {}", w.m));
    r.line(format!("H = {}", model.hamiltonian()));
    r.line(format!("H homological: {}", yes(model.is_homological())));
    if !model.is_homological() {
        r.fail();
    }
    let base = gcm_core::courant::base_chart(w.m).at(origin)?;
    if let (Some(u), Some(v)) = (&w.u, &w.v) {
        let derived = model.derived(u, v).at(origin)?;
        let direct = wade_bracket(u, v).at(origin)?;
        r.line(format!("u = {u}"));
        r.line(format!("v = {v}"));
        r.line(format!("derived {{u,v}} = {derived}"));
        r.line(format!("Dorfman {{u,v}} = {direct}"));
        r.line(format!("<u,v> = {}", wade_pairing(u, v).at(origin)?));
        for a in 0..w.m {
            let x = SuperPoly::gen(&base, a);
            r.line(format!("rho(u)(x{}) = {}", a + 1, wade_anchor(u, &x).at(origin)?));
        }
        let one = SuperPoly::constant(&base, Rational::one());
        r.line(format!("rho(u)(1) = {}", wade_anchor(u, &one).at(origin)?));
        if derived != direct {
            r.residual("derived - Dorfman", format!("{}", difference(&derived, &direct)));
            r.fail();
        }
    }
    let secs = monomial_sections::<Rational>(w.m, max_degree).at(origin)?;
    let mut mismatches = 0;
    for u in &secs {
        for v in &secs {
            let (d, b) = (model.derived(u, v).at(origin)?, wade_bracket(u, v).at(origin)?);
            if d != b {
                if mismatches < 3 {
                    r.residual(format!("derived - Dorfman at ({u}, {v})"), difference(&d, &b));
                }
                mismatches += 1;
            }
        }
    }
    r.line(format!(
        "monomial sections of degree <= {max_degree}: {} pairs, {mismatches} mismatches",
        secs.len() * secs.len()
    ));
    if mismatches > 0 {
        r.fail();
    }
    r.line(format!("WADE: {}", if r.pass { "pass" } else { "fail" }));
    Ok(())
}

fn difference(a: &Section<Rational>, b: &Section<Rational>) -> Section<Rational> {
    Section {
        x: a.x.iter().zip(&b.x).map(|(p, q)| p - q).collect(),
        f: &a.f - &b.f,
        alpha: a.alpha.iter().zip(&b.alpha).map(|(p, q)| p - q).collect(),
        g: &a.g - &b.g,
    }
}
