//! Subcommands. Each returns the text to print and an exit code; the
//! binary only does the printing.

use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use bondcat::category::{BondMorphism, BondObject};
use bondcat::complexes::{homotopy_witness, ChainMap};
use bondcat::cones;
use bondcat::equiv::{find_witness, is_iso_in_quotient, IsoCertificate, KMatrixWitness, Variant};
use bondcat::functor::Functor;
use bondcat::gentle::{validate_gentle, GentleAlgebra, Quiver};
use bondcat::report::{Condition, Report};
use bondcat::scalar::Field;
use bondcat::verify::{self, Config, Outcome};
use bondcat::Error;

use crate::error::{exit, CliError};
use crate::format::{self, kind_of, render, to_value, Loader, Source, FORMAT};

type Result<T> = std::result::Result<T, CliError>;

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_variant(s: &str) -> std::result::Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Block-matrix categories over graded posets with involution.
#[derive(Debug, Parser)]
#[command(name = "bondcat", version)]
pub struct Cli {
    /// Coefficient field, `rational` or `gf:p`; overrides the input files
    /// and BONDCAT_FIELD.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<Field>,

    /// Print reports and decisions as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the result to this file instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an object, morphism, witness, complex, chain map, homotopy,
    /// quiver, triangle or bundle.
    Validate { file: PathBuf },
    /// Shift an object or morphism (`⟦−⟧ⁿ`) or a complex or chain map (`[n]`).
    Shift {
        file: PathBuf,
        #[arg(short = 'n', default_value_t = 1, allow_hyphen_values = true)]
        n: i64,
    },
    /// Cone, inclusion, projection and standard triangle of a morphism.
    Cone {
        file: PathBuf,
        /// Write each member to its own file in this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Decide `S ≃ T` (K) or `S ≡ T` (kappa); exit 3 if not.
    Equiv {
        s: PathBuf,
        t: PathBuf,
        #[arg(long, default_value = "K", value_parser = parse_variant)]
        variant: Variant,
    },
    /// Decide whether a morphism is invertible in the quotient; exit 3 if not.
    Iso {
        file: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Rotation data for the standard triangle of a morphism.
    Rotate {
        file: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Fill in `H: Ω_T → Ω_T2` for a square `F·T2 ≃ T·G`.
    Tr3 {
        t: PathBuf,
        t2: PathBuf,
        f: PathBuf,
        g: PathBuf,
        /// Witness for `F·T2 ≃ T·G`; solved for when omitted.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Octahedral configuration for composable `S`, `T`.
    Octahedron {
        s: PathBuf,
        t: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Gentle algebra tools.
    Gentle {
        #[command(subcommand)]
        command: GentleCommand,
    },
    /// Image of a complex or chain map in the block-matrix category.
    Functor {
        #[command(subcommand)]
        command: FunctorCommand,
    },
    /// Decide `φ ∼ ψ` (ψ defaults to zero); exit 3 if not homotopic.
    Homotopy { phi: PathBuf, psi: Option<PathBuf> },
    /// Run the randomized verification battery.
    VerifyAxioms {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Trials per criterion, replacing each criterion's default.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GentleCommand {
    /// Path basis, maximal paths, the poset and its involution.
    Analyze { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum FunctorCommand {
    /// Image of a complex, with its placement map.
    Object { file: PathBuf },
    /// Image of a chain map, with its placement map.
    Morphism { file: PathBuf },
}

/// What to print and how to exit.
#[derive(Debug)]
pub struct Response {
    pub text: String,
    pub code: u8,
}

impl Response {
    fn ok(text: String) -> Response {
        Response { text, code: exit::OK }
    }

    fn doc(v: &Value) -> Response {
        Response::ok(render(v))
    }
}

pub fn run(cli: &Cli) -> Result<Response> {
    let ctx = Ctx { loader: Loader { field: cli.field }, json: cli.json };
    match &cli.command {
        Command::Validate { file } => ctx.validate(file),
        Command::Shift { file, n } => ctx.shift(file, *n),
        Command::Cone { file, out_dir } => ctx.cone(file).and_then(|b| bundle(b, out_dir.as_deref())),
        Command::Equiv { s, t, variant } => ctx.equiv(s, t, *variant),
        Command::Iso { file, out_dir } => ctx.iso(file, out_dir.as_deref()),
        Command::Rotate { file, out_dir } => ctx.rotate(file).and_then(|b| bundle(b, out_dir.as_deref())),
        Command::Tr3 { t, t2, f, g, witness, out_dir } => ctx.tr3([t, t2, f, g], witness.as_deref(), out_dir.as_deref()),
        Command::Octahedron { s, t, out_dir } => ctx.octahedron(s, t).and_then(|b| bundle(b, out_dir.as_deref())),
        Command::Gentle { command: GentleCommand::Analyze { file } } => ctx.analyze(file),
        Command::Functor { command: FunctorCommand::Object { file } } => ctx.functor_object(file),
        Command::Functor { command: FunctorCommand::Morphism { file } } => ctx.functor_morphism(file),
        Command::Homotopy { phi, psi } => ctx.homotopy(phi, psi.as_deref()),
        Command::VerifyAxioms { seed, trials } => ctx.verify(*seed, trials.map(|t| t as usize)),
    }
}

struct Ctx {
    loader: Loader,
    json: bool,
}

fn prefixed(into: &mut Report, prefix: &str, r: Report) {
    for v in r.violations {
        into.push(v.condition, format!("{prefix}{}", v.location));
    }
}

fn morphism_report(f: &BondMorphism) -> Report {
    let mut r = Report::new();
    prefixed(&mut r, "source: ", f.source().validate());
    prefixed(&mut r, "target: ", f.target().validate());
    r.extend(f.validate());
    r
}

fn chain_map_report(f: &ChainMap) -> Report {
    let mut r = Report::new();
    prefixed(&mut r, "source: ", f.source().validate());
    prefixed(&mut r, "target: ", f.target().validate());
    r.extend(f.validate());
    r
}

fn require(what: &str, report: Report) -> Result<()> {
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::Invalid { what: what.to_string(), report })
    }
}

pub fn report_value(subject: &str, r: &Report) -> Value {
    let violations: Vec<Value> =
        r.violations.iter().map(|v| json!({"condition": v.condition.to_string(), "location": v.location})).collect();
    json!({"format": FORMAT, "kind": "report", "subject": subject, "valid": r.is_valid(), "violations": violations})
}

pub fn report_text(subject: &str, r: &Report) -> String {
    if r.is_valid() {
        return format!("{subject}: valid\n");
    }
    let mut s = format!("{subject}: {} violation(s)\n", r.violations.len());
    for v in &r.violations {
        s.push_str(&format!("  {v}\n"));
    }
    s
}

/// Writes each document member of a bundle to `dir/<member>.json`, or
/// renders the whole bundle.
fn bundle(b: Value, out_dir: Option<&FsPath>) -> Result<Response> {
    let Some(dir) = out_dir else { return Ok(Response::doc(&b)) };
    std::fs::create_dir_all(dir).map_err(|e| CliError::Write { path: dir.display().to_string(), message: e.to_string() })?;
    let mut text = String::new();
    for (k, v) in b.as_object().expect("bundles are objects") {
        if kind_of(v).is_none() {
            continue;
        }
        let path = dir.join(format!("{k}.json"));
        std::fs::write(&path, render(v)).map_err(|e| CliError::Write { path: path.display().to_string(), message: e.to_string() })?;
        text.push_str(&format!("wrote {}\n", path.display()));
    }
    Ok(Response::ok(text))
}

fn member_docs(kind: &str, members: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("format".into(), FORMAT.into());
    m.insert("kind".into(), kind.into());
    for (k, v) in members {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

fn obj(b: &BondObject) -> Value {
    to_value(&format::object_doc(b))
}

fn mor(f: &BondMorphism) -> Value {
    to_value(&format::morphism_doc(f))
}

fn wit(l: &KMatrixWitness) -> Value {
    to_value(&format::witness_doc(l))
}

fn iso_value(c: &IsoCertificate) -> Value {
    member_docs("iso", vec![("inverse", mor(&c.inverse)), ("left", wit(&c.left)), ("right", wit(&c.right))])
}

const BUNDLES: [&str; 6] = ["cone", "rotation", "fill-in", "octahedron", "iso", "triangle"];

impl Ctx {
    fn decision(&self, question: &str, detail: Option<(&str, String)>, text: &str) -> Response {
        let body = if self.json {
            let mut v = json!({"format": FORMAT, "kind": "decision", "question": question, "answer": false});
            if let Some((k, d)) = detail {
                v[k] = Value::String(d);
            }
            render(&v)
        } else {
            format!("{text}\n")
        };
        Response { text: body, code: exit::NO }
    }

    fn morphism(&self, path: &FsPath) -> Result<BondMorphism> {
        let f = self.loader.morphism(&Source::read(path)?)?;
        require(&path.display().to_string(), morphism_report(&f))?;
        Ok(f)
    }

    fn chain_map(&self, path: &FsPath) -> Result<ChainMap> {
        let f = self.loader.chain_map(&Source::read(path)?)?;
        require(&path.display().to_string(), chain_map_report(&f))?;
        Ok(f)
    }

    fn validate(&self, path: &FsPath) -> Result<Response> {
        let src = Source::read(path)?;
        let kind = kind_of(&src.value).ok_or_else(|| src.malformed("/kind", "missing or not a string"))?.to_string();
        let r = self.validate_at(&src, &src.value, "")?;
        let text = if self.json { render(&report_value(&kind, &r)) } else { report_text(&kind, &r) };
        Ok(Response { text, code: if r.is_valid() { exit::OK } else { exit::INVALID } })
    }

    fn validate_at(&self, src: &Source, v: &Value, ptr: &str) -> Result<Report> {
        let l = &self.loader;
        let kind = kind_of(v).ok_or_else(|| src.malformed(format!("{ptr}/kind"), "missing or not a string"))?;
        Ok(match kind {
            "object" => l.object_at(src, v, ptr)?.validate(),
            "morphism" => morphism_report(&l.morphism_at(src, v, ptr)?),
            "witness" => {
                let w = l.witness_at(src, v, ptr)?;
                let mut r = Report::new();
                prefixed(&mut r, "source: ", w.source().validate());
                prefixed(&mut r, "target: ", w.target().validate());
                r.extend(w.validate());
                r
            }
            "quiver" => self.validate_quiver(src, v, ptr)?,
            "complex" => l.complex_at(src, v, ptr)?.validate(),
            "chainmap" => chain_map_report(&l.chain_map_at(src, v, ptr)?),
            "homotopy" => {
                let s = l.homotopy_at(src, v, ptr)?;
                let mut r = Report::new();
                prefixed(&mut r, "source: ", s.source().validate());
                prefixed(&mut r, "target: ", s.target().validate());
                let zero = ChainMap::zero(s.source(), s.target())?;
                match s.boundary() {
                    // the boundary satisfies the equation; only shapes can fail
                    Ok(b) => r.extend(s.check(&b, &zero)?),
                    Err(e) => r.push(Condition::HomotopyShape, e.to_string()),
                }
                r
            }
            "triangle" => l.triangle_at(src, v, ptr)?.validate(),
            k if BUNDLES.contains(&k) => {
                let mut r = Report::new();
                for (name, m) in v.as_object().expect("kind was read from an object") {
                    if kind_of(m).is_some() {
                        let sub = self.validate_at(src, m, &format!("{ptr}/{name}"))?;
                        prefixed(&mut r, &format!("{name}: "), sub);
                    }
                }
                r
            }
            k => return Err(src.malformed(format!("{ptr}/kind"), format!("cannot validate kind `{k}`"))),
        })
    }

    fn validate_quiver(&self, src: &Source, v: &Value, ptr: &str) -> Result<Report> {
        let doc = self.loader.quiver_doc(src, v, ptr)?;
        let arrows: Vec<(String, String, String)> =
            doc.arrows.iter().map(|a| (a.name.clone(), a.from.clone(), a.to.clone())).collect();
        let q = Quiver::new(&doc.vertices, &arrows).map_err(|e| src.malformed(ptr, e))?;
        let mut rel = std::collections::BTreeSet::new();
        for (i, (a, b)) in doc.relations.iter().enumerate() {
            let find = |n: &str| q.arrow_index(n).ok_or_else(|| src.malformed(format!("{ptr}/relations/{i}"), format!("unknown arrow `{n}`")));
            rel.insert((find(a)?, find(b)?));
        }
        let mut r = match validate_gentle(&q, &rel) {
            Ok(r) => r,
            Err(Error::NotFiniteDimensional(m)) => {
                let mut r = Report::new();
                r.push(Condition::FiniteDimension, m);
                r
            }
            Err(e) => return Err(e.into()),
        };
        if r.is_valid() {
            // maximal-path order and the poset need the full construction
            let built = self.loader.quiver_at(src, v, ptr).and_then(|a| a.algebra_poset().map_err(CliError::from));
            if let Err(e) = built {
                r.push(Condition::FiniteDimension, e.to_string());
            }
        }
        Ok(r)
    }

    fn shift(&self, path: &FsPath, n: i64) -> Result<Response> {
        let src = Source::read(path)?;
        let l = &self.loader;
        let v = match kind_of(&src.value) {
            Some("object") => obj(&l.object(&src)?.shift_by(n)?),
            Some("morphism") => mor(&l.morphism(&src)?.shift_by(n)?),
            Some("complex") => to_value(&format::complex_doc(&l.complex(&src)?.shift(n)?)),
            Some("chainmap") => to_value(&format::chain_map_doc(&l.chain_map(&src)?.shift(n)?)),
            _ => return Err(src.malformed("/kind", "expected object, morphism, complex or chainmap")),
        };
        Ok(Response::doc(&v))
    }

    fn cone(&self, path: &FsPath) -> Result<Value> {
        let t = self.morphism(path)?;
        let tri = cones::standard_triangle(&t)?;
        Ok(member_docs(
            "cone",
            vec![
                ("cone", obj(&tri.z)),
                ("inclusion", mor(&tri.v)),
                ("projection", mor(&tri.w)),
                ("triangle", format::triangle_value(&tri)),
            ],
        ))
    }

    fn equiv(&self, s: &FsPath, t: &FsPath, variant: Variant) -> Result<Response> {
        let (s, t) = (self.morphism(s)?, self.morphism(t)?);
        match find_witness(&s, &t, variant)? {
            Some(l) => Ok(Response::doc(&wit(&l))),
            None => Ok(self.decision("equivalent", Some(("variant", variant.to_string())), &format!("not equivalent ({variant})"))),
        }
    }

    fn iso(&self, path: &FsPath, out_dir: Option<&FsPath>) -> Result<Response> {
        let t = self.morphism(path)?;
        match is_iso_in_quotient(&t)? {
            Some(c) => bundle(iso_value(&c), out_dir),
            None => Ok(self.decision("iso", None, "not iso")),
        }
    }

    fn rotate(&self, path: &FsPath) -> Result<Value> {
        let t = self.morphism(path)?;
        let rot = cones::rotation_witnesses(&t)?;
        Ok(member_docs(
            "rotation",
            vec![
                ("r", mor(&rot.r)),
                ("s", mor(&rot.s)),
                ("l_comm", wit(&rot.l_comm)),
                ("l_inv", wit(&rot.l_inv)),
                ("rotated", format::triangle_value(&rot.rotated)),
                ("standard", format::triangle_value(&rot.standard)),
            ],
        ))
    }

    fn tr3(&self, [t, t2, f, g]: [&PathBuf; 4], witness: Option<&FsPath>, out_dir: Option<&FsPath>) -> Result<Response> {
        let (t, t2, f, g) = (self.morphism(t)?, self.morphism(t2)?, self.morphism(f)?, self.morphism(g)?);
        let l = match witness {
            Some(p) => self.loader.witness(&Source::read(p)?)?,
            None => match find_witness(&f.compose(&t2)?, &t.compose(&g)?, Variant::K)? {
                Some(l) => l,
                None => return Ok(self.decision("square-commutes", None, "the square does not commute up to K-equivalence")),
            },
        };
        let h = cones::tr3_fill(&t, &t2, &f, &g, &l)?;
        bundle(member_docs("fill-in", vec![("h", mor(&h)), ("witness", wit(&l))]), out_dir)
    }

    fn octahedron(&self, s: &FsPath, t: &FsPath) -> Result<Value> {
        let (s, t) = (self.morphism(s)?, self.morphism(t)?);
        let o = cones::octahedron(&s, &t)?;
        let cert = is_iso_in_quotient(&o.lambda)?.ok_or_else(|| CliError::Failed("Λ is not invertible in the quotient".into()))?;
        Ok(member_docs(
            "octahedron",
            vec![
                ("omega_s", obj(&o.omega_s)),
                ("omega_st", obj(&o.omega_st)),
                ("omega_t", obj(&o.omega_t)),
                ("omega_f", obj(&o.omega_f)),
                ("f", mor(&o.f)),
                ("g", mor(&o.g)),
                ("lambda", mor(&o.lambda)),
                ("l_rot", wit(&o.l_rot)),
                ("lambda_inverse", mor(&o.lambda_inverse)),
                ("l_comm", wit(&o.l_comm)),
                ("iso", iso_value(&cert)),
            ],
        ))
    }

    fn analyze(&self, path: &FsPath) -> Result<Response> {
        let alg = self.loader.quiver(&Source::read(path)?)?;
        let y = alg.algebra_poset()?;
        let p = y.poset();
        let paths: Vec<String> = alg.paths().iter().map(|w| alg.path_name(w)).collect();
        let maximal: Vec<String> = alg.maximal_paths().iter().map(|w| alg.path_name(w)).collect();
        if self.json {
            let elements: Vec<Value> = (0..p.len())
                .map(|b| {
                    let (m, l) = y.coords(b);
                    json!({
                        "name": p.name(b),
                        "maximal": maximal[m],
                        "length": l,
                        "target": alg.quiver().vertex_name(y.target(b)),
                    })
                })
                .collect();
            let v = json!({
                "format": FORMAT,
                "kind": "analysis",
                "paths": paths,
                "maximal": maximal,
                "poset": to_value(&format::poset_doc(p)),
                "elements": elements,
            });
            return Ok(Response::doc(&v));
        }
        Ok(Response::ok(analysis_table(&alg, p)))
    }

    fn functor_object(&self, path: &FsPath) -> Result<Response> {
        let p = self.loader.complex(&Source::read(path)?)?;
        require(&path.display().to_string(), p.validate())?;
        let f = Functor::new(p.algebra().clone())?;
        let image = f.object(&p)?;
        Ok(Response::doc(&to_value(&format::object_with_placement(&image.value, f.algebra(), &image.placement))))
    }

    fn functor_morphism(&self, path: &FsPath) -> Result<Response> {
        let phi = self.chain_map(path)?;
        let f = Functor::new(phi.source().algebra().clone())?;
        let image = f.morphism(&phi)?;
        Ok(Response::doc(&to_value(&format::morphism_with_placement(&image.value, f.algebra(), &image.placement))))
    }

    fn homotopy(&self, phi: &FsPath, psi: Option<&FsPath>) -> Result<Response> {
        let phi = self.chain_map(phi)?;
        let psi = match psi {
            Some(p) => self.chain_map(p)?,
            None => ChainMap::zero(phi.source(), phi.target())?,
        };
        match homotopy_witness(&phi, &psi)? {
            Some(s) => Ok(Response::doc(&to_value(&format::homotopy_doc(&s)))),
            None => Ok(self.decision("homotopic", None, "not homotopic")),
        }
    }

    fn verify(&self, seed: u64, trials: Option<usize>) -> Result<Response> {
        let field = match self.loader.field {
            Some(f) => f,
            None if std::env::var_os(format::FIELD_VAR).is_some() => format::resolve_field(None, None)?,
            None => Field::Prime(5),
        };
        let outcomes = verify::run_all(&Config { seed, field, trials });
        let failed = outcomes.iter().filter(|o| !o.passed()).count();
        let text = if self.json { render(&summary_value(seed, field, &outcomes)) } else { summary_text(&outcomes) };
        Ok(Response { text, code: if failed == 0 { exit::OK } else { exit::INVALID } })
    }
}

fn analysis_table(alg: &GentleAlgebra, p: &Arc<bondcat::poset::BasePoset>) -> String {
    let set = |xs: Vec<String>| format!("{{{}}}", xs.join(", "));
    let mut rows = vec![
        ("Pa", set(alg.paths().iter().map(|w| alg.path_name(w)).collect())),
        ("M", set(alg.maximal_paths().iter().map(|w| alg.path_name(w)).collect())),
        ("Poset", format!("{{{}}} × Z", p.names().join(" < "))),
    ];
    let pairs: Vec<String> = p.pairs().map(|(a, b)| format!("σ([{},j]) = [{},j]", p.name(a), p.name(b))).collect();
    if pairs.is_empty() {
        rows.push(("Involution", "identity".into()));
    }
    for (i, s) in pairs.into_iter().enumerate() {
        rows.push((if i == 0 { "Involution" } else { "" }, s));
    }
    rows.iter().map(|(k, v)| format!("{k:<12}{v}\n")).collect()
}

fn summary_value(seed: u64, field: Field, outcomes: &[Outcome]) -> Value {
    let criteria: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "criterion": o.criterion,
                "name": o.name,
                "trials": o.trials,
                "passed": o.passed(),
                "failures": o.failures,
                "note": o.note,
            })
        })
        .collect();
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    json!({
        "format": FORMAT,
        "kind": "summary",
        "seed": seed,
        "field": field.to_string(),
        "passed": failed == 0,
        "criteria": criteria,
    })
}

fn summary_text(outcomes: &[Outcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let note = if o.note.is_empty() { String::new() } else { format!(", {}", o.note) };
        s.push_str(&format!("criterion {:>2} {status}  {} ({} trials{note})\n", o.criterion, o.name, o.trials));
        for f in &o.failures {
            s.push_str(&format!("    {f}\n"));
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    s.push_str(&format!("{passed} of {} criteria passed\n", outcomes.len()));
    s
}
