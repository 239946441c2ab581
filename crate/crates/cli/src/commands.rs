//! The five commands. Each returns a [`Report`]; input problems are errors.

use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use modext_core::derivations::cohomology_summary;
use modext_core::extension::submultiplicativity_witness;
use modext_core::linalg::Echelon;
use modext_core::structure::{left_hom_space, DEFAULT_SEED};
use modext_core::{
    annihilator, blocks_of, center, check_block_conditions, corner_tau, derivation_space,
    find_surjective_left_hom, inner_space, inner_witness, is_derivation, is_idempotent,
    is_simple_prime, lift, quotient_derivation, radical, split_d1_d2, submultiplicativity_constant,
    transport, trivial_extension, Algebra, Bimodule, ConstructionResult, Error, Matrix,
};

use crate::format::{vector_value, AlgebraFile, FormatError, NamedMap, Space};
use crate::report::{
    check_line, check_value, fmt_combination, fmt_matrix, fmt_span, fmt_vec, fmt_violation,
    push_checks, subspace_value, violation_value, Report,
};

/// Problems with the input itself; exit status 2.
#[derive(Debug)]
pub enum InputError {
    Io(PathBuf, std::io::Error),
    Format(PathBuf, FormatError),
    Invalid(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            InputError::Format(p, e) => write!(f, "{}: {e}", p.display()),
            InputError::Invalid(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for InputError {}

type CmdResult = Result<Report, InputError>;

struct Loaded {
    file: AlgebraFile,
    digest: String,
}

fn load(path: &Path) -> Result<Loaded, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError::Io(path.to_path_buf(), e))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| {
        InputError::Format(
            path.to_path_buf(),
            FormatError {
                path: "$".into(),
                position: None,
                message: "file is not valid UTF-8".into(),
            },
        )
    })?;
    let file = AlgebraFile::parse(&text).map_err(|e| InputError::Format(path.to_path_buf(), e))?;
    let digest = format!("{:x}", Sha256::digest(&bytes));
    Ok(Loaded { file, digest })
}

/// Records an algebraic failure in the report, or converts it to an input error.
fn absorb(report: &mut Report, e: Error) -> Result<(), InputError> {
    match e {
        Error::Axiom(v) => {
            report.line(
                "axiom",
                format!("axiom violated: {}", fmt_violation(&v)),
                json!({ "witness": violation_value(&v) }),
            );
            report.fail(format!("axiom `{}`", v.identity));
            Ok(())
        }
        Error::Hypothesis {
            hypothesis,
            detail,
            witness,
        } => {
            let mut lines = vec![format!("hypothesis failed: {hypothesis}")];
            match &witness {
                Some(w) => lines.push(format!("witness: {}", fmt_violation(w))),
                None => lines.push(format!("detail: {detail}")),
            }
            report.push(
                "hypothesis",
                lines,
                json!({
                    "hypothesis": hypothesis,
                    "detail": detail,
                    "witness": witness.as_ref().map(violation_value),
                }),
            );
            report.fail(format!("hypothesis `{hypothesis}`"));
            Ok(())
        }
        Error::Shape(m) => Err(InputError::Invalid(format!("shape mismatch: {m}"))),
        Error::Internal(m) => Err(InputError::Invalid(format!("internal error: {m}"))),
    }
}

/// Validated algebra, or a report that already records why not.
fn algebra_or_report(file: &AlgebraFile, report: &mut Report) -> Result<Option<Algebra>, InputError> {
    match file.algebra() {
        Ok(a) => Ok(Some(a)),
        Err(e) => absorb(report, e).map(|_| None),
    }
}

fn bimodule_or_report(
    file: &AlgebraFile,
    a: &Algebra,
    report: &mut Report,
) -> Result<Option<Bimodule>, InputError> {
    match file.bimodule(a) {
        Ok(Some(u)) => Ok(Some(u)),
        Ok(None) => Err(InputError::Invalid("the file has no bimodule section".into())),
        Err(e) => absorb(report, e).map(|_| None),
    }
}

fn named_map<'a>(file: &'a AlgebraFile, name: &str, source: Space, target: Space) -> Result<&'a Matrix, InputError> {
    let m = file
        .map(name)
        .ok_or_else(|| InputError::Invalid(format!("no map named {name:?} in the file")))?;
    if m.source != source || m.target != target {
        return Err(InputError::Invalid(format!(
            "map {name:?} goes {} → {}, expected {source} → {target}",
            m.source, m.target
        )));
    }
    Ok(&m.matrix)
}

pub fn validate(path: &Path) -> CmdResult {
    let Loaded { file, digest } = load(path)?;
    let mut report = Report::new(format!("validate {}", path.display()), Some(digest));
    let a = file.algebra_unchecked();
    report.line(
        "algebra",
        format!("algebra: dim {}, basis {}", a.dim(), a.basis_names().join(", ")),
        json!({ "dim": a.dim(), "basis_names": a.basis_names() }),
    );
    let assoc = a.associativity_check();
    report.line("associativity", check_line(&assoc, false), check_value(&assoc));
    if !assoc.passed() {
        report.fail("associativity");
        return Ok(report);
    }
    let unit = a.unit_element();
    report.line(
        "unit",
        match &unit {
            Some(e) => format!("unit: {}", fmt_combination(a.basis_names(), e)),
            None => "unit: none".into(),
        },
        unit.as_ref().map_or(Value::Null, |e| vector_value(e)),
    );
    if let Some(u) = file.bimodule_unchecked() {
        report.line(
            "bimodule",
            format!("bimodule: dim {}, basis {}", u.dim(), u.basis_names().join(", ")),
            json!({ "dim": u.dim(), "basis_names": u.basis_names() }),
        );
        let axioms = u.axiom_report(&a).map_err(|e| InputError::Invalid(e.to_string()))?;
        push_checks(&mut report, "bimodule-axioms", &axioms, true);
        if let Some(c) = axioms.first_failure() {
            report.fail(format!("bimodule axiom `{}`", c.description));
            return Ok(report);
        }
        let unital = u.is_unital_over(&a).map_err(|e| InputError::Invalid(e.to_string()))?;
        report.line(
            "unit-action",
            format!(
                "unit acts as the identity on U: {}",
                match unital {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "no unit",
                }
            ),
            json!(unital),
        );
    }
    for m in &file.maps {
        report.line(
            "map",
            format!(
                "map {}: {} → {} ({}×{})",
                m.name,
                m.source,
                m.target,
                m.matrix.rows(),
                m.matrix.cols()
            ),
            json!({ "name": m.name, "source": m.source.as_str(), "target": m.target.as_str() }),
        );
    }
    for e in &file.elements {
        report.line(
            "element",
            format!("element {} = {}", e.name, fmt_combination(a.basis_names(), &e.vector)),
            json!({ "name": e.name, "vector": vector_value(&e.vector) }),
        );
    }
    for s in &file.subspaces {
        let sub = file.subspace_of(&s.name).expect("listed subspace exists");
        report.line(
            "subspace",
            format!("subspace {} = {}", s.name, fmt_span(a.basis_names(), &sub)),
            json!({ "name": s.name, "subspace": subspace_value(&sub) }),
        );
    }
    report.line("verdict", "valid".into(), json!(true));
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleChoice {
    /// `Der(A, A)`
    SelfModule,
    /// `Der(A, U)` for the file's bimodule
    File,
    /// `Der(T, T)` for `T = T(A, U)`
    Extension,
}

impl ModuleChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            ModuleChoice::SelfModule => "self",
            ModuleChoice::File => "file",
            ModuleChoice::Extension => "extension",
        }
    }
}

pub fn der(path: &Path, module: ModuleChoice, inner: bool, h1: bool) -> CmdResult {
    let Loaded { file, digest } = load(path)?;
    let mut cmd = format!("der {} --module {}", path.display(), module.as_str());
    if inner {
        cmd.push_str(" --inner");
    }
    if h1 {
        cmd.push_str(" --h1");
    }
    let mut report = Report::new(cmd, Some(digest));
    report.anchor("D(ab) = aD(b) + D(a)b");
    let Some(a) = algebra_or_report(&file, &mut report)? else {
        return Ok(report);
    };
    let (alg, u, label) = match module {
        ModuleChoice::SelfModule => (a.clone(), Bimodule::regular(&a), "Der(A, A)"),
        ModuleChoice::File => {
            let Some(u) = bimodule_or_report(&file, &a, &mut report)? else {
                return Ok(report);
            };
            (a, u, "Der(A, U)")
        }
        ModuleChoice::Extension => {
            let Some(u) = bimodule_or_report(&file, &a, &mut report)? else {
                return Ok(report);
            };
            let t = trivial_extension(&a, &u).map_err(|e| InputError::Invalid(e.to_string()))?;
            let total = t.total().clone();
            let reg = Bimodule::regular(&total);
            (total, reg, "Der(T, T)")
        }
    };
    let internal = |e: Error| InputError::Invalid(e.to_string());
    let space = derivation_space(&alg, &u).map_err(internal)?;
    let basis = space.basis();
    let mut lines = vec![format!("{label} basis ({} maps, columns are images of basis elements):", basis.len())];
    for (i, d) in basis.iter().enumerate() {
        lines.push(format!("  D{} = {}", i + 1, fmt_matrix(d)));
    }
    report.push(
        "derivations",
        lines,
        Value::Array(basis.iter().map(crate::format::matrix_value).collect()),
    );
    let (m, n) = (alg.dim(), u.dim());
    let inn = inner_space(&alg, &u).map_err(internal)?;
    let inner_maps: Vec<Matrix> = inn
        .basis()
        .iter()
        .map(|v| Matrix::from_row_major(n, m, v.clone()).expect("flattened n×m"))
        .collect();
    if inner {
        let mut lines = vec![format!(
            "inner derivations a ↦ a·x − x·a, basis ({} maps):",
            inner_maps.len()
        )];
        for (i, d) in inner_maps.iter().enumerate() {
            lines.push(format!("  I{} = {}", i + 1, fmt_matrix(d)));
        }
        report.push(
            "inner",
            lines,
            Value::Array(inner_maps.iter().map(crate::format::matrix_value).collect()),
        );
    }
    if h1 {
        // derivation basis elements independent modulo the inner ones
        let mut ech = Echelon::new(n * m);
        for v in inn.basis() {
            ech.insert(v.clone());
        }
        let reps: Vec<&Matrix> = basis
            .iter()
            .filter(|d| ech.insert(d.as_row_major().to_vec()))
            .collect();
        let mut lines = vec![format!("H1 representatives ({}):", reps.len())];
        for (i, d) in reps.iter().enumerate() {
            lines.push(format!("  H{} = {}", i + 1, fmt_matrix(d)));
        }
        report.push(
            "h1",
            lines,
            Value::Array(reps.iter().map(|d| crate::format::matrix_value(d)).collect()),
        );
    }
    let s = cohomology_summary(&alg, &u).map_err(internal)?;
    report.line(
        "dimensions",
        format!("dim Der = {}, dim Inn = {}, H1 = {}", s.der_dim, s.inner_dim, s.h1_dim),
        json!({ "der": s.der_dim, "inner": s.inner_dim, "h1": s.h1_dim }),
    );
    Ok(report)
}

pub fn decompose(path: &Path, map: &str) -> CmdResult {
    let Loaded { file, digest } = load(path)?;
    let mut report = Report::new(format!("decompose {} --map {map}", path.display()), Some(digest));
    report.anchor("D = D₁ + D₂");
    report.anchor("D is inner iff D = ad(b, v)");
    let Some(a) = algebra_or_report(&file, &mut report)? else {
        return Ok(report);
    };
    let Some(u) = bimodule_or_report(&file, &a, &mut report)? else {
        return Ok(report);
    };
    let d = named_map(&file, map, Space::T, Space::T)?;
    let internal = |e: Error| InputError::Invalid(e.to_string());
    let t = trivial_extension(&a, &u).map_err(internal)?;
    let b = blocks_of(&t, d).map_err(internal)?;
    report.push(
        "blocks",
        vec![
            format!("δ₁ (A → A) = {}", fmt_matrix(&b.delta1)),
            format!("τ₁ (U → A) = {}", fmt_matrix(&b.tau1)),
            format!("δ₂ (A → U) = {}", fmt_matrix(&b.delta2)),
            format!("τ₂ (U → U) = {}", fmt_matrix(&b.tau2)),
        ],
        json!({
            "delta1": crate::format::matrix_value(&b.delta1),
            "tau1": crate::format::matrix_value(&b.tau1),
            "delta2": crate::format::matrix_value(&b.delta2),
            "tau2": crate::format::matrix_value(&b.tau2),
        }),
    );
    let conditions = check_block_conditions(&t, &b).map_err(internal)?;
    push_checks(&mut report, "conditions", &conditions, true);
    report.line(
        "coupling",
        "note: C3 and C4 pair τ₂ with δ₁, as forced by (a,u)(b,v) = (ab, av+ub); the δ₂ variants are informational".into(),
        json!("C3/C4 use δ₁"),
    );
    let leibniz = is_derivation(t.total(), &Bimodule::regular(t.total()), d).map_err(internal)?;
    let is_der = leibniz.passed();
    report.line(
        "derivation",
        format!(
            "derivation on T(A,U): {} (Leibniz on all {} basis pairs)",
            if is_der { "yes" } else { "no" },
            leibniz.checks.iter().map(|c| c.checked).sum::<usize>()
        ),
        json!(is_der),
    );
    if is_der != conditions.passed() {
        return Err(InputError::Invalid(
            "internal error: block conditions disagree with the Leibniz rule".into(),
        ));
    }
    if !is_der {
        report.fail("not a derivation");
        return Ok(report);
    }
    let (d1, d2) = split_d1_d2(&t, d).map_err(internal)?;
    report.push(
        "split",
        vec![
            format!("D₁(a,u) = (δ₁(a) + τ₁(u), τ₂(u)): {}", fmt_matrix(&d1)),
            format!("D₂(a,u) = (0, δ₂(a)): {}", fmt_matrix(&d2)),
        ],
        json!({
            "d1": crate::format::matrix_value(&d1),
            "d2": crate::format::matrix_value(&d2),
        }),
    );
    match inner_witness(&t, d).map_err(internal)? {
        Some(w) => report.line(
            "inner",
            format!(
                "inner: D(y) = y·(b,v) − (b,v)·y with b = {}, v = {}",
                fmt_vec(&w.b),
                fmt_vec(&w.v)
            ),
            json!({ "inner": true, "b": vector_value(&w.b), "v": vector_value(&w.v) }),
        ),
        None => report.line("inner", "not inner".into(), json!({ "inner": false })),
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecipeChoice {
    Lift,
    Transport,
    Quotient,
    Corner,
}

impl RecipeChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            RecipeChoice::Lift => "lift",
            RecipeChoice::Transport => "transport",
            RecipeChoice::Quotient => "quotient",
            RecipeChoice::Corner => "corner",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConstructArgs {
    pub recipe: RecipeChoice,
    pub path: PathBuf,
    pub delta: String,
    pub phi: String,
    pub psi: String,
    pub ideal: String,
    pub idempotent: String,
    pub output: Option<PathBuf>,
}

pub fn construct(args: &ConstructArgs) -> CmdResult {
    let Loaded { file, digest } = load(&args.path)?;
    let mut cmd = format!(
        "construct {} {} --delta {}",
        args.recipe.as_str(),
        args.path.display(),
        args.delta
    );
    match args.recipe {
        RecipeChoice::Transport => cmd.push_str(&format!(" --phi {} --psi {}", args.phi, args.psi)),
        RecipeChoice::Quotient => cmd.push_str(&format!(" --ideal {}", args.ideal)),
        RecipeChoice::Corner => cmd.push_str(&format!(" --idempotent {}", args.idempotent)),
        RecipeChoice::Lift => {}
    }
    if let Some(o) = &args.output {
        cmd.push_str(&format!(" --output {}", o.display()));
    }
    let mut report = Report::new(cmd, Some(digest));
    report.anchor(match args.recipe {
        RecipeChoice::Lift => "D((a,u)) = (0, δ(a))",
        RecipeChoice::Transport => "τ = φ ∘ δ ∘ ψ",
        RecipeChoice::Quotient => "τ(a + I) = δ(a) + I",
        RecipeChoice::Corner => "τ(ap) = δ(ap)p",
    });
    let Some(a) = algebra_or_report(&file, &mut report)? else {
        return Ok(report);
    };
    let outcome: modext_core::Result<ConstructionResult> = match args.recipe {
        RecipeChoice::Lift => {
            let Some(u) = bimodule_or_report(&file, &a, &mut report)? else {
                return Ok(report);
            };
            let delta = named_map(&file, &args.delta, Space::A, Space::U)?;
            trivial_extension(&a, &u).and_then(|t| lift(&t, delta))
        }
        RecipeChoice::Transport => {
            let Some(u) = bimodule_or_report(&file, &a, &mut report)? else {
                return Ok(report);
            };
            let delta = named_map(&file, &args.delta, Space::A, Space::A)?;
            let phi = named_map(&file, &args.phi, Space::A, Space::U)?;
            let psi = named_map(&file, &args.psi, Space::U, Space::A)?;
            trivial_extension(&a, &u).and_then(|t| transport(&t, delta, phi, psi))
        }
        RecipeChoice::Quotient => {
            let delta = named_map(&file, &args.delta, Space::A, Space::A)?;
            let ideal = file.subspace_of(&args.ideal).ok_or_else(|| {
                InputError::Invalid(format!("no subspace named {:?} in the file", args.ideal))
            })?;
            report.line(
                "ideal",
                format!("I = {}", fmt_span(a.basis_names(), &ideal)),
                subspace_value(&ideal),
            );
            quotient_derivation(&a, &ideal, delta).map(|(r, _)| r)
        }
        RecipeChoice::Corner => {
            let delta = named_map(&file, &args.delta, Space::A, Space::A)?;
            let p = file.element(&args.idempotent).ok_or_else(|| {
                InputError::Invalid(format!("no element named {:?} in the file", args.idempotent))
            })?;
            report.line(
                "idempotent",
                format!("p = {}", fmt_combination(a.basis_names(), &p.vector)),
                vector_value(&p.vector),
            );
            corner_tau(&a, &p.vector, delta).map(|(r, _)| r)
        }
    };
    let result = match outcome {
        Ok(r) => r,
        Err(e) => {
            absorb(&mut report, e)?;
            return Ok(report);
        }
    };
    let t = &result.extension;
    report.line(
        "extension",
        format!(
            "T(A,U): dim {} = {} + {}, U basis {}",
            t.dim(),
            t.base_dim(),
            t.module_dim(),
            t.module().basis_names().join(", ")
        ),
        json!({ "dim": t.dim(), "base_dim": t.base_dim(), "module_dim": t.module_dim() }),
    );
    report.line(
        "derivation",
        format!("D = {}", fmt_matrix(&result.derivation)),
        crate::format::matrix_value(&result.derivation),
    );
    push_checks(&mut report, "verification", &result.verification, true);
    let out = AlgebraFile::from_parts(
        t.base(),
        Some(t.module()),
        vec![NamedMap {
            name: "D".into(),
            source: Space::T,
            target: Space::T,
            matrix: result.derivation.clone(),
        }],
    );
    let text = out.to_canonical_string();
    match &args.output {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| InputError::Io(p.clone(), e))?;
            report.line(
                "output",
                format!("wrote {} (map \"D\" on T)", p.display()),
                json!({ "path": p.display().to_string() }),
            );
        }
        None => report.push(
            "output",
            std::iter::once("output file:".to_string())
                .chain(text.lines().map(|l| format!("  {l}")))
                .collect(),
            out.to_value(),
        ),
    }
    Ok(report)
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeArgs {
    pub radical: bool,
    pub center: bool,
    pub unit: bool,
    pub simple: bool,
    pub annihilator: bool,
    pub idempotent: Option<String>,
    pub submult: bool,
    pub surjective: bool,
    pub seed: Option<u64>,
}

impl AnalyzeArgs {
    fn nothing_requested(&self) -> bool {
        !(self.radical
            || self.center
            || self.unit
            || self.simple
            || self.annihilator
            || self.idempotent.is_some()
            || self.submult
            || self.surjective)
    }
}

pub fn analyze(path: &Path, args: &AnalyzeArgs) -> CmdResult {
    let Loaded { file, digest } = load(path)?;
    let mut req = args.clone();
    if req.nothing_requested() {
        req.radical = true;
        req.center = true;
        req.unit = true;
        req.simple = true;
        req.submult = true;
        req.annihilator = file.bimodule.is_some();
        req.surjective = file.bimodule.is_some();
    }
    let seed = req.seed.unwrap_or(DEFAULT_SEED);
    let mut cmd = format!("analyze {}", path.display());
    for (on, flag) in [
        (req.radical, "--radical"),
        (req.center, "--center"),
        (req.unit, "--unit"),
        (req.simple, "--simple"),
        (req.annihilator, "--annihilator"),
        (req.submult, "--submult"),
        (req.surjective, "--surjective"),
    ] {
        if on {
            cmd.push(' ');
            cmd.push_str(flag);
        }
    }
    if let Some(p) = &req.idempotent {
        cmd.push_str(&format!(" --idempotent {p}"));
    }
    if req.simple {
        cmd.push_str(&format!(" --seed {seed}"));
    }
    let mut report = Report::new(cmd, Some(digest));
    let Some(a) = algebra_or_report(&file, &mut report)? else {
        return Ok(report);
    };
    let names = a.basis_names().to_vec();
    let needs_module = req.annihilator || req.surjective;
    let u = if needs_module {
        match bimodule_or_report(&file, &a, &mut report)? {
            Some(u) => Some(u),
            None => return Ok(report),
        }
    } else {
        None
    };
    let internal = |e: Error| InputError::Invalid(e.to_string());

    if req.radical {
        report.anchor("semisimple");
        let r = radical(&a);
        report.push(
            "radical",
            vec![
                format!(
                    "radical = {}, semisimple: {}",
                    fmt_span(&names, &r.radical),
                    if r.is_semisimple { "yes" } else { "no" }
                ),
                format!(
                    "  method: {}; nilpotency index {}",
                    r.method,
                    r.nilpotency_index.map_or("not reached".into(), |k| k.to_string())
                ),
            ],
            json!({
                "radical": subspace_value(&r.radical),
                "semisimple": r.is_semisimple,
                "nilpotency_index": r.nilpotency_index,
                "method": r.method,
            }),
        );
    }
    if req.center {
        let z = center(&a);
        report.line(
            "center",
            format!("center = {} (dim {})", fmt_span(&names, &z), z.dim()),
            subspace_value(&z),
        );
    }
    if req.unit {
        let e = a.unit_element();
        report.line(
            "unit",
            match &e {
                Some(e) => format!("unit = {}", fmt_combination(&names, e)),
                None => "unit: none".into(),
            },
            e.as_ref().map_or(Value::Null, |e| vector_value(e)),
        );
    }
    if req.simple {
        report.anchor("prime algebra with a non-trivial idempotent");
        let s = is_simple_prime(&a, seed);
        let mut lines = vec![format!("simple: {}, prime: {}", s.simple, s.prime)];
        lines.push(format!("  reason: {}", s.reason));
        lines.push(format!(
            "  radical dim {}, center dim {}, attempts {}",
            s.radical_dim, s.center_dim, s.attempts
        ));
        if let (Some(x), Some(mp), Some(f)) = (&s.central_element, &s.min_poly, &s.factorization) {
            lines.push(format!("  central element: {}", fmt_combination(&names, x)));
            lines.push(format!("  minimal polynomial: {mp}"));
            lines.push(format!("  factorization: {f}"));
        }
        lines.push("  note: prime and simple coincide for finite-dimensional algebras".into());
        report.push(
            "simple",
            lines,
            json!({
                "simple": s.simple.to_string(),
                "prime": s.prime.to_string(),
                "radical_dim": s.radical_dim,
                "center_dim": s.center_dim,
                "attempts": s.attempts,
                "seed": seed,
                "central_element": s.central_element.as_ref().map(|x| vector_value(x)),
                "min_poly": s.min_poly.as_ref().map(|p| p.to_string()),
                "factorization": s.factorization.as_ref().map(|f| f.to_string()),
                "reason": s.reason,
            }),
        );
    }
    if let (true, Some(u)) = (req.annihilator, &u) {
        report.anchor("ann_A U = (0)");
        let ann = annihilator(&a, u).map_err(internal)?;
        report.line(
            "annihilator",
            format!("ann_A U = {} (dim {})", fmt_span(&names, &ann), ann.dim()),
            subspace_value(&ann),
        );
    }
    if let Some(name) = &req.idempotent {
        let p = file
            .element(name)
            .ok_or_else(|| InputError::Invalid(format!("no element named {name:?} in the file")))?;
        let st = is_idempotent(&a, &p.vector).map_err(internal)?;
        report.line(
            "idempotent",
            format!(
                "{name} = {}: idempotent: {}, non-trivial: {}",
                fmt_combination(&names, &p.vector),
                if st.idempotent { "yes" } else { "no" },
                if st.nontrivial { "yes" } else { "no" }
            ),
            json!({ "idempotent": st.idempotent, "nontrivial": st.nontrivial }),
        );
    }
    if req.submult {
        let c = submultiplicativity_constant(&a);
        let at = submultiplicativity_witness(&a);
        report.line(
            "submult",
            format!(
                "ℓ¹ constant C = {c}{}",
                at.map_or(String::new(), |(i, j)| format!(", attained at ({}, {})", names[i], names[j]))
            ),
            json!({ "constant": c.to_string(), "attained_at": at.map(|(i, j)| [i, j]) }),
        );
    }
    if let (true, Some(u)) = (req.surjective, &u) {
        report.anchor("surjective left A-module homomorphism");
        let space = left_hom_space(&a, u).map_err(internal)?;
        let found = find_surjective_left_hom(&a, u).map_err(internal)?;
        let mut lines = vec![format!("left A-module maps A → U: dim {}", space.dim())];
        match &found {
            Some(phi) => lines.push(format!("surjective left A-module map: found φ = {}", fmt_matrix(phi))),
            None => lines.push(
                "surjective left A-module map: not found on the deterministic search schedule".into(),
            ),
        }
        report.push(
            "surjective",
            lines,
            json!({
                "hom_space_dim": space.dim(),
                "found": found.as_ref().map(crate::format::matrix_value),
            }),
        );
    }
    Ok(report)
}
