//! Command dispatch: load the input documents, run one operation and
//! collect the answer into a [`ResultDocument`].

use crate::input::{self, Document, InputError, MdsInput};
use crate::output::{element, elements, face, faces, int, ints, vectors, ResultDocument, Timing};
use bpfkit::abelian::GroupElement;
use bpfkit::fujita::fujita_bpf;
use bpfkit::monoid::{CapMode, EmbeddedMonoid};
use clap::ValueEnum;
use serde_json::{json, Value};
use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Membership of --element in the monoid.
    InMonoid,
    /// Intersection of two monoids in the same group.
    Intersect,
    /// Module generators of the saturation over the monoid.
    ModuleGens,
    /// Membership of --element in the saturation.
    InSaturation,
    /// Membership of --element in the conductor ideal.
    InConductor,
    /// A point of the conductor ideal.
    ConductorPoint,
    /// Whether the monoid generates its group.
    IsSpanning,
    /// F-faces of the total coordinate space.
    Ffaces,
    /// Relevant faces.
    Rlv,
    /// Covering collection.
    Cov,
    /// Picard group inside the class group.
    Pic,
    /// Generators of the base point free monoid.
    BpfGens,
    /// Whether --element is base point free.
    IsBpf,
    /// Relevant faces in the base locus of --element.
    BaseLocus,
    /// Whether --element lies in the semiample cone.
    SemiampleContains,
    /// Canonical class.
    CanonicalClass,
    /// Whether the canonical class is Cartier.
    Gorenstein,
    /// Moving cone.
    MovingCone,
    /// Whether the ample chamber is full dimensional.
    QfactorialCheck,
    /// Dimension of the variety.
    Dimension,
    /// Fujita base point freeness test.
    Fujita,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_owned()
    }

    fn inputs(self) -> (&'static str, usize) {
        use Command::*;
        match self {
            Intersect => ("monoid", 2),
            InMonoid | ModuleGens | InSaturation | InConductor | ConductorPoint | IsSpanning => ("monoid", 1),
            _ => ("mds", 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub command: Command,
    pub files: Vec<PathBuf>,
    pub element: Option<String>,
    pub kx: Option<String>,
    pub witness: bool,
    pub cap_mode: CapMode,
    pub timing: bool,
}

impl Options {
    pub fn new(command: Command, files: Vec<PathBuf>) -> Self {
        Options { command, files, element: None, kx: None, witness: false, cap_mode: CapMode::Lcm, timing: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Input(InputError),
    Computation(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Computation(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<bpfkit::Error> for CliError {
    fn from(e: bpfkit::Error) -> Self {
        CliError::Computation(e.to_string())
    }
}

pub fn run(opts: &Options) -> Result<ResultDocument, CliError> {
    let start = Instant::now();
    let (kind, count) = opts.command.inputs();
    if opts.files.len() != count {
        return Err(CliError::Usage(format!(
            "{} takes {count} {kind} file{}, got {}",
            opts.command.name(),
            if count == 1 { "" } else { "s" },
            opts.files.len()
        )));
    }
    let mut docs = Vec::new();
    for path in &opts.files {
        let doc = input::load(path, opts.cap_mode)?;
        if doc.kind() != kind {
            return Err(CliError::Input(InputError {
                file: path.display().to_string(),
                line: None,
                field: Some("kind".into()),
                message: format!("{} needs a {kind} document, found {}", opts.command.name(), doc.kind()),
            }));
        }
        docs.push(doc);
    }
    let files = opts.files.iter().map(|p| p.display().to_string()).collect();
    let mut out = ResultDocument::new(&opts.command.name(), files);
    match docs.as_slice() {
        [Document::Monoid(a), Document::Monoid(b)] => intersect(opts, a, b, &mut out)?,
        [Document::Monoid(s)] => monoid_command(opts, s, &mut out)?,
        [Document::Mds(x)] => mds_command(opts, x, &mut out)?,
        _ => unreachable!("document kinds are checked above"),
    }
    if opts.timing {
        out.timing = Some(Timing { elapsed_micros: start.elapsed().as_micros() as u64 });
    }
    Ok(out)
}

fn element_arg(opts: &Options, s: &EmbeddedMonoid) -> Result<GroupElement, CliError> {
    parse_arg(opts.element.as_deref(), "--element", opts, s.group())
}

fn parse_arg(
    arg: Option<&str>,
    flag: &str,
    opts: &Options,
    group: &std::sync::Arc<bpfkit::abelian::AbelianGroup>,
) -> Result<GroupElement, CliError> {
    let arg = arg.ok_or_else(|| CliError::Usage(format!("{} needs {flag}", opts.command.name())))?;
    input::parse_element(group, arg).map_err(|m| CliError::Usage(format!("{flag} {arg:?}: {m}")))
}

fn intersect(opts: &Options, a: &EmbeddedMonoid, b: &EmbeddedMonoid, out: &mut ResultDocument) -> Result<(), CliError> {
    if a.group() != b.group() {
        return Err(CliError::Usage("the two monoids live in different groups".into()));
    }
    let r = a.intersect_with_details(b)?;
    out.value("generators", elements(r.monoid.generators()));
    if opts.witness {
        out.witness = Some(json!({ "kernelBasis": vectors(&r.kernel_basis), "raw": elements(&r.raw) }));
    }
    Ok(())
}

fn monoid_command(opts: &Options, s: &EmbeddedMonoid, out: &mut ResultDocument) -> Result<(), CliError> {
    use Command::*;
    match opts.command {
        InMonoid => {
            let w = element_arg(opts, s)?;
            let c = s.witness(&w)?;
            out.verdict = Some(c.is_some());
            if opts.witness {
                out.witness = c.map(|c| ints(&c));
            }
        }
        ModuleGens => {
            let m = s.module_generators();
            out.value("elements", elements(&m.elements));
            out.value("spanningElements", elements(&m.spanning_elements));
        }
        InSaturation => out.verdict = Some(s.in_saturation(&element_arg(opts, s)?)?),
        InConductor => out.verdict = Some(s.in_conductor_ideal(&element_arg(opts, s)?)?),
        ConductorPoint => {
            let c = s.conductor_point()?;
            out.value("point", element(&c.point));
            out.value("interiorPoint", element(&c.interior_point));
            out.value("multiplier", int(&c.multiplier));
        }
        IsSpanning => out.verdict = Some(s.is_spanning()),
        other => unreachable!("{other:?} is not a monoid command"),
    }
    Ok(())
}

fn mds_command(opts: &Options, input: &MdsInput, out: &mut ResultDocument) -> Result<(), CliError> {
    use Command::*;
    let x = &input.space;
    let group = x.class_group();
    let element_flag = || parse_arg(opts.element.as_deref(), "--element", opts, group);
    let kx = || match (&opts.kx, &input.canonical_class) {
        (Some(s), _) => parse_arg(Some(s), "--kx", opts, group),
        (None, Some(k)) => Ok(k.clone()),
        (None, None) => Ok(x.canonical_class()),
    };
    out.warnings = x.warnings();
    match opts.command {
        Ffaces => {
            let f = x.f_faces()?;
            out.value("count", json!(f.len()));
            out.value("faces", faces(f));
        }
        Rlv => {
            let f = x.relevant_faces()?;
            out.value("count", json!(f.len()));
            out.value("faces", faces(f));
        }
        Cov => {
            let f = x.covering_collection()?;
            out.value("count", json!(f.len()));
            out.value("faces", faces(&f));
        }
        Pic => {
            let coords = x.picard_coordinates()?;
            out.value("rank", json!(coords.group.rank()));
            out.value("torsion", ints(coords.group.torsion_orders()));
            out.value("generators", elements(&coords.basis));
            out.value("isWhole", json!(x.picard_group()?.is_whole()));
        }
        BpfGens => {
            let m = x.bpf_generators()?;
            let coords = x.picard_coordinates()?;
            let classes: Vec<GroupElement> = m.generators().iter().map(|g| coords.to_ambient(g)).collect();
            out.value("generators", elements(m.generators()));
            out.value("classes", elements(&classes));
            out.value("spanning", json!(m.is_spanning()));
        }
        IsBpf => {
            let v = x.base_point_free_verdict(&element_flag()?)?;
            out.verdict = Some(v.holds());
            if opts.witness {
                out.witness =
                    Some(json!({ "inPicard": v.in_picard, "failingFace": v.failing_face.map_or(Value::Null, face) }));
            }
        }
        BaseLocus => {
            let f = x.base_locus_faces(&element_flag()?)?;
            out.value("faces", faces(&f));
        }
        SemiampleContains => out.verdict = Some(x.semiample_contains(&element_flag()?)?),
        CanonicalClass => {
            let k = x.canonical_class();
            if let Some(given) = &input.canonical_class {
                if given != &k {
                    out.warnings.push(format!("file records canonical class {given}, computed {k}"));
                }
            }
            out.value("canonicalClass", element(&k));
        }
        Gorenstein => {
            let k = kx()?;
            out.verdict = Some(x.is_gorenstein(&k)?);
            out.value("kx", element(&k));
        }
        MovingCone => {
            let c = x.moving_cone();
            out.value("rays", vectors(c.rays()));
            out.value("lineality", vectors(c.lineality()));
            out.value("facetNormals", vectors(c.facet_normals()));
            out.value("equations", vectors(c.equations()));
        }
        QfactorialCheck => out.verdict = Some(x.q_factoriality_check()?),
        Dimension => {
            out.value("dimension", json!(x.dimension()));
        }
        Fujita => {
            let k = kx()?;
            let r = fujita_bpf(x, &k)?;
            out.verdict = Some(r.verdict);
            out.value("kx", element(&k));
            if let Some(reason) = &r.reason {
                out.value("reason", json!(reason));
            }
            if let Some(st) = &r.setting {
                out.value("conductor", element(&st.conductor));
                out.value("alphas", ints(&st.alphas));
                out.value("nu", int(&st.nu));
                out.value("dimension", json!(st.dimension));
                let normals: Vec<_> = st.facets.iter().map(|f| f.normal.clone()).collect();
                out.value("facetNormals", vectors(&normals));
            }
            let trace: Vec<Value> = r
                .trace
                .iter()
                .map(|c| json!({ "facet": c.facet, "m": c.m, "k": c.k, "candidates": c.candidates, "failures": c.failures }))
                .collect();
            out.value("trace", Value::Array(trace));
            if opts.witness {
                out.witness = r.witness.as_ref().map(|w| {
                    json!({
                        "facet": w.facet,
                        "m": w.m,
                        "k": w.k,
                        "class": element(&w.class),
                        "value": element(&w.value),
                        "inCone": w.in_cone,
                    })
                });
            }
        }
        other => unreachable!("{other:?} is not an mds command"),
    }
    Ok(())
}
