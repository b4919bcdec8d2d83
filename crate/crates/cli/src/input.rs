//! Input documents: JSON files describing a group, a monoid or a Mori
//! dream space.

use bpfkit::abelian::{AbelianGroup, GroupElement};
use bpfkit::mds::{Face, Monomial, MoriDreamSpace, Relation};
use bpfkit::monoid::{CapMode, EmbeddedMonoid};
use bpfkit::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, DeserializeOwned, DeserializeSeed, Deserializer, IgnoredAny, MapAccess, SeqAccess, Visitor};
use serde::Deserialize;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

/// A problem with an input document, located by file, line and field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub file: String,
    pub line: Option<usize>,
    /// Dotted field path such as `degrees.free[1]`.
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if let Some(field) = &self.field {
            write!(f, ": field `{field}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seg {
    Key(&'static str),
    Index(usize),
}

fn path_string(path: &[Seg]) -> String {
    let mut s = String::new();
    for seg in path {
        match seg {
            Seg::Key(k) if s.is_empty() => s.push_str(k),
            Seg::Key(k) => {
                s.push('.');
                s.push_str(k);
            }
            Seg::Index(i) => s.push_str(&format!("[{i}]")),
        }
    }
    s
}

/// Integer given as a JSON number or as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a string of decimal digits")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim().parse().map(Int).map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }
        d.deserialize_any(V)
    }
}

/// Rational coefficient: a JSON integer or a string such as `"-3/2"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Default for Rational {
    fn default() -> Self {
        Rational(BigRational::one())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                let bad = || E::invalid_value(de::Unexpected::Str(v), &self);
                let (p, q) = v.split_once('/').unwrap_or((v, "1"));
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(p, q)))
            }
        }
        d.deserialize_any(V)
    }
}

/// Group element: either the `"free;torsion"` text form or an array of
/// free coordinates followed by torsion coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vector {
    Text(String),
    Coords(Vec<Int>),
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vector;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of integers or a string like \"3;1\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Vector, E> {
                Ok(Vector::Text(v.to_owned()))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vector, A::Error> {
                let mut out = Vec::new();
                while let Some(x) = seq.next_element::<Int>()? {
                    out.push(x);
                }
                Ok(Vector::Coords(out))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    rank: usize,
    #[serde(default)]
    torsion: Vec<Int>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    #[serde(rename = "kind")]
    _kind: IgnoredAny,
    rank: usize,
    #[serde(default)]
    torsion: Vec<Int>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidDoc {
    #[serde(rename = "kind")]
    _kind: IgnoredAny,
    group: GroupSpec,
    generators: Vec<Vector>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TorsionRow {
    modulus: Int,
    row: Vec<Int>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Degrees {
    #[serde(default)]
    free: Vec<Vec<Int>>,
    #[serde(default)]
    torsion: Vec<TorsionRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialDoc {
    #[serde(default)]
    coefficient: Rational,
    exponents: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct MdsDoc {
    #[serde(rename = "kind")]
    _kind: IgnoredAny,
    num_vars: usize,
    degrees: Degrees,
    #[serde(default)]
    relations: Vec<Vec<MonomialDoc>>,
    ample_class: Vector,
    #[serde(default)]
    f_faces: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    canonical_class: Option<Vector>,
}

#[derive(Deserialize)]
struct Header {
    kind: String,
}

pub struct MdsInput {
    pub space: MoriDreamSpace,
    /// Canonical class recorded in the file, if any.
    pub canonical_class: Option<GroupElement>,
}

pub enum Document {
    Group(Arc<AbelianGroup>),
    Monoid(Box<EmbeddedMonoid>),
    Mds(Box<MdsInput>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Monoid(_) => "monoid",
            Document::Mds(_) => "mds",
        }
    }
}

pub fn load(path: &Path, cap_mode: CapMode) -> Result<Document, InputError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError {
        file: file.clone(),
        line: None,
        field: None,
        message: format!("cannot read file: {e}"),
    })?;
    parse_document(&file, &text, cap_mode)
}

/// Parses and validates a document. `file` is only used in error messages.
pub fn parse_document(file: &str, text: &str, cap_mode: CapMode) -> Result<Document, InputError> {
    let ctx = Ctx { file, text };
    let header: Header = ctx.typed()?;
    match header.kind.as_str() {
        "group" => {
            let doc: GroupDoc = ctx.typed()?;
            Ok(Document::Group(ctx.group(doc.rank, &doc.torsion, &[])?))
        }
        "monoid" => ctx.monoid(ctx.typed()?, cap_mode).map(|m| Document::Monoid(Box::new(m))),
        "mds" => ctx.mds(ctx.typed()?, cap_mode).map(|m| Document::Mds(Box::new(m))),
        other => Err(ctx.error(
            &[Seg::Key("kind")],
            format!("unknown kind {other:?}, expected \"group\", \"monoid\" or \"mds\""),
        )),
    }
}

/// Parses an element given on the command line or in a file.
pub fn parse_element(group: &Arc<AbelianGroup>, s: &str) -> Result<GroupElement, String> {
    let (f, t) = match s.split_once(';') {
        Some((f, t)) => (f, Some(t)),
        None => (s, None),
    };
    let list = |x: &str| -> Result<Vec<BigInt>, String> {
        let x = x.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if x.is_empty() {
            return Ok(Vec::new());
        }
        x.split(',').map(|p| p.trim().parse::<BigInt>().map_err(|_| format!("bad integer {:?}", p.trim()))).collect()
    };
    let free = list(f)?;
    let torsion = match t {
        Some(t) => list(t)?,
        None => vec![BigInt::zero(); group.torsion_orders().len()],
    };
    element(group, free, torsion)
}

fn element(group: &Arc<AbelianGroup>, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement, String> {
    if free.len() != group.rank() {
        return Err(format!("expected {} free coordinates, found {}", group.rank(), free.len()));
    }
    if torsion.len() != group.torsion_orders().len() {
        return Err(format!("expected {} torsion coordinates, found {}", group.torsion_orders().len(), torsion.len()));
    }
    for (x, a) in torsion.iter().zip(group.torsion_orders()) {
        if x.is_negative() || x >= a {
            return Err(format!("torsion coordinate {x} is outside 0..{a}"));
        }
    }
    GroupElement::new(group, free, torsion).map_err(|e| e.to_string())
}

struct Ctx<'a> {
    file: &'a str,
    text: &'a str,
}

impl Ctx<'_> {
    fn typed<T: DeserializeOwned>(&self) -> Result<T, InputError> {
        let mut de = serde_json::Deserializer::from_str(self.text);
        let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let field = e.path().to_string();
            self.json_error((field != ".").then_some(field), e.into_inner())
        })?;
        de.end().map_err(|e| self.json_error(None, e))?;
        Ok(value)
    }

    fn json_error(&self, field: Option<String>, e: serde_json::Error) -> InputError {
        let text = e.to_string();
        let message = match text.rfind(" at line ") {
            Some(i) if e.line() > 0 => text[..i].to_owned(),
            _ => text,
        };
        InputError { file: self.file.to_owned(), line: (e.line() > 0).then_some(e.line()), field, message }
    }

    fn error(&self, path: &[Seg], message: impl Into<String>) -> InputError {
        InputError {
            file: self.file.to_owned(),
            line: locate(self.text, path),
            field: (!path.is_empty()).then(|| path_string(path)),
            message: message.into(),
        }
    }

    fn group(&self, rank: usize, torsion: &[Int], prefix: &[Seg]) -> Result<Arc<AbelianGroup>, InputError> {
        for (i, a) in torsion.iter().enumerate() {
            if a.0 < BigInt::from(2) {
                let path = [prefix, &[Seg::Key("torsion"), Seg::Index(i)]].concat();
                return Err(self.error(&path, format!("torsion order {} is smaller than 2", a.0)));
            }
        }
        AbelianGroup::new(rank, torsion.iter().map(|a| a.0.clone()).collect()).map_err(|e| self.error(prefix, e.to_string()))
    }

    fn vector(&self, group: &Arc<AbelianGroup>, v: &Vector, path: &[Seg]) -> Result<GroupElement, InputError> {
        let r = match v {
            Vector::Text(s) => parse_element(group, s),
            Vector::Coords(c) => {
                if c.len() != group.ngens() {
                    Err(format!(
                        "expected {} coordinates ({} free, {} torsion), found {}",
                        group.ngens(),
                        group.rank(),
                        group.torsion_orders().len(),
                        c.len()
                    ))
                } else {
                    let (f, t) = c.split_at(group.rank());
                    element(group, f.iter().map(|x| x.0.clone()).collect(), t.iter().map(|x| x.0.clone()).collect())
                }
            }
        };
        r.map_err(|m| self.error(path, m))
    }

    fn monoid(&self, doc: MonoidDoc, cap_mode: CapMode) -> Result<EmbeddedMonoid, InputError> {
        let group = self.group(doc.group.rank, &doc.group.torsion, &[Seg::Key("group")])?;
        let gens = doc
            .generators
            .iter()
            .enumerate()
            .map(|(i, v)| self.vector(&group, v, &[Seg::Key("generators"), Seg::Index(i)]))
            .collect::<Result<Vec<_>, _>>()?;
        EmbeddedMonoid::new(&group, gens)
            .map(|m| m.with_cap_mode(cap_mode))
            .map_err(|e| self.error(&[Seg::Key("generators")], e.to_string()))
    }

    fn mds(&self, doc: MdsDoc, cap_mode: CapMode) -> Result<MdsInput, InputError> {
        let r = doc.num_vars;
        let check_row = |row: &[Int], path: &[Seg]| {
            if row.len() == r {
                Ok(())
            } else {
                Err(self.error(path, format!("expected {r} entries (numVars), found {}", row.len())))
            }
        };
        for (i, row) in doc.degrees.free.iter().enumerate() {
            check_row(row, &[Seg::Key("degrees"), Seg::Key("free"), Seg::Index(i)])?;
        }
        for (i, t) in doc.degrees.torsion.iter().enumerate() {
            check_row(&t.row, &[Seg::Key("degrees"), Seg::Key("torsion"), Seg::Index(i), Seg::Key("row")])?;
            if t.modulus.0 < BigInt::from(2) {
                let path = [Seg::Key("degrees"), Seg::Key("torsion"), Seg::Index(i), Seg::Key("modulus")];
                return Err(self.error(&path, format!("modulus {} is smaller than 2", t.modulus.0)));
            }
        }
        let moduli: Vec<Int> = doc.degrees.torsion.iter().map(|t| t.modulus.clone()).collect();
        let group = self.group(doc.degrees.free.len(), &moduli, &[Seg::Key("degrees")])?;
        let degrees = (0..r)
            .map(|j| {
                let free = doc.degrees.free.iter().map(|row| row[j].0.clone()).collect();
                let torsion = doc.degrees.torsion.iter().map(|t| t.row[j].0.clone()).collect();
                GroupElement::new(&group, free, torsion).map_err(|e| self.error(&[Seg::Key("degrees")], e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut relations = Vec::new();
        for (i, rel) in doc.relations.iter().enumerate() {
            let mut monomials = Vec::new();
            for (j, m) in rel.iter().enumerate() {
                let path = [Seg::Key("relations"), Seg::Index(i), Seg::Index(j)];
                if m.exponents.len() != r {
                    let path = [&path[..], &[Seg::Key("exponents")]].concat();
                    return Err(self.error(&path, format!("expected {r} exponents (numVars), found {}", m.exponents.len())));
                }
                if m.coefficient.0.is_zero() {
                    let path = [&path[..], &[Seg::Key("coefficient")]].concat();
                    return Err(self.error(&path, "coefficient is zero"));
                }
                monomials.push(Monomial { coefficient: m.coefficient.0.clone(), exponents: m.exponents.clone() });
            }
            let rel = Relation::new(monomials).map_err(|e| self.error(&[Seg::Key("relations"), Seg::Index(i)], e.to_string()))?;
            relations.push(rel);
        }
        let ample = self.vector(&group, &doc.ample_class, &[Seg::Key("ampleClass")])?;
        let mut space = MoriDreamSpace::new(&group, degrees, relations, ample).map_err(|e| match e {
            Error::InhomogeneousRelation { index } => {
                self.error(&[Seg::Key("relations"), Seg::Index(index)], "relation is not homogeneous")
            }
            e => self.error(&[Seg::Key("numVars")], e.to_string()),
        })?;
        if let Some(faces) = &doc.f_faces {
            let mut parsed = Vec::new();
            for (i, face) in faces.iter().enumerate() {
                for (j, &v) in face.iter().enumerate() {
                    if v == 0 || v > r {
                        let path = [Seg::Key("fFaces"), Seg::Index(i), Seg::Index(j)];
                        return Err(self.error(&path, format!("variable {v} is outside 1..={r}")));
                    }
                }
                parsed.push(Face::from_indices(&face.iter().map(|v| v - 1).collect::<Vec<_>>()));
            }
            for (i, f) in parsed.iter().enumerate() {
                if !space.relations().iter().all(|rel| rel.admits(*f)) {
                    let path = [Seg::Key("fFaces"), Seg::Index(i)];
                    return Err(self.error(&path, format!("face {f} violates the monomial rule")));
                }
            }
            space = space.with_ffaces(parsed).map_err(|e| self.error(&[Seg::Key("fFaces")], e.to_string()))?;
        }
        let canonical_class = match &doc.canonical_class {
            Some(v) => Some(self.vector(&group, v, &[Seg::Key("canonicalClass")])?),
            None => None,
        };
        Ok(MdsInput { space: space.with_cap_mode(cap_mode), canonical_class })
    }
}

/// Line of the value at `path`, found by walking the document until the
/// target is reached and reading the parser position there.
fn locate(text: &str, path: &[Seg]) -> Option<usize> {
    let mut de = serde_json::Deserializer::from_str(text);
    match Probe(path).deserialize(&mut de) {
        Err(e) if e.line() > 0 && e.to_string().starts_with(FOUND) => Some(e.line()),
        _ => None,
    }
}

const FOUND: &str = "located";

struct Probe<'a>(&'a [Seg]);

impl<'de> DeserializeSeed<'de> for Probe<'_> {
    type Value = ();
    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<(), D::Error> {
        if self.0.is_empty() {
            return Err(de::Error::custom(FOUND));
        }
        d.deserialize_any(self)
    }
}

impl<'de> Visitor<'de> for Probe<'_> {
    type Value = ();

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("any JSON value")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<(), A::Error> {
        while let Some(key) = map.next_key::<String>()? {
            match &self.0[0] {
                Seg::Key(k) if *k == key => map.next_value_seed(Probe(&self.0[1..]))?,
                _ => map.next_value::<IgnoredAny>().map(drop)?,
            }
        }
        Ok(())
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<(), A::Error> {
        let mut i = 0;
        loop {
            let more = match self.0[0] {
                Seg::Index(j) if j == i => seq.next_element_seed(Probe(&self.0[1..]))?.is_some(),
                _ => seq.next_element::<IgnoredAny>()?.is_some(),
            };
            if !more {
                return Ok(());
            }
            i += 1;
        }
    }

    fn visit_bool<E: de::Error>(self, _: bool) -> Result<(), E> {
        Ok(())
    }

    fn visit_i64<E: de::Error>(self, _: i64) -> Result<(), E> {
        Ok(())
    }

    fn visit_u64<E: de::Error>(self, _: u64) -> Result<(), E> {
        Ok(())
    }

    fn visit_f64<E: de::Error>(self, _: f64) -> Result<(), E> {
        Ok(())
    }

    fn visit_str<E: de::Error>(self, _: &str) -> Result<(), E> {
        Ok(())
    }

    fn visit_unit<E: de::Error>(self) -> Result<(), E> {
        Ok(())
    }
}
