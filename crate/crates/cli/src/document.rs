//! The JSON document format shared by every subcommand.
//!
//! ```json
//! {
//!   "version": "1",
//!   "kind": "lie-pair",
//!   "spaces": {"g": {"degrees": {"0": 2}}},
//!   "maps": [
//!     {"name": "bracket", "arity": 2, "degree": 0, "symmetry": "skew",
//!      "entries": [{"in": [[0,0],[0,1]], "out": {"0,1": "1"}}]}
//!   ]
//! }
//! ```
//!
//! A map's role is its name. `domain` is a space name or one name per
//! argument and may be omitted when the document has a single space; the
//! same holds for `codomain`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use compat_linf::exactla::{format_scalar, parse_scalar};
use compat_linf::multilinear::normalize;
use compat_linf::{BasisElement, GradedSpace, Scalar, Symmetry, Vector};
use num_traits::{One, Zero};
use serde_json::{Map, Value};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    LinftyPair,
    AinftyPair,
    LiePair,
    TwoTerm,
    CrossedModule,
    SkeletalTriple,
    Lie2,
    RotaBaxter,
    RbCandidate,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::LinftyPair,
        Kind::AinftyPair,
        Kind::LiePair,
        Kind::TwoTerm,
        Kind::CrossedModule,
        Kind::SkeletalTriple,
        Kind::Lie2,
        Kind::RotaBaxter,
        Kind::RbCandidate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::LinftyPair => "linfty-pair",
            Kind::AinftyPair => "ainfty-pair",
            Kind::LiePair => "lie-pair",
            Kind::TwoTerm => "two-term",
            Kind::CrossedModule => "crossed-module",
            Kind::SkeletalTriple => "skeletal-triple",
            Kind::Lie2 => "lie2",
            Kind::RotaBaxter => "rota-baxter",
            Kind::RbCandidate => "rb-candidate",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Implicit,
    Single(String),
    PerArgument(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub input: Vec<BasisElement>,
    pub output: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpec {
    pub name: String,
    pub domain: Domain,
    /// `None` when omitted (single-space documents only).
    pub codomain: Option<String>,
    pub arity: usize,
    pub degree: i64,
    pub symmetry: Symmetry,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub version: String,
    pub kind: Kind,
    pub spaces: Vec<(String, GradedSpace)>,
    pub maps: Vec<MapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{p}: {}", self.message)
    }
}

#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Parse(String),
    Schema(Vec<SchemaError>),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "cannot read input: {e}"),
            LoadError::Parse(e) => write!(f, "parse error: {e}"),
            LoadError::Schema(es) => {
                write!(f, "{} schema error(s)", es.len())?;
                for e in es {
                    write!(f, "\n  {e}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for LoadError {}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn child(ptr: &str, key: &str) -> String {
    format!("{ptr}/{}", escape(key))
}

fn basis_key(b: BasisElement) -> String {
    format!("{},{}", b.degree, b.index)
}

/// `"deg,idx"` in canonical spelling.
fn parse_basis_key(s: &str) -> Option<BasisElement> {
    let (d, i) = s.split_once(',')?;
    let b = BasisElement { degree: d.parse().ok()?, index: i.parse().ok()? };
    (basis_key(b) == s).then_some(b)
}

struct Loader {
    errors: Vec<SchemaError>,
}

impl Loader {
    fn err(&mut self, pointer: &str, message: impl Into<String>) {
        self.errors.push(SchemaError { pointer: pointer.to_string(), message: message.into() });
    }

    fn object<'a>(&mut self, v: &'a Value, ptr: &str, allowed: &[&str], required: &[&str]) -> Option<&'a Map<String, Value>> {
        let Some(obj) = v.as_object() else {
            self.err(ptr, "expected an object");
            return None;
        };
        let mut last = None;
        for k in obj.keys() {
            match allowed.iter().position(|a| a == k) {
                None => self.err(&child(ptr, k), format!("unknown key {k:?}")),
                Some(i) => {
                    if last.is_some_and(|l| l > i) {
                        self.err(&child(ptr, k), format!("non-canonical key order: {k:?} must come before {:?}", allowed[last.unwrap()]));
                    }
                    last = Some(i);
                }
            }
        }
        for r in required {
            if !obj.contains_key(*r) {
                self.err(ptr, format!("missing key {r:?}"));
            }
        }
        Some(obj)
    }

    fn int(&mut self, v: &Value, ptr: &str) -> Option<i64> {
        let r = v.as_i64();
        if r.is_none() {
            self.err(ptr, "expected an integer");
        }
        r
    }

    fn uint(&mut self, v: &Value, ptr: &str) -> Option<usize> {
        let r = v.as_u64().and_then(|x| usize::try_from(x).ok());
        if r.is_none() {
            self.err(ptr, "expected a non-negative integer");
        }
        r
    }

    fn string<'a>(&mut self, v: &'a Value, ptr: &str) -> Option<&'a str> {
        let r = v.as_str();
        if r.is_none() {
            self.err(ptr, "expected a string");
        }
        r
    }

    fn space(&mut self, v: &Value, ptr: &str) -> Option<GradedSpace> {
        let obj = self.object(v, ptr, &["degrees", "labels"], &["degrees"])?;
        let dptr = child(ptr, "degrees");
        let mut dims = Vec::new();
        let mut ok = true;
        match obj.get("degrees").map(|d| d.as_object()) {
            Some(Some(d)) => {
                let mut last: Option<i64> = None;
                for (k, n) in d {
                    let kp = child(&dptr, k);
                    let deg = match k.parse::<i64>() {
                        Ok(deg) if deg.to_string() == *k => deg,
                        _ => {
                            self.err(&kp, format!("degree key {k:?} is not a canonical integer"));
                            ok = false;
                            continue;
                        }
                    };
                    if last.is_some_and(|l| l >= deg) {
                        self.err(&kp, "non-canonical key order: degrees must increase");
                        ok = false;
                    }
                    last = Some(deg);
                    match self.uint(n, &kp) {
                        Some(n) => dims.push((deg, n)),
                        None => ok = false,
                    }
                }
            }
            Some(None) => {
                self.err(&dptr, "expected an object");
                ok = false;
            }
            None => ok = false,
        }
        if !ok {
            return None;
        }
        let space = GradedSpace::new(dims);
        if let Some(l) = obj.get("labels") {
            let lptr = child(ptr, "labels");
            let Some(l) = l.as_object() else {
                self.err(&lptr, "expected an object");
                return None;
            };
            let mut labels = BTreeMap::new();
            let mut last = None;
            for (k, s) in l {
                let kp = child(&lptr, k);
                let Some(b) = parse_basis_key(k) else {
                    self.err(&kp, format!("basis key {k:?} is not of the form \"deg,idx\""));
                    continue;
                };
                if last.is_some_and(|l| l >= b) {
                    self.err(&kp, "non-canonical key order: basis keys must increase");
                }
                last = Some(b);
                if !space.contains(b) {
                    self.err(&kp, format!("basis element {k} does not exist"));
                }
                if let Some(s) = self.string(s, &kp) {
                    labels.insert(b, s.to_string());
                }
            }
            return Some(space.with_labels(labels));
        }
        Some(space)
    }

    fn basis(&mut self, v: &Value, ptr: &str, space: Option<&GradedSpace>) -> Option<BasisElement> {
        let pair = v.as_array().filter(|a| a.len() == 2);
        let Some(pair) = pair else {
            self.err(ptr, "expected [degree, index]");
            return None;
        };
        let degree = self.int(&pair[0], &format!("{ptr}/0"))?;
        let index = self.uint(&pair[1], &format!("{ptr}/1"))?;
        let b = BasisElement { degree, index };
        if let Some(s) = space {
            if !s.contains(b) {
                self.err(ptr, format!("basis element ({degree},{index}) does not exist"));
                return None;
            }
        }
        Some(b)
    }
}

fn lookup<'a>(spaces: &'a [(String, GradedSpace)], name: &str) -> Option<&'a GradedSpace> {
    spaces.iter().find(|(n, _)| n == name).map(|(_, s)| s)
}

impl Loader {
    fn space_ref(&mut self, v: &Value, ptr: &str, spaces: &[(String, GradedSpace)]) -> Option<String> {
        let name = self.string(v, ptr)?;
        if lookup(spaces, name).is_none() {
            self.err(ptr, format!("unknown space {name:?}"));
            return None;
        }
        Some(name.to_string())
    }

    fn map(&mut self, v: &Value, ptr: &str, spaces: &[(String, GradedSpace)]) -> Option<MapSpec> {
        let keys = ["name", "domain", "codomain", "arity", "degree", "symmetry", "entries"];
        let obj = self.object(v, ptr, &keys, &["name", "arity", "degree", "symmetry", "entries"])?;
        let name = self.string(obj.get("name")?, &child(ptr, "name"))?.to_string();
        if name.is_empty() {
            self.err(&child(ptr, "name"), "empty map name");
        }
        let arity = self.uint(obj.get("arity")?, &child(ptr, "arity"))?;
        if arity == 0 {
            self.err(&child(ptr, "arity"), "arity must be at least 1");
            return None;
        }
        let degree = self.int(obj.get("degree")?, &child(ptr, "degree"))?;
        let sym_ptr = child(ptr, "symmetry");
        let sym_name = self.string(obj.get("symmetry")?, &sym_ptr)?;
        let Some(symmetry) = Symmetry::parse(sym_name) else {
            self.err(&sym_ptr, format!("unknown symmetry {sym_name:?}"));
            return None;
        };
        let single = (spaces.len() == 1).then(|| spaces[0].0.clone());

        let dptr = child(ptr, "domain");
        let (domain, arg_spaces) = match obj.get("domain") {
            None => match &single {
                Some(s) => (Domain::Implicit, vec![s.clone(); arity]),
                None => {
                    self.err(ptr, "\"domain\" is required when the document has several spaces");
                    return None;
                }
            },
            Some(Value::Array(a)) => {
                if a.len() != arity {
                    self.err(&dptr, format!("{} domain spaces for a map of arity {arity}", a.len()));
                    return None;
                }
                let mut names = Vec::new();
                for (i, s) in a.iter().enumerate() {
                    names.push(self.space_ref(s, &format!("{dptr}/{i}"), spaces)?);
                }
                if symmetry != Symmetry::None && names.iter().any(|n| *n != names[0]) {
                    self.err(&dptr, "a skew or symmetric map needs the same space in every argument");
                    return None;
                }
                (Domain::PerArgument(names.clone()), names)
            }
            Some(s) => {
                let n = self.space_ref(s, &dptr, spaces)?;
                (Domain::Single(n.clone()), vec![n; arity])
            }
        };
        let cptr = child(ptr, "codomain");
        let (codomain, out_space) = match obj.get("codomain") {
            None => match &single {
                Some(s) => (None, s.clone()),
                None => {
                    self.err(ptr, "\"codomain\" is required when the document has several spaces");
                    return None;
                }
            },
            Some(s) => {
                let n = self.space_ref(s, &cptr, spaces)?;
                (Some(n.clone()), n)
            }
        };
        let ins: Vec<&GradedSpace> = arg_spaces.iter().map(|n| lookup(spaces, n).unwrap()).collect();
        let out = lookup(spaces, &out_space).unwrap();

        let eptr = child(ptr, "entries");
        let Some(list) = obj.get("entries")?.as_array() else {
            self.err(&eptr, "expected an array");
            return None;
        };
        let mut entries = Vec::new();
        let mut seen = BTreeSet::new();
        for (j, e) in list.iter().enumerate() {
            let ep = format!("{eptr}/{j}");
            if let Some(entry) = self.entry(e, &ep, &name, j, arity, degree, symmetry, &ins, out) {
                if !seen.insert(entry.input.clone()) {
                    self.err(&child(&ep, "in"), format!("entry {j} of map {name:?} repeats an input tuple"));
                    continue;
                }
                entries.push(entry);
            }
        }
        Some(MapSpec { name, domain, codomain, arity, degree, symmetry, entries })
    }

    #[allow(clippy::too_many_arguments)]
    fn entry(
        &mut self,
        v: &Value,
        ptr: &str,
        map: &str,
        j: usize,
        arity: usize,
        degree: i64,
        symmetry: Symmetry,
        ins: &[&GradedSpace],
        out: &GradedSpace,
    ) -> Option<Entry> {
        let obj = self.object(v, ptr, &["in", "out"], &["in", "out"])?;
        let iptr = child(ptr, "in");
        let Some(args) = obj.get("in")?.as_array() else {
            self.err(&iptr, "expected an array");
            return None;
        };
        if args.len() != arity {
            self.err(&iptr, format!("entry {j} of map {map:?} has {} inputs, arity is {arity}", args.len()));
            return None;
        }
        let mut input = Vec::new();
        for (i, a) in args.iter().enumerate() {
            input.push(self.basis(a, &format!("{iptr}/{i}"), Some(ins[i]))?);
        }
        if symmetry != Symmetry::None {
            match normalize(&input, symmetry) {
                None => {
                    self.err(&iptr, format!("entry {j} of map {map:?}: input tuple vanishes by {} symmetry", symmetry.name()));
                    return None;
                }
                Some((sign, canon)) if canon != input || !sign.is_one() => {
                    self.err(&iptr, format!("entry {j} of map {map:?}: non-canonical input tuple, expected the sorted order"));
                    return None;
                }
                _ => {}
            }
        }
        let expected = input.iter().map(|b| b.degree).sum::<i64>() + degree;
        let optr = child(ptr, "out");
        let Some(o) = obj.get("out")?.as_object() else {
            self.err(&optr, "expected an object");
            return None;
        };
        let mut output = Vector::zero();
        let mut last = None;
        let mut ok = true;
        for (k, c) in o {
            let kp = child(&optr, k);
            let Some(b) = parse_basis_key(k) else {
                self.err(&kp, format!("basis key {k:?} is not of the form \"deg,idx\""));
                ok = false;
                continue;
            };
            if last.is_some_and(|l| l >= b) {
                self.err(&kp, "non-canonical key order: basis keys must increase");
                ok = false;
            }
            last = Some(b);
            if !out.contains(b) {
                self.err(&kp, format!("basis element {k} does not exist"));
                ok = false;
                continue;
            }
            if b.degree != expected {
                self.err(
                    &kp,
                    format!("entry {j} of map {map:?}: output degree {} violates map degree {degree} (expected {expected})", b.degree),
                );
                ok = false;
                continue;
            }
            let Some(s) = self.string(c, &kp) else {
                ok = false;
                continue;
            };
            match parse_scalar(s) {
                Ok(x) if x.is_zero() => {
                    self.err(&kp, "zero coefficients must be omitted");
                    ok = false;
                }
                Ok(x) if format_scalar(&x) != s => {
                    self.err(&kp, format!("scalar {s:?} is not in canonical form, write {:?}", format_scalar(&x)));
                    ok = false;
                }
                Ok(x) => output.add_term(b, x),
                Err(e) => {
                    self.err(&kp, e.to_string());
                    ok = false;
                }
            }
        }
        ok.then_some(Entry { input, output })
    }
}

impl Document {
    pub fn new(kind: Kind) -> Self {
        Document { version: FORMAT_VERSION.into(), kind, spaces: Vec::new(), maps: Vec::new() }
    }

    pub fn from_str(text: &str) -> Result<Document, LoadError> {
        let v: Value = serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
        Document::from_value(&v)
    }

    pub fn load(path: &Path) -> Result<Document, LoadError> {
        Document::from_str(&std::fs::read_to_string(path).map_err(LoadError::Io)?)
    }

    pub fn from_value(v: &Value) -> Result<Document, LoadError> {
        let mut l = Loader { errors: Vec::new() };
        let doc = Document::parse(&mut l, v);
        match doc {
            Some(d) if l.errors.is_empty() => Ok(d),
            _ => Err(LoadError::Schema(l.errors)),
        }
    }

    fn parse(l: &mut Loader, v: &Value) -> Option<Document> {
        let root = l.object(v, "", &["version", "kind", "spaces", "maps"], &["version", "kind", "spaces"])?;
        let version = l.string(root.get("version")?, "/version")?.to_string();
        if version != FORMAT_VERSION {
            l.err("/version", format!("unsupported version {version:?}, expected {FORMAT_VERSION:?}"));
        }
        let kind_name = l.string(root.get("kind")?, "/kind")?;
        let kind = Kind::parse(kind_name);
        if kind.is_none() {
            let names: Vec<_> = Kind::ALL.iter().map(|k| k.name()).collect();
            l.err("/kind", format!("unknown kind {kind_name:?}, expected one of {}", names.join(", ")));
        }
        let Some(sp) = root.get("spaces")?.as_object() else {
            l.err("/spaces", "expected an object");
            return None;
        };
        if sp.is_empty() {
            l.err("/spaces", "at least one space is required");
        }
        let mut spaces = Vec::new();
        for (name, s) in sp {
            if let Some(s) = l.space(s, &child("/spaces", name)) {
                spaces.push((name.clone(), s));
            }
        }
        if spaces.len() != sp.len() {
            return None;
        }
        let mut maps: Vec<MapSpec> = Vec::new();
        match root.get("maps") {
            None => {}
            Some(Value::Array(a)) => {
                for (i, m) in a.iter().enumerate() {
                    let ptr = format!("/maps/{i}");
                    if let Some(m) = l.map(m, &ptr, &spaces) {
                        if maps.iter().any(|o| o.name == m.name) {
                            l.err(&child(&ptr, "name"), format!("duplicate map name {:?}", m.name));
                        }
                        maps.push(m);
                    }
                }
            }
            Some(_) => l.err("/maps", "expected an array"),
        }
        Some(Document { version, kind: kind?, spaces, maps })
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("version".into(), Value::String(self.version.clone()));
        root.insert("kind".into(), Value::String(self.kind.name().into()));
        let mut spaces = Map::new();
        for (name, s) in &self.spaces {
            let mut o = Map::new();
            let degrees: Map<String, Value> = s.dims().iter().map(|(d, n)| (d.to_string(), Value::from(*n))).collect();
            o.insert("degrees".into(), Value::Object(degrees));
            if !s.labels().is_empty() {
                let labels = s.labels().iter().map(|(b, l)| (basis_key(*b), Value::String(l.clone()))).collect();
                o.insert("labels".into(), Value::Object(labels));
            }
            spaces.insert(name.clone(), Value::Object(o));
        }
        root.insert("spaces".into(), Value::Object(spaces));
        let maps = self.maps.iter().map(map_value).collect();
        root.insert("maps".into(), Value::Array(maps));
        Value::Object(root)
    }

    pub fn to_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_string())
    }

    pub fn space(&self, name: &str) -> Option<&GradedSpace> {
        lookup(&self.spaces, name)
    }

    pub fn map(&self, name: &str) -> Option<&MapSpec> {
        self.maps.iter().find(|m| m.name == name)
    }

    /// The spaces of each argument, resolving an omitted domain.
    pub fn arg_spaces(&self, m: &MapSpec) -> Vec<String> {
        match &m.domain {
            Domain::Implicit => vec![self.spaces[0].0.clone(); m.arity],
            Domain::Single(s) => vec![s.clone(); m.arity],
            Domain::PerArgument(v) => v.clone(),
        }
    }

    pub fn out_space(&self, m: &MapSpec) -> String {
        m.codomain.clone().unwrap_or_else(|| self.spaces[0].0.clone())
    }
}

fn map_value(m: &MapSpec) -> Value {
    let mut o = Map::new();
    o.insert("name".into(), Value::String(m.name.clone()));
    match &m.domain {
        Domain::Implicit => {}
        Domain::Single(s) => {
            o.insert("domain".into(), Value::String(s.clone()));
        }
        Domain::PerArgument(v) => {
            o.insert("domain".into(), Value::Array(v.iter().cloned().map(Value::String).collect()));
        }
    }
    if let Some(c) = &m.codomain {
        o.insert("codomain".into(), Value::String(c.clone()));
    }
    o.insert("arity".into(), Value::from(m.arity));
    o.insert("degree".into(), Value::from(m.degree));
    o.insert("symmetry".into(), Value::String(m.symmetry.name().into()));
    let entries = m
        .entries
        .iter()
        .map(|e| {
            let input = e.input.iter().map(|b| Value::Array(vec![Value::from(b.degree), Value::from(b.index)])).collect();
            let out: Map<String, Value> = e.output.iter().map(|(b, c)| (basis_key(*b), Value::String(format_scalar(c)))).collect();
            let mut eo = Map::new();
            eo.insert("in".into(), Value::Array(input));
            eo.insert("out".into(), Value::Object(out));
            Value::Object(eo)
        })
        .collect();
    o.insert("entries".into(), Value::Array(entries));
    Value::Object(o)
}

/// Scalar helper for builders.
pub fn scalar(s: &str) -> Scalar {
    parse_scalar(s).expect("valid scalar literal")
}
