//! Named slots of each document kind and conversions to library types.

use compat_linf::cohomology::{CompatibleLieAlgebra, CompatibleRep};
use compat_linf::homotopy::to_coder;
use compat_linf::homotopy::CoderTuple;
use compat_linf::multilinear::{canonical_tuples, normalize};
use compat_linf::rotabaxter::RbCandidate;
use compat_linf::twoterm::{map_to_tensor, tensor_to_map, CrossedModule, LieTwoData, SkeletalTriple, TwoTermHalf, TwoTermStructure};
use compat_linf::{BasisElement, CompatiblePair, Flavor, GradedSpace, HomotopyStructure, MultiMap, Symmetry, Tensor, Vector};

use crate::document::{Document, Domain, Entry, Kind, MapSpec};

/// A well-formed document that does not describe the expected objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<compat_linf::Error> for InputError {
    fn from(e: compat_linf::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, InputError>;

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(InputError(msg.into()))
}

#[derive(Clone, Copy, Debug)]
pub struct Slot {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub out: &'static str,
    pub symmetry: Symmetry,
}

const fn slot(name: &'static str, args: &'static [&'static str], out: &'static str, symmetry: Symmetry) -> Slot {
    Slot { name, args, out, symmetry }
}

use Symmetry::{None as Plain, Skew};

const G: &[&str] = &["g"];
const GG: &[&str] = &["g", "g"];
const GGG: &[&str] = &["g", "g", "g"];
const GV: &[&str] = &["g", "V"];
const V: &[&str] = &["V"];
const M: &[&str] = &["L-1"];
const OO: &[&str] = &["L0", "L0"];
const OM: &[&str] = &["L0", "L-1"];
const OOO: &[&str] = &["L0", "L0", "L0"];
const HH: &[&str] = &["h", "h"];
const HG: &[&str] = &["h", "g"];
const C0: &[&str] = &["C0"];
const C1: &[&str] = &["C1"];
const C00: &[&str] = &["C0", "C0"];
const C11: &[&str] = &["C1", "C1"];
const C000: &[&str] = &["C0", "C0", "C0"];

const LIE: &[Slot] = &[
    slot("bracket", GG, "g", Skew),
    slot("bracket'", GG, "g", Skew),
    slot("action", GV, "V", Plain),
    slot("action'", GV, "V", Plain),
];

const TWO_TERM: &[Slot] = &[
    slot("l1", M, "L0", Plain),
    slot("l2_00", OO, "L0", Skew),
    slot("l2_0m1", OM, "L-1", Plain),
    slot("l3", OOO, "L-1", Skew),
    slot("l1'", M, "L0", Plain),
    slot("l2_00'", OO, "L0", Skew),
    slot("l2_0m1'", OM, "L-1", Plain),
    slot("l3'", OOO, "L-1", Skew),
];

const CROSSED: &[Slot] = &[
    slot("bracket_g", GG, "g", Skew),
    slot("bracket_g'", GG, "g", Skew),
    slot("bracket_h", HH, "h", Skew),
    slot("bracket_h'", HH, "h", Skew),
    slot("t", G, "h", Plain),
    slot("t'", G, "h", Plain),
    slot("alpha", HG, "g", Plain),
    slot("alpha'", HG, "g", Plain),
];

const TRIPLE: &[Slot] = &[
    slot("bracket", GG, "g", Skew),
    slot("bracket'", GG, "g", Skew),
    slot("action", GV, "V", Plain),
    slot("action'", GV, "V", Plain),
    slot("theta", GGG, "V", Skew),
    slot("theta'", GGG, "V", Skew),
];

const LIE2: &[Slot] = &[
    slot("s", C1, "C0", Plain),
    slot("t", C1, "C0", Plain),
    slot("i", C0, "C1", Plain),
    slot("bracket0", C00, "C0", Skew),
    slot("bracket0'", C00, "C0", Skew),
    slot("bracket1", C11, "C1", Skew),
    slot("bracket1'", C11, "C1", Skew),
    slot("J", C000, "C1", Plain),
    slot("J'", C000, "C1", Plain),
    slot("Jc", C000, "C1", Plain),
];

const CANDIDATE: &[Slot] = &[slot("R", V, "g", Plain)];

/// Spaces with the single degree they live in, and the named maps.
pub fn layout(kind: Kind) -> (&'static [(&'static str, i64)], &'static [Slot]) {
    match kind {
        Kind::LinftyPair | Kind::AinftyPair => (&[], &[]),
        Kind::LiePair | Kind::RotaBaxter => (&[("g", 0), ("V", 0)], LIE),
        Kind::TwoTerm => (&[("L-1", -1), ("L0", 0)], TWO_TERM),
        Kind::CrossedModule => (&[("g", 0), ("h", 0)], CROSSED),
        Kind::SkeletalTriple => (&[("g", 0), ("V", 0)], TRIPLE),
        Kind::Lie2 => (&[("C0", 0), ("C1", 0)], LIE2),
        Kind::RbCandidate => (&[("g", 0), ("V", 0)], CANDIDATE),
    }
}

fn find_slot(kind: Kind, name: &str) -> Option<Slot> {
    layout(kind).1.iter().copied().find(|s| s.name == name)
}

/// Dimension of a space that must sit in a single degree.
fn concentrated_dim(doc: &Document, name: &str, degree: i64) -> Result<usize> {
    let Some(s) = doc.space(name) else {
        return bad(format!("a {} document needs a space {name:?}", doc.kind));
    };
    if s.dims().iter().any(|(d, n)| *n > 0 && *d != degree) {
        return bad(format!("space {name:?} must be concentrated in degree {degree}"));
    }
    Ok(s.dim(degree))
}

fn check_layout(doc: &Document) -> Result<()> {
    let (spaces, slots) = layout(doc.kind);
    for (name, _) in &doc.spaces {
        if !spaces.iter().any(|(n, _)| n == name) {
            let names: Vec<_> = spaces.iter().map(|(n, _)| *n).collect();
            return bad(format!("unexpected space {name:?} in a {} document (expected {})", doc.kind, names.join(", ")));
        }
    }
    for m in &doc.maps {
        let Some(s) = slots.iter().find(|s| s.name == m.name) else {
            let names: Vec<_> = slots.iter().map(|s| s.name).collect();
            return bad(format!("unexpected map {:?} in a {} document (expected {})", m.name, doc.kind, names.join(", ")));
        };
        let args = doc.arg_spaces(m);
        if args != s.args || doc.out_space(m) != s.out || m.symmetry != s.symmetry {
            return bad(format!(
                "map {:?} must be {} ({}) -> {}",
                m.name,
                s.symmetry.name(),
                s.args.join(", "),
                s.out
            ));
        }
    }
    Ok(())
}

fn dims_of(doc: &Document) -> Result<std::collections::HashMap<&'static str, usize>> {
    let (spaces, _) = layout(doc.kind);
    let mut out = std::collections::HashMap::new();
    for (name, deg) in spaces {
        if doc.space(name).is_some() {
            out.insert(*name, concentrated_dim(doc, name, *deg)?);
        }
    }
    Ok(out)
}

/// The tensor of a map between single-degree spaces, expanding symmetry.
pub fn tensor_of(doc: &Document, m: &MapSpec) -> Result<Tensor> {
    let args = doc.arg_spaces(m);
    let spaces: Vec<&GradedSpace> = args.iter().map(|n| doc.space(n).unwrap()).collect();
    let out = doc.space(&doc.out_space(m)).unwrap();
    for s in spaces.iter().chain(std::iter::once(&out)) {
        if s.dims().values().filter(|n| **n > 0).count() > 1 {
            return bad(format!("map {:?} must act between spaces concentrated in one degree", m.name));
        }
    }
    let in_dims: Vec<usize> = spaces.iter().map(|s| s.total_dim()).collect();
    let mut t = Tensor::zeros(&in_dims, out.total_dim());
    let lookup: std::collections::BTreeMap<&Vec<BasisElement>, &Vector> = m.entries.iter().map(|e| (&e.input, &e.output)).collect();
    for idx in t.indices() {
        let bs: Vec<BasisElement> = idx.iter().zip(&spaces).map(|(i, s)| s.basis()[*i]).collect();
        let Some((sign, canon)) = normalize(&bs, m.symmetry) else { continue };
        if let Some(v) = lookup.get(&canon) {
            t.set_vec(&idx, &v.scaled(&sign).to_dense(out));
        }
    }
    Ok(t)
}

fn slot_tensor(doc: &Document, dims: &std::collections::HashMap<&'static str, usize>, s: &Slot) -> Result<Tensor> {
    let dim = |n: &str| dims.get(n).copied().ok_or_else(|| InputError(format!("map {:?} needs a space {n:?}", s.name)));
    match doc.map(s.name) {
        Some(m) => tensor_of(doc, m),
        None => {
            let ins = s.args.iter().map(|a| dim(a)).collect::<Result<Vec<_>>>()?;
            Ok(Tensor::zeros(&ins, dim(s.out)?))
        }
    }
}

struct Reader<'a> {
    doc: &'a Document,
    dims: std::collections::HashMap<&'static str, usize>,
}

impl<'a> Reader<'a> {
    fn new(doc: &'a Document, kind: Kind) -> Result<Self> {
        if doc.kind != kind {
            return bad(format!("expected a {kind} document, got {}", doc.kind));
        }
        check_layout(doc)?;
        Ok(Reader { doc, dims: dims_of(doc)? })
    }

    fn dim(&self, space: &str) -> Result<usize> {
        self.dims.get(space).copied().ok_or_else(|| InputError(format!("a {} document needs a space {space:?}", self.doc.kind)))
    }

    fn t(&self, name: &str) -> Result<Tensor> {
        slot_tensor(self.doc, &self.dims, &find_slot(self.doc.kind, name).expect("known slot"))
    }

    fn lie(&self, a: &str, b: &str, space: &str) -> Result<CompatibleLieAlgebra> {
        let g = GradedSpace::ungraded(self.dim(space)?);
        Ok(CompatibleLieAlgebra::unchecked(
            tensor_to_map(&self.t(a)?, &g, &g, Skew)?,
            tensor_to_map(&self.t(b)?, &g, &g, Skew)?,
        )?)
    }

    fn rep(&self, g: &CompatibleLieAlgebra) -> Result<CompatibleRep> {
        Ok(CompatibleRep::unchecked(g, self.dim("V")?, self.t("action")?, self.t("action'")?)?)
    }
}

/// Document builder for tensor-valued slots.
struct Writer {
    doc: Document,
}

impl Writer {
    fn new(kind: Kind, dims: &[usize]) -> Self {
        let mut doc = Document::new(kind);
        for ((name, deg), n) in layout(kind).0.iter().zip(dims) {
            doc.spaces.push((name.to_string(), GradedSpace::new([(*deg, *n)])));
        }
        Writer { doc }
    }

    /// Adds the slot, or leaves it out when the tensor vanishes.
    fn put(&mut self, name: &str, t: &Tensor) {
        let s = find_slot(self.doc.kind, name).expect("known slot");
        if t.is_zero() {
            return;
        }
        let spaces: Vec<GradedSpace> = s.args.iter().map(|a| self.doc.space(a).unwrap().clone()).collect();
        let out = self.doc.space(s.out).unwrap().clone();
        let degree = out.degrees().next().unwrap_or(0) - spaces.iter().map(|d| d.degrees().next().unwrap_or(0)).sum::<i64>();
        let tuples: Vec<Vec<BasisElement>> = if s.symmetry == Plain {
            Tensor::zeros(&spaces.iter().map(|s| s.total_dim()).collect::<Vec<_>>(), 0)
                .indices()
                .into_iter()
                .map(|idx| idx.iter().zip(&spaces).map(|(i, sp)| sp.basis()[*i]).collect())
                .collect()
        } else {
            canonical_tuples(&spaces[0], s.args.len(), s.symmetry)
        };
        let mut entries = Vec::new();
        for bs in tuples {
            let idx: Vec<usize> = bs.iter().zip(&spaces).map(|(b, sp)| sp.flat_index(*b)).collect();
            let v = Vector::from_dense(&out, t.at(&idx));
            if !v.is_zero() {
                entries.push(Entry { input: bs, output: v });
            }
        }
        let domain = if s.args.iter().all(|a| *a == s.args[0]) {
            Domain::Single(s.args[0].to_string())
        } else {
            Domain::PerArgument(s.args.iter().map(|a| a.to_string()).collect())
        };
        self.doc.maps.push(MapSpec {
            name: name.to_string(),
            domain,
            codomain: Some(s.out.to_string()),
            arity: s.args.len(),
            degree,
            symmetry: s.symmetry,
            entries,
        });
    }
}

// ---------------------------------------------------------------------------
// per-kind readers and writers

pub fn read_two_term(doc: &Document) -> Result<TwoTermStructure> {
    let r = Reader::new(doc, Kind::TwoTerm)?;
    let half = |p: &str| -> Result<TwoTermHalf> {
        Ok(TwoTermHalf {
            l1: r.t(&format!("l1{p}"))?,
            l2_00: r.t(&format!("l2_00{p}"))?,
            l2_0m1: r.t(&format!("l2_0m1{p}"))?,
            l3: r.t(&format!("l3{p}"))?,
        })
    };
    Ok(TwoTermStructure::new(r.dim("L-1")?, r.dim("L0")?, half("")?, half("'")?)?)
}

pub fn write_two_term(s: &TwoTermStructure) -> Document {
    let mut w = Writer::new(Kind::TwoTerm, &[s.dim_m1, s.dim_0]);
    for (h, p) in [(&s.first, ""), (&s.second, "'")] {
        w.put(&format!("l1{p}"), &h.l1);
        w.put(&format!("l2_00{p}"), &h.l2_00);
        w.put(&format!("l2_0m1{p}"), &h.l2_0m1);
        w.put(&format!("l3{p}"), &h.l3);
    }
    w.doc
}

pub fn read_crossed(doc: &Document) -> Result<CrossedModule> {
    let r = Reader::new(doc, Kind::CrossedModule)?;
    Ok(CrossedModule {
        g: r.lie("bracket_g", "bracket_g'", "g")?,
        h: r.lie("bracket_h", "bracket_h'", "h")?,
        t: r.t("t")?,
        t2: r.t("t'")?,
        alpha: r.t("alpha")?,
        alpha2: r.t("alpha'")?,
    })
}

pub fn write_crossed(c: &CrossedModule) -> Document {
    let mut w = Writer::new(Kind::CrossedModule, &[c.g.dim(), c.h.dim()]);
    w.put("bracket_g", &map_to_tensor(&c.g.bracket));
    w.put("bracket_g'", &map_to_tensor(&c.g.bracket2));
    w.put("bracket_h", &map_to_tensor(&c.h.bracket));
    w.put("bracket_h'", &map_to_tensor(&c.h.bracket2));
    w.put("t", &c.t);
    w.put("t'", &c.t2);
    w.put("alpha", &c.alpha);
    w.put("alpha'", &c.alpha2);
    w.doc
}

pub fn read_triple(doc: &Document) -> Result<SkeletalTriple> {
    let r = Reader::new(doc, Kind::SkeletalTriple)?;
    let g = r.lie("bracket", "bracket'", "g")?;
    let rep = r.rep(&g)?;
    let theta = tensor_to_map(&r.t("theta")?, &g.space, &rep.space, Skew)?;
    let theta2 = tensor_to_map(&r.t("theta'")?, &g.space, &rep.space, Skew)?;
    Ok(SkeletalTriple { g, rep, theta, theta2 })
}

pub fn write_triple(t: &SkeletalTriple) -> Document {
    let mut w = Writer::new(Kind::SkeletalTriple, &[t.g.dim(), t.rep.dim()]);
    w.put("bracket", &map_to_tensor(&t.g.bracket));
    w.put("bracket'", &map_to_tensor(&t.g.bracket2));
    w.put("action", &t.rep.action);
    w.put("action'", &t.rep.action2);
    w.put("theta", &map_to_tensor(&t.theta));
    w.put("theta'", &map_to_tensor(&t.theta2));
    w.doc
}

pub fn read_lie2(doc: &Document) -> Result<LieTwoData> {
    let r = Reader::new(doc, Kind::Lie2)?;
    Ok(LieTwoData {
        c0: r.dim("C0")?,
        c1: r.dim("C1")?,
        s: r.t("s")?,
        t: r.t("t")?,
        i: r.t("i")?,
        bracket0: r.t("bracket0")?,
        bracket1: r.t("bracket1")?,
        bracket0_2: r.t("bracket0'")?,
        bracket1_2: r.t("bracket1'")?,
        j: r.t("J")?,
        j2: r.t("J'")?,
        jc: r.t("Jc")?,
    })
}

pub fn write_lie2(d: &LieTwoData) -> Document {
    let mut w = Writer::new(Kind::Lie2, &[d.c0, d.c1]);
    for (n, t) in [
        ("s", &d.s),
        ("t", &d.t),
        ("i", &d.i),
        ("bracket0", &d.bracket0),
        ("bracket0'", &d.bracket0_2),
        ("bracket1", &d.bracket1),
        ("bracket1'", &d.bracket1_2),
        ("J", &d.j),
        ("J'", &d.j2),
        ("Jc", &d.jc),
    ] {
        w.put(n, t);
    }
    w.doc
}

/// A compatible Lie algebra and a representation; without a space `V` the
/// one-dimensional trivial representation is used.
pub fn read_lie_pair(doc: &Document) -> Result<(CompatibleLieAlgebra, CompatibleRep)> {
    let kind = if doc.kind == Kind::RotaBaxter { Kind::RotaBaxter } else { Kind::LiePair };
    let r = Reader::new(doc, kind)?;
    let g = r.lie("bracket", "bracket'", "g")?;
    let rep = if doc.space("V").is_some() {
        r.rep(&g)?
    } else if doc.map("action").is_some() || doc.map("action'").is_some() {
        return bad("an action needs a space \"V\"");
    } else {
        CompatibleRep::trivial(&g, 1)
    };
    Ok((g, rep))
}

pub fn write_lie_pair(kind: Kind, g: &CompatibleLieAlgebra, rep: Option<&CompatibleRep>) -> Document {
    let dims = match rep {
        Some(r) => vec![g.dim(), r.dim()],
        None => vec![g.dim()],
    };
    let mut w = Writer::new(kind, &dims);
    w.put("bracket", &map_to_tensor(&g.bracket));
    w.put("bracket'", &map_to_tensor(&g.bracket2));
    if let Some(r) = rep {
        w.put("action", &r.action);
        w.put("action'", &r.action2);
    }
    w.doc
}

pub fn read_candidate(doc: &Document) -> Result<RbCandidate> {
    let r = Reader::new(doc, Kind::RbCandidate)?;
    Ok(RbCandidate { r: r.t("R")? })
}

pub fn write_candidate(dim_g: usize, dim_v: usize, c: &RbCandidate) -> Document {
    let mut w = Writer::new(Kind::RbCandidate, &[dim_g, dim_v]);
    w.put("R", &c.r);
    w.doc
}

// ---------------------------------------------------------------------------
// homotopy pairs: maps `l<k>` / `l<k>'` (or `m<k>`), deformation terms `@<i>`

fn flavor_prefix(kind: Kind) -> Result<(Flavor, &'static str)> {
    match kind {
        Kind::LinftyPair => Ok((Flavor::Linfty, "l")),
        Kind::AinftyPair => Ok((Flavor::Ainfty, "m")),
        k => bad(format!("expected a linfty-pair or ainfty-pair document, got {k}")),
    }
}

/// `(arity, primed, term)` from a map name such as `l2'@1`.
fn parse_op_name(name: &str, prefix: &str) -> Option<(usize, bool, usize)> {
    let rest = name.strip_prefix(prefix)?;
    let (head, term) = match rest.split_once('@') {
        Some((h, t)) => {
            let t: usize = t.parse().ok()?;
            if t == 0 || t.to_string() != rest.split_once('@').unwrap().1 {
                return None;
            }
            (h, t)
        }
        None => (rest, 0),
    };
    let (digits, primed) = match head.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (head, false),
    };
    let k: usize = digits.parse().ok()?;
    (k >= 1 && k.to_string() == digits).then_some((k, primed, term))
}

pub struct HomotopyDoc {
    pub pair: CompatiblePair,
    /// `terms[i]` is the `t^{i+1}` coefficient, as a pair of structures.
    pub terms: Vec<CompatiblePair>,
}

impl HomotopyDoc {
    pub fn coder_terms(&self) -> Result<Vec<CoderTuple>> {
        self.terms
            .iter()
            .map(|p| Ok(CoderTuple::pair(&to_coder(&p.first)?, &to_coder(&p.second)?)?))
            .collect()
    }
}

pub fn read_homotopy(doc: &Document) -> Result<HomotopyDoc> {
    let (flavor, prefix) = flavor_prefix(doc.kind)?;
    if doc.spaces.len() != 1 {
        return bad(format!("a {} document has exactly one space", doc.kind));
    }
    let space = doc.spaces[0].1.clone();
    let sym = flavor.symmetry();
    let mut slots: Vec<[Vec<MultiMap>; 2]> = vec![[Vec::new(), Vec::new()]];
    for m in &doc.maps {
        let Some((k, primed, term)) = parse_op_name(&m.name, prefix) else {
            return bad(format!("unexpected map {:?}; expected {prefix}<k>, {prefix}<k>' or {prefix}<k>@<i>", m.name));
        };
        if m.arity != k {
            return bad(format!("map {:?} has arity {}, expected {k}", m.name, m.arity));
        }
        if m.symmetry != sym {
            return bad(format!("map {:?} must be {}", m.name, sym.name()));
        }
        let mut op = MultiMap::new(space.clone(), space.clone(), k, m.degree, m.symmetry);
        for e in &m.entries {
            op.add_entry(&e.input, &e.output)?;
        }
        if slots.len() <= term {
            slots.resize(term + 1, [Vec::new(), Vec::new()]);
        }
        slots[term][primed as usize].push(op);
    }
    let mut pairs = slots.into_iter().map(|[a, b]| {
        Ok(CompatiblePair::new(HomotopyStructure::from_ops(&space, flavor, a)?, HomotopyStructure::from_ops(&space, flavor, b)?)?)
    });
    let pair = pairs.next().unwrap()?;
    let terms = pairs.collect::<Result<Vec<_>>>()?;
    Ok(HomotopyDoc { pair, terms })
}

pub fn write_homotopy(kind: Kind, space_name: &str, h: &HomotopyDoc) -> Result<Document> {
    let (_, prefix) = flavor_prefix(kind)?;
    let mut doc = Document::new(kind);
    doc.spaces.push((space_name.to_string(), h.pair.space().clone()));
    let all = std::iter::once(&h.pair).chain(&h.terms).enumerate();
    for (term, p) in all {
        for (s, mark) in [(&p.first, ""), (&p.second, "'")] {
            for (k, op) in s.ops() {
                let at = if term == 0 { String::new() } else { format!("@{term}") };
                doc.maps.push(MapSpec {
                    name: format!("{prefix}{k}{mark}{at}"),
                    domain: Domain::Implicit,
                    codomain: None,
                    arity: *k,
                    degree: op.degree(),
                    symmetry: op.symmetry(),
                    entries: op.entries().iter().map(|(i, o)| Entry { input: i.clone(), output: o.clone() }).collect(),
                });
            }
        }
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_names() {
        assert_eq!(parse_op_name("l2", "l"), Some((2, false, 0)));
        assert_eq!(parse_op_name("l3'@2", "l"), Some((3, true, 2)));
        assert_eq!(parse_op_name("l0", "l"), None);
        assert_eq!(parse_op_name("l02", "l"), None);
        assert_eq!(parse_op_name("l2@0", "l"), None);
        assert_eq!(parse_op_name("m2", "l"), None);
    }
}
