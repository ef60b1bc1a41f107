use std::path::PathBuf;

use compat_linf::testkit::Gen;
use compat_linf::twoterm::{phi, skeletal_to_triple, strict_to_crossed};
use compat_linf_cli::document::{Document, LoadError};
use compat_linf_cli::model::{
    read_crossed, read_homotopy, read_lie2, read_lie_pair, read_triple, read_two_term, write_crossed, write_homotopy, write_lie2,
    write_lie_pair, write_triple, write_two_term, HomotopyDoc,
};
use compat_linf_cli::document::Kind;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn schema_errors(text: &str) -> Vec<(String, String)> {
    match Document::from_str(text) {
        Err(LoadError::Schema(es)) => es.into_iter().map(|e| (e.pointer, e.message)).collect(),
        other => panic!("expected schema errors, got {other:?}"),
    }
}

const VALID: [&str; 10] =
    ["minimal", "a1-pair", "non-lie-pair", "abelian-1", "abelian-2", "a1-lie", "a1-rota", "rb-zero", "rb-identity", "strict-a1"];

#[test]
fn fixtures_round_trip_bit_exactly() {
    for name in VALID {
        let text = std::fs::read_to_string(fixtures().join(format!("{name}.json"))).unwrap();
        let doc = Document::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(doc.to_string(), text, "{name}");
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.json");
        doc.save(&p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), text, "{name}");
        assert_eq!(Document::load(&p).unwrap(), doc);
    }
}

fn reload(d: &Document) -> Document {
    let text = d.to_string();
    let back = Document::from_str(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(back.to_string(), text);
    back
}

#[test]
fn writers_round_trip() {
    let mut g = Gen::new(61);
    for _ in 0..10 {
        let s = g.two_term();
        assert_eq!(read_two_term(&reload(&write_two_term(&s))).unwrap(), s);
        let d = phi(&s).unwrap();
        assert_eq!(read_lie2(&reload(&write_lie2(&d))).unwrap(), d);
        let p = g.pair_from(&s);
        let h = HomotopyDoc { pair: p.clone(), terms: vec![p.clone()] };
        let back = read_homotopy(&reload(&write_homotopy(Kind::LinftyPair, "L", &h).unwrap())).unwrap();
        assert_eq!(back.pair.first.ops(), p.first.ops());
        assert_eq!(back.pair.second.ops(), p.second.ops());
        assert_eq!(back.terms.len(), 1);
        assert_eq!(back.terms[0].second.ops(), p.second.ops());
    }
    for _ in 0..5 {
        let c = strict_to_crossed(&g.strict()).unwrap();
        assert_eq!(read_crossed(&reload(&write_crossed(&c))).unwrap(), c);
        let t = skeletal_to_triple(&g.skeletal()).unwrap();
        assert_eq!(read_triple(&reload(&write_triple(&t))).unwrap(), t);
        let alg = g.compatible_lie(3);
        let rep = g.rep(&alg, 2);
        let (a, r) = read_lie_pair(&reload(&write_lie_pair(Kind::LiePair, &alg, Some(&rep)))).unwrap();
        assert_eq!((a, r), (alg, rep));
    }
}

#[test]
fn fixture_errors_name_the_entry() {
    let zero = std::fs::read_to_string(fixtures().join("zero-denominator.json")).unwrap();
    let es = schema_errors(&zero);
    assert_eq!(es.len(), 1);
    assert_eq!(es[0].0, "/maps/0/entries/0/out/0,0");
    assert!(es[0].1.contains("zero denominator"), "{}", es[0].1);

    let deg = std::fs::read_to_string(fixtures().join("bad-degree.json")).unwrap();
    let es = schema_errors(&deg);
    assert!(es[0].0.starts_with("/maps/0/entries/0"));
    assert!(es[0].1.contains("entry 0 of map \"l2\""), "{}", es[0].1);

    let order = std::fs::read_to_string(fixtures().join("bad-order.json")).unwrap();
    let es = schema_errors(&order);
    assert_eq!(es[0].0, "/maps/0/entries/0/in");
    assert!(es[0].1.contains("non-canonical"));
}

#[test]
fn top_level_schema_errors() {
    let es = schema_errors(r#"{"version": "2", "kind": "linfty-pair", "spaces": {"L": {"degrees": {"0": 1}}}}"#);
    assert_eq!(es[0].0, "/version");
    let es = schema_errors(r#"{"version": "1", "kind": "nope", "spaces": {"L": {"degrees": {"0": 1}}}}"#);
    assert_eq!(es[0].0, "/kind");
    let es = schema_errors(r#"{"version": "1", "kind": "linfty-pair", "spaces": {}}"#);
    assert_eq!(es[0].0, "/spaces");
    let es = schema_errors(r#"{"version": "1", "kind": "linfty-pair", "spaces": {"L": {"degrees": {"0": 1}}}, "extra": 1}"#);
    assert!(es.iter().any(|(p, _)| p == "/extra" || p.is_empty()), "{es:?}");
    // keys must come in the canonical order
    let es = schema_errors(r#"{"kind": "linfty-pair", "version": "1", "spaces": {"L": {"degrees": {"0": 1}}}}"#);
    assert!(!es.is_empty());
    assert!(matches!(Document::from_str("{"), Err(LoadError::Parse(_))));
    assert!(matches!(Document::load(&fixtures().join("missing.json")), Err(LoadError::Io(_))));
}

#[test]
fn scalars_keep_their_spelling() {
    let text = r#"{
  "version": "1",
  "kind": "linfty-pair",
  "spaces": {
    "L": {
      "degrees": {
        "0": 2
      }
    }
  },
  "maps": [
    {
      "name": "l1",
      "arity": 1,
      "degree": 1,
      "symmetry": "skew",
      "entries": []
    },
    {
      "name": "l2",
      "arity": 2,
      "degree": 0,
      "symmetry": "skew",
      "entries": [
        {
          "in": [
            [
              0,
              0
            ],
            [
              0,
              1
            ]
          ],
          "out": {
            "0,0": "-3/4",
            "0,1": "5"
          }
        }
      ]
    }
  ]
}
"#;
    let doc = Document::from_str(text).unwrap();
    assert_eq!(doc.to_string(), text);
    // "2/4" is not in lowest terms
    assert!(Document::from_str(&text.replace("-3/4", "2/4")).is_err());
    assert!(Document::from_str(&text.replace("-3/4", "0")).is_err());
    assert!(Document::from_str(&text.replace("-3/4", "+3")).is_err());
}
