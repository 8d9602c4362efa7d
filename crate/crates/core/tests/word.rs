use std::sync::Arc;

use raagpal::graph::fixtures;
use raagpal::*;

fn w(g: &Arc<SimplicialGraph>, s: &str) -> GroupWord {
    GroupWord::parse(g, s).unwrap()
}

fn path() -> Arc<SimplicialGraph> {
    Arc::new(fixtures::path())
}

fn edgeless() -> Arc<SimplicialGraph> {
    Arc::new(fixtures::edgeless())
}

fn triangle() -> Arc<SimplicialGraph> {
    Arc::new(fixtures::triangle())
}

#[test]
fn reduce_examples() {
    let p = path();
    assert!(w(&p, "a a^-1").is_empty());
    assert_eq!(w(&p, "b a b^-1").to_string(), "a");
    assert_eq!(w(&p, "c a").to_string(), "c a");
    assert_eq!(w(&p, "b a").to_string(), "a b");
    assert!(matches!(
        GroupWord::parse(&p, "a q"),
        Err(Error::UnknownVertex(_))
    ));
}

#[test]
fn equality_examples() {
    let p = path();
    assert!(w(&p, "a b").equal(&w(&p, "b a")).unwrap());
    assert!(!w(&p, "a c").equal(&w(&p, "c a")).unwrap());
    let e = edgeless();
    assert_eq!(w(&p, "a").equal(&w(&e, "x")), Err(Error::GraphMismatch));
}

#[test]
fn text_format() {
    let p = path();
    assert_eq!(w(&p, "1").to_string(), "1");
    assert_eq!(w(&p, "a^3 c^-2").to_string(), "a^3 c^-2");
    assert_eq!(w(&p, "a^-1 a^-1").to_string(), "a^-2");
    assert!(GroupWord::parse(&p, "a^0").is_err());
    assert!(GroupWord::parse(&p, "a^x").is_err());
}

#[test]
fn reverse_examples() {
    let e = edgeless();
    assert_eq!(w(&e, "x y z").reverse(), w(&e, "z y x"));
    assert!(w(&e, "1").reverse().is_empty());
    assert_eq!(w(&e, "x y x").reverse(), w(&e, "x y x"));
}

#[test]
fn reverse_invariance_examples() {
    let p = path();
    assert!(w(&p, "a b").is_reverse_invariant());
    assert!(!w(&p, "a c").is_reverse_invariant());
    assert!(w(&edgeless(), "x y x").is_reverse_invariant());
}

#[test]
fn palindrome_examples() {
    let p = path();
    assert!(!w(&p, "a b").is_palindrome());
    assert!(w(&p, "b a b").is_palindrome());
    assert!(!w(&triangle(), "p q").is_palindrome());
    assert!(w(&triangle(), "p q^2").is_palindrome());
    assert!(w(&p, "1").is_palindrome());
}

#[test]
fn palindromic_representative_is_literal() {
    let p = path();
    let word = w(&p, "a c b^2 c a");
    let rep = word.palindromic_representative().unwrap();
    let rev: Vec<Letter> = rep.iter().rev().copied().collect();
    assert_eq!(rep, rev);
    assert_eq!(GroupWord::new(&p, &rep).unwrap(), word);
}

#[test]
fn support_examples() {
    let p = path();
    let (s, l, e) = w(&p, "b a b^-1").support_length_exponents();
    assert_eq!(p.set_names(s), ["a"]);
    assert_eq!(l, 1);
    assert_eq!(e, vec![1, 0, 0]);
    let (s, l, e) = w(&p, "1").support_length_exponents();
    assert!(s.is_empty());
    assert_eq!((l, e), (0, vec![0, 0, 0]));
    let (s, l, e) = w(&p, "a c a").support_length_exponents();
    assert_eq!(p.set_names(s), ["a", "c"]);
    assert_eq!((l, e), (3, vec![2, 0, 1]));
}

#[test]
fn cyclic_reduction_examples() {
    let e = edgeless();
    let (c, core) = w(&e, "y x y^-1").cyclically_reduce();
    assert_eq!((c.to_string(), core.to_string()), ("y".into(), "x".into()));
    let p = path();
    let (c, core) = w(&p, "a c").cyclically_reduce();
    assert!(c.is_empty());
    assert_eq!(core, w(&p, "a c"));
    let (c, core) = w(&p, "a").cyclically_reduce();
    assert!(c.is_empty());
    assert_eq!(core, w(&p, "a"));
    // conjugator may shuffle past commuting letters
    let (c, core) = w(&p, "a b c a^-1").cyclically_reduce();
    assert_eq!(c, w(&p, "a"));
    assert_eq!(core, w(&p, "b c"));
    let (c, core) = w(&e, "y x z x^-1 y^-1").cyclically_reduce();
    assert_eq!(c, w(&e, "y x"));
    assert_eq!(core, w(&e, "z"));
}

#[test]
fn basic_form_examples() {
    let p = path();
    let bf = w(&p, "a b").basic_form().unwrap();
    assert_eq!(bf.factors, vec![(w(&p, "a"), 1), (w(&p, "b"), 1)]);
    let bf = w(&p, "a c").basic_form().unwrap();
    assert_eq!(bf.factors, vec![(w(&p, "a c"), 1)]);
    let e = edgeless();
    let bf = w(&e, "x x").basic_form().unwrap();
    assert_eq!(bf.factors, vec![(w(&e, "x"), 2)]);
    let bf = w(&e, "x^-1 y^-1 x^-1 y^-1").basic_form().unwrap();
    assert_eq!(bf.factors, vec![(w(&e, "x^-1 y^-1"), 2)]);
    assert_eq!(bf.core(), w(&e, "x^-1 y^-1 x^-1 y^-1"));
    // root hidden behind a shuffle: (a c b)^2 = a c a c b^2
    let bf = w(&p, "a c a c b^2").basic_form().unwrap();
    assert_eq!(bf.factors, vec![(w(&p, "a c"), 2), (w(&p, "b"), 2)]);
}

#[test]
fn rank_examples() {
    let p = path();
    let c = w(&p, "b").rank_and_centralizer().unwrap();
    assert_eq!(c.rank, 3);
    assert_eq!(c.factors, vec![w(&p, "b")]);
    assert_eq!(p.set_names(c.link), ["a", "c"]);
    let c = w(&p, "a c").rank_and_centralizer().unwrap();
    assert_eq!(c.rank, 2);
    assert_eq!(p.set_names(c.link), ["b"]);
    let e = edgeless();
    let c = w(&e, "x").rank_and_centralizer().unwrap();
    assert_eq!(c.rank, 1);
    assert!(c.link.is_empty());
    assert_eq!(w(&e, "1").rank_and_centralizer(), Err(Error::EmptyWord));
}

#[test]
fn cpnf_examples() {
    let p = path();
    let f = w(&p, "a c b c a").clique_palindromic_form().unwrap();
    assert_eq!(f.pieces, vec![w(&p, "a"), w(&p, "c b c")]);
    let k = triangle();
    let f = w(&k, "p q r").clique_palindromic_form().unwrap();
    assert_eq!(f.pieces, vec![w(&k, "p q r")]);
    let e = edgeless();
    let f = w(&e, "x y x").clique_palindromic_form().unwrap();
    assert_eq!(f.pieces, vec![w(&e, "x"), w(&e, "y")]);
    let f = w(&e, "x x y x x").clique_palindromic_form().unwrap();
    assert_eq!(f.pieces, vec![w(&e, "x^2"), w(&e, "y")]);
    assert_eq!(
        w(&p, "a c").clique_palindromic_form(),
        Err(Error::NotReverseInvariant)
    );
}
