use std::sync::Arc;

use raagpal::aut::*;
use raagpal::graph::fixtures;
use raagpal::matrix::{phi, IntegerMatrix};
use raagpal::*;

fn path() -> Arc<SimplicialGraph> {
    Arc::new(fixtures::path())
}

fn gens(g: &Arc<SimplicialGraph>, text: &str) -> Automorphism {
    Automorphism::parse_generators(g, text).unwrap()
}

fn w(g: &Arc<SimplicialGraph>, s: &str) -> GroupWord {
    GroupWord::parse(g, s).unwrap()
}

#[test]
fn make_generator_examples() {
    let g = path();
    let (a, b, c) = (0, 1, 2);
    let pab = Automorphism::generator(&g, GeneratorSymbol::ElemPalindromic(a, b)).unwrap();
    assert_eq!(pab.image(a), w(&g, "b a b"));
    assert_eq!(pab.image(b), w(&g, "b"));
    assert_eq!(pab.image(c), w(&g, "c"));
    let err = Automorphism::generator(&g, GeneratorSymbol::Transvection(b, a)).unwrap_err();
    assert!(matches!(err, Error::IllegalGenerator { .. }), "{err:?}");
    let gamma = gens(&g, "pc(a;c)");
    assert_eq!(gamma.image(c), w(&g, "a c a^-1"));
    assert!(Automorphism::generator(
        &g,
        GeneratorSymbol::PartialConjugation(a, VertexSet::singleton(b))
    )
    .is_err());
    assert!(Automorphism::generator(&g, GeneratorSymbol::Diagram(vec![1, 0, 2])).is_err());
}

#[test]
fn iota_examples() {
    let g = path();
    let i = iota(&g);
    assert!(i.compose(&i).unwrap().is_identity());
    assert_eq!(phi(&i), IntegerMatrix::identity(3).scale(-1));
    assert_eq!(i.image(0), w(&g, "a^-1"));
}

#[test]
fn compose_examples() {
    let g = path();
    let ia = gens(&g, "inv(a)");
    assert!(ia.compose(&ia).unwrap().is_identity());
    let it = iota(&g).compose(&gens(&g, "tau(a,b)")).unwrap();
    let sq = it.compose(&it).unwrap();
    assert_eq!(sq, gens(&g, "P(a,b)"));
    assert_eq!(sq.image(0), w(&g, "b a b"));
    let alpha = gens(&g, "P(a,b) tau(c,b)");
    assert_eq!(alpha.compose(&Automorphism::identity(&g)).unwrap(), alpha);
    let e = Arc::new(fixtures::edgeless());
    assert_eq!(
        alpha.compose(&Automorphism::identity(&e)),
        Err(Error::GraphMismatch)
    );
}

#[test]
fn apply_examples() {
    let g = path();
    assert_eq!(
        gens(&g, "P(a,b)").apply(&w(&g, "a")).unwrap(),
        w(&g, "b a b")
    );
    assert!(gens(&g, "P(a,b)").apply(&w(&g, "1")).unwrap().is_empty());
    let gamma = gens(&g, "pc(a;c)");
    assert_eq!(gamma.apply(&w(&g, "c c")).unwrap(), w(&g, "a c c a^-1"));
}

#[test]
fn invert_examples() {
    let g = path();
    let pab = gens(&g, "P(a,b)");
    let inv = pab.inverse().unwrap();
    assert_eq!(inv.image(0), w(&g, "b^-1 a b^-1"));
    assert!(inv.compose(&pab).unwrap().is_identity());
    assert!(pab.compose(&inv).unwrap().is_identity());
    assert!(Automorphism::identity(&g).inverse().unwrap().is_identity());
    // a non-adjacent transvection without provenance is outside the centraliser
    let raw = gens(&g, "tau(a,c)").without_provenance();
    assert_eq!(raw.inverse(), Err(Error::NoProvenance));
    for text in ["tau(a,b)", "tau(a,c)", "pc(a;c)", "diag(a:c,c:a)", "P(c,a)"] {
        let x = gens(&g, text);
        assert!(
            x.compose(&x.inverse().unwrap()).unwrap().is_identity(),
            "{text}"
        );
    }
}

#[test]
fn inverse_without_provenance_via_factorization() {
    let g = path();
    let alpha = gens(&g, "P(a,b) inv(c) tau(c,b) diag(a:c,c:a)");
    let raw = alpha.clone().without_provenance();
    let inv = raw.inverse().unwrap();
    assert!(inv.compose(&alpha).unwrap().is_identity());
}

#[test]
fn predicate_examples() {
    let g = path();
    let p = gens(&g, "P(a,b)").predicates();
    assert!(p.in_ciota && p.is_palindromic && p.is_pure && !p.is_torelli);
    assert!(p.pure_by_middle_letter);
    assert!(!p.is_simple);
    assert_eq!(p.non_simple_vertices, ["a"]);
    let t = gens(&g, "tau(a,b)").predicates();
    assert!(t.in_ciota && !t.is_palindromic && !t.is_pure);
    let id = Automorphism::identity(&g).predicates();
    assert!(id.in_ciota && id.is_palindromic && id.is_pure && id.is_torelli && id.is_simple);
    let pc = gens(&g, "pc(a;c)").predicates();
    assert!(!pc.in_ciota);
}

#[test]
fn split_examples() {
    let e = Arc::new(fixtures::edgeless());
    let images = vec![w(&e, "x y x"), w(&e, "x"), w(&e, "z")];
    let alpha = Automorphism::from_images(&e, images).unwrap();
    let (delta, gamma) = alpha.split_diagram_pure().unwrap();
    assert_eq!(delta, gens(&e, "diag(x:y,y:x)"));
    assert_eq!(gamma.image(0), w(&e, "y x y"));
    assert_eq!(delta.compose(&gamma).unwrap(), alpha);
    assert!(gamma.predicates().is_pure);

    let g = path();
    let pure = gens(&g, "P(a,b) inv(c)");
    let (d, gm) = pure.split_diagram_pure().unwrap();
    assert!(d.is_identity());
    assert_eq!(gm, pure);
    let diag = gens(&g, "diag(a:c,c:a)");
    let (d, gm) = diag.split_diagram_pure().unwrap();
    assert_eq!(d, diag);
    assert!(gm.is_identity());
    assert_eq!(
        gens(&g, "tau(a,b)").split_diagram_pure().unwrap_err(),
        Error::NotPalindromic
    );
}

#[test]
fn chi_examples() {
    let e = Arc::new(fixtures::edgeless());
    let c1 = chi1(&e, 0, 1, 2).unwrap();
    assert!(phi(&c1).is_identity());
    assert!(!c1.is_identity());
    assert_ne!(c1.apply(&w(&e, "x")).unwrap(), w(&e, "x"));
    let k = Arc::new(fixtures::triangle());
    assert!(chi2(&k, 0, 1, 2).unwrap().is_identity());
    let c2 = chi2(&e, 0, 1, 2).unwrap();
    assert!(phi(&c2).is_identity());
    assert!(c2.predicates().is_torelli);
    let g = path();
    // b is not dominated by a
    assert!(matches!(
        chi1(&g, 1, 0, 2),
        Err(Error::IllegalGenerator { .. })
    ));
    assert!(matches!(
        chi2(&g, 0, 1, 2),
        Err(Error::IllegalGenerator { .. })
    ));
}

#[test]
fn json_forms() {
    let g = path();
    let a = Automorphism::from_json_str(&g, r#"{"images":{"a":"b a b","b":"b","c":"c"}}"#).unwrap();
    assert_eq!(a, gens(&g, "P(a,b)"));
    assert!(a.provenance().is_none());
    let b = Automorphism::from_json_str(
        &g,
        r#"{"generators":"P(a,b) inv(c) tau(a,c)^-1 pc(a;c) diag(a:c,c:a)"}"#,
    )
    .unwrap();
    assert_eq!(b.provenance().unwrap().len(), 5);
    let again = Automorphism::from_json(&g, &b.to_json()).unwrap();
    assert_eq!(again, b);
    // a map that breaks the relation ab = ba
    let bad = Automorphism::from_json_str(&g, r#"{"images":{"a":"c","b":"a"}}"#);
    assert!(matches!(bad, Err(Error::NotEndomorphism(_))));
}
