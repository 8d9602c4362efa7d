use raagpal::graph::fixtures::*;
use raagpal::graph::*;
use raagpal::*;

fn names(g: &SimplicialGraph, s: VertexSet) -> Vec<String> {
    g.set_names(s)
}

#[test]
fn neighborhoods() {
    let p = path();
    assert_eq!(names(&p, p.neighborhood(1, Neighborhood::Link)), ["a", "c"]);
    let e = edgeless();
    assert!(e.neighborhood(0, Neighborhood::Link).is_empty());
    let k = triangle();
    assert_eq!(
        names(&k, k.neighborhood(0, Neighborhood::Star)),
        ["p", "q", "r"]
    );
    assert_eq!(p.vertex("zz"), Err(Error::UnknownVertex("zz".into())));
}

#[test]
fn domination_examples() {
    let p = path();
    let (a, b) = (p.vertex("a").unwrap(), p.vertex("b").unwrap());
    assert!(p.dominates(a, b));
    assert!(!p.dominates(b, a));
    let e = edgeless();
    assert!(e.dominates(0, 1));
}

#[test]
fn domination_classes() {
    let p = path();
    let dd = p.domination();
    assert_eq!(dd.classes.len(), 2);
    assert_eq!(names(&p, dd.classes[0]), ["a", "c"]);
    assert_eq!(names(&p, dd.classes[1]), ["b"]);
    assert_eq!(dd.class_kind[0], ClassKind::Free);
    let order: Vec<&str> = dd.vertex_order.iter().map(|&v| p.name(v)).collect();
    assert_eq!(order, ["a", "c", "b"]);

    let k = triangle();
    assert_eq!(k.domination().classes.len(), 1);
    assert_eq!(k.domination().class_kind[0], ClassKind::Abelian);
    assert_eq!(k.domination().adj_classes.len(), 1);

    let e = edgeless();
    assert_eq!(e.domination().classes.len(), 1);
    assert_eq!(e.domination().class_kind[0], ClassKind::Free);
    assert_eq!(e.domination().adj_classes.len(), 3);
}

#[test]
fn adjacent_domination() {
    assert!(path().has_adjacent_domination());
    assert!(!edgeless().has_adjacent_domination());
    assert!(triangle().has_adjacent_domination());
    assert!(!square().has_adjacent_domination());
    assert!(square_diagonal().has_adjacent_domination());
}

#[test]
fn star_components() {
    let p = path();
    let comps = p.components_excluding_star(p.vertex("a").unwrap());
    assert_eq!(comps.len(), 1);
    assert_eq!(names(&p, comps[0]), ["c"]);
    assert!(p
        .components_excluding_star(p.vertex("b").unwrap())
        .is_empty());
    let e = edgeless();
    let comps = e.components_excluding_star(0);
    assert_eq!(comps.len(), 2);
    assert_eq!(names(&e, comps[0]), ["y"]);
    assert_eq!(names(&e, comps[1]), ["z"]);
}

#[test]
fn complement_components_examples() {
    let p = path();
    let ac = p.vertex_set(&["a", "c"]).unwrap();
    assert_eq!(p.complement_components(ac), vec![ac]);
    let ab = p.vertex_set(&["a", "b"]).unwrap();
    assert_eq!(p.complement_components(ab).len(), 2);
    let k = triangle();
    assert_eq!(k.complement_components(k.vertices()).len(), 3);
}

#[test]
fn gamma_partitions() {
    let e = edgeless();
    let gp = e.gamma_v_partition(0);
    assert_eq!(gp.gamma, e.vertices());
    assert_eq!(gp.xv, e.vertices());
    assert!(gp.factors.is_empty());

    let p = path();
    let gp = p.gamma_v_partition(p.vertex("a").unwrap());
    assert_eq!(names(&p, gp.gamma), ["a", "c"]);
    assert_eq!(names(&p, gp.xv), ["a", "c"]);
    assert!(gp.factors.is_empty());

    let k = triangle();
    let gp = k.gamma_v_partition(0);
    assert_eq!(names(&k, gp.gamma), ["p"]);
    assert_eq!(names(&k, gp.xv), ["p"]);
}

#[test]
fn gamma_partition_with_factor() {
    // u is dominated by the non-adjacent pair s - t, which is not dominated by u.
    let g = SimplicialGraph::new(&["u", "s", "t"], &[("s", "t")]).unwrap();
    let gp = g.gamma_v_partition(0);
    assert_eq!(gp.gamma, g.vertices());
    assert_eq!(names(&g, gp.xv), ["u"]);
    assert_eq!(gp.factors.len(), 1);
    assert_eq!(names(&g, gp.factors[0]), ["s", "t"]);
}

#[test]
fn automorphism_groups() {
    let p = path();
    let auts = p.graph_automorphisms(DEFAULT_AUTOMORPHISM_BOUND).unwrap();
    assert_eq!(auts.len(), 2);
    assert!(auts.contains(&vec![0, 1, 2]));
    assert!(auts.contains(&vec![2, 1, 0]));
    assert_eq!(edgeless().graph_automorphisms(8).unwrap().len(), 6);
    assert_eq!(triangle().graph_automorphisms(8).unwrap().len(), 6);
    assert_eq!(square().graph_automorphisms(8).unwrap().len(), 8);
    assert!(matches!(
        path().graph_automorphisms(2),
        Err(Error::SizeLimit { .. })
    ));
}

#[test]
fn rejects_bad_graphs() {
    assert!(SimplicialGraph::new(&["a", "a"], &[]).is_err());
    assert!(SimplicialGraph::new(&["a", "b"], &[("a", "a")]).is_err());
    assert!(SimplicialGraph::new(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
    assert!(SimplicialGraph::new(&["a", "b"], &[("a", "q")]).is_err());
    assert!(SimplicialGraph::new::<&str>(&["a b"], &[]).is_err());
    assert!(SimplicialGraph::new::<&str>(&["a^"], &[]).is_err());
    assert!(SimplicialGraph::new::<&str>(&[""], &[]).is_err());
}

#[test]
fn degenerate_graphs() {
    let empty = SimplicialGraph::new::<&str>(&[], &[]).unwrap();
    assert!(empty.domination().classes.is_empty());
    assert_eq!(
        empty.graph_automorphisms(8).unwrap(),
        vec![Vec::<usize>::new()]
    );
    let one = SimplicialGraph::new::<&str>(&["v"], &[]).unwrap();
    assert_eq!(one.domination().classes.len(), 1);
    assert!(one.components_excluding_star(0).is_empty());
}

#[test]
fn json_round_trip() {
    let text = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#;
    let g = SimplicialGraph::from_json_str(text).unwrap();
    assert_eq!(g, path());
    let again = SimplicialGraph::from_json(&g.to_json()).unwrap();
    assert_eq!(again, g);
}
