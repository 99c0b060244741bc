use conjlab::semigroup::permutations;
use conjlab::transform::*;
use conjlab::{Conjugacy, Relation, RelationKind};

fn pm(s: &str) -> PartialMap {
    s.parse().unwrap()
}

/// Isomorphism by trying every bijection between the vertex lists.
fn iso_oracle(a: &FunctionalDigraph, b: &FunctionalDigraph) -> bool {
    let (va, vb) = (a.vertices(), b.vertices());
    if va.len() != vb.len() {
        return false;
    }
    let ea = a.edges();
    let mut eb = b.edges();
    eb.sort_unstable();
    permutations(va.len()).iter().any(|p| {
        let mut img = vec![usize::MAX; a.n()];
        for (i, &v) in va.iter().enumerate() {
            img[v] = vb[p[i]];
        }
        let mut e: Vec<(usize, usize)> = ea.iter().map(|&(x, y)| (img[x], img[y])).collect();
        e.sort_unstable();
        e == eb
    })
}

fn all_partial(n: usize) -> Vec<PartialMap> {
    TransformationMonoid::build(TransformKind::Partial, n)
        .unwrap()
        .elements()
        .to_vec()
}

fn n_matrix(m: &TransformationMonoid) -> Relation {
    Conjugacy::new(m.table()).relation(RelationKind::N).unwrap()
}

fn check_decider(kind: TransformKind, n: usize) {
    let m = TransformationMonoid::build(kind.clone(), n).unwrap();
    let r = n_matrix(&m);
    let es = m.elements();
    for (i, a) in es.iter().enumerate() {
        for (j, b) in es.iter().enumerate() {
            assert_eq!(
                kind.conj_n(a, b).unwrap(),
                r.get(i, j),
                "{} {a} {b}",
                kind.name(n)
            );
        }
    }
}

#[test]
fn canonical_form_matches_isomorphism_oracle() {
    for n in 1..=3 {
        let maps = all_partial(n);
        for a in &maps {
            for b in &maps {
                let (ga, gb) = (a.digraph(), b.digraph());
                assert_eq!(ga.is_isomorphic(&gb), iso_oracle(&ga, &gb), "{a} {b}");
                let (pa, pb) = (ga.prune(), gb.prune());
                assert_eq!(pa.is_isomorphic(&pb), iso_oracle(&pa, &pb), "{a} {b}");
            }
        }
    }
}

#[test]
fn canonical_form_on_p4_against_permutation_conjugacy() {
    // for full digraphs with equal span sizes, Γ(α) ≅ Γ(β) iff some σ conjugates α to β
    let maps = all_partial(4);
    let perms = permutations(4);
    let forms: Vec<CanonicalForm> = maps.iter().map(|a| a.extended_digraph().canonical_form()).collect();
    let index: std::collections::HashMap<&PartialMap, usize> =
        maps.iter().enumerate().map(|(i, a)| (a, i)).collect();
    for (i, a) in maps.iter().enumerate() {
        let mut orbit = vec![false; maps.len()];
        for p in &perms {
            orbit[index[&a.relabel(p)]] = true;
        }
        for j in 0..maps.len() {
            assert_eq!(forms[i] == forms[j], orbit[j], "{a} {}", maps[j]);
        }
    }
}

#[test]
fn trim_iso_iff_prune_iso() {
    let maps = all_partial(4);
    let t: Vec<CanonicalForm> = maps.iter().map(|a| a.digraph().trim().canonical_form()).collect();
    let p: Vec<CanonicalForm> = maps.iter().map(|a| a.digraph().prune().canonical_form()).collect();
    for i in 0..maps.len() {
        for j in 0..maps.len() {
            assert_eq!(t[i] == t[j], p[i] == p[j]);
        }
    }
}

// Left digraph of the first figure with its upward ray cut off at vertex "3".
const FIG1: [(&str, Option<&str>); 22] = [
    ("1", Some("2")),
    ("2", Some("1")),
    ("4", Some("1")),
    ("5", Some("1")),
    ("4a", Some("4")),
    ("4b", Some("4")),
    ("4c", Some("4")),
    ("4aa", Some("4a")),
    ("4ab", Some("4a")),
    ("4ac", Some("4a")),
    ("4ca", Some("4c")),
    ("4cb", Some("4c")),
    ("4cc", Some("4c")),
    ("4cd", Some("4c")),
    ("3", None),
    ("6", Some("3")),
    ("7", Some("6")),
    ("8", Some("7")),
    ("9", Some("8")),
    ("8a", Some("8")),
    ("7a", Some("7")),
    ("7aa", Some("7a")),
];

fn fig1_index(name: &str) -> usize {
    FIG1.iter().position(|(v, _)| *v == name).unwrap()
}

fn fig1_sub(names: &[&str]) -> FunctionalDigraph {
    let vs: Vec<usize> = names.iter().map(|v| fig1_index(v)).collect();
    let es: Vec<(usize, usize)> = FIG1
        .iter()
        .filter(|(v, t)| names.contains(v) && t.map_or(false, |t| names.contains(&t)))
        .map(|(v, t)| (fig1_index(v), fig1_index(t.unwrap())))
        .collect();
    FunctionalDigraph::from_edges(FIG1.len(), &vs, &es).unwrap()
}

#[test]
fn fig1_trim_and_prune() {
    let img: Vec<Option<usize>> = FIG1.iter().map(|(_, t)| t.map(fig1_index)).collect();
    let g = PartialMap::new(&img).unwrap().digraph();
    assert_eq!(g.vertex_count(), 22);
    assert_eq!(g.initial_bundles().len(), 4);
    let prune = fig1_sub(&["1", "2", "4", "4a", "4c", "3", "6", "7", "8", "7a"]);
    assert!(g.prune().same_graph(&prune));
    let trim = fig1_sub(&[
        "1", "2", "4", "4a", "4c", "4aa", "4cd", "3", "6", "7", "8", "9", "7a", "7aa",
    ]);
    assert_eq!(g.trim().vertex_count(), 14);
    assert!(g.trim().is_isomorphic(&trim));
    let bundles: Vec<Vec<&str>> = g
        .initial_bundles()
        .iter()
        .map(|b| b.iter().map(|&v| FIG1[v].0).collect())
        .collect();
    assert!(bundles.contains(&vec!["4aa", "4ab", "4ac"]));
    assert!(bundles.contains(&vec!["9", "8a"]));
    assert!(bundles.contains(&vec!["7aa"]));
    let m = g.markers();
    assert!(m[fig1_index("5")].unwrap().initial && !m[fig1_index("5")].unwrap().bottom_initial);
    assert!(m[fig1_index("3")].unwrap().terminal);
}

#[test]
fn fig2_examples() {
    let a = pm("[4,4,4,5,5,6]");
    let b = pm("[3,4,4,4,5,5]");
    let d = pm("[2,2,4,5,5,5]");
    assert!(conj_n_on(&a, &b).unwrap());
    assert!(!conj_n_on(&a, &d).unwrap());
    assert!(conj_n_on(&a, &a).unwrap());
    // the unlabeled prunes of α and δ are isomorphic
    assert!(a.digraph().prune().is_isomorphic(&d.digraph().prune()));
    assert!(conj_n_full(&a, &b).unwrap());
    assert!(matches!(conj_n_on(&a, &pm("[2,1,3,4,5,6]")), Err(conjlab::Error::NotOrderPreserving)));
}

#[test]
fn small_examples() {
    assert!(conj_n_full(&pm("[1,1,1]"), &pm("[2,2,2]")).unwrap());
    let (a, b, g) = (pm("[2,-,-]"), pm("[-,3,-]"), pm("[1,-,-]"));
    assert!(conj_n_injective(&a, &b).unwrap());
    assert!(!conj_n_injective(&a, &g).unwrap());
    assert!(matches!(conj_n_injective(&a, &pm("[1,1,-]")), Err(conjlab::Error::NotInjective)));
    let y = [0, 1];
    assert!(conj_n_txy(&pm("[1,1,1,1]"), &pm("[2,2,2,2]"), &y).unwrap());
    assert!(conj_n_txy(&pm("[1,2,1,1]"), &pm("[1,2,2,2]"), &y).unwrap());
    // the bundle {4} of [1,1,1,2] misses Y
    assert!(!conj_n_txy(&pm("[1,1,1,2]"), &pm("[2,2,2,1]"), &y).unwrap());
    // same prune as [1,1,1,2], but the initial bundle {3,4} misses Y
    let g = pm("[1,1,2,2]");
    assert!(!conj_n_txy(&pm("[1,1,1,2]"), &g, &y).unwrap());
    assert!(matches!(conj_n_txy(&pm("[3,1,1,1]"), &g, &y), Err(conjlab::Error::ImageNotInY)));
}

#[test]
fn specialised_deciders_agree_with_generic() {
    for n in 1..=4 {
        check_decider(TransformKind::Full, n);
        check_decider(TransformKind::Injective, n);
        check_decider(TransformKind::OrderPreserving, n);
        check_decider(TransformKind::OrderPreservingInjective, n);
    }
    for n in 1..=3 {
        check_decider(TransformKind::Partial, n);
    }
    for n in 1..=3 {
        for mask in 1..(1usize << n) {
            let y: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            check_decider(TransformKind::ImageIn(y), n);
        }
    }
}

#[test]
fn oin_classes() {
    let m = TransformationMonoid::build(TransformKind::OrderPreservingInjective, 5).unwrap();
    let classes = Conjugacy::new(m.table()).partition(RelationKind::N).unwrap();
    for (i, a) in m.elements().iter().enumerate() {
        let class = class_oin(a).unwrap();
        let k = a.span().len();
        assert_eq!(class.len(), k_subsets(5, k).len());
        let mut generic: Vec<PartialMap> = classes
            .class(i)
            .iter()
            .map(|&j| m.element(j).clone())
            .collect();
        generic.sort();
        assert_eq!(class, generic, "{a}");
    }
    let a = pm("[2,-,-,-,-]");
    assert_eq!(class_oin(&a).unwrap().len(), 10);
}

#[test]
fn oi11_example_maps() {
    // (1)∨(4)∨[3 5 7]∨[10 9 8] and (2)∨(5)∨[3 6 7]∨[11 10 8]
    let a = pm("[1,-,5,4,7,-,-,-,8,9,-]");
    let b = pm("[-,2,6,-,5,7,-,-,-,8,10]");
    assert_eq!(a.span(), vec![0, 2, 3, 4, 6, 7, 8, 9]);
    assert!(!a.is_order_preserving_injective());
    assert!(!b.is_order_preserving_injective());
    let r = a.digraph().relabel_onto(&b.span()).unwrap();
    assert!(r.same_graph(&b.digraph()));
    assert!(matches!(conj_n_oin(&a, &b), Err(conjlab::Error::NotOrderPreservingInjective)));
}

#[test]
fn rank_sequences_of_conjugates() {
    for kind in [TransformKind::Full, TransformKind::Partial] {
        let n = if kind == TransformKind::Full { 4 } else { 3 };
        let m = TransformationMonoid::build(kind, n).unwrap();
        for a in m.elements() {
            for b in m.elements() {
                if conj_n_full(a, b).unwrap() {
                    assert_eq!(a.rank_sequence(2 * n), b.rank_sequence(2 * n));
                }
            }
        }
    }
}

fn bp_matrix(m: &TransformationMonoid) -> Relation {
    let es = m.elements();
    let perms = permutations(m.n());
    Relation::from_fn(es.len(), |i, j| perms.iter().any(|p| es[i].relabel(p) == es[j]))
}

#[test]
fn conj_by_permutation_matches_oracle() {
    let m = TransformationMonoid::build(TransformKind::Partial, 3).unwrap();
    let bp = bp_matrix(&m);
    for (i, a) in m.elements().iter().enumerate() {
        for (j, b) in m.elements().iter().enumerate() {
            assert_eq!(conj_by_permutation(a, b).unwrap(), bp.get(i, j));
        }
    }
    let (a, b) = (pm("[2,1,-]"), pm("[2,3,1]"));
    assert!(!conj_by_permutation(&a, &b).unwrap());
    assert!(conj_by_permutation(&pm("[2,1,3]"), &pm("[1,3,2]")).unwrap());
}

#[test]
fn bp_versus_n_inclusions() {
    let proper_sub = |kind: TransformKind, n: usize| {
        let m = TransformationMonoid::build(kind, n).unwrap();
        let (bp, nn) = (bp_matrix(&m), n_matrix(&m));
        (bp.is_subset(&nn) && bp != nn, nn.is_subset(&bp) && bp != nn, bp == nn, bp, nn)
    };
    assert!(proper_sub(TransformKind::Partial, 3).0);
    assert!(proper_sub(TransformKind::Full, 4).0);
    for n in 1..=4 {
        assert!(proper_sub(TransformKind::Injective, n).2);
    }
    assert!(proper_sub(TransformKind::OrderPreservingInjective, 3).1);
    let (_, _, _, bp, nn) = proper_sub(TransformKind::OrderPreserving, 4);
    assert!(!bp.is_subset(&nn) && !nn.is_subset(&bp));
}

fn lin_check(kind: TransformKind, n: usize, f: fn(&PartialMap, &PartialMap) -> conjlab::Result<bool>) {
    let m = TransformationMonoid::build(kind, n).unwrap();
    let lin = Conjugacy::new(m.table()).relation(RelationKind::Lin).unwrap();
    for (i, a) in m.elements().iter().enumerate() {
        for (j, b) in m.elements().iter().enumerate() {
            assert_eq!(f(a, b).unwrap(), lin.get(i, j), "{a} {b}");
        }
    }
}

#[test]
fn linear_deciders_agree_with_generic() {
    for n in 1..=3 {
        lin_check(TransformKind::Full, n, conj_lin_tn);
        lin_check(TransformKind::Injective, n, conj_lin_in);
    }
    lin_check(TransformKind::Partial, 2, conj_lin_pn);
    lin_check(TransformKind::Partial, 3, conj_lin_pn);
}

#[test]
fn linear_examples() {
    let a = pm("[2,1,4,1,6,1]");
    let b = pm("[2,1,4,1,6,2]");
    assert!(conj_lin_tn(&a, &b).unwrap());
    assert!(!conj_n_full(&a, &b).unwrap());
    assert!(conj_lin_pn(&a, &b).unwrap());

    let m = TransformationMonoid::build(TransformKind::OrderPreserving, 4).unwrap();
    let c = Conjugacy::new(m.table());
    let (a, b) = (pm("[2,3,3,4]"), pm("[1,1,2,4]"));
    let (i, j) = (m.index_of(&a).unwrap(), m.index_of(&b).unwrap());
    assert!(c.decide(RelationKind::Lin, i, j).unwrap().is_some());
    assert!(c.decide(RelationKind::N, i, j).unwrap().is_none());
    assert!(!conj_n_on(&a, &b).unwrap());

    let m = TransformationMonoid::build(TransformKind::OrderPreservingInjective, 2).unwrap();
    let c = Conjugacy::new(m.table());
    let (a, b) = (pm("[2,-]"), pm("[-,1]"));
    let (i, j) = (m.index_of(&a).unwrap(), m.index_of(&b).unwrap());
    assert!(c.decide(RelationKind::Lin, i, j).unwrap().is_some());
    assert!(c.decide(RelationKind::N, i, j).unwrap().is_none());
}

#[test]
fn n_lin_tr_chain() {
    let cases = [
        (TransformKind::Full, 3),
        (TransformKind::Partial, 3),
        (TransformKind::OrderPreserving, 4),
        (TransformKind::OrderPreservingInjective, 3),
    ];
    for (kind, n) in cases {
        let m = TransformationMonoid::build(kind, n).unwrap();
        let c = Conjugacy::new(m.table());
        let nn = c.relation(RelationKind::N).unwrap();
        let lin = c.relation(RelationKind::Lin).unwrap();
        let tr = c.relation(RelationKind::Tr).unwrap();
        assert!(nn.is_subset(&lin) && lin.is_subset(&tr));
    }
}
