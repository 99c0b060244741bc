use conjlab::gset::*;
use conjlab::{Conjugacy, RelationKind};

fn group(m: &[u32]) -> AbelianGroup {
    AbelianGroup::new(m.to_vec()).unwrap()
}

/// Every G-set with at most `max_orbits` orbits and at most `max_points` points, up to orbit order.
fn gsets(g: &AbelianGroup, max_orbits: usize, max_points: usize) -> Vec<GSet> {
    let subs = g.all_subgroups();
    let mut out = vec![];
    fn rec(
        g: &AbelianGroup,
        subs: &[Subgroup],
        from: usize,
        cur: &mut Vec<Subgroup>,
        points: usize,
        max_orbits: usize,
        max_points: usize,
        out: &mut Vec<GSet>,
    ) {
        if !cur.is_empty() {
            out.push(GSet::new(g.clone(), cur.clone()).unwrap());
        }
        if cur.len() == max_orbits {
            return;
        }
        for i in from..subs.len() {
            let size = g.order() / subs[i].size();
            if points + size <= max_points {
                cur.push(subs[i].clone());
                rec(g, subs, i, cur, points + size, max_orbits, max_points, out);
                cur.pop();
            }
        }
    }
    rec(g, &subs, 0, &mut vec![], 0, max_orbits, max_points, &mut out);
    out
}

/// All maps X -> X commuting with the action, by exhaustive search.
fn equivariant_maps(x: &GSet) -> Vec<Vec<usize>> {
    let n = x.len();
    let mut out = vec![];
    let mut cur = vec![0usize; n];
    fn rec(x: &GSet, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p == cur.len() {
            let ok = (0..x.group().order())
                .all(|k| (0..cur.len()).all(|q| cur[x.act(k, q)] == x.act(k, cur[q])));
            if ok {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..cur.len() {
            cur[p] = v;
            rec(x, p + 1, cur, out);
        }
    }
    rec(x, 0, &mut cur, &mut out);
    out.sort();
    let _ = n;
    out
}

#[test]
fn enumeration_matches_equivariant_maps() {
    for m in [&[1u32][..], &[2], &[3], &[4], &[2, 2]] {
        let g = group(m);
        for x in gsets(&g, 3, 5) {
            let mut ours: Vec<Vec<usize>> = enumerate_end(&x).unwrap().iter().map(|f| f.point_map(&x)).collect();
            ours.sort();
            let before = ours.len();
            ours.dedup();
            assert_eq!(before, ours.len(), "duplicate endomorphisms");
            assert_eq!(ours, equivariant_maps(&x), "{}", x.to_spec());
            assert_eq!(count_end(&x), ours.len());
        }
    }
}

#[test]
fn trivial_group_gives_full_transformation_monoid() {
    let g = AbelianGroup::trivial();
    for n in 1..=4 {
        let x = GSet::new(g.clone(), vec![g.subgroup(&[]); n]).unwrap();
        assert_eq!(enumerate_end(&x).unwrap().len(), n.pow(n as u32));
    }
}

#[test]
fn stabilizers_never_shrink_and_composition_is_right_to_left() {
    let g = group(&[2, 2]);
    for x in gsets(&g, 3, 6) {
        let e = enumerate_end(&x).unwrap();
        for f in e.iter().take(40) {
            for o in 0..x.orbit_count() {
                assert!(x.stabilizer(o).is_subset(x.stabilizer(f.target(o))));
            }
            for h in e.iter().take(40) {
                let fh = f.compose(&x, h);
                for p in 0..x.len() {
                    assert_eq!(fh.apply(&x, p), f.apply(&x, h.apply(&x, p)));
                }
            }
        }
    }
}

#[test]
fn cycle_labels_do_not_depend_on_the_point() {
    for m in [&[2u32][..], &[3], &[4], &[2, 2]] {
        let g = group(m);
        for x in gsets(&g, 3, 6) {
            for f in enumerate_end(&x).unwrap() {
                let pm = f.point_map(&x);
                for o in 0..x.orbit_count() {
                    let Some(label) = cycle_label(&x, &f, o) else { continue };
                    let mut len = 1;
                    while {
                        let mut u = f.target(o);
                        for _ in 1..len {
                            u = f.target(u);
                        }
                        u != o
                    } {
                        len += 1;
                    }
                    for j in 0..g.order() {
                        let p = x.point(o, j);
                        let mut q = p;
                        for _ in 0..len {
                            q = pm[q];
                        }
                        // q = k·p for exactly the k in label + G_o
                        let ks: Vec<usize> = (0..g.order()).filter(|&k| x.act(k, p) == q).collect();
                        assert!(ks.contains(&label));
                        assert_eq!(ks.len(), x.stabilizer(o).size());
                    }
                }
            }
        }
    }
}

fn check_against_generic(x: &GSet) {
    let m = EndMonoid::build(x).unwrap();
    let nrel = Conjugacy::new(m.table()).relation(RelationKind::N).unwrap();
    let e = m.elements();
    let forms: Vec<String> = e.iter().map(|f| g_trim(x, f).canonical_form()).collect();
    for i in 0..e.len() {
        // a different tie-break gives an isomorphic trim
        assert_eq!(g_trim_with(x, &e[i], true).canonical_form(), forms[i]);
        for j in 0..e.len() {
            assert_eq!(
                forms[i] == forms[j],
                nrel.get(i, j),
                "{} vs {} on\n{}",
                e[i].to_literal(x),
                e[j].to_literal(x),
                x.to_spec()
            );
        }
    }
}

#[test]
fn conj_n_matches_brute_force() {
    for m in [&[2u32][..], &[3], &[2, 2], &[4]] {
        let g = group(m);
        for x in gsets(&g, 3, 6) {
            check_against_generic(&x);
        }
    }
    let t = AbelianGroup::trivial();
    for x in gsets(&t, 4, 4) {
        check_against_generic(&x);
    }
}

#[test]
fn trim_examples() {
    let g = group(&[2]);
    let free = g.subgroup(&[]);
    let fixed = g.subgroup(&[1]);
    let x = GSet::new(g.clone(), vec![free.clone(), free.clone()]).unwrap();
    let f = GEndo::parse(&x, "(2,(0)) (2,(0))").unwrap();
    let t = g_trim(&x, &f);
    assert_eq!(t.vertices(), vec![1]);
    assert_eq!(t.next[1], 1);

    let y = GSet::new(g.clone(), vec![free.clone(), fixed.clone()]).unwrap();
    let f = GEndo::parse(&y, "(2,(0)) (2,(0))").unwrap();
    assert_eq!(g_trim(&y, &f).vertices(), vec![1]);

    // automorphisms keep every orbit
    let swap = GEndo::parse(&x, "(2,(0)) (1,(0))").unwrap();
    assert_eq!(g_trim(&x, &swap).vertices(), vec![0, 1]);
    let twisted = GEndo::parse(&x, "(2,(1)) (1,(0))").unwrap();
    assert_eq!(cycle_label(&x, &swap, 0), Some(0));
    assert_eq!(cycle_label(&x, &twisted, 0), Some(1));
    assert!(!conj_n_gset(&x, &swap, &twisted).unwrap());
    assert!(conj_n_gset(&x, &swap, &swap).unwrap());

    let z = GSet::new(g, vec![free.clone(), free, fixed]).unwrap();
    let a = GEndo::parse(&z, "(3,(0)) (2,(0)) (3,(0))").unwrap();
    let b = GEndo::parse(&z, "(1,(0)) (3,(0)) (3,(0))").unwrap();
    assert!(conj_n_gset(&z, &a, &b).unwrap());
    let m = EndMonoid::build(&z).unwrap();
    let c = Conjugacy::new(m.table());
    let (ia, ib) = (m.index_of(&a).unwrap(), m.index_of(&b).unwrap());
    assert!(c.decide(RelationKind::N, ia, ib).unwrap().is_some());
}
