use std::collections::BTreeSet;

use frobrat::catalog;
use frobrat::chartable::{dixon_table, quadratic_rational_in, semi_inertia, TableConfig};
use frobrat::cyclotomic::{classify_quadratic, FieldClass};
use frobrat::fp;
use frobrat::modules::FpModule;
use frobrat::rationality::{
    classify, is_r_semi_rational_element, is_semi_rational_element, r_order_class, rationality_group,
    semi_rationality_set, ROrderClass,
};
use frobrat::{character_table, Element, GroupHandle, UnitClassSet};

fn perm(degree: usize, cycles: &[&[&[usize]]]) -> GroupHandle {
    GroupHandle::perm(degree, cycles.iter().map(|c| Element::perm_from_cycles(degree, c)).collect())
}

fn s3() -> GroupHandle {
    perm(3, &[&[&[1, 2, 3]], &[&[1, 2]]])
}

fn cyclic(n: usize) -> GroupHandle {
    let cycle: Vec<usize> = (1..=n).collect();
    perm(n.max(1), &[&[&cycle]])
}

fn of_order(g: &GroupHandle, k: u64) -> Element {
    g.elements().unwrap().into_iter().find(|x| g.element_order(x) == k).expect("element of that order")
}

fn set(n: u64, xs: &[u64]) -> UnitClassSet {
    UnitClassSet::plain(n, xs.iter().copied()).unwrap()
}

/// `{j : x^j is conjugate to x}` by conjugating with every element.
fn brute_bg(g: &GroupHandle, x: &Element) -> BTreeSet<u64> {
    let o = g.element_order(x);
    let conj: BTreeSet<Element> = g.elements().unwrap().iter().map(|h| g.conj(x, h)).collect();
    (1..o).filter(|&j| frobrat::arith::gcd(j, o) == 1 && conj.contains(&g.pow(x, j))).collect()
}

fn kernel(g: &GroupHandle) -> GroupHandle {
    let elems = g.elements().unwrap();
    let (_, id) = g.identity().as_pair().map(|(v, h)| (v.to_vec(), h)).unwrap();
    g.subgroup_from_elements(elems.into_iter().filter(|e| e.as_pair().unwrap().1 == id).collect())
}

#[test]
fn centralizers() {
    let g = s3();
    let x = Element::perm_from_cycles(3, &[&[1, 2, 3]]);
    assert_eq!(g.centralizer(&x).unwrap().order().unwrap(), 3);
    assert_eq!(g.centralizer(&g.identity()).unwrap().order().unwrap(), 6);
    let f = catalog::group("C5:C4").unwrap();
    let y = of_order(&f, 5);
    assert_eq!(f.centralizer(&y).unwrap().order().unwrap(), 5);
}

#[test]
fn bg_images() {
    let g = s3();
    let x = of_order(&g, 3);
    assert_eq!(g.bg(&x).unwrap().members(), &[1, 2]);
    assert_eq!(brute_bg(&g, &x), BTreeSet::from([1, 2]));

    let a4 = catalog::group("A4").unwrap();
    let x = of_order(&a4, 3);
    assert_eq!(a4.bg(&x).unwrap().members(), &[1]);
    assert_eq!(brute_bg(&a4, &x), BTreeSet::from([1]));

    let f = catalog::group("C7:C3").unwrap();
    let x = of_order(&f, 7);
    assert_eq!(f.bg(&x).unwrap().members(), &[1, 2, 4]);
}

#[test]
fn structure_subgroups() {
    assert_eq!(catalog::group("Q8").unwrap().center().unwrap().order().unwrap(), 2);
    assert_eq!(s3().derived_subgroup().order().unwrap(), 3);
    let p = catalog::group("SL2_3").unwrap().sylow(2).unwrap();
    assert_eq!(p.order().unwrap(), 8);
    assert!(!p.is_abelian());
    let involutions = p.elements().unwrap().iter().filter(|x| p.element_order(x) == 2).count();
    assert_eq!(involutions, 1);
    assert_eq!(s3().sylow(5).unwrap().order().unwrap(), 1);
}

#[test]
fn fixed_point_freeness() {
    assert!(catalog::frobenius_instance("C5^2:Q8").unwrap().module.is_fixed_point_free());
    // C_4 acting on C_5 through inversion: y^2 acts trivially
    let c4 = cyclic(4);
    let inv = FpModule::new(5, 1, c4.clone(), vec![fp::from_rows(&[vec![4]], 5)]).unwrap();
    assert!(!inv.is_fixed_point_free());
    let trivial = FpModule::new(5, 1, c4, vec![fp::from_rows(&[vec![1]], 5)]).unwrap();
    assert!(!trivial.is_fixed_point_free());
}

#[test]
fn prime_graphs() {
    let c6 = cyclic(6).prime_graph().unwrap();
    assert!(c6.is_connected());
    for name in ["C7:C3", "A4"] {
        let pg = catalog::group(name).unwrap().prime_graph().unwrap();
        assert_eq!(pg.components().len(), 2, "{name}");
    }
}

#[test]
fn element_predicates() {
    let c5 = cyclic(5);
    assert!(!is_semi_rational_element(&c5, &of_order(&c5, 5)).unwrap());
    let c4 = cyclic(4);
    assert!(is_semi_rational_element(&c4, &of_order(&c4, 4)).unwrap());
    let a4 = catalog::group("A4").unwrap();
    let x = of_order(&a4, 3);
    assert!(is_semi_rational_element(&a4, &x).unwrap());
    assert_eq!(a4.bg(&x).unwrap().index(), 2);

    let f = catalog::group("C7:C3").unwrap();
    let x = of_order(&f, 7);
    assert!(is_r_semi_rational_element(&f, &x, 3).unwrap());
    assert!(!is_r_semi_rational_element(&f, &x, 2).unwrap());
    assert!(is_r_semi_rational_element(&f, &x, 7).is_err());
    let s = s3();
    let y = of_order(&s, 2);
    assert!((1..6).all(|r| r % 2 == 0 || is_r_semi_rational_element(&s, &y, r).unwrap()));
}

#[test]
fn rationality_and_semi_rationality_sets() {
    let cls = |g: &GroupHandle| g.classes().unwrap();
    assert!(rationality_group(&cls(&s3())).same_set(&set(6, &[1, 5])));
    let f = catalog::group("C7:C3").unwrap();
    assert!(rationality_group(&cls(&f)).same_set(&set(21, &[1, 4, 16])));
    let a4 = catalog::group("A4").unwrap();
    assert!(rationality_group(&cls(&a4)).same_set(&set(6, &[1])));

    let c5c4 = catalog::group("C5:C4").unwrap();
    let s = semi_rationality_set(&cls(&c5c4));
    assert!(s.same_set(&UnitClassSet::signed_coset(20, -1, &[13]).unwrap()));
    assert!(semi_rationality_set(&cls(&a4)).same_set(&set(6, &[5])));
    assert!(semi_rationality_set(&cls(&cyclic(5))).is_empty());
}

#[test]
fn classification_reports() {
    let f = catalog::group("C7:C3").unwrap();
    let t = character_table(&f, &TableConfig::default()).unwrap();
    let r = classify(&f.classes().unwrap(), Some(&t));
    assert!(r.semi_rational && r.uniformly_semi_rational && r.inverse_semi_rational);
    assert_eq!(r.quadratic_rational, Some(true));
    assert!(r.s_g.contains(20));
    assert!(r.s_g.same_set(&UnitClassSet::signed_coset(21, -1, &[4]).unwrap()));

    let q32 = catalog::group("Q32").unwrap();
    let t = character_table(&q32, &TableConfig::default()).unwrap();
    assert_eq!(classify(&q32.classes().unwrap(), Some(&t)).quadratic_rational, Some(false));

    let big = catalog::group("C11^2:SL2_5").unwrap();
    let r = classify(&big.classes().unwrap(), None);
    assert!(r.uniformly_semi_rational && !r.inverse_semi_rational);
    assert!(r.s_g.same_set(&UnitClassSet::signed_coset(660, -7, &[541, 529, 221, 331]).unwrap()));
}

#[test]
fn order_buckets() {
    let bucket = |name: &str| {
        let g = catalog::group(name).unwrap();
        r_order_class(&semi_rationality_set(&g.classes().unwrap())).unwrap()
    };
    assert_eq!(r_order_class(&semi_rationality_set(&s3().classes().unwrap())).unwrap(), ROrderClass::Rational);
    assert_eq!(bucket("C3^4:Q16"), ROrderClass::Order2);
    assert_eq!(bucket("C5^2:C6"), ROrderClass::Order4);
    assert_eq!(bucket("C5:C4"), ROrderClass::Cut);
    assert!(r_order_class(&UnitClassSet::empty(5)).is_err());
}

#[test]
fn small_tables() {
    let cap = frobrat::chartable::DEFAULT_DIXON_CAP;
    let t = dixon_table(&s3(), cap).unwrap();
    assert_eq!(t.degrees, vec![1, 1, 2]);
    t.check().unwrap();
    let t = dixon_table(&catalog::group("SL2_3").unwrap(), cap).unwrap();
    assert_eq!(t.degrees, vec![1, 1, 1, 2, 2, 2, 3]);
    t.check().unwrap();
    assert!(t.rows.iter().all(|r| classify_quadratic(r, t.conductor) != FieldClass::HigherDegree));
}

#[test]
fn cut_and_quadratic_flags() {
    let cfg = TableConfig::default();
    let a4 = character_table(&catalog::group("A4").unwrap(), &cfg).unwrap();
    assert!(a4.is_cut() && !a4.is_rational());
    // abelian: quadratic rational iff the exponent is 1, 2, 3, 4 or 6
    for n in 1..=12 {
        let t = character_table(&cyclic(n), &cfg).unwrap();
        assert_eq!(t.is_quadratic_rational(), [1, 2, 3, 4, 6].contains(&n), "C{n}");
    }
    let neg = character_table(&catalog::group("neg_120").unwrap(), &cfg).unwrap();
    assert!(!neg.is_quadratic_rational());
    // faithful irreducibles (degree 4) have quadratic fields; the degree-4 fields sit on
    // degree-2 characters with the C_3 in their kernel
    let faithful = |i: usize| {
        let d = frobrat::Cyclotomic::from_int(neg.conductor, neg.degrees[i] as i64);
        neg.rows[i].iter().skip(1).all(|v| *v != d)
    };
    for i in 0..neg.rows.len() {
        if faithful(i) {
            assert_eq!((neg.degrees[i], neg.field_of_values(i).1), (4, 2));
        }
    }
    assert!((0..neg.rows.len()).any(|i| neg.degrees[i] == 2 && neg.field_of_values(i).1 == 4));
}

#[test]
fn quadratic_rational_in_kernel() {
    let cfg = TableConfig::default();
    let f = catalog::group("C7:C3").unwrap();
    let k = f.subgroup(vec![of_order(&f, 7)]);
    assert!(quadratic_rational_in(&k, &f, &cfg).unwrap());
    let s = s3();
    assert!(quadratic_rational_in(&s.subgroup(vec![of_order(&s, 3)]), &s, &cfg).unwrap());
    let neg = catalog::group("neg_120").unwrap();
    let c15 = neg.subgroup(vec![of_order(&neg, 15)]);
    assert_eq!(c15.order().unwrap(), 15);
    // Q_8 acts on C_15 through residues {1, 4, 11, 14}, so induced fields are quadratic
    assert!(quadratic_rational_in(&c15, &neg, &cfg).unwrap());
}

#[test]
fn semi_inertia_examples() {
    let f = catalog::frobenius_instance("C5:C4").unwrap();
    let pair = semi_inertia(&f.group, &[1]).unwrap();
    assert_eq!(pair.quotient_order(), 4);
    let principal = semi_inertia(&f.group, &[0]).unwrap();
    assert_eq!(principal.inertia_order, 20);
    assert_eq!(principal.semi_inertia_order, 20);

    let odd = catalog::odd_complement_instances().unwrap();
    let c7 = odd.iter().find(|i| i.name == "C7:C3").unwrap();
    let pair = semi_inertia(&c7.group, &[1]).unwrap();
    assert_eq!(pair.quotient_order(), 3);
    assert_eq!(pair.image.members(), &[1, 2, 4]);
}

/// Frobenius `G` is quadratic rational iff `H` is and `K` is quadratic rational in `G`.
#[test]
fn frobenius_quadratic_rationality_splits() {
    let cfg = TableConfig::default();
    for name in ["C5:C4", "C3^2:Q8", "C7:C6", "C13:C6", "C5^2:C3:C4", "C5^2:SL2_3", "C5^2:C6"] {
        let inst = catalog::frobenius_instance(name).unwrap();
        let g = &inst.group;
        let whole = character_table(g, &cfg).unwrap().is_quadratic_rational();
        let h = character_table(inst.module.complement(), &cfg).unwrap().is_quadratic_rational();
        let k = quadratic_rational_in(&kernel(g), g, &cfg).unwrap();
        assert_eq!(whole, h && k, "{name}");
        assert!(whole, "{name}");
    }
}
