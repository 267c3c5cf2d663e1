use super::*;
use crate::modules::DEFAULT_SCAN_CAP;

#[test]
fn complement_orders_match_entries() {
    for e in entries().iter().filter(|e| e.kind == EntryKind::Complement) {
        let g = complement(&e.name).unwrap();
        assert_eq!(g.order().map_err(|err| format!("{}: {err}", e.name)).unwrap(), e.order, "{}", e.name);
    }
}

#[test]
fn sl2_3_has_seven_classes() {
    let g = complement("SL2_3").unwrap();
    assert_eq!(g.order().unwrap(), 24);
    assert_eq!(g.classes().unwrap().len(), 7);
}

#[test]
fn h1_relations() {
    let r = recipes::recipe("H1", 3).unwrap().unwrap();
    let g = GroupHandle::matrix(3, 4, r.gens.clone());
    let (x, y) = (&g.gens()[0], &g.gens()[1]);
    assert_eq!(g.element_order(x), 5);
    assert_eq!(g.element_order(y), 4);
    assert_eq!(g.conj(x, y), g.inv(x));
    assert_eq!(g.order().unwrap(), 20);
}

#[test]
fn h2_relations() {
    let g = complement("H2").unwrap();
    let (x, y, z) = (&g.gens()[0], &g.gens()[1], &g.gens()[2]);
    assert_eq!(g.element_order(x), 3);
    assert_eq!(g.element_order(y), 8);
    assert!(g.is_identity(&g.commutator(x, z)));
    assert_eq!(g.pow(z, 2), g.pow(y, 4));
    assert_eq!(g.conj(y, z), g.inv(y));
    assert_eq!(g.conj(x, y), g.inv(x));
    assert_eq!(g.order().unwrap(), 48);
}

#[test]
fn instances_are_irreducible_frobenius() {
    for name in table2_instance_names().into_iter().chain(odd_instance_names()) {
        let inst = frobenius_instance(&name).unwrap();
        let m = &inst.module;
        assert!(m.is_fixed_point_free(), "{name}");
        if inst.complement_name != "C3" {
            assert!(m.is_irreducible(DEFAULT_SCAN_CAP).unwrap(), "{name}");
        }
        let h = inst.module.complement().order().unwrap();
        let k = m.kernel_order();
        assert_eq!(k % h, 1, "{name}");
        let kind = if odd_instance_names().contains(&name) { EntryKind::OddInstance } else { EntryKind::Instance };
        assert_eq!(known_order(&name, kind), k * h, "{name}");
    }
}

#[test]
fn instance_complements_match_standalone_orders() {
    for (h, rows) in EVEN_KERNELS {
        let standalone = complement(h).unwrap().order().unwrap();
        for &(p, d, _) in rows {
            let inst = frobenius_instance(&instance_name(h, p, d, 1)).unwrap();
            assert_eq!(inst.module.complement().order().unwrap(), standalone, "{h} over F_{p}");
        }
    }
}

#[test]
fn table2_rows_fit_kernel_orders() {
    for (h, rows) in EVEN_KERNELS {
        let allowed = kernel_orders(h).unwrap();
        for &(p, d, _) in rows {
            assert!(allowed.iter().any(|&(q, k)| q == p && d % k == 0), "{h} over F_{p}^{d}");
        }
    }
}

#[test]
fn counterexample_orders() {
    for e in entries().iter().filter(|e| e.kind == EntryKind::Counterexample) {
        assert_eq!(counterexample(&e.name).unwrap().order().unwrap(), e.order, "{}", e.name);
    }
}

#[test]
fn unknown_names_are_rejected() {
    assert!(matches!(complement("C9"), Err(Error::UnknownName(_))));
    assert!(matches!(group("C5:C4/3"), Err(Error::UnknownName(_))));
    assert!(matches!(group("C3:C2/2"), Err(Error::UnknownName(_))));
}

#[test]
fn memoized_handles_are_shared() {
    let a = group("SL2_3").unwrap();
    let b = group("SL2_3").unwrap();
    assert_eq!(format!("{:?}", a.gens()), format!("{:?}", b.gens()));
    let x = frobenius_instance("C5:C4").unwrap();
    let y = frobenius_instance("C5:C4").unwrap();
    assert!(Arc::ptr_eq(&x, &y));
}
