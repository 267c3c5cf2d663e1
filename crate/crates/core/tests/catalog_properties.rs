use frobrat::arith::{factorize, gcd};
use frobrat::catalog::{self, COMPLEMENTS};
use frobrat::chartable::{quadratic_rational_in, TableConfig};
use frobrat::{character_table, GroupHandle};

fn quadratic_rational_groups() -> Vec<(String, GroupHandle)> {
    let cfg = TableConfig::default();
    let mut out: Vec<(String, GroupHandle)> = COMPLEMENTS.iter().map(|n| (n.to_string(), catalog::group(n).unwrap())).collect();
    for name in catalog::table2_instance_names() {
        out.push((name.clone(), catalog::group(&name).unwrap()));
    }
    out.retain(|(_, g)| character_table(g, &cfg).unwrap().is_quadratic_rational());
    out
}

/// `p^n` or `2p^n` for an odd prime `p`.
fn prime_power_shape(o: u64) -> bool {
    let f = factorize(if o % 2 == 0 { o / 2 } else { o });
    o > 2 && f.len() == 1 && f[0].0 != 2 && (o % 4 != 0)
}

#[test]
fn prime_power_order_elements_are_semi_rational() {
    let groups = quadratic_rational_groups();
    assert!(groups.len() > 20);
    for (name, g) in &groups {
        let cls = g.classes().unwrap();
        for c in 0..cls.len() {
            if prime_power_shape(cls.orders[c]) {
                assert!(cls.bg_image(c).index() <= 2, "{name}: class {c} of order {}", cls.orders[c]);
            }
        }
    }
}

#[test]
fn generators_of_cyclic_normal_subgroups_are_semi_rational() {
    for (name, g) in quadratic_rational_groups() {
        let cls = g.classes().unwrap();
        for (c, x) in cls.reps.iter().enumerate() {
            let cyc = g.subgroup(vec![x.clone()]);
            if !g.is_subgroup_normal(&cyc).unwrap() {
                continue;
            }
            let o = cls.orders[c];
            for j in (1..o.max(2)).filter(|&j| gcd(j, o) == 1) {
                let p = cls.power_class(c, j);
                assert!(cls.bg_image(p).index() <= 2, "{name}: generator x^{j} of class {c}");
            }
        }
    }
}

/// Frobenius `G` is quadratic rational iff `H` is and `K` is quadratic rational in `G`.
#[test]
fn quadratic_rationality_splits_over_kernel_and_complement() {
    let cfg = TableConfig::default();
    for name in catalog::table2_instance_names() {
        let inst = catalog::frobenius_instance(&name).unwrap();
        if inst.module.kernel_order() > 49 {
            continue;
        }
        let g = &inst.group;
        let elems = g.elements().unwrap();
        let id = g.identity().as_pair().unwrap().1;
        let k = g.subgroup_from_elements(elems.into_iter().filter(|e| e.as_pair().unwrap().1 == id).collect());
        let whole = character_table(g, &cfg).unwrap().is_quadratic_rational();
        let h = character_table(inst.module.complement(), &cfg).unwrap().is_quadratic_rational();
        assert_eq!(whole, h && quadratic_rational_in(&k, g, &cfg).unwrap(), "{name}");
    }
}
