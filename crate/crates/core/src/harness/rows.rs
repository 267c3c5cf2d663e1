use std::sync::Arc;

use crate::arith::{euler_phi, prime_divisors, two_part, units};
use crate::catalog::{self, COMPLEMENTS};
use crate::chartable::{dixon_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::modules::{build_semidirect_capped, gn_semi_rationality, gn_set, FpModule, DEFAULT_SCAN_CAP};
use crate::rationality::{class_data, classify, ClassRationality, RationalityReport};
use crate::units::UnitClassSet;

use super::{Ctx, Outcome, Status};

type Check = Box<dyn Fn(&Ctx) -> Result<Outcome> + Send + Sync>;

pub struct RowSpec {
    pub criterion: u8,
    pub name: String,
    pub check: Check,
}

fn spec(criterion: u8, name: impl Into<String>, check: impl Fn(&Ctx) -> Result<Outcome> + Send + Sync + 'static) -> RowSpec {
    RowSpec {
        criterion,
        name: name.into(),
        check: Box::new(check),
    }
}

pub fn criterion_title(c: u8) -> &'static str {
    match c {
        1 => "complements are quadratic rational (Q32 is not)",
        2 => "irreducible-kernel Frobenius groups",
        3 => "S_G of the cut families",
        4 => "S_G of the order-2 families",
        5 => "S_G of the order-4 families",
        6 => "rational families and the n = 1 / n > 1 split",
        7 => "G_2 brute force agrees with the module criterion",
        8 => "k-eigenvalue property is self-dual",
        9 => "counterexamples",
        10 => "flag equivalences",
        11 => "Dixon-Schneider agrees with the Frobenius constructor",
        12 => "prime graph, |K| mod |H| and the B_G(x) divisibility",
        _ => "",
    }
}

fn show(s: &UnitClassSet) -> String {
    let members: Vec<String> = s.members().iter().map(u64::to_string).collect();
    format!("{} = {{{}}}", s.render(), members.join(","))
}

fn report(g: &GroupHandle) -> Result<RationalityReport> {
    Ok(classify(g.classes()?.as_ref(), None))
}

fn admits(c: &ClassRationality, r: u64) -> bool {
    c.index == 1 || (c.index == 2 && !c.a.contains(r % c.order))
}

/// Members of `expected` and `computed` that are not shared, with a class rejecting
/// each expected residue that is missing.
fn set_diff(g: &GroupHandle, expected: &UnitClassSet, computed: &UnitClassSet) -> Result<String> {
    let missing: Vec<u64> = expected.members().iter().copied().filter(|&r| !computed.contains(r)).collect();
    let extra: Vec<u64> = computed.members().iter().copied().filter(|&r| !expected.contains(r)).collect();
    let mut out = format!("missing {missing:?}, unexpected {extra:?}");
    if let Some(&r) = missing.first() {
        let data = class_data(g.classes()?.as_ref());
        if let Some(c) = data.iter().find(|c| !admits(c, r)) {
            out.push_str(&format!(
                "; residue {r} is rejected by a class of order {} with A_x = {}",
                c.order, c.a
            ));
        }
    }
    Ok(out)
}

fn qr_verdict(t: &CharacterTable) -> (bool, String) {
    let degrees = t.rows_field_degrees();
    let max = degrees.iter().copied().max().unwrap_or(1);
    let qr = max <= 2;
    let text = if qr {
        "quadratic rational".to_string()
    } else {
        let row = degrees.iter().position(|&d| d == max).unwrap_or(0);
        format!("not quadratic rational (X.{} has field degree {max})", row + 1)
    };
    (qr, text)
}

fn criterion1() -> Vec<RowSpec> {
    let mut out: Vec<RowSpec> = COMPLEMENTS
        .iter()
        .map(|&h| {
            spec(1, format!("qr/{h}"), move |ctx| {
                let g = ctx.group(h)?;
                let (qr, text) = qr_verdict(&ctx.table(&g)?);
                Ok(Outcome::compare("quadratic rational", text, qr).with("order", g.order()?))
            })
        })
        .collect();
    out.push(spec(1, "qr/Q32", |ctx| {
        let g = ctx.group("Q32")?;
        let (qr, text) = qr_verdict(&ctx.table(&g)?);
        Ok(Outcome::compare("not quadratic rational", text, !qr).with("order", g.order()?))
    }));
    out
}

fn sorted_sizes(g: &GroupHandle) -> Result<Vec<u64>> {
    let mut v = g.classes()?.sizes.clone();
    v.sort_unstable();
    Ok(v)
}

fn criterion2() -> Vec<RowSpec> {
    let mut out = Vec::new();
    for name in catalog::table2_instance_names() {
        let n = name.clone();
        out.push(spec(2, format!("table/{name}"), move |ctx| {
            let inst = ctx.instance(&n)?;
            let fpf = inst.module.is_fixed_point_free();
            let irr = inst.module.is_irreducible(DEFAULT_SCAN_CAP)?;
            let (qr, text) = qr_verdict(&ctx.table(&inst.group)?);
            let computed = format!(
                "{}, {}, {text}",
                if fpf { "Frobenius" } else { "not Frobenius" },
                if irr { "irreducible" } else { "reducible" }
            );
            Ok(Outcome::compare("Frobenius, irreducible, quadratic rational", computed, fpf && irr && qr)
                .with("order", inst.group.order()?))
        }));
        if let Some(base) = name.strip_suffix("/2") {
            let (a, b) = (base.to_string(), name.clone());
            out.push(spec(2, format!("twin/{base}"), move |ctx| {
                let ga = ctx.instance(&a)?.group.clone();
                let gb = ctx.instance(&b)?.group.clone();
                let inv = |g: &GroupHandle| -> Result<String> {
                    let mut degrees = ctx.table(g)?.degrees;
                    degrees.sort_unstable();
                    Ok(format!(
                        "order {} sizes {:?} degrees {:?} S_G {}",
                        g.order()?,
                        sorted_sizes(g)?,
                        degrees,
                        report(g)?.s_g.render()
                    ))
                };
                let (ia, ib) = (inv(&ga)?, inv(&gb)?);
                let ok = ia == ib;
                Ok(Outcome::compare(ia.clone(), ib.clone(), ok).with_diff("invariants differ between the two module structures"))
            }));
        }
    }
    out
}

/// Expected `S_G` as `r·⟨gens⟩ mod n`, or an explicit residue list when `gens` is empty.
#[derive(Clone, Copy)]
struct Stated {
    name: &'static str,
    n: u64,
    r: i64,
    gens: &'static [u64],
    list: &'static [i64],
}

impl Stated {
    fn set(&self) -> Result<UnitClassSet> {
        if self.list.is_empty() {
            UnitClassSet::signed_coset(self.n, self.r, self.gens)
        } else {
            UnitClassSet::plain(self.n, self.list.iter().map(|&x| x.rem_euclid(self.n as i64) as u64))
        }
    }
}

const fn coset(name: &'static str, n: u64, r: i64, gens: &'static [u64]) -> Stated {
    Stated {
        name,
        n,
        r,
        gens,
        list: &[],
    }
}

/// Expected `S_{G_n}` for `n ≥ 2`.
#[derive(Clone, Copy)]
enum Gn {
    Same,
    Other(Stated),
    Empty,
}

const CUT: [(Stated, Gn); 7] = [
    (coset("C3^2:C4", 12, -1, &[5]), Gn::Same),
    (coset("C5:C4", 20, -1, &[13]), Gn::Same),
    (coset("C7:C6", 42, -1, &[19]), Gn::Same),
    (coset("C7^2:C3xQ8", 84, -1, &[19, 43]), Gn::Same),
    (coset("C5^2:C3:C4", 60, -1, &[17, 41]), Gn::Other(coset("C5^2:C3:C4", 60, 7, &[29, 41]))),
    (coset("C5^2:SL2_3", 60, -1, &[7, 19]), Gn::Other(coset("C5^2:SL2_3", 60, -7, &[19, 49]))),
    (coset("C7^2:SL2_3", 84, -1, &[13, 19]), Gn::Empty),
];

const ORDER2: [(Stated, Gn); 4] = [
    (coset("C3^4:Q16", 24, 5, &[7, 23]), Gn::Same),
    (coset("C5^4:Q16", 40, 3, &[31, 9]), Gn::Same),
    (coset("C5^4:C3:Q8", 60, 7, &[11, 49]), Gn::Same),
    (coset("C7^2:SL2_3.C2", 168, 5, &[73, 113, 127]), Gn::Empty),
];

const ORDER4: [(Stated, Gn); 8] = [
    (coset("C5^2:C6", 30, -7, &[19]), Gn::Same),
    (coset("C13:C6", 78, -7, &[49]), Gn::Same),
    (coset("C3^4:H1", 60, -7, &[41, 49]), Gn::Same),
    (
        Stated {
            name: "C5^4:C3xQ8",
            n: 60,
            r: 0,
            gens: &[],
            list: &[17, 23, -13, -7],
        },
        Gn::Same,
    ),
    (coset("C13^2:C3xQ8", 156, -7, &[49, 79]), Gn::Same),
    (coset("C5^4:H2", 120, -13, &[11, 49]), Gn::Same),
    (coset("C5^4:SL2_3.C2", 120, -13, &[31, 41, 49]), Gn::Same),
    (coset("C11^2:SL2_5", 660, -7, &[541, 529, 221, 331]), Gn::Empty),
];

/// Condition on the residues of `S_G` checked next to the set itself.
#[derive(Clone, Copy)]
enum OrderCheck {
    None,
    /// `r^2 ∈ R_G` for every `r ∈ S_G`.
    SquareRational,
    /// The least multiplicative order of `r ∈ S_G` modulo `exp(G)` is 4.
    LeastFour,
}

/// `S_G` at `n = 1` against the stated set.
fn s_row(criterion: u8, st: Stated, check: OrderCheck) -> RowSpec {
    spec(criterion, format!("S_G/{}", st.name), move |ctx| {
        let inst = ctx.instance(st.name)?;
        let g = &inst.group;
        let rep = report(g)?;
        let s = &rep.s_g;
        let expected = st.set()?;
        let mut ok = s.same_set(&expected);
        let mut diff = set_diff(g, &expected, s)?;
        let least = s.min_order();
        let cond = match check {
            OrderCheck::None => true,
            OrderCheck::SquareRational => {
                let n = s.modulus();
                s.members().iter().all(|&r| rep.r_g.contains(r * r % n))
            }
            OrderCheck::LeastFour => least == Some(4),
        };
        if !cond {
            ok = false;
            diff.push_str(&format!("; order condition fails, least order of r is {least:?}"));
        }
        let mut out = Outcome::compare(show(&expected), show(s), ok)
            .with("exp", s.modulus())
            .with("n", 1);
        if !matches!(check, OrderCheck::None) {
            out = out.with("min_order", least.map_or("-".into(), |o| o.to_string()));
        }
        Ok(out.with_diff(diff))
    })
}

/// `S_{G_n}` for `n ≥ 2` through the module criterion.
fn gn_row(criterion: u8, st: Stated, gn: Gn) -> RowSpec {
    spec(criterion, format!("S_Gn/{}", st.name), move |ctx| {
        let inst = ctx.instance(st.name)?;
        let s = report(&inst.group)?.s_g;
        let computed = gn_set(&inst.module, &s);
        let expected = match gn {
            Gn::Same => st.set()?,
            Gn::Other(other) => other.set()?,
            Gn::Empty => UnitClassSet::plain(s.modulus(), std::iter::empty())?,
        };
        let ok = computed.same_set(&expected);
        let diff = set_diff(&inst.group, &expected, &computed)?;
        Ok(Outcome::compare(show(&expected), show(&computed), ok).with("n", ">=2").with_diff(diff))
    })
}

fn power_group(ctx: &Ctx, module: &Arc<FpModule>, n: usize) -> Result<GroupHandle> {
    build_semidirect_capped(Arc::new(module.power(n)?), ctx.cfg.cap)
}

fn criterion6() -> Vec<RowSpec> {
    let mut out = Vec::new();
    out.push(spec(6, "rational/C3:C2", |ctx| {
        let r = report(&ctx.instance("C3:C2")?.group)?;
        Ok(Outcome::compare("R_G = U", show(&r.r_g), r.rational).with("n", 1))
    }));
    out.push(spec(6, "rational/C3^2:C2", |ctx| {
        let inst = ctx.instance("C3:C2")?;
        let g = power_group(ctx, &inst.module, 2)?;
        let r = report(&g)?;
        Ok(Outcome::compare("R_G = U", show(&r.r_g), r.rational).with("n", 2))
    }));
    out.push(spec(6, "rational/C3^n:C2", |ctx| {
        let inst = ctx.instance("C3:C2")?;
        let s = report(&inst.group)?.s_g;
        let gn = gn_set(&inst.module, &s);
        let full = UnitClassSet::full(s.modulus());
        Ok(Outcome::compare(show(&full), show(&gn), gn.same_set(&full)).with("n", ">=2"))
    }));
    for name in ["C3^2:Q8", "C5^2:Q8"] {
        out.push(spec(6, format!("rational/{name}"), move |ctx| {
            let r = report(&ctx.instance(name)?.group)?;
            Ok(Outcome::compare("R_G = U", show(&r.r_g), r.rational).with("n", 1))
        }));
    }
    let q8n = Stated {
        name: "C5^2:Q8",
        n: 20,
        r: 0,
        gens: &[],
        list: &[3, 7, 13, 17],
    };
    out.push(spec(6, "S_Gn/C5^2:Q8", move |ctx| {
        let inst = ctx.instance("C5^2:Q8")?;
        let s = report(&inst.group)?.s_g;
        let gn = gn_set(&inst.module, &s);
        let expected = q8n.set()?;
        let ok = gn.same_set(&expected) && !gn.contains(1);
        Ok(Outcome::compare(format!("{} (not rational)", show(&expected)), show(&gn), ok).with("n", ">=2"))
    }));
    out.push(spec(6, "S_G/C5^4:Q8", move |ctx| {
        let inst = ctx.instance("C5^2:Q8")?;
        let g = power_group(ctx, &inst.module, 2)?;
        let r = report(&g)?;
        let expected = q8n.set()?;
        let ok = r.s_g.same_set(&expected) && !r.rational;
        Ok(Outcome::compare(format!("{} (not rational)", show(&expected)), show(&r.s_g), ok)
            .with("n", 2)
            .with("order", g.order()?))
    }));
    out
}

fn criterion7() -> Vec<RowSpec> {
    ["C3:C2", "C5:C4", "C3^2:C4"]
        .into_iter()
        .map(|name| {
            spec(7, format!("G2/{name}"), move |ctx| {
                let inst = ctx.instance(name)?;
                let base = report(&inst.group)?.s_g;
                let g2 = power_group(ctx, &inst.module, 2)?;
                let brute = report(&g2)?.s_g;
                let n = brute.modulus();
                let mut disagree = Vec::new();
                for r in units(n) {
                    let by_module = match gn_semi_rationality(&inst.module, &base.reduce_to(n), r) {
                        Ok(b) => b,
                        Err(Error::BaseNotSemiRational { .. }) => false,
                        Err(e) => return Err(e),
                    };
                    if by_module != brute.contains(r) {
                        disagree.push(r);
                    }
                }
                let ok = disagree.is_empty();
                Ok(Outcome::compare(show(&brute), format!("module criterion agrees on {} residues", units(n).len() - disagree.len()), ok)
                    .with("order", g2.order()?)
                    .with_diff(format!("residues {disagree:?} disagree")))
            })
        })
        .collect()
}

fn all_module_names() -> Vec<String> {
    let mut v = catalog::table2_instance_names();
    v.extend(catalog::odd_instance_names());
    v
}

fn criterion8() -> Vec<RowSpec> {
    all_module_names()
        .into_iter()
        .map(|name| {
            let n = name.clone();
            spec(8, format!("dual/{name}"), move |ctx| {
                let m = &ctx.instance(&n)?.module;
                let dual = m.dual()?;
                let p = m.p() as u64;
                let mut pattern_m = Vec::new();
                let mut pattern_d = Vec::new();
                for k in (1..p).filter(|k| (p - 1) % k == 0) {
                    let a = m.has_k_eigenvalue_property(k, DEFAULT_SCAN_CAP)?;
                    let b = dual.has_k_eigenvalue_property(k, DEFAULT_SCAN_CAP)?;
                    pattern_m.push(format!("k={k}:{}", if a { "yes" } else { "no" }));
                    pattern_d.push(format!("k={k}:{}", if b { "yes" } else { "no" }));
                }
                let ok = pattern_m == pattern_d;
                Ok(Outcome::compare(pattern_m.join(" "), pattern_d.join(" "), ok).with_diff("module and dual differ"))
            })
        })
        .collect()
}

fn criterion9() -> Vec<RowSpec> {
    let mut out: Vec<RowSpec> = ["neg_120", "neg_240", "neg_40", "C5:Q16/a", "C5:Q16/b", "C5:Q16/c"]
        .into_iter()
        .map(|name| {
            spec(9, format!("negative/{name}"), move |ctx| {
                let g = ctx.group(name)?;
                let (qr, text) = qr_verdict(&ctx.table(&g)?);
                Ok(Outcome::compare("not quadratic rational", text, !qr).with("order", g.order()?))
            })
        })
        .collect();
    out.push(spec(9, "negative/C15:C4", |ctx| {
        let g = ctx.group("C15:C4")?;
        let z = g.center()?;
        let central_involutions = z.element_orders()?.iter().filter(|&&o| o == 2).count();
        let elems = g.elements()?;
        let x = elems
            .iter()
            .find(|e| g.element_order(e) == 15)
            .ok_or_else(|| Error::Precondition("no element of order 15".into()))?;
        let c = g.centralizer(x)?.order()?;
        let computed = format!("{central_involutions} central involutions, |C_G(x)| = {c} for |x| = 15");
        Ok(Outcome::compare("0 central involutions, |C_G(x)| = 15", computed, central_involutions == 0 && c == 15)
            .with("order", g.order()?))
    }));
    out
}

fn flags(r: &RationalityReport) -> String {
    format!(
        "semi={} qr={} inverse={} uniform={}",
        r.semi_rational,
        r.quadratic_rational.map_or("?".into(), |b| b.to_string()),
        r.inverse_semi_rational,
        r.uniformly_semi_rational
    )
}

fn criterion10() -> Vec<RowSpec> {
    let mut out = Vec::new();
    for name in ["C3", "C7:C3", "C7^2:C3"] {
        out.push(spec(10, format!("odd/{name}"), move |ctx| {
            let g = ctx.group(name)?;
            let t = ctx.table(&g)?;
            let r = classify(g.classes()?.as_ref(), Some(&t));
            let qr = r.quadratic_rational.unwrap_or(false);
            let ok = r.semi_rational == qr && qr == r.inverse_semi_rational;
            Ok(Outcome::compare("semi = qr = inverse", flags(&r), ok))
        }));
    }
    for name in all_module_names() {
        let n = name.clone();
        out.push(spec(10, format!("frobenius/{name}"), move |ctx| {
            let g = ctx.instance(&n)?.group.clone();
            let t = ctx.table(&g)?;
            let r = classify(g.classes()?.as_ref(), Some(&t));
            let qr = r.quadratic_rational.unwrap_or(false);
            let ok = r.semi_rational == qr && qr == r.uniformly_semi_rational;
            Ok(Outcome::compare("semi = qr = uniform", flags(&r), ok))
        }));
    }
    for name in ["C2", "C4", "Q8", "C2^2", "C4^2"] {
        out.push(spec(10, format!("2-group/{name}"), move |ctx| {
            let g = ctx.group(name)?;
            let class = g.nilpotency_class()?.unwrap_or(u32::MAX);
            let t = ctx.table(&g)?;
            let r = classify(g.classes()?.as_ref(), Some(&t));
            let e = r.exponent;
            let target = UnitClassSet::signed_coset(e, -1, &[5 % e])?;
            let premise = r.quadratic_rational.unwrap_or(false) || r.semi_rational;
            let conclusion = r.rational || (r.inverse_semi_rational && r.s_g.same_set(&target));
            let ok = class <= 2 && (!premise || conclusion);
            Ok(Outcome::compare(
                format!("class <= 2; rational or S_G = {}", target.render()),
                format!("class {class}; {}; S_G = {}", flags(&r), r.s_g.render()),
                ok,
            ))
        }));
    }
    out.push(spec(10, "2-group/Q16", |ctx| {
        let g = ctx.group("Q16")?;
        let class = g.nilpotency_class()?.unwrap_or(u32::MAX);
        let t = ctx.table(&g)?;
        let r = classify(g.classes()?.as_ref(), Some(&t));
        Ok(Outcome::compare(
            "class 3 (outside the class <= 2 hypothesis)",
            format!("class {class}; {}; S_G = {}", flags(&r), r.s_g.render()),
            class == 3,
        ))
    }));
    out
}

fn criterion11() -> Vec<RowSpec> {
    all_module_names()
        .into_iter()
        .filter(|name| {
            catalog::entries()
                .iter()
                .find(|e| &e.name == name)
                .is_some_and(|e| e.order <= 600)
        })
        .map(|name| {
            let n = name.clone();
            spec(11, format!("dual-route/{name}"), move |ctx| {
                let g = ctx.instance(&n)?.group.clone();
                let order = g.order()?;
                if order > ctx.cfg.dixon_cap {
                    return Ok(Outcome {
                        status: Status::Skip,
                        params: vec![("order".into(), order.to_string())],
                        expected: "-".into(),
                        computed: "skipped: cap".into(),
                        diff: None,
                    });
                }
                let frob = ctx.table(&g)?;
                let dixon = dixon_table(&g, ctx.cfg.dixon_cap)?;
                let ok = frob.row_multiset() == dixon.row_multiset();
                Ok(Outcome::compare(format!("{} rows (Frobenius)", frob.len()), format!("{} rows (Dixon)", dixon.len()), ok)
                    .with("order", order)
                    .with_diff("value rows differ"))
            })
        })
        .collect()
}

/// `φ(|x|)` divides `2^{|π(x)|}·|B_G(x)|`, or `2^{|π(x)|+1}·|B_G(x)|` when 8 divides `|x|`.
pub fn bg_divisibility_holds(order: u64, bg_len: u64) -> bool {
    let primes = prime_divisors(order).len() as u32;
    let extra = if two_part(order) <= 4 { 0 } else { 1 };
    let bound = 2u64.pow(primes + extra) * bg_len;
    bound % euler_phi(order) == 0
}

fn criterion12() -> Vec<RowSpec> {
    all_module_names()
        .into_iter()
        .map(|name| {
            let n = name.clone();
            spec(12, format!("structure/{name}"), move |ctx| {
                let inst = ctx.instance(&n)?;
                let g = &inst.group;
                let k = inst.module.kernel_order();
                let h = inst.module.complement().order()?;
                let graph = g.prime_graph()?;
                let comps = graph.components();
                let mut want = vec![prime_divisors(k), prime_divisors(h)];
                want.sort();
                let graph_ok = comps == want;
                let cong_ok = k % h == 1;
                let cls = g.classes()?;
                let t = ctx.table(g)?;
                let qr = t.is_quadratic_rational();
                let bad: Vec<u64> = if qr {
                    (0..cls.len())
                        .filter(|&c| !bg_divisibility_holds(cls.orders[c], cls.bg_image(c).len() as u64))
                        .map(|c| cls.orders[c])
                        .collect()
                } else {
                    Vec::new()
                };
                let computed = format!(
                    "components {comps:?}, |K| mod |H| = {}, B_G violations {bad:?}",
                    k % h
                );
                Ok(Outcome::compare(format!("components {want:?}, |K| mod |H| = 1, B_G violations []"), computed, graph_ok && cong_ok && bad.is_empty())
                    .with("qr", qr))
            })
        })
        .collect()
}

/// Every row, in the fixed reporting order.
pub fn row_specs() -> Vec<RowSpec> {
    let mut out = criterion1();
    out.extend(criterion2());
    for (st, gn) in CUT {
        out.push(s_row(3, st, OrderCheck::None));
        out.push(gn_row(3, st, gn));
    }
    for (st, gn) in ORDER2 {
        out.push(s_row(4, st, OrderCheck::SquareRational));
        out.push(gn_row(4, st, gn));
    }
    for (st, gn) in ORDER4 {
        out.push(s_row(5, st, OrderCheck::LeastFour));
        out.push(gn_row(5, st, gn));
    }
    out.extend(criterion6());
    out.extend(criterion7());
    out.extend(criterion8());
    out.extend(criterion9());
    out.extend(criterion10());
    out.extend(criterion11());
    out.extend(criterion12());
    debug_assert!(out.iter().all(|s| (1..=12).contains(&s.criterion)));
    out
}
