//! Acceptance suite. Prints one line per criterion, then checks the reported values
//! against coset expansions done here and against brute-force enumeration.
//!
//! Exit status is nonzero when a row's status differs from the recorded state, or an
//! oracle disagrees with the library.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::sync::Arc;

use frobrat::catalog;
use frobrat::harness::{criterion_title, summarize, verify_paper, HarnessConfig, Status, VerificationRow};
use frobrat::modules::build_semidirect;
use frobrat::{Element, GroupHandle};

/// Rows that fail against the stated values; see README, "Known mismatches".
const KNOWN_FAILURES: [&str; 4] = ["S_G/C3^4:H1", "S_Gn/C3^4:H1", "S_G/C5^4:H2", "S_Gn/C5^4:H2"];

enum Stated {
    Coset(i64, &'static [u64]),
    List(&'static [i64]),
}

/// Stated `S_G` values with their moduli.
const STATED: [(&str, u64, Stated); 19] = [
    ("C3^2:C4", 12, Stated::Coset(-1, &[5])),
    ("C5:C4", 20, Stated::Coset(-1, &[13])),
    ("C7:C6", 42, Stated::Coset(-1, &[19])),
    ("C7^2:C3xQ8", 84, Stated::Coset(-1, &[19, 43])),
    ("C5^2:C3:C4", 60, Stated::Coset(-1, &[17, 41])),
    ("C5^2:SL2_3", 60, Stated::Coset(-1, &[7, 19])),
    ("C7^2:SL2_3", 84, Stated::Coset(-1, &[13, 19])),
    ("C3^4:Q16", 24, Stated::Coset(5, &[7, 23])),
    ("C5^4:Q16", 40, Stated::Coset(3, &[31, 9])),
    ("C5^4:C3:Q8", 60, Stated::Coset(7, &[11, 49])),
    ("C7^2:SL2_3.C2", 168, Stated::Coset(5, &[73, 113, 127])),
    ("C5^2:C6", 30, Stated::Coset(-7, &[19])),
    ("C13:C6", 78, Stated::Coset(-7, &[49])),
    ("C3^4:H1", 60, Stated::Coset(-7, &[41, 49])),
    ("C5^4:C3xQ8", 60, Stated::List(&[17, 23, -13, -7])),
    ("C13^2:C3xQ8", 156, Stated::Coset(-7, &[49, 79])),
    ("C5^4:H2", 120, Stated::Coset(-13, &[11, 49])),
    ("C5^4:SL2_3.C2", 120, Stated::Coset(-13, &[31, 41, 49])),
    ("C11^2:SL2_5", 660, Stated::Coset(-7, &[541, 529, 221, 331])),
];

/// Instances whose square `G_2` is small enough to enumerate.
const G2_ORACLE: [&str; 12] = [
    "C3^2:C4",
    "C5:C4",
    "C7:C6",
    "C7^2:C3xQ8",
    "C5^2:C3:C4",
    "C5^2:SL2_3",
    "C7^2:SL2_3",
    "C5^2:C6",
    "C13:C6",
    "C5^2:Q8",
    "C3^4:Q16",
    "C7^2:SL2_3.C2",
];

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn expand(n: u64, stated: &Stated) -> BTreeSet<u64> {
    let reduce = |x: i64| x.rem_euclid(n as i64) as u64;
    match stated {
        Stated::List(xs) => xs.iter().map(|&x| reduce(x)).collect(),
        Stated::Coset(r, gens) => {
            let mut span = BTreeSet::from([1 % n]);
            loop {
                let next: BTreeSet<u64> = span
                    .iter()
                    .flat_map(|&a| gens.iter().map(move |&g| a * g % n))
                    .chain(span.iter().copied())
                    .collect();
                if next.len() == span.len() {
                    break;
                }
                span = next;
            }
            span.iter().map(|&a| reduce(*r) * a % n).collect()
        }
    }
}

/// Members listed after `= {` in a rendered set.
fn members(text: &str) -> Option<BTreeSet<u64>> {
    let body = text.split("= {").nth(1)?.strip_suffix('}')?;
    if body.is_empty() {
        return Some(BTreeSet::new());
    }
    body.split(',').map(|x| x.parse().ok()).collect()
}

/// `S_G` by enumeration: classes are orbits under conjugation by the generators.
fn brute_s(g: &GroupHandle) -> (u64, BTreeSet<u64>) {
    let elems = g.elements().expect("enumerable");
    let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let gens: Vec<(Element, Element)> = g.gens().iter().map(|s| (s.clone(), g.inv(s))).collect();
    let mut class = vec![usize::MAX; elems.len()];
    let mut reps = Vec::new();
    for start in 0..elems.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(start);
        class[start] = id;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for (s, si) in &gens {
                let y = g.mul(&g.mul(si, &elems[i]), s);
                let j = index[&y];
                if class[j] == usize::MAX {
                    class[j] = id;
                    stack.push(j);
                }
            }
        }
    }
    let orders: Vec<u64> = reps.iter().map(|&i| g.element_order(&elems[i])).collect();
    let exp = orders.iter().fold(1, |a, &o| a / gcd(a, o) * o);
    // for each class: order and the class of x^j for every j
    let powers: Vec<(u64, Vec<usize>)> = reps
        .iter()
        .zip(&orders)
        .map(|(&i, &o)| {
            let x = &elems[i];
            let mut cur = g.identity();
            let mut out = Vec::with_capacity(o as usize);
            for _ in 0..o {
                out.push(class[index[&cur]]);
                cur = g.mul(&cur, x);
            }
            (o, out)
        })
        .collect();
    let s = (1..=exp)
        .filter(|&r| gcd(r, exp) == 1)
        .filter(|&r| {
            powers.iter().all(|(o, cls)| {
                let (own, twin) = (cls[1 % *o as usize], cls[(r % o) as usize]);
                (1..*o).filter(|&j| gcd(j, *o) == 1).all(|j| {
                    let c = cls[j as usize];
                    c == own || c == twin
                })
            })
        })
        .map(|r| r % exp)
        .collect();
    (exp, s)
}

fn find<'a>(rows: &'a [VerificationRow], name: &str) -> Option<&'a VerificationRow> {
    rows.iter().find(|r| r.name == name)
}

fn main() -> ExitCode {
    let rows = verify_paper(HarnessConfig::default());
    let mut problems = Vec::new();

    for c in 1..=12u8 {
        let own: Vec<VerificationRow> = rows.iter().filter(|r| r.criterion == c).cloned().collect();
        let status = summarize(&own);
        for r in own.iter().filter(|r| r.status != Status::Pass) {
            println!("    {}", r.machine_line());
        }
        let passed = own.iter().filter(|r| r.status == Status::Pass).count();
        println!(
            "criterion {c}: {status} {} (exact, {passed}/{} rows pass)",
            criterion_title(c),
            own.len()
        );
        for r in &own {
            let known = KNOWN_FAILURES.contains(&r.name.as_str());
            match (known, r.status) {
                (false, Status::Pass) | (true, Status::Fail) => {}
                (_, s) => problems.push(format!("{} reported {s}", r.name)),
            }
        }
    }

    for (name, n, stated) in &STATED {
        let want = expand(*n, stated);
        match find(&rows, &format!("S_G/{name}")).and_then(|r| members(&r.expected)) {
            Some(got) if got == want => {}
            got => problems.push(format!("stated S_G/{name}: harness expects {got:?}, source gives {want:?}")),
        }
        let inst = catalog::frobenius_instance(name).expect("catalog instance");
        let (exp, brute) = brute_s(&inst.group);
        let computed = find(&rows, &format!("S_G/{name}")).and_then(|r| members(&r.computed));
        if exp != *n || computed.as_ref() != Some(&brute) {
            problems.push(format!("oracle S_G/{name}: enumeration gives {brute:?} mod {exp}, library {computed:?}"));
        }
    }
    println!("oracle: S_G by enumeration agrees on {} families", STATED.len());

    for name in G2_ORACLE {
        let inst = catalog::frobenius_instance(name).expect("catalog instance");
        let g2 = build_semidirect(Arc::new(inst.module.power(2).expect("power"))).expect("G_2");
        let (_, brute) = brute_s(&g2);
        let computed = find(&rows, &format!("S_Gn/{name}")).and_then(|r| members(&r.computed));
        if computed.as_ref() != Some(&brute) {
            problems.push(format!("oracle S_Gn/{name}: enumeration of G_2 gives {brute:?}, library {computed:?}"));
        }
    }
    println!("oracle: S_(G_2) by enumeration agrees on {} families", G2_ORACLE.len());

    let failing = rows.iter().filter(|r| r.status == Status::Fail).count();
    println!(
        "acceptance: {} rows, {failing} failing ({} known mismatches)",
        rows.len(),
        KNOWN_FAILURES.len()
    );
    if problems.is_empty() {
        ExitCode::SUCCESS
    } else {
        for p in &problems {
            eprintln!("unexpected: {p}");
        }
        ExitCode::FAILURE
    }
}
