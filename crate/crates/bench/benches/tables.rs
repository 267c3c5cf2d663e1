use criterion::{criterion_group, criterion_main, Criterion};

use frobrat::catalog;
use frobrat::chartable::{dixon_table, frobenius_table, DEFAULT_DIXON_CAP};
use frobrat::group::DEFAULT_CAP;
use frobrat::{character_table, classify, TableConfig};

fn classes(c: &mut Criterion) {
    let g = catalog::frobenius_instance("C5^4:SL2_3.C2").unwrap().group.clone();
    c.bench_function("classes C5^4:SL2_3.C2", |b| {
        b.iter(|| g.recapped(DEFAULT_CAP).classes().unwrap().reps.len())
    });
}

fn dixon(c: &mut Criterion) {
    let g = catalog::group("SL2_3").unwrap();
    c.bench_function("dixon SL2_3", |b| {
        b.iter(|| dixon_table(&g.recapped(DEFAULT_CAP), DEFAULT_DIXON_CAP).unwrap().len())
    });
}

fn frobenius(c: &mut Criterion) {
    let inst = catalog::frobenius_instance("C7^2:SL2_3").unwrap();
    let cfg = TableConfig::default();
    let h_table = character_table(inst.module.complement(), &cfg).unwrap();
    c.bench_function("frobenius table C7^2:SL2_3", |b| {
        b.iter(|| frobenius_table(&inst.group.recapped(DEFAULT_CAP), &h_table).unwrap().len())
    });
}

fn semi_rationality(c: &mut Criterion) {
    let g = catalog::frobenius_instance("C11^2:SL2_5").unwrap().group.clone();
    let cls = g.classes().unwrap();
    c.bench_function("classify C11^2:SL2_5", |b| b.iter(|| classify(&cls, None).s_g.len()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = classes, dixon, frobenius, semi_rationality
}
criterion_main!(benches);
