use criterion::{black_box, criterion_group, criterion_main, Criterion};

use dcat::dblcat::{DoubleCategory, Span};
use dcat::dsl::{parse_document, print_document, Document, Entry};
use dcat::theory::{boolean_model, check_model};
use dcat::universal::sample::{Sampler, Sizes};
use dcat::universal::{check_universal_product, product_comparison, span_product, CheckOptions};

fn spans(c: &mut Criterion) {
    let mut s = Sampler::new(1);
    let x = s.set(3, 3);
    let pairs: Vec<_> = (0..32).map(|_| (s.span(&x, &x, 4), s.span(&x, &x, 4))).collect();
    c.bench_function("span_compose", |b| {
        b.iter(|| {
            for (m, n) in &pairs {
                black_box(Span.compose_pro(m, n).unwrap());
            }
        })
    });
}

fn products(c: &mut Criterion) {
    let mut s = Sampler::new(2);
    let families: Vec<_> = (0..16).map(|_| s.span_family(&Sizes::default()).unwrap()).collect();
    c.bench_function("span_product", |b| {
        b.iter(|| {
            for m in &families {
                black_box(span_product(m).unwrap());
            }
        })
    });
    let pairs: Vec<_> = (0..16).map(|_| s.composable_pair(&Sizes::default()).unwrap()).collect();
    c.bench_function("product_comparison", |b| {
        b.iter(|| {
            for (m, n) in &pairs {
                black_box(product_comparison(&Span, m, n).unwrap());
            }
        })
    });
    let small = Sizes {
        max_index: 2,
        max_carrier: 2,
        max_apex: 2,
        min_carrier: 1,
    };
    let m = s.span_family(&small).unwrap();
    let p = span_product(&m).unwrap();
    let opts = CheckOptions { bound: 2, budget: 1_000_000 };
    c.bench_function("check_universal_product_bound_2", |b| b.iter(|| black_box(check_universal_product(&Span, &p, &opts))));
}

fn models(c: &mut Criterion) {
    let model = boolean_model();
    let mut group = c.benchmark_group("theory");
    group.sample_size(10);
    group.bench_function("check_boolean_model", |b| b.iter(|| black_box(check_model(&model, 3))));
    group.finish();
}

fn documents(c: &mut Criterion) {
    let doc = Document::new().with("boolean", Entry::model(&boolean_model()));
    let text = print_document(&doc);
    c.bench_function("print_model_document", |b| b.iter(|| black_box(print_document(&doc))));
    c.bench_function("parse_model_document", |b| b.iter(|| black_box(parse_document(&text).unwrap())));
}

criterion_group!(kernel, spans, products, models, documents);
criterion_main!(kernel);
