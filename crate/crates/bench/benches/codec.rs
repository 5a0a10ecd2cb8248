use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rllsidc::rll_front::front_encode;
use rllsidc::sidc::embed_encode;
use rllsidc::{correct, decode_message, encode_message, run_campaign, CodeParams};
use rllsidc_bench::{damaged_codewords, messages};

const SHAPES: [(usize, usize); 3] = [(14, 4), (30, 5), (250, 8)];

fn front_end(c: &mut Criterion) {
    let mut group = c.benchmark_group("front_encode");
    for (k, r) in SHAPES {
        let cp = CodeParams::derive(k, r, None, None).unwrap();
        let inputs = messages(k, 64, 1);
        group.bench_with_input(BenchmarkId::from_parameter(k), &inputs, |b, inputs| {
            b.iter(|| {
                for u in inputs {
                    black_box(front_encode(u, cp.front()).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn embed(c: &mut Criterion) {
    let mut group = c.benchmark_group("embed_encode");
    for (k, r) in SHAPES {
        let cp = CodeParams::derive(k, r, None, None).unwrap();
        let inputs: Vec<_> = messages(k, 64, 2)
            .iter()
            .map(|u| front_encode(u, cp.front()).unwrap())
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(k), &inputs, |b, inputs| {
            b.iter(|| {
                for y in inputs {
                    black_box(embed_encode(&cp, y).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn full_encode(c: &mut Criterion) {
    let cp = CodeParams::derive(30, 5, None, None).unwrap();
    let inputs = messages(30, 64, 3);
    c.bench_function("encode_message/30", |b| {
        b.iter(|| {
            for u in &inputs {
                black_box(encode_message(&cp, u).unwrap());
            }
        })
    });
}

fn correction(c: &mut Criterion) {
    let mut group = c.benchmark_group("correct");
    for (k, r) in SHAPES {
        let cp = CodeParams::derive(k, r, None, None).unwrap();
        let inputs = damaged_codewords(&cp, 64, 4);
        group.bench_with_input(BenchmarkId::from_parameter(k), &inputs, |b, inputs| {
            b.iter(|| {
                for (_, received) in inputs {
                    black_box(correct(&cp, received).unwrap());
                }
            })
        });
    }
    group.finish();

    let cp = CodeParams::derive(30, 5, None, None).unwrap();
    let inputs = damaged_codewords(&cp, 64, 5);
    c.bench_function("decode_message/30", |b| {
        b.iter(|| {
            for (_, received) in &inputs {
                black_box(decode_message(&cp, received).unwrap());
            }
        })
    });
}

fn campaign(c: &mut Criterion) {
    let cp = CodeParams::derive(30, 5, None, None).unwrap();
    let mut group = c.benchmark_group("campaign");
    group.sample_size(10);
    group.bench_function("1000_trials/30", |b| {
        b.iter(|| black_box(run_campaign(&cp, 7, 1000).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, front_end, embed, full_encode, correction, campaign);
criterion_main!(benches);
