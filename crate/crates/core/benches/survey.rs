use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ptorsion::par::Execution;
use ptorsion::survey::{survey_field, SurveyConfig};

fn survey(c: &mut Criterion) {
    let mut group = c.benchmark_group("survey_field");
    group.sample_size(10);
    for (p, e) in [(5u64, 4u32), (3, 6), (7, 3)] {
        let config = SurveyConfig::exhaustive(p, vec![e], 2);
        let q = p.pow(e);
        let runs = [
            ("sequential", Execution::sequential()),
            ("parallel", Execution::with_threads(0)),
        ];
        for (name, exec) in runs {
            group.bench_with_input(BenchmarkId::new(name, q), &exec, |b, exec| {
                b.iter(|| survey_field(&config, e, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, survey);
criterion_main!(benches);
