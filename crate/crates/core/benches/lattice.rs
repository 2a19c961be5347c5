use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selattice::topic::build_lattice;
use selattice::{Corpus, CorpusAverages, Document, Execution, TopicConfig};

const KEYWORDS: [&str; 5] = ["k0", "k1", "k2", "k3", "k4"];

/// Random filler with keywords planted near each other.
fn text(len: usize) -> Document {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut toks: Vec<String> = (0..len).map(|_| format!("w{}", rng.random_range(0..2_000))).collect();
    for i in (0..len - 8).step_by(97) {
        let k = rng.random_range(0..KEYWORDS.len());
        toks[i] = KEYWORDS[k].into();
        toks[i + rng.random_range(1..6)] = KEYWORDS[(k + 1) % KEYWORDS.len()].into();
    }
    Document::from_tokens("bench", "xx", &toks).unwrap()
}

fn lattice_scan(c: &mut Criterion) {
    let corpus = Corpus::single(text(50_000));
    let cfg = TopicConfig::new(KEYWORDS);
    let mut g = c.benchmark_group("build_lattice");
    g.sample_size(10);
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        g.bench_function(name, |b| {
            b.iter(|| {
                let avg = CorpusAverages::new(&corpus);
                black_box(build_lattice(&corpus.documents()[0], &cfg, &avg, exec).unwrap())
            })
        });
    }
    g.finish();
}

criterion_group!(benches, lattice_scan);
criterion_main!(benches);
