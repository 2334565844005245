#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "wsdbench/baselines.hpp"
#include "wsdbench/dbn.hpp"
#include "wsdbench/features.hpp"
#include "wsdbench/linalg.hpp"
#include "wsdbench/rng.hpp"
#include "wsdbench/synth.hpp"
#include "wsdbench/textproc.hpp"

namespace {

const wsd::Corpus& synth_train() {
    static const wsd::Corpus corpus = wsd::make_synthetic().train;
    return corpus;
}

void bm_porter_stem(benchmark::State& state) {
    const std::vector<std::string> words = {"caresses",   "ponies",     "relational",
                                            "conditional", "adjustable", "triplicate",
                                            "probate",     "controlling", "rolled"};
    for (auto _ : state) {
        for (const std::string& w : words) benchmark::DoNotOptimize(wsd::porter_stem(w));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * words.size()));
}
BENCHMARK(bm_porter_stem);

void bm_tokenize(benchmark::State& state) {
    const std::string text =
        "The committee met on Friday. Dr. Smith presented the art exhibit, and the panel "
        "discussed whether the channel would carry the broadcast after the bar closed.";
    for (auto _ : state) benchmark::DoNotOptimize(wsd::tokenize(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(bm_tokenize);

void bm_encode_instance(benchmark::State& state) {
    const wsd::Corpus& corpus = synth_train();
    wsd::FeatureConfig config;
    static const wsd::Vocabulary vocab = wsd::Vocabulary::build(corpus, config);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wsd::encode(corpus.instances[i], vocab));
        i = (i + 1) % corpus.instances.size();
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(bm_encode_instance);

void bm_sym_eig(benchmark::State& state) {
    const size_t n = static_cast<size_t>(state.range(0));
    wsd::Rng rng(7);
    wsd::DenseMatrix a(n, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            double v = rng.uniform() - 0.5;
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    for (auto _ : state) benchmark::DoNotOptimize(wsd::sym_eig(a));
}
BENCHMARK(bm_sym_eig)->Arg(10)->Arg(30)->Arg(60);

void bm_gram_rbf(benchmark::State& state) {
    const wsd::Corpus& corpus = synth_train();
    wsd::FeatureConfig config;
    static const wsd::Vocabulary vocab = wsd::Vocabulary::build(corpus, config);
    std::vector<wsd::SparseBinaryVector> xs;
    for (size_t i = 0; i < 60; ++i) xs.push_back(wsd::encode(corpus.instances[i], vocab));
    const wsd::KernelSpec kernel = wsd::KernelSpec::rbf(3.0);
    for (auto _ : state) benchmark::DoNotOptimize(wsd::gram(xs, kernel));
}
BENCHMARK(bm_gram_rbf);

void bm_cd1_epoch(benchmark::State& state) {
    wsd::Rng rng(42);
    wsd::RbmLayer rbm = wsd::rbm_init(64, 50, rng);
    std::vector<std::vector<double>> batch;
    for (size_t i = 0; i < 30; ++i) {
        std::vector<double> v(64);
        for (double& e : v) e = rng.uniform() < 0.3 ? 1.0 : 0.0;
        batch.push_back(std::move(v));
    }
    for (auto _ : state) benchmark::DoNotOptimize(wsd::cd1_update(rbm, batch, 0.1, rng));
}
BENCHMARK(bm_cd1_epoch);

void bm_logreg_epoch(benchmark::State& state) {
    const wsd::Corpus& corpus = synth_train();
    wsd::FeatureConfig config;
    static const wsd::Vocabulary vocab = wsd::Vocabulary::build(corpus, config);
    std::vector<wsd::SparseBinaryVector> x;
    std::vector<size_t> y;
    std::vector<std::string> label_names;
    for (const wsd::WsdInstance& inst : corpus.instances) {
        x.push_back(wsd::encode(inst, vocab));
        label_names.push_back(*inst.gold_senses.begin());
    }
    wsd::LabelSpace labels = wsd::LabelSpace::from_labels(label_names);
    for (const std::string& l : label_names) y.push_back(labels.index_of(l));
    wsd::TrainConfig tc;
    tc.epochs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(wsd::train_logreg(x, y, labels, tc));
}
BENCHMARK(bm_logreg_epoch);

} // namespace

BENCHMARK_MAIN();
