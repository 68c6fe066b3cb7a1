// Micro-benchmarks for the projection hot path and treebank I/O.
#include <benchmark/benchmark.h>

#include <sstream>

#include "depproj/conllu.hpp"
#include "depproj/evaluation.hpp"
#include "depproj/projection.hpp"
#include "testutil.hpp"

using namespace depproj;

namespace {

struct Corpus {
    Treebank src;
    std::vector<std::vector<std::string>> tgt;
    std::vector<SentenceAlignment> aligns;
};

Corpus make_corpus(int pairs, int max_len) {
    testutil::Rng rng(12);
    Corpus corpus;
    for (int i = 0; i < pairs; ++i) {
        const int ns = testutil::rand_int(rng, 4, max_len);
        const int nt = testutil::rand_int(rng, 4, max_len);
        corpus.src.sentences.push_back(testutil::random_sentence(ns, rng));
        corpus.tgt.push_back(testutil::target_forms(nt));
        corpus.aligns.push_back(testutil::random_alignment(ns, nt, rng, 20));
    }
    return corpus;
}

void BM_ProjectSentence(benchmark::State& state) {
    const Corpus corpus = make_corpus(256, static_cast<int>(state.range(0)));
    ProjectionConfig cfg;
    cfg.mode = ProjectionMode::collapse_dummy;
    std::size_t i = 0;
    for (auto _ : state) {
        const std::size_t k = i++ % corpus.src.size();
        benchmark::DoNotOptimize(
            project_sentence(corpus.src.sentences[k], corpus.tgt[k], corpus.aligns[k], cfg));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_ProjectSentence)->Arg(8)->Arg(16)->Arg(32);

void BM_ProjectCorpus(benchmark::State& state) {
    const Corpus corpus = make_corpus(4096, 14);
    ProjectionConfig cfg;
    cfg.mode = ProjectionMode::collapse_dummy;
    const unsigned threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            project_corpus(corpus.src, corpus.tgt, corpus.aligns, cfg, threads));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 4096);
}
BENCHMARK(BM_ProjectCorpus)->Arg(1)->Arg(4);

void BM_CollapseDummy(benchmark::State& state) {
    testutil::Rng rng(34);
    std::vector<DepSentence> sentences;
    for (int i = 0; i < 256; ++i) {
        DepSentence sent = testutil::random_sentence(16, rng);
        testutil::mark_random_dummies(sent, rng);
        sentences.push_back(std::move(sent));
    }
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(collapse_dummy_rewrite(sentences[i++ % sentences.size()]));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_CollapseDummy);

void BM_ParseConllu(benchmark::State& state) {
    testutil::Rng rng(56);
    Treebank tb;
    for (int i = 0; i < 512; ++i)
        tb.sentences.push_back(testutil::random_sentence(12, rng));
    const std::string text = write_conllu_string(tb);
    for (auto _ : state) benchmark::DoNotOptimize(parse_conllu_string(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseConllu);

void BM_WriteConllu(benchmark::State& state) {
    testutil::Rng rng(78);
    Treebank tb;
    for (int i = 0; i < 512; ++i)
        tb.sentences.push_back(testutil::random_sentence(12, rng));
    for (auto _ : state) benchmark::DoNotOptimize(write_conllu_string(tb));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 512);
}
BENCHMARK(BM_WriteConllu);

void BM_Score(benchmark::State& state) {
    testutil::Rng rng(90);
    Treebank gold;
    for (int i = 0; i < 1024; ++i)
        gold.sentences.push_back(testutil::random_sentence(12, rng));
    const Treebank system = gold;
    for (auto _ : state) benchmark::DoNotOptimize(score(system, gold));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 1024);
}
BENCHMARK(BM_Score);

}  // namespace

BENCHMARK_MAIN();
