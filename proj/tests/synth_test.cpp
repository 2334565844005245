#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "wsdbench/corpus.hpp"
#include "wsdbench/error.hpp"
#include "wsdbench/synth.hpp"

using namespace wsd;

namespace {

size_t count_occurrences(const std::string& text, const std::string& needle) {
    size_t n = 0;
    for (size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + 1)) {
        ++n;
    }
    return n;
}

std::map<std::string, std::map<std::string, size_t>> sense_counts(const Corpus& corpus) {
    std::map<std::string, std::map<std::string, size_t>> counts;
    for (const WsdInstance& inst : corpus.instances) {
        REQUIRE(inst.gold_senses.size() == 1);
        ++counts[inst.task_id][*inst.gold_senses.begin()];
    }
    return counts;
}

} // namespace

TEST_CASE("synthetic corpus shape") {
    SynthCorpora c = make_synthetic();
    CHECK(c.train.split == Split::Train);
    CHECK(c.test.split == Split::Test);
    CHECK(c.train.instances.size() == 1000);
    CHECK(c.test.instances.size() == 500);

    std::vector<std::string> want_tasks{"alpha.n", "beta.v", "gamma.n", "delta.v", "epsilon.n"};
    CHECK(c.train.task_ids() == want_tasks);
    CHECK(c.test.task_ids() == want_tasks);

    auto train_counts = sense_counts(c.train);
    auto test_counts = sense_counts(c.test);
    for (const std::string& task : want_tasks) {
        std::string head = task.substr(0, task.size() - 2);
        CHECK(train_counts[task][head + "%1"] == 130);
        CHECK(train_counts[task][head + "%2"] == 70);
        CHECK(test_counts[task][head + "%1"] == 65);
        CHECK(test_counts[task][head + "%2"] == 35);
    }
}

TEST_CASE("synthetic instances carry their sense indicators") {
    SynthCorpora c = make_synthetic();
    for (const Corpus* corpus : {&c.train, &c.test}) {
        for (const WsdInstance& inst : corpus->instances) {
            std::string head = inst.head();
            CHECK(inst.task_id.substr(0, head.size()) == head);

            const std::string& sense = *inst.gold_senses.begin();
            std::string gold_base = head + (sense.back() == '1' ? "1" : "2");
            std::string other_base = head + (sense.back() == '1' ? "2" : "1");
            size_t gold_hits = 0;
            for (char suffix : {'x', 'y', 'z'}) {
                gold_hits += count_occurrences(inst.context_text, gold_base + suffix);
                CHECK(count_occurrences(inst.context_text, other_base + suffix) == 0);
            }
            CHECK(gold_hits == 2);
        }
    }
}

TEST_CASE("synthetic corpus is deterministic") {
    SynthCorpora a = make_synthetic();
    SynthCorpora b = make_synthetic();
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);

    SynthConfig other;
    other.seed = 8;
    SynthCorpora d = make_synthetic(other);
    CHECK_FALSE(a.train == d.train);
}

TEST_CASE("synthetic corpus validation") {
    SynthConfig config;
    config.test_minor = 0;
    CHECK_THROWS_AS(make_synthetic(config), Error);
}

TEST_CASE("checked-in synthetic snapshot matches regeneration") {
    // data/synthetic/*.jsonl are committed artifacts of make_synthetic();
    // regenerating must reproduce them byte for byte.
    SynthCorpora c = make_synthetic();
    const struct {
        const char* path;
        const Corpus* corpus;
    } snapshots[] = {
        {WSDBENCH_SOURCE_DIR "/data/synthetic/train.jsonl", &c.train},
        {WSDBENCH_SOURCE_DIR "/data/synthetic/test.jsonl", &c.test},
    };
    for (const auto& snap : snapshots) {
        INFO("snapshot ", snap.path);
        std::ifstream in(snap.path, std::ios::binary);
        REQUIRE_MESSAGE(in.good(), "missing checked-in snapshot");
        std::ostringstream disk;
        disk << in.rdbuf();
        std::ostringstream fresh;
        save_jsonl(*snap.corpus, fresh);
        CHECK(disk.str() == fresh.str());
    }
}
