#include <doctest.h>

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wsdbench/corpus.hpp"
#include "wsdbench/error.hpp"

using namespace wsd;

namespace {

Corpus tiny_corpus() {
    Corpus c;
    WsdInstance a;
    a.task_id = "art.n";
    a.instance_id = "art.1";
    a.context_text = "the art of war";
    a.head_start = 4;
    a.head_end = 7;
    a.gold_senses = {"art%1"};
    WsdInstance b = a;
    b.instance_id = "art.2";
    b.context_text = "modern art shows";
    b.head_start = 7;
    b.head_end = 10;
    WsdInstance d;
    d.task_id = "bar.n";
    d.instance_id = "bar.1";
    d.context_text = "a bar of soap";
    d.head_start = 2;
    d.head_end = 5;
    d.gold_senses = {"bar%1", "bar%2"};
    d.pos_tags.push_back(PosAnnotation{2, 5, 0});
    c.instances = {a, b, d};
    return c;
}

} // namespace

TEST_CASE("parse minimal senseval xml") {
    const std::string xml = R"(<?xml version="1.0"?>
<corpus lang="english">
<lexelt item="art.n">
<instance id="art.40001" docsrc="bnc">
<answer instance="art.40001" senseid="art%1:06:00::"/>
<context>
 the <head>art</head> of computing
</context>
</instance>
</lexelt>
</corpus>
)";
    std::vector<WsdInstance> parsed = parse_senseval2(xml);
    REQUIRE(parsed.size() == 1);
    const WsdInstance& inst = parsed[0];
    CHECK(inst.task_id == "art.n");
    CHECK(inst.instance_id == "art.40001");
    CHECK(inst.head() == "art");
    CHECK(inst.gold_senses == std::set<std::string>{"art%1:06:00::"});
    CHECK(inst.context_text.find("computing") != std::string::npos);
}

TEST_CASE("parse senseval xml with entities and sat tags") {
    const std::string xml =
        "<corpus><lexelt item=\"bar.n\"><instance id=\"bar.1\">"
        "<context>Tom &amp; Jerry at the <head>bar</head> &quot;tonight&quot; "
        "<sat id=\"s1\">extra</sat></context>"
        "</instance></lexelt></corpus>";
    std::vector<WsdInstance> parsed = parse_senseval2(xml);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].head() == "bar");
    CHECK(parsed[0].context_text.find("Tom & Jerry") != std::string::npos);
    CHECK(parsed[0].context_text.find("\"tonight\"") != std::string::npos);
    CHECK(parsed[0].gold_senses.empty());
}

TEST_CASE("parse senseval xml errors") {
    CHECK_THROWS_AS(parse_senseval2("<corpus><lexelt item=\"x.n\"><instance id=\"x.1\">"
                                    "<context>no head here</context></instance></lexelt></corpus>"),
                    Error);
    CHECK_THROWS_AS(parse_senseval2("<corpus><lexelt"), Error);
}

TEST_CASE("answer key parsing") {
    SUBCASE("single line") {
        auto key = parse_answer_key("art.n art.40001 art%1:06:00::\n");
        REQUIRE(key.size() == 1);
        CHECK(key.at("art.40001") == std::set<std::string>{"art%1:06:00::"});
    }
    SUBCASE("multiple senses") {
        auto key = parse_answer_key("art.n art.1 s1 s2\n");
        CHECK(key.at("art.1") == std::set<std::string>{"s1", "s2"});
    }
    SUBCASE("empty input") { CHECK(parse_answer_key("").empty()); }
    SUBCASE("short line rejected") {
        CHECK_THROWS_WITH_AS(parse_answer_key("art.n art.1\n"),
                             doctest::Contains("line 1"), Error);
    }
    SUBCASE("duplicate instance rejected") {
        CHECK_THROWS_AS(parse_answer_key("a.n a.1 s1\na.n a.1 s2\n"), Error);
    }
}

TEST_CASE("answer key application") {
    Corpus c = tiny_corpus();
    std::map<std::string, std::set<std::string>> key;
    key["art.1"] = {"override%1"};
    apply_answer_key(c, key);
    CHECK(c.instances[0].gold_senses == std::set<std::string>{"override%1"});
    CHECK(c.instances[1].gold_senses == std::set<std::string>{"art%1"});
}

TEST_CASE("unassignable flag") {
    WsdInstance inst;
    inst.gold_senses = {"U"};
    CHECK(is_unassignable(inst));
    inst.gold_senses = {"art%1", "U"};
    CHECK(is_unassignable(inst));
    inst.gold_senses = {"art%1"};
    CHECK(!is_unassignable(inst));
}

TEST_CASE("jsonl round trip") {
    Corpus c = tiny_corpus();
    std::ostringstream out;
    save_jsonl(c, out);
    std::istringstream in(out.str());
    Corpus back = load_jsonl(in, c.split);
    CHECK(back == c);

    SUBCASE("empty corpus") {
        Corpus empty;
        std::ostringstream eout;
        save_jsonl(empty, eout);
        CHECK(eout.str().empty());
        std::istringstream ein("");
        CHECK(load_jsonl(ein, Split::Train).instances.empty());
    }
    SUBCASE("serialization is a fixed point") {
        std::ostringstream again;
        save_jsonl(back, again);
        CHECK(again.str() == out.str());
    }
}

TEST_CASE("jsonl load errors") {
    SUBCASE("bad json line") {
        std::istringstream in("{not json\n");
        CHECK_THROWS_WITH_AS(load_jsonl(in, Split::Train), doctest::Contains("line 1"), Error);
    }
    SUBCASE("head span past text end") {
        std::istringstream in(
            R"({"task":"a.n","id":"a.1","text":"ab","head_start":0,"head_end":9,"senses":[],"pos":[]})"
            "\n");
        CHECK_THROWS_WITH_AS(load_jsonl(in, Split::Train), doctest::Contains("a.1"), Error);
    }
}

TEST_CASE("corpus validation") {
    Corpus c = tiny_corpus();
    validate(c);

    SUBCASE("duplicate ids rejected") {
        c.instances[1].instance_id = "art.1";
        CHECK_THROWS_AS(validate(c), Error);
    }
    SUBCASE("empty head rejected") {
        c.instances[0].head_end = c.instances[0].head_start;
        CHECK_THROWS_AS(validate(c), Error);
    }
    SUBCASE("missing task rejected") {
        c.instances[0].task_id.clear();
        CHECK_THROWS_AS(validate(c), Error);
    }
}

TEST_CASE("task listing") {
    Corpus c = tiny_corpus();
    CHECK(c.task_ids() == std::vector<std::string>{"art.n", "bar.n"});
    CHECK(c.task_instances("art.n") == std::vector<size_t>{0, 1});
    CHECK(c.task_instances("bar.n") == std::vector<size_t>{2});
    CHECK(c.task_instances("none.n").empty());
}

TEST_CASE("heldout split") {
    Corpus c;
    for (int t = 0; t < 2; ++t) {
        for (int i = 0; i < 10; ++i) {
            WsdInstance inst;
            inst.task_id = t == 0 ? "a.n" : "b.v";
            inst.instance_id = inst.task_id + "." + std::to_string(i);
            inst.context_text = "word";
            inst.head_end = 4;
            inst.gold_senses = {"s1"};
            c.instances.push_back(std::move(inst));
        }
    }

    SUBCASE("fraction zero keeps everything") {
        auto [tr, dev] = heldout_split(c, 0.0, 42);
        CHECK(dev.instances.empty());
        CHECK(tr.instances.size() == c.instances.size());
    }
    SUBCASE("sizes follow floor arithmetic") {
        Corpus ten;
        ten.instances.assign(c.instances.begin(), c.instances.begin() + 10);
        auto [tr, dev] = heldout_split(ten, 0.2, 42);
        CHECK(tr.instances.size() == 8);
        CHECK(dev.instances.size() == 2);
    }
    SUBCASE("disjoint exhaustive and deterministic") {
        auto [tr1, dev1] = heldout_split(c, 0.25, 7);
        auto [tr2, dev2] = heldout_split(c, 0.25, 7);
        CHECK(tr1 == tr2);
        CHECK(dev1.instances.size() == 5);
        std::set<std::string> seen;
        for (const WsdInstance& i : tr1.instances) seen.insert(i.instance_id);
        for (const WsdInstance& i : dev1.instances) seen.insert(i.instance_id);
        CHECK(seen.size() == c.instances.size());
    }
    SUBCASE("stratified by task") {
        auto [tr, dev] = heldout_split(c, 0.2, 13);
        size_t dev_a = 0;
        for (const WsdInstance& i : dev.instances) dev_a += i.task_id == "a.n" ? 1 : 0;
        CHECK(dev_a == 2);
        CHECK(dev.instances.size() - dev_a == 2);
    }
    SUBCASE("different seeds usually differ") {
        auto [tr1, dev1] = heldout_split(c, 0.3, 1);
        auto [tr2, dev2] = heldout_split(c, 0.3, 2);
        std::set<std::string> d1, d2;
        for (const WsdInstance& i : dev1.instances) d1.insert(i.instance_id);
        for (const WsdInstance& i : dev2.instances) d2.insert(i.instance_id);
        CHECK(d1 != d2);
    }
}
