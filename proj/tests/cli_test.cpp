#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "wsdbench/corpus.hpp"

namespace fs = std::filesystem;
using namespace wsd;

namespace {

struct CmdResult {
    int status = -1;
    std::string output; // stdout and stderr interleaved
};

CmdResult run_cmd(const std::string& args) {
    std::string full = std::string(WSDBENCH_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

WsdInstance make_inst(std::string task, std::string id, std::string text,
                      const std::string& head_word, std::string sense) {
    WsdInstance inst;
    inst.task_id = std::move(task);
    inst.instance_id = std::move(id);
    inst.context_text = std::move(text);
    size_t at = inst.context_text.find(head_word);
    REQUIRE(at != std::string::npos);
    inst.head_start = at;
    inst.head_end = at + head_word.size();
    inst.gold_senses.insert(std::move(sense));
    return inst;
}

// Same two-task toy as the library-level benchmark tests: disjoint indicator
// words, mfs lands at 0.625, every learner that reads the context can reach 1.
Corpus toy_train() {
    Corpus c;
    c.split = Split::Train;
    size_t n = 0;
    auto add = [&](const std::string& task, const std::string& text, const std::string& head,
                   const std::string& sense) {
        c.instances.push_back(make_inst(task, "tr" + std::to_string(n++), text, head, sense));
    };
    add("bank.n", "the loan deposit teller stood near the bank", "bank", "money");
    add("bank.n", "cash vault deposit behind the bank window", "bank", "money");
    add("bank.n", "loan cash teller at the bank counter", "bank", "money");
    add("bank.n", "vault teller loan inside the bank lobby", "bank", "money");
    add("bank.n", "deposit cash vault near the bank door", "bank", "money");
    add("bank.n", "water shore fishing by the bank edge", "bank", "river");
    add("bank.n", "shore water fishing along the bank path", "bank", "river");
    add("bank.n", "fishing water shore near the bank slope", "bank", "river");
    add("star.n", "sky night shine above the star field", "star", "bright");
    add("star.n", "telescope night sky toward the star cluster", "star", "bright");
    add("star.n", "shine telescope sky upon the star glow", "star", "bright");
    add("star.n", "night shine telescope at the star chart", "star", "bright");
    add("star.n", "movie actor fame around the star party", "star", "famous");
    add("star.n", "screen movie actor near the star press", "star", "famous");
    add("star.n", "fame screen movie with the star agent", "star", "famous");
    add("star.n", "actor fame screen beside the star crowd", "star", "famous");
    return c;
}

Corpus toy_test() {
    Corpus c;
    c.split = Split::Test;
    size_t n = 0;
    auto add = [&](const std::string& task, const std::string& text, const std::string& head,
                   const std::string& sense) {
        c.instances.push_back(make_inst(task, "te" + std::to_string(n++), text, head, sense));
    };
    add("bank.n", "teller loan deposit at the bank", "bank", "money");
    add("bank.n", "vault cash deposit by the bank", "bank", "money");
    add("bank.n", "water shore fishing along the bank", "bank", "river");
    add("bank.n", "shore water fishing by the bank", "bank", "river");
    add("star.n", "night sky shine near the star", "star", "bright");
    add("star.n", "telescope sky night at the star", "star", "bright");
    add("star.n", "shine night telescope by the star", "star", "bright");
    add("star.n", "movie actor fame with the star", "star", "famous");
    return c;
}

const char* kToyXml =
    "<corpus lang=\"english\">\n"
    "<lexelt item=\"art.n\">\n"
    "<instance id=\"art.1\">\n"
    "<answer instance=\"art.1\" senseid=\"art%paint\"/>\n"
    "<context> brush canvas near the <head>art</head> gallery </context>\n"
    "</instance>\n"
    "<instance id=\"art.2\">\n"
    "<answer instance=\"art.2\" senseid=\"art%paint\"/>\n"
    "<context> canvas paint beside the <head>art</head> frame </context>\n"
    "</instance>\n"
    "<instance id=\"art.3\">\n"
    "<answer instance=\"art.3\" senseid=\"art%skill\"/>\n"
    "<context> craft skill behind the <head>art</head> of debate </context>\n"
    "</instance>\n"
    "</lexelt>\n"
    "</corpus>\n";

} // namespace

TEST_CASE("argument errors exit 2") {
    CHECK(run_cmd("").status == 2);
    CHECK(run_cmd("--frobnicate").status == 2);
    CHECK(run_cmd("bench --train a --test b").status == 2); // --tsv missing
    CHECK(run_cmd("train --cache x --algo nonsense --out y").status == 2);
    CmdResult help = run_cmd("--help");
    CHECK(help.status == 0);
    CHECK(help.output.find("ingest") != std::string::npos);
    CHECK(help.output.find("bench") != std::string::npos);
    CHECK(run_cmd("--version").status == 0);
}

TEST_CASE("missing input files exit 1") {
    fs::path dir = fresh_dir("wsdbench_cli_missing");
    CmdResult r = run_cmd("featurize --corpus " + (dir / "nope.jsonl").string() + " --out " +
                          (dir / "out.cache").string());
    CHECK(r.status == 1);
    CHECK(r.output.find("error:") != std::string::npos);
    CHECK(r.output.find("cannot open") != std::string::npos);
}

TEST_CASE("ingest featurize train eval pipeline") {
    fs::path dir = fresh_dir("wsdbench_cli_pipeline");

    std::ofstream(dir / "train.xml") << kToyXml;
    CmdResult ingest = run_cmd("ingest --xml " + (dir / "train.xml").string() + " --out " +
                               (dir / "train.jsonl").string());
    CHECK(ingest.status == 0);
    CHECK(ingest.output.find("wrote 3 instances (1 tasks)") != std::string::npos);
    CHECK(fs::is_regular_file(dir / "train.jsonl.manifest.json"));

    CmdResult feat = run_cmd("featurize --corpus " + (dir / "train.jsonl").string() +
                             " --features topical --out " + (dir / "train.cache").string());
    CHECK(feat.status == 0);
    CHECK(feat.output.find("wrote 3 rows") != std::string::npos);

    CmdResult train = run_cmd("train --cache " + (dir / "train.cache").string() +
                              " --algo mfs --out " + (dir / "mfs.model").string());
    CHECK(train.status == 0);
    CHECK(train.output.find("trained 1 task models (mfs)") != std::string::npos);

    // Four test instances; the majority sense is right on three.
    Corpus test;
    test.split = Split::Test;
    test.instances = {
        make_inst("art.n", "t1", "brush near the art gallery", "art", "art%paint"),
        make_inst("art.n", "t2", "canvas by the art frame", "art", "art%paint"),
        make_inst("art.n", "t3", "paint at the art fair", "art", "art%paint"),
        make_inst("art.n", "t4", "skill of the art of war", "art", "art%skill"),
    };
    save_jsonl_file(test, (dir / "test.jsonl").string());

    CmdResult eval = run_cmd("eval --models " + (dir / "mfs.model").string() + " --corpus " +
                             (dir / "test.jsonl").string() + " --out " +
                             (dir / "scores.tsv").string());
    CHECK(eval.status == 0);
    CHECK(eval.output.find("micro recall 0.750000 (3/4)") != std::string::npos);

    std::string scores = slurp(dir / "scores.tsv");
    CHECK(scores.find("task\tn_instances\tn_correct\trecall\n") == 0);
    CHECK(scores.find("art.n\t4\t3\t0.750000\n") != std::string::npos);
    CHECK(scores.find("OVERALL\t4\t3\t0.750000\n") != std::string::npos);

    SUBCASE("artifacts replay byte for byte") {
        CmdResult again = run_cmd("featurize --corpus " + (dir / "train.jsonl").string() +
                                  " --features topical --out " + (dir / "again.cache").string());
        CHECK(again.status == 0);
        CHECK(slurp(dir / "again.cache") == slurp(dir / "train.cache"));

        CmdResult retrain = run_cmd("train --cache " + (dir / "train.cache").string() +
                                    " --algo mfs --out " + (dir / "again.model").string());
        CHECK(retrain.status == 0);
        CHECK(slurp(dir / "again.model") == slurp(dir / "mfs.model"));

        std::string manifest = slurp(dir / "again.model.manifest.json");
        CHECK(manifest.find("wsdbench-manifest") != std::string::npos);
        CHECK(manifest.find("\"command\": \"train\"") != std::string::npos);
    }

    SUBCASE("saved vocabulary reuse") {
        CmdResult save = run_cmd("featurize --corpus " + (dir / "train.jsonl").string() +
                                 " --features topical --out " + (dir / "v.cache").string() +
                                 " --save-vocab " + (dir / "train.vocab").string());
        CHECK(save.status == 0);
        CmdResult reuse = run_cmd("featurize --corpus " + (dir / "train.jsonl").string() +
                                  " --use-vocab " + (dir / "train.vocab").string() + " --out " +
                                  (dir / "reuse.cache").string());
        CHECK(reuse.status == 0);
        CHECK(slurp(dir / "reuse.cache") == slurp(dir / "train.cache"));
    }

    fs::remove_all(dir);
}

TEST_CASE("bench writes the report grid") {
    fs::path dir = fresh_dir("wsdbench_cli_bench");
    save_jsonl_file(toy_train(), (dir / "train.jsonl").string());
    save_jsonl_file(toy_test(), (dir / "test.jsonl").string());
    std::string common = "bench --train " + (dir / "train.jsonl").string() + " --test " +
                         (dir / "test.jsonl").string();

    SUBCASE("golden tsv for mfs and nb") {
        CmdResult r = run_cmd(common + " --algo mfs --algo nb --features topical --features all" +
                              " --tsv " + (dir / "report.tsv").string());
        CHECK(r.status == 0);
        CHECK(slurp(dir / "report.tsv") ==
              "algorithm\tfeature_set\tmicro_recall\tp_value_vs_dbn\tn_tasks_failed\n"
              "mfs\ttopical\t0.625000\t-\t0\n"
              "mfs\tall\t0.625000\t-\t0\n"
              "nb\ttopical\t1.000000\t-\t0\n"
              "nb\tall\t1.000000\t-\t0\n");
    }

    SUBCASE("identical runs give identical artifacts across job counts") {
        std::string flags = " --algo mfs --algo nb --algo logreg --features all --epochs 20";
        CmdResult r1 = run_cmd(common + flags + " --jobs 1 --tsv " + (dir / "a.tsv").string() +
                               " --save-models " + (dir / "models_a").string());
        CmdResult r2 = run_cmd(common + flags + " --jobs 3 --tsv " + (dir / "b.tsv").string() +
                               " --save-models " + (dir / "models_b").string());
        CHECK(r1.status == 0);
        CHECK(r2.status == 0);
        CHECK(slurp(dir / "a.tsv") == slurp(dir / "b.tsv"));
        size_t n_models = 0;
        for (const auto& entry : fs::directory_iterator(dir / "models_a")) {
            if (entry.path().extension() != ".json") continue;
            if (entry.path().string().find("manifest") != std::string::npos) continue;
            ++n_models;
            CHECK(slurp(entry.path()) == slurp(dir / "models_b" / entry.path().filename()));
        }
        CHECK(n_models == 6); // 3 algorithms x 2 tasks
    }

    SUBCASE("json report renders to markdown") {
        CmdResult r = run_cmd(common + " --algo mfs --features all --tsv " +
                              (dir / "r.tsv").string() + " --json " + (dir / "r.json").string());
        CHECK(r.status == 0);
        CmdResult render = run_cmd("report --in " + (dir / "r.json").string() + " --out " +
                                   (dir / "r.md").string());
        CHECK(render.status == 0);
        std::string md = slurp(dir / "r.md");
        CHECK(md.find("| algorithm | feature_set |") == 0);
        CHECK(md.find("| mfs | all | 0.625000 |") != std::string::npos);
    }

    SUBCASE("per-task failures exit 3 and stay in the table") {
        CmdResult r = run_cmd(common + " --algo pca-knn --features all --dim 30 --tsv " +
                              (dir / "fail.tsv").string());
        CHECK(r.status == 3);
        CHECK(r.output.find("task trainings failed") != std::string::npos);
        CHECK(slurp(dir / "fail.tsv") ==
              "algorithm\tfeature_set\tmicro_recall\tp_value_vs_dbn\tn_tasks_failed\n"
              "pca-knn\tall\t-\t-\t2\n");
    }

    fs::remove_all(dir);
}

TEST_CASE("bad tuning values exit 1") {
    fs::path dir = fresh_dir("wsdbench_cli_tuning");
    save_jsonl_file(toy_train(), (dir / "train.jsonl").string());
    save_jsonl_file(toy_test(), (dir / "test.jsonl").string());
    CmdResult r = run_cmd("bench --train " + (dir / "train.jsonl").string() + " --test " +
                          (dir / "test.jsonl").string() + " --tsv " + (dir / "r.tsv").string() +
                          " --algo dbn --features all --layers 10,0,10");
    CHECK(r.status == 1);
    CHECK(r.output.find("error:") != std::string::npos);
    CHECK(r.output.find("--layers") != std::string::npos);
    fs::remove_all(dir);
}
