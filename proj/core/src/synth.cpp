#include "wsdbench/synth.hpp"

#include <array>
#include <cctype>
#include <string>
#include <vector>

#include "wsdbench/error.hpp"
#include "wsdbench/rng.hpp"

namespace wsd {

namespace {

constexpr std::array<const char*, 5> kHeads = {"alpha", "beta", "gamma", "delta", "epsilon"};
constexpr std::array<const char*, 5> kPosSuffix = {".n", ".v", ".n", ".v", ".n"};

const std::vector<std::string> kFillers = {
    "the",      "of",      "and",     "in",      "market",  "garden",  "river",   "stone",
    "window",   "music",   "doctor",  "letter",  "mountain", "coffee", "bridge",  "winter",
    "summer",   "animal",  "village", "engine",  "forest",  "island",  "jacket",  "kitchen",
    "ladder",   "meadow",  "needle",  "ocean",   "palace",  "quarry",  "rabbit",  "saddle",
    "tunnel",   "valley",  "wagon",   "anchor",  "basket",  "candle",  "dinner",  "evening",
    "feather",  "guitar",  "hammer",  "insect",  "jungle",  "kettle",  "lantern", "mirror",
    "notebook", "orchard", "pencil",  "harbor",  "copper",  "timber",  "barrel",  "cellar"};

// Indicator words carry a digit so stemming and stopword filtering leave them
// untouched; three per sense, two sampled per instance.
std::array<std::string, 3> indicators(const std::string& head, int sense) {
    std::string base = head + std::to_string(sense);
    return {base + "x", base + "y", base + "z"};
}

WsdInstance make_instance(const std::string& task_id, const std::string& instance_id,
                          const std::string& head, const std::string& sense, int sense_number,
                          Rng& rng) {
    std::array<std::string, 3> pool = indicators(head, sense_number);
    size_t skip = rng.below(3);
    std::vector<std::string> picked;
    for (size_t i = 0; i < 3; ++i) {
        if (i != skip) picked.push_back(pool[i]);
    }
    if (rng.below(2) == 1) std::swap(picked[0], picked[1]);

    auto filler = [&rng]() -> const std::string& { return kFillers[rng.below(kFillers.size())]; };

    std::vector<std::string> words;
    size_t n_pre = 1 + rng.below(3);
    for (size_t i = 0; i < n_pre; ++i) words.push_back(filler());
    words.push_back(picked[0]);
    if (rng.below(2) == 1) words.push_back(filler());
    size_t head_pos = words.size();
    words.push_back(head);
    if (rng.below(2) == 1) words.push_back(filler());
    words.push_back(picked[1]);
    size_t n_post = 2 + rng.below(3);
    for (size_t i = 0; i < n_post; ++i) words.push_back(filler());

    WsdInstance inst;
    inst.task_id = task_id;
    inst.instance_id = instance_id;
    inst.gold_senses.insert(sense);

    for (size_t i = 0; i < words.size(); ++i) {
        if (i > 0) inst.context_text += ' ';
        if (i == head_pos) {
            inst.head_start = inst.context_text.size();
            inst.context_text += words[i];
            inst.head_end = inst.context_text.size();
        } else {
            inst.context_text += words[i];
        }
    }
    inst.context_text += '.';

    if (rng.below(2) == 1) {
        size_t n_second = 3 + rng.below(3);
        for (size_t i = 0; i < n_second; ++i) {
            std::string w = filler();
            if (i == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
            inst.context_text += ' ';
            inst.context_text += w;
        }
        inst.context_text += '.';
    }
    return inst;
}

void fill_split(Corpus& corpus, const std::string& task_id, const std::string& head,
                const std::string& tag, size_t major, size_t minor, Rng& rng) {
    std::string major_sense = head + "%1";
    std::string minor_sense = head + "%2";
    size_t serial = 0;
    for (size_t i = 0; i < major + minor; ++i) {
        bool is_major = i < major;
        std::string id = task_id + "." + tag + "." + std::to_string(serial++);
        corpus.instances.push_back(make_instance(task_id, id, head,
                                                 is_major ? major_sense : minor_sense,
                                                 is_major ? 1 : 2, rng));
    }
}

} // namespace

SynthCorpora make_synthetic(const SynthConfig& config) {
    if (config.train_major == 0 || config.train_minor == 0 || config.test_major == 0 ||
        config.test_minor == 0) {
        throw Error("synthetic corpus: all split sizes must be positive");
    }
    SynthCorpora out;
    out.train.split = Split::Train;
    out.test.split = Split::Test;
    Rng rng(config.seed);
    for (size_t t = 0; t < kHeads.size(); ++t) {
        std::string head = kHeads[t];
        std::string task_id = head + kPosSuffix[t];
        fill_split(out.train, task_id, head, "train", config.train_major, config.train_minor, rng);
        fill_split(out.test, task_id, head, "test", config.test_major, config.test_minor, rng);
    }
    validate(out.train);
    validate(out.test);
    return out;
}

} // namespace wsd
