#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wsd {

/// One precomputed tag annotation: byte span of a token plus its tag index.
struct PosAnnotation {
    size_t begin = 0;
    size_t end = 0;
    int tag = 0;
};

/// One labeled disambiguation context. head_start/head_end delimit the
/// target-word occurrence inside context_text (byte offsets).
struct WsdInstance {
    std::string task_id;
    std::string instance_id;
    std::string context_text;
    size_t head_start = 0;
    size_t head_end = 0;
    std::set<std::string> gold_senses;
    std::vector<PosAnnotation> pos_tags;

    std::string_view head() const {
        return std::string_view(context_text).substr(head_start, head_end - head_start);
    }
    bool operator==(const WsdInstance&) const = default;
};

enum class Split { Train, Test, Dev };

std::string to_string(Split s);
Split split_from_string(std::string_view s);

struct Corpus {
    std::vector<WsdInstance> instances;
    Split split = Split::Train;

    bool operator==(const Corpus&) const = default;

    /// Distinct task ids in first-appearance order.
    std::vector<std::string> task_ids() const;
    /// Indices of the instances belonging to one task, in corpus order.
    std::vector<size_t> task_instances(std::string_view task_id) const;
};

/// Throws Error if head offsets are out of range, the head is empty, ids are
/// missing, or instance ids repeat.
void validate(const Corpus& corpus);

/// SENSEVAL-2 lexical-sample XML: lexelt/instance/context with the target
/// marked by a head element. Inline answer elements fill gold_senses; a
/// separate key (see parse_answer_key) can override them. Only the first head
/// per instance is used; sat and other markup inside the context is stripped.
std::vector<WsdInstance> parse_senseval2(std::string_view xml_text);

/// Answer-key lines "lexelt instance_id sense [sense ...]".
std::map<std::string, std::set<std::string>> parse_answer_key(std::string_view key_text);

/// Replaces gold_senses for every instance present in the key. Instances
/// absent from the key keep their existing senses.
void apply_answer_key(Corpus& corpus,
                      const std::map<std::string, std::set<std::string>>& key);

/// True if the gold set marks the instance unassignable. Such instances are
/// skipped when training and scored like any other test instance.
bool is_unassignable(const WsdInstance& inst);

/// JSONL, one object per line with fields
/// task, id, text, head_start, head_end, senses, pos.
void save_jsonl(const Corpus& corpus, std::ostream& out);
Corpus load_jsonl(std::istream& in, Split split);

void save_jsonl_file(const Corpus& corpus, const std::string& path);
Corpus load_jsonl_file(const std::string& path, Split split);

/// Stratified-by-task split: dev gets floor(dev_fraction * n) instances
/// overall, allocated per task by largest remainder, picked by a shuffle
/// seeded from (seed, task_id).
std::pair<Corpus, Corpus> heldout_split(const Corpus& corpus, double dev_fraction,
                                        uint64_t seed);

} // namespace wsd
