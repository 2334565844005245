#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wsdbench/corpus.hpp"
#include "wsdbench/linalg.hpp"
#include "wsdbench/textproc.hpp"

namespace wsd {

enum class FeatureSet { Topical, Local, Pos, All };

std::string to_string(FeatureSet s);
FeatureSet feature_set_from_string(std::string_view s);

struct FeatureConfig {
    FeatureSet set = FeatureSet::All;
    size_t window = 7;
    size_t max_ngram = 3;
};

/// Sorted unique active indices, all < dim.
struct SparseBinaryVector {
    std::vector<size_t> indices;
    size_t dim = 0;

    bool operator==(const SparseBinaryVector&) const = default;
};

std::vector<double> to_dense(const SparseBinaryVector& v);

/// Concatenation with offset shifting; dimension = sum of dimensions.
SparseBinaryVector combine(const std::vector<SparseBinaryVector>& parts);

size_t intersection_size(const SparseBinaryVector& a, const SparseBinaryVector& b);
/// Squared Euclidean distance between binary vectors: |a| + |b| - 2|a ∩ b|.
size_t squared_distance(const SparseBinaryVector& a, const SparseBinaryVector& b);
double kernel_eval(const KernelSpec& kernel, const SparseBinaryVector& a,
                   const SparseBinaryVector& b);
/// K_ij = kernel(x_i, x_j), symmetric.
DenseMatrix gram(const std::vector<SparseBinaryVector>& xs, const KernelSpec& kernel);

/// Token-level view of one instance: tokenization, the head's token range,
/// per-token tags (instance annotations override the tagger), and the head's
/// sentence bounds.
struct AnalyzedInstance {
    Tokenized tok;
    size_t head_first = 0;
    size_t head_last = 0;
    std::vector<int> tags;
    size_t sent_begin = 0;
    size_t sent_end = 0;
};

AnalyzedInstance analyze(const WsdInstance& inst, const TagLexicon& lexicon);

/// Stemmed, stopword-filtered, lowercased unigrams over the whole context,
/// head tokens excluded. May contain duplicates; vocabulary building and
/// encoding both treat the result as a set.
std::vector<std::string> topical_terms(const AnalyzedInstance& a, const Stopwords& stop);

/// Position-keyed window features: "u@{off}:{word}" for non-head slots,
/// "b@{off}:{w1}_{w2}" and "t@{off}:{w1}_{w2}_{w3}" over the window token
/// sequence with the head as the single slot at offset 0 (multi-token heads
/// joined by "_"). Words lowercased, not stemmed, stopwords kept; the window
/// may cross sentence boundaries.
std::vector<std::string> local_terms(const AnalyzedInstance& a, size_t window,
                                     size_t max_ngram);

/// Occupied window slots within the head's sentence: (offset, tag index),
/// offset in [-window, window], offsets increasing, slot 0 = head.
std::vector<std::pair<int, int>> pos_slots(const AnalyzedInstance& a, size_t window);

/// One block of tag_count bits per slot, offset-major: bit (offset+window) *
/// tag_count + tag. Dimension (2*window+1)*tag_count.
SparseBinaryVector pos_vector(const std::vector<std::pair<int, int>>& slots,
                              size_t window, size_t tag_count);

/// Index space laid out as [topical | local | pos]; single-set vocabularies
/// have just their own section. Topical and local names are sorted
/// lexicographically; the pos section is the fixed (2w+1) x |tagset| grid in
/// offset-major order.
class Vocabulary {
public:
    Vocabulary() = default;

    static Vocabulary build(const Corpus& train, const FeatureConfig& config,
                            const Stopwords& stop = Stopwords::builtin(),
                            const TagLexicon& lexicon = TagLexicon::builtin());

    /// Reassembles a vocabulary from serialized parts; names must be sorted.
    static Vocabulary assemble(FeatureSet set, size_t window,
                               std::vector<std::string> topical_names,
                               std::vector<std::string> local_names,
                               uint64_t stopword_hash, uint64_t lexicon_hash);

    FeatureSet set() const { return set_; }
    size_t window() const { return window_; }
    size_t dimension() const { return topical_dim() + local_dim() + pos_dim(); }
    size_t topical_dim() const { return topical_names_.size(); }
    size_t local_dim() const { return local_names_.size(); }
    size_t pos_dim() const;

    const std::vector<std::string>& topical_names() const { return topical_names_; }
    const std::vector<std::string>& local_names() const { return local_names_; }

    std::optional<size_t> topical_index(const std::string& name) const;
    std::optional<size_t> local_index(const std::string& name) const;
    /// Feature name for any index, pos section included ("pos@{off}:{TAG}").
    std::string name_of(size_t index) const;

    uint64_t stopword_hash() const { return stopword_hash_; }
    uint64_t lexicon_hash() const { return lexicon_hash_; }
    /// Hash over configuration and all names in index order.
    uint64_t content_hash() const;

    bool operator==(const Vocabulary&) const = default;

private:
    FeatureSet set_ = FeatureSet::All;
    size_t window_ = 7;
    std::vector<std::string> topical_names_;
    std::vector<std::string> local_names_;
    std::unordered_map<std::string, size_t> topical_index_;
    std::unordered_map<std::string, size_t> local_index_;
    uint64_t stopword_hash_ = 0;
    uint64_t lexicon_hash_ = 0;
};

/// Encodes one instance against a built vocabulary. The stopword list and tag
/// lexicon must be the ones the vocabulary was built with (checked by hash).
SparseBinaryVector encode(const WsdInstance& inst, const Vocabulary& vocab,
                          const Stopwords& stop = Stopwords::builtin(),
                          const TagLexicon& lexicon = TagLexicon::builtin());

void save_vocab(const Vocabulary& vocab, std::ostream& out);
void save_vocab_file(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocab(std::istream& in);
Vocabulary load_vocab_file(const std::string& path);

struct FeaturizedInstance {
    std::string task_id;
    std::string instance_id;
    std::set<std::string> senses;
    SparseBinaryVector vec;

    bool operator==(const FeaturizedInstance&) const = default;
};

/// Encoded corpus cache: a JSONL file whose first line is a versioned header
/// embedding the vocabulary, followed by one row per instance.
struct FeatureCache {
    Vocabulary vocab;
    std::vector<FeaturizedInstance> rows;

    bool operator==(const FeatureCache&) const = default;
};

FeatureCache featurize(const Corpus& corpus, const Vocabulary& vocab,
                       const Stopwords& stop = Stopwords::builtin(),
                       const TagLexicon& lexicon = TagLexicon::builtin());

void save_feature_cache(const FeatureCache& cache, std::ostream& out);
void save_feature_cache_file(const FeatureCache& cache, const std::string& path);
FeatureCache load_feature_cache(std::istream& in);
FeatureCache load_feature_cache_file(const std::string& path);

} // namespace wsd
