#include "wsdbench/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wsdbench/error.hpp"
#include "wsdbench/rng.hpp"

namespace wsd {

using nlohmann::json;

std::string to_string(FeatureSet s) {
    switch (s) {
        case FeatureSet::Topical: return "topical";
        case FeatureSet::Local: return "local";
        case FeatureSet::Pos: return "pos";
        case FeatureSet::All: return "all";
    }
    return "all";
}

FeatureSet feature_set_from_string(std::string_view s) {
    if (s == "topical") return FeatureSet::Topical;
    if (s == "local") return FeatureSet::Local;
    if (s == "pos") return FeatureSet::Pos;
    if (s == "all") return FeatureSet::All;
    throw Error("unknown feature set: " + std::string(s));
}

std::vector<double> to_dense(const SparseBinaryVector& v) {
    std::vector<double> out(v.dim, 0.0);
    for (size_t i : v.indices) out[i] = 1.0;
    return out;
}

SparseBinaryVector combine(const std::vector<SparseBinaryVector>& parts) {
    SparseBinaryVector out;
    size_t offset = 0;
    for (const SparseBinaryVector& p : parts) {
        for (size_t i : p.indices) out.indices.push_back(offset + i);
        offset += p.dim;
    }
    out.dim = offset;
    return out;
}

size_t intersection_size(const SparseBinaryVector& a, const SparseBinaryVector& b) {
    size_t count = 0, i = 0, j = 0;
    while (i < a.indices.size() && j < b.indices.size()) {
        if (a.indices[i] < b.indices[j]) ++i;
        else if (b.indices[j] < a.indices[i]) ++j;
        else ++count, ++i, ++j;
    }
    return count;
}

size_t squared_distance(const SparseBinaryVector& a, const SparseBinaryVector& b) {
    return a.indices.size() + b.indices.size() - 2 * intersection_size(a, b);
}

double kernel_eval(const KernelSpec& kernel, const SparseBinaryVector& a,
                   const SparseBinaryVector& b) {
    switch (kernel.kind) {
        case KernelSpec::Kind::Linear:
            return static_cast<double>(intersection_size(a, b));
        case KernelSpec::Kind::Polynomial: {
            double base = static_cast<double>(intersection_size(a, b)) + kernel.coef;
            double out = 1.0;
            for (int i = 0; i < kernel.degree; ++i) out *= base;
            return out;
        }
        case KernelSpec::Kind::Rbf:
            return std::exp(-kernel.gamma * static_cast<double>(squared_distance(a, b)));
    }
    return 0.0;
}

DenseMatrix gram(const std::vector<SparseBinaryVector>& xs, const KernelSpec& kernel) {
    const size_t n = xs.size();
    DenseMatrix k(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            double v = kernel_eval(kernel, xs[i], xs[j]);
            k(i, j) = v;
            k(j, i) = v;
        }
    return k;
}

// ---------------------------------------------------------------------------
// Instance analysis
// ---------------------------------------------------------------------------

AnalyzedInstance analyze(const WsdInstance& inst, const TagLexicon& lexicon) {
    AnalyzedInstance a;
    a.tok = tokenize(inst.context_text);
    const auto& tokens = a.tok.tokens;

    bool found = false;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].begin < inst.head_end && tokens[i].end > inst.head_start) {
            if (!found) {
                a.head_first = i;
                found = true;
            }
            a.head_last = i;
        } else if (found) {
            break;
        }
    }
    if (!found)
        throw Error("instance " + inst.instance_id + ": no tokens inside head span");

    a.tags = pos_tag(tokens, lexicon);
    for (const PosAnnotation& ann : inst.pos_tags)
        for (size_t i = 0; i < tokens.size(); ++i)
            if (tokens[i].begin == ann.begin && tokens[i].end == ann.end) {
                a.tags[i] = ann.tag;
                break;
            }

    a.sent_begin = 0;
    a.sent_end = tokens.empty() ? 0 : tokens.size() - 1;
    for (auto [first, last] : a.tok.sentences())
        if (first <= a.head_first && a.head_first <= last) {
            a.sent_begin = first;
            a.sent_end = last;
            break;
        }
    return a;
}

std::vector<std::string> topical_terms(const AnalyzedInstance& a, const Stopwords& stop) {
    std::vector<std::string> terms;
    const auto& tokens = a.tok.tokens;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i >= a.head_first && i <= a.head_last) continue;
        const std::string& w = tokens[i].lowered;
        if (stop.contains(w)) continue;
        terms.push_back(porter_stem(w));
    }
    return terms;
}

namespace {

std::string fmt_offset(int k) {
    if (k > 0) return "+" + std::to_string(k);
    return std::to_string(k);
}

} // namespace

std::vector<std::string> local_terms(const AnalyzedInstance& a, size_t window,
                                     size_t max_ngram) {
    const auto& tokens = a.tok.tokens;
    struct Slot {
        int offset;
        std::string word;
    };
    std::vector<Slot> seq;

    size_t pre = std::min(window, a.head_first);
    size_t post = std::min(window, tokens.size() - 1 - a.head_last);
    for (size_t k = pre; k >= 1; --k)
        seq.push_back({-static_cast<int>(k), tokens[a.head_first - k].lowered});
    std::string head_word = tokens[a.head_first].lowered;
    for (size_t i = a.head_first + 1; i <= a.head_last; ++i)
        head_word += "_" + tokens[i].lowered;
    seq.push_back({0, std::move(head_word)});
    for (size_t k = 1; k <= post; ++k)
        seq.push_back({static_cast<int>(k), tokens[a.head_last + k].lowered});

    std::vector<std::string> terms;
    for (const Slot& s : seq)
        if (s.offset != 0) terms.push_back("u@" + fmt_offset(s.offset) + ":" + s.word);
    if (max_ngram >= 2)
        for (size_t i = 0; i + 1 < seq.size(); ++i)
            terms.push_back("b@" + fmt_offset(seq[i].offset) + ":" + seq[i].word + "_" +
                            seq[i + 1].word);
    if (max_ngram >= 3)
        for (size_t i = 0; i + 2 < seq.size(); ++i)
            terms.push_back("t@" + fmt_offset(seq[i].offset) + ":" + seq[i].word + "_" +
                            seq[i + 1].word + "_" + seq[i + 2].word);
    return terms;
}

std::vector<std::pair<int, int>> pos_slots(const AnalyzedInstance& a, size_t window) {
    std::vector<std::pair<int, int>> slots;
    size_t pre = std::min(window, a.head_first - a.sent_begin);
    size_t post_avail = a.sent_end >= a.head_last ? a.sent_end - a.head_last : 0;
    size_t post = std::min(window, post_avail);
    for (size_t k = pre; k >= 1; --k)
        slots.emplace_back(-static_cast<int>(k), a.tags[a.head_first - k]);
    slots.emplace_back(0, a.tags[a.head_first]);
    for (size_t k = 1; k <= post; ++k)
        slots.emplace_back(static_cast<int>(k), a.tags[a.head_last + k]);
    return slots;
}

SparseBinaryVector pos_vector(const std::vector<std::pair<int, int>>& slots,
                              size_t window, size_t tag_count) {
    SparseBinaryVector out;
    out.dim = (2 * window + 1) * tag_count;
    for (auto [offset, tag] : slots) {
        size_t slot = static_cast<size_t>(offset + static_cast<int>(window));
        out.indices.push_back(slot * tag_count + static_cast<size_t>(tag));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vocabulary
// ---------------------------------------------------------------------------

size_t Vocabulary::pos_dim() const {
    if (set_ == FeatureSet::Pos || set_ == FeatureSet::All)
        return (2 * window_ + 1) * static_cast<size_t>(kTagCount);
    return 0;
}

std::optional<size_t> Vocabulary::topical_index(const std::string& name) const {
    auto it = topical_index_.find(name);
    if (it == topical_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<size_t> Vocabulary::local_index(const std::string& name) const {
    auto it = local_index_.find(name);
    if (it == local_index_.end()) return std::nullopt;
    return it->second;
}

std::string Vocabulary::name_of(size_t index) const {
    if (index < topical_dim()) return topical_names_[index];
    index -= topical_dim();
    if (index < local_dim()) return local_names_[index];
    index -= local_dim();
    if (index >= pos_dim()) throw Error("feature index out of range");
    size_t slot = index / static_cast<size_t>(kTagCount);
    size_t tag = index % static_cast<size_t>(kTagCount);
    int offset = static_cast<int>(slot) - static_cast<int>(window_);
    return "pos@" + fmt_offset(offset) + ":" + kTagNames[tag];
}

uint64_t Vocabulary::content_hash() const {
    uint64_t h = fnv1a64(std::string_view("wsdbench-vocab\n"));
    h = fnv1a64(to_string(set_) + "\n", h);
    h = fnv1a64(std::to_string(window_) + "\n", h);
    h = fnv1a64(std::string(kTagsetVersion) + "\n", h);
    for (const std::string& n : topical_names_) h = fnv1a64(n + "\n", h);
    h = fnv1a64(std::string_view("|\n"), h);
    for (const std::string& n : local_names_) h = fnv1a64(n + "\n", h);
    h = fnv1a64(std::to_string(pos_dim()) + "\n", h);
    return h;
}

Vocabulary Vocabulary::assemble(FeatureSet set, size_t window,
                                std::vector<std::string> topical_names,
                                std::vector<std::string> local_names,
                                uint64_t stopword_hash, uint64_t lexicon_hash) {
    if (window < 1) throw Error("window must be >= 1");
    if (!std::is_sorted(topical_names.begin(), topical_names.end()) ||
        !std::is_sorted(local_names.begin(), local_names.end()))
        throw Error("vocabulary names must be sorted");
    bool wants_topical = set == FeatureSet::Topical || set == FeatureSet::All;
    bool wants_local = set == FeatureSet::Local || set == FeatureSet::All;
    if ((!wants_topical && !topical_names.empty()) || (!wants_local && !local_names.empty()))
        throw Error("vocabulary names inconsistent with feature set");

    Vocabulary v;
    v.set_ = set;
    v.window_ = window;
    v.topical_names_ = std::move(topical_names);
    v.local_names_ = std::move(local_names);
    v.stopword_hash_ = stopword_hash;
    v.lexicon_hash_ = lexicon_hash;
    for (size_t i = 0; i < v.topical_names_.size(); ++i) {
        if (!v.topical_index_.emplace(v.topical_names_[i], i).second)
            throw Error("duplicate vocabulary name: " + v.topical_names_[i]);
    }
    for (size_t i = 0; i < v.local_names_.size(); ++i) {
        if (!v.local_index_.emplace(v.local_names_[i], i).second)
            throw Error("duplicate vocabulary name: " + v.local_names_[i]);
    }
    return v;
}

Vocabulary Vocabulary::build(const Corpus& train, const FeatureConfig& config,
                             const Stopwords& stop, const TagLexicon& lexicon) {
    if (train.instances.empty()) throw Error("cannot build a vocabulary from an empty corpus");
    bool wants_topical = config.set == FeatureSet::Topical || config.set == FeatureSet::All;
    bool wants_local = config.set == FeatureSet::Local || config.set == FeatureSet::All;

    std::set<std::string> topical;
    std::set<std::string> local;
    for (const WsdInstance& inst : train.instances) {
        if (!wants_topical && !wants_local) break;
        AnalyzedInstance a = analyze(inst, lexicon);
        if (wants_topical)
            for (std::string& t : topical_terms(a, stop)) topical.insert(std::move(t));
        if (wants_local)
            for (std::string& t : local_terms(a, config.window, config.max_ngram))
                local.insert(std::move(t));
    }
    return assemble(config.set, config.window,
                    std::vector<std::string>(topical.begin(), topical.end()),
                    std::vector<std::string>(local.begin(), local.end()),
                    stop.content_hash(), lexicon.content_hash());
}

SparseBinaryVector encode(const WsdInstance& inst, const Vocabulary& vocab,
                          const Stopwords& stop, const TagLexicon& lexicon) {
    if (vocab.stopword_hash() != stop.content_hash())
        throw Error("stopword list does not match the one the vocabulary was built with");
    if (vocab.lexicon_hash() != lexicon.content_hash())
        throw Error("tag lexicon does not match the one the vocabulary was built with");

    AnalyzedInstance a = analyze(inst, lexicon);
    SparseBinaryVector out;
    out.dim = vocab.dimension();

    FeatureSet set = vocab.set();
    if (set == FeatureSet::Topical || set == FeatureSet::All) {
        std::set<size_t> active;
        for (const std::string& t : topical_terms(a, stop))
            if (auto idx = vocab.topical_index(t)) active.insert(*idx);
        out.indices.assign(active.begin(), active.end());
    }
    if (set == FeatureSet::Local || set == FeatureSet::All) {
        size_t base = vocab.topical_dim();
        std::set<size_t> active;
        for (const std::string& t : local_terms(a, vocab.window(), 3))
            if (auto idx = vocab.local_index(t)) active.insert(base + *idx);
        out.indices.insert(out.indices.end(), active.begin(), active.end());
    }
    if (set == FeatureSet::Pos || set == FeatureSet::All) {
        size_t base = vocab.topical_dim() + vocab.local_dim();
        for (auto [offset, tag] : pos_slots(a, vocab.window())) {
            size_t slot = static_cast<size_t>(offset + static_cast<int>(vocab.window()));
            out.indices.push_back(base + slot * static_cast<size_t>(kTagCount) +
                                  static_cast<size_t>(tag));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

void save_vocab(const Vocabulary& vocab, std::ostream& out) {
    out << "# wsdbench-vocab v1\n";
    out << "# set: " << to_string(vocab.set()) << "\n";
    out << "# window: " << vocab.window() << "\n";
    out << "# tagset: " << kTagsetVersion << "\n";
    out << "# stopwords: " << to_hex(vocab.stopword_hash()) << "\n";
    out << "# lexicon: " << to_hex(vocab.lexicon_hash()) << "\n";
    out << "# topical: " << vocab.topical_dim() << "\n";
    out << "# local: " << vocab.local_dim() << "\n";
    out << "# pos: " << vocab.pos_dim() << "\n";
    for (const std::string& n : vocab.topical_names()) out << n << "\n";
    for (const std::string& n : vocab.local_names()) out << n << "\n";
}

void save_vocab_file(const Vocabulary& vocab, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    save_vocab(vocab, out);
    if (!out) throw Error("write failed: " + path);
}

Vocabulary load_vocab(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "# wsdbench-vocab v1")
        throw Error("not a vocabulary file or unsupported version");

    std::map<std::string, std::string> header;
    while (in.peek() == '#' && std::getline(in, line)) {
        size_t colon = line.find(':');
        if (colon == std::string::npos || line.size() < 2)
            throw Error("malformed vocabulary header line: " + line);
        std::string key = line.substr(2, colon - 2);
        std::string value = line.substr(colon + 1);
        if (!value.empty() && value[0] == ' ') value.erase(0, 1);
        header[key] = value;
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = header.find(key);
        if (it == header.end()) throw Error("vocabulary header missing '" + key + "'");
        return it->second;
    };
    if (need("tagset") != kTagsetVersion)
        throw Error("vocabulary tagset " + need("tagset") + " does not match " + kTagsetVersion);

    FeatureSet set = feature_set_from_string(need("set"));
    size_t window = std::stoull(need("window"));
    size_t n_topical = std::stoull(need("topical"));
    size_t n_local = std::stoull(need("local"));

    std::vector<std::string> topical, local;
    for (size_t i = 0; i < n_topical + n_local; ++i) {
        if (!std::getline(in, line))
            throw Error("vocabulary file truncated: expected " +
                        std::to_string(n_topical + n_local) + " names");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        (i < n_topical ? topical : local).push_back(line);
    }
    return Vocabulary::assemble(set, window, std::move(topical), std::move(local),
                                parse_hex(need("stopwords")), parse_hex(need("lexicon")));
}

Vocabulary load_vocab_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open vocabulary: " + path);
    try {
        return load_vocab(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

FeatureCache featurize(const Corpus& corpus, const Vocabulary& vocab,
                       const Stopwords& stop, const TagLexicon& lexicon) {
    FeatureCache cache;
    cache.vocab = vocab;
    cache.rows.reserve(corpus.instances.size());
    for (const WsdInstance& inst : corpus.instances) {
        FeaturizedInstance row;
        row.task_id = inst.task_id;
        row.instance_id = inst.instance_id;
        row.senses = inst.gold_senses;
        row.vec = encode(inst, vocab, stop, lexicon);
        cache.rows.push_back(std::move(row));
    }
    return cache;
}

void save_feature_cache(const FeatureCache& cache, std::ostream& out) {
    json header;
    header["format"] = "wsdbench-features";
    header["version"] = 1;
    header["set"] = to_string(cache.vocab.set());
    header["window"] = cache.vocab.window();
    header["tagset"] = kTagsetVersion;
    header["stopwords"] = to_hex(cache.vocab.stopword_hash());
    header["lexicon"] = to_hex(cache.vocab.lexicon_hash());
    header["dim"] = cache.vocab.dimension();
    header["vocab"] = {{"topical", cache.vocab.topical_names()},
                       {"local", cache.vocab.local_names()}};
    out << header.dump() << '\n';
    for (const FeaturizedInstance& row : cache.rows) {
        json obj;
        obj["task"] = row.task_id;
        obj["id"] = row.instance_id;
        obj["senses"] = row.senses;
        obj["idx"] = row.vec.indices;
        out << obj.dump() << '\n';
    }
}

void save_feature_cache_file(const FeatureCache& cache, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    save_feature_cache(cache, out);
    if (!out) throw Error("write failed: " + path);
}

FeatureCache load_feature_cache(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("empty features file");
    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(std::string("features header: ") + e.what());
    }
    if (header.value("format", "") != "wsdbench-features")
        throw Error("not a features file");
    if (header.value("version", 0) != 1)
        throw Error("unsupported features file version");
    if (header.value("tagset", "") != kTagsetVersion)
        throw Error("features tagset does not match " + std::string(kTagsetVersion));

    FeatureCache cache;
    cache.vocab = Vocabulary::assemble(
        feature_set_from_string(header.at("set").get<std::string>()),
        header.at("window").get<size_t>(),
        header.at("vocab").at("topical").get<std::vector<std::string>>(),
        header.at("vocab").at("local").get<std::vector<std::string>>(),
        parse_hex(header.at("stopwords").get<std::string>()),
        parse_hex(header.at("lexicon").get<std::string>()));
    if (cache.vocab.dimension() != header.at("dim").get<size_t>())
        throw Error("features header dimension mismatch");

    size_t line_no = 1;
    const size_t dim = cache.vocab.dimension();
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            json obj = json::parse(line);
            FeaturizedInstance row;
            row.task_id = obj.at("task").get<std::string>();
            row.instance_id = obj.at("id").get<std::string>();
            for (const json& s : obj.at("senses")) row.senses.insert(s.get<std::string>());
            row.vec.dim = dim;
            row.vec.indices = obj.at("idx").get<std::vector<size_t>>();
            if (!std::is_sorted(row.vec.indices.begin(), row.vec.indices.end()) ||
                std::adjacent_find(row.vec.indices.begin(), row.vec.indices.end()) !=
                    row.vec.indices.end())
                throw Error("feature indices must be sorted and unique");
            if (!row.vec.indices.empty() && row.vec.indices.back() >= dim)
                throw Error("feature index out of range");
            cache.rows.push_back(std::move(row));
        } catch (const json::exception& e) {
            throw Error("features line " + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw Error("features line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cache;
}

FeatureCache load_feature_cache_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open features file: " + path);
    try {
        return load_feature_cache(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

} // namespace wsd
