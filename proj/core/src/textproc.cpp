#include "wsdbench/textproc.hpp"

#include <algorithm>
#include <cctype>

#include "wsdbench/error.hpp"
#include "wsdbench/rng.hpp"

#include <fstream>
#include <sstream>

namespace wsd {

namespace {

// Bytes >= 0x80 are treated as word characters so UTF-8 sequences stay inside
// one token.
bool is_word_char(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

bool is_ascii_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
    return out;
}

// Tokens that do not end a sentence when followed by '.'.
const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> set = {
        "mr", "mrs", "ms", "dr", "prof", "rev", "gen", "rep", "sen", "st",
        "jr", "sr", "vs", "etc", "inc", "ltd", "co", "corp", "dept", "univ",
        "vol", "vols", "fig", "figs", "no", "nos", "ed", "eds", "al", "approx",
        "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct",
        "nov", "dec", "est", "min", "max", "misc"};
    return set;
}

bool closes_sentence_gap(std::string_view gap, const Token* prev, const Token* next) {
    // Last . ! ? in the gap, with only whitespace/closing quotes after it.
    size_t pos = gap.find_last_of(".!?");
    if (pos == std::string_view::npos) return false;
    for (size_t i = pos + 1; i < gap.size(); ++i) {
        unsigned char c = gap[i];
        if (std::isspace(c) == 0 && c != '"' && c != '\'' && c != ')' && c != ']' && c != '}')
            return false;
    }
    if (gap[pos] == '.' && prev != nullptr) {
        if (prev->lowered.size() <= 1) return false; // initials: "U. S."
        if (abbreviations().count(prev->lowered) > 0) return false;
    }
    if (next != nullptr) {
        if (pos + 1 >= gap.size()) return false; // needs whitespace before next token
        if (!is_ascii_upper(static_cast<unsigned char>(next->surface[0]))) return false;
    }
    return true;
}

} // namespace

std::vector<std::pair<size_t, size_t>> Tokenized::sentences() const {
    std::vector<std::pair<size_t, size_t>> out;
    if (tokens.empty()) return out;
    size_t first = 0;
    for (size_t brk : sentence_breaks) {
        out.emplace_back(first, brk);
        first = brk + 1;
    }
    if (first < tokens.size()) out.emplace_back(first, tokens.size() - 1);
    return out;
}

Tokenized tokenize(std::string_view text) {
    Tokenized out;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        if (!is_word_char(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        size_t begin = i;
        while (i < n) {
            unsigned char c = text[i];
            if (is_word_char(c)) {
                ++i;
            } else if (c == '\'' && i > begin && i + 1 < n &&
                       is_word_char(static_cast<unsigned char>(text[i + 1]))) {
                ++i; // internal apostrophe
            } else {
                break;
            }
        }
        Token t;
        t.begin = begin;
        t.end = i;
        t.surface = std::string(text.substr(begin, i - begin));
        t.lowered = lower_copy(t.surface);
        out.tokens.push_back(std::move(t));
    }

    for (size_t k = 0; k < out.tokens.size(); ++k) {
        const Token& tok = out.tokens[k];
        const Token* next = (k + 1 < out.tokens.size()) ? &out.tokens[k + 1] : nullptr;
        size_t gap_end = next ? next->begin : n;
        std::string_view gap = text.substr(tok.end, gap_end - tok.end);
        if (closes_sentence_gap(gap, &tok, next)) out.sentence_breaks.push_back(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Porter stemmer
// ---------------------------------------------------------------------------

namespace {

class Porter {
public:
    explicit Porter(std::string_view word) : b_(word) {}

    std::string run() {
        if (b_.size() <= 2) return b_;
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5a();
        step5b();
        return b_;
    }

private:
    std::string b_;

    bool cons(size_t i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // m in [C](VC)^m[V] over the first `len` characters.
    int measure(size_t len) const {
        int m = 0;
        size_t i = 0;
        while (i < len && cons(i)) ++i;
        while (true) {
            while (i < len && !cons(i)) ++i;
            if (i >= len) return m;
            ++m;
            while (i < len && cons(i)) ++i;
            if (i >= len) return m;
        }
    }

    bool has_vowel(size_t len) const {
        for (size_t i = 0; i < len; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool double_cons(size_t len) const {
        return len >= 2 && b_[len - 1] == b_[len - 2] && cons(len - 1);
    }

    // *o: ends consonant-vowel-consonant with the final consonant not w, x, y.
    bool cvc(size_t len) const {
        if (len < 3) return false;
        if (!cons(len - 3) || cons(len - 2) || !cons(len - 1)) return false;
        char c = b_[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view s) const {
        return b_.size() >= s.size() &&
               b_.compare(b_.size() - s.size(), s.size(), s) == 0;
    }

    size_t stem_len(std::string_view suffix) const { return b_.size() - suffix.size(); }

    void replace(std::string_view suffix, std::string_view with) {
        b_.resize(stem_len(suffix));
        b_.append(with);
    }

    struct Rule {
        std::string_view suffix;
        std::string_view replacement;
    };

    // One rule per step: the longest matching suffix is selected first, then
    // its condition is tested; shorter matches are never retried.
    void apply_table(const Rule* rules, size_t count, int min_measure) {
        const Rule* best = nullptr;
        for (size_t i = 0; i < count; ++i)
            if (ends(rules[i].suffix) &&
                (best == nullptr || rules[i].suffix.size() > best->suffix.size()))
                best = &rules[i];
        if (best == nullptr) return;
        if (measure(stem_len(best->suffix)) > min_measure) replace(best->suffix, best->replacement);
    }

    void step1a() {
        if (ends("sses")) replace("sses", "ss");
        else if (ends("ies")) replace("ies", "i");
        else if (ends("ss")) {}
        else if (ends("s")) b_.pop_back();
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(stem_len("eed")) > 0) b_.pop_back();
            return;
        }
        bool stripped = false;
        if (ends("ed") && has_vowel(stem_len("ed"))) {
            b_.resize(stem_len("ed"));
            stripped = true;
        } else if (ends("ing") && has_vowel(stem_len("ing"))) {
            b_.resize(stem_len("ing"));
            stripped = true;
        }
        if (!stripped) return;
        if (ends("at") || ends("bl") || ends("iz")) {
            b_.push_back('e');
        } else if (double_cons(b_.size()) && !(ends("l") || ends("s") || ends("z"))) {
            b_.pop_back();
        } else if (measure(b_.size()) == 1 && cvc(b_.size())) {
            b_.push_back('e');
        }
    }

    void step1c() {
        if (ends("y") && has_vowel(b_.size() - 1)) b_.back() = 'i';
    }

    void step2() {
        static constexpr Rule rules[] = {
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
            {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
            {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
            {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"}};
        apply_table(rules, std::size(rules), 0);
    }

    void step3() {
        static constexpr Rule rules[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
        apply_table(rules, std::size(rules), 0);
    }

    void step4() {
        static constexpr Rule rules[] = {
            {"al", ""},    {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
            {"able", ""},  {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
            {"ent", ""},   {"ou", ""},   {"ism", ""},  {"ate", ""}, {"iti", ""},
            {"ous", ""},   {"ive", ""},  {"ize", ""}};
        // "ion" is special-cased: stem must end in s or t.
        const Rule* best = nullptr;
        for (const Rule& r : rules)
            if (ends(r.suffix) && (best == nullptr || r.suffix.size() > best->suffix.size()))
                best = &r;
        bool ion = ends("ion");
        if (ion && (best == nullptr || best->suffix.size() < 3)) {
            size_t len = stem_len("ion");
            if (len >= 1 && (b_[len - 1] == 's' || b_[len - 1] == 't') && measure(len) > 1)
                b_.resize(len);
            return;
        }
        if (best != nullptr && measure(stem_len(best->suffix)) > 1) replace(best->suffix, "");
    }

    void step5a() {
        if (!ends("e")) return;
        size_t len = b_.size() - 1;
        int m = measure(len);
        if (m > 1 || (m == 1 && !cvc(len))) b_.pop_back();
    }

    void step5b() {
        if (measure(b_.size()) > 1 && double_cons(b_.size()) && b_.back() == 'l') b_.pop_back();
    }
};

} // namespace

std::string porter_stem(std::string_view word) {
    for (char c : word)
        if (c < 'a' || c > 'z') return std::string(word);
    return Porter(word).run();
}

// ---------------------------------------------------------------------------
// Stopwords / tag lexicon
// ---------------------------------------------------------------------------

Stopwords Stopwords::from_lines(const std::vector<std::string>& words) {
    Stopwords s;
    std::vector<std::string> sorted;
    sorted.reserve(words.size());
    for (const std::string& w : words) {
        std::string lw = lower_copy(w);
        if (lw.empty()) continue;
        if (s.words_.insert(lw).second) sorted.push_back(std::move(lw));
    }
    std::sort(sorted.begin(), sorted.end());
    uint64_t h = fnv1a64(std::string_view{});
    for (const std::string& w : sorted) h = fnv1a64(w + "\n", h);
    s.hash_ = h;
    return s;
}

Stopwords Stopwords::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open stopword file: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty() && line[0] != '#') words.push_back(line);
    }
    return from_lines(words);
}

const Stopwords& Stopwords::builtin() {
    static const Stopwords s = from_lines(detail::builtin_stopword_list());
    return s;
}

bool Stopwords::contains(std::string_view word) const {
    return words_.count(lower_copy(word)) > 0;
}

int tag_index(std::string_view name) {
    for (int i = 0; i < kTagCount; ++i)
        if (name == kTagNames[static_cast<size_t>(i)]) return i;
    return -1;
}

TagLexicon TagLexicon::from_entries(const std::vector<std::pair<std::string, std::string>>& entries) {
    TagLexicon lex;
    std::vector<std::string> lines;
    for (const auto& [word, tag] : entries) {
        int idx = tag_index(tag);
        if (idx < 0) throw Error("tag lexicon: unknown tag '" + tag + "' for word '" + word + "'");
        std::string lw = lower_copy(word);
        if (lex.map_.emplace(lw, idx).second) lines.push_back(lw + "\t" + tag);
    }
    std::sort(lines.begin(), lines.end());
    uint64_t h = fnv1a64(std::string_view{});
    for (const std::string& l : lines) h = fnv1a64(l + "\n", h);
    lex.hash_ = h;
    return lex;
}

TagLexicon TagLexicon::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open tag lexicon file: " + path);
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string word, tag;
        if (!(ss >> word >> tag))
            throw Error("tag lexicon " + path + ": line " + std::to_string(line_no) +
                        ": expected 'word tag'");
        entries.emplace_back(word, tag);
    }
    return from_entries(entries);
}

const TagLexicon& TagLexicon::builtin() {
    static const TagLexicon lex = from_entries(detail::builtin_lexicon_entries());
    return lex;
}

int TagLexicon::lookup(std::string_view lowered) const {
    auto it = map_.find(std::string(lowered));
    return it == map_.end() ? -1 : it->second;
}

namespace {

int heuristic_tag(const std::string& w) {
    if (!w.empty() && std::isdigit(static_cast<unsigned char>(w[0]))) return tag_index("NUM");
    auto ends_with = [&](std::string_view s) {
        return w.size() > s.size() && w.compare(w.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with("ly")) return tag_index("ADV");
    if (ends_with("ing") || ends_with("ed")) return tag_index("VB");
    if (w.size() >= 2 && w.back() == 's') {
        char prev = w[w.size() - 2];
        bool vowel = prev == 'a' || prev == 'e' || prev == 'i' || prev == 'o' || prev == 'u';
        if (!vowel) return tag_index("NN");
    }
    return kTagOther;
}

} // namespace

std::vector<int> pos_tag(const std::vector<Token>& tokens, const TagLexicon& lexicon) {
    std::vector<int> tags;
    tags.reserve(tokens.size());
    for (const Token& t : tokens) {
        int tag = lexicon.lookup(t.lowered);
        if (tag < 0) tag = heuristic_tag(t.lowered);
        tags.push_back(tag);
    }
    return tags;
}

} // namespace wsd
