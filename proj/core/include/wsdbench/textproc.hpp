#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace wsd {

struct Token {
    std::string surface;
    size_t begin = 0; // byte offset into source text
    size_t end = 0;   // one past last byte
    std::string lowered;
};

/// Tokens plus sentence segmentation. sentence_breaks holds token indices i
/// such that a sentence ends after tokens[i]; the final sentence always ends
/// at the last token whether or not a break is recorded there.
struct Tokenized {
    std::vector<Token> tokens;
    std::vector<size_t> sentence_breaks;

    /// Inclusive token-index ranges, one per sentence.
    std::vector<std::pair<size_t, size_t>> sentences() const;
};

/// Maximal runs of letters/digits with internal apostrophes; punctuation is
/// dropped. Sentences split on . ! ? followed by whitespace and an uppercase
/// letter (or end of text), except after known abbreviations and single-letter
/// initials.
Tokenized tokenize(std::string_view text);

/// Porter (1980) stemmer, steps 1a through 5b. Input is expected lowercase
/// alphabetic; anything else is returned unchanged, as are 1- and 2-letter
/// words.
std::string porter_stem(std::string_view word);

class Stopwords {
public:
    static const Stopwords& builtin();
    static Stopwords from_lines(const std::vector<std::string>& words);
    static Stopwords from_file(const std::string& path);

    /// Membership test on the lowercase form of `word`.
    bool contains(std::string_view word) const;
    size_t size() const { return words_.size(); }
    uint64_t content_hash() const { return hash_; }

private:
    std::unordered_set<std::string> words_;
    uint64_t hash_ = 0;
};

// Coarse tag set. Order is fixed and versioned: POS feature indices depend
// on it, so any change must bump kTagsetVersion.
inline constexpr std::array<const char*, 12> kTagNames = {
    "NN", "VB", "ADJ", "ADV", "DT", "PRP", "IN", "CC", "NUM", "WH", "UH", "OTHER"};
inline constexpr int kTagCount = 12;
inline constexpr int kTagOther = 11;
inline constexpr const char* kTagsetVersion = "coarse12-v1";

/// Index of a tag name in kTagNames, or -1 if unknown.
int tag_index(std::string_view name);

/// word -> most frequent coarse tag. Unknown words fall back to suffix
/// heuristics in pos_tag.
class TagLexicon {
public:
    static const TagLexicon& builtin();
    static TagLexicon from_entries(const std::vector<std::pair<std::string, std::string>>& entries);
    static TagLexicon from_file(const std::string& path);

    /// Tag index for a lowercase word, or -1 if absent.
    int lookup(std::string_view lowered) const;
    size_t size() const { return map_.size(); }
    uint64_t content_hash() const { return hash_; }

private:
    std::unordered_map<std::string, int> map_;
    uint64_t hash_ = 0;
};

/// One tag index per token: lexicon tag if known, else suffix heuristics
/// (-ly ADV, -ing/-ed VB, -s after consonant NN, leading digit NUM), else OTHER.
std::vector<int> pos_tag(const std::vector<Token>& tokens, const TagLexicon& lexicon);

namespace detail {
// Raw tables behind the builtin Stopwords/TagLexicon; exposed for the tests
// that keep core/data/*.txt in sync with them.
const std::vector<std::string>& builtin_stopword_list();
const std::vector<std::pair<std::string, std::string>>& builtin_lexicon_entries();
} // namespace detail

} // namespace wsd
