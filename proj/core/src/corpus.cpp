#include "wsdbench/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "wsdbench/error.hpp"
#include "wsdbench/rng.hpp"
#include "wsdbench/textproc.hpp"

namespace wsd {

using nlohmann::json;

std::string to_string(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Test: return "test";
        case Split::Dev: return "dev";
    }
    return "train";
}

Split split_from_string(std::string_view s) {
    if (s == "train") return Split::Train;
    if (s == "test") return Split::Test;
    if (s == "dev") return Split::Dev;
    throw Error("unknown split: " + std::string(s));
}

std::vector<std::string> Corpus::task_ids() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const WsdInstance& inst : instances)
        if (seen.insert(inst.task_id).second) out.push_back(inst.task_id);
    return out;
}

std::vector<size_t> Corpus::task_instances(std::string_view task_id) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < instances.size(); ++i)
        if (instances[i].task_id == task_id) out.push_back(i);
    return out;
}

void validate(const Corpus& corpus) {
    std::unordered_set<std::string> ids;
    for (const WsdInstance& inst : corpus.instances) {
        if (inst.task_id.empty())
            throw Error("instance " + inst.instance_id + ": empty task id");
        if (inst.instance_id.empty()) throw Error("instance with empty id");
        if (!ids.insert(inst.instance_id).second)
            throw Error("duplicate instance id: " + inst.instance_id);
        if (inst.head_start >= inst.head_end || inst.head_end > inst.context_text.size())
            throw Error("instance " + inst.instance_id + ": head span [" +
                        std::to_string(inst.head_start) + ", " + std::to_string(inst.head_end) +
                        ") out of range for text of " +
                        std::to_string(inst.context_text.size()) + " bytes");
        for (const PosAnnotation& p : inst.pos_tags) {
            if (p.begin >= p.end || p.end > inst.context_text.size())
                throw Error("instance " + inst.instance_id + ": tag span out of range");
            if (p.tag < 0 || p.tag >= kTagCount)
                throw Error("instance " + inst.instance_id + ": tag index out of range");
        }
    }
}

bool is_unassignable(const WsdInstance& inst) { return inst.gold_senses.count("U") > 0; }

// ---------------------------------------------------------------------------
// SENSEVAL-2 XML
// ---------------------------------------------------------------------------

namespace {

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

// Parser cursor with line tracking. Errors carry the current line number.
struct XmlCursor {
    std::string_view text;
    size_t pos = 0;
    size_t line = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char next() {
        char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }

    bool starts_with(std::string_view s) const {
        return text.compare(pos, s.size(), s) == 0;
    }

    void advance(size_t count) {
        for (size_t i = 0; i < count && !eof(); ++i) next();
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) next();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("xml parse error at line " + std::to_string(line) + ": " + msg);
    }

    /// Consumes one entity reference after '&' was seen (cursor still on '&').
    /// Appends the decoded bytes; a malformed reference is kept literally.
    void consume_entity(std::string& out) {
        size_t semi = text.find(';', pos + 1);
        if (semi == std::string_view::npos || semi > pos + 12) {
            out.push_back(next());
            return;
        }
        std::string_view name = text.substr(pos + 1, semi - pos - 1);
        std::string decoded;
        if (name == "amp") decoded = "&";
        else if (name == "lt") decoded = "<";
        else if (name == "gt") decoded = ">";
        else if (name == "quot") decoded = "\"";
        else if (name == "apos") decoded = "'";
        else if (!name.empty() && name[0] == '#') {
            uint32_t cp = 0;
            bool ok = name.size() > 1;
            if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
                for (size_t i = 2; i < name.size() && ok; ++i) {
                    char c = name[i];
                    int d = (c >= '0' && c <= '9')   ? c - '0'
                            : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                            : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                                     : -1;
                    if (d < 0) ok = false;
                    else cp = cp * 16 + static_cast<uint32_t>(d);
                }
            } else {
                for (size_t i = 1; i < name.size() && ok; ++i) {
                    if (name[i] < '0' || name[i] > '9') ok = false;
                    else cp = cp * 10 + static_cast<uint32_t>(name[i] - '0');
                }
            }
            if (ok && cp > 0 && cp <= 0x10ffff) append_utf8(decoded, cp);
            else {
                out.push_back(next());
                return;
            }
        } else {
            out.push_back(next());
            return;
        }
        out.append(decoded);
        advance(semi + 1 - pos);
    }
};

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' ||
           c == ':' || c == '.';
}

std::string read_name(XmlCursor& cur) {
    std::string name;
    while (!cur.eof() && is_name_char(cur.peek())) name.push_back(cur.next());
    if (name.empty()) cur.fail("expected a name");
    return name;
}

struct OpenTag {
    std::string name;
    std::unordered_map<std::string, std::string> attrs;
    bool self_closing = false;
};

OpenTag read_open_tag(XmlCursor& cur) {
    OpenTag tag;
    tag.name = read_name(cur);
    while (true) {
        cur.skip_ws();
        if (cur.eof()) cur.fail("unterminated tag <" + tag.name);
        if (cur.peek() == '>') {
            cur.next();
            return tag;
        }
        if (cur.peek() == '/') {
            cur.next();
            if (cur.eof() || cur.peek() != '>') cur.fail("expected '>' after '/'");
            cur.next();
            tag.self_closing = true;
            return tag;
        }
        std::string attr = read_name(cur);
        cur.skip_ws();
        if (cur.eof() || cur.peek() != '=') cur.fail("expected '=' after attribute " + attr);
        cur.next();
        cur.skip_ws();
        if (cur.eof() || (cur.peek() != '"' && cur.peek() != '\''))
            cur.fail("expected quoted value for attribute " + attr);
        char quote = cur.next();
        std::string value;
        while (!cur.eof() && cur.peek() != quote) {
            if (cur.peek() == '&') cur.consume_entity(value);
            else value.push_back(cur.next());
        }
        if (cur.eof()) cur.fail("unterminated value for attribute " + attr);
        cur.next();
        tag.attrs.emplace(std::move(attr), std::move(value));
    }
}

void skip_doctype(XmlCursor& cur) {
    int brackets = 0;
    while (!cur.eof()) {
        char c = cur.next();
        if (c == '[') ++brackets;
        else if (c == ']') --brackets;
        else if (c == '>' && brackets <= 0) return;
    }
    cur.fail("unterminated declaration");
}

} // namespace

std::vector<WsdInstance> parse_senseval2(std::string_view xml_text) {
    XmlCursor cur{xml_text};
    std::vector<WsdInstance> result;
    std::vector<std::string> stack;

    std::string current_lexelt;
    WsdInstance current;
    bool in_instance = false;
    bool in_context = false;
    bool head_open = false;
    bool head_seen = false;
    std::string context_text;

    auto handle_open = [&](const OpenTag& tag) {
        if (tag.name == "lexelt") {
            auto it = tag.attrs.find("item");
            if (it == tag.attrs.end()) cur.fail("lexelt without item attribute");
            current_lexelt = it->second;
        } else if (tag.name == "instance") {
            if (current_lexelt.empty()) cur.fail("instance outside lexelt");
            if (in_instance) cur.fail("nested instance");
            auto it = tag.attrs.find("id");
            if (it == tag.attrs.end()) cur.fail("instance without id attribute");
            current = WsdInstance{};
            current.task_id = current_lexelt;
            current.instance_id = it->second;
            in_instance = true;
            head_seen = false;
            context_text.clear();
        } else if (tag.name == "answer") {
            if (!in_instance) cur.fail("answer outside instance");
            auto it = tag.attrs.find("senseid");
            if (it == tag.attrs.end()) cur.fail("answer without senseid attribute");
            current.gold_senses.insert(it->second);
        } else if (tag.name == "context") {
            if (!in_instance) cur.fail("context outside instance");
            in_context = true;
        } else if (tag.name == "head") {
            if (in_context && !head_seen && !head_open) {
                current.head_start = context_text.size();
                head_open = true;
            }
        }
    };

    auto handle_close = [&](const std::string& name) {
        if (name == "head") {
            if (head_open) {
                current.head_end = context_text.size();
                head_open = false;
                head_seen = true;
            }
        } else if (name == "context") {
            in_context = false;
            current.context_text = context_text;
        } else if (name == "instance") {
            if (!head_seen)
                throw Error("instance " + current.instance_id + ": no head element");
            result.push_back(std::move(current));
            in_instance = false;
        } else if (name == "lexelt") {
            current_lexelt.clear();
        }
    };

    while (!cur.eof()) {
        if (cur.peek() != '<') {
            if (in_context) {
                while (!cur.eof() && cur.peek() != '<') {
                    if (cur.peek() == '&') cur.consume_entity(context_text);
                    else context_text.push_back(cur.next());
                }
            } else {
                while (!cur.eof() && cur.peek() != '<') cur.next();
            }
            continue;
        }
        if (cur.starts_with("<!--")) {
            size_t end = xml_text.find("-->", cur.pos);
            if (end == std::string_view::npos) cur.fail("unterminated comment");
            cur.advance(end + 3 - cur.pos);
        } else if (cur.starts_with("<![CDATA[")) {
            cur.advance(9);
            size_t end = xml_text.find("]]>", cur.pos);
            if (end == std::string_view::npos) cur.fail("unterminated CDATA section");
            if (in_context) context_text.append(xml_text.substr(cur.pos, end - cur.pos));
            cur.advance(end + 3 - cur.pos);
        } else if (cur.starts_with("<!")) {
            cur.advance(2);
            skip_doctype(cur);
        } else if (cur.starts_with("<?")) {
            size_t end = xml_text.find("?>", cur.pos);
            if (end == std::string_view::npos) cur.fail("unterminated processing instruction");
            cur.advance(end + 2 - cur.pos);
        } else if (cur.starts_with("</")) {
            cur.advance(2);
            std::string name = read_name(cur);
            cur.skip_ws();
            if (cur.eof() || cur.peek() != '>') cur.fail("expected '>' in closing tag " + name);
            cur.next();
            if (stack.empty() || stack.back() != name)
                cur.fail("mismatched closing tag </" + name + ">" +
                         (stack.empty() ? "" : ", open element is <" + stack.back() + ">"));
            stack.pop_back();
            handle_close(name);
        } else {
            cur.next();
            OpenTag tag = read_open_tag(cur);
            handle_open(tag);
            if (tag.self_closing) handle_close(tag.name);
            else stack.push_back(tag.name);
        }
    }
    if (!stack.empty()) cur.fail("unclosed element <" + stack.back() + ">");
    return result;
}

std::map<std::string, std::set<std::string>> parse_answer_key(std::string_view key_text) {
    std::map<std::string, std::set<std::string>> key;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= key_text.size()) {
        size_t eol = key_text.find('\n', pos);
        std::string_view line = key_text.substr(
            pos, eol == std::string_view::npos ? key_text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? key_text.size() + 1 : eol + 1;

        std::istringstream ss{std::string(line)};
        std::vector<std::string> fields;
        std::string field;
        while (ss >> field) fields.push_back(field);
        if (fields.empty()) continue;
        if (fields.size() < 3)
            throw Error("answer key line " + std::to_string(line_no) +
                        ": expected 'lexelt instance senses...', got " +
                        std::to_string(fields.size()) + " fields");
        std::set<std::string> senses(fields.begin() + 2, fields.end());
        if (!key.emplace(fields[1], std::move(senses)).second)
            throw Error("answer key line " + std::to_string(line_no) +
                        ": duplicate instance id " + fields[1]);
    }
    return key;
}

void apply_answer_key(Corpus& corpus,
                      const std::map<std::string, std::set<std::string>>& key) {
    for (WsdInstance& inst : corpus.instances) {
        auto it = key.find(inst.instance_id);
        if (it != key.end()) inst.gold_senses = it->second;
    }
}

// ---------------------------------------------------------------------------
// JSONL
// ---------------------------------------------------------------------------

void save_jsonl(const Corpus& corpus, std::ostream& out) {
    for (const WsdInstance& inst : corpus.instances) {
        json obj;
        obj["task"] = inst.task_id;
        obj["id"] = inst.instance_id;
        obj["text"] = inst.context_text;
        obj["head_start"] = inst.head_start;
        obj["head_end"] = inst.head_end;
        obj["senses"] = inst.gold_senses;
        json pos = json::array();
        for (const PosAnnotation& p : inst.pos_tags)
            pos.push_back(json::array({p.begin, p.end, kTagNames[static_cast<size_t>(p.tag)]}));
        obj["pos"] = std::move(pos);
        out << obj.dump() << '\n';
    }
}

Corpus load_jsonl(std::istream& in, Split split) {
    Corpus corpus;
    corpus.split = split;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw Error("corpus line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            WsdInstance inst;
            inst.task_id = obj.at("task").get<std::string>();
            inst.instance_id = obj.at("id").get<std::string>();
            inst.context_text = obj.at("text").get<std::string>();
            inst.head_start = obj.at("head_start").get<size_t>();
            inst.head_end = obj.at("head_end").get<size_t>();
            for (const json& s : obj.at("senses"))
                inst.gold_senses.insert(s.get<std::string>());
            for (const json& p : obj.at("pos")) {
                if (!p.is_array() || p.size() != 3)
                    throw Error("pos entry must be [begin, end, tag]");
                PosAnnotation ann;
                ann.begin = p[0].get<size_t>();
                ann.end = p[1].get<size_t>();
                std::string tag = p[2].get<std::string>();
                ann.tag = tag_index(tag);
                if (ann.tag < 0) throw Error("unknown tag '" + tag + "'");
                inst.pos_tags.push_back(ann);
            }
            corpus.instances.push_back(std::move(inst));
        } catch (const json::exception& e) {
            throw Error("corpus line " + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw Error("corpus line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    validate(corpus);
    return corpus;
}

void save_jsonl_file(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    save_jsonl(corpus, out);
    if (!out) throw Error("write failed: " + path);
}

Corpus load_jsonl_file(const std::string& path, Split split) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open corpus: " + path);
    try {
        return load_jsonl(in, split);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Held-out split
// ---------------------------------------------------------------------------

std::pair<Corpus, Corpus> heldout_split(const Corpus& corpus, double dev_fraction,
                                        uint64_t seed) {
    if (dev_fraction < 0.0 || dev_fraction >= 1.0)
        throw Error("dev fraction must be in [0, 1)");
    const size_t n = corpus.instances.size();
    const size_t target = static_cast<size_t>(std::floor(dev_fraction * static_cast<double>(n) + 1e-9));

    Corpus train;
    train.split = corpus.split;
    Corpus dev;
    dev.split = Split::Dev;

    if (target == 0) {
        train.instances = corpus.instances;
        return {std::move(train), std::move(dev)};
    }

    struct TaskQuota {
        std::string task_id;
        std::vector<size_t> indices;
        size_t quota = 0;
        double remainder = 0.0;
    };
    std::vector<TaskQuota> tasks;
    for (const std::string& id : corpus.task_ids()) {
        TaskQuota t;
        t.task_id = id;
        t.indices = corpus.task_instances(id);
        double exact = dev_fraction * static_cast<double>(t.indices.size());
        t.quota = static_cast<size_t>(std::floor(exact + 1e-9));
        t.remainder = exact - static_cast<double>(t.quota);
        tasks.push_back(std::move(t));
    }
    std::sort(tasks.begin(), tasks.end(),
              [](const TaskQuota& a, const TaskQuota& b) { return a.task_id < b.task_id; });

    size_t assigned = 0;
    for (const TaskQuota& t : tasks) assigned += t.quota;

    // Largest-remainder allocation of the leftover dev slots; ties go to the
    // lexicographically smaller task id.
    if (assigned < target) {
        std::vector<size_t> order(tasks.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (tasks[a].remainder != tasks[b].remainder)
                return tasks[a].remainder > tasks[b].remainder;
            return tasks[a].task_id < tasks[b].task_id;
        });
        size_t leftover = target - assigned;
        for (size_t i = 0; leftover > 0; i = (i + 1) % order.size()) {
            TaskQuota& t = tasks[order[i]];
            if (t.quota < t.indices.size()) {
                ++t.quota;
                --leftover;
            } else if (i + 1 == order.size()) {
                break; // every task saturated
            }
        }
    } else if (assigned > target) {
        std::vector<size_t> order(tasks.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (tasks[a].remainder != tasks[b].remainder)
                return tasks[a].remainder < tasks[b].remainder;
            return tasks[a].task_id > tasks[b].task_id;
        });
        size_t excess = assigned - target;
        for (size_t i = 0; excess > 0 && i < order.size(); ++i) {
            TaskQuota& t = tasks[order[i]];
            if (t.quota > 0) {
                --t.quota;
                --excess;
            }
        }
    }

    std::unordered_set<size_t> dev_indices;
    for (TaskQuota& t : tasks) {
        Rng rng(task_seed(seed, t.task_id));
        rng.shuffle(t.indices);
        for (size_t i = 0; i < t.quota; ++i) dev_indices.insert(t.indices[i]);
    }

    for (size_t i = 0; i < n; ++i) {
        if (dev_indices.count(i)) dev.instances.push_back(corpus.instances[i]);
        else train.instances.push_back(corpus.instances[i]);
    }
    return {std::move(train), std::move(dev)};
}

} // namespace wsd
