#include "wsdbench/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wsdbench/error.hpp"

namespace wsd {

using json = nlohmann::json;

std::string format_score(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

namespace {

std::string micro_field(const BenchCell& cell) {
    return cell.has_score ? format_score(cell.micro) : "-";
}

std::string p_field(const BenchCell& cell) {
    return cell.p_vs_dbn.has_value() ? format_score(*cell.p_vs_dbn) : "-";
}

template <typename WriteFn>
void write_file(const std::string& path, WriteFn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open \"" + path + "\" for writing");
    fn(out);
    if (!out) throw Error("failed writing \"" + path + "\"");
}

} // namespace

void write_report_tsv(const BenchReport& report, std::ostream& out) {
    out << "algorithm\tfeature_set\tmicro_recall\tp_value_vs_dbn\tn_tasks_failed\n";
    for (const BenchCell& cell : report.cells) {
        out << cell.algorithm << '\t' << to_string(cell.features) << '\t' << micro_field(cell)
            << '\t' << p_field(cell) << '\t' << cell.n_failed << '\n';
    }
}

void write_report_json(const BenchReport& report, std::ostream& out) {
    json j;
    j["format"] = "wsdbench-report";
    j["version"] = 1;
    j["seed"] = report.seed;
    j["n_tasks"] = report.n_tasks;
    j["n_failed"] = report.n_failed;
    json cells = json::array();
    for (const BenchCell& cell : report.cells) {
        json c;
        c["algorithm"] = cell.algorithm;
        c["feature_set"] = to_string(cell.features);
        if (cell.has_score) {
            c["micro_recall"] = cell.micro;
            c["n_test"] = cell.n_test;
            c["n_correct"] = cell.n_correct;
        } else {
            c["micro_recall"] = nullptr;
        }
        if (cell.p_vs_dbn.has_value()) {
            c["p_value_vs_dbn"] = *cell.p_vs_dbn;
        } else {
            c["p_value_vs_dbn"] = nullptr;
        }
        c["n_tasks_failed"] = cell.n_failed;
        json tasks = json::array();
        for (const CellTaskOutcome& outcome : cell.tasks) {
            json t;
            t["task"] = outcome.task_id;
            t["ok"] = outcome.ok;
            if (outcome.ok) {
                t["n_test"] = outcome.n_test;
                t["n_correct"] = outcome.n_correct;
                t["recall"] = outcome.recall;
            } else {
                t["error"] = outcome.error;
            }
            tasks.push_back(std::move(t));
        }
        c["tasks"] = std::move(tasks);
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    out << j.dump(2) << '\n';
}

void write_report_markdown(const BenchReport& report, std::ostream& out) {
    out << "| algorithm | feature_set | micro_recall | p_value_vs_dbn | n_tasks_failed |\n";
    out << "|---|---|---|---|---|\n";
    for (const BenchCell& cell : report.cells) {
        out << "| " << cell.algorithm << " | " << to_string(cell.features) << " | "
            << micro_field(cell) << " | " << p_field(cell) << " | " << cell.n_failed << " |\n";
    }
}

BenchReport parse_report_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("report file: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "wsdbench-report") {
            throw Error("report file: unrecognized format field");
        }
        if (j.at("version").get<int>() != 1) {
            throw Error("report file: unsupported version");
        }
        BenchReport report;
        report.seed = j.at("seed").get<uint64_t>();
        report.n_tasks = j.at("n_tasks").get<size_t>();
        report.n_failed = j.at("n_failed").get<size_t>();
        for (const json& c : j.at("cells")) {
            BenchCell cell;
            cell.algorithm = c.at("algorithm").get<std::string>();
            cell.features = feature_set_from_string(c.at("feature_set").get<std::string>());
            cell.n_failed = c.at("n_tasks_failed").get<size_t>();
            if (!c.at("micro_recall").is_null()) {
                cell.has_score = true;
                cell.micro = c.at("micro_recall").get<double>();
                cell.n_test = c.at("n_test").get<size_t>();
                cell.n_correct = c.at("n_correct").get<size_t>();
            }
            if (!c.at("p_value_vs_dbn").is_null()) {
                cell.p_vs_dbn = c.at("p_value_vs_dbn").get<double>();
            }
            for (const json& t : c.at("tasks")) {
                CellTaskOutcome outcome;
                outcome.task_id = t.at("task").get<std::string>();
                outcome.ok = t.at("ok").get<bool>();
                if (outcome.ok) {
                    outcome.n_test = t.at("n_test").get<size_t>();
                    outcome.n_correct = t.at("n_correct").get<size_t>();
                    outcome.recall = t.at("recall").get<double>();
                } else {
                    outcome.error = t.at("error").get<std::string>();
                }
                cell.tasks.push_back(std::move(outcome));
            }
            report.cells.push_back(std::move(cell));
        }
        return report;
    } catch (const json::exception& e) {
        throw Error(std::string("report file: ") + e.what());
    }
}

BenchReport load_report_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_report_json(buf.str());
}

void write_report_tsv_file(const BenchReport& report, const std::string& path) {
    write_file(path, [&](std::ostream& out) { write_report_tsv(report, out); });
}

void write_report_json_file(const BenchReport& report, const std::string& path) {
    write_file(path, [&](std::ostream& out) { write_report_json(report, out); });
}

void write_report_markdown_file(const BenchReport& report, const std::string& path) {
    write_file(path, [&](std::ostream& out) { write_report_markdown(report, out); });
}

} // namespace wsd
