#include "wsdbench/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wsdbench/error.hpp"
#include "wsdbench/rng.hpp"

namespace wsd {

using json = nlohmann::json;

namespace {

constexpr const char* kFormatName = "wsdbench-models";
constexpr int kBundleVersion = 1;

json matrix_to_json(const DenseMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        auto r = m.row(i);
        for (size_t j = 0; j < m.cols; ++j) row.push_back(r[j]);
        rows.push_back(std::move(row));
    }
    return rows;
}

DenseMatrix matrix_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw Error(std::string("model file: ") + what + " is not an array");
    size_t rows = j.size();
    size_t cols = rows == 0 ? 0 : j[0].size();
    DenseMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols) {
            throw Error(std::string("model file: ragged matrix in ") + what);
        }
        for (size_t c = 0; c < cols; ++c) m(i, c) = row[c].get<double>();
    }
    return m;
}

json sparse_rows_to_json(const std::vector<SparseBinaryVector>& xs) {
    json rows = json::array();
    for (const SparseBinaryVector& x : xs) {
        json row = json::array();
        for (size_t i : x.indices) row.push_back(i);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SparseBinaryVector> sparse_rows_from_json(const json& j, size_t dim, const char* what) {
    if (!j.is_array()) throw Error(std::string("model file: ") + what + " is not an array");
    std::vector<SparseBinaryVector> xs;
    xs.reserve(j.size());
    for (const json& row : j) {
        SparseBinaryVector x;
        x.dim = dim;
        x.indices.reserve(row.size());
        for (const json& v : row) x.indices.push_back(v.get<size_t>());
        for (size_t i = 1; i < x.indices.size(); ++i) {
            if (x.indices[i - 1] >= x.indices[i]) {
                throw Error(std::string("model file: unsorted indices in ") + what);
            }
        }
        if (!x.indices.empty() && x.indices.back() >= dim) {
            throw Error(std::string("model file: index out of range in ") + what);
        }
        xs.push_back(std::move(x));
    }
    return xs;
}

DenseMatrix dense_from_sparse_rows(const std::vector<SparseBinaryVector>& xs, size_t dim) {
    DenseMatrix m(xs.size(), dim);
    for (size_t i = 0; i < xs.size(); ++i) {
        for (size_t j : xs[i].indices) m(i, j) = 1.0;
    }
    return m;
}

std::vector<SparseBinaryVector> sparse_rows_from_dense(const DenseMatrix& m) {
    std::vector<SparseBinaryVector> xs(m.rows);
    for (size_t i = 0; i < m.rows; ++i) {
        xs[i].dim = m.cols;
        auto row = m.row(i);
        for (size_t j = 0; j < m.cols; ++j) {
            if (row[j] != 0.0) xs[i].indices.push_back(j);
        }
    }
    return xs;
}

json kernel_to_json(const KernelSpec& k) {
    json j;
    switch (k.kind) {
        case KernelSpec::Kind::Linear: j["kind"] = "linear"; break;
        case KernelSpec::Kind::Polynomial: j["kind"] = "polynomial"; break;
        case KernelSpec::Kind::Rbf: j["kind"] = "rbf"; break;
    }
    j["degree"] = k.degree;
    j["coef"] = k.coef;
    j["gamma"] = k.gamma;
    return j;
}

KernelSpec kernel_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") return KernelSpec::linear();
    if (kind == "polynomial") {
        return KernelSpec::polynomial(j.at("degree").get<int>(), j.at("coef").get<double>());
    }
    if (kind == "rbf") return KernelSpec::rbf(j.at("gamma").get<double>());
    throw Error("model file: unknown kernel kind \"" + kind + "\"");
}

json vocab_to_json(const Vocabulary& v) {
    json j;
    j["set"] = to_string(v.set());
    j["window"] = v.window();
    j["tagset"] = kTagsetVersion;
    j["stopwords"] = to_hex(v.stopword_hash());
    j["lexicon"] = to_hex(v.lexicon_hash());
    j["topical"] = v.topical_names();
    j["local"] = v.local_names();
    j["hash"] = to_hex(v.content_hash());
    return j;
}

Vocabulary vocab_from_json(const json& j) {
    std::string tagset = j.at("tagset").get<std::string>();
    if (tagset != kTagsetVersion) {
        throw Error("model file: tagset \"" + tagset + "\" does not match \"" +
                    std::string(kTagsetVersion) + "\"");
    }
    Vocabulary v = Vocabulary::assemble(feature_set_from_string(j.at("set").get<std::string>()),
                                        j.at("window").get<size_t>(),
                                        j.at("topical").get<std::vector<std::string>>(),
                                        j.at("local").get<std::vector<std::string>>(),
                                        parse_hex(j.at("stopwords").get<std::string>()),
                                        parse_hex(j.at("lexicon").get<std::string>()));
    if (parse_hex(j.at("hash").get<std::string>()) != v.content_hash()) {
        throw Error("model file: vocabulary hash mismatch");
    }
    return v;
}

json labels_to_json(const LabelSpace& labels) { return json(labels.labels()); }

LabelSpace labels_from_json(const json& j) {
    return LabelSpace::from_sorted_unique(j.get<std::vector<std::string>>());
}

struct ModelWriter {
    json& params;

    void operator()(const MfsModel& m) const {
        params["type"] = "mfs";
        params["labels"] = labels_to_json(m.labels);
        params["majority"] = m.majority;
    }
    void operator()(const NbModel& m) const {
        params["type"] = "nb";
        params["labels"] = labels_to_json(m.labels);
        params["log_prior"] = m.log_prior;
        params["log_p1"] = matrix_to_json(m.log_p1);
    }
    void operator()(const KnnModel& m) const {
        params["type"] = "knn";
        params["labels"] = labels_to_json(m.labels);
        params["k"] = m.k;
        params["cosine"] = m.cosine;
        params["train_x"] = sparse_rows_to_json(m.train_x);
        params["train_y"] = m.train_y;
    }
    void operator()(const PcaKnnModel& m) const {
        params["type"] = "pca-knn";
        params["labels"] = labels_to_json(m.labels);
        params["k"] = m.k;
        params["cosine"] = m.cosine;
        params["mean"] = m.pca.mean;
        params["basis"] = matrix_to_json(m.pca.basis);
        params["eigenvalues"] = m.pca.eigenvalues;
        params["truncated"] = m.pca.truncated;
        params["train_z"] = matrix_to_json(m.train_z);
        params["train_y"] = m.train_y;
    }
    void operator()(const KpcaKnnModel& m) const {
        params["type"] = "kpca-knn";
        params["labels"] = labels_to_json(m.labels);
        params["k"] = m.k;
        params["cosine"] = m.cosine;
        params["kernel"] = kernel_to_json(m.kpca.kernel);
        params["train_x"] = sparse_rows_to_json(sparse_rows_from_dense(m.kpca.train));
        params["alpha"] = matrix_to_json(m.kpca.alpha);
        params["row_mean"] = m.kpca.train_row_mean;
        params["grand_mean"] = m.kpca.grand_mean;
        params["eigenvalues"] = m.kpca.eigenvalues;
        params["train_projections"] = matrix_to_json(m.kpca.train_projections);
        params["truncated"] = m.kpca.truncated;
        params["train_y"] = m.train_y;
    }
    void operator()(const LinearModel& m) const {
        params["type"] = "linear";
        params["labels"] = labels_to_json(m.labels);
        params["w"] = matrix_to_json(m.w);
        params["b"] = m.b;
    }
    void operator()(const MlpModel& m) const {
        params["type"] = "mlp";
        params["labels"] = labels_to_json(m.labels);
        json w = json::array();
        for (const DenseMatrix& layer : m.net.weights()) w.push_back(matrix_to_json(layer));
        params["weights"] = std::move(w);
        params["biases"] = m.net.biases();
    }
    void operator()(const KernelSvmModel& m) const {
        params["type"] = "kernel-svm";
        params["labels"] = labels_to_json(m.labels);
        params["kernel"] = kernel_to_json(m.kernel);
        params["train_x"] = sparse_rows_to_json(m.train_x);
        params["beta"] = matrix_to_json(m.beta);
        params["b"] = m.b;
    }
    void operator()(const DbnModel& m) const {
        params["type"] = "dbn";
        params["labels"] = labels_to_json(m.labels);
        json w = json::array();
        for (const DenseMatrix& layer : m.net.weights()) w.push_back(matrix_to_json(layer));
        params["weights"] = std::move(w);
        params["biases"] = m.net.biases();
        params["finetune_epochs"] = m.finetune_epochs;
    }
};

FeedForwardNet net_from_json(const json& params) {
    std::vector<DenseMatrix> w;
    for (const json& layer : params.at("weights")) w.push_back(matrix_from_json(layer, "weights"));
    auto b = params.at("biases").get<std::vector<std::vector<double>>>();
    return FeedForwardNet(std::move(w), std::move(b));
}

TaskModel model_from_json(const json& params, const Vocabulary& vocab) {
    const size_t dim = vocab.dimension();
    std::string type = params.at("type").get<std::string>();
    LabelSpace labels = labels_from_json(params.at("labels"));

    if (type == "mfs") {
        MfsModel m;
        m.labels = std::move(labels);
        m.majority = params.at("majority").get<size_t>();
        if (m.majority >= m.labels.size()) throw Error("model file: majority label out of range");
        return m;
    }
    if (type == "nb") {
        NbModel m;
        m.labels = std::move(labels);
        m.log_prior = params.at("log_prior").get<std::vector<double>>();
        m.log_p1 = matrix_from_json(params.at("log_p1"), "log_p1");
        if (m.log_p1.rows != m.labels.size() || m.log_prior.size() != m.labels.size() ||
            m.log_p1.cols != dim) {
            throw Error("model file: nb parameter shapes do not match");
        }
        m.rebuild_cache();
        return m;
    }
    if (type == "knn") {
        KnnModel m;
        m.labels = std::move(labels);
        m.k = params.at("k").get<size_t>();
        m.cosine = params.at("cosine").get<bool>();
        m.train_x = sparse_rows_from_json(params.at("train_x"), dim, "train_x");
        m.train_y = params.at("train_y").get<std::vector<size_t>>();
        if (m.train_x.empty() || m.train_x.size() != m.train_y.size()) {
            throw Error("model file: knn training data shapes do not match");
        }
        for (size_t y : m.train_y) {
            if (y >= m.labels.size()) throw Error("model file: knn label out of range");
        }
        return m;
    }
    if (type == "pca-knn") {
        PcaKnnModel m;
        m.labels = std::move(labels);
        m.k = params.at("k").get<size_t>();
        m.cosine = params.at("cosine").get<bool>();
        m.pca.mean = params.at("mean").get<std::vector<double>>();
        m.pca.basis = matrix_from_json(params.at("basis"), "basis");
        m.pca.eigenvalues = params.at("eigenvalues").get<std::vector<double>>();
        m.pca.truncated = params.at("truncated").get<bool>();
        m.train_z = matrix_from_json(params.at("train_z"), "train_z");
        m.train_y = params.at("train_y").get<std::vector<size_t>>();
        if (m.pca.mean.size() != dim || m.pca.basis.rows != dim ||
            m.pca.basis.cols != m.pca.eigenvalues.size() || m.train_z.rows != m.train_y.size() ||
            m.train_z.cols != m.pca.basis.cols) {
            throw Error("model file: pca parameter shapes do not match");
        }
        return m;
    }
    if (type == "kpca-knn") {
        KpcaKnnModel m;
        m.labels = std::move(labels);
        m.k = params.at("k").get<size_t>();
        m.cosine = params.at("cosine").get<bool>();
        m.kpca.kernel = kernel_from_json(params.at("kernel"));
        m.kpca.train = dense_from_sparse_rows(sparse_rows_from_json(params.at("train_x"), dim, "train_x"), dim);
        m.kpca.alpha = matrix_from_json(params.at("alpha"), "alpha");
        m.kpca.train_row_mean = params.at("row_mean").get<std::vector<double>>();
        m.kpca.grand_mean = params.at("grand_mean").get<double>();
        m.kpca.eigenvalues = params.at("eigenvalues").get<std::vector<double>>();
        m.kpca.train_projections = matrix_from_json(params.at("train_projections"), "train_projections");
        m.kpca.truncated = params.at("truncated").get<bool>();
        m.train_y = params.at("train_y").get<std::vector<size_t>>();
        const size_t n = m.kpca.train.rows;
        if (m.kpca.alpha.rows != n || m.kpca.train_row_mean.size() != n ||
            m.kpca.train_projections.rows != n || m.train_y.size() != n ||
            m.kpca.alpha.cols != m.kpca.eigenvalues.size() ||
            m.kpca.train_projections.cols != m.kpca.alpha.cols) {
            throw Error("model file: kpca parameter shapes do not match");
        }
        return m;
    }
    if (type == "linear") {
        LinearModel m;
        m.labels = std::move(labels);
        m.w = matrix_from_json(params.at("w"), "w");
        m.b = params.at("b").get<std::vector<double>>();
        if (m.w.rows != m.labels.size() || m.b.size() != m.labels.size() || m.w.cols != dim) {
            throw Error("model file: linear parameter shapes do not match");
        }
        return m;
    }
    if (type == "mlp") {
        MlpModel m;
        m.labels = std::move(labels);
        m.net = net_from_json(params);
        if (m.net.input_dim() != dim || m.net.output_dim() != m.labels.size()) {
            throw Error("model file: mlp parameter shapes do not match");
        }
        return m;
    }
    if (type == "kernel-svm") {
        KernelSvmModel m;
        m.labels = std::move(labels);
        m.kernel = kernel_from_json(params.at("kernel"));
        m.train_x = sparse_rows_from_json(params.at("train_x"), dim, "train_x");
        m.beta = matrix_from_json(params.at("beta"), "beta");
        m.b = params.at("b").get<std::vector<double>>();
        if (m.train_x.empty() || m.beta.rows != m.labels.size() ||
            m.beta.cols != m.train_x.size() || m.b.size() != m.labels.size()) {
            throw Error("model file: kernel svm parameter shapes do not match");
        }
        return m;
    }
    if (type == "dbn") {
        DbnModel m;
        m.labels = std::move(labels);
        m.net = net_from_json(params);
        m.finetune_epochs = params.at("finetune_epochs").get<size_t>();
        if (m.net.input_dim() != dim || m.net.output_dim() != m.labels.size()) {
            throw Error("model file: dbn parameter shapes do not match");
        }
        return m;
    }
    throw Error("model file: unknown model type \"" + type + "\"");
}

} // namespace

size_t predict_with(const TaskModel& model, const SparseBinaryVector& x) {
    return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

std::string predict_label(const TaskModel& model, const SparseBinaryVector& x) {
    return std::visit([&](const auto& m) { return m.labels.label(m.predict(x)); }, model);
}

const SavedTaskModel* ModelBundle::find(const std::string& task_id) const {
    for (const SavedTaskModel& t : tasks) {
        if (t.task_id == task_id) return &t;
    }
    return nullptr;
}

std::string serialize_bundle(const ModelBundle& bundle) {
    json j;
    j["format"] = kFormatName;
    j["version"] = kBundleVersion;
    j["algorithm"] = bundle.algorithm;
    j["features"] = to_string(bundle.features);
    j["window"] = bundle.window;
    j["seed"] = bundle.seed;
    j["config"] = json(bundle.config);
    json tasks = json::object();
    for (const SavedTaskModel& t : bundle.tasks) {
        if (tasks.contains(t.task_id)) throw Error("model bundle: duplicate task \"" + t.task_id + "\"");
        json entry;
        entry["vocab"] = vocab_to_json(t.vocab);
        json params = json::object();
        std::visit(ModelWriter{params}, t.model);
        entry["params"] = std::move(params);
        tasks[t.task_id] = std::move(entry);
    }
    j["tasks"] = std::move(tasks);
    return j.dump() + "\n";
}

ModelBundle parse_bundle(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("model file: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kFormatName) {
            throw Error("model file: unrecognized format field");
        }
        if (j.at("version").get<int>() != kBundleVersion) {
            throw Error("model file: unsupported version");
        }
        ModelBundle bundle;
        bundle.algorithm = j.at("algorithm").get<std::string>();
        bundle.features = feature_set_from_string(j.at("features").get<std::string>());
        bundle.window = j.at("window").get<size_t>();
        bundle.seed = j.at("seed").get<uint64_t>();
        bundle.config = j.at("config").get<std::map<std::string, std::string>>();
        for (const auto& [task_id, entry] : j.at("tasks").items()) {
            SavedTaskModel t;
            t.task_id = task_id;
            t.vocab = vocab_from_json(entry.at("vocab"));
            t.model = model_from_json(entry.at("params"), t.vocab);
            bundle.tasks.push_back(std::move(t));
        }
        return bundle;
    } catch (const json::exception& e) {
        throw Error(std::string("model file: ") + e.what());
    }
}

void save_bundle_file(const ModelBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open \"" + path + "\" for writing");
    out << serialize_bundle(bundle);
    if (!out) throw Error("failed writing \"" + path + "\"");
}

ModelBundle load_bundle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_bundle(buf.str());
}

} // namespace wsd
