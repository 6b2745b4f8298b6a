#include "recovercast/checkpoint.hpp"

#include <cmath>
#include <json.hpp>

#include "recovercast/io.hpp"

namespace recovercast {

using nlohmann::json;

namespace {

template <typename T>
T require(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw CheckpointError(path, "missing");
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        throw CheckpointError(path, e.what());
    }
}

double require_finite(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw CheckpointError(path, "missing");
    if (!it->is_number()) throw CheckpointError(path, "not a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw CheckpointError(path, "not finite");
    return v;
}

std::size_t require_positive(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw CheckpointError(path, "missing");
    if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) {
        throw CheckpointError(path, "must be a positive integer");
    }
    return it->get<std::size_t>();
}

const json& require_object(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_object()) throw CheckpointError(key, "missing or not an object");
    return *it;
}

}  // namespace

std::string serialize_checkpoint(const Checkpoint& cp) {
    const auto& p = cp.model.params;
    json tensors = json::object();
    const auto views = p.tensors();
    for (std::size_t t = 0; t < LstmParams::kTensorCount; ++t) {
        tensors[std::string(LstmParams::kTensorNames[t])] =
            std::vector<double>(views[t].begin(), views[t].end());
    }
    const json doc = {
        {"format", kCheckpointFormat},
        {"version", kCheckpointVersion},
        {"target", cp.target},
        {"hidden_size", p.hidden_size},
        {"input_size", p.input_size},
        {"window_len", cp.model.window_len},
        {"test_len", cp.test_len},
        {"train_base_cumulative", cp.train_base_cumulative},
        {"train_end_date", cp.train_end_date},
        {"scaler", {{"x_min", cp.model.scaler.x_min}, {"x_max", cp.model.scaler.x_max}}},
        {"config",
         {{"epochs", cp.config.epochs},
          {"batch_size", cp.config.batch_size},
          {"learning_rate", cp.config.learning_rate},
          {"window_len", cp.config.window_len},
          {"hidden_size", cp.config.hidden_size},
          {"seed", cp.config.seed},
          {"gradient_clip", cp.config.gradient_clip}}},
        {"params", tensors},
    };
    return doc.dump(1) + "\n";
}

Checkpoint deserialize_checkpoint(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CheckpointError("", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CheckpointError("", "top level is not an object");
    if (require<std::string>(doc, "format", "format") != kCheckpointFormat) {
        throw CheckpointError("format", "not a recovercast checkpoint");
    }
    const int version = require<int>(doc, "version", "version");
    if (version != kCheckpointVersion) {
        throw CheckpointError("version", "unsupported version " + std::to_string(version) +
                                             " (expected " + std::to_string(kCheckpointVersion) +
                                             ")");
    }

    Checkpoint cp;
    cp.target = require<std::string>(doc, "target", "target");
    const auto hidden = require_positive(doc, "hidden_size", "hidden_size");
    const auto input = require_positive(doc, "input_size", "input_size");
    cp.model.window_len = require_positive(doc, "window_len", "window_len");
    cp.test_len = require_positive(doc, "test_len", "test_len");
    cp.train_base_cumulative = require_finite(doc, "train_base_cumulative", "train_base_cumulative");
    cp.train_end_date = require<std::string>(doc, "train_end_date", "train_end_date");

    const auto& scaler = require_object(doc, "scaler");
    cp.model.scaler.x_min = require_finite(scaler, "x_min", "scaler.x_min");
    cp.model.scaler.x_max = require_finite(scaler, "x_max", "scaler.x_max");
    if (!(cp.model.scaler.x_max > cp.model.scaler.x_min)) {
        throw CheckpointError("scaler.x_max", "must exceed scaler.x_min");
    }

    const auto& cfg = require_object(doc, "config");
    cp.config.epochs = require<std::size_t>(cfg, "epochs", "config.epochs");
    cp.config.batch_size = require_positive(cfg, "batch_size", "config.batch_size");
    cp.config.learning_rate = require_finite(cfg, "learning_rate", "config.learning_rate");
    cp.config.window_len = require_positive(cfg, "window_len", "config.window_len");
    cp.config.hidden_size = require_positive(cfg, "hidden_size", "config.hidden_size");
    cp.config.seed = require<std::uint64_t>(cfg, "seed", "config.seed");
    cp.config.gradient_clip = require_finite(cfg, "gradient_clip", "config.gradient_clip");

    cp.model.params = LstmParams::zeros(hidden, input);
    const auto& tensors = require_object(doc, "params");
    auto views = cp.model.params.tensors();
    for (std::size_t t = 0; t < LstmParams::kTensorCount; ++t) {
        const std::string name(LstmParams::kTensorNames[t]);
        const std::string path = "params." + name;
        const auto it = tensors.find(name);
        if (it == tensors.end() || !it->is_array()) throw CheckpointError(path, "missing array");
        if (it->size() != views[t].size()) {
            throw CheckpointError(path, "expected " + std::to_string(views[t].size()) +
                                            " entries, found " + std::to_string(it->size()));
        }
        for (std::size_t i = 0; i < views[t].size(); ++i) {
            const auto& v = (*it)[i];
            if (!v.is_number() || !std::isfinite(v.get<double>())) {
                throw CheckpointError(path, "entry " + std::to_string(i) + " is not a finite number");
            }
            views[t][i] = v.get<double>();
        }
    }
    return cp;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
    write_file_atomic(path, serialize_checkpoint(checkpoint));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw CheckpointError("", e.what());
    }
    return deserialize_checkpoint(text);
}

}  // namespace recovercast
