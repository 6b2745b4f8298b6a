#include "recovercast/training.hpp"

#include <algorithm>
#include <cmath>

namespace recovercast {

void TrainConfig::validate() const {
    auto fail = [](const std::string& what) {
        throw TrainingError(TrainingErrorKind::InvalidConfig, what + " must be positive");
    };
    if (batch_size == 0) fail("batch_size");
    if (window_len == 0) fail("window_len");
    if (hidden_size == 0) fail("hidden_size");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate");
    if (!(gradient_clip > 0.0) || !std::isfinite(gradient_clip)) fail("gradient_clip");
}

double mse_loss(std::span<const double> predictions, std::span<const double> targets) {
    if (predictions.size() != targets.size()) {
        throw TrainingError(TrainingErrorKind::LengthMismatch,
                            std::to_string(predictions.size()) + " predictions vs " +
                                std::to_string(targets.size()) + " targets");
    }
    if (predictions.empty()) {
        throw TrainingError(TrainingErrorKind::EmptyInput, "mse of an empty set");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = predictions[i] - targets[i];
        sum += d * d;
    }
    return sum / static_cast<double>(predictions.size());
}

namespace {

void check_batch(const LstmParams& params, const Batch& batch) {
    if (batch.size() == 0) {
        throw TrainingError(TrainingErrorKind::EmptyInput, "batch has no samples");
    }
    if (batch.window_len == 0 || batch.inputs.size() != batch.size() * batch.window_len ||
        batch.window_len % params.input_size != 0) {
        throw DimensionMismatch("batch inputs do not match window_len x input_size");
    }
}

// grad_W += outer(delta, v); grad_b += delta; dv += W^T delta
void accumulate_gate(const Matrix& w, std::span<const double> delta, std::span<const double> v,
                     Matrix& grad_w, std::vector<double>& grad_b, std::vector<double>& dv) {
    for (std::size_t r = 0; r < w.rows; ++r) {
        const double d = delta[r];
        grad_b[r] += d;
        double* gw = grad_w.data.data() + r * w.cols;
        const double* wr = w.data.data() + r * w.cols;
        for (std::size_t k = 0; k < w.cols; ++k) {
            gw[k] += d * v[k];
            dv[k] += wr[k] * d;
        }
    }
}

long double batch_loss_extended(const LstmParams& params, const Batch& batch) {
    long double sum = 0;
    for (std::size_t b = 0; b < batch.size(); ++b) {
        const long double e = sequence_predict_extended(params, batch.row(b)) - batch.targets[b];
        sum += e * e;
    }
    return sum / static_cast<long double>(batch.size());
}

}  // namespace

double batch_loss(const LstmParams& params, const Batch& batch) {
    check_batch(params, batch);
    std::vector<double> preds;
    preds.reserve(batch.size());
    for (std::size_t b = 0; b < batch.size(); ++b) {
        preds.push_back(sequence_predict(params, batch.row(b)));
    }
    return mse_loss(preds, batch.targets);
}

LossAndGradients backward(const LstmParams& params, const Batch& batch) {
    params.validate();
    check_batch(params, batch);
    const auto hidden = params.hidden_size;
    const auto n = static_cast<double>(batch.size());

    LossAndGradients out;
    out.grads = LstmParams::zeros(hidden, params.input_size);
    Gradients& g = out.grads;

    std::vector<double> dh(hidden), dc(hidden), dv(params.concat_size());
    std::vector<double> da_f(hidden), da_i(hidden), da_c(hidden), da_o(hidden);
    double loss_sum = 0.0;

    for (std::size_t b = 0; b < batch.size(); ++b) {
        const auto fwd = sequence_forward(params, batch.row(b));
        const double err = fwd.prediction - batch.targets[b];
        loss_sum += err * err;
        const double dpred = 2.0 * err / n;

        const auto& last = fwd.caches.back();
        g.b_y += dpred;
        for (std::size_t k = 0; k < hidden; ++k) {
            g.w_y[k] += dpred * last.h[k];
            dh[k] = dpred * params.w_y[k];
        }
        std::fill(dc.begin(), dc.end(), 0.0);

        for (auto it = fwd.caches.rbegin(); it != fwd.caches.rend(); ++it) {
            const GateCache& s = *it;
            for (std::size_t k = 0; k < hidden; ++k) {
                const double tc = s.tanh_c[k];
                const double dct = dc[k] + dh[k] * s.z_o[k] * (1.0 - tc * tc);
                da_o[k] = dh[k] * tc * s.z_o[k] * (1.0 - s.z_o[k]);
                da_f[k] = dct * s.c_prev[k] * s.z_f[k] * (1.0 - s.z_f[k]);
                da_i[k] = dct * s.z[k] * s.z_i[k] * (1.0 - s.z_i[k]);
                da_c[k] = dct * s.z_i[k] * (1.0 - s.z[k] * s.z[k]);
                dc[k] = dct * s.z_f[k];
            }
            std::fill(dv.begin(), dv.end(), 0.0);
            accumulate_gate(params.w_f, da_f, s.concat, g.w_f, g.b_f, dv);
            accumulate_gate(params.w_i, da_i, s.concat, g.w_i, g.b_i, dv);
            accumulate_gate(params.w_c, da_c, s.concat, g.w_c, g.b_c, dv);
            accumulate_gate(params.w_o, da_o, s.concat, g.w_o, g.b_o, dv);
            std::copy(dv.begin(), dv.begin() + static_cast<std::ptrdiff_t>(hidden), dh.begin());
        }
    }
    out.loss = loss_sum / n;
    return out;
}

double gradient_check(const LstmParams& params, const Batch& batch, double epsilon,
                      const Gradients& analytic) {
    check_batch(params, batch);
    LstmParams probe = params;
    auto probe_tensors = probe.tensors();
    const auto grad_tensors = analytic.tensors();
    double worst = 0.0;
    for (std::size_t t = 0; t < LstmParams::kTensorCount; ++t) {
        auto values = probe_tensors[t];
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double saved = values[i];
            values[i] = saved + epsilon;
            const long double up = batch_loss_extended(probe, batch);
            values[i] = saved - epsilon;
            const long double down = batch_loss_extended(probe, batch);
            values[i] = saved;

            // The perturbation actually applied is the rounded (saved +/- epsilon).
            const double numeric =
                static_cast<double>((up - down) / (static_cast<long double>(saved + epsilon) -
                                                   static_cast<long double>(saved - epsilon)));
            const double exact = grad_tensors[t][i];
            const double scale = std::max({std::abs(exact), std::abs(numeric), 1e-8});
            worst = std::max(worst, std::abs(exact - numeric) / scale);
        }
    }
    return worst;
}

double gradient_check(const LstmParams& params, const Batch& batch, double epsilon) {
    return gradient_check(params, batch, epsilon, backward(params, batch).grads);
}

double global_norm(const Gradients& grads) {
    double sum = 0.0;
    for (auto t : grads.tensors()) {
        for (double v : t) sum += v * v;
    }
    return std::sqrt(sum);
}

double clip_global_norm(Gradients& grads, double max_norm) {
    const double norm = global_norm(grads);
    if (norm > max_norm) {
        const double scale = max_norm / norm;
        for (auto t : grads.tensors()) {
            for (double& v : t) v *= scale;
        }
    }
    return norm;
}

OptimizerState OptimizerState::for_params(const LstmParams& params) {
    OptimizerState s;
    s.first_moment = LstmParams::zeros(params.hidden_size, params.input_size);
    s.second_moment = s.first_moment;
    return s;
}

void optimizer_step(OptimizerState& state, LstmParams& params, const Gradients& grads,
                    double learning_rate) {
    ++state.step;
    const double t = static_cast<double>(state.step);
    const double correct1 = 1.0 - std::pow(OptimizerState::kBeta1, t);
    const double correct2 = 1.0 - std::pow(OptimizerState::kBeta2, t);

    auto p = params.tensors();
    auto m = state.first_moment.tensors();
    auto v = state.second_moment.tensors();
    const auto g = grads.tensors();
    for (std::size_t k = 0; k < LstmParams::kTensorCount; ++k) {
        if (p[k].size() != g[k].size() || m[k].size() != g[k].size()) {
            throw DimensionMismatch("gradient tensor " + std::string(LstmParams::kTensorNames[k]) +
                                    " does not match parameter shape");
        }
        for (std::size_t i = 0; i < p[k].size(); ++i) {
            const double gi = g[k][i];
            m[k][i] = OptimizerState::kBeta1 * m[k][i] + (1.0 - OptimizerState::kBeta1) * gi;
            v[k][i] = OptimizerState::kBeta2 * v[k][i] + (1.0 - OptimizerState::kBeta2) * gi * gi;
            const double m_hat = m[k][i] / correct1;
            const double v_hat = v[k][i] / correct2;
            p[k][i] -= learning_rate * m_hat / (std::sqrt(v_hat) + OptimizerState::kEpsilon);
        }
    }
}

std::uint64_t epoch_shuffle_seed(std::uint64_t seed, std::size_t epoch) {
    // splitmix64 finalizer over (seed, epoch)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(epoch) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TrainResult train(const TrainConfig& config, const SupervisedDataset& dataset) {
    config.validate();
    if (dataset.empty()) {
        throw TrainingError(TrainingErrorKind::EmptyDataset, "no training windows");
    }
    TrainResult result;
    result.params = init_params(config.hidden_size, 1, config.seed);
    if (dataset.window_len() % result.params.input_size != 0) {
        throw DimensionMismatch("dataset window does not match input_size");
    }
    auto state = OptimizerState::for_params(result.params);
    result.report.epoch_mean_loss.reserve(config.epochs);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        const auto batches = make_batches(dataset, config.batch_size, /*shuffle=*/true,
                                          epoch_shuffle_seed(config.seed, epoch));
        double weighted = 0.0;
        for (const auto& batch : batches) {
            auto step = backward(result.params, batch);
            weighted += step.loss * static_cast<double>(batch.size());
            clip_global_norm(step.grads, config.gradient_clip);
            optimizer_step(state, result.params, step.grads, config.learning_rate);
        }
        result.report.epoch_mean_loss.push_back(weighted / static_cast<double>(dataset.size()));
    }
    return result;
}

}  // namespace recovercast
