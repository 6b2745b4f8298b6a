#include "recovercast/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace recovercast {

namespace {

// out = W v + b
void affine(const Matrix& w, std::span<const double> v, std::span<const double> b,
            std::vector<double>& out) {
    out.resize(w.rows);
    for (std::size_t r = 0; r < w.rows; ++r) {
        const double* row = w.data.data() + r * w.cols;
        double acc = b[r];
        for (std::size_t k = 0; k < w.cols; ++k) acc += row[k] * v[k];
        out[r] = acc;
    }
}

void check_step_dims(const LstmParams& p, std::span<const double> x, const CellState& prev) {
    if (x.size() != p.input_size) {
        throw DimensionMismatch("input has " + std::to_string(x.size()) +
                                " entries, params expect " + std::to_string(p.input_size));
    }
    if (prev.h.size() != p.hidden_size || prev.c.size() != p.hidden_size) {
        throw DimensionMismatch("state size does not match hidden_size " +
                                std::to_string(p.hidden_size));
    }
}

}  // namespace

LstmParams LstmParams::zeros(std::size_t hidden_size, std::size_t input_size) {
    LstmParams p;
    p.hidden_size = hidden_size;
    p.input_size = input_size;
    const auto cols = hidden_size + input_size;
    for (Matrix* w : {&p.w_f, &p.w_i, &p.w_c, &p.w_o}) *w = Matrix(hidden_size, cols);
    for (auto* b : {&p.b_f, &p.b_i, &p.b_c, &p.b_o, &p.w_y}) b->assign(hidden_size, 0.0);
    p.b_y = 0.0;
    return p;
}

std::array<std::span<double>, LstmParams::kTensorCount> LstmParams::tensors() {
    return {std::span<double>(w_f.data), std::span<double>(w_i.data),
            std::span<double>(w_c.data), std::span<double>(w_o.data),
            std::span<double>(b_f),      std::span<double>(b_i),
            std::span<double>(b_c),      std::span<double>(b_o),
            std::span<double>(w_y),      std::span<double>(&b_y, 1)};
}

std::array<std::span<const double>, LstmParams::kTensorCount> LstmParams::tensors() const {
    auto mutable_views = const_cast<LstmParams*>(this)->tensors();
    std::array<std::span<const double>, kTensorCount> out;
    for (std::size_t i = 0; i < kTensorCount; ++i) out[i] = mutable_views[i];
    return out;
}

std::size_t LstmParams::parameter_count() const {
    std::size_t n = 0;
    for (auto t : tensors()) n += t.size();
    return n;
}

void LstmParams::validate() const {
    if (hidden_size == 0 || input_size == 0) {
        throw DimensionMismatch("hidden_size and input_size must be positive");
    }
    const Matrix* gates[] = {&w_f, &w_i, &w_c, &w_o};
    for (std::size_t g = 0; g < 4; ++g) {
        const Matrix& w = *gates[g];
        if (w.rows != hidden_size || w.cols != concat_size() ||
            w.data.size() != w.rows * w.cols) {
            throw DimensionMismatch(std::string(kTensorNames[g]) + " must be " +
                                    std::to_string(hidden_size) + "x" +
                                    std::to_string(concat_size()));
        }
    }
    const std::vector<double>* vecs[] = {&b_f, &b_i, &b_c, &b_o, &w_y};
    for (std::size_t v = 0; v < 5; ++v) {
        if (vecs[v]->size() != hidden_size) {
            throw DimensionMismatch(std::string(kTensorNames[4 + v]) + " must have " +
                                    std::to_string(hidden_size) + " entries");
        }
    }
}

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double tanh_act(double x) { return std::tanh(x); }

CellStep cell_forward(const LstmParams& p, std::span<const double> x, const CellState& prev) {
    check_step_dims(p, x, prev);
    const auto hidden = p.hidden_size;

    CellStep step;
    GateCache& g = step.cache;
    g.concat.reserve(p.concat_size());
    g.concat.assign(prev.h.begin(), prev.h.end());
    g.concat.insert(g.concat.end(), x.begin(), x.end());
    g.c_prev = prev.c;

    affine(p.w_f, g.concat, p.b_f, g.z_f);
    affine(p.w_i, g.concat, p.b_i, g.z_i);
    affine(p.w_c, g.concat, p.b_c, g.z);
    affine(p.w_o, g.concat, p.b_o, g.z_o);

    g.c.resize(hidden);
    g.tanh_c.resize(hidden);
    g.h.resize(hidden);
    for (std::size_t k = 0; k < hidden; ++k) {
        g.z_f[k] = sigmoid(g.z_f[k]);
        g.z_i[k] = sigmoid(g.z_i[k]);
        g.z[k] = tanh_act(g.z[k]);
        g.z_o[k] = sigmoid(g.z_o[k]);
        g.c[k] = g.z_f[k] * prev.c[k] + g.z_i[k] * g.z[k];
        g.tanh_c[k] = tanh_act(g.c[k]);
        g.h[k] = g.z_o[k] * g.tanh_c[k];
    }
    step.next = {g.h, g.c};
    return step;
}

namespace {

std::size_t step_count(const LstmParams& p, std::span<const double> window) {
    if (window.empty()) throw EmptyWindow("window must contain at least one time step");
    if (window.size() % p.input_size != 0) {
        throw DimensionMismatch("window size " + std::to_string(window.size()) +
                                " is not a multiple of input_size " +
                                std::to_string(p.input_size));
    }
    return window.size() / p.input_size;
}

double head(const LstmParams& p, std::span<const double> h) {
    double out = p.b_y;
    for (std::size_t k = 0; k < p.hidden_size; ++k) out += p.w_y[k] * h[k];
    return out;
}

}  // namespace

SequenceOutput sequence_forward(const LstmParams& params, std::span<const double> window) {
    const auto steps = step_count(params, window);
    SequenceOutput out;
    out.caches.reserve(steps);
    CellState state = CellState::zeros(params.hidden_size);
    for (std::size_t t = 0; t < steps; ++t) {
        auto step = cell_forward(params, window.subspan(t * params.input_size, params.input_size),
                                 state);
        state = std::move(step.next);
        out.caches.push_back(std::move(step.cache));
    }
    out.prediction = head(params, state.h);
    return out;
}

double sequence_predict(const LstmParams& params, std::span<const double> window) {
    const auto steps = step_count(params, window);
    CellState state = CellState::zeros(params.hidden_size);
    for (std::size_t t = 0; t < steps; ++t) {
        state = cell_forward(params, window.subspan(t * params.input_size, params.input_size),
                             state)
                    .next;
    }
    return head(params, state.h);
}

long double sequence_predict_extended(const LstmParams& params, std::span<const double> window) {
    using Real = long double;
    const auto steps = step_count(params, window);
    const auto hidden = params.hidden_size;
    const auto cols = params.concat_size();
    std::vector<Real> h(hidden, 0), c(hidden, 0), v(cols, 0), h_next(hidden);
    auto gate = [&](const Matrix& w, const std::vector<double>& b, std::size_t r) {
        Real acc = b[r];
        for (std::size_t k = 0; k < cols; ++k) acc += static_cast<Real>(w(r, k)) * v[k];
        return acc;
    };
    auto logistic = [](Real x) {
        return x >= 0 ? 1 / (1 + std::exp(-x)) : std::exp(x) / (1 + std::exp(x));
    };
    for (std::size_t t = 0; t < steps; ++t) {
        std::copy(h.begin(), h.end(), v.begin());
        for (std::size_t k = 0; k < params.input_size; ++k) {
            v[hidden + k] = window[t * params.input_size + k];
        }
        for (std::size_t r = 0; r < hidden; ++r) {
            const Real zf = logistic(gate(params.w_f, params.b_f, r));
            const Real zi = logistic(gate(params.w_i, params.b_i, r));
            const Real z = std::tanh(gate(params.w_c, params.b_c, r));
            const Real zo = logistic(gate(params.w_o, params.b_o, r));
            c[r] = zf * c[r] + zi * z;
            h_next[r] = zo * std::tanh(c[r]);
        }
        h.swap(h_next);
    }
    Real out = params.b_y;
    for (std::size_t k = 0; k < hidden; ++k) out += static_cast<Real>(params.w_y[k]) * h[k];
    return out;
}

LstmParams init_params(std::size_t hidden_size, std::size_t input_size, std::uint64_t seed) {
    if (hidden_size == 0 || input_size == 0) {
        throw DimensionMismatch("hidden_size and input_size must be positive");
    }
    LstmParams p = LstmParams::zeros(hidden_size, input_size);
    const double k = 1.0 / std::sqrt(static_cast<double>(hidden_size));
    std::mt19937_64 rng(seed);
    // 53 random mantissa bits -> [0, 1), then affine onto [-k, k].
    auto draw = [&] {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return -k + 2.0 * k * u;
    };
    for (Matrix* w : {&p.w_f, &p.w_i, &p.w_c, &p.w_o}) {
        for (double& v : w->data) v = draw();
    }
    for (double& v : p.w_y) v = draw();
    p.b_f.assign(hidden_size, 1.0);
    return p;
}

}  // namespace recovercast
