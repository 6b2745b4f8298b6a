#ifndef RECOVERCAST_LSTM_HPP
#define RECOVERCAST_LSTM_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace recovercast {

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EmptyWindow : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Gate weights act on the concatenation [h_prev, x], so every W_* is
/// hidden_size x (hidden_size + input_size). The w_y/b_y head maps the
/// final hidden state to one scalar.
struct LstmParams {
    std::size_t hidden_size = 0;
    std::size_t input_size = 0;

    Matrix w_f, w_i, w_c, w_o;
    std::vector<double> b_f, b_i, b_c, b_o;
    std::vector<double> w_y;
    double b_y = 0.0;

    static constexpr std::size_t kTensorCount = 10;
    static constexpr std::array<std::string_view, kTensorCount> kTensorNames = {
        "W_f", "W_i", "W_c", "W_o", "b_f", "b_i", "b_c", "b_o", "W_y", "b_y"};

    static LstmParams zeros(std::size_t hidden_size, std::size_t input_size);

    std::size_t concat_size() const noexcept { return hidden_size + input_size; }

    /// Every trainable tensor as a flat span, in kTensorNames order.
    std::array<std::span<double>, kTensorCount> tensors();
    std::array<std::span<const double>, kTensorCount> tensors() const;

    std::size_t parameter_count() const;

    /// Throws DimensionMismatch unless all shapes agree with the sizes.
    void validate() const;

    friend bool operator==(const LstmParams&, const LstmParams&) = default;
};

struct CellState {
    std::vector<double> h;
    std::vector<double> c;

    static CellState zeros(std::size_t hidden_size) {
        return {std::vector<double>(hidden_size, 0.0), std::vector<double>(hidden_size, 0.0)};
    }
};

/// Everything the backward pass needs from one forward step.
struct GateCache {
    std::vector<double> concat;  // [h_prev, x]
    std::vector<double> c_prev;
    std::vector<double> z_f, z_i, z, z_o;
    std::vector<double> c;
    std::vector<double> tanh_c;
    std::vector<double> h;
};

double sigmoid(double x);
double tanh_act(double x);

struct CellStep {
    CellState next;
    GateCache cache;
};

/// One LSTM step:
///   z_f = sig(W_f [h,x] + b_f), z_i = sig(W_i [h,x] + b_i), z = tanh(W_c [h,x] + b_c)
///   c' = z_f * c + z_i * z,     z_o = sig(W_o [h,x] + b_o), h' = z_o * tanh(c')
CellStep cell_forward(const LstmParams& params, std::span<const double> x, const CellState& prev);

struct SequenceOutput {
    double prediction = 0.0;
    std::vector<GateCache> caches;
};

/// Unrolls the cell over `window` from a zero state. The window is time-major
/// with input_size values per step; the prediction is w_y . h_T + b_y.
SequenceOutput sequence_forward(const LstmParams& params, std::span<const double> window);

/// Same value as sequence_forward(...).prediction without retaining caches.
double sequence_predict(const LstmParams& params, std::span<const double> window);

/// sequence_predict carried out in long double. The finite-difference
/// checker uses it so rounding in the loss does not swamp small gradients.
long double sequence_predict_extended(const LstmParams& params, std::span<const double> window);

/// Uniform [-1/sqrt(hidden), 1/sqrt(hidden)] weights from a seeded generator;
/// biases zero except b_f = 1.
LstmParams init_params(std::size_t hidden_size, std::size_t input_size, std::uint64_t seed);

}  // namespace recovercast

#endif  // RECOVERCAST_LSTM_HPP
