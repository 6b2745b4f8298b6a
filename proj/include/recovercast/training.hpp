#ifndef RECOVERCAST_TRAINING_HPP
#define RECOVERCAST_TRAINING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "recovercast/lstm.hpp"
#include "recovercast/windowing.hpp"

namespace recovercast {

enum class TrainingErrorKind { LengthMismatch, EmptyInput, EmptyDataset, InvalidConfig };

class TrainingError : public std::runtime_error {
public:
    TrainingError(TrainingErrorKind kind, const std::string& detail)
        : std::runtime_error(detail), kind_(kind) {}
    TrainingErrorKind kind() const noexcept { return kind_; }

private:
    TrainingErrorKind kind_;
};

struct TrainConfig {
    std::size_t epochs = 60;
    std::size_t batch_size = 24;
    double learning_rate = 1e-3;
    std::size_t window_len = 30;
    std::size_t hidden_size = 32;
    std::uint64_t seed = 42;
    double gradient_clip = 5.0;

    /// Throws TrainingError(InvalidConfig) if any field is non-positive.
    void validate() const;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// One tensor per LstmParams field with identical shapes.
using Gradients = LstmParams;

double mse_loss(std::span<const double> predictions, std::span<const double> targets);

/// Batch MSE from a forward pass only.
double batch_loss(const LstmParams& params, const Batch& batch);

struct LossAndGradients {
    double loss = 0.0;
    Gradients grads;
};

/// Exact gradient of the batch MSE by full backpropagation through time.
LossAndGradients backward(const LstmParams& params, const Batch& batch);

/// Max over every parameter entry of |analytic - numeric| / max(|analytic|, |numeric|, 1e-8),
/// where `numeric` is the central difference with step `epsilon`.
double gradient_check(const LstmParams& params, const Batch& batch, double epsilon);

/// Same comparison against a caller-supplied analytic gradient.
double gradient_check(const LstmParams& params, const Batch& batch, double epsilon,
                      const Gradients& analytic);

double global_norm(const Gradients& grads);

/// Rescales `grads` in place so its global L2 norm is at most `max_norm`.
/// Returns the norm before clipping.
double clip_global_norm(Gradients& grads, double max_norm);

struct OptimizerState {
    static constexpr double kBeta1 = 0.9;
    static constexpr double kBeta2 = 0.999;
    static constexpr double kEpsilon = 1e-8;

    LstmParams first_moment;
    LstmParams second_moment;
    std::uint64_t step = 0;

    static OptimizerState for_params(const LstmParams& params);
};

/// Bias-corrected adaptive-moment update of `params` in place.
void optimizer_step(OptimizerState& state, LstmParams& params, const Gradients& grads,
                    double learning_rate);

struct TrainReport {
    std::vector<double> epoch_mean_loss;
};

struct TrainResult {
    LstmParams params;
    TrainReport report;
};

/// Seed for the sample permutation used in `epoch`.
std::uint64_t epoch_shuffle_seed(std::uint64_t seed, std::size_t epoch);

/// Deterministic in (config, dataset): init from config.seed, reshuffle each
/// epoch, then backward + clip + optimizer step per batch.
TrainResult train(const TrainConfig& config, const SupervisedDataset& dataset);

}  // namespace recovercast

#endif  // RECOVERCAST_TRAINING_HPP
