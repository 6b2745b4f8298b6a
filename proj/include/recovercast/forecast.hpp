#ifndef RECOVERCAST_FORECAST_HPP
#define RECOVERCAST_FORECAST_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "recovercast/ingest.hpp"
#include "recovercast/lstm.hpp"
#include "recovercast/scaling.hpp"

namespace recovercast {

class WindowLengthMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EmptyTest : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A trained network together with the preprocessing it was trained under.
struct ForecastModel {
    LstmParams params;
    ScalerParams scaler;
    std::size_t window_len = 0;

    friend bool operator==(const ForecastModel&, const ForecastModel&) = default;
};

/// One-step prediction in scaled units.
double predict_next(const ForecastModel& model, std::span<const double> scaled_window);

struct ForecastResult {
    std::vector<Date> dates;
    std::vector<double> scaled;      // raw network outputs
    std::vector<double> daily;       // persons/day
    std::vector<double> cumulative;  // running sum from the anchor
};

/// Iterated one-step forecasting: each prediction is appended to the window
/// and the oldest entry dropped. `last_observed` is the date of the final
/// observation; forecast dates start the day after.
ForecastResult forecast_horizon(const ForecastModel& model, std::span<const double> seed_window,
                                std::size_t horizon, double anchor, Date last_observed = {});

struct ErrorMetrics {
    double rmse = 0.0;
    double mae = 0.0;
};

ErrorMetrics compute_metrics(std::span<const double> predicted, std::span<const double> observed);

enum class FeedMode {
    Recursive,       // predictions refill the window
    TeacherForcing,  // observed values refill the window
};

struct HoldoutEvaluation {
    std::vector<double> predicted;  // persons/day
    ErrorMetrics metrics;
};

/// Forecasts len(observed) days from `train_tail_window` (scaled) and scores
/// the inverse-scaled predictions against `observed` daily values.
HoldoutEvaluation evaluate_holdout(const ForecastModel& model,
                                   std::span<const double> train_tail_window,
                                   std::span<const double> observed,
                                   FeedMode mode = FeedMode::Recursive);

}  // namespace recovercast

#endif  // RECOVERCAST_FORECAST_HPP
