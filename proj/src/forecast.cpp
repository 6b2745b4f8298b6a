#include "recovercast/forecast.hpp"

#include <cmath>
#include <string>

namespace recovercast {

namespace {

void check_window(const ForecastModel& model, std::span<const double> window) {
    if (window.size() != model.window_len * model.params.input_size) {
        throw WindowLengthMismatch("window has " + std::to_string(window.size()) +
                                   " values, model expects " +
                                   std::to_string(model.window_len));
    }
}

}  // namespace

double predict_next(const ForecastModel& model, std::span<const double> scaled_window) {
    check_window(model, scaled_window);
    return sequence_predict(model.params, scaled_window);
}

ForecastResult forecast_horizon(const ForecastModel& model, std::span<const double> seed_window,
                                std::size_t horizon, double anchor, Date last_observed) {
    check_window(model, seed_window);
    ForecastResult out;
    out.scaled.reserve(horizon);
    out.dates.reserve(horizon);

    std::vector<double> window(seed_window.begin(), seed_window.end());
    for (std::size_t step = 0; step < horizon; ++step) {
        const double p = sequence_predict(model.params, window);
        out.scaled.push_back(p);
        out.dates.push_back(last_observed + std::chrono::days{static_cast<int>(step) + 1});
        window.erase(window.begin());
        window.push_back(p);
    }
    out.daily = inverse_transform(model.scaler, out.scaled);

    DeltaSeries deltas{out.dates, out.daily};
    out.cumulative = reconstruct_cumulative(anchor, deltas).values;
    return out;
}

ErrorMetrics compute_metrics(std::span<const double> predicted, std::span<const double> observed) {
    if (observed.empty()) throw EmptyTest("no observations to score against");
    if (predicted.size() != observed.size()) {
        throw std::invalid_argument("predicted and observed lengths differ");
    }
    double sq = 0.0;
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = predicted[i] - observed[i];
        sq += e * e;
        abs_sum += std::abs(e);
    }
    const auto n = static_cast<double>(observed.size());
    return {std::sqrt(sq / n), abs_sum / n};
}

HoldoutEvaluation evaluate_holdout(const ForecastModel& model,
                                   std::span<const double> train_tail_window,
                                   std::span<const double> observed, FeedMode mode) {
    check_window(model, train_tail_window);
    if (observed.empty()) throw EmptyTest("test span is empty");

    HoldoutEvaluation out;
    std::vector<double> window(train_tail_window.begin(), train_tail_window.end());
    std::vector<double> scaled;
    scaled.reserve(observed.size());
    for (double truth : observed) {
        const double p = sequence_predict(model.params, window);
        scaled.push_back(p);
        window.erase(window.begin());
        window.push_back(mode == FeedMode::TeacherForcing ? transform(model.scaler, truth) : p);
    }
    out.predicted = inverse_transform(model.scaler, scaled);
    out.metrics = compute_metrics(out.predicted, observed);
    return out;
}

}  // namespace recovercast
