#include "recovercast/scaling.hpp"

#include <algorithm>
#include <cmath>

namespace recovercast {

namespace {

void check(const ScalerParams& p) {
    if (!(std::isfinite(p.x_min) && std::isfinite(p.x_max) && p.x_max > p.x_min)) {
        throw ScalingError(ScalingErrorKind::InvalidParams,
                           "scaler requires finite x_max > x_min");
    }
}

}  // namespace

ScalerParams fit_scaler(std::span<const double> values) {
    if (values.empty()) {
        throw ScalingError(ScalingErrorKind::EmptyInput, "cannot fit a scaler on no values");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!(*hi > *lo)) {
        throw ScalingError(ScalingErrorKind::DegenerateRange,
                           "all values equal " + std::to_string(*lo) + "; range is empty");
    }
    return {*lo, *hi};
}

double transform(const ScalerParams& params, double value) {
    return (value - params.x_min) / (params.x_max - params.x_min);
}

double inverse_transform(const ScalerParams& params, double scaled) {
    return scaled * (params.x_max - params.x_min) + params.x_min;
}

std::vector<double> transform(const ScalerParams& params, std::span<const double> values) {
    check(params);
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(transform(params, v));
    return out;
}

std::vector<double> inverse_transform(const ScalerParams& params,
                                      std::span<const double> scaled) {
    check(params);
    std::vector<double> out;
    out.reserve(scaled.size());
    for (double v : scaled) out.push_back(inverse_transform(params, v));
    return out;
}

}  // namespace recovercast
