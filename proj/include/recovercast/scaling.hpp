#ifndef RECOVERCAST_SCALING_HPP
#define RECOVERCAST_SCALING_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace recovercast {

enum class ScalingErrorKind { EmptyInput, DegenerateRange, InvalidParams };

class ScalingError : public std::runtime_error {
public:
    ScalingError(ScalingErrorKind kind, const std::string& detail)
        : std::runtime_error(detail), kind_(kind) {}
    ScalingErrorKind kind() const noexcept { return kind_; }

private:
    ScalingErrorKind kind_;
};

/// Min-max range fitted on training data. Always x_max > x_min.
struct ScalerParams {
    double x_min = 0.0;
    double x_max = 1.0;

    friend bool operator==(const ScalerParams&, const ScalerParams&) = default;
};

ScalerParams fit_scaler(std::span<const double> values);

/// (x - x_min) / (x_max - x_min). Inputs outside the fitted range
/// extrapolate linearly instead of clamping.
std::vector<double> transform(const ScalerParams& params, std::span<const double> values);
double transform(const ScalerParams& params, double value);

std::vector<double> inverse_transform(const ScalerParams& params, std::span<const double> scaled);
double inverse_transform(const ScalerParams& params, double scaled);

}  // namespace recovercast

#endif  // RECOVERCAST_SCALING_HPP
