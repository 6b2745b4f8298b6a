#ifndef RECOVERCAST_CHECKPOINT_HPP
#define RECOVERCAST_CHECKPOINT_HPP

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "recovercast/forecast.hpp"
#include "recovercast/training.hpp"

namespace recovercast {

inline constexpr const char* kCheckpointFormat = "recovercast-checkpoint";
inline constexpr int kCheckpointVersion = 1;

/// Raised on unreadable, corrupted or version-incompatible checkpoints.
/// `field()` names the offending entry ("" when the file itself failed).
class CheckpointError : public std::runtime_error {
public:
    CheckpointError(std::string field, const std::string& detail)
        : std::runtime_error(field.empty() ? detail : "field '" + field + "': " + detail),
          field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Model plus the preprocessing state needed to forecast without retraining.
struct Checkpoint {
    ForecastModel model;
    TrainConfig config;
    std::size_t test_len = 0;
    /// Cumulative total on the last training day; evaluation anchors here.
    double train_base_cumulative = 0.0;
    std::string train_end_date;  // ISO-8601
    /// The series the model was trained on.
    std::string target = "daily_delta";

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::string serialize_checkpoint(const Checkpoint& checkpoint);
Checkpoint deserialize_checkpoint(const std::string& text);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace recovercast

#endif  // RECOVERCAST_CHECKPOINT_HPP
