// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "recovercast/checkpoint.hpp"
#include "recovercast/cli.hpp"
#include "recovercast/forecast.hpp"
#include "recovercast/ingest.hpp"
#include "recovercast/io.hpp"
#include "recovercast/lstm.hpp"
#include "recovercast/pipeline.hpp"
#include "recovercast/scaling.hpp"
#include "recovercast/training.hpp"
#include "recovercast/windowing.hpp"
#include "support/scalar_oracle.hpp"

using namespace recovercast;
namespace fs = std::filesystem;

namespace {

const std::string kData = RECOVERCAST_DATA_DIR "/time_series_covid19_recovered_global.csv";

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

int run_tool(std::vector<std::string> args) {
    args.insert(args.begin(), "recovercast");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code != 0) std::fprintf(stderr, "%s", err.str().c_str());
    return code;
}

// 1. Gradient correctness: 20 seeds x hidden {2,4,8} x window {3,5,10}, eps 1e-5, < 1e-4, < 60 s.
Outcome gradient_correctness() {
    Outcome o;
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (std::size_t hidden : {2, 4, 8}) {
            for (std::size_t window : {3, 5, 10}) {
                const auto p = oracle::random_params(hidden, 1, 1000 * seed + 10 * hidden + window);
                const auto batch = oracle::random_batch(3, window, seed * 31 + hidden + window);
                const double err = gradient_check(p, batch, 1e-5);
                worst = std::max(worst, err);
                o.require(err < 1e-4, "seed " + std::to_string(seed) + " hidden " +
                                          std::to_string(hidden) + " window " +
                                          std::to_string(window) + fmt(" rel err %.3g", err));
            }
        }
    }
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, fmt("runtime %.1f s exceeds 60 s", secs));
    if (o.pass) o.detail = fmt("180 instances, max rel err %.3g", worst) + fmt(", %.2f s", secs);
    return o;
}

// 2. Vectorized forward vs scalar oracle on 100 random instances within 1e-12, < 5 s.
Outcome oracle_equivalence() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::size_t hidden = 1 + i % 8;
        const auto p = oracle::random_params(hidden, 1, 7000 + i, 1.2);
        std::vector<double> h(hidden), c(hidden), x{u(rng)};
        for (auto& v : h) v = u(rng) / 1.5;
        for (auto& v : c) v = u(rng);
        const auto got = cell_forward(p, x, CellState{h, c});
        const auto want = oracle::scalar_cell(p, x, h, c);
        for (std::size_t k = 0; k < hidden; ++k) {
            worst = std::max({worst, std::abs(got.next.h[k] - want.h[k]),
                              std::abs(got.next.c[k] - want.c[k])});
        }
        std::vector<double> window(1 + i % 15);
        for (auto& v : window) v = u(rng);
        worst = std::max(worst, std::abs(sequence_forward(p, window).prediction -
                                         oracle::scalar_predict(p, window)));
    }
    const double secs = seconds_since(t0);
    o.require(worst <= 1e-12, fmt("max deviation %.3g", worst));
    o.require(secs < 5.0, fmt("runtime %.2f s exceeds 5 s", secs));
    if (o.pass) o.detail = fmt("100 instances, max deviation %.3g", worst);
    return o;
}

// 3. Scaler round trip within 1e-12 relative over 1000 random series; boundaries map to 0 and 1.
Outcome scaler_round_trip() {
    Outcome o;
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> exponent(-8, 8);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double scale = std::pow(10.0, exponent(rng));
        const double offset = scale * exponent(rng);
        std::uniform_real_distribution<double> u(offset - scale, offset + scale);
        std::vector<double> r(2 + rng() % 100);
        for (auto& v : r) v = u(rng);
        ScalerParams p;
        try {
            p = fit_scaler(r);
        } catch (const ScalingError&) {
            continue;
        }
        const auto back = inverse_transform(p, transform(p, r));
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] == 0.0) continue;
            worst = std::max(worst, std::abs(back[i] - r[i]) / std::abs(r[i]));
        }
        o.require(transform(p, p.x_min) == 0.0, "x_min does not map to 0");
        o.require(transform(p, p.x_max) == 1.0, "x_max does not map to 1");
    }
    o.require(worst <= 1e-12, fmt("max relative error %.3g", worst));
    if (o.pass) o.detail = fmt("1000 series, max relative error %.3g", worst);
    return o;
}

// 4. Protocol reproduction on the 403-day data: train 60/24/24 then forecast 20, twice.
struct ProtocolRun {
    std::string checkpoint;
    std::string forecast;
    std::string loss;
};

Outcome protocol_reproduction(fs::path& trained_dir) {
    Outcome o;
    const auto t0 = Clock::now();
    const auto root = fs::temp_directory_path() / "recovercast_acceptance";
    fs::remove_all(root);

    std::vector<ProtocolRun> runs;
    for (int i = 0; i < 2; ++i) {
        const auto dir = root / ("run" + std::to_string(i));
        const int train_code = run_tool({"train", "--input", kData, "--output-dir", dir.string(),
                                         "--epochs", "60", "--batch-size", "24", "--test-len",
                                         "24", "--seed", "2021"});
        o.require(train_code == 0, "train exited " + std::to_string(train_code));
        if (train_code != 0) return o;
        const int fc_code = run_tool({"forecast", "--input", kData, "--output-dir", dir.string(),
                                      "--horizon", "20"});
        o.require(fc_code == 0, "forecast exited " + std::to_string(fc_code));
        if (fc_code != 0) return o;
        runs.push_back({read_file(dir / "checkpoint.json"), read_file(dir / "forecast.csv"),
                        read_file(dir / "loss_history.csv")});
        trained_dir = dir;
    }

    const auto prepared = prepare_series(aggregate_global(load_jhu_csv(kData)), 24);
    o.require(prepared.cumulative.values.size() == 403, "dataset is not 403 days");
    o.require(prepared.train_days == 379, "train split is not 379 days");
    o.require(prepared.test_deltas.size() == 24, "test split is not 24 days");

    const auto cp = deserialize_checkpoint(runs[0].checkpoint);
    o.require(cp.config.epochs == 60 && cp.config.batch_size == 24 && cp.test_len == 24,
              "checkpoint does not record the 60/24/24 protocol");

    std::istringstream csv(runs[0].forecast);
    std::string line;
    std::getline(csv, line);
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        const auto f = split_csv_line(line);
        o.require(f.size() == 3 && std::isfinite(std::stod(f[1])) && std::isfinite(std::stod(f[2])),
                  "non-finite forecast row: " + line);
    }
    o.require(rows == 20, "forecast has " + std::to_string(rows) + " rows");
    o.require(runs[0].checkpoint == runs[1].checkpoint, "checkpoints differ between runs");
    o.require(runs[0].forecast == runs[1].forecast, "forecasts differ between runs");
    o.require(runs[0].loss == runs[1].loss, "loss histories differ between runs");

    const double secs = seconds_since(t0);
    o.require(secs < 600.0, fmt("runtime %.1f s exceeds 10 min", secs));
    if (o.pass) o.detail = fmt("split 379/24, 20 finite values, bit-identical reruns, %.1f s", secs);
    return o;
}

// 5. Sine smoke test: 200 points, window 10, hidden 16, <= 500 epochs.
Outcome sine_smoke() {
    Outcome o;
    const auto t0 = Clock::now();
    constexpr std::size_t kPoints = 200, kWindow = 10, kTest = 40;
    std::vector<double> series(kPoints);
    for (std::size_t i = 0; i < kPoints; ++i) {
        series[i] = std::sin(2.0 * M_PI * static_cast<double>(i) / 25.0);
    }
    const auto split = split_train_test(series, SplitSpec{kTest});
    const auto scaler = fit_scaler(split.train);
    const auto train_scaled = transform(scaler, split.train);
    const auto all_scaled = transform(scaler, series);

    TrainConfig cfg;
    cfg.epochs = 500;
    cfg.window_len = kWindow;
    cfg.hidden_size = 16;
    cfg.batch_size = 24;
    cfg.learning_rate = 1e-3;
    cfg.seed = 11;
    const auto result = train(cfg, make_windows(train_scaled, kWindow));
    const double final_loss = result.report.epoch_mean_loss.back();

    // One-step predictions over the held-out tail, windows from observed values.
    double sq = 0.0;
    for (std::size_t t = kPoints - kTest; t < kPoints; ++t) {
        const std::span<const double> window(all_scaled.data() + t - kWindow, kWindow);
        const double e = sequence_predict(result.params, window) - all_scaled[t];
        sq += e * e;
    }
    const double rmse = std::sqrt(sq / kTest);
    const auto& l = result.report.epoch_mean_loss;
    double first5 = 0, last5 = 0;
    for (int i = 0; i < 5; ++i) first5 += l[i], last5 += l[l.size() - 1 - i];

    const double secs = seconds_since(t0);
    o.require(final_loss < 1e-3, fmt("final-epoch mse %.3g", final_loss));
    o.require(rmse < 0.05, fmt("held-out rmse %.3g", rmse));
    o.require(last5 < first5, "last 5 epochs not below first 5");
    o.require(secs < 120.0, fmt("runtime %.1f s exceeds 2 min", secs));
    if (o.pass) {
        o.detail = fmt("final mse %.3g", final_loss) + fmt(", held-out rmse %.3g", rmse) +
                   fmt(", %.1f s", secs);
    }
    return o;
}

// 6. reconstruct_cumulative . to_daily_deltas is exact on the real data.
Outcome delta_round_trip() {
    Outcome o;
    const auto global = aggregate_global(load_jhu_csv(kData));
    const auto back = reconstruct_cumulative(global.values.front(), to_daily_deltas(global));
    o.require(back.values ==
                  std::vector<double>(global.values.begin() + 1, global.values.end()),
              "round trip not exact on the global series");
    o.require(back.dates == std::vector<Date>(global.dates.begin() + 1, global.dates.end()),
              "dates not preserved");
    if (o.pass) o.detail = "402 deltas reproduce the cumulative series exactly";
    return o;
}

// 7. forecast_horizon(21)[:20] == forecast_horizon(20), bit-exact.
Outcome recursive_consistency(const fs::path& trained_dir) {
    Outcome o;
    Checkpoint cp;
    try {
        cp = load_checkpoint(trained_dir / "checkpoint.json");
    } catch (const std::exception& e) {
        o.require(false, std::string("no trained checkpoint: ") + e.what());
        return o;
    }
    const auto global = aggregate_global(load_jhu_csv(kData));
    const auto scaled = transform(cp.model.scaler, to_daily_deltas(global).values);
    const std::vector<double> seed(scaled.end() - static_cast<std::ptrdiff_t>(cp.model.window_len),
                                   scaled.end());
    const auto h20 = forecast_horizon(cp.model, seed, 20, global.values.back(), global.dates.back());
    const auto h21 = forecast_horizon(cp.model, seed, 21, global.values.back(), global.dates.back());
    o.require(h21.daily.size() == 21 && h20.daily.size() == 20, "wrong horizon lengths");
    o.require(std::vector<double>(h21.daily.begin(), h21.daily.begin() + 20) == h20.daily,
              "daily values differ");
    o.require(std::vector<double>(h21.cumulative.begin(), h21.cumulative.begin() + 20) ==
                  h20.cumulative,
              "cumulative values differ");
    if (o.pass) o.detail = "first 20 of 21 steps identical to the 20-step forecast";
    return o;
}

// 8. Parser golden fixture plus one fixture per declared parse error.
Outcome parser_golden() {
    Outcome o;
    const std::string dir = RECOVERCAST_FIXTURE_DIR;
    const auto t = load_jhu_csv(dir + "/five_regions.csv");
    o.require(t.regions.size() == 5 && t.dates.size() == 6, "fixture shape");
    if (!o.pass) return o;
    o.require(t.regions[0].country == "Albania" && t.regions[0].province.empty(), "row 1 names");
    o.require(t.regions[0].counts == std::vector<std::int64_t>{0, 4, 4, 9, 15, 15}, "row 1 counts");
    o.require(t.regions[1].province == "Hubei" && t.regions[1].country == "China", "row 2 names");
    o.require(t.regions[1].latitude && *t.regions[1].latitude == 30.9756, "row 2 latitude");
    o.require(t.regions[2].country == "Korea, South", "quoted country");
    o.require(!t.regions[3].latitude && !t.regions[3].longitude, "absent coordinates");
    o.require(t.regions[4].longitude && *t.regions[4].longitude == -85.3232, "row 5 longitude");
    o.require(format_iso(t.dates.front()) == "2020-12-30" && format_iso(t.dates.back()) == "2021-01-04",
              "date axis");

    const std::pair<const char*, IngestErrorKind> bad[] = {
        {"/malformed_header.csv", IngestErrorKind::MalformedHeader},
        {"/ragged_row.csv", IngestErrorKind::RaggedRow},
        {"/non_numeric.csv", IngestErrorKind::NonNumericCount},
    };
    for (const auto& [file, kind] : bad) {
        bool matched = false;
        try {
            load_jhu_csv(dir + file);
        } catch (const IngestError& e) {
            matched = e.kind() == kind;
        }
        o.require(matched, std::string(file) + " did not raise " + to_string(kind));
    }
    if (o.pass) o.detail = "golden fields match; MalformedHeader, RaggedRow, NonNumericCount raised";
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const Outcome& o) {
        std::printf("[%s] AC%d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    };
    auto guarded = [](auto&& fn) {
        try {
            return fn();
        } catch (const std::exception& e) {
            Outcome o;
            o.require(false, std::string("exception: ") + e.what());
            return o;
        }
    };

    fs::path trained_dir;
    report(1, "gradient correctness", guarded(gradient_correctness));
    report(2, "scalar-oracle equivalence", guarded(oracle_equivalence));
    report(3, "scaler round trip", guarded(scaler_round_trip));
    report(4, "pipeline protocol reproduction",
           guarded([&] { return protocol_reproduction(trained_dir); }));
    report(5, "learning smoke test", guarded(sine_smoke));
    report(6, "delta/cumulative round trip", guarded(delta_round_trip));
    report(7, "recursive consistency", guarded([&] { return recursive_consistency(trained_dir); }));
    report(8, "parser golden tests", guarded(parser_golden));

    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
