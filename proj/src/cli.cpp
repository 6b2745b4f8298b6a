#include "recovercast/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#include "recovercast/checkpoint.hpp"
#include "recovercast/forecast.hpp"
#include "recovercast/ingest.hpp"
#include "recovercast/io.hpp"
#include "recovercast/pipeline.hpp"
#include "recovercast/scaling.hpp"
#include "recovercast/svg_chart.hpp"
#include "recovercast/training.hpp"
#include "recovercast/windowing.hpp"

namespace fs = std::filesystem;

namespace recovercast {

namespace {

/// Carries an exit code out of a command handler.
struct CommandFailure : std::runtime_error {
    CommandFailure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

struct Options {
    std::string input;
    std::string output_dir;
    std::string checkpoint;
    TrainConfig config;
    std::size_t test_len = 24;
    std::size_t horizon = 20;
    bool teacher_forcing = false;
};

fs::path output_dir(const Options& opt) {
    if (!opt.output_dir.empty()) return opt.output_dir;
    if (const char* env = std::getenv("RECOVERCAST_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

fs::path checkpoint_path(const Options& opt) {
    if (!opt.checkpoint.empty()) return opt.checkpoint;
    return output_dir(opt) / "checkpoint.json";
}

RegionSeriesTable read_table(const Options& opt) {
    if (opt.input.empty()) throw CommandFailure(kExitConfigError, "--input is required");
    try {
        return load_jhu_csv(opt.input);
    } catch (const std::system_error& e) {
        throw CommandFailure(kExitDataError, e.what());
    }
}

Checkpoint read_checkpoint(const Options& opt) {
    const auto path = checkpoint_path(opt);
    try {
        return load_checkpoint(path);
    } catch (const CheckpointError& e) {
        throw CommandFailure(kExitCheckpointError,
                             "checkpoint " + path.string() + ": " + e.what());
    }
}

std::vector<double> tail(std::span<const double> values, std::size_t n) {
    if (n > values.size()) {
        throw CommandFailure(kExitDataError, "series has " + std::to_string(values.size()) +
                                                 " points, window needs " + std::to_string(n));
    }
    return {values.end() - static_cast<std::ptrdiff_t>(n), values.end()};
}

std::vector<double> day_axis(std::size_t first, std::size_t count) {
    std::vector<double> x(count);
    for (std::size_t i = 0; i < count; ++i) x[i] = static_cast<double>(first + i);
    return x;
}

int cmd_inspect(const Options& opt, std::ostream& out) {
    const auto table = read_table(opt);
    const auto global = aggregate_global(table);

    std::map<std::string, double> by_country;
    for (const auto& r : table.regions) {
        by_country[r.country] += r.counts.empty() ? 0.0 : static_cast<double>(r.counts.back());
    }
    std::vector<std::pair<std::string, double>> ranking(by_country.begin(), by_country.end());
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    out << "regions: " << table.regions.size() << "\n";
    out << "countries: " << ranking.size() << "\n";
    out << "date columns: " << table.dates.size() << "\n";
    if (!table.dates.empty()) {
        out << "date range: " << format_iso(table.dates.front()) << " to "
            << format_iso(table.dates.back()) << "\n";
        out << "global total: " << format_double(global.values.back()) << "\n";
    }
    for (std::size_t i = 0; i < std::min<std::size_t>(5, ranking.size()); ++i) {
        out << "  #" << i + 1 << " " << ranking[i].first << " "
            << format_double(ranking[i].second) << "\n";
    }

    std::ostringstream csv;
    csv << "rank,country,total_recovered\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const auto& name = ranking[i].first;
        const bool quote = name.find_first_of(",\"") != std::string::npos;
        csv << i + 1 << ',';
        if (quote) {
            csv << '"';
            for (char ch : name) csv << (ch == '"' ? "\"\"" : std::string(1, ch));
            csv << '"';
        } else {
            csv << name;
        }
        csv << ',' << format_double(ranking[i].second) << "\n";
    }
    const auto dest = output_dir(opt) / "country_totals.csv";
    write_file_atomic(dest, csv.str());
    out << "wrote " << dest.string() << "\n";
    return kExitOk;
}

nlohmann::json config_json(const TrainConfig& c) {
    return {{"epochs", c.epochs},          {"batch_size", c.batch_size},
            {"learning_rate", c.learning_rate}, {"window_len", c.window_len},
            {"hidden_size", c.hidden_size}, {"seed", c.seed},
            {"gradient_clip", c.gradient_clip}};
}

int cmd_train(const Options& opt, std::ostream& out) {
    try {
        opt.config.validate();
    } catch (const TrainingError& e) {
        throw CommandFailure(kExitConfigError, e.what());
    }
    const auto table = read_table(opt);
    const auto prepared = prepare_series(aggregate_global(table), opt.test_len);

    const auto scaler = fit_scaler(prepared.train_deltas);
    const auto scaled = transform(scaler, prepared.train_deltas);
    SupervisedDataset dataset;
    try {
        dataset = make_windows(scaled, opt.config.window_len);
    } catch (const WindowingError& e) {
        throw CommandFailure(kExitConfigError,
                             "window_len " + std::to_string(opt.config.window_len) +
                                 " does not fit the " + std::to_string(scaled.size()) +
                                 " training deltas: " + e.what());
    }

    out << "days: " << prepared.cumulative.values.size() << " (train " << prepared.train_days
        << ", test " << opt.test_len << ")\n";
    out << "training windows: " << dataset.size() << " of length " << dataset.window_len()
        << "\n";

    const auto result = train(opt.config, dataset);

    Checkpoint cp;
    cp.model = {result.params, scaler, opt.config.window_len};
    cp.config = opt.config;
    cp.test_len = opt.test_len;
    cp.train_base_cumulative = prepared.train_base_cumulative;
    cp.train_end_date = format_iso(prepared.train_end_date);

    const auto dir = output_dir(opt);
    const auto ckpt = checkpoint_path(opt);
    save_checkpoint(ckpt, cp);

    std::ostringstream loss;
    loss << "epoch,mean_loss\n";
    for (std::size_t e = 0; e < result.report.epoch_mean_loss.size(); ++e) {
        loss << e + 1 << ',' << format_double(result.report.epoch_mean_loss[e]) << "\n";
    }
    write_file_atomic(dir / "loss_history.csv", loss.str());

    const auto& c = opt.config;
    const nlohmann::json manifest = {
        {"tool", "recovercast"},
        {"tool_version", kToolVersion},
        {"command", "train"},
        {"input", opt.input},
        {"output_dir", dir.string()},
        {"checkpoint", ckpt.string()},
        {"seed", c.seed},
        {"test_len", opt.test_len},
        {"config", config_json(c)},
        {"replay_args",
         {"train", "--input", opt.input, "--output-dir", dir.string(), "--checkpoint",
          ckpt.string(), "--epochs", std::to_string(c.epochs), "--batch-size",
          std::to_string(c.batch_size), "--window-len", std::to_string(c.window_len),
          "--hidden-size", std::to_string(c.hidden_size), "--lr",
          format_double(c.learning_rate), "--clip", format_double(c.gradient_clip),
          "--test-len", std::to_string(opt.test_len), "--seed", std::to_string(c.seed)}},
    };
    write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");

    if (!result.report.epoch_mean_loss.empty()) {
        out << "final epoch mean loss: " << format_double(result.report.epoch_mean_loss.back())
            << "\n";
    }
    out << "wrote " << ckpt.string() << "\n";
    return kExitOk;
}

int cmd_forecast(const Options& opt, std::ostream& out) {
    const auto cp = read_checkpoint(opt);
    const auto global = aggregate_global(read_table(opt));
    const auto deltas = to_daily_deltas(global);
    const auto scaled = transform(cp.model.scaler, deltas.values);
    const auto seed = tail(scaled, cp.model.window_len);

    const auto result = forecast_horizon(cp.model, seed, opt.horizon, global.values.back(),
                                         global.dates.back());

    std::ostringstream csv;
    csv << "date,predicted_daily,predicted_cumulative\n";
    std::size_t negatives = 0;
    for (std::size_t i = 0; i < result.daily.size(); ++i) {
        if (result.daily[i] < 0.0) ++negatives;
        csv << format_iso(result.dates[i]) << ',' << format_double(result.daily[i]) << ','
            << format_double(result.cumulative[i]) << "\n";
    }
    const auto dir = output_dir(opt);
    write_file_atomic(dir / "forecast.csv", csv.str());

    const auto n_hist = deltas.values.size();
    ChartSpec chart{"Historical and predicted daily recoveries", "date", "recoveries per day",
                    format_iso(deltas.dates.front()),
                    format_iso(result.dates.empty() ? deltas.dates.back() : result.dates.back())};
    std::vector<LineSeries> series{
        {"historical", "#1f77b4", day_axis(0, n_hist), deltas.values, false},
        {"predicted", "#d62728", day_axis(n_hist, result.daily.size()), result.daily, true},
    };
    write_file_atomic(dir / "forecast.svg", render_line_chart(chart, series));

    out << "horizon: " << opt.horizon << " days from " << format_iso(global.dates.back()) << "\n";
    if (negatives > 0) {
        out << "warning: " << negatives << " negative daily predictions (cumulative not clamped)\n";
    }
    out << "wrote " << (dir / "forecast.csv").string() << "\n";
    return kExitOk;
}

int cmd_evaluate(const Options& opt, std::ostream& out) {
    const auto cp = read_checkpoint(opt);
    const auto prepared = prepare_series(aggregate_global(read_table(opt)), cp.test_len);
    if (format_iso(prepared.train_end_date) != cp.train_end_date) {
        out << "warning: checkpoint trained through " << cp.train_end_date
            << " but this input's training span ends " << format_iso(prepared.train_end_date)
            << "\n";
    }
    const auto train_scaled = transform(cp.model.scaler, prepared.train_deltas);
    const auto window = tail(train_scaled, cp.model.window_len);
    const auto mode = opt.teacher_forcing ? FeedMode::TeacherForcing : FeedMode::Recursive;
    const auto eval = evaluate_holdout(cp.model, window, prepared.test_deltas, mode);

    std::ostringstream csv;
    csv << "date,observed,predicted,error\n";
    for (std::size_t i = 0; i < prepared.test_deltas.size(); ++i) {
        csv << format_iso(prepared.test_dates[i]) << ',' << format_double(prepared.test_deltas[i])
            << ',' << format_double(eval.predicted[i]) << ','
            << format_double(eval.predicted[i] - prepared.test_deltas[i]) << "\n";
    }
    const auto dir = output_dir(opt);
    write_file_atomic(dir / "evaluation.csv", csv.str());

    const auto n_train = prepared.train_deltas.size();
    const auto n_test = prepared.test_deltas.size();
    ChartSpec chart{"Historical, real and predicted daily recoveries", "date",
                    "recoveries per day", format_iso(prepared.deltas.dates.front()),
                    format_iso(prepared.deltas.dates.back())};
    std::vector<LineSeries> series{
        {"historical", "#1f77b4", day_axis(0, n_train), prepared.train_deltas, false},
        {"real", "#2ca02c", day_axis(n_train, n_test), prepared.test_deltas, false},
        {"predicted", "#d62728", day_axis(n_train, n_test), eval.predicted, true},
    };
    write_file_atomic(dir / "evaluation.svg", render_line_chart(chart, series));

    out << "mode: " << (opt.teacher_forcing ? "teacher-forcing" : "recursive") << "\n";
    out << "test days: " << n_test << "\n";
    out << "rmse: " << format_double(eval.metrics.rmse) << "\n";
    out << "mae: " << format_double(eval.metrics.mae) << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Recovery-case forecasting with a from-scratch LSTM", "recovercast"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Options opt;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--input,-i", opt.input, "JHU CSSE recovered-cases CSV");
        cmd->add_option("--output-dir,-o", opt.output_dir,
                        "Output directory (default: $RECOVERCAST_OUTPUT_DIR or .)");
    };

    auto* inspect = app.add_subcommand("inspect", "Summarize a recovered-cases CSV");
    add_io(inspect);

    auto* train_cmd = app.add_subcommand("train", "Train the model and write a checkpoint");
    add_io(train_cmd);
    train_cmd->add_option("--checkpoint", opt.checkpoint, "Checkpoint path to write");
    train_cmd->add_option("--epochs", opt.config.epochs)->capture_default_str();
    train_cmd->add_option("--batch-size", opt.config.batch_size)->capture_default_str();
    train_cmd->add_option("--window-len", opt.config.window_len)->capture_default_str();
    train_cmd->add_option("--hidden-size", opt.config.hidden_size)->capture_default_str();
    train_cmd->add_option("--lr", opt.config.learning_rate)->capture_default_str();
    train_cmd->add_option("--clip", opt.config.gradient_clip, "Global gradient-norm clip")
        ->capture_default_str();
    train_cmd->add_option("--test-len", opt.test_len, "Held-out tail length in days")
        ->capture_default_str();
    train_cmd->add_option("--seed", opt.config.seed)->capture_default_str();

    auto* forecast_cmd = app.add_subcommand("forecast", "Forecast beyond the end of the series");
    add_io(forecast_cmd);
    forecast_cmd->add_option("--checkpoint", opt.checkpoint, "Checkpoint path to read");
    forecast_cmd->add_option("--horizon", opt.horizon)->capture_default_str();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score the held-out tail");
    add_io(evaluate_cmd);
    evaluate_cmd->add_option("--checkpoint", opt.checkpoint, "Checkpoint path to read");
    evaluate_cmd->add_flag("--teacher-forcing", opt.teacher_forcing,
                           "Refill the window with observed values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        if (inspect->parsed()) return cmd_inspect(opt, out);
        if (train_cmd->parsed()) return cmd_train(opt, out);
        if (forecast_cmd->parsed()) return cmd_forecast(opt, out);
        if (evaluate_cmd->parsed()) return cmd_evaluate(opt, out);
    } catch (const CommandFailure& e) {
        err << "error: " << e.what() << "\n";
        return e.code;
    } catch (const CheckpointError& e) {
        err << "error: checkpoint " << e.what() << "\n";
        return kExitCheckpointError;
    } catch (const IngestError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const ScalingError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const WindowingError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const TrainingError& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == TrainingErrorKind::InvalidConfig ? kExitConfigError : kExitDataError;
    } catch (const WindowLengthMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckpointError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitConfigError;
}

}  // namespace recovercast
