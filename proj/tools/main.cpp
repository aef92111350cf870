// scaletrim: AUC-guided rating-scale item reduction.
//
// Exit codes: 0 success, 2 usage error, 3 input/load error, 4 computation
// error.

#include "scaletrim/dataset.hpp"
#include "scaletrim/errors.hpp"
#include "scaletrim/psychometrics.hpp"
#include "scaletrim/reduction.hpp"
#include "scaletrim/roc.hpp"
#include "scaletrim/svg_chart.hpp"
#include "scaletrim/synth.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitLoad = 3;
constexpr int kExitCompute = 4;

struct LoadFlags {
    std::string input;
    std::string delimiter = ",";
    std::string header = "auto";
    std::string missing = "reject";
    std::size_t label_index = 1; // 1-based on the command line
    std::string label_name;
    std::string range;
};

void add_load_flags(CLI::App* cmd, LoadFlags& flags) {
    cmd->add_option("input", flags.input, "dataset file (delimited text)")->required();
    cmd->add_option("--delimiter", flags.delimiter, "cell delimiter: ',' or 'tab'");
    cmd->add_option("--header", flags.header, "header handling: auto|yes|no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
    cmd->add_option("--missing", flags.missing, "missing-cell policy: reject|drop-row")
        ->check(CLI::IsMember({"reject", "drop-row"}));
    cmd->add_option("--label-index", flags.label_index, "label column position (1-based)");
    cmd->add_option("--label-name", flags.label_name, "label column name (needs a header)");
    cmd->add_option("--range", flags.range, "declared response range, e.g. 0:3");
}

char parse_delimiter(const std::string& text) {
    if (text == "tab" || text == "\\t" || text == "\t") return '\t';
    if (text.size() != 1) {
        throw scaletrim::ValidationError("delimiter must be a single character or 'tab'");
    }
    return text[0];
}

scaletrim::IngestOptions to_ingest_options(const LoadFlags& flags) {
    scaletrim::IngestOptions options;
    options.delimiter = parse_delimiter(flags.delimiter);
    if (flags.header == "yes") {
        options.header = scaletrim::HeaderMode::require;
    } else if (flags.header == "no") {
        options.header = scaletrim::HeaderMode::none;
    }
    options.missing = flags.missing == "drop-row" ? scaletrim::MissingPolicy::drop_row
                                                  : scaletrim::MissingPolicy::reject;
    if (flags.label_index == 0) {
        throw scaletrim::ValidationError("--label-index is 1-based");
    }
    options.label_index = flags.label_index - 1;
    options.label_name = flags.label_name;
    if (!flags.range.empty()) {
        const auto sep = flags.range.find(':');
        if (sep == std::string::npos) {
            throw scaletrim::ValidationError("--range expects min:max");
        }
        int lo = 0, hi = 0;
        try {
            lo = std::stoi(flags.range.substr(0, sep));
            hi = std::stoi(flags.range.substr(sep + 1));
        } catch (const std::exception&) {
            throw scaletrim::ValidationError("--range expects integers min:max");
        }
        options.response_range = {lo, hi};
    }
    return options;
}

scaletrim::Dataset load_or_exit(const LoadFlags& flags) {
    try {
        return scaletrim::load_dataset(flags.input, to_ingest_options(flags));
    } catch (const scaletrim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitLoad);
    }
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        std::exit(kExitLoad);
    }
    out << content;
}

// Resolve a comma-separated item list against the dataset: ids first, then
// 1-based positions for purely numeric entries.
std::vector<std::size_t> resolve_items(const scaletrim::Dataset& dataset,
                                       const std::string& list) {
    std::vector<std::size_t> positions;
    std::string token;
    std::istringstream in(list);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        bool found = false;
        for (std::size_t j = 0; j < dataset.item_ids.size(); ++j) {
            if (dataset.item_ids[j] == token) {
                positions.push_back(j + 1);
                found = true;
                break;
            }
        }
        if (found) continue;
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size() || value == 0 ||
            value > dataset.item_count()) {
            throw scaletrim::ValidationError("unknown item '" + token + "'");
        }
        positions.push_back(value);
    }
    if (positions.empty()) throw scaletrim::ValidationError("empty item list");
    return positions;
}

std::vector<std::size_t> parse_positions(const std::string& list, std::size_t max_items) {
    std::vector<std::size_t> positions;
    std::string token;
    std::istringstream in(list);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size() || value == 0 ||
            value > max_items) {
            throw scaletrim::ValidationError("bad item position '" + token + "'");
        }
        positions.push_back(value);
    }
    return positions;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scaletrim: rank rating-scale items by AUC, find the cumulative-AUC "
                 "peak, and report the reduced scale.\n"
                 "Exit codes: 0 ok, 2 usage, 3 input error, 4 computation error."};
    app.require_subcommand(1);

    // rank
    LoadFlags rank_flags;
    std::string rank_format = "table", rank_out;
    bool rank_descending = false;
    auto* rank = app.add_subcommand("rank", "per-item AUC table");
    add_load_flags(rank, rank_flags);
    rank->add_option("--format", rank_format, "output format: table|json")
        ->check(CLI::IsMember({"table", "json"}));
    rank->add_flag("--descending", rank_descending,
                   "render the table best-first (default ascending)");
    rank->add_option("--out", rank_out, "write output to a file instead of stdout");

    // curve
    LoadFlags curve_flags;
    std::string curve_format = "table", curve_out, curve_plot, curve_order;
    auto* curve_cmd = app.add_subcommand("curve", "AUC of running item totals");
    add_load_flags(curve_cmd, curve_flags);
    curve_cmd->add_option("--order", curve_order,
                          "comma-separated items to accumulate (default: ranked by AUC)");
    curve_cmd->add_option("--format", curve_format, "output format: table|json")
        ->check(CLI::IsMember({"table", "json"}));
    curve_cmd->add_option("--plot", curve_plot, "write an SVG line chart to this path");
    curve_cmd->add_option("--out", curve_out, "write output to a file instead of stdout");

    // reduce
    LoadFlags reduce_flags;
    std::string reduce_format = "json", reduce_out, reduce_plot;
    std::string reduce_strategy = "ranked-prefix";
    auto* reduce = app.add_subcommand("reduce", "select the reduced scale at the curve peak");
    add_load_flags(reduce, reduce_flags);
    reduce->add_option("--strategy", reduce_strategy,
                       "selection strategy: ranked-prefix|greedy-forward")
        ->check(CLI::IsMember({"ranked-prefix", "greedy-forward"}));
    reduce->add_option("--format", reduce_format, "output format: json|table")
        ->check(CLI::IsMember({"table", "json"}));
    reduce->add_option("--plot", reduce_plot, "write an SVG line chart to this path");
    reduce->add_option("--out", reduce_out, "write output to a file instead of stdout");

    // summarize
    LoadFlags summarize_flags;
    std::string summarize_out;
    auto* summarize_cmd = app.add_subcommand("summarize", "dataset shape and ranges as JSON");
    add_load_flags(summarize_cmd, summarize_flags);
    summarize_cmd->add_option("--out", summarize_out, "write output to a file instead of stdout");

    // reliability
    std::string rel_loadings, rel_full, rel_reduced, rel_out, rel_delim = ",";
    double rel_threshold = 0.7;
    auto* rel = app.add_subcommand("reliability",
                                   "construct reliability and variance extracted "
                                   "from factor loadings");
    rel->add_option("--loadings", rel_loadings, "single loadings file (CR/VE report)");
    rel->add_option("--full", rel_full, "full-scale loadings file");
    rel->add_option("--reduced", rel_reduced, "reduced-scale loadings file");
    rel->add_option("--cr-threshold", rel_threshold, "acceptability threshold for reduced CR");
    rel->add_option("--delimiter", rel_delim, "cell delimiter: ',' or 'tab'");
    rel->add_option("--out", rel_out, "write output to a file instead of stdout");

    // synth
    std::string synth_out, synth_signal;
    scaletrim::GeneratorSpec spec;
    spec.respondents = 200;
    spec.items = 10;
    auto* synth_cmd = app.add_subcommand("synth", "generate a planted-signal dataset");
    synth_cmd->add_option("--out", synth_out, "dataset output path")->required();
    synth_cmd->add_option("--respondents", spec.respondents, "number of respondents");
    synth_cmd->add_option("--items", spec.items, "number of items");
    synth_cmd->add_option("--signal", synth_signal,
                          "comma-separated 1-based positions of signal items");
    synth_cmd->add_option("--levels", spec.response_levels, "response levels (>= 2)");
    synth_cmd->add_option("--strength", spec.signal_strength, "class shift on signal items");
    synth_cmd->add_option("--prevalence", spec.prevalence, "positive-label probability");
    synth_cmd->add_option("--seed", spec.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (rank->parsed()) {
            const auto dataset = load_or_exit(rank_flags);
            const auto table = scaletrim::item_auc_table(dataset);
            for (const auto& id : table.below_chance_ids()) {
                std::cerr << "warning: item " << id << " scores below chance-level AUC\n";
            }
            emit(rank_format == "json"
                     ? scaletrim::item_table_json(table)
                     : scaletrim::render_item_table(table, !rank_descending),
                 rank_out);
        } else if (curve_cmd->parsed()) {
            const auto dataset = load_or_exit(curve_flags);
            std::vector<std::size_t> ordering;
            if (curve_order.empty()) {
                ordering = scaletrim::item_auc_table(dataset).ranked_order();
            } else {
                ordering = resolve_items(dataset, curve_order);
            }
            const auto curve = scaletrim::cumulative_auc_curve(dataset, ordering);
            if (!curve_plot.empty()) scaletrim::write_curve_chart(curve, curve_plot);
            emit(curve_format == "json" ? scaletrim::curve_json(curve)
                                        : scaletrim::render_curve_table(curve),
                 curve_out);
        } else if (reduce->parsed()) {
            const auto dataset = load_or_exit(reduce_flags);
            const auto scale = scaletrim::select_reduced_scale(
                dataset, scaletrim::strategy_from_string(reduce_strategy));
            for (const auto& id : scale.below_chance_ids) {
                std::cerr << "warning: item " << id << " scores below chance-level AUC\n";
            }
            if (!reduce_plot.empty()) scaletrim::write_curve_chart(scale.curve, reduce_plot);
            emit(reduce_format == "table" ? scaletrim::render_reduction_summary(scale)
                                          : scaletrim::reduction_report_json(scale),
                 reduce_out);
        } else if (summarize_cmd->parsed()) {
            const auto dataset = load_or_exit(summarize_flags);
            emit(scaletrim::summary_json(scaletrim::summarize(dataset)), summarize_out);
        } else if (rel->parsed()) {
            const char delim = parse_delimiter(rel_delim);
            if (!rel_loadings.empty()) {
                scaletrim::LoadingSet set;
                try {
                    set = scaletrim::load_loadings(rel_loadings, delim);
                } catch (const scaletrim::Error& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return kExitLoad;
                }
                emit(scaletrim::loading_set_json(set), rel_out);
            } else if (!rel_full.empty() && !rel_reduced.empty()) {
                scaletrim::LoadingSet full, reduced;
                try {
                    full = scaletrim::load_loadings(rel_full, delim);
                    reduced = scaletrim::load_loadings(rel_reduced, delim);
                } catch (const scaletrim::Error& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return kExitLoad;
                }
                const auto comparison =
                    scaletrim::reliability_comparison(full, reduced, rel_threshold);
                emit(scaletrim::comparison_json(comparison), rel_out);
            } else {
                std::cerr << "error: pass --loadings, or --full together with --reduced\n";
                return kExitUsage;
            }
        } else if (synth_cmd->parsed()) {
            if (!synth_signal.empty()) {
                spec.signal_items = parse_positions(synth_signal, spec.items);
            }
            const auto dataset = scaletrim::generate(spec);
            scaletrim::write_dataset(dataset, synth_out);
            std::ofstream sidecar(synth_out + ".spec.json");
            if (!sidecar) {
                std::cerr << "error: cannot open '" << synth_out << ".spec.json' for writing\n";
                return kExitLoad;
            }
            sidecar << scaletrim::spec_json(spec);
        }
    } catch (const scaletrim::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitLoad;
    } catch (const scaletrim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    }
    return 0;
}
