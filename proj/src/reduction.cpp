#include "scaletrim/reduction.hpp"
#include "scaletrim/errors.hpp"
#include "scaletrim/roc.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace scaletrim {

namespace {

std::string format_auc(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

} // namespace

std::vector<std::size_t> ItemAucTable::ranked_order() const {
    std::vector<std::size_t> order;
    order.reserve(entries.size());
    for (const auto& e : entries) order.push_back(e.index);
    return order;
}

std::vector<std::string> ItemAucTable::below_chance_ids() const {
    std::vector<std::string> ids;
    for (const auto& e : entries) {
        if (e.auc < 0.5) ids.push_back(e.id);
    }
    return ids;
}

std::string to_string(SelectionStrategy strategy) {
    return strategy == SelectionStrategy::ranked_prefix ? "ranked-prefix" : "greedy-forward";
}

SelectionStrategy strategy_from_string(const std::string& name) {
    if (name == "ranked-prefix") return SelectionStrategy::ranked_prefix;
    if (name == "greedy-forward") return SelectionStrategy::greedy_forward;
    throw ValidationError("unknown strategy '" + name +
                          "' (expected ranked-prefix or greedy-forward)");
}

ItemAucTable ranked_item_table(std::vector<ItemAucEntry> entries, double total_scale_auc) {
    std::sort(entries.begin(), entries.end(), [](const ItemAucEntry& a, const ItemAucEntry& b) {
        if (a.auc != b.auc) return a.auc > b.auc;
        return a.index < b.index;
    });
    ItemAucTable table;
    table.entries = std::move(entries);
    table.total_scale_auc = total_scale_auc;
    return table;
}

ItemAucTable item_auc_table(const Dataset& dataset) {
    validate_dataset(dataset);
    std::vector<ItemAucEntry> entries;
    for (std::size_t j = 0; j < dataset.item_count(); ++j) {
        const double auc = auc_rank(dataset.item_scores(j), dataset.labels);
        entries.push_back({j + 1, dataset.item_ids[j], auc});
    }
    return ranked_item_table(std::move(entries),
                             auc_rank(dataset.total_scores(), dataset.labels));
}

CumulativeAucCurve cumulative_auc_curve(const Dataset& dataset,
                                        const std::vector<std::size_t>& ordering) {
    validate_dataset(dataset);
    if (ordering.empty()) throw ValidationError("ordering is empty");
    if (ordering.size() > dataset.item_count()) {
        throw ValidationError("ordering names more items than the dataset has");
    }
    std::set<std::size_t> seen;
    for (std::size_t idx : ordering) {
        if (idx < 1 || idx > dataset.item_count()) {
            throw ValidationError("unknown item position " + std::to_string(idx) +
                                  " in ordering");
        }
        if (!seen.insert(idx).second) {
            throw ValidationError("duplicate item position " + std::to_string(idx) +
                                  " in ordering");
        }
    }

    CumulativeAucCurve curve;
    std::vector<double> running(dataset.respondents(), 0.0);
    for (std::size_t k = 0; k < ordering.size(); ++k) {
        const std::size_t column = ordering[k] - 1;
        for (std::size_t i = 0; i < running.size(); ++i) {
            running[i] += dataset.columns[column][i];
        }
        curve.steps.push_back({ordering[k], dataset.item_ids[column], k + 1,
                               auc_rank(running, dataset.labels)});
    }
    return curve;
}

std::size_t shortest_prefix_argmax(const std::vector<double>& values) {
    if (values.empty()) throw ValidationError("empty value sequence");
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] > values[best]) best = k;
    }
    return best + 1;
}

namespace {

ReducedScale select_ranked_prefix(const Dataset& dataset, const ItemAucTable& table) {
    ReducedScale scale;
    scale.strategy = SelectionStrategy::ranked_prefix;
    scale.curve = cumulative_auc_curve(dataset, table.ranked_order());

    std::vector<double> aucs;
    for (const auto& step : scale.curve.steps) aucs.push_back(step.auc);
    const std::size_t peak = shortest_prefix_argmax(aucs);

    for (std::size_t k = 0; k < peak; ++k) {
        scale.selected_indices.push_back(scale.curve.steps[k].index);
        scale.selected_ids.push_back(scale.curve.steps[k].id);
    }
    scale.reduced_auc = scale.curve.steps[peak - 1].auc;
    return scale;
}

ReducedScale select_greedy_forward(const Dataset& dataset) {
    ReducedScale scale;
    scale.strategy = SelectionStrategy::greedy_forward;

    const std::size_t k_total = dataset.item_count();
    std::vector<bool> used(k_total, false);
    std::vector<double> running(dataset.respondents(), 0.0);
    double current = -std::numeric_limits<double>::infinity();

    for (std::size_t step = 0; step < k_total; ++step) {
        double best_auc = -std::numeric_limits<double>::infinity();
        std::size_t best_col = k_total;
        std::vector<double> candidate(running.size());
        for (std::size_t j = 0; j < k_total; ++j) {
            if (used[j]) continue;
            for (std::size_t i = 0; i < running.size(); ++i) {
                candidate[i] = running[i] + dataset.columns[j][i];
            }
            const double auc = auc_rank(candidate, dataset.labels);
            if (auc > best_auc) {
                best_auc = auc;
                best_col = j;
            }
        }
        if (best_col == k_total || best_auc <= current) break;

        used[best_col] = true;
        for (std::size_t i = 0; i < running.size(); ++i) {
            running[i] += dataset.columns[best_col][i];
        }
        current = best_auc;
        scale.selected_indices.push_back(best_col + 1);
        scale.selected_ids.push_back(dataset.item_ids[best_col]);
        scale.curve.steps.push_back({best_col + 1, dataset.item_ids[best_col],
                                     scale.selected_indices.size(), best_auc});
    }

    scale.reduced_auc = current;
    return scale;
}

} // namespace

ReducedScale select_reduced_scale(const Dataset& dataset, SelectionStrategy strategy) {
    const ItemAucTable table = item_auc_table(dataset);
    ReducedScale scale = strategy == SelectionStrategy::ranked_prefix
                             ? select_ranked_prefix(dataset, table)
                             : select_greedy_forward(dataset);
    scale.full_auc = table.total_scale_auc;
    scale.reduction_ratio =
        static_cast<double>(scale.selected_indices.size()) / dataset.item_count();
    scale.below_chance_ids = table.below_chance_ids();
    scale.item_table = table;
    return scale;
}

std::string percent_string(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", ratio * 100.0);
    return buf;
}

std::string reduction_report_json(const ReducedScale& scale) {
    nlohmann::ordered_json report;
    report["schema_version"] = 1;
    report["strategy"] = to_string(scale.strategy);

    auto items = nlohmann::ordered_json::array();
    auto item_auc = nlohmann::ordered_json::array();
    for (const auto& e : scale.item_table.entries) {
        items.push_back(e.id);
        item_auc.push_back(e.auc);
    }
    report["items"] = items;
    report["item_auc"] = item_auc;

    auto curve = nlohmann::ordered_json::array();
    for (const auto& step : scale.curve.steps) {
        curve.push_back({{"item", step.id}, {"k", step.size}, {"auc", step.auc}});
    }
    report["curve"] = curve;
    report["selected"] = scale.selected_ids;
    report["full_auc"] = scale.full_auc;
    report["reduced_auc"] = scale.reduced_auc;
    report["auc_delta"] = scale.reduced_auc - scale.full_auc;
    report["reduction_ratio"] = scale.reduction_ratio;
    report["reduction_percent"] = percent_string(scale.reduction_ratio);
    report["items_below_chance"] = scale.below_chance_ids;
    return report.dump(2) + "\n";
}

std::string item_table_json(const ItemAucTable& table) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : table.entries) {
        entries.push_back({{"item", e.id}, {"auc", e.auc}});
    }
    doc["items"] = entries;
    doc["total_scale_auc"] = table.total_scale_auc;
    doc["items_below_chance"] = table.below_chance_ids();
    return doc.dump(2) + "\n";
}

std::string curve_json(const CumulativeAucCurve& curve) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    auto steps = nlohmann::ordered_json::array();
    for (const auto& step : curve.steps) {
        steps.push_back({{"item", step.id}, {"k", step.size}, {"auc", step.auc}});
    }
    doc["curve"] = steps;
    return doc.dump(2) + "\n";
}

std::string render_item_table(const ItemAucTable& table, bool ascending, char delimiter) {
    std::ostringstream out;
    out << "item" << delimiter << "auc\n";
    auto emit = [&](const ItemAucEntry& e) {
        out << e.id << delimiter << format_auc(e.auc) << '\n';
    };
    if (ascending) {
        for (auto it = table.entries.rbegin(); it != table.entries.rend(); ++it) emit(*it);
    } else {
        for (const auto& e : table.entries) emit(e);
    }
    out << "total" << delimiter << format_auc(table.total_scale_auc) << '\n';
    return out.str();
}

std::string render_curve_table(const CumulativeAucCurve& curve, char delimiter) {
    std::ostringstream out;
    out << "item" << delimiter << "k" << delimiter << "auc\n";
    for (const auto& step : curve.steps) {
        out << step.id << delimiter << step.size << delimiter << format_auc(step.auc) << '\n';
    }
    return out.str();
}

std::string render_reduction_summary(const ReducedScale& scale) {
    std::ostringstream out;
    const std::size_t k = scale.selected_ids.size();
    const std::size_t total = scale.item_table.entries.size();
    out << "strategy: " << to_string(scale.strategy) << '\n';
    out << "selected " << k << " of " << total << " items ("
        << percent_string(scale.reduction_ratio) << " retained):";
    for (const auto& id : scale.selected_ids) out << ' ' << id;
    out << '\n';
    out << "reduced AUC " << format_auc(scale.reduced_auc) << " vs full-scale AUC "
        << format_auc(scale.full_auc) << " (delta "
        << format_auc(scale.reduced_auc - scale.full_auc) << ")\n";
    if (!scale.below_chance_ids.empty()) {
        out << "warning: items below chance-level AUC:";
        for (const auto& id : scale.below_chance_ids) out << ' ' << id;
        out << '\n';
    }
    return out.str();
}

} // namespace scaletrim
