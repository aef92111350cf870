#pragma once

#include "scaletrim/dataset.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace scaletrim {

struct ItemAucEntry {
    std::size_t index = 0; // 1-based column position in the dataset
    std::string id;
    double auc = 0.0;
};

// Per-item AUC, sorted descending; ties broken by ascending item position.
struct ItemAucTable {
    std::vector<ItemAucEntry> entries;
    double total_scale_auc = 0.0; // AUC of the all-items total score

    // 1-based item positions in ranked order.
    std::vector<std::size_t> ranked_order() const;
    // Items whose individual AUC sits below chance level (0.5).
    std::vector<std::string> below_chance_ids() const;
};

struct CurveStep {
    std::size_t index = 0; // item added at this step, 1-based position
    std::string id;
    std::size_t size = 0; // items in the running total after this step
    double auc = 0.0;
};

struct CumulativeAucCurve {
    std::vector<CurveStep> steps;
};

enum class SelectionStrategy { ranked_prefix, greedy_forward };

std::string to_string(SelectionStrategy strategy);
SelectionStrategy strategy_from_string(const std::string& name);

struct ReducedScale {
    std::vector<std::size_t> selected_indices; // 1-based, in selection order
    std::vector<std::string> selected_ids;
    double reduced_auc = 0.0;
    double full_auc = 0.0;
    double reduction_ratio = 0.0; // |selected| / K
    CumulativeAucCurve curve;
    SelectionStrategy strategy = SelectionStrategy::ranked_prefix;
    std::vector<std::string> below_chance_ids;
    ItemAucTable item_table; // per-item ranking behind the selection
};

ItemAucTable item_auc_table(const Dataset& dataset);

// Canonical table from precomputed per-item AUCs: sorts descending by AUC,
// ties broken by ascending item position.
ItemAucTable ranked_item_table(std::vector<ItemAucEntry> entries, double total_scale_auc);

// AUC of the running item total after each step of `ordering` (1-based item
// positions; a permutation of the items or a prefix of one). Step 1 equals
// the first item's individual AUC.
CumulativeAucCurve cumulative_auc_curve(const Dataset& dataset,
                                        const std::vector<std::size_t>& ordering);

// Shortest prefix length attaining the maximum value; 1-based.
std::size_t shortest_prefix_argmax(const std::vector<double>& values);

ReducedScale select_reduced_scale(const Dataset& dataset,
                                  SelectionStrategy strategy = SelectionStrategy::ranked_prefix);

// "28.57%" for 6 of 21: ratio rendered to two decimal places.
std::string percent_string(double ratio);

// Machine-readable report (JSON text) with the full curve, the selection and
// the AUC delta against the full scale. Stable field order, byte-identical
// across runs on the same input.
std::string reduction_report_json(const ReducedScale& scale);

std::string item_table_json(const ItemAucTable& table);
std::string curve_json(const CumulativeAucCurve& curve);

// Delimited renderings of the rank table and curve table.
std::string render_item_table(const ItemAucTable& table, bool ascending = true,
                              char delimiter = ',');
std::string render_curve_table(const CumulativeAucCurve& curve, char delimiter = ',');
std::string render_reduction_summary(const ReducedScale& scale);

} // namespace scaletrim
