#pragma once

#include <optional>
#include <string>
#include <vector>

namespace scaletrim {

struct Loading {
    std::string item_id;
    double lambda = 0.0;
    // Error variance; when absent it is derived as 1 - lambda^2.
    std::optional<double> delta;
};

struct LoadingSet {
    std::vector<Loading> loadings;
    // With standardized loadings |lambda| <= 1 is enforced and the derived
    // delta is guaranteed non-negative.
    bool standardized = true;
};

void validate_loadings(const LoadingSet& set);

// Error variance for one loading: explicit delta if given, else 1 - lambda^2.
double error_variance(const Loading& loading);

// CR = (sum lambda)^2 / ((sum lambda)^2 + sum delta)
double construct_reliability(const LoadingSet& set);

// VE = sum lambda^2 / n
double variance_extracted(const LoadingSet& set);

struct ReliabilityComparison {
    double full_cr = 0.0;
    double full_ve = 0.0;
    double reduced_cr = 0.0;
    double reduced_ve = 0.0;
    double cr_delta = 0.0; // reduced - full
    double ve_delta = 0.0;
    double cr_threshold = 0.7;
    bool acceptable = false; // reduced CR >= threshold
};

// Requires the reduced set's item ids to be a subset of the full set's.
ReliabilityComparison reliability_comparison(const LoadingSet& full,
                                             const LoadingSet& reduced,
                                             double cr_threshold = 0.7);

// Loadings file: delimited text "item_id,lambda[,delta]" (header optional) or
// a JSON array of {"item": ..., "lambda": ..., "delta"?: ...}.
LoadingSet load_loadings(const std::string& path, char delimiter = ',');
LoadingSet parse_loadings_text(const std::string& text, char delimiter = ',');

std::string comparison_json(const ReliabilityComparison& comparison);
std::string loading_set_json(const LoadingSet& set);

} // namespace scaletrim
