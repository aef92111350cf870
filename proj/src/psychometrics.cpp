#include "scaletrim/psychometrics.hpp"
#include "scaletrim/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace scaletrim {

void validate_loadings(const LoadingSet& set) {
    if (set.loadings.empty()) throw ValidationError("empty loading set");
    for (const auto& l : set.loadings) {
        if (!std::isfinite(l.lambda)) {
            throw ValidationError("non-finite loading for item " + l.item_id);
        }
        if (set.standardized && std::abs(l.lambda) > 1.0) {
            throw ValidationError("standardized loading for item " + l.item_id +
                                  " has |lambda| > 1");
        }
        if (l.delta) {
            if (!std::isfinite(*l.delta) || *l.delta < 0.0) {
                throw ValidationError("error variance for item " + l.item_id +
                                      " must be a finite non-negative number");
            }
        }
    }
}

double error_variance(const Loading& loading) {
    if (loading.delta) return *loading.delta;
    const double derived = 1.0 - loading.lambda * loading.lambda;
    if (derived < 0.0) {
        throw ValidationError("item " + loading.item_id +
                              " has |lambda| > 1 and no explicit error variance");
    }
    return derived;
}

double construct_reliability(const LoadingSet& set) {
    validate_loadings(set);
    double lambda_sum = 0.0;
    double delta_sum = 0.0;
    for (const auto& l : set.loadings) {
        lambda_sum += l.lambda;
        delta_sum += error_variance(l);
    }
    const double squared = lambda_sum * lambda_sum;
    if (squared == 0.0) return 0.0;
    return squared / (squared + delta_sum);
}

double variance_extracted(const LoadingSet& set) {
    validate_loadings(set);
    double sum_sq = 0.0;
    for (const auto& l : set.loadings) sum_sq += l.lambda * l.lambda;
    return sum_sq / static_cast<double>(set.loadings.size());
}

ReliabilityComparison reliability_comparison(const LoadingSet& full,
                                             const LoadingSet& reduced,
                                             double cr_threshold) {
    validate_loadings(full);
    validate_loadings(reduced);
    std::set<std::string> full_ids;
    for (const auto& l : full.loadings) full_ids.insert(l.item_id);
    for (const auto& l : reduced.loadings) {
        if (!full_ids.count(l.item_id)) {
            throw ValidationError("reduced set item " + l.item_id +
                                  " does not appear in the full set");
        }
    }

    ReliabilityComparison c;
    c.full_cr = construct_reliability(full);
    c.full_ve = variance_extracted(full);
    c.reduced_cr = construct_reliability(reduced);
    c.reduced_ve = variance_extracted(reduced);
    c.cr_delta = c.reduced_cr - c.full_cr;
    c.ve_delta = c.reduced_ve - c.full_ve;
    c.cr_threshold = cr_threshold;
    c.acceptable = c.reduced_cr >= cr_threshold;
    return c;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(const std::string& cell) {
    try {
        std::size_t consumed = 0;
        double v = std::stod(cell, &consumed);
        if (consumed != cell.size()) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

LoadingSet parse_loadings_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("loadings JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("loadings JSON must be an array");
    LoadingSet set;
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("item") || !entry.contains("lambda")) {
            throw ParseError("each loadings entry needs \"item\" and \"lambda\"");
        }
        Loading l;
        l.item_id = entry.at("item").get<std::string>();
        l.lambda = entry.at("lambda").get<double>();
        if (entry.contains("delta")) l.delta = entry.at("delta").get<double>();
        set.loadings.push_back(std::move(l));
    }
    validate_loadings(set);
    return set;
}

} // namespace

LoadingSet parse_loadings_text(const std::string& text, char delimiter) {
    const std::string body = trim(text);
    if (!body.empty() && (body.front() == '[' || body.front() == '{')) {
        return parse_loadings_json(body);
    }

    LoadingSet set;
    std::istringstream in(text);
    std::string line;
    std::size_t row = 0;
    bool first_content_row = true;
    while (std::getline(in, line)) {
        ++row;
        line = trim(line);
        if (line.empty()) continue;

        std::vector<std::string> cells;
        std::string current;
        for (char c : line) {
            if (c == delimiter) {
                cells.push_back(trim(current));
                current.clear();
            } else {
                current.push_back(c);
            }
        }
        cells.push_back(trim(current));

        if (cells.size() < 2 || cells.size() > 3) {
            throw ParseError("expected item_id,lambda[,delta]", row, cells.size());
        }
        auto lambda = parse_double(cells[1]);
        if (!lambda) {
            // An unparseable first content row is taken as the header line.
            if (first_content_row) {
                first_content_row = false;
                continue;
            }
            throw ParseError("loading '" + cells[1] + "' is not a number", row, 2);
        }
        first_content_row = false;
        Loading l;
        l.item_id = cells[0];
        l.lambda = *lambda;
        if (cells.size() == 3 && !cells[2].empty()) {
            auto delta = parse_double(cells[2]);
            if (!delta) throw ParseError("error variance '" + cells[2] + "' is not a number", row, 3);
            l.delta = *delta;
        }
        set.loadings.push_back(std::move(l));
    }
    validate_loadings(set);
    return set;
}

LoadingSet load_loadings(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_loadings_text(buffer.str(), delimiter);
}

std::string comparison_json(const ReliabilityComparison& c) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["full"] = {{"cr", c.full_cr}, {"ve", c.full_ve}};
    doc["reduced"] = {{"cr", c.reduced_cr}, {"ve", c.reduced_ve}};
    doc["cr_delta"] = c.cr_delta;
    doc["ve_delta"] = c.ve_delta;
    doc["reduced_ve_exceeds_full"] = c.reduced_ve > c.full_ve;
    doc["cr_threshold"] = c.cr_threshold;
    doc["acceptable"] = c.acceptable;
    return doc.dump(2) + "\n";
}

std::string loading_set_json(const LoadingSet& set) {
    validate_loadings(set);
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["n_items"] = set.loadings.size();
    doc["cr"] = construct_reliability(set);
    doc["ve"] = variance_extracted(set);
    auto items = nlohmann::ordered_json::array();
    for (const auto& l : set.loadings) {
        items.push_back({{"item", l.item_id},
                         {"lambda", l.lambda},
                         {"delta", error_variance(l)}});
    }
    doc["loadings"] = items;
    return doc.dump(2) + "\n";
}

} // namespace scaletrim
