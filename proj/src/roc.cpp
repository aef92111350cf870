#include "scaletrim/roc.hpp"
#include "scaletrim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace scaletrim {

void validate_scored_labels(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) {
        throw ValidationError("scores and labels differ in length (" +
                              std::to_string(scores.size()) + " vs " +
                              std::to_string(labels.size()) + ")");
    }
    if (scores.empty()) {
        throw ValidationError("empty input");
    }
    std::size_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!std::isfinite(scores[i])) {
            throw ValidationError("non-finite score at index " + std::to_string(i));
        }
        if (labels[i] == 1) {
            ++pos;
        } else if (labels[i] == 0) {
            ++neg;
        } else {
            throw ValidationError("label at index " + std::to_string(i) +
                                  " is " + std::to_string(labels[i]) + ", expected 0 or 1");
        }
    }
    if (pos == 0 || neg == 0) {
        throw DegenerateLabels(pos == 0 ? "no positive labels in input"
                                        : "no negative labels in input");
    }
}

ConfusionMatrix confusion_at_cutoff(std::span<const double> scores,
                                    std::span<const int> labels,
                                    double cutoff) {
    validate_scored_labels(scores, labels);
    ConfusionMatrix m;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted_positive = scores[i] >= cutoff;
        if (labels[i] == 1) {
            predicted_positive ? ++m.tp : ++m.fn;
        } else {
            predicted_positive ? ++m.fp : ++m.tn;
        }
    }
    return m;
}

RocCurve roc_points(std::span<const double> scores, std::span<const int> labels) {
    validate_scored_labels(scores, labels);

    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    long long total_pos = 0, total_neg = 0;
    for (int l : labels) (l == 1 ? total_pos : total_neg)++;

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    curve.thresholds.push_back(std::numeric_limits<double>::infinity());

    // Sweep cutoffs over distinct score values, highest first. At cutoff v
    // everything with score >= v is predicted positive, so each tie group
    // enters the counts in one step.
    long long tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < n) {
        const double v = scores[order[i]];
        while (i < n && scores[order[i]] == v) {
            (labels[order[i]] == 1 ? tp : fp)++;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / total_neg,
                                static_cast<double>(tp) / total_pos});
        curve.thresholds.push_back(v);
    }
    return curve;
}

double auc_trapezoid(const RocCurve& curve) {
    if (curve.points.size() < 2) {
        throw ValidationError("ROC curve needs at least two points");
    }
    double area = 0.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto& a = curve.points[k - 1];
        const auto& b = curve.points[k];
        area += (b.fpr - a.fpr) * (b.tpr + a.tpr) / 2.0;
    }
    return area;
}

double auc_rank(std::span<const double> scores, std::span<const int> labels) {
    validate_scored_labels(scores, labels);

    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] < scores[b];
    });

    long long total_pos = 0;
    for (int l : labels) total_pos += (l == 1);
    const long long total_neg = static_cast<long long>(n) - total_pos;

    // Sum of positives' ranks with ties assigned the average rank of the
    // group. The average (first + last)/2 is a multiple of 0.5, so the sum
    // stays exact and the rank route matches literal pair counting bit for
    // bit on small inputs.
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = static_cast<double>(i + 1 + j) / 2.0; // ranks are 1-based
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1) pos_rank_sum += avg_rank;
        }
        i = j;
    }

    const double u = pos_rank_sum - static_cast<double>(total_pos) * (total_pos + 1) / 2.0;
    return u / (static_cast<double>(total_pos) * static_cast<double>(total_neg));
}

double gini_from_auc(double auc) {
    if (std::isnan(auc) || auc < 0.0 || auc > 1.0) {
        throw ValidationError("AUC must lie in [0,1]");
    }
    return 2.0 * auc - 1.0;
}

} // namespace scaletrim
