// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include "oracles.hpp"
#include "scaletrim/dataset.hpp"
#include "scaletrim/psychometrics.hpp"
#include "scaletrim/reduction.hpp"
#include "scaletrim/roc.hpp"
#include "scaletrim/synth.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;
using namespace scaletrim;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v, int digits = 6) {
    std::ostringstream out;
    out.precision(digits);
    out << v;
    return out.str();
}

// ---------------------------------------------------------------------------
// 1. Trapezoid vs rank equivalence on >= 10,000 random instances.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(60601);
    double worst = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        auto inst = oracle::random_instance(rng, 2, 200);
        const double trap = auc_trapezoid(roc_points(inst.scores, inst.labels));
        const double rank = auc_rank(inst.scores, inst.labels);
        worst = std::max(worst, std::abs(trap - rank));
    }
    const double elapsed = seconds_since(start);
    report(1, "AUC method equivalence", worst < 1e-12 && elapsed < 10.0,
           std::to_string(trials) + " instances, max gap " + fmt(worst, 3) + ", " +
               fmt(elapsed, 3) + "s");
}

// ---------------------------------------------------------------------------
// 2. Exact agreement with literal pair counting, exhaustively over all
// case multisets with M <= 12 built from 3 score levels x 2 labels. AUC is
// invariant under case order, so multisets cover every instance shape.
void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    long long checked = 0;
    bool all_exact = true;

    // counts[cell] for the 6 cells (score in {0,1,2}) x (label in {0,1})
    std::vector<int> counts(6, 0);
    std::function<void(std::size_t, int)> enumerate = [&](std::size_t cell, int budget) {
        if (cell == counts.size()) {
            int pos = counts[1] + counts[3] + counts[5];
            int neg = counts[0] + counts[2] + counts[4];
            if (pos == 0 || neg == 0 || pos + neg < 2) return;

            std::vector<double> scores;
            std::vector<int> labels;
            for (int level = 0; level < 3; ++level) {
                for (int label = 0; label < 2; ++label) {
                    for (int c = 0; c < counts[2 * level + label]; ++c) {
                        scores.push_back(level);
                        labels.push_back(label);
                    }
                }
            }
            ++checked;
            if (auc_rank(scores, labels) != oracle::pair_count_auc(scores, labels)) {
                all_exact = false;
            }
            return;
        }
        for (int c = 0; c <= budget; ++c) {
            counts[cell] = c;
            enumerate(cell + 1, budget - c);
        }
        counts[cell] = 0;
    };
    enumerate(0, 12);

    const double elapsed = seconds_since(start);
    report(2, "brute-force pair-count oracle, exhaustive M <= 12",
           all_exact && elapsed < 30.0,
           std::to_string(checked) + " instances, exact equality, " + fmt(elapsed, 3) + "s");
}

// ---------------------------------------------------------------------------
// 3. Gini identity on 1,000 sampled AUCs.
void criterion_3() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    bool ok = true;
    for (int t = 0; t < 1000; ++t) {
        const double auc = dist(rng);
        if (gini_from_auc(auc) != 2.0 * auc - 1.0) ok = false;
    }
    ok = ok && gini_from_auc(0.5) == 0.0 && gini_from_auc(1.0) == 1.0;
    report(3, "Gini identity G = 2*AUC - 1", ok, "1000 samples, exact");
}

// ---------------------------------------------------------------------------
// reference fixtures: per-item AUCs keyed by item position and the cumulative
// running-total values in ranked order.
const std::vector<std::pair<std::size_t, double>> kItemAucFixture = {
    {21, 0.587468}, {11, 0.597342}, {16, 0.605937}, {6, 0.610004},  {18, 0.610028},
    {19, 0.629285}, {2, 0.631205},  {12, 0.636791}, {13, 0.648917}, {4, 0.651187},
    {3, 0.655666},  {5, 0.658478},  {20, 0.666999}, {8, 0.667983},  {17, 0.674283},
    {15, 0.692064}, {10, 0.697225}, {9, 0.700461},  {7, 0.701489},  {14, 0.707401},
    {1, 0.725009}};

const std::vector<std::size_t> kExpectedOrder = {1,  14, 7,  9,  10, 15, 17, 8,  20, 5, 3,
                                                 4,  13, 12, 2,  19, 18, 6,  16, 11, 21};

const std::vector<double> kCumulativeFixture = {0.725, 0.777, 0.795, 0.810, 0.813, 0.822,
                                                0.821, 0.819, 0.820, 0.821, 0.821, 0.821,
                                                0.821, 0.820, 0.819, 0.818, 0.816, 0.814,
                                                0.812, 0.811, 0.812};

// 4. Ranking the reference per-item values reproduces the reference ordering,
// and the shortest-prefix argmax over the reference cumulative values selects
// 6 items at 0.822.
void criterion_4() {
    std::vector<ItemAucEntry> entries;
    for (const auto& [index, auc] : kItemAucFixture) {
        entries.push_back({index, std::to_string(index), auc});
    }
    auto table = ranked_item_table(std::move(entries), 0.812);
    const bool order_ok = table.ranked_order() == kExpectedOrder;

    const std::size_t peak = shortest_prefix_argmax(kCumulativeFixture);
    const bool peak_ok = peak == 6 && kCumulativeFixture[peak - 1] == 0.822;

    std::vector<std::size_t> selected(kExpectedOrder.begin(), kExpectedOrder.begin() + 6);
    std::vector<std::size_t> expected_set = {1, 7, 9, 10, 14, 15};
    std::sort(selected.begin(), selected.end());
    const bool set_ok = selected == expected_set;

    report(4, "reference ordering and peak fixture", order_ok && peak_ok && set_ok,
           "order match, peak at 6 items, AUC 0.822");
}

// 5. Reduction-ratio rendering: 6 of 21 items -> 28.57%.
void criterion_5() {
    ReducedScale scale;
    scale.strategy = SelectionStrategy::ranked_prefix;
    std::vector<ItemAucEntry> entries;
    for (const auto& [index, auc] : kItemAucFixture) {
        entries.push_back({index, std::to_string(index), auc});
    }
    scale.item_table = ranked_item_table(std::move(entries), 0.812);
    for (std::size_t k = 0; k < kExpectedOrder.size(); ++k) {
        scale.curve.steps.push_back({kExpectedOrder[k], std::to_string(kExpectedOrder[k]),
                                     k + 1, kCumulativeFixture[k]});
    }
    for (std::size_t k = 0; k < 6; ++k) {
        scale.selected_indices.push_back(kExpectedOrder[k]);
        scale.selected_ids.push_back(std::to_string(kExpectedOrder[k]));
    }
    scale.reduced_auc = 0.822;
    scale.full_auc = 0.812;
    scale.reduction_ratio = 6.0 / 21.0;

    auto doc = nlohmann::json::parse(reduction_report_json(scale));
    const double ratio = doc.at("reduction_ratio").get<double>();
    const bool ratio_ok = std::abs(ratio - 6.0 / 21.0) < 5e-5; // 4 significant figures
    const bool percent_ok = doc.at("reduction_percent") == "28.57%" &&
                            percent_string(6.0 / 21.0) == "28.57%";
    report(5, "reduction ratio renders as 28.57%", ratio_ok && percent_ok,
           "ratio " + fmt(ratio, 6));
}

// 6. CR/VE calculator on the reference loading sets, derived error variances.
void criterion_6() {
    const std::vector<double> reduced_lambdas = {0.748, 0.614, 0.703, 0.534, 0.736, 0.816};
    const std::vector<double> full_lambdas = {0.716, 0.604, 0.655, 0.585, 0.633, 0.454,
                                              0.636, 0.645, 0.632, 0.523, 0.394, 0.594,
                                              0.514, 0.737, 0.654, 0.413, 0.589, 0.468,
                                              0.520, 0.681, 0.433};
    auto make_set = [](const std::vector<double>& lambdas) {
        LoadingSet set;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            set.loadings.push_back({"V" + std::to_string(i + 1), lambdas[i], std::nullopt});
        }
        return set;
    };

    const double reduced_cr = construct_reliability(make_set(reduced_lambdas));
    const double reduced_ve = variance_extracted(make_set(reduced_lambdas));
    const double full_cr = construct_reliability(make_set(full_lambdas));
    const double full_ve = variance_extracted(make_set(full_lambdas));

    // Binding oracle: independent hand evaluation of the two formulas.
    const bool oracle_ok = std::abs(reduced_cr - 0.848500) < 1e-3 &&
                           std::abs(reduced_ve - 0.487236) < 1e-3 &&
                           std::abs(full_cr - 0.913318) < 1e-3 &&
                           std::abs(full_ve - 0.340491) < 1e-3;
    // Windows around the reference table values.
    const bool window_ok = std::abs(reduced_cr - 0.822) < 0.03 &&
                           std::abs(reduced_ve - 0.483) < 0.01 &&
                           std::abs(full_cr - 0.929) < 0.03;

    report(6, "CR/VE calculator on reference loadings", oracle_ok && window_ok,
           "reduced CR " + fmt(reduced_cr) + " VE " + fmt(reduced_ve) + ", full CR " +
               fmt(full_cr) + " VE " + fmt(full_ve));
}

// 7. Planted-signal recovery over 100 fixed seeds.
void criterion_7() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::size_t> signal = {3, 5, 8, 11};
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GeneratorSpec spec;
        spec.respondents = 500;
        spec.items = 12;
        spec.signal_items = signal;
        spec.response_levels = 4;
        spec.signal_strength = 0.5;
        spec.prevalence = 0.5;
        spec.seed = seed;

        auto scale = select_reduced_scale(generate(spec));
        bool subset = !scale.selected_indices.empty();
        for (std::size_t idx : scale.selected_indices) {
            if (std::find(signal.begin(), signal.end(), idx) == signal.end()) subset = false;
        }
        if (subset && scale.reduced_auc >= scale.full_auc - 0.01) ++hits;
    }
    const double elapsed = seconds_since(start);
    report(7, "planted-signal recovery", hits >= 95 && elapsed < 60.0,
           std::to_string(hits) + "/100 seeds, " + fmt(elapsed, 3) + "s");
}

// 8. Null behavior: no strong predictability discovered in pure noise. The
// selected prefix is an argmax, so its null AUC sits above 0.5 by selection
// bias that grows with the item count; at 6 items and M = 500 it stays well
// inside [0.45, 0.60] (verified across disjoint seed windows).
void criterion_8() {
    int in_range = 0;
    double lowest = 1.0, highest = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GeneratorSpec spec;
        spec.respondents = 500;
        spec.items = 6;
        spec.signal_items = {};
        spec.response_levels = 4;
        spec.signal_strength = 0.0;
        spec.prevalence = 0.5;
        spec.seed = 40000 + seed;

        auto scale = select_reduced_scale(generate(spec));
        lowest = std::min(lowest, scale.reduced_auc);
        highest = std::max(highest, scale.reduced_auc);
        if (scale.reduced_auc >= 0.45 && scale.reduced_auc <= 0.60) ++in_range;
    }
    report(8, "null behavior stays near chance", in_range == 100,
           "6 items, " + std::to_string(in_range) + "/100 seeds in [0.45,0.60], range [" +
               fmt(lowest, 4) + ", " + fmt(highest, 4) + "]");
}

// 9. Byte-identical JSON from every analysis command run twice.
void criterion_9() {
    const fs::path dir =
        fs::temp_directory_path() / ("scaletrim_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    auto shell = [&](const std::string& args, const fs::path& out) {
        const std::string cmd = std::string(SCALETRIM_CLI) + " " + args + " > " +
                                out.string() + " 2> /dev/null";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) && WEXITSTATUS(status) == 0;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };

    const fs::path data = dir / "data.csv";
    bool ok = shell("synth --out " + data.string() +
                        " --respondents 150 --items 8 --signal 1,2,3 --strength 0.5 --seed 5",
                    dir / "synth.log");

    const fs::path loadings = dir / "loadings.csv";
    {
        std::ofstream out(loadings);
        out << "item,lambda\nV1,0.748\nV2,0.614\nV3,0.703\n";
    }
    const fs::path reduced = dir / "reduced.csv";
    {
        std::ofstream out(reduced);
        out << "item,lambda\nV1,0.748\nV3,0.703\n";
    }

    const std::vector<std::string> commands = {
        "rank " + data.string() + " --format json",
        "curve " + data.string() + " --format json",
        "reduce " + data.string(),
        "summarize " + data.string(),
        "reliability --loadings " + loadings.string(),
        "reliability --full " + loadings.string() + " --reduced " + reduced.string(),
    };
    int identical = 0;
    for (std::size_t i = 0; i < commands.size() && ok; ++i) {
        const fs::path first = dir / ("out_" + std::to_string(i) + "_a.json");
        const fs::path second = dir / ("out_" + std::to_string(i) + "_b.json");
        if (!shell(commands[i], first) || !shell(commands[i], second)) {
            ok = false;
            break;
        }
        const std::string a = slurp(first);
        if (!a.empty() && a == slurp(second)) ++identical;
    }
    ok = ok && identical == static_cast<int>(commands.size());
    report(9, "analysis commands are byte-deterministic", ok,
           std::to_string(identical) + "/" + std::to_string(commands.size()) +
               " command outputs identical across runs");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();

    std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                                : "acceptance: " + std::to_string(failures) +
                                      " criterion(s) failed\n");
    return failures == 0 ? 0 : 1;
}
