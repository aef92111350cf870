#include "scaletrim/synth.hpp"
#include "scaletrim/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace scaletrim {

void validate_spec(const GeneratorSpec& spec) {
    if (spec.respondents == 0) throw ValidationError("respondents must be positive");
    if (spec.items == 0) throw ValidationError("items must be positive");
    if (spec.response_levels < 2) throw ValidationError("response_levels must be at least 2");
    if (!(spec.prevalence > 0.0 && spec.prevalence < 1.0)) {
        throw ValidationError("prevalence must lie strictly between 0 and 1");
    }
    if (!(spec.signal_strength >= 0.0) || !std::isfinite(spec.signal_strength)) {
        throw ValidationError("signal_strength must be a finite non-negative number");
    }
    for (std::size_t idx : spec.signal_items) {
        if (idx < 1 || idx > spec.items) {
            throw ValidationError("signal item position " + std::to_string(idx) +
                                  " outside 1.." + std::to_string(spec.items));
        }
    }
}

namespace {

// Uniform in [0,1) from the top 53 bits; avoids distribution classes whose
// output is implementation-defined.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Dataset generate(const GeneratorSpec& spec) {
    validate_spec(spec);

    std::vector<bool> is_signal(spec.items, false);
    for (std::size_t idx : spec.signal_items) is_signal[idx - 1] = true;

    std::mt19937_64 rng(spec.seed);
    Dataset dataset;
    dataset.labels.reserve(spec.respondents);
    dataset.columns.assign(spec.items, {});
    for (auto& column : dataset.columns) column.reserve(spec.respondents);
    for (std::size_t j = 1; j <= spec.items; ++j) {
        dataset.item_ids.push_back("V" + std::to_string(j));
    }

    const int top_level = spec.response_levels - 1;
    for (std::size_t i = 0; i < spec.respondents; ++i) {
        const int label = next_uniform(rng) < spec.prevalence ? 1 : 0;
        dataset.labels.push_back(label);
        for (std::size_t j = 0; j < spec.items; ++j) {
            double latent = next_uniform(rng);
            if (label == 1 && is_signal[j]) latent += spec.signal_strength;
            const int response =
                latent >= 1.0 ? top_level
                              : static_cast<int>(latent * spec.response_levels);
            dataset.columns[j].push_back(std::min(response, top_level));
        }
    }

    validate_dataset(dataset); // rejects single-class label draws
    return dataset;
}

std::string spec_json(const GeneratorSpec& spec) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["respondents"] = spec.respondents;
    doc["items"] = spec.items;
    doc["signal_items"] = spec.signal_items;
    doc["response_levels"] = spec.response_levels;
    doc["signal_strength"] = spec.signal_strength;
    doc["prevalence"] = spec.prevalence;
    doc["seed"] = spec.seed;
    doc["rng"] = kGeneratorRngName;
    return doc.dump(2) + "\n";
}

} // namespace scaletrim
