#pragma once

#include "scaletrim/dataset.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scaletrim {

// Planted-signal generator spec. Responses come from a uniform latent draw in
// [0,1); for positive cases on signal items the draw is shifted up by
// signal_strength before being binned into response_levels equal-width bins.
// Noise items are identically distributed across classes.
struct GeneratorSpec {
    std::size_t respondents = 0;
    std::size_t items = 0;
    std::vector<std::size_t> signal_items; // 1-based item positions
    int response_levels = 4;               // e.g. 4 for responses 0..3
    double signal_strength = 0.0;          // >= 0; 1.0 saturates a signal item
    double prevalence = 0.5;
    std::uint64_t seed = 0;
};

// Name of the RNG algorithm behind generate(), recorded in provenance output.
inline constexpr const char* kGeneratorRngName = "mt19937_64";

void validate_spec(const GeneratorSpec& spec);

// Deterministic: one stream of mt19937_64 draws, one uniform per label and
// per cell, so identical specs give bit-identical datasets. Throws
// DegenerateLabels in the (tiny-M) event that a draw yields a single class.
Dataset generate(const GeneratorSpec& spec);

// Provenance sidecar: spec echo plus the RNG algorithm name, as JSON text.
std::string spec_json(const GeneratorSpec& spec);

} // namespace scaletrim
