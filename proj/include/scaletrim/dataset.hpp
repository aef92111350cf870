#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scaletrim {

// Rating-scale table: one binary outcome label per respondent plus K ordinal
// item columns. Stored column-major; columns[j][i] is respondent i's response
// on item j. item_ids default to V1..VK when the file has no header.
struct Dataset {
    std::vector<int> labels;
    std::vector<std::vector<int>> columns;
    std::vector<std::string> item_ids;
    std::string label_id = "label";
    std::size_t rows_dropped = 0; // respondents removed by the drop-row policy

    std::size_t respondents() const { return labels.size(); }
    std::size_t item_count() const { return columns.size(); }

    // Item responses as doubles, ready for the ROC routines.
    std::vector<double> item_scores(std::size_t column) const;
    // Per-respondent sum over the given item columns (0-based indices).
    std::vector<double> total_scores(const std::vector<std::size_t>& column_set) const;
    std::vector<double> total_scores() const; // all items
};

// Throws if the invariants do not hold: rectangular matrix, labels 0/1 with
// both classes present, non-negative integer responses, one id per item.
void validate_dataset(const Dataset& dataset);

enum class HeaderMode { autodetect, require, none };
enum class MissingPolicy { reject, drop_row };

struct IngestOptions {
    char delimiter = ',';
    HeaderMode header = HeaderMode::autodetect;
    MissingPolicy missing = MissingPolicy::reject;
    // Label column selector: by 0-based index, or by header name when set.
    std::size_t label_index = 0;
    std::string label_name;
    // When set, item responses outside [min,max] are load errors.
    std::optional<std::pair<int, int>> response_range;
};

Dataset load_dataset(const std::string& path, const IngestOptions& options = {});
Dataset parse_dataset(std::istream& in, const IngestOptions& options = {});

// Delimited-text writer; load_dataset(write_dataset(d)) round-trips exactly.
void write_dataset(const Dataset& dataset, std::ostream& out, char delimiter = ',');
void write_dataset(const Dataset& dataset, const std::string& path, char delimiter = ',');

struct ItemRange {
    std::string item_id;
    int min = 0;
    int max = 0;
};

struct DatasetSummary {
    std::size_t respondents = 0;
    std::size_t items = 0;
    double prevalence = 0.0;
    std::vector<ItemRange> response_ranges;
    std::size_t missing_cells = 0; // always 0 post-load; kept for report symmetry
    std::size_t rows_dropped = 0;
};

DatasetSummary summarize(const Dataset& dataset);

// JSON echo of a summary, as consumed by the CLI.
std::string summary_json(const DatasetSummary& summary);

} // namespace scaletrim
