#include "scaletrim/dataset.hpp"
#include "scaletrim/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

namespace scaletrim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA";
}

std::optional<int> parse_int(const std::string& cell) {
    int value = 0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
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
    return cells;
}

} // namespace

std::vector<double> Dataset::item_scores(std::size_t column) const {
    if (column >= columns.size()) {
        throw ValidationError("item column " + std::to_string(column) + " out of range");
    }
    return std::vector<double>(columns[column].begin(), columns[column].end());
}

std::vector<double> Dataset::total_scores(const std::vector<std::size_t>& column_set) const {
    std::vector<double> totals(labels.size(), 0.0);
    for (std::size_t j : column_set) {
        if (j >= columns.size()) {
            throw ValidationError("item column " + std::to_string(j) + " out of range");
        }
        for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += columns[j][i];
    }
    return totals;
}

std::vector<double> Dataset::total_scores() const {
    std::vector<std::size_t> all(columns.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    return total_scores(all);
}

void validate_dataset(const Dataset& dataset) {
    const std::size_t m = dataset.labels.size();
    if (m == 0) throw ValidationError("dataset has no respondents");
    if (dataset.columns.empty()) throw ValidationError("dataset has no item columns");
    if (dataset.item_ids.size() != dataset.columns.size()) {
        throw ValidationError("item_ids count does not match item columns");
    }
    std::size_t pos = 0;
    for (int l : dataset.labels) {
        if (l != 0 && l != 1) throw ValidationError("label outside {0,1}");
        pos += (l == 1);
    }
    if (pos == 0 || pos == m) {
        throw DegenerateLabels(pos == 0 ? "dataset has no positive labels"
                                        : "dataset has no negative labels");
    }
    for (std::size_t j = 0; j < dataset.columns.size(); ++j) {
        if (dataset.columns[j].size() != m) {
            throw ValidationError("item column " + std::to_string(j + 1) +
                                  " has wrong length");
        }
        for (int v : dataset.columns[j]) {
            if (v < 0) {
                throw ValidationError("negative response in item " + dataset.item_ids[j]);
            }
        }
    }
}

Dataset parse_dataset(std::istream& in, const IngestOptions& options) {
    // (1-based file line, content); blank lines are skipped but keep their
    // numbers so diagnostics point at the real row.
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) lines.emplace_back(line_no, line);
    }
    if (lines.empty()) throw ParseError("no data rows in input");

    auto first_cells = split_line(lines[0].second, options.delimiter);
    bool has_header = false;
    switch (options.header) {
        case HeaderMode::require:
            has_header = true;
            break;
        case HeaderMode::none:
            has_header = false;
            break;
        case HeaderMode::autodetect:
            has_header = std::any_of(first_cells.begin(), first_cells.end(),
                                     [](const std::string& c) {
                                         return !is_missing(c) && !parse_int(c);
                                     });
            break;
    }

    const std::size_t ncols = first_cells.size();
    if (ncols < 2) {
        throw ParseError("need at least a label column and one item column", 1, 1);
    }

    std::size_t label_col = options.label_index;
    if (!options.label_name.empty()) {
        if (!has_header) {
            throw ParseError("label column named '" + options.label_name +
                             "' requested but the file has no header");
        }
        auto it = std::find(first_cells.begin(), first_cells.end(), options.label_name);
        if (it == first_cells.end()) {
            throw ParseError("label column '" + options.label_name + "' not found in header");
        }
        label_col = static_cast<std::size_t>(it - first_cells.begin());
    }
    if (label_col >= ncols) {
        throw ParseError("label column index " + std::to_string(label_col) +
                         " out of range for " + std::to_string(ncols) + " columns");
    }

    Dataset dataset;
    if (has_header) {
        dataset.label_id = first_cells[label_col];
        for (std::size_t j = 0; j < ncols; ++j) {
            if (j != label_col) dataset.item_ids.push_back(first_cells[j]);
        }
    } else {
        for (std::size_t j = 1; j < ncols; ++j) {
            dataset.item_ids.push_back("V" + std::to_string(j));
        }
    }
    const std::size_t k = ncols - 1;
    dataset.columns.assign(k, {});

    for (std::size_t r = (has_header ? 1 : 0); r < lines.size(); ++r) {
        const std::size_t file_row = lines[r].first;
        auto cells = split_line(lines[r].second, options.delimiter);
        if (cells.size() != ncols) {
            throw ParseError("expected " + std::to_string(ncols) + " columns, found " +
                                 std::to_string(cells.size()),
                             file_row, cells.size());
        }

        bool row_has_missing = false;
        for (std::size_t c = 0; c < ncols && !row_has_missing; ++c) {
            if (is_missing(cells[c])) {
                if (options.missing == MissingPolicy::reject) {
                    throw ParseError("missing cell", file_row, c + 1);
                }
                row_has_missing = true;
            }
        }
        if (row_has_missing) {
            ++dataset.rows_dropped;
            continue;
        }

        auto label = parse_int(cells[label_col]);
        if (!label) {
            throw ParseError("label '" + cells[label_col] + "' is not an integer",
                             file_row, label_col + 1);
        }
        if (*label != 0 && *label != 1) {
            throw NonBinaryLabel("label value " + std::to_string(*label) +
                                     " is not binary (expected 0 or 1)",
                                 file_row, label_col + 1);
        }
        dataset.labels.push_back(*label);

        std::size_t item = 0;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (c == label_col) continue;
            auto value = parse_int(cells[c]);
            if (!value) {
                throw ParseError("item response '" + cells[c] + "' is not an integer",
                                 file_row, c + 1);
            }
            if (*value < 0) {
                throw ParseError("item response " + std::to_string(*value) + " is negative",
                                 file_row, c + 1);
            }
            if (options.response_range &&
                (*value < options.response_range->first || *value > options.response_range->second)) {
                throw ParseError("item response " + std::to_string(*value) +
                                     " outside declared range [" +
                                     std::to_string(options.response_range->first) + "," +
                                     std::to_string(options.response_range->second) + "]",
                                 file_row, c + 1);
            }
            dataset.columns[item++].push_back(*value);
        }
    }

    if (dataset.labels.empty()) {
        throw ParseError("no usable data rows" +
                         std::string(dataset.rows_dropped > 0 ? " (all rows dropped)" : ""));
    }
    validate_dataset(dataset);
    return dataset;
}

Dataset load_dataset(const std::string& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_dataset(in, options);
}

void write_dataset(const Dataset& dataset, std::ostream& out, char delimiter) {
    validate_dataset(dataset);
    auto check_id = [&](const std::string& id) {
        if (id.find(delimiter) != std::string::npos || id.find('\n') != std::string::npos) {
            throw ValidationError("identifier '" + id + "' contains the delimiter");
        }
    };
    check_id(dataset.label_id);
    out << dataset.label_id;
    for (const auto& id : dataset.item_ids) {
        check_id(id);
        out << delimiter << id;
    }
    out << '\n';
    for (std::size_t i = 0; i < dataset.respondents(); ++i) {
        out << dataset.labels[i];
        for (const auto& column : dataset.columns) out << delimiter << column[i];
        out << '\n';
    }
}

void write_dataset(const Dataset& dataset, const std::string& path, char delimiter) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_dataset(dataset, out, delimiter);
}

DatasetSummary summarize(const Dataset& dataset) {
    validate_dataset(dataset);
    DatasetSummary s;
    s.respondents = dataset.respondents();
    s.items = dataset.item_count();
    std::size_t pos = 0;
    for (int l : dataset.labels) pos += (l == 1);
    s.prevalence = static_cast<double>(pos) / s.respondents;
    for (std::size_t j = 0; j < dataset.item_count(); ++j) {
        auto [lo, hi] = std::minmax_element(dataset.columns[j].begin(), dataset.columns[j].end());
        s.response_ranges.push_back({dataset.item_ids[j], *lo, *hi});
    }
    s.missing_cells = 0;
    s.rows_dropped = dataset.rows_dropped;
    return s;
}

std::string summary_json(const DatasetSummary& summary) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["respondents"] = summary.respondents;
    doc["items"] = summary.items;
    doc["prevalence"] = summary.prevalence;
    auto ranges = nlohmann::ordered_json::array();
    for (const auto& r : summary.response_ranges) {
        ranges.push_back({{"item", r.item_id}, {"min", r.min}, {"max", r.max}});
    }
    doc["response_ranges"] = ranges;
    doc["missing_cells"] = summary.missing_cells;
    doc["rows_dropped"] = summary.rows_dropped;
    return doc.dump(2) + "\n";
}

} // namespace scaletrim
