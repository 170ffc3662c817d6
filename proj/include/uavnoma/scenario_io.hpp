#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// Parse a scenario document. Missing keys keep their defaults; unknown keys
/// and malformed values throw std::invalid_argument.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::string& path);

/// CSV with a versioned, self-describing preamble:
///
///     # schema=1
///     # key=value        (one line per resolved parameter)
///     col1,col2,...
///
/// Floating-point cells use 9 significant digits.
class CsvWriter
{
public:
    using Cell = std::variant<double, std::int64_t, std::string>;

    CsvWriter(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& meta,
              const std::vector<std::string>& header);

    void row(const std::vector<Cell>& cells);

private:
    std::ostream& os_;
    std::size_t width_;
};

/// Flattened `key=value` pairs of a scenario for CSV preambles.
std::vector<std::pair<std::string, std::string>> scenario_meta(const Scenario& s);

} // namespace uavnoma
