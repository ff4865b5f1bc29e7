#pragma once

#include "ddce/metric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ddce {

struct SurfaceFile {
    DecoratedMetric metric;
    std::optional<std::vector<double>> theta_target; // per vertex id
    std::optional<Heights> heights;                  // per vertex id
};

// Throws ParseError for malformed documents and the triangulation errors for
// bad gluings. Unknown top-level keys are ignored.
SurfaceFile parse_surface(const std::string& text);
SurfaceFile read_surface(const std::string& path);

// Extra members are appended verbatim after the surface keys, in order.
using JsonMembers = std::vector<std::pair<std::string, std::string>>;

std::string write_surface(const SurfaceFile& f, const JsonMembers& extra = {});
void write_file(const std::string& path, const std::string& text);

std::string json_number(double x);
std::string json_string(const std::string& s);
std::string json_array(const std::vector<double>& v);
std::string json_array(const std::vector<int>& v);

} // namespace ddce
