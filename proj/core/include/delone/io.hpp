#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "delone/patch.hpp"
#include "delone/step_function.hpp"
#include "delone/voronoi.hpp"

namespace delone {

using json = nlohmann::json;

// Library and dependency versions, for run manifests.
json build_info();

// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 14695981039346656037ull);
std::string hex64(std::uint64_t v);

json to_json(Vec v, int dim);
Vec vec_from_json(const json& j, int dim);

json to_json(const Region& q);
Region region_from_json(const json& j);

json to_json(const DelonePatch& w);
DelonePatch patch_from_json(const json& j);

json to_json(const StepFunction& f);
StepDistribution distribution_from_json(const json& j);

json to_json(const Decomposition& d);

// "# comment" line (if any), header "E,value", one row per breakpoint.
std::string distribution_csv(const StepFunction& f, const std::string& comment = {});

struct Series {
    std::string label;
    StepFunction f;
};

// Staircase plot of right-continuous step functions over [lo, hi].
std::string staircase_svg(const std::vector<Series>& series, double lo, double hi, const std::string& title = {});
// 2D cells filled by key hash, surface points in black. The json overload
// takes the output of to_json(Decomposition).
std::string decomposition_svg(const Decomposition& d);
std::string decomposition_svg(const json& d);

}  // namespace delone
