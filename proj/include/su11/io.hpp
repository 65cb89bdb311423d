#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "su11/coherent.hpp"
#include "su11/halfline.hpp"
#include "su11/normext.hpp"
#include "su11/povm.hpp"
#include "su11/squeezed.hpp"
#include "su11/types.hpp"

namespace su11 {

using Json = nlohmann::ordered_json;

// 17 significant digits
std::string fmt17(double v);

Json to_json(const Op& X);
Op op_from_json(const Json& j);
Json to_json(const ExtensionReport& r);
Json to_json(const RoiResult& r);
Json to_json(const Reduction& r);
Json to_json(const NaimarkDilation& d);
Json to_json(const Mat& m);

// doubles rendered with 17 significant digits
std::string dump(const Json& j);

void write_csv_header(std::ostream& os, const std::vector<std::string>& cols);
void write_csv_row(std::ostream& os, const std::vector<double>& vals);

void write_grid_function_csv(std::ostream& os, const GridFunction& f);
void write_state_csv(std::ostream& os, const State& s);

}  // namespace su11
