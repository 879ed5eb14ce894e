// JSON moment records and CSV sweep output.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "b2/closure.hpp"
#include "b2/hyperbolicity.hpp"
#include "b2/moments.hpp"

namespace b2 {

// {"e0": <num>, "e1": [x,y,z], "e2": [[..],[..],[..]]}
nlohmann::json state_to_json(const MomentState& m);
MomentState state_from_json(const nlohmann::json& j);  // throws ParseError
MomentState read_state_file(const std::string& path);

// header l1,l2,l3,f1,f2,f3,delta,sigma_pos,hyperbolic,min_eig_gap; flags 0/1,
// numbers with 17 significant digits, '.' decimal separator, LF endings
std::string region_csv(const std::vector<RegionSample>& samples);

struct SlabSample {
  double e1 = 0, e2 = 0, e3 = 0;
  bool valid = false;
};
// header e1,e2,e3,valid
std::string slab_csv(const std::vector<SlabSample>& samples);

std::string format_double(double v);  // %.17g
void write_file(const std::string& path, const std::string& content);

}  // namespace b2
