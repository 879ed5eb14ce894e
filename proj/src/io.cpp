#include "b2/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace b2 {

nlohmann::json state_to_json(const MomentState& m) {
  const Mat3 e2 = m.e2();
  nlohmann::json j;
  j["e0"] = m.e0();
  j["e1"] = {m.e1().x, m.e1().y, m.e1().z};
  j["e2"] = {{e2(0, 0), e2(0, 1), e2(0, 2)},
             {e2(1, 0), e2(1, 1), e2(1, 2)},
             {e2(2, 0), e2(2, 1), e2(2, 2)}};
  return j;
}

MomentState state_from_json(const nlohmann::json& j) {
  try {
    const double e0 = j.at("e0").get<double>();
    const auto& je1 = j.at("e1");
    const auto& je2 = j.at("e2");
    if (!je1.is_array() || je1.size() != 3)
      throw ParseError("e1 must be a 3-element array");
    if (!je2.is_array() || je2.size() != 3)
      throw ParseError("e2 must be a 3x3 array");
    Vec3 e1{je1[0].get<double>(), je1[1].get<double>(), je1[2].get<double>()};
    Mat3 e2;
    for (int r = 0; r < 3; ++r) {
      if (!je2[r].is_array() || je2[r].size() != 3)
        throw ParseError("e2 must be a 3x3 array");
      for (int c = 0; c < 3; ++c) e2(r, c) = je2[r][c].get<double>();
    }
    return build_moments(e0, e1, e2);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed moment record: ") + e.what());
  }
}

MomentState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return state_from_json(j);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string region_csv(const std::vector<RegionSample>& samples) {
  std::string out = "l1,l2,l3,f1,f2,f3,delta,sigma_pos,hyperbolic,min_eig_gap\n";
  for (const RegionSample& s : samples) {
    out += format_double(s.lambda_hat[0]) + ',' + format_double(s.lambda_hat[1]) +
           ',' + format_double(s.lambda_hat[2]) + ',' + format_double(s.f_hat[0]) +
           ',' + format_double(s.f_hat[1]) + ',' + format_double(s.f_hat[2]) + ',' +
           format_double(s.delta) + ',' + (s.sigma_pos ? "1" : "0") + ',' +
           (s.hyperbolic ? "1" : "0") + ',' + format_double(s.min_eig_gap) + '\n';
  }
  return out;
}

std::string slab_csv(const std::vector<SlabSample>& samples) {
  std::string out = "e1,e2,e3,valid\n";
  for (const SlabSample& s : samples)
    out += format_double(s.e1) + ',' + format_double(s.e2) + ',' +
           format_double(s.e3) + ',' + (s.valid ? "1" : "0") + '\n';
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << content;
}

}  // namespace b2
