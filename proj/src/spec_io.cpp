#include "revtidy/spec_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace revtidy::qsim {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ParseError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

std::size_t read_dim(const json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw ParseError(std::string("layout: missing '") + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    throw ParseError(std::string("layout: '") + key +
                     "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

linalg::StateVector read_state(const json& arr, std::size_t expected_dim,
                               double eps, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array");
  if (arr.size() != expected_dim) {
    throw ParseError(where + ": has " + std::to_string(arr.size()) +
                     " amplitudes, expected " + std::to_string(expected_dim));
  }
  std::vector<cplx> amps;
  amps.reserve(arr.size());
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      throw ParseError(where + ": each amplitude must be [re, im]");
    }
    amps.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return linalg::StateVector(std::move(amps), eps);
  } catch (const Error& e) {
    throw InvalidSpec(where + ": " + e.what());
  }
}

}  // namespace

LoadedSpec load_spec_json(std::istream& in) {
  std::ostringstream oss;
  oss << in.rdbuf();
  return load_spec_json_string(oss.str());
}

LoadedSpec load_spec_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("spec file: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("spec file: top level must be an object");
  reject_unknown_keys(j, "spec file",
                      {"layout", "aux0", "branches", "tolerance"});

  double tolerance = linalg::kDefaultTol;
  if (j.contains("tolerance")) {
    if (!j.at("tolerance").is_number()) {
      throw ParseError("spec file: 'tolerance' must be a number");
    }
    tolerance = j.at("tolerance").get<double>();
    if (!(tolerance > 0.0) || tolerance >= 1.0) {
      throw ParseError("spec file: 'tolerance' must lie in (0, 1)");
    }
  }

  if (!j.contains("layout")) throw ParseError("spec file: missing 'layout'");
  const json& jl = j.at("layout");
  if (!jl.is_object()) throw ParseError("layout: must be an object");
  reject_unknown_keys(jl, "layout", {"out_dim", "aux_dim"});
  RegisterLayout layout{read_dim(jl, "out_dim"), read_dim(jl, "aux_dim")};
  require_valid(layout);

  linalg::StateVector aux0 =
      j.contains("aux0")
          ? read_state(j.at("aux0"), layout.aux_dim, tolerance, "aux0")
          : linalg::StateVector::basis(layout.aux_dim, 0);

  if (!j.contains("branches")) throw ParseError("spec file: missing 'branches'");
  const json& jb = j.at("branches");
  if (!jb.is_array() || jb.empty()) {
    throw ParseError("spec file: 'branches' must be a non-empty array");
  }
  std::vector<Branch> branches;
  branches.reserve(jb.size());
  for (std::size_t k = 0; k < jb.size(); ++k) {
    const json& b = jb[k];
    std::string where = "branch " + std::to_string(k);
    if (!b.is_object()) throw ParseError(where + ": must be an object");
    reject_unknown_keys(b, where.c_str(), {"input", "output", "aux"});
    for (const char* key : {"input", "output", "aux"}) {
      if (!b.contains(key)) {
        throw ParseError(where + ": missing '" + key + "'");
      }
    }
    branches.push_back(Branch{
        read_state(b.at("input"), layout.out_dim, tolerance, where + " input"),
        read_state(b.at("output"), layout.out_dim, tolerance,
                   where + " output"),
        read_state(b.at("aux"), layout.aux_dim, tolerance, where + " aux")});
  }

  return LoadedSpec{
      ComputationSpec(layout, std::move(aux0), std::move(branches), tolerance),
      tolerance};
}

LoadedSpec load_spec_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_spec_json(in);
}

}  // namespace revtidy::qsim
