#include <doctest.h>

#include <cmath>

#include "revtidy/report.hpp"
#include "support.hpp"

using namespace revtidy;
using linalg::StateVector;
using qsim::Branch;
using qsim::ComputationSpec;
using qsim::RegisterLayout;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComputationSpec untidyable() {
  StateVector plus({cplx(kInvSqrt2, 0), cplx(kInvSqrt2, 0)});
  return ComputationSpec(
      RegisterLayout{2, 2}, StateVector::basis(2, 0),
      {Branch{StateVector::basis(2, 0), StateVector::basis(2, 0),
              StateVector::basis(2, 0)},
       Branch{plus, StateVector::basis(2, 1), StateVector::basis(2, 1)}});
}

}  // namespace

TEST_CASE("rounding to significant digits") {
  using report::round_sig;
  CHECK(round_sig(0.0) == 0.0);
  CHECK(round_sig(1.0) == 1.0);
  CHECK(round_sig(0.70710678118654752) == doctest::Approx(0.707106781187));
  CHECK(round_sig(0.70710678118654752) != 0.70710678118654752);
  CHECK(round_sig(-3.0) == -3.0);
  CHECK(round_sig(1.23456789, 3) == doctest::Approx(1.23));
}

TEST_CASE("analyzer report has fixed keys and a certificate when untidyable") {
  auto j = report::analyzer_report(untidyable(), linalg::kDefaultTol);

  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"classification", "reversible",
                                         "tidy_possible", "certificate",
                                         "energy", "pairs"});

  // output orthogonality is tested first, so this lands in the
  // orthogonal-outputs bucket even though the verdict is impossibility
  CHECK(j["classification"] == "OrthogonalOutputs");
  CHECK(j["reversible"] == false);
  CHECK(j["tidy_possible"] == false);
  CHECK_FALSE(j["certificate"].is_null());
  CHECK(j["certificate"]["pair"][0] == 0);
  CHECK(j["certificate"]["pair"][1] == 1);
  double res = j["certificate"]["tidy_residual"][0].get<double>();
  CHECK(res == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(j["energy"]["erased_bits"] == 1.0);
  CHECK(j["pairs"].size() == 1);

  // serialization is byte-stable
  auto j2 = report::analyzer_report(untidyable(), linalg::kDefaultTol);
  CHECK(j.dump(2) == j2.dump(2));
}

TEST_CASE("analyzer report on a tidyable spec has a null certificate") {
  ComputationSpec spec(
      RegisterLayout{2, 2}, StateVector::basis(2, 0),
      {Branch{StateVector::basis(2, 0), StateVector::basis(2, 1),
              StateVector::basis(2, 0)},
       Branch{StateVector::basis(2, 1), StateVector::basis(2, 0),
              StateVector::basis(2, 1)}});
  auto j = report::analyzer_report(spec, linalg::kDefaultTol);
  CHECK(j["classification"] == "OrthogonalOutputs");
  CHECK(j["reversible"] == true);
  CHECK(j["tidy_possible"] == true);
  CHECK(j["certificate"].is_null());

  std::string text = report::render_text(j);
  CHECK(text.find("classification: OrthogonalOutputs") != std::string::npos);
  CHECK(text.find("tidy possible: yes") != std::string::npos);
}

TEST_CASE("a single-branch spec reports trivially") {
  ComputationSpec spec(
      RegisterLayout{2, 2}, StateVector::basis(2, 0),
      {Branch{StateVector::basis(2, 0), StateVector::basis(2, 1),
              StateVector::basis(2, 1)}});
  auto j = report::analyzer_report(spec, linalg::kDefaultTol);
  CHECK(j["reversible"] == true);
  CHECK(j["tidy_possible"] == true);
  CHECK(j["certificate"].is_null());
  CHECK(j["pairs"].empty());
}

TEST_CASE("procedure json carries steps and verified fidelities") {
  ComputationSpec spec(
      RegisterLayout{2, 2}, StateVector::basis(2, 0),
      {Branch{StateVector::basis(2, 0), StateVector::basis(2, 1),
              StateVector::basis(2, 0)},
       Branch{StateVector::basis(2, 1), StateVector::basis(2, 0),
              StateVector::basis(2, 1)}});
  tidy::TidyProcedure proc = tidy::construct_tidier(spec);
  auto j = report::procedure_json(spec, proc, linalg::kDefaultTol);
  CHECK(j["kind"] == "BennettCopyReverse");
  CHECK(j["registers"]["copy_dim"] == 2);
  CHECK(j["steps"].size() == 2);
  CHECK(j["steps"][0]["dim"] == 8);
  for (const auto& f : j["branch_fidelities"]) {
    CHECK(f.get<double>() > 1.0 - 1e-9);
  }
}
