#include <doctest.h>

#include <cmath>
#include <complex>

#include "revtidy/tidy.hpp"
#include "spec_gen.hpp"
#include "support.hpp"

using namespace revtidy;
using namespace revtidy::tidy;
using linalg::StateVector;
using linalg::UnitaryMatrix;
using qsim::Branch;
using qsim::ComputationSpec;
using qsim::RegisterLayout;
using testsupport::Rng;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector ket0() { return StateVector::basis(2, 0); }
StateVector ket1() { return StateVector::basis(2, 1); }
StateVector ket_plus() {
  return StateVector({cplx(kInvSqrt2, 0), cplx(kInvSqrt2, 0)});
}
StateVector ket_minus() {
  return StateVector({cplx(kInvSqrt2, 0), cplx(-kInvSqrt2, 0)});
}

// inputs {|0>,|+>} -> outputs {|0>,|1>}: provably untidyable.
ComputationSpec canonical_untidyable() {
  return ComputationSpec(RegisterLayout{2, 2}, ket0(),
                         {Branch{ket0(), ket0(), ket0()},
                          Branch{ket_plus(), ket1(), ket1()}});
}

}  // namespace

TEST_CASE("reversibility residuals vanish for unitary-extracted branches") {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    ComputationSpec spec = testsupport::orthogonal_input_spec(3, 3, 3, rng);
    for (const PairResidual& p : check_reversibility(spec)) {
      CHECK(std::abs(p.reversible_residual()) < 1e-9);
    }
  }
}

TEST_CASE("reversibility residuals on the hand-worked pair") {
  // inputs {|0>,|1>}, outputs {|0>,|+>}: residual 0 - (1/sqrt2) <aux0|aux1>
  SUBCASE("orthogonal aux passes") {
    ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                         {Branch{ket0(), ket0(), ket0()},
                          Branch{ket1(), ket_plus(), ket1()}});
    auto pairs = check_reversibility(spec);
    REQUIRE(pairs.size() == 1);
    CHECK(std::abs(pairs[0].reversible_residual()) < 1e-12);
  }
  SUBCASE("identical aux fails by -1/sqrt2") {
    ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                         {Branch{ket0(), ket0(), ket0()},
                          Branch{ket1(), ket_plus(), ket0()}});
    auto pairs = check_reversibility(spec);
    REQUIRE(pairs.size() == 1);
    cplx r = pairs[0].reversible_residual();
    CHECK(r.real() == doctest::Approx(-kInvSqrt2).epsilon(1e-9));
    CHECK(std::abs(r.imag()) < 1e-12);
  }
}

TEST_CASE("tidy decision on the three canonical situations") {
  SUBCASE("orthogonal inputs are always tidyable") {
    ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                         {Branch{ket0(), ket0(), ket0()},
                          Branch{ket1(), ket_plus(), ket1()}});
    TidyDecision d = check_tidy_condition(spec);
    CHECK(d.possible);
    CHECK(d.procedure.has_value());
    CHECK_FALSE(d.certificate.has_value());
  }
  SUBCASE("a constant computation is tidyable even on overlapping inputs") {
    // reversibility needs <aux0|aux1> = <0|+> = 1/sqrt2; reuse the inputs
    ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                         {Branch{ket0(), ket0(), ket0()},
                          Branch{ket_plus(), ket0(), ket_plus()}});
    TidyDecision d = check_tidy_condition(spec);
    CHECK(d.possible);
  }
  SUBCASE("overlapping inputs with distinct outputs are untidyable") {
    TidyDecision d = check_tidy_condition(canonical_untidyable());
    REQUIRE_FALSE(d.possible);
    REQUIRE(d.certificate.has_value());
    CHECK(d.certificate->i == 0);
    CHECK(d.certificate->j == 1);
    CHECK(std::abs(d.certificate->tidy_residual()) ==
          doctest::Approx(0.70710678).epsilon(1e-8));
  }
}

TEST_CASE("certificate ties break lexicographically") {
  // pairs (0,1) and (0,2) tie at |tidy residual| = 1/sqrt2; (1,2) is clean
  ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                       {Branch{ket0(), ket0(), ket0()},
                        Branch{ket_plus(), ket1(), ket0()},
                        Branch{ket_minus(), ket1(), ket1()}});
  TidyDecision d = check_tidy_condition(spec);
  REQUIRE_FALSE(d.possible);
  REQUIRE(d.certificate.has_value());
  CHECK(d.certificate->i == 0);
  CHECK(d.certificate->j == 1);
}

TEST_CASE("tidy check rejects unrealizable specs that pass the condition") {
  // orthogonal inputs (condition holds), but aux overlap 1 breaks
  // reversibility: 0 != (1/sqrt2) * 1
  ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                       {Branch{ket0(), ket0(), ket0()},
                        Branch{ket1(), ket_plus(), ket0()}});
  CHECK_THROWS_AS(check_tidy_condition(spec), NotReversible);
}

TEST_CASE("classification follows the orthogonality split") {
  ComputationSpec s1(RegisterLayout{2, 2}, ket0(),
                     {Branch{ket0(), ket0(), ket0()},
                      Branch{ket1(), ket1(), ket1()}});
  CHECK(classify(s1).label == TidyLabel::OrthogonalOutputs);

  ComputationSpec s2(RegisterLayout{2, 2}, ket0(),
                     {Branch{ket0(), ket0(), ket0()},
                      Branch{ket1(), ket_plus(), ket1()}});
  CHECK(classify(s2).label ==
        TidyLabel::OrthogonalInputsNonOrthogonalOutputs);

  // overlapping inputs with overlapping, non-identical outputs
  ComputationSpec s3(RegisterLayout{2, 2}, ket0(),
                     {Branch{ket0(), ket0(), ket0()},
                      Branch{ket_plus(), ket_plus(), ket_plus()}});
  CHECK(classify(s3).label == TidyLabel::NonOrthogonalInputs);

  // the output-orthogonality test comes first, so even the untidyable
  // flagship spec lands in the orthogonal-outputs bucket
  CHECK(classify(canonical_untidyable()).label ==
        TidyLabel::OrthogonalOutputs);
}

TEST_CASE("classification labels are exclusive and exhaustive") {
  Rng rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    ComputationSpec spec =
        trial % 3 == 0
            ? testsupport::orthogonal_output_spec(3, 2, 2, rng)
            : (trial % 3 == 1 ? testsupport::orthogonal_input_spec(3, 3, 2, rng)
                              : testsupport::untidyable_spec(3, 3, rng));
    TidyClassification cls = classify(spec);
    bool outputs_orth = true;
    bool inputs_orth = true;
    for (const PairResidual& p : cls.pair_data) {
      if (std::abs(p.out_overlap) > linalg::kDefaultTol) outputs_orth = false;
      if (std::abs(p.in_overlap) > linalg::kDefaultTol) inputs_orth = false;
    }
    TidyLabel want = outputs_orth
                         ? TidyLabel::OrthogonalOutputs
                         : (inputs_orth
                                ? TidyLabel::OrthogonalInputsNonOrthogonalOutputs
                                : TidyLabel::NonOrthogonalInputs);
    CHECK(cls.label == want);
  }
}

TEST_CASE("basis-controlled copy in the computational basis is CNOT") {
  UnitaryMatrix u = basis_controlled_copy({ket0(), ket1()}, 2);
  // |00> -> |00>, |01> -> |01>, |10> -> |11>, |11> -> |10>
  double want[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(std::abs(u(r, c) - cplx(want[r][c], 0)) < 1e-9);
    }
  }
}

TEST_CASE("basis-controlled copy in a rotated basis entangles basis states") {
  UnitaryMatrix u = basis_controlled_copy({ket_plus(), ket_minus()}, 2);
  StateVector plus_blank = qsim::tensor(ket_plus(), ket0());
  StateVector got = qsim::apply(u, plus_blank);
  CHECK(linalg::fidelity(got, qsim::tensor(ket_plus(), ket_plus())) >
        1.0 - 1e-9);

  // |0>|0> = (|+>+|->)|0>/sqrt2 copies into an entangled pair
  StateVector from_zero = qsim::apply(u, qsim::tensor(ket0(), ket0()));
  CHECK_FALSE(qsim::is_separable(from_zero, RegisterLayout{2, 2}));
  CHECK(linalg::schmidt_entropy(from_zero, 2, 2) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("basis-controlled copy validates its basis") {
  UnitaryMatrix u = basis_controlled_copy({ket0()}, 2);
  StateVector fixed = qsim::apply(u, qsim::tensor(ket0(), ket0()));
  CHECK(linalg::fidelity(fixed, qsim::tensor(ket0(), ket0())) > 1.0 - 1e-9);

  CHECK_THROWS_AS(basis_controlled_copy({ket0(), ket_plus()}, 2),
                  NotOrthonormal);
  CHECK_THROWS_AS(basis_controlled_copy({ket0(), ket1(), ket_plus()}, 2),
                  NotOrthonormal);
  CHECK_THROWS_AS(basis_controlled_copy({}, 2), EmptyList);
}

TEST_CASE("conditional reset maps paired basis states to the fiducial") {
  SUBCASE("computational basis") {
    UnitaryMatrix u_r = conditional_reset({ket0(), ket1()}, ket0());
    StateVector got = qsim::apply(u_r, qsim::tensor(ket1(), ket1()));
    CHECK(linalg::fidelity(got, qsim::tensor(ket1(), ket0())) > 1.0 - 1e-9);
    StateVector fixed = qsim::apply(u_r, qsim::tensor(ket0(), ket0()));
    CHECK(linalg::fidelity(fixed, qsim::tensor(ket0(), ket0())) > 1.0 - 1e-9);
  }
  SUBCASE("rotated basis") {
    UnitaryMatrix u_r = conditional_reset({ket_plus(), ket_minus()}, ket0());
    StateVector got = qsim::apply(u_r, qsim::tensor(ket_minus(), ket_minus()));
    CHECK(linalg::fidelity(got, qsim::tensor(ket_minus(), ket0())) >
          1.0 - 1e-9);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(conditional_reset({ket0(), ket_plus()}, ket0()),
                    NotOrthonormal);
    CHECK_THROWS_AS(conditional_reset({ket0()}, StateVector::basis(3, 0)),
                    DimensionMismatch);
  }
}

TEST_CASE("constructed tidier for orthogonal outputs") {
  ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                       {Branch{ket0(), ket0(), ket0()},
                        Branch{ket1(), ket1(), ket1()}});
  TidyProcedure proc = construct_tidier(spec);
  CHECK(proc.kind == ProcedureKind::BennettCopyReverse);
  CHECK(proc.copy_dim == 2);
  for (double f : verify_tidier(spec, proc)) CHECK(f > 1.0 - 1e-9);
}

TEST_CASE("constructed tidier for orthogonal inputs, branch checked by hand") {
  ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                       {Branch{ket0(), ket0(), ket0()},
                        Branch{ket1(), ket_plus(), ket1()}});
  TidyProcedure proc = construct_tidier(spec);
  CHECK(proc.kind == ProcedureKind::ModifiedCopyResetReverse);
  CHECK(proc.copy_dim == 4);
  CHECK(proc.copy_content == CopyContent::OutputWithAux0);
  REQUIRE(proc.steps.size() == 3);

  std::vector<double> fid = verify_tidier(spec, proc);
  for (double f : fid) CHECK(f > 1.0 - 1e-9);

  // branch 1 by hand: |+>|1> (x) |0000> ends at |1>|0> (x) |+>|0>
  std::vector<cplx> state = linalg::vec_tensor(
      spec.joint_output(1).amplitudes(), proc.aux_o().amplitudes());
  for (const TidyStep& step : proc.steps) {
    state = linalg::matvec(step.op, state);
  }
  StateVector want = qsim::tensor(qsim::tensor(ket1(), ket0()),
                                  qsim::tensor(ket_plus(), ket0()));
  CHECK(std::norm(linalg::vec_inner(want.amplitudes(), state)) > 1.0 - 1e-9);
}

TEST_CASE("no tidier exists for the canonical untidyable spec") {
  try {
    construct_tidier(canonical_untidyable());
    FAIL("expected NoTidierExists");
  } catch (const NoTidierExists& e) {
    CHECK(std::abs(e.certificate().tidy_residual()) ==
          doctest::Approx(0.70710678).epsilon(1e-8));
  }
}

TEST_CASE("random constructed tidiers verify across the case split") {
  Rng rng(53);
  for (int trial = 0; trial < 15; ++trial) {
    ComputationSpec spec = testsupport::orthogonal_output_spec(
        2 + trial % 3, 2 + (trial / 2) % 2, 2, rng);
    TidyProcedure proc = construct_tidier(spec);
    CHECK(proc.kind == ProcedureKind::BennettCopyReverse);
    for (double f : verify_tidier(spec, proc)) CHECK(f > 1.0 - 1e-9);
  }
  for (int trial = 0; trial < 15; ++trial) {
    ComputationSpec spec = testsupport::orthogonal_input_spec(
        2 + trial % 3, 2 + trial % 2, 2, rng);
    TidyProcedure proc = construct_tidier(spec);
    CHECK(proc.kind == ProcedureKind::ModifiedCopyResetReverse);
    for (double f : verify_tidier(spec, proc)) CHECK(f > 1.0 - 1e-9);
  }
  for (int trial = 0; trial < 15; ++trial) {
    ComputationSpec spec = testsupport::constant_output_spec(2, 3, 3, rng);
    TidyProcedure proc = construct_tidier(spec);
    CHECK(proc.kind == ProcedureKind::DirectCompletion);
    for (double f : verify_tidier(spec, proc)) CHECK(f > 1.0 - 1e-9);
  }
}

TEST_CASE("the tidy decision agrees with the unitary-existence oracle") {
  Rng rng(54);
  for (int trial = 0; trial < 60; ++trial) {
    ComputationSpec spec = [&]() {
      switch (trial % 5) {
        case 0:
          return testsupport::orthogonal_output_spec(2 + trial % 3, 2, 2, rng);
        case 1:
          return testsupport::orthogonal_input_spec(2 + trial % 3, 3, 2, rng);
        case 2:
          return testsupport::constant_output_spec(2, 2 + trial % 3, 2, rng);
        case 3:
          return testsupport::untidyable_spec(2 + trial % 3, 2, rng);
        default:
          return testsupport::phase_twist_spec(3, 3,
                                               trial % 10 == 4 ? 0.0 : 0.7,
                                               rng);
      }
    }();

    TidyDecision d = check_tidy_condition(spec);

    // oracle: a tidier exists iff the joint pair list completes to a unitary
    std::size_t copy_dim = spec.layout().out_dim;
    StateVector aux_o = StateVector::basis(copy_dim, 0);
    std::vector<std::pair<StateVector, StateVector>> pairs;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const Branch& b = spec.branches()[k];
      pairs.emplace_back(qsim::tensor(spec.joint_output(k), aux_o),
                         qsim::tensor(qsim::tensor(b.input, spec.aux0()),
                                      b.output));
    }
    bool oracle = true;
    try {
      linalg::complete_to_unitary(pairs, spec.layout().total() * copy_dim);
    } catch (const GramMismatch&) {
      oracle = false;
    }
    CHECK(d.possible == oracle);
  }
}

TEST_CASE("orthogonal outputs force orthogonal inputs") {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    ComputationSpec spec =
        testsupport::orthogonal_output_spec(2 + trial % 3, 2, 2, rng);
    for (const PairResidual& p : check_reversibility(spec)) {
      if (std::abs(p.reversible_residual()) > 1e-9) continue;
      CHECK(std::abs(p.in_overlap) < 1e-9);
    }
    CHECK(check_tidy_condition(spec).possible);
  }
}

TEST_CASE("orthogonal inputs with overlapping outputs force orthogonal aux") {
  Rng rng(56);
  for (int trial = 0; trial < 20; ++trial) {
    ComputationSpec spec = testsupport::orthogonal_input_spec(3, 3, 3, rng);
    for (const PairResidual& p : check_reversibility(spec)) {
      if (std::abs(p.out_overlap) > 1e-9) {
        CHECK(std::abs(p.aux_overlap) < 1e-9);
      }
    }
  }
}

TEST_CASE("overlapping inputs are tidyable only with identical outputs") {
  Rng rng(57);
  for (int trial = 0; trial < 20; ++trial) {
    ComputationSpec bad = testsupport::untidyable_spec(2, 2, rng);
    CHECK_FALSE(check_tidy_condition(bad).possible);

    ComputationSpec twisted = testsupport::phase_twist_spec(2, 2, 0.5, rng);
    CHECK_FALSE(check_tidy_condition(twisted).possible);

    ComputationSpec aligned = testsupport::phase_twist_spec(2, 2, 0.0, rng);
    CHECK(check_tidy_condition(aligned).possible);
  }
}

TEST_CASE("the identity procedure fails verification on a nontrivial spec") {
  ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                       {Branch{ket0(), ket1(), ket0()},
                        Branch{ket1(), ket0(), ket1()}});
  TidyProcedure identity{ProcedureKind::DirectCompletion,
                         spec.layout(),
                         2,
                         CopyContent::Output,
                         {}};
  identity.steps.push_back({UnitaryMatrix::identity(8), "do nothing"});
  std::vector<double> fid = verify_tidier(spec, identity);
  bool some_low = false;
  for (double f : fid) some_low |= f < 1.0 - 1e-9;
  CHECK(some_low);
}

TEST_CASE("cloning then reversing loses non-orthogonal outputs") {
  Rng rng(58);
  for (int trial = 0; trial < 10; ++trial) {
    // out_dim == aux_dim so the junk lands in a comparable register
    ComputationSpec spec = testsupport::orthogonal_input_spec(3, 3, 2, rng);
    bool junk_detectable = false;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      if (linalg::fidelity(spec.branches()[k].output,
                           spec.branches()[k].aux) <= 1.0 - 1e-3) {
        junk_detectable = true;
      }
    }
    if (!junk_detectable) continue;

    // Bennett-style misuse: clone the aux register in its basis, reverse.
    std::vector<StateVector> aux_basis;
    for (const Branch& b : spec.branches()) aux_basis.push_back(b.aux);
    UnitaryMatrix cloner = basis_controlled_copy(aux_basis, 3);
    UnitaryMatrix u_c = qsim::build_computation_unitary(spec);
    std::vector<std::size_t> dims{3, 3, 3};
    TidyProcedure misuse{ProcedureKind::BennettCopyReverse, spec.layout(), 3,
                         CopyContent::Output,
                         {}};
    misuse.steps.push_back(
        {qsim::embed_on_factors(cloner, dims, {1, 2}), "clone the aux"});
    misuse.steps.push_back(
        {qsim::embed_on_factors(u_c.adjoint(), dims, {0, 1}), "reverse"});

    std::vector<double> fid = verify_tidier(spec, misuse);
    bool lost_output = false;
    for (double f : fid) lost_output |= f <= 1.0 - 1e-3;
    CHECK(lost_output);
  }
}

TEST_CASE("clone attempts succeed exactly on copier basis elements") {
  std::vector<double> fid =
      clone_attempt({ket0(), ket1(), ket_plus()}, {ket0(), ket1()});
  REQUIRE(fid.size() == 3);
  CHECK(fid[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fid[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fid[2] == doctest::Approx(0.5).epsilon(1e-9));

  // a copier matched to the state clones it
  std::vector<double> matched = clone_attempt({ket_plus()},
                                              {ket_plus(), ket_minus()});
  CHECK(matched[0] == doctest::Approx(1.0).epsilon(1e-9));

  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    StateVector psi = testsupport::random_state(2, rng);
    double f0 = linalg::fidelity(psi, ket0());
    double f1 = linalg::fidelity(psi, ket1());
    double f = clone_attempt({psi}, {ket0(), ket1()})[0];
    if (f0 > 1e-3 && f0 < 1.0 - 1e-3 && f1 > 1e-3 && f1 < 1.0 - 1e-3) {
      CHECK(f < 1.0 - 1e-9);
    }
  }
}

TEST_CASE("erasure accounting follows the aux register size") {
  ComputationSpec spec(RegisterLayout{2, 2}, ket0(),
                       {Branch{ket0(), ket0(), ket0()},
                        Branch{ket1(), ket1(), ket1()}});
  EnergyAccount untidied = erasure_cost(spec, false);
  CHECK(untidied.erased_bits == doctest::Approx(1.0));
  CHECK(untidied.landauer_cost == doctest::Approx(1.0));
  REQUIRE(untidied.branch_entropy_bound.size() == 2);
  for (double h : untidied.branch_entropy_bound) {
    CHECK(h >= 0.0);
    CHECK(h < 1e-9);  // separable branch outputs
  }

  EnergyAccount tidied = erasure_cost(spec, true);
  CHECK(tidied.erased_bits == 0.0);
  CHECK(tidied.landauer_cost == 0.0);

  ComputationSpec wide(RegisterLayout{2, 8}, StateVector::basis(8, 0),
                       {Branch{ket0(), ket0(), StateVector::basis(8, 0)},
                        Branch{ket1(), ket1(), StateVector::basis(8, 1)}});
  CHECK(erasure_cost(wide, false).erased_bits == doctest::Approx(3.0));
}
