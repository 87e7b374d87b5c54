#include <gtest/gtest.h>

#include "mfpt/oracle.hpp"
#include "mfpt/reference_table.hpp"
#include "mfpt/series.hpp"
#include "support.hpp"

using namespace mfpt;
using mfpt::test::make_spec;
using mfpt::test::q;

namespace {

std::vector<rational> exact_series(oscillator_kind kind, const std::string& g, int P) {
  return compute_corrections(make_spec(kind, g), P).corrections;
}

}  // namespace

TEST(Corrections, QuarticFixture) {
  const auto E = exact_series(oscillator_kind::qaho, "1", 5);
  ASSERT_EQ(E.size(), 6u);
  EXPECT_EQ(E[0], q("13/16"));
  EXPECT_EQ(E[1], 0);
  EXPECT_EQ(E[2], q("-3/256"));
  EXPECT_EQ(E[3], q("27/4096"));
  EXPECT_EQ(E[4], q("-2373/262144"));
  EXPECT_EQ(E[5], q("65457/4194304"));
}

TEST(Corrections, SexticFixture) {
  const auto E = exact_series(oscillator_kind::saho, "8/15", 5);
  EXPECT_EQ(E[1], 0);
  EXPECT_EQ(E[2], q("-49/960"));
  EXPECT_EQ(E[3], q("671/4608"));
  EXPECT_EQ(E[4], q("-53621891/55296000"));
  EXPECT_EQ(E[5], q("2610955409/265420800"));
}

TEST(Corrections, DoubleWellFixture) {
  const auto E = exact_series(oscillator_kind::qdwo, "1/3", 5);
  EXPECT_EQ(E[0], q("1/4"));
  EXPECT_EQ(E[1], 0);
  EXPECT_EQ(E[2], q("-1/24"));
  EXPECT_EQ(E[3], q("1/16"));
  EXPECT_EQ(E[4], q("-791/3456"));
  EXPECT_EQ(E[5], q("7273/6912"));
}

TEST(Corrections, BareWellReproducesRayleighSchroedinger) {
  // ground-state x^4 coefficients of g^k about p^2/2 + x^2/2
  const auto s = sfpt_corrections(make_spec(oscillator_kind::qaho, "1"), 5);
  const std::vector<rational> expected{q("1/2"), q("3/4"), q("-21/8"), q("333/16"), q("-30885/128"),
                                       q("916731/256")};
  EXPECT_EQ(s.corrections, expected);
  EXPECT_THROW(sfpt_corrections(make_spec(oscillator_kind::qdwo, "1"), 3), domain_error);
}

TEST(Corrections, BareWellSexticFirstOrders) {
  // <0|x^6|0> = 15/8; second order from |<k|x^6|0>|^2 / (-k)
  const auto s = sfpt_corrections(make_spec(oscillator_kind::saho, "1"), 2);
  EXPECT_EQ(s.corrections[1], q("15/8"));
  const rational sos = rspt_sum_over_states(bare_perturbation(make_spec(oscillator_kind::saho, "1")), 0, 2);
  EXPECT_EQ(s.corrections[2], sos);
}

TEST(Corrections, FirstOrderVanishesOnRandomSpecs) {
  precision_guard g(100);
  const real tolerance = decimal_tolerance(100 - 15);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = convert_spec<real>(test::random_spec());
    const auto s = compute_corrections(spec, 3);
    EXPECT_LT(boost::multiprecision::abs(s.corrections[1]), tolerance) << trial;
  }
}

TEST(Corrections, ExcitedLevelsAgreeWithSumOverStates) {
  for (unsigned n = 0; n < 4; ++n) {
    for (auto spec : {make_spec(oscillator_kind::qaho, "1", n), make_spec(oscillator_kind::saho, "8/15", n),
                      make_spec(oscillator_kind::qdwo, "1/3", n)}) {
      // only the levels whose gap root is rational
      if (!admits_exact_mode(spec)) continue;
      const auto s = compute_corrections(spec, 3);
      EXPECT_EQ(s.corrections[1], 0);
      EXPECT_EQ(s.corrections[2], rspt_sum_over_states(spec, s.mf, 2)) << to_string(spec.kind) << n;
      EXPECT_EQ(s.corrections[3], rspt_sum_over_states(spec, s.mf, 3)) << to_string(spec.kind) << n;
    }
  }
}

TEST(Corrections, FloatRecursionAgreesWithSumOverStates) {
  precision_guard g(100);
  const real tolerance = decimal_tolerance(30);
  for (int trial = 0; trial < 60; ++trial) {
    const auto spec = convert_spec<real>(test::random_spec());
    const auto s = compute_corrections(spec, 3);
    for (int order : {2, 3}) {
      const real sos = rspt_sum_over_states(spec, s.mf, order);
      const real& rec = s.corrections[static_cast<std::size_t>(order)];
      EXPECT_LT(boost::multiprecision::abs(rec - sos), tolerance * boost::multiprecision::abs(sos))
          << to_string(spec.kind) << " g=" << to_string(spec.g, 8) << " n=" << spec.level << " order " << order;
    }
  }
}

TEST(Corrections, RationalAndFloatModesAgree) {
  precision_guard g(100);
  for (auto spec : {make_spec(oscillator_kind::qaho, "1"), make_spec(oscillator_kind::saho, "8/15"),
                    make_spec(oscillator_kind::qdwo, "1/3")}) {
    const auto exact = compute_corrections(spec, 20);
    const auto fl = compute_corrections(convert_spec<real>(spec), 20);
    EXPECT_EQ(exact.mode, arithmetic_mode::exact_rational);
    EXPECT_EQ(fl.mode, arithmetic_mode::extended_precision);
    for (std::size_t p = 0; p < exact.corrections.size(); ++p) {
      const real e = to_real(exact.corrections[p]);
      EXPECT_LE(boost::multiprecision::abs(fl.corrections[p] - e), decimal_tolerance(80) * boost::multiprecision::abs(e))
          << to_string(spec.kind) << " p=" << p;
    }
  }
}

TEST(Corrections, SignsAlternateFromSecondOrder) {
  precision_guard g(100);
  for (const auto& row : reference_rows) {
    const auto s = compute_corrections(convert_spec<real>(spec_of(row)), 40);
    for (int k = 2; k < 40; ++k) {
      const auto& a = s.corrections[static_cast<std::size_t>(k)];
      const auto& b = s.corrections[static_cast<std::size_t>(k + 1)];
      EXPECT_LT(a * b, 0) << to_string(row.kind) << " g=" << row.g << " k=" << k;
    }
  }
}

TEST(Corrections, MeanFieldIsNotAlteredByHigherOrders) {
  const auto spec = make_spec(oscillator_kind::qaho, "1");
  const auto mf = solve_gap(spec);
  const auto s = compute_corrections(spec, mf, 12);
  EXPECT_EQ(s.mf.omega, mf.omega);
  EXPECT_EQ(s.mf.h0, mf.h0);
  EXPECT_EQ(compute_corrections(spec, mf, 5).corrections,
            std::vector<rational>(s.corrections.begin(), s.corrections.begin() + 6));
}

TEST(Corrections, MomentTableBoundaries) {
  const auto s = compute_corrections(make_spec(oscillator_kind::qaho, "1"), 4);
  const auto& X = s.table;
  EXPECT_EQ(X.at(0, 0), 1);
  EXPECT_EQ(X.at(0, 2), 0);
  EXPECT_EQ(X.at(-1, 0), 0);
  EXPECT_EQ(X.at(3, -1), 0);
  // zeroth-order moments are the harmonic ones
  EXPECT_EQ(X.at(1, 0), test::oracle_moment<rational>(0, 1, rational(2)));
  EXPECT_EQ(X.at(2, 0), test::oracle_moment<rational>(0, 2, rational(2)));
  EXPECT_EQ(X.at(5, 0), test::oracle_moment<rational>(0, 5, rational(2)));
  EXPECT_EQ(X.max_j(0), 5);
  EXPECT_THROW(X.at(6, 0), std::out_of_range);
  EXPECT_THROW(X.at(1, 4), std::out_of_range);
}

TEST(Corrections, RejectsBadOrders) {
  EXPECT_THROW(compute_corrections(make_spec(oscillator_kind::qaho, "1"), 0), domain_error);
}

TEST(Corrections, ReportsLostPrecision) {
  precision_guard g(12);
  // near g_c the high orders cancel heavily
  EXPECT_THROW(compute_corrections(convert_spec<real>(make_spec(oscillator_kind::qdwo, "0.1")), 60), precision_error);
  EXPECT_NO_THROW(compute_corrections(convert_spec<real>(make_spec(oscillator_kind::qaho, "1")), 60));
}

TEST(Corrections, CertifiedDigits) {
  precision_guard g(60);
  const auto c = certify_corrections(make_spec(oscillator_kind::qaho, "0.1"), 20);
  ASSERT_EQ(c.certified_digits.size(), 21u);
  for (std::size_t p = 2; p < c.certified_digits.size(); ++p) EXPECT_GE(c.certified_digits[p], 40) << p;
  EXPECT_EQ(working_digits(), 60u);
}
