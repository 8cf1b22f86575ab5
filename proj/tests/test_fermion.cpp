// Copyright 2026 The qdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <map>

#include "qdsim/fermion.hpp"
#include "support.hpp"

namespace qdsim {
namespace {

using testing::make_rng;
using testing::uniform;

std::map<std::string, double> term_map(const PauliHamiltonian& h) {
  std::map<std::string, double> out;
  for (const auto& t : h.terms()) out[t.letters] = t.coefficient.real();
  return out;
}

// Ladder operators in the occupation basis |n_1 ... n_M>, mode 1 most
// significant, with the usual (-1)^(occupied modes before j) sign.
Eigen::MatrixXcd fock_ladder(LadderOp op, int n_modes) {
  const Eigen::Index dim = Eigen::Index{1} << n_modes;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const int bit = n_modes - op.mode;
  for (Eigen::Index s = 0; s < dim; ++s) {
    const bool occupied = (s >> bit) & 1;
    if (occupied == op.dagger) continue;
    int before = 0;
    for (int b = bit + 1; b < n_modes; ++b) before += static_cast<int>((s >> b) & 1);
    m(s ^ (Eigen::Index{1} << bit), s) = (before % 2) ? -1.0 : 1.0;
  }
  return m;
}

Eigen::MatrixXcd fock_matrix(const FermionHamiltonian& fh) {
  const Eigen::Index dim = Eigen::Index{1} << fh.n_modes();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : fh.terms()) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& op : t.ops) p = p * fock_ladder(op, fh.n_modes());
    h += t.coefficient * p;
  }
  return h;
}

Eigen::VectorXd sorted_spectrum(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  return es.eigenvalues();
}

TEST(Hubbard, ModeLayout) {
  EXPECT_EQ(hubbard_mode(2, Spin::kUp), 1);
  EXPECT_EQ(hubbard_mode(1, Spin::kUp), 2);
  EXPECT_EQ(hubbard_mode(1, Spin::kDown), 3);
  EXPECT_EQ(hubbard_mode(2, Spin::kDown), 4);
  EXPECT_THROW(hubbard_mode(3, Spin::kUp), InputError);
}

TEST(Hubbard, FermionTermCounts) {
  EXPECT_EQ(hubbard_2site(1.0, 0.0).terms().size(), 4u);
  EXPECT_EQ(hubbard_2site(0.0, 2.0).terms().size(), 2u);
  EXPECT_EQ(hubbard_2site(1.0, 2.0).terms().size(), 6u);
}

TEST(JordanWigner, HubbardMatchesPrintedForm) {
  auto rng = make_rng(401);
  for (int k = 0; k < 5; ++k) {
    const double v = uniform(rng, -2, 2), u = uniform(rng, -3, 3);
    const auto h = term_map(jordan_wigner(hubbard_2site(v, u)));
    const std::map<std::string, double> expected = {
        {"XXII", v / 2},  {"YYII", v / 2},  {"IIXX", v / 2},  {"IIYY", v / 2},
        {"ZIIZ", u / 4},  {"ZIII", u / 4},  {"IIIZ", u / 4},  {"IZZI", u / 4},
        {"IZII", u / 4},  {"IIZI", u / 4},  {"IIII", u / 2}};
    ASSERT_EQ(h.size(), expected.size());
    for (const auto& [letters, c] : expected) {
      ASSERT_TRUE(h.count(letters)) << letters;
      EXPECT_NEAR(h.at(letters), c, 1e-14) << letters;
    }
  }
}

TEST(JordanWigner, SpectrumMatchesOccupationBasis) {
  auto rng = make_rng(402);
  for (int k = 0; k < 5; ++k) {
    const double v = uniform(rng, -2, 2), u = uniform(rng, -3, 3);
    const auto fh = hubbard_2site(v, u);
    const Eigen::VectorXd a = sorted_spectrum(dense_matrix(jordan_wigner(fh)));
    const Eigen::VectorXd b = sorted_spectrum(fock_matrix(fh));
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(JordanWigner, SpectrumIndependentOfModeOrderAndSign) {
  const auto fh = hubbard_2site(1.3, 2.1);
  const Eigen::VectorXd ref = sorted_spectrum(fock_matrix(fh));
  for (int sign : {1, -1}) {
    for (const std::vector<int>& order : {std::vector<int>{}, std::vector<int>{1, 2, 4, 3},
                                          std::vector<int>{3, 1, 4, 2}}) {
      JwOptions opt{order, sign};
      EXPECT_LT((sorted_spectrum(dense_matrix(jordan_wigner(fh, opt))) - ref).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

class Anticommutators : public ::testing::TestWithParam<int> {};

TEST_P(Anticommutators, CanonicalRelations) {
  const int n = 4;
  JwOptions opt;
  opt.tail_sign = GetParam();
  if (opt.tail_sign < 0) opt.mode_order = {2, 4, 1, 3};
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(16, 16);
  for (int j = 1; j <= n; ++j) {
    const Eigen::MatrixXcd cj = dense_matrix(jw_ladder(annihilate(j), n, opt), n);
    const Eigen::MatrixXcd cdj = dense_matrix(jw_ladder(create(j), n, opt), n);
    EXPECT_LT((cdj - cj.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    for (int k = 1; k <= n; ++k) {
      const Eigen::MatrixXcd ck = dense_matrix(jw_ladder(annihilate(k), n, opt), n);
      const Eigen::MatrixXcd cdk = dense_matrix(jw_ladder(create(k), n, opt), n);
      const Eigen::MatrixXcd mixed = cj * cdk + cdk * cj;
      EXPECT_LT((mixed - (j == k ? id : Eigen::MatrixXcd::Zero(16, 16))).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((cj * ck + ck * cj).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((cdj * cdk + cdk * cdj).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(TailSign, Anticommutators, ::testing::Values(1, -1),
                         [](const auto& info) { return info.param > 0 ? std::string("plus") : std::string("minus"); });

TEST(JordanWigner, NumberOperatorOnEmptyIsUp) {
  FermionHamiltonian fh(1);
  fh.add(1.0, {create(1), annihilate(1)});
  const auto h = term_map(jordan_wigner(fh));
  ASSERT_EQ(h.size(), 2u);
  EXPECT_DOUBLE_EQ(h.at("I"), 0.5);
  EXPECT_DOUBLE_EQ(h.at("Z"), 0.5);
}

TEST(JordanWigner, ParityStringFollowsModeQubit) {
  const auto c = jw_ladder(create(2), 4);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].letters, "IXZZ");
  EXPECT_EQ(c[1].letters, "IYZZ");
  EXPECT_EQ(c[0].coefficient, Complex(0.5));
  EXPECT_EQ(c[1].coefficient, Complex(0, 0.5));
  const auto neg = jw_ladder(create(2), 4, {{}, -1});
  EXPECT_EQ(neg[0].coefficient, Complex(0.5));
  const auto neg1 = jw_ladder(create(1), 4, {{}, -1});
  EXPECT_EQ(neg1[0].coefficient, Complex(-0.5));
  const auto moved = jw_ladder(create(1), 4, {{3, 1, 2, 4}, 1});
  EXPECT_EQ(moved[0].letters, "IIXZ");
}

TEST(JordanWigner, Errors) {
  FermionHamiltonian fh(2);
  fh.add(1.0, {create(1), annihilate(2)});
  EXPECT_THROW(jordan_wigner(fh), InputError);
  EXPECT_THROW(fh.add(1.0, {create(3)}), InputError);
  EXPECT_THROW(fh.add(1.0, {}), InputError);
  EXPECT_THROW(jw_ladder(create(1), 2, {{}, 2}), InputError);
  EXPECT_THROW(jw_ladder(create(1), 2, {{1, 1}, 1}), InputError);
  EXPECT_THROW(jw_ladder(create(1), 2, {{1}, 1}), InputError);
  EXPECT_THROW(FermionHamiltonian(0), InputError);
}

TEST(JordanWigner, ConjugatePairIsHermitian) {
  auto rng = make_rng(403);
  for (int k = 0; k < 20; ++k) {
    FermionHamiltonian fh(4);
    const int a = testing::uniform_int(rng, 1, 4), b = testing::uniform_int(rng, 1, 4);
    const int c = testing::uniform_int(rng, 1, 4), d = testing::uniform_int(rng, 1, 4);
    fh.add_with_conjugate(uniform(rng, -1, 1), {create(a), annihilate(b), create(c), annihilate(d)});
    const auto h = jordan_wigner(fh);
    const Eigen::MatrixXcd m = dense_matrix(h);
    EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((sorted_spectrum(m) - sorted_spectrum(fock_matrix(fh))).cwiseAbs().maxCoeff(), 1e-10);
  }
}

}  // namespace
}  // namespace qdsim
