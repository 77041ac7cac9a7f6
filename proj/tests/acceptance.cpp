// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one criterion per block, one PASS/FAIL line each.
// Exit code 0 iff every criterion passes.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ia/dof.hpp"
#include "ia/linear.hpp"
#include "ia/linksim.hpp"
#include "ia/rational_scheme.hpp"
#include "ia/rng.hpp"
#include "ia/serialize.hpp"

using namespace ia;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<double> kGrid{1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8};
// DoF is a P -> infinity limit; the wide grid's tail window reaches the linear
// regime of the worst-conditioned stream (post-ZF gains down to ~1e-8).
const std::vector<double> kWideGrid{1e2, 1e4, 1e6, 1e8, 1e10, 1e12, 1e14, 1e16};

int g_failures = 0;

void criterion(int number, const std::string& what, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

CompoundScenario complex_bc(std::vector<int> states, std::uint64_t seed) {
    CompoundScenario sc;
    sc.network = Network::bc;
    sc.setting = Setting::complex_;
    sc.tx_count = 2;
    sc.user_count = 2;
    sc.states = std::move(states);
    sc.seed = seed;
    return sc;
}

CompoundScenario real_scenario(Network net, int tx, std::vector<int> states, std::uint64_t seed) {
    CompoundScenario sc;
    sc.network = net;
    sc.setting = Setting::real;
    sc.tx_count = tx;
    sc.user_count = static_cast<int>(states.size());
    sc.states = std::move(states);
    sc.seed = seed;
    return sc;
}

double measured(const VerificationLedger& ledger, const std::string& name) {
    for (const auto& c : ledger.checks)
        if (c.name == name) return c.measured;
    return std::nan("");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

}  // namespace

int main() {
    // 1. Theorem 1: 100% ledger passes over >= 100 seeds; slope 1.50 +- 0.05.
    criterion(1, "theorem 1: 100/100 ledgers pass, slope 1.50 +- 0.05", [](std::string& d) {
        int pass = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto [s, ledger] = build_theorem1_scheme(sample_channel(complex_bc({1, 3}, seed)));
            if (ledger.all_pass()) ++pass;
        }
        double worst = 1.5;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto [s, ledger] = build_theorem1_scheme(sample_channel(complex_bc({1, 3}, seed)));
            const auto sweep = zf_rate_sweep(s, kWideGrid);
            if (std::abs(sweep.slope - 1.5) > std::abs(worst - 1.5)) worst = sweep.slope;
        }
        d = "passes=" + std::to_string(pass) + "/100, worst slope=" + fmt(worst);
        return pass == 100 && std::abs(worst - 1.5) <= 0.05;
    });

    // 2. Theorem 2: six rank-12 checks pass on 100% of seeds; slope 1.333 +- 0.05;
    //    symmetric signaling detects rank deficiency on 100% of seeds.
    criterion(2, "theorem 2: ledgers 100%, slope 1.333 +- 0.05, symmetric negative 100%",
              [](std::string& d) {
                  int pass = 0, sym = 0;
                  for (std::uint64_t seed = 0; seed < 100; ++seed) {
                      const auto ch = sample_channel(complex_bc({3, 3}, seed));
                      const auto [s, ledger] = build_theorem2_scheme(ch);
                      int rank12 = 0;
                      for (const auto& c : ledger.checks)
                          if (c.name.rfind("decodability_rank", 0) == 0 && c.pass) ++rank12;
                      if (ledger.all_pass() && rank12 == 6) ++pass;
                      const auto neg = check_symmetric_signaling_fails(ch);
                      if (measured(neg, "symmetric_decodability_deficiency") >= 1.0) ++sym;
                  }
                  double worst = 4.0 / 3.0;
                  for (std::uint64_t seed = 0; seed < 5; ++seed) {
                      const auto [s, ledger] =
                          build_theorem2_scheme(sample_channel(complex_bc({3, 3}, seed)));
                      const auto sweep = zf_rate_sweep(s, kWideGrid);
                      if (std::abs(sweep.slope - 4.0 / 3.0) > std::abs(worst - 4.0 / 3.0))
                          worst = sweep.slope;
                  }
                  d = "passes=" + std::to_string(pass) + "/100, symmetric=" + std::to_string(sym) +
                      "/100, worst slope=" + fmt(worst);
                  return pass == 100 && sym == 100 && std::abs(worst - 4.0 / 3.0) <= 0.05;
              });

    // 3. Weingarten baseline: protected dimension exactly 7 per user on 100% of
    //    seeds, random combiners give 9, slope 1.20 +- 0.05.
    criterion(3, "weingarten: protected dims (7,7) 100%, random 9, slope 1.20 +- 0.05",
              [](std::string& d) {
                  int dims_ok = 0, random_ok = 0;
                  for (std::uint64_t seed = 0; seed < 100; ++seed) {
                      const auto ch = sample_channel(complex_bc({3, 3}, seed));
                      const auto [s, ledger] = build_weingarten_baseline(ch);
                      if (measured(ledger, "protected_dim[u1]") == 7.0 &&
                          measured(ledger, "protected_dim[u2]") == 7.0 && ledger.all_pass())
                          ++dims_ok;
                      // random combiners on the same channels span 9 dimensions
                      GaussianStream g(seed, rng_tag::random_combiner);
                      Eigen::MatrixXcd prot(10, 9);
                      for (int j = 0; j < 3; ++j) {
                          Eigen::MatrixXcd rnd(5, 3);
                          for (int r = 0; r < 5; ++r)
                              for (int c = 0; c < 3; ++c)
                                  rnd(r, c) = std::complex<double>(g.next(), g.next());
                          prot.block(0, 3 * j, 10, 3) = s.channels[1][j].adjoint() * rnd;
                      }
                      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(prot);
                      int rank = 0;
                      for (int i = 0; i < 9; ++i)
                          if (svd.singularValues()(i) > 1e-8 * svd.singularValues()(0)) ++rank;
                      if (rank == 9) ++random_ok;
                  }
                  double worst = 1.2;
                  for (std::uint64_t seed = 0; seed < 5; ++seed) {
                      const auto [s, ledger] =
                          build_weingarten_baseline(sample_channel(complex_bc({3, 3}, seed)));
                      const auto sweep = zf_rate_sweep(s, kGrid);
                      if (std::abs(sweep.slope - 1.2) > std::abs(worst - 1.2)) worst = sweep.slope;
                  }
                  d = "dims=" + std::to_string(dims_ok) + "/100, random9=" +
                      std::to_string(random_ok) + "/100, worst slope=" + fmt(worst);
                  return dims_ok == 100 && random_ok == 100 && std::abs(worst - 1.2) <= 0.05;
              });

    // 4. MIMO BC examples: slopes 3, 4, 3, 4 (+-0.1) on generic channels; structured
    //    channels raise NO_REAL_EIGENVECTORS on 100% of 100 seeds.
    criterion(4, "appendix C: slopes {3,4,3,4} +- 0.1, structured 100% NO_REAL_EIGENVECTORS",
              [](std::string& d) {
                  struct Var {
                      AppCVariant v;
                      int rx, tx;
                      std::vector<int> states;
                      double want;
                  };
                  const std::vector<Var> vars{{AppCVariant::ex1, 2, 4, {1, 3}, 3.0},
                                              {AppCVariant::ex2, 3, 6, {3, 3}, 4.0},
                                              {AppCVariant::ex3, 2, 4, {1, 4}, 3.0},
                                              {AppCVariant::ex4, 3, 6, {4, 4}, 4.0}};
                  std::string slopes;
                  bool slopes_ok = true;
                  for (const auto& var : vars) {
                      double worst = var.want;
                      for (std::uint64_t seed = 0; seed < 3; ++seed) {
                          const auto [s, ledger] = build_appendixC_scheme(
                              sample_generic_mimo_bc(var.rx, var.tx, var.states, seed), var.v);
                          const auto sweep = zf_rate_sweep(s, kGrid);
                          if (std::abs(sweep.slope - var.want) > std::abs(worst - var.want))
                              worst = sweep.slope;
                      }
                      slopes += fmt(worst) + " ";
                      if (std::abs(worst - var.want) > 0.1) slopes_ok = false;
                  }
                  int structured = 0;
                  for (std::uint64_t seed = 0; seed < 100; ++seed) {
                      try {
                          const auto miso = sample_channel(complex_bc({4, 4}, seed));
                          build_appendixC_scheme(structured_mimo_bc_extended(miso, 3),
                                                 AppCVariant::ex4);
                      } catch (const scheme_error& e) {
                          if (e.code() == errc::no_real_eigenvectors) ++structured;
                      }
                  }
                  d = "slopes=" + slopes + ", structured=" + std::to_string(structured) + "/100";
                  return slopes_ok && structured == 100;
              });

    // 5. Rational schemes, symbolic suite: every inclusion/cardinality/separability
    //    check exact over the grid; finite-n DoF matches hand values and increases.
    criterion(5, "rational symbolic grid exact; finite-n values 3/66, 4/19, 1/22; increasing",
              [](std::string& d) {
                  bool ok = true;
                  std::vector<Rational> bc_vals, x_vals, ic2_vals, ic3_vals;
                  for (int n : {1, 2}) {
                      const auto bc = build_bc_real_scheme(
                          sample_channel(real_scenario(Network::bc, 2, {1, 3}, 7)), n);
                      const auto x = build_x_scheme(
                          sample_channel(real_scenario(Network::x, 2, {2, 2}, 7)), n);
                      const auto ic2 = build_ic_scheme(
                          sample_channel(real_scenario(Network::ic, 2, {1, 1}, 7)), n);
                      const auto ic3 = build_ic_scheme(
                          sample_channel(real_scenario(Network::ic, 3, {1, 1, 1}, 7)), n);
                      ok = ok && bc.checks.all_pass() && x.checks.all_pass() &&
                           ic2.checks.all_pass() && ic3.checks.all_pass();
                      bc_vals.push_back(finite_n_dof(bc));
                      x_vals.push_back(finite_n_dof(x));
                      ic2_vals.push_back(finite_n_dof(ic2));
                      ic3_vals.push_back(finite_n_dof(ic3));
                  }
                  ok = ok && bc_vals[0] == Rational(3, 66) && x_vals[0] == Rational(4, 19) &&
                       ic3_vals[0] == Rational(1, 22);
                  ok = ok && bc_vals[1] > bc_vals[0] && bc_vals[1] < Rational(3, 2);
                  ok = ok && x_vals[1] > x_vals[0] && x_vals[1] < Rational(4, 3);
                  ok = ok && ic2_vals[1] > ic2_vals[0] && ic2_vals[1] < Rational(1);
                  ok = ok && ic3_vals[1] > ic3_vals[0] && ic3_vals[1] < Rational(3, 2);
                  d = "bc(1)=" + to_string(bc_vals[0]) + ", x(1)=" + to_string(x_vals[0]) +
                      ", ic3(1)=" + to_string(ic3_vals[0]);
                  return ok;
              });

    // 6. Conjecture disproof inequalities as exact rational comparisons, surfaced
    //    in reports.
    criterion(6, "conjecture disproof: 4/3 < 3/2 and 6/5 < 4/3, flagged in reports",
              [](std::string& d) {
                  const auto c1 = conjecture_values(2, 1, 3);
                  const auto c2 = conjecture_values(2, 3, 3);
                  bool ok = c1.conj1 && *c1.conj1 == Rational(4, 3) &&
                            *c1.conj1 < dof_bc(2, 2, {1, 3}, Setting::complex_) && c1.disproved;
                  ok = ok && c2.conj2 && *c2.conj2 == Rational(6, 5) &&
                       *c2.conj2 < dof_bc(2, 2, {3, 3}, Setting::complex_) && c2.disproved;
                  DoFReport rep;
                  rep.dof_theoretical = dof_bc(2, 2, {1, 3}, Setting::complex_);
                  rep.dof_conjecture1 = c1.conj1;
                  rep.conjectures_disproved = c1.disproved;
                  const json j = report_to_json(rep);
                  ok = ok && j.at("conjectures_disproved") == true &&
                       j.at("dof_conjecture1").at("num") == "4";
                  d = "conj1=" + to_string(*c1.conj1) + " < 3/2; conj2=" + to_string(*c2.conj2) +
                      " < 4/3";
                  return ok;
              });

    // 7. PAM probe: positive, strictly growing min distance over one decade for
    //    IC K=2, J=[1,1], n=1; forced direct-link collision yields zero distance.
    criterion(7, "PAM probe: distance > 0 and growing over a decade; forced collision -> 0",
              [](std::string& d) {
                  const auto ch = sample_channel(real_scenario(Network::ic, 2, {1, 1}, 7));
                  const auto s = build_ic_scheme(ch, 1);
                  bool ok = s.checks.all_pass();
                  double prev = 0.0;
                  for (int rx = 0; rx < 2 && ok; ++rx) {
                      const auto p1 = pam_constellation_probe(s, rx, 0, 4e6, 1);
                      const auto p2 = pam_constellation_probe(s, rx, 0, 4e7, 1);
                      ok = ok && p1.min_distance > 0 && p2.min_distance > 0 &&
                           p2.min_distance_scaled > p1.min_distance_scaled;
                      prev = p2.min_distance_scaled;
                  }
                  const auto collided = build_ic_scheme(ch, 2, Rational(1, 10),
                                                        kDefaultDirectionCap, true);
                  const auto probe = pam_constellation_probe(collided, 0, 0, 4e6, 1);
                  ok = ok && probe.collision && probe.min_distance == 0 &&
                       !collided.checks.all_pass();
                  d = "scaled distance at 4e7: " + fmt(prev) + "; collision distance 0";
                  return ok;
              });

    // 8. Formula layer: exact rationals on a 20-point grid; the BC denominator
    //    discrepancy flagged in output.
    criterion(8, "formula layer: 20-point grid exact, denominator discrepancy flagged",
              [](std::string& d) {
                  int points = 0;
                  bool ok = true;
                  auto expect = [&](const Rational& got, long long num, long long den) {
                      ok = ok && got == Rational(num, den);
                      ++points;
                  };
                  expect(dof_x(1, 1), 1, 1);
                  expect(dof_x(2, 2), 4, 3);
                  expect(dof_x(2, 3), 3, 2);
                  expect(dof_x(3, 3), 9, 5);
                  expect(dof_x(4, 2), 8, 5);
                  expect(dof_x(5, 5), 25, 9);
                  expect(dof_x(100, 2), 200, 101);
                  expect(dof_ic(1), 1, 2);
                  expect(dof_ic(2), 1, 1);
                  expect(dof_ic(3), 3, 2);
                  expect(dof_ic(7), 7, 2);
                  expect(dof_bc(2, 2, {1, 1}, Setting::real), 2, 1);
                  expect(dof_bc(2, 2, {1, 3}, Setting::real), 3, 2);
                  expect(dof_bc(3, 2, {2, 7}, Setting::real), 5, 3);
                  expect(dof_bc(2, 2, {2, 2}, Setting::real), 4, 3);
                  expect(dof_bc(3, 3, {3, 3, 3}, Setting::real), 9, 5);
                  expect(dof_bc(2, 4, {2, 2, 2, 2}, Setting::real), 8, 5);
                  expect(dof_bc(2, 2, {1, 3}, Setting::complex_), 3, 2);
                  expect(dof_bc(2, 2, {3, 3}, Setting::complex_), 4, 3);
                  expect(dof_complex_x_via_real(1), 1, 2);
                  expect(dof_complex_x_via_real(3), 1, 1);
                  expect(dof_complex_x_via_real(4), 8, 7);
                  const std::string note = kBcDenominatorDiscrepancyNote;
                  ok = ok && note.find("M-N+1") != std::string::npos &&
                       note.find("M+N-1") != std::string::npos;
                  d = std::to_string(points) + " grid points checked exactly";
                  return ok && points >= 20;
              });

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: " + std::to_string(g_failures))
              << "\n";
    return g_failures == 0 ? 0 : 1;
}
