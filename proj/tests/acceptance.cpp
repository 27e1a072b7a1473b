// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [N]   (N in 1..10 runs a single criterion)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <ssprk/ssprk.hpp>

#include "oracles.hpp"

using namespace ssprk;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream log;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    FAIL " << what << '\n';
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    const bool pass = std::abs(got - want) <= tol;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: got %.16g want %.16g tol %.1e (diff %.3e)", what.c_str(), got, want, tol,
                  std::abs(got - want));
    if (!pass) ok = false;
    log << "    " << (pass ? "ok   " : "FAIL ") << buf << '\n';
  }
};

double optimal_radius_oracle() {
  return oracle::bisect_root([](double x) { return ((x - 5.0) * x + 10.0) * x - 10.0; }, 2.0, 3.0);
}

void ac1(Check& c) {
  c.near(radius_absolute_monotonicity(catalog_lookup("ssp43").tableau), 2.0, 1e-9, "ssp43");
  const double r = optimal_radius_oracle();
  for (const char* id : {"ssp53_r", "ssp53_h", "ssp53_1", "ssp53_2"})
    c.near(radius_absolute_monotonicity(catalog_lookup(id).tableau), r, 1e-6, id);
  c.near(radius_absolute_monotonicity(catalog_lookup("ssp53_2nstar_1").tableau), 2.180749177932739, 1e-9,
         "ssp53_2nstar_1");
  c.near(radius_absolute_monotonicity(catalog_lookup("ssp53_2nstar_2").tableau), 2.1487419827223833, 1e-9,
         "ssp53_2nstar_2");
  c.near(radius_absolute_monotonicity(catalog_lookup("ssp53_w1").tableau), 1.0, 1e-4, "ssp53_w1");
  c.near(radius_absolute_monotonicity(catalog_lookup("ssp53_w2").tableau), 1.4015, 1e-4, "ssp53_w2");
  c.near(radius_absolute_monotonicity(catalog_lookup("ssp53_vdh").tableau), 1.4828, 1e-4, "ssp53_vdh");
}

void ac2(Check& c) {
  for (const auto& id : table1_ids()) {
    const auto rec = catalog_lookup(id);
    c.expect(rec.ref_error_const.has_value(), id + " has a printed error constant");
    if (rec.ref_error_const) c.near(error_constant(rec.tableau, rec.order_tol), *rec.ref_error_const, 1e-6, id);
  }
  c.near(error_constant(catalog_lookup("ssp43").tableau), std::sqrt(3.0) / 48.0, 1e-17, "ssp43 = sqrt(3)/48");
}

void ac3(Check& c) {
  const double r = optimal_radius_oracle();
  for (const char* id : {"ssp53_r", "ssp53_h", "ssp53_1", "ssp53_2"}) {
    const auto sp = stability_polynomial(catalog_lookup(id).tableau);
    c.near(sp.coeffs[4], 1.0 / (12.0 * r), 1e-12, std::string(id) + " coeff[4]");
    c.near(sp.coeffs[5], 1.0 / (60.0 * r * r), 1e-12, std::string(id) + " coeff[5]");
  }
  const auto sp = stability_polynomial(catalog_lookup("ssp53_2nstar_2").tableau);
  c.near(sp.coeffs[4], 0.029448369208272717, 1e-12, "ssp53_2nstar_2 coeff[4]");
  c.near(sp.coeffs[5], 0.0019397052596758003, 1e-12, "ssp53_2nstar_2 coeff[5]");
  c.near(real_stability_interval(sp), -7.26, 5e-2, "ssp53_2nstar_2 real interval");
}

void ac4(Check& c) {
  for (const auto& rec : catalog_list()) {
    if (!rec.shu_osher) continue;
    c.near(max_abs_diff(shu_osher_to_butcher(*rec.shu_osher), rec.tableau), 0.0, 1e-11, rec.id + " reconstruction");
    c.near(representation_ssp_coefficient(*rec.shu_osher), rec.ref_ssp, rec.ref_ssp_tol, rec.id + " coefficient");
  }
}

void ac5(Check& c) {
  int records = 0;
  for (const auto& rec : catalog_list()) {
    ++records;
    const std::string label = storage_label(rec);
    std::string expected;
    if (!rec.ref_storage) expected = "naive";
    else if (*rec.ref_storage == StorageClass::TwoNStar) expected = "2N*";
    else if (*rec.ref_storage == StorageClass::General) expected = ">=3N";
    else expected = "3N";
    c.expect(label == expected, rec.id + ": " + label + " vs " + expected);
    c.log << "    " << (label == expected ? "ok   " : "FAIL ") << rec.id << " " << label << " (tabulated "
          << rec.ref_registers << ")\n";
    if (rec.ref_storage) c.expect(classify(*rec.shu_osher) == *rec.ref_storage, rec.id + " class");
    if (const auto prog = register_program(rec)) {
      StepInstrumentation instr;
      auto f = [](std::span<const double> y, std::span<double> dy) {
        for (std::size_t i = 0; i < y.size(); ++i) dy[i] = -y[i] * y[i];
      };
      step_registers(*prog, std::vector<double>{0.2, 0.4, 0.6}, 0.01, f, &instr);
      const int want = prog->algorithm == StorageClass::TwoNStar ? 2 : 3;
      c.expect(instr.peak_registers == want, rec.id + " peak registers " + std::to_string(instr.peak_registers));
      c.log << "    registers " << rec.id << " " << instr.peak_registers << '\n';
    }
  }
  c.expect(records == 11, "11 records");
}

void ac6(Check& c) {
  std::vector<MethodRecord> methods;
  for (const auto& r : catalog_list())
    if (register_program(r)) methods.push_back(r);
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0), hd(0.01, 0.2);
  std::uniform_int_distribution<std::size_t> dim(1, 10);
  for (const auto& rec : methods) {
    const auto prog = *register_program(rec);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = dim(gen);
      std::vector<double> lin(n * n), quad(n), y(n);
      for (auto& v : lin) v = u(gen);
      for (auto& v : quad) v = 0.5 * u(gen);
      for (auto& v : y) v = u(gen);
      auto f = [&](std::span<const double> x, std::span<double> dx) {
        for (std::size_t i = 0; i < n; ++i) {
          double acc = quad[i] * x[i] * x[i] + std::sin(x[(i + 1) % n]);
          for (std::size_t j = 0; j < n; ++j) acc += lin[i * n + j] * x[j];
          dx[i] = acc;
        }
      };
      const double h = hd(gen);
      const auto a = step_registers(prog, y, h, f);
      const auto b = step_naive(rec.tableau, y, h, f);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(b[i]));
      }
      worst = std::max(worst, num / std::max(den, 1e-300));
    }
    c.near(worst, 0.0, 1e-12, rec.id + " worst relative difference");
  }
  c.expect(methods.size() >= 7, "low-storage methods found");
}

void ac7(Check& c) {
  const auto cert = certify_no_2nstar_ssp53();
  const double r = optimal_radius_oracle();
  const double p = 3 * std::pow(r, 4) - 40 * std::pow(r, 3) + 175 * r * r - 330 * r + 250;
  c.log << "    p(r) = " << p << " at r = " << r << '\n';
  c.expect(std::abs(p) > 1e-3, "|p(r)| > 1e-3");
  c.expect(cert.contradiction, "certificate reports a contradiction");
  c.near(cert.p_value, p, 1e-10, "certificate p(r)");
}

void ac8(Check& c) {
  for (auto [variant, name, floor] : {std::tuple{OptimizeVariant::Full, "full", 2.1797},
                                      std::tuple{OptimizeVariant::Constrained, "constrained", 2.1477}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = optimize_2nstar(variant);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[256];
    std::snprintf(buf, sizeof buf, "    %s: r = %.10f (u %.5f v %.5f w %.5f x %.5f) in %.2f s\n", name, res.r,
                  res.params.u, res.params.v, res.params.w, res.params.x, secs);
    c.log << buf;
    c.expect(res.r >= floor, std::string(name) + " r >= floor");
    c.expect(res.storage == StorageClass::TwoNStar, std::string(name) + " classifies TwoNStar");
    c.expect(max_abs(res.order_residuals) <= 1e-9, std::string(name) + " order residuals");
    c.expect(secs < 120.0, std::string(name) + " under 2 minutes");
  }
}

void ac9(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto t = table1(BLConfig{}, true);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.log << "    parallel table in " << secs << " s\n";
  c.expect(t.dt_fe_obs >= 0.0023 && t.dt_fe_obs <= 0.0027, "dt_fe_obs in [0.0023, 0.0027]");
  c.log << "    dt_fe_obs " << t.dt_fe_obs << '\n';
  for (const auto& row : t.rows) {
    const auto rec = catalog_lookup(row.id);
    c.near(row.observed_coeff, *rec.ref_observed, 0.10, row.id + " observed");
  }
  c.expect(secs < 180.0, "parallel table under 3 minutes");
}

void ac10(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(10);

  // Feasible set of r is [0, R].
  for (const auto& rec : catalog_list()) {
    const auto m = extended_matrix(rec.tableau);
    const double r = radius_absolute_monotonicity(m).radius;
    std::uniform_real_distribution<double> below(0.0, r - 1e-9), above(r + 1e-6, 2.0 * rec.stages);
    bool ok = true;
    for (int k = 0; k < 20; ++k)
      ok = ok && monotonicity_feasible(m, below(gen)).feasible && !monotonicity_feasible(m, above(gen)).feasible;
    c.expect(ok, rec.id + " feasibility interval");
  }

  // Invariance transforms.
  std::vector<MethodRecord> forms;
  for (const auto& r : catalog_list())
    if (r.shu_osher) forms.push_back(r);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& rec = forms[static_cast<std::size_t>(trial) % forms.size()];
    const std::size_t n = rec.shu_osher->dim();
    const std::size_t j = std::uniform_int_distribution<std::size_t>(1, n - 2)(gen);
    const std::size_t i = std::uniform_int_distribution<std::size_t>(j + 1, n - 1)(gen);
    const auto g = invariance_transform(*rec.shu_osher, i, j, std::uniform_real_distribution<double>(-1, 1)(gen));
    worst = std::max(worst, max_abs_diff(shu_osher_to_butcher(g), rec.tableau));
  }
  c.near(worst, 0.0, 1e-11, "invariance transforms, worst tableau change");

  // lambda_61 = 0 on family members satisfying the first two order conditions.
  const double r = optimal_radius_oracle();
  double worst61 = 0.0;
  std::uniform_real_distribution<double> b(0.02, 0.3);
  for (int k = 0; k < 100; ++k) {
    Family53Params p;
    p.r = r;
    p.b1 = b(gen);
    p.b2 = b(gen);
    p.b4 = b(gen);
    p.b5 = 1.0 - p.b1 - p.b2 - p.b4 - r * r / 60.0;
    p.a51 = (r / 2.0 - 7.0 * r * r / 60.0 - p.b2 - p.b4) / (p.b5 * r);
    worst61 = std::max(worst61, std::abs(family53_lambda61(p)));
  }
  c.near(worst61, 0.0, 1e-11, "lambda61 identity, worst");

  // Conservation and translation equivariance of the semi-discretization.
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  bool conservative = true, equivariant = true;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> u(64);
    for (auto& v : u) v = u01(gen);
    const auto f = bl_rhs(u);
    double sum = 0.0, scale = 0.0;
    for (double v : f) {
      sum += v;
      scale += std::abs(v);
    }
    conservative = conservative && std::abs(sum) <= 1e-13 * scale;
    auto shifted = u;
    std::rotate(shifted.begin(), shifted.begin() + k + 1, shifted.end());
    auto expected = f;
    std::rotate(expected.begin(), expected.begin() + k + 1, expected.end());
    equivariant = equivariant && bl_rhs(shifted) == expected;
  }
  c.expect(conservative, "conservation");
  c.expect(equivariant, "translation equivariance");

  // Convergence order on y' = -y.
  for (const auto& rec : catalog_list()) c.near(convergence_order(rec).slope, 3.0, 0.1, rec.id + " slope");

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < 60.0, "under 1 minute");
}

const std::vector<std::pair<std::string, std::function<void(Check&)>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<void(Check&)>>> list{
      {"SSP coefficients", ac1},        {"error constants", ac2},
      {"stability polynomials", ac3},   {"representation integrity", ac4},
      {"storage classification", ac5},  {"executor equivalence", ac6},
      {"no 2N* certificate", ac7},      {"2N* optimizer", ac8},
      {"Buckley-Leverett observed", ac9}, {"property suites", ac10},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  if (only < 0 || only > 10) {
    std::fprintf(stderr, "usage: acceptance [1..10]\n");
    return 2;
  }
  bool all_ok = true;
  for (std::size_t k = 0; k < criteria().size(); ++k) {
    const int n = static_cast<int>(k) + 1;
    if (only && n != only) continue;
    Check c;
    try {
      criteria()[k].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.log << "    exception: " << e.what() << '\n';
    }
    std::printf("%s", c.log.str().c_str());
    std::printf("AC%d %s: %s\n", n, criteria()[k].first.c_str(), c.ok ? "PASS" : "FAIL");
    all_ok = all_ok && c.ok;
  }
  return all_ok ? 0 : 1;
}
