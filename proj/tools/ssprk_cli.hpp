#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ssprk/ssprk.hpp>

namespace ssprk::cli {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

namespace detail {

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::string sci(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

inline std::string human(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Relative output paths are placed under $SSPRK_OUTPUT_DIR when it is set.
inline std::filesystem::path output_path(const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("SSPRK_OUTPUT_DIR"); dir && *dir) {
      std::filesystem::create_directories(dir);
      return std::filesystem::path(dir) / path;
    }
  }
  return path;
}

inline void write_file(const std::string& p, const std::string& content) {
  const auto path = output_path(p);
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  f << content;
}

/// Catalog id, or a path to a method JSON file.
inline MethodRecord resolve_method(const std::string& arg) {
  if (arg.ends_with(".json") || std::filesystem::is_regular_file(arg)) {
    std::ifstream f(arg);
    if (!f) throw Error(ErrorCode::UnknownMethod, "cannot open method file '" + arg + "'");
    auto doc = read_method_json(f);
    MethodRecord rec{arg, doc.name, static_cast<int>(doc.tableau.stages()), doc.order, doc.tableau, doc.shu_osher};
    return rec;
  }
  return catalog_lookup(arg);
}

/// The record's own Shu-Osher form, or the sparsified optimal one at R.
inline ShuOsherForm representation_for(const MethodRecord& rec) {
  if (rec.shu_osher) return *rec.shu_osher;
  const auto m = extended_matrix(rec.tableau);
  const double r = radius_absolute_monotonicity(m).radius;
  return sparsify_gamma(canonical_optimal_representation(m, r));
}

inline void print_certificate(std::ostream& os, const OptimalityCertificate& c) {
  os << "certificate.r " << format_number(c.r) << '\n'
     << "certificate.min_lambda " << format_number(c.min_lambda) << '\n'
     << "certificate.min_gamma " << format_number(c.min_gamma) << '\n'
     << "certificate.min_alpha " << format_number(c.min_alpha) << '\n'
     << "certificate.min_lambda_minus_r_gamma " << format_number(c.min_lambda_minus_r_gamma) << '\n'
     << "certificate.holds " << (c.holds() ? "true" : "false") << '\n';
}

inline std::string theoretical_label(double r) {
  if (std::abs(r - std::round(r)) < 1e-6) return std::to_string(static_cast<long>(std::round(r)));
  return fixed(r, 4);
}

inline std::string registers_label(const MethodRecord& rec) {
  return rec.shu_osher ? storage_label(rec) : rec.ref_registers;
}

}  // namespace detail

inline CommandResult dispatch(const std::vector<std::string>& args) {
  CommandResult result;
  std::ostringstream out;

  CLI::App app{"Strong-stability-preserving Runge-Kutta toolkit", "ssprk"};
  app.require_subcommand(1);

  // catalog
  auto* cat = app.add_subcommand("catalog", "List or export built-in methods");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "Table of id, s, p, ref_ssp, storage");
  std::string list_format = "table";
  cat_list->add_option("--format", list_format)->check(CLI::IsMember({"table", "csv"}));
  auto* cat_export = cat->add_subcommand("export", "Method JSON of a catalog entry");
  std::string export_id;
  cat_export->add_option("id", export_id)->required();

  // ssp-coefficient
  auto* sspc = app.add_subcommand("ssp-coefficient", "Radius of absolute monotonicity and certificate");
  std::string sspc_method;
  double sspc_tol = 1e-12;
  sspc->add_option("method", sspc_method, "catalog id or method JSON file")->required();
  sspc->add_option("--tol", sspc_tol, "bisection tolerance");

  // canonicalize
  auto* canon = app.add_subcommand("canonicalize", "Sparsified optimal Shu-Osher form as JSON");
  std::string canon_method;
  canon->add_option("method", canon_method)->required();

  // classify
  auto* cls = app.add_subcommand("classify", "Low-storage class of a method");
  std::string cls_method;
  cls->add_option("method", cls_method)->required();

  // stability
  auto* stab = app.add_subcommand("stability", "Stability polynomial, real interval, region grid");
  std::string stab_method, stab_out;
  bool stab_real = false;
  double re_min = -8, re_max = 2, im_min = -5, im_max = 5;
  int nx = 201, ny = 201;
  stab->add_option("method", stab_method)->required();
  stab->add_flag("--real-interval", stab_real, "print the real stability interval only");
  stab->add_option("--grid", stab_out, "write the region grid as CSV to this file");
  stab->add_option("--re-min", re_min);
  stab->add_option("--re-max", re_max);
  stab->add_option("--im-min", im_min);
  stab->add_option("--im-max", im_max);
  stab->add_option("--nx", nx)->check(CLI::PositiveNumber);
  stab->add_option("--ny", ny)->check(CLI::PositiveNumber);

  // bl-sweep
  auto* sweep = app.add_subcommand("bl-sweep", "Buckley-Leverett TV ratio sweep");
  std::string sweep_method, sweep_out;
  BLConfig cfg;
  bool sweep_parallel = false;
  sweep->add_option("--method", sweep_method)->required();
  sweep->add_option("--n", cfg.n);
  sweep->add_option("--t-end", cfg.t_end);
  sweep->add_option("--dt-min", cfg.dt_min);
  sweep->add_option("--dt-max", cfg.dt_max);
  sweep->add_option("--dt-step", cfg.dt_step);
  sweep->add_option("--out", sweep_out, "CSV file (dt,mu); stdout if omitted");
  sweep->add_flag("--parallel", sweep_parallel);

  // convergence
  auto* conv = app.add_subcommand("convergence", "Observed order on y' = -y");
  std::string conv_method;
  conv->add_option("--method", conv_method)->required();

  // optimize
  auto* opt = app.add_subcommand("optimize", "Search for the optimal 2N* SSP(5,3) scheme");
  std::string variant = "full";
  OptimizeOptions oo;
  opt->add_option("--variant", variant)->check(CLI::IsMember({"full", "constrained"}));
  opt->add_option("--seeds", oo.seeds)->check(CLI::PositiveNumber);
  opt->add_option("--rtol", oo.r_tol);
  opt->add_option("--rng-seed", oo.rng_seed);
  opt->add_flag("--parallel", oo.parallel);

  // table1
  auto* tab = app.add_subcommand("table1", "Theoretical and observed SSP coefficients of the 5-stage methods");
  std::string tab_format = "csv";
  bool tab_parallel = false;
  tab->add_option("--format", tab_format)->check(CLI::IsMember({"csv", "json", "table"}));
  tab->add_flag("--parallel", tab_parallel);

  std::vector<const char*> argv{"ssprk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    result.out = o.str();
    result.err = er.str();
    result.exit_code = code == 0 ? 0 : 2;
    return result;
  }

  try {
    if (cat_list->parsed()) {
      if (list_format == "csv") out << "id,s,p,ref_ssp,storage\n";
      else out << std::left << std::setw(18) << "id" << std::setw(4) << "s" << std::setw(4) << "p" << std::setw(12)
               << "ref_ssp" << "storage\n";
      for (const auto& r : catalog_list()) {
        const std::string storage = r.ref_storage ? std::string(to_string(*r.ref_storage)) : "naive";
        if (list_format == "csv")
          out << r.id << ',' << r.stages << ',' << r.order << ',' << format_number(r.ref_ssp) << ',' << storage << '\n';
        else
          out << std::left << std::setw(18) << r.id << std::setw(4) << r.stages << std::setw(4) << r.order
              << std::setw(12) << detail::human(r.ref_ssp) << storage << '\n';
      }
    } else if (cat_export->parsed()) {
      out << export_json(catalog_lookup(export_id));
    } else if (sspc->parsed()) {
      const auto rec = detail::resolve_method(sspc_method);
      const auto m = extended_matrix(rec.tableau);
      const auto rr = radius_absolute_monotonicity(m, 0.0, sspc_tol);
      out << "method " << rec.id << '\n' << "R " << format_number(rr.radius) << '\n';
      if (rr.saturated) out << "saturated true\n";
      if (rr.radius > 0.0) detail::print_certificate(out, certify_representation(canonical_optimal_representation(m, rr.radius), rr.radius));
    } else if (canon->parsed()) {
      const auto rec = detail::resolve_method(canon_method);
      const auto m = extended_matrix(rec.tableau);
      const double r = radius_absolute_monotonicity(m).radius;
      const auto f = sparsify_gamma(canonical_optimal_representation(m, r));
      write_method_json(out, rec.name, rec.order, rec.tableau, f);
      out << '\n';
    } else if (cls->parsed()) {
      const auto rec = detail::resolve_method(cls_method);
      const auto f = detail::representation_for(rec);
      const auto c = classify(f);
      out << "class " << to_string(c) << '\n' << "registers " << register_count(c) << '\n';
      if (c == StorageClass::General && f.stages() == 5) {
        out << "nonzero";
        for (auto [i, j, name] : {std::tuple{4, 1, "lambda52"}, std::tuple{5, 1, "lambda62"}, std::tuple{5, 2, "lambda63"}})
          if (std::abs(f.lambda(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) > 1e-12) out << ' ' << name;
        out << '\n';
      }
    } else if (stab->parsed()) {
      const auto rec = detail::resolve_method(stab_method);
      const auto sp = stability_polynomial(rec.tableau);
      if (stab_real) {
        out << format_number(real_stability_interval(sp)) << '\n';
      } else {
        out << "coefficients";
        for (double c : sp.coeffs) out << ' ' << format_number(c);
        out << '\n' << "real_interval " << format_number(real_stability_interval(sp)) << '\n';
        if (!stab_out.empty()) {
          std::ostringstream csv;
          write_csv(stability_region_grid(sp, {re_min, re_max}, {im_min, im_max}, static_cast<std::size_t>(nx),
                                          static_cast<std::size_t>(ny)),
                    csv);
          detail::write_file(stab_out, csv.str());
          out << "grid " << detail::output_path(stab_out).string() << '\n';
        }
      }
    } else if (sweep->parsed()) {
      cfg.validate();
      const auto rec = detail::resolve_method(sweep_method);
      const double fe = forward_euler_dt_obs(cfg, sweep_parallel);
      // fe is 0 when forward Euler fails on the whole grid
      const auto s = summarize_sweep(mu_sweep(rec, cfg, sweep_parallel), cfg.mu_tol, fe);
      std::ostringstream csv;
      csv << "dt,mu\n";
      for (const auto& [dt, mu] : s.pairs) csv << format_number(dt) << ',' << format_number(mu) << '\n';
      if (sweep_out.empty()) out << csv.str();
      else detail::write_file(sweep_out, csv.str());
      out << "dt_obs=" << format_number(s.dt_obs) << " dt_fe_obs=" << format_number(s.dt_fe_obs)
          << " observed_coeff=" << (fe > 0.0 ? detail::fixed(s.observed_coeff, 4) : std::string("n/a"))
          << " largest_pass=" << format_number(s.dt_largest_pass)
          << " non_monotone=" << (s.non_monotone_onset ? "true" : "false") << '\n';
    } else if (conv->parsed()) {
      const auto rec = detail::resolve_method(conv_method);
      const auto rep = convergence_order(rec);
      out << "h,error\n";
      for (std::size_t k = 0; k < rep.h.size(); ++k)
        out << format_number(rep.h[k]) << ',' << format_number(rep.error[k]) << '\n';
      out << "slope " << detail::fixed(rep.slope, 4) << '\n';
    } else if (opt->parsed()) {
      const auto v = variant == "full" ? OptimizeVariant::Full : OptimizeVariant::Constrained;
      const auto res = optimize_2nstar(v, oo);
      const std::string name = v == OptimizeVariant::Full ? "SSP53_2N*_opt" : "SSP53_2N*_opt_constrained";
      out << "{\n  \"method\": ";
      write_method_json(out, name, 3, res.tableau, res.shu_osher, "  ");
      out << ",\n  \"certificate\": {\n";
      out << "    \"certified_r\": " << format_number(res.r) << ",\n";
      out << "    \"bisection_r\": " << format_number(res.r_bisection) << ",\n";
      out << "    \"representation_r\": " << format_number(representation_ssp_coefficient(res.shu_osher)) << ",\n";
      out << "    \"order_residuals\": [";
      for (std::size_t k = 0; k < res.order_residuals.size(); ++k)
        out << (k ? ", " : "") << format_number(res.order_residuals[k]);
      out << "],\n";
      out << "    \"error_constant\": " << format_number(res.error_constant) << ",\n";
      out << "    \"storage\": \"" << to_string(res.storage) << "\",\n";
      out << "    \"u\": " << format_number(res.params.u) << ",\n    \"v\": " << format_number(res.params.v)
          << ",\n    \"w\": " << format_number(res.params.w) << ",\n    \"x\": " << format_number(res.params.x) << ",\n";
      out << "    \"pattern\": {\"u_eq_v\": " << std::boolalpha << res.pattern.u_eq_v
          << ", \"v_eq_w\": " << res.pattern.v_eq_w << ", \"x_eq_1\": " << res.pattern.x_eq_1 << "},\n";
      out << "    \"seed_index\": " << res.seed_index << "\n  }\n}\n";
    } else if (tab->parsed()) {
      const auto t = table1(BLConfig{}, tab_parallel);
      if (tab_format == "csv") {
        out << "method,stages,order,ssp_coefficient,observed,error_constant,registers\n";
        for (const auto& r : t.rows) {
          const auto rec = catalog_lookup(r.id);
          out << r.name << ',' << r.stages << ',' << r.order << ',' << detail::theoretical_label(r.ssp_coefficient)
              << ',' << detail::fixed(r.observed_coeff, 2) << ',' << detail::sci(r.error_constant, 5) << ','
              << detail::registers_label(rec) << '\n';
        }
      } else if (tab_format == "json") {
        out << "{\n  \"dt_fe_obs\": " << format_number(t.dt_fe_obs) << ",\n  \"rows\": [\n";
        for (std::size_t k = 0; k < t.rows.size(); ++k) {
          const auto& r = t.rows[k];
          out << "    {\"id\": \"" << r.id << "\", \"name\": " << json_escape(r.name) << ", \"stages\": " << r.stages
              << ", \"order\": " << r.order << ", \"ssp_coefficient\": " << format_number(r.ssp_coefficient)
              << ", \"observed\": " << format_number(r.observed_coeff)
              << ", \"dt_obs\": " << format_number(r.sweep.dt_obs)
              << ", \"dt_largest_pass\": " << format_number(r.sweep.dt_largest_pass)
              << ", \"error_constant\": " << format_number(r.error_constant) << ", \"registers\": \""
              << detail::registers_label(catalog_lookup(r.id)) << "\"}" << (k + 1 < t.rows.size() ? "," : "")
              << '\n';
        }
        out << "  ]\n}\n";
      } else {
        out << "dt_fe_obs " << detail::human(t.dt_fe_obs) << '\n';
        out << std::left << std::setw(16) << "method" << std::setw(4) << "s" << std::setw(4) << "p" << std::setw(10)
            << "R" << std::setw(10) << "observed" << std::setw(14) << "error_const" << "registers\n";
        for (const auto& r : t.rows)
          out << std::left << std::setw(16) << r.name << std::setw(4) << r.stages << std::setw(4) << r.order
              << std::setw(10) << detail::human(r.ssp_coefficient) << std::setw(10) << detail::human(r.observed_coeff)
              << std::setw(14) << detail::human(r.error_constant) << detail::registers_label(catalog_lookup(r.id))
              << '\n';
      }
    }
  } catch (const Error& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.exit_code = 1;
    return result;
  } catch (const std::exception& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.exit_code = 1;
    return result;
  }
  result.out = out.str();
  return result;
}

}  // namespace ssprk::cli
