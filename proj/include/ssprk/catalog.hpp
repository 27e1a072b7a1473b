#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssprk/family53.hpp"
#include "ssprk/lowstorage.hpp"
#include "ssprk/tableau.hpp"

namespace ssprk {

/// Parses "0.377268915331368", "1", or an exact rational "2/3".
inline double parse_coefficient(std::string_view text) {
  auto parse_double = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw Error(ErrorCode::ParseError, "bad coefficient '" + std::string(text) + "'");
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return parse_double(text.substr(0, slash)) / parse_double(text.substr(slash + 1));
  return parse_double(text);
}

struct MethodRecord {
  std::string id;
  std::string name;
  int stages = 0;
  int order = 0;
  ButcherTableau tableau;
  std::optional<ShuOsherForm> shu_osher;
  double ref_ssp = 0.0;
  double ref_ssp_tol = 1e-9;          // tolerance implied by the printed digits
  std::optional<double> ref_error_const;
  std::optional<double> ref_observed;  // observed SSP coefficient, Buckley-Leverett
  std::optional<StorageClass> ref_storage;  // nullopt: executed naively
  std::string ref_registers;           // register label as tabulated
  double order_tol = 1e-9;
  std::vector<double> printed_c;       // abscissae as printed, when given
};

namespace detail {

struct SparseEntry {
  const char* name;  // "l43" / "g21": 1-based (row, column)
  const char* value;
};

struct CatalogSource {
  const char* id;
  const char* name;
  int order;
  std::vector<std::vector<const char*>> a;  // rows 2..s, strictly lower part
  std::vector<const char*> b;
  std::vector<const char*> c;  // printed c column (may be empty)
  std::vector<SparseEntry> shu_osher;
  const char* ref_ssp;  // decimal string, or "ssp53" for the SSP(5,3) optimum
  double ref_ssp_tol;
  const char* ref_error_const;
  const char* ref_observed;
  std::optional<StorageClass> ref_storage;
  const char* ref_registers;
  double order_tol;
};

inline ButcherTableau tableau_from_rows(const std::vector<std::vector<double>>& rows, std::vector<double> b) {
  const std::size_t s = b.size();
  Matrix a(s, s);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i + 1, j) = rows[i][j];
  return ButcherTableau(std::move(a), std::move(b));
}

inline ShuOsherForm shu_osher_from_entries(std::size_t stages, const std::vector<SparseEntry>& entries) {
  Matrix lambda(stages + 1, stages + 1);
  Matrix gamma(stages + 1, stages + 1);
  for (const auto& e : entries) {
    const std::string_view key(e.name);
    const std::size_t i = static_cast<std::size_t>(key[1] - '0');
    const std::size_t j = static_cast<std::size_t>(key[2] - '0');
    (key[0] == 'l' ? lambda : gamma)(i - 1, j - 1) = parse_coefficient(e.value);
  }
  return ShuOsherForm(std::move(lambda), std::move(gamma));
}

inline MethodRecord build_record(const CatalogSource& src) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : src.a) {
    std::vector<double> row;
    for (const char* v : r) row.push_back(parse_coefficient(v));
    rows.push_back(std::move(row));
  }
  std::vector<double> b;
  for (const char* v : src.b) b.push_back(parse_coefficient(v));

  MethodRecord rec{src.id, src.name, static_cast<int>(b.size()), src.order,
                   tableau_from_rows(rows, b), std::nullopt};
  if (!src.shu_osher.empty()) rec.shu_osher = shu_osher_from_entries(b.size(), src.shu_osher);
  rec.ref_ssp = std::string_view(src.ref_ssp) == "ssp53" ? ssp53_optimal_radius(1e-15) : parse_coefficient(src.ref_ssp);
  rec.ref_ssp_tol = src.ref_ssp_tol;
  if (src.ref_error_const) rec.ref_error_const = parse_coefficient(src.ref_error_const);
  if (src.ref_observed) rec.ref_observed = parse_coefficient(src.ref_observed);
  rec.ref_storage = src.ref_storage;
  rec.ref_registers = src.ref_registers;
  rec.order_tol = src.order_tol;
  for (const char* v : src.c) rec.printed_c.push_back(parse_coefficient(v));
  return rec;
}

// Coefficients exactly as tabulated. Rationals are kept as rationals.
inline std::vector<CatalogSource> catalog_sources() {
  using SC = StorageClass;
  const char* r53 = "0.377268915331368";  // 1/r for the SSP(5,3) optimum
  std::vector<CatalogSource> v;

  v.push_back({"ssp33", "SSP33", 3,
               {{"1"}, {"1/4", "1/4"}},
               {"1/6", "1/6", "2/3"},
               {"0", "1", "1/2"},
               {{"l21", "1"}, {"l31", "3/4"}, {"l32", "1/4"}, {"l41", "1/3"}, {"l43", "2/3"},
                {"g21", "1"}, {"g32", "1/4"}, {"g43", "2/3"}},
               "1", 1e-9, nullptr, nullptr, SC::TwoNStar, "2N*", 1e-12});

  v.push_back({"ssp43", "SSP43", 3,
               {{"1/2"}, {"1/2", "1/2"}, {"1/6", "1/6", "1/6"}},
               {"1/6", "1/6", "1/6", "1/2"},
               {"0", "1/2", "1", "1/2"},
               {{"l21", "1"}, {"l32", "1"}, {"l41", "2/3"}, {"l43", "1/3"}, {"l54", "1"},
                {"g21", "1/2"}, {"g32", "1/2"}, {"g43", "1/6"}, {"g54", "1/2"}},
               "2", 1e-9, "3.60844e-02", "2.04", SC::TwoNStar, "2N*", 1e-12});

  v.push_back({"ssp53_r", "SSP53_R", 3,
               {{r53},
                {r53, r53},
                {"0.242995220537395", "0.242995220537395", "0.242995220537395"},
                {"0.153589067695126", "0.153589067695126", "0.153589067695126", "0.23845893284629"}},
               {"0.206734020864804", "0.206734020864804", "0.117097251841844", "0.18180256012014",
                "0.287632146308408"},
               {"0", r53, "0.754537830662736", "0.728985661612186", "0.699226135931669"},
               {{"l21", "1"}, {"l32", "1"},
                {"l41", "0.355909775063327"}, {"l43", "0.644090224936674"},
                {"l51", "0.367933791638137"}, {"l54", "0.632066208361863"},
                {"l63", "0.237593836598569"}, {"l65", "0.762406163401431"},
                {"g21", r53}, {"g32", r53}, {"g43", "0.242995220537396"},
                {"g54", "0.238458932846290"}, {"g65", "0.287632146308408"}},
               "ssp53", 1e-6, "1.66219e-02", "2.90", SC::ThreeN_A, "3N", 1e-9});

  v.push_back({"ssp53_h", "SSP53_H", 3,
               {{r53},
                {r53, r53},
                {"0.260811979144498", "0.260811979144498", "0.260811979144498"},
                {"0.219153436331987", "0.117097251841844", "0.117097251841844", "0.169383144652957"}},
               {"0.219153436331987", "0.117097251841844", "0.117097251841844", "0.169383144652957", r53},
               {"0", r53, "0.754537830662737", "0.782435937433493", "0.622731084668631"},
               {{"l21", "1"}, {"l32", "1"},
                {"l41", "0.308684154602513"}, {"l43", "0.691315845397487"},
                {"l51", "0.280514990468574"}, {"l52", "0.270513101776498"}, {"l54", "0.448971907754928"},
                {"l65", "1"},
                {"g21", r53}, {"g32", r53}, {"g43", "0.260811979144498"},
                {"g54", "0.169383144652957"}, {"g65", r53}},
               "ssp53", 1e-6, "1.98589e-02", "2.72", SC::ThreeN_B, "3N", 1e-9});

  v.push_back({"ssp53_1", "SSP53_1", 3,
               {{r53},
                {r53, r53},
                {"0.162760486162526", "0.162760486162526", "0.162760486162526"},
                {"0.148318743330765", "0.148299726283723", "0.148299726283723", "0.343749752769421"}},
               {"0.196490186861586", "0.117097251841844", "0.117097251841844", "0.271424313309946",
                "0.297890996144780"},
               {"0", r53, "0.754537830662736", "0.488281458487577", "0.788667948667632"},
               {{"l21", "1"}, {"l32", "1"},
                {"l41", "0.568582304164742"}, {"l43", "0.431417695835258"},
                {"l51", "0.088796463619276"}, {"l52", "0.000050407140024"}, {"l54", "0.911153129240700"},
                {"l62", "0.210401429751688"}, {"l65", "0.789598570248313"},
                {"g21", r53}, {"g32", r53}, {"g43", "0.162760486162526"},
                {"g54", "0.343749752769421"}, {"g65", "0.297890996144780"}},
               "ssp53", 1e-6, "1.48757e-02", "2.96", SC::ThreeN_B, "3N", 1e-9});

  v.push_back({"ssp53_2", "SSP53_2", 3,
               {{r53},
                {r53, r53},
                {"0.252132900663713", "0.252132900663713", "0.252132900663713"},
                {"0.188434549340417", "0.134873511860921", "0.134873511860921", "0.201812549622665"}},
               {"0.213322822390311", "0.166821102311173", "0.117097251841844", "0.175213758594633",
                "0.327545064862039"},
               {"0", r53, "0.754537830662737", "0.756398701991139", "0.659994122684924"},
               {{"l21", "1"}, {"l32", "1"},
                {"l41", "0.331689173378475"}, {"l43", "0.668310826621525"},
                {"l51", "0.323099315304423"}, {"l52", "0.141970449466930"}, {"l54", "0.534930235228647"},
                {"l63", "0.131799489564770"}, {"l65", "0.868200510435230"},
                {"g21", r53}, {"g32", r53}, {"g43", "0.252132900663713"},
                {"g54", "0.201812549622665"}, {"g65", "0.327545064862039"}},
               "ssp53", 1e-6, "1.81787e-02", "2.78", SC::General, ">=3N", 1e-9});

  v.push_back({"ssp53_2nstar_1", "SSP53_2N*_1", 3,
               {{"0.443568244942995"},
                {"0.443568244942995", "0.291111420073766"},
                {"0.443568244942995", "0.291111420073766", "0.27061260127822"},
                {"0.190111792195291", "0.124769332407581", "0.11598361065329", "0.110577759392786"}},
               {"0.190111792195291", "0.124769332407581", "0.11598361065329", "0.110577759392786",
                "0.4585575053510519"},
               {"0", "0.443568244942995", "0.734679665016762", "1.005292266294979", "0.541442494648948"},
               {{"l21", "1"}, {"l32", "1"}, {"l43", "1"},
                {"l51", "0.571403511494104"}, {"l54", "0.428596488505896"}, {"l65", "1"},
                {"g21", "0.443568244942995"}, {"g32", "0.291111420073766"}, {"g43", "0.270612601278217"},
                {"g54", "0.110577759392786"}, {"g65", "0.458557505351052"}},
               "2.180749177932739", 1e-9, "2.78407e-02", "2.29", SC::TwoNStar, "2N*", 1e-9});

  v.push_back({"ssp53_2nstar_2", "SSP53_2N*_2", 3,
               {{"0.465388589249323"},
                {"0.465388589249323", "0.465388589249323"},
                {"0.147834007766856", "0.147834007766856", "0.124745797313998"},
                {"0.147834007766856", "0.147834007766856", "0.124745797313998", "0.465388589249323"}},
               {"0.141147331533922", "0.141147331533922", "0.119103423338902", "0.444338609844587",
                "0.154263303748666"},
               {"0", "0.465388589249323", "0.930777178498646", "0.420413812847710", "0.885802402097033"},
               {{"l21", "1"}, {"l32", "1"},
                {"l41", "0.682342861037239"}, {"l43", "0.317657138962761"},
                {"l54", "1"},
                {"l61", "0.045230974482400"}, {"l65", "0.954769025517600"},
                {"g21", "0.465388589249323"}, {"g32", "0.465388589249323"}, {"g43", "0.124745797313998"},
                {"g54", "0.465388589249323"}, {"g65", "0.154263303748666"}},
               "2.1487419827223833", 1e-9, "2.27362e-02", "2.45", SC::TwoNStar, "2N*", 1e-9});

  // Williamson / van der Houwen schemes: Butcher data only.
  v.push_back({"ssp53_w1", "SSP53_W1", 3,
               {{"0.67892607116139"},
                {"0.14022991560621", "0.20654657933371"},
                {"0.20569370073026", "0.18144649137471", "0.27959340290485"},
                {"0.16104646283838", "0.19856511041100", "0.08890670263481", "0.31738259840613"}},
               {"0.19215670424132", "0.18663683901393", "0.22177739201759", "0.09623007655432",
                "0.30319904778284"},
               {"0", "0.67892607116139", "0.34677649493991", "0.66673359500982", "0.76590087429032"},
               {},
               "1", 1e-4, "2.14944e-02", "2.04", std::nullopt, "2N-W", 1e-6});

  v.push_back({"ssp53_w2", "SSP53_W2", 3,
               {{"0.713497331193829"},
                {"0.133505249805329", "0.133505249805329"},
                {"0.133505249805329", "0.133505249805329", "0.713497331193829"},
                {"0.133505249805329", "0.133505249805329", "0.149579395628566", "0.149579395628565"}},
               {"0.133505249805329", "0.133505249805329", "0.216758180868589", "0.131760203399484",
                "0.384471116121269"},
               {"0", "0.713497331193829", "0.133505249805329", "0.980507830804488", "0.566169290867790"},
               {},
               "1.40154693827206", 1e-9, "2.88494e-02", "2.20", std::nullopt, "2N-W", 1e-9});

  v.push_back({"ssp53_vdh", "SSP53_vdH", 3,
               {{"0.674381436593749"},
                {"0.174481959220521", "0.116638367147961"},
                {"0.174481959220521", "0.116638367147961", "0.674381436593749"},
                {"0.174481959220521", "0.116638367147961", "0.162995387938952", "0.162995387938952"}},
               {"0.174481959220521", "0.116638367147961", "0.162995387938952", "0.106256369067643",
                "0.439627916624922"},
               {"0", "0.674381436593749", "0.291120326368482", "0.965501762962231", "0.617111102246386"},
               {},
               "1.482840341885634", 1e-9, "0.02557995243600524", "1.96", std::nullopt, "2N-vdH", 1e-9});
  return v;
}

}  // namespace detail

/// Optimal first-order method: a_ij = b_i = 1/s, Lambda and Gamma subdiagonal.
inline MethodRecord ssp_first_order(int s) {
  if (s < 1) throw Error(ErrorCode::InvalidArgument, "stages must be >= 1");
  const auto n = static_cast<std::size_t>(s);
  const double w = 1.0 / s;
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = w;
  Matrix lambda(n + 1, n + 1), gamma(n + 1, n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    lambda(i, i - 1) = 1.0;
    gamma(i, i - 1) = w;
  }
  const std::string id = "ssp1_" + std::to_string(s);
  MethodRecord rec{id, s == 1 ? "Forward Euler" : "SSP(" + std::to_string(s) + ",1)", s, 1,
                   ButcherTableau(std::move(a), std::vector<double>(n, w)),
                   ShuOsherForm(std::move(lambda), std::move(gamma))};
  rec.ref_ssp = s;
  rec.ref_storage = StorageClass::TwoNStar;
  rec.ref_registers = "2N*";
  rec.order_tol = 1e-12;
  return rec;
}

/// Optimal second-order method: a_ij = 1/(s-1), b_i = 1/s.
inline MethodRecord ssp_second_order(int s) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "stages must be >= 2");
  const auto n = static_cast<std::size_t>(s);
  const double w = 1.0 / (s - 1);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = w;
  Matrix lambda(n + 1, n + 1), gamma(n + 1, n + 1);
  for (std::size_t i = 1; i < n; ++i) {
    lambda(i, i - 1) = 1.0;
    gamma(i, i - 1) = w;
  }
  lambda(n, 0) = 1.0 / s;
  lambda(n, n - 1) = (s - 1.0) / s;
  gamma(n, n - 1) = 1.0 / s;
  const std::string id = "ssp2_" + std::to_string(s);
  MethodRecord rec{id, "SSP(" + std::to_string(s) + ",2)", s, 2,
                   ButcherTableau(std::move(a), std::vector<double>(n, 1.0 / s)),
                   ShuOsherForm(std::move(lambda), std::move(gamma))};
  rec.ref_ssp = s - 1;
  rec.ref_storage = StorageClass::TwoNStar;
  rec.ref_registers = "2N*";
  rec.order_tol = 1e-12;
  return rec;
}

/// The fixed registry, in tabulation order.
inline const std::vector<MethodRecord>& catalog_list() {
  static const std::vector<MethodRecord> records = [] {
    std::vector<MethodRecord> out;
    for (const auto& src : detail::catalog_sources()) out.push_back(detail::build_record(src));
    return out;
  }();
  return records;
}

/// Looks up a registry id, or a family id "ssp1_<s>" / "ssp2_<s>"
/// ("euler" is an alias for ssp1_1).
inline MethodRecord catalog_lookup(std::string_view id) {
  for (const auto& rec : catalog_list())
    if (rec.id == id) return rec;
  if (id == "euler" || id == "forward_euler") return ssp_first_order(1);
  for (const auto& [prefix, order] : {std::pair{std::string_view("ssp1_"), 1}, std::pair{std::string_view("ssp2_"), 2}}) {
    if (id.starts_with(prefix)) {
      int s = 0;
      const auto tail = id.substr(prefix.size());
      const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), s);
      if (ec == std::errc() && ptr == tail.data() + tail.size() && s >= order && s <= 64)
        return order == 1 ? ssp_first_order(s) : ssp_second_order(s);
    }
  }
  throw Error(ErrorCode::UnknownMethod, "no method with id '" + std::string(id) + "'");
}

/// The ten methods compared in the Buckley-Leverett study, in table order.
inline std::vector<std::string> table1_ids() {
  return {"ssp53_2nstar_1", "ssp53_2nstar_2", "ssp53_1", "ssp53_r", "ssp53_2",
          "ssp53_h", "ssp43", "ssp53_w1", "ssp53_w2", "ssp53_vdh"};
}

}  // namespace ssprk
