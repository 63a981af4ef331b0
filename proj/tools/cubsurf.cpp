#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cubsurf/error.hpp"
#include "cubsurf/harness.hpp"
#include "cubsurf/hsgroup.hpp"
#include "cubsurf/planecubic.hpp"
#include "cubsurf/reduction.hpp"
#include "cubsurf/span.hpp"
#include "json.hpp"

using namespace cubsurf;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

bool is_usage_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kNotPrime:
    case ErrorKind::kBadPrime:
    case ErrorKind::kFamilyMismatch:
    case ErrorKind::kCharacteristicThree:
    case ErrorKind::kPointNotOnSurface:
      return true;
    default:
      return false;
  }
}

struct SurfaceChoice {
  std::string file;
  bool fermat_form = false;
  bool example = false;
  std::uint64_t q = 0;
  std::uint64_t seed = 1;

  void attach(CLI::App* app) {
    app->add_option("--surface", file, "surface JSON file")->check(CLI::ExistingFile);
    app->add_flag("--fermat", fermat_form, "x^3 + y^3 + z^3 + w^3 over F_q");
    app->add_flag("--example", example, "the 27-line surface over F_2");
    app->add_option("--q", q, "field order");
    app->add_option("--seed", seed, "seed for a random smooth surface over F_q");
  }

  CubicForm get() const {
    if (!file.empty()) {
      std::ifstream in(file);
      return cubic_from_json(json::parse(in), nullptr);
    }
    if (example) return eckardt_example();
    if (q == 0) throw CLI::ValidationError("surface", "give --surface, --example, or --q (with --fermat or --seed)");
    const GFPtr f = field_of_order(q);
    if (fermat_form) return fermat(f);
    return random_smooth_surface(f, seed);
  }
};

ProjPoint parse_point(const GF& f, const std::string& text) {
  try {
    return point_from_json(f, json::parse(text));
  } catch (const json::exception&) {
    throw Error(ErrorKind::kInvalidArgument, "point must be a JSON array of 4 coordinates: " + text);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  out << dump_json(j) << "\n";
}

void emit(bool as_json, const json& j, const std::vector<std::string>& summary_keys) {
  if (as_json) {
    std::cout << dump_json(j) << "\n";
    return;
  }
  for (const auto& k : summary_keys) {
    if (j.contains(k)) std::cout << k << ": " << j.at(k).dump() << "\n";
  }
}

json lines_command(const CubicForm& s, unsigned k) {
  const SurfaceLines sl = lines_on_surface(s, k);
  const auto inc = line_incidence(*sl.field, sl.lines);
  json lines = json::array();
  for (std::size_t i = 0; i < sl.lines.size(); ++i) {
    lines.push_back({{"line", to_json(*sl.field, sl.lines[i])},
                     {"neighbours", inc[i].neighbours},
                     {"coplanar_pairs", inc[i].coplanar_pairs}});
  }
  return {{"field", sl.field->to_json()}, {"count", sl.lines.size()}, {"lines", lines}};
}

json classify_command(const CubicForm& s, const std::string& point) {
  const GF& f = s.field();
  auto describe = [&](const ProjPoint& p) {
    const PointClass c = classify_point(s, p);
    return json{{"point", to_json(f, p)},
                {"kind", std::string(to_string(c.kind))},
                {"ternary", c.ternary},
                {"lines_through", c.on_line_count}};
  };
  if (!point.empty()) return describe(parse_point(f, point));
  std::map<std::string, int> kinds;
  int ternary = 0;
  json rows = json::array();
  for (const ProjPoint& p : surface_points(s)) {
    json d = describe(p);
    ++kinds[d["kind"].get<std::string>()];
    ternary += d["ternary"].get<bool>() ? 1 : 0;
    rows.push_back(std::move(d));
  }
  return {{"points", rows.size()}, {"kinds", kinds}, {"ternary", ternary}, {"classification", rows}};
}

json span_command(const CubicForm& s, const std::string& generators, const std::string& trace) {
  const PointTable t(s);
  std::vector<ProjPoint> gens;
  for (const auto& g : split(generators, ';')) gens.push_back(parse_point(s.field(), g));
  const SpanState st = span_closure(t, gens);
  json j = to_json(t, st);
  if (!trace.empty()) write_file(trace, j);
  j["total_points"] = t.size();
  j["everything"] = st.is_everything();
  return j;
}

json reduce_command(Family fam, long m, long p, long height, int n, bool with_line_points) {
  const Reducer r(fam, m, p, n);
  SearchOptions opt;
  opt.include_line_points = with_line_points;
  json rows = json::array();
  for (const auto& pt : point_search(fam, m, height, opt)) {
    const ReductionClass c = r.phi(pt.x);
    rows.push_back({{"point", to_json(pt.x)}, {"p", p}, {"phi", c.to_json(r.curve())}, {"psi_class", r.psi(pt.x)}});
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secant-tangent generation on cubic surfaces, H_S and reduction maps"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "print the full JSON result");

  SurfaceChoice surf;

  auto* lines = app.add_subcommand("lines", "rational lines over F_{q^k}");
  unsigned lines_k = 1;
  surf.attach(lines);
  lines->add_option("--k", lines_k, "extension degree")->check(CLI::Range(1U, 12U));

  auto* classify = app.add_subcommand("classify", "point types: Eckardt, parabolic, hyperbolic, elliptic");
  std::string classify_point_text;
  surf.attach(classify);
  classify->add_option("--point", classify_point_text, "JSON point, e.g. [1,0,0,0]; default: all points");

  auto* span = app.add_subcommand("span", "secant-tangent closure of a point set");
  std::string generators, trace;
  surf.attach(span);
  span->add_option("--generators", generators, "points separated by ';'")->required();
  span->add_option("--trace", trace, "write the generation trace here");

  auto* hs = app.add_subcommand("hs", "structure of H_S(F_q) and its degree-0 part");
  std::string hs_out;
  surf.attach(hs);
  hs->add_option("--out", hs_out, "write the structure here");

  auto* pic = app.add_subcommand("pic", "Pic^0(C_p)/n for C: x^3 + y^3 + z^3 = 0");
  std::uint64_t pic_p = 0;
  int pic_n = 2;
  pic->add_option("--p", pic_p, "prime")->required();
  pic->add_option("--mod", pic_n, "2 or 3");

  auto* reduce = app.add_subcommand("reduce", "phi and psi on rational points of S_M or S'_M");
  std::string family_text = "S_M", reduce_out;
  long red_m = 31, red_p = 31, red_h = 200;
  int red_n = 2;
  bool red_lines = false;
  reduce->add_option("--family", family_text, "S_M or S'_M");
  reduce->add_option("--M", red_m, "the parameter M");
  reduce->add_option("--p", red_p, "prime dividing M");
  reduce->add_option("--height", red_h, "search height");
  reduce->add_option("--mod", red_n, "2 for S_M, 3 for S'_M");
  reduce->add_flag("--line-points", red_lines, "include points on x + y = z = 0");
  reduce->add_option("--out", reduce_out, "write the rows here");

  auto* rank = app.add_subcommand("rank-bound", "F_n-dimension spanned by psi over several primes");
  std::string rank_family = "S_M", rank_primes;
  long rank_m = 0, rank_h = 500;
  rank->add_option("--family", rank_family, "S_M or S'_M");
  rank->add_option("--primes", rank_primes, "comma-separated primes")->required();
  rank->add_option("--M", rank_m, "default: product of the primes (times 3 for S'_M)");
  rank->add_option("--height", rank_h, "search height");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all", config_file, verify_out;
  verify->add_option("--suite", suite, "geometry, span, hs, pic, reduction or all");
  verify->add_option("--config", config_file, "ExperimentConfig JSON")->check(CLI::ExistingFile);
  verify->add_option("--out", verify_out, "write the report here");
  verify->add_option("--seed", surf.seed, "overrides the config seed");

  auto* scan = app.add_subcommand("scan", "batch statistics over random smooth surfaces");
  std::uint64_t scan_q = 7, scan_seed = 1;
  int scan_count = 10;
  bool scan_hs = false;
  scan->add_option("--q", scan_q, "field order");
  scan->add_option("--count", scan_count, "number of surfaces")->check(CLI::PositiveNumber);
  scan->add_option("--seed", scan_seed, "seed");
  scan->add_flag("--hs", scan_hs, "also compute H_S");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (lines->parsed()) {
      emit(as_json, lines_command(surf.get(), lines_k), {"count"});
    } else if (classify->parsed()) {
      emit(as_json, classify_command(surf.get(), classify_point_text),
           {"points", "kinds", "ternary", "point", "kind", "lines_through"});
    } else if (span->parsed()) {
      emit(as_json, span_command(surf.get(), generators, trace), {"count", "total_points", "everything", "sizes"});
    } else if (hs->parsed()) {
      const PointTable t(surf.get());
      const json j = HsPresentation(t).structure().to_json();
      if (!hs_out.empty()) write_file(hs_out, j);
      emit(as_json, j, {"points", "relations", "invariant_factors", "h0_rank", "h0_dim_mod2", "h0_dim_mod3"});
    } else if (pic->parsed()) {
      emit(as_json, pic_mod(pic_p, pic_n).to_json(), {"p", "n", "dim", "every_class_represented"});
    } else if (reduce->parsed()) {
      const json rows = reduce_command(parse_family(family_text), red_m, red_p, red_h, red_n, red_lines);
      if (!reduce_out.empty()) write_file(reduce_out, rows);
      if (as_json) {
        std::cout << dump_json(rows) << "\n";
      } else {
        std::set<int> classes;
        for (const auto& r : rows) classes.insert(r["psi_class"].get<int>());
        std::cout << "points: " << rows.size() << "\npsi classes hit: " << classes.size() << "\n";
      }
    } else if (rank->parsed()) {
      const Family fam = parse_family(rank_family);
      std::vector<long> primes;
      for (const auto& s : split(rank_primes, ',')) primes.push_back(std::stol(s));
      long m = rank_m;
      if (m == 0) {
        m = std::accumulate(primes.begin(), primes.end(), 1L, std::multiplies<>());
        if (fam == Family::kSPrime) m *= 3;
      }
      const RankBound rb = rank_lower_bound(fam, m, primes, point_search(fam, m, rank_h));
      json j = rb.to_json();
      j["M"] = m;
      emit(as_json, j, {"M", "achieved_dim", "target_dim", "points_used"});
      return rb.achieved_dim >= 1 ? kExitPass : kExitFail;
    } else if (verify->parsed()) {
      ExperimentConfig cfg;
      if (!config_file.empty()) {
        std::ifstream in(config_file);
        cfg = ExperimentConfig::from_json(json::parse(in));
      }
      if (verify->count("--seed") > 0) cfg.seed = surf.seed;
      const VerificationReport rep = run_suite(suite, cfg);
      const json j = rep.to_json();
      if (!verify_out.empty()) write_file(verify_out, j);
      if (as_json) {
        std::cout << dump_json(j) << "\n";
      } else {
        for (const auto& c : rep.checks) {
          std::cout << to_string(c.status) << " " << c.name;
          if (!c.reason.empty()) std::cout << ": " << c.reason;
          std::cout << "\n";
        }
      }
      return rep.passed() ? kExitPass : kExitFail;
    } else if (scan->parsed()) {
      emit(as_json, scan_surfaces(scan_q, scan_count, scan_seed, scan_hs), {"q", "count", "lines_histogram", "with_skew_pair"});
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_usage_error(e.kind()) ? kExitUsage : kExitFail;
  } catch (const json::exception& e) {
    std::cerr << "bad JSON input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad number: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitPass;
}
