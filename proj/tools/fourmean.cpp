// Command-line front end for the fourmean toolkit. Every subcommand emits
// UTF-8 JSON (CSV for fields) with an embedded run manifest; identical
// manifests reproduce identical bytes.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fourmean/fourmean.hpp"

namespace fm = fourmean;
using fm::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitSignatureMismatch = 3;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("trailing characters in number: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

fm::NonnegTuple load_tuple(const std::string& inline_text, const std::string& file) {
  if (!inline_text.empty()) return fm::NonnegTuple(parse_number_list(inline_text));
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open tuple file: " + file);
    json j;
    in >> j;
    return j.get<fm::NonnegTuple>();
  }
  throw std::invalid_argument("tuple missing: pass inline values or a file");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void emit(const json& output, const std::string& out_path) {
  const std::string text = output.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text(out_path, text);
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  in >> j;
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  return j;
}

struct Common {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string out;
  std::string config_file;
  std::string timestamp;  // override for reproducible outputs

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "master seed for all random sub-streams");
    app->add_option("--tol", tol, "comparison tolerance");
    app->add_option("--out", out, "write the JSON verdict to this file as well");
    app->add_option("--config", config_file, "JSON config file (flags override it)");
    app->add_option("--timestamp", timestamp, "fixed manifest timestamp (default: current UTC)");
  }

  fm::RunManifest manifest(const std::string& command, json effective_config) const {
    fm::RunManifest m;
    m.command = command;
    m.config = std::move(effective_config);
    m.seed = seed;
    m.tool_version = kToolVersion;
    m.timestamp = timestamp.empty() ? utc_now() : timestamp;
    return m;
  }
};

// Config file supplies defaults; explicit flags win.
template <typename T>
void config_default(const CLI::App* sub, const char* flag, const json& cfg, const char* key,
                    T& value) {
  if (sub->count(flag) > 0) return;
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

// --- means-check -------------------------------------------------------------

int run_means_check(const Common& common, const std::string& x_text, const std::string& x_file,
                    const std::string& y_text, const std::string& y_file, int level) {
  fm::NonnegTuple x, y;
  try {
    x = load_tuple(x_text, x_file);
    y = load_tuple(y_text, y_file);
  } catch (const std::exception& e) {
    std::cerr << "fourmean means-check: " << e.what() << "\n";
    return kExitUsage;
  }

  json config{{"level", level}, {"tol", common.tol}};
  json output{{"manifest", common.manifest("means-check", config)},
              {"x", x},
              {"y", y},
              {"signature_x", fm::signature(x)},
              {"signature_y", fm::signature(y)}};

  try {
    const fm::BoundVerdict verdict = fm::bound_check(x, y, level, common.tol);
    output["verdict"] = verdict;
    emit(output, common.out);
    return verdict.status == fm::BoundStatus::violated ? kExitCheckFailed : kExitOk;
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    output["error"] = what;
    emit(output, common.out);
    return what.find("signature mismatch") != std::string::npos ? kExitSignatureMismatch
                                                                : kExitUsage;
  }
}

// --- extremal ----------------------------------------------------------------

int run_extremal(const Common& common, const json& cfg_json, int n, int level, int restarts) {
  fm::SearchConfig cfg;
  cfg.seed = common.seed;
  cfg.tol = common.tol;
  cfg.restarts = restarts;
  if (cfg_json.contains("penalty_weights"))
    cfg.penalty_weight_schedule = cfg_json.at("penalty_weights").get<std::vector<double>>();
  if (cfg_json.contains("mesh")) cfg.mesh = cfg_json.at("mesh").get<int>();

  json config{{"n", n},
              {"level", level},
              {"restarts", cfg.restarts},
              {"tol", cfg.tol},
              {"mesh", cfg.mesh},
              {"penalty_weights", cfg.penalty_weight_schedule}};

  fm::ExtremalResult result;
  try {
    result = level == 2 ? fm::three_mean_max(n, cfg) : fm::four_mean_max(n, cfg);
  } catch (const std::exception& e) {
    std::cerr << "fourmean extremal: " << e.what() << "\n";
    return kExitUsage;
  }

  json output{{"manifest", common.manifest("extremal", config)}, {"result", result}};
  emit(output, common.out);
  return result.certified ? kExitOk : kExitCheckFailed;
}

// --- lemma -------------------------------------------------------------------

int run_lemma(const Common& common, int n, std::optional<int> r, int mesh) {
  json config{{"n", n}, {"mesh", mesh}};
  if (r) config["r"] = *r;

  json f_report, g_reports = json::array();
  bool all_pass = false;
  try {
    const fm::FLemmaReport f = fm::verify_f_lemma(n);
    f_report = f;
    all_pass = f.pass;
    const int r_lo = r ? *r : 1;
    const int r_hi = r ? *r : n - 1;
    for (int rr = r_lo; rr <= r_hi; ++rr) {
      const fm::GLemmaReport g = fm::verify_g_lemma(n, rr, mesh);
      g_reports.push_back(g);
      all_pass = all_pass && g.pass;
    }
  } catch (const std::exception& e) {
    std::cerr << "fourmean lemma: " << e.what() << "\n";
    return kExitUsage;
  }

  json output{{"manifest", common.manifest("lemma", config)},
              {"f_lemma", f_report},
              {"g_lemma", g_reports},
              {"pass", all_pass}};
  emit(output, common.out);
  return all_pass ? kExitOk : kExitCheckFailed;
}

// --- pseudo ------------------------------------------------------------------

int run_pseudo(const Common& common, double alpha, double beta, const fm::GridSpec& grid,
               const std::vector<double>& eps_levels, const std::string& out_dir) {
  json config{{"alpha", alpha},
              {"beta", beta},
              {"grid", grid},
              {"eps_levels", eps_levels},
              {"out_dir", out_dir}};

  try {
    const fm::FRPair pair = fm::fr_pair(alpha, beta);
    const fm::RunManifest manifest = common.manifest("pseudo", config);

    std::filesystem::create_directories(out_dir);
    const fm::SingularField field_a = fm::singular_field(pair.a, grid);
    const fm::SingularField field_b = fm::singular_field(pair.b, grid);
    write_text(out_dir + "/field_a.csv", fm::field_to_csv(field_a, manifest));
    write_text(out_dir + "/field_b.csv", fm::field_to_csv(field_b, manifest));
    json jfa = fm::field_to_json(field_a);
    json jfb = fm::field_to_json(field_b);
    jfa["manifest"] = manifest;
    jfb["manifest"] = manifest;
    write_text(out_dir + "/field_a.json", jfa.dump(2) + "\n");
    write_text(out_dir + "/field_b.json", jfb.dump(2) + "\n");

    // Deviation over the structured certificate set and over the whole grid.
    const auto points = fm::default_certificate_points(pair.a, pair.b);
    const fm::SuperIdenticalReport structured =
        fm::super_identical_check(pair.a, pair.b, points, 1e-8);
    std::vector<fm::cdouble> grid_points;
    grid_points.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
    for (int iy = 0; iy < grid.ny; ++iy)
      for (int ix = 0; ix < grid.nx; ++ix) grid_points.emplace_back(grid.re_at(ix), grid.im_at(iy));
    const fm::SuperIdenticalReport on_grid =
        fm::super_identical_check(pair.a, pair.b, grid_points, 1e-8);

    json deviation{{"manifest", manifest},
                   {"matrix_a", pair.a},
                   {"matrix_b", pair.b},
                   {"structured_points", structured},
                   {"grid_points", on_grid},
                   {"pass", structured.pass && on_grid.pass}};
    write_text(out_dir + "/deviation.json", deviation.dump(2) + "\n");

    if (!eps_levels.empty()) {
      const auto contours_a = fm::eps_contour_export(field_a, eps_levels);
      const auto contours_b = fm::eps_contour_export(field_b, eps_levels);
      json ja{{"manifest", manifest}, {"contours", contours_a}};
      json jb{{"manifest", manifest}, {"contours", contours_b}};
      write_text(out_dir + "/contours_a.json", ja.dump(2) + "\n");
      write_text(out_dir + "/contours_b.json", jb.dump(2) + "\n");
    }

    emit(deviation, common.out);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fourmean pseudo: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "fourmean pseudo: " << e.what() << "\n";
    return kExitUsage;
  }
}

// --- bound-scan ---------------------------------------------------------------

int run_bound_scan(const Common& common, const std::vector<double>& alphas, double beta,
                   int poly_count) {
  json config{{"alphas", alphas}, {"beta", beta}, {"poly_count", poly_count}};

  try {
    const std::vector<fm::Polynomial> battery = fm::default_poly_battery(common.seed, poly_count);
    const fm::Polynomial square = fm::Polynomial::monomial(2);
    const double bound = std::numbers::sqrt2;

    json rows = json::array();
    double prev_best = 0.0, prev_cond = 0.0;
    bool ratio_increasing = true, cond_increasing = true;
    double max_ratio = 0.0;
    // Scan from the largest alpha down: the ratio climbs toward sqrt(2) and
    // the similarity condition bound blows up as alpha -> 0.
    std::vector<double> sorted_alphas = alphas;
    std::sort(sorted_alphas.begin(), sorted_alphas.end(), std::greater<double>());
    for (double alpha : sorted_alphas) {
      const fm::FRPair pair = fm::fr_pair(alpha, beta);
      double best_ratio = 0.0;
      json best_poly;
      for (const fm::Polynomial& p : battery) {
        const fm::NormBoundReport rep = fm::norm_bound_check(pair.a, pair.b, p, common.tol);
        if (rep.zero_case) continue;
        const double r = std::max(rep.ratio, rep.reciprocal);
        if (r > best_ratio) {
          best_ratio = r;
          best_poly = p;
        }
      }
      const fm::SquareRatioReport ratios = fm::fr_square_ratios(pair);
      const fm::SimilarityBound cond = fm::similarity_cond_lower_bound(pair.a, pair.b, {square});
      rows.push_back(json{{"alpha", alpha},
                          {"best_ratio", best_ratio},
                          {"best_poly", best_poly},
                          {"sqrt2_margin", bound - best_ratio},
                          {"square_ratio_r1", ratios.r1},
                          {"square_ratio_r2", ratios.r2},
                          {"expected_square_ratio", std::numbers::sqrt2 * std::cos(alpha)},
                          {"condition_lower_bound", cond.lower}});
      if (rows.size() > 1) {
        ratio_increasing = ratio_increasing && best_ratio >= prev_best - 1e-12;
        cond_increasing = cond_increasing && cond.lower >= prev_cond - 1e-12;
      }
      prev_best = best_ratio;
      prev_cond = cond.lower;
      max_ratio = std::max(max_ratio, best_ratio);
    }

    json summary{{"sqrt_bound", bound},
                 {"max_ratio", max_ratio},
                 {"all_below_bound", max_ratio < bound},
                 {"ratio_increases_as_alpha_shrinks", ratio_increasing},
                 {"condition_bound_increases_as_alpha_shrinks", cond_increasing}};
    json output{{"manifest", common.manifest("bound-scan", config)},
                {"rows", rows},
                {"summary", summary}};
    emit(output, common.out);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "fourmean bound-scan: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification toolkit for mean-signature bound theorems and "
               "super-identical pseudospectra"};
  app.require_subcommand(1);

  Common common;

  // means-check
  auto* means = app.add_subcommand("means-check", "check the max-ratio bound for a tuple pair");
  std::string x_text, x_file, y_text, y_file;
  int level = 3;
  means->add_option("--x", x_text, "x tuple, comma separated");
  means->add_option("--x-file", x_file, "x tuple as a JSON array file");
  means->add_option("--y", y_text, "y tuple, comma separated");
  means->add_option("--y-file", y_file, "y tuple as a JSON array file");
  means->add_option("--level", level, "matched means: 1 sum, 2 +product, 3 +codim-1")
      ->check(CLI::Range(1, 3));
  common.attach(means);

  // extremal
  auto* extremal = app.add_subcommand("extremal", "re-derive the constrained maximum of x1");
  int ext_n = 4, ext_level = 3, ext_restarts = 16;
  extremal->add_option("--n", ext_n, "tuple length")->required();
  extremal->add_option("--level", ext_level, "2 = sum+product, 3 = all three constraints")
      ->check(CLI::Range(2, 3));
  extremal->add_option("--restarts", ext_restarts, "penalty/Newton restarts");
  common.attach(extremal);

  // lemma
  auto* lemma = app.add_subcommand("lemma", "verify the polynomial lemma certificates");
  int lem_n = 4, lem_mesh = 64;
  int lem_r_value = 0;
  lemma->add_option("--n", lem_n, "tuple length")->required();
  auto* lem_r_opt = lemma->add_option("--r", lem_r_value, "restrict the g-lemma to one r");
  lemma->add_option("--mesh", lem_mesh, "grid resolution for the g-lemma (>= 16)");
  common.attach(lemma);

  // pseudo
  auto* pseudo = app.add_subcommand("pseudo", "singular value fields and contours for the 4x4 pair");
  double alpha = 0.3, beta = std::numbers::pi / 4.0;
  std::string grid_text, eps_text, out_dir = "pseudo_out";
  pseudo->add_option("--alpha", alpha, "alpha in (0, pi/4]")->required();
  pseudo->add_option("--beta", beta, "beta in (0, pi/4] (default pi/4)");
  pseudo->add_option("--grid", grid_text, "re_min,re_max,im_min,im_max,nx,ny (default -3,3,-3,3,101,101)");
  pseudo->add_option("--eps", eps_text, "ascending epsilon levels for contours");
  pseudo->add_option("--out-dir", out_dir, "output directory for CSV/JSON files");
  common.attach(pseudo);

  // bound-scan
  auto* scan = app.add_subcommand("bound-scan", "norm-ratio and condition-bound sweep over alpha");
  std::string alphas_text = "0.7,0.5,0.3,0.1,0.01,0.001";
  double scan_beta = std::numbers::pi / 4.0;
  int poly_count = 100;
  scan->add_option("--alphas", alphas_text, "comma separated alpha sweep");
  scan->add_option("--beta", scan_beta, "fixed beta (default pi/4)");
  scan->add_option("--poly-count", poly_count, "random polynomials in the battery");
  common.attach(scan);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    json cfg = load_config(common.config_file);
    config_default(sub, "--seed", cfg, "seed", common.seed);
    config_default(sub, "--tol", cfg, "tol", common.tol);

    if (means->parsed())
      return run_means_check(common, x_text, x_file, y_text, y_file, level);
    if (extremal->parsed()) {
      config_default(sub, "--restarts", cfg, "restarts", ext_restarts);
      return run_extremal(common, cfg, ext_n, ext_level, ext_restarts);
    }
    if (lemma->parsed()) {
      std::optional<int> r;
      if (lem_r_opt->count() > 0) r = lem_r_value;
      return run_lemma(common, lem_n, r, lem_mesh);
    }
    if (pseudo->parsed()) {
      fm::GridSpec grid;
      if (!grid_text.empty()) {
        const std::vector<double> g = parse_number_list(grid_text);
        if (g.size() != 6) throw std::invalid_argument("--grid needs 6 numbers");
        grid.re_min = g[0];
        grid.re_max = g[1];
        grid.im_min = g[2];
        grid.im_max = g[3];
        grid.nx = static_cast<int>(g[4]);
        grid.ny = static_cast<int>(g[5]);
      }
      grid.validate();
      std::vector<double> eps_levels;
      if (!eps_text.empty()) eps_levels = parse_number_list(eps_text);
      return run_pseudo(common, alpha, beta, grid, eps_levels, out_dir);
    }
    if (scan->parsed())
      return run_bound_scan(common, parse_number_list(alphas_text), scan_beta, poly_count);
  } catch (const std::exception& e) {
    std::cerr << "fourmean: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
