#include "pairemit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "pairemit/emission.hpp"
#include "pairemit/errors.hpp"
#include "pairemit/oracle.hpp"
#include "pairemit/report.hpp"
#include "pairemit/scenario.hpp"
#include "pairemit/wavepacket.hpp"

namespace pairemit::cli {

namespace {

using json = nlohmann::ordered_json;
using report::Config;
using report::format_double;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MixtureExchange parse_mode(const std::string& s) {
  return s == "off" ? MixtureExchange::Off : MixtureExchange::On;
}

std::vector<double> parse_vector(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("--{}: '{}' is not a comma-separated list of numbers", what,
                                   text));
    }
  }
  return v;
}

json norms_json(const NormalizationSet& n) {
  return json{{"n0", n.n0},
              {"n_abs", n.n_abs},
              {"n_psi_omega", n.n_psi_omega},
              {"n_phi_omega", n.n_phi_omega},
              {"n_omega_sp", n.n_omega_sp}};
}

json config_json(std::string_view command, const Config& cfg) {
  json c = json::object();
  for (const auto& [k, v] : cfg) c[k] = v;
  return json{{"command", command}, {"config_hash", report::config_hash(command, cfg)},
              {"config", c}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Curves and scalar results shared by the fig2 and scene commands.
struct CurveSet {
  std::array<NormalizationSet, 2> norms;
  std::array<RateSet, 2> rates;
  double gamma_noexchange = 0.0;
  std::vector<EmissionCurve> curves;
};

CurveSet curves_for_table(const OverlapTable& table, double gamma0, double t_max,
                          std::size_t steps, MixtureExchange mode) {
  const RadiativeCoupling coupling(gamma0);
  const std::vector<double> times = uniform_times(t_max, steps);
  CurveSet out;
  for (std::size_t i = 0; i < 2; ++i) {
    out.norms[i] = normalizations(table, kBothStatistics[i]);
    out.rates[i] = rates(table, kBothStatistics[i], coupling, mode);
  }
  out.gamma_noexchange =
      rate(kernel_mix_psi(table, ExchangeSymmetry::boson(), MixtureExchange::Off), coupling);
  out.curves.push_back(emission_curve(out.rates[0].gamma_sup, times, "boson_sup"));
  out.curves.push_back(emission_curve(out.rates[1].gamma_sup, times, "fermion_sup"));
  out.curves.push_back(mixture_curve(out.rates[0].gamma_mix_psi, out.rates[0].gamma_mix_phi,
                                     times, "mix_boson"));
  out.curves.push_back(mixture_curve(out.rates[1].gamma_mix_psi, out.rates[1].gamma_mix_phi,
                                     times, "mix_fermion"));
  out.curves.push_back(
      mixture_curve(out.gamma_noexchange, out.gamma_noexchange, times, "mix_noexchange"));
  return out;
}

json curve_set_json(const CurveSet& cs) {
  return json{
      {"n0_omega", 1},
      {"rates",
       {{"boson_sup", cs.rates[0].gamma_sup},
        {"fermion_sup", cs.rates[1].gamma_sup},
        {"mix_boson_psi", cs.rates[0].gamma_mix_psi},
        {"mix_boson_phi", cs.rates[0].gamma_mix_phi},
        {"mix_fermion_psi", cs.rates[1].gamma_mix_psi},
        {"mix_fermion_phi", cs.rates[1].gamma_mix_phi},
        {"mix_noexchange", cs.gamma_noexchange}}},
      {"normalizations", {{"boson", norms_json(cs.norms[0])}, {"fermion", norms_json(cs.norms[1])}}},
  };
}

struct Fig2Options {
  double s = 0.7;
  double gamma0 = 1.0;
  double t_max = 5.0;
  std::size_t steps = 200;
  std::string mixture_exchange = "on";
  std::string out = "fig2.csv";
  std::string json_out;
};

struct ScanOptions {
  double s_from = 0.0;
  double s_to = 0.9;
  std::size_t points = 10;
  double gamma0 = 1.0;
  std::string mixture_exchange = "on";
  std::string out = "scan.csv";
};

struct SceneOptions {
  std::size_t dim = 1;
  double sigma = 1.0;
  double separation = 2.0;
  double k = 1.0;
  std::string beam;
  std::string omega;
  double mass = 1.0;
  double delay = 0.0;
  double gamma0 = 1.0;
  double t_max = 5.0;
  std::size_t steps = 200;
  std::string mixture_exchange = "on";
  std::string out = "scene.csv";
  std::string table_out;
  std::string json_out;
};

struct OracleOptions {
  std::size_t seeds = 100;
  std::uint64_t first_seed = 0;
  double tol = 1e-12;
  double coherence = 0.5;
  std::string spectator = "evolve";
  std::string out = "oracle_report.json";
};

int cmd_fig2(const Fig2Options& o, std::ostream& out) {
  const Config cfg{{"s", format_double(o.s)},
                   {"gamma0", format_double(o.gamma0)},
                   {"t-max", format_double(o.t_max)},
                   {"steps", std::to_string(o.steps)},
                   {"mixture-exchange", o.mixture_exchange},
                   {"out", o.out}};
  const Fig2Params params{.s = o.s, .gamma0 = o.gamma0, .t_max = o.t_max, .steps = o.steps};
  Fig2Result r = fig2_curves(params, parse_mode(o.mixture_exchange));
  const CurveSet cs{r.norms, r.rates, r.gamma_noexchange, std::move(r.curves)};

  json j = config_json("fig2", cfg);
  j.update(curve_set_json(cs));
  const std::filesystem::path json_path =
      o.json_out.empty() ? report::sidecar_path(o.out) : std::filesystem::path(o.json_out);
  report::write_file(o.out, report::curves_csv("fig2", cfg, cs.curves));
  report::write_file(json_path, dump(j));
  out << fmt::format("fig2: s={} boson_sup={:.9f} fermion_sup={:.9f} -> {} (+ {})\n",
                     format_double(o.s), cs.rates[0].gamma_sup, cs.rates[1].gamma_sup, o.out,
                     json_path.string());
  return kSuccess;
}

std::string ordering(double fermion, double boson) {
  if (std::abs(fermion - boson) <= 1e-12 * std::max(std::abs(fermion), std::abs(boson))) {
    return "equal";
  }
  return fermion > boson ? "fermion>boson" : "boson>fermion";
}

int cmd_scan(const ScanOptions& o, std::ostream& out) {
  const Config cfg{{"s-from", format_double(o.s_from)},
                   {"s-to", format_double(o.s_to)},
                   {"points", std::to_string(o.points)},
                   {"gamma0", format_double(o.gamma0)},
                   {"mixture-exchange", o.mixture_exchange},
                   {"out", o.out}};
  const std::vector<ScanRow> rows =
      scan(o.s_from, o.s_to, o.points, parse_mode(o.mixture_exchange), o.gamma0);

  std::string csv = report::header_comment("scan", cfg);
  csv +=
      "s,boson_sup,fermion_sup,mix_boson_psi,mix_boson_phi,mix_fermion_psi,mix_fermion_phi,"
      "mix_noexchange,ordering\n";
  for (const ScanRow& r : rows) {
    csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", format_double(r.s),
                       format_double(r.boson_sup), format_double(r.fermion_sup),
                       format_double(r.mix_boson_psi), format_double(r.mix_boson_phi),
                       format_double(r.mix_fermion_psi), format_double(r.mix_fermion_phi),
                       format_double(r.mix_noexchange), ordering(r.fermion_sup, r.boson_sup));
  }
  report::write_file(o.out, csv);
  out << fmt::format("scan: {} rows -> {}\n", rows.size(), o.out);
  return kSuccess;
}

int cmd_scene(const SceneOptions& o, std::ostream& out) {
  const std::vector<double> beam = o.beam.empty() ? std::vector<double>{} : parse_vector(o.beam, "beam");
  std::vector<double> omega = o.omega.empty() ? std::vector<double>{} : parse_vector(o.omega, "omega");
  if (omega.empty()) {
    omega.assign(o.dim, 0.0);
    if (o.dim > 0) omega[0] = 1.0;
  }
  const Scene scene = make_scene(o.dim, o.sigma, o.separation, o.k, beam, omega, o.mass, o.delay);
  check_scene(scene);

  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
  };
  const std::filesystem::path table_path =
      o.table_out.empty()
          ? std::filesystem::path(o.out).replace_extension("").concat("_table.csv")
          : std::filesystem::path(o.table_out);
  const std::filesystem::path json_path =
      o.json_out.empty() ? report::sidecar_path(o.out) : std::filesystem::path(o.json_out);
  const Config cfg{{"dim", std::to_string(o.dim)},
                   {"sigma", format_double(o.sigma)},
                   {"separation", format_double(o.separation)},
                   {"k", format_double(o.k)},
                   {"beam", join(scene.beam_axis)},
                   {"omega", join(scene.omega_dir)},
                   {"mass", format_double(o.mass)},
                   {"delay", format_double(o.delay)},
                   {"gamma0", format_double(o.gamma0)},
                   {"t-max", format_double(o.t_max)},
                   {"steps", std::to_string(o.steps)},
                   {"mixture-exchange", o.mixture_exchange},
                   {"out", o.out}};

  const OverlapTable table = build_overlap_table(scene);
  const ValidationReport validation = validate(table, true);
  const CurveSet cs =
      curves_for_table(table, o.gamma0, o.t_max, o.steps, parse_mode(o.mixture_exchange));

  std::string table_csv = report::header_comment("scene", cfg);
  table_csv += "bra,ket,re,im\n";
  for (StateLabel a : kAllLabels) {
    for (StateLabel b : kAllLabels) {
      table_csv += fmt::format("{},{},{},{}\n", label_name(a), label_name(b),
                               format_double(table(a, b).real()), format_double(table(a, b).imag()));
    }
  }
  json j = config_json("scene", cfg);
  j["validation"] = {{"ok", validation.ok()},
                     {"strict", true},
                     {"min_eigenvalue", *validation.min_eigenvalue},
                     {"violations", validation.violations}};
  j.update(curve_set_json(cs));
  j["table_file"] = table_path.string();

  report::write_file(o.out, report::curves_csv("scene", cfg, cs.curves));
  report::write_file(table_path, table_csv);
  report::write_file(json_path, dump(j));
  out << fmt::format("scene: min eigenvalue {:.3e} ({}), boson_sup={:.9f} fermion_sup={:.9f} -> {}\n",
                     *validation.min_eigenvalue, validation.ok() ? "PSD" : "NOT PSD",
                     cs.rates[0].gamma_sup, cs.rates[1].gamma_sup, o.out);
  return kSuccess;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

int cmd_oracle(const OracleOptions& o, std::ostream& out) {
  oracle::CampaignConfig cfg;
  cfg.first_seed = o.first_seed;
  cfg.seeds = o.seeds;
  cfg.tolerance = o.tol;
  cfg.coherence = o.coherence;
  cfg.spectator =
      o.spectator == "unchanged" ? oracle::Spectator::Unchanged : oracle::Spectator::FreeEvolve;
  const Config rcfg{{"seeds", std::to_string(o.seeds)},
                    {"first-seed", std::to_string(o.first_seed)},
                    {"tol", format_double(o.tol)},
                    {"coherence", format_double(o.coherence)},
                    {"spectator", o.spectator},
                    {"out", o.out}};
  const oracle::CampaignReport rep = oracle::run_campaign(cfg);

  json j = config_json("oracle", rcfg);
  j["passed"] = rep.passed();
  j["checks"] = rep.checks;
  json maxres = json::object();
  for (const auto& [q, v] : rep.max_residual) maxres[q] = v;
  j["max_residual"] = maxres;
  json disc = json::array();
  for (const oracle::Discrepancy& d : rep.discrepancies) {
    disc.push_back({{"seed", d.seed},
                    {"statistics", d.statistics},
                    {"quantity", d.quantity},
                    {"closed_form", complex_json(d.closed_form)},
                    {"oracle", complex_json(d.oracle)},
                    {"residual", d.residual},
                    {"expansion", d.expansion}});
  }
  j["discrepancies"] = disc;
  json errs = json::array();
  for (const auto& [seed, msg] : rep.errors) errs.push_back({{"seed", seed}, {"error", msg}});
  j["errors"] = errs;
  report::write_file(o.out, dump(j));

  out << fmt::format("oracle: {} seeds, {} checks, tolerance {:.1e}\n", o.seeds, rep.checks, o.tol);
  for (const auto& [q, v] : rep.max_residual) out << fmt::format("  {:<22} max residual {:.3e}\n", q, v);
  out << fmt::format("oracle: {} ({} discrepancies, {} errors) -> {}\n",
                     rep.passed() ? "PASS" : "FAIL", rep.discrepancies.size(), rep.errors.size(),
                     o.out);
  return rep.passed() ? kSuccess : kOracleFailure;
}

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

// Reads `key = value` lines ('#' or ';' comments) into `--key value`
// tokens. Keys must name an option of `sub`.
std::vector<std::string> config_tokens(const std::string& path, const CLI::App& sub) {
  std::ifstream f(path);
  if (!f) throw UsageError(fmt::format("cannot read config file '{}'", path));
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(fmt::format("{}:{}: expected key=value", path, lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "config" || sub.get_option_no_throw("--" + key) == nullptr) {
      throw UsageError(
          fmt::format("{}:{}: unknown key '{}' for command '{}'", path, lineno, key, sub.get_name()));
    }
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-atom spontaneous-emission patterns: superposition vs. mixture"};
  app.name("pairemit");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  const std::vector<std::string> modes{"on", "off"};
  std::string config_path;

  Fig2Options f2;
  auto* fig2 = app.add_subcommand("fig2", "Emission curves at the one-parameter operating point");
  fig2->add_option("--s", f2.s, "Free overlap parameter <psi|phi> in [0, 1)")->capture_default_str();
  fig2->add_option("--gamma0", f2.gamma0, "Base rate Gamma_0")->capture_default_str();
  fig2->add_option("--t-max", f2.t_max, "Final time, units of 1/Gamma_0")->capture_default_str();
  fig2->add_option("--steps", f2.steps, "Number of time samples")->capture_default_str();
  fig2->add_option("--mixture-exchange", f2.mixture_exchange)->check(CLI::IsMember(modes))->capture_default_str();
  fig2->add_option("--out", f2.out, "Curves CSV")->capture_default_str();
  fig2->add_option("--json", f2.json_out, "JSON sidecar (default: <out>.json)");
  fig2->add_option("--config", config_path, "key=value file with option defaults");

  ScanOptions sc;
  auto* scan_cmd = app.add_subcommand("scan", "Rates versus the overlap parameter s");
  scan_cmd->add_option("--s-from", sc.s_from)->capture_default_str();
  scan_cmd->add_option("--s-to", sc.s_to)->capture_default_str();
  scan_cmd->add_option("--points", sc.points)->capture_default_str();
  scan_cmd->add_option("--gamma0", sc.gamma0)->capture_default_str();
  scan_cmd->add_option("--mixture-exchange", sc.mixture_exchange)->check(CLI::IsMember(modes))->capture_default_str();
  scan_cmd->add_option("--out", sc.out)->capture_default_str();
  scan_cmd->add_option("--config", config_path, "key=value file with option defaults");

  SceneOptions se;
  auto* scene = app.add_subcommand("scene", "Overlap table and curves from two Gaussian packets");
  scene->add_option("--dim", se.dim)->check(CLI::Range(1, 3))->capture_default_str();
  scene->add_option("--sigma", se.sigma)->capture_default_str();
  scene->add_option("--separation", se.separation, "Center separation along the first axis")->capture_default_str();
  scene->add_option("--k", se.k, "Photon wavenumber (recoil size)")->capture_default_str();
  scene->add_option("--beam", se.beam, "Absorbed-photon direction, e.g. 1,0,0 (default: first axis)");
  scene->add_option("--omega", se.omega, "Emission direction, e.g. 0,0,1 (default: first axis)");
  scene->add_option("--mass", se.mass)->capture_default_str();
  scene->add_option("--delay", se.delay, "Free evolution between absorption and emission")->capture_default_str();
  scene->add_option("--gamma0", se.gamma0)->capture_default_str();
  scene->add_option("--t-max", se.t_max)->capture_default_str();
  scene->add_option("--steps", se.steps)->capture_default_str();
  scene->add_option("--mixture-exchange", se.mixture_exchange)->check(CLI::IsMember(modes))->capture_default_str();
  scene->add_option("--out", se.out, "Curves CSV")->capture_default_str();
  scene->add_option("--table-out", se.table_out, "Overlap table CSV (default: <out>_table.csv)");
  scene->add_option("--json", se.json_out, "JSON sidecar (default: <out>.json)");
  scene->add_option("--config", config_path, "key=value file with option defaults");

  OracleOptions oo;
  auto* orc = app.add_subcommand("oracle", "Closed forms vs. brute-force tensor algebra");
  orc->add_option("--seeds", oo.seeds)->capture_default_str();
  orc->add_option("--first-seed", oo.first_seed)->capture_default_str();
  orc->add_option("--tol", oo.tol, "Relative tolerance")->capture_default_str();
  orc->add_option("--coherence", oo.coherence, "Shared-direction weight of the random vectors")->capture_default_str();
  orc->add_option("--spectator", oo.spectator)->check(CLI::IsMember({"evolve", "unchanged"}))->capture_default_str();
  orc->add_option("--out", oo.out, "JSON report")->capture_default_str();
  orc->add_option("--config", config_path, "key=value file with option defaults");

  try {
    std::vector<std::string> argv = args;
    // Config values go right after the command name so that explicit flags,
    // which come later, win.
    if (!argv.empty()) {
      if (CLI::App* sub = app.get_subcommand_no_throw(argv.front())) {
        for (std::size_t i = 1; i < argv.size(); ++i) {
          std::string path;
          if (argv[i] == "--config" && i + 1 < argv.size()) {
            path = argv[i + 1];
          } else if (argv[i].rfind("--config=", 0) == 0) {
            path = argv[i].substr(9);
          }
          if (!path.empty()) {
            const std::vector<std::string> extra = config_tokens(path, *sub);
            argv.insert(argv.begin() + 1, extra.begin(), extra.end());
            break;
          }
        }
      }
    }
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  } catch (const UsageError& e) {
    err << "pairemit: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (fig2->parsed()) return cmd_fig2(f2, out);
    if (scan_cmd->parsed()) return cmd_scan(sc, out);
    if (scene->parsed()) return cmd_scene(se, out);
    if (orc->parsed()) return cmd_oracle(oo, out);
  } catch (const ZeroNormState& e) {
    err << "pairemit: degenerate state: " << e.what() << "\n";
    return kDegenerateState;
  } catch (const UsageError& e) {
    err << "pairemit: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "pairemit: invalid input: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "pairemit: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace pairemit::cli
