// qcn: lower bounds for first nontrivial Neumann eigenvalues of planar
// divergence-form elliptic operators, with finite-element verification.
#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qcneumann.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitBoundViolation = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitConfigError = 4;

struct RunConfig {
  std::string command;
  std::string map_id = "disc";
  double beta = 2.0;
  int n_radial = 32;
  int n_angular = 128;
  int n_quad = 64;
  int m_eigs = 6;
  int refinements = 3;
  unsigned seed = 12345;
  std::vector<double> k_list = {1.0, 1.5, 2.0, 4.0};
  std::string out = "-";
  std::string format = "csv";  // csv | json

  ordered_json to_json() const {
    ordered_json j;
    j["command"] = command;
    j["map"] = map_id;
    j["beta"] = beta;
    j["n_radial"] = n_radial;
    j["n_angular"] = n_angular;
    j["n_quad"] = n_quad;
    j["m_eigs"] = m_eigs;
    j["refinements"] = refinements;
    j["seed"] = seed;
    j["k_list"] = k_list;
    j["out"] = out;
    j["format"] = format;
    return j;
  }

  static RunConfig from_json(const ordered_json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.map_id = j.at("map").get<std::string>();
    c.beta = j.at("beta").get<double>();
    c.n_radial = j.at("n_radial").get<int>();
    c.n_angular = j.at("n_angular").get<int>();
    c.n_quad = j.at("n_quad").get<int>();
    c.m_eigs = j.at("m_eigs").get<int>();
    c.refinements = j.at("refinements").get<int>();
    c.seed = j.at("seed").get<unsigned>();
    c.k_list = j.at("k_list").get<std::vector<double>>();
    c.out = j.at("out").get<std::string>();
    c.format = j.at("format").get<std::string>();
    return c;
  }
};

// Round-trip the resolved config through its serialization; a mismatch is a
// config error by contract.
bool config_roundtrips(const RunConfig& c) {
  const std::string once = c.to_json().dump();
  const std::string twice =
      RunConfig::from_json(ordered_json::parse(once)).to_json().dump();
  return once == twice;
}

std::string fmt_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

int status_to_exit(int rc) {
  switch (rc) {
    case QCN_OK: return kExitOk;
    case QCN_ERR_SOLVER_NO_CONVERGENCE:
    case QCN_ERR_INDEFINITE_MASS: return kExitSolverFailure;
    default: return kExitConfigError;
  }
}

[[noreturn]] void die(int rc, const std::string& context) {
  std::cerr << "qcn: " << context << ": " << qcn_status_name(rc) << " ("
            << qcn_last_error() << ")\n";
  std::exit(status_to_exit(rc));
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) {
    std::cerr << "qcn: cannot open output file " << cfg.out << "\n";
    std::exit(kExitConfigError);
  }
  os << text;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += "\"\"";
    else
      out += ch;
  }
  out += "\"";
  return out;
}

// Stable row schema shared by all table-producing commands.
std::string csv_row(const std::string& kind, double value, double log10_value,
                    const ordered_json& params) {
  return kind + "," + fmt_double(value) + "," + fmt_double(log10_value) + "," +
         csv_quote(params.dump()) + "\n";
}

struct MapHandle {
  qcn_map* ptr = nullptr;
  explicit MapHandle(const std::string& spec) {
    if (int rc = qcn_map_create(spec.c_str(), &ptr))
      die(rc, "creating map " + spec);
  }
  ~MapHandle() { qcn_map_free(ptr); }
  MapHandle(const MapHandle&) = delete;
  MapHandle& operator=(const MapHandle&) = delete;
};

struct ReportHandle {
  qcn_report* ptr = nullptr;
  ~ReportHandle() { qcn_report_free(ptr); }
};

ordered_json estimate_table(const std::string& map_id, double beta,
                            int n_quad) {
  MapHandle map(map_id);
  ReportHandle rep;
  if (int rc = qcn_estimate(map.ptr, beta, n_quad, &rep.ptr))
    die(rc, "estimating bounds for " + map_id);
  return ordered_json::parse(qcn_report_json(rep.ptr));
}

std::string bounds_to_csv(const ordered_json& table) {
  std::string out = "kind,value,log10_value,param_json\n";
  for (const auto& b : table.at("bounds")) {
    ordered_json params;
    params["map"] = table.at("map");
    for (auto& [key, value] : b.at("inputs").items()) params[key] = value;
    params["applicable"] = b.at("applicable");
    params["best"] = b.at("best");
    if (b.contains("note")) params["note"] = b.at("note");
    out += csv_row(b.at("kind").get<std::string>(),
                   b.at("value").get<double>(),
                   b.at("log10_value").get<double>(), params);
  }
  return out;
}

int cmd_estimate(const RunConfig& cfg) {
  const ordered_json table = estimate_table(cfg.map_id, cfg.beta, cfg.n_quad);
  if (cfg.format == "json")
    write_output(cfg, table.dump(2) + "\n");
  else
    write_output(cfg, bounds_to_csv(table));
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  MapHandle map(cfg.map_id);
  ReportHandle rep;
  if (int rc = qcn_verify(map.ptr, cfg.n_radial, cfg.n_angular, cfg.m_eigs,
                          cfg.seed, cfg.refinements, cfg.beta, cfg.n_quad,
                          &rep.ptr))
    die(rc, "verifying " + cfg.map_id);
  const ordered_json report = ordered_json::parse(qcn_report_json(rep.ptr));
  if (cfg.format == "json") {
    write_output(cfg, report.dump(2) + "\n");
  } else {
    std::string out = "kind,value,log10_value,param_json\n";
    ordered_json params;
    params["map"] = report.at("map");
    params["mesh_h"] = report.at("mesh_h");
    params["m_eigs"] = report.at("m_eigs");
    const double mu1 = report.at("mu1_fem").get<double>();
    out += csv_row("mu1_fem", mu1, std::log10(mu1), params);
    for (const auto& b : report.at("bounds")) {
      ordered_json p;
      p["map"] = report.at("map");
      for (auto& [key, value] : b.at("inputs").items()) p[key] = value;
      p["applicable"] = b.at("applicable");
      out += csv_row(b.at("kind").get<std::string>(),
                     b.at("value").get<double>(),
                     b.at("log10_value").get<double>(), p);
    }
    write_output(cfg, out);
  }
  const int violations = qcn_report_violation_count(rep.ptr);
  if (violations > 0) {
    std::cerr << "qcn: " << violations
              << " bound(s) exceed FEM mu1 beyond the budget\n";
    return kExitBoundViolation;
  }
  return kExitOk;
}

int cmd_constants(const RunConfig& cfg) {
  std::string table = "kind,value,log10_value,param_json\n";
  std::string plot = "# K log10_M\n";
  for (double k : cfg.k_list) {
    double log10_m = 0, beta_star = 0, beta_opt = 0, beta_tilde = 0;
    if (int rc =
            qcn_quasidisc_mk(k, &log10_m, &beta_star, &beta_opt, &beta_tilde))
      die(rc, "computing M(K) at K = " + fmt_double(k));
    ordered_json params;
    params["K"] = k;
    params["beta_star"] = beta_star;
    params["beta_opt"] = beta_opt;
    params["beta_tilde"] = beta_tilde;
    table += csv_row("quasidisc_MK", 0.0, log10_m, params);
    plot += fmt_double(k) + " " + fmt_double(log10_m) + "\n";
  }
  write_output(cfg, table);
  if (cfg.out != "-") {
    std::ofstream os(cfg.out + ".plot", std::ios::binary);
    if (!os) {
      std::cerr << "qcn: cannot open plot file " << cfg.out << ".plot\n";
      return kExitConfigError;
    }
    os << plot;
  }
  return kExitOk;
}

int cmd_reproduce_examples(const RunConfig& cfg) {
  struct Row {
    const char* map;
    double thm47 = 0, classical = 0, mu1 = 0;
  };
  std::vector<Row> rows = {{"ellipse:a=2,b=1"}, {"rose_petal"}, {"cusp"}};
  std::string out = "kind,value,log10_value,param_json\n";

  for (Row& row : rows) {
    MapHandle map(row.map);
    if (int rc = qcn_bound_thm47(map.ptr, &row.thm47))
      die(rc, std::string("thm47 bound for ") + row.map);
    int applicable = 0;
    if (int rc =
            qcn_bound_payne_weinberger(map.ptr, 1, &row.classical, &applicable))
      die(rc, std::string("classical bound for ") + row.map);
    ReportHandle rep;
    if (int rc = qcn_verify(map.ptr, cfg.n_radial, cfg.n_angular, cfg.m_eigs,
                            cfg.seed, 1, cfg.beta, cfg.n_quad, &rep.ptr))
      die(rc, std::string("FEM verification for ") + row.map);
    if (int rc = qcn_report_mu1(rep.ptr, &row.mu1))
      die(rc, "reading mu1");
    ordered_json params;
    params["map"] = row.map;
    params["thm47"] = row.thm47;
    params["classical"] = row.classical;
    params["classical_applicable"] = applicable != 0;
    params["mu1_fem"] = row.mu1;
    out += csv_row("example", row.mu1, std::log10(row.mu1), params);
  }

  // The paper's explicit orderings for Examples 1 and 2.
  {
    ordered_json p1;
    p1["map"] = rows[0].map;
    p1["classical"] = rows[0].classical;
    p1["thm47"] = rows[0].thm47;
    p1["holds"] = rows[0].classical < rows[0].thm47;
    out += csv_row("comparison_classical_lt_thm47", rows[0].classical,
                   std::log10(rows[0].classical), p1);
    ordered_json p2;
    p2["map"] = rows[1].map;
    p2["classical"] = rows[1].classical;
    p2["thm47"] = rows[1].thm47;
    p2["holds"] = rows[1].classical < rows[1].thm47;
    out += csv_row("comparison_classical_lt_thm47", rows[1].classical,
                   std::log10(rows[1].classical), p2);
    std::cout << "example 1 (ellipse a=2,b=1): classical "
              << fmt_double(rows[0].classical) << " < thm47 "
              << fmt_double(rows[0].thm47)
              << (rows[0].classical < rows[0].thm47 ? "  [holds]\n"
                                                    : "  [FAILS]\n");
    std::cout << "example 2 (rose petal): classical "
              << fmt_double(rows[1].classical) << " < thm47 "
              << fmt_double(rows[1].thm47)
              << (rows[1].classical < rows[1].thm47 ? "  [holds]\n"
                                                    : "  [FAILS]\n");
  }

  // Thin-ellipse sweep at fixed a+b = 3: the thm47 bound blows up while the
  // classical one vanishes.
  for (double amb : {1.0, 0.1, 0.01}) {
    const double a = (3.0 + amb) / 2.0, b = (3.0 - amb) / 2.0;
    std::ostringstream id;
    id << "ellipse:a=" << a << ",b=" << b;
    MapHandle map(id.str());
    double thm47 = 0, classical = 0;
    if (int rc = qcn_bound_thm47(map.ptr, &thm47)) die(rc, "sweep thm47");
    int applicable = 0;
    if (int rc = qcn_bound_payne_weinberger(map.ptr, 1, &classical, &applicable))
      die(rc, "sweep classical");
    ordered_json params;
    params["a"] = a;
    params["b"] = b;
    params["a_minus_b"] = amb;
    params["a2_minus_b2"] = a * a - b * b;
    params["classical"] = classical;
    out += csv_row("thin_ellipse_sweep", thm47, std::log10(thm47), params);
  }

  write_output(cfg, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("QCS_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) qcn_set_threads(n);
  }

  CLI::App app{"Neumann eigenvalue lower bounds via quasiconformal maps"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool with_map) {
    if (with_map) sub->add_option("--map", cfg.map_id, "map id");
    sub->add_option("--beta", cfg.beta, "beta for the thm51 bound");
    sub->add_option("--nr", cfg.n_radial, "radial mesh resolution");
    sub->add_option("--na", cfg.n_angular, "angular mesh resolution");
    sub->add_option("--n-quad", cfg.n_quad, "quadrature points (radial)");
    sub->add_option("--m-eigs", cfg.m_eigs, "number of eigenvalues");
    sub->add_option("--refine", cfg.refinements, "nested refinement levels");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out, "output path ('-' for stdout)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* estimate =
      app.add_subcommand("estimate", "bound table for one map");
  add_common(estimate, true);
  CLI::App* bounds_alias =
      app.add_subcommand("bounds", "alias of estimate");
  add_common(bounds_alias, true);
  CLI::App* verify =
      app.add_subcommand("verify", "FEM verification of the bounds");
  add_common(verify, true);
  CLI::App* constants =
      app.add_subcommand("constants", "quasidisc constant M(K) table");
  add_common(constants, false);
  constants->add_option("--k-list", cfg.k_list, "K values");
  CLI::App* reproduce = app.add_subcommand(
      "reproduce-examples", "bound/FEM comparison for the example domains");
  add_common(reproduce, false);

  CLI11_PARSE(app, argc, argv);

  if (estimate->parsed() || bounds_alias->parsed())
    cfg.command = "estimate";
  else if (verify->parsed())
    cfg.command = "verify";
  else if (constants->parsed())
    cfg.command = "constants";
  else
    cfg.command = "reproduce-examples";

  if (!config_roundtrips(cfg)) {
    std::cerr << "qcn: run config does not round-trip\n";
    return kExitConfigError;
  }

  if (cfg.command == "estimate") return cmd_estimate(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  if (cfg.command == "constants") return cmd_constants(cfg);
  return cmd_reproduce_examples(cfg);
}
