// carnot_cert: certificates for ball-box inclusions and systolic bounds in
// Carnot groups.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "carnot/commands.hpp"
#include "carnot/config.hpp"
#include "carnot/error.hpp"

using carnot::CommandOptions;
using nlohmann::json;

namespace {

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << "\n";
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "Io: cannot write " << out << "\n";
    return carnot::exit_code_for(carnot::ErrorKind::Io);
  }
  f << text << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified ball-box and systole computations for Carnot groups", "carnot_cert"};
  app.require_subcommand(1);
  app.fallthrough();
  CommandOptions o;
  std::string out;
  app.add_option("--algebra", o.algebra, "builtin name (heisenberg, heisenberg(n), engel, free_nilpotent(d1,k), "
                                         "abelian(d)) or path to an algebra JSON file");
  app.add_option("--mode", o.mode, "rational (exact radicals) or float")->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--seed", o.seed, "PRNG seed");
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--csv", o.csv, "CSV side output (path waypoints, systole elements)");
  app.add_flag("--timing", o.timing, "add wall-clock timing to the report");
  app.add_flag_callback("--version", [] {
    std::cout << carnot::kVersion << "\n";
    std::exit(0);
  });

  std::string command;
  std::function<json(const CommandOptions&)> run;
  auto bind = [&](CLI::App* sub, std::string name, json (*fn)(const CommandOptions&)) {
    sub->callback([&command, &run, name = std::move(name), fn] {
      command = name;
      run = fn;
    });
  };

  auto* algebra = app.add_subcommand("algebra", "algebra utilities")->require_subcommand(1);
  bind(algebra->add_subcommand("check", "validate an algebra"), "algebra check", carnot::cmd_algebra_check);

  auto* popp = app.add_subcommand("popp", "induced scalar products")->require_subcommand(1);
  bind(popp->add_subcommand("gram", "dump M_i, G_i and the orthonormal frame"), "popp gram", carnot::cmd_popp_gram);

  auto* constants = app.add_subcommand("constants", "box radii and systolic constant");
  constants->add_option("--dims", o.dims, "layer dimensions, e.g. 2,1,1 (overrides --algebra)");
  bind(constants, "constants", carnot::cmd_constants);

  auto* adjust = app.add_subcommand("adjust", "adjusted set or tuple for a target");
  adjust->add_option("--target", o.target, "comma-separated coordinates")->required();
  adjust->add_option("--layer", o.layer, "adjust a single layer vector instead of a full element");
  bind(adjust, "adjust", carnot::cmd_adjust);

  auto* path = app.add_subcommand("path", "certified horizontal path to a target");
  path->add_option("--target", o.target, "comma-separated coordinates")->required();
  bind(path, "path", carnot::cmd_path);

  auto* box = app.add_subcommand("box-verify", "sample the eps-box and certify every point");
  box->add_option("--samples", o.samples, "number of samples");
  bind(box, "box-verify", carnot::cmd_box_verify);

  auto* systole = app.add_subcommand("systole", "systole bound versus C vol^(1/Q)");
  systole->add_option("--lattice", o.lattice, "lattice JSON file")->required();
  systole->add_option("--radius", o.radius, "word radius");
  bind(systole, "systole", carnot::cmd_systole);

  auto* bch = app.add_subcommand("bch", "coefficient tables")->require_subcommand(1);
  auto* tables = bch->add_subcommand("tables", "beta and gamma tables");
  tables->add_option("--k", o.k, "step");
  tables->add_option("--N", o.n_factors, "number of factors for beta, and d1 for the max constants");
  bind(tables, "bch tables", carnot::cmd_bch_tables);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : carnot::exit_code_for(carnot::ErrorKind::Usage);
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    json outputs = run(o);
    json report = carnot::make_report(command, o, std::move(outputs));
    if (o.timing)
      report["timing"] = {
          {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    const int rc = emit(report.dump(2), out);
    if (rc != 0) return rc;
    const json& payload = report["outputs"];
    if (command == "algebra check" && !payload.value("valid", true)) return 2;
    if (command == "box-verify" && !payload.value("pass", true)) return 4;
    if (command == "systole" && !payload.value("satisfied", true)) return 4;
    return 0;
  } catch (const carnot::Error& e) {
    json err = {{"command", command}, {"error", std::string(carnot::kind_name(e.kind()))}, {"detail", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return carnot::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "Internal: " << e.what() << "\n";
    return 4;
  }
}
