#include "sphere/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "sphere/annuli.hpp"
#include "sphere/census.hpp"
#include "sphere/degree.hpp"
#include "sphere/gallery.hpp"
#include "sphere/lefschetz.hpp"
#include "sphere/strip_lift.hpp"

namespace sphere {

namespace {

using json = nlohmann::ordered_json;

/// Numbers go through the 12-significant-digit formatter so output is stable.
json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_real(x));
}

json point_json(const SpherePoint& p) {
  const SpherePoint q = p.normalized();
  return {{"chart", std::string(to_string(q.chart()))}, {"re", number(q.value().real())}, {"im", number(q.value().imag())}};
}

SpherePoint parse_value(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return SpherePoint::from_north(parse_complex(text));
  const Complex re = parse_complex(text.substr(0, comma));
  const Complex im = parse_complex(text.substr(comma + 1));
  if (re.imag() != 0.0 || im.imag() != 0.0) throw Error(ErrorKind::ParseError, "--value takes re,im");
  return SpherePoint::from_north({re.real(), im.real()});
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  return f;
}

int cmd_census(const std::string& spec, int n_max, const std::string& out_path, std::ostream& out) {
  const auto report = growth_report(parse_map_spec(spec), n_max);
  if (out_path.empty()) {
    write_census_csv(out, report);
  } else {
    auto f = open_output(out_path);
    write_census_csv(f, report);
  }
  return 0;
}

int cmd_degree(const std::string& spec, const std::string& value, std::ostream& out) {
  const MapSpec map = parse_map_spec(spec);
  DegreeReport report;
  if (value.empty()) {
    numeric::Rng rng(numeric::default_seed());
    report = global_degree(map, rng);
  } else {
    report = global_degree(map, parse_value(value));
  }
  json witnesses = json::array();
  for (const auto& w : report.witnesses)
    witnesses.push_back({{"point", point_json(w.point)}, {"local_degree", w.local_degree}});
  json j = {{"global", report.global},
            {"declared", map.declared_degree()},
            {"regular_value", point_json(report.regular_value)},
            {"witnesses", witnesses}};
  out << j.dump() << "\n";
  return 0;
}

int cmd_index(const std::string& spec, const std::string& curve_path, std::ostream& out) {
  const MapSpec map = parse_map_spec(spec);
  std::ifstream f(curve_path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot read '" + curve_path + "'");
  const SampledCurve curve = read_curve_csv(f);
  const int index = lefschetz_index(map, curve);
  json j = {{"index", index},
            {"samples", curve.size()},
            {"chart", curve.chart() ? std::string(to_string(*curve.chart())) : std::string("plane")}};
  out << j.dump() << "\n";
  return 0;
}

json component_json(const AnnulusComponent& c) {
  return {{"lower_s", number(c.lower_s)},
          {"upper_s", number(c.upper_s)},
          {"window", {number(c.window.lo), number(c.window.hi)}},
          {"delta", c.delta},
          {"d_i", c.d_i},
          {"repelling", c.repelling},
          {"repelling_inconclusive", c.repelling_inconclusive},
          {"theorem3_bound", c.repelling ? json(theorem3_bound(c)) : json(nullptr)}};
}

int cmd_annuli(const std::string& spec, std::ostream& out) {
  json arr = json::array();
  for (const auto& c : decompose(parse_map_spec(spec))) arr.push_back(component_json(c));
  out << arr.dump() << "\n";
  return 0;
}

int cmd_strip_index(const std::string& spec, std::optional<int> only_lift, std::ostream& out) {
  const MapSpec map = parse_map_spec(spec);
  const auto comps = decompose(map);
  bool any = false;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    if (!c.repelling || c.delta == 1) continue;
    const int lifts = std::abs(c.delta - 1);
    for (int k = 0; k < lifts; ++k) {
      if (only_lift && *only_lift != k) continue;
      const StripMap F = lift(map, c, k);
      const auto r = verify_index(F);
      json j = {{"component", i},
                {"d", F.translation_degree()},
                {"k", k},
                {"m_used", r.m_used},
                {"index", r.index},
                {"fixed_point_projection", r.projection ? point_json(*r.projection) : json(nullptr)},
                {"residual", number(r.residual)}};
      out << j.dump() << "\n";
      any = true;
    }
  }
  if (!any) throw Error(ErrorKind::NotRepelling, "no repelling component with d != 1");
  return 0;
}

int cmd_check_h(const std::string& spec, const std::string& witness_path, std::ostream& out) {
  const auto report = check_hypothesis_H(parse_map_spec(spec));
  json j = {{"result", report.pass ? "pass" : "fail"}, {"probe_based", report.probe_based}};
  if (!report.pass) j["witness_winding"] = report.witness_winding;
  out << j.dump() << "\n";
  if (report.witness) {
    if (witness_path.empty()) {
      write_curve_csv(out, *report.witness);
    } else {
      auto f = open_output(witness_path);
      write_curve_csv(f, *report.witness);
    }
  }
  return report.pass ? 0 : 1;
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << json{{"error", std::string(kind)}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed points, indices and degrees of sphere maps"};
  app.require_subcommand(1);

  std::string spec, out_path, value, curve_path, witness_path;
  int n_max = 8;
  std::optional<int> lift_k;

  auto* census = app.add_subcommand("census", "Fixed-point counts of f^n and the growth rate (CSV)");
  census->add_option("--map", spec, "map spec")->required();
  census->add_option("--n-max", n_max, "largest iterate")->check(CLI::PositiveNumber);
  census->add_option("--out", out_path, "CSV output path (stdout when omitted)");

  auto* degree = app.add_subcommand("degree", "Degree as a sum of local degrees (JSON)");
  degree->add_option("--map", spec, "map spec")->required();
  degree->add_option("--value", value, "regular value re,im (random when omitted)");

  auto* index = app.add_subcommand("index", "Lefschetz index along a curve (JSON)");
  index->add_option("--map", spec, "map spec")->required();
  index->add_option("--curve", curve_path, "curve CSV")->required();

  auto* annuli = app.add_subcommand("annuli", "Components of the preimage of the annulus (JSON)");
  annuli->add_option("--map", spec, "map spec")->required();

  auto* strip = app.add_subcommand("strip-index", "Index of each lift along the loop beta (JSON lines)");
  strip->add_option("--map", spec, "map spec")->required();
  strip->add_option("--lift", lift_k, "only this lift offset k");

  auto* check_h = app.add_subcommand("check-h", "Probe hypothesis (H); witness loop CSV on failure");
  check_h->add_option("--map", spec, "map spec")->required();
  check_h->add_option("--witness", witness_path, "witness CSV path (stdout when omitted)");

  auto* gallery = app.add_subcommand("gallery", "Run the acceptance suite over the built-in maps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "ParseError", e.what());
    return 2;
  }

  try {
    if (census->parsed()) return cmd_census(spec, n_max, out_path, out);
    if (degree->parsed()) return cmd_degree(spec, value, out);
    if (index->parsed()) return cmd_index(spec, curve_path, out);
    if (annuli->parsed()) return cmd_annuli(spec, out);
    if (strip->parsed()) return cmd_strip_index(spec, lift_k, out);
    if (check_h->parsed()) return cmd_check_h(spec, witness_path, out);
    if (gallery->parsed()) return print_acceptance(out, run_acceptance()) ? 0 : 1;
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::InvalidSpec ? 2 : 1;
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return 1;
  }
  return 2;
}

}  // namespace sphere
